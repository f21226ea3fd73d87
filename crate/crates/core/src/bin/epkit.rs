use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use epkit::cuts::{enumerate_important_separators, find_irrelevant_vertex, tw_reduction_set, ThresholdMode};
use epkit::decomposition::{DecompositionFile, TreeDecomposition};
use epkit::driver::{solve_with, verify_certificate, Certificate, DriverConfig, Witnesses};
use epkit::generate::{generate, Family, Gadget};
use epkit::oracle::{exact, OracleConfig};
use epkit::paths::CliqueExpansion;
use epkit::{EpError, GroupSpec, LabeledGraph, Separation, VertexSet};

#[derive(Parser)]
#[command(name = "epkit", version, about = "Packing-or-cover certificates for non-null cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Thresholds {
    Paper,
    Small,
}

impl From<Thresholds> for ThresholdMode {
    fn from(t: Thresholds) -> Self {
        match t {
            Thresholds::Paper => ThresholdMode::Paper,
            Thresholds::Small => ThresholdMode::Small,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find a half-integral k-packing of non-null cycles or a cover.
    Solve {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        tw_threshold: usize,
        #[arg(long, value_enum, default_value = "small")]
        thresholds: Thresholds,
        #[arg(long)]
        oracle_fallback: bool,
        /// Clique expansion to use instead of searching.
        #[arg(long)]
        expansion_witness: Option<PathBuf>,
        /// Tree decomposition of the input graph.
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long)]
        clique_order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact cover and packing numbers by exhaustive search.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 14)]
        max_vertices: usize,
        #[arg(long, default_value_t = 20_000)]
        max_cycles: usize,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Where to write the clique expansion, for families that have one.
        #[arg(long, global = true)]
        witness_out: Option<PathBuf>,
    },
    /// Check a certificate; exits 0 iff it is valid.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Important X-Y separators of size at most k.
    Impsep {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<usize>,
        #[arg(short)]
        k: usize,
    },
    /// Vertices of a well-linked set Z that may lie in a small multiway cut.
    Twreduce {
        graph: PathBuf,
        #[arg(short)]
        t: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<usize>,
        #[arg(long, value_enum, default_value = "small")]
        thresholds: Thresholds,
    },
    /// A vertex whose deletion keeps the packing-or-cover answer.
    Irrelevant {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        z: Vec<usize>,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value = "small")]
        thresholds: Thresholds,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    OddCycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    EscherWall {
        #[arg(long)]
        h: usize,
    },
    ZmGrid {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// `Z<n>`, `S<n>`, or a group spec in graph-file JSON.
        #[arg(long)]
        group: String,
    },
    SubdividedClique {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        subdivisions: usize,
        #[arg(long)]
        odd_gadget: bool,
    },
}

enum Failure {
    Rejected(String),
    Error(EpError),
}

impl From<EpError> for Failure {
    fn from(e: EpError) -> Self {
        Failure::Error(e)
    }
}

fn read(path: &Path) -> Result<String, EpError> {
    std::fs::read_to_string(path).map_err(|e| EpError::Parse(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, EpError> {
    LabeledGraph::from_json(&read(path)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), EpError> {
    match out {
        Some(path) => Ok(std::fs::write(path, format!("{text}\n"))?),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        },
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn parse_group(text: &str) -> Result<GroupSpec, EpError> {
    let spec = if let Some(n) = text.strip_prefix('Z') {
        GroupSpec::Cyclic(n.parse().map_err(|_| EpError::InvalidSpec(text.into()))?)
    } else if let Some(n) = text.strip_prefix('S') {
        GroupSpec::Symmetric(n.parse().map_err(|_| EpError::InvalidSpec(text.into()))?)
    } else {
        serde_json::from_str(text)?
    };
    spec.validate()?;
    Ok(spec)
}

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve {
            graph,
            k,
            tw_threshold,
            thresholds,
            oracle_fallback,
            expansion_witness,
            td,
            clique_order,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let expansion = expansion_witness.map(|p| CliqueExpansion::from_json(&read(&p)?)).transpose()?;
            let decomposition = td
                .map(|p| -> Result<TreeDecomposition, EpError> {
                    let file: DecompositionFile = serde_json::from_str(&read(&p)?)?;
                    TreeDecomposition::from_file(&file)
                })
                .transpose()?;
            let cfg = DriverConfig {
                tw_threshold,
                thresholds_mode: thresholds.into(),
                oracle_fallback,
                seed,
                clique_order,
                oracle: OracleConfig::default(),
            };
            let cert = solve_with(&g, k, &cfg, &Witnesses { expansion, decomposition })?;
            emit(&cert.to_json(), out.as_deref())?;
        }
        Command::Oracle { graph, max_vertices, max_cycles } => {
            let g = load_graph(&graph)?;
            emit(&pretty(&exact(&g, &OracleConfig { max_vertices, max_cycles })?), None)?;
        }
        Command::Gen { family, seed, out, witness_out } => {
            let family = match family {
                GenFamily::OddCycles { n, m } => Family::OddCycles { n, m },
                GenFamily::EscherWall { h } => Family::EscherWall { h },
                GenFamily::ZmGrid { m, r, c } => Family::ZmGrid { m, r, c },
                GenFamily::Random { n, m, group } => Family::Random { n, m, group: parse_group(&group)? },
                GenFamily::SubdividedClique { ell, subdivisions, odd_gadget } => Family::SubdividedClique {
                    ell,
                    subdivisions,
                    gadget: if odd_gadget { Gadget::OddTriangle } else { Gadget::None },
                },
            };
            let generated = generate(&family, seed)?;
            emit(&generated.graph.to_json(), out.as_deref())?;
            if let (Some(path), Some(eta)) = (witness_out, generated.expansion) {
                emit(&eta.to_json(), Some(&path))?;
            }
        }
        Command::Verify { graph, certificate } => {
            let g = load_graph(&graph)?;
            let cert = Certificate::from_json(&read(&certificate)?)?;
            match verify_certificate(&g, &cert) {
                Ok(()) => println!("valid"),
                Err(EpError::InvalidCertificate(msg)) => return Err(Failure::Rejected(msg)),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Impsep { graph, x, y, k } => {
            let g = load_graph(&graph)?;
            emit(&pretty(&enumerate_important_separators(&g, &set(&x), &set(&y), k)?), None)?;
        }
        Command::Twreduce { graph, t, terminals, z, thresholds } => {
            let g = load_graph(&graph)?;
            let out = tw_reduction_set(&g, t, &set(&terminals), &set(&z), thresholds.into())?;
            emit(&pretty(&out), None)?;
        }
        Command::Irrelevant { graph, a, b, z, p, k, thresholds } => {
            let g = load_graph(&graph)?;
            let sep = Separation::new(set(&a), set(&b));
            emit(&pretty(&find_irrelevant_vertex(&g, &sep, &set(&z), p, k, thresholds.into())?), None)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected(msg)) => {
            println!("invalid: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                EpError::GuardExceeded(_) => 3,
                EpError::Unimplemented(_) => 4,
                _ => 2,
            })
        }
    }
}
