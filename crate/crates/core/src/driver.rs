//! The packing-or-cover driver: recursion over the bounded-treewidth branch,
//! the clique-expansion branch and an optional exact fallback.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cuts::ThresholdMode;
use crate::cycles::{arcs_on_non_null_cycles, is_clean, non_null_cycle, verify_gfvs, GfvsCertificate};
use crate::decomposition::{
    packing_or_cover_bounded_tw, tree_decomposition, Integrality, PackingCertificate, PackingOrCover, TdMode,
    TreeDecomposition,
};
use crate::error::{EpError, Result};
use crate::graph::{ArcId, LabeledGraph, VertexId, VertexSet};
use crate::oracle::{max_packing, min_gfvs, OracleConfig, PackingMode};
use crate::paths::{
    clique_branch_irrelevant, clique_branch_separation, find_clique_expansion, rho, CliqueBranchOutcome,
    CliqueExpansion, MAX_CLIQUE_SEARCH,
};

/// Graphs up to this size get an exact decomposition; larger ones use min-fill.
pub const EXACT_TD_UP_TO: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriverConfig {
    pub tw_threshold: usize,
    pub thresholds_mode: ThresholdMode,
    pub oracle_fallback: bool,
    pub seed: u64,
    /// Order of the clique expansion searched for; `None` picks `min(3k, 6)`.
    pub clique_order: Option<usize>,
    pub oracle: OracleConfig,
}

impl Default for DriverConfig {
    fn default() -> Self {
        DriverConfig {
            tw_threshold: 3,
            thresholds_mode: ThresholdMode::Small,
            oracle_fallback: false,
            seed: 0,
            clique_order: None,
            oracle: OracleConfig::default(),
        }
    }
}

/// Optional witnesses for the input graph. Both are restricted to the current
/// subgraph at every level and dropped once they stop being valid.
#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    pub expansion: Option<CliqueExpansion>,
    pub decomposition: Option<TreeDecomposition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Exact,
    Heuristic,
    Found,
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeKind {
    Packing,
    Cover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TrailStep {
    /// Arcs on no non-null cycle were removed before branching.
    Strip { level: usize, arcs: Vec<ArcId> },
    LowTreewidth { level: usize, k: usize, width: usize, source: Source, outcome: OutcomeKind, cover_size: usize },
    CliquePacking { level: usize, k: usize, order: usize, source: Source, integrality: Integrality },
    /// `G[A]` has a non-null cycle: keep it, delete `A` and recurse with `k - 1`.
    Peel { level: usize, k: usize, order: usize, source: Source, separator: VertexSet, cycle_vertices: VertexSet },
    /// Result of a `Peel` once the recursive call returned.
    Merge { level: usize, outcome: OutcomeKind, added: usize },
    Irrelevant { level: usize, k: usize, order: usize, source: Source, separator: VertexSet, vertex: VertexId },
    /// The cover found after deleting `vertex` missed a cycle through it.
    Repair { level: usize, vertex: VertexId },
    /// The clique branch could not be applied at this level.
    BranchFailed { level: usize, reason: String },
    Fallback { level: usize, k: usize, outcome: OutcomeKind },
}

/// Base-2 logarithms of the asymptotic constants, with the flat-wall constant
/// `c` taken as 1. `rho` is given exactly for `k <= 200`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperThresholds {
    pub rho: Option<String>,
    pub log2_rho: f64,
    pub log2_rho_prime: f64,
    pub log2_pi: f64,
    pub log2_sigma: f64,
    pub log2_sigma_prime: f64,
    pub log2_w: f64,
    pub log2_tau: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub k: usize,
    pub thresholds_mode: ThresholdMode,
    pub tw_threshold: usize,
    pub seed: u64,
    pub fallback: bool,
    pub non_paper_scale: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub paper_thresholds: Option<PaperThresholds>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub outcome: PackingOrCover,
    pub trail: Vec<TrailStep>,
    pub metadata: Metadata,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }
}

fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

fn log2_rho(k: usize) -> f64 {
    let k = k as f64;
    3.0 * k + 18.0 * k * (3.0 * k).log2()
}

fn log2_w(k: usize) -> (f64, f64, f64, f64, f64) {
    let kf = k as f64;
    let lr = log2_rho(k);
    let lr_prime = log2_add(lr, (3.0 * kf).log2());
    // r = 3k + rho(k); pi = 2(2^r r^(6r) + 1).
    let r = lr.exp2() + 3.0 * kf;
    let lpi = 1.0 + r + 6.0 * r * r.log2();
    let lsigma = (16.0 * kf * kf).log2() + log2_add(lpi, (2.0 * kf).log2());
    let lsigma_prime = log2_add(log2_add(lsigma, lr_prime), (3.0 * kf).log2());
    let lw = 20.0 * (lsigma_prime + log2_add(lsigma_prime, lr_prime));
    (lr_prime, lpi, lsigma, lsigma_prime, lw)
}

pub fn paper_thresholds(k: usize) -> PaperThresholds {
    let (lr_prime, lpi, lsigma, lsigma_prime, lw) = log2_w(k);
    // tau(k) = max(tau(k-1) + rho'(k) + 3k, (k-1)(w+1)), tau(0) = 0.
    let mut ltau = f64::NEG_INFINITY;
    for j in 1..=k {
        let (lrp, _, _, _, lwj) = log2_w(j);
        let grow = log2_add(log2_add(ltau, lrp), (3.0 * j as f64).log2());
        let tw = if j == 1 { f64::NEG_INFINITY } else { ((j - 1) as f64).log2() + log2_add(lwj, 0.0) };
        ltau = grow.max(tw);
    }
    PaperThresholds {
        rho: (k <= 200).then(|| rho(k).to_string()),
        log2_rho: log2_rho(k),
        log2_rho_prime: lr_prime,
        log2_pi: lpi,
        log2_sigma: lsigma,
        log2_sigma_prime: lsigma_prime,
        log2_w: lw,
        log2_tau: ltau,
    }
}

/// Removes every arc that lies on no non-null cycle, repeating until stable.
pub fn strip_null_arcs(g: &LabeledGraph) -> LabeledGraph {
    strip_with_log(g).0
}

fn strip_with_log(g: &LabeledGraph) -> (LabeledGraph, Vec<ArcId>) {
    let mut cur = g.clone();
    let mut removed = Vec::new();
    loop {
        let keep = arcs_on_non_null_cycles(&cur);
        let drop: BTreeSet<ArcId> = cur.arcs().map(|(a, _)| a).filter(|a| !keep.contains(a)).collect();
        if drop.is_empty() {
            removed.sort_unstable();
            return (cur, removed);
        }
        removed.extend(drop.iter().copied());
        cur = cur.remove_arcs(&drop);
    }
}

fn restrict_td(td: &TreeDecomposition, g: &LabeledGraph) -> Option<TreeDecomposition> {
    let alive = g.vertex_set();
    let parent = (0..td.len()).map(|b| td.parent(b)).collect();
    let bags = (0..td.len()).map(|b| td.bag(b).intersection(&alive).copied().collect()).collect();
    let out = TreeDecomposition::new(parent, bags).ok()?;
    out.validate(g).ok()?;
    Some(out)
}

struct Driver<'a> {
    cfg: &'a DriverConfig,
    witnesses: &'a Witnesses,
    trail: Vec<TrailStep>,
    fallback: bool,
}

pub fn solve(g: &LabeledGraph, k: usize, cfg: &DriverConfig) -> Result<Certificate> {
    solve_with(g, k, cfg, &Witnesses::default())
}

pub fn solve_with(g: &LabeledGraph, k: usize, cfg: &DriverConfig, witnesses: &Witnesses) -> Result<Certificate> {
    if k == 0 {
        return Err(EpError::Precondition("k must be positive".into()));
    }
    if cfg.tw_threshold == 0 {
        return Err(EpError::Precondition("tw_threshold must be at least 1".into()));
    }
    if let Some(td) = &witnesses.decomposition {
        td.validate(g)?;
    }
    let mut driver = Driver { cfg, witnesses, trail: Vec::new(), fallback: false };
    let outcome = driver.level(g, k, 0)?;
    let paper_thresholds = (cfg.thresholds_mode == ThresholdMode::Paper).then(|| paper_thresholds(k));
    let cert = Certificate {
        outcome,
        trail: driver.trail,
        metadata: Metadata {
            k,
            thresholds_mode: cfg.thresholds_mode,
            tw_threshold: cfg.tw_threshold,
            seed: cfg.seed,
            fallback: driver.fallback,
            non_paper_scale: cfg.thresholds_mode == ThresholdMode::Small,
            paper_thresholds,
        },
    };
    verify_certificate(g, &cert)?;
    Ok(cert)
}

impl Driver<'_> {
    fn level(&mut self, g: &LabeledGraph, k: usize, level: usize) -> Result<PackingOrCover> {
        let (g, stripped) = strip_with_log(g);
        if !stripped.is_empty() {
            self.trail.push(TrailStep::Strip { level, arcs: stripped });
        }
        let supplied = self.witnesses.decomposition.as_ref().and_then(|td| restrict_td(td, &g));
        let (td, source) = match supplied {
            Some(td) => (td, Source::Supplied),
            None if g.num_vertices() <= EXACT_TD_UP_TO => (tree_decomposition(&g, TdMode::Exact)?, Source::Exact),
            None => (tree_decomposition(&g, TdMode::Heuristic)?, Source::Heuristic),
        };
        // In paper mode the switch is w, which no representable width reaches.
        let low = self.cfg.thresholds_mode == ThresholdMode::Paper || td.width() <= self.cfg.tw_threshold;
        if low {
            let out = packing_or_cover_bounded_tw(&g, k, &td)?;
            let (outcome, cover_size) = match &out {
                PackingOrCover::Packing(_) => (OutcomeKind::Packing, 0),
                PackingOrCover::Cover(c) => (OutcomeKind::Cover, c.vertices.len()),
            };
            self.trail.push(TrailStep::LowTreewidth { level, k, width: td.width(), source, outcome, cover_size });
            return Ok(out);
        }
        match self.clique_branch(&g, k, level)? {
            Some(out) => Ok(out),
            None => self.fallback_branch(&g, k, level),
        }
    }

    fn expansion(&self, g: &LabeledGraph, k: usize) -> Result<Option<(CliqueExpansion, Source)>> {
        if let Some(eta) = &self.witnesses.expansion {
            if eta.check(g, eta.order()).is_ok() {
                return Ok(Some((eta.clone(), Source::Supplied)));
            }
        }
        let ell = self.cfg.clique_order.unwrap_or((3 * k).min(MAX_CLIQUE_SEARCH));
        Ok(find_clique_expansion(g, ell)?.map(|eta| (eta, Source::Found)))
    }

    /// `Ok(None)` when the branch does not apply and the caller should fall back.
    fn clique_branch(&mut self, g: &LabeledGraph, k: usize, level: usize) -> Result<Option<PackingOrCover>> {
        let Some((eta, source)) = self.expansion(g, k)? else {
            self.trail.push(TrailStep::BranchFailed { level, reason: "no clique expansion".into() });
            return Ok(None);
        };
        let order = eta.order();
        let sep = match clique_branch_separation(g, k, &eta, self.cfg.thresholds_mode) {
            Ok(CliqueBranchOutcome::Packing(p)) => {
                self.trail.push(TrailStep::CliquePacking { level, k, order, source, integrality: p.integrality });
                return Ok(Some(PackingOrCover::Packing(p)));
            }
            Ok(CliqueBranchOutcome::Separation(sep)) => sep,
            Err(EpError::Precondition(reason)) => {
                self.trail.push(TrailStep::BranchFailed { level, reason });
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let separator = sep.separator();
        if let Some(cycle) = non_null_cycle(&g.induced_subgraph(&sep.a)?) {
            self.trail.push(TrailStep::Peel {
                level,
                k,
                order,
                source,
                separator: separator.clone(),
                cycle_vertices: cycle.vertex_set(g),
            });
            if k == 1 {
                self.trail.push(TrailStep::Merge { level, outcome: OutcomeKind::Packing, added: 1 });
                let cert = PackingCertificate { cycles: vec![cycle], integrality: Integrality::Integral };
                return Ok(Some(PackingOrCover::Packing(cert)));
            }
            let rest = g.remove_vertices(&sep.a);
            return Ok(Some(match self.level(&rest, k - 1, level + 1)? {
                PackingOrCover::Packing(mut p) => {
                    self.trail.push(TrailStep::Merge { level, outcome: OutcomeKind::Packing, added: 1 });
                    p.cycles.insert(0, cycle);
                    PackingOrCover::Packing(p)
                }
                PackingOrCover::Cover(c) => {
                    self.trail.push(TrailStep::Merge { level, outcome: OutcomeKind::Cover, added: separator.len() });
                    let mut vertices = c.vertices;
                    vertices.extend(separator.iter().copied());
                    PackingOrCover::Cover(GfvsCertificate { vertices, verified: true })
                }
            }));
        }
        let a_only = sep.a_only();
        let inside: Vec<usize> =
            eta.supernodes.iter().filter(|(_, s)| s.is_subset(&a_only)).map(|(&m, _)| m).collect();
        let eta_in = eta.restrict(&inside);
        let found = match clique_branch_irrelevant(g, k, &eta_in, &sep, None, self.cfg.thresholds_mode) {
            Ok(found) => found,
            Err(EpError::Precondition(reason)) => {
                self.trail.push(TrailStep::BranchFailed { level, reason });
                return Ok(None);
            }
            Err(e) => return Err(e),
        };
        let v = found.vertex;
        self.trail.push(TrailStep::Irrelevant { level, k, order, source, separator, vertex: v });
        let out = self.level(&g.remove_vertices(&VertexSet::from([v])), k, level)?;
        Ok(Some(match out {
            PackingOrCover::Cover(c) if !is_clean(g, &g.vertex_set().difference(&c.vertices).copied().collect()) => {
                self.trail.push(TrailStep::Repair { level, vertex: v });
                let mut vertices = c.vertices;
                vertices.insert(v);
                PackingOrCover::Cover(GfvsCertificate { vertices, verified: true })
            }
            other => other,
        }))
    }

    fn fallback_branch(&mut self, g: &LabeledGraph, k: usize, level: usize) -> Result<PackingOrCover> {
        if !self.cfg.oracle_fallback {
            return Err(EpError::Unimplemented(format!(
                "flat-wall branch at level {level} (k = {k}, {} vertices); enable the oracle fallback",
                g.num_vertices()
            )));
        }
        self.fallback = true;
        let (best, cycles) = max_packing(g, PackingMode::Integral, &self.cfg.oracle)?;
        let out = if best >= k {
            PackingOrCover::Packing(PackingCertificate {
                cycles: cycles.into_iter().take(k).collect(),
                integrality: Integrality::Integral,
            })
        } else {
            let (best, cycles) = max_packing(g, PackingMode::HalfIntegral, &self.cfg.oracle)?;
            if best >= k {
                PackingOrCover::Packing(PackingCertificate {
                    cycles: cycles.into_iter().take(k).collect(),
                    integrality: Integrality::HalfIntegral,
                })
            } else {
                let (_, vertices) = min_gfvs(g, &self.cfg.oracle)?;
                PackingOrCover::Cover(GfvsCertificate { vertices, verified: true })
            }
        };
        let outcome = match out {
            PackingOrCover::Packing(_) => OutcomeKind::Packing,
            PackingOrCover::Cover(_) => OutcomeKind::Cover,
        };
        self.trail.push(TrailStep::Fallback { level, k, outcome });
        Ok(out)
    }
}

/// Checks the outcome against `g` and the bounds recorded in the trail.
pub fn verify_certificate(g: &LabeledGraph, cert: &Certificate) -> Result<()> {
    let bad = |msg: String| Err(EpError::InvalidCertificate(msg));
    let k = cert.metadata.k;
    match &cert.outcome {
        PackingOrCover::Packing(p) => {
            if p.k() != k {
                return bad(format!("packing has {} cycles, expected {k}", p.k()));
            }
            p.verify(g)?;
        }
        PackingOrCover::Cover(c) => {
            if let Some(v) = c.vertices.iter().find(|&&v| !g.contains_vertex(v)) {
                return bad(format!("cover vertex {v} is not in the graph"));
            }
            if !verify_gfvs(g, &c.vertices).verified {
                return bad("G - X still has a non-null cycle".into());
            }
            if let Some(t) = &cert.metadata.paper_thresholds {
                if (c.vertices.len() as f64).log2() > t.log2_tau {
                    return bad(format!("cover of size {} exceeds tau({k})", c.vertices.len()));
                }
            }
        }
    }
    for step in &cert.trail {
        match step {
            TrailStep::LowTreewidth { k, width, outcome: OutcomeKind::Cover, cover_size, .. } => {
                if *cover_size > (k - 1) * (width + 1) {
                    return bad(format!("cover of size {cover_size} exceeds (k-1)(w+1) for k = {k}, w = {width}"));
                }
            }
            TrailStep::Peel { k, separator, .. } | TrailStep::Irrelevant { k, separator, .. } => {
                if separator.len() <= 1 || separator.len() > 3 * k {
                    return bad(format!("separator of size {} is outside (1, 3k] for k = {k}", separator.len()));
                }
            }
            _ => {}
        }
    }
    if cert.metadata.fallback != cert.trail.iter().any(|s| matches!(s, TrailStep::Fallback { .. })) {
        return bad("fallback flag disagrees with the trail".into());
    }
    Ok(())
}
