//! Disjoint non-null S-paths or a small set hitting all of them.

use epkit::paths::{non_null_s_paths_or_hitting_set, SPathDuality};
use epkit::generate::{generate, Family};
use epkit::{GroupSpec, VertexSet};

fn main() -> epkit::Result<()> {
    let fam = Family::Random { n: 9, m: 13, group: GroupSpec::Cyclic(3) };
    for seed in 0..4 {
        let g = generate(&fam, seed)?.graph;
        let s: VertexSet = [0, 3, 6, 8].into();
        for k in 1..=3 {
            match non_null_s_paths_or_hitting_set(&g, &s, k)? {
                SPathDuality::Paths { paths } => {
                    let ends: Vec<_> = paths.iter().map(|p| (p.start(), p.end(&g))).collect();
                    println!("seed {seed}, k = {k}: paths with ends {ends:?}");
                }
                SPathDuality::HittingSet { vertices } => {
                    println!("seed {seed}, k = {k}: hitting set {vertices:?}");
                }
            }
        }
    }
    Ok(())
}
