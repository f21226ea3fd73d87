//! The clique-expansion branch on a subdivided clique glued to an odd gadget.

use epkit::cuts::ThresholdMode;
use epkit::generate::{generate, Family, Gadget};
use epkit::paths::{clique_branch_irrelevant, clique_branch_separation, find_clique_expansion, CliqueBranchOutcome};

fn main() -> epkit::Result<()> {
    let fam = Family::SubdividedClique { ell: 6, subdivisions: 1, gadget: Gadget::OddTriangle };
    let out = generate(&fam, 0)?;
    let (g, eta) = (out.graph, out.expansion.expect("witness"));
    println!("{} vertices, K{} witness", g.num_vertices(), eta.order());

    let small = generate(&Family::SubdividedClique { ell: 5, subdivisions: 0, gadget: Gadget::None }, 0)?.graph;
    let found = find_clique_expansion(&small, 5)?.expect("K5 is its own expansion");
    println!("search on K5: centers {:?}", found.centers);

    for k in 1..=2 {
        match clique_branch_separation(&g, k, &eta, ThresholdMode::Small)? {
            CliqueBranchOutcome::Packing(p) => println!("k = {k}: {} cycles, {:?}", p.k(), p.integrality),
            CliqueBranchOutcome::Separation(sep) => {
                println!("k = {k}: separator {:?}, clean side has {} vertices", sep.separator(), sep.a_only().len());
                let inside: Vec<usize> =
                    eta.supernodes.iter().filter(|(_, s)| s.is_subset(&sep.a_only())).map(|(&m, _)| m).collect();
                match clique_branch_irrelevant(&g, k, &eta.restrict(&inside), &sep, None, ThresholdMode::Small) {
                    Ok(v) => println!("  irrelevant vertex {}", v.vertex),
                    Err(e) => println!("  no irrelevant vertex: {e}"),
                }
            }
        }
    }
    let paper = clique_branch_separation(&g, 1, &eta, ThresholdMode::Paper);
    println!("paper thresholds: {}", paper.err().map(|e| e.to_string()).unwrap_or_default());
    Ok(())
}
