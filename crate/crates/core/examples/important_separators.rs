//! Important separators between two terminal sets, checked against the
//! definition by brute force.

use epkit::cuts::{enumerate_important_separators, is_important};
use epkit::{GroupElement, GroupSpec, LabeledGraph, VertexSet};

fn main() -> epkit::Result<()> {
    // Two parallel routes 0-1-2-5 and 0-3-4-5 plus a shortcut 1-4.
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(2), 6)?;
    let zero = GroupElement::identity(g.group());
    for (u, v) in [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5), (1, 4)] {
        g.add_arc(u, v, zero.clone())?;
    }
    let (x, y) = (VertexSet::from([0]), VertexSet::from([5]));
    for k in 1..=3 {
        let found = enumerate_important_separators(&g, &x, &y, k)?;
        println!("k = {k}: {} important separators", found.separators.len());
        for s in &found.separators {
            println!("  {:?} reaching {:?}", s.separator, s.reach);
        }
    }

    let mut brute = Vec::new();
    for mask in 0u32..1 << 4 {
        let s: VertexSet = (1..5).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        if s.len() <= 3 && is_important(&g, &x, &y, &s) {
            brute.push(s);
        }
    }
    println!("by definition: {brute:?}");
    Ok(())
}
