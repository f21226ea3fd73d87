//! An irrelevant vertex inside a clean, well-connected part of the graph,
//! checked against the exact packing-or-cover predicate.

use epkit::cuts::{find_irrelevant_vertex, ThresholdMode};
use epkit::oracle::{ep_predicate, OracleConfig};
use epkit::{GroupElement, GroupSpec, LabeledGraph, Separation, VertexSet};

fn main() -> epkit::Result<()> {
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(2), 10)?;
    let (zero, one) = (GroupElement::identity(g.group()), GroupElement::cyclic(g.group(), 1)?);
    // Clean side: K5 on 0..5, attached to 5 and 6.
    for u in 0..5 {
        for v in u + 1..5 {
            g.add_arc(u, v, zero.clone())?;
        }
    }
    for (u, v) in [(5, 0), (5, 1), (6, 2), (6, 3)] {
        g.add_arc(u, v, zero.clone())?;
    }
    // Other side: an odd path 5-7-6 and an odd triangle on 7, 8, 9.
    for (u, v) in [(5, 7), (7, 6), (7, 8), (8, 9), (9, 7)] {
        g.add_arc(u, v, one.clone())?;
    }
    let sep = Separation::new((0..7).collect(), [5, 6, 7, 8, 9].into());
    let z: VertexSet = (0..5).collect();
    let k = 2;

    let found = find_irrelevant_vertex(&g, &sep, &z, 2, k, ThresholdMode::Small)?;
    println!("irrelevant vertex {} (excluded {:?})", found.vertex, found.excluded);

    let cfg = OracleConfig::default();
    let h = g.remove_vertices(&VertexSet::from([found.vertex]));
    for p in 0..=g.num_vertices() {
        let (before, after) = (ep_predicate(&g, k, p, &cfg)?, ep_predicate(&h, k, p, &cfg)?);
        if before != after {
            println!("p = {p}: EP(G) = {before}, EP(G - v) = {after}");
        }
    }
    println!("checked p = 0..={}", g.num_vertices());
    Ok(())
}
