//! Which vertices of a well-linked set can lie in a small multiway cut.

use epkit::cuts::{is_minimal_multiway_cut, partition_bound, partitions, tw_reduction_set, MultiwayCutInstance, ThresholdMode};
use epkit::{GroupElement, GroupSpec, LabeledGraph, VertexSet};

fn main() -> epkit::Result<()> {
    // Terminals 0 and 1 meet at 2, which also touches the K4 on {3, 4, 5, 6}.
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(2), 7)?;
    let zero = GroupElement::identity(g.group());
    let mut edges = vec![(0, 2), (2, 1)];
    for v in 3..7 {
        edges.push((2, v));
        for u in v + 1..7 {
            edges.push((v, u));
        }
    }
    for (u, v) in edges {
        g.add_arc(u, v, zero.clone())?;
    }
    let terminals = VertexSet::from([0, 1]);
    let z: VertexSet = (2..7).collect();
    let t = 2;

    let r = tw_reduction_set(&g, t, &terminals, &z, ThresholdMode::Small)?;
    println!("reduction set {:?} (per-partition bound {})", r.set, partition_bound(t));
    for part in &r.per_partition {
        println!("  partition {:?} excludes {:?}", part.partition, part.excluded);
    }

    // Every vertex of Z in a minimal cut of size <= t must be in the set.
    let others: Vec<usize> = g.vertices().filter(|v| !terminals.contains(v)).collect();
    for p in partitions(&terminals) {
        let inst = MultiwayCutInstance::new(&g, p.clone())?;
        for mask in 0u32..1 << others.len() {
            let s: VertexSet = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            if s.len() <= t && is_minimal_multiway_cut(&inst, &s) {
                let missed: Vec<_> = s.intersection(&z).filter(|v| !r.set.contains(v)).collect();
                println!("minimal cut {s:?} for {p:?}, outside the set: {missed:?}");
            }
        }
    }
    Ok(())
}
