//! Relabel a clean vertex set so every arc inside it carries the identity.

use epkit::{find_consistent_labeling, untangle, GroupElement, GroupSpec, LabeledGraph, LabelingOutcome, VertexSet};

fn main() -> epkit::Result<()> {
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(4), 5)?;
    let group = g.group().clone();
    // {0, 1, 2, 3} is clean: 1 + 2 - 3 = 0 around the square, and the chord agrees.
    for (u, v, l) in [(0, 1, 1), (1, 2, 2), (3, 2, 3), (0, 3, 0), (1, 3, 3), (3, 4, 1), (4, 0, 1)] {
        g.add_arc(u, v, GroupElement::cyclic(&group, l)?)?;
    }
    let inside: VertexSet = (0..4).collect();

    match find_consistent_labeling(&g.induced_subgraph(&inside)?) {
        LabelingOutcome::Consistent(lambda) => {
            let labels: Vec<String> = lambda.iter().map(|(v, x)| format!("{v}:{x}")).collect();
            println!("consistent labeling {}", labels.join(" "));
        }
        LabelingOutcome::NonNullCycle(c) => println!("not clean, witness {}", c.to_json()),
    }

    let h = untangle(&g, &inside)?;
    for ((id, before), (_, after)) in g.arcs().zip(h.arcs()) {
        println!("arc {id} {}->{}: {} becomes {}", before.tail, before.head, before.label, after.label);
    }
    match find_consistent_labeling(&h) {
        LabelingOutcome::Consistent(_) => println!("whole graph clean"),
        LabelingOutcome::NonNullCycle(c) => println!("non-null cycle survives: {:?}", c.vertices(&h)),
    }
    Ok(())
}
