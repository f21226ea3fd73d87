//! Walk values, rotation and reversal on a small Z_5-labeled graph.

use epkit::{is_non_null_cycle, walk_value, Direction, GroupElement, GroupSpec, LabeledGraph, Step, Walk};

fn main() -> epkit::Result<()> {
    let mut g = LabeledGraph::new(GroupSpec::Cyclic(5), 4)?;
    let group = g.group().clone();
    for (u, v, l) in [(0, 1, 1), (1, 2, 2), (2, 3, 0), (3, 0, 1), (0, 2, 4)] {
        g.add_arc(u, v, GroupElement::cyclic(&group, l)?)?;
    }

    let f = |arc| Step { arc, dir: Direction::Forward };
    let square = Walk::new(&g, 0, vec![f(0), f(1), f(2), f(3)])?;
    println!("square {:?} has value {}", square.vertices(&g), walk_value(&g, &square)?);
    println!("rotated by 2: {}", walk_value(&g, &square.rotated(&g, 2))?);
    println!("reversed: {}", walk_value(&g, &square.reversed(&g))?);

    // Going 0 -> 2 along the chord and back along 2 -> 1 -> 0.
    let r = |arc| Step { arc, dir: Direction::Reverse };
    let triangle = Walk::new(&g, 0, vec![f(4), r(1), r(0)])?;
    println!("triangle value {}, non-null: {}", walk_value(&g, &triangle)?, is_non_null_cycle(&g, &triangle)?);
    println!("{}", triangle.to_json());
    Ok(())
}
