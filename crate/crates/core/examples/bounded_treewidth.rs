//! Packing or cover from a tree decomposition.

use epkit::decomposition::{packing_or_cover_bounded_tw, tree_decomposition, PackingOrCover, TdMode};
use epkit::generate::{generate, Family};

fn main() -> epkit::Result<()> {
    let g = generate(&Family::ZmGrid { m: 3, r: 3, c: 4 }, 7)?.graph;
    let td = tree_decomposition(&g, TdMode::Exact)?;
    td.validate(&g)?;
    println!("{} bags, width {}", td.len(), td.width());

    for k in 1..=4 {
        match packing_or_cover_bounded_tw(&g, k, &td)? {
            PackingOrCover::Packing(p) => {
                let sizes: Vec<usize> = p.cycles.iter().map(|c| c.len()).collect();
                println!("k = {k}: packing, cycle lengths {sizes:?}");
            }
            PackingOrCover::Cover(c) => {
                println!("k = {k}: cover {:?} (bound {})", c.vertices, (k - 1) * (td.width() + 1));
            }
        }
    }
    println!("{}", serde_json::to_string(&td.to_file())?);
    Ok(())
}
