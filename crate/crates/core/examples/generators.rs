//! Instance families and their JSON encoding.

use epkit::generate::{generate, Family, Gadget};
use epkit::GroupSpec;

fn main() -> epkit::Result<()> {
    let families = [
        Family::OddCycles { n: 6, m: 8 },
        Family::EscherWall { h: 2 },
        Family::ZmGrid { m: 4, r: 2, c: 3 },
        Family::Random { n: 5, m: 6, group: GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)]) },
        Family::SubdividedClique { ell: 4, subdivisions: 1, gadget: Gadget::OddTriangle },
    ];
    for fam in &families {
        let out = generate(fam, 42)?;
        println!("{}", serde_json::to_string(fam)?);
        println!("  {}", out.graph.to_json());
        if let Some(eta) = out.expansion {
            println!("  witness {}", serde_json::to_string(&eta.to_file())?);
        }
    }
    Ok(())
}
