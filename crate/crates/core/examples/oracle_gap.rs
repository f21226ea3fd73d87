//! Integral and half-integral packing numbers differ on a small Escher wall.

use epkit::generate::{generate, Family};
use epkit::oracle::{exact, OracleConfig};

fn main() -> epkit::Result<()> {
    let g = generate(&Family::EscherWall { h: 2 }, 0)?.graph;
    let r = exact(&g, &OracleConfig::default())?;
    println!("escher wall h = 2: {} vertices, {} arcs", g.num_vertices(), g.num_arcs());
    println!("min gfvs            {} {:?}", r.min_gfvs_size, r.min_gfvs);
    println!("max integral        {}", r.max_integral_packing);
    println!("max half-integral   {}", r.max_half_integral_packing);
    for c in &r.half_integral_packing {
        println!("  {:?}", c.vertices(&g));
    }
    Ok(())
}
