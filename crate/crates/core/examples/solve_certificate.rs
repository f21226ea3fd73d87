//! Run the driver and check the certificate it returns.

use epkit::driver::{solve, verify_certificate, DriverConfig};
use epkit::generate::{generate, Family};
use epkit::GroupSpec;

fn main() -> epkit::Result<()> {
    let cfg = DriverConfig { oracle_fallback: true, ..DriverConfig::default() };
    for (name, fam) in [
        ("odd cycles", Family::OddCycles { n: 10, m: 16 }),
        ("Z3 random", Family::Random { n: 11, m: 20, group: GroupSpec::Cyclic(3) }),
        ("S3 random", Family::Random { n: 9, m: 14, group: GroupSpec::Symmetric(3) }),
    ] {
        let g = generate(&fam, 11)?.graph;
        for k in 1..=3 {
            let cert = solve(&g, k, &cfg)?;
            verify_certificate(&g, &cert)?;
            let steps: Vec<String> = cert
                .trail
                .iter()
                .map(|s| serde_json::to_value(s).unwrap()["step"].as_str().unwrap().to_string())
                .collect();
            let kind = serde_json::to_value(&cert.outcome)?["kind"].clone();
            println!("{name}, k = {k}: {kind} via {}", steps.join(" > "));
        }
    }
    Ok(())
}
