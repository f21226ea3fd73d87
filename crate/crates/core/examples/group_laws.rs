//! Multiplying, inverting and enumerating group elements.
//!
//! ```text
//! cargo run -p epkit --example group_laws
//! ```

use std::sync::Arc;

use epkit::{GroupElement, GroupSpec};

fn main() -> epkit::Result<()> {
    let z6 = Arc::new(GroupSpec::Cyclic(6));
    let a = GroupElement::cyclic(&z6, 4)?;
    let b = GroupElement::cyclic(&z6, 5)?;
    println!("Z6: {a} + {b} = {}, -{a} = {}", a.multiply(&b), a.inverse());

    // Permutations compose left to right: (a·b)(i) = b(a(i)).
    let s3 = Arc::new(GroupSpec::Symmetric(3));
    let p = GroupElement::permutation(&s3, &[2, 1, 3])?;
    let q = GroupElement::permutation(&s3, &[1, 3, 2])?;
    println!("S3: {p} * {q} = {}, {q} * {p} = {}", p.multiply(&q), q.multiply(&p));

    let prod = Arc::new(GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Symmetric(3)]));
    let elements = GroupElement::enumerate(&prod)?;
    println!("Z2 x S3 has {} elements; {} of them are involutions", elements.len(), {
        elements.iter().filter(|x| !x.is_identity() && x.multiply(x).is_identity()).count()
    });

    let mut failures = 0;
    for x in &elements {
        for y in &elements {
            for z in &elements {
                if x.multiply(y).multiply(z) != x.multiply(&y.multiply(z)) {
                    failures += 1;
                }
            }
        }
    }
    println!("associativity failures: {failures}");
    Ok(())
}
