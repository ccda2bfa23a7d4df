// The derived preorder: lessdot certificates, chains, and padding.

use semifrac::preorder::{pad, verify_padded};
use semifrac::{leq, verify_chain, Budget, Fraction, Instance, LeqVerdict};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let budget = Budget::default();
    let f = |s: &str| Fraction::parse(s, nc);

    // inversion reverses the order
    let a = f("({2+2x1})^-1 + {1}")?;
    let b = f("({1+x1})^-1 + 3 . {1+x1}")?;
    match leq(&a, &b, &budget)? {
        LeqVerdict::Holds(chain) => {
            println!("{} <= {}", a.rep(), b.rep());
            for (i, l) in chain.links.iter().enumerate() {
                println!("  link {i}: {} terms", l.cert.terms.len());
            }
            assert!(verify_chain(&chain, &budget)?);
            let (w, cert) = pad(&chain)?;
            assert!(verify_padded(&a, &b, &w, &cert, &budget)?);
            println!("  padded with w = {}", w.rep());
            let json = serde_json::to_string(&chain.record()).expect("serializable");
            println!("  certificate: {} bytes of JSON", json.len());
        }
        other => panic!("{other:?}"),
    }

    match leq(&f("{2+x1 x1}")?, &f("{1+2x1}")?, &budget)? {
        LeqVerdict::Fails(h) => println!("2+x1^2 <= 1+2x1 fails at x1 = {}", h.point[0]),
        other => panic!("{other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
