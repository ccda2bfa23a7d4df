// Arithmetic in the fraction semialgebra, normal forms, and equality with
// replayable rewrite traces.

use semifrac::fraction::replay;
use semifrac::{eq, normalize, Budget, EqEvidence, EqVerdict, Fraction, Instance};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let budget = Budget::default();

    let a = Fraction::parse("{1+x1}", nc)?;
    let b = Fraction::parse("{2+x1}", nc)?;
    // a * b^-1 * b collapses back to a
    let c = a.mul(&b.inv()?)?.mul(&b)?;
    println!("c = {}", c.rep());
    println!("normal form: {}", normalize(c.rep())?);

    match eq(&c, &a, &budget)? {
        EqVerdict::Equal(EqEvidence::Rewrites(trace)) => {
            println!("equal in {} steps", trace.len());
            for s in trace.iter().take(4) {
                println!("  {s}");
            }
            assert_eq!(replay(c.rep(), &trace)?, *a.rep());
        }
        other => panic!("unexpected {other:?}"),
    }

    // different values at a point refute equality
    let v = eq(&a.inv()?, &b.inv()?, &budget)?;
    if let EqVerdict::NotEqual(h) = &v {
        println!("(1+x1)^-1 != (2+x1)^-1, witness x1 = {}", h.point[0]);
    }
    assert!(v.is_not_equal());

    // x y^-1 against y^-1 x: every hom into Q+ agrees on them and no short
    // rewrite proof exists, so the answer stays open
    let d = Fraction::parse("{1 + x1 x2} * ({1 + x2})^-1", Instance::PolyNc(2))?;
    let e = Fraction::parse("({1 + x2})^-1 * {1 + x1 x2}", Instance::PolyNc(2))?;
    println!("x y^-1 vs y^-1 x: {}", eq(&d, &e, &budget)?.name());
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
