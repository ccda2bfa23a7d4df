// Exponents k with u^k dominating a fraction.

use semifrac::preorder::{pu_pre_lift, verify_pu_witness};
use semifrac::{pu_witness, Budget, Fraction, Instance, Scalar};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let budget = Budget::default();
    let lambda = Scalar::from_int(2);
    for s in [
        "{1}",
        "8 . {1}",
        "{2 + x1 x1} * {2}",
        "({1+x1})^-1 + {3}",
        "1/5 . ({2 + x1})^-1 * {1 + x1 x1}",
    ] {
        let x = Fraction::parse(s, nc)?;
        let w = pu_witness(&x, &lambda, &budget)?;
        println!(
            "{:<36} pre-lift {:>2}  lift {:>2}  k = {}",
            x.rep().render(),
            w.pre_lift,
            w.lift,
            w.total
        );
        assert!(verify_pu_witness(&x, w.total, &budget)?);
        assert_eq!(w.pre_lift, pu_pre_lift(x.rep(), &lambda)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
