// Classical fractions num/den on commutative instances, used as a
// cross-check for the general machinery.

use semifrac::commoracle::{cf_eq, cf_leq, g_fraction, h_map, CfLeq};
use semifrac::{eq, Budget, Fraction, Instance};

pub fn run_example() -> semifrac::Result<()> {
    let c = Instance::PolyComm(1);
    let budget = Budget::default();
    let a = Fraction::parse("({1+x1} + {1}) * ({2 + x1})^-1 * {1 + x1}", c)?;
    let b = Fraction::parse("{1 + x1}", c)?;
    let (ga, gb) = (g_fraction(&a)?, g_fraction(&b)?);
    println!("G(a) = {ga}\nG(b) = {gb}");
    assert!(cf_eq(&ga, &gb)?);
    println!("eq: {}", eq(&a, &b, &budget)?.name());

    // H(G(a)) is a plain quotient of atoms
    let back = h_map(&ga)?;
    println!("H(G(a)) = {}", back.rep());
    assert!(eq(&back, &a, &budget)?.is_equal());

    let lo = g_fraction(&Fraction::parse("({2+x1})^-1", c)?)?;
    let hi = g_fraction(&Fraction::parse("({1+x1})^-1", c)?)?;
    match cf_leq(&lo, &hi, budget.t_budget, budget.samples, budget.seed)? {
        CfLeq::Holds(t) => println!("1/(2+x1) <= 1/(1+x1) with multiplier {t}"),
        other => panic!("{other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
