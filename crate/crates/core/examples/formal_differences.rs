// Formal differences a - b with witness-checked equality and order.

use semifrac::grothendieck::{diff_eq, triangle_leq, FormalDifference, SignedScalar};
use semifrac::{Budget, Fraction, Instance};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let budget = Budget::default();
    let f = |s: &str| Fraction::parse(s, nc);
    let zero = Fraction::zero(nc);

    let d = FormalDifference::new(f("{1+x1}")?, f("({2})^-1")?)?;
    let neg = d.scale(&"-1".parse::<SignedScalar>()?);
    println!("d = {d}\n-d = {neg}");

    // r(a-b) + s(a-b) = (r+s)(a-b), with mixed signs
    let (r, s): (SignedScalar, SignedScalar) = ("5/2".parse()?, "-3/2".parse()?);
    let lhs = d.scale(&r).add(&d.scale(&s))?;
    let rhs = d.scale(&r.add(&s));
    println!("{lhs}  vs  {rhs}");
    assert!(diff_eq(&lhs, &rhs, &zero, &budget)?);

    let x = FormalDifference::from_fraction(f("{1+x1}")?);
    let y = FormalDifference::from_fraction(f("{2+2x1}")?);
    assert!(triangle_leq(&x, &y, &zero, &budget)?);
    // compatibility with adding the same difference on both sides
    assert!(triangle_leq(&x.add(&d)?, &y.add(&d)?, &zero, &budget)?);
    println!("x <| y and x + d <| y + d");
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
