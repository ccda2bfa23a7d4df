// Extending point evaluations from S to fractions.

use semifrac::{eval_fraction, sample_homs, Fraction, Instance, MonotoneHom, Scalar};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let f = Fraction::parse("({1+x1} + {1})^-1", nc)?;
    let h = MonotoneHom::new(nc, vec![Scalar::from_int(3)])?;
    let v = eval_fraction(&h, &f)?;
    println!("f(3) = {v}");
    assert_eq!(v, Scalar::new(1, 5)?);

    // the deterministic sample family used by every falsification step
    let g = Fraction::parse("{1 + x1 x2} * ({2 + x2})^-1", Instance::PolyNc(2))?;
    for h in sample_homs(Instance::PolyNc(2), 6, 7) {
        let pt: Vec<String> = h.point.iter().map(|s| s.to_string()).collect();
        println!("  ({}) -> {}", pt.join(", "), eval_fraction(&h, &g)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
