// The four comparison conditions on the worked case x = 2 + x1^2,
// y = 1 + 2 x1 in polync:1.

use semifrac::vergleich::{
    check_condition_a, check_condition_d, derive_condition_d, search_condition_b,
    search_condition_c, verify_condition_c, UniPoly,
};
use semifrac::{Budget, Instance, Scalar};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);
    let x = nc.parse_element("2 + x1 x1", 0)?;
    let y = nc.parse_element("1 + 2x1", 0)?;
    let budget = Budget::default();
    let q = |s: &str| s.parse::<Scalar>();

    let a = check_condition_a(&x, &y, 1000, budget.seed)?;
    println!("(a) {a:?}");

    let b = search_condition_b(&x, &y, &q("1/2")?, budget.m_max)?.expect("m exists");
    println!("(b) eps = 1/2: m = {}, lhs = {}", b.m, b.lhs);
    assert_eq!(b.m, 3);

    let c = search_condition_c(&x, &y, &q("2")?, &q("1")?, &budget)?.expect("p exists");
    println!(
        "(c) r = 2, eps = 1: p = {} via {:?}, p(2) = {}",
        c.p, c.route, c.p_at_r
    );
    assert!(verify_condition_c(&x, &y, &q("2")?, &q("1")?, &c.p)?);

    let d = derive_condition_d(&x, &y, &q("2")?, &q("1/2")?, &budget)?.expect("p exists");
    println!("(d) k = {}, p0 = {}, p = {}", d.k, d.p0, d.p);
    assert!(check_condition_d(&x, &y, &d.p, &q("2")?, &q("1/2")?)?);

    // check mode on a hand-written polynomial
    let p: UniPoly = "1 + 1/8X".parse()?;
    println!("p(2) = {}", p.eval(&q("2")?));
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
