// Parsing formal rational expressions and deciding legality.
//
// `cargo run --example parse_and_classify`

use semifrac::{classify, eval_in_s, parse, Instance, LegalityClass};

pub fn run_example() -> semifrac::Result<()> {
    let nc = Instance::PolyNc(1);

    let cases = [
        ("({1+x1})^-1 * {2}", LegalityClass::NonNullLegal),
        ("({0} * {1+x1})^-1", LegalityClass::Illegal),
        ("{0} + {1}", LegalityClass::NonNullLegal),
        ("{0} * ({1+x1})^-1", LegalityClass::Null),
    ];
    for (text, want) in cases {
        let e = parse(text, nc)?;
        let got = classify(&e);
        println!("{:<28} {:>14?}  ops={}", e.render(), got, e.op_count());
        assert_eq!(got, want);
        // rendering is fully parenthesized and parses back to the same tree
        assert_eq!(parse(&e.render(), nc)?, e);
    }

    // inverse-free expressions evaluate in S directly
    let e = parse("2 . {1 + x1} * {x1 x1 + 3}", nc)?;
    println!("{} = {}", e, eval_in_s(&e)?);

    // errors carry the byte offset
    if let Err(err) = parse("{1 + x1} * ", nc) {
        println!("rejected: {err}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> semifrac::Result<()> {
    run_example()
}
