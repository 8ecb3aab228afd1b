//! Numbers of the form a + b√d with rational a, b.

use tripack::exact::{consts, parse_rational, QuadExt};

fn main() {
    let s3 = consts::sqrt3();
    let bound = evaluate();
    println!("√3/4             = {} ≈ {:.12}", consts::half_sqrt3().half(), consts::half_sqrt3().half().to_f64());
    println!("3/5 - 2√3/25     = {bound} ≈ {:.12}", bound.to_f64());
    println!("exceeds √3/4?      {}", bound > s3.clone() * QuadExt::frac(1, 4));

    // 1/(2 + √3) = 2 - √3
    let inv = QuadExt::one() / (QuadExt::int(2) + s3.clone());
    println!("1/(2+√3)         = {inv}");
    assert_eq!(inv, QuadExt::int(2) - s3);

    // √2 and √3 never meet in one number
    let mixed = consts::sqrt2().checked_add(&consts::sqrt3());
    println!("√2 + √3          -> {}", mixed.unwrap_err());

    let r = parse_rational("-14/21").unwrap();
    println!("parse \"-14/21\"   = {r}");
}

fn evaluate() -> QuadExt {
    QuadExt::frac(3, 5) - QuadExt::surd(2, 25, 3)
}
