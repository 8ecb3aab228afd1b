//! Area lower bounds of the dispatcher cases at their minimizing sizes,
//! compared with the critical densities 1/2 and √3/4.

use tripack::dispatch::evaluate_case_lower_bound;
use tripack::exact::{consts, QuadExt};

fn main() {
    let q = QuadExt::frac;
    let s = |p, d| QuadExt::surd(p, d, 3);
    let a = q(1, 4) + s(1, 12);
    let c122 = s(4, 19) - q(2, 19);
    let c21 = q(8, 35) + s(2, 21);
    let m = QuadExt::one() - s(1, 3);
    let points: Vec<(&str, Vec<QuadExt>)> = vec![
        ("ISO/1", vec![q(1, 3); 3]),
        ("ISO/2", vec![q(1, 2); 3]),
        ("EQ/1.1.1", vec![q(3, 4) - s(1, 12), a.clone(), a.clone(), a]),
        ("EQ/1.1.2", vec![s(1, 3), q(2, 1) - s(8, 9), s(2, 9), s(2, 9)]),
        ("EQ/1.2.2.2", vec![q(36, 57) + s(4, 57), q(42, 57) - s(8, 57), c122.clone(), c122]),
        ("EQ/2.1", vec![q(2, 5), q(2, 5), c21.clone(), c21]),
        ("EQ/2.2.2.1", vec![s(1, 3), m.clone(), m.clone(), s(4, 21), s(4, 21)]),
        ("EQ/2.2.2.2", vec![s(1, 3), m.clone(), m.clone(), m, s(1, 5)]),
        ("EQ/3", vec![q(2, 5)]),
    ];
    let eq_critical = consts::half_sqrt3().half();
    for (case, ts) in points {
        let v = evaluate_case_lower_bound(case, &ts).unwrap();
        let critical = if case.starts_with("ISO") { q(1, 2) } else { eq_critical.clone() };
        println!("{case:<11} {v:<20} ≈ {:.9}  vs {critical}: {:?}", v.to_f64(), v.cmp(&critical));
    }
}
