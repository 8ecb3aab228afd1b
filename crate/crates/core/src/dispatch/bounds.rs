//! Closed-form lower bounds on the area packed in each dispatcher case.

use thiserror::Error;

use crate::exact::{consts, QuadExt};

/// Case identifiers accepted by [`evaluate_case_lower_bound`], with the
/// number of arguments each takes.
pub const CASE_IDS: &[(&str, usize)] = &[
    ("ISO/1", 3),
    ("ISO/2", 3),
    ("EQ/1.1.1", 4),
    ("EQ/1.1.2", 4),
    ("EQ/1.2.2.2", 4),
    ("EQ/2.1", 4),
    ("EQ/2.2.2.1", 5),
    ("EQ/2.2.2.2", 5),
    ("EQ/3", 1),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("case {case} takes {expected} arguments, got {got}")]
    Arity { case: String, expected: usize, got: usize },
}

/// Evaluates the area lower bound of a case at the given sizes.
///
/// `ISO/1` takes `(t1, t2, t5)`, `ISO/2` takes `(t1, t2, t3)`, the other
/// cases take their leading sizes in order.
pub fn evaluate_case_lower_bound(case_id: &str, ts: &[QuadExt]) -> Result<QuadExt, BoundError> {
    let expected = CASE_IDS
        .iter()
        .find(|(id, _)| *id == case_id)
        .map(|(_, k)| *k)
        .ok_or_else(|| BoundError::UnknownCase(case_id.to_string()))?;
    if ts.len() != expected {
        return Err(BoundError::Arity { case: case_id.to_string(), expected, got: ts.len() });
    }
    let one = QuadExt::one();
    let q = |p, d| QuadExt::frac(p, d);
    let s = consts::sqrt3();
    let eq_area = |xs: &[QuadExt]| {
        let sum = xs.iter().fold(QuadExt::zero(), |acc, t| acc + t.square());
        &s * q(1, 4) * sum
    };

    let value = match case_id {
        "ISO/1" => {
            let (t1, t2, t5) = (&ts[0], &ts[1], &ts[2]);
            let tri = (t1.square() + t2.square() + t5.square() * q(3, 1)).half();
            tri + (&one - t1 + t2 - t5) * (&one - t2 - t5)
        }
        "ISO/2" => {
            let (t1, t2, t3) = (&ts[0], &ts[1], &ts[2]);
            let rest = q(2, 1) - t1 - t2 - t3;
            (t1.square() + t2.square() + t3.square() + rest.square()).half()
        }
        "EQ/1.1.1" | "EQ/1.1.2" | "EQ/1.2.2.2" | "EQ/2.1" => {
            let (t1, t2, t4) = (&ts[0], &ts[1], &ts[3]);
            let height = &one - &s * t2 * q(1, 2) - &s * t4 * q(1, 2);
            let width = match case_id {
                "EQ/1.1.2" => &one - t1 + t2 * q(1, 4) - t4 * q(3, 4) + &s * q(1, 6),
                "EQ/2.1" => &one + t2 * q(1, 4) - t4 * q(3, 4) - &s * q(1, 6),
                _ => &one - t1 - t2 * q(1, 4) - t4 * q(3, 4) + &s * q(1, 6),
            };
            eq_area(ts) + width * height
        }
        "EQ/2.2.2.1" | "EQ/2.2.2.2" => {
            let (t1, t3, t5) = (&ts[0], &ts[2], &ts[4]);
            let height = &one - &s * t1 * q(1, 2) - &s * t5 * q(1, 2);
            let width = if case_id == "EQ/2.2.2.1" {
                &one - t3 - t1 * q(1, 4) - t5 * q(3, 4) + &s * q(1, 6)
            } else {
                &one - t3 + t1 * q(1, 4) - t5 * q(3, 4) - &s * q(1, 6)
            };
            eq_area(ts) + width * height
        }
        "EQ/3" => {
            let t1 = &ts[0];
            eq_area(ts) + (&one - t1) * (&one - &s * t1 * q(1, 2))
        }
        _ => unreachable!("listed in CASE_IDS"),
    };
    Ok(value)
}
