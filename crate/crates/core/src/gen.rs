//! Seeded instances whose squared sizes sum to an exact budget.
//!
//! A float target on the sphere `Σ t² = R` is rounded to the grid `1/D`.
//! With four or more sizes the three largest absorb the rounding error:
//! one is nudged until the remaining integer budget is a sum of two
//! positive squares, which become the other two. All sizes then share the
//! denominator `D`. Shorter instances are pulled back onto the sphere along
//! the line through a fixed rational point of it instead.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{format_rational, rational_to_f64, Rational};
use crate::io::{Instance, InstanceFamily, InstanceMeta};

pub const DENOM_BOUND_VAR: &str = "TRIPACK_DENOM_BOUND";
const DEFAULT_DENOM_BOUND: u64 = 1_000_000;

/// The splitmix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    fn next_open(&mut self) -> f64 {
        1.0 - self.next_f64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Squared sizes from a uniform random split of the budget.
    UniformSplit,
    /// Squared sizes decaying geometrically over roughly four decades.
    Geometric,
    /// One to three large pieces holding most of the budget.
    FewBig,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::UniformSplit, Profile::Geometric, Profile::FewBig];

    pub fn name(self) -> &'static str {
        match self {
            Profile::UniformSplit => "uniform_split",
            Profile::Geometric => "geometric",
            Profile::FewBig => "few_big",
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| GenError::UnknownProfile(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("density must lie in (0, 1], got {0}")]
    BadDensity(String),
    #[error("count must be at least 1")]
    EmptyInstance,
    #[error("unknown profile {0}")]
    UnknownProfile(String),
    #[error("{radius} is not a sum of {n} rational squares")]
    NoRationalPoint { n: usize, radius: String },
}

/// Squared-size budget of a family at density 1.
pub fn budget(family: InstanceFamily) -> Rational {
    match family {
        InstanceFamily::IsoDiag => Rational::new(1.into(), 2.into()),
        InstanceFamily::IsoAxis | InstanceFamily::Equilateral => Rational::one(),
    }
}

fn denom_bound() -> u64 {
    std::env::var(DENOM_BOUND_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&d| d >= 1)
        .unwrap_or(DEFAULT_DENOM_BOUND)
}

/// Generates `n` sizes with `Σ t² = density · budget(family)` exactly,
/// sorted in non-increasing order.
///
/// Fewer than four sizes need the radius to be a sum of that many rational
/// squares; when it is not, no such instance exists and an error is
/// returned.
pub fn gen_instance(
    family: InstanceFamily,
    density: &Rational,
    n: usize,
    seed: u64,
    profile: Profile,
) -> Result<Instance, GenError> {
    if !density.is_positive() || density > &Rational::one() {
        return Err(GenError::BadDensity(format_rational(density)));
    }
    if n == 0 {
        return Err(GenError::EmptyInstance);
    }
    let radius = density * budget(family);
    let base = if n < 4 {
        let point = sphere_point(&radius, n)
            .ok_or_else(|| GenError::NoRationalPoint { n, radius: format_rational(&radius) })?;
        Some(point)
    } else {
        None
    };

    let mut rng = SplitMix64::new(seed);
    let weights = profile_weights(profile, n, &mut rng);
    let total: f64 = weights.iter().sum();
    let r = rational_to_f64(&radius);
    let target: Vec<f64> = weights.iter().map(|w| (r * w / total).sqrt()).collect();

    let mut denom = denom_bound();
    let mut sides = loop {
        let attempt = match &base {
            Some(base) => pull_onto_sphere(base, &target, denom),
            None => round_onto_sphere(&radius, &target, denom),
        };
        if let Some(sides) = attempt {
            break sides;
        }
        denom = denom.saturating_mul(1000);
    };
    sides.sort_by(|a, b| b.cmp(a));

    Ok(Instance {
        family,
        sides,
        meta: Some(InstanceMeta {
            seed,
            density: density.clone(),
            profile,
            generator: "splitmix64".into(),
        }),
    })
}

fn profile_weights(profile: Profile, n: usize, rng: &mut SplitMix64) -> Vec<f64> {
    match profile {
        Profile::UniformSplit => (0..n).map(|_| -rng.next_open().ln()).collect(),
        Profile::Geometric => {
            let step = (1e-4f64).ln() / n.max(2) as f64;
            (0..n).map(|i| (step * i as f64).exp() * (0.9 + 0.2 * rng.next_f64())).collect()
        }
        Profile::FewBig => {
            let big = (1 + (rng.next_u64() % 3) as usize).min(n);
            let small = n - big;
            let mut w: Vec<f64> = (0..big).map(|_| 0.5 + rng.next_f64()).collect();
            let big_total: f64 = w.iter().sum();
            let share = if small == 0 { 0.0 } else { 0.2 / 0.8 * big_total / small as f64 };
            w.extend((0..small).map(|_| share * (0.5 + rng.next_f64())));
            w
        }
    }
}

/// Rounds the target to multiples of `1/D` (`D` a multiple of the radius'
/// denominator) and repairs three entries so that the squares sum to the
/// radius exactly: the largest is nudged until the remaining integer budget
/// is a sum of two positive squares, which replace a pair of small entries.
/// `None` if the repair runs out of room.
fn round_onto_sphere(radius: &Rational, target: &[f64], denom: u64) -> Option<Vec<Rational>> {
    let q = radius.denom().to_u128()?;
    let d = u128::from(denom).checked_mul(q)?;
    // N = D²·p/q = denom²·q·p
    let budget =
        u128::from(denom).checked_mul(u128::from(denom))?.checked_mul(q)?.checked_mul(radius.numer().to_u128()?)?;

    let mut ints: Vec<u128> = target.iter().map(|t| ((t * d as f64).round().max(1.0)) as u128).collect();
    let mut order: Vec<usize> = (0..target.len()).collect();
    order.sort_by(|&i, &j| ints[i].cmp(&ints[j]).then(i.cmp(&j)));
    let top = order.pop()?;
    let sq = |k: u128| k * k;
    // the smallest pair that can absorb a few nudge steps of the top entry
    let pair = order
        .windows(2)
        .find(|w| sq(ints[w[0]]) + sq(ints[w[1]]) >= 8 * ints[top])
        .map_or_else(|| [order[order.len() - 2], order[order.len() - 1]], |w| [w[0], w[1]]);
    let pair_sq = sq(ints[pair[0]]) + sq(ints[pair[1]]);
    let fixed: Vec<usize> = (0..ints.len()).filter(|i| *i != top && !pair.contains(i)).collect();
    // free = a² + b² + c² needs free ≠ 4^k (8m + 7); bump a fixed entry until it holds
    let free = loop {
        let used: u128 = fixed.iter().map(|&i| sq(ints[i])).sum();
        let free = budget.checked_sub(used)?;
        if sum_of_three_squares(free) {
            break free;
        }
        let &i = fixed.first()?;
        ints[i] += 1;
    };

    let start = isqrt(free.saturating_sub(pair_sq)).max(1);
    let nudged = (0..10_000u128).flat_map(|k| [start.checked_add(k), start.checked_sub(k).filter(|_| k > 0)]);
    for a in nudged.flatten().filter(|&a| a >= 1) {
        let Some(rest) = free.checked_sub(a * a) else { continue };
        if let Some((b, c)) = balanced_two_squares(rest) {
            ints[top] = a;
            ints[pair[0]] = b;
            ints[pair[1]] = c;
            let den = BigInt::from(d);
            return Some(ints.iter().map(|&k| Rational::new(BigInt::from(k), den.clone())).collect());
        }
    }
    None
}

/// `m = b² + c²` with `b ≥ c ≥ 1`, `b` as small as possible.
fn balanced_two_squares(m: u128) -> Option<(u128, u128)> {
    let mut b = isqrt(m / 2);
    while 2 * b * b < m {
        b += 1;
    }
    while b * b < m {
        if let Some(c) = one_square(m - b * b) {
            return Some((b, c));
        }
        b += 1;
    }
    None
}

/// Second intersection of the line from `base` through the grid-rounded
/// target with the sphere, or `None` if some coordinate is not positive.
fn pull_onto_sphere(base: &[Rational], target: &[f64], denom: u64) -> Option<Vec<Rational>> {
    // common scale L = denom · lcm(base denominators); coordinates become integers
    let base_denom = base.iter().fold(BigInt::one(), |acc, b| num_integer::lcm(acc, b.denom().clone()));
    let scale = BigInt::from(denom) * &base_denom;
    let p: Vec<BigInt> = base.iter().map(|b| (b * Rational::from(base_denom.clone())).to_integer() * denom).collect();
    let u: Vec<BigInt> = target
        .iter()
        .map(|t| {
            let k = (t * denom as f64).round().max(1.0);
            BigInt::from(k as u64) * &base_denom
        })
        .collect();

    let diff: Vec<BigInt> = u.iter().zip(&p).map(|(u, p)| u - p).collect();
    let num: BigInt = -2 * p.iter().zip(&diff).map(|(p, d)| p * d).sum::<BigInt>();
    let den: BigInt = diff.iter().map(|d| d * d).sum();
    let common = &scale * &den;
    let mut out = Vec::with_capacity(u.len());
    for (p, d) in p.iter().zip(&diff) {
        let x = p * &den + &num * d;
        if !x.is_positive() {
            return None;
        }
        out.push(Rational::new(x, common.clone()));
    }
    Some(out)
}

/// A rational point with non-positive coordinates on `Σ x² = radius` in
/// `n` dimensions, from a representation of `p·q` (radius `p/q`) as a sum
/// of at most four integer squares.
fn sphere_point(radius: &Rational, n: usize) -> Option<Vec<Rational>> {
    let q = radius.denom().clone();
    let m = (radius.numer() * &q).to_u128()?;
    let squares = match n {
        1 => one_square(m).map(|a| vec![a]),
        2 => two_squares(m).map(|(a, b)| vec![a, b]),
        3 => three_squares(m).map(|(a, b, c)| vec![a, b, c]),
        _ => Some(four_squares(m).to_vec()),
    }?;
    let mut point: Vec<Rational> =
        squares.into_iter().map(|a| -Rational::new(BigInt::from(a), q.clone())).collect();
    point.resize(n, Rational::zero());
    Some(point)
}

fn isqrt(m: u128) -> u128 {
    let mut r = (m as f64).sqrt() as u128;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

fn one_square(m: u128) -> Option<u128> {
    let r = isqrt(m);
    (r * r == m).then_some(r)
}

fn two_squares(m: u128) -> Option<(u128, u128)> {
    let mut a = isqrt(m);
    while 2 * a * a >= m {
        if let Some(b) = one_square(m - a * a) {
            return Some((a, b));
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    None
}

/// False exactly for `m = 4^a (8b + 7)`.
fn sum_of_three_squares(m: u128) -> bool {
    let mut k = m;
    while k > 0 && k.is_multiple_of(4) {
        k /= 4;
    }
    k % 8 != 7
}

fn three_squares(m: u128) -> Option<(u128, u128, u128)> {
    if !sum_of_three_squares(m) {
        return None;
    }
    let mut a = isqrt(m);
    loop {
        if let Some((b, c)) = two_squares(m - a * a) {
            return Some((a, b, c));
        }
        if a == 0 {
            return None;
        }
        a -= 1;
    }
}

fn four_squares(m: u128) -> [u128; 4] {
    let mut a = isqrt(m);
    loop {
        if let Some((b, c, d)) = three_squares(m - a * a) {
            return [a, b, c, d];
        }
        a -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn sum_sq(sides: &[Rational]) -> Rational {
        sides.iter().map(|s| s * s).sum()
    }

    #[test]
    fn splitmix_reference() {
        let mut g = SplitMix64::new(1234567);
        assert_eq!(g.next_u64(), 6457827717110365317);
        assert_eq!(g.next_u64(), 3203168211198807973);
    }

    #[test]
    fn single_side_is_forced() {
        let inst = gen_instance(InstanceFamily::IsoAxis, &ratio(1, 1), 1, 99, Profile::UniformSplit).unwrap();
        assert_eq!(inst.sides, vec![ratio(1, 1)]);
    }

    #[test]
    fn diagonal_pair() {
        let inst = gen_instance(InstanceFamily::IsoDiag, &ratio(1, 1), 2, 5, Profile::Geometric).unwrap();
        assert_eq!(sum_sq(&inst.sides), ratio(1, 2));
        assert!(inst.sides.iter().all(|s| s.is_positive()));
    }

    #[test]
    fn exact_budget_and_order() {
        for profile in Profile::ALL {
            for n in [3, 4, 17, 200] {
                let inst = gen_instance(InstanceFamily::Equilateral, &ratio(9, 10), n, 42, profile).unwrap();
                assert_eq!(inst.sides.len(), n);
                assert_eq!(sum_sq(&inst.sides), ratio(9, 10));
                assert!(inst.sides.windows(2).all(|w| w[0] >= w[1]));
                assert!(inst.sides.iter().all(|s| s.is_positive()));
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = gen_instance(InstanceFamily::Equilateral, &ratio(1, 1), 4, 7, Profile::FewBig).unwrap();
        let b = gen_instance(InstanceFamily::Equilateral, &ratio(1, 1), 4, 7, Profile::FewBig).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn impossible_radius() {
        // 3/8 is not a rational square and 7 = 8·0 + 7 is not a sum of three squares
        assert!(gen_instance(InstanceFamily::IsoDiag, &ratio(3, 4), 1, 0, Profile::UniformSplit).is_err());
        assert!(gen_instance(InstanceFamily::IsoAxis, &ratio(1, 7), 3, 0, Profile::UniformSplit).is_err());
        assert!(gen_instance(InstanceFamily::IsoAxis, &ratio(0, 1), 3, 0, Profile::UniformSplit).is_err());
    }
}
