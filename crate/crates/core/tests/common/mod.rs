#![allow(dead_code)]

use std::path::PathBuf;

use serde::Serialize;
use tripack::exact::{consts, ratio, QuadExt};
use tripack::gen::{gen_instance, Profile};
use tripack::geometry::TrianglePlacement;
use tripack::io::{Instance, InstanceFamily};
use tripack::layer::{pack_eq_rect, pack_eq_trap, pack_iso_rect, pack_iso_tri, PackFailure};

#[derive(Serialize)]
struct GoldenTrace<'a> {
    engine: &'a str,
    dims: Vec<String>,
    sizes: Vec<String>,
    placed: &'a [TrianglePlacement],
    failure: Option<&'a PackFailure>,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// The five hand-simulated layer traces: (file stem, serialized trace).
pub fn layer_traces() -> Vec<(&'static str, String)> {
    let half = |n| vec![QuadExt::frac(1, 2); n];
    let one = QuadExt::one();
    type Case<'a> = (&'a str, &'a str, Vec<QuadExt>, Vec<QuadExt>, Result<Vec<TrianglePlacement>, PackFailure>);
    let cases: Vec<Case> = vec![
        ("iso_rect_half_x4", "iso_rect", vec![one.clone(), one.clone()], half(4), pack_iso_rect(&one, &one, &half(4))),
        (
            "iso_rect_three_fifths_x3",
            "iso_rect",
            vec![one.clone(), one.clone()],
            vec![QuadExt::frac(3, 5); 3],
            pack_iso_rect(&one, &one, &vec![QuadExt::frac(3, 5); 3]),
        ),
        ("iso_tri_half_x4", "iso_tri", vec![one.clone()], half(4), pack_iso_tri(&one, &half(4))),
        ("eq_rect_half_x4", "eq_rect", vec![one.clone(), one.clone()], half(4), pack_eq_rect(&one, &one, &half(4))),
        (
            "eq_trap_half_x5",
            "eq_trap",
            vec![QuadExt::frac(1, 2), consts::half_sqrt3()],
            half(5),
            pack_eq_trap(&QuadExt::frac(1, 2), &consts::half_sqrt3(), &half(5)),
        ),
    ];
    cases
        .into_iter()
        .map(|(stem, engine, dims, sizes, result)| {
            let (placed, failure) = match &result {
                Ok(p) => (p.as_slice(), None),
                Err(f) => (f.placed.as_slice(), Some(f)),
            };
            let trace = GoldenTrace {
                engine,
                dims: dims.iter().map(|d| d.to_string()).collect(),
                sizes: sizes.iter().map(|s| s.to_string()).collect(),
                placed,
                failure: failure.map(|f| f as &PackFailure),
            };
            let mut text = serde_json::to_string_pretty(&trace).unwrap();
            text.push('\n');
            (stem, text)
        })
        .collect()
}

/// Instances for the guarantee runs: `count` seeds, `n` spread over 1..=500,
/// profiles cycled. Returns the instance and the `n` actually used.
pub fn guarantee_instances(family: InstanceFamily, count: u64) -> impl Iterator<Item = (u64, Instance)> {
    (0..count).map(move |seed| {
        let mut n = 1 + (seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 32) as usize % 500;
        // Σt² = 1/2 has no rational solution with one side
        if family == InstanceFamily::IsoDiag && n == 1 {
            n = 2;
        }
        let profile = Profile::ALL[(seed % 3) as usize];
        let inst = gen_instance(family, &ratio(1, 1), n, seed, profile)
            .unwrap_or_else(|e| panic!("{} seed {seed} n {n}: {e}", family.name()));
        (seed, inst)
    })
}

#[allow(unused_imports)]
pub use engines::{free_case, hypothesis_case, ENGINES};

mod engines {
    use tripack::exact::{consts, QuadExt};
    use tripack::gen::SplitMix64;
    use tripack::geometry::{triangle_area, Family};
    use tripack::layer::{Engine, EngineDims};

    pub const ENGINES: [Engine; 4] = [Engine::IsoRect, Engine::IsoTri, Engine::EqRect, Engine::EqTrap];

    /// Rational in [lo, hi] on a 1/1000 grid.
    fn pick(rng: &mut SplitMix64, lo: f64, hi: f64) -> QuadExt {
        let k = ((lo + (hi - lo) * rng.next_f64()) * 1000.0).round().max(1.0) as i64;
        QuadExt::frac(k, 1000)
    }

    /// A length that is rational or a rational multiple of √3.
    fn length(rng: &mut SplitMix64, lo: f64, hi: f64) -> QuadExt {
        let v = pick(rng, lo, hi);
        if rng.next_u64().is_multiple_of(2) {
            v
        } else {
            // same magnitude, written as r·√3
            let r = QuadExt::frac((v.to_f64() / 3f64.sqrt() * 1000.0).round().max(1.0) as i64, 1000);
            r * consts::sqrt3()
        }
    }

    fn dims(engine: Engine, rng: &mut SplitMix64) -> EngineDims {
        match engine {
            Engine::IsoRect => EngineDims::IsoRect { width: pick(rng, 0.2, 2.0), height: pick(rng, 0.2, 2.0) },
            Engine::IsoTri => EngineDims::IsoTri { leg: pick(rng, 0.2, 2.0) },
            Engine::EqRect => EngineDims::EqRect { width: pick(rng, 0.2, 2.0), height: length(rng, 0.2, 2.0) },
            Engine::EqTrap => EngineDims::EqTrap { short_base: pick(rng, 0.05, 2.0), height: length(rng, 0.2, 2.0) },
        }
    }

    fn family(engine: Engine) -> Family {
        match engine {
            Engine::IsoRect | Engine::IsoTri => Family::IsoRight,
            Engine::EqRect | Engine::EqTrap => Family::Equilateral,
        }
    }

    /// Descending sizes from `t1` down, each a random fraction of the last,
    /// while the total area stays within `limit` (if any).
    fn sizes(rng: &mut SplitMix64, engine: Engine, t1: QuadExt, limit: Option<&QuadExt>) -> Vec<QuadExt> {
        let fam = family(engine);
        let mut total = triangle_area(fam, &t1);
        let mut out = vec![t1];
        while out.len() < 120 {
            let last = out.last().unwrap().clone();
            let next = if rng.next_u64().is_multiple_of(4) {
                last
            } else {
                // a fixed 1e-6 grid keeps denominators small
                let f = 0.55 + 0.45 * rng.next_f64();
                let k = ((last.to_f64() * f * 1e6) as i64).max(1);
                QuadExt::frac(k, 1_000_000).min(last)
            };
            let grown = &total + &triangle_area(fam, &next);
            if limit.is_some_and(|l| &grown > l) {
                break;
            }
            total = grown;
            out.push(next);
            if limit.is_none() && rng.next_u64().is_multiple_of(16) {
                break;
            }
        }
        out
    }

    /// Random container and descending sizes meeting the engine's
    /// hypothesis: `t1` under the cap and total area within the bound.
    pub fn hypothesis_case(engine: Engine, seed: u64) -> (EngineDims, Vec<QuadExt>) {
        let mut rng = SplitMix64::new(seed);
        loop {
            let dims = dims(engine, &mut rng);
            let cap = match &dims {
                EngineDims::IsoRect { width, height } => width.to_f64().min(height.to_f64()),
                EngineDims::IsoTri { leg } => leg.to_f64(),
                EngineDims::EqRect { width, height } => width.to_f64().min(height.to_f64() * 2.0 / 3f64.sqrt()),
                EngineDims::EqTrap { short_base, height } => {
                    let long = short_base.to_f64() + height.to_f64() / 3f64.sqrt();
                    long.min(height.to_f64() * 2.0 / 3f64.sqrt())
                }
            };
            let t1 = pick(&mut rng, 0.0, cap);
            if !dims.hypothesis_cap_holds(&t1) {
                continue;
            }
            let bound = dims.guarantee_bound(&t1);
            if triangle_area(family(engine), &t1) > bound {
                continue;
            }
            let sizes = sizes(&mut rng, engine, t1, Some(&bound));
            return (dims, sizes);
        }
    }

    /// Random container and sizes with no hypothesis enforced.
    pub fn free_case(engine: Engine, seed: u64) -> (EngineDims, Vec<QuadExt>) {
        let mut rng = SplitMix64::new(seed ^ 0x5EED);
        let dims = dims(engine, &mut rng);
        let t1 = pick(&mut rng, 0.05, 1.5);
        let sizes = sizes(&mut rng, engine, t1, None);
        (dims, sizes)
    }
}
