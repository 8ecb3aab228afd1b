mod common;

use common::{free_case, hypothesis_case, ENGINES};
use tripack::certify::validate_packing;
use tripack::exact::QuadExt;
use tripack::geometry::triangle_area;
use tripack::layer::{pack_items, Item};

const TRIALS: u64 = 400;

fn area_of(dims: &tripack::layer::EngineDims, sizes: &[QuadExt]) -> QuadExt {
    sizes.iter().fold(QuadExt::zero(), |acc, s| acc + triangle_area(dims.family(), s))
}

#[test]
fn hypothesis_implies_success() {
    for engine in ENGINES {
        for seed in 0..TRIALS {
            let (dims, sizes) = hypothesis_case(engine, seed);
            let placed = pack_items(&dims, &Item::sequence(&sizes))
                .unwrap_or_else(|f| panic!("{engine:?} seed {seed} {dims:?}: {f}"));
            assert_eq!(placed.len(), sizes.len());
            let cert = validate_packing(&dims.region(), &placed).unwrap();
            assert_eq!(cert.total_area, area_of(&dims, &sizes));
        }
    }
}

#[test]
fn any_returned_packing_is_valid() {
    for engine in ENGINES {
        for seed in 0..TRIALS {
            let (dims, sizes) = free_case(engine, seed);
            match pack_items(&dims, &Item::sequence(&sizes)) {
                Ok(placed) => {
                    validate_packing(&dims.region(), &placed)
                        .unwrap_or_else(|v| panic!("{engine:?} seed {seed}: {v}"));
                }
                Err(f) => {
                    // partial placements are valid too
                    validate_packing(&dims.region(), &f.placed).unwrap();
                    assert_eq!(f.achieved_area, area_of(&dims, &sizes[..f.placed.len()]));
                }
            }
        }
    }
}

#[test]
fn failures_are_honest_and_monotone() {
    for engine in ENGINES {
        for seed in 0..TRIALS {
            let (dims, sizes) = free_case(engine, seed);
            let Err(f) = pack_items(&dims, &Item::sequence(&sizes)) else { continue };
            let prefix = &sizes[..f.stop_index - 1];
            let ok = pack_items(&dims, &Item::sequence(prefix))
                .unwrap_or_else(|g| panic!("{engine:?} seed {seed}: prefix failed too: {g}"));
            assert_eq!(ok, f.placed);

            let mut longer = sizes.clone();
            let last = sizes.last().unwrap().clone();
            longer.extend([last.half(), last.half().half()]);
            let g = pack_items(&dims, &Item::sequence(&longer)).unwrap_err();
            assert!(g.stop_index >= f.stop_index);
        }
    }
}

#[test]
fn deterministic() {
    for engine in ENGINES {
        let (dims, sizes) = hypothesis_case(engine, 99);
        let a = pack_items(&dims, &Item::sequence(&sizes));
        let b = pack_items(&dims, &Item::sequence(&sizes));
        assert_eq!(a, b);
    }
}

#[test]
fn empty_input_is_empty_output() {
    for engine in ENGINES {
        let (dims, _) = hypothesis_case(engine, 1);
        assert!(pack_items(&dims, &[]).unwrap().is_empty());
    }
}
