mod common;

use tripack::certify::validate_packing;
use tripack::dispatch::{pack_square_iso_diag, pack_unit_square_eq, pack_unit_square_iso, DispatchError, PackingResult};
use tripack::exact::{consts, ratio, QuadExt, Rational};
use tripack::gen::SplitMix64;
use tripack::geometry::{Orientation, Point, TrianglePlacement};
use tripack::io::InstanceFamily;

fn rs(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| ratio(p, q)).collect()
}

fn q(p: i64, d: i64) -> QuadExt {
    QuadExt::frac(p, d)
}

fn certified(r: &PackingResult) {
    validate_packing(&r.container, &r.placements).expect("dispatcher output validates");
}

/// Placements as a sorted list of (size, vertices) with indices dropped.
fn shapes(ps: &[TrianglePlacement]) -> Vec<String> {
    let mut out: Vec<String> = ps
        .iter()
        .map(|p| {
            let mut vs: Vec<String> = p.vertices.iter().map(|v| format!("{v:?}")).collect();
            vs.sort();
            format!("{} {:?} {}", p.size, p.kind, vs.join(" "))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn iso_single_unit_leg_fills_half() {
    let r = pack_unit_square_iso(&rs(&[(1, 1)])).unwrap();
    certified(&r);
    assert_eq!(r.placements.len(), 1);
    assert_eq!(r.placements[0].anchor(), Point::origin());
    assert_eq!(r.certificate.total_area, q(1, 2));
}

#[test]
fn iso_four_halves() {
    let r = pack_unit_square_iso(&rs(&[(1, 2); 4])).unwrap();
    certified(&r);
    assert_eq!(r.trace.case_path, "ISO/2");
    assert_eq!(r.placements[0].anchor(), Point::origin());
    assert_eq!(r.placements[1].kind.orientation, Orientation::Rotated);
    assert_eq!(r.placements[1].anchor(), Point { x: q(1, 2), y: q(1, 2) });
    assert_eq!(r.certificate.total_area, q(1, 2));
}

#[test]
fn iso_case_one_layout() {
    // t1 + t3 < 1
    let r = pack_unit_square_iso(&rs(&[(2, 5), (3, 10), (1, 5), (1, 10), (1, 10)])).unwrap();
    certified(&r);
    assert_eq!(r.trace.case_path, "ISO/1");
    let by_index = |i: usize| r.placements.iter().find(|p| p.index == i).unwrap();
    assert!(by_index(2).vertices.contains(&Point { x: q(3, 10), y: q(2, 5) }));
    assert_eq!(by_index(3).anchor(), Point { x: q(0, 1), y: q(2, 5) });
}

#[test]
fn diag_examples() {
    let r = pack_square_iso_diag(&rs(&[(7, 10)])).unwrap();
    certified(&r);
    let r = pack_square_iso_diag(&rs(&[(1, 2), (1, 2)])).unwrap();
    certified(&r);
    assert_eq!(r.certificate.total_area, q(1, 4));
    assert!(matches!(pack_square_iso_diag(&rs(&[(71, 100)])), Err(DispatchError::Unpackable { .. })));
}

#[test]
fn eq_examples() {
    let r = pack_unit_square_eq(&rs(&[(1, 1)])).unwrap();
    certified(&r);
    let apex = Point { x: q(1, 2), y: consts::half_sqrt3() };
    assert!(r.placements[0].vertices.contains(&apex));

    let r = pack_unit_square_eq(&rs(&[(39, 100); 6])).unwrap();
    certified(&r);
    assert_eq!(r.trace.case_path, "EQ/3");
    let top = r.placements.iter().flat_map(|p| p.vertices.iter().map(|v| v.y.clone())).max().unwrap();
    assert_eq!(top, consts::sqrt3() * q(39, 100));

    let r = pack_unit_square_eq(&rs(&[(1, 2); 4])).unwrap();
    certified(&r);
    assert_eq!(r.trace.case_path, "EQ/2.2.2.2");
    assert_eq!(r.placements.len(), 4);

    assert!(matches!(pack_unit_square_eq(&rs(&[(101, 100)])), Err(DispatchError::Unpackable { .. })));
}

#[test]
fn tightness_witnesses_are_rejected() {
    let iso_big = pack_unit_square_iso(&rs(&[(101, 100)]));
    let iso_four = pack_unit_square_iso(&rs(&[(51, 100); 4]));
    let diag = pack_square_iso_diag(&rs(&[(71, 100)]));
    let eq = pack_unit_square_eq(&rs(&[(101, 100)]));
    for r in [iso_big, iso_four, diag, eq] {
        assert!(matches!(r, Err(DispatchError::Unpackable { .. } | DispatchError::AreaBoundExceeded { .. })));
    }
}

#[test]
fn bad_sizes_are_rejected() {
    for family in InstanceFamily::ALL {
        assert!(matches!(family.pack(&rs(&[(1, 2), (0, 1)])), Err(DispatchError::BadInput(_))));
        assert!(matches!(family.pack(&rs(&[(-1, 2)])), Err(DispatchError::BadInput(_))));
    }
}

#[test]
fn empty_input_packs_nothing() {
    for family in InstanceFamily::ALL {
        let r = family.pack(&[]).unwrap();
        assert!(r.placements.is_empty());
    }
}

#[test]
fn input_order_does_not_matter() {
    for family in InstanceFamily::ALL {
        for (seed, inst) in common::guarantee_instances(family, 12) {
            let sides = inst.sides.clone();
            if sides.len() > 150 {
                continue;
            }
            let base = family.pack(&sides).unwrap();
            let mut rng = SplitMix64::new(seed);
            let mut shuffled = sides.clone();
            for i in (1..shuffled.len()).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                shuffled.swap(i, j);
            }
            let other = family.pack(&shuffled).unwrap();
            assert_eq!(shapes(&base.placements), shapes(&other.placements), "{} seed {seed}", family.name());
            assert_eq!(base.trace.case_path, other.trace.case_path);
        }
    }
}

#[test]
fn sizes_are_preserved() {
    for family in InstanceFamily::ALL {
        for (_, inst) in common::guarantee_instances(family, 10) {
            let r = inst.pack().unwrap();
            let mut got: Vec<(usize, QuadExt)> = r.placements.iter().map(|p| (p.index, p.size.clone())).collect();
            got.sort_by_key(|x| x.0);
            let want: Vec<(usize, QuadExt)> =
                inst.sides.iter().enumerate().map(|(i, s)| (i + 1, QuadExt::rational(s.clone()))).collect();
            assert_eq!(got, want);
        }
    }
}
