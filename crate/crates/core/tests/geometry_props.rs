use proptest::prelude::*;
use tripack::certify::{validate_packing, validate_packing_exhaustive};
use tripack::exact::QuadExt;
use tripack::geometry::{
    clip_convex, interior_witness, interiors_disjoint, make_placement, polygon_area, strictly_inside,
    ContainerRegion, Family, Orientation, Point, TriangleKind, TrianglePlacement,
};

const GRID: i64 = 24;

fn kind(equilateral: bool, rotated: bool) -> TriangleKind {
    TriangleKind {
        family: if equilateral { Family::Equilateral } else { Family::IsoRight },
        orientation: if rotated { Orientation::Rotated } else { Orientation::Base },
    }
}

/// A triangle with size and anchor on a 1/GRID lattice.
fn triangle(equilateral: bool) -> impl Strategy<Value = TrianglePlacement> {
    (any::<bool>(), 1i64..=GRID / 2, 0i64..=GRID, 0i64..=GRID).prop_map(move |(rot, s, x, y)| {
        let anchor = Point { x: QuadExt::frac(x, GRID), y: QuadExt::frac(y, GRID) };
        make_placement(kind(equilateral, rot), QuadExt::frac(s, GRID), anchor).unwrap()
    })
}

fn pair() -> impl Strategy<Value = (TrianglePlacement, TrianglePlacement)> {
    any::<bool>().prop_flat_map(|eq| (triangle(eq), triangle(eq)))
}

/// Rasterization oracle: some point of a fine lattice lies strictly inside
/// both triangles.
fn raster_overlap(a: &TrianglePlacement, b: &TrianglePlacement) -> bool {
    let k = 4 * GRID;
    let span = |t: &TrianglePlacement, axis: usize| {
        t.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let c = if axis == 0 { v.to_f64().0 } else { v.to_f64().1 };
            (lo.min(c), hi.max(c))
        })
    };
    // lattice indices covering the common bounding box
    let range = |axis| {
        let ((alo, ahi), (blo, bhi)) = (span(a, axis), span(b, axis));
        let (lo, hi) = (alo.max(blo), ahi.min(bhi));
        ((lo * k as f64).floor() as i64 - 1)..((hi * k as f64).ceil() as i64 + 1)
    };
    range(0).any(|i| {
        range(1).any(|j| {
            let p = Point { x: QuadExt::frac(2 * i + 1, 2 * k), y: QuadExt::frac(2 * j + 1, 2 * k) };
            strictly_inside(&a.vertices, &p) && strictly_inside(&b.vertices, &p)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sat_agrees_with_clipping_and_raster((a, b) in pair()) {
        let disjoint = interiors_disjoint(&a, &b);
        let clipped = clip_convex(&a.vertices, &b.vertices);
        let overlap_area = if clipped.len() < 3 { QuadExt::zero() } else { polygon_area(&clipped) };
        prop_assert_eq!(disjoint, overlap_area.is_zero());
        if raster_overlap(&a, &b) {
            prop_assert!(!disjoint);
        }
        if !disjoint {
            let w = interior_witness(&a.vertices, &b.vertices).unwrap();
            prop_assert!(strictly_inside(&a.vertices, &w) && strictly_inside(&b.vertices, &w));
        }
    }

    #[test]
    fn sat_is_symmetric((a, b) in pair()) {
        prop_assert_eq!(interiors_disjoint(&a, &b), interiors_disjoint(&b, &a));
    }

    #[test]
    fn decisions_survive_translation((a, b) in pair(), dx in -50i64..50, dy in -50i64..50, den in 1i64..30) {
        let (dx, dy) = (QuadExt::frac(dx, den), QuadExt::frac(dy, den));
        let (ta, tb) = (a.translate(&dx, &dy), b.translate(&dx, &dy));
        prop_assert_eq!(interiors_disjoint(&a, &b), interiors_disjoint(&ta, &tb));

        let square = ContainerRegion::rect(QuadExt::int(2), QuadExt::int(2), Point::origin());
        let moved = ContainerRegion::rect(QuadExt::int(2), QuadExt::int(2), Point { x: dx, y: dy });
        let before = validate_packing(&square, &[a.clone().with_index(1), b.clone().with_index(2)]);
        let after = validate_packing(&moved, &[ta.with_index(1), tb.with_index(2)]);
        prop_assert_eq!(before.is_ok(), after.is_ok());
    }

    #[test]
    fn pruned_matches_exhaustive(ts in prop::collection::vec(triangle(false), 1..12)) {
        let ts: Vec<TrianglePlacement> = ts.into_iter().enumerate().map(|(i, t)| t.with_index(i + 1)).collect();
        let square = ContainerRegion::rect(QuadExt::int(2), QuadExt::int(2), Point::origin());
        let pruned = validate_packing(&square, &ts).is_ok();
        let full = validate_packing_exhaustive(&square, &ts).is_ok();
        prop_assert_eq!(pruned, full);
    }
}

#[test]
fn touching_edges_are_disjoint() {
    let base = make_placement(kind(false, false), QuadExt::frac(1, 2), Point::origin()).unwrap();
    let partner = make_placement(
        kind(false, true),
        QuadExt::frac(1, 2),
        Point { x: QuadExt::frac(1, 2), y: QuadExt::frac(1, 2) },
    )
    .unwrap();
    assert!(interiors_disjoint(&base, &partner));
    assert!(!raster_overlap(&base, &partner));
    assert!(raster_overlap(&base, &base));
    let corner = make_placement(
        kind(false, false),
        QuadExt::frac(1, 2),
        Point { x: QuadExt::frac(1, 2), y: QuadExt::frac(1, 2) },
    )
    .unwrap();
    assert!(interiors_disjoint(&base, &corner));
}

#[test]
fn irrational_coordinates() {
    // equilateral side 1 apex at (1/2, √3/2); a copy shifted by √3/2 - 1/2
    let t = make_placement(kind(true, false), QuadExt::one(), Point::origin()).unwrap();
    let shift = QuadExt::surd(1, 2, 3) - QuadExt::frac(1, 2);
    let u = t.translate(&shift, &QuadExt::zero());
    assert!(!interiors_disjoint(&t, &u));
    let v = t.translate(&QuadExt::one(), &QuadExt::zero());
    assert!(interiors_disjoint(&t, &v));
}
