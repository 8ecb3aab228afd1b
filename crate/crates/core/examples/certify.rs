//! Checking a packing from scratch and reading the certificate.

use tripack::certify::{validate_packing, verify_certificate, Violation};
use tripack::exact::QuadExt;
use tripack::geometry::{make_placement, ContainerRegion, Family, Orientation, Point, TriangleKind, TrianglePlacement};

fn tri(index: usize, orientation: Orientation, size: (i64, i64), at: (i64, i64, i64)) -> TrianglePlacement {
    let kind = TriangleKind { family: Family::IsoRight, orientation };
    let anchor = Point { x: QuadExt::frac(at.0, at.2), y: QuadExt::frac(at.1, at.2) };
    make_placement(kind, QuadExt::frac(size.0, size.1), anchor).unwrap().with_index(index)
}

fn main() {
    let square = ContainerRegion::unit_square();
    // a base triangle and its rotated partner share the hypotenuse
    let ok = vec![tri(1, Orientation::Base, (1, 2), (0, 0, 1)), tri(2, Orientation::Rotated, (1, 2), (1, 1, 2))];
    let cert = validate_packing(&square, &ok).unwrap();
    println!("valid; area {}; witnesses:", cert.total_area);
    for w in &cert.pairs {
        println!("  ({}, {}) split by {}x + {}y = {}", w.i, w.j, w.axis.nx, w.axis.ny, w.axis.split);
    }
    println!("certificate re-checks: {}", verify_certificate(&cert, &ok));
    println!("{}", serde_json::to_string(&cert).unwrap());

    let bad = vec![ok[0].clone(), tri(2, Orientation::Base, (1, 2), (1, 1, 8))];
    match validate_packing(&square, &bad) {
        Err(v @ Violation::Overlap { .. }) => println!("rejected: {v}"),
        other => println!("unexpected: {other:?}"),
    }
    let outside = vec![tri(1, Orientation::Base, (1, 2), (3, 0, 4))];
    println!("rejected: {}", validate_packing(&square, &outside).unwrap_err());
}
