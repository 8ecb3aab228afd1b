//! The four shelf engines on small hand-checkable inputs.

use tripack::exact::{consts, QuadExt};
use tripack::geometry::TrianglePlacement;
use tripack::layer::{pack_eq_rect, pack_eq_trap, pack_iso_rect, pack_iso_tri};

fn show(title: &str, placed: &[TrianglePlacement]) {
    println!("{title}");
    for p in placed {
        let [a, b, c] = &p.vertices;
        println!("  #{} {:?} size {}: {a:?} {b:?} {c:?}", p.index, p.kind.orientation, p.size);
    }
}

fn main() {
    let half = |n| vec![QuadExt::frac(1, 2); n];

    show("iso rect 1x1, [1/2 x4]", &pack_iso_rect(&QuadExt::one(), &QuadExt::one(), &half(4)).unwrap());
    show("iso tri leg 1, [1/2 x4]", &pack_iso_tri(&QuadExt::one(), &half(4)).unwrap());
    show("eq rect 1x1, [1/2 x4]", &pack_eq_rect(&QuadExt::one(), &QuadExt::one(), &half(4)).unwrap());
    let h = consts::half_sqrt3();
    show("eq trap b=1/2 h=√3/2, [1/2 x5]", &pack_eq_trap(&QuadExt::frac(1, 2), &h, &half(5)).unwrap());

    // a layer that cannot hold the next triangle reports where it stopped
    let quarters = vec![QuadExt::frac(1, 4); 20];
    let err = pack_iso_rect(&QuadExt::one(), &QuadExt::frac(1, 2), &quarters).unwrap_err();
    println!("overflow: stopped at #{} ({:?}), area so far {}", err.stop_index, err.reason, err.achieved_area);
}
