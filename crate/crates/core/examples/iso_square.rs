//! Isosceles right triangles with axis-parallel legs in the unit square.

use tripack::dispatch::pack_unit_square_iso;
use tripack::exact::ratio;

fn main() {
    let sides = vec![ratio(3, 5), ratio(1, 2), ratio(2, 5), ratio(1, 5), ratio(1, 5)];
    let result = pack_unit_square_iso(&sides).expect("total area is below 1/2");
    println!("case {} via {}", result.trace.case_path, result.trace.candidate);
    for p in &result.placements {
        println!("  #{} leg {} at {:?}", p.index, p.size, p.vertices[0]);
    }
    println!("area {} with {} certified pairs", result.certificate.total_area, result.certificate.pairs.len());

    // four legs of 51/100 carry area 0.5202 > 1/2
    let err = pack_unit_square_iso(&vec![ratio(51, 100); 4]).unwrap_err();
    println!("rejected: {err}");
}
