//! Isosceles right triangles whose legs follow the square's diagonals.

use tripack::dispatch::pack_square_iso_diag;
use tripack::exact::ratio;

fn main() {
    let sides = vec![ratio(1, 2), ratio(2, 5), ratio(1, 5), ratio(1, 10)];
    let result = pack_square_iso_diag(&sides).unwrap();
    println!("case {}", result.trace.case_path);
    for p in &result.placements {
        let (x, y) = p.vertices[0].to_f64();
        println!("  #{} leg {}: first vertex {:?} ≈ ({x:.6}, {y:.6})", p.index, p.size, p.vertices[0]);
    }
    println!("area {}", result.certificate.total_area);

    // the inscribed square has side √2/2 ≈ 0.7071
    println!("leg 71/100: {}", pack_square_iso_diag(&[ratio(71, 100)]).unwrap_err());
}
