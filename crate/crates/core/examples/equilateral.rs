//! Equilateral triangles in the unit square, with the case that fired.

use tripack::dispatch::{eq_case_path, pack_unit_square_eq};
use tripack::exact::{ratio, QuadExt};

fn main() {
    for sides in [
        vec![ratio(1, 2); 4],
        vec![ratio(7, 10), ratio(3, 10), ratio(1, 4), ratio(1, 5)],
        vec![ratio(9, 20), ratio(2, 5), ratio(3, 10), ratio(1, 5), ratio(1, 10)],
    ] {
        let sorted: Vec<QuadExt> = sides.iter().cloned().map(QuadExt::rational).collect();
        let path = eq_case_path(&sorted);
        match pack_unit_square_eq(&sides) {
            Ok(r) => {
                println!("{path}: candidate {} placed {} triangles", r.trace.candidate, r.placements.len());
                for e in &r.trace.explicit_placements {
                    println!("  #{} {:?}", e.index, e.rule);
                }
                if let Some(res) = &r.trace.residual {
                    println!("  residual {:?} {:?}", res.engine, res.dims);
                }
            }
            Err(e) => println!("{path}: {e}"),
        }
    }
}
