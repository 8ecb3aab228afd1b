//! Seeded instances at full density, packed, saved and drawn.
//!
//! Writes into the directory given as the first argument (default: the
//! system temp dir).

use std::path::PathBuf;

use tripack::exact::ratio;
use tripack::gen::{gen_instance, Profile};
use tripack::io::{InstanceFamily, PackingFile};
use tripack::svg::write_svg;

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    for (family, profile) in [
        (InstanceFamily::IsoAxis, Profile::UniformSplit),
        (InstanceFamily::IsoDiag, Profile::Geometric),
        (InstanceFamily::Equilateral, Profile::FewBig),
    ] {
        let inst = gen_instance(family, &ratio(1, 1), 40, 2024, profile).unwrap();
        let packing = inst.pack().unwrap();
        let json = dir.join(format!("{}.json", family.name()));
        let svg = dir.join(format!("{}.svg", family.name()));
        packing.save(&json).unwrap();
        write_svg(&packing, &svg).unwrap();

        let reloaded = PackingFile::load(&json).unwrap();
        assert_eq!(reloaded, packing);
        println!("{:<12} {} -> {} ({})", family.name(), packing.trace.case_path, json.display(), svg.display());
    }
}
