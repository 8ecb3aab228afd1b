//! Exact parallel packing of homothetic isosceles right triangles and
//! equilateral triangles into a unit square, with machine-checkable
//! certificates for every produced packing.

// errors carry exact points and traces; they are cold paths
#![allow(clippy::result_large_err, clippy::large_enum_variant)]

pub mod certify;
pub mod dispatch;
pub mod exact;
pub mod gen;
pub mod geometry;
pub mod io;
pub mod layer;
pub mod svg;
