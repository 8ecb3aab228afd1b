//! Triangle placements, convex containers and the exact predicates every
//! packing must satisfy.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{consts, QuadExt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("triangle size must be positive, got {0}")]
    BadSize(QuadExt),
    #[error("container dimension must be non-negative: {0}")]
    BadDimension(String),
    #[error("frame maps an isosceles right triangle onto a mirror image")]
    MirroredIsosceles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    IsoRight,
    Equilateral,
}

/// `Base` is the reference position, `Rotated` its 180° rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Base,
    Rotated,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Base => Orientation::Rotated,
            Orientation::Rotated => Orientation::Base,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleKind {
    pub family: Family,
    pub orientation: Orientation,
}

impl TriangleKind {
    pub const ISO_BASE: Self = Self { family: Family::IsoRight, orientation: Orientation::Base };
    pub const ISO_ROTATED: Self =
        Self { family: Family::IsoRight, orientation: Orientation::Rotated };
    pub const EQ_BASE: Self = Self { family: Family::Equilateral, orientation: Orientation::Base };
    pub const EQ_ROTATED: Self =
        Self { family: Family::Equilateral, orientation: Orientation::Rotated };
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: QuadExt,
    pub y: QuadExt,
}

impl Point {
    pub fn new(x: impl Into<QuadExt>, y: impl Into<QuadExt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        Self::new(0, 0)
    }

    pub fn translate(&self, dx: &QuadExt, dy: &QuadExt) -> Self {
        Self { x: &self.x + dx, y: &self.y + dy }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One packed triangle: its input position, size and explicit vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePlacement {
    pub index: usize,
    pub size: QuadExt,
    pub kind: TriangleKind,
    pub vertices: [Point; 3],
}

/// Places a triangle of the given kind and size at `anchor`.
///
/// Anchors: the right-angle vertex for isosceles triangles (lower-left for
/// `Base`, upper-right for `Rotated`), the left end of the base for an
/// apex-up equilateral triangle and the apex for an apex-down one.
pub fn make_placement(
    kind: TriangleKind,
    size: QuadExt,
    anchor: Point,
) -> Result<TrianglePlacement, GeometryError> {
    if !size.is_positive() {
        return Err(GeometryError::BadSize(size));
    }
    let Point { x, y } = anchor;
    let t = &size;
    let vertices = match (kind.family, kind.orientation) {
        (Family::IsoRight, Orientation::Base) => [
            Point { x: x.clone(), y: y.clone() },
            Point { x: &x + t, y: y.clone() },
            Point { x: x.clone(), y: &y + t },
        ],
        (Family::IsoRight, Orientation::Rotated) => [
            Point { x: x.clone(), y: y.clone() },
            Point { x: &x - t, y: y.clone() },
            Point { x: x.clone(), y: &y - t },
        ],
        (Family::Equilateral, Orientation::Base) => {
            let h = t * consts::half_sqrt3();
            [
                Point { x: x.clone(), y: y.clone() },
                Point { x: &x + t, y: y.clone() },
                Point { x: &x + t.half(), y: &y + h },
            ]
        }
        (Family::Equilateral, Orientation::Rotated) => {
            let h = t * consts::half_sqrt3();
            let top = &y + h;
            [
                Point { x: x.clone(), y: y.clone() },
                Point { x: &x - t.half(), y: top.clone() },
                Point { x: &x + t.half(), y: top },
            ]
        }
    };
    Ok(TrianglePlacement { index: 0, size, kind, vertices })
}

impl TrianglePlacement {
    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    /// Closed-form area from the size.
    pub fn area(&self) -> QuadExt {
        triangle_area(self.kind.family, &self.size)
    }

    pub fn shoelace_area(&self) -> QuadExt {
        polygon_area(&self.vertices)
    }

    pub fn translate(&self, dx: &QuadExt, dy: &QuadExt) -> Self {
        let mut out = self.clone();
        for v in &mut out.vertices {
            *v = v.translate(dx, dy);
        }
        out
    }

    /// The anchor `make_placement` would need to reproduce this triangle.
    pub fn anchor(&self) -> Point {
        let (x_lo, x_hi) = self.x_extent();
        let (y_lo, y_hi) = self.y_extent();
        match (self.kind.family, self.kind.orientation) {
            (_, Orientation::Base) => Point { x: x_lo, y: y_lo },
            (Family::IsoRight, Orientation::Rotated) => Point { x: x_hi, y: y_hi },
            (Family::Equilateral, Orientation::Rotated) => Point { x: (x_lo + x_hi).half(), y: y_lo },
        }
    }

    pub fn y_extent(&self) -> (QuadExt, QuadExt) {
        extent(self.vertices.iter().map(|p| &p.y))
    }

    pub fn x_extent(&self) -> (QuadExt, QuadExt) {
        extent(self.vertices.iter().map(|p| &p.x))
    }
}

pub fn triangle_area(family: Family, size: &QuadExt) -> QuadExt {
    match family {
        Family::IsoRight => size.square().half(),
        Family::Equilateral => size.square() * QuadExt::surd(1, 4, 3),
    }
}

fn extent<'a>(mut it: impl Iterator<Item = &'a QuadExt>) -> (QuadExt, QuadExt) {
    let first = it.next().expect("non-empty polygon").clone();
    let (mut lo, mut hi) = (first.clone(), first);
    for v in it {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

/// Twice the signed area (positive for counter-clockwise order).
pub fn signed_area2(poly: &[Point]) -> QuadExt {
    let Some(o) = poly.first() else { return QuadExt::zero() };
    // fan from the first vertex
    let mut acc = QuadExt::zero();
    for w in poly[1..].windows(2) {
        let (ux, uy) = (&w[0].x - &o.x, &w[0].y - &o.y);
        let (vx, vy) = (&w[1].x - &o.x, &w[1].y - &o.y);
        acc = acc + (&ux * &vy - &vx * &uy);
    }
    acc
}

pub fn polygon_area(poly: &[Point]) -> QuadExt {
    signed_area2(poly).abs().half()
}

/// Closed half-plane `nx·x + ny·y ≤ c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub nx: QuadExt,
    pub ny: QuadExt,
    pub c: QuadExt,
}

impl HalfPlane {
    pub fn value(&self, p: &Point) -> QuadExt {
        &self.nx * &p.x + &self.ny * &p.y
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.float_side(p) {
            Some(inside) => inside,
            None => self.value(p) <= self.c,
        }
    }

    pub fn strictly_contains(&self, p: &Point) -> bool {
        match self.float_side(p) {
            Some(inside) => inside,
            None => self.value(p) < self.c,
        }
    }

    /// `Some(inside)` when the point is far from the boundary line in
    /// floating point.
    fn float_side(&self, p: &Point) -> Option<bool> {
        let (x, y) = p.to_f64();
        let (nx, ny, c) = (self.nx.to_f64(), self.ny.to_f64(), self.c.to_f64());
        let v = nx * x + ny * y - c;
        let scale = (nx * x).abs() + (ny * y).abs() + c.abs();
        let margin = 1e-9 * scale + f64::MIN_POSITIVE;
        if !v.is_finite() || !margin.is_finite() || v.abs() <= margin {
            return None;
        }
        Some(v < 0.0)
    }
}

/// Half-planes of a convex polygon in either winding order.
pub fn half_planes(poly: &[Point]) -> Vec<HalfPlane> {
    let ccw = signed_area2(poly).signum() >= 0;
    let n = poly.len();
    (0..n)
        .filter_map(|i| {
            let (p, q) = if ccw {
                (&poly[i], &poly[(i + 1) % n])
            } else {
                (&poly[(i + 1) % n], &poly[i])
            };
            let dx = &q.x - &p.x;
            let dy = &q.y - &p.y;
            if dx.is_zero() && dy.is_zero() {
                return None;
            }
            let c = &dy * &p.x - &dx * &p.y;
            Some(HalfPlane { nx: dy, ny: -dx, c })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Which way a right trapezoid widens as `y` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Widening {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RegionShape {
    Rect { width: QuadExt, height: QuadExt },
    /// Isosceles right triangle; `Base` has its right angle at the anchor
    /// (lower-left), `Rotated` has it at the anchor (upper-right).
    IsoTri { leg: QuadExt, orientation: Orientation },
    /// Right trapezoid with a 60° slant side. The anchor is the lower-left
    /// corner of its bounding box.
    RightTrap { short_base: QuadExt, height: QuadExt, slant: Side, widening: Widening },
    UnitSquare,
    Square { side: QuadExt },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainerRegion {
    pub shape: RegionShape,
    pub anchor: Point,
}

impl ContainerRegion {
    pub fn unit_square() -> Self {
        Self { shape: RegionShape::UnitSquare, anchor: Point::origin() }
    }

    pub fn square(side: QuadExt) -> Self {
        Self { shape: RegionShape::Square { side }, anchor: Point::origin() }
    }

    pub fn rect(width: QuadExt, height: QuadExt, anchor: Point) -> Self {
        Self { shape: RegionShape::Rect { width, height }, anchor }
    }

    pub fn iso_tri(leg: QuadExt, orientation: Orientation, anchor: Point) -> Self {
        Self { shape: RegionShape::IsoTri { leg, orientation }, anchor }
    }

    pub fn right_trap(
        short_base: QuadExt,
        height: QuadExt,
        slant: Side,
        widening: Widening,
        anchor: Point,
    ) -> Self {
        Self { shape: RegionShape::RightTrap { short_base, height, slant, widening }, anchor }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let dims: Vec<&QuadExt> = match &self.shape {
            RegionShape::Rect { width, height } => vec![width, height],
            RegionShape::IsoTri { leg, .. } => vec![leg],
            RegionShape::RightTrap { short_base, height, .. } => vec![short_base, height],
            RegionShape::UnitSquare => vec![],
            RegionShape::Square { side } => vec![side],
        };
        match dims.into_iter().find(|d| d.is_negative()) {
            Some(d) => Err(GeometryError::BadDimension(d.to_string())),
            None => Ok(()),
        }
    }

    /// Long base of a right trapezoid: `short + height·√3/3`.
    pub fn trap_long_base(short_base: &QuadExt, height: &QuadExt) -> QuadExt {
        short_base + height * consts::inv_sqrt3()
    }

    /// Counter-clockwise boundary vertices, consecutive duplicates removed.
    pub fn vertices(&self) -> Vec<Point> {
        let (x0, y0) = (&self.anchor.x, &self.anchor.y);
        let p = |dx: &QuadExt, dy: &QuadExt| Point { x: x0 + dx, y: y0 + dy };
        let z = QuadExt::zero();
        let mut out = match &self.shape {
            RegionShape::UnitSquare => {
                let one = QuadExt::one();
                vec![p(&z, &z), p(&one, &z), p(&one, &one), p(&z, &one)]
            }
            RegionShape::Square { side } => vec![p(&z, &z), p(side, &z), p(side, side), p(&z, side)],
            RegionShape::Rect { width, height } => {
                vec![p(&z, &z), p(width, &z), p(width, height), p(&z, height)]
            }
            RegionShape::IsoTri { leg, orientation: Orientation::Base } => {
                vec![p(&z, &z), p(leg, &z), p(&z, leg)]
            }
            RegionShape::IsoTri { leg, orientation: Orientation::Rotated } => {
                let m = -leg;
                vec![p(&z, &z), p(&m, &z), p(&z, &m)]
            }
            RegionShape::RightTrap { short_base: b, height: h, slant, widening } => {
                let long = Self::trap_long_base(b, h);
                let d = &long - b;
                match (slant, widening) {
                    (Side::Left, Widening::Down) => vec![p(&z, &z), p(&long, &z), p(&long, h), p(&d, h)],
                    (Side::Left, Widening::Up) => vec![p(&d, &z), p(&long, &z), p(&long, h), p(&z, h)],
                    (Side::Right, Widening::Down) => vec![p(&z, &z), p(&long, &z), p(b, h), p(&z, h)],
                    (Side::Right, Widening::Up) => vec![p(&z, &z), p(b, &z), p(&long, h), p(&z, h)],
                }
            }
        };
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        out
    }

    pub fn half_planes(&self) -> Vec<HalfPlane> {
        half_planes(&self.vertices())
    }

    pub fn area(&self) -> QuadExt {
        polygon_area(&self.vertices())
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.half_planes().iter().all(|hp| hp.contains(p))
    }
}

/// Closed containment: every vertex satisfies every half-plane.
pub fn contains(region: &ContainerRegion, p: &TrianglePlacement) -> bool {
    let hps = region.half_planes();
    p.vertices.iter().all(|v| hps.iter().all(|hp| hp.contains(v)))
}

/// A line `n·p = split` with the first polygon on the `≤` side when
/// `first_below` holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingAxis {
    pub nx: QuadExt,
    pub ny: QuadExt,
    pub split: QuadExt,
    pub first_below: bool,
}

impl SeparatingAxis {
    /// Re-checks the axis against both polygons.
    pub fn separates(&self, first: &[Point], second: &[Point]) -> bool {
        let proj = |p: &Point| &self.nx * &p.x + &self.ny * &p.y;
        let below = |poly: &[Point]| poly.iter().all(|p| proj(p) <= self.split);
        let above = |poly: &[Point]| poly.iter().all(|p| proj(p) >= self.split);
        if self.first_below {
            below(first) && above(second)
        } else {
            above(first) && below(second)
        }
    }
}

fn project(poly: &[Point], nx: &QuadExt, ny: &QuadExt) -> (QuadExt, QuadExt) {
    let vals: Vec<QuadExt> = poly.iter().map(|p| nx * &p.x + ny * &p.y).collect();
    extent(vals.iter())
}

/// Edge normal scaled so that one coordinate is ±1.
fn edge_normal(p: &Point, q: &Point) -> Option<(QuadExt, QuadExt)> {
    let nx = &q.y - &p.y;
    let ny = &p.x - &q.x;
    if ny.is_zero() {
        return match nx.signum() {
            0 => None,
            s => Some((QuadExt::int(i64::from(s)), QuadExt::zero())),
        };
    }
    let scale = ny.abs();
    Some((&nx / &scale, &ny / &scale))
}

fn float_gap(a: &[(f64, f64)], b: &[(f64, f64)], nx: f64, ny: f64) -> f64 {
    let span = |poly: &[(f64, f64)]| {
        poly.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, y)| {
            let v = nx * x + ny * y;
            (lo.min(v), hi.max(v))
        })
    };
    let (alo, ahi) = span(a);
    let (blo, bhi) = span(b);
    (blo - ahi).max(alo - bhi)
}

/// Separating-axis search over the edge normals of two convex polygons.
/// Touching boundaries count as separated.
pub fn separating_axis(a: &[Point], b: &[Point]) -> Option<SeparatingAxis> {
    let fa: Vec<(f64, f64)> = a.iter().map(Point::to_f64).collect();
    let fb: Vec<(f64, f64)> = b.iter().map(Point::to_f64).collect();
    let mut edges: Vec<(f64, &Point, &Point)> = Vec::with_capacity(a.len() + b.len());
    for (poly, fpoly) in [(a, &fa), (b, &fb)] {
        let n = poly.len();
        for i in 0..n {
            let ((px, py), (qx, qy)) = (fpoly[i], fpoly[(i + 1) % n]);
            let (fx, fy) = (qy - py, px - qx);
            let gap = float_gap(&fa, &fb, fx, fy) / fx.hypot(fy);
            edges.push((if gap.is_nan() { f64::NEG_INFINITY } else { gap }, &poly[i], &poly[(i + 1) % n]));
        }
    }
    // most promising axis first; the float gap only orders the exact tests
    edges.sort_by(|x, y| y.0.total_cmp(&x.0));
    for (_, p, q) in edges {
        let Some((nx, ny)) = edge_normal(p, q) else { continue };
        let (amin, amax) = project(a, &nx, &ny);
        let (bmin, bmax) = project(b, &nx, &ny);
        if amax <= bmin {
            return Some(SeparatingAxis { nx, ny, split: amax, first_below: true });
        }
        if bmax <= amin {
            return Some(SeparatingAxis { nx, ny, split: bmax, first_below: false });
        }
    }
    None
}

pub fn interiors_disjoint(p1: &TrianglePlacement, p2: &TrianglePlacement) -> bool {
    separating_axis(&p1.vertices, &p2.vertices).is_some()
}

/// Clips convex `subject` by convex `clip` (Sutherland–Hodgman).
pub fn clip_convex(subject: &[Point], clip: &[Point]) -> Vec<Point> {
    let mut out = subject.to_vec();
    for hp in half_planes(clip) {
        if out.is_empty() {
            break;
        }
        let input = std::mem::take(&mut out);
        let n = input.len();
        for i in 0..n {
            let cur = &input[i];
            let next = &input[(i + 1) % n];
            let vc = &hp.c - hp.value(cur);
            let vn = &hp.c - hp.value(next);
            let cur_in = !vc.is_negative();
            let next_in = !vn.is_negative();
            if cur_in {
                out.push(cur.clone());
            }
            if cur_in != next_in && !vc.is_zero() && !vn.is_zero() {
                let t = &vc / (&vc - &vn);
                out.push(Point {
                    x: &cur.x + &t * (&next.x - &cur.x),
                    y: &cur.y + &t * (&next.y - &cur.y),
                });
            }
        }
        out.dedup();
    }
    out
}

/// A point strictly inside both convex polygons, if their interiors meet.
pub fn interior_witness(a: &[Point], b: &[Point]) -> Option<Point> {
    let inter = clip_convex(a, b);
    if inter.len() < 3 || signed_area2(&inter).is_zero() {
        return None;
    }
    let k = QuadExt::int(inter.len() as i64);
    let sx = inter.iter().fold(QuadExt::zero(), |acc, p| acc + &p.x);
    let sy = inter.iter().fold(QuadExt::zero(), |acc, p| acc + &p.y);
    Some(Point { x: sx / &k, y: sy / k })
}

pub fn strictly_inside(poly: &[Point], p: &Point) -> bool {
    half_planes(poly).iter().all(|hp| hp.strictly_contains(p))
}

/// Axis-aligned reflection/translation `(x, y) ↦ (ox ± x, oy ± y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub origin: Point,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl Frame {
    pub fn identity() -> Self {
        Self::translation(Point::origin())
    }

    pub fn translation(origin: Point) -> Self {
        Self { origin, flip_x: false, flip_y: false }
    }

    pub fn map_point(&self, p: &Point) -> Point {
        let x = if self.flip_x { &self.origin.x - &p.x } else { &self.origin.x + &p.x };
        let y = if self.flip_y { &self.origin.y - &p.y } else { &self.origin.y + &p.y };
        Point { x, y }
    }

    /// Maps a placement; the kind tag follows the image.
    pub fn map_placement(&self, p: &TrianglePlacement) -> Result<TrianglePlacement, GeometryError> {
        let orientation = match p.kind.family {
            Family::IsoRight => {
                if self.flip_x != self.flip_y {
                    return Err(GeometryError::MirroredIsosceles);
                }
                if self.flip_x {
                    p.kind.orientation.flipped()
                } else {
                    p.kind.orientation
                }
            }
            Family::Equilateral => {
                if self.flip_y {
                    p.kind.orientation.flipped()
                } else {
                    p.kind.orientation
                }
            }
        };
        let [a, b, c] = &p.vertices;
        let image = TrianglePlacement {
            index: p.index,
            size: p.size.clone(),
            kind: TriangleKind { family: p.kind.family, orientation },
            vertices: [self.map_point(a), self.map_point(b), self.map_point(c)],
        };
        // restore the canonical vertex order
        Ok(make_placement(image.kind, image.size.clone(), image.anchor())?.with_index(p.index))
    }
}
