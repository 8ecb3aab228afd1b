//! Greedy layer (shelf) packers for rectangles, isosceles right triangles
//! and 60° right trapezoids.
//!
//! All four engines share one state machine. Triangles arrive in
//! non-increasing order. The first triangle of a layer is placed upright
//! at the layer's left end and fixes the layer height. After an upright
//! triangle of size `u` the next triangle is first tried rotated by 180°
//! and nested against the upright's slanted side; otherwise it is tried
//! upright at the cursor. When neither fits a new layer is opened directly
//! above the first triangle of the current layer, and the process stops
//! if that fresh layer cannot host the triangle.

use serde::{Deserialize, Serialize};

use crate::exact::{consts, QuadExt};
use crate::geometry::{
    make_placement, triangle_area, ContainerRegion, Family, Orientation, Point, Side,
    TriangleKind, TrianglePlacement, Widening,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    IsoRect,
    IsoTri,
    EqRect,
    EqTrap,
}

/// Container dimensions for each engine, in its canonical frame with the
/// lower-left corner at the origin.
///
/// * `IsoRect`: `[0, width] × [0, height]`.
/// * `IsoTri`: right angle at the origin, legs along the axes.
/// * `EqRect`: `[0, width] × [0, height]`.
/// * `EqTrap`: vertices `(0,0)`, `(L,0)`, `(L,h)`, `(L−b,h)` with
///   `L = b + h·√3/3`; the slant side rises from the origin at 60°.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "engine", rename_all = "snake_case")]
pub enum EngineDims {
    IsoRect { width: QuadExt, height: QuadExt },
    IsoTri { leg: QuadExt },
    EqRect { width: QuadExt, height: QuadExt },
    EqTrap { short_base: QuadExt, height: QuadExt },
}

impl EngineDims {
    pub fn engine(&self) -> Engine {
        match self {
            EngineDims::IsoRect { .. } => Engine::IsoRect,
            EngineDims::IsoTri { .. } => Engine::IsoTri,
            EngineDims::EqRect { .. } => Engine::EqRect,
            EngineDims::EqTrap { .. } => Engine::EqTrap,
        }
    }

    pub fn family(&self) -> Family {
        match self.engine() {
            Engine::IsoRect | Engine::IsoTri => Family::IsoRight,
            Engine::EqRect | Engine::EqTrap => Family::Equilateral,
        }
    }

    /// The container in canonical position.
    pub fn region(&self) -> ContainerRegion {
        let o = Point::origin();
        match self {
            EngineDims::IsoRect { width, height } | EngineDims::EqRect { width, height } => {
                ContainerRegion::rect(width.clone(), height.clone(), o)
            }
            EngineDims::IsoTri { leg } => ContainerRegion::iso_tri(leg.clone(), Orientation::Base, o),
            EngineDims::EqTrap { short_base, height } => ContainerRegion::right_trap(
                short_base.clone(),
                height.clone(),
                Side::Left,
                Widening::Down,
                o,
            ),
        }
    }

    /// Strict size cap on the largest triangle under which the area
    /// guarantee applies.
    pub fn hypothesis_cap_holds(&self, t1: &QuadExt) -> bool {
        let h3 = |t: &QuadExt| t * consts::half_sqrt3();
        match self {
            EngineDims::IsoRect { width, height } => t1 < width && t1 < height,
            EngineDims::IsoTri { leg } => t1 < leg,
            EngineDims::EqRect { width, height } => t1 < width && &h3(t1) < height,
            EngineDims::EqTrap { short_base, height } => {
                let long = ContainerRegion::trap_long_base(short_base, height);
                t1 < &long && &h3(t1) < height
            }
        }
    }

    /// Total area below which the engine is guaranteed not to stop, given
    /// the largest size `t1`.
    pub fn guarantee_bound(&self, t1: &QuadExt) -> QuadExt {
        let s = consts::sqrt3();
        let h3 = t1 * consts::half_sqrt3();
        match self {
            EngineDims::IsoRect { width, height } => {
                t1.square().half() + (width - t1) * (height - t1)
            }
            EngineDims::IsoTri { leg } => t1.square().half() + (leg - t1).square().half(),
            EngineDims::EqRect { width, height } => {
                triangle_area(Family::Equilateral, t1) + (width - t1) * (height - &h3)
            }
            EngineDims::EqTrap { short_base, height } => {
                let first = short_base - t1.scale(&crate::exact::ratio(3, 4))
                    + (&s * height).scale(&crate::exact::ratio(1, 6));
                triangle_area(Family::Equilateral, t1) + first * (height - &h3)
            }
        }
    }
}

/// Evaluates the guarantee threshold of `engine` at `t1`. `dims` lists the
/// container dimensions in the engine's order: `(a, b)`, `(c)`, `(a, h)` or
/// `(b, h)`.
pub fn guarantee_bound(engine: Engine, dims: &[QuadExt], t1: &QuadExt) -> Option<QuadExt> {
    let d = engine_dims(engine, dims)?;
    Some(d.guarantee_bound(t1))
}

pub fn engine_dims(engine: Engine, dims: &[QuadExt]) -> Option<EngineDims> {
    Some(match (engine, dims) {
        (Engine::IsoRect, [a, b]) => EngineDims::IsoRect { width: a.clone(), height: b.clone() },
        (Engine::IsoTri, [c]) => EngineDims::IsoTri { leg: c.clone() },
        (Engine::EqRect, [a, h]) => EngineDims::EqRect { width: a.clone(), height: h.clone() },
        (Engine::EqTrap, [b, h]) => {
            EngineDims::EqTrap { short_base: b.clone(), height: h.clone() }
        }
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// A fresh layer could not host the triangle.
    VerticalOverflow,
    /// The largest triangle violates the engine's size cap.
    FirstTooBig,
    /// Sizes were not positive and non-increasing.
    BadInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackFailure {
    /// Index of the triangle that stopped the process.
    pub stop_index: usize,
    pub reason: StopReason,
    pub achieved_area: QuadExt,
    /// Placements made before the stop.
    pub placed: Vec<TrianglePlacement>,
}

impl std::fmt::Display for PackFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "packing stopped at triangle {} ({:?}) after placing area {}",
            self.stop_index, self.reason, self.achieved_area
        )
    }
}

impl std::error::Error for PackFailure {}

/// A triangle to pack: its input index and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub index: usize,
    pub size: QuadExt,
}

impl Item {
    /// Numbers sizes 1, 2, 3, ... in order.
    pub fn sequence(sizes: &[QuadExt]) -> Vec<Item> {
        sizes
            .iter()
            .enumerate()
            .map(|(i, s)| Item { index: i + 1, size: s.clone() })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    ExpectBase,
    ExpectRotated,
}

#[derive(Debug, Clone)]
pub struct LayerState {
    pub layer_base_y: QuadExt,
    pub layer_height: QuadExt,
    pub cursor_x: QuadExt,
    pub parity: Parity,
    /// Anchor x and size of the last upright triangle, while a nested
    /// partner is still possible.
    pub last_base: Option<(QuadExt, QuadExt)>,
}

/// Per-engine fit tests and placement rules.
trait Shelf {
    fn family(&self) -> Family;
    fn layer_start(&self, y0: &QuadExt) -> QuadExt;
    fn layer_height(&self, t: &QuadExt) -> QuadExt;
    /// Can a fresh layer at `y0` host an upright triangle of size `t`?
    fn fresh_layer_fits(&self, y0: &QuadExt, t: &QuadExt) -> bool;
    fn base_fits(&self, x: &QuadExt, y0: &QuadExt, t: &QuadExt) -> bool;
    fn nested_fits(&self, xu: &QuadExt, u: &QuadExt, y0: &QuadExt, t: &QuadExt) -> bool;

    fn base_placement(&self, x: &QuadExt, y0: &QuadExt, t: &QuadExt) -> TrianglePlacement {
        let kind = TriangleKind { family: self.family(), orientation: Orientation::Base };
        make_placement(kind, t.clone(), Point { x: x.clone(), y: y0.clone() })
            .expect("positive size checked on entry")
    }

    fn nested_placement(
        &self,
        xu: &QuadExt,
        u: &QuadExt,
        y0: &QuadExt,
        t: &QuadExt,
    ) -> TrianglePlacement {
        let corner_x = xu + u;
        let (kind, anchor) = match self.family() {
            // right angle at the upper-right corner of the pair cell
            Family::IsoRight => (TriangleKind::ISO_ROTATED, Point { x: corner_x, y: y0 + t }),
            // apex on the layer base at the upright's right foot
            Family::Equilateral => (TriangleKind::EQ_ROTATED, Point { x: corner_x, y: y0.clone() }),
        };
        make_placement(kind, t.clone(), anchor).expect("positive size checked on entry")
    }
}

struct IsoRectShelf<'a> {
    width: &'a QuadExt,
    height: &'a QuadExt,
}

impl Shelf for IsoRectShelf<'_> {
    fn family(&self) -> Family {
        Family::IsoRight
    }
    fn layer_start(&self, _y0: &QuadExt) -> QuadExt {
        QuadExt::zero()
    }
    fn layer_height(&self, t: &QuadExt) -> QuadExt {
        t.clone()
    }
    fn fresh_layer_fits(&self, y0: &QuadExt, t: &QuadExt) -> bool {
        &(y0 + t) <= self.height && t <= self.width
    }
    fn base_fits(&self, x: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        &(x + t) <= self.width
    }
    fn nested_fits(&self, _xu: &QuadExt, u: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        t <= u
    }
}

struct IsoTriShelf<'a> {
    leg: &'a QuadExt,
}

impl Shelf for IsoTriShelf<'_> {
    fn family(&self) -> Family {
        Family::IsoRight
    }
    fn layer_start(&self, _y0: &QuadExt) -> QuadExt {
        QuadExt::zero()
    }
    fn layer_height(&self, t: &QuadExt) -> QuadExt {
        t.clone()
    }
    fn fresh_layer_fits(&self, y0: &QuadExt, t: &QuadExt) -> bool {
        &(y0 + t) <= self.leg
    }
    fn base_fits(&self, x: &QuadExt, y0: &QuadExt, t: &QuadExt) -> bool {
        &(x + t + y0) <= self.leg
    }
    fn nested_fits(&self, xu: &QuadExt, u: &QuadExt, y0: &QuadExt, t: &QuadExt) -> bool {
        t <= u && &(xu + u + t + y0) <= self.leg
    }
}

struct EqRectShelf<'a> {
    width: &'a QuadExt,
    height: &'a QuadExt,
}

impl Shelf for EqRectShelf<'_> {
    fn family(&self) -> Family {
        Family::Equilateral
    }
    fn layer_start(&self, _y0: &QuadExt) -> QuadExt {
        QuadExt::zero()
    }
    fn layer_height(&self, t: &QuadExt) -> QuadExt {
        t * consts::half_sqrt3()
    }
    fn fresh_layer_fits(&self, y0: &QuadExt, t: &QuadExt) -> bool {
        &(y0 + self.layer_height(t)) <= self.height && t <= self.width
    }
    fn base_fits(&self, x: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        &(x + t) <= self.width
    }
    fn nested_fits(&self, xu: &QuadExt, u: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        t <= u && &(xu + u + t.half()) <= self.width
    }
}

struct EqTrapShelf {
    long_base: QuadExt,
    height: QuadExt,
}

impl Shelf for EqTrapShelf {
    fn family(&self) -> Family {
        Family::Equilateral
    }
    fn layer_start(&self, y0: &QuadExt) -> QuadExt {
        y0 * consts::inv_sqrt3()
    }
    fn layer_height(&self, t: &QuadExt) -> QuadExt {
        t * consts::half_sqrt3()
    }
    fn fresh_layer_fits(&self, y0: &QuadExt, t: &QuadExt) -> bool {
        y0 + self.layer_height(t) <= self.height && self.layer_start(y0) + t <= self.long_base
    }
    fn base_fits(&self, x: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        x + t <= self.long_base
    }
    fn nested_fits(&self, xu: &QuadExt, u: &QuadExt, _y0: &QuadExt, t: &QuadExt) -> bool {
        t <= u && xu + u + t.half() <= self.long_base
    }
}

fn validate_items(items: &[Item]) -> Result<(), PackFailure> {
    let bad = |index: usize| PackFailure {
        stop_index: index,
        reason: StopReason::BadInput,
        achieved_area: QuadExt::zero(),
        placed: Vec::new(),
    };
    for (k, item) in items.iter().enumerate() {
        if !item.size.is_positive() {
            return Err(bad(item.index));
        }
        if k > 0 && item.size > items[k - 1].size {
            return Err(bad(item.index));
        }
    }
    Ok(())
}

fn run_shelf<S: Shelf>(
    shelf: &S,
    items: &[Item],
    cap_holds: impl Fn(&QuadExt) -> bool,
) -> Result<Vec<TrianglePlacement>, PackFailure> {
    validate_items(items)?;
    let mut placed: Vec<TrianglePlacement> = Vec::with_capacity(items.len());
    let mut area = QuadExt::zero();
    let Some(first) = items.first() else {
        return Ok(placed);
    };
    let zero = QuadExt::zero();
    if !cap_holds(&first.size) || !shelf.fresh_layer_fits(&zero, &first.size) {
        return Err(PackFailure {
            stop_index: first.index,
            reason: StopReason::FirstTooBig,
            achieved_area: area,
            placed,
        });
    }
    let mut state = LayerState {
        layer_base_y: zero.clone(),
        layer_height: shelf.layer_height(&first.size),
        cursor_x: shelf.layer_start(&zero),
        parity: Parity::ExpectBase,
        last_base: None,
    };

    for (k, item) in items.iter().enumerate() {
        let t = &item.size;
        let y0 = state.layer_base_y.clone();
        let placement = if k == 0 {
            None
        } else {
            let nested = match (&state.parity, &state.last_base) {
                (Parity::ExpectRotated, Some((xu, u))) if shelf.nested_fits(xu, u, &y0, t) => {
                    Some(shelf.nested_placement(xu, u, &y0, t))
                }
                _ => None,
            };
            if nested.is_some() {
                state.parity = Parity::ExpectBase;
                state.last_base = None;
                nested
            } else if shelf.base_fits(&state.cursor_x, &y0, t) {
                None
            } else {
                let next_y = &y0 + &state.layer_height;
                if !shelf.fresh_layer_fits(&next_y, t) {
                    return Err(PackFailure {
                        stop_index: item.index,
                        reason: StopReason::VerticalOverflow,
                        achieved_area: area,
                        placed,
                    });
                }
                state.layer_height = shelf.layer_height(t);
                state.cursor_x = shelf.layer_start(&next_y);
                state.layer_base_y = next_y;
                None
            }
        };
        let placement = match placement {
            Some(p) => p,
            None => {
                // upright at the cursor
                let y0 = &state.layer_base_y;
                let p = shelf.base_placement(&state.cursor_x, y0, t);
                state.last_base = Some((state.cursor_x.clone(), t.clone()));
                state.parity = Parity::ExpectRotated;
                state.cursor_x = &state.cursor_x + t;
                p
            }
        };
        area = area + placement.area();
        placed.push(placement.with_index(item.index));
    }
    Ok(placed)
}

/// Packs items into the container described by `dims` (canonical frame).
pub fn pack_items(dims: &EngineDims, items: &[Item]) -> Result<Vec<TrianglePlacement>, PackFailure> {
    let cap = |t: &QuadExt| dims.hypothesis_cap_holds(t);
    match dims {
        EngineDims::IsoRect { width, height } => run_shelf(&IsoRectShelf { width, height }, items, cap),
        EngineDims::IsoTri { leg } => run_shelf(&IsoTriShelf { leg }, items, cap),
        EngineDims::EqRect { width, height } => run_shelf(&EqRectShelf { width, height }, items, cap),
        // The trapezoid engine has no strict size cap; only geometric fit.
        EngineDims::EqTrap { short_base, height } => run_shelf(
            &EqTrapShelf {
                long_base: ContainerRegion::trap_long_base(short_base, height),
                height: height.clone(),
            },
            items,
            |_| true,
        ),
    }
}

/// Isosceles right triangles into `[0,a] × [0,b]`.
pub fn pack_iso_rect(
    a: &QuadExt,
    b: &QuadExt,
    sizes: &[QuadExt],
) -> Result<Vec<TrianglePlacement>, PackFailure> {
    pack_items(&EngineDims::IsoRect { width: a.clone(), height: b.clone() }, &Item::sequence(sizes))
}

/// Isosceles right triangles into the right triangle with leg `c`.
pub fn pack_iso_tri(c: &QuadExt, sizes: &[QuadExt]) -> Result<Vec<TrianglePlacement>, PackFailure> {
    pack_items(&EngineDims::IsoTri { leg: c.clone() }, &Item::sequence(sizes))
}

/// Equilateral triangles into `[0,a] × [0,h]`.
pub fn pack_eq_rect(
    a: &QuadExt,
    h: &QuadExt,
    sizes: &[QuadExt],
) -> Result<Vec<TrianglePlacement>, PackFailure> {
    pack_items(&EngineDims::EqRect { width: a.clone(), height: h.clone() }, &Item::sequence(sizes))
}

/// Equilateral triangles into the canonical 60° right trapezoid with
/// shorter base `b` and height `h`.
pub fn pack_eq_trap(
    b: &QuadExt,
    h: &QuadExt,
    sizes: &[QuadExt],
) -> Result<Vec<TrianglePlacement>, PackFailure> {
    pack_items(
        &EngineDims::EqTrap { short_base: b.clone(), height: h.clone() },
        &Item::sequence(sizes),
    )
}
