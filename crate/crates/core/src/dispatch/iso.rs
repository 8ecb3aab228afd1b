//! Isosceles right triangles in a square, legs parallel to the sides or
//! to the diagonals.

use super::{
    finish, padded, sorted_items, stop, AnchorRule, CaseTrace, DispatchError, ExplicitPlacement,
    PackingResult, ResidualTrace,
};
use crate::exact::{consts, QuadExt, Rational};
use crate::geometry::{
    make_placement, ContainerRegion, Family, Frame, Orientation, Point, TriangleKind,
    TrianglePlacement,
};
use crate::layer::{pack_items, EngineDims, Item};

/// Packs isosceles right triangles with legs parallel to the sides of the
/// unit square. Succeeds whenever the total area is at most 1/2.
pub fn pack_unit_square_iso(sizes: &[Rational]) -> Result<PackingResult, DispatchError> {
    let items = sorted_items(sizes)?;
    let (placements, trace) = pack_square(&QuadExt::one(), &items, "ISO")?;
    finish(Family::IsoRight, ContainerRegion::unit_square(), placements, trace)
}

/// Packs isosceles right triangles with legs parallel to the diagonals of
/// the unit square, inside the inscribed square of side √2/2 spanned by the
/// side midpoints. Succeeds whenever the total area is at most 1/4.
pub fn pack_square_iso_diag(sizes: &[Rational]) -> Result<PackingResult, DispatchError> {
    let items = sorted_items(sizes)?;
    let side = consts::sqrt2().half();
    let (placements, trace) = pack_square(&side, &items, "DIAG")?;
    let placements = placements.iter().map(to_unit_square_frame).collect();
    finish(Family::IsoRight, ContainerRegion::unit_square(), placements, trace)
}

/// `(p, q) ↦ (1/2, 0) + p·(√2/2, √2/2) + q·(−√2/2, √2/2)`.
fn to_unit_square_frame(p: &TrianglePlacement) -> TrianglePlacement {
    let r = consts::sqrt2().half();
    let map = |v: &Point| Point {
        x: QuadExt::frac(1, 2) + (&v.x - &v.y) * &r,
        y: (&v.x + &v.y) * &r,
    };
    let [a, b, c] = &p.vertices;
    TrianglePlacement { vertices: [map(a), map(b), map(c)], ..p.clone() }
}

fn place(kind: TriangleKind, item: &Item, x: QuadExt, y: QuadExt) -> TrianglePlacement {
    make_placement(kind, item.size.clone(), Point { x, y })
        .expect("sizes validated positive")
        .with_index(item.index)
}

/// The two-case construction in the square `[0, side]²`.
fn pack_square(
    side: &QuadExt,
    items: &[Item],
    prefix: &str,
) -> Result<(Vec<TrianglePlacement>, CaseTrace), DispatchError> {
    if let Some(first) = items.first() {
        if &first.size > side {
            return Err(DispatchError::Unpackable {
                reason: format!("leg {} exceeds the square side {side}", first.size),
            });
        }
    }
    let total = items.iter().fold(QuadExt::zero(), |acc, it| acc + it.size.square().half());
    let bound = side.square().half();
    if total > bound {
        return Err(DispatchError::AreaBoundExceeded { total, bound });
    }

    let t = |k| padded(items, k);
    let (t1, t2, t3, t4) = (t(1), t(2), t(3), t(4));
    let mut placements = Vec::with_capacity(items.len());
    let mut explicit = Vec::new();
    let mut push = |k: usize, rule: AnchorRule, p: TrianglePlacement| {
        explicit.push(ExplicitPlacement { index: items[k - 1].index, rule });
        placements.push(p);
    };
    let case_one = &t1 + &t3 < *side;

    let (case_id, dims, region, frame, rest) = if case_one {
        // T1 in the corner, T2 nested on its hypotenuse, T3/T4 the same
        // pattern stacked on top of T1; the rest go into the rectangle
        // [t2, side] × [t1 − t2, side].
        let lead = items.len().min(4);
        if lead >= 1 {
            push(1, AnchorRule::CornerBase, place(TriangleKind::ISO_BASE, &items[0], QuadExt::zero(), QuadExt::zero()));
        }
        if lead >= 2 {
            push(2, AnchorRule::NestOnHyp { of: items[0].index }, place(TriangleKind::ISO_ROTATED, &items[1], t2.clone(), t1.clone()));
        }
        if lead >= 3 {
            push(3, AnchorRule::StackAbove { prev: items[0].index }, place(TriangleKind::ISO_BASE, &items[2], QuadExt::zero(), t1.clone()));
        }
        if lead >= 4 {
            push(4, AnchorRule::NestOnHyp { of: items[2].index }, place(TriangleKind::ISO_ROTATED, &items[3], t3.clone(), &t1 + &t4));
        }
        let origin = Point { x: t2.clone(), y: &t1 - &t2 };
        let width = side - &t2;
        let height = side - &t1 + &t2;
        (
            "1",
            EngineDims::IsoRect { width: width.clone(), height: height.clone() },
            ContainerRegion::rect(width, height, origin.clone()),
            Frame::translation(origin),
            &items[lead..],
        )
    } else {
        // T1 in the corner, T2 nested on its hypotenuse; the rest go into
        // the right triangle at the opposite corner with leg 2·side − t1 − t2.
        let lead = items.len().min(2);
        push(1, AnchorRule::CornerBase, place(TriangleKind::ISO_BASE, &items[0], QuadExt::zero(), QuadExt::zero()));
        if lead >= 2 {
            push(2, AnchorRule::NestOnHyp { of: items[0].index }, place(TriangleKind::ISO_ROTATED, &items[1], t1.clone(), t2.clone()));
        }
        let leg = side + side - &t1 - &t2;
        let corner = Point { x: side.clone(), y: side.clone() };
        (
            "2",
            EngineDims::IsoTri { leg: leg.clone() },
            ContainerRegion::iso_tri(leg, Orientation::Rotated, corner.clone()),
            Frame { origin: corner, flip_x: true, flip_y: true },
            &items[lead..],
        )
    };

    let mut trace = CaseTrace::new(format!("{prefix}/{case_id}"));
    trace.candidate = format!("{}-case-{case_id}", prefix.to_lowercase());
    trace.explicit_placements = explicit;
    if let Some(first) = rest.first() {
        trace.bound_checked = dims.guarantee_bound(&first.size);
    }
    trace.residual = Some(ResidualTrace { region, engine: dims.engine(), dims: dims.clone() });

    let packed = pack_items(&dims, rest).map_err(|f| stop(&trace, &f))?;
    for p in &packed {
        placements.push(frame.map_placement(p).expect("rotation by 180° keeps the family"));
    }
    Ok((placements, trace))
}
