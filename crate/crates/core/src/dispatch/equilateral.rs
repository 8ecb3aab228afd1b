//! Equilateral triangles in the unit square.
//!
//! The condition tree picks a case path; a short catalog of layouts is then
//! tried in order. Each layout places up to four leading triangles
//! explicitly and leaves a right trapezoid with a 60° slant for the rest.
//! Every candidate is checked exactly before its residual is packed.

use super::{
    padded, sorted_items, AnchorRule, CaseTrace, DispatchError, ExplicitPlacement,
    PackingResult, ResidualTrace,
};
use crate::certify::{validate_packing, Certificate};
use crate::exact::{consts, QuadExt, Rational};
use crate::geometry::{
    make_placement, polygon_area, separating_axis, ContainerRegion, Family, Frame, Point, Side,
    TriangleKind, TrianglePlacement, Widening,
};
use crate::layer::{pack_items, EngineDims, Item};

/// Case path of the condition tree for sizes sorted in non-increasing
/// order. Missing sizes count as zero.
pub fn eq_case_path(sorted: &[QuadExt]) -> &'static str {
    let t = |k: usize| sorted.get(k - 1).cloned().unwrap_or_else(QuadExt::zero);
    let (t1, t2, t3, t4, t5) = (t(1), t(2), t(3), t(4), t(5));
    let one = QuadExt::one();
    let third = consts::inv_sqrt3();
    if t1 < QuadExt::frac(2, 5) {
        "EQ/3"
    } else if t1 >= third {
        if &t1 + t2.half() < one {
            if &t1 + &t3 >= one {
                "EQ/1.1.1"
            } else {
                "EQ/1.1.2"
            }
        } else if t2 > &one + &third - &t1 {
            "EQ/1.2.1"
        } else if t3 > &one + &third - &t1 - t2.half() {
            "EQ/1.2.2.1"
        } else {
            "EQ/1.2.2.2"
        }
    } else if &t1 + &t3 < one {
        "EQ/2.1"
    } else if &t3 + &t5 >= one {
        "EQ/2.2.1"
    } else if &t1 + &t4 < one {
        "EQ/2.2.2.1"
    } else {
        "EQ/2.2.2.2"
    }
}

/// Packs equilateral triangles with one side horizontal into the unit
/// square. Succeeds whenever the total area is at most √3/4.
pub fn pack_unit_square_eq(sizes: &[Rational]) -> Result<PackingResult, DispatchError> {
    let items = sorted_items(sizes)?;
    let one = QuadExt::one();
    if let Some(first) = items.first() {
        if first.size > one {
            return Err(DispatchError::Unpackable {
                reason: format!("side {} exceeds the square side 1", first.size),
            });
        }
    }
    let sum = items.iter().fold(QuadExt::zero(), |acc, it| acc + it.size.square());
    if sum > one {
        let quarter = consts::sqrt3() * QuadExt::frac(1, 4);
        return Err(DispatchError::AreaBoundExceeded { total: &sum * &quarter, bound: quarter });
    }

    let sorted: Vec<QuadExt> = items.iter().map(|it| it.size.clone()).collect();
    let path = eq_case_path(&sorted);
    let mut trace = CaseTrace::new(path);
    if matches!(path, "EQ/1.2.1" | "EQ/1.2.2.1" | "EQ/2.2.1") {
        return Err(DispatchError::InternalStop {
            trace: Box::new(trace),
            detail: "infeasibility branch reached under the area bound".into(),
        });
    }

    let ts = Sizes::new(&items);
    for candidate in catalog(path) {
        match try_candidate(&candidate, &ts, &items) {
            Ok(attempt) => {
                trace.candidate = candidate.name();
                trace.explicit_placements = attempt.explicit_placements;
                trace.residual = Some(attempt.residual);
                trace.bound_checked = attempt.bound_checked;
                return Ok(PackingResult {
                    family: Family::Equilateral,
                    container: ContainerRegion::unit_square(),
                    placements: attempt.placements,
                    trace,
                    certificate: attempt.certificate,
                });
            }
            Err(reason) => trace.rejected.push(format!("{}: {reason}", candidate.name())),
        }
    }
    Err(DispatchError::InternalStop {
        detail: "no layout in the catalog packs this instance".into(),
        trace: Box::new(trace),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    /// Δ1 in the corner, Δ2 apex-down on the floor against it, Δ3 on the
    /// floor against Δ2; the residual sits above Δ2.
    GroundChain,
    /// As `GroundChain` but Δ3 pushed right up to the slant of the residual.
    SlantChain,
    /// Δ1 in the corner, Δ2 apex-down hanging from the top wall against the
    /// right side of Δ1, Δ3 upright on Δ2's apex; the residual sits below Δ2.
    HangPair,
    /// Δ1, Δ2, Δ4 along the floor, Δ3 on top of Δ1; the residual is
    /// bounded by the right side of Δ3.
    StackGround4,
    /// Δ1, Δ2 along the floor, Δ3 on top of Δ1 and Δ4 apex-down against
    /// it; the residual is bounded by the right side of Δ4.
    StackNest4,
    /// The layer packer on the whole square.
    FullSquare,
}

const LAYOUTS: [Layout; 5] =
    [Layout::GroundChain, Layout::SlantChain, Layout::HangPair, Layout::StackGround4, Layout::StackNest4];

#[derive(Debug, Clone, Copy)]
struct Candidate {
    layout: Layout,
    mirrored: bool,
}

impl Candidate {
    fn name(&self) -> String {
        let base = match self.layout {
            Layout::GroundChain => "ground-chain",
            Layout::SlantChain => "slant-chain",
            Layout::HangPair => "hang-pair",
            Layout::StackGround4 => "stack-ground-4",
            Layout::StackNest4 => "stack-nest-4",
            Layout::FullSquare => "full-square",
        };
        if self.mirrored {
            format!("mirror:{base}")
        } else {
            base.to_string()
        }
    }
}

/// The layouts to try for a case path, the case's own layout first.
fn catalog(path: &str) -> Vec<Candidate> {
    let full = Candidate { layout: Layout::FullSquare, mirrored: false };
    let preferred: &[Layout] = match path {
        "EQ/3" => return vec![full],
        "EQ/1.1.1" | "EQ/1.2.2.2" => &[Layout::HangPair],
        "EQ/1.1.2" => &[Layout::GroundChain],
        "EQ/2.1" => &[Layout::GroundChain, Layout::SlantChain],
        "EQ/2.2.2.1" => &[Layout::StackGround4],
        "EQ/2.2.2.2" => &[Layout::StackNest4],
        _ => &[],
    };
    let mut order: Vec<Layout> = preferred.to_vec();
    order.extend(LAYOUTS.iter().filter(|l| !preferred.contains(l)));
    let mut out: Vec<Candidate> = order.iter().map(|&layout| Candidate { layout, mirrored: false }).collect();
    out.extend(order.iter().map(|&layout| Candidate { layout, mirrored: true }));
    out.push(full);
    out
}

/// Zero-padded leading sizes and the item indices behind them.
struct Sizes {
    t: [QuadExt; 5],
    index: [usize; 5],
}

impl Sizes {
    fn new(items: &[Item]) -> Self {
        Self {
            t: std::array::from_fn(|k| padded(items, k + 1)),
            index: std::array::from_fn(|k| items.get(k).map_or(0, |it| it.index)),
        }
    }

    fn t(&self, k: usize) -> &QuadExt {
        &self.t[k - 1]
    }
}

/// A slanted residual in the unpadded frame: bounding-box corner
/// `(x0, y0)`, short base `b`, height `h`, slant on the left.
struct Residual {
    x0: QuadExt,
    y0: QuadExt,
    b: QuadExt,
    h: QuadExt,
    widening: Widening,
}

struct Lead {
    kind: TriangleKind,
    anchor: Point,
    rule: AnchorRule,
}

fn height(t: &QuadExt) -> QuadExt {
    t * consts::half_sqrt3()
}

/// Leading placements (for items 1..=m) and the residual of a layout.
fn layout_geometry(layout: Layout, ts: &Sizes) -> (Vec<Lead>, Option<Residual>) {
    let (t1, t2, t3) = (ts.t(1), ts.t(2), ts.t(3));
    let one = QuadExt::one();
    let third = consts::inv_sqrt3();
    let zero = QuadExt::zero();
    let up = |x: QuadExt, y: QuadExt, rule| Lead { kind: TriangleKind::EQ_BASE, anchor: Point { x, y }, rule };
    let down = |x: QuadExt, y: QuadExt, rule| Lead { kind: TriangleKind::EQ_ROTATED, anchor: Point { x, y }, rule };
    let [i1, _, i3, ..] = ts.index;

    match layout {
        Layout::GroundChain | Layout::SlantChain => {
            // lowest apex-down position on the line x + y/√3 = t1 that
            // stays left of x = 1
            let lift = (t1 + t2.half() - &one) * consts::sqrt3();
            let ya = QuadExt::max_of(&zero, &lift).clone();
            let xa = t1 - &ya * &third;
            let c = QuadExt::max_of(t1, &third).clone();
            let third_lead = if layout == Layout::GroundChain {
                up(t1.clone(), zero.clone(), AnchorRule::GroundBeside { of: i1 })
            } else {
                up(&c - t3, zero.clone(), AnchorRule::FlushUnderSlant { intercept: c.clone() })
            };
            let leads = vec![
                up(zero.clone(), zero.clone(), AnchorRule::CornerBase),
                down(xa, ya, AnchorRule::SlideMinOnLeft60Line { intercept: t1.clone() }),
                third_lead,
            ];
            let residual = Residual {
                x0: &c - &third,
                y0: height(t2),
                b: &one - &c + t2.half(),
                h: &one - height(t2),
                widening: Widening::Up,
            };
            (leads, Some(residual))
        }
        Layout::HangPair => {
            let apex = Point { x: t1 - &third + t2.half(), y: &one - height(t2) };
            let leads = vec![
                up(zero.clone(), zero.clone(), AnchorRule::CornerBase),
                down(apex.x.clone(), apex.y.clone(), AnchorRule::SlideMaxOnLeft60Line { intercept: t1.clone() }),
                up(apex.x.clone(), apex.y.clone(), AnchorRule::NestRightOfApexDown { of: ts.index[1] }),
            ];
            let residual =
                Residual { x0: apex.x, y0: zero, b: &one - t1, h: apex.y, widening: Widening::Up };
            (leads, Some(residual))
        }
        Layout::StackGround4 | Layout::StackNest4 => {
            let floor = height(t1);
            let mut leads = vec![
                up(zero.clone(), zero.clone(), AnchorRule::CornerBase),
                down(t1.clone(), zero.clone(), AnchorRule::NestGroundApexDown { of: i1 }),
                up(zero.clone(), floor.clone(), AnchorRule::StackAbove { prev: i1 }),
            ];
            let h = &one - &floor;
            let residual = if layout == Layout::StackGround4 {
                leads.push(up(t1.clone(), zero, AnchorRule::GroundBeside { of: i1 }));
                Residual { x0: t3 - &h * &third, y0: floor, b: &one - t3, h, widening: Widening::Up }
            } else {
                leads.push(down(t3.clone(), floor.clone(), AnchorRule::NestGroundApexDown { of: i3 }));
                let b = &one - t3 - &h * &third;
                Residual { x0: t3.clone(), y0: floor, b, h, widening: Widening::Down }
            };
            (leads, Some(residual))
        }
        Layout::FullSquare => (Vec::new(), None),
    }
}

struct Attempt {
    placements: Vec<TrianglePlacement>,
    certificate: Certificate,
    explicit_placements: Vec<ExplicitPlacement>,
    residual: ResidualTrace,
    bound_checked: QuadExt,
}

fn mirror_rule(rule: AnchorRule, mirrored: bool) -> AnchorRule {
    if mirrored {
        AnchorRule::MirrorX { inner: Box::new(rule) }
    } else {
        rule
    }
}

/// Builds one candidate, packs its residual and validates the result, or
/// says why it fails.
fn try_candidate(cand: &Candidate, ts: &Sizes, items: &[Item]) -> Result<Attempt, String> {
    let square = ContainerRegion::unit_square();
    let (leads, residual) = layout_geometry(cand.layout, ts);
    let mirror = Frame { origin: Point::new(1, 0), flip_x: true, flip_y: false };

    let mut placements = Vec::with_capacity(items.len());
    let mut explicit = Vec::new();
    for (lead, item) in leads.into_iter().zip(items) {
        let p = make_placement(lead.kind, item.size.clone(), lead.anchor)
            .map_err(|e| e.to_string())?
            .with_index(item.index);
        let p = if cand.mirrored { mirror.map_placement(&p).map_err(|e| e.to_string())? } else { p };
        explicit.push(ExplicitPlacement { index: item.index, rule: mirror_rule(lead.rule, cand.mirrored) });
        placements.push(p);
    }
    validate_packing(&square, &placements).map_err(|v| format!("leading triangles: {v}"))?;
    let rest = &items[placements.len()..];

    let Some(res) = residual else {
        let dims = EngineDims::EqRect { width: QuadExt::one(), height: QuadExt::one() };
        let packed = pack_items(&dims, rest).map_err(|f| f.to_string())?;
        let bound_checked = rest.first().map_or_else(QuadExt::zero, |it| dims.guarantee_bound(&it.size));
        let residual = ResidualTrace { region: dims.region(), engine: dims.engine(), dims };
        placements.extend(packed);
        let certificate = validate_packing(&square, &placements).map_err(|v| format!("combined packing: {v}"))?;
        return Ok(Attempt { placements, certificate, explicit_placements: explicit, residual, bound_checked });
    };

    if res.b.is_negative() || res.h.is_negative() {
        return Err("residual has negative dimensions".into());
    }
    let long = ContainerRegion::trap_long_base(&res.b, &res.h);
    let (slant, box_x, flip_x) = if cand.mirrored {
        (Side::Right, QuadExt::one() - &res.x0 - &long, true)
    } else {
        (Side::Left, res.x0.clone(), false)
    };
    let region = ContainerRegion::right_trap(
        res.b.clone(),
        res.h.clone(),
        slant,
        res.widening,
        Point { x: box_x, y: res.y0.clone() },
    );
    let poly = region.vertices();
    if let Some(v) = poly.iter().find(|v| !square.contains_point(v)) {
        return Err(format!("residual corner {v:?} outside the square"));
    }
    if !polygon_area(&poly).is_positive() {
        if !rest.is_empty() {
            return Err("residual is degenerate".into());
        }
    } else if let Some(p) = placements.iter().find(|p| separating_axis(&p.vertices, &poly).is_none()) {
        return Err(format!("triangle {} meets the residual", p.index));
    }

    let dims = EngineDims::EqTrap { short_base: res.b.clone(), height: res.h.clone() };
    let edge_x = if cand.mirrored { QuadExt::one() - &res.x0 } else { res.x0.clone() };
    let frame = match res.widening {
        Widening::Up => Frame { origin: Point { x: edge_x, y: &res.y0 + &res.h }, flip_x, flip_y: true },
        Widening::Down => Frame { origin: Point { x: edge_x, y: res.y0.clone() }, flip_x, flip_y: false },
    };
    let packed = pack_items(&dims, rest).map_err(|f| format!("residual: {f}"))?;
    for p in &packed {
        placements.push(frame.map_placement(p).map_err(|e| e.to_string())?);
    }
    let certificate = validate_packing(&square, &placements).map_err(|v| format!("combined packing: {v}"))?;

    let bound_checked = rest.first().map_or_else(QuadExt::zero, |it| dims.guarantee_bound(&it.size));
    let residual = ResidualTrace { region, engine: dims.engine(), dims };
    Ok(Attempt { placements, certificate, explicit_placements: explicit, residual, bound_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::geometry::Orientation;

    fn r(p: i64, q: i64) -> Rational {
        ratio(p, q)
    }

    #[test]
    fn single_full_side() {
        let res = pack_unit_square_eq(&[r(1, 1)]).unwrap();
        let p = &res.placements[0];
        assert_eq!(p.vertices[0], Point::origin());
        assert_eq!(p.vertices[2], Point::new(QuadExt::frac(1, 2), consts::half_sqrt3()));
    }

    #[test]
    fn four_halves() {
        let res = pack_unit_square_eq(&vec![r(1, 2); 4]).unwrap();
        assert_eq!(res.trace.case_path, "EQ/2.2.2.2");
        assert_eq!(res.placements.len(), 4);
    }

    #[test]
    fn case_three_is_layered() {
        let res = pack_unit_square_eq(&vec![r(39, 100); 6]).unwrap();
        assert_eq!(res.trace.case_path, "EQ/3");
        assert_eq!(res.trace.candidate, "full-square");
        let tops: Vec<_> = res.placements.iter().map(|p| p.y_extent().1).collect();
        assert!(tops.iter().all(|t| *t <= QuadExt::surd(39, 100, 3)));
    }

    #[test]
    fn too_big() {
        assert!(matches!(pack_unit_square_eq(&[r(101, 100)]), Err(DispatchError::Unpackable { .. })));
        assert!(matches!(
            pack_unit_square_eq(&[r(3, 4), r(3, 4)]),
            Err(DispatchError::AreaBoundExceeded { .. })
        ));
    }

    #[test]
    fn pinned_ground_chain_layout_wins() {
        // t1 + t2/2 < 1, t1 + t3 < 1, t1 ≥ √3/3
        let res = pack_unit_square_eq(&[r(3, 5), r(2, 5), r(1, 5), r(1, 10), r(1, 10)]).unwrap();
        assert_eq!(res.trace.case_path, "EQ/1.1.2");
        assert_eq!(res.trace.candidate, "ground-chain");
        let second = &res.placements[1];
        assert_eq!(second.kind.orientation, Orientation::Rotated);
        assert_eq!(second.vertices[0], Point::new(QuadExt::frac(3, 5), QuadExt::zero()));
    }

    #[test]
    fn case_paths() {
        let q = |p, d| QuadExt::frac(p, d);
        assert_eq!(eq_case_path(&[q(39, 100)]), "EQ/3");
        assert_eq!(eq_case_path(&[q(1, 1)]), "EQ/1.2.2.2");
        assert_eq!(eq_case_path(&[q(7, 10), q(1, 2), q(3, 10)]), "EQ/1.1.1");
        assert_eq!(eq_case_path(&[q(1, 2), q(1, 2), q(1, 2), q(1, 2), q(1, 2)]), "EQ/2.2.1");
        assert_eq!(eq_case_path(&[q(1, 2), q(1, 2), q(1, 2), q(2, 5)]), "EQ/2.2.2.1");
        assert_eq!(eq_case_path(&[q(1, 2), q(1, 2), q(2, 5)]), "EQ/2.1");
    }
}
