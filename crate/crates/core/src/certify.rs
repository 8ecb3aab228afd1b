//! Independent exact validation of packings and the certificates it emits.
//!
//! A certificate lists, for every placement, that its vertices lie in the
//! container, and for every pair of placements whose bounding boxes
//! overlap, a line separating the two triangles. Pairs that are not listed
//! are separated by a horizontal or vertical line, which anyone can
//! re-check from the vertices alone.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exact::QuadExt;
use crate::geometry::{
    interior_witness, make_placement, separating_axis, ContainerRegion, Point, SeparatingAxis, TrianglePlacement,
};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub axis: SeparatingAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pruning {
    /// Every pair is listed explicitly.
    None,
    /// Unlisted pairs have bounding boxes whose horizontal or vertical
    /// extents meet in at most one value.
    BoundingBox,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub container: ContainerRegion,
    pub n: usize,
    /// Input indices of placements whose three vertices were checked
    /// against every container half-plane.
    pub contained: Vec<usize>,
    pub pruning: Pruning,
    pub pairs: Vec<PairWitness>,
    pub total_area: QuadExt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfContainer { index: usize, vertex: Point },
    /// `witness` lies strictly inside both triangles.
    Overlap { i: usize, j: usize, witness: Point },
    /// Coordinates from incompatible number fields (e.g. √2 and √3).
    MixedRadicands { index: usize },
    /// The vertices do not describe a triangle of the stated size.
    Malformed { index: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::OutOfContainer { index, vertex } => {
                write!(f, "triangle {index} leaves the container at vertex {vertex:?}")
            }
            Violation::Overlap { i, j, witness } => {
                write!(f, "triangles {i} and {j} overlap; common interior point {witness:?}")
            }
            Violation::MixedRadicands { index } => {
                write!(f, "triangle {index} mixes incompatible square roots")
            }
            Violation::Malformed { index } => {
                write!(f, "triangle {index}: vertices do not match its size")
            }
        }
    }
}

fn radicand_of(values: impl Iterator<Item = u8>, acc: &mut u8) -> bool {
    for d in values {
        match (*acc, d) {
            (_, 1) => {}
            (1, d) => *acc = d,
            (a, d) if a == d => {}
            _ => return false,
        }
    }
    true
}

fn check_placements(
    container: &ContainerRegion,
    placements: &[TrianglePlacement],
) -> Result<(Vec<usize>, QuadExt), Violation> {
    let mut field = 1u8;
    let container_ok = radicand_of(
        container.vertices().iter().flat_map(|p| [p.x.radicand(), p.y.radicand()]),
        &mut field,
    );
    debug_assert!(container_ok, "container mixes radicands");
    for p in placements {
        let coords = p.vertices.iter().flat_map(|v| [v.x.radicand(), v.y.radicand()]);
        if !radicand_of(coords.chain([p.size.radicand()]), &mut field) {
            return Err(Violation::MixedRadicands { index: p.index });
        }
    }

    let hps = container.half_planes();
    let mut contained = Vec::with_capacity(placements.len());
    let mut total = QuadExt::zero();
    for p in placements {
        if !well_formed(p) {
            return Err(Violation::Malformed { index: p.index });
        }
        if let Some(v) = p.vertices.iter().find(|v| !hps.iter().all(|hp| hp.contains(v))) {
            return Err(Violation::OutOfContainer { index: p.index, vertex: v.clone() });
        }
        contained.push(p.index);
        total = total + p.area();
    }
    Ok((contained, total))
}

/// The vertices are those of a triangle of the stated kind and size, up to
/// order; triangles in a rotated frame only need the stated area.
fn well_formed(p: &TrianglePlacement) -> bool {
    if !p.size.is_positive() {
        return false;
    }
    let matches_kind = make_placement(p.kind, p.size.clone(), p.anchor())
        .is_ok_and(|e| e.vertices.iter().all(|v| p.vertices.contains(v)));
    matches_kind || p.area() == p.shoelace_area()
}

/// Decides one pair exactly: a separating line or an interior witness.
fn decide_pair(
    a: &TrianglePlacement,
    b: &TrianglePlacement,
    ax: &(QuadExt, QuadExt),
    bx: &(QuadExt, QuadExt),
) -> Result<SeparatingAxis, Violation> {
    // Vertical lines first; they settle most pairs within one layer.
    if ax.1 <= bx.0 {
        return Ok(SeparatingAxis {
            nx: QuadExt::one(),
            ny: QuadExt::zero(),
            split: ax.1.clone(),
            first_below: true,
        });
    }
    if bx.1 <= ax.0 {
        return Ok(SeparatingAxis {
            nx: QuadExt::one(),
            ny: QuadExt::zero(),
            split: bx.1.clone(),
            first_below: false,
        });
    }
    separating_axis(&a.vertices, &b.vertices).ok_or_else(|| Violation::Overlap {
        i: a.index,
        j: b.index,
        witness: interior_witness(&a.vertices, &b.vertices)
            .expect("no separating axis implies a positive-area intersection"),
    })
}

struct Extents {
    y: Vec<(QuadExt, QuadExt)>,
    x: Vec<(QuadExt, QuadExt)>,
    /// Float boxes `[x_lo, x_hi, y_lo, y_hi]`, used only to skip pairs
    /// whose boxes are far apart.
    approx: Vec<[f64; 4]>,
}

/// Float gap above which two boxes are certainly apart; coordinates are
/// of order one and convert with relative error near 1e-16.
const FLOAT_GAP: f64 = 1e-9;

fn extents(placements: &[TrianglePlacement]) -> Extents {
    let y: Vec<_> = placements.iter().map(|p| p.y_extent()).collect();
    let x: Vec<_> = placements.iter().map(|p| p.x_extent()).collect();
    let approx = x
        .iter()
        .zip(&y)
        .map(|(x, y)| [x.0.to_f64(), x.1.to_f64(), y.0.to_f64(), y.1.to_f64()])
        .collect();
    Extents { y, x, approx }
}

impl Extents {
    fn far_apart(&self, a: usize, b: usize) -> bool {
        let (p, q) = (&self.approx[a], &self.approx[b]);
        p[1] + FLOAT_GAP < q[0] || q[1] + FLOAT_GAP < p[0] || p[3] + FLOAT_GAP < q[2] || q[3] + FLOAT_GAP < p[2]
    }

    /// Exact: the boxes share at most a boundary line.
    fn boxes_apart(&self, a: usize, b: usize) -> bool {
        self.far_apart(a, b)
            || self.x[a].1 <= self.x[b].0
            || self.x[b].1 <= self.x[a].0
            || self.y[a].1 <= self.y[b].0
            || self.y[b].1 <= self.y[a].0
    }
}

/// Pairs (positions into `placements`) whose bounding boxes overlap with
/// positive area, from a sweep over vertical extents.
fn sweep_pairs(ext: &Extents) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..ext.y.len()).collect();
    order.sort_by(|&i, &j| ext.approx[i][2].total_cmp(&ext.approx[j][2]).then(i.cmp(&j)));
    let mut active: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for &i in &order {
        let lo = ext.approx[i][2];
        active.retain(|&j| ext.approx[j][3] + FLOAT_GAP >= lo);
        for &j in &active {
            if !ext.boxes_apart(i, j) {
                pairs.push((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    pairs.sort_unstable();
    pairs
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn certify_with(
    container: &ContainerRegion,
    placements: &[TrianglePlacement],
    pruning: Pruning,
) -> Result<Certificate, Violation> {
    let (contained, total_area) = check_placements(container, placements)?;
    let ext = extents(placements);
    let candidates = match pruning {
        Pruning::BoundingBox => sweep_pairs(&ext),
        Pruning::None => all_pairs(placements.len()),
    };
    let mut pairs = Vec::with_capacity(candidates.len());
    for (a, b) in candidates {
        let axis = decide_pair(&placements[a], &placements[b], &ext.x[a], &ext.x[b])?;
        pairs.push(PairWitness { i: placements[a].index, j: placements[b].index, axis });
    }
    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        container: container.clone(),
        n: placements.len(),
        contained,
        pruning,
        pairs,
        total_area,
    })
}

/// Exact validation; pairs with disjoint bounding boxes are pruned by a
/// sweep over vertical extents.
pub fn validate_packing(
    container: &ContainerRegion,
    placements: &[TrianglePlacement],
) -> Result<Certificate, Violation> {
    certify_with(container, placements, Pruning::BoundingBox)
}

/// Exact validation over all pairs; the reference for the pruned version.
pub fn validate_packing_exhaustive(
    container: &ContainerRegion,
    placements: &[TrianglePlacement],
) -> Result<Certificate, Violation> {
    certify_with(container, placements, Pruning::None)
}

/// All overlapping pairs `(i, j)` by input index, sorted; with `pruned`
/// the candidates come from the vertical sweep.
pub fn overlapping_pairs(placements: &[TrianglePlacement], pruned: bool) -> Vec<(usize, usize)> {
    let ext = extents(placements);
    let candidates =
        if pruned { sweep_pairs(&ext) } else { all_pairs(placements.len()) };
    let mut out: Vec<(usize, usize)> = candidates
        .into_iter()
        .filter(|&(a, b)| decide_pair(&placements[a], &placements[b], &ext.x[a], &ext.x[b]).is_err())
        .map(|(a, b)| {
            let (i, j) = (placements[a].index, placements[b].index);
            (i.min(j), i.max(j))
        })
        .collect();
    out.sort();
    out
}

/// Re-checks a certificate against placements using only half-plane and
/// projection tests.
pub fn verify_certificate(cert: &Certificate, placements: &[TrianglePlacement]) -> bool {
    if cert.version != CERTIFICATE_VERSION || cert.n != placements.len() {
        return false;
    }
    let Ok((contained, total)) = check_placements(&cert.container, placements) else {
        return false;
    };
    if contained != cert.contained || total != cert.total_area {
        return false;
    }
    let pos: std::collections::HashMap<usize, usize> =
        placements.iter().enumerate().map(|(k, p)| (p.index, k)).collect();
    let n = placements.len();
    let mut listed = vec![false; n * n];
    for w in &cert.pairs {
        let (Some(&a), Some(&b)) = (pos.get(&w.i), pos.get(&w.j)) else {
            return false;
        };
        if !w.axis.separates(&placements[a].vertices, &placements[b].vertices) {
            return false;
        }
        listed[a * n + b] = true;
        listed[b * n + a] = true;
    }
    let ext = extents(placements);
    for a in 0..n {
        for b in a + 1..n {
            if listed[a * n + b] {
                continue;
            }
            let separated = cert.pruning == Pruning::BoundingBox && ext.boxes_apart(a, b);
            if !separated {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub within_bound: bool,
    pub total_area: QuadExt,
    /// Total area divided by the critical constant.
    pub ratio: QuadExt,
}

/// Compares the exact total area with a critical constant such as 1/2,
/// 1/4 or √3/4.
pub fn certify_density(placements: &[TrianglePlacement], critical: &QuadExt) -> DensityReport {
    let total = placements.iter().fold(QuadExt::zero(), |acc, p| acc + p.area());
    DensityReport {
        within_bound: total.cmp(critical) != Ordering::Greater,
        ratio: &total / critical,
        total_area: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_placement, strictly_inside, TriangleKind};
    use crate::exact::QuadExt as Q;

    fn iso(kind: TriangleKind, t: Q, x: i64, y: i64, index: usize) -> TrianglePlacement {
        make_placement(kind, t, Point::new(x, y)).unwrap().with_index(index)
    }

    #[test]
    fn two_halves_certify() {
        let ps = vec![
            iso(TriangleKind::ISO_BASE, Q::one(), 0, 0, 1),
            iso(TriangleKind::ISO_ROTATED, Q::one(), 1, 1, 2),
        ];
        let cert = validate_packing(&ContainerRegion::unit_square(), &ps).unwrap();
        assert_eq!(cert.total_area, Q::one());
        assert_eq!(cert.pairs.len(), 1);
        assert!(verify_certificate(&cert, &ps));
    }

    #[test]
    fn identical_placements_overlap() {
        let ps = vec![
            iso(TriangleKind::ISO_BASE, Q::one(), 0, 0, 1),
            iso(TriangleKind::ISO_BASE, Q::one(), 0, 0, 2),
        ];
        match validate_packing(&ContainerRegion::unit_square(), &ps) {
            Err(Violation::Overlap { i: 1, j: 2, witness }) => {
                assert!(strictly_inside(&ps[0].vertices, &witness));
                assert!(strictly_inside(&ps[1].vertices, &witness));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nested_equilateral_pair_certifies() {
        let up = make_placement(TriangleKind::EQ_BASE, Q::frac(1, 2), Point::origin())
            .unwrap()
            .with_index(1);
        let down = make_placement(TriangleKind::EQ_ROTATED, Q::frac(1, 2), Point::new(Q::frac(1, 2), 0))
            .unwrap()
            .with_index(2);
        let cert = validate_packing(&ContainerRegion::unit_square(), &[up, down]).unwrap();
        assert_eq!(cert.total_area, QuadExt::surd(1, 8, 3));
    }

    #[test]
    fn out_of_container_reported() {
        let ps = vec![iso(TriangleKind::ISO_BASE, Q::one(), 0, 1, 7)];
        assert!(matches!(
            validate_packing(&ContainerRegion::unit_square(), &ps),
            Err(Violation::OutOfContainer { index: 7, .. })
        ));
    }

    #[test]
    fn tampered_certificate_fails() {
        let ps = vec![
            iso(TriangleKind::ISO_BASE, Q::one(), 0, 0, 1),
            iso(TriangleKind::ISO_ROTATED, Q::one(), 1, 1, 2),
        ];
        let mut cert = validate_packing(&ContainerRegion::unit_square(), &ps).unwrap();
        cert.pairs.clear();
        assert!(!verify_certificate(&cert, &ps));
    }

    #[test]
    fn density_examples() {
        let quarter = |k| {
            make_placement(TriangleKind::ISO_BASE, Q::frac(1, 2), Point::new(0, 0))
                .unwrap()
                .with_index(k)
        };
        let ps: Vec<_> = (1..=4).map(quarter).collect();
        let r = certify_density(&ps, &Q::frac(1, 2));
        assert!(r.within_bound);
        assert_eq!(r.ratio, Q::one());

        let big: Vec<_> = (1..=4)
            .map(|k| {
                make_placement(TriangleKind::ISO_BASE, Q::frac(51, 100), Point::origin())
                    .unwrap()
                    .with_index(k)
            })
            .collect();
        assert!(!certify_density(&big, &Q::frac(1, 2)).within_bound);

        let empty = certify_density(&[], &Q::frac(1, 2));
        assert!(empty.within_bound);
        assert_eq!(empty.ratio, Q::zero());
    }
}
