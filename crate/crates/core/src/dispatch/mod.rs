//! Unit-square packers built from a few explicitly placed leading
//! triangles plus one layer-packed residual region.

mod bounds;
mod equilateral;
mod iso;

pub use bounds::{evaluate_case_lower_bound, BoundError, CASE_IDS};
pub use equilateral::{eq_case_path, pack_unit_square_eq};
pub use iso::{pack_square_iso_diag, pack_unit_square_iso};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{validate_packing, Certificate};
use crate::exact::{QuadExt, Rational};
use crate::geometry::{ContainerRegion, Family, TrianglePlacement};
use crate::layer::{Engine, EngineDims, Item, PackFailure};

/// How one explicitly placed triangle was positioned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum AnchorRule {
    /// Upright in the lower-left corner of the container.
    CornerBase,
    /// Rotated copy whose hypotenuse lies on the hypotenuse of `of`.
    NestOnHyp { of: usize },
    /// Apex-down copy with its apex at the right foot of `of`.
    NestGroundApexDown { of: usize },
    /// Upright on the floor, flush against the right side of `of`.
    GroundBeside { of: usize },
    /// Upright at the left wall directly on top of `prev`.
    StackAbove { prev: usize },
    /// Apex-down copy with its left side on the line `x + y/√3 = intercept`,
    /// as low as the right wall allows.
    SlideMinOnLeft60Line { intercept: QuadExt },
    /// Apex-down copy with its left side on the line `x + y/√3 = intercept`
    /// and its top side on the top wall.
    SlideMaxOnLeft60Line { intercept: QuadExt },
    /// Upright whose base starts at the apex of the apex-down copy `of`.
    NestRightOfApexDown { of: usize },
    /// Upright kept below the slant line `x + y/√3 = intercept`.
    FlushUnderSlant { intercept: QuadExt },
    /// Mirror image of another rule in the vertical axis `x = 1/2`.
    MirrorX { inner: Box<AnchorRule> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitPlacement {
    pub index: usize,
    pub rule: AnchorRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualTrace {
    /// The region in container coordinates.
    pub region: ContainerRegion,
    pub engine: Engine,
    /// The same region in the engine's canonical frame.
    pub dims: EngineDims,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub case_path: String,
    /// Name of the configuration that produced the packing.
    pub candidate: String,
    pub explicit_placements: Vec<ExplicitPlacement>,
    pub residual: Option<ResidualTrace>,
    /// Guarantee bound of the residual engine at its largest size (zero
    /// when nothing was left for the residual).
    pub bound_checked: QuadExt,
    /// Configurations tried before the winning one, with the reason each
    /// was rejected.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<String>,
}

impl CaseTrace {
    pub(crate) fn new(case_path: impl Into<String>) -> Self {
        Self {
            case_path: case_path.into(),
            candidate: String::new(),
            explicit_placements: Vec::new(),
            residual: None,
            bound_checked: QuadExt::zero(),
            rejected: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub family: Family,
    pub container: ContainerRegion,
    pub placements: Vec<TrianglePlacement>,
    pub trace: CaseTrace,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DispatchError {
    #[error("total area {total} exceeds the guaranteed bound {bound}")]
    AreaBoundExceeded { total: QuadExt, bound: QuadExt },
    #[error("unpackable: {reason}")]
    Unpackable { reason: String },
    #[error("internal stop in case {}: {detail}", trace.case_path)]
    InternalStop { trace: Box<CaseTrace>, detail: String },
    #[error("bad input: {0}")]
    BadInput(String),
}

/// Sorts sizes in non-increasing order, ties by input position, and
/// numbers them from 1.
pub(crate) fn sorted_items(sizes: &[Rational]) -> Result<Vec<Item>, DispatchError> {
    let mut items = Vec::with_capacity(sizes.len());
    for (i, s) in sizes.iter().enumerate() {
        let size = QuadExt::rational(s.clone());
        if !size.is_positive() {
            return Err(DispatchError::BadInput(format!("size #{} is not positive: {size}", i + 1)));
        }
        items.push(Item { index: i + 1, size });
    }
    items.sort_by(|a, b| b.size.cmp(&a.size));
    Ok(items)
}

/// Size of the k-th largest item (1-based), zero when absent.
pub(crate) fn padded(items: &[Item], k: usize) -> QuadExt {
    items.get(k - 1).map(|it| it.size.clone()).unwrap_or_else(QuadExt::zero)
}

pub(crate) fn finish(
    family: Family,
    container: ContainerRegion,
    placements: Vec<TrianglePlacement>,
    trace: CaseTrace,
) -> Result<PackingResult, DispatchError> {
    match validate_packing(&container, &placements) {
        Ok(certificate) => Ok(PackingResult { family, container, placements, trace, certificate }),
        Err(v) => Err(DispatchError::InternalStop {
            detail: format!("output failed validation: {v}"),
            trace: Box::new(trace),
        }),
    }
}

pub(crate) fn stop(trace: &CaseTrace, failure: &PackFailure) -> DispatchError {
    DispatchError::InternalStop { trace: Box::new(trace.clone()), detail: failure.to_string() }
}
