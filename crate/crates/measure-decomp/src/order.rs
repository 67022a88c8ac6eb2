//! The atomic and diffuse projections on the space of signed measures, and
//! band membership relative to a family of sets.
//!
//! For a fixed nonempty family, the map sending a measure to its atomic part
//! is a band projection: a positive linear contraction and the unique
//! nearest-point map onto the band of measures concentrated on some member of
//! the closure. Order continuity holds in its finite shadow: for finite
//! increasing chains of positive measures the atomic parts of the chain have
//! the atomic part of the top element as their blockwise supremum (finite
//! spaces admit no strictly increasing infinite chains of distinct supports,
//! so nets reduce to chains).

use crate::decompose::{dellacherie_decompose, g_atomic_support};
use crate::error::Result;
use crate::measure::SignedMeasure;
use crate::space::SetFamily;

/// Membership of a measure in the atomic band (concentrated on some member of
/// the closed family) and in the diffuse band (every member is null). Both
/// hold only for the zero measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BandMembership {
    pub in_atomic_band: bool,
    pub in_diffuse_band: bool,
}

/// Applies both band projections: returns (atomic part, diffuse part).
pub fn band_project(
    mu: &SignedMeasure,
    g: &SetFamily,
) -> Result<(SignedMeasure, SignedMeasure)> {
    let d = dellacherie_decompose(mu, g)?;
    Ok((d.atomic, d.diffuse))
}

/// Tests band membership. A measure is in the atomic band iff it vanishes
/// outside some member of the closure, equivalently outside the pointwise
/// union of all members; it is in the diffuse band iff that union is null.
pub fn band_membership(mu: &SignedMeasure, g: &SetFamily) -> Result<BandMembership> {
    let union = g_atomic_support(mu, g)?;
    let in_atomic_band = mu.is_null_set(&union.complement())?;
    let in_diffuse_band = mu.is_null_set(&union)?;
    Ok(BandMembership {
        in_atomic_band,
        in_diffuse_band,
    })
}
