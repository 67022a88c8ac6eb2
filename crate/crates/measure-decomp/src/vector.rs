//! R^d-valued measures on a finite space, their control measures, and the
//! vector form of the decomposition engine.

use num::{Signed, Zero};

use crate::decompose::g_atomic_support;
use crate::error::{Error, Result};
use crate::measure::{Rational, SignedMeasure};
use crate::space::{AtomSet, FiniteSpace, SetFamily};

/// A vector measure: one rational vector of dimension `d` per block.
/// Complex-valued measures are the case `d = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMeasure {
    space: FiniteSpace,
    dim: usize,
    values: Vec<Vec<Rational>>,
}

impl VectorMeasure {
    pub fn new(space: FiniteSpace, dim: usize, values: Vec<Vec<Rational>>) -> Result<Self> {
        if values.len() != space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        if values.iter().any(|v| v.len() != dim) {
            return Err(Error::Invalid("all block vectors must have length d".into()));
        }
        Ok(Self { space, dim, values })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Theta(f), summed componentwise over the blocks of `f`.
    pub fn evaluate(&self, f: &AtomSet) -> Result<Vec<Rational>> {
        if f.len() != self.space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        let mut out = vec![Rational::zero(); self.dim];
        for b in f.blocks() {
            for (o, v) in out.iter_mut().zip(&self.values[b]) {
                *o += v;
            }
        }
        Ok(out)
    }

    /// The restriction Theta(f `intersect` .).
    pub fn restrict(&self, f: &AtomSet) -> Result<VectorMeasure> {
        if f.len() != self.space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        let zero = vec![Rational::zero(); self.dim];
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(b, v)| if f.contains(b) { v.clone() } else { zero.clone() })
            .collect();
        Ok(VectorMeasure {
            space: self.space.clone(),
            dim: self.dim,
            values,
        })
    }

    pub fn add(&self, other: &VectorMeasure) -> Result<VectorMeasure> {
        if self.space != other.space || self.dim != other.dim {
            return Err(Error::SpaceMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(VectorMeasure {
            space: self.space.clone(),
            dim: self.dim,
            values,
        })
    }

    /// True iff every block of `f` carries the zero vector.
    pub fn is_null_set(&self, f: &AtomSet) -> Result<bool> {
        if f.len() != self.space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        Ok(f.blocks().all(|b| self.values[b].iter().all(Zero::is_zero)))
    }
}

/// An equivalent control measure for `theta`: the positive measure assigning
/// each block the sum of the absolute values of its components. Its null sets
/// are exactly the Theta-null sets; for `d = 1` it is the variation.
pub fn control_measure(theta: &VectorMeasure) -> SignedMeasure {
    let values: Vec<Rational> = theta
        .values
        .iter()
        .map(|v| v.iter().map(Signed::abs).sum())
        .collect();
    SignedMeasure::new(theta.space.clone(), values).expect("lengths match")
}

/// The decomposition of a vector measure relative to `g`: the support is the
/// atomic support of the control measure, and the parts are the restrictions
/// of Theta to the support and its complement. Every member of the closure of
/// `g` is null for the diffuse part.
pub fn vector_decompose(
    theta: &VectorMeasure,
    g: &SetFamily,
) -> Result<(AtomSet, VectorMeasure, VectorMeasure)> {
    let control = control_measure(theta);
    let support = g_atomic_support(&control, g)?;
    let atomic = theta.restrict(&support)?;
    let diffuse = theta.restrict(&support.complement())?;
    Ok((support, atomic, diffuse))
}
