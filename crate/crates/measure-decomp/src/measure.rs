//! Signed measures on a [`FiniteSpace`] with exact rational arithmetic.
//!
//! A signed measure stores one rational per partition block; additivity over
//! blocks holds by construction. All lattice operations, the positive-subset
//! induction and the Hahn-Jordan decomposition are exact: no floating point
//! enters this module.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::space::{AtomSet, FiniteSpace};

/// Exact scalar used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Cap on block counts for the exhaustive subset searches inside
/// [`find_positive_subset`].
pub const MAX_SCAN_BLOCKS: usize = 20;

/// A signed measure: one exact rational mass per partition block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMeasure {
    space: FiniteSpace,
    values: Vec<Rational>,
}

impl SignedMeasure {
    pub fn new(space: FiniteSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space, values })
    }

    pub fn zero(space: FiniteSpace) -> Self {
        let values = vec![Rational::zero(); space.block_count()];
        Self { space, values }
    }

    pub fn from_ints(space: FiniteSpace, values: &[i64]) -> Result<Self> {
        let values = values.iter().map(|&v| rat_int(v)).collect();
        Self::new(space, values)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn block_value(&self, block: usize) -> &Rational {
        &self.values[block]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// True if every block carries a nonnegative mass, i.e. the measure is
    /// positive (every measurable set has nonnegative measure).
    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    fn check_set(&self, f: &AtomSet) -> Result<()> {
        if f.len() != self.space.block_count() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    fn check_space(&self, other: &SignedMeasure) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// mu(f): the sum of block masses over `f`.
    pub fn evaluate(&self, f: &AtomSet) -> Result<Rational> {
        self.check_set(f)?;
        Ok(f.blocks().map(|b| &self.values[b]).sum())
    }

    /// mu(Omega).
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    /// The restriction mu(f `intersect` .) as a measure on the same space.
    pub fn restrict(&self, f: &AtomSet) -> Result<SignedMeasure> {
        self.check_set(f)?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(b, v)| if f.contains(b) { v.clone() } else { Rational::zero() })
            .collect();
        Ok(SignedMeasure {
            space: self.space.clone(),
            values,
        })
    }

    /// The variation |mu| together with the total-variation norm |mu|(Omega).
    pub fn variation(&self) -> (SignedMeasure, Rational) {
        let values: Vec<Rational> = self.values.iter().map(Signed::abs).collect();
        let norm = values.iter().sum();
        (
            SignedMeasure {
                space: self.space.clone(),
                values,
            },
            norm,
        )
    }

    /// Total-variation norm.
    pub fn norm(&self) -> Rational {
        self.values.iter().map(Signed::abs).sum()
    }

    pub fn negate(&self) -> SignedMeasure {
        let values = self.values.iter().map(|v| -v).collect();
        SignedMeasure {
            space: self.space.clone(),
            values,
        }
    }

    pub fn add(&self, other: &SignedMeasure) -> Result<SignedMeasure> {
        self.check_space(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SignedMeasure {
            space: self.space.clone(),
            values,
        })
    }

    pub fn sub(&self, other: &SignedMeasure) -> Result<SignedMeasure> {
        self.add(&other.negate())
    }

    pub fn scale(&self, t: &Rational) -> SignedMeasure {
        let values = self.values.iter().map(|v| v * t).collect();
        SignedMeasure {
            space: self.space.clone(),
            values,
        }
    }

    /// Blocks carrying nonzero mass.
    pub fn support_set(&self) -> AtomSet {
        let blocks: Vec<usize> = (0..self.values.len())
            .filter(|&b| !self.values[b].is_zero())
            .collect();
        self.space.set_of(&blocks)
    }

    /// True iff `f` is a mu-null set: every measurable subset of `f` has
    /// measure zero, i.e. every block inside `f` carries zero mass.
    pub fn is_null_set(&self, f: &AtomSet) -> Result<bool> {
        self.check_set(f)?;
        Ok(f.blocks().all(|b| self.values[b].is_zero()))
    }
}

/// The lattice supremum `nu1 v nu2`: blockwise maximum. For every measurable
/// `F` this realises `sup { nu1(B) + nu2(F \ B) : B subset of F }`.
pub fn lattice_sup(nu1: &SignedMeasure, nu2: &SignedMeasure) -> Result<SignedMeasure> {
    nu1.check_space(nu2)?;
    let values = nu1
        .values
        .iter()
        .zip(&nu2.values)
        .map(|(a, b)| a.max(b).clone())
        .collect();
    Ok(SignedMeasure {
        space: nu1.space.clone(),
        values,
    })
}

/// The lattice infimum, obtained as `-((-nu1) v (-nu2))`.
pub fn lattice_inf(nu1: &SignedMeasure, nu2: &SignedMeasure) -> Result<SignedMeasure> {
    Ok(lattice_sup(&nu1.negate(), &nu2.negate())?.negate())
}

/// Absolute continuity and mutual singularity of `mu` relative to `nu`:
/// `mu << nu` iff every nu-null block is mu-null; `mu` and `nu` are singular
/// iff `|mu| ^ |nu| = 0`.
pub fn relation(mu: &SignedMeasure, nu: &SignedMeasure) -> Result<(bool, bool)> {
    mu.check_space(nu)?;
    let abs_continuous = mu
        .values
        .iter()
        .zip(&nu.values)
        .all(|(m, n)| !n.is_zero() || m.is_zero());
    let singular = mu
        .values
        .iter()
        .zip(&nu.values)
        .all(|(m, n)| m.is_zero() || n.is_zero());
    Ok((abs_continuous, singular))
}

fn is_positive_on(mu: &SignedMeasure, a: &AtomSet) -> bool {
    a.blocks().all(|b| !mu.values[b].is_negative())
}

/// Extracts from `a` (with `mu(a) > 0`) a mu-positive, non-null subset, by the
/// inductive removal of exceptional sets.
///
/// Starting from `A_0 = a`: while the current set is not positive, find the
/// smallest `n_k` admitting a subset `B_k` with `mu(B_k) < -1/n_k` (the search
/// for `n_k` resumes from `n_{k-1}`), pick among such subsets the one of
/// minimum measure (ties broken by the canonical lexicographic order on bit
/// vectors), and remove it. On a finite space the loop terminates with a
/// positive set of measure at least `mu(a)`.
pub fn find_positive_subset(mu: &SignedMeasure, a: &AtomSet) -> Result<AtomSet> {
    mu.check_set(a)?;
    if a.len() > MAX_SCAN_BLOCKS {
        return Err(Error::SizeCap {
            what: "block count",
            got: a.len(),
            cap: MAX_SCAN_BLOCKS,
        });
    }
    if !mu.evaluate(a)?.is_positive() {
        return Err(Error::Precondition("find_positive_subset needs mu(a) > 0"));
    }
    let mut removed = mu.space().empty_set();
    let mut current = *a;
    let mut n = 1u64;
    while !is_positive_on(mu, &current) {
        // Smallest n >= previous n admitting B with mu(B) < -1/n, then the
        // minimum-measure such B (lex-smallest on ties).
        let (n_k, b_k) = loop {
            let threshold = -BigRational::new(BigInt::one(), BigInt::from(n));
            let mut best: Option<(Rational, AtomSet)> = None;
            for b in current.subsets() {
                let v = mu.evaluate(&b)?;
                if v < threshold {
                    let better = match &best {
                        None => true,
                        Some((bv, bs)) => v < *bv || (v == *bv && b < *bs),
                    };
                    if better {
                        best = Some((v, b));
                    }
                }
            }
            match best {
                Some((_, b)) => break (n, b),
                None => n += 1,
            }
        };
        let _ = n_k;
        removed = removed.union(&b_k);
        current = a.difference(&removed);
    }
    Ok(current)
}

/// Hahn-Jordan decomposition of a signed measure.
///
/// Returns the pointwise-largest mu-positive set with mu-negative complement
/// (all blocks of nonnegative mass) together with the Jordan parts
/// `mu+ = mu(. ^ g)` and `mu- = -mu(. ^ g^c)`.
pub fn hahn_jordan(mu: &SignedMeasure) -> (AtomSet, SignedMeasure, SignedMeasure) {
    let nonneg: Vec<usize> = (0..mu.values.len())
        .filter(|&b| !mu.values[b].is_negative())
        .collect();
    let g_bar = mu.space.set_of(&nonneg);
    let mu_plus = mu.restrict(&g_bar).expect("same space");
    let mu_minus = mu.restrict(&g_bar.complement()).expect("same space").negate();
    (g_bar, mu_plus, mu_minus)
}
