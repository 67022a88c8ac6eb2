//! Projection-valued measures on finite-dimensional complex Hilbert spaces.
//!
//! A spectral measure assigns an orthogonal projection to every outcome;
//! values on outcome subsets are sums of member projections. Two construction
//! paths exist: exact (projection entries are rational complex numbers,
//! validated with exact equality) and numeric (built from a normal matrix by
//! eigendecomposition, validated within 1e-9).

use num::complex::Complex64;
use num::{BigInt, BigRational, Complex, One, Zero};

use crate::decompose::g_atomic_support;
use crate::error::{Error, Result};
use crate::measure::{Rational, SignedMeasure};
use crate::space::{AtomSet, FiniteSpace, SetFamily};

/// Complex number with exact rational parts.
pub type ComplexRat = Complex<BigRational>;

pub fn crat(re: Rational, im: Rational) -> ComplexRat {
    Complex::new(re, im)
}

pub fn crat_int(re: i64, im: i64) -> ComplexRat {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// Entry scalar of a spectral measure: exact rational complex or `f64`
/// complex, with the matching notion of "zero" (exact equality vs a 1e-9
/// tolerance).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    fn is_negligible(&self) -> bool;
    /// Real part as an exact rational (numeric values are snapped to zero
    /// below 1e-12 before conversion).
    fn real_rational(&self) -> Rational;
}

impl Scalar for ComplexRat {
    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn add(&self, other: &Self) -> Self {
        Complex::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        Complex::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        Complex::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }
    fn is_negligible(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn real_rational(&self) -> Rational {
        self.re.clone()
    }
}

/// Entrywise tolerance for the numeric construction path.
pub const NUMERIC_TOL: f64 = 1e-9;

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }
    fn is_negligible(&self) -> bool {
        self.norm() <= NUMERIC_TOL
    }
    fn real_rational(&self) -> Rational {
        let re = if self.re.abs() <= 1e-12 { 0.0 } else { self.re };
        BigRational::from_float(re).expect("finite")
    }
}

/// A dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("matrix must be square".into()));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.dim + j]
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_negligible() {
                    continue;
                }
                for j in 0..n {
                    let t = a.mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = self.at(j, i).conj();
            }
        }
        out
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n).fold(T::zero(), |acc, j| acc.add(&self.at(i, j).mul(&x[j])))
            })
            .collect()
    }

    /// True iff every entry is negligible for the scalar's tolerance.
    pub fn is_negligible(&self) -> bool {
        self.data.iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_negligible()
    }
}

fn inner<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(&b.conj())))
}

/// A projection-valued measure on a finite outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure<T> {
    dim: usize,
    outcomes: Vec<String>,
    projections: Vec<CMatrix<T>>,
}

impl<T: Scalar> SpectralMeasure<T> {
    /// Validates the axioms: each projection Hermitian and idempotent,
    /// projections for distinct outcomes orthogonal, and all of them summing
    /// to the identity. Each violation is reported distinctly.
    pub fn from_projections(
        dim: usize,
        outcomes: Vec<String>,
        projections: Vec<CMatrix<T>>,
    ) -> Result<Self> {
        if outcomes.len() != projections.len() {
            return Err(Error::Invalid(
                "one projection per outcome is required".into(),
            ));
        }
        if outcomes.is_empty() {
            return Err(Error::Invalid("outcome set must be nonempty".into()));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            if !outcomes.iter().all(|o| seen.insert(o)) {
                return Err(Error::Invalid("outcome labels must be distinct".into()));
            }
        }
        if projections.iter().any(|p| p.dim() != dim) {
            return Err(Error::Invalid("projection shape mismatch".into()));
        }
        for (k, p) in projections.iter().enumerate() {
            if !p.approx_eq(&p.adjoint()) {
                return Err(Error::NotHermitian(k));
            }
            if !p.matmul(p).approx_eq(p) {
                return Err(Error::NotIdempotent(k));
            }
        }
        for i in 0..projections.len() {
            for j in i + 1..projections.len() {
                if !projections[i].matmul(&projections[j]).is_negligible() {
                    return Err(Error::NotOrthogonal(i, j));
                }
            }
        }
        let sum = projections
            .iter()
            .fold(CMatrix::zeros(dim), |acc, p| acc.add(p));
        if !sum.approx_eq(&CMatrix::identity(dim)) {
            return Err(Error::Incomplete);
        }
        Ok(Self {
            dim,
            outcomes,
            projections,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn projections(&self) -> &[CMatrix<T>] {
        &self.projections
    }

    /// The finite space whose blocks are the outcomes.
    pub fn outcome_space(&self) -> FiniteSpace {
        FiniteSpace::new(self.outcomes.iter().cloned()).expect("distinct labels")
    }

    fn check_delta(&self, delta: &AtomSet) -> Result<()> {
        if delta.len() != self.outcomes.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// E(Delta): the sum of the member projections.
    pub fn evaluate(&self, delta: &AtomSet) -> Result<CMatrix<T>> {
        self.check_delta(delta)?;
        Ok(delta
            .blocks()
            .fold(CMatrix::zeros(self.dim), |acc, k| {
                acc.add(&self.projections[k])
            }))
    }

    /// The sesquilinear scalar measure (E(Delta)x, y). For `y = x` the value
    /// is real, nonnegative, and equals the squared norm of E(Delta)x.
    pub fn e_xy(&self, delta: &AtomSet, x: &[T], y: &[T]) -> Result<T> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Invalid("vector length must equal dim".into()));
        }
        let proj = self.evaluate(delta)?;
        Ok(inner(&proj.apply(x), y))
    }

    /// True iff E(Delta) = 0.
    pub fn is_null(&self, delta: &AtomSet) -> Result<bool> {
        self.check_delta(delta)?;
        Ok(delta
            .blocks()
            .all(|k| self.projections[k].is_negligible()))
    }
}

/// The equivalent control measure built from the standard orthonormal basis
/// `x_1..x_m`: `mu = sum_n t_n E_{x_n,x_n}` with
/// `t_n = 2^-(n+1) / (1 + |x_n|^2) = 2^-(n+2)`, evaluated exactly per
/// outcome. `mu(Delta) = 0` iff `E(Delta) = 0`.
pub fn spectral_control<T: Scalar>(e: &SpectralMeasure<T>) -> SignedMeasure {
    let space = e.outcome_space();
    let values: Vec<Rational> = e
        .projections
        .iter()
        .map(|p| {
            (0..e.dim)
                .map(|n| {
                    // t for the (n+1)-th unit basis vector: 2^-((n+1)+2)
                    let t = BigRational::new(BigInt::one(), BigInt::from(2).pow(n as u32 + 3));
                    t * p.at(n, n).real_rational()
                })
                .sum()
        })
        .collect();
    SignedMeasure::new(space, values).expect("lengths match")
}

/// The two halves of a decomposed spectral measure. Each half satisfies every
/// spectral-measure axiom except completeness: the values at the full outcome
/// set are complementary projections, not both the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPart<T> {
    dim: usize,
    outcomes: Vec<String>,
    projections: Vec<CMatrix<T>>,
}

impl<T: Scalar> SpectralPart<T> {
    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn projections(&self) -> &[CMatrix<T>] {
        &self.projections
    }

    pub fn evaluate(&self, delta: &AtomSet) -> Result<CMatrix<T>> {
        if delta.len() != self.outcomes.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(delta
            .blocks()
            .fold(CMatrix::zeros(self.dim), |acc, k| {
                acc.add(&self.projections[k])
            }))
    }

    /// Value at the full outcome set.
    pub fn total(&self) -> CMatrix<T> {
        self.projections
            .iter()
            .fold(CMatrix::zeros(self.dim), |acc, p| acc.add(p))
    }
}

/// Decomposes `E` relative to a family of outcome subsets: the support is the
/// atomic support of the control measure, and the parts send `Delta` to
/// `E(Delta ^ support)` and `E(Delta ^ support^c)`.
pub fn spectral_decompose<T: Scalar>(
    e: &SpectralMeasure<T>,
    g: &SetFamily,
) -> Result<(AtomSet, SpectralPart<T>, SpectralPart<T>)> {
    let control = spectral_control(e);
    let support = g_atomic_support(&control, g)?;
    let part = |keep: &AtomSet| SpectralPart {
        dim: e.dim,
        outcomes: e.outcomes.clone(),
        projections: e
            .projections
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if keep.contains(k) {
                    p.clone()
                } else {
                    CMatrix::zeros(e.dim)
                }
            })
            .collect(),
    };
    Ok((support, part(&support), part(&support.complement())))
}

// ---------------------------------------------------------------------------
// Numeric construction from a normal matrix
// ---------------------------------------------------------------------------

/// Relative tolerance used to group nearby eigenvalues into one outcome; the
/// sole source of outcome-set ambiguity on the numeric path.
pub const EIGENVALUE_GROUP_TOL: f64 = 1e-8;

fn to_nalgebra(m: &CMatrix<Complex64>) -> nalgebra::DMatrix<Complex64> {
    nalgebra::DMatrix::from_fn(m.dim(), m.dim(), |i, j| *m.at(i, j))
}

fn frobenius(m: &CMatrix<Complex64>) -> f64 {
    (0..m.dim())
        .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
        .map(|(i, j)| m.at(i, j).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.abs() < 1e-6 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

/// Builds the spectral measure of a normal matrix by eigendecomposition.
///
/// The Hermitian and skew-Hermitian parts of a normal matrix commute, so the
/// eigenvectors are found by diagonalising the Hermitian part and then
/// diagonalising the skew part restricted to each eigenspace. Eigenvalues
/// within relative tolerance [`EIGENVALUE_GROUP_TOL`] of each other are
/// grouped into a single outcome; the grouped eigenprojections are validated
/// against all four axioms within 1e-9.
///
/// Returns the measure together with the grouped eigenvalues, one per
/// outcome, in outcome order.
pub fn from_normal_matrix(
    n_matrix: &CMatrix<Complex64>,
) -> Result<(SpectralMeasure<Complex64>, Vec<Complex64>)> {
    let m = n_matrix.dim();
    if m == 0 {
        return Err(Error::Invalid("matrix must be nonempty".into()));
    }
    let adj = n_matrix.adjoint();
    let commutator = n_matrix.matmul(&adj).sub(&adj.matmul(n_matrix));
    let scale = frobenius(n_matrix);
    if frobenius(&commutator) > 1e-10 * scale * scale + f64::EPSILON {
        return Err(Error::NotNormal);
    }

    // A = (N + N*)/2 and B = (N - N*)/(2i), both Hermitian and commuting.
    let half = Complex64::new(0.5, 0.0);
    let half_over_i = Complex64::new(0.0, -0.5);
    let n_na = to_nalgebra(n_matrix);
    let adj_na = n_na.adjoint();
    let a = (&n_na + &adj_na).map(|z| z * half);
    let b = (&n_na - &adj_na).map(|z| z * half_over_i);

    let eig_a = a.clone().symmetric_eigen();
    let cluster_tol = EIGENVALUE_GROUP_TOL * scale.max(1.0);

    // Cluster the eigenvalues of A, then diagonalise B inside each cluster.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        eig_a.eigenvalues[i]
            .partial_cmp(&eig_a.eigenvalues[j])
            .expect("finite eigenvalues")
    });
    let mut vectors: Vec<nalgebra::DVector<Complex64>> = Vec::with_capacity(m);
    let mut idx = 0;
    while idx < m {
        let mut end = idx + 1;
        while end < m
            && (eig_a.eigenvalues[order[end]] - eig_a.eigenvalues[order[end - 1]]).abs()
                <= cluster_tol
        {
            end += 1;
        }
        let basis: Vec<nalgebra::DVector<Complex64>> = order[idx..end]
            .iter()
            .map(|&c| eig_a.eigenvectors.column(c).into_owned())
            .collect();
        if basis.len() == 1 {
            vectors.push(basis.into_iter().next().unwrap());
        } else {
            let k = basis.len();
            let restricted = nalgebra::DMatrix::from_fn(k, k, |r, c| {
                (basis[r].adjoint() * &b * &basis[c])[(0, 0)]
            });
            let eig_b = restricted.symmetric_eigen();
            for c in 0..k {
                let mut v = nalgebra::DVector::from_element(m, Complex64::new(0.0, 0.0));
                for r in 0..k {
                    v += &basis[r] * eig_b.eigenvectors[(r, c)];
                }
                vectors.push(v);
            }
        }
        idx = end;
    }

    // Rayleigh quotients give the complex eigenvalue of each joint vector.
    let eigenpairs: Vec<(Complex64, nalgebra::DVector<Complex64>)> = vectors
        .into_iter()
        .map(|v| {
            let lam_re = (v.adjoint() * &a * &v)[(0, 0)].re;
            let lam_im = (v.adjoint() * &b * &v)[(0, 0)].re;
            (Complex64::new(lam_re, lam_im), v)
        })
        .collect();

    // Group eigenvalues into outcomes and sum the rank-one projections.
    let mut groups: Vec<(Complex64, CMatrix<Complex64>)> = Vec::new();
    for (lam, v) in eigenpairs {
        let mut rank_one = CMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                *rank_one.at_mut(i, j) = v[i] * v[j].conj();
            }
        }
        match groups
            .iter_mut()
            .find(|(rep, _)| (lam - *rep).norm() <= cluster_tol)
        {
            Some((_, proj)) => *proj = proj.add(&rank_one),
            None => groups.push((lam, rank_one)),
        }
    }
    groups.sort_by(|(x, _), (y, _)| {
        (x.re, x.im)
            .partial_cmp(&(y.re, y.im))
            .expect("finite eigenvalues")
    });

    let eigenvalues: Vec<Complex64> = groups.iter().map(|(lam, _)| *lam).collect();
    let outcomes: Vec<String> = eigenvalues.iter().map(|&z| fmt_complex(z)).collect();
    let projections: Vec<CMatrix<Complex64>> = groups.into_iter().map(|(_, p)| p).collect();
    let measure = SpectralMeasure::from_projections(m, outcomes, projections)?;
    Ok((measure, eigenvalues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::rat;
    use crate::space::sigma_close;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag112_exact() -> SpectralMeasure<ComplexRat> {
        let p1 = CMatrix::from_rows(vec![
            vec![crat_int(1, 0), crat_int(0, 0), crat_int(0, 0)],
            vec![crat_int(0, 0), crat_int(1, 0), crat_int(0, 0)],
            vec![crat_int(0, 0), crat_int(0, 0), crat_int(0, 0)],
        ])
        .unwrap();
        let p2 = CMatrix::from_rows(vec![
            vec![crat_int(0, 0), crat_int(0, 0), crat_int(0, 0)],
            vec![crat_int(0, 0), crat_int(0, 0), crat_int(0, 0)],
            vec![crat_int(0, 0), crat_int(0, 0), crat_int(1, 0)],
        ])
        .unwrap();
        SpectralMeasure::from_projections(3, vec!["1".into(), "2".into()], vec![p1, p2]).unwrap()
    }

    #[test]
    fn from_projections_validates() {
        let e = diag112_exact();
        assert_eq!(e.outcomes(), &["1", "2"]);

        // non-orthogonal pair
        let p = CMatrix::from_rows(vec![
            vec![crat_int(1, 0), crat_int(0, 0)],
            vec![crat_int(0, 0), crat_int(0, 0)],
        ])
        .unwrap();
        let err = SpectralMeasure::from_projections(
            2,
            vec!["x".into(), "y".into()],
            vec![p.clone(), p.clone()],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotOrthogonal(0, 1));

        // incomplete
        let q = CMatrix::zeros(2);
        let err =
            SpectralMeasure::from_projections(2, vec!["x".into(), "y".into()], vec![p, q])
                .unwrap_err();
        assert_eq!(err, Error::Incomplete);

        // not idempotent
        let half = CMatrix::from_rows(vec![
            vec![crat(rat(1, 2), rat(0, 1)), crat_int(0, 0)],
            vec![crat_int(0, 0), crat(rat(1, 2), rat(0, 1))],
        ])
        .unwrap();
        let err = SpectralMeasure::from_projections(
            2,
            vec!["x".into(), "y".into()],
            vec![half.clone(), half],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotIdempotent(0));
    }

    #[test]
    fn e_xy_values() {
        let e = diag112_exact();
        let space = e.outcome_space();
        let d1 = space.set_of(&[0]);
        let e1 = vec![crat_int(1, 0), crat_int(0, 0), crat_int(0, 0)];
        let e3 = vec![crat_int(0, 0), crat_int(0, 0), crat_int(1, 0)];
        assert_eq!(e.e_xy(&d1, &e1, &e1).unwrap(), crat_int(1, 0));
        assert_eq!(e.e_xy(&d1, &e1, &e3).unwrap(), crat_int(0, 0));

        // x = (e1 + e3)/sqrt(2): use the numeric path for the irrational scale
        let p1 = CMatrix::from_rows(vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let p2 = CMatrix::from_rows(vec![
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
        ])
        .unwrap();
        let en = SpectralMeasure::from_projections(3, vec!["1".into(), "2".into()], vec![p1, p2])
            .unwrap();
        let s = 1.0 / 2f64.sqrt();
        let x = vec![c64(s, 0.0), c64(0.0, 0.0), c64(s, 0.0)];
        let v = en.e_xy(&en.outcome_space().set_of(&[0]), &x, &x).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn control_worked_values() {
        let e = diag112_exact();
        let mu = spectral_control(&e);
        assert_eq!(*mu.block_value(0), rat(3, 16));
        assert_eq!(*mu.block_value(1), rat(1, 32));
        // null-set equivalence over all outcome subsets
        for d in e.outcome_space().all_subsets() {
            assert_eq!(mu.is_null_set(&d).unwrap(), e.is_null(&d).unwrap());
        }
    }

    #[test]
    fn control_single_outcome() {
        let id = CMatrix::from_rows(vec![vec![crat_int(1, 0)]]).unwrap();
        let e = SpectralMeasure::from_projections(1, vec!["1".into()], vec![id]).unwrap();
        let mu = spectral_control(&e);
        assert_eq!(*mu.block_value(0), rat(1, 8));
    }

    #[test]
    fn decompose_splits_identity() {
        let e = diag112_exact();
        let space = e.outcome_space();
        let g = sigma_close(&SetFamily::new(space.clone(), [space.set_of(&[0])]).unwrap())
            .unwrap();
        let (support, atomic, diffuse) = spectral_decompose(&e, &g).unwrap();
        assert_eq!(support, space.set_of(&[0]));
        assert_eq!(atomic.total(), e.evaluate(&space.set_of(&[0])).unwrap());
        assert_eq!(diffuse.total(), e.evaluate(&space.set_of(&[1])).unwrap());
        assert!(atomic.total().add(&diffuse.total()).approx_eq(&CMatrix::identity(3)));

        let g_full = sigma_close(&SetFamily::new(space.clone(), [space.full_set()]).unwrap())
            .unwrap();
        let (_, atomic, _) = spectral_decompose(&e, &g_full).unwrap();
        assert_eq!(atomic.projections(), e.projections());

        let g_empty = sigma_close(&SetFamily::new(space.clone(), [space.empty_set()]).unwrap())
            .unwrap();
        let (_, _, diffuse) = spectral_decompose(&e, &g_empty).unwrap();
        assert_eq!(diffuse.projections(), e.projections());
    }

    #[test]
    fn normal_matrix_diag() {
        let n = CMatrix::from_rows(vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(2.0, 0.0)],
        ])
        .unwrap();
        let (e, eigenvalues) = from_normal_matrix(&n).unwrap();
        assert_eq!(eigenvalues.len(), 2);
        assert!((eigenvalues[0] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!((eigenvalues[1] - c64(2.0, 0.0)).norm() < 1e-9);
        // projection ranks via traces
        let tr = |p: &CMatrix<Complex64>| (0..3).map(|i| p.at(i, i).re).sum::<f64>();
        assert!((tr(&e.projections()[0]) - 2.0).abs() < 1e-9);
        assert!((tr(&e.projections()[1]) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn normal_matrix_identity() {
        let (e, eigenvalues) = from_normal_matrix(&CMatrix::identity(4)).unwrap();
        assert_eq!(eigenvalues.len(), 1);
        assert!((eigenvalues[0] - c64(1.0, 0.0)).norm() < 1e-9);
        assert!(e.projections()[0].approx_eq(&CMatrix::identity(4)));
    }

    #[test]
    fn rejects_non_normal() {
        let n = CMatrix::from_rows(vec![
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(from_normal_matrix(&n).unwrap_err(), Error::NotNormal);
    }
}
