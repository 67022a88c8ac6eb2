//! Signed measures on [0,1] of the form "finite point masses plus a
//! piecewise-constant density on a uniform grid".
//!
//! Grid cell `k` is the half-open interval [k/m, (k+1)/m). Measurable sets are
//! restricted to grid-aligned unions of cells plus finite point lists, which
//! keeps evaluation exact while making the atomic/diffuse split, the Lebesgue
//! decomposition and the topological support nontrivial.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{rat_int, Rational};

/// A weighted point mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineAtom {
    pub location: Rational,
    pub weight: Rational,
}

/// Point masses plus a piecewise-constant density (mass per unit length) on a
/// uniform grid over [0,1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineMeasure {
    m: usize,
    densities: Vec<Rational>,
    atoms: Vec<LineAtom>,
}

impl LineMeasure {
    pub fn new(densities: Vec<Rational>, atoms: Vec<LineAtom>) -> Result<Self> {
        if densities.is_empty() {
            return Err(Error::Invalid("grid needs at least one cell".into()));
        }
        let one = Rational::one();
        for (i, a) in atoms.iter().enumerate() {
            if a.location.is_negative() || a.location > one {
                return Err(Error::Invalid("atom location outside [0,1]".into()));
            }
            if a.weight.is_zero() {
                return Err(Error::Invalid("atom weights must be nonzero".into()));
            }
            if atoms[..i].iter().any(|b| b.location == a.location) {
                return Err(Error::Invalid("atom locations must be distinct".into()));
            }
        }
        Ok(Self {
            m: densities.len(),
            densities,
            atoms,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn densities(&self) -> &[Rational] {
        &self.densities
    }

    pub fn atoms(&self) -> &[LineAtom] {
        &self.atoms
    }

    fn empty_like(&self) -> LineMeasure {
        LineMeasure {
            m: self.m,
            densities: vec![Rational::zero(); self.m],
            atoms: Vec::new(),
        }
    }

    /// True if all densities and atom weights are nonnegative.
    pub fn is_positive(&self) -> bool {
        self.densities.iter().all(|d| !d.is_negative())
            && self.atoms.iter().all(|a| !a.weight.is_negative())
    }

    /// Total mass over [0,1].
    pub fn total(&self) -> Rational {
        let cell_width = Rational::new(1.into(), self.m.into());
        let density_mass: Rational = self.densities.iter().map(|d| d * &cell_width).sum();
        let atom_mass: Rational = self.atoms.iter().map(|a| a.weight.clone()).sum();
        density_mass + atom_mass
    }

    /// mu(s): density mass over the selected cells plus the weights of atoms
    /// lying in `s`. An atom lies in `s` if its location is a listed point or
    /// falls inside a selected cell.
    pub fn evaluate(&self, s: &LineSet) -> Result<Rational> {
        if s.m != self.m {
            return Err(Error::GridMismatch(self.m, s.m));
        }
        let cell_width = Rational::new(1.into(), self.m.into());
        let mut total: Rational = s
            .cells()
            .map(|k| &self.densities[k] * &cell_width)
            .sum();
        for a in &self.atoms {
            let inside_cell = cell_index(&a.location, self.m)
                .map(|k| s.has_cell(k))
                .unwrap_or(false);
            if inside_cell || s.points.contains(&a.location) {
                total += &a.weight;
            }
        }
        Ok(total)
    }

    /// Splits into the purely atomic part (the point masses, concentrated on
    /// the finite union of atoms) and the diffuse part (the density).
    pub fn atomic_diffuse(&self) -> (LineMeasure, LineMeasure) {
        let atomic = LineMeasure {
            atoms: self.atoms.clone(),
            ..self.empty_like()
        };
        let diffuse = LineMeasure {
            densities: self.densities.clone(),
            ..self.empty_like()
        };
        (atomic, diffuse)
    }

    /// Lebesgue decomposition against Lebesgue measure: the density part is
    /// absolutely continuous, the point masses are singular.
    pub fn lebesgue(&self) -> (LineMeasure, LineMeasure) {
        let (atomic, diffuse) = self.atomic_diffuse();
        (diffuse, atomic)
    }

    /// The topological support of a positive measure: the complement of the
    /// largest open null set. Returns merged closed intervals (closures of
    /// runs of cells with nonzero density) plus isolated atom locations.
    pub fn topological_support(&self) -> Result<SupportSet> {
        if !self.is_positive() {
            return Err(Error::SignedInput);
        }
        let m_rat = rat_int(self.m as i64);
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        let mut run_start: Option<usize> = None;
        for k in 0..=self.m {
            let active = k < self.m && !self.densities[k].is_zero();
            match (run_start, active) {
                (None, true) => run_start = Some(k),
                (Some(start), false) => {
                    intervals.push((
                        rat_int(start as i64) / &m_rat,
                        rat_int(k as i64) / &m_rat,
                    ));
                    run_start = None;
                }
                _ => {}
            }
        }
        let mut points: Vec<Rational> = self
            .atoms
            .iter()
            .map(|a| a.location.clone())
            .filter(|loc| {
                !intervals
                    .iter()
                    .any(|(lo, hi)| lo <= loc && loc <= hi)
            })
            .collect();
        points.sort();
        Ok(SupportSet { intervals, points })
    }
}

/// Index of the grid cell [k/m, (k+1)/m) containing `loc`, if any; the point
/// 1 lies in no cell.
pub fn cell_index(loc: &Rational, m: usize) -> Option<usize> {
    let scaled = loc * rat_int(m as i64);
    let k = scaled.floor().to_integer();
    if k >= num::BigInt::from(0) && k < num::BigInt::from(m) {
        Some(usize::try_from(&k).expect("in range"))
    } else {
        None
    }
}

/// A grid-aligned measurable set: a union of grid cells plus finitely many
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSet {
    m: usize,
    cells: Vec<bool>,
    points: Vec<Rational>,
}

impl LineSet {
    pub fn new(m: usize, cell_indices: &[usize], points: Vec<Rational>) -> Result<Self> {
        let mut cells = vec![false; m];
        for &k in cell_indices {
            if k >= m {
                return Err(Error::Invalid(format!("cell index {k} out of range")));
            }
            cells[k] = true;
        }
        let one = Rational::one();
        if points.iter().any(|p| p.is_negative() || *p > one) {
            return Err(Error::Invalid("point outside [0,1]".into()));
        }
        Ok(Self { m, cells, points })
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn has_cell(&self, k: usize) -> bool {
        self.cells[k]
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&k| self.cells[k])
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }
}

/// A closed subset of [0,1]: a finite union of closed intervals and isolated
/// points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub intervals: Vec<(Rational, Rational)>,
    pub points: Vec<Rational>,
}

impl SupportSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x <= hi)
            || self.points.contains(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::rat;

    fn atom(loc: Rational, w: i64) -> LineAtom {
        LineAtom {
            location: loc,
            weight: rat_int(w),
        }
    }

    #[test]
    fn rejects_bad_atoms() {
        assert!(LineMeasure::new(vec![rat_int(1)], vec![atom(rat_int(2), 1)]).is_err());
        assert!(LineMeasure::new(vec![rat_int(1)], vec![atom(rat(1, 2), 0)]).is_err());
        assert!(LineMeasure::new(
            vec![rat_int(1)],
            vec![atom(rat(1, 2), 1), atom(rat(1, 2), 2)]
        )
        .is_err());
    }

    #[test]
    fn evaluate_cells_and_atoms() {
        let mu = LineMeasure::new(vec![rat_int(2), rat_int(0), rat_int(0)], vec![]).unwrap();
        let s = LineSet::new(3, &[0], vec![]).unwrap();
        assert_eq!(mu.evaluate(&s).unwrap(), rat(2, 3));

        let nu = LineMeasure::new(vec![rat_int(0)], vec![atom(rat(1, 2), 5)]).unwrap();
        let p = LineSet::new(1, &[], vec![rat(1, 2)]).unwrap();
        assert_eq!(nu.evaluate(&p).unwrap(), rat_int(5));

        // full [0,1]
        let mu = LineMeasure::new(
            vec![rat_int(3), rat_int(1)],
            vec![atom(rat(1, 4), 2)],
        )
        .unwrap();
        let full = LineSet::new(2, &[0, 1], vec![rat_int(1)]).unwrap();
        assert_eq!(mu.evaluate(&full).unwrap(), rat_int(4));
        assert_eq!(mu.total(), rat_int(4));
    }

    #[test]
    fn evaluate_grid_mismatch() {
        let mu = LineMeasure::new(vec![rat_int(1)], vec![]).unwrap();
        let s = LineSet::new(2, &[0], vec![]).unwrap();
        assert!(matches!(mu.evaluate(&s), Err(Error::GridMismatch(1, 2))));
    }

    #[test]
    fn atomic_diffuse_split() {
        let mu = LineMeasure::new(
            vec![rat_int(1), rat_int(1)],
            vec![atom(rat(1, 2), 2)],
        )
        .unwrap();
        let (a, d) = mu.atomic_diffuse();
        assert_eq!(a.atoms(), mu.atoms());
        assert!(a.densities().iter().all(Zero::is_zero));
        assert_eq!(d.densities(), mu.densities());
        assert!(d.atoms().is_empty());

        let pure_density = LineMeasure::new(vec![rat_int(1)], vec![]).unwrap();
        let (a, d) = pure_density.atomic_diffuse();
        assert_eq!(a.total(), rat_int(0));
        assert_eq!(d, pure_density);

        let pure_atoms = LineMeasure::new(vec![rat_int(0)], vec![atom(rat(1, 3), 1)]).unwrap();
        let (a, d) = pure_atoms.atomic_diffuse();
        assert_eq!(a, pure_atoms);
        assert_eq!(d.total(), rat_int(0));
    }

    #[test]
    fn lebesgue_split() {
        let mu = LineMeasure::new(
            vec![rat_int(3)],
            vec![atom(rat(1, 4), 1)],
        )
        .unwrap();
        let (ac, s) = mu.lebesgue();
        assert_eq!(ac.densities(), mu.densities());
        assert!(ac.atoms().is_empty());
        assert_eq!(s.atoms(), mu.atoms());
    }

    #[test]
    fn support_examples() {
        let mu = LineMeasure::new(vec![rat_int(0), rat_int(2), rat_int(0)], vec![]).unwrap();
        let sup = mu.topological_support().unwrap();
        assert_eq!(sup.intervals, vec![(rat(1, 3), rat(2, 3))]);
        assert!(sup.points.is_empty());

        let pos = LineMeasure::new(vec![rat_int(1), rat_int(2)], vec![]).unwrap();
        let sup = pos.topological_support().unwrap();
        assert_eq!(sup.intervals, vec![(rat_int(0), rat_int(1))]);

        let delta = LineMeasure::new(vec![rat_int(0)], vec![atom(rat(1, 2), 1)]).unwrap();
        let sup = delta.topological_support().unwrap();
        assert!(sup.intervals.is_empty());
        assert_eq!(sup.points, vec![rat(1, 2)]);
    }

    #[test]
    fn support_rejects_signed() {
        let mu = LineMeasure::new(vec![rat_int(-1)], vec![]).unwrap();
        assert_eq!(mu.topological_support().unwrap_err(), Error::SignedInput);
    }

    #[test]
    fn support_absorbs_atoms_inside_intervals() {
        let mu = LineMeasure::new(
            vec![rat_int(1), rat_int(0)],
            vec![atom(rat(1, 4), 1), atom(rat(3, 4), 2)],
        )
        .unwrap();
        let sup = mu.topological_support().unwrap();
        assert_eq!(sup.intervals, vec![(rat_int(0), rat(1, 2))]);
        assert_eq!(sup.points, vec![rat(3, 4)]);
    }
}
