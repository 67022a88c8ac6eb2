//! The generic decomposition engine: given a signed measure and a family of
//! sets closed under unions, split the measure into the part concentrated on
//! the family's atomic support and the part annihilating every member.
//!
//! The Lebesgue decomposition and the null-set families are instances of the
//! same engine.

use num::Zero;

use crate::error::{Error, Result};
use crate::measure::{relation, Rational, SignedMeasure};
use crate::space::{AtomSet, SetFamily};

/// The result of running the engine: `atomic + diffuse = mu`, `atomic`
/// vanishes outside `support`, and every member of the (closed) family is
/// `diffuse`-null.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub support: AtomSet,
    pub atomic: SignedMeasure,
    pub diffuse: SignedMeasure,
}

impl Decomposition {
    /// The minimal representative of the support: the returned pointwise
    /// maximum intersected with the mu-support, i.e. stripped of mu-null
    /// blocks.
    pub fn minimal_support(&self) -> AtomSet {
        let mu = self.atomic.add(&self.diffuse).expect("same space");
        self.support.intersect(&mu.support_set())
    }
}

/// The atomic support of `mu` relative to `g`: the pointwise union of all
/// members of the sigma-closure of `g`, which equals the union of the
/// generators and is the pointwise-maximum member of the closure. `G \ result`
/// is mu-null (indeed empty) for every member `G`.
///
/// The support does not depend on the signs of `mu` (the null sets of `mu`
/// and `|mu|` coincide), so `mu` is only used for the space check.
pub fn g_atomic_support(mu: &SignedMeasure, g: &SetFamily) -> Result<AtomSet> {
    if g.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if g.space() != mu.space() {
        return Err(Error::SpaceMismatch);
    }
    Ok(g.union_of_members())
}

/// Splits `mu` into its part concentrated on the atomic support and the part
/// giving null measure to every member of the closure of `g`. The pair is the
/// unique such decomposition.
pub fn dellacherie_decompose(mu: &SignedMeasure, g: &SetFamily) -> Result<Decomposition> {
    let support = g_atomic_support(mu, g)?;
    let atomic = mu.restrict(&support)?;
    let diffuse = mu.restrict(&support.complement())?;
    Ok(Decomposition {
        support,
        atomic,
        diffuse,
    })
}

/// The pointwise maximum of the family of nu-null sets: the union of all
/// blocks of zero mass. The polar set of a collection of measures is the
/// intersection of their null-family maxima.
pub fn null_family(nu: &SignedMeasure) -> AtomSet {
    nu.support_set().complement()
}

/// Lebesgue decomposition of `mu` relative to `nu`: `mu = ac + s` with
/// `ac << nu` and `s` singular to `nu`. Obtained by restricting `mu` to the
/// maximum nu-null set and its complement.
pub fn lebesgue_decompose(
    mu: &SignedMeasure,
    nu: &SignedMeasure,
) -> Result<(SignedMeasure, SignedMeasure)> {
    if mu.space() != nu.space() {
        return Err(Error::SpaceMismatch);
    }
    let s = mu.restrict(&null_family(nu))?;
    let ac = mu.sub(&s)?;
    Ok((ac, s))
}

/// The density of `ac` with respect to `nu`: `f(block) = ac(block)/nu(block)`
/// on nu-positive blocks and 0 on nu-null blocks, so that `f . nu = ac`
/// blockwise. Errors unless `ac << nu`.
pub fn radon_nikodym_density(ac: &SignedMeasure, nu: &SignedMeasure) -> Result<Vec<Rational>> {
    let (abs_continuous, _) = relation(ac, nu)?;
    if !abs_continuous {
        return Err(Error::NotAbsolutelyContinuous);
    }
    Ok(ac
        .values()
        .iter()
        .zip(nu.values())
        .map(|(a, n)| {
            if n.is_zero() {
                Rational::zero()
            } else {
                a / n
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{rat, rat_int};
    use crate::space::{sigma_close, FiniteSpace};

    fn sp(n: usize) -> FiniteSpace {
        FiniteSpace::with_blocks(n).unwrap()
    }

    fn closed_family(space: &FiniteSpace, gens: &[&[usize]]) -> SetFamily {
        let members = gens.iter().map(|g| space.set_of(g));
        sigma_close(&SetFamily::new(space.clone(), members).unwrap()).unwrap()
    }

    #[test]
    fn support_examples() {
        let s = sp(3);
        let mu = SignedMeasure::from_ints(s.clone(), &[1, 0, 2]).unwrap();
        let g = closed_family(&s, &[&[0], &[1]]);
        assert_eq!(g_atomic_support(&mu, &g).unwrap(), s.set_of(&[0, 1]));

        let with_omega = closed_family(&s, &[&[0], &[0, 1, 2]]);
        assert_eq!(g_atomic_support(&mu, &with_omega).unwrap(), s.full_set());

        let only_empty = closed_family(&s, &[&[]]);
        assert_eq!(g_atomic_support(&mu, &only_empty).unwrap(), s.empty_set());
    }

    #[test]
    fn support_rejects_empty_family() {
        let s = sp(2);
        let mu = SignedMeasure::from_ints(s.clone(), &[1, 1]).unwrap();
        let g = SetFamily::new(s, []).unwrap();
        assert_eq!(g_atomic_support(&mu, &g), Err(Error::EmptyFamily));
    }

    #[test]
    fn decompose_examples() {
        let s = sp(3);
        let mu = SignedMeasure::from_ints(s.clone(), &[1, 0, 2]).unwrap();
        let g = closed_family(&s, &[&[0], &[1]]);
        let d = dellacherie_decompose(&mu, &g).unwrap();
        assert_eq!(d.atomic, SignedMeasure::from_ints(s.clone(), &[1, 0, 0]).unwrap());
        assert_eq!(d.diffuse, SignedMeasure::from_ints(s.clone(), &[0, 0, 2]).unwrap());
        assert_eq!(d.minimal_support(), s.set_of(&[0]));

        let with_omega = closed_family(&s, &[&[0, 1, 2]]);
        let d = dellacherie_decompose(&mu, &with_omega).unwrap();
        assert_eq!(d.atomic, mu);
        assert!(d.diffuse.is_zero());

        let only_empty = closed_family(&s, &[&[]]);
        let d = dellacherie_decompose(&mu, &only_empty).unwrap();
        assert!(d.atomic.is_zero());
        assert_eq!(d.diffuse, mu);
    }

    #[test]
    fn null_family_examples() {
        let s = sp(3);
        let nu = SignedMeasure::from_ints(s.clone(), &[0, 5, 0]).unwrap();
        assert_eq!(null_family(&nu), s.set_of(&[0, 2]));
        let pos = SignedMeasure::from_ints(s.clone(), &[1, 2, 3]).unwrap();
        assert_eq!(null_family(&pos), s.empty_set());
        assert_eq!(null_family(&SignedMeasure::zero(s.clone())), s.full_set());
    }

    #[test]
    fn lebesgue_examples() {
        let s = sp(4);
        let mu = SignedMeasure::from_ints(s.clone(), &[1, 2, 0, 3]).unwrap();
        let nu = SignedMeasure::from_ints(s.clone(), &[0, 5, 1, 0]).unwrap();
        let (ac, sing) = lebesgue_decompose(&mu, &nu).unwrap();
        assert_eq!(ac, SignedMeasure::from_ints(s.clone(), &[0, 2, 0, 0]).unwrap());
        assert_eq!(sing, SignedMeasure::from_ints(s.clone(), &[1, 0, 0, 3]).unwrap());
        let (is_ac, _) = relation(&ac, &nu).unwrap();
        let (_, is_sing) = relation(&sing, &nu).unwrap();
        assert!(is_ac && is_sing);

        // nu equivalent to mu
        let nu_eq = SignedMeasure::from_ints(s.clone(), &[2, 1, 0, 1]).unwrap();
        let (ac, sing) = lebesgue_decompose(&mu, &nu_eq).unwrap();
        assert_eq!(ac, mu);
        assert!(sing.is_zero());

        // nu = 0: everything singular
        let (ac, sing) = lebesgue_decompose(&mu, &SignedMeasure::zero(s.clone())).unwrap();
        assert!(ac.is_zero());
        assert_eq!(sing, mu);
    }

    #[test]
    fn density_examples() {
        let s = sp(4);
        let nu = SignedMeasure::from_ints(s.clone(), &[0, 5, 1, 0]).unwrap();
        let ac = SignedMeasure::from_ints(s.clone(), &[0, 2, 0, 0]).unwrap();
        let f = radon_nikodym_density(&ac, &nu).unwrap();
        assert_eq!(f, vec![rat_int(0), rat(2, 5), rat_int(0), rat_int(0)]);
        // f . nu = ac blockwise
        for (i, fi) in f.iter().enumerate() {
            assert_eq!(fi * nu.block_value(i), *ac.block_value(i));
        }

        let f = radon_nikodym_density(&nu, &nu).unwrap();
        for (i, fi) in f.iter().enumerate() {
            if !nu.block_value(i).is_zero() {
                assert_eq!(*fi, rat_int(1));
            }
        }

        let zero = SignedMeasure::zero(s.clone());
        assert!(radon_nikodym_density(&zero, &nu).unwrap().iter().all(Zero::is_zero));

        // not absolutely continuous
        let bad = SignedMeasure::from_ints(s, &[1, 0, 0, 0]).unwrap();
        assert_eq!(radon_nikodym_density(&bad, &nu), Err(Error::NotAbsolutelyContinuous));
    }
}
