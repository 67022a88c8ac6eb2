//! Independent brute-force reference implementations.
//!
//! Everything here recomputes its answer from definitions by exhaustive
//! enumeration, sharing nothing with the main-path code beyond the domain
//! types and measure evaluation. These are correctness references, not
//! performance code; each carries an explicit size cap.

use num::{BigRational, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measure::{Rational, SignedMeasure};
use crate::space::{AtomSet, SetFamily};

/// 2^n subset scans stay under a minute up to this many blocks.
pub const ORACLE_MAX_BLOCKS: usize = 16;

/// Cap for the per-set subset maximisation in [`brute_sup`].
pub const ORACLE_SUP_MAX_BLOCKS: usize = 12;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::SizeCap {
            what: "block count",
            got: n,
            cap,
        });
    }
    Ok(())
}

// Null check straight from the definition: every measurable subset of `s` has
// measure zero.
fn null_by_definition(mu: &SignedMeasure, s: &AtomSet) -> bool {
    s.subsets().all(|b| mu.evaluate(&b).unwrap().is_zero())
}

// Union-closure by direct enumeration: the union of every nonempty
// subcollection of generators.
fn closure_by_enumeration(g: &SetFamily) -> Result<Vec<AtomSet>> {
    let gens = g.members();
    check_cap(gens.len(), ORACLE_MAX_BLOCKS)?;
    let mut members: Vec<AtomSet> = Vec::new();
    for pick in 1u64..(1 << gens.len()) {
        let mut u = g.space().empty_set();
        for (i, gen) in gens.iter().enumerate() {
            if pick & (1 << i) != 0 {
                u = u.union(gen);
            }
        }
        if !members.contains(&u) {
            members.push(u);
        }
    }
    Ok(members)
}

/// Reference for the atomic support: enumerate the closure, find a member
/// that dominates every other one up to mu-null differences, and promote it
/// to the pointwise-largest mu-equivalent member.
pub fn brute_g_support(mu: &SignedMeasure, g: &SetFamily) -> Result<AtomSet> {
    if g.is_empty() {
        return Err(Error::EmptyFamily);
    }
    check_cap(mu.space().block_count(), ORACLE_MAX_BLOCKS)?;
    let closure = closure_by_enumeration(g)?;
    let max = closure
        .iter()
        .find(|cand| {
            closure
                .iter()
                .all(|other| null_by_definition(mu, &other.difference(cand)))
        })
        .expect("a finite union-closed family contains its own union");
    // Pointwise-largest member of the mu-equivalence class of the maximum.
    let promoted = closure
        .iter()
        .filter(|other| {
            null_by_definition(mu, &other.difference(max))
                && null_by_definition(mu, &max.difference(other))
        })
        .fold(g.space().empty_set(), |acc, m| acc.union(m));
    Ok(promoted)
}

/// Reference for the Hahn decomposition: scan all subsets, keep those that
/// are mu-positive with mu-negative complement (both checked through subset
/// minima/maxima computed by dynamic programming over masks), and return the
/// pointwise-largest one.
pub fn brute_hahn(mu: &SignedMeasure) -> Result<AtomSet> {
    let n = mu.space().block_count();
    check_cap(n, ORACLE_MAX_BLOCKS)?;
    let space = mu.space().clone();
    let size = 1usize << n;

    let mut eval = vec![Rational::zero(); size];
    let mut min_sub = vec![Rational::zero(); size];
    let mut max_sub = vec![Rational::zero(); size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        eval[mask] = &eval[rest]
            + mu.evaluate(&space.set_of(&[low])).expect("same space");
        let mut lo = eval[mask].clone();
        let mut hi = eval[mask].clone();
        for b in 0..n {
            if mask & (1 << b) != 0 {
                let sub = mask ^ (1 << b);
                lo = lo.min(min_sub[sub].clone());
                hi = hi.max(max_sub[sub].clone());
            }
        }
        min_sub[mask] = lo;
        max_sub[mask] = hi;
    }

    let mut best = space.empty_set();
    for mask in 0..size {
        let comp = (size - 1) ^ mask;
        let positive = !min_sub[mask].is_negative();
        let negative = !max_sub[comp].is_positive();
        if positive && negative {
            best = best.union(&AtomSet::from_bits(mask as u64, n));
        }
    }
    Ok(best)
}

/// Reference for the lattice supremum: for every measurable `F` maximise
/// `nu1(B) + nu2(F \ B)` over subsets `B` of `F`, then rebuild the measure
/// from its singleton values and confirm it reproduces every maximised value.
pub fn brute_sup(nu1: &SignedMeasure, nu2: &SignedMeasure) -> Result<SignedMeasure> {
    if nu1.space() != nu2.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = nu1.space().block_count();
    check_cap(n, ORACLE_SUP_MAX_BLOCKS)?;
    let space = nu1.space().clone();

    let sup_over = |f: &AtomSet| -> Rational {
        f.subsets()
            .map(|b| {
                nu1.evaluate(&b).unwrap() + nu2.evaluate(&f.difference(&b)).unwrap()
            })
            .max()
            .expect("subset iteration includes the empty set")
    };

    let values: Vec<Rational> = (0..n).map(|b| sup_over(&space.set_of(&[b]))).collect();
    let result = SignedMeasure::new(space.clone(), values)?;
    for f in space.all_subsets() {
        if result.evaluate(&f)? != sup_over(&f) {
            return Err(Error::Invalid(format!(
                "subset-supremum formula is not additive at {f}"
            )));
        }
    }
    Ok(result)
}

fn norm_by_evaluation(mu: &SignedMeasure) -> Rational {
    let space = mu.space();
    (0..space.block_count())
        .map(|b| mu.evaluate(&space.set_of(&[b])).unwrap().abs())
        .sum()
}

/// Reference for the nearest-point property: the minimum total-variation
/// distance from `mu` to the atomic band, over `samples` random band members
/// plus the atomic part of `mu` itself. Random members are concentrated on
/// the union of the family (a member of the closure), with small-integer
/// numerators over denominators 1..=3.
pub fn brute_nearest(
    mu: &SignedMeasure,
    g: &SetFamily,
    samples: usize,
    seed: u64,
) -> Result<Rational> {
    if g.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if g.space() != mu.space() {
        return Err(Error::SpaceMismatch);
    }
    let union = g
        .members()
        .iter()
        .fold(g.space().empty_set(), |acc, m| acc.union(m));
    let atomic = mu.restrict(&union)?;
    let mut best = norm_by_evaluation(&mu.sub(&atomic)?);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.space().block_count();
    for _ in 0..samples {
        let mut values = vec![Rational::zero(); n];
        for b in union.blocks() {
            let numer: i64 = rng.gen_range(-9..=9);
            let denom: i64 = rng.gen_range(1..=3);
            values[b] = BigRational::new(numer.into(), denom.into());
        }
        let candidate = SignedMeasure::new(g.space().clone(), values)?;
        let dist = norm_by_evaluation(&mu.sub(&candidate)?);
        if dist < best {
            best = dist;
        }
    }
    Ok(best)
}
