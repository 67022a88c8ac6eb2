//! Property tests for the algebraic laws that the acceptance suite does not
//! already pin down instance by instance.

use measure_decomp::{
    band_project, brute_sup, family_join, family_meet, hahn_jordan, lattice_inf, lattice_sup,
    relation, sigma_close, AtomSet, FiniteSpace, Rational, SetFamily, SignedMeasure,
};
use num::{BigInt, BigRational};
use proptest::prelude::*;

fn space_and_values() -> impl Strategy<Value = (usize, Vec<(i64, i64)>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((-9i64..=9, 1i64..=4), n..=n),
        )
    })
}

fn measure_of(n: usize, raw: &[(i64, i64)]) -> SignedMeasure {
    let space = FiniteSpace::with_blocks(n).unwrap();
    let values: Vec<Rational> = raw
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect();
    SignedMeasure::new(space, values).unwrap()
}

fn family_of(n: usize, bits: &[u64]) -> SetFamily {
    let space = FiniteSpace::with_blocks(n).unwrap();
    let members = bits
        .iter()
        .map(|&b| AtomSet::from_bits(b & ((1 << n) - 1), n));
    sigma_close(&SetFamily::new(space, members).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_close_is_idempotent_and_monotone(
        (n, _) in space_and_values(),
        bits in prop::collection::vec(0u64..64, 1..=4),
    ) {
        let space = FiniteSpace::with_blocks(n).unwrap();
        let members: Vec<AtomSet> = bits
            .iter()
            .map(|&b| AtomSet::from_bits(b & ((1 << n) - 1), n))
            .collect();
        let raw = SetFamily::new(space, members.clone()).unwrap();
        let closed = sigma_close(&raw).unwrap();
        prop_assert!(closed.is_sigma_closed());
        prop_assert_eq!(&sigma_close(&closed).unwrap(), &closed);
        for m in members {
            prop_assert!(closed.contains(&m));
        }
    }

    #[test]
    fn jordan_identities((n, raw) in space_and_values()) {
        let mu = measure_of(n, &raw);
        let (_, plus, minus) = hahn_jordan(&mu);
        prop_assert_eq!(plus.sub(&minus).unwrap(), mu.clone());
        let (variation, norm) = mu.variation();
        prop_assert_eq!(plus.add(&minus).unwrap(), variation);
        prop_assert_eq!(plus.norm() + minus.norm(), norm);
    }

    #[test]
    fn singular_pairs_add_norms((n, raw) in space_and_values(), (_, raw2) in space_and_values()) {
        let raw2: Vec<(i64, i64)> = raw2.iter().cycle().take(n).cloned().collect();
        let mu = measure_of(n, &raw);
        // Make nu singular to mu by zeroing it on the mu-support.
        let nu_full = measure_of(n, &raw2);
        let nu = nu_full.restrict(&mu.support_set().complement()).unwrap();
        let (_, singular) = relation(&mu, &nu).unwrap();
        prop_assert!(singular);
        prop_assert_eq!(mu.add(&nu).unwrap().norm(), mu.norm() + nu.norm());
    }

    #[test]
    fn lattice_sup_matches_oracle((n, raw) in space_and_values(), (_, raw2) in space_and_values()) {
        let raw2: Vec<(i64, i64)> = raw2.iter().cycle().take(n).cloned().collect();
        let nu1 = measure_of(n, &raw);
        let nu2 = measure_of(n, &raw2);
        prop_assert_eq!(lattice_sup(&nu1, &nu2).unwrap(), brute_sup(&nu1, &nu2).unwrap());
        // inf dualizes sup.
        let neg_sup = lattice_sup(&nu1.negate(), &nu2.negate()).unwrap().negate();
        prop_assert_eq!(lattice_inf(&nu1, &nu2).unwrap(), neg_sup);
    }

    #[test]
    fn band_projections_are_complementary_idempotents(
        (n, raw) in space_and_values(),
        bits in prop::collection::vec(0u64..64, 1..=3),
    ) {
        let mu = measure_of(n, &raw);
        let g = family_of(n, &bits);
        let (a, d) = band_project(&mu, &g).unwrap();
        prop_assert_eq!(a.add(&d).unwrap(), mu.clone());
        let (aa, _) = band_project(&a, &g).unwrap();
        prop_assert_eq!(aa, a.clone());
        let (ad, _) = band_project(&d, &g).unwrap();
        prop_assert!(ad.is_zero());
        prop_assert_eq!(a.norm() + d.norm(), mu.norm());
    }

    #[test]
    fn family_join_meet_are_closed_and_bounded(
        (n, _) in space_and_values(),
        bits1 in prop::collection::vec(0u64..64, 1..=3),
        bits2 in prop::collection::vec(0u64..64, 1..=3),
    ) {
        let f = family_of(n, &bits1);
        let g = family_of(n, &bits2);
        let join = family_join(&f, &g).unwrap();
        let meet = family_meet(&f, &g).unwrap();
        prop_assert!(join.is_sigma_closed());
        prop_assert!(meet.is_sigma_closed());
        for m in f.members() {
            prop_assert!(join.contains(m));
            prop_assert_eq!(meet.contains(m), g.contains(m));
        }
        prop_assert!(meet.union_of_members().is_subset_of(&join.union_of_members()));
    }
}
