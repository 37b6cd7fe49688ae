//! Property tests over randomly sampled signed permutations.

use proptest::prelude::*;

use gelfand_core::coxeter::{CoxType, SignedPerm};
use gelfand_core::insertion::{bitableau_correspondence, domino_correspondence};

fn arb_signed_perm(max_rank: usize) -> impl Strategy<Value = SignedPerm> {
    (1..=max_rank)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::sample::subsequence((1..=n as i32).collect::<Vec<_>>(), 0..=n),
                proptest::collection::vec(any::<u16>(), n),
            )
        })
        .prop_map(|(n, negatives, shuffle_keys)| {
            let mut values: Vec<i32> = (1..=n as i32)
                .map(|v| if negatives.contains(&v) { -v } else { v })
                .collect();
            // Order the values by the random keys.
            let mut keyed: Vec<(u16, i32)> =
                shuffle_keys.into_iter().zip(values.drain(..)).collect();
            keyed.sort();
            SignedPerm::new(keyed.into_iter().map(|(_, v)| v).collect()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_inverse_and_parse(w in arb_signed_perm(7)) {
        prop_assert!(w.multiply(&w.inverse()).is_identity());
        let back = SignedPerm::parse(&w.to_string(), None).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn insertion_pair_shapes_agree(w in arb_signed_perm(7), core in 0usize..3) {
        let (p, q) = domino_correspondence(&w, core);
        prop_assert_eq!(p.shape().unwrap(), q.shape().unwrap());
        // The recording tableau is the insertion tableau of the inverse.
        let (p_inv, _) = domino_correspondence(&w.inverse(), core);
        prop_assert_eq!(q, p_inv);
    }

    #[test]
    fn bitableau_pair_is_standard(w in arb_signed_perm(7)) {
        let (p, q) = bitableau_correspondence(&w);
        prop_assert!(p.is_n_standard());
        prop_assert!(q.is_n_standard());
        prop_assert_eq!(p.shape(), q.shape());
    }

    #[test]
    fn lengths_are_subadditive(u in arb_signed_perm(5), v in arb_signed_perm(5)) {
        if u.rank() == v.rank() {
            for t in [CoxType::B, CoxType::D] {
                let prod = u.multiply(&v);
                prop_assert!(prod.length(t) <= u.length(t) + v.length(t));
            }
        }
    }
}
