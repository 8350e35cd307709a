//! Property tests: codec round trips, profile order independence, and the
//! structural window/concatenation identities.

use proptest::prelude::*;

use strandcode::constructions::{
    decode_a, decode_b, derive_params_a, derive_params_b, encode_a, encode_b,
};
use strandcode::core::{multiset_equal, RfVariant, Strand, StrandMultiset};
use strandcode::repeat_free::{rf_decode, rf_encode, RfParams};
use strandcode::rll;
use strandcode::spectrum::{is_repeat_free, profile, stitch, Profile};

fn strand_strategy(q: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Strand> {
    prop::collection::vec(0..q as u8, len).prop_map(Strand::new)
}

proptest! {
    #[test]
    fn lmers_window_count(x in strand_strategy(4, 1..40), ell in 1usize..40) {
        prop_assume!(ell <= x.len());
        let windows = x.lmers(ell).unwrap();
        prop_assert_eq!(windows.len(), x.len() - ell + 1);
    }

    #[test]
    fn concat_is_associative(
        a in strand_strategy(4, 0..12),
        b in strand_strategy(4, 0..12),
        c in strand_strategy(4, 0..12),
    ) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn concat_prefix_windows_match(
        a in strand_strategy(3, 2..16),
        b in strand_strategy(3, 0..16),
        ell in 1usize..6,
    ) {
        prop_assume!(ell <= a.len());
        let joined = a.concat(&b);
        let joined_windows = joined.lmers(ell).unwrap();
        let a_windows = a.lmers(ell).unwrap();
        prop_assert_eq!(&joined_windows[..a_windows.len()], &a_windows[..]);
    }

    #[test]
    fn sorted_serialization_is_complete_multiset_invariant(
        mut strands in prop::collection::vec(strand_strategy(2, 4..5), 1..6),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let original = StrandMultiset::new(strands.clone()).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        strands.shuffle(&mut rng);
        let shuffled = StrandMultiset::new(strands).unwrap();
        prop_assert!(multiset_equal(&original, &shuffled));
        prop_assert_eq!(original.strands(), shuffled.strands());
    }

    #[test]
    fn rll_ternary_roundtrip(x in strand_strategy(3, 0..64)) {
        let y = rll::rll_encode(&x, 2, 3).unwrap();
        prop_assert!(rll::is_rll(&y, 2));
        prop_assert_eq!(rll::rll_decode(&y, 2, 3).unwrap(), x);
    }

    #[test]
    fn rll_quaternary_roundtrip(x in strand_strategy(4, 0..64), m in 2usize..4) {
        let y = rll::rll_encode(&x, m, 4).unwrap();
        prop_assert!(rll::is_rll(&y, m));
        prop_assert_eq!(&rll::rll_decode(&y, m, 4).unwrap(), &x);
        prop_assert_eq!(y.len(), x.len() + rll::redundancy(x.len(), m, 4).unwrap());
    }

    #[test]
    fn rll_binary_roundtrip(x in strand_strategy(2, 0..64), m in 3usize..5) {
        let y = rll::rll_encode_binary(&x, m).unwrap();
        prop_assert!(rll::is_rll(&y, m));
        prop_assert_eq!(&rll::rll_decode_binary(&y, m).unwrap(), &x);
        prop_assert_eq!(y.len(), x.len() + rll::redundancy(x.len(), m, 2).unwrap());
    }

    #[test]
    fn rf_basic_membership_and_roundtrip(payload in strand_strategy(3, 29..30)) {
        let params = RfParams::basic(3, 30).unwrap();
        let c = rf_encode(&payload, &params).unwrap();
        prop_assert_eq!(c.len(), 30);
        prop_assert!(is_repeat_free(&c, params.ell).unwrap());
        prop_assert_eq!(rf_decode(&c, &params).unwrap(), payload);
    }

    #[test]
    fn stitch_roundtrip_on_window_distinct_multisets(
        strands in prop::collection::vec(strand_strategy(4, 8..9), 1..4),
        ell in 2usize..6,
    ) {
        let s = StrandMultiset::new(strands).unwrap();
        let windows = profile(&s, ell).unwrap();
        prop_assume!(strandcode::spectrum::unique_count(&windows) == windows.total());
        let p = profile(&s, ell + 1).unwrap();
        let rebuilt = stitch(&p, s.n(), s.k()).unwrap();
        prop_assert!(multiset_equal(&rebuilt, &s));
    }

    #[test]
    fn construction_a_roundtrip_with_shuffled_profile(
        seed in any::<u64>(),
        payload_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let params = derive_params_a(2, 14, 2, RfVariant::Basic).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(payload_seed);
        let x = Strand::new((0..params.m).map(|_| rng.gen_range(0..2) as u8).collect());
        let cw = encode_a(&x, &params).unwrap();
        let p = profile(&cw.strands, params.ell + 1).unwrap();
        let mut mers: Vec<Strand> = p.iter_with_multiplicity().cloned().collect();
        let mut shuffle_rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        mers.shuffle(&mut shuffle_rng);
        let shuffled = Profile::from_mers(mers).unwrap();
        prop_assert_eq!(decode_a(&shuffled, &params).unwrap(), x);
    }

    #[test]
    fn construction_b_roundtrip_with_shuffled_profile(
        seed in any::<u64>(),
        payload_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let params = derive_params_b(3, 16, 2, RfVariant::Basic).unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(payload_seed);
        let x = Strand::new((0..params.m).map(|_| rng.gen_range(0..3) as u8).collect());
        let cw = encode_b(&x, &params).unwrap();
        let p = profile(&cw.strands, params.ell + 1).unwrap();
        let mut mers: Vec<Strand> = p.iter_with_multiplicity().cloned().collect();
        let mut shuffle_rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        mers.shuffle(&mut shuffle_rng);
        let shuffled = Profile::from_mers(mers).unwrap();
        prop_assert_eq!(decode_b(&shuffled, &params).unwrap(), x);
    }
}
