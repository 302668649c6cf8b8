//! Randomized checks of Weierstrass preparation and division.

mod common;

use common::*;
use formal_arcs::error::Error;
use formal_arcs::series::TruncatedSeries;
use formal_arcs::weierstrass::weierstrass_prepare;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reconstruction_uniqueness_and_residues(seed in any::<u64>(), which in 0..WEIERSTRASS_RINGS.len()) {
        let r = ring(WEIERSTRASS_RINGS[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Err(e) = weierstrass_trial(&r, &mut rng) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn every_ring_of_the_pool(seed in any::<u64>(), which in 0..RINGS.len()) {
        let r = ring(RINGS[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Err(e) = weierstrass_trial(&r, &mut rng) {
            prop_assert!(false, "{}", e);
        }
    }
}

#[test]
fn refuses_without_enough_precision() {
    let r = ring("Q[e]/e^3");
    let f = TruncatedSeries::new(&r, vec![r.parse_element("e").unwrap(), r.parse_element("1").unwrap()], 3);
    assert!(matches!(weierstrass_prepare(&f), Err(Error::PrecisionExhausted { .. })));
    let zero_residue = TruncatedSeries::new(&r, vec![r.parse_element("e").unwrap()], 5);
    assert!(matches!(weierstrass_prepare(&zero_residue), Err(Error::ResidueZero { .. })));
}
