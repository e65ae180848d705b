mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn norm_is_multiplicative(v in (lm_rows(), lm_rows(), lm_rows(), lm_rows())) {
        prop_norm_multiplicative(v)?;
    }

    #[test]
    fn conj_is_an_automorphism(v in (lm_rows(), lm_rows(), lm_rows(), lm_rows())) {
        prop_conj_automorphism(v)?;
    }

    #[test]
    fn exact_div_round_trips(v in (laurent_rows(), laurent_rows())) {
        prop_exact_div_round_trip(v)?;
    }

    #[test]
    fn exact_div_round_trips_polynomial(v in (poly_rows(), poly_rows())) {
        prop_exact_div_round_trip(v)?;
    }

    #[test]
    fn evaluation_is_a_homomorphism(v in (laurent_rows(), laurent_rows(), point())) {
        prop_eval_homomorphism(v)?;
    }

    #[test]
    fn substitution_commutes_with_evaluation(v in (poly_rows(), laurent_rows(), laurent_rows(), point())) {
        prop_substitute_consistent(v)?;
    }
}
