mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn geodesic_steps_keep_the_weber_node(seed in any::<u64>()) {
        common::geodesic_step_trial(seed).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn analysis_commutes_with_isometries(seed in any::<u64>()) {
        common::equivariance_trial(seed).map_err(TestCaseError::fail)?;
    }
}
