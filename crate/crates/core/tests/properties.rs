use proptest::prelude::*;

use spatialpw::gen::{random_spatial, rng, SpatialParams};
use spatialpw::io::{parse_document, serialize_document};
use spatialpw::model::{format_rational, parse_rational, ratio, ScoringRule};
use spatialpw::oracles::{partition_bruteforce, DEFAULT_CAP};
use spatialpw::solve::{solve_necessary, solve_pw, Strategy};
use spatialpw::weighted::{gen_partition_plurality, PartitionInstance};

fn rules() -> Vec<ScoringRule> {
    vec![ScoringRule::Plurality, ScoringRule::Veto, ScoringRule::KApproval(2), ScoringRule::Borda, ScoringRule::Approval]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_survive_formatting(n in -10_000i64..10_000, d in 1i64..500) {
        let q = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)), Some(q));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), dim in 1usize..=2, weighted in any::<bool>()) {
        let p = SpatialParams { dim, rules: rules(), max_weight: weighted.then_some(9), ..SpatialParams::default() };
        let inst = random_spatial(&mut rng(seed), &p);
        let text = serialize_document(&inst);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(serialize_document(&back), text);
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn necessary_implies_possible(seed in any::<u64>(), dim in 1usize..=2) {
        let p = SpatialParams { dim, max_m: 4, max_n: 4, coord: 8, rules: rules(), ..SpatialParams::default() };
        let inst = random_spatial(&mut rng(seed), &p);
        if solve_necessary(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer {
            prop_assert!(solve_pw(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer);
        }
    }

    #[test]
    fn plurality_reduction_tracks_partition(values in prop::collection::vec(1u64..20, 1..7)) {
        let pi = PartitionInstance::new(values.clone()).unwrap();
        let inst = gen_partition_plurality(&pi);
        prop_assert_eq!(
            solve_pw(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer,
            partition_bruteforce(&values).unwrap()
        );
    }
}
