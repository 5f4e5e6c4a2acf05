use lamlab::corpus::{normalizes_within, TermGenerator};
use lamlab::levy::{count_families, FamilyStrategy};
use lamlab::net::{reduce_optimal, Schedule};
use lamlab::strategies::reduce_normal_order;
use lamlab::{parse, pretty, DefinitionEnv, Term};
use proptest::prelude::*;

fn generated(seed: u64, budget: usize) -> Term {
    TermGenerator::new(seed).term(budget)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pretty_then_parse_is_identity(seed in any::<u64>(), budget in 1usize..30) {
        let t = generated(seed, budget);
        let back = parse(&pretty(&t), &DefinitionEnv::new()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn optimal_agrees_with_normal_order(seed in any::<u64>(), budget in 1usize..24) {
        let t = generated(seed, budget);
        prop_assume!(normalizes_within(&t, 2_000, 2_000));
        let expected = reduce_normal_order(&t, 2_000).result;
        for schedule in [Schedule::Fifo, Schedule::Lifo] {
            let out = reduce_optimal(&t, 1_000_000, schedule).unwrap();
            prop_assert_eq!(out.result.as_ref(), Some(&expected), "{}", pretty(&t));
        }
    }

    #[test]
    fn one_beta_interaction_per_family(seed in any::<u64>(), budget in 1usize..20) {
        let t = generated(seed, budget);
        prop_assume!(normalizes_within(&t, 2_000, 2_000));
        let families = count_families(&t, FamilyStrategy::Leftmost, 100_000).unwrap();
        let out = reduce_optimal(&t, 1_000_000, Schedule::Fifo).unwrap();
        prop_assert_eq!(out.stats.beta_interactions, families.distinct_families as u64);
        prop_assert_eq!(&families.normal_form, out.result.as_ref().unwrap());
    }
}
