use nonlocality::behavior::{
    local_membership, strategy_behavior, support_of, Behavior, Scenario, SupportTable,
};
use nonlocality::classifier::{
    is_btwi, is_pseudotelepathic, support_respecting_strategies, SupportWitness,
};
use proptest::prelude::*;

fn scenario() -> impl Strategy<Value = Scenario> {
    (1usize..=2, 1usize..=3, 1usize..=3, 1usize..=2)
        .prop_map(|(ia, ib, oa, ob)| Scenario::new(ia, ib, oa, ob).unwrap())
}

/// Random support with at least one possible outcome pair per setting pair.
fn support() -> impl Strategy<Value = SupportTable> {
    scenario().prop_flat_map(|s| {
        let n = s.table_len();
        (
            Just(s),
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(0..s.outcome_pairs(), s.setting_pairs()),
        )
            .prop_map(|(s, mut bits, keep)| {
                for (pair, k) in keep.into_iter().enumerate() {
                    bits[pair * s.outcome_pairs() + k] = true;
                }
                SupportTable::new(s, bits).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pt_implies_btwi_with_empty_witness(t in support()) {
        let pt = is_pseudotelepathic(&t).unwrap();
        let btwi = is_btwi(&t).unwrap();
        prop_assert!(!pt.holds || btwi.holds);
        prop_assert_eq!(pt.holds, btwi.witness == Some(SupportWitness::EmptyRespectingSet));
    }

    #[test]
    fn allowing_more_outcomes_never_creates_pt(t in support(), extra in any::<prop::sample::Index>()) {
        let i = extra.index(t.scenario().table_len());
        let (x, y, a, b) = t.scenario().coords(i);
        let wider = t.clone().with_possible(x, y, a, b);
        let narrow = support_respecting_strategies(&t).unwrap();
        let wide = support_respecting_strategies(&wider).unwrap();
        prop_assert!(narrow.respecting.iter().all(|d| wide.respecting.contains(d)));
        prop_assert!(!is_pseudotelepathic(&wider).unwrap().holds || is_pseudotelepathic(&t).unwrap().holds);
    }

    #[test]
    fn uniform_mix_of_respecting_strategies_is_local(t in support()) {
        let filter = support_respecting_strategies(&t).unwrap();
        prop_assume!(!filter.respecting.is_empty());
        let s = *t.scenario();
        let n = filter.respecting.len() as f64;
        let mut table = vec![0.0; s.table_len()];
        for d in &filter.respecting {
            for (p, q) in table.iter_mut().zip(strategy_behavior(&s, d).table()) {
                *p += q / n;
            }
        }
        let b = Behavior::new(s, table).unwrap();
        prop_assert!(local_membership(&b).unwrap().is_local());
        // A local table never shows a possibilistic contradiction.
        prop_assert!(!is_btwi(&support_of(&b, 1e-9).unwrap()).unwrap().holds);
    }
}
