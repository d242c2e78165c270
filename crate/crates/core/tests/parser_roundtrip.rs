use episim_core::logic::{parse_formula, AgentSet, Formula, ParseError, Roster};
use proptest::prelude::*;

fn roster(n: usize) -> Roster {
    Roster::new(["a", "b", "c", "d"].into_iter().take(n)).unwrap()
}

fn formula(agents: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r", "x_1", "hot2"]).prop_map(Formula::prop),
        1 => Just(Formula::top()),
        1 => Just(Formula::bottom()),
    ];
    let mask = (1u32 << agents) - 1;
    leaf.prop_recursive(6, 48, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (0..=mask, inner).prop_map(|(g, f)| Formula::d(AgentSet::from_bits(g), f)),
        ]
    })
}

fn formula_with_roster() -> impl Strategy<Value = (usize, Formula)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), formula(n)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse_is_identity((n, phi) in formula_with_roster()) {
        prop_assume!(phi.modal_depth() <= 6);
        let r = roster(n);
        let text = phi.display(&r).to_string();
        let back = parse_formula(&text, &r).unwrap();
        prop_assert_eq!(back, phi);
    }
}

#[test]
fn sugar_desugars_to_primitives() {
    let r = roster(3);
    let p = Formula::prop("p");
    let q = Formula::prop("q");
    let ab = AgentSet::from_agents([0, 1]);
    let cases = [
        ("p -> q", Formula::implies(p.clone(), q.clone())),
        ("p | q", Formula::or(p.clone(), q.clone())),
        ("K{a} p", Formula::k(0, p.clone())),
        ("hatD{a,b} p", Formula::hat_d(ab, p.clone())),
        ("alive{a,b}", Formula::alive(ab)),
        ("dead{a,b}", Formula::dead(ab)),
        ("D{b,a} p", Formula::d(ab, p.clone())),
        ("p -> q -> p", Formula::implies(p.clone(), Formula::implies(q.clone(), p.clone()))),
        ("!p & q", Formula::and(Formula::not(p.clone()), q.clone())),
        ("true", Formula::top()),
    ];
    for (text, want) in cases {
        assert_eq!(parse_formula(text, &r).unwrap(), want, "{text}");
    }
}

#[test]
fn parse_errors_point_at_the_problem() {
    let r = roster(2);
    for bad in ["D{z} p", "p &", "(p", "D{a p", "__t", "p q"] {
        let e: ParseError = parse_formula(bad, &r).unwrap_err();
        assert!(e.offset() <= bad.len(), "{bad}: {e}");
    }
}
