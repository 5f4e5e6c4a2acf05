use super::*;
use crate::corpus::{delta_f_i, named_terms, term1, typed_corpus};
use crate::strategies::{reduce_normal_order, Status};
use crate::syntax::{parse, DefinitionEnv};

const FUEL: u64 = 10_000_000;

fn p(s: &str) -> Term {
    parse(s, &DefinitionEnv::prelude()).unwrap()
}

fn optimal(t: &Term) -> OptimalOutcome {
    reduce_optimal(t, FUEL, Schedule::Fifo).unwrap()
}

#[test]
fn identity_translation() {
    let net = translate(&p("\\x.x"));
    assert_eq!(net.count_kind(NodeKind::Lambda), 1);
    assert!(net.check_wiring().is_ok());
    assert!(find_active_pairs(&net).is_empty());
    assert_eq!(readback(&net).unwrap(), p("\\x.x"));
}

#[test]
fn self_application_translation() {
    let net = translate(&p("\\x. x x"));
    assert_eq!(net.count_kind(NodeKind::Lambda), 1);
    assert_eq!(net.count_kind(NodeKind::Apply), 1);
    assert_eq!(net.count_kind(NodeKind::Fan), 1);
}

#[test]
fn one_redex_one_active_pair() {
    let mut net = translate(&p("(\\x.x) y"));
    let pairs = find_active_pairs(&net);
    assert_eq!(pairs.len(), 1);
    let kinds = [net.node(pairs[0].0).kind, net.node(pairs[0].1).kind];
    assert!(kinds.contains(&NodeKind::Lambda) && kinds.contains(&NodeKind::Apply));
    let out = normalize(&mut net, FUEL, Schedule::Fifo).unwrap();
    assert_eq!(out.stats.beta_interactions, 1);
    assert!(find_active_pairs(&net).is_empty());
    assert_eq!(readback(&net).unwrap(), p("y"));
}

#[test]
fn translation_reads_back() {
    for (name, t) in named_terms() {
        let net = translate(&t);
        net.check_wiring().unwrap();
        if find_active_pairs(&net).is_empty() {
            assert_eq!(readback(&net).unwrap(), t, "{name}");
        }
    }
    for t in typed_corpus(40, 3, 30) {
        let net = translate(&t);
        net.check_wiring().unwrap();
    }
}

#[test]
fn named_terms_agree_with_normal_order() {
    for (name, t) in named_terms() {
        let expected = reduce_normal_order(&t, FUEL).result;
        let got = optimal(&t);
        assert_eq!(got.status, Status::Normalized, "{name}");
        assert_eq!(got.result.unwrap(), expected, "{name}");
    }
}

#[test]
fn delta_example() {
    let out = optimal(&delta_f_i());
    assert_eq!(out.result.unwrap(), p("y y"));
    assert_eq!(out.stats.beta_interactions, 3);
}

#[test]
fn term1_reads_back_identity() {
    for n in 1..=8 {
        let out = optimal(&term1(n));
        assert_eq!(out.result.unwrap(), Term::identity(), "n = {n}");
    }
}

#[test]
fn typed_corpus_agrees_with_normal_order() {
    for (i, t) in typed_corpus(300, 11, 40).iter().enumerate() {
        let expected = reduce_normal_order(t, FUEL).result;
        let got = optimal(t);
        assert_eq!(got.result.as_ref(), Some(&expected), "#{i}: {t}");
    }
}

#[test]
fn fan_meeting_lambda_duplicates_it() {
    // The shared identity is copied once both uses of `f` demand it.
    let mut net = translate(&p("(\\f. f (f z)) (\\x.x)"));
    let mut stats = NetStats::default();
    loop {
        let pairs = needed_pairs(&net);
        let Some(&(a, b)) = pairs.first() else { panic!("no fan ever met a lambda") };
        let kinds = [net.node(a).kind, net.node(b).kind];
        let lambdas = net.count_kind(NodeKind::Lambda);
        let fans = net.count_kind(NodeKind::Fan);
        interact(&mut net, a, b, &mut stats).unwrap();
        if kinds.contains(&NodeKind::Fan) && kinds.contains(&NodeKind::Lambda) {
            assert_eq!(net.count_kind(NodeKind::Lambda), lambdas + 1);
            assert_eq!(net.count_kind(NodeKind::Fan), fans + 1);
            assert_eq!(stats.duplications, 1);
            break;
        }
    }
    net.check_wiring().unwrap();
}

#[test]
fn erased_divergence_is_not_reduced() {
    let out = optimal(&p("(\\y.z) ((\\x.x x) (\\x.x x))"));
    assert_eq!(out.result.unwrap(), p("z"));
    assert_eq!(out.stats.beta_interactions, 1);
}

#[test]
fn arguments_wait_for_their_function() {
    let net = translate(&p("(\\x.\\y.y) ((\\v.v) w)"));
    assert_eq!(find_active_pairs(&net).len(), 2);
    assert_eq!(needed_pairs(&net).len(), 1);
}

#[test]
fn schedules_agree() {
    for t in typed_corpus(60, 4, 30) {
        let fifo = reduce_optimal(&t, FUEL, Schedule::Fifo).unwrap();
        let lifo = reduce_optimal(&t, FUEL, Schedule::Lifo).unwrap();
        assert_eq!(fifo.result, lifo.result, "{t}");
        assert_eq!(fifo.stats.beta_interactions, lifo.stats.beta_interactions, "{t}");
    }
}

#[test]
fn stats_add_up() {
    for n in 1..=6 {
        let s = optimal(&term1(n)).stats;
        assert_eq!(s.total_interactions, s.beta_interactions + s.duplications + s.annihilations + s.bookkeeping_interactions);
    }
}
