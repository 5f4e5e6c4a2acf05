//! Benchmark families, named example terms, and seeded term generators.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::strategies::reduce_normal_order_bounded;
use crate::term::{Term, Var};
use crate::typing::is_typable;

fn two() -> Term {
    Term::church(2)
}

/// `church(n) two I I`: weak evaluation fires exponentially many identities.
pub fn term1(n: usize) -> Term {
    Term::apply(Term::church(n), [two(), Term::identity(), Term::identity()])
}

/// `I (church(n) two) I I`: innermost reduction builds `church(2^n)`.
pub fn term2(n: usize) -> Term {
    Term::apply(
        Term::identity(),
        [Term::app(Term::church(n), two()), Term::identity(), Term::identity()],
    )
}

/// `λx.x x`
pub fn delta() -> Term {
    Term::lam("x", Term::app(Term::var("x"), Term::var("x")))
}

/// `λz.z y`, open in `y`.
pub fn f_term() -> Term {
    Term::lam("z", Term::app(Term::var("z"), Term::var("y")))
}

/// `Δ (F I)`
pub fn delta_f_i() -> Term {
    Term::app(delta(), Term::app(f_term(), Term::identity()))
}

/// `(F I) (F I)`, the result of firing the outer redex of `Δ (F I)` but with
/// the two copies written out independently.
pub fn f_i_f_i() -> Term {
    let fi = Term::app(f_term(), Term::identity());
    Term::app(fi.clone(), fi)
}

/// Small terms with known behaviour, used as fixed regression inputs.
pub fn named_terms() -> Vec<(&'static str, Term)> {
    let i = Term::identity;
    let iy = || Term::app(i(), Term::var("y"));
    vec![
        ("I", i()),
        ("two", two()),
        ("two I", Term::app(two(), i())),
        ("two two I", Term::apply(two(), [two(), i()])),
        ("(I y)(I y)", Term::app(iy(), iy())),
        ("Delta (I y)", Term::app(delta(), iy())),
        ("Delta (F I)", delta_f_i()),
        ("(F I)(F I)", f_i_f_i()),
        ("term1(1)", term1(1)),
        ("term1(2)", term1(2)),
        ("term1(3)", term1(3)),
        ("term2(1)", term2(1)),
        ("term2(2)", term2(2)),
        ("church 2 two", Term::app(Term::church(2), two())),
        ("church 3 two", Term::app(Term::church(3), two())),
        ("two two", Term::app(two(), two())),
    ]
}

/// Seeded generator of closed random terms (free variables `y`, `z`
/// allowed), biased towards redexes.
pub struct TermGenerator {
    rng: ChaCha8Rng,
}

impl TermGenerator {
    pub fn new(seed: u64) -> Self {
        TermGenerator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A term of roughly `budget` nodes.
    pub fn term(&mut self, budget: usize) -> Term {
        self.gen(0, budget as i64)
    }

    fn gen(&mut self, scope: usize, budget: i64) -> Term {
        if budget <= 1 {
            return self.leaf(scope);
        }
        match self.rng.gen_range(0..10) {
            0 => self.leaf(scope),
            1..=3 => {
                let body = self.gen(scope + 1, budget - 1);
                Term::Abs("x".into(), Box::new(body))
            }
            4..=6 => {
                let left = self.rng.gen_range(1..budget);
                let f = self.gen(scope, left);
                let a = self.gen(scope, budget - left);
                Term::app(f, a)
            }
            7 => {
                let k = self.rng.gen_range(0..4);
                Term::church(k)
            }
            _ => {
                let left = self.rng.gen_range(1..budget);
                let body = self.gen(scope + 1, left);
                let a = self.gen(scope, budget - left);
                Term::app(Term::Abs("v".into(), Box::new(body)), a)
            }
        }
    }

    fn leaf(&mut self, scope: usize) -> Term {
        if scope == 0 || self.rng.gen_range(0..8) == 0 {
            match self.rng.gen_range(0..3) {
                0 => Term::var("y"),
                1 => Term::var("z"),
                _ => Term::identity(),
            }
        } else {
            Term::Var(Var::Bound(self.rng.gen_range(0..scope)))
        }
    }
}

/// Simply typable terms with at least one redex, at most `max_size` nodes.
/// Typability guarantees strong normalization.
pub fn typed_corpus(count: usize, seed: u64, max_size: usize) -> Vec<Term> {
    let mut g = TermGenerator::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let budget = 4 + out.len() % max_size.saturating_sub(3).max(1);
        let t = g.term(budget);
        if t.size() <= max_size && !t.is_normal() && is_typable(&t) {
            out.push(t);
        }
    }
    out
}

/// Typable non-erasing terms (every binder used) with at least one redex and
/// at most `max_size` nodes. In this fragment every redex is needed, so the
/// number of families fired on the way to normal form does not depend on the
/// strategy.
pub fn non_erasing_corpus(count: usize, seed: u64, max_size: usize) -> Vec<Term> {
    let mut g = TermGenerator::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let budget = 4 + out.len() % max_size.saturating_sub(3).max(1);
        let t = g.term(budget);
        if t.size() <= max_size && t.is_non_erasing() && !t.is_normal() && is_typable(&t) {
            out.push(t);
        }
    }
    out
}

/// Whether normal order reaches a normal form within `fuel` steps without
/// the term ever exceeding `max_nodes`. Small typed terms can still have
/// astronomically large normal forms (`church 3 (church 3) two` is a Church
/// numeral for 2^27); this keeps them out of test corpora.
pub fn normalizes_within(t: &Term, fuel: u64, max_nodes: usize) -> bool {
    reduce_normal_order_bounded(t, fuel, max_nodes).normalized()
}

/// The fixed term list behind the `corpus` benchmark family: typed terms of
/// at most 30 nodes that normalize at desk scale.
pub fn bench_corpus() -> Vec<Term> {
    typed_corpus(120, 2024, 30).into_iter().filter(|t| normalizes_within(t, 10_000, 10_000)).take(100).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_well_formed() {
        assert_eq!(term1(2).size(), 7 + 7 + 2 + 2 + 3);
        assert!(term1(3).is_locally_closed());
        assert!(term2(3).is_non_erasing());
        assert_eq!(delta_f_i().free_vars().len(), 1);
    }

    #[test]
    fn generator_is_deterministic() {
        let a = typed_corpus(20, 7, 30);
        let b = typed_corpus(20, 7, 30);
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.is_locally_closed() && t.size() <= 30));
    }

    #[test]
    fn non_erasing_corpus_respects_filters() {
        let c = non_erasing_corpus(30, 1, 40);
        assert!(c.iter().all(|t| t.is_non_erasing() && t.size() <= 40 && !t.is_normal()));
    }
}
