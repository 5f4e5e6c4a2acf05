//! Lévy's labeled lambda calculus, used as an oracle for redex families.
//!
//! Every subterm carries a label. Firing `((λx.M)^α N)^β` names the redex
//! `α` and produces `β·ᾱ·M[α̲·N / x]`, where `·` prefixes a label onto the
//! label of a term and an occurrence `x^δ` becomes `N` relabeled with
//! `δ·α̲·label(N)`. Two redexes belong to the same family exactly when they
//! have the same name, so a complete family reduction fires every redex that
//! currently carries the chosen name before moving on.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Dir, Name, Position, Term, Var};

/// A label: a nonempty concatenation of segments. Concatenation is
/// associative, so it is stored flattened.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<[Segment]>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Segment {
    Atomic(u32),
    /// Overlined: marks the contractum of a redex with that name.
    Over(Label),
    /// Underlined: marks an argument passed through a redex with that name.
    Under(Label),
}

impl Label {
    pub fn atomic(id: u32) -> Self {
        Label(Arc::from(vec![Segment::Atomic(id)]))
    }

    pub fn over(&self) -> Self {
        Label(Arc::from(vec![Segment::Over(self.clone())]))
    }

    pub fn under(&self) -> Self {
        Label(Arc::from(vec![Segment::Under(self.clone())]))
    }

    pub fn concat(&self, other: &Label) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Label(Arc::from(v))
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn is_atomic(&self) -> bool {
        matches!(&*self.0, [Segment::Atomic(_)])
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0.iter() {
            match s {
                Segment::Atomic(id) => write!(f, "a{id}")?,
                Segment::Over(l) => write!(f, "({l})^")?,
                Segment::Under(l) => write!(f, "({l})_")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({self})")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabeledNode {
    Var(Var),
    Abs(Name, Box<LabeledTerm>),
    App(Box<LabeledTerm>, Box<LabeledTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTerm {
    pub label: Label,
    pub node: LabeledNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevyError {
    #[error("no redex at position {0}")]
    NotARedex(Position),
    #[error("family reduction ran out of fuel after {} family steps", .partial.fired_redex_names.len())]
    FuelExhausted { partial: FamilyReport },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyStrategy {
    /// Pick the family of the leftmost-outermost redex.
    Leftmost,
    /// Pick the family of the rightmost-innermost redex.
    Rightmost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    /// Name of each family step, in firing order.
    pub fired_redex_names: Vec<Label>,
    pub distinct_families: usize,
    /// Individual redexes fired across all family steps.
    pub beta_firings: u64,
    pub normal_form: Term,
}

/// Labels every subterm with a fresh atomic label, in preorder.
pub fn init_labels(t: &Term) -> LabeledTerm {
    fn go(t: &Term, next: &mut u32) -> LabeledTerm {
        let label = Label::atomic(*next);
        *next += 1;
        let node = match t {
            Term::Var(v) => LabeledNode::Var(v.clone()),
            Term::Abs(h, b) => LabeledNode::Abs(h.clone(), Box::new(go(b, next))),
            Term::App(f, a) => {
                let f = go(f, next);
                LabeledNode::App(Box::new(f), Box::new(go(a, next)))
            }
        };
        LabeledTerm { label, node }
    }
    go(t, &mut 0)
}

impl LabeledTerm {
    pub fn erase(&self) -> Term {
        match &self.node {
            LabeledNode::Var(v) => Term::Var(v.clone()),
            LabeledNode::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.erase())),
            LabeledNode::App(f, a) => Term::app(f.erase(), a.erase()),
        }
    }

    /// Every label occurring in the term, in preorder.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = vec![self.label.clone()];
        match &self.node {
            LabeledNode::Var(_) => {}
            LabeledNode::Abs(_, b) => out.extend(b.labels()),
            LabeledNode::App(f, a) => {
                out.extend(f.labels());
                out.extend(a.labels());
            }
        }
        out
    }

    fn prefixed(mut self, prefix: &Label) -> Self {
        self.label = prefix.concat(&self.label);
        self
    }

    fn shift(&self, delta: usize, cutoff: usize) -> Self {
        if delta == 0 {
            return self.clone();
        }
        let node = match &self.node {
            LabeledNode::Var(Var::Bound(i)) if *i >= cutoff => LabeledNode::Var(Var::Bound(i + delta)),
            LabeledNode::Var(v) => LabeledNode::Var(v.clone()),
            LabeledNode::Abs(h, b) => LabeledNode::Abs(h.clone(), Box::new(b.shift(delta, cutoff + 1))),
            LabeledNode::App(f, a) => {
                LabeledNode::App(Box::new(f.shift(delta, cutoff)), Box::new(a.shift(delta, cutoff)))
            }
        };
        LabeledTerm { label: self.label.clone(), node }
    }

    fn instantiate(&self, arg: &LabeledTerm, depth: usize) -> Self {
        let node = match &self.node {
            LabeledNode::Var(Var::Bound(i)) => {
                if *i == depth {
                    return arg.shift(depth, 0).prefixed(&self.label);
                }
                LabeledNode::Var(Var::Bound(if *i > depth { i - 1 } else { *i }))
            }
            LabeledNode::Var(v) => LabeledNode::Var(v.clone()),
            LabeledNode::Abs(h, b) => LabeledNode::Abs(h.clone(), Box::new(b.instantiate(arg, depth + 1))),
            LabeledNode::App(f, a) => LabeledNode::App(
                Box::new(f.instantiate(arg, depth)),
                Box::new(a.instantiate(arg, depth)),
            ),
        };
        LabeledTerm { label: self.label.clone(), node }
    }

    /// Name of the redex rooted here, if this is a redex.
    pub fn redex_name(&self) -> Option<&Label> {
        match &self.node {
            LabeledNode::App(f, _) if matches!(f.node, LabeledNode::Abs(..)) => Some(&f.label),
            _ => None,
        }
    }

    fn contract(&self) -> Option<(LabeledTerm, Label)> {
        let LabeledNode::App(f, arg) = &self.node else { return None };
        let LabeledNode::Abs(_, body) = &f.node else { return None };
        let name = f.label.clone();
        let arg = (**arg).clone().prefixed(&name.under());
        let result = body.instantiate(&arg, 0).prefixed(&self.label.concat(&name.over()));
        Some((result, name))
    }

    pub fn subterm(&self, pos: &Position) -> Option<&LabeledTerm> {
        let mut cur = self;
        for d in &pos.0 {
            cur = match (&cur.node, d) {
                (LabeledNode::App(f, _), Dir::Fun) => f,
                (LabeledNode::App(_, a), Dir::Arg) => a,
                (LabeledNode::Abs(_, b), Dir::Body) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    fn fire_in_place(&mut self, pos: &[Dir]) -> Option<Label> {
        match pos.split_first() {
            None => {
                let (new, name) = self.contract()?;
                *self = new;
                Some(name)
            }
            Some((d, rest)) => match (&mut self.node, d) {
                (LabeledNode::App(f, _), Dir::Fun) => f.fire_in_place(rest),
                (LabeledNode::App(_, a), Dir::Arg) => a.fire_in_place(rest),
                (LabeledNode::Abs(_, b), Dir::Body) => b.fire_in_place(rest),
                _ => None,
            },
        }
    }

    /// Redexes with their names, leftmost-outermost first.
    pub fn redexes(&self) -> Vec<(Position, Label)> {
        fn go(t: &LabeledTerm, here: &mut Vec<Dir>, out: &mut Vec<(Position, Label)>) {
            if let Some(name) = t.redex_name() {
                out.push((Position(here.clone()), name.clone()));
            }
            match &t.node {
                LabeledNode::Var(_) => {}
                LabeledNode::Abs(_, b) => {
                    here.push(Dir::Body);
                    go(b, here, out);
                    here.pop();
                }
                LabeledNode::App(f, a) => {
                    here.push(Dir::Fun);
                    go(f, here, out);
                    here.pop();
                    here.push(Dir::Arg);
                    go(a, here, out);
                    here.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    fn rightmost_innermost(&self) -> Option<Position> {
        fn go(t: &LabeledTerm, here: &mut Vec<Dir>) -> Option<Position> {
            match &t.node {
                LabeledNode::Var(_) => None,
                LabeledNode::Abs(_, b) => {
                    here.push(Dir::Body);
                    let r = go(b, here);
                    here.pop();
                    r
                }
                LabeledNode::App(f, a) => {
                    here.push(Dir::Arg);
                    let r = go(a, here);
                    here.pop();
                    if r.is_some() {
                        return r;
                    }
                    here.push(Dir::Fun);
                    let r = go(f, here);
                    here.pop();
                    if r.is_some() {
                        return r;
                    }
                    t.redex_name().map(|_| Position(here.clone()))
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

/// Fires the redex at `pos`, returning the new term and the redex name.
pub fn labeled_fire(t: &LabeledTerm, pos: &Position) -> Result<(LabeledTerm, Label), LevyError> {
    let mut out = t.clone();
    match out.fire_in_place(&pos.0) {
        Some(name) => Ok((out, name)),
        None => Err(LevyError::NotARedex(pos.clone())),
    }
}

/// Runs a complete family reduction to normal form and reports the family
/// names fired. Fuel bounds the number of individual firings.
///
/// Meant for small terms: labels grow quickly along a reduction.
pub fn count_families(t: &Term, strategy: FamilyStrategy, fuel: u64) -> Result<FamilyReport, LevyError> {
    assert!(fuel > 0, "fuel must be positive");
    let mut cur = init_labels(t);
    let mut names: Vec<Label> = Vec::new();
    let mut firings = 0u64;
    loop {
        let chosen = match strategy {
            FamilyStrategy::Leftmost => cur.redexes().into_iter().next().map(|(_, n)| n),
            FamilyStrategy::Rightmost => cur
                .rightmost_innermost()
                .and_then(|p| cur.subterm(&p).and_then(|s| s.redex_name().cloned())),
        };
        let Some(name) = chosen else { break };
        // Residuals keep their name and created redexes get longer labels,
        // so this loop is a complete development of the family.
        while let Some((pos, _)) = cur.redexes().into_iter().find(|(_, n)| *n == name) {
            if firings >= fuel {
                let distinct_families = names.iter().collect::<HashSet<_>>().len();
                return Err(LevyError::FuelExhausted {
                    partial: FamilyReport {
                        fired_redex_names: names,
                        distinct_families,
                        beta_firings: firings,
                        normal_form: cur.erase(),
                    },
                });
            }
            cur.fire_in_place(&pos.0);
            firings += 1;
        }
        names.push(name);
    }
    let distinct_families = names.iter().collect::<HashSet<_>>().len();
    Ok(FamilyReport { fired_redex_names: names, distinct_families, beta_firings: firings, normal_form: cur.erase() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{delta_f_i, f_i_f_i};
    use crate::syntax::{parse, DefinitionEnv};

    const FUEL: u64 = 100_000;

    fn p(s: &str) -> Term {
        parse(s, &DefinitionEnv::prelude()).unwrap()
    }

    fn pos(dirs: &[Dir]) -> Position {
        Position(dirs.to_vec())
    }

    #[test]
    fn initial_labels_are_distinct() {
        let l = init_labels(&p("\\x.x"));
        assert_eq!(l.labels().len(), 2);
        let l = init_labels(&delta_f_i());
        let labels = l.labels();
        assert!(labels.len() >= 10);
        assert_eq!(labels.iter().collect::<HashSet<_>>().len(), labels.len());
        assert!(labels.iter().all(Label::is_atomic));
        assert_eq!(l.erase(), delta_f_i());
    }

    #[test]
    fn copies_in_initial_term_get_different_names() {
        let l = init_labels(&f_i_f_i());
        let names: Vec<_> = l.redexes().into_iter().map(|(_, n)| n).collect();
        assert_eq!(names.len(), 2);
        assert_ne!(names[0], names[1]);
    }

    /// Fires R, then S1 and S3, reaching P = (I y)(I y), then names T3 and T4.
    #[test]
    fn residuals_of_one_redex_share_a_name() {
        let m = init_labels(&delta_f_i());
        let (m, _r) = labeled_fire(&m, &Position::root()).unwrap();
        assert_eq!(m.erase(), f_i_f_i());
        let (m, s1) = labeled_fire(&m, &pos(&[Dir::Fun])).unwrap();
        let (m, s3) = labeled_fire(&m, &pos(&[Dir::Arg])).unwrap();
        assert_eq!(s1, s3);
        assert_eq!(m.erase(), p("(I y) (I y)"));
        let t3 = m.subterm(&pos(&[Dir::Fun])).unwrap().redex_name().unwrap().clone();
        let t4 = m.subterm(&pos(&[Dir::Arg])).unwrap().redex_name().unwrap().clone();
        assert_eq!(t3, t4);
        assert!(!t3.is_atomic());

        // Starting from (F I)(F I) written out, the same redexes differ.
        let m = init_labels(&f_i_f_i());
        let (m, a) = labeled_fire(&m, &pos(&[Dir::Fun])).unwrap();
        let (m, b) = labeled_fire(&m, &pos(&[Dir::Arg])).unwrap();
        assert_ne!(a, b);
        let t3 = m.subterm(&pos(&[Dir::Fun])).unwrap().redex_name().unwrap();
        let t4 = m.subterm(&pos(&[Dir::Arg])).unwrap().redex_name().unwrap();
        assert_ne!(t3, t4);
    }

    #[test]
    fn firing_a_non_redex_fails() {
        let m = init_labels(&p("x y"));
        assert!(matches!(labeled_fire(&m, &Position::root()), Err(LevyError::NotARedex(_))));
    }

    #[test]
    fn label_erasure_simulates_plain_beta() {
        let t = p("(\\x. x (x y)) (\\z. z) ");
        let l = init_labels(&t);
        for (pos, _) in l.redexes() {
            let (fired, _) = labeled_fire(&l, &pos).unwrap();
            assert_eq!(fired.erase(), t.fire_at(&pos).unwrap());
        }
    }

    #[test]
    fn family_counts_on_the_worked_examples() {
        for s in [FamilyStrategy::Leftmost, FamilyStrategy::Rightmost] {
            let a = count_families(&delta_f_i(), s, FUEL).unwrap();
            assert_eq!(a.distinct_families, 3, "{s:?}");
            assert_eq!(a.normal_form, p("y y"));
            let b = count_families(&f_i_f_i(), s, FUEL).unwrap();
            assert_eq!(b.distinct_families, 4, "{s:?}");
            assert_eq!(count_families(&p("\\x.x"), s, FUEL).unwrap().distinct_families, 0);
        }
    }

    #[test]
    fn label_printing() {
        let a = Label::atomic(1);
        let b = Label::atomic(2);
        assert_eq!(b.concat(&a.over()).concat(&a.under()).to_string(), "a2(a1)^(a1)_");
    }

    #[test]
    fn family_fuel() {
        let omega = p("(\\x. x x) (\\x. x x)");
        assert!(matches!(
            count_families(&omega, FamilyStrategy::Leftmost, 10),
            Err(LevyError::FuelExhausted { .. })
        ));
    }
}
