//! Tree-walking reducers and a weak environment machine, all instrumented
//! with step counters.

use std::cell::RefCell;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::term::{Term, Var};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStats {
    pub beta_steps: u64,
    /// Beta steps whose abstraction is the identity `λx.x`.
    pub identity_firings: u64,
    pub machine_transitions: u64,
    /// Variable lookups that entered a suspended application.
    pub closures_opened: u64,
    pub peak_term_size: u64,
    pub fuel_used: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Normalized,
    FuelExhausted,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    /// Normal form, weak normal form, or the partial result on exhaustion.
    pub result: Term,
    pub stats: ReductionStats,
    pub status: Status,
}

impl Outcome {
    pub fn normalized(&self) -> bool {
        self.status == Status::Normalized
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakMode {
    ByName,
    ByNeed,
}

pub fn count_redexes(t: &Term) -> usize {
    t.redex_positions().len()
}

fn is_identity_redex(t: &Term) -> bool {
    matches!(t, Term::App(f, _) if matches!(&**f, Term::Abs(_, b) if matches!(**b, Term::Var(Var::Bound(0)))))
}

/// Result of one search-and-fire pass over a term.
struct Fired {
    term: Term,
    identity: bool,
}

fn step_leftmost_outermost(t: &Term) -> Option<Fired> {
    if let Some(r) = t.contract() {
        return Some(Fired { term: r, identity: is_identity_redex(t) });
    }
    match t {
        Term::Var(_) => None,
        Term::Abs(h, b) => step_leftmost_outermost(b).map(|f| Fired {
            term: Term::Abs(h.clone(), Box::new(f.term)),
            identity: f.identity,
        }),
        Term::App(fun, arg) => {
            if let Some(f) = step_leftmost_outermost(fun) {
                Some(Fired { term: Term::App(Box::new(f.term), arg.clone()), identity: f.identity })
            } else {
                step_leftmost_outermost(arg).map(|f| Fired {
                    term: Term::App(fun.clone(), Box::new(f.term)),
                    identity: f.identity,
                })
            }
        }
    }
}

/// Redexes are ordered by where they end; among redexes ending at the same
/// place the innermost wins. So arguments are normalized first, and a redex
/// `(\x.M) N` with `N` normal fires before anything inside `M`.
fn step_rightmost_innermost(t: &Term) -> Option<Fired> {
    match t {
        Term::Var(_) => None,
        Term::Abs(h, b) => step_rightmost_innermost(b).map(|f| Fired {
            term: Term::Abs(h.clone(), Box::new(f.term)),
            identity: f.identity,
        }),
        Term::App(fun, arg) => {
            if let Some(f) = step_rightmost_innermost(arg) {
                return Some(Fired { term: Term::App(fun.clone(), Box::new(f.term)), identity: f.identity });
            }
            if let Some(r) = t.contract() {
                return Some(Fired { term: r, identity: is_identity_redex(t) });
            }
            step_rightmost_innermost(fun).map(|f| Fired {
                term: Term::App(Box::new(f.term), arg.clone()),
                identity: f.identity,
            })
        }
    }
}

fn run_tree(t: &Term, fuel: u64, max_size: usize, step: fn(&Term) -> Option<Fired>) -> Outcome {
    assert!(fuel > 0, "fuel must be positive");
    let mut stats = ReductionStats { peak_term_size: t.size() as u64, ..Default::default() };
    let mut cur = t.clone();
    loop {
        if stats.beta_steps >= fuel {
            let status = if cur.is_normal() { Status::Normalized } else { Status::FuelExhausted };
            return Outcome { result: cur, stats, status };
        }
        match step(&cur) {
            None => return Outcome { result: cur, stats, status: Status::Normalized },
            Some(fired) => {
                stats.beta_steps += 1;
                stats.fuel_used += 1;
                stats.identity_firings += u64::from(fired.identity);
                cur = fired.term;
                let size = cur.size();
                stats.peak_term_size = stats.peak_term_size.max(size as u64);
                if size > max_size {
                    return Outcome { result: cur, stats, status: Status::FuelExhausted };
                }
            }
        }
    }
}

/// Leftmost-outermost reduction to full normal form. Fuel bounds beta steps.
pub fn reduce_normal_order(t: &Term, fuel: u64) -> Outcome {
    run_tree(t, fuel, usize::MAX, step_leftmost_outermost)
}

/// Like [`reduce_normal_order`], but gives up (reporting `FuelExhausted`) as
/// soon as the term grows past `max_size` nodes.
pub fn reduce_normal_order_bounded(t: &Term, fuel: u64, max_size: usize) -> Outcome {
    run_tree(t, fuel, max_size, step_leftmost_outermost)
}

/// Rightmost-innermost reduction to full normal form. Fuel bounds beta steps.
pub fn reduce_applicative(t: &Term, fuel: u64) -> Outcome {
    run_tree(t, fuel, usize::MAX, step_rightmost_innermost)
}

/// [`reduce_applicative`] with the size cap of [`reduce_normal_order_bounded`].
pub fn reduce_applicative_bounded(t: &Term, fuel: u64, max_size: usize) -> Outcome {
    run_tree(t, fuel, max_size, step_rightmost_innermost)
}

// ---------------------------------------------------------------------------
// Weak environment machine.
//
// Closures point into the input term; the machine never builds new syntax
// while running. A weak normal form is turned back into a `Term` by forcing
// the environment (substituting closures) without reducing anything.

enum Thunk<'a> {
    Pending(&'a Term, Env<'a>),
    Value(&'a Term, Env<'a>),
}

type ThunkRef<'a> = Rc<RefCell<Thunk<'a>>>;

#[derive(Clone, Default)]
struct Env<'a>(Option<Rc<EnvCell<'a>>>);

struct EnvCell<'a> {
    head: ThunkRef<'a>,
    tail: Env<'a>,
}

impl<'a> Env<'a> {
    fn push(&self, th: ThunkRef<'a>) -> Env<'a> {
        Env(Some(Rc::new(EnvCell { head: th, tail: self.clone() })))
    }

    fn lookup(&self, mut i: usize) -> &ThunkRef<'a> {
        let mut cur = self.0.as_ref().expect("index escapes the environment");
        while i > 0 {
            cur = cur.tail.0.as_ref().expect("index escapes the environment");
            i -= 1;
        }
        &cur.head
    }
}

enum Frame<'a> {
    Arg(ThunkRef<'a>),
    Update(ThunkRef<'a>),
}

fn reify(t: &Term, env: &Env<'_>, depth: usize) -> Term {
    match t {
        Term::Var(Var::Bound(i)) if *i < depth => t.clone(),
        Term::Var(Var::Bound(i)) => reify_thunk(env.lookup(i - depth)),
        Term::Var(Var::Free(_)) => t.clone(),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(reify(b, env, depth + 1))),
        Term::App(f, a) => Term::app(reify(f, env, depth), reify(a, env, depth)),
    }
}

fn reify_thunk(th: &ThunkRef<'_>) -> Term {
    match &*th.borrow() {
        Thunk::Pending(t, e) | Thunk::Value(t, e) => reify(t, e, 0),
    }
}

/// Weak reduction: never reduces under an abstraction. `ByNeed` memoizes
/// argument evaluation; `ByName` re-evaluates on every use. Fuel bounds
/// machine transitions.
pub fn evaluate_weak(t: &Term, mode: WeakMode, fuel: u64) -> Outcome {
    assert!(fuel > 0, "fuel must be positive");
    assert!(t.is_locally_closed(), "weak evaluation needs a locally closed term");
    let mut stats = ReductionStats { peak_term_size: t.size() as u64, ..Default::default() };
    let mut cur: &Term = t;
    let mut env = Env::default();
    let mut stack: Vec<Frame<'_>> = Vec::new();

    loop {
        if stats.machine_transitions >= fuel {
            let result = unwind(reify(cur, &env, 0), &stack);
            return Outcome { result, stats, status: Status::FuelExhausted };
        }
        stats.machine_transitions += 1;
        stats.fuel_used += 1;
        match cur {
            Term::App(f, a) => {
                stack.push(Frame::Arg(Rc::new(RefCell::new(Thunk::Pending(a, env.clone())))));
                cur = f;
            }
            Term::Abs(_, body) => match stack.pop() {
                Some(Frame::Arg(th)) => {
                    stats.beta_steps += 1;
                    stats.identity_firings += u64::from(matches!(**body, Term::Var(Var::Bound(0))));
                    env = env.push(th);
                    cur = body;
                }
                Some(Frame::Update(th)) => {
                    *th.borrow_mut() = Thunk::Value(cur, env.clone());
                }
                None => {
                    let result = reify(cur, &env, 0);
                    stats.peak_term_size = stats.peak_term_size.max(result.size() as u64);
                    return Outcome { result, stats, status: Status::Normalized };
                }
            },
            Term::Var(Var::Bound(i)) => {
                let th = env.lookup(*i).clone();
                let next = match &*th.borrow() {
                    Thunk::Value(t, e) => (*t, e.clone(), false),
                    Thunk::Pending(t, e) => (*t, e.clone(), true),
                };
                let (t, e, pending) = next;
                if pending {
                    if matches!(t, Term::App(..)) {
                        stats.closures_opened += 1;
                    }
                    if mode == WeakMode::ByNeed {
                        stack.push(Frame::Update(th));
                    }
                }
                cur = t;
                env = e;
            }
            Term::Var(Var::Free(_)) => {
                // Stuck on a free head: the weak normal form is the head
                // applied to the pending arguments.
                let result = unwind(cur.clone(), &stack);
                stats.peak_term_size = stats.peak_term_size.max(result.size() as u64);
                return Outcome { result, stats, status: Status::Normalized };
            }
        }
    }
}

fn unwind(head: Term, stack: &[Frame<'_>]) -> Term {
    stack.iter().rev().fold(head, |acc, frame| match frame {
        Frame::Arg(th) => Term::app(acc, reify_thunk(th)),
        Frame::Update(_) => acc,
    })
}
