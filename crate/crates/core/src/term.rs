//! Pure lambda terms.
//!
//! Terms are stored locally nameless: bound variables are de Bruijn indices
//! and free variables keep their names. Every binder carries the name it was
//! written with, which is only used as a hint when printing. Two terms compare
//! equal (`==`) exactly when they are alpha-equivalent.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Identifier used for free variables and binder hints.
pub type Name = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// De Bruijn index, 0 is the innermost enclosing binder.
    Bound(usize),
    Free(Name),
}

#[derive(Clone, Debug)]
pub enum Term {
    Var(Var),
    Abs(Name, Box<Term>),
    App(Box<Term>, Box<Term>),
}

/// One step of a path from the root of a term to one of its subterms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Fun,
    Arg,
    Body,
}

/// Address of a subterm, read from the root downwards.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<Dir>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, dir: Dir) -> Self {
        let mut steps = self.0.clone();
        steps.push(dir);
        Position(steps)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(match d {
                Dir::Fun => "fun",
                Dir::Arg => "arg",
                Dir::Body => "body",
            })?;
        }
        Ok(())
    }
}

impl Term {
    /// A free variable.
    pub fn var(name: &str) -> Term {
        Term::Var(Var::Free(Arc::from(name)))
    }

    /// `λname.body`, binding every free occurrence of `name` in `body`.
    pub fn lam(name: &str, body: Term) -> Term {
        let name: Name = Arc::from(name);
        let body = body.close_over(&name, 0);
        Term::Abs(name, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    /// Left-nested application `head a1 a2 ...`.
    pub fn apply<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn identity() -> Term {
        Term::lam("x", Term::var("x"))
    }

    /// The Church numeral `λf.λx.f^n x`.
    pub fn church(n: usize) -> Term {
        let mut body = Term::Var(Var::Bound(0));
        for _ in 0..n {
            body = Term::app(Term::Var(Var::Bound(1)), body);
        }
        Term::Abs(
            Arc::from("f"),
            Box::new(Term::Abs(Arc::from("x"), Box::new(body))),
        )
    }

    fn close_over(self, name: &str, depth: usize) -> Term {
        match self {
            Term::Var(Var::Free(n)) if &*n == name => Term::Var(Var::Bound(depth)),
            Term::Var(v) => Term::Var(v),
            Term::Abs(h, b) => Term::Abs(h, Box::new(b.close_over(name, depth + 1))),
            Term::App(f, a) => Term::App(
                Box::new(f.close_over(name, depth)),
                Box::new(a.close_over(name, depth)),
            ),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn is_abs(&self) -> bool {
        matches!(self, Term::Abs(..))
    }

    pub fn is_redex(&self) -> bool {
        matches!(self, Term::App(f, _) if f.is_abs())
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(Var::Free(n)) => {
                out.insert(n.clone());
            }
            Term::Var(Var::Bound(_)) => {}
            Term::Abs(_, b) => b.collect_free(out),
            Term::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
        }
    }

    /// True when no de Bruijn index points outside the term.
    pub fn is_locally_closed(&self) -> bool {
        fn go(t: &Term, depth: usize) -> bool {
            match t {
                Term::Var(Var::Bound(i)) => *i < depth,
                Term::Var(Var::Free(_)) => true,
                Term::Abs(_, b) => go(b, depth + 1),
                Term::App(f, a) => go(f, depth) && go(a, depth),
            }
        }
        go(self, 0)
    }

    /// Every bound variable is used at least once (the λI fragment).
    pub fn is_non_erasing(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(_, b) => b.occurrences(0) > 0 && b.is_non_erasing(),
            Term::App(f, a) => f.is_non_erasing() && a.is_non_erasing(),
        }
    }

    /// Number of occurrences of the variable with index `index` (relative to
    /// the top of `self`).
    pub fn occurrences(&self, index: usize) -> usize {
        match self {
            Term::Var(Var::Bound(i)) => usize::from(*i == index),
            Term::Var(Var::Free(_)) => 0,
            Term::Abs(_, b) => b.occurrences(index + 1),
            Term::App(f, a) => f.occurrences(index) + a.occurrences(index),
        }
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Var(Var::Bound(i)), Term::Var(Var::Bound(j))) => i == j,
            (Term::Var(Var::Free(a)), Term::Var(Var::Free(b))) => a == b,
            (Term::Abs(_, b1), Term::Abs(_, b2)) => b1.alpha_eq(b2),
            (Term::App(f1, a1), Term::App(f2, a2)) => f1.alpha_eq(f2) && a1.alpha_eq(a2),
            _ => false,
        }
    }

    /// Capture-avoiding substitution of `arg` for the free variable `var`.
    ///
    /// `arg` must be locally closed, which every term built through the
    /// public constructors is.
    pub fn substitute(&self, var: &str, arg: &Term) -> Term {
        match self {
            Term::Var(Var::Free(n)) if &**n == var => arg.clone(),
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.substitute(var, arg))),
            Term::App(f, a) => Term::app(f.substitute(var, arg), a.substitute(var, arg)),
        }
    }

    /// Adds `delta` to every index that escapes `cutoff` enclosing binders.
    pub(crate) fn shift(&self, delta: isize, cutoff: usize) -> Term {
        if delta == 0 {
            return self.clone();
        }
        match self {
            Term::Var(Var::Bound(i)) if *i >= cutoff => {
                Term::Var(Var::Bound((*i as isize + delta) as usize))
            }
            Term::Var(_) => self.clone(),
            Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(b.shift(delta, cutoff + 1))),
            Term::App(f, a) => Term::app(f.shift(delta, cutoff), a.shift(delta, cutoff)),
        }
    }

    /// Body of a binder with its index 0 replaced by `arg`; the result lives
    /// one binder shallower than `self`.
    pub(crate) fn instantiate(&self, arg: &Term) -> Term {
        fn go(t: &Term, arg: &Term, depth: usize) -> Term {
            match t {
                Term::Var(Var::Bound(i)) => {
                    if *i < depth {
                        t.clone()
                    } else if *i == depth {
                        arg.shift(depth as isize, 0)
                    } else {
                        Term::Var(Var::Bound(i - 1))
                    }
                }
                Term::Var(Var::Free(_)) => t.clone(),
                Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(go(b, arg, depth + 1))),
                Term::App(f, a) => Term::app(go(f, arg, depth), go(a, arg, depth)),
            }
        }
        go(self, arg, 0)
    }

    /// Contracts `self` if it is a redex.
    pub fn contract(&self) -> Option<Term> {
        match self {
            Term::App(f, a) => match &**f {
                Term::Abs(_, body) => Some(body.instantiate(a)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&Term> {
        let mut cur = self;
        for d in &pos.0 {
            cur = match (cur, d) {
                (Term::App(f, _), Dir::Fun) => f,
                (Term::App(_, a), Dir::Arg) => a,
                (Term::Abs(_, b), Dir::Body) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuilds `self` with the subterm at `pos` replaced by `f(subterm)`.
    pub fn map_at<F>(&self, pos: &[Dir], f: F) -> Option<Term>
    where
        F: FnOnce(&Term) -> Option<Term>,
    {
        match pos.split_first() {
            None => f(self),
            Some((d, rest)) => match (self, d) {
                (Term::App(fun, arg), Dir::Fun) => {
                    Some(Term::App(Box::new(fun.map_at(rest, f)?), arg.clone()))
                }
                (Term::App(fun, arg), Dir::Arg) => {
                    Some(Term::App(fun.clone(), Box::new(arg.map_at(rest, f)?)))
                }
                (Term::Abs(h, b), Dir::Body) => {
                    Some(Term::Abs(h.clone(), Box::new(b.map_at(rest, f)?)))
                }
                _ => None,
            },
        }
    }

    /// Fires the redex at `pos`; `None` if there is no redex there.
    pub fn fire_at(&self, pos: &Position) -> Option<Term> {
        self.map_at(&pos.0, Term::contract)
    }

    /// Positions of all redexes in leftmost-outermost order.
    pub fn redex_positions(&self) -> Vec<Position> {
        fn go(t: &Term, here: &mut Vec<Dir>, out: &mut Vec<Position>) {
            if t.is_redex() {
                out.push(Position(here.clone()));
            }
            match t {
                Term::Var(_) => {}
                Term::Abs(_, b) => {
                    here.push(Dir::Body);
                    go(b, here, out);
                    here.pop();
                }
                Term::App(f, a) => {
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

    pub fn is_normal(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(_, b) => b.is_normal(),
            Term::App(f, a) => !f.is_abs() && f.is_normal() && a.is_normal(),
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty(self))
    }
}
