//! Simple types, the degree measure, and Takahashi parallel reduction.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::term::{Dir, Name, Position, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Atom(String),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn atom(name: &str) -> Self {
        SimpleType::Atom(name.to_string())
    }

    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> Self {
        SimpleType::Arrow(Box::new(domain), Box::new(codomain))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Atom(a) => f.write_str(a),
            SimpleType::Arrow(d, c) => {
                if matches!(**d, SimpleType::Arrow(..)) {
                    write!(f, "({d}) -> {c}")
                } else {
                    write!(f, "{d} -> {c}")
                }
            }
        }
    }
}

/// 1 on atoms; one more than the larger side on arrows.
pub fn degree_of_type(t: &SimpleType) -> u32 {
    match t {
        SimpleType::Atom(_) => 1,
        SimpleType::Arrow(d, c) => degree_of_type(d).max(degree_of_type(c)) + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("term is not simply typable: {0}")]
    Untypable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedRedexReport {
    pub position: Position,
    /// Type `U -> V` of the abstraction being applied.
    pub redex_type: SimpleType,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Principal type of the whole term.
    pub term_type: SimpleType,
    /// Maximum redex degree, 0 when the term has no redex.
    pub degree: u32,
    pub redexes: Vec<TypedRedexReport>,
}

#[derive(Debug, Clone)]
enum Ty {
    Var(usize),
    Arrow(Box<Ty>, Box<Ty>),
}

#[derive(Default)]
struct Unifier {
    bindings: Vec<Option<Ty>>,
}

impl Unifier {
    fn fresh(&mut self) -> Ty {
        self.bindings.push(None);
        Ty::Var(self.bindings.len() - 1)
    }

    fn prune(&self, t: &Ty) -> Ty {
        let mut t = t.clone();
        while let Ty::Var(v) = t {
            match &self.bindings[v] {
                Some(b) => t = b.clone(),
                None => return Ty::Var(v),
            }
        }
        t
    }

    fn occurs(&self, v: usize, t: &Ty) -> bool {
        match self.prune(t) {
            Ty::Var(w) => v == w,
            Ty::Arrow(d, c) => self.occurs(v, &d) || self.occurs(v, &c),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> Result<(), TypeError> {
        match (self.prune(a), self.prune(b)) {
            (Ty::Var(x), Ty::Var(y)) if x == y => Ok(()),
            (Ty::Var(x), t) | (t, Ty::Var(x)) => {
                if self.occurs(x, &t) {
                    return Err(TypeError::Untypable("occurs check failed (self-application)".into()));
                }
                self.bindings[x] = Some(t);
                Ok(())
            }
            (Ty::Arrow(d1, c1), Ty::Arrow(d2, c2)) => {
                self.unify(&d1, &d2)?;
                self.unify(&c1, &c2)
            }
        }
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match self.prune(t) {
            Ty::Arrow(d, c) => Ty::Arrow(Box::new(self.resolve(&d)), Box::new(self.resolve(&c))),
            v => v,
        }
    }
}

struct Inference {
    u: Unifier,
    free: HashMap<Name, Ty>,
    abs_at_redex: Vec<(Position, Ty)>,
}

impl Inference {
    fn infer(&mut self, t: &Term, ctx: &mut Vec<Ty>, here: &mut Vec<Dir>) -> Result<Ty, TypeError> {
        match t {
            Term::Var(Var::Bound(i)) => Ok(ctx[ctx.len() - 1 - i].clone()),
            Term::Var(Var::Free(n)) => {
                if let Some(t) = self.free.get(n) {
                    return Ok(t.clone());
                }
                let t = self.u.fresh();
                self.free.insert(n.clone(), t.clone());
                Ok(t)
            }
            Term::Abs(_, body) => {
                let dom = self.u.fresh();
                ctx.push(dom.clone());
                here.push(Dir::Body);
                let cod = self.infer(body, ctx, here);
                here.pop();
                ctx.pop();
                Ok(Ty::Arrow(Box::new(dom), Box::new(cod?)))
            }
            Term::App(f, a) => {
                here.push(Dir::Fun);
                let tf = self.infer(f, ctx, here)?;
                here.pop();
                if f.is_abs() {
                    self.abs_at_redex.push((Position(here.clone()), tf.clone()));
                }
                here.push(Dir::Arg);
                let ta = self.infer(a, ctx, here)?;
                here.pop();
                let res = self.u.fresh();
                self.u.unify(&tf, &Ty::Arrow(Box::new(ta), Box::new(res.clone())))?;
                Ok(res)
            }
        }
    }
}

/// Names type variables `a`, `b`, ... in order of first appearance.
#[derive(Default)]
struct Namer {
    names: HashMap<usize, String>,
}

impl Namer {
    fn name(&mut self, t: &Ty) -> SimpleType {
        match t {
            Ty::Var(v) => {
                let next = self.names.len();
                let n = self.names.entry(*v).or_insert_with(|| atom_name(next));
                SimpleType::Atom(n.clone())
            }
            Ty::Arrow(d, c) => {
                let d = self.name(d);
                SimpleType::arrow(d, self.name(c))
            }
        }
    }
}

fn atom_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

fn run_inference(t: &Term) -> Result<(Ty, Inference), TypeError> {
    let mut inf = Inference { u: Unifier::default(), free: HashMap::new(), abs_at_redex: Vec::new() };
    let ty = inf.infer(t, &mut Vec::new(), &mut Vec::new())?;
    Ok((ty, inf))
}

/// Principal simple type. Free variables are given fresh atomic types.
pub fn infer_type(t: &Term) -> Result<SimpleType, TypeError> {
    let (ty, inf) = run_inference(t)?;
    Ok(Namer::default().name(&inf.u.resolve(&ty)))
}

pub fn is_typable(t: &Term) -> bool {
    run_inference(t).is_ok()
}

/// Degree of a term (maximum degree of its redexes) with the per-redex
/// breakdown, under the principal typing.
pub fn degree_of_term(t: &Term) -> Result<DegreeReport, TypeError> {
    let (ty, inf) = run_inference(t)?;
    let mut namer = Namer::default();
    let term_type = namer.name(&inf.u.resolve(&ty));
    let mut redexes: Vec<TypedRedexReport> = inf
        .abs_at_redex
        .iter()
        .map(|(pos, abs_ty)| {
            let redex_type = namer.name(&inf.u.resolve(abs_ty));
            let degree = degree_of_type(&redex_type);
            TypedRedexReport { position: pos.clone(), redex_type, degree }
        })
        .collect();
    redexes.sort_by(|a, b| a.position.cmp(&b.position));
    let degree = redexes.iter().map(|r| r.degree).max().unwrap_or(0);
    Ok(DegreeReport { term_type, degree, redexes })
}

/// Complete development of every redex present in `t`. Redexes created by
/// the step are left for the next one.
pub fn parallel_step(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Abs(h, b) => Term::Abs(h.clone(), Box::new(parallel_step(b))),
        Term::App(f, a) => match &**f {
            Term::Abs(_, body) => parallel_step(body).instantiate(&parallel_step(a)),
            _ => Term::app(parallel_step(f), parallel_step(a)),
        },
    }
}

#[derive(Debug, Clone, Error)]
#[error("parallel reduction ran out of fuel after {steps} steps")]
pub struct ParallelFuelExhausted {
    pub partial: Term,
    pub steps: u64,
}

/// Iterates [`parallel_step`] to normal form; fuel bounds the number of
/// parallel steps.
pub fn parallel_normalize(t: &Term, fuel: u64) -> Result<(Term, u64), ParallelFuelExhausted> {
    assert!(fuel > 0, "fuel must be positive");
    let mut cur = t.clone();
    let mut steps = 0;
    while !cur.is_normal() {
        if steps >= fuel {
            return Err(ParallelFuelExhausted { partial: cur, steps });
        }
        cur = parallel_step(&cur);
        steps += 1;
    }
    Ok((cur, steps))
}
