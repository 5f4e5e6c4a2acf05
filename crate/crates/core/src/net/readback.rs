//! Reading a lambda term back out of a normal net.
//!
//! The traversal walks from the root along the term structure, carrying a
//! context: a stack of levels. Crossing a fan from an auxiliary port to the
//! principal one pushes the side taken onto the fan's level; crossing it
//! the other way pops the side to follow. Entering an abstraction body
//! inserts a fresh level at 0. Entering a delimiter inserts a level at its
//! index, restoring one saved there if any; leaving removes that level and
//! saves it. A variable occurrence arrives at some abstraction's binder
//! port and is bound by the innermost enclosing visit of that abstraction
//! whose recorded path can be unwound from the occurrence's context.

use std::rc::Rc;

use super::{Net, NetError, NodeId, NodeKind, Port};
use crate::term::{Term, Var};

const DEFAULT_FUEL: u64 = 50_000_000;

/// Persistent singly linked list.
#[derive(Debug, PartialEq, Eq)]
enum List<T> {
    Nil,
    Cons(T, Rc<List<T>>),
}

impl<T> Drop for List<T> {
    // Long chains would otherwise be dropped recursively.
    fn drop(&mut self) {
        let List::Cons(_, rest) = self else { return };
        let mut next = std::mem::replace(rest, Rc::new(List::Nil));
        while let Ok(mut node) = Rc::try_unwrap(next) {
            let List::Cons(_, rest) = &mut node else { return };
            next = std::mem::replace(rest, Rc::new(List::Nil));
        }
    }
}

/// One level of the context: the fan sides recorded at this level, and the
/// levels saved by the scopes that were left at this index.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    sides: Rc<List<u8>>,
    saved: Rc<List<Level>>,
}

impl Default for Level {
    fn default() -> Self {
        Level { sides: Rc::new(List::Nil), saved: Rc::new(List::Nil) }
    }
}

#[derive(Debug, Clone, Default)]
struct Context(Vec<Level>);

impl Context {
    fn slot(&mut self, n: usize) -> &mut Level {
        if self.0.len() <= n {
            self.0.resize_with(n + 1, Level::default);
        }
        &mut self.0[n]
    }

    fn push(&mut self, n: usize, side: u8) {
        let l = self.slot(n);
        l.sides = Rc::new(List::Cons(side, l.sides.clone()));
    }

    fn pop(&mut self, n: usize) -> Result<u8, NetError> {
        let l = self.slot(n);
        match &*l.sides.clone() {
            List::Cons(side, rest) => {
                l.sides = rest.clone();
                Ok(*side)
            }
            List::Nil => Err(NetError::Readback(format!("fan at level {n} has no recorded side"))),
        }
    }

    /// Entering a scope whose door has index `n`.
    fn enter(&mut self, n: usize) {
        let outer = self.slot(n);
        let inner = match &*outer.saved.clone() {
            List::Cons(l, rest) => {
                outer.saved = rest.clone();
                l.clone()
            }
            List::Nil => Level::default(),
        };
        self.0.insert(n, inner);
    }

    /// Entering an abstraction's body: a fresh level at index 0.
    fn open(&mut self) {
        self.0.insert(0, Level::default());
    }

    fn close(&mut self) {
        if !self.0.is_empty() {
            self.0.remove(0);
        }
    }

    /// Leaving a scope whose door has index `n`.
    fn leave(&mut self, n: usize) {
        self.slot(n + 1);
        let inner = self.0.remove(n);
        let outer = self.slot(n);
        // Entering with nothing saved yields a default level, so saving a
        // default level onto nothing must give nothing back.
        if inner != Level::default() || *outer.saved != List::Nil {
            outer.saved = Rc::new(List::Cons(inner, outer.saved.clone()));
        }
    }

    /// Replays `log` backwards, undoing each operation. Fails when a fan
    /// recorded on the way in cannot be matched on the way out.
    fn undo(mut self, log: &Log) -> bool {
        let mut cur = log;
        while let List::Cons(op, rest) = &**cur {
            match *op {
                Op::Push(n, side) => match self.pop(n) {
                    Ok(s) if s == side => {}
                    _ => return false,
                },
                Op::Pop(n, side) => self.push(n, side),
                Op::Enter(n) => self.leave(n),
                Op::Leave(n) => self.enter(n),
                Op::Open => self.close(),
            }
            cur = rest;
        }
        true
    }
}

/// Context operations performed along the path from the root, most recent
/// first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Push(usize, u8),
    Pop(usize, u8),
    Enter(usize),
    Leave(usize),
    Open,
}

type Log = Rc<List<Op>>;

fn record(log: &mut Log, op: Op) {
    *log = Rc::new(List::Cons(op, log.clone()));
}

/// Abstraction visits enclosing the current position, innermost first, each
/// with the log of the path that reached it.
type Binders = Rc<List<(NodeId, Log)>>;

enum Task {
    Read(Port, Context, Log, Binders),
    Abs,
    App,
}

struct Reader<'a> {
    net: &'a Net,
    fuel: u64,
    used: u64,
}

impl Reader<'_> {
    fn tick(&mut self) -> Result<(), NetError> {
        self.used += 1;
        if self.used > self.fuel {
            return Err(NetError::ReadbackFuel(self.fuel));
        }
        Ok(())
    }

    fn run(&mut self, start: Port) -> Result<Term, NetError> {
        let mut tasks = vec![Task::Read(start, Context::default(), Rc::new(List::Nil), Rc::new(List::Nil))];
        let mut done: Vec<Term> = Vec::new();
        while let Some(task) = tasks.pop() {
            match task {
                Task::Read(from, ctx, log, binders) => {
                    let t = self.walk(from, ctx, log, binders, &mut tasks)?;
                    if let Some(t) = t {
                        done.push(t);
                    }
                }
                Task::Abs => {
                    let body = done.pop().expect("body was read");
                    done.push(Term::Abs("x".into(), Box::new(body)));
                }
                Task::App => {
                    let a = done.pop().expect("argument was read");
                    let f = done.pop().expect("function was read");
                    done.push(Term::app(f, a));
                }
            }
        }
        Ok(done.pop().expect("root was read"))
    }

    /// Follows wires from `from` until reaching a term node. Leaves are
    /// returned; inner nodes schedule their children.
    fn walk(
        &mut self,
        mut from: Port,
        mut ctx: Context,
        mut log: Log,
        binders: Binders,
        tasks: &mut Vec<Task>,
    ) -> Result<Option<Term>, NetError> {
        loop {
            self.tick()?;
            let to = self.net.peer(from);
            let node = self.net.node(to.node);
            let level = node.level as usize;
            match (node.kind, to.slot) {
                (NodeKind::Lambda, 0) => {
                    let inner = Rc::new(List::Cons((to.node, log.clone()), binders));
                    ctx.open();
                    record(&mut log, Op::Open);
                    tasks.push(Task::Abs);
                    tasks.push(Task::Read(Port::new(to.node, 1), ctx, log, inner));
                    return Ok(None);
                }
                (NodeKind::Lambda, 2) => {
                    let mut out = ctx;
                    out.close();
                    let mut depth = 0;
                    let mut cur = &binders;
                    while let List::Cons((id, path), rest) = &**cur {
                        if *id == to.node && out.clone().undo(path) {
                            return Ok(Some(Term::Var(Var::Bound(depth))));
                        }
                        depth += 1;
                        cur = rest;
                    }
                    return Err(NetError::Readback(format!("unbound variable at {:?}", to.node)));
                }
                (NodeKind::Apply, 2) => {
                    tasks.push(Task::App);
                    tasks.push(Task::Read(Port::new(to.node, 1), ctx.clone(), log.clone(), binders.clone()));
                    tasks.push(Task::Read(Port::new(to.node, 0), ctx, log, binders));
                    return Ok(None);
                }
                (NodeKind::Fan, 1 | 2) => {
                    ctx.push(level, to.slot);
                    record(&mut log, Op::Push(level, to.slot));
                    from = Port::new(to.node, 0);
                }
                (NodeKind::Fan, 0) => {
                    let side = ctx.pop(level)?;
                    record(&mut log, Op::Pop(level, side));
                    from = Port::new(to.node, side);
                }
                (NodeKind::Delimiter, 1) => {
                    ctx.leave(level);
                    record(&mut log, Op::Leave(level));
                    from = Port::new(to.node, 0);
                }
                (NodeKind::Delimiter, 0) => {
                    ctx.enter(level);
                    record(&mut log, Op::Enter(level));
                    from = Port::new(to.node, 1);
                }
                (NodeKind::Free, 0) => {
                    let name = node.name().unwrap_or("?");
                    return Ok(Some(Term::var(name)));
                }
                (kind, slot) => {
                    return Err(NetError::Readback(format!("walked into {kind} port {slot} at {:?}", to.node)));
                }
            }
        }
    }
}

/// Reads back the term denoted by a normal net.
pub fn readback(net: &Net) -> Result<Term, NetError> {
    readback_with_fuel(net, DEFAULT_FUEL).map(|(t, _)| t)
}

/// Like [`readback`], bounding the number of traversal steps. Also returns
/// the number of steps taken.
pub fn readback_with_fuel(net: &Net, fuel: u64) -> Result<(Term, u64), NetError> {
    let active = super::needed_pairs(net).len();
    if active > 0 {
        return Err(NetError::NotNormal(active));
    }
    let mut r = Reader { net, fuel, used: 0 };
    let t = r.run(Port::new(net.root(), 0))?;
    Ok((t, r.used))
}
