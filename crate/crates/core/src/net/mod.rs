//! Sharing graphs: interaction nets for optimal reduction.
//!
//! A term is translated into a net of abstraction, application, fan,
//! delimiter and eraser nodes. Every node except the root and free
//! variable anchors has one principal port (slot 0); rewriting only happens
//! where two principal ports meet.
//!
//! Every abstraction body is a scope. The abstraction itself is the door
//! in; each occurrence of an outer variable leaves through a delimiter of
//! index 0. Firing a redex removes the abstraction, so its result and its
//! argument get fresh index 0 delimiters in its place. A delimiter's
//! principal port faces out of its scope.
//!
//! Fans and delimiters carry an index. An abstraction always opens its
//! scope at index 0, so any indexed node crossing one is bumped; a
//! delimiter of index `i` bumps the nodes of index `i` or more that cross
//! it. Equal fans, and equal delimiters, annihilate. Any other meeting
//! with a fan or delimiter is a commutation. Reduction is lazy: only pairs
//! that normal order would need are rewritten (see [`needed_pairs`]).
//!
//! Port layout:
//!
//! | kind      | slot 0    | slot 1   | slot 2 |
//! |-----------|-----------|----------|--------|
//! | Lambda    | principal | body     | binder |
//! | Apply     | function  | argument | result |
//! | Fan       | principal | left     | right  |
//! | Delimiter | outside   | inside   |        |
//! | Eraser    | principal |          |        |
//! | Root      | term      |          |        |
//! | Free      | uses      |          |        |

mod dot;
mod readback;
mod rules;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Name, Term, Var};

pub use dot::to_dot;
pub use readback::{readback, readback_with_fuel};
pub use rules::{find_active_pairs, interact, needed_pairs, normalize, NormalizeOutcome, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub node: NodeId,
    pub slot: u8,
}

impl Port {
    pub fn new(node: NodeId, slot: u8) -> Self {
        Port { node, slot }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Root,
    Free,
    Lambda,
    Apply,
    Fan,
    Delimiter,
    Eraser,
}

impl NodeKind {
    pub fn arity(self) -> usize {
        match self {
            NodeKind::Root | NodeKind::Free | NodeKind::Eraser => 1,
            NodeKind::Delimiter => 2,
            NodeKind::Lambda | NodeKind::Apply | NodeKind::Fan => 3,
        }
    }

    pub fn has_principal(self) -> bool {
        !matches!(self, NodeKind::Root | NodeKind::Free)
    }

    /// Fans and delimiters.
    pub fn is_control(self) -> bool {
        matches!(self, NodeKind::Fan | NodeKind::Delimiter)
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Root => "root",
            NodeKind::Free => "free",
            NodeKind::Lambda => "lambda",
            NodeKind::Apply => "apply",
            NodeKind::Fan => "fan",
            NodeKind::Delimiter => "delimiter",
            NodeKind::Eraser => "eraser",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub level: u32,
    ports: [Port; 3],
    alive: bool,
    /// Allocation counter value; tells apart nodes that reuse an id.
    serial: u64,
    /// Set on `Free` anchors only.
    name: Option<Name>,
}

impl Node {
    pub fn peer(&self, slot: u8) -> Port {
        self.ports[slot as usize]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetStats {
    pub beta_interactions: u64,
    pub duplications: u64,
    pub annihilations: u64,
    pub bookkeeping_interactions: u64,
    pub peak_nodes: u64,
    pub total_interactions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("nodes {0:?} and {1:?} are not an active pair")]
    NotActive(NodeId, NodeId),
    #[error("no interaction rule for {a} at level {la} against {b} at level {lb}")]
    NoRule { a: NodeKind, la: u32, b: NodeKind, lb: u32 },
    #[error("net is not normal: {0} active pairs remain")]
    NotNormal(usize),
    #[error("readback failed: {0}")]
    Readback(String),
    #[error("readback gave up after {0} traversal steps")]
    ReadbackFuel(u64),
}

/// A sharing graph. Slot vectors are stable: node ids are reused only after
/// the node has been freed.
#[derive(Clone, Debug)]
pub struct Net {
    nodes: Vec<Node>,
    free_ids: Vec<NodeId>,
    root: NodeId,
    live: usize,
    serial: u64,
    pub(crate) peak: usize,
}

const DANGLING: Port = Port { node: NodeId(u32::MAX), slot: 0 };

impl Net {
    fn empty() -> Self {
        let mut net = Net {
            nodes: Vec::new(),
            free_ids: Vec::new(),
            root: NodeId(0),
            live: 0,
            serial: 0,
            peak: 0,
        };
        net.root = net.alloc(NodeKind::Root, 0);
        net
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0 as usize]
    }

    pub(crate) fn serial(&self, id: NodeId) -> u64 {
        self.node(id).serial
    }

    pub fn is_alive(&self, id: NodeId) -> bool {
        self.nodes.get(id.0 as usize).is_some_and(|n| n.alive)
    }

    pub fn peer(&self, p: Port) -> Port {
        self.nodes[p.node.0 as usize].ports[p.slot as usize]
    }

    /// Live node count, root included.
    pub fn node_count(&self) -> usize {
        self.live
    }

    /// Live node ids in increasing order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.alive)
            .map(|(i, _)| NodeId(i as u32))
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.node_ids().filter(|&id| self.node(id).kind == kind).count()
    }

    pub(crate) fn alloc(&mut self, kind: NodeKind, level: u32) -> NodeId {
        self.serial += 1;
        let node = Node { kind, level, ports: [DANGLING; 3], alive: true, serial: self.serial, name: None };
        self.live += 1;
        self.peak = self.peak.max(self.live);
        match self.free_ids.pop() {
            Some(id) => {
                self.nodes[id.0 as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                NodeId(self.nodes.len() as u32 - 1)
            }
        }
    }

    pub(crate) fn free(&mut self, id: NodeId) {
        let n = &mut self.nodes[id.0 as usize];
        debug_assert!(n.alive);
        n.alive = false;
        self.live -= 1;
        self.free_ids.push(id);
    }

    pub(crate) fn link(&mut self, a: Port, b: Port) {
        self.nodes[a.node.0 as usize].ports[a.slot as usize] = b;
        self.nodes[b.node.0 as usize].ports[b.slot as usize] = a;
    }

    /// Checks that wiring is a perfect matching over live ports.
    pub fn check_wiring(&self) -> Result<(), String> {
        for id in self.node_ids() {
            let n = self.node(id);
            for slot in 0..n.kind.arity() as u8 {
                let p = Port::new(id, slot);
                let q = self.peer(p);
                if q == DANGLING {
                    return Err(format!("{p:?} is dangling"));
                }
                if !self.is_alive(q.node) {
                    return Err(format!("{p:?} points at dead node {q:?}"));
                }
                if q.slot as usize >= self.node(q.node).kind.arity() {
                    return Err(format!("{p:?} points at missing slot {q:?}"));
                }
                if self.peer(q) != p {
                    return Err(format!("{p:?} -> {q:?} is not symmetric"));
                }
            }
        }
        Ok(())
    }

    /// Frees every node not connected to the root.
    pub fn collect_garbage(&mut self) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        seen[self.root.0 as usize] = true;
        while let Some(id) = stack.pop() {
            let n = self.node(id);
            for slot in 0..n.kind.arity() {
                let q = n.ports[slot].node;
                if !seen[q.0 as usize] {
                    seen[q.0 as usize] = true;
                    stack.push(q);
                }
            }
        }
        let dead: Vec<NodeId> = self.node_ids().filter(|id| !seen[id.0 as usize]).collect();
        for &id in &dead {
            self.free(id);
        }
        dead.len()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum VarKey {
    /// Binder depth counted from the outermost abstraction.
    Bound(usize),
    Free(Name),
}

struct Translator {
    net: Net,
}

impl Translator {
    /// Translates `t` below the port `up` and returns the ports that still
    /// have to reach the binders of its variable occurrences.
    fn term(&mut self, t: &Term, up: Port, depth: usize) -> Vec<(VarKey, Port)> {
        match t {
            Term::Var(v) => {
                let key = match v {
                    Var::Bound(i) => VarKey::Bound(depth - 1 - i),
                    Var::Free(n) => VarKey::Free(n.clone()),
                };
                vec![(key, up)]
            }
            Term::Abs(_, body) => {
                let lam = self.net.alloc(NodeKind::Lambda, 0);
                self.net.link(up, Port::new(lam, 0));
                let uses = self.term(body, Port::new(lam, 1), depth + 1);
                let (mine, rest): (Vec<_>, Vec<_>) =
                    uses.into_iter().partition(|(k, _)| *k == VarKey::Bound(depth));
                let shared = self.share(mine.into_iter().map(|(_, p)| p).collect());
                self.net.link(Port::new(lam, 2), shared);
                // Every occurrence of an outer variable leaves the body
                // through its own delimiter; sharing happens at the binder.
                rest.into_iter()
                    .map(|(k, p)| {
                        let d = self.net.alloc(NodeKind::Delimiter, 0);
                        self.net.link(Port::new(d, 1), p);
                        (k, Port::new(d, 0))
                    })
                    .collect()
            }
            Term::App(f, a) => {
                let app = self.net.alloc(NodeKind::Apply, 0);
                self.net.link(up, Port::new(app, 2));
                let mut uses = self.term(f, Port::new(app, 0), depth);
                uses.extend(self.term(a, Port::new(app, 1), depth));
                uses
            }
        }
    }

    /// Joins occurrence ports into one port facing the binder.
    fn share(&mut self, mut ports: Vec<Port>) -> Port {
        match ports.len() {
            0 => Port::new(self.net.alloc(NodeKind::Eraser, 0), 0),
            1 => ports[0],
            _ => {
                let first = ports.remove(0);
                let fan = self.net.alloc(NodeKind::Fan, 0);
                self.net.link(Port::new(fan, 1), first);
                let rest = self.share(ports);
                self.net.link(Port::new(fan, 2), rest);
                Port::new(fan, 0)
            }
        }
    }
}

/// Builds the sharing graph of a term. Free variables are anchored on
/// `Free` nodes, which never interact.
pub fn translate(t: &Term) -> Net {
    let mut tr = Translator { net: Net::empty() };
    let root = tr.net.root;
    let uses = tr.term(t, Port::new(root, 0), 0);
    let mut by_name: BTreeMap<Name, Vec<Port>> = BTreeMap::new();
    for (k, p) in uses {
        match k {
            VarKey::Free(n) => by_name.entry(n).or_default().push(p),
            VarKey::Bound(_) => unreachable!("term is not locally closed"),
        }
    }
    for (name, ports) in by_name {
        let anchor = tr.net.alloc(NodeKind::Free, 0);
        tr.net.nodes[anchor.0 as usize].name = Some(Arc::clone(&name));
        let shared = tr.share(ports);
        tr.net.link(Port::new(anchor, 0), shared);
    }
    tr.net
}

/// Result of running a term through the sharing-graph engine.
#[derive(Debug, Clone)]
pub struct OptimalOutcome {
    /// Read-back normal form, or `None` when fuel ran out.
    pub result: Option<Term>,
    pub stats: NetStats,
    pub status: crate::strategies::Status,
    pub readback_steps: u64,
}

/// Translate, normalize and read back.
pub fn reduce_optimal(t: &Term, fuel: u64, schedule: Schedule) -> Result<OptimalOutcome, NetError> {
    let mut net = translate(t);
    let out = normalize(&mut net, fuel, schedule)?;
    if out.status != crate::strategies::Status::Normalized {
        return Ok(OptimalOutcome { result: None, stats: out.stats, status: out.status, readback_steps: 0 });
    }
    let (term, steps) = readback_with_fuel(&net, fuel.max(1_000_000))?;
    Ok(OptimalOutcome { result: Some(term), stats: out.stats, status: out.status, readback_steps: steps })
}

#[cfg(test)]
mod tests;
