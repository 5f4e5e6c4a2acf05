use super::{Net, NetError, NetStats, NodeId, NodeKind, Port};
use crate::strategies::Status;

/// Order in which queued active pairs are rewritten.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Schedule {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizeOutcome {
    pub stats: NetStats,
    pub status: Status,
}

/// Every pair of nodes connected principal to principal, each pair listed
/// once with the smaller id first.
pub fn find_active_pairs(net: &Net) -> Vec<(NodeId, NodeId)> {
    net.node_ids()
        .filter_map(|a| {
            let p = net.peer(Port::new(a, 0));
            (net.node(a).kind.has_principal()
                && p.slot == 0
                && net.node(p.node).kind.has_principal()
                && a < p.node)
                .then_some((a, p.node))
        })
        .collect()
}

/// Active pairs on the path readback would take, restricted the way normal
/// order restricts redexes: an application's argument is only looked at
/// once nothing more is pending in its function part. Everything else is
/// either not needed yet or garbage (an erased argument whose eraser is
/// stuck on an auxiliary port, say). Leaving it alone keeps erased
/// divergent terms from consuming fuel and keeps beta interactions down to
/// the redex families normal order would contract. Pairs come in walk
/// order.
pub fn needed_pairs(net: &Net) -> Vec<(NodeId, NodeId)> {
    enum Step {
        Exit(Port),
        /// Walk an argument if nothing was found since `mark`.
        Argument(Port, usize),
    }
    let mut seen = vec![0u8; net.nodes.len()];
    let mut found = Vec::new();
    let mut steps = vec![Step::Exit(Port::new(net.root(), 0))];
    while let Some(step) = steps.pop() {
        let from = match step {
            Step::Exit(p) => p,
            Step::Argument(p, mark) if found.len() == mark => p,
            Step::Argument(..) => continue,
        };
        let to = net.peer(from);
        let from_kind = net.node(from.node).kind;
        let to_kind = net.node(to.node).kind;
        if from.slot == 0 && to.slot == 0 && from_kind.has_principal() && to_kind.has_principal() {
            // Both nodes get their principal bit so the pair is listed once.
            let (a, b) = (from.node.0 as usize, to.node.0 as usize);
            if seen[a] & 1 == 0 || seen[b] & 1 == 0 {
                seen[a] |= 1;
                seen[b] |= 1;
                found.push((from.node.min(to.node), from.node.max(to.node)));
            }
            continue;
        }
        let bit = 1u8 << to.slot;
        let mark = &mut seen[to.node.0 as usize];
        if *mark & bit != 0 {
            continue;
        }
        *mark |= bit;
        let id = to.node;
        use NodeKind::*;
        match (to_kind, to.slot) {
            (Lambda, 0) | (Delimiter, 0) => steps.push(Step::Exit(Port::new(id, 1))),
            (Apply, 2) => {
                steps.push(Step::Argument(Port::new(id, 1), found.len()));
                steps.push(Step::Exit(Port::new(id, 0)));
            }
            (Fan, 1 | 2) | (Delimiter, 1) => steps.push(Step::Exit(Port::new(id, 0))),
            (Fan, 0) => {
                steps.push(Step::Exit(Port::new(id, 2)));
                steps.push(Step::Exit(Port::new(id, 1)));
            }
            _ => {}
        }
    }
    found
}

fn is_active(net: &Net, a: NodeId, b: NodeId) -> bool {
    net.is_alive(a)
        && net.is_alive(b)
        && a != b
        && net.node(a).kind.has_principal()
        && net.node(b).kind.has_principal()
        && net.peer(Port::new(a, 0)) == Port::new(b, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Beta,
    Annihilate,
    Erase,
    Commute,
}

fn select_rule(net: &Net, a: NodeId, b: NodeId) -> Result<Rule, NetError> {
    let (na, nb) = (net.node(a), net.node(b));
    let no_rule = || NetError::NoRule { a: na.kind, la: na.level, b: nb.kind, lb: nb.level };
    use NodeKind::*;
    match (na.kind, nb.kind) {
        (Eraser, _) | (_, Eraser) => Ok(Rule::Erase),
        (Lambda, Apply) | (Apply, Lambda) => Ok(Rule::Beta),
        (Fan, Fan) | (Delimiter, Delimiter) if na.level == nb.level => Ok(Rule::Annihilate),
        (Fan | Delimiter, _) | (_, Fan | Delimiter) => Ok(Rule::Commute),
        _ => Err(no_rule()),
    }
}

/// Connects whatever is attached to `x` with whatever is attached to `y`.
/// Both are ports of nodes about to be freed; reading the peers at call time
/// lets a sequence of fusions resolve wires that loop between dying nodes.
fn fuse(net: &mut Net, x: Port, y: Port) {
    let px = net.peer(x);
    let py = net.peer(y);
    if px == y {
        return;
    }
    net.link(px, py);
}

/// Index of a copy of `node` after it crossed `other`. Abstractions open a
/// fresh scope at index 0, so every indexed node crossing one is bumped;
/// a delimiter of index `i` bumps indices at or above `i`. Abstractions and
/// applications carry no index of their own.
fn shifted(node: &super::Node, other: &super::Node) -> u32 {
    if !node.kind.is_control() {
        return node.level;
    }
    match other.kind {
        NodeKind::Lambda => node.level + 1,
        NodeKind::Delimiter if node.level >= other.level => node.level + 1,
        _ => node.level,
    }
}

/// Applies the rule for one active pair.
pub fn interact(net: &mut Net, a: NodeId, b: NodeId, stats: &mut NetStats) -> Result<(), NetError> {
    if !is_active(net, a, b) {
        return Err(NetError::NotActive(a, b));
    }
    match select_rule(net, a, b)? {
        Rule::Beta => {
            let (lam, app) = if net.node(a).kind == NodeKind::Lambda { (a, b) } else { (b, a) };
            let level = 0;
            // The former body becomes a scope: its result and its variable
            // both reach the outside through fresh delimiters. An unused
            // variable lets the eraser meet the argument directly.
            let body = Port::new(lam, 1);
            let var = Port::new(lam, 2);
            let res = net.peer(Port::new(app, 2));
            let d = net.alloc(NodeKind::Delimiter, level);
            net.link(Port::new(d, 0), res);
            let inner = net.peer(body);
            net.link(Port::new(d, 1), inner);
            let binder = net.peer(var);
            let arg = net.peer(Port::new(app, 1));
            if net.node(binder.node).kind == NodeKind::Eraser {
                net.link(binder, arg);
            } else {
                let e = net.alloc(NodeKind::Delimiter, level);
                net.link(Port::new(e, 0), arg);
                let binder = net.peer(var);
                net.link(Port::new(e, 1), binder);
            }
            net.free(lam);
            net.free(app);
            stats.beta_interactions += 1;
        }
        Rule::Annihilate => {
            for slot in 1..net.node(a).kind.arity() as u8 {
                fuse(net, Port::new(a, slot), Port::new(b, slot));
            }
            net.free(a);
            net.free(b);
            stats.annihilations += 1;
        }
        Rule::Erase => {
            let (er, other) = if net.node(a).kind == NodeKind::Eraser { (a, b) } else { (b, a) };
            for slot in 1..net.node(other).kind.arity() as u8 {
                let e = net.alloc(NodeKind::Eraser, 0);
                let p = net.peer(Port::new(other, slot));
                net.link(Port::new(e, 0), p);
            }
            net.free(er);
            net.free(other);
            stats.annihilations += 1;
        }
        Rule::Commute => {
            let (na, nb) = (net.node(a).clone(), net.node(b).clone());
            let (la, lb) = (shifted(&na, &nb), shifted(&nb, &na));
            let a_aux = na.kind.arity() as u8 - 1;
            let b_aux = nb.kind.arity() as u8 - 1;
            // One copy of `b` per auxiliary port of `a` and vice versa; copies
            // face outwards and their auxiliary ports are cross-linked.
            let bs: Vec<NodeId> = (0..a_aux).map(|_| net.alloc(nb.kind, lb)).collect();
            let as_: Vec<NodeId> = (0..b_aux).map(|_| net.alloc(na.kind, la)).collect();
            for (i, &c) in bs.iter().enumerate() {
                let p = net.peer(Port::new(a, i as u8 + 1));
                net.link(Port::new(c, 0), p);
            }
            for (j, &c) in as_.iter().enumerate() {
                let p = net.peer(Port::new(b, j as u8 + 1));
                net.link(Port::new(c, 0), p);
            }
            for (i, &x) in bs.iter().enumerate() {
                for (j, &y) in as_.iter().enumerate() {
                    net.link(Port::new(x, j as u8 + 1), Port::new(y, i as u8 + 1));
                }
            }
            net.free(a);
            net.free(b);
            if na.kind == NodeKind::Delimiter || nb.kind == NodeKind::Delimiter {
                stats.bookkeeping_interactions += 1;
            } else {
                stats.duplications += 1;
            }
        }
    }
    stats.total_interactions += 1;
    Ok(())
}

/// Rewrites needed active pairs until none remain or `fuel` interactions
/// have been performed, then frees everything disconnected from the root.
///
/// Work proceeds in rounds: each round collects the needed pairs and fires
/// them in walk order (`Fifo`) or reverse walk order (`Lifo`).
pub fn normalize(net: &mut Net, fuel: u64, schedule: Schedule) -> Result<NormalizeOutcome, NetError> {
    assert!(fuel > 0, "fuel must be positive");
    let mut stats = NetStats::default();
    net.peak = net.node_count();
    let status = 'rounds: loop {
        let mut round = needed_pairs(net);
        if round.is_empty() {
            break Status::Normalized;
        }
        if schedule == Schedule::Lifo {
            round.reverse();
        }
        // Ids are recycled, so remember who was paired with whom.
        let stamps: Vec<_> = round.iter().map(|&(a, b)| (net.serial(a), net.serial(b))).collect();
        for (&(a, b), &(sa, sb)) in round.iter().zip(&stamps) {
            if net.serial(a) != sa || net.serial(b) != sb || !is_active(net, a, b) {
                continue;
            }
            if stats.total_interactions >= fuel {
                break 'rounds Status::FuelExhausted;
            }
            interact(net, a, b, &mut stats)?;
        }
    };
    if status == Status::Normalized {
        net.collect_garbage();
    }
    stats.peak_nodes = net.peak as u64;
    Ok(NormalizeOutcome { stats, status })
}
