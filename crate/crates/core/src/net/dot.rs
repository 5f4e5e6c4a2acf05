use std::fmt::Write;

use super::{Net, NodeKind, Port};

/// Graphviz description of the net. Nodes are listed by id and each wire
/// once, so equal nets always print the same text.
pub fn to_dot(net: &Net) -> String {
    let mut out = String::from("graph net {\n  node [shape=box];\n");
    for id in net.node_ids() {
        let n = net.node(id);
        let label = match n.kind {
            NodeKind::Root | NodeKind::Eraser | NodeKind::Lambda | NodeKind::Apply => n.kind.name().to_string(),
            NodeKind::Free => format!("free {}", n.name().unwrap_or("?")),
            kind => format!("{} {}", kind.name(), n.level),
        };
        writeln!(out, "  n{} [label=\"{}\" kind={}];", id.0, label, n.kind.name()).unwrap();
    }
    for id in net.node_ids() {
        for slot in 0..net.node(id).kind.arity() as u8 {
            let here = Port::new(id, slot);
            let there = net.peer(here);
            if here < there {
                writeln!(
                    out,
                    "  n{} -- n{} [taillabel=\"{}\" headlabel=\"{}\"];",
                    here.node.0, there.node.0, here.slot, there.slot
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
