//! Graphviz output of a net before and after normalization.
//! Pipe it to `dot -Tsvg` to look at it.

use lamlab::net::{normalize, to_dot, translate, Schedule};
use lamlab::{parse, DefinitionEnv};

pub fn main() {
    let t = parse("(\\x. x x) (\\y. y)", &DefinitionEnv::prelude()).unwrap();
    let mut net = translate(&t);
    print!("{}", to_dot(&net));
    normalize(&mut net, 1_000, Schedule::Fifo).unwrap();
    print!("{}", to_dot(&net));
}
