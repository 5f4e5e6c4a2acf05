//! The sharing-graph reducer: translate, normalize, read back, and compare
//! its beta interactions with the number of redex families.

use lamlab::corpus::{delta_f_i, term1};
use lamlab::levy::{count_families, FamilyStrategy};
use lamlab::net::{normalize, readback, reduce_optimal, translate, Schedule};
use lamlab::pretty;

pub fn main() {
    // Step by step.
    let t = delta_f_i();
    let mut net = translate(&t);
    println!("{} -> {} nodes", pretty(&t), net.node_count());
    let out = normalize(&mut net, 1_000_000, Schedule::Fifo).unwrap();
    println!("normal net: {} nodes, {:?}", net.node_count(), out.stats);
    println!("reads back as {}", pretty(&readback(&net).unwrap()));

    // One beta interaction per family; bookkeeping stays polynomial.
    println!("\n{:>3} {:>6} {:>9} {:>12} {:>5}", "n", "betas", "families", "bookkeeping", "dups");
    for n in 1..=8 {
        let t = term1(n);
        let o = reduce_optimal(&t, 10_000_000, Schedule::Fifo).unwrap();
        let f = count_families(&t, FamilyStrategy::Leftmost, 1_000_000).unwrap();
        let s = o.stats;
        println!(
            "{n:>3} {:>6} {:>9} {:>12} {:>5}",
            s.beta_interactions, f.distinct_families, s.bookkeeping_interactions, s.duplications
        );
    }
}
