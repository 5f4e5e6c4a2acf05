//! `I (church(n) two) I I`: innermost reduction first normalizes
//! `church(n) two`, the numeral for 2^n, and the term gets that big.

use lamlab::corpus::term2;
use lamlab::strategies::{reduce_applicative, reduce_normal_order};

pub fn main() {
    for n in 1..=8 {
        let t = term2(n);
        let inner = reduce_applicative(&t, 10_000_000);
        let outer = reduce_normal_order(&t, 10_000_000);
        println!(
            "n={n}: applicative peak size {:>5} ({} steps), normal order {} steps, 2^n = {}",
            inner.stats.peak_term_size,
            inner.stats.beta_steps,
            outer.stats.beta_steps,
            1u64 << n
        );
    }
}
