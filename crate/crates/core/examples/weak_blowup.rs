//! `church(n) two I I`: weak evaluators duplicate the identity applications
//! hidden under `two`, innermost reduction does not.

use lamlab::corpus::term1;
use lamlab::strategies::{evaluate_weak, reduce_applicative, reduce_normal_order, WeakMode};

const FUEL: u64 = 10_000_000;

pub fn main() {
    println!("{:>3} {:>10} {:>10} {:>12} {:>8}", "n", "by-name", "by-need", "applicative", "normal");
    for n in 1..=10 {
        let t = term1(n);
        let name = evaluate_weak(&t, WeakMode::ByName, FUEL).stats.identity_firings;
        let need = evaluate_weak(&t, WeakMode::ByNeed, FUEL).stats.identity_firings;
        let app = reduce_applicative(&t, FUEL).stats.beta_steps;
        let normal = reduce_normal_order(&t, FUEL).stats.beta_steps;
        println!("{n:>3} {name:>10} {need:>10} {app:>12} {normal:>8}");
    }
    println!("(identity firings for the weak machines, beta steps for the others)");
}
