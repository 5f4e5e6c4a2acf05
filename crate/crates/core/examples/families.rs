//! Redex families in the labeled calculus. Sharing `F I` before duplicating
//! it saves one family compared with writing out both copies.

use lamlab::corpus::{delta_f_i, f_i_f_i};
use lamlab::levy::{count_families, FamilyStrategy};
use lamlab::pretty;

pub fn main() {
    for t in [delta_f_i(), f_i_f_i()] {
        let report = count_families(&t, FamilyStrategy::Leftmost, 10_000).unwrap();
        println!("{}", pretty(&t));
        println!("  normal form      {}", pretty(&report.normal_form));
        println!("  distinct families {}", report.distinct_families);
        println!("  beta firings      {}", report.beta_firings);
        for name in &report.fired_redex_names {
            println!("    fired {name}");
        }
    }
}
