//! Principal types, degrees, and the parallel-step bound.

use lamlab::typing::{degree_of_term, infer_type, parallel_normalize};
use lamlab::{parse, DefinitionEnv};

pub fn main() {
    let env = DefinitionEnv::prelude();
    for src in ["I", "two", "two I", "(\\f x. f (f x)) (\\y. y) z", "two two I", "\\x. x x"] {
        let t = parse(src, &env).unwrap();
        let Ok(report) = degree_of_term(&t) else {
            println!("{src}: not simply typable");
            continue;
        };
        let (_, steps) = parallel_normalize(&t, 1_000).unwrap();
        println!(
            "{src}: {} | degree {} | {} parallel steps",
            infer_type(&t).unwrap(),
            report.degree,
            steps
        );
        for r in &report.redexes {
            println!("    redex at {} has type {} (degree {})", r.position, r.redex_type, r.degree);
        }
    }
}
