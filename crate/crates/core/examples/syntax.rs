//! Parsing, printing, definition files and alpha-equivalence.

use lamlab::{parse, pretty, DefinitionEnv};

pub fn main() {
    let mut env = DefinitionEnv::prelude();
    env.load_definitions(
        "# the usual suspects\n\
         K = \\x y. x;\n\
         S = \\x y z. x z (y z);\n\
         SKK = S K K;",
    )
    .expect("definitions parse");

    let skk = parse("SKK", &env).unwrap();
    println!("SKK expands to {}", pretty(&skk));

    // Binder names are hints only: equality is alpha-equivalence.
    let a = parse("\\x.\\y.x", &env).unwrap();
    let b = parse("\\p q.p", &env).unwrap();
    println!("\\x.\\y.x == \\p q.p: {}", a == b);

    // Church numerals have their own syntax.
    println!("church 3 = {}", pretty(&parse("church 3", &env).unwrap()));

    match parse("(\\x. x", &env) {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad input: {e}"),
    }
}
