//! A lambda-calculus reduction laboratory.
//!
//! The crate bundles several ways of normalizing the same pure lambda terms
//! so their costs can be compared side by side:
//!
//! * [`strategies`]: leftmost-outermost and rightmost-innermost tree
//!   reducers, and a weak environment machine (call-by-name / call-by-need);
//! * [`typing`]: simple types, the degree measure, and parallel reduction;
//! * [`levy`]: a labeled calculus that names redex families;
//! * [`net`]: a sharing-graph reducer with leveled fans and delimiters;
//! * [`bench`]: benchmark tables and the commands behind the `lamlab` binary.

pub mod bench;
pub mod corpus;
pub mod levy;
pub mod net;
pub mod strategies;
pub mod syntax;
pub mod term;
pub mod typing;

pub use syntax::{parse, pretty, DefinitionEnv, ParseError};
pub use term::{Dir, Name, Position, Term, Var};
