//! Constant-term sequences, Lucas-type congruences and linear p-schemes.

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod laurent;
pub mod oracles;
pub mod parse;
pub mod polytope;
pub mod pscheme;
pub mod report;
pub mod sequences;

pub use arith::{Modulus, Prime};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Monomial};
pub use parse::{parse_str, Variables};
pub use report::{CongruenceReport, Counterexample, ReportKind, Verdict};
pub use sequences::{ct_sequence, CtSpec, SequenceWindow};
