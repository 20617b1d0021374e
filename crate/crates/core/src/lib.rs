//! Maximality of subfield cliques in Cayley graphs over finite fields.
//!
//! - [`ff`]: GF(p^e) with exp/log tables, subfields, degrees over subfields.
//! - [`cayley`]: generalized Paley / Peisert / residue-class Cayley graphs,
//!   clique predicates, maximality witnesses, exact clique search.
//! - [`charsum`]: order-d characters, affine-line character sums, the Katz
//!   bound check and lower-boundedness constants.
//! - [`verify`]: per-case verdicts, conjecture instances and sweeps.
//! - [`cli`]: the `cayley-cliques` command line.

pub mod cayley;
pub mod charsum;
pub mod cli;
pub mod error;
pub mod ff;
pub mod verify;

pub use error::{Error, Result};
