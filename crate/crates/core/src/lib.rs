//! Configuration machines over natural-number codes.
//!
//! Every machine here is arithmetic: configurations are pairs of naturals,
//! programs are naturals read through a primitive pairing, and a run is the
//! iteration of one step function until the fetched instruction is `0`.
//!
//! * [`pairing`]: Cantor pairing, list codes and the component operation.
//! * [`machine`]: the generic step/run/trace semantics.
//! * [`counter`]: the unlimited-register (URCM) and abacus (ACM) machines.
//! * [`turing`]: the Turing configuration machine (TCM).
//! * [`oracle`]: direct interpreters used as references.
//! * [`differential`]: seeded random comparisons against the references.

mod asm;
pub mod counter;
pub mod differential;
pub mod error;
pub mod machine;
pub mod oracle;
pub mod pairing;
pub mod turing;

pub use asm::Assembled;
pub use error::{Error, Result};
pub use machine::{Config, Evaluation, Machine, Program, RunOutcome};
pub use pairing::{Codec, FiniteSeq, Nat};
