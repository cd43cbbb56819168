//! Error-correcting codes for channels that apply any number of short
//! tandem duplications (length <= 3) and a bounded number of edits.
//!
//! The crate provides the sequence algebra (repeats, roots, channels), the
//! combinatorial machinery (the `D*(01234)` automaton, window root tables,
//! confusable-set enumeration, constrained counting over irreducible
//! strings), a Reed-Solomon-backed auxiliary code protecting syndrome
//! payloads, and the top-level syndrome-compression codecs.

pub mod automaton;
pub mod auxcode;
pub mod channel;
pub mod codec;
pub mod confusable;
pub mod constrained;
pub mod edits;
pub mod error;
pub mod gf;
pub mod parallel;
pub mod rs;
pub mod seq;

pub use error::{Error, Result};
