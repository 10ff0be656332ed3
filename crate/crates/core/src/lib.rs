//! Reflexive digraph toolkit: words over `{+, -, *}`, homomorphism search,
//! universal covers of cycles, the path condition and a search for
//! surjective polymorphisms that are not essentially unary.
//!
//! Everything here is `no_std` with `alloc`. IO, reports and the command
//! line live in the `reflexive` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
#[macro_use]
extern crate std;

pub mod bitset;
pub mod cover;
pub mod digraph;
mod error;
pub mod homsearch;
pub mod pathcond;
pub mod slupecki;
pub mod words;

pub use bitset::Bitset;
pub use digraph::{CycleId, Digraph, Product};
pub use error::Error;
pub use homsearch::{Homomorphism, PinSet};
pub use slupecki::{OperationTable, SlupeckiOutcome};
pub use words::{Symbol, Word};

pub type Result<T, E = Error> = core::result::Result<T, E>;
