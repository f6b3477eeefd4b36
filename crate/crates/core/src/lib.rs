//! Equalisers of marked free-monoid morphisms and free-group immersions.
//!
//! The crate decides the (simultaneous) Post Correspondence Problem for
//! marked morphisms `Σ* → Δ*` and for immersions `F(Σ) → F(Δ)`, and returns
//! the equaliser as the image of an explicitly constructed marked morphism
//! (or immersion) `ψ`. The monoid solver iterates block reductions, the group
//! solver iterates core-graph reductions built from Stallings graphs; both
//! stop on a small alphabet, on unit-length images, or on a repeated
//! instance, and compose the reduction trail into `ψ`.
//!
//! [`oracle`] is an independent brute-force check of every solver output on
//! a ball of words, and [`density`] counts how common marked morphisms and
//! immersions are.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod density;
mod equaliser;
mod error;
pub mod group;
pub mod monoid;
mod morphism;
pub mod oracle;
pub mod random;
pub mod stallings;
mod words;

pub use equaliser::{CanonicalInstance, EqualiserResult, Instance, ReductionStep, StepWitness, TerminationCase};
pub use error::Error;
pub use morphism::{ImmersionTest, MarkingDefect, Morphism};
pub use words::{Alphabet, Letter, Mode, Word};

pub type Result<T, E = Error> = core::result::Result<T, E>;
