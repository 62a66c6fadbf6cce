//! Core algorithms for working with finitely generated one-relator groups.
//!
//! The crate is organised around the pipeline a desk computation follows:
//!
//! * [`word`] — exact free-group word arithmetic (reduction, cyclic
//!   reduction, exponent sums, primitive roots, substitution);
//! * [`presentation`] — finite presentations, their text grammar, and
//!   abelian invariants;
//! * [`snf`] — integer matrix normal forms backing the abelian computations;
//! * [`tietze`] — budgeted presentation simplification;
//! * [`magnus`] — the Case 1 / Case 2 relator rewriting recursion and the
//!   hierarchy it generates;
//! * [`complex`] — finite 2-dimensional CW-complexes and their surgery
//!   (internal collapses/expansions, tree rerouting);
//! * [`cayley`] — bounded word-problem oracle, Cayley graph/complex balls,
//!   generator-subset forest probes, and the ends estimator;
//! * [`towers`] — towers of presented groups, fundamental-group towers of
//!   ball complements, and semistability evidence.
//!
//! Everything here is pure: operations take immutable values and return new
//! ones, so concurrent use needs no coordination. The crate is `no_std`
//! (with `alloc`); IO, serialization, and the command-line front end live in
//! the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cayley;
pub mod complex;
pub mod magnus;
pub mod presentation;
pub mod snf;
pub mod tietze;
pub mod towers;
pub mod word;

pub use presentation::Presentation;
pub use word::{Alphabet, Generator, Letter, Word};
