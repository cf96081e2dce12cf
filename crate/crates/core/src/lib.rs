//! Computational toolkit for type systems on the infinite binary tree and for
//! the subgroups of Thompson's group V that preserve them.
//!
//! The crate is organized bottom-up:
//!
//! * [`address`] — finite binary words, cone antichains, cone partitions.
//! * [`element`] — elements of V as prefix substitution maps.
//! * [`diagram`] — label diagrams, type systems, reduction and quotients.
//! * [`classify`] — type graphs, eventual labels, nuclei, tail points.
//! * [`matrix`] — exact integer matrices, determinants, Smith normal form.
//! * [`semigroup`] — type semigroup invariants and s-types of clopen sets.
//! * [`membership`] — Fix/Stab membership tests and conjugator witnesses.
//! * [`census`] — exhaustive enumeration of small type systems.
//! * [`family`] — a lazily evaluated infinite family of type systems.
//! * [`systems`] — a gallery of named example systems.
//! * [`sample`] — seeded random generators for property suites.

pub mod address;
pub mod census;
pub mod classify;
pub mod diagram;
pub mod element;
pub mod family;
pub mod matrix;
pub mod membership;
pub mod sample;
pub mod semigroup;
pub mod systems;
