//! Bounded chain complexes and binary chain complexes of finitely generated
//! free modules over concrete exact rings, together with the validators and
//! evaluators for the group presentations they generate.
//!
//! The crate is organised around a small tower:
//!
//! * [`ring`] and [`matrix`]: exact arithmetic (prime fields, finite field
//!   extensions, rationals, integers) and dense matrices with rank/kernel,
//!   fraction-free determinants and Smith normal form.
//! * [`complex`]: bounded chain complexes, homology, cones, shifts, direct
//!   sums and the naive filtration.
//! * [`binary`]: binary chain complexes (one graded object, two
//!   differentials), short exact sequences, the doubling functor `H`, and
//!   double short exact sequences with their three-degree embedding.
//! * [`multicomplex`]: n-dimensional binary multicomplexes with per-axis
//!   validators and relation certifiers.
//! * [`torsion`]: torsion of based acyclic complexes over a field, the
//!   unit-valued class of an acyclic binary complex, and the determinant
//!   oracle for double short exact sequences.
//! * [`relative`]: exact functor descriptions, generator triples `(M, N, u)`,
//!   the boundary invariant and the relative class evaluator valued in
//!   `K*/k*`.
//! * [`payload`], [`gen`], [`suite`]: JSON wire formats, seeded random
//!   instance generators, and the self-test property suites behind the CLI.
//!
//! All values are immutable after construction and every operation is pure,
//! so everything here can be shared freely across threads. With the default
//! `parallel` feature the property suites fan out per-case via rayon; results
//! are merged by case index, so reports are identical either way.

pub mod binary;
pub mod complex;
pub mod gen;
pub mod matrix;
pub mod multicomplex;
pub mod payload;
pub mod relative;
pub mod report;
pub mod ring;
pub mod suite;
pub mod torsion;

pub use matrix::Matrix;
pub use ring::{Elem, Ring};
