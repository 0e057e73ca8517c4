//! Exact-arithmetic building blocks for verifying explicit constructions in
//! the arithmetic of finite group schemes:
//!
//! * finite fields `GF(p^r)` with Frobenius ([`field`]),
//! * tensor products of finite fields as quotient algebras ([`tensor`]),
//! * universal Witt addition polynomials and truncated Witt vectors ([`witt`]),
//! * Galois rings `W_m(GF(p^r))` at finite precision ([`galois_ring`]),
//! * monomial coordinate rings with `X_i^p = d_i X_{i+1}` rewriting ([`algebra`]),
//! * Witt covector groups over those rings ([`covector`]),
//! * group-scheme presentations, their comultiplication and Dieudonne
//!   modules, and the associated Honda systems ([`raynaud`], [`honda`]),
//! * self-extensions of the height-one/height-one semilinear module and the
//!   ramified-base module model ([`extdeform`]),
//! * structured pass/fail reports ([`report`]).
//!
//! Everything is immutable after construction and all operations are pure
//! functions; values can be shared freely across threads.

pub mod algebra;
pub mod covector;
pub mod extdeform;
pub mod field;
pub mod galois_ring;
pub mod honda;
pub mod linalg;
pub mod intpoly;
pub mod raynaud;
pub mod report;
pub mod tensor;
pub mod witt;
