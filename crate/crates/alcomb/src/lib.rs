//! Exact combinatorics of affine Weyl alcoves.
//!
//! Everything here is computed in exact integer arithmetic: sparse Laurent
//! polynomials over arbitrary-precision integers, truncated formal character
//! series, and combinatorial searches over finite Weyl groups and alcove
//! windows. The crate is organized bottom-up:
//!
//! * [`rootdata`] — Cartan data, the finite Weyl group, coroots and Bruhat order;
//! * [`exactalg`] — Laurent polynomials and truncated character series;
//! * [`kostant`] — partitions into positive coroots and their q-analogue;
//! * [`alcoves`] — the alcove model `(w, chi)`, distance, and the alcove order
//!   decided by two independent algorithms;
//! * [`hecke`] — the affine Hecke algebra, bar involution and self-dual basis;
//! * [`periodic`] — the completed periodic module, generic Kazhdan-Lusztig
//!   polynomials and their closed-form anchor;
//! * [`icstalks`] — stalk generating functions assembled by factorization;
//! * [`globalcoh`] — global intersection-cohomology Poincare series.
//!
//! All public containers iterate in a fixed monomial order, so output is
//! byte-stable across runs.

pub mod alcoves;
pub mod error;
pub mod exactalg;
pub mod globalcoh;
pub mod hecke;
pub mod icstalks;
pub mod kostant;
pub mod periodic;
pub mod rootdata;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
