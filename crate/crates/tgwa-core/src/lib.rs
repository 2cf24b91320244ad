//! Exact symbolic computation for twisted generalized Weyl algebras (TGWAs).
//!
//! A TGW datum is a quadruple `(R, σ, t, μ)`: a commutative base ring `R`
//! (here always a polynomial ring over the rationals), `n` commuting
//! automorphisms `σ_1, …, σ_n` of `R`, distinguished nonzero elements
//! `t_1, …, t_n` of `R`, and a matrix `μ` of nonzero rational scalars.
//! The associated algebra is generated over `R` by `X_i, Y_i` subject to
//!
//! ```text
//! X_i r = σ_i(r) X_i,   Y_i r = σ_i⁻¹(r) Y_i,
//! Y_i X_i = t_i,        X_i Y_i = σ_i(t_i),
//! X_i Y_j = μ_ij Y_j X_i   (i ≠ j),
//! ```
//!
//! graded by `Z^n`, and then divided by the largest graded ideal meeting `R`
//! trivially. This crate constructs these algebras exactly, computes normal
//! forms, decides zero/equality in the quotient through the gradation form,
//! and decides structural properties: consistency, the kernel of the grading
//! action, finitistic type and generalized Cartan matrix, commutativity of
//! the centralizer of `R`, and simplicity.
//!
//! All arithmetic is exact (arbitrary-precision rationals); every decision
//! procedure returns `Yes` with a certificate, `No` with a witness, or an
//! honest `Unknown`.

pub mod analysis;
pub mod arith;
pub mod cartan;
pub mod endo;
pub mod error;
pub mod groebner;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod simplicity;
pub mod tgw;
#[cfg(test)]
pub(crate) mod testdata;
pub mod univar;
pub mod verdict;

pub use arith::{Lattice, Rat, RatMatrix};
pub use endo::{Endo, Family};
pub use error::Error;
pub use poly::Poly;
pub use tgw::{Algebra, Element, Gen, Letter, RedWord, TgwDatum, ValidationReport};
pub use verdict::{Outcome, Verdict};
