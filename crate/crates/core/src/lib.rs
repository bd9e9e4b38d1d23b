//! Exact engine for finite group actions on compact Riemann surfaces.
//!
//! Given a finite permutation group `G` and a geometric signature
//! `(γ; [m₁, C₁], …, [m_t, C_t])` the crate decides whether an action with
//! that signature exists (by searching for a generating vector), describes
//! every intermediate cover `S/H → S/G` (genus, marked points, cycle
//! structure), and computes the isotypical decomposition of the induced
//! action on the Jacobian together with the dimensions of its isogeny
//! factors. Closed-form results are cross-checked against a combinatorial
//! monodromy computation on coset actions.
//!
//! All arithmetic is exact. The numeric layer is generic over [`Scalar`]
//! (any exact ordered field from `num-traits`); the aliases below fix the
//! default instantiation used by the rest of the engine.

pub mod char_table;
pub mod covers;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod jacobian;
mod modp;
pub mod monodromy;
pub mod report;
pub mod scalar;
pub mod signature;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Elements of `Q(ζ_n)` with arbitrary-precision rational coordinates.
pub type Cyclotomic = cyclotomic::CycloNumber<Rational>;
