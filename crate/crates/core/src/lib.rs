//! Exact computations on generalized flag manifolds `G/K` whose isotropy
//! representation splits into two irreducible summands `m1 ⊕ m2`.
//!
//! The crate is organized bottom-up:
//!
//! - [`rootsys`]: root systems of simple Lie types from their Cartan matrices,
//!   symmetrized inner products, Killing normalization, root strings.
//! - [`flagspace`]: painted Dynkin diagrams with one painted node of mark two,
//!   the induced grading of the positive roots and the isotropy dimensions.
//! - [`weights`]: fundamental-weight coordinates, highest weights of the
//!   isotropy summands and Weyl's dimension formula.
//! - [`einstein`]: scalar curvature of diagonal invariant metrics, the
//!   structure constant `[112]` and the two invariant Einstein metrics.
//! - [`hessian`]: bordered-Hessian classification of the Einstein metrics as
//!   constrained critical points, with an independent second-derivative check.
//! - [`cli`]: the `flagein` command-line front end and its report formats.
//!
//! All arithmetic is exact ([`Rational`] is an arbitrary-precision fraction);
//! floating point appears only in fields explicitly marked as approximations.

pub mod cli;
pub mod einstein;
pub mod error;
pub mod flagspace;
pub mod hessian;
pub mod rootsys;
pub mod weights;

pub use error::{Error, Result};

/// Arbitrary-precision exact rational number.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
