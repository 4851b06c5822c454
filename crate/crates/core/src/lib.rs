//! Exact differential algebra for the Kuchment-Lvin polynomials
//! `f_{n,λ}(u) = uⁿ + Σ_{k=0}^{n−1} C(n,k) ∏_{m=0}^{n−k−1} (∂ − u + mλ) u^k`.
//!
//! * [`diffalg`]: differential monomials and polynomials over `Z[λ]`.
//! * [`combinatorics`]: compositions, differential words, densities,
//!   weights, sums of products and the binomial convolution.
//! * [`klpoly`]: the polynomials themselves, built two independent ways,
//!   their coefficient sums, and the linear part with its factorization.
//! * [`reductions`]: exact quotient checks of the vanishing identities,
//!   numeric spot checks, and the root-of-unity analysis.
//! * [`oracle`]: brute-force reference computations used by the tests and
//!   the verification CLI.
//!
//! All arithmetic is arbitrary precision; λ is a formal variable everywhere
//! except the numeric evaluators in [`reductions`].

pub mod combinatorics;
pub mod diffalg;
pub mod error;
pub mod klpoly;
pub mod oracle;
pub mod reductions;

pub use combinatorics::Composition;
pub use diffalg::{DiffMonomial, DiffPoly, IntPoly, LambdaPoly};
pub use error::{Error, Result};
pub use klpoly::{KLExpansion, LinearPart, Provenance};
pub use reductions::{BivariatePoly, ExpSolution, PolyInU};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
