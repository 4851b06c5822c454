//! Differential monomials and polynomials over `Z[λ]`.
//!
//! Everything here is a pure value type. The only operator needed by the
//! rest of the crate is [`DiffPoly::apply_factor`], i.e. `(∂ − u + mλ)`,
//! which is built from differentiation, multiplication by `u`, and scaling.

mod intpoly;
mod monomial;
mod poly;

pub use intpoly::{IntPoly, LambdaPoly};
pub use monomial::DiffMonomial;
pub use poly::DiffPoly;

pub(crate) use monomial::factor_name;

/// `a · λ^e · π` as a one-term polynomial.
pub fn term(a: i64, lambda_exp: u32, orders: &[u32]) -> DiffPoly {
    DiffPoly::term(
        DiffMonomial::from_orders(orders.to_vec()),
        LambdaPoly::monomial(a, lambda_exp),
    )
}

/// Sums `term` specs, for compact literals in tests and examples.
pub fn poly_from_terms(terms: &[(i64, u32, &[u32])]) -> DiffPoly {
    terms
        .iter()
        .fold(DiffPoly::zero(), |acc, (a, e, o)| &acc + &term(*a, *e, o))
}
