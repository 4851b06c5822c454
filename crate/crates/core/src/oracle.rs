//! Brute-force reference computations.
//!
//! These deliberately avoid the production routes they are compared with:
//! `S(n, α)` by subset enumeration instead of the recurrence, differential
//! words by walking every product-rule choice instead of expanding
//! polynomials, and composition counts by stars and bars.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diffalg::{DiffMonomial, DiffPoly, LambdaPoly};

/// `S(n, α)` as a literal sum over `α`-subsets of `{1, …, n}` (bitmasks).
pub fn sum_of_products_by_subsets(n: u32, alpha: u32) -> BigInt {
    assert!(n <= 24, "subset enumeration is exponential in n");
    let mut acc = BigInt::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != alpha {
            continue;
        }
        let prod: BigInt = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| BigInt::from(i + 1))
            .product();
        acc += prod;
    }
    acc
}

/// Expands `w(β)` by enumerating every way to distribute each derivative
/// onto one of the factors present at that moment. Each leaf is one path;
/// the multiplicity of a monomial is its number of paths.
pub fn word_by_choice_paths(beta: &[u32]) -> DiffPoly {
    fn walk(beta: &[u32], stage: usize, left: u32, factors: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, u64>) {
        if left > 0 {
            for i in 0..factors.len() {
                factors[i] += 1;
                walk(beta, stage, left - 1, factors, out);
                factors[i] -= 1;
            }
            return;
        }
        if stage + 1 == beta.len() {
            let mut key = factors.clone();
            key.sort_unstable();
            *out.entry(key).or_default() += 1;
            return;
        }
        factors.push(0);
        walk(beta, stage + 1, beta[stage + 1], factors, out);
        factors.pop();
    }
    let mut counts = BTreeMap::new();
    if !beta.is_empty() {
        walk(beta, 0, beta[0], &mut vec![0], &mut counts);
    }
    let mut p = DiffPoly::zero();
    for (orders, c) in counts {
        p.add_term(DiffMonomial::from_orders(orders), &LambdaPoly::constant(c));
    }
    p
}

/// `|Z_{j,α,k}| = C(α + j − k, j − k)`, via factorials.
pub fn stars_and_bars(j: u32, alpha: u32, k: u32) -> BigInt {
    let fact = |n: u32| -> BigInt { (1..=n).map(BigInt::from).product() };
    let bars = j - k;
    fact(alpha + bars) / (fact(alpha) * fact(bars))
}

/// `∂(p·q) = ∂p·q + p·∂q` using full polynomial multiplication.
pub fn product_derivative(p: &DiffPoly, q: &DiffPoly) -> DiffPoly {
    &(&p.differentiate() * q) + &(p * &q.differentiate())
}

/// `(∂ − u + mλ)` acting on `p`, with `u·p` formed by general
/// multiplication rather than monomial insertion.
pub fn apply_factor_by_product(p: &DiffPoly, m: u32) -> DiffPoly {
    let u_times = &DiffPoly::u() * p;
    let m_lambda = p.scale(&LambdaPoly::monomial(m, 1));
    &(&p.differentiate() - &u_times) + &m_lambda
}

/// `n!` by repeated multiplication.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}
