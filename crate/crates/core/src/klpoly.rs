//! The Kuchment-Lvin polynomials
//! `f_{n,λ}(u) = uⁿ + Σ_{k=0}^{n−1} C(n,k) ∏_{m=0}^{n−k−1} (∂ − u + mλ) u^k`.
//!
//! Two independent constructions are provided: [`kl_direct`] applies the
//! operator factors literally, [`kl_closed_form`] assembles the coefficients
//! `C_π` from `S(n, α)` and product-rule coefficients. Their agreement is the
//! central oracle check of the crate.
//!
//! The coefficient formula carries the sign `(−1)^{j−k}` for `j − k`
//! multiplications by `−u`. (A statement of the k-th term expansion without
//! that sign does not match the direct construction.)

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{
    binomial, differential_word, enumerate_compositions, factorial, sign_pow, sum_of_products, weight_a_coefficients,
};
use crate::diffalg::{DiffMonomial, DiffPoly, IntPoly, LambdaPoly};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Direct,
    ClosedForm,
}

/// An expanded `f_{n,λ}(u)` together with how it was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KLExpansion {
    pub n: u32,
    pub provenance: Provenance,
    #[serde(rename = "terms")]
    pub poly: DiffPoly,
}

impl KLExpansion {
    /// Every monomial has `1 ≤ j ≤ n`, `α ≤ n − j`, and λ-exponent `n − j − α`.
    pub fn is_graded(&self) -> bool {
        is_graded(self.n, &self.poly)
    }
}

pub(crate) fn is_graded(n: u32, p: &DiffPoly) -> bool {
    p.terms().all(|(m, c)| {
        let j = m.degree() as u32;
        let a = m.order();
        j >= 1 && j + a <= n && c.terms().all(|(e, _)| e == n - j - a)
    })
}

fn require_n(op: &'static str, n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(invalid(op, format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// `C(n,k) · (∂ − u)(∂ − u + λ)···(∂ − u + (n−k−1)λ) u^k`, with the
/// `m = n−k−1` factor applied first.
pub fn kth_term(n: u32, k: u32) -> Result<DiffPoly> {
    if k >= n {
        return Err(invalid("kth_term", format!("need 0 ≤ k ≤ n − 1, got n = {n}, k = {k}")));
    }
    let mut p = DiffPoly::from_monomial(DiffMonomial::u_pow(k as usize));
    for m in (0..n - k).rev() {
        p = p.apply_factor(m);
    }
    Ok(p.scale_int(&binomial(n as u64, k as u64)))
}

/// `f_{n,λ}(u)` by literal operator application.
pub fn kl_direct(n: u32) -> Result<KLExpansion> {
    require_n("kl_direct", n, 1)?;
    let mut poly = DiffPoly::from_monomial(DiffMonomial::u_pow(n as usize));
    for k in 0..n {
        poly = &poly + &kth_term(n, k)?;
    }
    Ok(KLExpansion {
        n,
        provenance: Provenance::Direct,
        poly,
    })
}

/// `Σ_{β ∈ Z_{j,α,k}} w(β)` for `k = 1..=j`; index `k − 1`.
fn word_sums(j: usize, alpha: u32) -> Vec<DiffPoly> {
    (1..=j)
        .map(|k| {
            enumerate_compositions(j, alpha as i64, k)
                .expect("1 ≤ k ≤ j")
                .iter()
                .map(differential_word)
                .fold(DiffPoly::zero(), |acc, w| &acc + &w)
        })
        .collect()
}

fn coefficient_from_sums(n: u32, j: usize, alpha: u32, sums: &[DiffPoly], pi: &DiffMonomial) -> BigInt {
    let mut acc = BigInt::zero();
    for k in 0..=j {
        // The k = 0 summand reuses Z_{j,α,1}.
        let p_sum = sums[k.max(1) - 1].coeff(pi, 0);
        if p_sum.is_zero() {
            continue;
        }
        let s = sum_of_products(n as i64 - k as i64 - 1, n as i64 - j as i64 - alpha as i64);
        acc += sign_pow(j - k) * binomial(n as u64, k as u64) * s * p_sum;
    }
    acc
}

fn check_grid(op: &'static str, n: u32, j: usize, alpha: u32) -> Result<()> {
    require_n(op, n, 1)?;
    if j < 1 || j as u32 > n || alpha + j as u32 > n {
        return Err(invalid(
            op,
            format!("need 1 ≤ j ≤ n and 0 ≤ α ≤ n − j, got n = {n}, j = {j}, α = {alpha}"),
        ));
    }
    Ok(())
}

/// `C_π = Σ_{k=0}^{j} (−1)^{j−k} C(n,k) S(n−k−1, n−j−α) Σ_{β ∈ Z_{j,α,k}} P_{β,π}`.
pub fn coefficient_closed_form(n: u32, j: usize, alpha: u32, pi: &DiffMonomial) -> Result<BigInt> {
    check_grid("coefficient_closed_form", n, j, alpha)?;
    if pi.degree() != j || pi.order() != alpha {
        return Err(invalid(
            "coefficient_closed_form",
            format!("π = {pi} does not have degree {j} and order {alpha}"),
        ));
    }
    Ok(coefficient_from_sums(n, j, alpha, &word_sums(j, alpha), pi))
}

/// Calls `f(j, α, π, C_π)` over the whole `(j, α, π)` grid.
fn for_each_coefficient(n: u32, mut f: impl FnMut(usize, u32, &DiffMonomial, BigInt)) {
    for j in 1..=n as usize {
        for alpha in 0..=n - j as u32 {
            let sums = word_sums(j, alpha);
            for pi in DiffMonomial::all_with(j, alpha) {
                let c = coefficient_from_sums(n, j, alpha, &sums, &pi);
                f(j, alpha, &pi, c);
            }
        }
    }
}

/// `f_{n,λ}(u)` assembled from closed-form coefficients.
pub fn kl_closed_form(n: u32) -> Result<KLExpansion> {
    require_n("kl_closed_form", n, 1)?;
    let mut poly = DiffPoly::zero();
    for_each_coefficient(n, |j, alpha, pi, c| {
        poly.add_term(pi.clone(), &LambdaPoly::monomial(c, n - j as u32 - alpha));
    });
    Ok(KLExpansion {
        n,
        provenance: Provenance::ClosedForm,
        poly,
    })
}

/// `C*_j = Σ_α Σ_{π ∈ Π_{j,α}} C_π`, over every `π`, from closed-form
/// coefficients.
pub fn c_star(n: u32, j: usize) -> Result<BigInt> {
    check_grid("c_star", n, j, 0)?;
    let mut acc = BigInt::zero();
    for alpha in 0..=n - j as u32 {
        let sums = word_sums(j, alpha);
        for pi in DiffMonomial::all_with(j, alpha) {
            acc += coefficient_from_sums(n, j, alpha, &sums, &pi);
        }
    }
    Ok(acc)
}

/// `C*_j` recomputed from an already expanded polynomial: the sum of all
/// integer coefficients on degree-`j` monomials.
pub fn c_star_from_expansion(p: &DiffPoly, j: usize) -> BigInt {
    p.terms()
        .filter(|(m, _)| m.degree() == j)
        .map(|(_, c)| c.coefficient_sum())
        .sum()
}

/// `Σ_{k=0}^{j} (−1)^{j−k} C(n,k) Σ_{m=max(k,1)}^{j} m^{m−j}/(m−k)! · A_{m,j} · (n−k+m−1)!/(m−1)!`
pub fn c_star_factorial_form(n: u32, j: usize) -> Result<BigRational> {
    check_grid("c_star_factorial_form", n, j, 0)?;
    let table = weight_a_coefficients(j)?;
    let mut acc = BigRational::zero();
    for k in 0..=j {
        let outer = sign_pow(j - k) * binomial(n as u64, k as u64);
        for m in k.max(1)..=j {
            let mb = BigInt::from(m);
            // m^{m−j} with m ≤ j is 1/m^{j−m}.
            let num = factorial((n as usize - k + m - 1) as u64);
            let den = Pow::pow(&mb, (j - m) as u32) * factorial((m - k) as u64) * factorial((m - 1) as u64);
            acc += BigRational::new(&outer * num, den) * table.get(m);
        }
    }
    if !acc.is_integer() {
        return Err(Error::NonIntegral {
            what: format!("C*_{j} factorial form for n = {n}"),
            value: acc.to_string(),
        });
    }
    Ok(acc)
}

/// The degree-one slice `Σ_α λ^{n−1−α} C_α u^(α)` of `f_{n,λ}(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearPart {
    pub n: u32,
    /// `C_0 … C_{n−1}`.
    #[serde(serialize_with = "decimal_strings")]
    pub c: Vec<BigInt>,
}

fn decimal_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl LinearPart {
    pub fn as_diff_poly(&self) -> DiffPoly {
        let mut p = DiffPoly::zero();
        for (alpha, c) in self.c.iter().enumerate() {
            p.add_term(
                DiffMonomial::derivative(alpha as u32),
                &LambdaPoly::monomial(c.clone(), self.n - 1 - alpha as u32),
            );
        }
        p
    }

    /// `Σ_α C_α z^α`. Its coefficient list is `h_{n−1}`'s, reversed.
    pub fn characteristic_poly(&self) -> IntPoly {
        IntPoly::from_dense(self.c.iter().cloned())
    }

    /// `Σ_α C_α c^α`: zero iff `e^{cλx}` is annihilated.
    pub fn residual_at(&self, c: i64) -> BigInt {
        self.characteristic_poly().eval(&BigInt::from(c))
    }
}

/// Reads `C_α` off `kl_direct(n)` as the coefficient of `λ^{n−1−α} u^(α)`.
pub fn linear_part(n: u32) -> Result<LinearPart> {
    require_n("linear_part", n, 2)?;
    Ok(linear_part_of(&kl_direct(n)?))
}

pub fn linear_part_of(f: &KLExpansion) -> LinearPart {
    let n = f.n;
    let c = (0..n)
        .map(|alpha| f.poly.coeff(&DiffMonomial::derivative(alpha), n - 1 - alpha))
        .collect();
    LinearPart { n, c }
}

/// `C_α = n·S(n−2, n−1−α) − S(n−1, n−1−α)`.
pub fn c_alpha_formula(n: u32, alpha: u32) -> Result<BigInt> {
    require_n("c_alpha_formula", n, 2)?;
    if alpha >= n {
        return Err(invalid(
            "c_alpha_formula",
            format!("need 0 ≤ α ≤ n − 1, got α = {alpha}"),
        ));
    }
    let (n, a) = (n as i64, alpha as i64);
    Ok(n * sum_of_products(n - 2, n - 1 - a) - sum_of_products(n - 1, n - 1 - a))
}

/// `h_{n−1}(z) = (n−1)(1−z) ∏_{m=1}^{n−2} (1+mz)`, expanded.
pub fn h_poly(n: u32) -> Result<IntPoly> {
    require_n("h_poly", n, 2)?;
    let base = IntPoly::from_dense([n as i64 - 1, -(n as i64 - 1)]);
    Ok((1..=n as i64 - 2).fold(base, |acc, m| &acc * &IntPoly::from_dense([1, m])))
}

/// `(n−1)(∂ − λ) ∏_{a=1}^{n−2} (∂ + aλ)` applied to `u`.
pub fn linear_factorization(n: u32) -> Result<DiffPoly> {
    require_n("linear_factorization", n, 2)?;
    let shift = |p: &DiffPoly, a: i64| &p.differentiate() + &p.scale(&LambdaPoly::monomial(a, 1));
    let mut p = DiffPoly::u();
    for a in 1..=n as i64 - 2 {
        p = shift(&p, a);
    }
    Ok(shift(&p, -1).scale_int(&BigInt::from(n - 1)))
}

/// `{1, −1, −2, …, −(n−2)}`: the multipliers `c` with `e^{cλx}` in the
/// kernel of the linear part.
pub fn kernel_exponents(n: u32) -> Result<Vec<i64>> {
    require_n("kernel_exponents", n, 2)?;
    Ok(std::iter::once(1).chain((1..=n as i64 - 2).map(|a| -a)).collect())
}
