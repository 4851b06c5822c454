//! Compositions, differential words and their product-rule coefficients,
//! densities and weights, sums of products `S(n, α)`, and the binomial
//! identities used to show the first identity's coefficients cancel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::diffalg::{DiffMonomial, DiffPoly, IntPoly};
use crate::error::{invalid, Error, Result};
use crate::reductions::{reduce_first_order, PolyInU};

/// A tuple `β = (β₁, …, β_j)` of non-negative integers from `Z_{j,α,k}`:
/// entries sum to `α` and the first `k − 1` entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Composition {
    entries: Vec<u32>,
    k: usize,
}

impl Composition {
    /// Checks the zero-prefix constraint. `k = 0` is treated as `k = 1`.
    pub fn new(entries: Vec<u32>, k: usize) -> Result<Self> {
        let k = k.max(1);
        if entries.is_empty() {
            return Err(invalid("Composition::new", "degree j must be at least 1"));
        }
        if k > entries.len() {
            return Err(invalid(
                "Composition::new",
                format!("k = {k} exceeds j = {}", entries.len()),
            ));
        }
        if entries[..k - 1].iter().any(|&b| b != 0) {
            return Err(invalid(
                "Composition::new",
                format!("the first {} entries must be zero", k - 1),
            ));
        }
        Ok(Self { entries, k })
    }

    /// `β` as a member of `Z_{j,α} = Z_{j,α,1}`.
    pub fn full(entries: Vec<u32>) -> Result<Self> {
        Self::new(entries, 1)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn j(&self) -> usize {
        self.entries.len()
    }

    pub fn alpha(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

fn check_jk(op: &'static str, j: usize, k: usize) -> Result<()> {
    if j < 1 {
        return Err(invalid(op, "j must be at least 1"));
    }
    if k < 1 || k > j {
        return Err(invalid(op, format!("k must satisfy 1 ≤ k ≤ j, got k = {k}, j = {j}")));
    }
    Ok(())
}

/// All of `Z_{j,α,k}` in lexicographic order; empty when `α < 0`.
pub fn enumerate_compositions(j: usize, alpha: i64, k: usize) -> Result<Vec<Composition>> {
    check_jk("enumerate_compositions", j, k)?;
    if alpha < 0 {
        return Ok(Vec::new());
    }
    let free = j - k + 1;
    let mut out = Vec::new();
    let mut cur = vec![0u32; j];
    fn fill(pos: usize, remaining: u32, cur: &mut Vec<u32>, k: usize, out: &mut Vec<Composition>) {
        let last = cur.len() - 1;
        if pos == last {
            cur[pos] = remaining;
            out.push(Composition {
                entries: cur.clone(),
                k,
            });
            return;
        }
        for v in 0..=remaining {
            cur[pos] = v;
            fill(pos + 1, remaining - v, cur, k, out);
        }
        cur[pos] = 0;
    }
    debug_assert!(free >= 1);
    fill(k - 1, alpha as u32, &mut cur, k, &mut out);
    Ok(out)
}

/// The differential word `w(β) = ∂^{β_j}u ∂^{β_{j−1}}u ··· ∂^{β₁}u`, expanded.
pub fn differential_word(beta: &Composition) -> DiffPoly {
    let e = beta.entries();
    let mut w = DiffPoly::u().differentiate_n(e[0]);
    for &b in &e[1..] {
        w = w.multiply_by_u().differentiate_n(b);
    }
    w
}

/// `P_{β,π}`: the coefficient of `π` in `w(β)`.
pub fn product_rule_coefficient(beta: &Composition, pi: &DiffMonomial) -> BigInt {
    if pi.degree() != beta.j() || pi.order() != beta.alpha() {
        return BigInt::zero();
    }
    differential_word(beta).coeff(pi, 0)
}

/// `|β| = ∏ m^{β_m}`.
pub fn density(beta: &Composition) -> BigInt {
    beta.entries()
        .iter()
        .enumerate()
        .map(|(i, &b)| Pow::pow(BigInt::from(i + 1), b))
        .product()
}

/// `W(j, α, k)` by enumerating `Z_{j,α,k}` and summing densities.
/// `k = 0` means `k = 1`; negative `α` gives 0.
pub fn weight(j: usize, alpha: i64, k: usize) -> Result<BigInt> {
    let k = k.max(1);
    check_jk("weight", j, k)?;
    Ok(enumerate_compositions(j, alpha, k)?.iter().map(density).sum())
}

/// The rationals `A_{m,j}` (`1 ≤ m ≤ j`) of the closed form for the weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCoefficients {
    j: usize,
    values: Vec<BigRational>,
}

impl WeightCoefficients {
    pub fn j(&self) -> usize {
        self.j
    }

    /// `A_{m,j}`.
    pub fn get(&self, m: usize) -> &BigRational {
        &self.values[m - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Bottom-up from `A_{j,j} = 1`:
/// `A_{k,j} = −k Σ_{m=k+1}^{j} m^{m−k−1}/(m−k)! · A_{m,j}`.
pub fn weight_a_coefficients(j: usize) -> Result<WeightCoefficients> {
    if j < 1 {
        return Err(invalid("weight_a_coefficients", "j must be at least 1"));
    }
    let mut values = vec![BigRational::zero(); j];
    values[j - 1] = BigRational::one();
    for k in (1..j).rev() {
        let mut acc = BigRational::zero();
        for m in k + 1..=j {
            let num = Pow::pow(BigInt::from(m), (m - k - 1) as u32);
            acc += ratio(num, factorial((m - k) as u64)) * &values[m - 1];
        }
        values[k - 1] = -acc * BigInt::from(k);
    }
    Ok(WeightCoefficients { j, values })
}

fn require_integer(what: impl FnOnce() -> String, v: BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegral {
            what: what(),
            value: v.to_string(),
        })
    }
}

/// `Σ_{m=k}^{j} m^{m−k}/(m−k)! · A_{m,j} · m^α` with a precomputed table.
pub fn weight_closed_form_with(table: &WeightCoefficients, alpha: u32, k: usize) -> Result<BigInt> {
    let j = table.j();
    check_jk("weight_closed_form", j, k)?;
    let mut acc = BigRational::zero();
    for m in k..=j {
        let mb = BigInt::from(m);
        let num = Pow::pow(&mb, (m - k) as u32) * Pow::pow(&mb, alpha);
        acc += ratio(num, factorial((m - k) as u64)) * table.get(m);
    }
    require_integer(|| format!("W({j},{alpha},{k}) closed form"), acc)
}

pub fn weight_closed_form(j: usize, alpha: u32, k: usize) -> Result<BigInt> {
    weight_closed_form_with(&weight_a_coefficients(j)?, alpha, k)
}

/// `S(n, α)`: the sum of all products of `α` distinct integers from
/// `{1, …, n}`, via `S(n, α) = S(n−1, α) + n·S(n−1, α−1)`.
///
/// `S(n, 0) = 1` for every `n`, including the `n ≤ 0` values that arise
/// from `S(n − k − 1, ·)` at `k = n`. Everything else outside
/// `1 ≤ α ≤ n` is 0.
pub fn sum_of_products(n: i64, alpha: i64) -> BigInt {
    if alpha == 0 {
        return BigInt::one();
    }
    if alpha < 0 || n < 1 || alpha > n {
        return BigInt::zero();
    }
    let alpha = alpha as usize;
    let mut row = vec![BigInt::zero(); alpha + 1];
    row[0] = BigInt::one();
    for a in 1..=n {
        let top = alpha.min(a as usize);
        for t in (1..=top).rev() {
            let add = &row[t - 1] * a;
            row[t] += add;
        }
    }
    row.swap_remove(alpha)
}

/// `g_n(z) = ∏_{a=1}^{n} (1 + az)`.
pub fn g_poly(n: u32) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, a| &acc * &IntPoly::from_dense([1, a as i64]))
}

/// Both sides of `Σ_{α=0}^{n} m^{n−α+1} S(n,α) = (n+m)!/(m−1)!`.
pub fn factorial_sum_check(n: u32, m: u32) -> Result<(BigInt, BigInt)> {
    if m < 1 || m > n {
        return Err(invalid(
            "factorial_sum_check",
            format!("need 1 ≤ m ≤ n, got n = {n}, m = {m}"),
        ));
    }
    let mb = BigInt::from(m);
    let lhs = (0..=n)
        .map(|a| Pow::pow(&mb, n - a + 1) * sum_of_products(n as i64, a as i64))
        .sum();
    let rhs = factorial((n + m) as u64) / factorial((m - 1) as u64);
    Ok((lhs, rhs))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `γ(γ−1)···(γ−q+1)/q!` for any integer `γ`.
pub fn generalized_binomial(top: i64, q: u32) -> BigInt {
    let num: BigInt = (0..q as i64).map(|i| BigInt::from(top - i)).product();
    let (quot, rem) = num.div_rem(&factorial(q as u64));
    debug_assert!(rem.is_zero());
    quot
}

/// `Σ_{k=0}^{m} C(n,k)·C(−n, m−k)`, the coefficient of `z^m` in
/// `(1+z)^n (1+z)^{−n}`.
pub fn convolution(n: u32, m: u32) -> BigInt {
    (0..=m)
        .map(|k| binomial(n as u64, k as u64) * generalized_binomial(-(n as i64), m - k))
        .sum()
}

/// Sign `(−1)^e` as an integer.
pub(crate) fn sign_pow(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `true` when `w(β)` becomes exactly `|β| λ^α u^j` under `u' = λu`.
pub fn word_collapses_to_density(beta: &Composition) -> bool {
    let collapsed = reduce_first_order(&differential_word(beta));
    collapsed == PolyInU::monomial(beta.j() as u32, IntPoly::monomial(density(beta), beta.alpha()))
}
