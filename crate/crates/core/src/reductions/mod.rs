//! Exact reductions of differential polynomials modulo `u' = λu` and
//! `u'' = λ²u`, exponential-solution evaluation, and the root-of-unity
//! analysis of the linear part.
//!
//! The quotient substitutions are exact checks of the identities, not
//! samples. On solutions of `u' = λu` the value `u(x₀)` is a free complex
//! number, so a polynomial vanishes on every solution iff its image under
//! `u^(t) → λ^t u` is identically zero. Likewise on solutions of
//! `u'' = λ²u` the pair `(u(x₀), u'(x₀))` ranges over all of `C²`.

mod numeric;
mod precise;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::diffalg::{factor_name, DiffMonomial, DiffPoly, LambdaPoly};
use crate::error::{invalid, Result};
use crate::klpoly::{h_poly, kl_direct, linear_part_of};

pub use numeric::{
    evaluate_at_exponential, evaluate_with, random_solution, EvalOptions, Evaluation, ExpSolution, Hypothesis,
};
pub use precise::{h_at_root_of_unity_precise, PreciseMagnitude};

fn write_signed_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a LambdaPoly, String)>,
{
    let mut any = false;
    for (c, mono) in terms {
        for (e, v) in c.terms() {
            let neg = v.is_negative();
            match (any, neg) {
                (false, true) => f.write_str("−")?,
                (false, false) => {}
                (true, true) => f.write_str(" − ")?,
                (true, false) => f.write_str(" + ")?,
            }
            any = true;
            let mut parts = Vec::new();
            let mag = v.abs();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            match e {
                0 => {}
                1 => parts.push("λ".into()),
                _ => parts.push(format!("λ^{e}")),
            }
            if !mono.is_empty() {
                parts.push(mono.clone());
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            f.write_str(&parts.join("·"))?;
        }
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

fn power_name(base: &str, p: u32) -> Option<String> {
    match p {
        0 => None,
        1 => Some(base.to_string()),
        _ if base.len() > 1 => Some(format!("({base})^{p}")),
        _ => Some(format!("{base}^{p}")),
    }
}

/// A polynomial in `u` alone with `Z[λ]` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyInU {
    terms: BTreeMap<u32, LambdaPoly>,
}

impl PolyInU {
    pub fn monomial(u_power: u32, coeff: LambdaPoly) -> Self {
        let mut p = Self::default();
        p.add(u_power, &coeff);
        p
    }

    fn add(&mut self, u_power: u32, c: &LambdaPoly) {
        let slot = self.terms.entry(u_power).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&u_power);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u_power: u32) -> LambdaPoly {
        self.terms.get(&u_power).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LambdaPoly)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Display for PolyInU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms
                .iter()
                .map(|(p, c)| (c, power_name("u", *p).unwrap_or_default())),
        )
    }
}

/// Substitutes `u^(t) → λ^t u`, so each `π` of degree `j` and order `α`
/// becomes `λ^α u^j`.
pub fn reduce_first_order(p: &DiffPoly) -> PolyInU {
    let mut out = PolyInU::default();
    for (m, c) in p.terms() {
        out.add(m.degree() as u32, &c.shift(m.order()));
    }
    out
}

/// A polynomial in `u` and `u'` with `Z[λ]` coefficients, keyed by
/// `(power of u, power of u')`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), LambdaPoly>,
}

impl BivariatePoly {
    fn add(&mut self, key: (u32, u32), c: &LambdaPoly) {
        let slot = self.terms.entry(key).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), &'a LambdaPoly)>,
    {
        let mut p = Self::default();
        for (k, c) in terms {
            p.add(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u_power: u32, du_power: u32) -> LambdaPoly {
        self.terms.get(&(u_power, du_power)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &LambdaPoly)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Display for BivariatePoly {
    /// Terms with more `u'` first, e.g. `u' − λ·u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|&(&(u, du), _)| std::cmp::Reverse((du, u)));
        write_signed_terms(
            f,
            keys.into_iter().map(|((a, b), c)| {
                let parts: Vec<String> = [power_name("u", *a), power_name(&factor_name(1), *b)]
                    .into_iter()
                    .flatten()
                    .collect();
                (c, parts.join("·"))
            }),
        )
    }
}

/// Substitutes `u^(2t) → λ^{2t} u` and `u^(2t+1) → λ^{2t} u'`.
pub fn reduce_second_order(p: &DiffPoly) -> BivariatePoly {
    let mut out = BivariatePoly::default();
    for (m, c) in p.terms() {
        let odd = m.orders().iter().filter(|&&o| o % 2 == 1).count() as u32;
        let even = m.degree() as u32 - odd;
        let lambda_shift: u32 = m.orders().iter().map(|&o| o - o % 2).sum();
        out.add((even, odd), &c.shift(lambda_shift));
    }
    out
}

/// A linear factor of `h_{n−1}(z) = (n−1)(1−z)∏(1+az)` that vanishes at a
/// root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HFactor {
    /// `(1 − z)`, zero at `z = 1`.
    OneMinusZ,
    /// `(1 + z)`, zero at `z = −1`.
    OnePlusZ,
}

/// Exact decision of whether `h_{n−1}(ζ^r) = 0` for `ζ = e^{2πi/m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootVerdict {
    pub n: u32,
    pub m: u32,
    pub r: u32,
    /// Multiplicative order of `ζ^r`, i.e. `m / gcd(m, r)`.
    pub root_order: u32,
    pub vanishing_factor: Option<HFactor>,
    pub certificate: String,
}

impl RootVerdict {
    pub fn is_zero(&self) -> bool {
        self.vanishing_factor.is_some()
    }
}

/// Decides `h_{n−1}(ζ^r) = 0` from the factored form. `(1 − z)` vanishes
/// iff `ζ^r = 1`. `(1 + az)` vanishes iff `ζ^r = −1/a`, which has modulus
/// one only for `a = 1`, so iff `ζ^r = −1`.
pub fn linear_part_at_root_of_unity(n: u32, m: u32, r: u32) -> Result<RootVerdict> {
    if n < 3 || m < 3 || r >= m {
        return Err(invalid(
            "linear_part_at_root_of_unity",
            format!("need n ≥ 3, m ≥ 3, 0 ≤ r < m; got n = {n}, m = {m}, r = {r}"),
        ));
    }
    let root_order = m / m.gcd(&r);
    let (vanishing_factor, certificate) = match root_order {
        1 => (
            Some(HFactor::OneMinusZ),
            "ζ^r = 1, so the factor (1 − z) vanishes".to_string(),
        ),
        2 => (
            Some(HFactor::OnePlusZ),
            "ζ^r = −1, so the factor (1 + z) vanishes".to_string(),
        ),
        d => (
            None,
            format!(
                "ζ^r has order {d}, so it is neither 1 nor any −1/a with 1 ≤ a ≤ {}",
                n - 2
            ),
        ),
    };
    Ok(RootVerdict {
        n,
        m,
        r,
        root_order,
        vanishing_factor,
        certificate,
    })
}

/// The rate indices `r` whose exponential `e^{λζ^r x}` survives in the
/// kernel of the linear part when `u^(m) = λ^m u` and `λ ≠ 0`.
pub fn thm5_verdict(n: u32, m: u32) -> Result<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for r in 0..m {
        if linear_part_at_root_of_unity(n, m, r)?.is_zero() {
            out.insert(r);
        }
    }
    Ok(out)
}

/// `{0}` for odd `m`, `{0, m/2}` for even `m`.
pub fn expected_thm5_survivors(m: u32) -> BTreeSet<u32> {
    if m.is_multiple_of(2) {
        [0, m / 2].into_iter().collect()
    } else {
        [0].into_iter().collect()
    }
}

/// The λ = 0 behaviour of `f_{k+1,0}`'s linear part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaZeroVerdict {
    pub m: u32,
    pub k: u32,
    /// The linear part of `f_{k+1,λ}` at `λ = 0`.
    pub linear_part_at_zero: DiffPoly,
    /// Coefficient of `u^(k)` in it.
    pub leading_coefficient: BigInt,
    /// `true` iff the linear part is exactly `k·u^(k)`, so that its
    /// vanishing forces `u^(k) = 0`.
    pub holds: bool,
    /// Any vanishing pattern of `f_{n,0}` starts at `n ≥ m + 1` when `m` is
    /// the least order with `u^(m) = 0`.
    pub pattern_start_bound: u32,
}

pub fn lambda_zero_pattern(m: u32, k: u32) -> Result<LambdaZeroVerdict> {
    if m < 1 || k < 1 {
        return Err(invalid(
            "lambda_zero_pattern",
            format!("need m, k ≥ 1; got m = {m}, k = {k}"),
        ));
    }
    let lin = linear_part_of(&kl_direct(k + 1)?);
    let at_zero = lin.as_diff_poly().at_lambda_zero();
    let lead = at_zero.coeff(&DiffMonomial::derivative(k), 0);
    let want = DiffPoly::term(DiffMonomial::derivative(k), LambdaPoly::constant(k));
    Ok(LambdaZeroVerdict {
        m,
        k,
        holds: at_zero == want,
        linear_part_at_zero: at_zero,
        leading_coefficient: lead,
        pattern_start_bound: m + 1,
    })
}

/// Convenience: `h_{n−1}` evaluated at `ζ^r` to `digits` decimal digits.
pub fn h_magnitude_at_root(n: u32, m: u32, r: u32, digits: u32) -> Result<PreciseMagnitude> {
    Ok(h_at_root_of_unity_precise(&h_poly(n)?, m, r, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{differential_word, Composition};
    use crate::diffalg::poly_from_terms;

    #[test]
    fn first_order_examples() {
        let f3 = poly_from_terms(&[(2, 0, &[2]), (-2, 2, &[0])]);
        assert!(reduce_first_order(&f3).is_zero());
        for n in 1..=6 {
            assert!(reduce_first_order(&kl_direct(n).unwrap().poly).is_zero(), "n = {n}");
        }
        let w = differential_word(&Composition::full(vec![0, 1, 1, 1]).unwrap());
        assert_eq!(
            reduce_first_order(&w),
            PolyInU::monomial(4, LambdaPoly::monomial(24, 3))
        );
    }

    #[test]
    fn second_order_examples() {
        let f2 = kl_direct(2).unwrap().poly;
        let red = reduce_second_order(&f2);
        assert!(!red.is_zero());
        assert_eq!(red.to_string(), "u' − λ·u");
        for n in [1, 3, 5] {
            assert!(reduce_second_order(&kl_direct(n).unwrap().poly).is_zero());
        }
    }

    #[test]
    fn roots_of_unity() {
        let v = linear_part_at_root_of_unity(5, 4, 2).unwrap();
        assert_eq!(v.vanishing_factor, Some(HFactor::OnePlusZ));
        assert!(!linear_part_at_root_of_unity(5, 3, 1).unwrap().is_zero());
        for m in 3..8 {
            assert_eq!(
                linear_part_at_root_of_unity(6, m, 0).unwrap().vanishing_factor,
                Some(HFactor::OneMinusZ)
            );
        }
        assert!(linear_part_at_root_of_unity(2, 4, 0).is_err());
        assert!(linear_part_at_root_of_unity(4, 4, 4).is_err());
    }

    #[test]
    fn thm5_examples() {
        assert_eq!(thm5_verdict(4, 3).unwrap(), [0].into_iter().collect());
        assert_eq!(thm5_verdict(4, 4).unwrap(), [0, 2].into_iter().collect());
        assert_eq!(thm5_verdict(6, 5).unwrap(), [0].into_iter().collect());
    }

    #[test]
    fn lambda_zero() {
        let v = lambda_zero_pattern(3, 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.linear_part_at_zero, poly_from_terms(&[(2, 0, &[2])]));
        assert_eq!(v.pattern_start_bound, 4);
        let v1 = lambda_zero_pattern(1, 1).unwrap();
        assert_eq!(v1.linear_part_at_zero, poly_from_terms(&[(1, 0, &[1])]));
        assert_eq!(lambda_zero_pattern(2, 7).unwrap().leading_coefficient, 7.into());
    }
}
