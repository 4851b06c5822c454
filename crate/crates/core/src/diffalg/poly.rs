use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::{IntPoly, LambdaPoly};
use super::monomial::DiffMonomial;

/// A differential polynomial in one formal function `u`, with coefficients
/// in `Z[λ]`.
///
/// No term ever maps to the zero λ-polynomial, so `p - p` is the empty map
/// and derived equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<DiffMonomial, LambdaPoly>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(DiffMonomial::one())
    }

    pub fn u() -> Self {
        Self::from_monomial(DiffMonomial::u())
    }

    pub fn from_monomial(m: DiffMonomial) -> Self {
        Self::term(m, LambdaPoly::one())
    }

    pub fn term(m: DiffMonomial, coeff: LambdaPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &LambdaPoly)> + '_ {
        self.terms.iter()
    }

    pub fn get(&self, m: &DiffMonomial) -> Option<&LambdaPoly> {
        self.terms.get(m)
    }

    /// Integer coefficient of `λ^e · m`.
    pub fn coeff(&self, m: &DiffMonomial, lambda_exp: u32) -> BigInt {
        self.terms.get(m).map(|c| c.coeff(lambda_exp)).unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(DiffMonomial::degree).min()
    }

    /// The slice of terms whose monomials have degree `j`.
    pub fn degree_part(&self, j: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == j)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: DiffMonomial, coeff: &LambdaPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + coeff;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeff.clone());
            }
        }
    }

    /// Multiplies every coefficient by the λ-polynomial `c`.
    pub fn scale(&self, c: &LambdaPoly) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&LambdaPoly::constant(c.clone()))
    }

    /// The total derivative `∂p`. λ is a constant.
    pub fn differentiate(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (dm, mult) in m.derivative_terms() {
                out.add_term(dm, &c.scale(&BigInt::from(mult)));
            }
        }
        out
    }

    pub fn differentiate_n(&self, times: u32) -> Self {
        (0..times).fold(self.clone(), |p, _| p.differentiate())
    }

    /// Multiplies every monomial by one more factor `u^(t)`.
    pub fn multiply_by_derivative(&self, t: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.times(t), c.clone())).collect(),
        }
    }

    pub fn multiply_by_u(&self) -> Self {
        self.multiply_by_derivative(0)
    }

    /// `(∂ − u + mλ) p`.
    pub fn apply_factor(&self, m: u32) -> Self {
        let mut out = self.differentiate();
        for (mono, c) in &self.terms {
            out.add_term(mono.times(0), &-c);
        }
        if m != 0 {
            let shift = LambdaPoly::monomial(m, 1);
            for (mono, c) in &self.terms {
                out.add_term(mono.clone(), &(c * &shift));
            }
        }
        out
    }

    /// Applies `f` to every monomial and λ-coefficient and re-merges.
    pub fn map_terms<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&DiffMonomial, &LambdaPoly) -> (DiffMonomial, LambdaPoly),
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (m2, c2) = f(m, c);
            out.add_term(m2, &c2);
        }
        out
    }

    /// Keeps only the λ⁰ coefficients, i.e. evaluates at λ = 0.
    pub fn at_lambda_zero(&self) -> Self {
        self.map_terms(|m, c| (m.clone(), LambdaPoly::constant(c.coeff(0))))
    }

    /// Flattened `(monomial, λ-exponent, coefficient)` triples in the order
    /// used for text rendering: degree ascending, order descending, orders
    /// descending, then λ-exponent ascending.
    fn display_terms(&self) -> Vec<(&DiffMonomial, u32, &BigInt)> {
        let mut flat: Vec<_> = self
            .terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(e, v)| (m, e, v)))
            .collect();
        flat.sort_by(|a, b| {
            a.0.degree()
                .cmp(&b.0.degree())
                .then_with(|| b.0.order().cmp(&a.0.order()))
                .then_with(|| b.0.orders().cmp(a.0.orders()))
                .then_with(|| a.1.cmp(&b.1))
        });
        flat
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut orders = ma.orders().to_vec();
                orders.extend_from_slice(mb.orders());
                out.add_term(DiffMonomial::from_orders(orders), &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for DiffPoly {
    /// Human-readable form, e.g. `2·u'' − 2·λ^2·u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flat = self.display_terms();
        if flat.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, e, c)) in flat.into_iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("−")?;
                }
            } else if c.is_negative() {
                f.write_str(" − ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let mag = c.abs();
            if !mag.is_one() {
                parts.push(mag.to_string());
            }
            match e {
                0 => {}
                1 => parts.push("λ".to_string()),
                _ => parts.push(format!("λ^{e}")),
            }
            if !m.is_constant() {
                parts.push(m.to_string());
            }
            if parts.is_empty() {
                parts.push("1".to_string());
            }
            f.write_str(&parts.join("·"))?;
        }
        Ok(())
    }
}

/// One serialized term: `{orders, lambda_coeffs: [[exponent, "integer"]]}`.
#[derive(Serialize, Deserialize)]
struct WireTerm {
    orders: Vec<u32>,
    lambda_coeffs: Vec<(u32, String)>,
}

impl Serialize for DiffPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire: Vec<WireTerm> = self
            .terms
            .iter()
            .map(|(m, c)| WireTerm {
                orders: m.orders().to_vec(),
                lambda_coeffs: c.terms().map(|(e, v)| (e, v.to_string())).collect(),
            })
            .collect();
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiffPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Vec::<WireTerm>::deserialize(deserializer)?;
        let mut out = DiffPoly::zero();
        for t in wire {
            let mut coeff = IntPoly::zero();
            for (e, s) in t.lambda_coeffs {
                let v: BigInt = s.parse().map_err(|_| D::Error::custom(format!("bad integer {s:?}")))?;
                coeff.add_term(e, v);
            }
            out.add_term(DiffMonomial::from_orders(t.orders), &coeff);
        }
        Ok(out)
    }
}

impl Zero for DiffPoly {
    fn zero() -> Self {
        DiffPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: DiffPoly) -> DiffPoly {
        &self + &rhs
    }
}
