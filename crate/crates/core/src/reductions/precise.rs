use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

use crate::diffalg::IntPoly;

const RM: RoundingMode = RoundingMode::ToEven;

/// `|h(ζ^r)|` from a high-precision evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PreciseMagnitude {
    /// Working precision in decimal digits.
    pub digits: u32,
    /// Approximate `log10 |h(ζ^r)|`; `None` if the computed value is exactly 0.
    pub log10_abs: Option<f64>,
}

impl PreciseMagnitude {
    /// `true` when `|h(ζ^r)| < 10^{threshold_exp}`.
    pub fn below(&self, threshold_exp: i32) -> bool {
        match self.log10_abs {
            None => true,
            Some(l) => l < threshold_exp as f64,
        }
    }
}

fn bits_for(digits: u32) -> usize {
    // log2(10) ≈ 3.3219; pad for the trig and Horner rounding.
    (digits as f64 * 3.322).ceil() as usize + 128
}

fn to_float(c: &num_bigint::BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&c.to_string(), Radix::Dec, p, RM, cc)
}

/// Evaluates `h` at `ζ^r`, `ζ = e^{2πi/m}`, by Horner's rule on the expanded
/// integer coefficients in `digits`-digit complex arithmetic.
pub fn h_at_root_of_unity_precise(h: &IntPoly, m: u32, r: u32, digits: u32) -> PreciseMagnitude {
    let p = bits_for(digits);
    let mut cc = Consts::new().expect("constants cache");
    let pi = cc.pi(p, RM);
    let theta = pi
        .mul(&BigFloat::from_u64(2 * r as u64, p), p, RM)
        .div(&BigFloat::from_u64(m as u64, p), p, RM);
    let zr = theta.cos(p, RM, &mut cc);
    let zi = theta.sin(p, RM, &mut cc);

    let mut re = BigFloat::from_u64(0, p);
    let mut im = BigFloat::from_u64(0, p);
    for c in h.to_dense().iter().rev() {
        // (re + i·im)(zr + i·zi) + c
        let nre = re.mul(&zr, p, RM).sub(&im.mul(&zi, p, RM), p, RM);
        let nim = re.mul(&zi, p, RM).add(&im.mul(&zr, p, RM), p, RM);
        re = nre.add(&to_float(c, p, &mut cc), p, RM);
        im = nim;
    }
    let norm_sq = re.mul(&re, p, RM).add(&im.mul(&im, p, RM), p, RM);
    let log10_abs = if norm_sq.is_zero() {
        None
    } else {
        // norm_sq = mantissa · 2^e with mantissa in [0.5, 1); take half of
        // log10 for the modulus.
        let e = norm_sq.exponent().unwrap_or(0) as f64;
        let mut mant = norm_sq.clone();
        mant.set_exponent(0);
        let mant = mant_to_f64(&mant);
        Some(0.5 * (e * std::f64::consts::LOG10_2 + mant.log10()))
    };
    PreciseMagnitude { digits, log10_abs }
}

fn mant_to_f64(x: &BigFloat) -> f64 {
    // x is in [0.5, 1); a decimal round-trip is plenty for a log estimate.
    let mut cc = Consts::new().expect("constants cache");
    x.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_and_nonzeros() {
        // h_2(z) = 2 − 2z² vanishes at ±1, equals 4 at ±i.
        let h = IntPoly::from_dense([2, 0, -2]);
        assert!(h_at_root_of_unity_precise(&h, 4, 0, 100).below(-50));
        assert!(h_at_root_of_unity_precise(&h, 4, 2, 100).below(-50));
        let at_i = h_at_root_of_unity_precise(&h, 4, 1, 100);
        assert!(!at_i.below(-50));
        assert!((at_i.log10_abs.unwrap() - 4f64.log10()).abs() < 1e-9);
    }
}
