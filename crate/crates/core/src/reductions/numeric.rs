use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::diffalg::DiffPoly;
use crate::error::{invalid, Error, Result};

/// `u(x) = Σ β_r e^{λζ^r x}` with `ζ = e^{2πi/m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSolution {
    lambda: Complex64,
    m: u32,
    terms: Vec<(Complex64, u32)>,
}

impl ExpSolution {
    /// `terms` are `(amplitude β_r, rate index r)` with distinct `r < m`.
    pub fn new(lambda: Complex64, m: u32, terms: Vec<(Complex64, u32)>) -> Result<Self> {
        if m < 1 {
            return Err(invalid("ExpSolution::new", "modulus m must be at least 1"));
        }
        let mut seen = vec![false; m as usize];
        for &(_, r) in &terms {
            if r >= m {
                return Err(invalid("ExpSolution::new", format!("rate index {r} ≥ m = {m}")));
            }
            if std::mem::replace(&mut seen[r as usize], true) {
                return Err(invalid("ExpSolution::new", format!("rate index {r} repeated")));
            }
        }
        Ok(Self { lambda, m, terms })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[(Complex64, u32)] {
        &self.terms
    }

    /// `λζ^r`.
    pub fn rate(&self, r: u32) -> Complex64 {
        self.lambda * Complex64::from_polar(1.0, TAU * r as f64 / self.m as f64)
    }

    /// `u^(t)(x)`.
    pub fn derivative(&self, t: u32, x: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(beta, r)| {
                let rate = self.rate(r);
                beta * rate.powu(t) * (rate * x).exp()
            })
            .sum()
    }

    /// `Σ |β_r| |λζ^r|^t |e^{λζ^r x}|`, an upper bound for `|u^(t)(x)|`.
    pub fn derivative_bound(&self, t: u32, x: Complex64) -> f64 {
        self.terms
            .iter()
            .map(|&(beta, r)| {
                let rate = self.rate(r);
                beta.norm() * rate.norm().powi(t as i32) * (rate * x).exp().norm()
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    /// Relative tolerance the caller intends to test against.
    pub rel_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Largest bound on any single term `c·λ^e·π(x)`, with each factor
    /// `u^(t)` bounded by `Σ |β_r| |λζ^r|^t |e^{λζ^r x}|`. Rounding errors
    /// in the sum are proportional to this, even where the terms cancel
    /// individually.
    pub scale: f64,
}

impl Evaluation {
    /// `|value| / scale`, or `|value|` when every term was zero.
    pub fn relative_residual(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.norm() / self.scale
        } else {
            self.value.norm()
        }
    }
}

/// Evaluates `p` on `sol` at `x` in double precision.
pub fn evaluate_at_exponential(p: &DiffPoly, sol: &ExpSolution, x: Complex64) -> Result<Evaluation> {
    evaluate_with(p, sol, x, EvalOptions::default())
}

pub fn evaluate_with(p: &DiffPoly, sol: &ExpSolution, x: Complex64, opts: EvalOptions) -> Result<Evaluation> {
    let flat_terms: usize = p.terms().map(|(_, c)| c.len()).sum();
    let max_degree = p.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
    // Each term is a product of at most `max_degree + 2` rounded factors and
    // the sum accumulates `flat_terms` of them.
    let achievable = f64::EPSILON * (4 + flat_terms + max_degree) as f64;
    if opts.rel_tol < achievable {
        return Err(Error::Precision {
            requested: opts.rel_tol,
            achievable,
        });
    }
    let max_order = p
        .terms()
        .flat_map(|(m, _)| m.orders().iter().copied())
        .max()
        .unwrap_or(0);
    let derivs: Vec<Complex64> = (0..=max_order).map(|t| sol.derivative(t, x)).collect();
    let bounds: Vec<f64> = (0..=max_order).map(|t| sol.derivative_bound(t, x)).collect();
    let lambda_abs = sol.lambda.norm();
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for (m, c) in p.terms() {
        let mono: Complex64 = m.orders().iter().map(|&t| derivs[t as usize]).product();
        let mono_bound: f64 = m.orders().iter().map(|&t| bounds[t as usize]).product();
        for (e, v) in c.terms() {
            let coeff = v.to_f64().unwrap_or(f64::INFINITY);
            value += mono * sol.lambda.powu(e) * coeff;
            scale = scale.max(mono_bound * lambda_abs.powi(e as i32) * coeff.abs());
        }
    }
    Ok(Evaluation { value, scale })
}

/// Which identity's hypothesis a random solution satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// `u' = λu`: `u = β e^{λx}`.
    FirstOrder,
    /// `u'' = λ²u`: `u = β₀ e^{λx} + β₁ e^{−λx}`.
    SecondOrder,
}

fn unit_box<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Samples `(solution, x)` with `|λ| ∈ [0.5, 2]` and a random phase.
pub fn random_solution<R: Rng + ?Sized>(rng: &mut R, hypothesis: Hypothesis) -> (ExpSolution, Complex64) {
    let lambda = Complex64::from_polar(rng.gen_range(0.5..=2.0), rng.gen_range(0.0..TAU));
    let (m, terms) = match hypothesis {
        Hypothesis::FirstOrder => (1, vec![(unit_box(rng), 0)]),
        Hypothesis::SecondOrder => (2, vec![(unit_box(rng), 0), (unit_box(rng), 1)]),
    };
    let x = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
    let sol = ExpSolution::new(lambda, m, terms).expect("indices are distinct and < m");
    (sol, x)
}
