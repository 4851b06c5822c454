//! Verification suites. Each suite is a list of independent tasks; running
//! them in parallel never changes the order of the resulting checks.

use std::collections::BTreeSet;

use clap::ValueEnum;
use kl_core::combinatorics::{
    convolution, density, differential_word, enumerate_compositions, factorial_sum_check, g_poly, sum_of_products,
    weight, weight_a_coefficients, weight_closed_form_with,
};
use kl_core::klpoly::{
    c_alpha_formula, c_star, c_star_factorial_form, c_star_from_expansion, h_poly, kernel_exponents, kl_closed_form,
    kl_direct, linear_factorization, linear_part_of,
};
use kl_core::oracle::{stars_and_bars, sum_of_products_by_subsets, word_by_choice_paths};
use kl_core::reductions::{
    evaluate_at_exponential, expected_thm5_survivors, h_at_root_of_unity_precise, lambda_zero_pattern,
    linear_part_at_root_of_unity, random_solution, reduce_first_order, reduce_second_order, thm5_verdict, Hypothesis,
};
use kl_core::{BigInt, ExpSolution};
use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{Check, Status};

pub type Task = Box<dyn Fn() -> Check + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Identities,
    Cstar,
    Weights,
    Linear,
    Thm5,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Cstar => "cstar",
            Suite::Weights => "weights",
            Suite::Linear => "linear",
            Suite::Thm5 => "thm5",
        }
    }
}

/// Bounds left as `None` fall back to each suite's default.
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    pub n_max: Option<u32>,
    pub m_max: Option<u32>,
    pub j_max: Option<u32>,
    pub alpha_max: Option<u32>,
    pub s_max: Option<u32>,
    pub samples: Option<u32>,
    pub seed: Option<u64>,
    pub digits: Option<u32>,
}

pub const REL_TOL: f64 = 1e-9;
pub const THRESHOLD_EXP: i32 = -50;

fn at_least(name: &str, v: u32, min: u32) -> Result<u32, String> {
    if v < min {
        Err(format!("--{name} must be at least {min}, got {v}"))
    } else {
        Ok(v)
    }
}

pub fn tasks(suite: Suite, b: &Bounds) -> Result<Vec<Task>, String> {
    Ok(match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Identities,
                Suite::Cstar,
                Suite::Weights,
                Suite::Linear,
                Suite::Thm5,
            ] {
                all.extend(tasks(s, b)?);
            }
            all
        }
        Suite::Identities => identities(
            at_least("n-max", b.n_max.unwrap_or(8), 1)?,
            b.samples.unwrap_or(200),
            b.seed.unwrap_or(2024),
        ),
        Suite::Cstar => cstar(at_least("n-max", b.n_max.unwrap_or(8), 1)?),
        Suite::Weights => weights(
            at_least("j-max", b.j_max.unwrap_or(6), 1)?,
            b.alpha_max.unwrap_or(6),
            at_least("s-max", b.s_max.unwrap_or(20), 1)?,
        ),
        Suite::Linear => linear(at_least("n-max", b.n_max.unwrap_or(12), 2)?),
        Suite::Thm5 => thm5(
            at_least("n-max", b.n_max.unwrap_or(10), 3)?,
            at_least("m-max", b.m_max.unwrap_or(10), 3)?,
            at_least("digits", b.digits.unwrap_or(100), 60)?,
        ),
    })
}

pub fn run(tasks: &[Task], threads: Option<usize>) -> Result<Vec<Check>, String> {
    match threads {
        None => Ok(tasks.iter().map(|t| t()).collect()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| e.to_string())?;
            Ok(pool.install(|| tasks.par_iter().map(|t| t()).collect()))
        }
    }
}

fn identities(n_max: u32, samples: u32, seed: u64) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 1..=n_max {
        out.push(Box::new(move || {
            let red = reduce_first_order(&kl_direct(n).unwrap().poly);
            let ok = red.is_zero();
            let detail = if ok {
                "quotient by u' = λu is 0".to_string()
            } else {
                format!("residual {red}")
            };
            Check::new("first_order_quotient", json!({ "n": n }), Status::from_bool(ok), detail)
        }));
    }
    for n in 1..=n_max {
        out.push(Box::new(move || {
            let red = reduce_second_order(&kl_direct(n).unwrap().poly);
            let params = json!({ "n": n });
            if n % 2 == 1 {
                let ok = red.is_zero();
                let detail = if ok {
                    "quotient by u'' = λ²u is 0".to_string()
                } else {
                    format!("residual {red}")
                };
                Check::new("second_order_quotient", params, Status::from_bool(ok), detail)
            } else {
                Check::new(
                    "second_order_quotient",
                    params,
                    Status::Observed,
                    format!("residual {red}"),
                )
            }
        }));
    }
    let numeric_n = n_max.min(6);
    out.push(Box::new(move || numeric_samples(numeric_n, samples, seed)));
    out.push(Box::new(move || sine_check(n_max)));
    out
}

/// `samples` random exponential solutions, cycling through `n = 1..=n_max`.
/// Odd `n` alternate between the two hypotheses; even `n` use `u' = λu`.
fn numeric_samples(n_max: u32, samples: u32, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<_> = (1..=n_max).map(|n| kl_direct(n).unwrap().poly).collect();
    let mut worst = 0.0f64;
    let mut failures = 0;
    for i in 0..samples {
        let n = 1 + i % n_max;
        let hyp = if n % 2 == 1 && i % 2 == 0 {
            Hypothesis::SecondOrder
        } else {
            Hypothesis::FirstOrder
        };
        let (sol, x) = random_solution(&mut rng, hyp);
        let res = evaluate_at_exponential(&polys[n as usize - 1], &sol, x)
            .map(|e| e.relative_residual())
            .unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        if res.is_nan() || res >= REL_TOL {
            failures += 1;
        }
    }
    Check::new(
        "numeric_spot_checks",
        json!({ "n_max": n_max, "samples": samples, "seed": seed, "rel_tol": REL_TOL }),
        Status::from_bool(failures == 0),
        format!("{failures} of {samples} above tolerance, worst relative residual {worst:.3e}"),
    )
}

/// `u = sin x` solves `u'' = λ²u` with `λ = i`; every odd `f_n` vanishes on it.
fn sine_check(n_max: u32) -> Check {
    let i = Complex64::i();
    let sol = ExpSolution::new(i, 2, vec![(-i * 0.5, 0), (i * 0.5, 1)]).unwrap();
    let mut worst = 0.0f64;
    let odd: Vec<u32> = (1..=n_max).step_by(2).collect();
    for &n in &odd {
        let p = kl_direct(n).unwrap().poly;
        for k in 0..8 {
            let x = Complex64::new(-2.0 + 0.55 * k as f64, 0.0);
            worst = worst.max(evaluate_at_exponential(&p, &sol, x).unwrap().relative_residual());
        }
    }
    Check::new(
        "sine_solution",
        json!({ "lambda": "i", "odd_n_max": odd.last().copied().unwrap_or(1), "rel_tol": REL_TOL }),
        Status::from_bool(worst < REL_TOL),
        format!("worst relative residual {worst:.3e}"),
    )
}

fn cstar(n_max: u32) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 1..=n_max {
        out.push(Box::new(move || {
            let ok = kl_direct(n).unwrap().poly == kl_closed_form(n).unwrap().poly;
            let detail = if ok {
                "operator expansion equals closed-form coefficients"
            } else {
                "expansions differ"
            };
            Check::new(
                "closed_form_agreement",
                json!({ "n": n }),
                Status::from_bool(ok),
                detail,
            )
        }));
    }
    for n in 1..=n_max {
        out.push(Box::new(move || {
            let f = kl_direct(n).unwrap().poly;
            let mut bad = Vec::new();
            for j in 1..=n as usize {
                let a = c_star(n, j).unwrap();
                let b = c_star_factorial_form(n, j).unwrap();
                let c = c_star_from_expansion(&f, j);
                if !(a.is_zero() && b.is_zero() && c.is_zero()) {
                    bad.push(format!("j={j}: {a}, {b}, {c}"));
                }
            }
            let detail = if bad.is_empty() {
                format!("C*_j = 0 for 1 ≤ j ≤ {n} in all three forms")
            } else {
                bad.join("; ")
            };
            Check::new(
                "coefficient_sum",
                json!({ "n": n }),
                Status::from_bool(bad.is_empty()),
                detail,
            )
        }));
    }
    out
}

fn weights(j_max: u32, alpha_max: u32, s_max: u32) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for (j, alpha, k, want) in [(4usize, 3i64, 2usize, 285i64), (4, 5, 2, 6069)] {
        out.push(Box::new(move || {
            let got = weight(j, alpha, k).unwrap();
            Check::new(
                "weight_value",
                json!({ "j": j, "alpha": alpha, "k": k }),
                Status::from_bool(got == BigInt::from(want)),
                format!("W = {got}, expected {want}"),
            )
        }));
    }
    for j in 1..=j_max as usize {
        out.push(Box::new(move || {
            let table = weight_a_coefficients(j).unwrap();
            let mut bad = Vec::new();
            for k in 1..=j {
                for alpha in 0..=alpha_max {
                    let e = weight(j, alpha as i64, k).unwrap();
                    match weight_closed_form_with(&table, alpha, k) {
                        Ok(c) if c == e => {}
                        other => bad.push(format!("W({j},{alpha},{k}) = {e} vs {other:?}")),
                    }
                }
            }
            let detail = if bad.is_empty() {
                format!("enumeration = closed form for 1 ≤ k ≤ {j}, α ≤ {alpha_max}")
            } else {
                bad.join("; ")
            };
            Check::new(
                "weight_closed_form",
                json!({ "j": j, "alpha_max": alpha_max }),
                Status::from_bool(bad.is_empty()),
                detail,
            )
        }));
    }
    let dens_j = j_max.min(5) as usize;
    let dens_alpha = alpha_max.min(5) as i64;
    for j in 1..=dens_j {
        out.push(Box::new(move || {
            let mut count = 0;
            let mut bad = Vec::new();
            for alpha in 0..=dens_alpha {
                for beta in enumerate_compositions(j, alpha, 1).unwrap() {
                    let word = differential_word(&beta);
                    let sum: BigInt = word.terms().map(|(_, c)| c.coeff(0)).sum();
                    if sum != density(&beta) || word != word_by_choice_paths(beta.entries()) {
                        bad.push(beta.to_string());
                    }
                    count += 1;
                }
            }
            let detail = if bad.is_empty() {
                format!("|β| = Σ P_(β,π) and words match path counts for {count} compositions")
            } else {
                format!("mismatch at {}", bad.join(", "))
            };
            Check::new(
                "density_sum",
                json!({ "j": j, "alpha_max": dens_alpha }),
                Status::from_bool(bad.is_empty()),
                detail,
            )
        }));
    }
    out.push(Box::new(move || {
        let mut bad = Vec::new();
        for n in 1..=s_max {
            let g = g_poly(n);
            for alpha in 0..=n {
                let want = if n <= 12 {
                    sum_of_products_by_subsets(n, alpha)
                } else {
                    sum_of_products(n as i64, alpha as i64)
                };
                if g.coeff(alpha) != want || sum_of_products(n as i64, alpha as i64) != want {
                    bad.push(format!("n={n} α={alpha}"));
                }
            }
        }
        let detail = if bad.is_empty() {
            format!("[z^α] g_n = S(n,α) for n ≤ {s_max}; subset oracle for n ≤ 12")
        } else {
            bad.join(", ")
        };
        Check::new(
            "generating_function",
            json!({ "n_max": s_max }),
            Status::from_bool(bad.is_empty()),
            detail,
        )
    }));
    let fact_max = s_max.min(15);
    out.push(Box::new(move || {
        let mut bad = Vec::new();
        for n in 1..=fact_max {
            for m in 1..=n {
                let (l, r) = factorial_sum_check(n, m).unwrap();
                if l != r {
                    bad.push(format!("n={n} m={m}: {l} ≠ {r}"));
                }
            }
        }
        let detail = if bad.is_empty() {
            format!("holds for 1 ≤ m ≤ n ≤ {fact_max}")
        } else {
            bad.join("; ")
        };
        Check::new(
            "factorial_sum",
            json!({ "n_max": fact_max }),
            Status::from_bool(bad.is_empty()),
            detail,
        )
    }));
    out.push(Box::new(move || {
        let mut bad = Vec::new();
        for n in 1..=s_max {
            for m in 0..=s_max {
                let want = if m == 0 { 1 } else { 0 };
                let got = convolution(n, m);
                if got != BigInt::from(want) {
                    bad.push(format!("n={n} m={m}: {got}"));
                }
            }
        }
        let detail = if bad.is_empty() {
            format!("sum is [m = 0] for 1 ≤ n ≤ {s_max}, 0 ≤ m ≤ {s_max}")
        } else {
            bad.join("; ")
        };
        Check::new(
            "binomial_convolution",
            json!({ "n_max": s_max, "m_max": s_max }),
            Status::from_bool(bad.is_empty()),
            detail,
        )
    }));
    out.push(Box::new(move || {
        let mut bad = Vec::new();
        for j in 1..=j_max {
            for k in 1..=j {
                for alpha in 0..=alpha_max {
                    let got = enumerate_compositions(j as usize, alpha as i64, k as usize)
                        .unwrap()
                        .len();
                    if BigInt::from(got) != stars_and_bars(j, alpha, k) {
                        bad.push(format!("({j},{alpha},{k})"));
                    }
                }
            }
        }
        let detail = if bad.is_empty() {
            format!("|Z_(j,α,k)| = C(α+j−k, j−k) for k ≤ j ≤ {j_max}, α ≤ {alpha_max}")
        } else {
            bad.join(", ")
        };
        Check::new(
            "composition_counts",
            json!({ "j_max": j_max, "alpha_max": alpha_max }),
            Status::from_bool(bad.is_empty()),
            detail,
        )
    }));
    out
}

fn linear(n_max: u32) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 2..=n_max {
        out.push(Box::new(move || {
            let lin = linear_part_of(&kl_direct(n).unwrap());
            let h = h_poly(n).unwrap();
            let mut bad = Vec::new();
            for alpha in 0..n {
                let c = &lin.c[alpha as usize];
                if *c != c_alpha_formula(n, alpha).unwrap() {
                    bad.push(format!("C_{alpha} ≠ S-formula"));
                }
                if *c != h.coeff(n - 1 - alpha) {
                    bad.push(format!("C_{alpha} ≠ [z^{}] h", n - 1 - alpha));
                }
            }
            if lin.as_diff_poly() != linear_factorization(n).unwrap() {
                bad.push("factorization differs".into());
            }
            for c in kernel_exponents(n).unwrap() {
                if !lin.residual_at(c).is_zero() {
                    bad.push(format!("e^({c}λx) not annihilated"));
                }
            }
            let detail = if bad.is_empty() {
                let c: Vec<String> = lin.c.iter().map(|x| x.to_string()).collect();
                format!("C = ({}) = S-formula = reversed h = factorization", c.join(", "))
            } else {
                bad.join("; ")
            };
            Check::new(
                "linear_part_chain",
                json!({ "n": n }),
                Status::from_bool(bad.is_empty()),
                detail,
            )
        }));
    }
    for k in 1..n_max {
        out.push(Box::new(move || {
            let v = lambda_zero_pattern(k, k).unwrap();
            let detail = format!("linear part at λ = 0 is {}", v.linear_part_at_zero);
            Check::new(
                "lambda_zero_linear_part",
                json!({ "k": k }),
                Status::from_bool(v.holds),
                detail,
            )
        }));
    }
    out
}

fn thm5(n_max: u32, m_max: u32, digits: u32) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 3..=n_max {
        for m in 3..=m_max {
            out.push(Box::new(move || root_of_unity_check(n, m, digits)));
        }
    }
    out
}

fn fmt_set(s: &BTreeSet<u32>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn root_of_unity_check(n: u32, m: u32, digits: u32) -> Check {
    let got = thm5_verdict(n, m).unwrap();
    let want = expected_thm5_survivors(m);
    let h = h_poly(n).unwrap();
    let mut disagreements = Vec::new();
    let mut smallest_nonzero = f64::INFINITY;
    for r in 0..m {
        let exact = linear_part_at_root_of_unity(n, m, r).unwrap().is_zero();
        let mag = h_at_root_of_unity_precise(&h, m, r, digits);
        if exact != mag.below(THRESHOLD_EXP) {
            disagreements.push(r);
        }
        if !exact {
            if let Some(l) = mag.log10_abs {
                smallest_nonzero = smallest_nonzero.min(l);
            }
        }
    }
    let ok = got == want && disagreements.is_empty();
    let detail = if ok {
        let floor = if smallest_nonzero.is_finite() {
            format!(", min log10|h| off the survivors {smallest_nonzero:.2}")
        } else {
            String::new()
        };
        format!(
            "survivors {}; {digits}-digit evaluation agrees for all r{floor}",
            fmt_set(&got)
        )
    } else {
        format!(
            "survivors {} expected {}; numeric disagreement at r in {:?}",
            fmt_set(&got),
            fmt_set(&want),
            disagreements
        )
    };
    Check::new(
        "root_of_unity",
        json!({ "n": n, "m": m }),
        Status::from_bool(ok),
        detail,
    )
}
