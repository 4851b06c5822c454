//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always
//! appear in `cargo test` output.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use kl_core::combinatorics::{
    convolution, density, differential_word, enumerate_compositions, factorial_sum_check, g_poly, sum_of_products,
    weight, weight_a_coefficients, weight_closed_form_with,
};
use kl_core::klpoly::{
    c_alpha_formula, c_star, c_star_factorial_form, h_poly, kl_closed_form, kl_direct, linear_factorization,
    linear_part_of,
};
use kl_core::oracle::{stars_and_bars, sum_of_products_by_subsets, word_by_choice_paths};
use kl_core::reductions::{
    evaluate_at_exponential, expected_thm5_survivors, h_at_root_of_unity_precise, lambda_zero_pattern,
    linear_part_at_root_of_unity, random_solution, reduce_first_order, reduce_second_order, thm5_verdict, Hypothesis,
};
use kl_core::{BigInt, DiffMonomial, DiffPoly, ExpSolution, LambdaPoly};
use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_432() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_klpoly"))
        .args(["table", "4", "3", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(lines.len() == 11, || format!("{} lines", lines.len()))?;
    let densities: Vec<&str> = lines[..10].iter().map(|l| l.rsplit(' ').next().unwrap()).collect();
    let want = ["64", "48", "36", "27", "24", "18", "32", "12", "16", "8"];
    ensure(densities == want, || format!("densities {densities:?}"))?;
    ensure(lines[10] == "W(4,3,2) 285", || format!("last row {:?}", lines[10]))?;
    Ok("densities 64 48 36 27 24 18 32 12 16 8, W(4,3,2) 285".into())
}

fn weight_452() -> Outcome {
    let w = weight(4, 5, 2).map_err(|e| e.to_string())?;
    ensure(w == BigInt::from(6069), || format!("W(4,5,2) = {w}"))?;
    let c = kl_core::combinatorics::weight_closed_form(4, 5, 2).map_err(|e| e.to_string())?;
    ensure(c == w, || format!("closed form {c}"))?;
    Ok("W(4,5,2) = 6069 by enumeration and closed form".into())
}

fn f3_both_constructors() -> Outcome {
    let d = kl_direct(3).map_err(|e| e.to_string())?.poly;
    let c = kl_closed_form(3).map_err(|e| e.to_string())?.poly;
    let want = &DiffPoly::from_monomial(DiffMonomial::derivative(2)).scale_int(&BigInt::from(2))
        - &DiffPoly::u().scale(&LambdaPoly::monomial(2, 2));
    ensure(d == want, || format!("direct gave {d}"))?;
    let sd = serde_json::to_string(&d).unwrap();
    let sc = serde_json::to_string(&c).unwrap();
    ensure(sd == sc, || format!("{sd} vs {sc}"))?;
    ensure(d.to_string() == "2·u'' − 2·λ^2·u", || d.to_string())?;
    Ok(format!("{d}, serializations identical ({} bytes)", sd.len()))
}

fn direct_vs_closed_form() -> Outcome {
    for n in 1..=8 {
        let d = kl_direct(n).map_err(|e| e.to_string())?;
        let c = kl_closed_form(n).map_err(|e| e.to_string())?;
        ensure(d.poly == c.poly, || format!("n = {n} differs"))?;
    }
    Ok("identical for 1 ≤ n ≤ 8".into())
}

fn c_star_zero() -> Outcome {
    let mut count = 0;
    for n in 1..=8u32 {
        for j in 1..=n as usize {
            let a = c_star(n, j).map_err(|e| e.to_string())?;
            let b = c_star_factorial_form(n, j).map_err(|e| e.to_string())?;
            ensure(a.is_zero() && b.is_zero(), || format!("n = {n}, j = {j}: {a}, {b}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs (n, j), both forms 0"))
}

fn first_order() -> Outcome {
    for n in 1..=8 {
        let r = reduce_first_order(&kl_direct(n).map_err(|e| e.to_string())?.poly);
        ensure(r.is_zero(), || format!("n = {n}: residual {r}"))?;
    }
    Ok("quotient by u' = λu is 0 for 1 ≤ n ≤ 8".into())
}

fn second_order() -> Outcome {
    for n in [1, 3, 5, 7] {
        let r = reduce_second_order(&kl_direct(n).map_err(|e| e.to_string())?.poly);
        ensure(r.is_zero(), || format!("n = {n}: residual {r}"))?;
    }
    let r2 = reduce_second_order(&kl_direct(2).unwrap().poly);
    ensure(r2.to_string() == "u' − λ·u", || format!("n = 2 residual {r2}"))?;
    let mut observed = vec![format!("n=2: {r2}")];
    for n in [4, 6, 8] {
        let r = reduce_second_order(&kl_direct(n).unwrap().poly);
        observed.push(format!("n={n}: {} terms", r.terms().count()));
    }
    Ok(format!("odd n ≤ 7 vanish; observed {}", observed.join(", ")))
}

fn linear_chain() -> Outcome {
    for n in 2..=12u32 {
        let lin = linear_part_of(&kl_direct(n).map_err(|e| e.to_string())?);
        let h = h_poly(n).unwrap();
        for alpha in 0..n {
            let c = &lin.c[alpha as usize];
            let s = c_alpha_formula(n, alpha).unwrap();
            ensure(*c == s, || format!("n = {n}: C_{alpha} = {c}, formula {s}"))?;
            let hc = h.coeff(n - 1 - alpha);
            ensure(*c == hc, || format!("n = {n}: C_{alpha} = {c}, h coefficient {hc}"))?;
        }
        ensure(lin.as_diff_poly() == linear_factorization(n).unwrap(), || {
            format!("n = {n}: factorization differs")
        })?;
    }
    let c5: Vec<String> = linear_part_of(&kl_direct(5).unwrap())
        .c
        .iter()
        .map(|x| x.to_string())
        .collect();
    Ok(format!("2 ≤ n ≤ 12 agree; n = 5 gives C = ({})", c5.join(", ")))
}

fn roots_of_unity() -> Outcome {
    let mut evaluations = 0;
    for n in 3..=10 {
        let h = h_poly(n).unwrap();
        for m in 3..=10 {
            let got = thm5_verdict(n, m).map_err(|e| e.to_string())?;
            let want = expected_thm5_survivors(m);
            ensure(got == want, || format!("n = {n}, m = {m}: {got:?} vs {want:?}"))?;
            for r in 0..m {
                let exact = linear_part_at_root_of_unity(n, m, r).unwrap().is_zero();
                let numeric = h_at_root_of_unity_precise(&h, m, r, 100).below(-50);
                ensure(exact == numeric, || {
                    format!("n = {n}, m = {m}, r = {r}: exact {exact}, numeric {numeric}")
                })?;
                evaluations += 1;
            }
        }
    }
    Ok(format!(
        "verdicts match over 3 ≤ n, m ≤ 10; {evaluations} 100-digit evaluations agree at 1e-50"
    ))
}

fn lambda_zero() -> Outcome {
    for k in 1..=10 {
        let v = lambda_zero_pattern(k, k).map_err(|e| e.to_string())?;
        let want = DiffPoly::from_monomial(DiffMonomial::derivative(k)).scale_int(&BigInt::from(k));
        ensure(v.linear_part_at_zero == want, || {
            format!("k = {k}: {}", v.linear_part_at_zero)
        })?;
    }
    Ok("linear part of f_(k+1,0) is k·u^(k) for 1 ≤ k ≤ 10".into())
}

fn property_suites() -> Outcome {
    for j in 1..=6 {
        let table = weight_a_coefficients(j).unwrap();
        for k in 1..=j {
            for alpha in 0..=6u32 {
                let e = weight(j, alpha as i64, k).unwrap();
                let c = weight_closed_form_with(&table, alpha, k).map_err(|e| e.to_string())?;
                ensure(e == c, || format!("W({j},{alpha},{k}): {e} vs {c}"))?;
            }
        }
    }
    for j in 1..=5 {
        for alpha in 0..=5 {
            for beta in enumerate_compositions(j, alpha, 1).unwrap() {
                let paths = word_by_choice_paths(beta.entries());
                let sum: BigInt = paths.terms().map(|(_, c)| c.coeff(0)).sum();
                ensure(sum == density(&beta), || format!("density of {beta}"))?;
                ensure(paths == differential_word(&beta), || format!("word of {beta}"))?;
            }
        }
    }
    for n in 1..=20u32 {
        let g = g_poly(n);
        for alpha in 0..=n {
            let want = if n <= 12 {
                sum_of_products_by_subsets(n, alpha)
            } else {
                sum_of_products(n as i64, alpha as i64)
            };
            ensure(g.coeff(alpha) == want, || format!("[z^{alpha}] g_{n}"))?;
        }
    }
    for n in 1..=15 {
        for m in 1..=n {
            let (l, r) = factorial_sum_check(n, m).map_err(|e| e.to_string())?;
            ensure(l == r, || format!("factorial sum n = {n}, m = {m}"))?;
        }
    }
    for n in 1..=20 {
        for m in 1..=20 {
            ensure(convolution(n, m).is_zero(), || format!("convolution n = {n}, m = {m}"))?;
        }
    }
    for j in 1..=6u32 {
        for k in 1..=j {
            for alpha in 0..=6u32 {
                let got = enumerate_compositions(j as usize, alpha as i64, k as usize)
                    .unwrap()
                    .len();
                ensure(BigInt::from(got) == stars_and_bars(j, alpha, k), || {
                    format!("|Z_({j},{alpha},{k})| = {got}")
                })?;
            }
        }
    }
    Ok("weights, densities, g_n, factorial sum, convolution, composition counts".into())
}

fn numeric_spot_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let polys: Vec<_> = (1..=6).map(|n| kl_direct(n).unwrap().poly).collect();
    let mut worst = 0.0f64;
    for i in 0..200u32 {
        let n = 1 + i % 6;
        let hyp = if n % 2 == 1 && i % 2 == 0 {
            Hypothesis::SecondOrder
        } else {
            Hypothesis::FirstOrder
        };
        let (sol, x) = random_solution(&mut rng, hyp);
        let res = evaluate_at_exponential(&polys[n as usize - 1], &sol, x)
            .map_err(|e| e.to_string())?
            .relative_residual();
        ensure(res < 1e-9, || format!("sample {i}, n = {n}, {hyp:?}: {res:e}"))?;
        worst = worst.max(res);
    }
    let i = Complex64::i();
    let sine = ExpSolution::new(i, 2, vec![(-i * 0.5, 0), (i * 0.5, 1)]).unwrap();
    for n in [1, 3, 5, 7] {
        let p = kl_direct(n).unwrap().poly;
        for x in [-1.5, 0.0, 0.3, 2.0] {
            let res = evaluate_at_exponential(&p, &sine, Complex64::new(x, 0.0))
                .unwrap()
                .relative_residual();
            ensure(res < 1e-9, || format!("sin x, n = {n}, x = {x}: {res:e}"))?;
            worst = worst.max(res);
        }
    }
    Ok(format!(
        "200 samples and sin x with λ = i, worst relative residual {worst:.2e}"
    ))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "table 4 3 2",
            limit: secs(1),
            run: table_432,
        },
        Criterion {
            id: 2,
            name: "W(4,5,2)",
            limit: secs(1),
            run: weight_452,
        },
        Criterion {
            id: 3,
            name: "f_3 from both constructors",
            limit: secs(1),
            run: f3_both_constructors,
        },
        Criterion {
            id: 4,
            name: "direct = closed form, n ≤ 8",
            limit: secs(60),
            run: direct_vs_closed_form,
        },
        Criterion {
            id: 5,
            name: "coefficient sums C*",
            limit: secs(60),
            run: c_star_zero,
        },
        Criterion {
            id: 6,
            name: "first-order quotient",
            limit: None,
            run: first_order,
        },
        Criterion {
            id: 7,
            name: "second-order quotient",
            limit: None,
            run: second_order,
        },
        Criterion {
            id: 8,
            name: "linear part chain",
            limit: secs(10),
            run: linear_chain,
        },
        Criterion {
            id: 9,
            name: "roots of unity",
            limit: secs(30),
            run: roots_of_unity,
        },
        Criterion {
            id: 10,
            name: "linear part at λ = 0",
            limit: None,
            run: lambda_zero,
        },
        Criterion {
            id: 11,
            name: "property suites",
            limit: secs(120),
            run: property_suites,
        },
        Criterion {
            id: 12,
            name: "numeric spot checks",
            limit: None,
            run: numeric_spot_checks,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(" / {l:?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {}: {detail} ({elapsed:.2?}{limit})", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{:>2}] {}: {detail} ({elapsed:.2?}{limit})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
