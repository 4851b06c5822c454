//! Text and JSON renderings for the non-verification commands.

use kl_core::combinatorics::{density, enumerate_compositions, weight};
use kl_core::klpoly::{c_star, c_star_factorial_form, h_poly, kernel_exponents, linear_part};
use kl_core::{Composition, KLExpansion, Result};
use serde::Serialize;

/// Fixed, non-lexicographic row order kept for `Z_{4,3,2}`.
const TABLE_432_ORDER: [[u32; 4]; 10] = [
    [0, 0, 0, 3],
    [0, 0, 1, 2],
    [0, 0, 2, 1],
    [0, 0, 3, 0],
    [0, 1, 1, 1],
    [0, 1, 2, 0],
    [0, 1, 0, 2],
    [0, 2, 1, 0],
    [0, 2, 0, 1],
    [0, 3, 0, 0],
];

pub fn expansion_text(f: &KLExpansion) -> String {
    format!("{}\n", f.poly)
}

pub fn expansion_json(f: &KLExpansion) -> String {
    pretty(f)
}

pub struct Table {
    pub j: usize,
    pub alpha: i64,
    pub k: usize,
    pub rows: Vec<(Composition, kl_core::BigInt)>,
    pub weight: kl_core::BigInt,
}

pub fn table(j: usize, alpha: i64, k: usize) -> Result<Table> {
    let mut comps = enumerate_compositions(j, alpha, k)?;
    if (j, alpha, k) == (4, 3, 2) {
        comps.sort_by_key(|b| TABLE_432_ORDER.iter().position(|row| row[..] == *b.entries()));
    }
    let rows = comps
        .into_iter()
        .map(|b| {
            let d = density(&b);
            (b, d)
        })
        .collect();
    Ok(Table {
        j,
        alpha,
        k,
        rows,
        weight: weight(j, alpha, k)?,
    })
}

impl Table {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (b, d) in &self.rows {
            out.push_str(&format!("{b} {d}\n"));
        }
        out.push_str(&format!("W({},{},{}) {}\n", self.j, self.alpha, self.k, self.weight));
        out
    }

    pub fn json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            beta: &'a [u32],
            density: String,
        }
        #[derive(Serialize)]
        struct Out<'a> {
            j: usize,
            alpha: i64,
            k: usize,
            rows: Vec<Row<'a>>,
            weight: String,
        }
        pretty(&Out {
            j: self.j,
            alpha: self.alpha,
            k: self.k,
            rows: self
                .rows
                .iter()
                .map(|(b, d)| Row {
                    beta: b.entries(),
                    density: d.to_string(),
                })
                .collect(),
            weight: self.weight.to_string(),
        })
    }
}

/// `(n−1)·(∂ − λ)·(∂ + λ)·(∂ + 2λ)···`.
fn factorization_text(n: u32) -> String {
    let mut s = format!("{}·(∂ − λ)", n - 1);
    for a in 1..=n - 2 {
        if a == 1 {
            s.push_str("·(∂ + λ)");
        } else {
            s.push_str(&format!("·(∂ + {a}λ)"));
        }
    }
    s
}

fn signed(c: i64) -> String {
    if c < 0 {
        format!("−{}", -c)
    } else {
        c.to_string()
    }
}

pub fn linear_text(n: u32) -> Result<String> {
    let lin = linear_part(n)?;
    let h = h_poly(n)?;
    let mut out = String::new();
    for (alpha, c) in lin.c.iter().enumerate() {
        out.push_str(&format!("C_{alpha} = {c}\n"));
    }
    out.push_str(&format!("linear part: {}\n", lin.as_diff_poly()));
    out.push_str(&format!("h_{}(z) = {}\n", n - 1, h.display_with("z")));
    out.push_str(&format!("factorization: {}\n", factorization_text(n)));
    let kernel: Vec<String> = kernel_exponents(n)?.into_iter().map(signed).collect();
    out.push_str(&format!("kernel: e^(cλx) for c in {{{}}}\n", kernel.join(", ")));
    Ok(out)
}

fn decimal(v: &[kl_core::BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn linear_json(n: u32) -> Result<String> {
    #[derive(Serialize)]
    struct Out {
        n: u32,
        /// `C_0 … C_{n−1}`.
        c: Vec<String>,
        /// `h_{n−1}` coefficients, constant term first.
        h: Vec<String>,
        factorization: String,
        kernel_exponents: Vec<i64>,
    }
    Ok(pretty(&Out {
        n,
        c: decimal(&linear_part(n)?.c),
        h: decimal(&h_poly(n)?.to_dense()),
        factorization: factorization_text(n),
        kernel_exponents: kernel_exponents(n)?,
    }))
}

pub fn hpoly_text(n: u32) -> Result<String> {
    Ok(format!("h_{}(z) = {}\n", n - 1, h_poly(n)?.display_with("z")))
}

pub fn hpoly_json(n: u32) -> Result<String> {
    #[derive(Serialize)]
    struct Out {
        n: u32,
        coefficients: Vec<String>,
    }
    Ok(pretty(&Out {
        n,
        coefficients: decimal(&h_poly(n)?.to_dense()),
    }))
}

#[derive(Serialize)]
struct CStarRow {
    j: usize,
    c_star: String,
    factorial_form: String,
}

fn cstar_rows(n: u32) -> Result<Vec<CStarRow>> {
    if n == 0 {
        return Err(kl_core::Error::InvalidArgument {
            op: "cstar",
            reason: "n must be at least 1, got 0".into(),
        });
    }
    (1..=n as usize)
        .map(|j| {
            Ok(CStarRow {
                j,
                c_star: c_star(n, j)?.to_string(),
                factorial_form: c_star_factorial_form(n, j)?.to_string(),
            })
        })
        .collect()
}

pub fn cstar_text(n: u32) -> Result<String> {
    Ok(cstar_rows(n)?
        .into_iter()
        .map(|r| format!("C*_{} = {}  factorial form = {}\n", r.j, r.c_star, r.factorial_form))
        .collect())
}

pub fn cstar_json(n: u32) -> Result<String> {
    #[derive(Serialize)]
    struct Out {
        n: u32,
        values: Vec<CStarRow>,
    }
    Ok(pretty(&Out {
        n,
        values: cstar_rows(n)?,
    }))
}

/// Pretty JSON in the value's own field order, newline-terminated.
pub fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
