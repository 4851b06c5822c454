//! `klpoly`: expand Kuchment-Lvin polynomials and run the verification
//! suites.

mod render;
mod report;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kl_core::klpoly::{kl_closed_form, kl_direct};
use serde_json::json;

use report::Report;
use suites::{Bounds, Suite};

#[derive(Parser)]
#[command(
    name = "klpoly",
    version,
    about = "Exact expansion and verification of Kuchment-Lvin polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expansion of f_n.
    Expand {
        n: u32,
        /// Build from the closed-form coefficients instead of operator application.
        #[arg(long)]
        closed_form: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Largest n accepted.
        #[arg(long, default_value_t = 10)]
        max: u32,
    },
    /// List the densities of every composition in Z_(j,α,k) and their sum.
    Table {
        j: usize,
        alpha: u32,
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite and print a report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest n (identities 8, cstar 8, linear 12, thm5 10).
        #[arg(long)]
        n_max: Option<u32>,
        /// Largest root-of-unity order m for thm5 (default 10).
        #[arg(long)]
        m_max: Option<u32>,
        /// Largest j for the weight and composition checks (default 6).
        #[arg(long)]
        j_max: Option<u32>,
        /// Largest α for the weight and composition checks (default 6).
        #[arg(long)]
        alpha_max: Option<u32>,
        /// Largest n for sums of products and the binomial convolution (default 20).
        #[arg(long)]
        s_max: Option<u32>,
        /// Number of random exponential solutions (default 200).
        #[arg(long)]
        samples: Option<u32>,
        /// Seed for the random exponential solutions (default 2024).
        #[arg(long)]
        seed: Option<u64>,
        /// Working precision in decimal digits for the root-of-unity cross-check (default 100).
        #[arg(long)]
        digits: Option<u32>,
        /// Omit the wall-time field so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Run checks on a pool of this many threads.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        parallel: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print C*_j for 1 ≤ j ≤ n by the composition sum and the factorial form.
    Cstar {
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the linear part of f_n with its generating polynomial and factorization.
    Linear {
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print h_(n−1)(z).
    Hpoly {
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(
    format: Format,
    text: impl FnOnce() -> kl_core::Result<String>,
    json: impl FnOnce() -> kl_core::Result<String>,
) -> ExitCode {
    let out = match format {
        Format::Text => text(),
        Format::Json => json(),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand {
            n,
            closed_form,
            format,
            max,
        } => {
            if n < 1 || n > max {
                return usage_error(format!("n must satisfy 1 ≤ n ≤ {max}, got {n}"));
            }
            let f = if closed_form { kl_closed_form(n) } else { kl_direct(n) };
            let f = match f {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            emit(
                format,
                || Ok(render::expansion_text(&f)),
                || Ok(render::expansion_json(&f)),
            )
        }
        Command::Table { j, alpha, k, format } => match render::table(j, alpha as i64, k) {
            Ok(t) => emit(format, || Ok(t.text()), || Ok(t.json())),
            Err(e) => usage_error(e),
        },
        Command::Cstar { n, format } => emit(format, || render::cstar_text(n), || render::cstar_json(n)),
        Command::Linear { n, format } => emit(format, || render::linear_text(n), || render::linear_json(n)),
        Command::Hpoly { n, format } => emit(format, || render::hpoly_text(n), || render::hpoly_json(n)),
        Command::Verify {
            suite,
            n_max,
            m_max,
            j_max,
            alpha_max,
            s_max,
            samples,
            seed,
            digits,
            no_timing,
            parallel,
            format,
        } => {
            let bounds = Bounds {
                n_max,
                m_max,
                j_max,
                alpha_max,
                s_max,
                samples,
                seed,
                digits,
            };
            let tasks = match suites::tasks(suite, &bounds) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let start = Instant::now();
            let checks = match suites::run(&tasks, parallel.map(|k| k as usize)) {
                Ok(c) => c,
                Err(e) => return usage_error(e),
            };
            let wall = (!no_timing).then(|| start.elapsed().as_millis() as u64);
            let mut parameters = json!({
                "suite": suite.name(),
                "n_max": n_max,
                "m_max": m_max,
                "j_max": j_max,
                "alpha_max": alpha_max,
                "s_max": s_max,
                "samples": samples,
                "seed": seed,
                "digits": digits,
            });
            // Only bounds given on the command line; the rest are suite defaults.
            if let Some(map) = parameters.as_object_mut() {
                map.retain(|_, v| !v.is_null());
            }
            let report = Report::new("verify", parameters, checks, wall);
            match format {
                Format::Json => print!("{}", render::pretty(&report)),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
