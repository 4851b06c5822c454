//! Workloads shared by the criterion benches.

use kl_core::klpoly::{c_star, kl_closed_form, kl_direct};
use kl_core::reductions::reduce_first_order;

/// Builds `f_n` both ways and checks they agree.
pub fn oracle_round(n: u32) -> bool {
    kl_direct(n).unwrap().poly == kl_closed_form(n).unwrap().poly
}

/// `C*_j` for every `j` at a fixed `n`.
pub fn c_star_row(n: u32) -> bool {
    (1..=n as usize).all(|j| c_star(n, j).unwrap() == 0.into())
}

pub fn first_identity(n: u32) -> bool {
    reduce_first_order(&kl_direct(n).unwrap().poly).is_zero()
}
