use kl_core::combinatorics::{binomial, sum_of_products};
use kl_core::klpoly::*;
use kl_core::oracle::{apply_factor_by_product, factorial};
use kl_core::{BigInt, DiffMonomial, DiffPoly, LambdaPoly};
use num_traits::Zero;

#[test]
fn direct_equals_closed_form() {
    for n in 1..=8 {
        let d = kl_direct(n).unwrap();
        let c = kl_closed_form(n).unwrap();
        assert_eq!(d.provenance, Provenance::Direct);
        assert_eq!(c.provenance, Provenance::ClosedForm);
        assert_eq!(d.poly, c.poly, "n = {n}");
    }
}

#[test]
fn graded_and_constant_free() {
    for n in 1..=10 {
        let f = kl_direct(n).unwrap();
        assert!(f.is_graded(), "n = {n}");
        assert!(f.poly.get(&DiffMonomial::one()).is_none(), "n = {n}");
        // Every monomial has j + α + e = n.
        for (m, c) in f.poly.terms() {
            for (e, _) in c.terms() {
                assert_eq!(m.degree() as u32 + m.order() + e, n);
            }
        }
    }
}

#[test]
fn kth_terms_sum_to_direct() {
    for n in 1..=7 {
        let mut acc = DiffPoly::from_monomial(DiffMonomial::u_pow(n as usize));
        for k in 0..n {
            let term = kth_term(n, k).unwrap();
            let mut by_product = DiffPoly::from_monomial(DiffMonomial::u_pow(k as usize));
            for m in (0..n - k).rev() {
                by_product = apply_factor_by_product(&by_product, m);
            }
            assert_eq!(
                term,
                by_product.scale_int(&binomial(n as u64, k as u64)),
                "n = {n}, k = {k}"
            );
            acc = &acc + &term;
        }
        assert_eq!(acc, kl_direct(n).unwrap().poly, "n = {n}");
    }
}

#[test]
fn coefficient_sums_vanish() {
    for n in 1..=8 {
        let f = kl_direct(n).unwrap();
        for j in 1..=n as usize {
            assert!(c_star(n, j).unwrap().is_zero(), "C*({n},{j})");
            assert!(
                c_star_factorial_form(n, j).unwrap().is_zero(),
                "factorial form ({n},{j})"
            );
            assert!(c_star_from_expansion(&f.poly, j).is_zero(), "expansion ({n},{j})");
        }
    }
}

#[test]
fn linear_part_chain() {
    for n in 2..=12u32 {
        let lin = linear_part(n).unwrap();
        let h = h_poly(n).unwrap();
        let fact = linear_factorization(n).unwrap();
        assert_eq!(lin.as_diff_poly(), fact, "factorization, n = {n}");
        for alpha in 0..n {
            assert_eq!(
                lin.c[alpha as usize],
                c_alpha_formula(n, alpha).unwrap(),
                "C_{alpha}, n = {n}"
            );
            assert_eq!(lin.c[alpha as usize], h.coeff(n - 1 - alpha), "h coefficient, n = {n}");
        }
        for c in kernel_exponents(n).unwrap() {
            assert!(lin.residual_at(c).is_zero(), "kernel {c}, n = {n}");
        }
        // Leading coefficient and the degree-one sum.
        assert_eq!(lin.c[n as usize - 1], BigInt::from(n - 1));
        assert!(lin.characteristic_poly().coefficient_sum().is_zero());
    }
}

#[test]
fn h_values_at_small_integers() {
    // h_{n−1}(1) = 0 and h_{n−1}(−1) = 0 once n ≥ 3; h_{n−1}(0) = n − 1.
    for n in 3..=12u32 {
        let h = h_poly(n).unwrap();
        assert!(h.eval(&1.into()).is_zero());
        assert!(h.eval(&(-1).into()).is_zero());
        assert_eq!(h.eval(&0.into()), BigInt::from(n - 1));
        // h_{n−1}(2) = −(n−1)·∏(1+2a) = −(n−1)(2n−3)!!.
        let odd: BigInt = (1..=n as i64 - 2).map(|a| BigInt::from(1 + 2 * a)).product();
        assert_eq!(h.eval(&2.into()), -(BigInt::from(n - 1) * odd));
    }
}

#[test]
fn s_recurrence_corner_values() {
    // S(n, n) = n!, S(n, 1) = n(n+1)/2, S(n, 0) = 1 including n ≤ 0.
    for n in 0..=12i64 {
        assert_eq!(sum_of_products(n, n), factorial(n as u32));
        assert_eq!(sum_of_products(n, 1), BigInt::from(n * (n + 1) / 2));
    }
    assert_eq!(sum_of_products(-1, 0), 1.into());
}

#[test]
fn f3_serializations_agree() {
    let d = serde_json::to_string(&kl_direct(3).unwrap().poly).unwrap();
    let c = serde_json::to_string(&kl_closed_form(3).unwrap().poly).unwrap();
    assert_eq!(d, c);
    assert_eq!(kl_direct(3).unwrap().poly.to_string(), "2·u'' − 2·λ^2·u");
}

#[test]
fn linear_part_at_lambda_zero_is_top_derivative() {
    for n in 2..=11u32 {
        let lin = linear_part(n).unwrap().as_diff_poly().at_lambda_zero();
        let want = DiffPoly::term(DiffMonomial::derivative(n - 1), LambdaPoly::constant(n - 1));
        assert_eq!(lin, want);
    }
}

#[test]
fn rejects_out_of_range() {
    assert!(kl_direct(0).is_err());
    assert!(c_star(4, 0).is_err());
    assert!(c_star(4, 5).is_err());
    assert!(linear_part(1).is_err());
    assert!(c_alpha_formula(5, 5).is_err());
}
