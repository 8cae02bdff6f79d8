mod common;

use anomaly_core::algebra::{rat, Family, Generator, GradedPoly};
use anomaly_core::lambda::{
    adams, lambda_power, lambda_powers, sym_power, sym_powers, theta_series, ThetaKind, VirtualBundle,
};
use anomaly_core::Error;
use common::*;

const TRUNC: u32 = 8;
const ROOTS: [u8; 3] = [1, 2, 3];

/// W = L_1 ⊕ L_2 ⊕ L_3 with explicit first Chern classes x_j.
fn w() -> VirtualBundle {
    VirtualBundle::from_ch(line_sum_ch(&ROOTS, 1, TRUNC)).unwrap()
}

fn e_x(j: u8) -> GradedPoly {
    GradedPoly::generator(Generator::Root(j), TRUNC).exp().unwrap()
}

/// Coefficients of ∏_j (1 + s_j·e^{x_j}·t) in t, where s_j = 1 for λ and
/// the complete homogeneous sum for S.
fn elementary_in_exp(k: usize) -> GradedPoly {
    let mut e = vec![GradedPoly::one(TRUNC)];
    for &j in &ROOTS {
        let mut next = e.clone();
        next.push(GradedPoly::zero(TRUNC));
        for i in 1..next.len() {
            next[i] = &next[i] + &(&e[i - 1] * &e_x(j));
        }
        e = next;
    }
    e.get(k).cloned().unwrap_or_else(|| GradedPoly::zero(TRUNC))
}

fn complete_in_exp(k: u32) -> GradedPoly {
    // h_k = Σ over multisets of size k
    fn rec(start: usize, left: u32, acc: GradedPoly) -> GradedPoly {
        if left == 0 {
            return acc;
        }
        let mut total = GradedPoly::zero(TRUNC);
        for i in start..ROOTS.len() {
            total = &total + &rec(i, left - 1, &acc * &e_x(ROOTS[i]));
        }
        total
    }
    rec(0, k, GradedPoly::one(TRUNC))
}

#[test]
fn adams_against_roots() {
    for k in 1..=4u32 {
        let expected = line_sum_ch(&ROOTS, k as i64, TRUNC);
        assert_eq!(adams(k, &w()).unwrap().ch(), &expected, "ψ^{k}");
    }
    assert_eq!(adams(0, &w()), Err(Error::ZeroAdams));
}

#[test]
fn adams_composes_and_is_multiplicative() {
    let t = VirtualBundle::reduced_complexified(Family::X, 12);
    let v = VirtualBundle::reduced_complexified(Family::V, 12);
    assert_eq!(adams(2, &adams(3, &t).unwrap()).unwrap(), adams(6, &t).unwrap());
    assert_eq!(adams(3, &t.tensor(&v)).unwrap(), adams(3, &t).unwrap().tensor(&adams(3, &v).unwrap()));
    assert_eq!(adams(2, &t.direct_sum(&v)).unwrap(), adams(2, &t).unwrap().direct_sum(&adams(2, &v).unwrap()));
}

#[test]
fn exterior_powers_against_roots() {
    let lam = lambda_powers(&w(), 5);
    for k in 0..=5 {
        assert_eq!(lam[k].ch(), &elementary_in_exp(k), "λ^{k}");
    }
    // λ² = Σ_{i<j} e^{x_i + x_j}
    let mut pairs = GradedPoly::zero(TRUNC);
    for i in 0..3 {
        for j in i + 1..3 {
            pairs = &pairs + &(&e_x(ROOTS[i]) * &e_x(ROOTS[j]));
        }
    }
    assert_eq!(lambda_power(2, &w()).ch(), &pairs);
}

#[test]
fn symmetric_powers_against_roots() {
    let sym = sym_powers(&w(), 4);
    for k in 0..=4u32 {
        assert_eq!(sym[k as usize].ch(), &complete_in_exp(k), "S^{k}");
    }
    let mut pairs = GradedPoly::zero(TRUNC);
    for i in 0..3 {
        for j in i..3 {
            pairs = &pairs + &(&e_x(ROOTS[i]) * &e_x(ROOTS[j]));
        }
    }
    assert_eq!(sym_power(2, &w()).ch(), &pairs);
}

#[test]
fn sym_and_lambda_are_inverse_generating_functions() {
    // Σ_k (−1)^k S^{n−k} λ^k = 0 for n ≥ 1
    let t = VirtualBundle::reduced_complexified(Family::X, 12);
    let lam = lambda_powers(&t, 5);
    let sym = sym_powers(&t, 5);
    for n in 1..=5usize {
        let mut acc = VirtualBundle::zero(12);
        for k in 0..=n {
            let term = sym[n - k].tensor(&lam[k]);
            acc = if k % 2 == 0 { acc.direct_sum(&term) } else { acc.difference(&term) };
        }
        assert!(acc.ch().is_zero(), "n = {n}");
    }
}

#[test]
fn lambda_of_direct_sum() {
    let t = VirtualBundle::reduced_complexified(Family::X, 12);
    let v = VirtualBundle::reduced_complexified(Family::V, 12);
    let lhs = lambda_power(2, &t.direct_sum(&v));
    let rhs = lambda_power(2, &t).direct_sum(&t.tensor(&v)).direct_sum(&lambda_power(2, &v));
    assert_eq!(lhs, rhs);
}

#[test]
fn reduced_lambda_of_roots() {
    // λ_t(W − 3) = λ_t(W)·(1 + t)^{−3}
    let reduced = w().reduced();
    let lam = lambda_powers(&reduced, 4);
    for k in 0..=4usize {
        let mut expected = GradedPoly::zero(TRUNC);
        for i in 0..=k {
            // coefficient of t^{k−i} in (1 + t)^{−3} is (−1)^{k−i} C(k−i+2, 2)
            let n = (k - i) as i64;
            let c = if n % 2 == 0 { 1 } else { -1 } * (n + 2) * (n + 1) / 2;
            expected = &expected + &elementary_in_exp(i).scale(&rat(c));
        }
        assert_eq!(lam[k].ch(), &expected, "λ^{k}(W − 3)");
    }
}

#[test]
fn trivial_bundle_powers_are_binomial() {
    let triv = VirtualBundle::trivial(5, TRUNC);
    assert_eq!(lambda_power(2, &triv), VirtualBundle::trivial(10, TRUNC));
    assert_eq!(sym_power(2, &triv), VirtualBundle::trivial(15, TRUNC));
    assert_eq!(lambda_power(6, &triv), VirtualBundle::zero(TRUNC));
}

#[test]
fn tangent_ch_matches_roots() {
    // T_C with roots ±t_j: ch = Σ 2cosh(t_j)
    let trunc = 12;
    let r = 4;
    let t = VirtualBundle::complexified(Family::X, 2 * r as i64, trunc);
    let cosh: Vec<_> = (0..=3u32)
        .map(|n| anomaly_core::algebra::Rational::new(2.into(), fact(2 * n)))
        .collect();
    let mut expected = GradedPoly::zero(trunc);
    for j in 1..=r {
        let mut f = GradedPoly::zero(trunc);
        let mut p = GradedPoly::one(trunc);
        for c in &cosh {
            f = &f + &p.scale(c);
            p = &p * &y(j, trunc);
        }
        expected = &expected + &f;
    }
    assert_eq!(substitute_roots(t.ch(), Family::X, r), expected);
}

fn tx() -> VirtualBundle {
    VirtualBundle::reduced_complexified(Family::X, 12)
}

#[test]
fn theta_one_low_coefficients() {
    let t = tx();
    let th = theta_series(ThetaKind::Theta1, &t, None, 2).unwrap();
    assert_eq!(th.coeff(0), VirtualBundle::trivial(1, 12));
    assert_eq!(th.coeff(1), VirtualBundle::zero(12));
    assert_eq!(th.coeff(2), t.multiple(2));
    let q2 = t
        .multiple(2)
        .direct_sum(&lambda_power(2, &t))
        .direct_sum(&t.tensor(&t))
        .direct_sum(&sym_power(2, &t));
    assert_eq!(th.coeff(4), q2);
}

#[test]
fn theta_two_low_coefficients() {
    let t = tx();
    let th = theta_series(ThetaKind::Theta2, &t, None, 2).unwrap();
    assert_eq!(th.coeff(1), t.multiple(-1));
    assert_eq!(th.coeff(2), t.direct_sum(&lambda_power(2, &t)));
    let q32 = lambda_power(3, &t).direct_sum(&t.tensor(&t)).direct_sum(&t).multiple(-1);
    assert_eq!(th.coeff(3), q32);
    let q2 = lambda_power(4, &t)
        .direct_sum(&lambda_power(2, &t).tensor(&t))
        .direct_sum(&t.tensor(&t))
        .direct_sum(&sym_power(2, &t))
        .direct_sum(&t);
    assert_eq!(th.coeff(4), q2);
}

#[test]
fn theta_three_is_the_shift_of_theta_two() {
    let t = tx();
    let two = theta_series(ThetaKind::Theta2, &t, None, 3).unwrap();
    let three = theta_series(ThetaKind::Theta3, &t, None, 3).unwrap();
    assert_eq!(two.ch().tau_shift_half(), three.ch());
}

#[test]
fn theta_of_trivial_bundle_is_one() {
    let triv = VirtualBundle::trivial(8, 8);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let th = theta_series(kind, &triv, None, 3).unwrap();
        assert_eq!(th.terms().count(), 1);
        assert_eq!(th.coeff(0), VirtualBundle::trivial(1, 8));
    }
    let th = theta_series(ThetaKind::ThetaV, &triv, Some(&triv), 2).unwrap();
    assert_eq!(th.terms().count(), 1);
}

#[test]
fn theta_exponential_law() {
    let a = VirtualBundle::reduced_complexified(Family::X, 8);
    let b = VirtualBundle::reduced_complexified(Family::V, 8);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let sum = theta_series(kind, &a.direct_sum(&b), None, 2).unwrap();
        let prod = theta_series(kind, &a, None, 2)
            .unwrap()
            .tensor(&theta_series(kind, &b, None, 2).unwrap());
        assert_eq!(sum.ch(), prod.ch(), "{kind:?}");
    }
}

#[test]
fn twisted_theta_needs_aux_bundle() {
    assert!(matches!(
        theta_series(ThetaKind::ThetaV, &tx(), None, 2),
        Err(Error::MissingAuxBundle(_))
    ));
    assert!(matches!(
        theta_series(ThetaKind::ThetaL, &tx(), None, 2),
        Err(Error::MissingAuxBundle(_))
    ));
}

#[test]
fn theta_v_low_coefficients() {
    // the two half-integer factors cancel at q^{1/2}; at q they give
    // 2λ²Ṽ − Ṽ⊗Ṽ next to T̃ from S_q and Ṽ from Λ_q
    let t = tx();
    let v = VirtualBundle::reduced_complexified(Family::V, 12);
    let th = theta_series(ThetaKind::ThetaV, &t, Some(&v), 2).unwrap();
    assert_eq!(th.coeff(1), VirtualBundle::zero(12));
    let q1 = t
        .direct_sum(&v)
        .direct_sum(&lambda_power(2, &v).multiple(2))
        .difference(&v.tensor(&v));
    assert_eq!(th.coeff(2), q1);
}
