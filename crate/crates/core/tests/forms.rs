mod common;

use anomaly_core::algebra::{frac, rat, Family, Generator, GradedPoly, Rational};
use anomaly_core::forms::{
    ahat_form, aux_bundle_factor, multiplicative_genus_eval, spinor_ch, AuxFactor, GenusSeries,
};
use anomaly_core::Error;
use common::*;

fn roots_for(trunc: u32) -> u8 {
    (trunc / 4) as u8 + 1
}

#[test]
fn ahat_against_explicit_roots() {
    for trunc in [4u32, 8, 12, 16, 20] {
        let r = roots_for(trunc);
        let n = (trunc / 4) as usize + 1;
        let expected = root_product(&series_inverse(&sinhc_half_y(n)), r, trunc);
        let got = ahat_form(2 * trunc, trunc).unwrap();
        assert_eq!(substitute_roots(&got, Family::X, r), expected, "trunc {trunc}");
    }
}

#[test]
fn spinor_against_explicit_roots() {
    for dim in [4u32, 8, 12, 16, 20] {
        let r = roots_for(dim);
        let n = (dim / 4) as usize + 1;
        let pairs = dim / 2;
        let mult = Rational::from_integer(num::BigInt::from(2).pow(pairs));
        let expected = root_product(&cosh_half_y(n), r, dim).scale(&mult);
        let got = spinor_ch(dim).unwrap();
        assert_eq!(substitute_roots(&got, Family::X, r), expected, "dim {dim}");
    }
}

#[test]
fn det_cosh_against_explicit_roots() {
    for trunc in [4u32, 8, 12, 16, 20] {
        let r = roots_for(trunc);
        let n = (trunc / 4) as usize + 1;
        let expected = root_product(&cosh_half_y(n), r, trunc);
        let got = aux_bundle_factor(AuxFactor::DetCosh(Family::V), trunc).unwrap();
        assert_eq!(substitute_roots(&got, Family::V, r), expected, "trunc {trunc}");
    }
}

#[test]
fn det_cosh_of_line() {
    let trunc = 12;
    let got = aux_bundle_factor(AuxFactor::DetCosh(Family::Line), trunc).unwrap();
    let c = GradedPoly::generator(Generator::ChernL, trunc);
    let mut expected = GradedPoly::zero(trunc);
    for (n, a) in cosh_half_y(4).iter().enumerate() {
        expected = &expected + &c.pow(2 * n as u32).scale(a);
    }
    assert_eq!(got, expected);
    assert_eq!(got, aux_bundle_factor(AuxFactor::CoshHalfC, trunc).unwrap());
}

#[test]
fn det_cosh_rejects_tangent_family() {
    assert!(aux_bundle_factor(AuxFactor::DetCosh(Family::X), 8).is_err());
}

#[test]
fn line_factors_against_taylor() {
    let trunc = 10;
    let c = GradedPoly::generator(Generator::ChernL, trunc);
    let mut exp = GradedPoly::zero(trunc);
    let mut sinh = GradedPoly::zero(trunc);
    let mut cosh = GradedPoly::zero(trunc);
    for n in 0..=5u32 {
        let term = c.pow(n).scale(&Rational::new(1.into(), fact(n) * num::BigInt::from(2).pow(n)));
        exp = &exp + &term;
        if n % 2 == 1 {
            sinh = &sinh + &term;
        } else {
            cosh = &cosh + &term;
        }
    }
    assert_eq!(aux_bundle_factor(AuxFactor::ExpHalfC, trunc).unwrap(), exp);
    assert_eq!(aux_bundle_factor(AuxFactor::SinhHalfC, trunc).unwrap(), sinh);
    assert_eq!(aux_bundle_factor(AuxFactor::CoshHalfC, trunc).unwrap(), cosh);
}

#[test]
fn low_degree_ahat_values() {
    assert_eq!(ahat_form(4, 4).unwrap(), poly(&[("1", 1, 1), ("pX1", -1, 24)], 4));
    let a8 = ahat_form(8, 8).unwrap().top_component(8);
    assert_eq!(a8, poly(&[("pX1^2", 7, 5760), ("pX2", -4, 5760)], 8));
}

#[test]
fn l_genus_from_explicit_roots() {
    // (t/2)/tanh(t/2) per root pair recovers L(X) scaled by 4^{-m} in degree 4m
    let trunc = 8;
    let r = 3;
    let lhat = root_product(&lhat_y(3), r, trunc);
    let ahat = substitute_roots(&ahat_form(8, trunc).unwrap(), Family::X, r);
    let cosh = root_product(&cosh_half_y(3), r, trunc);
    assert_eq!(lhat, &ahat * &cosh);
    // degree 4 component: p1/12 = 4^{-1}·L_1
    let deg4 = substitute_roots(&poly(&[("pX1", 1, 12)], trunc), Family::X, r);
    assert_eq!(lhat.top_component(4), deg4);
}

#[test]
fn genus_truncation_error() {
    let g = GenusSeries::new(vec![frac(1, 2)], rat(1));
    assert!(matches!(
        multiplicative_genus_eval(&g, Family::X, 4, 8),
        Err(Error::GenusTruncation { have: 1, need: 2, trunc: 8 })
    ));
    let triv = multiplicative_genus_eval(&GenusSeries::trivial(), Family::X, 4, 8).unwrap();
    assert_eq!(triv, GradedPoly::one(8));
}

#[test]
fn odd_dimensions_rejected() {
    assert!(ahat_form(5, 4).is_err());
    assert!(spinor_ch(6).is_err());
}
