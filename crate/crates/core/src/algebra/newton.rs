//! Power sums of formal Chern roots expressed in Pontryagin generators.

use super::generator::{Family, Generator};
use super::poly::GradedPoly;
use super::rational::rat;
use crate::error::{Error, Result};

/// s_{2m} = Σ_j t_j^{2m} in terms of p_i = e_i(t_1², t_2², …), truncated.
///
/// Newton's identities in the variables y_j = t_j²:
/// P_m = Σ_{i=1}^{m-1} (−1)^{i−1} p_i P_{m−i} + (−1)^{m−1} m p_m.
pub fn power_sum_in_pontryagin(m: u32, family: Family, trunc: u32) -> Result<GradedPoly> {
    Ok(power_sums(m, family, trunc)?.pop().unwrap())
}

/// `[s_2, s_4, …, s_{2m}]`.
pub fn power_sums(m: u32, family: Family, trunc: u32) -> Result<Vec<GradedPoly>> {
    if m == 0 {
        return Err(Error::ZeroPowerSum);
    }
    if family == Family::Line {
        let c = GradedPoly::generator(Generator::ChernL, trunc);
        return Ok((1..=m).map(|k| c.pow(2 * k)).collect());
    }
    let p = |i: u32| -> GradedPoly {
        if 4 * i > trunc {
            GradedPoly::zero(trunc)
        } else {
            GradedPoly::generator(family.pontryagin(i as u8).unwrap(), trunc)
        }
    };
    let mut sums: Vec<GradedPoly> = Vec::with_capacity(m as usize);
    for k in 1..=m {
        if 4 * k > trunc {
            sums.push(GradedPoly::zero(trunc));
            continue;
        }
        let sign = |i: u32| if i % 2 == 1 { 1 } else { -1 };
        let mut s = p(k).scale(&rat(sign(k) * k as i64));
        for i in 1..k {
            let term = &p(i) * &sums[(k - i - 1) as usize];
            s = &s + &term.scale(&rat(sign(i)));
        }
        sums.push(s);
    }
    Ok(sums)
}
