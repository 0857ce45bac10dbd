//! Rank-one quotients of `C^2 (x) O_X` on `p_g = 0` surfaces, via the two torus-fixed
//! loci and the limit `y -> 1` taken in jets of `t = 1 - y`.

use std::sync::Arc;

use crate::algebra::{rat, Jet, JetContext, Rat, Ring, Series};
use crate::error::{Error, Result};
use crate::roots::newton_root;

/// `u/t` where `u` solves `-q = u/((1-u)(t + (1-t)u))`, as a series in `q` over jets in `t`.
pub fn u_over_t(jctx: &Arc<JetContext>, trunc: i64) -> Result<Series<Jet>> {
    let t = Jet::var(jctx, "t");
    let one = Jet::one_in(jctx);
    let q = Series::gen(jctx, trunc);
    // ũ + q (1 - tũ)(1 + (1-t)ũ) = 0
    let lin = one.minus(&t.scale(&rat(2)));
    let quad = t.times(&one.minus(&t)).negated();
    let g = vec![q.clone(), &Series::one(jctx, trunc) + &q.mul_coeff(&lin), q.mul_coeff(&quad)];
    newton_root(&g, &Jet::zero_in(jctx))
}

/// `v/t` where `v` solves `-q = v/((1-v)(1 - y^{-1} + y^{-1} v))`, `y = 1 - t`.
pub fn v_over_t(jctx: &Arc<JetContext>, trunc: i64) -> Result<Series<Jet>> {
    let t = Jet::var(jctx, "t");
    let one = Jet::one_in(jctx);
    let q = Series::gen(jctx, trunc);
    // -q + ((1-t) + q(1+t)) ṽ - q t ṽ^2 = 0
    let lin = &Series::constant(one.minus(&t), trunc) + &q.mul_coeff(&one.plus(&t));
    let g = vec![q.neg_series(), lin, q.mul_coeff(&t.negated())];
    newton_root(&g, &Jet::zero_in(jctx))
}

/// `u` itself, whose coefficients `lemma_uv_coeffs` gives in closed form, with `t` capped at `cap`.
pub fn lemma_u(cap: u32, trunc: i64) -> Result<Series<Jet>> {
    let jctx = JetContext::new(&["t"], &[cap]);
    let ut = u_over_t(&JetContext::new(&["t"], &[cap.saturating_sub(1)]), trunc)?;
    let t = Jet::var(&jctx, "t");
    Ok(ut.map_coeffs(&jctx, |c| lift_jet(c, &jctx).times(&t)))
}

/// `v` itself, with `t` capped at `cap`.
pub fn lemma_v(cap: u32, trunc: i64) -> Result<Series<Jet>> {
    let jctx = JetContext::new(&["t"], &[cap]);
    let vt = v_over_t(&JetContext::new(&["t"], &[cap.saturating_sub(1)]), trunc)?;
    let t = Jet::var(&jctx, "t");
    Ok(vt.map_coeffs(&jctx, |c| lift_jet(c, &jctx).times(&t)))
}

fn lift_jet(c: &Jet, to: &Arc<JetContext>) -> Jet {
    let terms = c.terms();
    Jet::from_terms(to, &terms)
}

/// `Z = sum_n q^n chi^vir(Quot_n, O)` for `chi = chi(O_X) in {0, 1}`.
pub fn rank1_series(chi: i64, k2: i64, trunc: i64) -> Result<Series<Rat>> {
    if !(0..=1).contains(&chi) {
        return Err(Error::HypothesisViolation(format!("rank-one invariants need chi(O) in {{0, 1}}, got {chi}")));
    }
    let jctx = JetContext::new(&["t"], &[chi as u32]);
    let t = Jet::var(&jctx, "t");
    let one = Jet::one_in(&jctx);
    let omt = one.minus(&t);
    let u = u_over_t(&jctx, trunc)?;
    let v = v_over_t(&jctx, trunc)?;
    let s1 = Series::one(&jctx, trunc);
    // (1 + (1-t) t ũ^2) / (1 + (1-t) ũ)
    let ru = (&s1 + &(&u * &u).mul_coeff(&omt.times(&t))).div_series(&(&s1 + &u.mul_coeff(&omt)))?;
    // (1 - t ṽ^2) / (1 - ṽ)
    let rv = (&s1 - &(&v * &v).mul_coeff(&t)).div_series(&(&s1 - &v))?;
    let sign = if chi % 2 == 0 { one.clone() } else { one.negated() };
    let second = rv.pow(k2)?.mul_coeff(&sign.times(&omt.pow_u(chi as u32)));
    let bracket = &ru.pow(k2)? + &second;
    for k in 0..chi as u32 {
        let c = bracket.monomial_part(&[k]);
        if c.rats().iter().any(|x| x != &rat(0)) {
            return Err(Error::HypothesisViolation(format!("pole of order {} at y = 1 does not cancel", chi as u32 - k)));
        }
    }
    Ok(bracket.monomial_part(&[chi as u32]))
}
