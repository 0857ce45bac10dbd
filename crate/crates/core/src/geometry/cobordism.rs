//! Virtual cobordism series for `N = 1` and surfaces with `p_g > 0`.

use std::sync::Arc;

use crate::algebra::{rat, reversion, Coeff, Jet, JetContext, Rat, Ring, Series};
use crate::error::Result;

/// `h(q)` solving `q = h / g(h)`.
pub fn h_series<C: Coeff>(g: &Series<C>, trunc: i64) -> Result<Series<C>> {
    Ok(reversion(&g.truncate(trunc))?.truncate(trunc))
}

/// `P = sum_n q^n [P^n] = dh/dq`.
pub fn p_series<C: Coeff>(g: &Series<C>, trunc: i64) -> Result<Series<C>> {
    Ok(h_series(g, trunc + 1)?.derivative().truncate(trunc))
}

/// `P_l = (l h / g(l h)) dh/dq`.
pub fn p_ell_series<C: Coeff>(g: &Series<C>, ell: i64, trunc: i64) -> Result<Series<C>> {
    let h = h_series(g, trunc + 1)?;
    let lh = h.scale(&rat(ell));
    let g_lh = g.truncate(trunc + 1).compose(&lh)?;
    let p = h.derivative();
    Ok((&lh.div_series(&g_lh)? * &p).truncate(trunc))
}

/// `A = -(1/q) P_{-1} / P^2`.
pub fn a_series<C: Coeff>(g: &Series<C>, trunc: i64) -> Result<Series<C>> {
    let p = p_series(g, trunc + 1)?;
    let pm = p_ell_series(g, -1, trunc + 1)?;
    let a = pm.div_series(&(&p * &p))?.shift(-1).neg_series();
    Ok(a.truncate(trunc))
}

/// `Z = SW(beta) q^{-K.beta} A^{K^2 - K.beta}`.
pub fn cobordism_series<C: Coeff>(g: &Series<C>, k2: i64, beta_k: i64, sw: i64, trunc: i64) -> Result<Series<C>> {
    let a = a_series(g, trunc + beta_k.max(0))?;
    Ok(a.pow(k2 - beta_k)?.scale(&rat(sw)).shift(-beta_k))
}

/// `g(x) = 1 + y x^2` over a single jet variable `y`.
pub fn pontryagin_genus(jctx: &Arc<JetContext>, trunc: i64) -> Series<Jet> {
    let y = Jet::var(jctx, &jctx.names()[0]);
    let c = vec![Jet::one_in(jctx), Jet::zero_in(jctx), y];
    Series::new(jctx, 0, trunc + 2, c).with_var("x")
}

/// `A = (1/2)(1 + s) s` with `s = sqrt(1 - 4 q^2 y)`.
pub fn pontryagin_closed(jctx: &Arc<JetContext>, trunc: i64) -> Result<Series<Jet>> {
    let y = Jet::var(jctx, &jctx.names()[0]);
    let inner = &Series::one(jctx, trunc) - &Series::monomial(y.scale(&rat(4)), 2, trunc);
    let s = inner.sqrt()?;
    let half = Rat::new(1.into(), 2.into());
    Ok((&(&Series::one(jctx, trunc) + &s) * &s).scale(&half))
}

/// The Pontryagin `A` series with `y` specialized to a rational value.
pub fn pontryagin_at(y: &Rat, trunc: i64) -> Result<Series<Rat>> {
    let g = Series::from_rats(&(), &[rat(1), rat(0), y.clone()], trunc + 2).with_var("x");
    a_series(&g, trunc)
}
