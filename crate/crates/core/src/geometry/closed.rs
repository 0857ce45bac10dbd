//! Explicit formulas, evaluated exactly as series in `q`.

use num_traits::One;

use crate::algebra::{rat, Poly, Rat, Series};
use crate::error::{Error, Result};
use crate::roots::{hensel_factor, newton_root, polyops, MonicSeriesPoly, RootBlock};

fn geometric(trunc: i64, power: i64) -> Result<Series<Rat>> {
    // (1 - q)^power
    Series::from_ints(&[1, -1], trunc).pow(power)
}

/// Named closed forms with their parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// Constant `1`.
    Taut0,
    /// `-r K^2 q^2/(1-q)^2 - c1K q/(1-q)`.
    Taut1 { k2: i64, c1k: i64, rank: i64 },
    /// `N` times `Taut1`.
    Taut2 { n: i64, k2: i64, c1k: i64, rank: i64 },
    /// `sw_beta (-N c1K q/(1-q) + beta.c1 /(1-q))`.
    Taut3 { n: i64, sw_beta: i64, c1k: i64, beta_c1: i64 },
    /// `SW(K) (-N/(1-q))^{K^2} sum_i z_i^{-K^2} p(z_i)` over the roots of
    /// `z^N - q(z-1)^N`, rank-zero `p(z) = c1K((1-(N+1)q)/(1-q) - z)`.
    Taut4 { n: usize, k2: i64, sw: i64, c1k: i64 },
    /// `(1-t)^{c1K} ((1-t(r+1))/(1-t)^{r+1})^{K^2}` with `q = t(1-t)^r`.
    Ee { k2: i64, c1k: i64, rank: i64 },
    /// `(1-q)^{c1K}`.
    Eef { c1k: i64 },
    /// `chi(alpha)(1 + .. + q^nu) - chi(K^{-1} alpha) q^nu`, for `nu >= 2`.
    Zbarpg { nu: i64, chi_alpha: Rat, chi_kinv_alpha: Rat },
    /// `chi(alpha) / (1-q)^{chi(O)}` (non-virtual tautological series, shifted by one).
    EglNonvirtual { chi_alpha: Rat, chi_o: i64 },
    /// `2 (1+q)^{K^2}`.
    Rank1Chi0 { k2: i64 },
    /// `(1+q)^{K^2} (1 - 2K^2 q(1-q)/(1+q)^2)`.
    Rank1Chi1 { k2: i64 },
}

impl ClosedForm {
    pub fn name(&self) -> &'static str {
        match self {
            ClosedForm::Taut0 => "taut0",
            ClosedForm::Taut1 { .. } => "taut1",
            ClosedForm::Taut2 { .. } => "taut2",
            ClosedForm::Taut3 { .. } => "taut3",
            ClosedForm::Taut4 { .. } => "taut4",
            ClosedForm::Ee { .. } => "ee",
            ClosedForm::Eef { .. } => "eef",
            ClosedForm::Zbarpg { .. } => "zbarpg",
            ClosedForm::EglNonvirtual { .. } => "egl",
            ClosedForm::Rank1Chi0 { .. } => "rank1-chi0",
            ClosedForm::Rank1Chi1 { .. } => "rank1-chi1",
        }
    }

    pub fn evaluate(&self, trunc: i64) -> Result<Series<Rat>> {
        let q = Series::gen(&(), trunc);
        let one = Series::one(&(), trunc);
        match self {
            ClosedForm::Taut0 => Ok(one),
            ClosedForm::Taut1 { k2, c1k, rank } => taut1(*k2, *c1k, *rank, trunc),
            ClosedForm::Taut2 { n, k2, c1k, rank } => Ok(taut1(*k2, *c1k, *rank, trunc)?.scale(&rat(*n))),
            ClosedForm::Taut3 { n, sw_beta, c1k, beta_c1 } => {
                let inv = geometric(trunc, -1)?;
                let s = &q.scale(&rat(-n * c1k)) + &Series::from_ints(&[*beta_c1], trunc);
                Ok((&s * &inv).scale(&rat(*sw_beta)))
            }
            ClosedForm::Taut4 { n, k2, sw, c1k } => taut4(*n, *k2, *sw, *c1k, trunc),
            ClosedForm::Ee { k2, c1k, rank } => ee(*k2, *c1k, *rank, trunc),
            ClosedForm::Eef { c1k } => geometric(trunc, *c1k),
            ClosedForm::Zbarpg { nu, chi_alpha, chi_kinv_alpha } => {
                if *nu < 2 {
                    return Err(Error::HypothesisViolation(format!("zbarpg needs nu >= 2, got {nu}")));
                }
                let mut c = vec![chi_alpha.clone(); *nu as usize + 1];
                c[*nu as usize] -= chi_kinv_alpha;
                Ok(Series::from_rats(&(), &c, trunc))
            }
            ClosedForm::EglNonvirtual { chi_alpha, chi_o } => Ok(geometric(trunc, -chi_o)?.scale(chi_alpha)),
            ClosedForm::Rank1Chi0 { k2 } => Ok(Series::from_ints(&[1, 1], trunc).pow(*k2)?.scale(&rat(2))),
            ClosedForm::Rank1Chi1 { k2 } => {
                let onep = Series::from_ints(&[1, 1], trunc);
                let frac = (&q * &Series::from_ints(&[1, -1], trunc)).div_series(&onep.pow(2)?)?;
                let bracket = &one - &frac.scale(&rat(2 * k2));
                Ok(&onep.pow(*k2)? * &bracket)
            }
        }
    }
}

fn taut1(k2: i64, c1k: i64, rank: i64, trunc: i64) -> Result<Series<Rat>> {
    let q = Series::gen(&(), trunc);
    let a = (&q * &q).div_series(&geometric(trunc, 2)?)?.scale(&rat(-rank * k2));
    let b = q.div_series(&geometric(trunc, 1)?)?.scale(&rat(-c1k));
    Ok(&a + &b)
}

/// The block of `N` roots of `z^N - q (z-1)^N` near zero.
pub fn vieta_block(n: usize, trunc: i64) -> Result<MonicSeriesPoly<Rat>> {
    let sctx = crate::algebra::SeriesCtx { coeff: (), trunc };
    let mut zn = vec![Series::zero(&(), trunc); n];
    zn.push(Series::one(&(), trunc));
    let zm1 = Poly::from_ints(&[-1, 1]);
    let mut p = Poly::one();
    for _ in 0..n {
        p = p.mul(&zm1);
    }
    let q = Series::gen(&(), trunc);
    let qp: Vec<Series<Rat>> = p.coeffs().iter().map(|c| q.scale(c)).collect();
    let g = polyops::sub(&zn, &qp, &sctx);
    let mut g0 = vec![Rat::from_integer(0.into()); n];
    g0.push(Rat::one());
    Ok(hensel_factor(&g, n, &g0)?.p)
}

fn taut4(n: usize, k2: i64, sw: i64, c1k: i64, trunc: i64) -> Result<Series<Rat>> {
    crate::geometry::with_precision(trunc, |work| {
        let bl = RootBlock::new(vieta_block(n, work)?, &());
        let nn = n as i64;
        let c = Series::from_ints(&[1, -(nn + 1)], work).div_series(&geometric(work, 1)?)?;
        // p(z) = c1K (c - z)
        let p = bl.scale(&bl.elem(&[c, Series::from_ints(&[-1], work)]), &rat(c1k));
        let s = bl.trace(&bl.mul(&p, &bl.pow(&bl.z(), -k2)))?;
        let pref = geometric(work, -1)?.scale(&rat(-nn)).pow(k2)?;
        Ok((&pref * &s).scale(&rat(sw)))
    })
}

/// The root `t(q)` of `q = t (1-t)^r` with `t(0) = 0`.
pub fn ee_root(rank: i64, trunc: i64) -> Result<Series<Rat>> {
    let sctx = crate::algebra::SeriesCtx { coeff: (), trunc };
    let mut p = Poly::one();
    for _ in 0..rank.unsigned_abs() {
        p = p.mul(&Poly::from_ints(&[1, -1]));
    }
    let lift = |p: &Poly| -> Vec<Series<Rat>> { p.coeffs().iter().map(|c| Series::from_rat(&(), c, trunc)).collect() };
    let q = Series::gen(&(), trunc);
    let (lhs, rhs) = if rank >= 0 {
        (polyops::mul(&lift(&Poly::from_ints(&[0, 1])), &lift(&p), &sctx), vec![q])
    } else {
        // t = q (1-t)^{|r|}
        (lift(&Poly::from_ints(&[0, 1])), lift(&p).iter().map(|c| c * &q).collect())
    };
    newton_root(&polyops::sub(&lhs, &rhs, &sctx), &rat(0))
}

fn ee(k2: i64, c1k: i64, rank: i64, trunc: i64) -> Result<Series<Rat>> {
    let t = ee_root(rank, trunc)?;
    let one = Series::one(&(), trunc);
    let omt = &one - &t;
    let num = &one - &t.scale(&rat(rank + 1));
    let inner = num.div_series(&omt.pow(rank + 1)?)?;
    Ok(&omt.pow(c1k)? * &inner.pow(k2)?)
}
