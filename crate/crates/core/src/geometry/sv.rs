//! Segre/Verlinde comparison and the `N <-> r` symmetry of Segre series at `beta = 0`.

use serde::Serialize;

use crate::algebra::{binom, fmt_rat, rat, JetContext, Rat, Series, SeriesCtx};
use crate::error::Result;
use crate::roots::{hensel_factor, polyops, resultant_pair, Coupling, MonicSeriesPoly, RootBlock};
use crate::universal::GenusSpec;

use super::{assemble_invariant, with_precision, Decomposition, KClassNumbers, SurfaceNumbers};

/// First coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub power: i64,
    pub expected: String,
    pub got: String,
}

pub fn first_discrepancy(expected: &Series<Rat>, got: &Series<Rat>) -> Option<Discrepancy> {
    expected.first_difference(got).map(|n| Discrepancy {
        power: n,
        expected: fmt_rat(&expected.coeff(n)),
        got: fmt_rat(&got.coeff(n)),
    })
}

/// Outcome of comparing `S_N((-1)^N q)` with `V_N(q)`.
#[derive(Clone, Debug)]
pub struct SvReport {
    pub verlinde: Series<Rat>,
    pub segre_signed: Series<Rat>,
    pub discrepancy: Option<Discrepancy>,
}

impl SvReport {
    pub fn equal(&self) -> bool {
        self.discrepancy.is_none()
    }
}

fn rank_only(spec: &GenusSpec, n: usize, surface: &SurfaceNumbers, c1k: i64, decomps: &[Decomposition], trunc: i64) -> Result<Series<Rat>> {
    let rank = match spec {
        GenusSpec::Verlinde { rank } | GenusSpec::Segre { rank } => *rank,
        _ => 0,
    };
    let cls = [KClassNumbers::with_rank_c1k(rank, c1k)];
    let z = assemble_invariant(spec, n, &JetContext::empty(), surface, &cls, decomps, trunc)?;
    // the shifted series of the correspondence
    let bk = decomps.first().map(|d| d.beta_k()).unwrap_or(0);
    Ok(z.constant_part().shift(bk))
}

/// Shifted virtual Verlinde series `q^{beta.K} sum_n q^n chi^vir(Quot, det alpha^[n])`.
pub fn verlinde_series(n: usize, rank: i64, surface: &SurfaceNumbers, c1k: i64, decomps: &[Decomposition], trunc: i64) -> Result<Series<Rat>> {
    rank_only(&GenusSpec::Verlinde { rank }, n, surface, c1k, decomps, trunc)
}

/// Shifted virtual Segre series `q^{beta.K} sum_n q^n int s(alpha^[n])`.
pub fn segre_series(n: usize, rank: i64, surface: &SurfaceNumbers, c1k: i64, decomps: &[Decomposition], trunc: i64) -> Result<Series<Rat>> {
    rank_only(&GenusSpec::Segre { rank }, n, surface, c1k, decomps, trunc)
}

/// Compare `S_{N,alpha}((-1)^N q)` with `V_{N,alpha}(q)` coefficientwise.
pub fn sv_check(n: usize, rank: i64, surface: &SurfaceNumbers, c1k: i64, decomps: &[Decomposition], trunc: i64) -> Result<SvReport> {
    let v = verlinde_series(n, rank, surface, c1k, decomps, trunc)?;
    let s = segre_series(n, rank, surface, c1k, decomps, trunc)?;
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    let s = s.rescale_var(&sign);
    let discrepancy = first_discrepancy(&v, &s);
    Ok(SvReport { verlinde: v, segre_signed: s, discrepancy })
}

/// `[q^1] V_N` and the predicted `-c1K * C(N-1+r, r)` at `beta = 0`.
pub fn ex7_first_coefficient(n: usize, rank: i64, surface: &SurfaceNumbers, c1k: i64) -> Result<(Rat, Rat)> {
    let v = verlinde_series(n, rank, surface, c1k, &[Decomposition::zero(n, 1)], 3)?;
    let predicted = rat(-c1k) * binom(n as i64 - 1 + rank, rank);
    Ok((v.coeff(1), predicted))
}

/// The block of `n` roots near zero of `z^n (1-z)^r = q`.
pub fn symmetry_block(n: usize, r: usize, trunc: i64) -> Result<MonicSeriesPoly<Rat>> {
    let sctx = SeriesCtx { coeff: (), trunc };
    let mut zn = vec![Series::zero(&(), trunc); n];
    zn.push(Series::one(&(), trunc));
    let mut f = zn;
    for _ in 0..r {
        f = polyops::mul(&f, &[Series::one(&(), trunc), Series::from_ints(&[-1], trunc)], &sctx);
    }
    f[0] = &f[0] - &Series::gen(&(), trunc);
    let mut g0 = vec![rat(0); n];
    g0.push(rat(1));
    Ok(hensel_factor(&f, n, &g0)?.p)
}

/// `(M*, N*)` from the degree-`n` block of `z^n (1-z)^r = q`.
pub fn m_n_star(n: usize, r: usize, trunc: i64) -> Result<(Series<Rat>, Series<Rat>)> {
    let m = with_precision(trunc, |w| Ok(m_n_star_raw(n, r, w)?.0))?;
    let nn = with_precision(trunc, |w| Ok(m_n_star_raw(n, r, w)?.1))?;
    Ok((m, nn))
}

fn m_n_star_raw(n: usize, r: usize, trunc: i64) -> Result<(Series<Rat>, Series<Rat>)> {
    let bl = RootBlock::new(symmetry_block(n, r, trunc)?, &());
    let (ni, ri) = (n as i64, r as i64);
    let z = bl.z();
    let omz = bl.elem_rat(&[rat(1), rat(-1)]);
    let lin = bl.elem_rat(&[rat(ni), rat(-ni - ri)]);
    // prod (-r/(1-H) + N/H) H^N (1-H)^{-r} = prod H^{N-1} (N(1-H) - rH) (1-H)^{-r-1}
    let per_root = bl.mul(&bl.mul(&bl.pow(&z, ni - 1), &lin), &bl.pow(&omz, -ri - 1));
    let m = bl.norm(&per_root)?.div_series(&bl.norm(&bl.p_prime())?)?;
    let nstar = bl.norm(&bl.pow(&omz, ri))?;
    Ok((m, nstar))
}

/// Internal identities of the symmetry argument, evaluated exactly.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub m_star: Series<Rat>,
    pub n_star: Series<Rat>,
    pub m_tilde: Series<Rat>,
    pub n_tilde: Series<Rat>,
    /// `M* N*^2` against `prod_{i,j} (1 - H_i - H~_j)`.
    pub resultant_identity: bool,
    pub m_equal: bool,
    pub n_equal: bool,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.resultant_identity && self.m_equal && self.n_equal
    }
}

pub fn symmetry_series(n: usize, r: usize, trunc: i64) -> Result<SymmetryReport> {
    let (m_star, n_star) = m_n_star(n, r, trunc)?;
    let (m_tilde, n_tilde) = m_n_star(r, n, trunc)?;
    let res = with_precision(trunc, |w| {
        let p = symmetry_block(n, r, w)?;
        let s = symmetry_block(r, n, w)?;
        resultant_pair(&p, &s, Coupling::OneMinusSum, &())
    })?;
    let lhs = &m_star * &(&n_star * &n_star);
    Ok(SymmetryReport {
        resultant_identity: lhs.agrees_with(&res),
        m_equal: m_star.agrees_with(&m_tilde),
        n_equal: n_star.agrees_with(&n_tilde),
        m_star,
        n_star,
        m_tilde,
        n_tilde,
    })
}

/// `S_{N,alpha}((-1)^N q)` at `beta = 0` for `rk alpha = r`, `c1(alpha).K = r mu`.
pub fn segre_signed(n: usize, r: i64, k2: i64, c1k: i64, trunc: i64) -> Result<Series<Rat>> {
    let surface = SurfaceNumbers { k2, chi_o: 0 };
    let s = segre_series(n, r, &surface, c1k, &[Decomposition::zero(n, 1)], trunc)?;
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    Ok(s.rescale_var(&sign))
}

/// `M*^{K^2} N*^mu`.
pub fn segre_from_star(n: usize, r: usize, k2: i64, mu: i64, trunc: i64) -> Result<Series<Rat>> {
    let (m, nn) = m_n_star(n, r, trunc)?;
    Ok(&m.pow(k2)? * &nn.pow(mu)?)
}
