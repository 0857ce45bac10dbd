//! Universal series `A, B_s, U_i, V_{i,s}, W_{ij}` for each supported genus, computed
//! at zero equivariant weights on the root block of the change of variables.

use std::sync::Arc;

use num_traits::One;

use crate::algebra::{factorial, rat, Jet, JetContext, Rat, Ring, Series, SeriesCtx};
use crate::error::{Error, Result};
use crate::roots::{hensel_factor, polyops, Frac, MonicSeriesPoly, RootBlock, SeriesPoly};

/// Which multiplicative genus and twisting the invariant is built from.
#[derive(Clone, Debug)]
pub enum GenusSpec {
    /// `f_s = 1 + y_s e^x` (one jet variable `y_s` per class) with Todd `g`.
    KTheory { ranks: Vec<i64> },
    /// Determinant twist with Todd `g`, single class of the given rank.
    Verlinde { rank: i64 },
    /// Segre twist `f = 1/(1+x)`, `g = 1`, single class of the given rank.
    Segre { rank: i64 },
    /// `f = 1`, arbitrary `g` with `g(0) = 1`; only `N = 1`.
    Cobordism { g: Series<Jet> },
    /// Arbitrary `f_s`, `g` power series in `x`; only `N = 1`.
    RawPair { fs: Vec<Series<Jet>>, ranks: Vec<i64>, g: Series<Jet> },
}

impl GenusSpec {
    pub fn name(&self) -> &'static str {
        match self {
            GenusSpec::KTheory { .. } => "ktheory",
            GenusSpec::Verlinde { .. } => "verlinde",
            GenusSpec::Segre { .. } => "segre",
            GenusSpec::Cobordism { .. } => "cobordism",
            GenusSpec::RawPair { .. } => "raw",
        }
    }

    /// Number of classes `alpha_s`.
    pub fn classes(&self) -> usize {
        match self {
            GenusSpec::KTheory { ranks } => ranks.len(),
            GenusSpec::Verlinde { .. } | GenusSpec::Segre { .. } => 1,
            GenusSpec::Cobordism { .. } => 0,
            GenusSpec::RawPair { fs, .. } => fs.len(),
        }
    }

    /// Jet context `y_1..y_l` for the K-theoretic family with the given caps.
    pub fn ktheory_context(caps: &[u32]) -> Arc<JetContext> {
        let names: Vec<String> = (1..=caps.len()).map(|i| format!("y{i}")).collect();
        JetContext::from_parts(names, caps.to_vec())
    }
}

/// Exponents of one decomposition `beta = beta_1 + .. + beta_N`, reduced to the
/// three shapes the engine evaluates symmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentPattern {
    AllZero,
    /// One part with `beta_i.K = a`, `beta_i.c1(alpha_s) = d_s`; the others vanish.
    SingleActive { a: i64, d: Vec<i64> },
    /// All parts equal with `beta_i.K = a`, `beta_i.c1 = d_s`, `beta_i.beta_j = b`.
    AllEqual { a: i64, d: Vec<i64>, b: i64 },
}

/// The polynomial `G(q, z)` whose block of `N` roots near `z = 0` parametrizes the
/// change of variables, together with the block's reduction `g_0 = z^N`.
#[derive(Clone, Debug)]
pub struct ChangePoly {
    pub g: SeriesPoly<Jet>,
    pub g0: Vec<Jet>,
    pub n: usize,
}

fn sctx(jctx: &Arc<JetContext>, t: i64) -> SeriesCtx<Jet> {
    SeriesCtx { coeff: jctx.clone(), trunc: t }
}

fn cst(jctx: &Arc<JetContext>, r: i64, t: i64) -> Series<Jet> {
    Series::from_rat(jctx, &rat(r), t)
}

fn jet_const(j: Jet, t: i64) -> Series<Jet> {
    Series::constant(j, t)
}

/// `(c0 + c1 z)^e` as an ascending polynomial over the series ring.
fn linear_pow(c0: Series<Jet>, c1: Series<Jet>, e: u32, ctx: &SeriesCtx<Jet>) -> SeriesPoly<Jet> {
    let mut acc = vec![Series::one(&ctx.coeff, ctx.trunc)];
    for _ in 0..e {
        acc = polyops::mul(&acc, &[c0.clone(), c1.clone()], ctx);
    }
    acc
}

/// The change-of-variables polynomial for the families with a polynomial relation.
pub fn change_poly(spec: &GenusSpec, n: usize, jctx: &Arc<JetContext>, trunc: i64) -> Result<ChangePoly> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    let ctx = sctx(jctx, trunc);
    let one = cst(jctx, 1, trunc);
    let zero = cst(jctx, 0, trunc);
    let q = Series::gen(jctx, trunc);
    let sign_n = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut zn: SeriesPoly<Jet> = vec![zero.clone(); n];
    zn.push(one.clone());
    let one_minus_z = |e: u32| linear_pow(one.clone(), cst(jctx, -1, trunc), e, &ctx);
    let (lhs, rhs): (SeriesPoly<Jet>, SeriesPoly<Jet>) = match spec {
        GenusSpec::KTheory { ranks } => {
            if jctx.nvars() != ranks.len() {
                return Err(Error::InvalidInput("one jet variable per K-theory class".into()));
            }
            let mut lhs: SeriesPoly<Jet> = zn.iter().map(|c| c.scale(&rat(sign_n))).collect();
            let mut rhs = one_minus_z(n as u32);
            for (s, &r) in ranks.iter().enumerate() {
                let y = Jet::var(jctx, &jctx.names()[s]);
                let f = linear_pow(
                    jet_const(Jet::one_in(jctx).plus(&y), trunc),
                    jet_const(y.negated(), trunc),
                    r.unsigned_abs() as u32,
                    &ctx,
                );
                if r >= 0 {
                    rhs = polyops::mul(&rhs, &f, &ctx);
                } else {
                    lhs = polyops::mul(&lhs, &f, &ctx);
                }
            }
            (lhs, rhs)
        }
        GenusSpec::Verlinde { rank } | GenusSpec::Segre { rank } => {
            let sgn = if matches!(spec, GenusSpec::Segre { .. }) { sign_n } else { 1 };
            let zn: SeriesPoly<Jet> = zn.iter().map(|c| c.scale(&rat(sgn))).collect();
            if *rank >= 0 {
                (polyops::mul(&zn, &one_minus_z(*rank as u32), &ctx), vec![one.clone()])
            } else {
                (zn, one_minus_z(rank.unsigned_abs() as u32))
            }
        }
        GenusSpec::Cobordism { .. } | GenusSpec::RawPair { .. } => {
            return Err(Error::UnsupportedGenus(format!(
                "{} has no polynomial change of variables; use the N = 1 reversion path",
                spec.name()
            )))
        }
    };
    let qrhs: SeriesPoly<Jet> = rhs.iter().map(|c| c * &q).collect();
    let g = polyops::sub(&lhs, &qrhs, &ctx);
    let mut g0 = vec![Jet::zero_in(jctx); n];
    g0.push(Jet::one_in(jctx));
    Ok(ChangePoly { g, g0, n })
}

/// The relation `z (1 - z)^r = q (1 - z + y)^r` used for the closed derivative formula
/// and the worked `N = 1` example with `e^H = 1 - z`.
pub fn n1_change_poly(r: u32, jctx: &Arc<JetContext>, trunc: i64) -> ChangePoly {
    let ctx = sctx(jctx, trunc);
    let one = cst(jctx, 1, trunc);
    let y = Jet::var(jctx, &jctx.names()[0]);
    let lhs = polyops::mul(
        &[cst(jctx, 0, trunc), one.clone()],
        &linear_pow(one.clone(), cst(jctx, -1, trunc), r, &ctx),
        &ctx,
    );
    let rhs = linear_pow(jet_const(Jet::one_in(jctx).plus(&y), trunc), cst(jctx, -1, trunc), r, &ctx);
    let q = Series::gen(jctx, trunc);
    let qrhs: SeriesPoly<Jet> = rhs.iter().map(|c| c * &q).collect();
    ChangePoly { g: polyops::sub(&lhs, &qrhs, &ctx), g0: vec![Jet::zero_in(jctx), Jet::one_in(jctx)], n: 1 }
}

/// Universal series on a root block. `u` and `v[s]` are root functions; `a`, `b[s]`
/// and `w_all = prod_{i<j} W_ij` are already symmetric.
#[derive(Clone, Debug)]
pub struct UniversalBundle {
    pub n: usize,
    pub block: RootBlock<Jet>,
    pub a: Series<Jet>,
    pub b: Vec<Series<Jet>>,
    pub u: Frac<Jet>,
    pub v: Vec<Frac<Jet>>,
    pub w_all: Series<Jet>,
}

impl UniversalBundle {
    pub fn trunc(&self) -> i64 {
        let mut t = self.a.trunc().min(self.w_all.trunc());
        for b in &self.b {
            t = t.min(b.trunc());
        }
        t
    }

    /// `sum_i U_i^a prod_s V_{i,s}^{d_s}` or the all-equal product, per pattern.
    pub fn symmetric(&self, pattern: &ExponentPattern) -> Result<Series<Jet>> {
        let bl = &self.block;
        let root_part = |a: i64, d: &[i64]| -> Result<Frac<Jet>> {
            if d.len() != self.v.len() {
                return Err(Error::InvalidInput(format!(
                    "pattern has {} class exponents, genus has {}",
                    d.len(),
                    self.v.len()
                )));
            }
            let mut x = bl.pow(&self.u, a);
            for (v, &ds) in self.v.iter().zip(d) {
                x = bl.mul(&x, &bl.pow(v, ds));
            }
            Ok(x)
        };
        match pattern {
            ExponentPattern::AllZero => Ok(Series::one(bl.coeff_ctx(), bl.trunc())),
            ExponentPattern::SingleActive { a, d } => bl.trace(&root_part(*a, d)?),
            ExponentPattern::AllEqual { a, d, b } => {
                let nrm = bl.norm(&root_part(*a, d)?)?;
                Ok(&nrm * &self.w_all.pow(*b)?)
            }
        }
    }
}

fn p_prime_norm(bl: &RootBlock<Jet>) -> Result<Series<Jet>> {
    bl.norm(&bl.p_prime())
}

/// Universal series for a genus with a polynomial change of variables.
pub fn universal_bundle(spec: &GenusSpec, n: usize, jctx: &Arc<JetContext>, trunc: i64) -> Result<UniversalBundle> {
    match spec {
        GenusSpec::Cobordism { g } => return raw_bundle(&[], &[], g, n, jctx, trunc),
        GenusSpec::RawPair { fs, ranks, g } => return raw_bundle(fs, ranks, g, n, jctx, trunc),
        _ => {}
    }
    let cp = change_poly(spec, n, jctx, trunc)?;
    let hf = hensel_factor(&cp.g, n, &cp.g0)?;
    let bl = RootBlock::new(hf.p, jctx);
    let t = bl.trunc();
    let nn = n as i64;
    let z = bl.z();
    let one_minus_z = bl.elem_rat(&[rat(1), rat(-1)]);
    let norm_z = bl.norm(&z)?;
    let norm_omz = bl.norm(&one_minus_z)?;
    let npp = p_prime_norm(&bl)?;
    let pp = bl.p_prime();
    let p1 = bl.p_at(&rat(1));
    let pp2 = bl.mul(&pp, &pp);
    let w_all = norm_omz.pow(nn - 1)?.div_series(&npp)?;
    match spec {
        GenusSpec::KTheory { ranks } => {
            let mut fs = Vec::new();
            let mut s_sum = bl.elem_rat(&[rat(0)]);
            for (s, &r) in ranks.iter().enumerate() {
                let y = Jet::var(jctx, &jctx.names()[s]);
                let f = bl.elem_c(&[Jet::one_in(jctx).plus(&y), y.negated()]);
                let num = bl.elem_c(&[y.scale(&rat(r)), y.scale(&rat(-r))]);
                s_sum = bl.add(&s_sum, &bl.div(&num, &f));
                fs.push((f, y, r));
            }
            // z S(z) + N
            let zs_n = bl.add(&bl.mul(&z, &s_sum), &bl.elem_rat(&[rat(nn)]));
            let mut a = norm_z.pow(nn - 1)?;
            a = &a * &norm_omz.pow(nn - 1)?;
            a = &a * &bl.norm(&zs_n)?;
            let mut b = Vec::new();
            let mut v = Vec::new();
            let mut u = bl.mul(&pp2, &bl.pow(&z, 1 - nn));
            u = bl.mul(&u, &bl.pow(&one_minus_z, 2 - nn));
            u = bl.div(&u, &zs_n);
            u = bl.div_scalar(&u, &p1);
            if nn % 2 == 0 {
                u = bl.neg(&u);
            }
            for (f, y, r) in fs {
                let one_plus_y = jet_const(Jet::one_in(jctx).plus(&y), t);
                let nf = bl.norm(&f)?;
                let ratio = nf.div_series(&one_plus_y.pow(nn)?)?;
                a = &a * &ratio.pow(r)?;
                b.push(ratio.inverse()?);
                u = bl.mul(&u, &bl.pow(&f, -r));
                v.push(f);
            }
            let a = a.div_series(&npp)?;
            Ok(UniversalBundle { n, a, b, u, v, w_all, block: bl })
        }
        GenusSpec::Verlinde { rank } | GenusSpec::Segre { rank } => {
            let r = *rank;
            let segre = matches!(spec, GenusSpec::Segre { .. });
            // N (1 - z) - r z
            let lin = bl.elem_rat(&[rat(nn), rat(-nn - r)]);
            let mut a = norm_z.pow(nn - 1)?;
            a = &a * &norm_omz.pow(-r - 1)?;
            a = &a * &bl.norm(&lin)?;
            let a = a.div_series(&npp)?;
            let b = vec![norm_omz.clone()];
            let v = vec![bl.inv(&one_minus_z)];
            let mut u = bl.mul(&pp2, &bl.pow(&z, 1 - nn));
            u = bl.div(&u, &lin);
            let (u, w_all) = if segre {
                let u = bl.mul(&u, &bl.pow(&one_minus_z, r + 1));
                let u = if nn % 2 == 0 { bl.neg(&u) } else { u };
                (u, npp.inverse()?)
            } else {
                let u = bl.mul(&u, &bl.pow(&one_minus_z, r + 2));
                (bl.div_scalar(&u, &p1), w_all)
            };
            Ok(UniversalBundle { n, a, b, u, v, w_all, block: bl })
        }
        _ => unreachable!(),
    }
}

/// `N = 1` bundle for an arbitrary pair `(f_s, g)`, built from the series reversion
/// `h = q g(h) prod_s f_s(h)^{r_s}`.
fn raw_bundle(
    fs: &[Series<Jet>],
    ranks: &[i64],
    g: &Series<Jet>,
    n: usize,
    jctx: &Arc<JetContext>,
    trunc: i64,
) -> Result<UniversalBundle> {
    if n != 1 {
        return Err(Error::UnsupportedGenus("series genera are only supported for N = 1".into()));
    }
    if fs.len() != ranks.len() {
        return Err(Error::InvalidInput("one rank per f_s".into()));
    }
    let g = g.truncate(trunc);
    let mut phi = g.clone();
    for (f, &r) in fs.iter().zip(ranks) {
        phi = &phi * &f.truncate(trunc).pow(r)?;
    }
    let h = crate::algebra::reversion(&phi)?.truncate(trunc);
    let minus_one = -Rat::one();
    let g_neg = g.rescale_var(&minus_one);
    let g_neg_h = g_neg.compose(&h)?;
    let dlog = |s: &Series<Jet>| -> Result<Series<Jet>> { s.derivative().div_series(s)?.compose(&h) };
    let mut bracket = dlog(&g)?;
    let mut a_pref = Series::one(jctx, trunc);
    let mut b = Vec::new();
    let mut v = Vec::new();
    let mut f0s = Series::one(jctx, trunc);
    for (f, &r) in fs.iter().zip(ranks) {
        let f = f.truncate(trunc);
        bracket = &bracket + &dlog(&f)?.scale(&rat(r));
        let fh = f.compose(&h)?;
        let f0 = Series::constant(f.coeff(0), trunc);
        a_pref = &a_pref * &fh.div_series(&f0)?.pow(r)?;
        f0s = &f0s * &f0.pow(r)?;
        b.push(f0.div_series(&fh)?);
        v.push(fh);
    }
    // (-h / g(-h)) * bracket + 1 / g(-h)
    let inner = (&h.neg_series() * &bracket + Series::one(jctx, trunc)).div_series(&g_neg_h)?;
    let a = &a_pref * &inner;
    let u = a.inverse()?.div_series(&f0s)?;
    let root = MonicSeriesPoly { e: vec![h.neg_series()] };
    let bl = RootBlock::new(root, jctx);
    let u = bl.from_scalar(&u);
    let v = v.iter().map(|s| bl.from_scalar(s)).collect();
    let w_all = Series::one(jctx, trunc);
    Ok(UniversalBundle { n, a, b, u, v, w_all, block: bl })
}

/// `prod_s d^{k_s}/dy_s^{k_s}` at `y = 0`.
pub fn y_derivative(z: &Series<Jet>, ks: &[u32]) -> Result<Series<Rat>> {
    let c = wedge_coefficient(z, ks)?;
    let f = ks.iter().fold(Rat::one(), |acc, &k| acc * factorial(k));
    Ok(c.scale(&f))
}

/// Coefficient of `prod_s y_s^{k_s}`, the generating series of `chi(wedge^{k_s})`.
pub fn wedge_coefficient(z: &Series<Jet>, ks: &[u32]) -> Result<Series<Rat>> {
    let jctx = z.ring_ctx();
    if ks.len() != jctx.nvars() {
        return Err(Error::InvalidInput(format!("{} orders for {} jet variables", ks.len(), jctx.nvars())));
    }
    for (i, &k) in ks.iter().enumerate() {
        if jctx.caps()[i] < k {
            return Err(Error::InsufficientJetCap { var: jctx.names()[i].clone(), need: k, cap: jctx.caps()[i] });
        }
    }
    Ok(z.monomial_part(ks))
}

/// The Todd series `x / (1 - e^{-x})` over any jet context.
pub fn todd_series(jctx: &Arc<JetContext>, trunc: i64) -> Series<Jet> {
    // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    let coeffs: Vec<Rat> = (0..trunc)
        .map(|k| {
            let s = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            s / factorial(k as u32 + 1)
        })
        .collect();
    Series::from_rats(jctx, &coeffs, trunc).inverse().expect("constant term one").with_var("x")
}

/// `e^{c x}` over any jet context.
pub fn exp_series(jctx: &Arc<JetContext>, c: &Rat, trunc: i64) -> Series<Jet> {
    let coeffs: Vec<Rat> = (0..trunc)
        .map(|k| crate::algebra::rat::rat_pow(c, k) / factorial(k as u32))
        .collect();
    Series::from_rats(jctx, &coeffs, trunc).with_var("x")
}
