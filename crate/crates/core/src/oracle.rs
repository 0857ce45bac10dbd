//! Brute-force reference computations: torus-fixed-point sums over partitions on the
//! Hilbert scheme of points of the plane, and Lagrange inversion by direct
//! coefficient extraction.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::rat::rat_pow;
use crate::algebra::{fmt_rat, rat, ratio, Coeff, Rat, Series};
use crate::error::{Error, Result};

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Conjugate partition (column lengths).
    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// Boxes `(b1, b2) = (row, column)` with their arm and leg lengths.
    pub fn boxes(&self) -> Vec<BoxData> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push(BoxData { b1: i, b2: j, arm: row - j - 1, leg: conj.0[j] - i - 1 });
            }
        }
        out
    }

    /// Exponents `(e1, e2)` of the monomials `t1^e1 t2^e2` in the tangent character
    /// `sum (t1^{-l} t2^{a+1} + t1^{l+1} t2^{-a})`.
    pub fn tangent_weights(&self) -> Vec<(i64, i64)> {
        let mut w = Vec::with_capacity(2 * self.size());
        for b in self.boxes() {
            let (a, l) = (b.arm as i64, b.leg as i64);
            w.push((-l, a + 1));
            w.push((l + 1, -a));
        }
        w
    }
}

/// One box of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxData {
    pub b1: usize,
    pub b2: usize,
    pub arm: usize,
    pub leg: usize,
}

/// All partitions of `n` in lexicographic order of their part sequences.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Equivariant parameters at which characters are evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalPoint {
    #[serde(serialize_with = "ser_rat")]
    pub t1: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub t2: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub u: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub y: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub m: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub a: Rat,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

impl EvalPoint {
    /// `t1 = 7, t2 = 1/5, u = 2, y = 1/3, m = 2, a = 1`.
    pub fn standard() -> Self {
        EvalPoint { t1: rat(7), t2: ratio(1, 5), u: rat(2), y: ratio(1, 3), m: rat(2), a: rat(1) }
    }

    /// The `k`-th point of the deterministic pseudorandom sequence for `seed`.
    pub fn nth(seed: u64, k: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pt = None;
        for _ in 0..=k {
            pt = Some(EvalPoint {
                t1: random_rat(&mut rng),
                t2: random_rat(&mut rng),
                u: random_rat(&mut rng),
                y: random_rat(&mut rng),
                m: random_rat(&mut rng),
                a: random_rat(&mut rng),
            });
        }
        pt.expect("k + 1 >= 1 draws")
    }
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-11..=11);
        let d: i64 = rng.gen_range(1..=9);
        let r = ratio(n, d);
        if !r.is_zero() && r != rat(1) && r != rat(-1) {
            return r;
        }
    }
}

/// Maximum number of fresh points tried after a pole.
pub const MAX_RETRIES: usize = 5;

/// Run `f` at successive points of the sequence for `seed` until it avoids a pole.
pub fn with_retries<T>(seed: u64, mut f: impl FnMut(&EvalPoint) -> Result<T>) -> Result<(T, EvalPoint)> {
    let mut last = None;
    for k in 0..=MAX_RETRIES {
        let pt = EvalPoint::nth(seed, k);
        match f(&pt) {
            Ok(v) => return Ok((v, pt)),
            Err(Error::PoleAtEvalPoint(msg)) => last = Some(msg),
            Err(e) => return Err(e),
        }
    }
    Err(Error::PoleAtEvalPoint(format!(
        "{} retries exhausted: {}",
        MAX_RETRIES,
        last.unwrap_or_default()
    )))
}

/// Truncated bivariate series: `c[i][j]` is the coefficient of `x^i w^j`.
pub type Bivariate = Vec<Vec<Rat>>;

fn monomial(t1: &Rat, t2: &Rat, e1: i64, e2: i64) -> Rat {
    rat_pow(t1, e1) * rat_pow(t2, e2)
}

/// `1 / wedge_{-1} T_lambda^vee = 1 / prod (1 - w^{-1})`.
fn inverse_euler(lambda: &Partition, t1: &Rat, t2: &Rat) -> Result<Rat> {
    let mut den = Rat::one();
    for (e1, e2) in lambda.tangent_weights() {
        let f = Rat::one() - monomial(t1, t2, -e1, -e2);
        if f.is_zero() {
            return Err(Error::PoleAtEvalPoint(format!("tangent weight t1^{e1} t2^{e2} is trivial")));
        }
        den *= f;
    }
    Ok(den.recip())
}

/// `F(q, u, v)` to `q^qmax v^vmax` inclusive, with `t1, t2, u` numeric.
pub fn f_vertex(qmax: usize, vmax: usize, t1: &Rat, t2: &Rat, u: &Rat) -> Result<Bivariate> {
    if t1.is_zero() || t2.is_zero() {
        return Err(Error::PoleAtEvalPoint("t1 and t2 must be nonzero".into()));
    }
    let mut out = vec![vec![Rat::zero(); vmax + 1]; qmax + 1];
    for (n, row) in out.iter_mut().enumerate() {
        for lambda in partitions(n) {
            let pref = inverse_euler(&lambda, t1, t2)?;
            let mut vs = vec![Rat::zero(); vmax + 1];
            vs[0] = pref;
            for b in lambda.boxes() {
                let w = monomial(t1, t2, b.b1 as i64, b.b2 as i64);
                let num = Rat::one() - u * &w;
                // (1 - u w)/(v - w) = -(1 - u w) sum_k v^k / w^{k+1}
                let winv = w.recip();
                let mut f = Vec::with_capacity(vmax + 1);
                let mut p = -(&num * &winv);
                for _ in 0..=vmax {
                    f.push(p.clone());
                    p *= &winv;
                }
                vs = mul_trunc(&vs, &f, vmax);
            }
            for (acc, c) in row.iter_mut().zip(vs) {
                *acc += c;
            }
        }
    }
    Ok(out)
}

fn mul_trunc(a: &[Rat], b: &[Rat], max: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); max + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(max + 1 - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// `G(x, w) / G(x, 0)`, the division acting on the `x`-direction.
fn divide_by_slice(g: &Bivariate) -> Result<Bivariate> {
    let rows = g.len();
    let cols = g[0].len();
    let d: Vec<Rat> = g.iter().map(|r| r[0].clone()).collect();
    if d[0].is_zero() {
        return Err(Error::DivisionByNonUnit("F(q, u, 0) has zero constant term".into()));
    }
    let mut inv = vec![Rat::zero(); rows];
    inv[0] = d[0].recip();
    for n in 1..rows {
        let s: Rat = (1..=n).map(|k| &d[k] * &inv[n - k]).sum();
        inv[n] = -(s * &inv[0]);
    }
    let mut out = vec![vec![Rat::zero(); cols]; rows];
    for j in 0..cols {
        let col: Vec<Rat> = g.iter().map(|r| r[j].clone()).collect();
        let prod = mul_trunc(&col, &inv, rows - 1);
        for (i, c) in prod.into_iter().enumerate() {
            out[i][j] = c;
        }
    }
    Ok(out)
}

fn transpose(g: &Bivariate) -> Bivariate {
    let cols = g[0].len();
    (0..cols).map(|j| g.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Both sides of `F(q,u,v)/F(q,u,0) = F(v,u,q)/F(v,u,0)` to order `order` in `q` and `v`.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryCheck {
    pub point: EvalPoint,
    pub order: usize,
    pub holds: bool,
    /// First `(q-power, v-power)` where the sides differ.
    pub first_mismatch: Option<(usize, usize)>,
}

pub fn f_symmetry(order: usize, point: &EvalPoint) -> Result<SymmetryCheck> {
    let g = f_vertex(order, order, &point.t1, &point.t2, &point.u)?;
    let lhs = divide_by_slice(&g)?;
    // F(v, u, q)/F(v, u, 0) is the left side with its arguments swapped
    let rhs = transpose(&lhs);
    let mut first = None;
    'outer: for i in 0..=order {
        for j in 0..=order {
            if lhs[i][j] != rhs[i][j] {
                first = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(SymmetryCheck { point: point.clone(), order, holds: first.is_none(), first_mismatch: first })
}

/// The `z^1` coefficient of `W*` as a series in `q`, computed directly from the
/// fixed-point sum, through `F` at permuted arguments, through `F` after the `(q, v)`
/// switch, and from the closed form.
#[derive(Clone, Debug)]
pub struct WStarReport {
    pub point: EvalPoint,
    pub direct: Series<Rat>,
    /// `None` when `y m = 0`, where `F` cannot absorb the `wedge_y` factor.
    pub via_f: Option<Series<Rat>>,
    pub switched: Option<Series<Rat>>,
    pub closed: Series<Rat>,
}

impl WStarReport {
    pub fn holds(&self) -> bool {
        let ok = |s: &Option<Series<Rat>>| s.as_ref().is_none_or(|s| s.agrees_with(&self.closed));
        self.direct.agrees_with(&self.closed) && ok(&self.via_f) && ok(&self.switched)
    }
}

/// `q a (1 + y m) / ((1 - t1^{-1})(1 - t2^{-1})(1 + q y m))`.
pub fn w_star_closed(point: &EvalPoint, trunc: i64) -> Result<Series<Rat>> {
    let d = (Rat::one() - point.t1.recip()) * (Rat::one() - point.t2.recip());
    if d.is_zero() {
        return Err(Error::PoleAtEvalPoint("t1 or t2 equals one".into()));
    }
    let ym = &point.y * &point.m;
    let c = &point.a * (Rat::one() + &ym) / d;
    let den = Series::from_rats(&(), &[rat(1), ym], trunc);
    Series::gen(&(), trunc).scale(&c).div_series(&den)
}

/// `W^dagger` at `z^0` and `z^1`: `sum_lambda q^|lambda| / wedge_{-1} T^vee *
/// prod (1 + y m w^{-1}) * (1, sum a w^{-1})` over boxes with weight `w = t1^b1 t2^b2`.
pub fn w_dagger(point: &EvalPoint, trunc: i64) -> Result<(Series<Rat>, Series<Rat>)> {
    let (mut z0, mut z1) = (Vec::new(), Vec::new());
    let ym = &point.y * &point.m;
    for n in 0..trunc.max(0) as usize {
        let (mut s0, mut s1) = (Rat::zero(), Rat::zero());
        for lambda in partitions(n) {
            let mut c = inverse_euler(&lambda, &point.t1, &point.t2)?;
            let mut tw = Rat::zero();
            for b in lambda.boxes() {
                let winv = monomial(&point.t1, &point.t2, -(b.b1 as i64), -(b.b2 as i64));
                c *= Rat::one() + &ym * &winv;
                tw += &point.a * winv;
            }
            s1 += &c * tw;
            s0 += c;
        }
        z0.push(s0);
        z1.push(s1);
    }
    Ok((Series::from_rats(&(), &z0, trunc), Series::from_rats(&(), &z1, trunc)))
}

pub fn w_star_check(point: &EvalPoint, trunc: i64) -> Result<WStarReport> {
    if trunc < 1 {
        return Err(Error::InvalidInput("trunc must be at least 1".into()));
    }
    let (w0, w1) = w_dagger(point, trunc)?;
    let direct = w1.div_series(&w0)?;
    let ym = &point.y * &point.m;
    let (via_f, switched) = if ym.is_zero() {
        (None, None)
    } else {
        let u = -ym.recip();
        let x = -&ym;
        let n = (trunc - 1) as usize;
        // W* = F(x q, u, z a) / F(x q, u, 0)
        let g = f_vertex(n, 1, &point.t1, &point.t2, &u)?;
        let r = divide_by_slice(&g)?;
        let via: Vec<Rat> = (0..=n).map(|i| &r[i][1] * rat_pow(&x, i as i64) * &point.a).collect();
        // = F(z a, u, x q) / F(z a, u, 0), which needs only partitions of size <= 1
        let h = f_vertex(1, n, &point.t1, &point.t2, &u)?;
        let sw: Vec<Rat> =
            (0..=n).map(|j| (&h[1][j] - &h[0][j] * &h[1][0]) * rat_pow(&x, j as i64) * &point.a).collect();
        (Some(Series::from_rats(&(), &via, trunc)), Some(Series::from_rats(&(), &sw, trunc)))
    };
    Ok(WStarReport { point: point.clone(), direct, via_f, switched, closed: w_star_closed(point, trunc)? })
}

/// `x(q)` with `x = q phi(x)` from `[q^n] x = (1/n) [x^{n-1}] phi^n`.
pub fn lagrange_oracle<C: Coeff>(phi: &Series<C>, trunc: i64) -> Result<Series<C>> {
    if phi.valuation() != 0 || !phi.coeff(0).is_unit() {
        return Err(Error::BadConstantTerm("the oracle needs phi(0) to be a unit".into()));
    }
    let ctx = phi.ring_ctx().clone();
    let t = trunc.min(phi.trunc() + 1);
    let mut coeffs = vec![C::zero_in(&ctx)];
    let mut pw = Series::one(&ctx, phi.trunc());
    for n in 1..t {
        pw = &pw * phi;
        coeffs.push(pw.coeff(n - 1).scale(&ratio(1, n)));
    }
    Ok(Series::new(&ctx, 0, t, coeffs))
}

/// `P(q) = sum_n q^n [h^n] g(h)^{n+1}`.
pub fn p_oracle<C: Coeff>(g: &Series<C>, trunc: i64) -> Series<C> {
    let ctx = g.ring_ctx().clone();
    let t = trunc.min(g.trunc());
    let mut coeffs = Vec::new();
    let mut pw = g.clone();
    for n in 0..t {
        coeffs.push(pw.coeff(n));
        pw = &pw * g;
    }
    Series::new(&ctx, 0, t, coeffs)
}

/// `P_l(q) = sum_n q^n [h^n] (l h g(h) / g(l h)) g(h)^n`.
pub fn p_ell_oracle<C: Coeff>(g: &Series<C>, ell: i64, trunc: i64) -> Result<Series<C>> {
    let ctx = g.ring_ctx().clone();
    let lh = Series::monomial(C::one_in(&ctx), 1, g.trunc()).scale(&rat(ell));
    let g_lh = g.compose(&lh)?;
    let pref = (&lh * g).div_series(&g_lh)?;
    let t = trunc.min(pref.trunc());
    let mut coeffs = Vec::new();
    let mut pw = pref;
    for n in 0..t {
        coeffs.push(pw.coeff(n));
        pw = &pw * g;
    }
    Ok(Series::new(&ctx, 0, t, coeffs))
}
