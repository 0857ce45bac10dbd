//! Truncated Laurent series in one variable over a coefficient ring.
//!
//! A series carries a valuation `v` and a truncation order `T`: the coefficients of
//! `q^v .. q^{T-1}` are exact and nothing is known at or beyond `q^T`. A series whose
//! window holds only zeros is stored with `v == T` and represents `O(q^T)`.
//! Every operation propagates `T` pessimistically.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use serde_json::{json, Value};

use super::jet::{Jet, JetContext};
use super::rat::{fmt_rat, parse_rat, rat, Rat};
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Series<C: Coeff> {
    ctx: C::Ctx,
    var: Arc<str>,
    valuation: i64,
    trunc: i64,
    coeffs: Vec<C>,
}

/// Context of the series ring: coefficient context plus the default truncation used
/// for constants.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCtx<C: Coeff> {
    pub coeff: C::Ctx,
    pub trunc: i64,
}

impl<C: Coeff> Series<C> {
    /// Build from coefficients of `q^valuation, q^{valuation+1}, ...`, padding with zeros
    /// or dropping entries so that exactly the window below `trunc` is kept.
    pub fn new(ctx: &C::Ctx, valuation: i64, trunc: i64, coeffs: Vec<C>) -> Self {
        let mut s = Series { ctx: ctx.clone(), var: Arc::from("q"), valuation, trunc, coeffs };
        s.normalize();
        s
    }

    pub fn zero(ctx: &C::Ctx, trunc: i64) -> Self {
        Self::new(ctx, trunc, trunc, vec![])
    }

    pub fn one(ctx: &C::Ctx, trunc: i64) -> Self {
        Self::constant(C::one_in(ctx), trunc)
    }

    pub fn constant(c: C, trunc: i64) -> Self {
        let ctx = c.ctx();
        Self::new(&ctx, 0, trunc, vec![c])
    }

    pub fn from_rat(ctx: &C::Ctx, r: &Rat, trunc: i64) -> Self {
        Self::constant(C::from_rat(ctx, r), trunc)
    }

    pub fn monomial(c: C, k: i64, trunc: i64) -> Self {
        let ctx = c.ctx();
        Self::new(&ctx, k, trunc, vec![c])
    }

    /// The series variable itself.
    pub fn gen(ctx: &C::Ctx, trunc: i64) -> Self {
        Self::monomial(C::one_in(ctx), 1, trunc)
    }

    /// Polynomial with rational coefficients `c_0 + c_1 q + ...`.
    pub fn from_rats(ctx: &C::Ctx, coeffs: &[Rat], trunc: i64) -> Self {
        Self::new(ctx, 0, trunc, coeffs.iter().map(|c| C::from_rat(ctx, c)).collect())
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = Arc::from(var);
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn ring_ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// True when no coefficient in the window is non-zero.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; zero below the valuation. Panics at or beyond `trunc`.
    pub fn coeff(&self, n: i64) -> C {
        assert!(n < self.trunc, "coefficient q^{n} is beyond the truncation order {}", self.trunc);
        if n < self.valuation {
            C::zero_in(&self.ctx)
        } else {
            self.coeffs[(n - self.valuation) as usize].clone()
        }
    }

    pub fn get(&self, n: i64) -> Option<C> {
        (n < self.trunc).then(|| self.coeff(n))
    }

    /// Exact coefficients from `q^from` to `q^{trunc-1}`.
    pub fn coeffs_from(&self, from: i64) -> Vec<C> {
        (from..self.trunc).map(|n| self.coeff(n)).collect()
    }

    /// Leading exact coefficient (at the valuation).
    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    fn normalize(&mut self) {
        let width = (self.trunc - self.valuation).max(0) as usize;
        if self.coeffs.len() > width {
            self.coeffs.truncate(width);
        }
        while self.coeffs.len() < width {
            self.coeffs.push(C::zero_in(&self.ctx));
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_nil()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.valuation = self.trunc;
        }
    }

    /// Lower the truncation order to `t` (no-op when already lower).
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.trunc {
            return self.clone();
        }
        let keep = (t - self.valuation).max(0) as usize;
        Series {
            ctx: self.ctx.clone(),
            var: self.var.clone(),
            valuation: self.valuation.min(t),
            trunc: t,
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
        }
        .renormalized()
    }

    fn renormalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            ctx: self.ctx.clone(),
            var: self.var.clone(),
            valuation: self.valuation + k,
            trunc: self.trunc + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(ctx, self.valuation, self.trunc, self.coeffs.iter().map(f).collect())
            .with_var(&self.var)
    }

    /// Substitute `q -> c q` for a rational `c`.
    pub fn rescale_var(&self, c: &Rat) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(&super::rat::rat_pow(c, self.valuation + i as i64)))
            .collect();
        Series { coeffs, ..self.clone() }.renormalized()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(), ..self.clone() }.renormalized()
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(), ..self.clone() }.renormalized()
    }

    pub fn add_series(&self, o: &Self) -> Self {
        let t = self.trunc.min(o.trunc);
        let v = self.valuation.min(o.valuation).min(t);
        let coeffs = (v..t)
            .map(|n| {
                let a = if n >= self.valuation { Some(&self.coeffs[(n - self.valuation) as usize]) } else { None };
                let b = if n >= o.valuation { Some(&o.coeffs[(n - o.valuation) as usize]) } else { None };
                match (a, b) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::zero_in(&self.ctx),
                }
            })
            .collect();
        Series::new(&self.ctx, v, t, coeffs).with_var(&self.var)
    }

    pub fn neg_series(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.negated()).collect(), ..self.clone() }
    }

    pub fn sub_series(&self, o: &Self) -> Self {
        self.add_series(&o.neg_series())
    }

    pub fn mul_series(&self, o: &Self) -> Self {
        let v = self.valuation + o.valuation;
        let t = (self.trunc + o.valuation).min(o.trunc + self.valuation);
        let width = (t - v).max(0) as usize;
        let mut coeffs = Vec::with_capacity(width);
        for n in 0..width {
            let mut acc = C::zero_in(&self.ctx);
            for i in 0..=n {
                if i >= self.coeffs.len() {
                    break;
                }
                if n - i >= o.coeffs.len() {
                    continue;
                }
                let (a, b) = (&self.coeffs[i], &o.coeffs[n - i]);
                if a.is_nil() || b.is_nil() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            coeffs.push(acc);
        }
        Series::new(&self.ctx, v.min(t), t, coeffs).with_var(&self.var)
    }

    /// Multiplicative inverse; the leading exact coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let b0 = self.coeffs.first().ok_or_else(|| {
            Error::DivisionByNonUnit(format!("divisor is O({}^{})", self.var, self.trunc))
        })?;
        let b0inv = b0.inverse().map_err(|_| {
            Error::DivisionByNonUnit(format!(
                "leading coefficient {:?} of the divisor at {}^{} is not a unit",
                b0, self.var, self.valuation
            ))
        })?;
        let width = self.coeffs.len();
        let mut c: Vec<C> = Vec::with_capacity(width);
        c.push(b0inv.clone());
        for n in 1..width {
            let mut acc = C::zero_in(&self.ctx);
            for k in 1..=n {
                let b = &self.coeffs[k];
                if !b.is_nil() {
                    acc = acc.plus(&b.times(&c[n - k]));
                }
            }
            c.push(acc.times(&b0inv).negated());
        }
        let v = -self.valuation;
        Ok(Series::new(&self.ctx, v, v + width as i64, c).with_var(&self.var))
    }

    pub fn div_series(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_series(&o.inverse()?))
    }

    /// Integer power; negative exponents need an invertible leading coefficient.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Series::one(&self.ctx, self.trunc - self.valuation).with_var(&self.var));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc: Option<Self> = None;
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul_series(&b),
                });
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_series(&b);
            }
        }
        Ok(acc.expect("non-zero exponent").with_var(&self.var))
    }

    /// d/dq; lowers the truncation order by one.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&rat(self.valuation + i as i64)))
            .collect();
        Series::new(&self.ctx, self.valuation - 1, self.trunc - 1, coeffs).with_var(&self.var)
    }

    /// Power series part check shared by exp and log.
    fn require_power_series(&self, what: &str) -> Result<()> {
        if self.valuation < 0 {
            return Err(Error::BadConstantTerm(format!("{what} of a series with a pole")));
        }
        Ok(())
    }

    /// exp of a series with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_power_series("exp")?;
        if self.valuation == 0 && self.trunc > 0 {
            return Err(Error::BadConstantTerm(format!(
                "exp needs constant term 0, got {:?}",
                self.coeffs[0]
            )));
        }
        let t = self.trunc;
        let s: Vec<C> = (0..t).map(|n| self.coeff(n)).collect();
        let mut e: Vec<C> = vec![C::one_in(&self.ctx)];
        for n in 1..t as usize {
            let mut acc = C::zero_in(&self.ctx);
            for k in 1..=n {
                if !s[k].is_nil() {
                    acc = acc.plus(&s[k].times(&e[n - k]).scale(&rat(k as i64)));
                }
            }
            e.push(acc.scale(&Rat::new(1.into(), (n as i64).into())));
        }
        Ok(Series::new(&self.ctx, 0, t, e).with_var(&self.var))
    }

    /// log of a series with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        self.require_power_series("log")?;
        if self.valuation != 0 || !self.coeffs[0].minus(&C::one_in(&self.ctx)).is_nil() {
            return Err(Error::BadConstantTerm("log needs constant term 1".into()));
        }
        let t = self.trunc;
        let s: Vec<C> = (0..t).map(|n| self.coeff(n)).collect();
        let mut l: Vec<C> = vec![C::zero_in(&self.ctx)];
        for n in 1..t as usize {
            let mut acc = s[n].scale(&rat(n as i64));
            for k in 1..n {
                if !l[k].is_nil() {
                    acc = acc.minus(&l[k].times(&s[n - k]).scale(&rat(k as i64)));
                }
            }
            l.push(acc.scale(&Rat::new(1.into(), (n as i64).into())));
        }
        Ok(Series::new(&self.ctx, 0, t, l).with_var(&self.var))
    }

    /// `self^r` for rational `r`, for series with constant term one.
    pub fn pow_rat(&self, r: &Rat) -> Result<Self> {
        self.log()?.scale(r).exp()
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.pow_rat(&Rat::new(1.into(), 2.into()))
    }

    /// `self(g)` for a power series `self` and `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.valuation < 0 {
            return Err(Error::BadConstantTerm("outer series of a composition has a pole".into()));
        }
        if g.valuation < 1 {
            return Err(Error::BadConstantTerm("inner series of a composition must vanish at 0".into()));
        }
        let t_out = (self.trunc.saturating_mul(g.valuation)).min(g.trunc);
        let g = g.truncate(t_out);
        let mut acc = Series::zero(&self.ctx, t_out);
        for n in (0..self.trunc).rev() {
            acc = acc.mul_series(&g).add_series(&Series::constant(self.coeff(n), t_out));
        }
        Ok(acc.truncate(t_out).with_var(&g.var))
    }

    /// True when both series agree on their common exact window.
    pub fn agrees_with(&self, o: &Self) -> bool
    where
        C: PartialEq,
    {
        self.first_difference(o).is_none()
    }

    /// First power in the common window where the two series differ.
    pub fn first_difference(&self, o: &Self) -> Option<i64>
    where
        C: PartialEq,
    {
        let t = self.trunc.min(o.trunc);
        let lo = self.valuation.min(o.valuation);
        (lo..t).find(|&n| self.coeff(n) != o.coeff(n))
    }
}

impl Series<Rat> {
    pub fn from_ints(coeffs: &[i64], trunc: i64) -> Self {
        Self::new(&(), 0, trunc, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn rats(&self) -> Vec<Rat> {
        self.coeffs.clone()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": &*self.var,
            "valuation": self.valuation,
            "trunc": self.trunc,
            "coeffs": self.coeffs.iter().map(fmt_rat).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (var, valuation, trunc, raw) = parse_header(v)?;
        let coeffs = raw
            .iter()
            .map(|c| c.as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into())).and_then(parse_rat))
            .collect::<Result<Vec<_>>>()?;
        check_width(valuation, trunc, coeffs.len())?;
        Ok(Series::new(&(), valuation, trunc, coeffs).with_var(&var))
    }
}

impl Series<Jet> {
    pub fn to_json(&self) -> Value {
        json!({
            "var": &*self.var,
            "valuation": self.valuation,
            "trunc": self.trunc,
            "jetVars": self.ctx.names(),
            "jetCaps": self.ctx.caps(),
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ctx: &Arc<JetContext>, v: &Value) -> Result<Self> {
        let (var, valuation, trunc, raw) = parse_header(v)?;
        let coeffs = raw.iter().map(|c| Jet::from_json(ctx, c)).collect::<Result<Vec<_>>>()?;
        check_width(valuation, trunc, coeffs.len())?;
        Ok(Series::new(ctx, valuation, trunc, coeffs).with_var(&var))
    }

    /// Coefficient-wise jet extraction `[y^k]`, giving a series over the same jet ring.
    pub fn jet_coefficient(&self, var: &str, k: u32) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.coefficient_in(var, k)).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(&self.ctx, self.valuation, self.trunc, coeffs).with_var(&self.var))
    }

    /// Constant jet term of every coefficient.
    pub fn constant_part(&self) -> Series<Rat> {
        self.map_coeffs(&(), |c| c.constant_term())
    }

    /// Coefficient of a full exponent vector in every coefficient.
    pub fn monomial_part(&self, exps: &[u32]) -> Series<Rat> {
        self.map_coeffs(&(), |c| c.coeff(exps))
    }
}

impl<C: Coeff> Series<C> {
    /// Lift a rational series into any coefficient ring.
    pub fn lift_rat(s: &Series<Rat>, ctx: &C::Ctx) -> Self {
        s.map_coeffs(ctx, |c| C::from_rat(ctx, c))
    }
}

fn parse_header(v: &Value) -> Result<(String, i64, i64, Vec<Value>)> {
    let get_i = |k: &str| {
        v.get(k).and_then(Value::as_i64).ok_or_else(|| Error::Parse(format!("missing integer field `{k}`")))
    };
    let var = v.get("var").and_then(Value::as_str).unwrap_or("q").to_string();
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field `coeffs`".into()))?
        .clone();
    Ok((var, get_i("valuation")?, get_i("trunc")?, coeffs))
}

fn check_width(valuation: i64, trunc: i64, len: usize) -> Result<()> {
    if trunc < valuation || len as i64 != trunc - valuation {
        return Err(Error::Parse(format!(
            "expected {} coefficients for window [{valuation}, {trunc}), got {len}",
            (trunc - valuation).max(0)
        )));
    }
    Ok(())
}

impl<C: Coeff> PartialEq for Series<C> {
    /// Equality on the common exact window.
    fn eq(&self, o: &Self) -> bool {
        self.agrees_with(o)
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_nil() {
                continue;
            }
            let n = self.valuation + i as i64;
            let c = format!("{:?}", c);
            parts.push(match n {
                0 => format!("({c})"),
                1 => format!("({c})*{}", self.var),
                _ => format!("({c})*{}^{}", self.var, n),
            });
        }
        parts.push(format!("O({}^{})", self.var, self.trunc));
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<C: Coeff> $tr<&Series<C>> for &Series<C> {
            type Output = Series<C>;
            fn $m(self, o: &Series<C>) -> Series<C> {
                self.$f(o)
            }
        }
        impl<C: Coeff> $tr<Series<C>> for Series<C> {
            type Output = Series<C>;
            fn $m(self, o: Series<C>) -> Series<C> {
                self.$f(&o)
            }
        }
    };
}
binop!(Add, add, add_series);
binop!(Sub, sub, sub_series);
binop!(Mul, mul, mul_series);

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.neg_series()
    }
}

impl<C: Coeff> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.neg_series()
    }
}

impl<C: Coeff> Ring for Series<C> {
    type Ctx = SeriesCtx<C>;

    fn ctx(&self) -> SeriesCtx<C> {
        SeriesCtx { coeff: self.ctx.clone(), trunc: self.trunc }
    }
    fn zero_in(ctx: &SeriesCtx<C>) -> Self {
        Series::zero(&ctx.coeff, ctx.trunc)
    }
    fn one_in(ctx: &SeriesCtx<C>) -> Self {
        Series::one(&ctx.coeff, ctx.trunc)
    }
    fn from_rat(ctx: &SeriesCtx<C>, r: &Rat) -> Self {
        Series::from_rat(&ctx.coeff, r, ctx.trunc)
    }
    fn is_nil(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add_series(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub_series(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_series(o)
    }
    fn negated(&self) -> Self {
        self.neg_series()
    }
    fn scale(&self, r: &Rat) -> Self {
        Series::scale(self, r)
    }
    fn is_unit(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_unit())
    }
    fn inverse(&self) -> Result<Self> {
        Series::inverse(self)
    }
}

/// Checked quotient: fails with `TruncationUnderflow` when the result has no exact
/// coefficient left.
pub fn checked_div<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Result<Series<C>> {
    let out = a.div_series(b)?;
    underflow_guard(out, a.trunc() > a.valuation())
}

/// Checked product.
pub fn checked_mul<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Result<Series<C>> {
    let out = a.mul_series(b);
    underflow_guard(out, !a.is_zero_to_precision() && !b.is_zero_to_precision())
}

/// Checked integer power.
pub fn checked_pow<C: Coeff>(a: &Series<C>, k: i64) -> Result<Series<C>> {
    let out = a.pow(k)?;
    underflow_guard(out, a.trunc() > a.valuation())
}

fn underflow_guard<C: Coeff>(out: Series<C>, input_nonempty: bool) -> Result<Series<C>> {
    if input_nonempty && out.is_zero_to_precision() {
        return Err(Error::TruncationUnderflow(format!(
            "result is O(q^{}) with no exact coefficient",
            out.trunc()
        )));
    }
    Ok(out)
}

/// `1/(1-q)^k` style helper: the rational series of `(1 - q)^e`.
pub fn one_minus_q_pow(e: i64, trunc: i64) -> Series<Rat> {
    let base = Series::from_ints(&[1, -1], trunc);
    base.pow(e).expect("1 - q is a unit")
}

pub fn is_one<C: Coeff>(s: &Series<C>) -> bool {
    s.valuation == 0
        && s.coeffs.iter().enumerate().all(|(i, c)| {
            if i == 0 {
                c.minus(&C::one_in(&s.ctx)).is_nil()
            } else {
                c.is_nil()
            }
        })
}

pub fn rat_one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], t: i64) -> Series<Rat> {
        Series::from_ints(c, t)
    }

    #[test]
    fn division_shifts_valuation() {
        let a = s(&[0, 1, 1], 6);
        let q = Series::gen(&(), 6);
        let r = a.div_series(&q).unwrap();
        assert_eq!(r.valuation(), 0);
        assert_eq!(r.trunc(), 5);
        assert_eq!(r.rats()[..2], [rat(1), rat(1)]);
        assert!(r.coeffs_from(2).iter().all(|c| c.is_nil()));
    }

    #[test]
    fn non_unit_division_fails() {
        let z = Series::<Rat>::zero(&(), 5);
        assert!(matches!(s(&[1], 5).div_series(&z), Err(Error::DivisionByNonUnit(_))));
        let ctx = JetContext::new(&["y"], &[1]);
        let ny = Series::constant(Jet::var(&ctx, "y"), 4);
        assert!(matches!(ny.inverse(), Err(Error::DivisionByNonUnit(_))));
    }

    #[test]
    fn derivative_lowers_trunc() {
        let d = s(&[1, 2, 3], 5).derivative();
        assert_eq!(d.trunc(), 4);
        assert_eq!(d.coeff(0), rat(2));
        assert_eq!(d.coeff(1), rat(6));
    }

    #[test]
    fn exp_log_inverse_pair() {
        let x = s(&[0, 1, -3, 2], 8);
        let back = x.exp().unwrap().log().unwrap();
        assert_eq!(back, x);
        assert!(matches!(s(&[1, 1], 4).exp(), Err(Error::BadConstantTerm(_))));
        assert!(matches!(s(&[2, 1], 4).log(), Err(Error::BadConstantTerm(_))));
    }

    #[test]
    fn sqrt_squares_back() {
        let x = s(&[1, -4], 10);
        let r = x.sqrt().unwrap();
        assert_eq!(r.mul_series(&r), x);
    }

    #[test]
    fn json_roundtrip() {
        let x = s(&[0, 3, -1], 5).scale(&Rat::new(1.into(), 7.into())).shift(-2);
        let v = x.to_json();
        assert_eq!(v["valuation"], -1);
        let y = Series::<Rat>::from_json(&v).unwrap();
        assert_eq!(y.to_json(), v);
    }

    #[test]
    fn compose_geometric() {
        let geo = s(&[1, 1, 1, 1, 1, 1], 6);
        let g = s(&[0, 1, 1], 6);
        let c = geo.compose(&g).unwrap();
        let direct = s(&[1], 6).div_series(&s(&[1, -1, -1], 6)).unwrap();
        assert_eq!(c, direct);
    }
}
