//! Symmetric evaluation of root expressions over a block of roots.
//!
//! Elements of `S[z]/p(z)` (with `S` a truncated series ring) are kept as fractions
//! `num / den` with a scalar series denominator, so that only one Laurent division
//! happens at the end of an evaluation.

use crate::algebra::{Coeff, Rat, Ring, Series};
use crate::error::{Error, Result};

use super::hensel::MonicSeriesPoly;
use super::polyops;
use super::quotient::QuotientRing;

/// An element of the quotient ring divided by a scalar series.
#[derive(Clone, Debug)]
pub struct Frac<C: Coeff> {
    pub num: Vec<Series<C>>,
    pub den: Series<C>,
}

/// The quotient ring attached to a monic block polynomial.
#[derive(Clone, Debug)]
pub struct RootBlock<C: Coeff> {
    pub p: MonicSeriesPoly<C>,
    ring: QuotientRing<Series<C>>,
    coeff_ctx: C::Ctx,
    trunc: i64,
}

impl<C: Coeff> RootBlock<C> {
    pub fn new(p: MonicSeriesPoly<C>, coeff_ctx: &C::Ctx) -> Self {
        let trunc = p.trunc();
        let sctx = crate::algebra::SeriesCtx { coeff: coeff_ctx.clone(), trunc };
        let ring = QuotientRing::new(p.ascending(coeff_ctx), sctx);
        RootBlock { p, ring, coeff_ctx: coeff_ctx.clone(), trunc }
    }

    pub fn n(&self) -> usize {
        self.p.degree()
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeff_ctx(&self) -> &C::Ctx {
        &self.coeff_ctx
    }

    pub fn ring(&self) -> &QuotientRing<Series<C>> {
        &self.ring
    }

    /// Series constant `c` at the block truncation.
    pub fn scalar(&self, c: C) -> Series<C> {
        Series::constant(c, self.trunc)
    }

    pub fn scalar_rat(&self, r: &Rat) -> Series<C> {
        Series::from_rat(&self.coeff_ctx, r, self.trunc)
    }

    fn one_series(&self) -> Series<C> {
        Series::one(&self.coeff_ctx, self.trunc)
    }

    pub fn elem(&self, poly: &[Series<C>]) -> Frac<C> {
        Frac { num: self.ring.from_poly(poly), den: self.one_series() }
    }

    /// Polynomial in `z` with coefficients in the coefficient ring.
    pub fn elem_c(&self, poly: &[C]) -> Frac<C> {
        let lifted: Vec<Series<C>> = poly.iter().map(|c| self.scalar(c.clone())).collect();
        self.elem(&lifted)
    }

    /// Polynomial in `z` with rational coefficients.
    pub fn elem_rat(&self, poly: &[Rat]) -> Frac<C> {
        let lifted: Vec<Series<C>> = poly.iter().map(|c| self.scalar_rat(c)).collect();
        self.elem(&lifted)
    }

    pub fn z(&self) -> Frac<C> {
        self.elem_rat(&[Rat::from_integer(0.into()), Rat::from_integer(1.into())])
    }

    pub fn one(&self) -> Frac<C> {
        Frac { num: self.ring.one(), den: self.one_series() }
    }

    pub fn from_scalar(&self, s: &Series<C>) -> Frac<C> {
        Frac { num: self.ring.constant(s.clone()), den: self.one_series() }
    }

    pub fn mul(&self, a: &Frac<C>, b: &Frac<C>) -> Frac<C> {
        Frac { num: self.ring.mul(&a.num, &b.num), den: &a.den * &b.den }
    }

    pub fn add(&self, a: &Frac<C>, b: &Frac<C>) -> Frac<C> {
        let l = self.ring.scale(&a.num, &b.den);
        let r = self.ring.scale(&b.num, &a.den);
        Frac { num: self.ring.add(&l, &r), den: &a.den * &b.den }
    }

    pub fn neg(&self, a: &Frac<C>) -> Frac<C> {
        Frac { num: a.num.iter().map(|s| s.neg_series()).collect(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &Frac<C>, b: &Frac<C>) -> Frac<C> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Frac<C>, r: &Rat) -> Frac<C> {
        Frac { num: a.num.iter().map(|s| s.scale(r)).collect(), den: a.den.clone() }
    }

    pub fn div_scalar(&self, a: &Frac<C>, s: &Series<C>) -> Frac<C> {
        Frac { num: a.num.clone(), den: &a.den * s }
    }

    pub fn mul_scalar(&self, a: &Frac<C>, s: &Series<C>) -> Frac<C> {
        Frac { num: self.ring.scale(&a.num, s), den: a.den.clone() }
    }

    /// `1/a = den * adj(num) / norm(num)`.
    pub fn inv(&self, a: &Frac<C>) -> Frac<C> {
        let (adj, norm) = self.ring.adjugate(&a.num);
        Frac { num: self.ring.scale(&adj, &a.den), den: norm }
    }

    pub fn div(&self, a: &Frac<C>, b: &Frac<C>) -> Frac<C> {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Frac<C>, k: i64) -> Frac<C> {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.one();
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `sum_i a(z_i)`.
    pub fn trace(&self, a: &Frac<C>) -> Result<Series<C>> {
        divide(&self.ring.trace(&a.num), &a.den)
    }

    /// `prod_i a(z_i)`.
    pub fn norm(&self, a: &Frac<C>) -> Result<Series<C>> {
        let nn = self.ring.norm(&a.num);
        let dn = a.den.pow(self.n() as i64)?;
        divide(&nn, &dn)
    }

    /// Exact equality of two elements, checked coordinatewise after clearing denominators.
    pub fn equal(&self, a: &Frac<C>, b: &Frac<C>) -> bool {
        let l = self.ring.scale(&a.num, &b.den);
        let r = self.ring.scale(&b.num, &a.den);
        l.iter().zip(&r).all(|(x, y)| x.agrees_with(y))
    }

    /// Coordinates of `a` as series (one division per coordinate).
    pub fn coords(&self, a: &Frac<C>) -> Result<Vec<Series<C>>> {
        a.num.iter().map(|c| divide(c, &a.den)).collect()
    }

    /// `p(x)` at a rational point.
    pub fn p_at(&self, x: &Rat) -> Series<C> {
        let asc = self.p.ascending(&self.coeff_ctx);
        let xs = self.scalar_rat(x);
        polyops::eval(&asc, &xs, &crate::algebra::SeriesCtx { coeff: self.coeff_ctx.clone(), trunc: self.trunc })
    }

    /// The class of `p'(z)`; its norm is `prod_{i != j} (z_i - z_j)`.
    pub fn p_prime(&self) -> Frac<C> {
        let asc = self.p.ascending(&self.coeff_ctx);
        self.elem(&polyops::derivative(&asc))
    }

    /// Compose a polynomial with an element: `s(x)` for ascending `s`.
    pub fn eval_poly_at(&self, s: &[Series<C>], x: &Frac<C>) -> Frac<C> {
        let mut acc = Frac { num: self.ring.zero(), den: self.one_series() };
        for c in s.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_scalar(c));
        }
        acc
    }
}

/// Final Laurent division; a non-unit leading coefficient means the requested root
/// function is not defined on this block.
fn divide<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Result<Series<C>> {
    a.div_series(b).map_err(|e| match e {
        Error::DivisionByNonUnit(m) => Error::NonInvertibleDenominator(m),
        other => other,
    })
}

/// A rational function of a root: `z^k * num(z) / den(z)`.
#[derive(Clone, Debug)]
pub struct RootExpr<C: Coeff> {
    pub num: Vec<Series<C>>,
    pub den: Vec<Series<C>>,
    pub z_power: i64,
}

impl<C: Coeff> RootExpr<C> {
    pub fn poly(num: Vec<Series<C>>, ctx: &C::Ctx, trunc: i64) -> Self {
        RootExpr { num, den: vec![Series::one(ctx, trunc)], z_power: 0 }
    }

    fn to_frac(&self, block: &RootBlock<C>) -> Frac<C> {
        let num = block.elem(&self.num);
        let den = block.elem(&self.den);
        let zp = block.pow(&block.z(), self.z_power);
        block.mul(&block.div(&num, &den), &zp)
    }
}

/// `sum_i R(z_i)` over the roots of `p`.
pub fn trace_eval<C: Coeff>(p: &MonicSeriesPoly<C>, expr: &RootExpr<C>, ctx: &C::Ctx) -> Result<Series<C>> {
    let block = RootBlock::new(p.clone(), ctx);
    block.trace(&expr.to_frac(&block))
}

/// `prod_i R(z_i)` over the roots of `p`.
pub fn norm_eval<C: Coeff>(p: &MonicSeriesPoly<C>, expr: &RootExpr<C>, ctx: &C::Ctx) -> Result<Series<C>> {
    let block = RootBlock::new(p.clone(), ctx);
    let num = block.norm(&block.elem(&expr.num))?;
    let den = block.norm(&block.elem(&expr.den))?;
    let z = block.norm(&block.z())?;
    let zk = z.pow(expr.z_power).map_err(|_| {
        Error::NonInvertibleDenominator("product of the roots is not invertible".into())
    })?;
    divide(&(&num * &zk), &den)
}

/// How the two root sets are coupled in [`resultant_pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    /// `prod_{i,j} (1 - z_i - w_j)`.
    OneMinusSum,
    /// `prod_{i,j} (z_i - w_j)`.
    Difference,
    /// `prod_{i != j} (z_i - z_j)` over the roots of the first polynomial.
    Discriminant,
}

/// Cross products of two root blocks; `s` is ignored in discriminant mode.
pub fn resultant_pair<C: Coeff>(
    p: &MonicSeriesPoly<C>,
    s: &MonicSeriesPoly<C>,
    coupling: Coupling,
    ctx: &C::Ctx,
) -> Result<Series<C>> {
    let block = RootBlock::new(p.clone(), ctx);
    let s_asc = s.ascending(ctx);
    let x = match coupling {
        Coupling::Discriminant => return block.norm(&block.p_prime()),
        Coupling::Difference => block.z(),
        Coupling::OneMinusSum => {
            let one = Rat::from_integer(1.into());
            block.elem_rat(&[one.clone(), -one])
        }
    };
    block.norm(&block.eval_poly_at(&s_asc, &x))
}

/// Convenience: the ascending polynomial `c_0 + c_1 z + ...` with rational coefficients.
pub fn rat_poly<C: Coeff>(cs: &[Rat], ctx: &C::Ctx, trunc: i64) -> Vec<Series<C>> {
    cs.iter().map(|c| Series::from_rat(ctx, c, trunc)).collect()
}

pub fn is_nil_elem<C: Coeff>(a: &[Series<C>]) -> bool {
    a.iter().all(|s| s.is_nil())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn small() -> MonicSeriesPoly<Rat> {
        MonicSeriesPoly { e: vec![Series::from_ints(&[-3], 6), Series::from_ints(&[2], 6)] }
    }

    #[test]
    fn trace_and_norm_examples() {
        let p = small();
        let z = RootExpr { num: rat_poly(&[rat(0), rat(1)], &(), 6), den: rat_poly(&[rat(1)], &(), 6), z_power: 0 };
        assert_eq!(trace_eval(&p, &z, &()).unwrap().coeff(0), rat(3));
        assert_eq!(norm_eval(&p, &z, &()).unwrap().coeff(0), rat(2));
        let zinv = RootExpr { num: rat_poly(&[rat(1)], &(), 6), den: rat_poly(&[rat(1)], &(), 6), z_power: -1 };
        assert_eq!(trace_eval(&p, &zinv, &()).unwrap().coeff(0), ratio(3, 2));
    }

    #[test]
    fn discriminant_mode() {
        let p = small();
        let d = resultant_pair(&p, &p, Coupling::Discriminant, &()).unwrap();
        assert_eq!(d.coeff(0), rat(-1));
    }

    #[test]
    fn non_invertible_denominator() {
        let p = small();
        let bad = RootExpr { num: rat_poly(&[rat(1)], &(), 6), den: rat_poly(&[rat(-1), rat(1)], &(), 6), z_power: 0 };
        assert!(matches!(trace_eval(&p, &bad, &()), Err(Error::NonInvertibleDenominator(_))));
    }
}
