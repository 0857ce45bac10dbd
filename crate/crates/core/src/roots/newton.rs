//! Lifting a simple root of a polynomial with series coefficients.

use crate::algebra::{binom, rat, Coeff, Rat, Series, SeriesCtx};
use crate::error::{Error, Result};

use super::hensel::SeriesPoly;
use super::polyops;

/// The root `z(q)` of `G` with `z(0) = initial`, by Newton iteration.
///
/// Requires `G(initial) = 0` and `G'(initial)` invertible at `q = 0`.
pub fn newton_root<C: Coeff>(g: &SeriesPoly<C>, initial: &C) -> Result<Series<C>> {
    let ctx = initial.ctx();
    let t = g.iter().map(|s| s.trunc()).min().unwrap_or(0);
    let sctx = SeriesCtx { coeff: ctx.clone(), trunc: t };
    let dg = polyops::derivative(g);
    let const_of = |poly: &SeriesPoly<C>| -> Vec<C> { poly.iter().map(|s| s.coeff(0)).collect() };
    let g0 = const_of(g);
    let residual = polyops::eval(&g0, initial, &ctx);
    if !residual.is_nil() {
        return Err(Error::InvalidInput(format!("initial value is not a root mod q (residual {:?})", residual)));
    }
    let slope = polyops::eval(&const_of(&dg), initial, &ctx);
    if !slope.is_unit() {
        return Err(Error::SingularJacobian(format!("G'(z0) = {:?} is not a unit", slope)));
    }
    let mut z = Series::constant(initial.clone(), t);
    for _ in 0..64 {
        let f = polyops::eval(g, &z, &sctx);
        if f.is_zero_to_precision() {
            return Ok(z);
        }
        let fp = polyops::eval(&dg, &z, &sctx);
        z = (&z - &f.div_series(&fp)?).truncate(t);
    }
    unreachable!("Newton iteration doubles the precision each step")
}

/// Closed-form coefficient of `q^n t^k` in the root `u` of
/// `-q = u / ((1 - u)(t + (1 - t) u))`.
pub fn lemma_uv_coeffs(n: i64, k: i64) -> Rat {
    if n < 1 || k < 1 {
        return rat(0);
    }
    let sign = if (n + k + 1) % 2 == 0 { rat(1) } else { rat(-1) };
    sign * Rat::new(1.into(), n.into()) * binom(n + k, k - 1) * binom(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Jet, JetContext, Ring};

    #[test]
    fn catalan_root() {
        let g: SeriesPoly<Rat> = vec![Series::from_ints(&[0, -1], 7), Series::from_ints(&[1], 7), Series::from_ints(&[-1], 7)];
        let z = newton_root(&g, &rat(0)).unwrap();
        assert_eq!(z.rats()[..6], [rat(1), rat(1), rat(2), rat(5), rat(14), rat(42)]);
    }

    #[test]
    fn singular_jacobian() {
        let g: SeriesPoly<Rat> = vec![Series::from_ints(&[0, -1], 5), Series::from_ints(&[0], 5), Series::from_ints(&[1], 5)];
        assert!(matches!(newton_root(&g, &rat(0)), Err(Error::SingularJacobian(_))));
    }

    #[test]
    fn lemma_u_first_orders() {
        // u + q (1 - u)(t + (1 - t) u) = 0
        let ctx = JetContext::new(&["t"], &[3]);
        let t = Jet::var(&ctx, "t");
        let one = Jet::one_in(&ctx);
        let tt = 10;
        let q = Series::gen(&ctx, tt);
        let c0 = q.mul_coeff(&t);
        let c1 = &Series::one(&ctx, tt) + &q.mul_coeff(&one.minus(&t).minus(&t));
        let c2 = q.mul_coeff(&one.minus(&t)).neg_series();
        let u = newton_root(&vec![c0, c1, c2], &Jet::zero_in(&ctx)).unwrap();
        for n in 1..tt {
            for k in 1..=3u32 {
                assert_eq!(u.coeff(n).coeff(&[k]), lemma_uv_coeffs(n, k as i64), "n={n} k={k}");
            }
        }
    }
}
