//! Order-by-order Hensel factorization of a polynomial in `z` whose coefficients are
//! power series in `q`.

use crate::algebra::{Coeff, Series};
use crate::error::{Error, Result};

use super::polyops;
use super::quotient::QuotientRing;

/// A polynomial in `z` with series coefficients, ascending in `z`.
pub type SeriesPoly<C> = Vec<Series<C>>;

/// `p(z) = z^N + e_1 z^{N-1} + ... + e_N`, the factor carrying a block of roots.
#[derive(Clone, Debug)]
pub struct MonicSeriesPoly<C: Coeff> {
    /// `e_1..e_N`.
    pub e: Vec<Series<C>>,
}

impl<C: Coeff> MonicSeriesPoly<C> {
    pub fn degree(&self) -> usize {
        self.e.len()
    }

    pub fn trunc(&self) -> i64 {
        self.e.iter().map(|s| s.trunc()).min().unwrap_or(i64::MAX)
    }

    /// Ascending coefficient list including the leading one.
    pub fn ascending(&self, ctx: &C::Ctx) -> Vec<Series<C>> {
        let t = self.trunc();
        let mut v: Vec<Series<C>> = self.e.iter().rev().cloned().collect();
        v.push(Series::one(ctx, t));
        v
    }
}

/// Result of [`hensel_factor`]: `G = p * h` to the working truncation.
#[derive(Clone, Debug)]
pub struct HenselFactor<C: Coeff> {
    pub p: MonicSeriesPoly<C>,
    pub cofactor: SeriesPoly<C>,
}

/// Lift `G = g_0 * h_0 (mod q)` to `G = p * h` with `p` monic of degree `n` and
/// `p = g_0 (mod q)`.
///
/// `g0` is monic of degree `n` over the coefficient ring; the resultant of `g0` and
/// `h0 = (G mod q) / g0` must be a unit.
pub fn hensel_factor<C: Coeff>(g: &SeriesPoly<C>, n: usize, g0: &[C]) -> Result<HenselFactor<C>> {
    if g.is_empty() {
        return Err(Error::DegreeMismatch("empty polynomial".into()));
    }
    if g0.len() != n + 1 || !g0[n].minus(&C::one_in(&g0[n].ctx())).is_nil() {
        return Err(Error::DegreeMismatch(format!("g0 must be monic of degree {n}")));
    }
    let ctx = g[0].ring_ctx().clone();
    if g.iter().any(|s| s.valuation() < 0) {
        return Err(Error::DegreeMismatch("coefficients of G must be power series".into()));
    }
    let t = g.iter().map(|s| s.trunc()).min().unwrap();
    if t < 1 {
        return Err(Error::DegreeMismatch("G has no exact coefficient".into()));
    }
    let grid: Vec<Vec<C>> = (0..t).map(|m| g.iter().map(|s| s.coeff(m)).collect()).collect();

    let deg0 = polyops::trim(grid[0].clone()).len() - 1;
    if deg0 < n || grid[0].iter().all(|c| c.is_nil()) {
        return Err(Error::DegreeMismatch(format!(
            "G mod q has degree {deg0}, below the requested block size {n}"
        )));
    }
    let (h0, r0) = polyops::divrem_monic(&grid[0], g0, &ctx);
    if r0.iter().any(|c| !c.is_nil()) {
        return Err(Error::DegreeMismatch("g0 does not divide G mod q".into()));
    }
    let h0 = polyops::trim(h0);
    let base = QuotientRing::new(g0.to_vec(), ctx.clone());
    let s = base.inverse(&base.from_poly(&h0)).map_err(|_| {
        Error::NonUnitResultant("resultant of g0 and the cofactor mod q is not a unit".into())
    })?;

    let mut ps: Vec<Vec<C>> = vec![g0.to_vec()];
    let mut hs: Vec<Vec<C>> = vec![h0.clone()];
    for m in 1..t as usize {
        let mut r = grid[m].clone();
        for a in 1..m {
            r = polyops::sub(&r, &polyops::mul(&ps[a], &hs[m - a], &ctx), &ctx);
        }
        let pm = base.mul(&s, &base.from_poly(&r));
        let rest = polyops::sub(&r, &polyops::mul(&h0, &pm, &ctx), &ctx);
        let (hm, rem) = polyops::divrem_monic(&rest, g0, &ctx);
        debug_assert!(rem.iter().all(|c| c.is_nil()));
        ps.push(pm);
        hs.push(polyops::trim(hm));
    }

    let series_of = |terms: &Vec<Vec<C>>, j: usize| -> Series<C> {
        let coeffs = terms.iter().map(|row| row.get(j).cloned().unwrap_or_else(|| C::zero_in(&ctx))).collect();
        Series::new(&ctx, 0, t, coeffs)
    };
    let e = (1..=n).map(|k| series_of(&ps, n - k)).collect();
    let hdeg = hs.iter().map(|h| h.len()).max().unwrap_or(1);
    let cofactor = (0..hdeg).map(|j| series_of(&hs, j)).collect();
    Ok(HenselFactor { p: MonicSeriesPoly { e }, cofactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rat};

    fn poly(cs: &[&[i64]], t: i64) -> SeriesPoly<Rat> {
        cs.iter().map(|c| Series::from_ints(c, t)).collect()
    }

    #[test]
    fn catalan_block() {
        // z(1 - z) - q
        let g = poly(&[&[0, -1], &[1], &[-1]], 8);
        let f = hensel_factor(&g, 1, &[rat(0), rat(1)]).unwrap();
        let root = f.p.e[0].neg_series();
        assert_eq!(root.rats()[..5], [rat(1), rat(1), rat(2), rat(5), rat(14)]);
    }

    #[test]
    fn quadratic_block_without_y() {
        // z^2 - q (z - 1)^2 = -q + 2q z + (1 - q) z^2
        let g = poly(&[&[0, -1], &[0, 2], &[1, -1]], 8);
        let f = hensel_factor(&g, 2, &[rat(0), rat(0), rat(1)]).unwrap();
        let e1 = Series::from_ints(&[0, 2], 8).div_series(&Series::from_ints(&[1, -1], 8)).unwrap();
        let e2 = Series::from_ints(&[0, -1], 8).div_series(&Series::from_ints(&[1, -1], 8)).unwrap();
        assert_eq!(f.p.e[0], e1);
        assert_eq!(f.p.e[1], e2);
    }

    #[test]
    fn block_too_large() {
        let g = poly(&[&[0, -1], &[1], &[-1]], 8);
        assert!(matches!(hensel_factor(&g, 2, &[rat(0), rat(0), rat(1)]), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn vanishing_resultant() {
        // z^2 - q: cofactor mod q is 1 but g0 = z(z-0) with repeated root claim for n=1
        // fails as z does not split off with a unit resultant.
        let g = poly(&[&[0, -1], &[0], &[1]], 6);
        assert!(matches!(hensel_factor(&g, 1, &[rat(0), rat(1)]), Err(Error::NonUnitResultant(_))));
    }
}
