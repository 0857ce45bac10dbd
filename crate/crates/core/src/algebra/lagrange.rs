//! Series reversion and the multivariable Lagrange–Bürmann identity.

use num_traits::Zero;

use super::jet::Jet;
use super::rat::Rat;
use super::ring::Coeff;
use super::series::Series;
use crate::error::{Error, Result};

/// Solve `x = q * phi(x)` for `x(q)` by Newton iteration.
///
/// `phi` is a power series in `x` with invertible constant term. The result is exact
/// below `q^{phi.trunc + 1}`.
pub fn reversion<C: Coeff>(phi: &Series<C>) -> Result<Series<C>> {
    if phi.valuation() != 0 || !phi.coeff(0).is_unit() {
        return Err(Error::BadConstantTerm("reversion needs phi(0) to be a unit".into()));
    }
    let ctx = phi.ring_ctx().clone();
    let t = phi.trunc() + 1;
    let dphi = phi.derivative();
    let one = Series::one(&ctx, t);
    let mut x = Series::monomial(phi.coeff(0), 1, t);
    for _ in 0..64 {
        let f = &x - &phi.compose(&x)?.shift(1);
        if f.is_zero_to_precision() {
            return Ok(x.truncate(t));
        }
        let fp = &one - &dphi.compose(&x)?.shift(1);
        x = (&x - &f.div_series(&fp)?).truncate(t);
    }
    unreachable!("Newton iteration doubles the precision each step")
}

/// `(psi / K)(x_1(q), ..., x_l(q))` where `x_j = q * phi_j(x_j)` and
/// `K = prod_j (1 - x_j phi_j'(x_j) / phi_j(x_j))`.
///
/// `psi` is a truncated polynomial in the jet variables `x_1..x_l` (one per `phi`).
pub fn lagrange_burmann_multi(phis: &[Series<Rat>], psi: &Jet) -> Result<Series<Rat>> {
    let jctx = psi.context();
    if jctx.nvars() != phis.len() {
        return Err(Error::InvalidInput(format!(
            "psi has {} variables but {} phi series were given",
            jctx.nvars(),
            phis.len()
        )));
    }
    let mut t = i64::MAX;
    for (j, phi) in phis.iter().enumerate() {
        t = t.min(phi.trunc()).min(jctx.caps()[j] as i64 + 1);
    }
    let mut roots = Vec::new();
    let mut k = Series::one(&(), t);
    for phi in phis {
        let x = reversion(phi)?.truncate(t);
        let xdlog = phi.derivative().shift(1).div_series(phi)?;
        let factor = &Series::one(&(), t) - &xdlog.compose(&x)?;
        k = &k * &factor;
        roots.push(x);
    }
    let mut powers: Vec<Vec<Series<Rat>>> = Vec::new();
    for (j, x) in roots.iter().enumerate() {
        let mut pw = vec![Series::one(&(), t)];
        for e in 1..=jctx.caps()[j] {
            let next = &pw[e as usize - 1] * x;
            pw.push(next);
        }
        powers.push(pw);
    }
    let mut acc = Series::zero(&(), t);
    for (exps, c) in psi.terms() {
        if c.is_zero() {
            continue;
        }
        let mut term = Series::from_rat(&(), &c, t);
        for (j, &e) in exps.iter().enumerate() {
            term = &term * &powers[j][e as usize];
        }
        acc = &acc + &term;
    }
    acc.div_series(&k)
}

/// `C::one` convenience used by callers building `phi` from rationals.
pub fn unit_phi<C: Coeff>(ctx: &C::Ctx, t: i64) -> Series<C> {
    Series::one(ctx, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn catalan_from_geometric_phi() {
        let phi = Series::from_ints(&[1, 1, 1, 1, 1], 5);
        let x = reversion(&phi).unwrap();
        assert_eq!(x.trunc(), 6);
        assert_eq!(x.rats(), vec![rat(1), rat(1), rat(2), rat(5), rat(14)]);
    }

    #[test]
    fn reversion_rejects_vanishing_phi0() {
        let phi = Series::from_ints(&[0, 1], 5);
        assert!(reversion(&phi).is_err());
    }
}
