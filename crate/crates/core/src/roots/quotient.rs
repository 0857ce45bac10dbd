//! Arithmetic in `R[z] / p(z)` for a monic `p`, and the symmetric functions of the
//! roots of `p` obtained from traces and norms of multiplication maps.

use crate::algebra::{rat, Rat, Ring};
use crate::error::{Error, Result};

use super::polyops;

/// The ring `R[z]/p(z)`; elements are coordinate vectors in the basis `1, z, .., z^{n-1}`.
#[derive(Clone, Debug)]
pub struct QuotientRing<R: Ring> {
    modulus: Vec<R>,
    ctx: R::Ctx,
    power_sums: Vec<R>,
}

impl<R: Ring> QuotientRing<R> {
    /// `modulus` is ascending and monic, of degree at least one.
    pub fn new(modulus: Vec<R>, ctx: R::Ctx) -> Self {
        assert!(modulus.len() >= 2, "modulus must have positive degree");
        let mut q = QuotientRing { modulus, ctx, power_sums: vec![] };
        q.power_sums = q.compute_power_sums(2 * q.degree());
        q
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn modulus(&self) -> &[R] {
        &self.modulus
    }

    /// `e_k` in `p = z^n + e_1 z^{n-1} + ... + e_n`.
    pub fn e(&self, k: usize) -> &R {
        &self.modulus[self.degree() - k]
    }

    fn compute_power_sums(&self, kmax: usize) -> Vec<R> {
        let n = self.degree();
        let mut p: Vec<R> = vec![R::from_rat(&self.ctx, &rat(n as i64))];
        for k in 1..=kmax {
            let mut acc = R::zero_in(&self.ctx);
            for j in 1..=k.min(n) {
                if j < k {
                    acc = acc.plus(&self.e(j).times(&p[k - j]));
                } else {
                    acc = acc.plus(&self.e(j).scale(&rat(k as i64)));
                }
            }
            p.push(acc.negated());
        }
        p
    }

    /// Power sums `sum_i z_i^k` for `k = 0..=kmax`.
    pub fn power_sums(&self, kmax: usize) -> Vec<R> {
        if kmax < self.power_sums.len() {
            self.power_sums[..=kmax].to_vec()
        } else {
            self.compute_power_sums(kmax)
        }
    }

    pub fn zero(&self) -> Vec<R> {
        (0..self.degree()).map(|_| R::zero_in(&self.ctx)).collect()
    }

    pub fn one(&self) -> Vec<R> {
        self.constant(R::one_in(&self.ctx))
    }

    pub fn constant(&self, c: R) -> Vec<R> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// The class of `z`.
    pub fn z(&self) -> Vec<R> {
        self.from_poly(&[R::zero_in(&self.ctx), R::one_in(&self.ctx)])
    }

    pub fn from_poly(&self, poly: &[R]) -> Vec<R> {
        polyops::divrem_monic(poly, &self.modulus, &self.ctx).1
    }

    pub fn add(&self, a: &[R], b: &[R]) -> Vec<R> {
        a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
    }

    pub fn sub(&self, a: &[R], b: &[R]) -> Vec<R> {
        a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
    }

    pub fn scale(&self, a: &[R], c: &R) -> Vec<R> {
        a.iter().map(|x| x.times(c)).collect()
    }

    pub fn mul(&self, a: &[R], b: &[R]) -> Vec<R> {
        self.from_poly(&polyops::mul(a, b, &self.ctx))
    }

    pub fn pow(&self, a: &[R], e: u32) -> Vec<R> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `sum_i a(z_i)`.
    pub fn trace(&self, a: &[R]) -> R {
        let ps = &self.power_sums;
        a.iter().enumerate().fold(R::zero_in(&self.ctx), |acc, (j, c)| acc.plus(&c.times(&ps[j])))
    }

    /// Characteristic polynomial `X^n + c_1 X^{n-1} + .. + c_n` of multiplication by
    /// `a` (returned as `[c_1..c_n]`) together with the powers `a^0..a^{n-1}`.
    fn charpoly(&self, a: &[R]) -> (Vec<R>, Vec<Vec<R>>) {
        let n = self.degree();
        let mut powers = vec![self.one()];
        let mut traces = vec![];
        let mut cur = self.one();
        for _ in 0..n {
            cur = self.mul(&cur, a);
            traces.push(self.trace(&cur));
            if powers.len() < n {
                powers.push(cur.clone());
            }
        }
        let mut c: Vec<R> = vec![];
        for k in 1..=n {
            let mut acc = traces[k - 1].clone();
            for j in 1..k {
                acc = acc.plus(&c[j - 1].times(&traces[k - j - 1]));
            }
            c.push(acc.scale(&Rat::new((-1).into(), (k as i64).into())));
        }
        (c, powers)
    }

    /// `prod_i a(z_i)`.
    pub fn norm(&self, a: &[R]) -> R {
        let n = self.degree();
        let (c, _) = self.charpoly(a);
        let cn = c[n - 1].clone();
        if n.is_multiple_of(2) {
            cn
        } else {
            cn.negated()
        }
    }

    /// Adjugate and norm: `a * adj(a) = norm(a)`.
    pub fn adjugate(&self, a: &[R]) -> (Vec<R>, R) {
        let n = self.degree();
        let (c, powers) = self.charpoly(a);
        let mut adj = powers[n - 1].clone();
        for k in 1..n {
            adj = self.add(&adj, &self.scale(&powers[n - 1 - k], &c[k - 1]));
        }
        let norm = if n.is_multiple_of(2) { c[n - 1].clone() } else { c[n - 1].negated() };
        if n.is_multiple_of(2) {
            adj = adj.iter().map(|x| x.negated()).collect();
        }
        (adj, norm)
    }

    /// Inverse element; the norm must be a unit of `R`.
    pub fn inverse(&self, a: &[R]) -> Result<Vec<R>> {
        let (adj, norm) = self.adjugate(a);
        let inv = norm
            .inverse()
            .map_err(|_| Error::NonInvertibleDenominator(format!("norm {:?} is not a unit", norm)))?;
        Ok(self.scale(&adj, &inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> QuotientRing<Rat> {
        QuotientRing::new(vec![rat(2), rat(-3), rat(1)], ())
    }

    #[test]
    fn trace_norm_of_small_quadratic() {
        let q = ring();
        assert_eq!(q.trace(&q.z()), rat(3));
        assert_eq!(q.norm(&q.z()), rat(2));
        let inv = q.inverse(&q.z()).unwrap();
        assert_eq!(q.trace(&inv), Rat::new(3.into(), 2.into()));
        assert_eq!(q.mul(&inv, &q.z()), q.one());
    }

    #[test]
    fn cubic_adjugate() {
        let q = QuotientRing::new(vec![rat(-6), rat(11), rat(-6), rat(1)], ());
        let a = q.from_poly(&[rat(1), rat(1)]);
        let (adj, n) = q.adjugate(&a);
        assert_eq!(n, rat(24));
        assert_eq!(q.mul(&a, &adj), q.constant(rat(24)));
    }
}
