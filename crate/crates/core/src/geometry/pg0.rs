//! `N = 1` invariants of simply connected surfaces with `p_g = 0`, reduced to
//! Riemann-Roch numbers on the Hilbert scheme of points.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{binom, rat, ratio, Jet, JetContext, Rat, Ring, Series};
use crate::error::{Error, Result};

use super::{chi_hrr, KClassNumbers, SurfaceNumbers};

/// Geometry of a class `beta` on a `p_g = 0` surface together with the twisting class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pg0Input {
    pub surface: SurfaceNumbers,
    pub alpha: KClassNumbers,
    pub beta2: i64,
    pub beta_k: i64,
    /// `beta . c1(alpha)`
    pub beta_c1: i64,
}

/// `chi(M^j (x) alpha~) = c0 + c1 j + c2 j^2` as a function of `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistChi {
    pub c0: Rat,
    pub c1: Rat,
    pub c2: Rat,
}

impl TwistChi {
    pub fn at(&self, j: i64) -> Rat {
        let j = rat(j);
        &self.c0 + &self.c1 * &j + &self.c2 * &j * &j
    }
}

impl Pg0Input {
    pub fn validate(&self) -> Result<()> {
        if self.surface.chi_o != 1 {
            return Err(Error::HypothesisViolation(format!(
                "p_g = 0 simply connected surfaces have chi(O) = 1, got {}",
                self.surface.chi_o
            )));
        }
        if (self.beta2 - self.beta_k) % 2 != 0 {
            return Err(Error::HypothesisViolation("beta^2 and beta.K must have equal parity".into()));
        }
        if self.nu() < 0 {
            return Err(Error::HypothesisViolation(format!("nu = chi(beta) - 1 = {} is negative", self.nu())));
        }
        Ok(())
    }

    /// `nu = chi(beta) - 1 = (beta^2 - beta.K)/2`.
    pub fn nu(&self) -> i64 {
        (self.beta2 - self.beta_k) / 2
    }

    /// `chi(M)` for `M = K - beta`; equals `nu + 1`.
    pub fn chi_m(&self) -> i64 {
        let m2 = self.surface.k2 - 2 * self.beta_k + self.beta2;
        let mk = self.surface.k2 - self.beta_k;
        self.surface.chi_o + (m2 - mk) / 2
    }

    pub fn chi_alpha(&self) -> Rat {
        chi_hrr(&self.surface, &self.alpha)
    }

    /// `chi(alpha (x) O(-beta))`.
    pub fn chi_alpha_tilde(&self) -> Rat {
        let r = self.alpha.rank;
        self.chi_alpha() + ratio(r * (self.beta2 + self.beta_k), 2) - rat(self.beta_c1)
    }

    /// `chi(K^{-1} (x) alpha)`.
    pub fn chi_kinv_alpha(&self) -> Rat {
        self.chi_alpha() + rat(self.alpha.rank * self.surface.k2) - rat(self.alpha.c1k)
    }

    /// `j -> chi(M^j (x) alpha~)`.
    pub fn twist(&self) -> TwistChi {
        let r = self.alpha.rank;
        let k2 = self.surface.k2;
        let (b2, bk) = (self.beta2, self.beta_k);
        let m2 = k2 - 2 * bk + b2;
        let mk = k2 - bk;
        // M . c1(alpha~) with c1(alpha~) = c1(alpha) - r beta
        let mc1 = self.alpha.c1k - r * bk - self.beta_c1 + r * b2;
        TwistChi { c0: self.chi_alpha_tilde(), c1: rat(mc1) - ratio(r * mk, 2), c2: ratio(r * m2, 2) }
    }
}

/// `chi(X^[m], wedge^k M^[m]) = C(m-k+chi(O)-1, m-k) C(chi(M), k)`.
pub fn binomial_chi(m: i64, k: i64, chi_o: i64, chi_m: i64) -> Rat {
    if k > m {
        return rat(0);
    }
    binom(m - k + chi_o - 1, m - k) * binom(chi_m, k)
}

/// `Z_1 = chi(alpha) sum_m q^m sum_k (-1)^k chi(wedge^k M^[m]) chi(P^nu, O(-k))`.
pub fn z1(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    input.validate()?;
    let nu = input.nu();
    let coeffs = (0..trunc)
        .map(|m| {
            (0..=m)
                .map(|k| {
                    sign(k) * binomial_chi(m, k, input.surface.chi_o, input.chi_m()) * binom(nu - k, nu)
                })
                .sum::<Rat>()
                * input.chi_alpha()
        })
        .collect::<Vec<_>>();
    Ok(Series::from_rats(&(), &coeffs, trunc))
}

/// `Z_2 = -chi(alpha~) sum_m q^m sum_k (-1)^k chi(wedge^k M^[m]) chi(P^nu, O(-k-1))`.
pub fn z2(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    input.validate()?;
    let nu = input.nu();
    let coeffs = (0..trunc)
        .map(|m| {
            -(0..=m)
                .map(|k| {
                    sign(k) * binomial_chi(m, k, input.surface.chi_o, input.chi_m()) * binom(nu - k - 1, nu)
                })
                .sum::<Rat>()
                * input.chi_alpha_tilde()
        })
        .collect::<Vec<_>>();
    Ok(Series::from_rats(&(), &coeffs, trunc))
}

fn sign(k: i64) -> Rat {
    if k % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// `W = q (1+qy)^{chi(M)} / (1-q)^{chi(O)} * chi(X, wedge_y M / wedge_{qy} M (x) alpha~)`
/// with `y = v + shift`, `v` the single jet variable of `jctx`.
pub fn prop_ppp_w(
    chi_o: i64,
    chi_m: i64,
    twist: &TwistChi,
    jctx: &Arc<JetContext>,
    shift: &Rat,
    trunc: i64,
) -> Result<Series<Jet>> {
    if jctx.nvars() != 1 {
        return Err(Error::InvalidInput("prop_ppp_w needs exactly one jet variable".into()));
    }
    let y = shifted_var(jctx, shift);
    let one = Series::one(jctx, trunc);
    let q = Series::gen(jctx, trunc);
    let first = (&one + &q.mul_coeff(&y)).pow(chi_m)?;
    let second = Series::lift_rat(&Series::from_ints(&[1, -1], trunc), jctx).pow(-chi_o)?;
    let chi_part = chi_factor(twist, jctx, shift, trunc);
    Ok((&(&first * &second) * &chi_part).shift(1).truncate(trunc))
}

fn shifted_var(jctx: &Arc<JetContext>, shift: &Rat) -> Jet {
    Jet::var(jctx, &jctx.names()[0]).plus(&Jet::constant(jctx, shift.clone()))
}

/// `chi(X, wedge_y M / wedge_{qy} M (x) alpha~) = sum_j (-q y)^j (chi_j + y chi_{j+1})`.
pub fn chi_factor(twist: &TwistChi, jctx: &Arc<JetContext>, shift: &Rat, trunc: i64) -> Series<Jet> {
    let y = shifted_var(jctx, shift);
    let mut coeffs = Vec::new();
    let mut ypow = Jet::one_in(jctx);
    let minus_y = y.negated();
    for j in 0..trunc {
        let inner = Jet::constant(jctx, twist.at(j)).plus(&y.scale(&twist.at(j + 1)));
        coeffs.push(ypow.times(&inner));
        ypow = ypow.times(&minus_y);
    }
    Series::new(jctx, 0, trunc, coeffs)
}

/// `Z_3 = (1/nu!) d^nu W / dy^nu at y = -1`, via jets in `s = y + 1`.
pub fn z3(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    input.validate()?;
    let nu = input.nu();
    let jctx = JetContext::new(&["s"], &[nu as u32]);
    let w = prop_ppp_w(input.surface.chi_o, input.chi_m(), &input.twist(), &jctx, &rat(-1), trunc)?;
    Ok(w.monomial_part(&[nu as u32]))
}

/// `Z_3` by the finite sum `sum_k (-1)^k [y^k] W * chi(P^nu, O(-k-1))` over plain
/// `y`-jets, without derivatives.
pub fn z3_by_sum(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    input.validate()?;
    let nu = input.nu();
    let cap = trunc.max(1) as u32;
    let jctx = JetContext::new(&["y"], &[cap]);
    let w = prop_ppp_w(input.surface.chi_o, input.chi_m(), &input.twist(), &jctx, &rat(0), trunc)?;
    let mut acc = Series::zero(&(), trunc);
    for k in 0..=cap as i64 {
        let c = sign(k) * binom(nu - k - 1, nu);
        acc = &acc + &w.monomial_part(&[k as u32]).scale(&c);
    }
    Ok(acc)
}

/// `(1/nu!) d^nu/dy^nu` of the `chi` factor at `y = -1`, in the expanded form
/// `(-1)^{nu-1} q^{nu-1} (1-q) sum_k (-q)^k C(-nu-1, k) chi(M^{nu+k} alpha~)`.
pub fn chi_factor_derivative(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    input.validate()?;
    let nu = input.nu();
    if nu < 1 {
        return Err(Error::HypothesisViolation("the expanded derivative needs nu >= 1".into()));
    }
    let tw = input.twist();
    let coeffs: Vec<Rat> =
        (0..trunc).map(|k| sign(k) * binom(-nu - 1, k) * tw.at(nu + k)).collect();
    let s = Series::from_rats(&(), &coeffs, trunc);
    let pref = Series::from_ints(&[1, -1], trunc).scale(&sign(nu - 1));
    Ok((&pref * &s).shift(nu - 1).truncate(trunc))
}

/// The shifted series `Z = Z_1 + Z_2 + Z_3`.
pub fn pg0_series(input: &Pg0Input, trunc: i64) -> Result<Series<Rat>> {
    let a = z1(input, trunc)?;
    let b = z2(input, trunc)?;
    let c = z3(input, trunc)?;
    Ok(&(&a + &b) + &c)
}
