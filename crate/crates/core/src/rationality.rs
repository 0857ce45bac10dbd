//! Exact rational reconstruction of truncated series and pole certificates at `q = 1`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{fmt_rat, Poly, Rat, Series};
use crate::error::{Error, Result};

pub const DEFAULT_SURPLUS: usize = 5;

/// `q^shift num(q) / den(q)` with `den(0) = 1` and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: Poly,
    pub den: Poly,
    pub shift: i64,
}

/// A request to fit `series` with `deg num <= deg_num`, `deg den <= deg_den`.
#[derive(Clone, Debug)]
pub struct FitRequest {
    pub series: Series<Rat>,
    pub deg_num: usize,
    pub deg_den: usize,
    pub surplus: usize,
}

impl FitRequest {
    pub fn new(series: &Series<Rat>, deg_num: usize, deg_den: usize) -> Self {
        FitRequest { series: series.clone(), deg_num, deg_den, surplus: DEFAULT_SURPLUS }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitOutcome {
    Fit(RationalFn),
    /// No pair of degrees within `(deg_num, deg_den)` reproduces every coefficient.
    NoFit { deg_num: usize, deg_den: usize },
}

impl FitOutcome {
    pub fn fit(&self) -> Option<&RationalFn> {
        match self {
            FitOutcome::Fit(f) => Some(f),
            FitOutcome::NoFit { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FitOutcome::Fit(f) => f.to_json(),
            FitOutcome::NoFit { deg_num, deg_den } => json!({"noFit": true, "bounds": [deg_num, deg_den]}),
        }
    }
}

impl RationalFn {
    /// Multiplicity of `1 - q` in the denominator, and whether it accounts for every pole.
    pub fn pole_order_at_one(&self) -> (usize, bool) {
        let lin = Poly::from_ints(&[1, -1]);
        let mut d = self.den.clone();
        let mut k = 0;
        while d.degree().unwrap_or(0) > 0 && d.eval(&Rat::one()).is_zero() {
            d = d.div_rem(&lin).0;
            k += 1;
        }
        (k, d.degree().unwrap_or(0) == 0)
    }

    /// The first `n` coefficients starting at `q^shift`.
    pub fn expand(&self, n: usize) -> Vec<Rat> {
        self.num.expand_ratio(&self.den, n)
    }

    pub fn to_series(&self, trunc: i64) -> Series<Rat> {
        let n = (trunc - self.shift).max(0) as usize;
        Series::new(&(), self.shift, trunc, self.expand(n))
    }

    pub fn to_json(&self) -> Value {
        let (k, all) = self.pole_order_at_one();
        json!({
            "num": self.num.coeffs().iter().map(fmt_rat).collect::<Vec<_>>(),
            "den": self.den.coeffs().iter().map(fmt_rat).collect::<Vec<_>>(),
            "shift": self.shift,
            "poleAtOne": k,
            "allPolesAtOne": all,
        })
    }

    fn reduced(num: Poly, den: Poly, shift: i64) -> RationalFn {
        if num.is_zero() {
            return RationalFn { num, den: Poly::one(), shift };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let d0 = den.coeff(0).recip();
        // move powers of q out of the numerator
        let low = num.coeffs().iter().take_while(|c| c.is_zero()).count();
        let num = Poly::new(num.coeffs()[low..].to_vec());
        RationalFn { num: num.scale(&d0), den: den.scale(&d0), shift: shift + low as i64 }
    }
}

/// The lexicographically smallest `(deg den, deg num)` within bounds whose expansion
/// matches every coefficient of the series, including `surplus` unused ones.
pub fn fit_rational(req: &FitRequest) -> Result<FitOutcome> {
    let s = &req.series;
    // nonnegative valuations are fitted from q^0, Laurent series from their valuation
    let start = s.valuation().min(0);
    let c: Vec<Rat> = (start..s.trunc()).map(|n| s.coeff(n)).collect();
    let need = req.deg_num + req.deg_den + 1 + req.surplus;
    if c.len() < need {
        return Err(Error::InsufficientData { need, have: c.len() });
    }
    for dd in 0..=req.deg_den {
        for dn in 0..=req.deg_num {
            if let Some(f) = try_fit(&c, dn, dd) {
                return Ok(FitOutcome::Fit(RationalFn::reduced(f.0, f.1, start)));
            }
        }
    }
    Ok(FitOutcome::NoFit { deg_num: req.deg_num, deg_den: req.deg_den })
}

fn try_fit(c: &[Rat], dn: usize, dd: usize) -> Option<(Poly, Poly)> {
    let at = |k: i64| if k < 0 { Rat::zero() } else { c[k as usize].clone() };
    // sum_{i=1}^{dd} d_i c_{k-i} = -c_k for k = dn+1 ..= dn+dd
    let mut rows: Vec<Vec<Rat>> = (1..=dd)
        .map(|r| {
            let k = (dn + r) as i64;
            let mut row: Vec<Rat> = (1..=dd).map(|i| at(k - i as i64)).collect();
            row.push(-at(k));
            row
        })
        .collect();
    let sol = solve(&mut rows, dd)?;
    let mut den = vec![Rat::one()];
    den.extend(sol);
    let den = Poly::new(den);
    let num: Vec<Rat> =
        (0..=dn).map(|k| (0..=dd.min(k)).map(|i| den.coeff(i) * &c[k - i]).sum()).collect();
    let num = Poly::new(num);
    if num.expand_ratio(&den, c.len()) == c {
        Some((num, den))
    } else {
        None
    }
}

/// Gaussian elimination on an augmented matrix; free variables are set to zero.
fn solve(rows: &mut [Vec<Rat>], n: usize) -> Option<Vec<Rat>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][n].clone();
    }
    Some(x)
}
