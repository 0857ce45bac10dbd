//! Truncated multivariate polynomials with a per-variable cap.
//!
//! A jet keeps every monomial whose exponent in variable `i` is at most `caps[i]`;
//! products drop monomials that exceed a cap in any variable. There is no
//! total-degree cap.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{factorial, fmt_rat, parse_rat, Rat};
use super::ring::{Coeff, Ring};
use crate::error::{Error, Result};

/// Names and inclusive caps of the jet variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetContext {
    names: Vec<String>,
    caps: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl JetContext {
    pub fn new(names: &[&str], caps: &[u32]) -> Arc<Self> {
        Self::from_parts(names.iter().map(|s| s.to_string()).collect(), caps.to_vec())
    }

    pub fn from_parts(names: Vec<String>, caps: Vec<u32>) -> Arc<Self> {
        assert_eq!(names.len(), caps.len(), "one cap per jet variable");
        let mut strides = Vec::with_capacity(caps.len());
        let mut size = 1usize;
        for &c in &caps {
            strides.push(size);
            size *= c as usize + 1;
        }
        Arc::new(JetContext { names, caps, strides, size })
    }

    /// The context with no variables; its jets are just rationals.
    pub fn empty() -> Arc<Self> {
        Self::from_parts(vec![], vec![])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn encode(&self, exps: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e > self.caps[i] {
                return None;
            }
            idx += e as usize * self.strides[i];
        }
        Some(idx)
    }

    fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.caps.len()];
        for (o, &cap) in out.iter_mut().zip(&self.caps) {
            let base = cap as usize + 1;
            *o = (idx % base) as u32;
            idx /= base;
        }
        out
    }
}

/// Element of the jet ring Q[y_1..y_l] / (y_i^{cap_i + 1}).
#[derive(Clone)]
pub struct Jet {
    ctx: Arc<JetContext>,
    dense: Vec<Rat>,
}

impl PartialEq for Jet {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.dense == o.dense
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.ctx.names[i].clone()
                        } else {
                            format!("{}^{}", self.ctx.names[i], k)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    fmt_rat(c)
                } else {
                    format!("{}*{}", fmt_rat(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    value: String,
}

impl Jet {
    pub fn zero_in(ctx: &Arc<JetContext>) -> Self {
        Jet { ctx: ctx.clone(), dense: vec![Rat::zero(); ctx.size] }
    }

    pub fn constant(ctx: &Arc<JetContext>, c: Rat) -> Self {
        let mut j = Self::zero_in(ctx);
        j.dense[0] = c;
        j
    }

    /// The jet variable `name` itself, or zero when its cap is 0.
    pub fn var(ctx: &Arc<JetContext>, name: &str) -> Self {
        let i = ctx.index_of(name).unwrap_or_else(|| panic!("unknown jet variable `{name}`"));
        let mut e = vec![0; ctx.nvars()];
        e[i] = 1;
        Self::monomial(ctx, &e, Rat::one())
    }

    pub fn monomial(ctx: &Arc<JetContext>, exps: &[u32], c: Rat) -> Self {
        let mut j = Self::zero_in(ctx);
        if let Some(idx) = ctx.encode(exps) {
            j.dense[idx] = c;
        }
        j
    }

    pub fn from_terms(ctx: &Arc<JetContext>, terms: &[(Vec<u32>, Rat)]) -> Self {
        let mut j = Self::zero_in(ctx);
        for (e, c) in terms {
            if let Some(idx) = ctx.encode(e) {
                j.dense[idx] += c;
            }
        }
        j
    }

    pub fn context(&self) -> &Arc<JetContext> {
        &self.ctx
    }

    /// Non-zero terms in increasing mixed-radix order of exponents.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rat)> {
        self.dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.ctx.decode(i), c.clone()))
            .collect()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.ctx.encode(exps).map(|i| self.dense[i].clone()).unwrap_or_else(Rat::zero)
    }

    /// `(1/k!) d^k/dy^k` at zero for one variable, keeping the remaining variables.
    pub fn coefficient_in(&self, var: &str, k: u32) -> Result<Jet> {
        let i = self
            .ctx
            .index_of(var)
            .ok_or_else(|| Error::InvalidInput(format!("unknown jet variable `{var}`")))?;
        if self.ctx.caps[i] < k {
            return Err(Error::InsufficientJetCap { var: var.into(), need: k, cap: self.ctx.caps[i] });
        }
        let mut out = Jet::zero_in(&self.ctx);
        for (idx, c) in self.dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = self.ctx.decode(idx);
            if e[i] == k {
                e[i] = 0;
                out.dense[self.ctx.encode(&e).unwrap()] = c.clone();
            }
        }
        Ok(out)
    }

    /// The k-th partial derivative at zero: `k! * [y^k]`.
    pub fn derivative_at_zero(&self, var: &str, k: u32) -> Result<Jet> {
        Ok(self.coefficient_in(var, k)?.scale(&factorial(k)))
    }

    /// Multiply by `y_i`, dropping terms that leave the cap.
    pub fn mul_var(&self, i: usize) -> Jet {
        let mut out = Jet::zero_in(&self.ctx);
        for (idx, c) in self.dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = self.ctx.decode(idx);
            e[i] += 1;
            if let Some(j) = self.ctx.encode(&e) {
                out.dense[j] = c.clone();
            }
        }
        out
    }

    /// Exact division by `y_i`; `None` when some term has no factor `y_i`.
    /// The top order in `y_i` of the quotient is unknown and is dropped to zero,
    /// so callers must treat the result as valid only below `caps[i]`.
    pub fn div_var(&self, i: usize) -> Option<Jet> {
        let mut out = Jet::zero_in(&self.ctx);
        for (idx, c) in self.dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = self.ctx.decode(idx);
            if e[i] == 0 {
                return None;
            }
            e[i] -= 1;
            out.dense[self.ctx.encode(&e).unwrap()] = c.clone();
        }
        Some(out)
    }

    /// Substitute rational values for every variable. Only meaningful when the caps
    /// dominate every exponent the underlying quantity can carry.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ctx.nvars());
        let mut acc = Rat::zero();
        for (idx, c) in self.dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.ctx.decode(idx);
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms()
            .into_iter()
            .map(|(exponents, c)| TermJson { exponents, value: fmt_rat(&c) })
            .collect();
        serde_json::to_value(terms).expect("jet terms serialize")
    }

    pub fn from_json(ctx: &Arc<JetContext>, v: &serde_json::Value) -> Result<Jet> {
        let terms: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Vec::new();
        for t in terms {
            if t.exponents.len() != ctx.nvars() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            out.push((t.exponents, parse_rat(&t.value)?));
        }
        Ok(Jet::from_terms(ctx, &out))
    }

    fn check_ctx(&self, o: &Jet) {
        assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx, "jets from different contexts");
    }
}

impl Ring for Jet {
    type Ctx = Arc<JetContext>;

    fn ctx(&self) -> Arc<JetContext> {
        self.ctx.clone()
    }
    fn zero_in(ctx: &Arc<JetContext>) -> Self {
        Jet::zero_in(ctx)
    }
    fn one_in(ctx: &Arc<JetContext>) -> Self {
        Jet::constant(ctx, Rat::one())
    }
    fn from_rat(ctx: &Arc<JetContext>, r: &Rat) -> Self {
        Jet::constant(ctx, r.clone())
    }
    fn is_nil(&self) -> bool {
        self.dense.iter().all(|c| c.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        self.check_ctx(o);
        Jet { ctx: self.ctx.clone(), dense: self.dense.iter().zip(&o.dense).map(|(a, b)| a + b).collect() }
    }
    fn minus(&self, o: &Self) -> Self {
        self.check_ctx(o);
        Jet { ctx: self.ctx.clone(), dense: self.dense.iter().zip(&o.dense).map(|(a, b)| a - b).collect() }
    }
    fn times(&self, o: &Self) -> Self {
        self.check_ctx(o);
        let ctx = &self.ctx;
        if ctx.size == 1 {
            return Jet { ctx: ctx.clone(), dense: vec![&self.dense[0] * &o.dense[0]] };
        }
        let mut out = vec![Rat::zero(); ctx.size];
        let lhs: Vec<(Vec<u32>, &Rat)> = self
            .dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ctx.decode(i), c))
            .collect();
        let rhs: Vec<(Vec<u32>, &Rat)> = o
            .dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (ctx.decode(i), c))
            .collect();
        let mut e = vec![0u32; ctx.nvars()];
        for (ea, ca) in &lhs {
            'inner: for (eb, cb) in &rhs {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                    if e[k] > ctx.caps[k] {
                        continue 'inner;
                    }
                }
                let idx = ctx.encode(&e).unwrap();
                out[idx] += *ca * *cb;
            }
        }
        Jet { ctx: ctx.clone(), dense: out }
    }
    fn negated(&self) -> Self {
        Jet { ctx: self.ctx.clone(), dense: self.dense.iter().map(|c| -c).collect() }
    }
    fn scale(&self, r: &Rat) -> Self {
        Jet { ctx: self.ctx.clone(), dense: self.dense.iter().map(|c| c * r).collect() }
    }
    fn is_unit(&self) -> bool {
        !self.dense[0].is_zero()
    }
    /// Geometric series in the nilpotent part; terminates because every
    /// variable is capped.
    fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::DivisionByNonUnit(format!("jet {} has zero constant term", self)));
        }
        let c0 = self.dense[0].recip();
        let mut nil = self.scale(&c0);
        nil.dense[0] = Rat::zero();
        let nil = nil.negated();
        let depth: u32 = self.ctx.caps.iter().sum();
        let mut acc = Jet::one_in(&self.ctx);
        let mut pw = Jet::one_in(&self.ctx);
        for _ in 0..depth {
            pw = pw.times(&nil);
            if pw.is_nil() {
                break;
            }
            acc = acc.plus(&pw);
        }
        Ok(acc.scale(&c0))
    }
}

impl Coeff for Jet {
    fn constant_term(&self) -> Rat {
        self.dense[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn per_variable_cap_not_total_degree() {
        let ctx = JetContext::new(&["a", "b"], &[1, 1]);
        let a = Jet::var(&ctx, "a");
        let b = Jet::var(&ctx, "b");
        let ab = a.times(&b);
        assert_eq!(ab.coeff(&[1, 1]), rat(1));
        assert!(a.times(&a).is_nil());
    }

    #[test]
    fn inverse_of_unit() {
        let ctx = JetContext::new(&["y"], &[3]);
        let x = Jet::one_in(&ctx).plus(&Jet::var(&ctx, "y"));
        let inv = x.inverse().unwrap();
        assert_eq!(inv.coeff(&[3]), rat(-1));
        assert_eq!(x.times(&inv), Jet::one_in(&ctx));
        assert!(Jet::var(&ctx, "y").inverse().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let ctx = JetContext::new(&["y", "w"], &[2, 1]);
        let j = Jet::from_terms(&ctx, &[(vec![0, 0], rat(2)), (vec![2, 1], Rat::new(3.into(), 4.into()))]);
        let back = Jet::from_json(&ctx, &j.to_json()).unwrap();
        assert_eq!(j, back);
    }
}
