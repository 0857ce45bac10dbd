//! Dense polynomial helpers over an arbitrary [`Ring`], ascending coefficients.

use crate::algebra::Ring;

pub fn trim<R: Ring>(mut p: Vec<R>) -> Vec<R> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_nil()) {
        p.pop();
    }
    p
}

pub fn add<R: Ring>(a: &[R], b: &[R], ctx: &R::Ctx) -> Vec<R> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.plus(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => R::zero_in(ctx),
        })
        .collect()
}

pub fn sub<R: Ring>(a: &[R], b: &[R], ctx: &R::Ctx) -> Vec<R> {
    let nb: Vec<R> = b.iter().map(|c| c.negated()).collect();
    add(a, &nb, ctx)
}

pub fn mul<R: Ring>(a: &[R], b: &[R], ctx: &R::Ctx) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out: Vec<R> = (0..a.len() + b.len() - 1).map(|_| R::zero_in(ctx)).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_nil() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_nil() {
                continue;
            }
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

/// Division by a monic polynomial: `(quotient, remainder)` with `deg rem < deg d`.
pub fn divrem_monic<R: Ring>(a: &[R], d: &[R], ctx: &R::Ctx) -> (Vec<R>, Vec<R>) {
    let n = d.len() - 1;
    let mut rem: Vec<R> = a.to_vec();
    if rem.len() <= n {
        while rem.len() < n {
            rem.push(R::zero_in(ctx));
        }
        return (vec![R::zero_in(ctx)], rem);
    }
    let mut quo: Vec<R> = (0..rem.len() - n).map(|_| R::zero_in(ctx)).collect();
    for k in (0..quo.len()).rev() {
        let c = rem[k + n].clone();
        if !c.is_nil() {
            for (j, dc) in d.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(dc));
            }
        }
        quo[k] = c;
    }
    rem.truncate(n);
    (quo, rem)
}

pub fn derivative<R: Ring>(a: &[R]) -> Vec<R> {
    a.iter().enumerate().skip(1).map(|(i, c)| c.scale(&crate::algebra::rat(i as i64))).collect()
}

/// Horner evaluation at an element of the same ring.
pub fn eval<R: Ring>(a: &[R], x: &R, ctx: &R::Ctx) -> R {
    a.iter().rev().fold(R::zero_in(ctx), |acc, c| acc.times(x).plus(c))
}
