//! The coefficient-ring abstraction shared by series, quotient rings and Hensel lifting.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// A commutative Q-algebra with a context describing how to build constants.
pub trait Ring: Clone + Debug {
    type Ctx: Clone + Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rat(ctx: &Self::Ctx, r: &Rat) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, r: &Rat) -> Self;
    fn is_unit(&self) -> bool;
    fn inverse(&self) -> Result<Self>;

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one_in(&self.ctx());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Coefficient rings usable inside a [`crate::algebra::Series`]: a local ring whose
/// residue field is Q, so every element has a rational constant term.
pub trait Coeff: Ring + PartialEq {
    fn constant_term(&self) -> Rat;
}

impl Ring for Rat {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        Rat::zero()
    }
    fn one_in(_: &()) -> Self {
        Rat::one()
    }
    fn from_rat(_: &(), r: &Rat) -> Self {
        r.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByNonUnit("rational zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}

impl Coeff for Rat {
    fn constant_term(&self) -> Rat {
        self.clone()
    }
}
