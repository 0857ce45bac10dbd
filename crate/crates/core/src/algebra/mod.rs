//! Exact coefficient rings, truncated series and series calculus.

pub mod jet;
pub mod lagrange;
pub mod poly;
pub mod rat;
pub mod ring;
pub mod series;

pub use jet::{Jet, JetContext};
pub use lagrange::{lagrange_burmann_multi, reversion};
pub use poly::Poly;
pub use rat::{binom, factorial, fmt_rat, parse_rat, rat, ratio, Rat};
pub use ring::{Coeff, Ring};
pub use series::{Series, SeriesCtx};
