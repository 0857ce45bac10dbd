//! Root blocks of polynomials with series coefficients: Hensel factorization, simple
//! roots, and symmetric functions of the roots through quotient-ring traces and norms.

pub mod block;
pub mod hensel;
pub mod newton;
pub mod polyops;
pub mod quotient;

pub use block::{norm_eval, resultant_pair, trace_eval, Coupling, Frac, RootBlock, RootExpr};
pub use hensel::{hensel_factor, HenselFactor, MonicSeriesPoly, SeriesPoly};
pub use newton::{lemma_uv_coeffs, newton_root};
pub use quotient::QuotientRing;
