//! Exact q-series engine for virtual invariants of Quot schemes of zero-dimensional
//! quotients on surfaces.
//!
//! Layers, bottom up: [`algebra`] (rationals, jets, truncated series),
//! [`roots`] (Hensel factorization and symmetric functions of root blocks),
//! [`universal`] (universal series per genus), [`geometry`] (assembly and closed
//! forms), [`oracle`] (partition-sum oracles), [`rationality`] (rational
//! reconstruction) and [`cli`].

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod rationality;
pub mod roots;
pub mod universal;

pub use error::{Error, Result};
