//! Assembly of invariant series from universal series and intersection numbers, plus
//! the explicit closed forms used as reference evaluators.

pub mod closed;
pub mod cobordism;
pub mod pg0;
pub mod rank1;
pub mod sv;

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{ratio, Jet, JetContext, Rat, Series};
use crate::error::{Error, Result};
use crate::universal::{universal_bundle, wedge_coefficient, ExponentPattern, GenusSpec, UniversalBundle};

pub use closed::ClosedForm;

/// Intersection numbers of the surface itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceNumbers {
    pub k2: i64,
    pub chi_o: i64,
}

/// Numerical data of a K-theory class `alpha`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassNumbers {
    pub rank: i64,
    pub c1k: i64,
    pub c1sq: i64,
    pub c2: i64,
}

impl KClassNumbers {
    pub fn with_rank_c1k(rank: i64, c1k: i64) -> Self {
        KClassNumbers { rank, c1k, c1sq: 0, c2: 0 }
    }
}

/// Holomorphic Euler characteristic by Riemann-Roch on a surface.
pub fn chi_hrr(surface: &SurfaceNumbers, cls: &KClassNumbers) -> Rat {
    Rat::from_integer(cls.rank.into()) * Rat::from_integer(surface.chi_o.into())
        + ratio(cls.c1sq - cls.c1k, 2)
        - Rat::from_integer(cls.c2.into())
}

/// One summand `beta_i` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub sw: i64,
    /// `beta_i . K`
    pub bk: i64,
    /// `beta_i . c1(alpha_s)` for each class.
    pub bc1: Vec<i64>,
    /// `beta_i = 0`. Nonzero parts with vanishing pairings still count as active.
    #[serde(default)]
    pub zero_class: bool,
}

/// A decomposition `beta = beta_1 + .. + beta_N` with its pairing matrix.
///
/// A single-active decomposition stands for all `N` placements of the active part
/// (they are summed by the trace); weights for permutations of distinct inert parts
/// belong in `sw`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    /// `beta_i . beta_j`; the diagonal must equal `beta_i . K`.
    pub pairing: Vec<Vec<i64>>,
}

impl Decomposition {
    /// `beta = 0`.
    pub fn zero(n: usize, classes: usize) -> Self {
        let parts = (0..n).map(|_| Part { sw: 1, bk: 0, bc1: vec![0; classes], zero_class: true }).collect();
        Decomposition { parts, pairing: vec![vec![0; n]; n] }
    }

    /// One part carrying all of `beta`, the rest zero.
    pub fn single(n: usize, sw: i64, bk: i64, bc1: Vec<i64>) -> Self {
        let mut d = Decomposition::zero(n, bc1.len());
        d.parts[0] = Part { sw, bk, bc1, zero_class: false };
        d.pairing[0][0] = bk;
        d
    }

    /// `N` equal parts with `beta_i . beta_j = b` for `i != j`.
    pub fn uniform(n: usize, sw: i64, bk: i64, bc1: Vec<i64>, b: i64) -> Self {
        let parts = (0..n).map(|_| Part { sw, bk, bc1: bc1.clone(), zero_class: false }).collect();
        let pairing = (0..n).map(|i| (0..n).map(|j| if i == j { bk } else { b }).collect()).collect();
        Decomposition { parts, pairing }
    }

    pub fn beta_k(&self) -> i64 {
        self.parts.iter().map(|p| p.bk).sum()
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|p| p.sw).product()
    }

    /// Reduce to an exponent pattern the engine can evaluate symmetrically.
    pub fn classify(&self, n: usize) -> Result<ExponentPattern> {
        if self.parts.len() != n {
            return Err(Error::InvalidInput(format!("decomposition has {} parts, N = {n}", self.parts.len())));
        }
        if self.pairing.len() != n || self.pairing.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("pairing matrix must be N x N".into()));
        }
        for i in 0..n {
            if self.pairing[i][i] != self.parts[i].bk {
                return Err(Error::HypothesisViolation(format!(
                    "part {i}: beta_i^2 = {} but beta_i.K = {}; only beta_i^2 = beta_i.K is supported",
                    self.pairing[i][i], self.parts[i].bk
                )));
            }
            for j in 0..n {
                if self.pairing[i][j] != self.pairing[j][i] {
                    return Err(Error::InvalidInput("pairing matrix must be symmetric".into()));
                }
            }
        }
        for (i, p) in self.parts.iter().enumerate() {
            let numbers = p.bk != 0 || p.bc1.iter().any(|&d| d != 0) || (0..n).any(|j| j != i && self.pairing[i][j] != 0);
            if p.zero_class && numbers {
                return Err(Error::InvalidInput(format!("part {i} is the zero class but has nonzero pairings")));
            }
        }
        let active = |i: usize| !self.parts[i].zero_class;
        let act: Vec<usize> = (0..n).filter(|&i| active(i)).collect();
        let p0 = &self.parts[0];
        match act.len() {
            0 => Ok(ExponentPattern::AllZero),
            1 => {
                let i = act[0];
                if (0..n).any(|j| j != i && self.pairing[i][j] != 0) {
                    return Err(Error::UnsupportedPattern("active part pairs with an inert part".into()));
                }
                Ok(ExponentPattern::SingleActive { a: self.parts[i].bk, d: self.parts[i].bc1.clone() })
            }
            _ => {
                let same = self.parts.iter().all(|p| p.bk == p0.bk && p.bc1 == p0.bc1);
                let b = if n > 1 { self.pairing[0][1] } else { 0 };
                let off_equal = (0..n).all(|i| (0..n).all(|j| i == j || self.pairing[i][j] == b));
                if same && off_equal {
                    Ok(ExponentPattern::AllEqual { a: p0.bk, d: p0.bc1.clone(), b })
                } else {
                    Err(Error::UnsupportedPattern(
                        "only all-zero, single-active and all-equal decompositions are supported".into(),
                    ))
                }
            }
        }
    }
}

/// `q^{-beta.K} sum_decomp prod SW * A^{K^2} prod B_s^{c1K_s} * (root part)` on a
/// precomputed bundle. The result keeps the jet variables of the bundle.
pub fn assemble_with_bundle(
    bundle: &UniversalBundle,
    surface: &SurfaceNumbers,
    classes: &[KClassNumbers],
    decomps: &[Decomposition],
) -> Result<Series<Jet>> {
    if classes.len() != bundle.b.len() {
        return Err(Error::InvalidInput(format!(
            "{} classes given, genus has {}",
            classes.len(),
            bundle.b.len()
        )));
    }
    if decomps.is_empty() {
        return Err(Error::InvalidInput("at least one decomposition is required".into()));
    }
    let bk = decomps[0].beta_k();
    if decomps.iter().any(|d| d.beta_k() != bk) {
        return Err(Error::InvalidInput("decompositions of one class must share beta.K".into()));
    }
    let mut base = bundle.a.pow(surface.k2)?;
    for (b, cls) in bundle.b.iter().zip(classes) {
        base = &base * &b.pow(cls.c1k)?;
    }
    let mut sum: Option<Series<Jet>> = None;
    for d in decomps {
        let pattern = d.classify(bundle.n)?;
        let term = bundle.symmetric(&pattern)?.scale(&Rat::from_integer(d.weight().into()));
        sum = Some(match sum {
            None => term,
            Some(s) => &s + &term,
        });
    }
    let z = &base * &sum.expect("non-empty");
    Ok(z.shift(-bk))
}

/// Full invariant series `Z` with jets, at working precision high enough that the
/// result is exact below `trunc`.
pub fn assemble_invariant(
    spec: &GenusSpec,
    n: usize,
    jctx: &Arc<JetContext>,
    surface: &SurfaceNumbers,
    classes: &[KClassNumbers],
    decomps: &[Decomposition],
    trunc: i64,
) -> Result<Series<Jet>> {
    with_precision(trunc, |work| {
        let bundle = universal_bundle(spec, n, jctx, work)?;
        assemble_with_bundle(&bundle, surface, classes, decomps)
    })
}

/// Coefficient of `prod_s y_s^{k_s}` in the K-theoretic series: the generating series
/// of `chi^vir(Quot, wedge^{k_1} alpha_1^{[n]} ... )`.
#[allow(clippy::too_many_arguments)]
pub fn ktheory_series(
    ranks: &[i64],
    ks: &[u32],
    n: usize,
    surface: &SurfaceNumbers,
    c1k: &[i64],
    decomps: &[Decomposition],
    trunc: i64,
) -> Result<Series<Rat>> {
    if c1k.len() != ranks.len() || ks.len() != ranks.len() {
        return Err(Error::InvalidInput("ranks, orders and c1.K lists must have equal length".into()));
    }
    let jctx = GenusSpec::ktheory_context(ks);
    let classes: Vec<KClassNumbers> =
        ranks.iter().zip(c1k).map(|(&r, &c)| KClassNumbers::with_rank_c1k(r, c)).collect();
    let spec = GenusSpec::KTheory { ranks: ranks.to_vec() };
    let z = assemble_invariant(&spec, n, &jctx, surface, &classes, decomps, trunc)?;
    wedge_coefficient(&z, ks)
}

/// Run `f` at increasing working precision until its output is exact below `trunc`.
pub fn with_precision<C, F>(trunc: i64, mut f: F) -> Result<Series<C>>
where
    C: crate::algebra::Coeff,
    F: FnMut(i64) -> Result<Series<C>>,
{
    let mut extra = 4;
    for _ in 0..6 {
        let work = trunc + extra;
        let s = f(work)?;
        if s.trunc() >= trunc {
            return Ok(s.truncate(trunc));
        }
        extra = 2 * extra + (trunc - s.trunc()).max(2);
    }
    Err(Error::TruncationUnderflow(format!("could not reach precision {trunc}")))
}

/// `true` when every coefficient of `s` (in its exact window) is zero.
pub fn is_zero_series(s: &Series<Rat>) -> bool {
    s.rats().iter().all(|c| c.is_zero())
}
