//! Deficit evaluation for the coefficient inequalities: the classical
//! weighted bound, its contractive refinement, the Wiessler-weight variant,
//! the two-coefficient bound with weighted tail, the truncation bound, and
//! the first-coefficient removal bound.
//!
//! Every checker reports `deficit = rhs - lhs`, so a nonnegative deficit
//! means the inequality holds on that input. A propagated quadrature error
//! accompanies each report; an apparent violation smaller than that error is
//! inconclusive, never a counterexample.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::series::{hp_norm, truncate_head, AnalyticPoly, NormResult, DEFAULT_REL_TOL};
use crate::weights::{WeightFamily, WeightSequence};

/// Denominators below this are reported as undefined ratios: the value is
/// under the quadrature noise floor.
pub const UNDEFINED_RATIO_THRESHOLD: f64 = 1e-14;

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityId {
    HardyClassical,
    Conjecture,
    Wiessler,
    Theorem2,
    Theorem3,
    Lemma21,
}

/// One inequality instance: sides, deficit, and enough provenance to
/// reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub inequality_id: InequalityId,
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`, exactly as computed.
    pub deficit: f64,
    /// `lhs / rhs`; `None` when `rhs` is under the noise floor.
    pub ratio: Option<f64>,
    /// Quadrature uncertainty propagated to the scale of `rhs`.
    pub norm_est_error: f64,
    /// Digest of the input polynomial and parameters.
    pub input_digest: String,
}

/// Three-way outcome of an inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Inconclusive,
    CounterexampleCandidate,
}

impl InequalityReport {
    /// Error bar used to separate genuine violations from quadrature noise.
    pub fn combined_error(&self) -> f64 {
        self.norm_est_error + 1e-12 * (self.lhs.abs() + self.rhs.abs() + 1.0)
    }

    /// Classifies the deficit: negative beyond the combined error is a
    /// counterexample candidate, negative within it is inconclusive.
    pub fn verdict(&self) -> Verdict {
        if self.deficit >= 0.0 {
            Verdict::Holds
        } else if -self.deficit <= self.combined_error() {
            Verdict::Inconclusive
        } else {
            Verdict::CounterexampleCandidate
        }
    }
}

fn digest(id: InequalityId, p: f64, extra: f64, f: &AnalyticPoly) -> String {
    let mut h = Sha256::new();
    h.update(format!("{id:?}").as_bytes());
    h.update(p.to_le_bytes());
    h.update(extra.to_le_bytes());
    for c in f.coeffs() {
        h.update(c.re.to_le_bytes());
        h.update(c.im.to_le_bytes());
    }
    let out = h.finalize();
    out.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn ratio_of(num: f64, den: f64) -> Option<f64> {
    if den < UNDEFINED_RATIO_THRESHOLD {
        None
    } else {
        Some(num / den)
    }
}

/// `sum_{n >= n_from} |a_n|^2 / w(n)` over the finite support of `f`.
pub fn weighted_coeff_sum(f: &AnalyticPoly, w: &mut WeightSequence, n_from: usize) -> f64 {
    let Some(deg) = f.degree() else { return 0.0 };
    if n_from > deg {
        return 0.0;
    }
    (n_from..=deg).map(|n| f.coeff(n).norm_sqr() / w.value(n)).sum()
}

/// Uncertainty of `c * norm^2` given the norm result.
fn rhs_error(c: f64, norm: &NormResult) -> f64 {
    2.0 * c.abs() * norm.value * norm.est_error
}

fn weighted_report(
    id: InequalityId,
    f: &AnalyticPoly,
    p: f64,
    family: WeightFamily,
    extra: f64,
) -> Result<InequalityReport> {
    let mut w = WeightSequence::for_p(family, p)?;
    let lhs = weighted_coeff_sum(f, &mut w, 0);
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    let c = if id == InequalityId::HardyClassical { extra } else { 1.0 };
    let rhs = c * norm.value * norm.value;
    Ok(InequalityReport {
        inequality_id: id,
        p,
        lhs,
        rhs,
        deficit: rhs - lhs,
        ratio: ratio_of(lhs, rhs),
        norm_est_error: rhs_error(c, &norm),
        input_digest: digest(id, p, extra, f),
    })
}

/// Contractive refinement with binomial weights:
/// `sum |a_n|^2 / c_{2/p}(n) <= ||f||_p^2`.
pub fn check_conjecture(f: &AnalyticPoly, p: f64) -> Result<InequalityReport> {
    weighted_report(InequalityId::Conjecture, f, p, WeightFamily::Binomial, 0.0)
}

/// Proved variant with exponentially growing weights:
/// `sum |a_n|^2 / Phi_{2/p}(n) <= ||f||_p^2`.
pub fn check_wiessler(f: &AnalyticPoly, p: f64) -> Result<InequalityReport> {
    weighted_report(InequalityId::Wiessler, f, p, WeightFamily::Wiessler, 0.0)
}

/// Classical bound `sum |a_n|^2 / (n+1)^(2/p-1) <= C ||f||_p^2`.
pub fn check_hardy_classical(f: &AnalyticPoly, p: f64, c: f64) -> Result<InequalityReport> {
    if !(c > 0.0) {
        return Err(crate::error::Error::Domain(format!(
            "check_hardy_classical: C must be > 0, got {c}"
        )));
    }
    weighted_report(InequalityId::HardyClassical, f, p, WeightFamily::HardyLittlewood, c)
}

/// Two-coefficient bound with weighted tail:
/// `|a_0|^2 + (p/2) |a_1|^2 + eps * sum_{n>=2} |a_n|^2 / (n+1)^(2/p-1)
///  <= ||f||_p^2`.
///
/// With `eps = 0` this is the sharp two-coefficient inequality and the
/// deficit is nonnegative up to quadrature error.
pub fn check_theorem2(f: &AnalyticPoly, p: f64, eps: f64) -> Result<InequalityReport> {
    if eps < 0.0 {
        return Err(crate::error::Error::Domain(format!(
            "check_theorem2: eps must be >= 0, got {eps}"
        )));
    }
    let mut w = WeightSequence::for_p(WeightFamily::HardyLittlewood, p)?;
    let head = f.coeff(0).norm_sqr() + p / 2.0 * f.coeff(1).norm_sqr();
    let lhs = head + eps * weighted_coeff_sum(f, &mut w, 2);
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    let rhs = norm.value * norm.value;
    Ok(InequalityReport {
        inequality_id: InequalityId::Theorem2,
        p,
        lhs,
        rhs,
        deficit: rhs - lhs,
        ratio: ratio_of(lhs, rhs),
        norm_est_error: rhs_error(1.0, &norm),
        input_digest: digest(InequalityId::Theorem2, p, eps, f),
    })
}

/// Pieces of the truncation bound
/// `||f - a_0 - a_1 z||_p^2 <= C_p' (||f||_p^2 - |a_0|^2 - (p/2)|a_1|^2)`.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationDeficit {
    pub tail_norm_sq: f64,
    pub head_deficit: f64,
    /// `tail_norm_sq / head_deficit`; `None` for equality configurations
    /// where the head deficit is under the noise floor.
    pub ratio: Option<f64>,
}

/// Evaluates both sides of the truncation bound without a constant.
pub fn truncation_deficit(f: &AnalyticPoly, p: f64) -> Result<TruncationDeficit> {
    let tail = hp_norm(&truncate_head(f, 2), p, DEFAULT_REL_TOL)?;
    let tail_norm_sq = tail.value * tail.value;
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    let head_deficit =
        norm.value * norm.value - f.coeff(0).norm_sqr() - p / 2.0 * f.coeff(1).norm_sqr();
    Ok(TruncationDeficit { tail_norm_sq, head_deficit, ratio: ratio_of(tail_norm_sq, head_deficit) })
}

/// Pieces of the first-coefficient removal bound
/// `||f - f(0)||_p <= gamma_p sqrt(||f||_p^2 - |f(0)|^2)`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaRatio {
    pub num: f64,
    pub den: f64,
    pub ratio: Option<f64>,
}

/// Evaluates `||f - f(0)||_p` against `sqrt(||f||_p^2 - |f(0)|^2)`.
pub fn lemma_ratio(f: &AnalyticPoly, p: f64) -> Result<LemmaRatio> {
    let num = hp_norm(&truncate_head(f, 1), p, DEFAULT_REL_TOL)?.value;
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    let den = (norm.value * norm.value - f.coeff(0).norm_sqr()).max(0.0).sqrt();
    Ok(LemmaRatio { num, den, ratio: ratio_of(num, den) })
}

/// Report form of the truncation bound at a given constant `C`:
/// `lhs = ||f - a_0 - a_1 z||_p^2`, `rhs = C * head deficit`.
pub fn theorem3_report(f: &AnalyticPoly, p: f64, c: f64) -> Result<InequalityReport> {
    let td = truncation_deficit(f, p)?;
    let rhs = c * td.head_deficit;
    // Two quadratures feed the report; fold both into the error bar.
    let tail = hp_norm(&truncate_head(f, 2), p, DEFAULT_REL_TOL)?;
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    Ok(InequalityReport {
        inequality_id: InequalityId::Theorem3,
        p,
        lhs: td.tail_norm_sq,
        rhs,
        deficit: rhs - td.tail_norm_sq,
        ratio: td.ratio,
        norm_est_error: rhs_error(c, &norm) + rhs_error(1.0, &tail),
        input_digest: digest(InequalityId::Theorem3, p, c, f),
    })
}

/// Report form of the removal bound at a given constant `gamma`:
/// `lhs = ||f - f(0)||_p^2`, `rhs = gamma^2 (||f||_p^2 - |f(0)|^2)`.
pub fn lemma_report(f: &AnalyticPoly, p: f64, gamma: f64) -> Result<InequalityReport> {
    let lr = lemma_ratio(f, p)?;
    let lhs = lr.num * lr.num;
    let rhs = gamma * gamma * lr.den * lr.den;
    let tail = hp_norm(&truncate_head(f, 1), p, DEFAULT_REL_TOL)?;
    let norm = hp_norm(f, p, DEFAULT_REL_TOL)?;
    Ok(InequalityReport {
        inequality_id: InequalityId::Lemma21,
        p,
        lhs,
        rhs,
        deficit: rhs - lhs,
        ratio: lr.ratio,
        norm_est_error: rhs_error(gamma * gamma, &norm) + rhs_error(1.0, &tail),
        input_digest: digest(InequalityId::Lemma21, p, gamma, f),
    })
}
