//! Derivative-free extremal search over coefficient vectors.
//!
//! Estimates the non-constructive constants behind the inequalities by
//! optimizing ratios of quadrature norms over polynomials of capped degree:
//! Nelder–Mead simplices with seeded random restarts, a barrier against
//! candidates whose zeros hug the unit circle (where the quadrature
//! degrades), and deterministic best-of merging. Identical configurations
//! reproduce bit-identical results regardless of how restarts are scheduled.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::blaschke::poly_roots;
use crate::error::{Error, Result};
use crate::inequalities::weighted_coeff_sum;
use crate::series::{hp_norm, truncate_head, AnalyticPoly, DEFAULT_REL_TOL};
use crate::weights::{WeightFamily, WeightSequence};

/// Default margin around the unit circle that candidate zeros must keep.
pub const DEFAULT_BOUNDARY_MARGIN: f64 = 1e-3;

/// Barrier scale: a candidate at distance `d < margin` from the circle is
/// scored `BARRIER_SCALE / d`, far above any legitimate objective value.
const BARRIER_SCALE: f64 = 1e3;

/// Simplex edge length around each restart's starting point.
const SIMPLEX_SCALE: f64 = 0.25;

/// Relative tolerance on the within-restart norm evaluations.
const SEARCH_REL_TOL: f64 = DEFAULT_REL_TOL;

/// Which quantity a search run extremizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveId {
    EpsP,
    CpPrime,
    GammaP,
    Kappa,
    ConjectureDeficit,
}

/// Which constant an estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantId {
    EpsP,
    CpPrime,
    GammaP,
    KappaEmpirical,
}

/// Fully deterministic description of a search run.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub p: f64,
    pub degree: usize,
    pub restarts: usize,
    pub max_evals_per_restart: usize,
    pub rng_seed: u64,
    pub objective_id: ObjectiveId,
    pub boundary_penalty_margin: f64,
    /// Optional starting polynomials; they occupy the first restart slots
    /// in order, remaining restarts start from seeded random draws.
    pub seed_polys: Vec<AnalyticPoly>,
}

impl SearchConfig {
    pub fn new(objective_id: ObjectiveId, p: f64, degree: usize) -> Self {
        Self {
            p,
            degree,
            restarts: 8,
            max_evals_per_restart: 4000,
            rng_seed: 0,
            objective_id,
            boundary_penalty_margin: DEFAULT_BOUNDARY_MARGIN,
            seed_polys: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p <= 2.0) {
            return Err(Error::Domain(format!("SearchConfig: p must lie in (0, 2], got {}", self.p)));
        }
        if self.restarts == 0 {
            return Err(Error::Domain("SearchConfig: restarts must be >= 1".into()));
        }
        if self.max_evals_per_restart == 0 {
            return Err(Error::Domain("SearchConfig: max_evals_per_restart must be >= 1".into()));
        }
        if !(self.boundary_penalty_margin > 0.0 && self.boundary_penalty_margin < 1.0) {
            return Err(Error::Domain("SearchConfig: boundary margin must lie in (0, 1)".into()));
        }
        Ok(())
    }

    /// Digest identifying the run for provenance fields.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "{:?}|{}|{}|{}|{}|{}|{}",
            self.objective_id,
            self.p,
            self.degree,
            self.restarts,
            self.max_evals_per_restart,
            self.rng_seed,
            self.boundary_penalty_margin
        ));
        for f in &self.seed_polys {
            for c in f.coeffs() {
                h.update(c.re.to_le_bytes());
                h.update(c.im.to_le_bytes());
            }
            h.update([0xff]);
        }
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Best candidate found, with per-restart traces.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    #[serde(serialize_with = "crate::serialize_poly")]
    pub best_poly: AnalyticPoly,
    /// Extremum in the minimization frame of the objective that was run.
    pub best_value: f64,
    pub evaluations: u64,
    pub per_restart_bests: Vec<f64>,
    pub inconclusive_flags: Vec<String>,
}

/// An empirical one-sided bound on one of the sharp constants.
#[derive(Debug, Clone, Serialize)]
pub struct EstimatedConstant {
    pub constant_id: ConstantId,
    pub p: f64,
    pub value: f64,
    pub degree_cap: usize,
    /// Digest of the producing [`SearchConfig`].
    pub provenance: String,
}

enum Score {
    Valid(f64),
    Penalized(f64),
    Undefined,
}

struct Evaluator<'a> {
    objective: &'a (dyn Fn(&AnalyticPoly) -> Option<f64> + Sync),
    margin: f64,
}

impl Evaluator<'_> {
    fn poly_from_coords(coords: &[f64]) -> AnalyticPoly {
        let coeffs: Vec<Complex64> =
            coords.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        AnalyticPoly::new(coeffs)
    }

    /// Distance from the circle of the nearest zero of `f`, ignoring
    /// numerically trailing coefficients.
    fn nearest_zero_distance(f: &AnalyticPoly) -> Option<f64> {
        let max_c = f.coeffs().iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if max_c == 0.0 {
            return None;
        }
        let significant =
            f.coeffs().iter().rposition(|c| c.norm() > 1e-13 * max_c).unwrap_or(0);
        if significant == 0 {
            return None;
        }
        let clipped = f.truncated(significant);
        let roots = poly_roots(&clipped).ok()?;
        roots.iter().map(|r| (r.norm() - 1.0).abs()).min_by(f64::total_cmp)
    }

    fn score(&self, coords: &[f64]) -> (Score, AnalyticPoly) {
        let poly = Self::poly_from_coords(coords);
        if !coords.iter().all(|x| x.is_finite()) {
            return (Score::Undefined, poly);
        }
        if let Some(dist) = Self::nearest_zero_distance(&poly) {
            if dist < self.margin {
                // Barrier: repel the simplex from the quadrature failure
                // region instead of letting the norm stall mid-search.
                return (Score::Penalized(BARRIER_SCALE / dist.max(1e-300)), poly);
            }
        }
        match (self.objective)(&poly) {
            Some(v) if v.is_finite() => (Score::Valid(v), poly),
            _ => (Score::Undefined, poly),
        }
    }
}

struct RestartOutcome {
    best: Option<(f64, AnalyticPoly)>,
    evaluations: u64,
    undefined: u64,
}

fn run_restart(
    restart: usize,
    config: &SearchConfig,
    ev: &Evaluator<'_>,
) -> RestartOutcome {
    let dim = 2 * (config.degree + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    rng.set_stream(restart as u64 + 1);

    let start: Vec<f64> = if restart < config.seed_polys.len() {
        let f = &config.seed_polys[restart];
        (0..=config.degree)
            .flat_map(|i| {
                let c = f.coeff(i);
                [c.re, c.im]
            })
            .collect()
    } else {
        // Coefficients drawn uniformly from the unit polydisc.
        (0..=config.degree)
            .flat_map(|_| loop {
                let re = rng.random_range(-1.0..1.0);
                let im = rng.random_range(-1.0..1.0);
                if re * re + im * im <= 1.0 {
                    break [re, im];
                }
            })
            .collect()
    };

    let mut evaluations = 0u64;
    let mut undefined = 0u64;
    let mut best: Option<(f64, AnalyticPoly)> = None;

    let eval = |coords: &[f64],
                evaluations: &mut u64,
                undefined: &mut u64,
                best: &mut Option<(f64, AnalyticPoly)>| {
        *evaluations += 1;
        let (score, poly) = ev.score(coords);
        match score {
            Score::Valid(v) => {
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    *best = Some((v, poly));
                }
                v
            }
            Score::Penalized(v) => v,
            Score::Undefined => {
                *undefined += 1;
                f64::INFINITY
            }
        }
    };

    // Initial simplex: start plus one offset vertex per coordinate.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v = eval(&start, &mut evaluations, &mut undefined, &mut best);
    simplex.push((start.clone(), v));
    for i in 0..dim {
        let mut x = start.clone();
        x[i] += SIMPLEX_SCALE;
        let v = eval(&x, &mut evaluations, &mut undefined, &mut best);
        simplex.push((x, v));
    }

    let (alpha, gamma, beta, sigma) = (1.0, 2.0, 0.5, 0.5);
    while evaluations < config.max_evals_per_restart as u64 {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.is_finite() && spread.abs() <= 1e-12 * (1.0 + simplex[0].1.abs()) {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|i| simplex[..dim].iter().map(|(x, _)| x[i]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> =
            (0..dim).map(|i| centroid[i] + alpha * (centroid[i] - worst.0[i])).collect();
        let fr = eval(&reflect, &mut evaluations, &mut undefined, &mut best);

        if fr < simplex[0].1 {
            let expand: Vec<f64> =
                (0..dim).map(|i| centroid[i] + gamma * (reflect[i] - centroid[i])).collect();
            let fe = eval(&expand, &mut evaluations, &mut undefined, &mut best);
            simplex[dim] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflect, fr);
        } else {
            let contract: Vec<f64> =
                (0..dim).map(|i| centroid[i] + beta * (worst.0[i] - centroid[i])).collect();
            let fc = eval(&contract, &mut evaluations, &mut undefined, &mut best);
            if fc < worst.1 {
                simplex[dim] = (contract, fc);
            } else {
                // Shrink toward the best vertex.
                let best_x = simplex[0].0.clone();
                for vtx in simplex.iter_mut().skip(1) {
                    for i in 0..dim {
                        vtx.0[i] = best_x[i] + sigma * (vtx.0[i] - best_x[i]);
                    }
                    vtx.1 = eval(&vtx.0, &mut evaluations, &mut undefined, &mut best);
                    if evaluations >= config.max_evals_per_restart as u64 {
                        break;
                    }
                }
            }
        }
    }

    RestartOutcome { best, evaluations, undefined }
}

/// Minimizes `objective` over coefficient vectors of degree
/// `config.degree`. Candidates for which the objective is undefined are
/// skipped (counted in the flags); candidates whose zeros come within the
/// boundary margin of the circle are repelled by a barrier score.
///
/// The returned best is the minimum over restarts, ties resolved toward the
/// lowest restart index. Restarts run independently (in parallel) but the
/// merge is order-deterministic.
pub fn optimize(
    config: &SearchConfig,
    objective: &(dyn Fn(&AnalyticPoly) -> Option<f64> + Sync),
) -> Result<SearchResult> {
    config.validate()?;
    let ev = Evaluator { objective, margin: config.boundary_penalty_margin };

    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(r, config, &ev))
        .collect();

    let mut evaluations = 0u64;
    let mut flags = Vec::new();
    let mut per_restart_bests = Vec::with_capacity(config.restarts);
    let mut best: Option<(f64, AnalyticPoly)> = None;
    for (r, o) in outcomes.into_iter().enumerate() {
        evaluations += o.evaluations;
        if o.undefined > 0 {
            flags.push(format!("restart {r}: {} undefined objective evaluations", o.undefined));
        }
        match o.best {
            Some((v, poly)) => {
                per_restart_bests.push(v);
                if best.as_ref().map_or(true, |(b, _)| v < *b) {
                    best = Some((v, poly));
                }
            }
            None => {
                per_restart_bests.push(f64::INFINITY);
                flags.push(format!("restart {r}: no valid candidate"));
            }
        }
    }

    let Some((best_value, best_poly)) = best else {
        return Err(Error::SearchFailure(
            "objective undefined on every probe of every restart".into(),
        ));
    };
    Ok(SearchResult { best_poly, best_value, evaluations, per_restart_bests, inconclusive_flags: flags })
}

/// `||f||_p` and its square for a normalized-objective evaluation; `None`
/// when the norm is unavailable or the polynomial is numerically zero.
fn norm_sq(f: &AnalyticPoly, p: f64) -> Option<f64> {
    let r = hp_norm(f, p, SEARCH_REL_TOL).ok()?;
    if r.value <= 1e-12 {
        return None;
    }
    Some(r.value * r.value)
}

fn head_sum(f: &AnalyticPoly, p: f64) -> f64 {
    f.coeff(0).norm_sqr() + p / 2.0 * f.coeff(1).norm_sqr()
}

/// Empirical upper bound on the sharp tail constant: minimizes
/// `(||f||_p^2 - |a_0|^2 - (p/2)|a_1|^2) / sum_{n>=2} |a_n|^2 w_n^{-1}`
/// over the degree-capped space, skipping near-empty tails.
pub fn estimate_eps_p(config: &SearchConfig) -> Result<EstimatedConstant> {
    let p = config.p;
    let objective = move |f: &AnalyticPoly| {
        let v2 = norm_sq(f, p)?;
        let mut w = WeightSequence::for_p(WeightFamily::HardyLittlewood, p).ok()?;
        let den = weighted_coeff_sum(f, &mut w, 2) / v2;
        if den < 1e-12 {
            return None;
        }
        let num = 1.0 - head_sum(f, p) / v2;
        Some(num / den)
    };
    let result = optimize(config, &objective)?;
    Ok(EstimatedConstant {
        constant_id: ConstantId::EpsP,
        p,
        value: result.best_value,
        degree_cap: config.degree,
        provenance: config.digest(),
    })
}

/// Empirical lower bound on the sharp truncation constant: maximizes the
/// ratio `||f - a_0 - a_1 z||_p^2 / (||f||_p^2 - |a_0|^2 - (p/2)|a_1|^2)`.
pub fn estimate_cp_prime(config: &SearchConfig) -> Result<EstimatedConstant> {
    let p = config.p;
    let objective = move |f: &AnalyticPoly| {
        let v2 = norm_sq(f, p)?;
        let head_deficit = 1.0 - head_sum(f, p) / v2;
        if head_deficit < 1e-14 {
            return None;
        }
        let tail = hp_norm(&truncate_head(f, 2), p, SEARCH_REL_TOL).ok()?;
        let tail_sq = tail.value * tail.value / v2;
        Some(-(tail_sq / head_deficit))
    };
    let result = optimize(config, &objective)?;
    Ok(EstimatedConstant {
        constant_id: ConstantId::CpPrime,
        p,
        value: -result.best_value,
        degree_cap: config.degree,
        provenance: config.digest(),
    })
}

/// Empirical lower bound on the sharp removal constant: maximizes
/// `||f - f(0)||_p / sqrt(||f||_p^2 - |f(0)|^2)`.
pub fn estimate_gamma_p(config: &SearchConfig) -> Result<EstimatedConstant> {
    let p = config.p;
    let objective = move |f: &AnalyticPoly| {
        let v2 = norm_sq(f, p)?;
        let den_sq = 1.0 - f.coeff(0).norm_sqr() / v2;
        if den_sq < 1e-14 {
            return None;
        }
        let num = hp_norm(&truncate_head(f, 1), p, SEARCH_REL_TOL).ok()?.value / v2.sqrt();
        Some(-(num / den_sq.sqrt()))
    };
    let result = optimize(config, &objective)?;
    Ok(EstimatedConstant {
        constant_id: ConstantId::GammaP,
        p,
        value: -result.best_value,
        degree_cap: config.degree,
        provenance: config.digest(),
    })
}

/// Empirical value of the derivative bound: maximizes `|a_1| / ||f||_p`.
/// The result must stay at or below the closed-form bound.
pub fn estimate_kappa_empirical(config: &SearchConfig) -> Result<EstimatedConstant> {
    let p = config.p;
    let objective = move |f: &AnalyticPoly| {
        let v2 = norm_sq(f, p)?;
        Some(-(f.coeff(1).norm() / v2.sqrt()))
    };
    let result = optimize(config, &objective)?;
    Ok(EstimatedConstant {
        constant_id: ConstantId::KappaEmpirical,
        p,
        value: -result.best_value,
        degree_cap: config.degree,
        provenance: config.digest(),
    })
}

/// Minimizes the contractive-inequality deficit over normalized candidates.
/// Any candidate whose deficit is negative beyond the propagated quadrature
/// error is labeled a counterexample candidate in the flags, with full
/// reproduction data.
pub fn conjecture_stress(config: &SearchConfig) -> Result<SearchResult> {
    let p = config.p;
    let objective = move |f: &AnalyticPoly| {
        let r = hp_norm(f, p, SEARCH_REL_TOL).ok()?;
        if r.value <= 1e-12 {
            return None;
        }
        let v2 = r.value * r.value;
        let mut w = WeightSequence::for_p(WeightFamily::Binomial, p).ok()?;
        let lhs = weighted_coeff_sum(f, &mut w, 0) / v2;
        Some(1.0 - lhs)
    };
    let mut result = optimize(config, &objective)?;

    // Re-derive the error bar for the winner and label a genuine crossing.
    if result.best_value < 0.0 {
        let norm = hp_norm(&result.best_poly, p, SEARCH_REL_TOL)?;
        let v2 = norm.value * norm.value;
        let combined = 2.0 * norm.value * norm.est_error / v2 + 1e-12;
        if -result.best_value > combined {
            let coeffs: Vec<[f64; 2]> =
                result.best_poly.coeffs().iter().map(|c| [c.re, c.im]).collect();
            result.inconclusive_flags.push(format!(
                "COUNTEREXAMPLE-CANDIDATE deficit={} p={} seed={} coeffs={:?}",
                result.best_value, p, config.rng_seed, coeffs
            ));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{binom_weight, kappa};
    use approx::assert_abs_diff_eq;

    fn quick(objective_id: ObjectiveId, p: f64, degree: usize) -> SearchConfig {
        let mut c = SearchConfig::new(objective_id, p, degree);
        c.restarts = 4;
        c.max_evals_per_restart = 1500;
        c.rng_seed = 17;
        c
    }

    #[test]
    fn constant_objective_returns_any_probe() {
        let config = quick(ObjectiveId::Kappa, 1.0, 2);
        let r = optimize(&config, &|_f| Some(3.25)).unwrap();
        assert_eq!(r.best_value, 3.25);
        assert!(r.evaluations >= 1);
        assert_eq!(r.per_restart_bests.len(), 4);
    }

    #[test]
    fn quadratic_bowl_converges() {
        let config = quick(ObjectiveId::Kappa, 1.0, 1);
        let r = optimize(&config, &|f| Some((f.coeff(0) - 1.0).norm_sqr())).unwrap();
        assert!(r.best_value < 1e-8, "best {}", r.best_value);
        assert_abs_diff_eq!((r.best_poly.coeff(0) - 1.0).norm(), 0.0, epsilon = 1e-3);
    }

    #[test]
    fn normalized_first_coefficient_maximum_is_monomial() {
        // max |a_1| / ||f||_2 = 1, attained by f = z.
        let mut config = quick(ObjectiveId::Kappa, 2.0, 3);
        config.max_evals_per_restart = 4000;
        let est = estimate_kappa_empirical(&config).unwrap();
        assert!(est.value <= 1.0 + 1e-9, "value {}", est.value);
        assert!(est.value > 0.999, "value {}", est.value);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let config = quick(ObjectiveId::GammaP, 1.0, 3);
        let a = estimate_gamma_p(&config).unwrap();
        let b = estimate_gamma_p(&config).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let ra = optimize(&config, &|f| Some(f.coeff_norm_sqr())).unwrap();
        let rb = optimize(&config, &|f| Some(f.coeff_norm_sqr())).unwrap();
        assert_eq!(
            serde_json::to_string(&ra).unwrap(),
            serde_json::to_string(&rb).unwrap()
        );
    }

    #[test]
    fn eps_p_is_parseval_identity_at_p_two() {
        let config = quick(ObjectiveId::EpsP, 2.0, 4);
        let est = estimate_eps_p(&config).unwrap();
        assert_abs_diff_eq!(est.value, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn eps_p_fails_without_tail_coefficients() {
        let config = quick(ObjectiveId::EpsP, 1.0, 1);
        assert!(matches!(estimate_eps_p(&config), Err(Error::SearchFailure(_))));
    }

    #[test]
    fn cp_prime_and_gamma_are_parseval_identities_at_p_two() {
        let est = estimate_cp_prime(&quick(ObjectiveId::CpPrime, 2.0, 4)).unwrap();
        assert_abs_diff_eq!(est.value, 1.0, epsilon = 1e-6);
        let est = estimate_gamma_p(&quick(ObjectiveId::GammaP, 2.0, 4)).unwrap();
        assert_abs_diff_eq!(est.value, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn gamma_fails_on_constant_space() {
        let config = quick(ObjectiveId::GammaP, 1.0, 0);
        assert!(matches!(estimate_gamma_p(&config), Err(Error::SearchFailure(_))));
    }

    #[test]
    fn gamma_at_p_one_beats_the_witness() {
        // Seeding with 1 + z guarantees the estimate is at least the
        // witness ratio.
        let mut config = quick(ObjectiveId::GammaP, 1.0, 6);
        config.seed_polys = vec![AnalyticPoly::from_real(&[1.0, 1.0])];
        config.max_evals_per_restart = 3000;
        let est = estimate_gamma_p(&config).unwrap();
        assert!(est.value >= 1.268836380278609 - 1e-4, "value {}", est.value);
    }

    #[test]
    fn kappa_estimates_respect_closed_form() {
        for &p in &[0.5, 1.0, 2.0] {
            let mut config = quick(ObjectiveId::Kappa, p, 4);
            config.seed_polys = vec![AnalyticPoly::monomial(1)];
            let est = estimate_kappa_empirical(&config).unwrap();
            let bound = kappa(p).unwrap();
            assert!(est.value <= bound * (1.0 + 1e-3), "p = {p}: {} > {bound}", est.value);
        }
    }

    #[test]
    fn stress_at_p_two_finds_zero_deficit() {
        let mut config = quick(ObjectiveId::ConjectureDeficit, 2.0, 4);
        config.max_evals_per_restart = 2000;
        let r = conjecture_stress(&config).unwrap();
        assert!(r.best_value.abs() <= 1e-9, "deficit {}", r.best_value);
        assert!(!r.inconclusive_flags.iter().any(|f| f.contains("COUNTEREXAMPLE")));
    }

    #[test]
    fn stress_seeded_with_equality_family_gets_small_deficit() {
        let w = 0.6f64;
        let coeffs: Vec<f64> =
            (0..=12).map(|n| binom_weight(2.0, n).unwrap() * w.powi(n as i32)).collect();
        let mut config = quick(ObjectiveId::ConjectureDeficit, 1.0, 12);
        config.seed_polys = vec![AnalyticPoly::from_real(&coeffs)];
        config.restarts = 2;
        config.max_evals_per_restart = 25_000;
        let r = conjecture_stress(&config).unwrap();
        assert!(r.best_value <= 1e-4, "deficit {}", r.best_value);
        assert!(r.best_value >= -1e-9, "deficit {}", r.best_value);
    }

    #[test]
    fn stress_random_corpus_has_no_candidates() {
        let mut config = quick(ObjectiveId::ConjectureDeficit, 0.5, 5);
        config.max_evals_per_restart = 1200;
        let r = conjecture_stress(&config).unwrap();
        assert!(!r.inconclusive_flags.iter().any(|f| f.contains("COUNTEREXAMPLE")));
        assert!(r.best_value >= -1e-7);
    }

    #[test]
    fn witness_bounds_hold_in_both_directions() {
        // A constructed witness can only improve (never degrade) each bound.
        let witness = AnalyticPoly::from_real(&[1.0, 0.4, 0.2, 0.6]);
        let p = 1.0;

        let mut config = quick(ObjectiveId::CpPrime, p, 3);
        config.seed_polys = vec![witness.clone()];
        let est = estimate_cp_prime(&config).unwrap();
        let w_ratio = {
            let td = crate::inequalities::truncation_deficit(&witness, p).unwrap();
            td.ratio.unwrap()
        };
        assert!(est.value >= w_ratio - 1e-9);

        let mut config = quick(ObjectiveId::EpsP, p, 3);
        config.seed_polys = vec![witness.clone()];
        let est = estimate_eps_p(&config).unwrap();
        let td = crate::inequalities::truncation_deficit(&witness, p).unwrap();
        let mut wseq = WeightSequence::for_p(WeightFamily::HardyLittlewood, p).unwrap();
        let w_ratio = td.head_deficit / weighted_coeff_sum(&witness, &mut wseq, 2);
        assert!(est.value <= w_ratio + 1e-9);
    }

    #[test]
    fn nested_degree_spaces_are_monotone_when_seeded() {
        let p = 1.0;
        let mut small = quick(ObjectiveId::GammaP, p, 3);
        small.max_evals_per_restart = 2500;
        let est_small = estimate_gamma_p(&small).unwrap();

        // Re-run in the larger space with the small-space optimum injected.
        let r_small = optimize(&small, &{
            let p = p;
            move |f: &AnalyticPoly| {
                let v2 = norm_sq(f, p)?;
                let den_sq = 1.0 - f.coeff(0).norm_sqr() / v2;
                if den_sq < 1e-14 {
                    return None;
                }
                let num = hp_norm(&truncate_head(f, 1), p, SEARCH_REL_TOL).ok()?.value / v2.sqrt();
                Some(-(num / den_sq.sqrt()))
            }
        })
        .unwrap();
        let mut large = quick(ObjectiveId::GammaP, p, 6);
        large.max_evals_per_restart = 2500;
        large.seed_polys = vec![r_small.best_poly];
        let est_large = estimate_gamma_p(&large).unwrap();
        assert!(
            est_large.value >= est_small.value - 1e-6,
            "larger space lost ground: {} < {}",
            est_large.value,
            est_small.value
        );
    }
}
