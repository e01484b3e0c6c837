//! Scalar weight sequences and constants for the coefficient inequalities.
//!
//! Three weight families show up in the inequalities handled by this crate,
//! all parameterized by `alpha = 2/p`:
//!
//! * `Binomial` — the generalized binomial coefficients `c_alpha(n)`,
//! * `Wiessler` — `Phi_alpha(n) = c_{floor(alpha)}(n) * (alpha/floor(alpha))^n`,
//! * `HardyLittlewood` — the polynomial weights `(n+1)^(alpha-1)`.
//!
//! All three are 1 at `n = 0`; the first two equal `alpha` at `n = 1`.

use crate::error::{Error, Result};
use serde::Serialize;

/// Which weight family a [`WeightSequence`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightFamily {
    HardyLittlewood,
    Binomial,
    Wiessler,
}

/// Generalized binomial coefficient `c_alpha(n) = binom(n + alpha - 1, n)`.
///
/// Computed by the multiplicative recurrence
/// `c_alpha(0) = 1`, `c_alpha(n) = c_alpha(n-1) * (alpha + n - 1) / n`,
/// which stays well inside f64 range for the parameters used here and avoids
/// factorials of non-integers.
pub fn binom_weight(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("binom_weight: alpha must be > 0, got {alpha}")));
    }
    let mut c = 1.0_f64;
    for k in 1..=n {
        c *= (alpha + k as f64 - 1.0) / k as f64;
    }
    Ok(c)
}

/// Wiessler weight `Phi_alpha(n) = c_{floor(alpha)}(n) * (alpha/floor(alpha))^n`.
///
/// Requires `alpha >= 1`. For integer `alpha` the growth ratio is exactly 1
/// and the value collapses to `binom_weight(alpha, n)` bit-for-bit.
pub fn wiessler_weight(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("wiessler_weight: alpha must be >= 1, got {alpha}")));
    }
    let floor = alpha.floor();
    let c = binom_weight(floor, n)?;
    Ok(c * (alpha / floor).powi(n as i32))
}

/// Classical Hardy–Littlewood weight `(n+1)^(2/p - 1)` for `0 < p <= 2`.
pub fn hl_weight(p: f64, n: usize) -> Result<f64> {
    check_p(p, "hl_weight")?;
    Ok(((n + 1) as f64).powf(2.0 / p - 1.0))
}

/// Sharp bound on `|f'(0)|` over the unit ball of `H^p`, `0 < p <= 2`:
/// 1 for `p >= 1` and `sqrt(2/p) * (1 - p/2)^(1/p - 1/2)` below.
///
/// Satisfies `(p/2) * kappa(p)^2 < 1` for every `p < 2`.
pub fn kappa(p: f64) -> Result<f64> {
    check_p(p, "kappa")?;
    if p >= 1.0 {
        Ok(1.0)
    } else {
        Ok((2.0 / p).sqrt() * (1.0 - p / 2.0).powf(1.0 / p - 0.5))
    }
}

fn check_p(p: f64, who: &str) -> Result<()> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::Domain(format!("{who}: p must lie in (0, 2], got {p}")));
    }
    Ok(())
}

/// A memoized weight sequence for one family at one `alpha = 2/p`.
///
/// The cache is append-only; values are filled on demand. A filled sequence
/// can be shared read-only across threads; on-demand filling requires `&mut`
/// and therefore confinement to one thread at a time.
#[derive(Debug, Clone)]
pub struct WeightSequence {
    family: WeightFamily,
    alpha: f64,
    cache: Vec<f64>,
}

impl WeightSequence {
    /// Builds a sequence for the given family and `alpha`.
    ///
    /// `alpha > 0` for `Binomial`; `alpha >= 1` for `Wiessler` and
    /// `HardyLittlewood` (the latter corresponds to `p = 2/alpha <= 2`).
    pub fn new(family: WeightFamily, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::Domain(format!("WeightSequence: alpha must be > 0, got {alpha}")));
        }
        match family {
            WeightFamily::Binomial => {}
            WeightFamily::Wiessler | WeightFamily::HardyLittlewood => {
                if alpha < 1.0 {
                    return Err(Error::Domain(format!(
                        "WeightSequence: {family:?} needs alpha >= 1, got {alpha}"
                    )));
                }
            }
        }
        Ok(Self { family, alpha, cache: vec![1.0] })
    }

    /// Sequence for exponent `p in (0, 2]`, i.e. `alpha = 2/p`.
    pub fn for_p(family: WeightFamily, p: f64) -> Result<Self> {
        check_p(p, "WeightSequence::for_p")?;
        Self::new(family, 2.0 / p)
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Weight at index `n`, extending the cache as needed.
    pub fn value(&mut self, n: usize) -> f64 {
        while self.cache.len() <= n {
            let k = self.cache.len();
            let next = match self.family {
                WeightFamily::Binomial => {
                    self.cache[k - 1] * (self.alpha + k as f64 - 1.0) / k as f64
                }
                WeightFamily::Wiessler => {
                    let floor = self.alpha.floor();
                    self.cache[k - 1] * ((floor + k as f64 - 1.0) / k as f64)
                        * (self.alpha / floor)
                }
                WeightFamily::HardyLittlewood => ((k + 1) as f64).powf(self.alpha - 1.0),
            };
            assert!(
                next.is_finite() && next > 0.0,
                "weight sequence left the positive finite range at n = {k}"
            );
            self.cache.push(next);
        }
        self.cache[n]
    }

    /// Pre-fills the cache through index `n_max` and returns the values.
    pub fn values(&mut self, n_max: usize) -> &[f64] {
        self.value(n_max);
        &self.cache[..=n_max]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    // Independent route: c_alpha(n) = Gamma(n + alpha) / (Gamma(alpha) * n!).
    fn binom_weight_gamma_oracle(alpha: f64, n: usize) -> f64 {
        use statrs::function::gamma::ln_gamma;
        (ln_gamma(n as f64 + alpha) - ln_gamma(alpha) - ln_gamma(n as f64 + 1.0)).exp()
    }

    #[test]
    fn binom_alpha_one_is_constant() {
        for n in 0..50 {
            assert_eq!(binom_weight(1.0, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn binom_alpha_two_counts_up() {
        assert_eq!(binom_weight(2.0, 5).unwrap(), 6.0);
        for n in 0..40 {
            assert_relative_eq!(
                binom_weight(2.0, n).unwrap(),
                (n + 1) as f64,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn binom_fractional_alpha_matches_gamma_oracle() {
        assert_relative_eq!(binom_weight(2.5, 2).unwrap(), 4.375, max_relative = 1e-14);
        for &alpha in &[0.5, 1.7, 2.5, 3.3] {
            for n in [0, 1, 2, 5, 17, 60] {
                assert_relative_eq!(
                    binom_weight(alpha, n).unwrap(),
                    binom_weight_gamma_oracle(alpha, n),
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn binom_rejects_nonpositive_alpha() {
        assert!(matches!(binom_weight(0.0, 3), Err(Error::Domain(_))));
        assert!(matches!(binom_weight(-1.5, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn binom_recurrence_consistency() {
        for &alpha in &[0.5, 1.0, 1.7, 2.0, 3.3] {
            for n in 1..=200usize {
                let ratio = binom_weight(alpha, n).unwrap() / binom_weight(alpha, n - 1).unwrap();
                let expected = (alpha + n as f64 - 1.0) / n as f64;
                assert_relative_eq!(ratio, expected, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn wiessler_examples() {
        for n in 0..30 {
            assert_relative_eq!(
                wiessler_weight(2.0, n).unwrap(),
                (n + 1) as f64,
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(wiessler_weight(2.5, 2).unwrap(), 4.6875, max_relative = 1e-14);
        assert_eq!(wiessler_weight(2.5, 0).unwrap(), 1.0);
        assert_eq!(wiessler_weight(2.5, 1).unwrap(), 2.5);
        assert!(matches!(wiessler_weight(0.9, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn wiessler_collapses_to_binom_at_integers_exactly() {
        for k in 1..=4 {
            let alpha = k as f64;
            for n in 0..=100 {
                // Bit-for-bit: the growth ratio is exactly 1.0 at integer alpha.
                assert_eq!(wiessler_weight(alpha, n).unwrap(), binom_weight(alpha, n).unwrap());
            }
        }
    }

    #[test]
    fn hl_examples() {
        for n in 0..20 {
            assert_eq!(hl_weight(2.0, n).unwrap(), 1.0);
        }
        assert_eq!(hl_weight(1.0, 4).unwrap(), 5.0);
        assert_relative_eq!(hl_weight(2.0 / 3.0, 2).unwrap(), 9.0, max_relative = 1e-14);
        assert!(matches!(hl_weight(0.0, 1), Err(Error::Domain(_))));
        assert!(matches!(hl_weight(2.5, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn growth_ordering_at_fractional_alpha() {
        // Exponential (Wiessler) dominates both polynomial families once n
        // is large. The binomial/HL comparison carries the constant
        // 1/Gamma(alpha): the binomial weight wins only for 1 < alpha < 2.
        let n = 50;
        for &alpha in &[1.5, 2.5, 3.3] {
            let w = wiessler_weight(alpha, n).unwrap();
            let b = binom_weight(alpha, n).unwrap();
            let h = hl_weight(2.0 / alpha, n).unwrap();
            assert!(w > b, "alpha {alpha}: wiessler {w} <= binom {b}");
            assert!(w > h, "alpha {alpha}: wiessler {w} <= hl {h}");
        }
        let b = binom_weight(1.5, n).unwrap();
        let h = hl_weight(2.0 / 1.5, n).unwrap();
        assert!(b > h, "binom {b} <= hl {h} at alpha = 1.5");
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(1.0).unwrap(), 1.0);
        assert_eq!(kappa(1.5).unwrap(), 1.0);
        assert_eq!(kappa(2.0).unwrap(), 1.0);
        // 0.5 -> sqrt(4) * 0.75^1.5 = 2 * 0.6495190528...
        assert_relative_eq!(kappa(0.5).unwrap(), 1.299038105676658, max_relative = 1e-14);
        assert!(matches!(kappa(0.0), Err(Error::Domain(_))));
        assert!(matches!(kappa(2.1), Err(Error::Domain(_))));
    }

    #[test]
    fn kappa_is_continuous_at_one() {
        let left = kappa(1.0 - 1e-8).unwrap();
        assert_abs_diff_eq!(left, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn kappa_contraction_margin() {
        // (p/2) * kappa(p)^2 < 1 for every p < 2.
        for i in 1..200 {
            let p = i as f64 / 100.0;
            let k = kappa(p).unwrap();
            assert!(p / 2.0 * k * k < 1.0, "margin violated at p = {p}");
        }
    }

    #[test]
    fn sequence_agrees_with_point_functions() {
        let mut b = WeightSequence::new(WeightFamily::Binomial, 2.5).unwrap();
        let mut w = WeightSequence::new(WeightFamily::Wiessler, 2.5).unwrap();
        let mut h = WeightSequence::for_p(WeightFamily::HardyLittlewood, 0.8).unwrap();
        assert_eq!(b.value(0), 1.0);
        assert_eq!(w.value(0), 1.0);
        assert_eq!(h.value(0), 1.0);
        assert_eq!(b.value(1), 2.5);
        assert_eq!(w.value(1), 2.5);
        for n in 0..80 {
            assert_relative_eq!(b.value(n), binom_weight(2.5, n).unwrap(), max_relative = 1e-13);
            assert_relative_eq!(w.value(n), wiessler_weight(2.5, n).unwrap(), max_relative = 1e-12);
            assert_relative_eq!(h.value(n), hl_weight(0.8, n).unwrap(), max_relative = 1e-13);
            assert!(b.value(n) > 0.0 && b.value(n).is_finite());
        }
    }

    #[test]
    fn sequence_rejects_bad_alpha() {
        assert!(WeightSequence::new(WeightFamily::Binomial, 0.0).is_err());
        assert!(WeightSequence::new(WeightFamily::Wiessler, 0.7).is_err());
        assert!(WeightSequence::for_p(WeightFamily::Binomial, 2.4).is_err());
    }
}
