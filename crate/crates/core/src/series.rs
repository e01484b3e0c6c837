//! Analytic polynomials, circle sampling, `H^p` norms and truncated
//! power-series algebra.
//!
//! Everything here works on finite Taylor-coefficient vectors. Norms are
//! boundary means: `||f||_p = ((1/2pi) int |f(e^{i theta})|^p d theta)^(1/p)`,
//! computed by the uniform trapezoid rule on dyadic circle grids with
//! doubling until two successive values agree. The trapezoid rule is
//! spectrally accurate as long as `f` has no zeros on the circle, which is
//! the generic case; near-circle zeros surface as a convergence error.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Default relative tolerance for the quadrature stopping rule.
pub const DEFAULT_REL_TOL: f64 = 1e-10;
/// Default cap on the quadrature grid size.
pub const DEFAULT_M_MAX: usize = 1 << 22;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan_inverse(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(m))
}

fn plan_forward(m: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m))
}

/// A finite Taylor-coefficient vector `f(z) = sum a_n z^n`.
///
/// Trailing zeros are allowed and ignored by [`degree`](Self::degree) and by
/// equality comparisons. All coefficients must be finite.
#[derive(Debug, Clone)]
pub struct AnalyticPoly {
    coeffs: Vec<Complex64>,
}

impl AnalyticPoly {
    /// Wraps a coefficient vector. Panics if any coefficient is NaN/Inf.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()),
            "AnalyticPoly: non-finite coefficient"
        );
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// Coefficient `a_n`, zero beyond the stored length.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    /// The stored coefficient slice (may carry trailing zeros).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Largest index with a nonzero coefficient, or `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex64::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficient-wise scaling by `c`.
    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Sum of squared coefficient moduli (the `H^2` norm squared).
    pub fn coeff_norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Drops trailing coefficients beyond index `n`.
    pub fn truncated(&self, n: usize) -> Self {
        let len = self.coeffs.len().min(n + 1);
        Self { coeffs: self.coeffs[..len].to_vec() }
    }
}

impl PartialEq for AnalyticPoly {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

/// Samples of a function on the dyadic circle grid `e^{2 pi i k / M}`.
#[derive(Debug, Clone)]
pub struct CircleGrid {
    samples: Vec<Complex64>,
}

impl CircleGrid {
    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }
}

/// Outcome of a quadrature norm computation.
#[derive(Debug, Clone, serde::Serialize)]
pub struct NormResult {
    pub value: f64,
    pub grid_size_used: usize,
    pub est_error: f64,
}

/// Evaluates `f` at the `M`-th roots of unity via an inverse FFT of the
/// zero-padded coefficient vector: `samples[k] = sum_n a_n e^{2 pi i k n / M}`.
///
/// `M` must be a power of two with `M >= degree + 1`.
pub fn eval_on_circle(f: &AnalyticPoly, m: usize) -> Result<CircleGrid> {
    if !m.is_power_of_two() {
        return Err(Error::Argument(format!("eval_on_circle: M = {m} is not a power of two")));
    }
    let needed = f.degree().map_or(1, |d| d + 1);
    if m < needed {
        return Err(Error::Argument(format!(
            "eval_on_circle: M = {m} too small for degree {}",
            needed - 1
        )));
    }
    let mut buf = vec![Complex64::ZERO; m];
    for (i, &c) in f.coeffs.iter().enumerate().take(m) {
        buf[i] = c;
    }
    plan_inverse(m).process(&mut buf);
    Ok(CircleGrid { samples: buf })
}

/// Recovers coefficients `a_0..a_N` from circle samples by the forward FFT
/// scaled by `1/M`. Requires `N < M`.
pub fn coeffs_from_samples(grid: &CircleGrid, n: usize) -> Result<AnalyticPoly> {
    let m = grid.size();
    if n >= m {
        return Err(Error::Argument(format!("coeffs_from_samples: N = {n} must be < M = {m}")));
    }
    let mut buf = grid.samples.clone();
    plan_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    Ok(AnalyticPoly::new(buf[..=n].iter().map(|c| c * scale).collect()))
}

fn check_p(p: f64, who: &str) -> Result<()> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::Domain(format!("{who}: p must lie in (0, 2], got {p}")));
    }
    Ok(())
}

/// Mean of `|f|^p` over the `M`-point circle grid, already raised to `1/p`.
fn grid_norm(f: &AnalyticPoly, m: usize, p: f64) -> Result<f64> {
    let grid = eval_on_circle(f, m)?;
    let mean = if p == 2.0 {
        grid.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / m as f64
    } else if p == 1.0 {
        grid.samples.iter().map(|s| s.norm()).sum::<f64>() / m as f64
    } else {
        grid.samples.iter().map(|s| s.norm().powf(p)).sum::<f64>() / m as f64
    };
    Ok(mean.powf(1.0 / p))
}

/// Boundary `H^p` norm by trapezoid quadrature with grid doubling.
///
/// Stops when two successive grid values agree to `rel_tol`; the returned
/// `est_error` is their difference. Fails with
/// [`Error::NormConvergence`] once the grid would exceed the cap, which is
/// the expected outcome when `f` has zeros on (or hugging) the circle and
/// `p < 1`.
pub fn hp_norm(f: &AnalyticPoly, p: f64, rel_tol: f64) -> Result<NormResult> {
    hp_norm_with(f, p, rel_tol, DEFAULT_M_MAX)
}

/// [`hp_norm`] with an explicit grid cap.
pub fn hp_norm_with(f: &AnalyticPoly, p: f64, rel_tol: f64, m_max: usize) -> Result<NormResult> {
    check_p(p, "hp_norm")?;
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("hp_norm: rel_tol must be > 0, got {rel_tol}")));
    }
    let Some(deg) = f.degree() else {
        return Ok(NormResult { value: 0.0, grid_size_used: 0, est_error: 0.0 });
    };
    // Alias-free floor for |f|^2; higher p-powers are handled by doubling.
    let mut m = (2 * (deg + 1)).next_power_of_two().max(32);
    let mut prev = grid_norm(f, m, p)?;
    loop {
        let m2 = m * 2;
        let cur = grid_norm(f, m2, p)?;
        let diff = (cur - prev).abs();
        if diff <= rel_tol * cur.abs() {
            return Ok(NormResult { value: cur, grid_size_used: m2, est_error: diff });
        }
        if m2 >= m_max {
            return Err(Error::NormConvergence { last: cur, prev, grid_size: m2 });
        }
        prev = cur;
        m = m2;
    }
}

/// Cauchy product of `f` and `g`, truncated at degree `n`.
pub fn series_multiply(f: &AnalyticPoly, g: &AnalyticPoly, n: usize) -> AnalyticPoly {
    if f.is_zero() || g.is_zero() {
        return AnalyticPoly::zero();
    }
    let fl = f.coeffs.len().min(n + 1);
    let gl = g.coeffs.len().min(n + 1);
    let out_len = (fl + gl - 1).min(n + 1);
    let mut out = vec![Complex64::ZERO; out_len];
    for i in 0..fl {
        let fi = f.coeffs[i];
        if fi == Complex64::ZERO {
            continue;
        }
        for j in 0..gl.min(out_len - i) {
            out[i + j] += fi * g.coeffs[j];
        }
    }
    AnalyticPoly::new(out)
}

/// Truncated series of `f^s` for real `s`, requiring `f(0) != 0`.
///
/// Uses the first-order recurrence obtained from `f * (f^s)' = s * f' * f^s`
/// (the J.C.P. Miller scheme); the constant term is the principal branch of
/// `a_0^s`. The result matches repeated multiplication for positive integer
/// `s`, and the `H^p` norm identities hold when `f` is zero-free in the
/// closed disc.
pub fn series_power(f: &AnalyticPoly, s: f64, n: usize) -> Result<AnalyticPoly> {
    let a0 = f.coeff(0);
    if a0 == Complex64::ZERO {
        return Err(Error::Domain("series_power: constant term is zero".into()));
    }
    let deg = f.degree().unwrap_or(0);
    let mut g = Vec::with_capacity(n + 1);
    g.push(a0.powf(s));
    for k in 1..=n {
        let mut acc = Complex64::ZERO;
        for j in 1..=deg.min(k) {
            let w = (s + 1.0) * j as f64 - k as f64;
            acc += w * f.coeff(j) * g[k - j];
        }
        g.push(acc / (k as f64 * a0));
    }
    Ok(AnalyticPoly::new(g))
}

/// Truncated series of `exp(f)`.
pub fn series_exp(f: &AnalyticPoly, n: usize) -> AnalyticPoly {
    let deg = f.degree().unwrap_or(0);
    let mut g = Vec::with_capacity(n + 1);
    g.push(f.coeff(0).exp());
    for k in 1..=n {
        let mut acc = Complex64::ZERO;
        for j in 1..=deg.min(k) {
            acc += j as f64 * f.coeff(j) * g[k - j];
        }
        g.push(acc / k as f64);
    }
    AnalyticPoly::new(g)
}

/// Truncated series `h` with `h * g = f` through degree `n`.
/// Requires `g(0) != 0`.
pub fn series_divide(f: &AnalyticPoly, g: &AnalyticPoly, n: usize) -> Result<AnalyticPoly> {
    let g0 = g.coeff(0);
    if g0 == Complex64::ZERO {
        return Err(Error::Domain("series_divide: divisor constant term is zero".into()));
    }
    let gdeg = g.degree().unwrap_or(0);
    let mut h = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = f.coeff(k);
        for j in 1..=gdeg.min(k) {
            acc -= g.coeff(j) * h[k - j];
        }
        h.push(acc / g0);
    }
    Ok(AnalyticPoly::new(h))
}

/// Replaces `a_0..a_{k-1}` by zero, keeping the tail `sum_{n>=k} a_n z^n`.
pub fn truncate_head(f: &AnalyticPoly, k: usize) -> AnalyticPoly {
    let mut coeffs = f.coeffs.clone();
    for c in coeffs.iter_mut().take(k) {
        *c = Complex64::ZERO;
    }
    AnalyticPoly { coeffs }
}
