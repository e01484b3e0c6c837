//! Finite Blaschke products, polynomial root finding, and the `f = B * g`
//! split into a unimodular part carrying the interior zeros and a zero-free
//! outer part with `|g| = |f|` on the circle.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{eval_on_circle, series_multiply, AnalyticPoly};

/// Strict-interior margin required of Blaschke zeros.
pub const ZERO_MODULUS_MAX: f64 = 1.0 - 1e-12;
/// Classification threshold: roots with `|w| < 1 - ROOT_INTERIOR_MARGIN`
/// are factored into the Blaschke part, roots within `ROOT_INTERIOR_MARGIN`
/// of the circle are flagged and left in the outer part.
pub const ROOT_INTERIOR_MARGIN: f64 = 1e-9;
/// Per-root backward-error target of [`poly_roots`], relative to the
/// coefficient scale at the root.
pub const ROOT_BACKWARD_ERROR: f64 = 1e-10;

/// A finite Blaschke product `phase * prod (z - w_n) / (1 - z conj(w_n))`
/// with all `|w_n| < 1`.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    front_phase: Complex64,
}

impl BlaschkeProduct {
    /// Product with the given zeros and front factor 1.
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        Self::with_phase(zeros, Complex64::new(1.0, 0.0))
    }

    /// Product with an explicit unimodular front factor.
    pub fn with_phase(zeros: Vec<Complex64>, front_phase: Complex64) -> Result<Self> {
        for w in &zeros {
            if !(w.norm() < ZERO_MODULUS_MAX) {
                return Err(Error::Domain(format!(
                    "Blaschke zero {w} is not strictly interior (|w| = {})",
                    w.norm()
                )));
            }
        }
        if (front_phase.norm() - 1.0).abs() > 1e-14 {
            return Err(Error::Domain(format!(
                "front factor must be unimodular, |phase| = {}",
                front_phase.norm()
            )));
        }
        Ok(Self { zeros, front_phase })
    }

    /// The empty product (constant 1).
    pub fn identity() -> Self {
        Self { zeros: Vec::new(), front_phase: Complex64::new(1.0, 0.0) }
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn front_phase(&self) -> Complex64 {
        self.front_phase
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// Evaluates the product at `|z| <= 1`; unimodular whenever `|z| = 1`.
pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Complex64 {
    let mut acc = b.front_phase;
    for w in &b.zeros {
        acc *= (z - w) / (Complex64::new(1.0, 0.0) - z * w.conj());
    }
    acc
}

/// Taylor coefficients of the product at 0 through degree `n`, obtained by
/// multiplying the single-factor expansions
/// `(z - w)/(1 - conj(w) z) = -w + (1 - |w|^2) sum_{k>=1} conj(w)^{k-1} z^k`.
pub fn blaschke_series(b: &BlaschkeProduct, n: usize) -> AnalyticPoly {
    let mut acc = AnalyticPoly::constant(b.front_phase);
    for w in &b.zeros {
        let mut factor = Vec::with_capacity(n + 1);
        factor.push(-w);
        let scale = 1.0 - w.norm_sqr();
        let mut pw = Complex64::new(1.0, 0.0);
        for _ in 1..=n {
            factor.push(scale * pw);
            pw *= w.conj();
        }
        acc = series_multiply(&acc, &AnalyticPoly::new(factor), n);
    }
    acc
}

/// Shortest series length whose truncation tail is below `tol`: the slowest
/// factor decays geometrically at rate `max |w|`.
pub fn series_len_for_tail(b: &BlaschkeProduct, tol: f64) -> usize {
    let wmax = b.zeros.iter().map(|w| w.norm()).fold(0.0f64, f64::max);
    if wmax <= 0.0 {
        return b.len() + 1;
    }
    let n = (tol.ln() / wmax.ln()).ceil() as usize;
    n.max(b.len() + 1)
}

/// `|b_0| = prod |w_n|`, `|b_1|` from the series, and `sum (1 - |w_n|)`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CoefficientBounds {
    pub b0_abs: f64,
    pub b1_abs: f64,
    pub sum_one_minus_mod: f64,
}

/// Coefficient bounds of the product. Asserts the orthogonality bound
/// `|b_1| <= sqrt(1 - |b_0|^2)` (up to 1e-12).
pub fn blaschke_coefficient_bounds(b: &BlaschkeProduct) -> CoefficientBounds {
    let b0_abs: f64 = b.zeros.iter().map(|w| w.norm()).product();
    let b1_abs = blaschke_series(b, 1).coeff(1).norm();
    let sum_one_minus_mod = b.zeros.iter().map(|w| 1.0 - w.norm()).sum();
    assert!(
        b1_abs <= (1.0 - b0_abs * b0_abs).max(0.0).sqrt() + 1e-12,
        "|b_1| = {b1_abs} exceeds sqrt(1 - |b_0|^2) with |b_0| = {b0_abs}"
    );
    CoefficientBounds { b0_abs, b1_abs, sum_one_minus_mod }
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::ZERO;
    let mut dp = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Coefficient scale at `z`: `sum |a_i| |z|^i`, the natural normalizer for
/// the backward error `|p(z)|`.
fn coeff_scale_at(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut rp = 1.0;
    for c in coeffs {
        scale += c.norm() * rp;
        rp *= r;
    }
    scale.max(f64::MIN_POSITIVE)
}

/// One Aberth–Ehrlich sweep over all root estimates; returns the largest
/// relative correction applied.
fn aberth_sweep(coeffs: &[Complex64], roots: &mut [Complex64]) -> f64 {
    let n = roots.len();
    let mut max_step = 0.0f64;
    for i in 0..n {
        let z = roots[i];
        let (p, dp) = horner_with_derivative(coeffs, z);
        if p == Complex64::ZERO {
            continue;
        }
        let newton = if dp == Complex64::ZERO { Complex64::new(1e-8, 1e-8) } else { p / dp };
        let mut repulsion = Complex64::ZERO;
        for (j, &zj) in roots.iter().enumerate() {
            if j != i {
                let d = z - zj;
                if d != Complex64::ZERO {
                    repulsion += Complex64::new(1.0, 0.0) / d;
                }
            }
        }
        let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
        let step = if denom == Complex64::ZERO { newton } else { newton / denom };
        roots[i] = z - step;
        max_step = max_step.max(step.norm() / (1.0 + z.norm()));
    }
    max_step
}

fn max_backward_error(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|&z| horner_with_derivative(coeffs, z).0.norm() / coeff_scale_at(coeffs, z))
        .fold(0.0, f64::max)
}

/// Eigenvalues of the Frobenius companion matrix of the monic polynomial
/// with the given low-to-high coefficients (excluding the leading 1).
fn companion_eigenvalues(monic_tail: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = monic_tail.len();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -monic_tail[i];
    }
    let schur = m.try_schur(1e-14, 2000)?;
    let t = schur.unpack().1;
    Some((0..d).map(|i| t[(i, i)]).collect())
}

/// All complex roots of `f` with multiplicity.
///
/// Companion-matrix eigenvalues provide the initial estimates (robust for
/// the degrees used here); an Aberth–Ehrlich pass refines them until every
/// root meets the backward-error target `|f(z)| <= 1e-10 * sum |a_i| |z|^i`.
/// Exact zero roots (vanishing low-order coefficients) are split off first.
pub fn poly_roots(f: &AnalyticPoly) -> Result<Vec<Complex64>> {
    let Some(deg) = f.degree() else {
        return Err(Error::Argument("poly_roots: zero polynomial".into()));
    };
    if deg == 0 {
        return Err(Error::Argument("poly_roots: constant polynomial has no roots".into()));
    }
    let coeffs: Vec<Complex64> = f.coeffs()[..=deg].to_vec();

    // Split off exact roots at the origin.
    let zero_count = coeffs.iter().take_while(|c| **c == Complex64::ZERO).count();
    let mut roots = vec![Complex64::ZERO; zero_count];
    let reduced = &coeffs[zero_count..];
    let d = reduced.len() - 1;
    if d == 0 {
        return Ok(roots);
    }

    let lead = reduced[d];
    let monic_tail: Vec<Complex64> = reduced[..d].iter().map(|c| c / lead).collect();

    let mut estimates = companion_eigenvalues(&monic_tail).unwrap_or_else(|| {
        // Rare Schur stall: fall back to a spiral of initial guesses at the
        // coefficient-based radius.
        let r = 1.0 + monic_tail.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        (0..d)
            .map(|k| Complex64::from_polar(r * 0.7, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
            .collect()
    });

    for _ in 0..200 {
        if max_backward_error(reduced, &estimates) <= ROOT_BACKWARD_ERROR {
            break;
        }
        let step = aberth_sweep(reduced, &mut estimates);
        if step < 1e-16 {
            break;
        }
    }
    let err = max_backward_error(reduced, &estimates);
    if err > 1e-6 {
        return Err(Error::Argument(format!(
            "poly_roots: root refinement stalled with backward error {err:.3e}"
        )));
    }

    roots.extend(estimates);
    Ok(roots)
}

/// Result of the Riesz split `f = B * g`.
///
/// `outer_part` has no zeros in the closed disc whenever `boundary_roots`
/// is empty; roots within [`ROOT_INTERIOR_MARGIN`] of the circle are not
/// factored (the quadrature could not resolve them) and are reported here
/// instead, staying in the outer part.
#[derive(Debug, Clone)]
pub struct FactorizationResult {
    pub blaschke: BlaschkeProduct,
    pub outer_part: AnalyticPoly,
    /// Max over a circle grid of `| |g| - |f| |`.
    pub residual: f64,
    pub boundary_roots: Vec<Complex64>,
}

/// Splits `f` into a Blaschke product over its strict-interior zeros and an
/// outer polynomial with `|g| = |f|` on the circle.
///
/// The outer part is assembled exactly from the classified roots,
/// `g = a_d * prod_int (1 - conj(w) z) * prod_ext (z - r)`, so that
/// `B * g = f` up to root-finding error; the `residual` field reports the
/// realized boundary mismatch. Requires `N >= degree(f)`.
pub fn riesz_factorize(f: &AnalyticPoly, n: usize) -> Result<FactorizationResult> {
    let Some(deg) = f.degree() else {
        return Err(Error::Argument("riesz_factorize: zero polynomial".into()));
    };
    if n < deg {
        return Err(Error::Argument(format!(
            "riesz_factorize: N = {n} below degree {deg}"
        )));
    }
    if deg == 0 {
        return Ok(FactorizationResult {
            blaschke: BlaschkeProduct::identity(),
            outer_part: f.truncated(n),
            residual: 0.0,
            boundary_roots: Vec::new(),
        });
    }

    let roots = poly_roots(f)?;
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut outer_factors: Vec<AnalyticPoly> = Vec::new();
    for r in roots {
        let modulus = r.norm();
        if modulus < 1.0 - ROOT_INTERIOR_MARGIN {
            interior.push(r);
            // Reflected factor 1 - conj(w) z keeps |g| = |f| on the circle.
            outer_factors.push(AnalyticPoly::new(vec![Complex64::new(1.0, 0.0), -r.conj()]));
        } else {
            if (modulus - 1.0).abs() <= ROOT_INTERIOR_MARGIN {
                boundary.push(r);
            }
            outer_factors.push(AnalyticPoly::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
    }

    let lead = f.coeff(deg);
    let mut outer = AnalyticPoly::constant(lead);
    for factor in &outer_factors {
        outer = series_multiply(&outer, factor, n);
    }

    let blaschke = BlaschkeProduct::new(interior)?;
    let m = (2 * (deg + 1)).next_power_of_two().max(256);
    let f_grid = eval_on_circle(f, m)?;
    let g_grid = eval_on_circle(&outer, m)?;
    let residual = f_grid
        .samples()
        .iter()
        .zip(g_grid.samples())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max);

    Ok(FactorizationResult { blaschke, outer_part: outer, residual, boundary_roots: boundary })
}
