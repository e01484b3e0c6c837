//! Numerical verification and extremal search for contractive
//! Hardy–Littlewood-type coefficient inequalities on Hardy spaces `H^p`
//! (`0 < p <= 2`) of the unit disc.
//!
//! The crate provides:
//!
//! * [`weights`] — the three weight families entering the inequalities and
//!   the sharp derivative bound `kappa(p)`;
//! * [`series`] — analytic polynomials, circle quadrature `H^p` norms, and
//!   truncated power-series algebra including `f^s` for zero-free `f`;
//! * [`blaschke`] — finite Blaschke products, polynomial root finding, and
//!   the `f = B * g` split;
//! * [`inequalities`] — deficit reports for every inequality;
//! * [`search`] — seeded derivative-free extremal search estimating the
//!   non-constructive sharp constants.

pub mod blaschke;
pub mod error;
pub mod inequalities;
pub mod search;
pub mod series;
pub mod weights;

pub use error::{Error, Result};

use serde::ser::SerializeSeq;

/// Serializes an [`series::AnalyticPoly`] as a list of `[re, im]` pairs.
pub(crate) fn serialize_poly<S: serde::Serializer>(
    poly: &series::AnalyticPoly,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(poly.coeffs().len()))?;
    for c in poly.coeffs() {
        seq.serialize_element(&[c.re, c.im])?;
    }
    seq.end()
}
