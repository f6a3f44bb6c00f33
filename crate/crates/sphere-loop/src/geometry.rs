//! Spherical geometry through the loop structure.
//!
//! The loop-theoretic norm is `|x|_s = arccos x0` and the distance
//! `d_s(x, y) = |x ⊙ y^(-1)|_s`, which collapses to the classical
//! `arccos <x, y>`. Powers trace great circles, so the odule structure
//! parametrizes the spherical line through two points,
//!
//! ```text
//! gamma(t) = x ⊙ (x^(-1) ⊙ y)^t,
//! ```
//!
//! and an equidistant circle through `x` and `y`,
//!
//! ```text
//! eta(t) = w^t ⊙ x,   nu(t) = w^t,   w = y ⊙ ((y ⊙ x)^(-1) ⊙ y),
//! ```
//!
//! with `d_s(eta(t), nu(t))` constant in `t` by left-translation invariance.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hilbert::{inner, Tolerances};
use crate::laws::{coplanarity_gram, IdentityReport, Witness};
use crate::sphere::{PoleClass, SpherePoint};

/// The spherical norm `|x|_s = arccos x0`, in `[0, pi]`; zero only at `e0`
/// and `pi` only at `-e0`.
pub fn norm_s(x: &SpherePoint) -> f64 {
    x.x0().clamp(-1.0, 1.0).acos()
}

/// The spherical distance `d_s(x, y) = arccos <x, y>`, equal to
/// `|x ⊙ y^(-1)|_s`.
pub fn dist_s(x: &SpherePoint, y: &SpherePoint) -> f64 {
    assert_eq!(x.dim(), y.dim(), "dist_s: dimension mismatch");
    inner(x.vec(), y.vec()).clamp(-1.0, 1.0).acos()
}

/// Outcome of the norm triangle inequality
/// `|x ⊙ y|_s <= pi - | |x|_s + |y|_s - pi | <= |x|_s + |y|_s`
/// on one pair, with the slack of each bound and the coplanarity Gram
/// determinant for the equality analysis.
#[derive(Debug, Clone)]
pub struct TriangleReport {
    pub report: IdentityReport,
    /// `pi - ||x|_s + |y|_s - pi| - |x ⊙ y|_s`, nonnegative when the sharp
    /// bound holds.
    pub first_slack: f64,
    /// Slack of the weaker bound `|x|_s + |y|_s`.
    pub second_slack: f64,
    /// Gram determinant of `{x_perp, y_perp}`; ~0 means coplanar.
    pub gram: f64,
}

/// Checks the norm triangle inequality for one pair.
pub fn triangle_report(x: &SpherePoint, y: &SpherePoint, tol: &Tolerances) -> TriangleReport {
    let nx = norm_s(x);
    let ny = norm_s(y);
    let nxy = norm_s(&x.odot(y));
    let sharp = PI - (nx + ny - PI).abs();
    let first_slack = sharp - nxy;
    let second_slack = (nx + ny) - sharp;
    TriangleReport {
        report: IdentityReport {
            name: "norm_triangle",
            residual: (-first_slack).max(0.0),
            predicted_holds: true,
            tolerance: tol.eps_res,
            witness: Witness::points(&[x, y]),
        },
        first_slack,
        second_slack,
        gram: coplanarity_gram(x, y),
    }
}

/// The even fold of `|t| * theta` into `[0, pi]`: what `arccos . cos` does
/// to the scaled angle, so that `|x^t|_s = fold_norm(t, |x|_s)`.
pub fn fold_norm(t: f64, theta: f64) -> f64 {
    let raw = (t * theta).abs();
    ((raw + PI).rem_euclid(2.0 * PI) - PI).abs()
}

/// The spherical line through `x` and `y`: `gamma(t) = x ⊙ (x^(-1) ⊙ y)^t`,
/// with `gamma(0) = x` and `gamma(1) = y`.
///
/// Antipodal pairs have no unique line; the direction point `x^(-1) ⊙ y`
/// must also stay clear of the poles for the power to make sense.
pub fn line_gamma(x: &SpherePoint, y: &SpherePoint, t: f64) -> Result<SpherePoint> {
    assert_eq!(x.dim(), y.dim(), "line_gamma: dimension mismatch");
    let dir = x.inverse().odot(y);
    if dir.pole() == PoleClass::Antipode {
        return Err(Error::AntipodalPair);
    }
    Ok(x.odot(&dir.power(t)?))
}

/// The equidistant curve `eta(t) = w^t ⊙ x` and its base line `nu(t) = w^t`,
/// where `w = y ⊙ ((y ⊙ x)^(-1) ⊙ y)`. Then `eta(0) = x`, `eta(1) = y`, and
/// `d_s(eta(t), nu(t)) = |x|_s` for every `t`.
pub fn equi_eta(x: &SpherePoint, y: &SpherePoint, t: f64) -> Result<(SpherePoint, SpherePoint)> {
    assert_eq!(x.dim(), y.dim(), "equi_eta: dimension mismatch");
    let yx = y.odot(x);
    if yx.pole() == PoleClass::Antipode {
        return Err(Error::Precondition(
            "x = -y^(-1): the defining translation is not available here".into(),
        ));
    }
    if yx.odot(&y.inverse()).dist(&y.negated()) <= 1e-9 {
        return Err(Error::Precondition(
            "(y ⊙ x) ⊙ y^(-1) = -y: the Bol identity does not apply here".into(),
        ));
    }
    let w = y.odot(&yx.inverse().odot(y));
    if w.pole() == PoleClass::Antipode {
        return Err(Error::Precondition(
            "base point of the equidistant curve falls on the antipode".into(),
        ));
    }
    let nu = w.power(t)?;
    Ok((nu.odot(x), nu))
}

/// Which curve a [`CurveSample`] traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// The spherical line `gamma`.
    Line,
    /// The equidistant curve `eta`.
    Equidistant,
    /// The base line `nu` under an equidistant curve.
    BaseLine,
}

/// A curve evaluated on a parameter grid.
#[derive(Debug, Clone)]
pub struct CurveSample {
    pub kind: CurveKind,
    /// The defining points `(x, y)`.
    pub params: (SpherePoint, SpherePoint),
    pub ts: Vec<f64>,
    pub points: Vec<SpherePoint>,
}

/// Samples the spherical line through `x` and `y` on the given grid.
pub fn sample_line(x: &SpherePoint, y: &SpherePoint, ts: &[f64]) -> Result<CurveSample> {
    let points = ts
        .iter()
        .map(|&t| line_gamma(x, y, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSample {
        kind: CurveKind::Line,
        params: (x.clone(), y.clone()),
        ts: ts.to_vec(),
        points,
    })
}

/// Samples the equidistant curve and its base line on the given grid.
pub fn sample_equi(
    x: &SpherePoint,
    y: &SpherePoint,
    ts: &[f64],
) -> Result<(CurveSample, CurveSample)> {
    let mut eta_points = Vec::with_capacity(ts.len());
    let mut nu_points = Vec::with_capacity(ts.len());
    for &t in ts {
        let (eta, nu) = equi_eta(x, y, t)?;
        eta_points.push(eta);
        nu_points.push(nu);
    }
    Ok((
        CurveSample {
            kind: CurveKind::Equidistant,
            params: (x.clone(), y.clone()),
            ts: ts.to_vec(),
            points: eta_points,
        },
        CurveSample {
            kind: CurveKind::BaseLine,
            params: (x.clone(), y.clone()),
            ts: ts.to_vec(),
            points: nu_points,
        },
    ))
}

/// Classical great-circle parametrization through `x` and `y` by arc length
/// fraction: orthonormalize `{x, y}` and rotate in that plane. Independent
/// of the loop machinery; used as the oracle for [`line_gamma`].
pub fn classical_great_circle(x: &SpherePoint, y: &SpherePoint, t: f64) -> Result<SpherePoint> {
    let angle = dist_s(x, y);
    if angle <= 1e-12 || (angle - PI).abs() <= 1e-9 {
        return Err(Error::AntipodalPair);
    }
    let ortho = (&y.vec().clone() - &x.vec().scaled(inner(x.vec(), y.vec()))).normalized()?;
    let (s, c) = (t * angle).sin_cos();
    SpherePoint::new(&x.vec().scaled(c) + &ortho.scaled(s))
}
