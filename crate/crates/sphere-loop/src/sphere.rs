//! The left loop `(S, ⊙)` on the unit sphere.
//!
//! The symmetric space operation is
//!
//! ```text
//! x * y = 2 <x, y> x - y,
//! ```
//!
//! reflection of `y` about the line through `x`. Away from the antipode
//! `-e0`, every point has a canonical square root
//! `x^(1/2) = (e0 + x) / |e0 + x|`, and the loop operation is defined by
//! `x ⊙ y = x^(1/2) * (e0 * y)`, which in operator form reads
//!
//! ```text
//! x ⊙ y = (2 P_{x^(1/2)} - I) J y,        x != -e0,
//! x ⊙ y = -y,                             x  = -e0.
//! ```
//!
//! An equivalent coordinate form (used as an independent cross-check) is
//!
//! ```text
//! x ⊙ y = <x, Jy> e0 + ((y0 + <x, Jy>) / (1 + x0)) x_perp + y_perp.
//! ```
//!
//! `(S, ⊙)` is a power-associative Kikkawa left loop with identity `e0`,
//! inverse `x^(-1) = Jx`, and real powers
//! `x^t = cos(t a) e0 + sin(t a) x_perp / |x_perp|` where `a = arccos x0`.
//! It is not a loop in dimension 3 or higher, and right translations are
//! discontinuous at `-e0`; the checkers in [`crate::laws`] quantify both.

use crate::error::{Error, Result};
use crate::hilbert::{apply_j, inner, projector, HVector, Operator, Tolerances};

/// Classification of a sphere point against the two poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleClass {
    /// Within the pole radius of the identity `e0`.
    IdentityPt,
    /// Within the pole radius of the antipode `-e0`.
    Antipode,
    /// Everything else.
    Generic,
}

/// A unit vector on the sphere with its pole classification cached.
///
/// Construction renormalizes inputs whose norm is within `1e-6` of 1 and
/// rejects anything further out.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    vec: HVector,
    pole: PoleClass,
}

impl SpherePoint {
    pub fn new(vec: HVector) -> Result<Self> {
        Self::with_tolerances(vec, &Tolerances::default())
    }

    pub fn with_tolerances(vec: HVector, tol: &Tolerances) -> Result<Self> {
        let norm = vec.norm();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NotUnit { norm });
        }
        let unit = if (norm - 1.0).abs() <= tol.eps_unit {
            vec
        } else {
            vec.scaled(1.0 / norm)
        };
        Ok(Self::classified(unit, tol))
    }

    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        Self::new(HVector::from_slice(coords))
    }

    /// The identity element `e0`.
    pub fn identity(dim: usize) -> Self {
        Self {
            vec: HVector::e0(dim),
            pole: PoleClass::IdentityPt,
        }
    }

    /// The antipode `-e0`.
    pub fn antipode(dim: usize) -> Self {
        Self {
            vec: -&HVector::e0(dim),
            pole: PoleClass::Antipode,
        }
    }

    fn classified(vec: HVector, tol: &Tolerances) -> Self {
        let e0 = HVector::e0(vec.dim());
        let pole = if (&vec + &e0).norm() <= tol.eps_pole {
            PoleClass::Antipode
        } else if (&vec - &e0).norm() <= tol.eps_pole {
            PoleClass::IdentityPt
        } else {
            PoleClass::Generic
        };
        Self { vec, pole }
    }

    /// Renormalizes the result of an operation that is unit modulo roundoff.
    pub(crate) fn from_computed(vec: HVector) -> Self {
        let norm = vec.norm();
        debug_assert!((norm - 1.0).abs() < 1e-6, "computed point far from unit");
        Self::classified(vec.scaled(1.0 / norm), &Tolerances::default())
    }

    pub fn vec(&self) -> &HVector {
        &self.vec
    }

    pub fn pole(&self) -> PoleClass {
        self.pole
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn x0(&self) -> f64 {
        self.vec.x0()
    }

    pub fn coords(&self) -> &[f64] {
        self.vec.coords()
    }

    /// Euclidean distance to another point.
    pub fn dist(&self, other: &SpherePoint) -> f64 {
        (&self.vec - &other.vec).norm()
    }

    /// The antipodal point `-x`.
    pub fn negated(&self) -> SpherePoint {
        SpherePoint::from_computed(-&self.vec)
    }

    /// The symmetric space operation `x * y = 2 <x, y> x - y`.
    pub fn symm(&self, y: &SpherePoint) -> SpherePoint {
        assert_eq!(self.dim(), y.dim(), "symm: dimension mismatch");
        let c = 2.0 * inner(&self.vec, &y.vec);
        SpherePoint::from_computed(&self.vec.scaled(c) - &y.vec)
    }

    /// The canonical square root `(e0 + x) / |e0 + x|`.
    ///
    /// The antipode has no canonical root: every unit vector in `V` squares
    /// to `-e0`.
    pub fn sqrt(&self) -> Result<SpherePoint> {
        if self.pole == PoleClass::Antipode {
            return Err(Error::AntipodeRoot);
        }
        let s = &HVector::e0(self.dim()) + &self.vec;
        Ok(SpherePoint::from_computed(s.scaled(1.0 / s.norm())))
    }

    /// The two-sided inverse `x^(-1) = Jx`.
    pub fn inverse(&self) -> SpherePoint {
        SpherePoint {
            vec: apply_j(&self.vec),
            pole: self.pole,
        }
    }

    /// The loop operation `x ⊙ y` via the operator form
    /// `(2 P_{x^(1/2)} - I) J y`, with `-e0 ⊙ y = -y`.
    pub fn odot(&self, y: &SpherePoint) -> SpherePoint {
        assert_eq!(self.dim(), y.dim(), "odot: dimension mismatch");
        if self.pole == PoleClass::Antipode {
            return y.negated();
        }
        let u = self.sqrt().expect("non-antipode has a square root");
        let jy = apply_j(&y.vec);
        // (2 P_u - I) Jy = 2 <u, Jy> u - Jy without forming the matrix.
        let c = 2.0 * inner(&u.vec, &jy);
        SpherePoint::from_computed(&u.vec.scaled(c) - &jy)
    }

    /// The loop operation in coordinate form,
    /// `<x, Jy> e0 + ((y0 + <x, Jy>) / (1 + x0)) x_perp + y_perp`.
    ///
    /// Undefined at `x = -e0`. Kept as a genuinely independent evaluation
    /// path so the two published forms can serve as each other's oracle.
    pub fn odot_alt(&self, y: &SpherePoint) -> Result<SpherePoint> {
        assert_eq!(self.dim(), y.dim(), "odot_alt: dimension mismatch");
        if self.pole == PoleClass::Antipode {
            return Err(Error::AntipodeDomain { op: "odot_alt" });
        }
        let c = inner(&self.vec, &apply_j(&y.vec));
        let scale = (y.x0() + c) / (1.0 + self.x0());
        let mut out = &self.vec.perp().scaled(scale) + &y.vec.perp();
        out = &out + &HVector::e0(self.dim()).scaled(c);
        Ok(SpherePoint::from_computed(out))
    }

    /// The real power `x^t = cos(t a) e0 + sin(t a) x_perp / |x_perp|`,
    /// `a = arccos x0`, with `e0^t = e0`. Undefined at the antipode.
    pub fn power(&self, t: f64) -> Result<SpherePoint> {
        match self.pole {
            PoleClass::Antipode => Err(Error::AntipodeDomain { op: "power" }),
            PoleClass::IdentityPt => Ok(SpherePoint::identity(self.dim())),
            PoleClass::Generic => {
                let a = self.x0().clamp(-1.0, 1.0).acos();
                let (sin, cos) = (t * a).sin_cos();
                let dir = self.vec.perp().scaled(1.0 / self.vec.perp_norm());
                let v = &HVector::e0(self.dim()).scaled(cos) + &dir.scaled(sin);
                Ok(SpherePoint::from_computed(v))
            }
        }
    }

    /// The left translation `L_x` as an operator on the ambient space:
    /// `(2 P_{x^(1/2)} - I) J`, and `-I` at the antipode. Always orthogonal,
    /// with `L_x e0 = x` and `L_x^T = L_{x^(-1)}`.
    pub fn left_translation(&self) -> Operator {
        let dim = self.dim();
        if self.pole == PoleClass::Antipode {
            return Operator::identity(dim).scaled(-1.0);
        }
        let u = self.sqrt().expect("non-antipode has a square root");
        let p = projector(u.vec()).expect("unit vector projector");
        let refl = &p.scaled(2.0) - &Operator::identity(dim);
        &refl * &Operator::j(dim)
    }

    /// Applies an operator and renormalizes; the operator is expected to be
    /// orthogonal so the image is unit modulo roundoff.
    pub fn transform(&self, a: &Operator) -> SpherePoint {
        SpherePoint::from_computed(a.apply(&self.vec))
    }
}

/// The right translation `R_y(x) = x ⊙ y`.
pub fn right_translate(y: &SpherePoint, x: &SpherePoint) -> SpherePoint {
    x.odot(y)
}

/// The left inner mapping `L(x, y) = L_{x⊙y}^(-1) L_x L_y`, computed with
/// the transpose as the inverse. Lands in `O(V)`: orthogonal and fixing `e0`.
pub fn left_inner(x: &SpherePoint, y: &SpherePoint) -> Operator {
    assert_eq!(x.dim(), y.dim(), "left_inner: dimension mismatch");
    let lxy = x.odot(y).left_translation();
    &(&lxy.transpose() * &x.left_translation()) * &y.left_translation()
}

/// `| x*y - x ⊙ (x ⊙ y^(-1)) |`: the defect of the compatibility of `⊙`
/// with the symmetric space structure. Zero (within roundoff) everywhere,
/// poles included.
pub fn compat_residual(x: &SpherePoint, y: &SpherePoint) -> f64 {
    let lhs = x.symm(y);
    let rhs = x.odot(&x.odot(&y.inverse()));
    lhs.dist(&rhs)
}
