//! The orthogonal group as a semidirect product of the sphere.
//!
//! Every `A` in `O(H)` factors uniquely as `A = L_u U` with `u = A e0` and
//! `U = L_u^T A` fixing `e0`, so the left translations form a transversal
//! of `O(V)`. Pairs `(x, A)` with the multiplication
//!
//! ```text
//! (x, A)(y, B) = (x ⊙ A y, L(x, A y) A B)
//! ```
//!
//! form a group isomorphic to `O(H)` via `(x, A) -> L_x A`.

use crate::error::{Error, Result};
use crate::hilbert::{e0_defect, orthogonality_defect, HVector, Operator, Tolerances};
use crate::sphere::{left_inner, PoleClass, SpherePoint};

/// The unique factorization `A = L_u U` of an orthogonal operator.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub u: SpherePoint,
    /// The `O(V)` part; fixes `e0` within tolerance.
    pub big_u: Operator,
}

/// An element `(point, auto)` of `S ⋊ O(V)`.
#[derive(Debug, Clone)]
pub struct SemidirectElement {
    point: SpherePoint,
    auto: Operator,
}

impl SemidirectElement {
    /// Requires `auto` to be orthogonal and fix `e0`.
    pub fn new(point: SpherePoint, auto: Operator, tol: &Tolerances) -> Result<Self> {
        assert_eq!(point.dim(), auto.dim(), "element: dimension mismatch");
        require_in_ov(&auto, tol)?;
        Ok(Self { point, auto })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            point: SpherePoint::identity(dim),
            auto: Operator::identity(dim),
        }
    }

    pub fn point(&self) -> &SpherePoint {
        &self.point
    }

    pub fn auto(&self) -> &Operator {
        &self.auto
    }

    pub fn dim(&self) -> usize {
        self.point.dim()
    }
}

fn require_orthogonal(a: &Operator, tol: &Tolerances) -> Result<()> {
    let defect = orthogonality_defect(a);
    if defect > tol.eps_op {
        return Err(Error::NotOrthogonal { defect });
    }
    Ok(())
}

fn require_in_ov(a: &Operator, tol: &Tolerances) -> Result<()> {
    require_orthogonal(a, tol)?;
    let defect = e0_defect(a);
    if defect > tol.eps_op {
        return Err(Error::NotInOv { defect });
    }
    Ok(())
}

/// Factors an orthogonal `A` as `L_u U`: `u = A e0` and `U = L_u^T A`.
pub fn factorize(a: &Operator, tol: &Tolerances) -> Result<Factorization> {
    require_orthogonal(a, tol)?;
    let u = SpherePoint::new(a.apply(&HVector::e0(a.dim())))?;
    let big_u = &u.left_translation().transpose() * a;
    Ok(Factorization { u, big_u })
}

/// The semidirect multiplication `(x, A)(y, B) = (x ⊙ A y, L(x, A y) A B)`.
pub fn semidirect_mul(p: &SemidirectElement, q: &SemidirectElement) -> SemidirectElement {
    assert_eq!(p.dim(), q.dim(), "semidirect_mul: dimension mismatch");
    let ay = q.point.transform(&p.auto);
    let point = p.point.odot(&ay);
    let auto = &(&left_inner(&p.point, &ay) * &p.auto) * &q.auto;
    SemidirectElement { point, auto }
}

/// The isomorphism onto `O(H)`: `(x, A) -> L_x A`.
pub fn to_operator(p: &SemidirectElement) -> Operator {
    &p.point.left_translation() * &p.auto
}

/// The group inverse, computed by transposing the operator image and
/// refactorizing.
pub fn invert(p: &SemidirectElement, tol: &Tolerances) -> Result<SemidirectElement> {
    let f = factorize(&to_operator(p).transpose(), tol)?;
    SemidirectElement::new(f.u, f.big_u, tol)
}

/// `|A(x ⊙ y) - Ax ⊙ Ay|` for `A` in `O(V)`: zero within tolerance, since
/// the operators fixing `e0` are exactly the automorphisms of `(S, ⊙)`.
pub fn automorphism_residual(
    a: &Operator,
    x: &SpherePoint,
    y: &SpherePoint,
    tol: &Tolerances,
) -> Result<f64> {
    require_in_ov(a, tol)?;
    let lhs = x.odot(y).transform(a);
    let rhs = x.transform(a).odot(&y.transform(a));
    Ok(lhs.dist(&rhs))
}

/// `|(Ax)^t - A x^t|` for `A` in `O(V)`: the automorphisms also preserve
/// real powers.
pub fn scalar_equivariance_residual(
    a: &Operator,
    x: &SpherePoint,
    t: f64,
    tol: &Tolerances,
) -> Result<f64> {
    require_in_ov(a, tol)?;
    if x.pole() != PoleClass::Generic {
        return Err(Error::Precondition("x must be away from both poles".into()));
    }
    let lhs = x.transform(a).power(t)?;
    let rhs = x.power(t)?.transform(a);
    Ok(lhs.dist(&rhs))
}

/// `|L_x - (-I)|` in the max-norm: how far a left translation stays from
/// the isolated transversal element `-I`.
pub fn transversal_gap(x: &SpherePoint) -> Result<f64> {
    if x.pole() != PoleClass::Generic {
        return Err(Error::Precondition("x must be away from both poles".into()));
    }
    let minus_i = Operator::identity(x.dim()).scaled(-1.0);
    Ok(x.left_translation().max_norm_diff(&minus_i))
}

/// The proof-of-isolation witness: a unit `v` orthogonal to both `e0` and
/// `x` satisfies `(L_x + I) v = 2v`, so `|(L_x + I) v| = 2` uniformly.
/// Needs dimension at least 3.
pub fn transversal_gap_witness(x: &SpherePoint) -> Result<f64> {
    if x.pole() != PoleClass::Generic {
        return Err(Error::Precondition("x must be away from both poles".into()));
    }
    if x.dim() < 3 {
        return Err(Error::Precondition(
            "isolation witness needs dimension >= 3".into(),
        ));
    }
    let dim = x.dim();
    // Orthonormalize {e0, x} into {e0, x_perp/|x_perp|}, then project a
    // coordinate vector off that plane.
    let e0 = HVector::e0(dim);
    let plane = x.vec().perp().normalized()?;
    let mut v = None;
    for k in 1..dim {
        let mut c = HVector::basis(dim, k);
        c = &c - &e0.scaled(crate::hilbert::inner(&c, &e0));
        c = &c - &plane.scaled(crate::hilbert::inner(&c, &plane));
        if c.norm() > 1e-6 {
            v = Some(c.normalized()?);
            break;
        }
    }
    let v = v.ok_or(Error::Degenerate("no direction orthogonal to e0 and x"))?;
    let l = x.left_translation();
    Ok((&l.apply(&v) + &v).norm())
}
