//! Residual checkers for the laws of `(S, ⊙)`.
//!
//! Each checker evaluates both sides of an identity and returns an
//! [`IdentityReport`]: the defect norm, the inputs, and the *prediction* of
//! whether the identity holds for those inputs. A report passes when a
//! predicted identity has a small residual, and also when a predicted
//! failure has a clearly large one — so the suite fails loudly if the
//! claimed failure set ever shrinks or grows.
//!
//! Matrix residuals use the entrywise max-norm; point residuals use the
//! Euclidean norm.

use rand::Rng;

use crate::error::{Error, Result};
use crate::hilbert::{inner, projector, HVector, Operator, Tolerances};
use crate::sphere::{left_inner, right_translate, PoleClass, SpherePoint};

/// Inputs that produced a residual, kept for reproducibility of findings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Witness {
    pub points: Vec<Vec<f64>>,
    pub scalars: Vec<f64>,
}

impl Witness {
    pub fn points(pts: &[&SpherePoint]) -> Self {
        Self {
            points: pts.iter().map(|p| p.coords().to_vec()).collect(),
            scalars: Vec::new(),
        }
    }

    pub fn with_scalars(mut self, scalars: &[f64]) -> Self {
        self.scalars = scalars.to_vec();
        self
    }
}

/// A named residual together with the prediction of whether it vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// Law name, stable across runs (report keys in serialized output).
    pub name: &'static str,
    /// Max-norm (operators) or Euclidean (points) defect, `>= 0`.
    pub residual: f64,
    /// Whether the identity is asserted to hold for this witness.
    pub predicted_holds: bool,
    /// Pass threshold for a predicted identity.
    pub tolerance: f64,
    pub witness: Witness,
}

impl IdentityReport {
    /// Predicted identities must come in under tolerance; predicted
    /// failures must exceed ten times it, so they remain clear witnesses.
    pub fn passes(&self) -> bool {
        if self.predicted_holds {
            self.residual <= self.tolerance
        } else {
            self.residual > 10.0 * self.tolerance
        }
    }
}

/// `(2 P_u - I) J` for a unit vector `u`.
fn reflection_j(u: &HVector) -> Operator {
    let dim = u.dim();
    let p = projector(u).expect("unit vector projector");
    &(&p.scaled(2.0) - &Operator::identity(dim)) * &Operator::j(dim)
}

fn require_generic(p: &SpherePoint, what: &str) -> Result<()> {
    if p.pole() != PoleClass::Generic {
        return Err(Error::Precondition(format!("{what} must be away from both poles")));
    }
    Ok(())
}

/// Left power alternative law: `L_{x^s} L_{x^t}` against the closed
/// operator form with exponent midpoint `(s+t)/2`, and against
/// `L_{x^(s+t)}`, which is predicted to agree exactly when
/// `x^(s+t) != -e0`.
///
/// Requires `x`, `x^s`, `x^t` away from the poles.
pub fn check_lpa(
    x: &SpherePoint,
    s: f64,
    t: f64,
    tol: &Tolerances,
) -> Result<[IdentityReport; 2]> {
    require_generic(x, "x")?;
    let xs = x.power(s)?;
    let xt = x.power(t)?;
    if xs.pole() != PoleClass::Generic || xt.pole() != PoleClass::Generic {
        return Err(Error::Precondition(
            "x^s and x^t must be away from both poles".into(),
        ));
    }
    let product = &xs.left_translation() * &xt.left_translation();

    let mid = x.power((s + t) / 2.0)?;
    let operator_form = reflection_j(mid.vec());
    let sum = x.power(s + t)?;
    let witness = Witness::points(&[x]).with_scalars(&[s, t]);

    Ok([
        IdentityReport {
            name: "lpa_operator_form",
            residual: product.max_norm_diff(&operator_form),
            predicted_holds: true,
            tolerance: tol.eps_res,
            witness: witness.clone(),
        },
        IdentityReport {
            name: "lpa_sum",
            residual: product.max_norm_diff(&sum.left_translation()),
            predicted_holds: sum.pole() != PoleClass::Antipode,
            tolerance: tol.eps_res,
            witness,
        },
    ])
}

/// Left alternative law `L_x^2 = L_{x⊙x}`, which holds exactly for
/// `x` outside `V` (and trivially at the poles) in dimension 3 and up.
pub fn check_left_alternative(x: &SpherePoint, tol: &Tolerances) -> Result<IdentityReport> {
    if x.dim() < 3 {
        return Err(Error::Precondition(
            "left alternative dichotomy needs dimension >= 3; on the circle the law always holds"
                .into(),
        ));
    }
    let l = x.left_translation();
    let residual = (&l * &l).max_norm_diff(&x.odot(x).left_translation());
    Ok(IdentityReport {
        name: "left_alternative",
        residual,
        predicted_holds: x.x0().abs() > tol.eps_pole,
        tolerance: tol.eps_res,
        witness: Witness::points(&[x]),
    })
}

/// Behaviour of translations at the antipode: `L_{-e0}` commutes with every
/// `L_x`, but `L_x L_{-e0}` is *not* `L_{-x}` once the dimension exceeds 2.
pub fn check_lpa2(x: &SpherePoint, tol: &Tolerances) -> Result<[IdentityReport; 2]> {
    require_generic(x, "x")?;
    let dim = x.dim();
    let l = x.left_translation();
    let minus_i = Operator::identity(dim).scaled(-1.0);
    let commute = (&minus_i * &l).max_norm_diff(&(&l * &minus_i));
    let collapse = (&l * &minus_i).max_norm_diff(&x.negated().left_translation());
    let witness = Witness::points(&[x]);
    Ok([
        IdentityReport {
            name: "lpa_antipode_commute",
            residual: commute,
            predicted_holds: true,
            tolerance: tol.eps_res,
            witness: witness.clone(),
        },
        IdentityReport {
            name: "lpa_antipode_collapse",
            residual: collapse,
            // Collapses to L_{-x} only on the circle.
            predicted_holds: dim < 3,
            tolerance: tol.eps_res,
            witness,
        },
    ])
}

/// Whether `(x, y)` lies in the failure set of the left Bol identity:
/// dimension at least 3, `x` away from the poles, and either `y = -e0` or
/// `y` solves `y ⊙ x = -x^(-1)` while differing from `-x^(-2)`.
pub fn bol_exception(x: &SpherePoint, y: &SpherePoint, tol: &Tolerances) -> bool {
    if x.dim() < 3 || x.pole() != PoleClass::Generic {
        return false;
    }
    if y.pole() == PoleClass::Antipode {
        return true;
    }
    let in_solution_set = y.odot(x).dist(&x.inverse().negated()) <= tol.eps_res;
    let is_particular = y.dist(&x.power(-2.0).expect("x generic").negated()) <= tol.eps_res;
    in_solution_set && !is_particular
}

/// Left Bol identity `L_x L_y L_x = L_{x ⊙ (y ⊙ x)}`, with the prediction
/// following the exact exception set of [`bol_exception`].
pub fn check_bol(x: &SpherePoint, y: &SpherePoint, tol: &Tolerances) -> IdentityReport {
    assert_eq!(x.dim(), y.dim(), "check_bol: dimension mismatch");
    let lx = x.left_translation();
    let lhs = &(&lx * &y.left_translation()) * &lx;
    let rhs = x.odot(&y.odot(x)).left_translation();
    IdentityReport {
        name: "bol",
        residual: lhs.max_norm_diff(&rhs),
        predicted_holds: !bol_exception(x, y, tol),
        tolerance: tol.eps_res,
        witness: Witness::points(&[x, y]),
    }
}

/// Whether `x` solves `x ⊙ a = -a^(-1)`, tested through the affine-slice
/// characterization `<x, a^(-1)> = -a0` (with `x != -e0`).
pub fn solution_set_membership(
    a: &SpherePoint,
    x: &SpherePoint,
    tol: &Tolerances,
) -> Result<bool> {
    require_generic(a, "a")?;
    if a.dim() < 3 {
        return Err(Error::Precondition(
            "solution-set membership needs dimension >= 3".into(),
        ));
    }
    let slice = (inner(x.vec(), a.inverse().vec()) + a.x0()).abs() <= tol.eps_res;
    Ok(slice && x.pole() != PoleClass::Antipode)
}

/// Deterministic members of the solution set of `x ⊙ a = -a^(-1)`:
/// the sphere `-a0 a^(-1) + |a_perp| w` over unit `w` orthogonal to
/// `a^(-1)`, with the removed point `-e0` filtered out.
pub fn solution_set_members(a: &SpherePoint) -> Result<Vec<SpherePoint>> {
    require_generic(a, "a")?;
    let dim = a.dim();
    let a_inv = a.inverse();
    let center = a_inv.vec().scaled(-a.x0());
    let radius = a.vec().perp_norm();

    // Orthonormal basis of the hyperplane orthogonal to a^(-1), built by
    // Gram-Schmidt over the standard basis.
    let mut basis: Vec<HVector> = Vec::new();
    for k in 0..dim {
        let mut v = HVector::basis(dim, k);
        v = &v - &a_inv.vec().scaled(inner(&v, a_inv.vec()));
        for b in &basis {
            v = &v - &b.scaled(inner(&v, b));
        }
        if v.norm() > 1e-6 {
            basis.push(v.normalized()?);
        }
        if basis.len() == dim - 1 {
            break;
        }
    }

    let mut members = Vec::new();
    for w in &basis {
        for sign in [1.0, -1.0] {
            let candidate = &center + &w.scaled(sign * radius);
            let point = SpherePoint::new(candidate)?;
            if point.pole() != PoleClass::Antipode {
                members.push(point);
            }
        }
    }
    members.dedup_by(|p, q| p.dist(q) <= 1e-12);
    Ok(members)
}

/// Dimension of the solution sphere of `x ⊙ a = -a^(-1)`: `dim - 2`.
///
/// At least two distinct members are constructed and verified to solve the
/// equation whenever `dim >= 3`, certifying that `(S, ⊙)` is not a loop;
/// in dimension 2 the single remaining solution is verified instead.
pub fn count_solution_dimension(a: &SpherePoint, tol: &Tolerances) -> Result<usize> {
    require_generic(a, "a")?;
    let dim = a.dim();
    let members = solution_set_members(a)?;
    let needed = if dim >= 3 { 2 } else { 1 };
    if members.len() < needed {
        return Err(Error::Structure(format!(
            "expected at least {needed} solutions, constructed {}",
            members.len()
        )));
    }
    let target = a.inverse().negated();
    for m in &members {
        let defect = m.odot(a).dist(&target);
        if defect > tol.eps_res {
            return Err(Error::Structure(format!(
                "constructed member fails the defining equation (defect {defect})"
            )));
        }
    }
    for (i, m) in members.iter().enumerate() {
        for q in &members[i + 1..] {
            if m.dist(q) <= tol.eps_res {
                return Err(Error::Structure("constructed members collide".into()));
            }
        }
    }
    Ok(dim - 2)
}

/// The quotient identity
/// `(x ⊙ y) ⊙ (x ⊙ z)^(-1) = L(x, y) (y ⊙ z^(-1))`,
/// valid in every Kikkawa left loop.
pub fn check_trans_ident(
    x: &SpherePoint,
    y: &SpherePoint,
    z: &SpherePoint,
    tol: &Tolerances,
) -> IdentityReport {
    let lhs = x.odot(y).odot(&x.odot(z).inverse());
    let rhs = y.odot(&z.inverse()).transform(&left_inner(x, y));
    IdentityReport {
        name: "translation_quotient",
        residual: lhs.dist(&rhs),
        predicted_holds: true,
        tolerance: tol.eps_res,
        witness: Witness::points(&[x, y, z]),
    }
}

/// Equivariance of real powers under left inner mappings:
/// `(L(x,y) z)^t = L(x,y) z^t`.
pub fn check_second_al(
    x: &SpherePoint,
    y: &SpherePoint,
    z: &SpherePoint,
    t: f64,
    tol: &Tolerances,
) -> Result<IdentityReport> {
    require_generic(z, "z")?;
    let a = left_inner(x, y);
    let az = z.transform(&a);
    require_generic(&az, "L(x,y) z")?;
    let lhs = az.power(t)?;
    let rhs = z.power(t)?.transform(&a);
    Ok(IdentityReport {
        name: "second_al",
        residual: lhs.dist(&rhs),
        predicted_holds: true,
        tolerance: tol.eps_res,
        witness: Witness::points(&[x, y, z]).with_scalars(&[t]),
    })
}

/// The operator limit of `L_{x^t}` as `x^t` approaches the antipode along
/// the power curve: `(2 P_{x_perp} - I) J`, which is never `-I` (that is the
/// discontinuity of the right translations).
pub fn limit_right_translation(x: &SpherePoint) -> Result<Operator> {
    require_generic(x, "x")?;
    let u = x.vec().perp().normalized()?;
    Ok(reflection_j(&u))
}

/// Gram determinant of `{x_perp, y_perp}`; rank below 2 (within tolerance)
/// means `x`, `y`, `e0` are coplanar with the origin.
pub fn coplanarity_gram(x: &SpherePoint, y: &SpherePoint) -> f64 {
    let (xp, yp) = (x.vec().perp(), y.vec().perp());
    inner(&xp, &xp) * inner(&yp, &yp) - inner(&xp, &yp).powi(2)
}

/// Compares the limiting right translation against the defined value
/// `R_y(-e0) = -y`. The two agree exactly when `x`, `y`, `e0` are coplanar
/// with the origin, and are predicted to differ otherwise — the
/// nonremovable discontinuity of `R_y` at `-e0`.
pub fn check_discontinuity(
    x: &SpherePoint,
    y: &SpherePoint,
    tol: &Tolerances,
) -> Result<IdentityReport> {
    let limit = limit_right_translation(x)?;
    let residual = (&limit.apply(y.vec()) - &y.negated().vec().clone()).norm();
    let coplanar = coplanarity_gram(x, y) <= tol.eps_res;
    Ok(IdentityReport {
        name: "discontinuity",
        residual,
        predicted_holds: coplanar,
        tolerance: tol.eps_res,
        witness: Witness::points(&[x, y]),
    })
}

/// Difference-quotient probe of the continuity of `R_y` away from `-e0`:
/// the largest ratio `|R_y(x') - R_y(x)| / |x' - x|` over random tangent
/// perturbations of size `h`. Finite, and scales like `1 / (1 + x0)`.
pub fn continuity_probe(
    x: &SpherePoint,
    y: &SpherePoint,
    h: f64,
    rng: &mut impl Rng,
) -> Result<f64> {
    require_generic(x, "x")?;
    if !(h > 0.0 && h < 0.1) {
        return Err(Error::Precondition("step size must lie in (0, 0.1)".into()));
    }
    let base = right_translate(y, x);
    let mut worst: f64 = 0.0;
    for _ in 0..8 {
        let mut g = HVector::from_dvector(nalgebra::DVector::from_fn(x.dim(), |_, _| {
            rng.sample::<f64, _>(rand_distr::StandardNormal)
        }));
        g = &g - &x.vec().scaled(inner(&g, x.vec()));
        if g.norm() < 1e-9 {
            continue;
        }
        let tangent = g.normalized()?;
        let moved = SpherePoint::new((&x.vec().clone() + &tangent.scaled(h)).normalized()?)?;
        let step = (&moved.vec().clone() - &x.vec().clone()).norm();
        if step == 0.0 {
            continue;
        }
        worst = worst.max(right_translate(y, &moved).dist(&base) / step);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{random_sphere_point, sample_rng};

    fn pt(coords: &[f64]) -> SpherePoint {
        SpherePoint::from_coords(coords).unwrap()
    }

    fn random_point(dim: usize, seed: u64, index: u64) -> SpherePoint {
        let tol = Tolerances::default();
        let v = random_sphere_point(dim, &mut sample_rng(seed, index), true, &tol).unwrap();
        SpherePoint::new(v).unwrap()
    }

    #[test]
    fn lpa_half_powers_compose() {
        let tol = Tolerances::default();
        let x = pt(&[0.5, 3f64.sqrt() / 2.0, 0.0]);
        let [form, sum] = check_lpa(&x, 0.5, 0.5, &tol).unwrap();
        assert!(form.predicted_holds && form.residual <= 1e-10);
        assert!(sum.predicted_holds && sum.residual <= 1e-10);
        assert!(form.passes() && sum.passes());
    }

    #[test]
    fn lpa_detects_antipodal_sum() {
        // x in V: x^2 = -e0, so the product is not a left translation.
        let tol = Tolerances::default();
        let x = pt(&[0.0, 1.0, 0.0]);
        let [form, sum] = check_lpa(&x, 1.0, 1.0, &tol).unwrap();
        assert!(form.predicted_holds && form.residual <= 1e-10);
        assert!(!sum.predicted_holds);
        assert!((sum.residual - 2.0).abs() <= 1e-12);
        assert!(sum.passes());
    }

    #[test]
    fn lpa_inverse_translations_cancel() {
        let tol = Tolerances::default();
        let x = pt(&[0.995, (1.0f64 - 0.995 * 0.995).sqrt(), 0.0]);
        let [form, sum] = check_lpa(&x, 3.0, -3.0, &tol).unwrap();
        assert!(form.residual <= 1e-10);
        assert!(sum.residual <= 1e-10 && sum.predicted_holds);
    }

    #[test]
    fn lpa_rejects_pole_powers() {
        let tol = Tolerances::default();
        let x = pt(&[0.0, 1.0, 0.0]);
        // x^2 = -e0 is not a valid power operand here.
        assert!(matches!(
            check_lpa(&x, 2.0, 1.0, &tol),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn left_alternative_dichotomy() {
        let tol = Tolerances::default();
        let on_v = check_left_alternative(&pt(&[0.0, 1.0, 0.0]), &tol).unwrap();
        assert!(!on_v.predicted_holds);
        assert!((on_v.residual - 2.0).abs() <= 1e-12);
        assert!(on_v.passes());

        let off_v = check_left_alternative(&pt(&[0.6, 0.8, 0.0]), &tol).unwrap();
        assert!(off_v.predicted_holds && off_v.residual <= 1e-10);

        let antipode = check_left_alternative(&SpherePoint::antipode(3), &tol).unwrap();
        assert!(antipode.predicted_holds && antipode.residual <= 1e-12);

        assert!(check_left_alternative(&pt(&[0.0, 1.0]), &tol).is_err());
    }

    #[test]
    fn lpa2_commutes_but_does_not_collapse() {
        let tol = Tolerances::default();
        let x = pt(&[0.5, 3f64.sqrt() / 2.0, 0.0]);
        let [commute, collapse] = check_lpa2(&x, &tol).unwrap();
        assert!(commute.residual <= 1e-12 && commute.predicted_holds);
        assert!(collapse.residual > 0.1 && !collapse.predicted_holds);
        assert!(commute.passes() && collapse.passes());
    }

    #[test]
    fn lpa2_collapses_on_the_circle() {
        let tol = Tolerances::default();
        let [commute, collapse] = check_lpa2(&pt(&[0.0, 1.0]), &tol).unwrap();
        assert!(commute.residual <= 1e-12);
        assert!(collapse.predicted_holds && collapse.residual <= 1e-12);
    }

    #[test]
    fn bol_holds_off_the_exception_set() {
        let tol = Tolerances::default();
        for dim in 3..=8 {
            for i in 0..60 {
                let x = random_point(dim, 200, i);
                let y = random_point(dim, 201, i);
                if bol_exception(&x, &y, &tol) {
                    continue;
                }
                let report = check_bol(&x, &y, &tol);
                assert!(report.predicted_holds && report.residual <= 1e-9);
            }
        }
    }

    #[test]
    fn bol_fails_at_the_antipode_witness() {
        let tol = Tolerances::default();
        let x = pt(&[0.0, 1.0, 0.0]);
        let y = SpherePoint::antipode(3);
        let report = check_bol(&x, &y, &tol);
        assert!(!report.predicted_holds);
        assert!((report.residual - 2.0).abs() <= 1e-12);
        assert!(report.passes());

        // The two sides act oppositely on e2.
        let lx = x.left_translation();
        let lhs = &(&lx * &y.left_translation()) * &lx;
        let rhs = x.odot(&y.odot(&x)).left_translation();
        let e2 = HVector::basis(3, 2);
        assert!((&lhs.apply(&e2) + &e2).norm() <= 1e-12);
        assert!((&rhs.apply(&e2) - &e2).norm() <= 1e-12);
    }

    #[test]
    fn bol_holds_on_the_circle() {
        let tol = Tolerances::default();
        for i in 0..30 {
            let x = random_point(2, 202, i);
            let y = random_point(2, 203, i);
            let report = check_bol(&x, &y, &tol);
            assert!(report.predicted_holds && report.residual <= 1e-12);
        }
    }

    #[test]
    fn solution_set_examples() {
        let tol = Tolerances::default();
        let a = pt(&[0.0, 1.0, 0.0]);
        assert!(solution_set_membership(&a, &SpherePoint::identity(3), &tol).unwrap());
        assert!(solution_set_membership(&a, &pt(&[0.0, 0.0, 1.0]), &tol).unwrap());
        assert!(!solution_set_membership(&a, &pt(&[0.0, 1.0, 0.0]), &tol).unwrap());
    }

    #[test]
    fn solution_dimension_counts() {
        let tol = Tolerances::default();
        let a3 = pt(&[0.0, 1.0, 0.0]);
        assert_eq!(count_solution_dimension(&a3, &tol).unwrap(), 1);
        let members = solution_set_members(&a3).unwrap();
        assert!(members
            .iter()
            .any(|m| m.dist(&SpherePoint::identity(3)) <= 1e-12));
        assert!(members.iter().any(|m| m.dist(&pt(&[0.0, 0.0, 1.0])) <= 1e-12));

        let mut c = [0.0; 5];
        c[0] = 0.6;
        c[1] = 0.8;
        assert_eq!(count_solution_dimension(&pt(&c), &tol).unwrap(), 3);

        // On the circle the solution is unique.
        assert_eq!(count_solution_dimension(&pt(&[0.6, 0.8]), &tol).unwrap(), 0);
    }

    #[test]
    fn trans_ident_sweep() {
        let tol = Tolerances::default();
        let e0 = SpherePoint::identity(3);
        let y = random_point(3, 204, 0);
        let z = random_point(3, 205, 0);
        assert!(check_trans_ident(&e0, &y, &z, &tol).residual <= 1e-12);
        assert!(check_trans_ident(&y, &z, &z, &tol).residual <= 1e-12);
        for dim in 3..=8 {
            for i in 0..60 {
                let x = random_point(dim, 206, i);
                let y = random_point(dim, 207, i);
                let z = random_point(dim, 208, i);
                let report = check_trans_ident(&x, &y, &z, &tol);
                assert!(report.residual <= 1e-9 && report.passes());
            }
        }
    }

    #[test]
    fn second_al_sweep() {
        let tol = Tolerances::default();
        let x = random_point(4, 209, 0);
        let y = random_point(4, 210, 0);
        let z = random_point(4, 211, 0);
        assert!(check_second_al(&x, &y, &z, 1.0, &tol).unwrap().residual <= 1e-12);
        assert!(check_second_al(&x, &y, &z, -1.0, &tol).unwrap().residual <= 1e-12);
        for i in 0..60 {
            let x = random_point(5, 212, i);
            let y = random_point(5, 213, i);
            let z = random_point(5, 214, i);
            let t = rand::Rng::random_range(&mut sample_rng(215, i), -3.0..3.0);
            let report = check_second_al(&x, &y, &z, t, &tol).unwrap();
            assert!(report.residual <= 1e-9, "t = {t}: {}", report.residual);
        }
    }

    #[test]
    fn limit_operator_examples() {
        let x = pt(&[0.0, 1.0, 0.0]);
        let limit = limit_right_translation(&x).unwrap();
        // In the plane of x the limit reflects to the antipodal value -y;
        // orthogonal to it the sign flips twice.
        assert!((&limit.apply(&HVector::basis(3, 1)) + &HVector::basis(3, 1)).norm() <= 1e-15);
        assert!((&limit.apply(&HVector::basis(3, 2)) - &HVector::basis(3, 2)).norm() <= 1e-15);

        // Never -I in dimension >= 3.
        for i in 0..30 {
            let x = random_point(3, 216, i);
            let limit = limit_right_translation(&x).unwrap();
            let minus_i = Operator::identity(3).scaled(-1.0);
            assert!(limit.max_norm_diff(&minus_i) > 0.5);
        }
    }

    #[test]
    fn limit_is_approached_along_powers() {
        let x = pt(&[0.0, 1.0, 0.0]); // arccos x0 = pi/2, so t -> 2.
        let limit = limit_right_translation(&x).unwrap();
        let mut last = f64::INFINITY;
        for t in [1.9, 1.99, 1.999] {
            let lt = x.power(t).unwrap().left_translation();
            let gap = lt.max_norm_diff(&limit);
            assert!(gap < last);
            last = gap;
        }
        assert!(last < 1e-2);
    }

    #[test]
    fn discontinuity_dichotomy() {
        let tol = Tolerances::default();
        let x = pt(&[0.0, 1.0, 0.0]);
        let noncoplanar = check_discontinuity(&x, &pt(&[0.0, 0.0, 1.0]), &tol).unwrap();
        assert!(!noncoplanar.predicted_holds);
        assert!((noncoplanar.residual - 2.0).abs() <= 1e-12);
        assert!(noncoplanar.passes());

        let coplanar = check_discontinuity(&x, &pt(&[0.6, 0.8, 0.0]), &tol).unwrap();
        assert!(coplanar.predicted_holds && coplanar.residual <= 1e-9);

        for i in 0..20 {
            let x = random_point(2, 217, i);
            let y = random_point(2, 218, i);
            let r = check_discontinuity(&x, &y, &tol).unwrap();
            assert!(r.predicted_holds && r.residual <= 1e-9);
        }
    }

    #[test]
    fn continuity_probe_bounds() {
        let near_identity = pt(&[(1.0f64 - 1e-8f64).min(1.0), 1e-4, 0.0]);
        let y = pt(&[0.6, 0.8, 0.0]);
        let r = continuity_probe(&near_identity, &y, 1e-4, &mut sample_rng(219, 0)).unwrap();
        assert!(r <= 3.0, "near-identity ratio {r}");

        // 1 + x0 = 0.1.
        let x0 = -0.9;
        let deep = pt(&[x0, (1.0 - x0 * x0).sqrt(), 0.0]);
        let r = continuity_probe(&deep, &y, 1e-5, &mut sample_rng(219, 1)).unwrap();
        assert!(r.is_finite() && r <= 100.0, "deep ratio {r}");

        let r1 = continuity_probe(&deep, &y, 1e-5, &mut sample_rng(219, 2)).unwrap();
        let r2 = continuity_probe(&deep, &y, 5e-6, &mut sample_rng(219, 2)).unwrap();
        assert!((r1 - r2).abs() / r1 <= 0.1, "first-order stability {r1} vs {r2}");
    }

    #[test]
    fn kikkawa_inner_mapping_identities() {
        // L(x,y)^(-1) = L(x^(-1), x⊙y) = L(y,x), and L(x,y)(y⊙x) = x⊙y.
        let tol = Tolerances::default();
        for i in 0..40 {
            let x = random_point(4, 220, i);
            let y = random_point(4, 221, i);
            let l = left_inner(&x, &y);
            let lt = l.transpose();
            assert!(lt.max_norm_diff(&left_inner(&x.inverse(), &x.odot(&y))) <= tol.eps_res);
            assert!(lt.max_norm_diff(&left_inner(&y, &x)) <= tol.eps_res);
            assert!(y.odot(&x).transform(&l).dist(&x.odot(&y)) <= tol.eps_res);
        }
    }
}
