//! Ambient linear algebra in `R^dim`.
//!
//! Vectors split as `x = x0 e0 + x_perp` where `e0 = (1, 0, ..., 0)` and
//! `V = e0^perp` is spanned by the remaining coordinates. This module holds
//! the involution `J : x -> x0 e0 - x_perp`, rank-one projectors
//! `P_a = a a^T / |a|^2`, orthogonality predicates, and the seeded random
//! generators used by verification sweeps.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Numeric slack thresholds, threaded explicitly through predicates and
/// checkers so individual laws can tighten or loosen them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Unit-norm slack for points on the sphere.
    pub eps_unit: f64,
    /// Classification radius around the poles `±e0`.
    pub eps_pole: f64,
    /// Matrix-identity slack (orthogonality, projector laws).
    pub eps_op: f64,
    /// Pass threshold for identity residuals.
    pub eps_res: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_unit: 1e-12,
            eps_pole: 1e-10,
            eps_op: 1e-10,
            eps_res: 1e-9,
        }
    }
}

/// Dense vector in the ambient space. Index 0 is the `e0` component.
#[derive(Debug, Clone, PartialEq)]
pub struct HVector(DVector<f64>);

impl HVector {
    /// Wraps raw coordinates.
    ///
    /// Panics if fewer than two coordinates are given or any entry is not
    /// finite; those are construction bugs, not recoverable conditions.
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(coords.len() >= 2, "ambient dimension must be at least 2");
        assert!(
            coords.iter().all(|c| c.is_finite()),
            "coordinates must be finite"
        );
        Self(DVector::from_vec(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Self::new(coords.to_vec())
    }

    /// The distinguished unit vector `e0 = (1, 0, ..., 0)`.
    pub fn e0(dim: usize) -> Self {
        Self::basis(dim, 0)
    }

    /// The `k`-th standard basis vector.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(dim >= 2 && k < dim);
        let mut v = DVector::zeros(dim);
        v[k] = 1.0;
        Self(v)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 2);
        Self(DVector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The `e0` component `x0`.
    pub fn x0(&self) -> f64 {
        self.0[0]
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    /// The component in `V`, embedded back into the ambient space with a
    /// zero `e0` coordinate.
    pub fn perp(&self) -> HVector {
        let mut v = self.0.clone();
        v[0] = 0.0;
        Self(v)
    }

    pub fn perp_norm(&self) -> f64 {
        self.0.rows_range(1..).norm()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scaled(&self, c: f64) -> HVector {
        Self(&self.0 * c)
    }

    /// Returns `self / |self|`, or an error for (near-)zero input.
    pub fn normalized(&self) -> Result<HVector> {
        let n = self.norm();
        if n <= f64::EPSILON {
            return Err(Error::Degenerate("cannot normalize a zero vector"));
        }
        Ok(Self(&self.0 / n))
    }

    pub(crate) fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub(crate) fn from_dvector(v: DVector<f64>) -> Self {
        Self(v)
    }
}

impl std::ops::Add for &HVector {
    type Output = HVector;
    fn add(self, rhs: &HVector) -> HVector {
        HVector(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &HVector {
    type Output = HVector;
    fn sub(self, rhs: &HVector) -> HVector {
        HVector(&self.0 - &rhs.0)
    }
}

impl std::ops::Neg for &HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        HVector(-&self.0)
    }
}

/// The inner product `<x, y>`. Panics on dimension mismatch.
pub fn inner(x: &HVector, y: &HVector) -> f64 {
    assert_eq!(x.dim(), y.dim(), "inner: dimension mismatch");
    x.0.dot(&y.0)
}

/// The involution `J x = x0 e0 - x_perp`. `J` is symmetric, orthogonal,
/// fixes `e0`, and squares to the identity.
pub fn apply_j(x: &HVector) -> HVector {
    let mut v = -&x.0;
    v[0] = -v[0];
    HVector(v)
}

/// Dense operator on the ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator(DMatrix<f64>);

impl Operator {
    pub fn from_matrix(m: DMatrix<f64>) -> Self {
        assert!(m.is_square() && m.nrows() >= 2);
        assert!(m.iter().all(|c| c.is_finite()), "entries must be finite");
        Self(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// The matrix of `J` (diagonal `1, -1, ..., -1`).
    pub fn j(dim: usize) -> Self {
        Self(DMatrix::from_fn(dim, dim, |i, j| {
            if i != j {
                0.0
            } else if i == 0 {
                1.0
            } else {
                -1.0
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn transpose(&self) -> Operator {
        Self(self.0.transpose())
    }

    pub fn scaled(&self, c: f64) -> Operator {
        Self(&self.0 * c)
    }

    pub fn apply(&self, x: &HVector) -> HVector {
        assert_eq!(self.dim(), x.dim(), "apply: dimension mismatch");
        HVector(&self.0 * x.as_dvector())
    }

    /// Entrywise max-norm `max |a_ij|`, the residual norm used throughout.
    pub fn max_norm(&self) -> f64 {
        self.0.amax()
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_norm_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim());
        (&self.0 - &other.0).amax()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "compose: dimension mismatch");
        Operator(&self.0 * &rhs.0)
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator(&self.0 - &rhs.0)
    }
}

/// The orthogonal projection `P_a = a a^T / |a|^2` onto the line through `a`.
pub fn projector(a: &HVector) -> Result<Operator> {
    let n2 = inner(a, a);
    if n2 <= f64::EPSILON {
        return Err(Error::Degenerate("projector of the zero vector"));
    }
    let m = a.as_dvector() * a.as_dvector().transpose() / n2;
    Ok(Operator(m))
}

/// Whether `A^T A = I` within `eps`, and additionally `A e0 = e0` when
/// `fix_e0` is set (membership in `O(V)` under the embedding `A e0 = e0`).
pub fn is_orthogonal(a: &Operator, fix_e0: bool, eps: f64) -> bool {
    orthogonality_defect(a) <= eps && (!fix_e0 || e0_defect(a) <= eps)
}

/// `max |(A^T A - I)_ij|`.
pub fn orthogonality_defect(a: &Operator) -> f64 {
    let n = a.dim();
    (a.0.transpose() * &a.0 - DMatrix::<f64>::identity(n, n)).amax()
}

/// `|A e0 - e0|`.
pub fn e0_defect(a: &Operator) -> f64 {
    let e0 = HVector::e0(a.dim());
    (&a.apply(&e0) - &e0).norm()
}

/// Deterministic generator for sample `index` of a campaign keyed by `seed`.
///
/// ChaCha8 with the seed in the first eight key bytes (little endian) and
/// the sample index as the stream number, so batch drivers may draw samples
/// in any order, or in parallel, and reproduce the same points bit for bit.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

fn gaussian_vector(dim: usize, rng: &mut impl Rng) -> DVector<f64> {
    DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// A standard-normal vector normalized to unit length.
///
/// With `exclude_pole` set, resamples until `1 + x0` clears a guard band
/// a thousand times wider than the pole classification radius, so sweeps
/// never probe the ill-conditioned collar around `-e0`.
pub fn random_sphere_point(
    dim: usize,
    rng: &mut impl Rng,
    exclude_pole: bool,
    tol: &Tolerances,
) -> Result<HVector> {
    assert!(dim >= 2, "ambient dimension must be at least 2");
    const MAX_DRAWS: usize = 1_000_000;
    for _ in 0..MAX_DRAWS {
        let g = gaussian_vector(dim, rng);
        let n = g.norm();
        if n < 1e-100 {
            continue;
        }
        let v = g / n;
        if exclude_pole && 1.0 + v[0] <= tol.eps_pole * 1e3 {
            continue;
        }
        return Ok(HVector(v));
    }
    Err(Error::GeneratorExhausted { draws: MAX_DRAWS })
}

/// A random element of `O(V)`: `A e0 = e0` exactly and the lower-right
/// block is a Haar-distributed orthogonal matrix (QR of a Gaussian matrix
/// with the R diagonal sign-fixed).
pub fn random_orthogonal_v(dim: usize, rng: &mut impl Rng) -> Operator {
    assert!(dim >= 2);
    let block = haar_orthogonal(dim - 1, rng);
    let mut m = DMatrix::zeros(dim, dim);
    m[(0, 0)] = 1.0;
    m.view_mut((1, 1), (dim - 1, dim - 1)).copy_from(&block);
    Operator(m)
}

/// A Haar-distributed random element of the full orthogonal group `O(dim)`.
pub fn random_orthogonal_h(dim: usize, rng: &mut impl Rng) -> Operator {
    assert!(dim >= 2);
    Operator(haar_orthogonal(dim, rng))
}

fn haar_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    // Sign-fix the R diagonal to make the factorization unique (Haar).
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}
