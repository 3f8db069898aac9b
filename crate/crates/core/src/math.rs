//! Small-matrix helpers shared across modules.
//!
//! Deformation gradients are 2x2 matrices with rows indexed by the
//! deformation component and columns by the spatial derivative direction.
//! Second gradients are rank-3 tensors stored as one 2x2 matrix of second
//! derivatives per deformation component.

use nalgebra::{Matrix2, Vector2};
use rand::Rng;

pub type Mat2 = Matrix2<f64>;
pub type Vec2 = Vector2<f64>;

/// Second deformation gradient: `comp[a][(b, c)] = d2 y_a / dx_b dx_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor3 {
    pub comp: [Mat2; 2],
}

impl Tensor3 {
    pub fn zeros() -> Self {
        Tensor3 { comp: [Mat2::zeros(); 2] }
    }

    /// Squared Frobenius norm over all eight entries.
    pub fn norm_squared(&self) -> f64 {
        self.comp[0].norm_squared() + self.comp[1].norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Full contraction with another rank-3 tensor.
    pub fn contract(&self, other: &Tensor3) -> f64 {
        self.comp[0].dot(&other.comp[0]) + self.comp[1].dot(&other.comp[1])
    }

    pub fn scale(&self, s: f64) -> Tensor3 {
        Tensor3 { comp: [self.comp[0] * s, self.comp[1] * s] }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        Tensor3 { comp: [self.comp[0] - other.comp[0], self.comp[1] - other.comp[1]] }
    }

    /// Rotation acting on the deformation-component index:
    /// `(Q g)_{ajk} = Q_{ab} g_{bjk}`.
    pub fn rotate_first(&self, q: &Mat2) -> Tensor3 {
        Tensor3 {
            comp: [
                self.comp[0] * q[(0, 0)] + self.comp[1] * q[(0, 1)],
                self.comp[0] * q[(1, 0)] + self.comp[1] * q[(1, 1)],
            ],
        }
    }
}

/// Rotation matrix for a given angle.
pub fn rotation(angle: f64) -> Mat2 {
    let (s, c) = angle.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// Uniformly random rotation.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Mat2 {
    rotation(rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random matrix with entries in [-bound, bound].
pub fn random_matrix<R: Rng>(rng: &mut R, bound: f64) -> Mat2 {
    Mat2::new(
        rng.gen_range(-bound..bound),
        rng.gen_range(-bound..bound),
        rng.gen_range(-bound..bound),
        rng.gen_range(-bound..bound),
    )
}

/// Random orientation-preserving matrix built as R1 * diag(s1, s2) * R2
/// with stretches in [smin, smax]; determinant is s1*s2 > 0.
pub fn random_gl_plus<R: Rng>(rng: &mut R, smin: f64, smax: f64) -> Mat2 {
    let r1 = random_rotation(rng);
    let r2 = random_rotation(rng);
    let s1 = rng.gen_range(smin..smax);
    let s2 = rng.gen_range(smin..smax);
    r1 * Mat2::new(s1, 0.0, 0.0, s2) * r2
}

/// Random rank-3 tensor with entries in [-bound, bound].
pub fn random_tensor3<R: Rng>(rng: &mut R, bound: f64) -> Tensor3 {
    Tensor3 { comp: [random_matrix(rng, bound), random_matrix(rng, bound)] }
}

/// Relative difference with a floor so near-zero pairs compare absolutely.
pub fn rel_err(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}
