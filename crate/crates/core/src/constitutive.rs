//! Constitutive laws: stored energy densities, viscous dissipation, the
//! deformation-dependent growth speed, and the two-material switch.
//!
//! Concrete choices (all with analytic first derivatives):
//!
//! * elastic energy `W(F) = (c_w/4) |F^T F - I|^2`, quartic growth,
//!   frame indifferent and isotropic, minimized at the identity;
//! * orientation penalty `VJ(F) = c_j (det F)^{-q}`, blowing up as the
//!   determinant degenerates;
//! * second-gradient energy `H(G) = (c_h/p)(eps_h^2 + |G|^2)^{p/2}`,
//!   convex with p-growth;
//! * dissipation `R(F, Fdot) = (c_r/4)|Cdot|^2` with
//!   `Cdot = Fdot^T F + F^T Fdot`, i.e. a constant multiple of the
//!   identity viscosity tensor acting on symmetric rates;
//! * growth speed `gamma(F) = gamma_min + (gamma_max - gamma_min)
//!   exp(-kappa |F^T F - I|^2)`, globally pinched between the two bounds;
//!   `kappa = 0` collapses it to the constant `gamma_max`;
//! * material switch `h(sigma) = 1` for `sigma <= 0` and `delta` for
//!   `sigma > 0`, a sharp unsmoothed transition.

use crate::error::{Error, Result};
use crate::math::{Mat2, Tensor3};
use serde::{Deserialize, Serialize};

/// Material and growth-law parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct MaterialParams {
    /// Growth exponent of the elastic and second-gradient terms.
    pub p: f64,
    /// Determinant exponent of the orientation penalty.
    pub q: f64,
    pub c_w: f64,
    pub c_j: f64,
    pub c_h: f64,
    pub c_r: f64,
    /// Compliance of the fictitious medium, in (0, 1).
    pub delta: f64,
    /// Constant speed used by decoupled/reference eikonal checks.
    pub gamma0: f64,
    /// Sensitivity of the growth speed to elastic strain.
    pub kappa: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    /// Smoothing offset inside the second-gradient energy; zero keeps the
    /// plain p-norm density.
    pub eps_h: f64,
}

impl Default for MaterialParams {
    fn default() -> Self {
        MaterialParams {
            p: 4.0,
            q: 5.0,
            c_w: 1.0,
            c_j: 1.0,
            c_h: 1e-3,
            c_r: 1.0,
            delta: 1e-3,
            gamma0: 1.0,
            kappa: 0.0,
            gamma_min: 0.5,
            gamma_max: 1.0,
            eps_h: 0.0,
        }
    }
}

/// Spatial dimension; fixed by the stencils and the constitutive
/// exponent gates.
pub const DIM: f64 = 2.0;

impl MaterialParams {
    /// Checks the hypothesis gates on the exponents and parameters.
    pub fn validate(&self) -> Result<()> {
        if self.p <= DIM {
            return Err(Error::Config(format!(
                "hypothesis (H1) violated: growth exponent p = {} must exceed d = {}",
                self.p, DIM
            )));
        }
        let q_min = self.p * DIM / (self.p - DIM);
        if self.q <= q_min {
            return Err(Error::Config(format!(
                "hypothesis (H6) violated: determinant exponent q = {} must exceed p*d/(p-d) = {}",
                self.q, q_min
            )));
        }
        for (name, v) in [("c_w", self.c_w), ("c_j", self.c_j), ("c_h", self.c_h), ("c_r", self.c_r)] {
            if v <= 0.0 {
                return Err(Error::Config(format!("modulus {name} must be positive, got {v}")));
            }
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!(
                "fictitious compliance delta = {} must lie in (0, 1)",
                self.delta
            )));
        }
        if !(self.gamma_min > 0.0 && self.gamma_min <= self.gamma_max) {
            return Err(Error::Config(
                "hypothesis (H14) violated: require 0 < c_gamma <= C_gamma".into(),
            ));
        }
        if !(self.gamma0 >= self.gamma_min && self.gamma0 <= self.gamma_max) {
            return Err(Error::Config(format!(
                "gamma0 = {} must lie in [c_gamma, C_gamma] = [{}, {}]",
                self.gamma0, self.gamma_min, self.gamma_max
            )));
        }
        if self.kappa < 0.0 {
            return Err(Error::Config(format!("kappa = {} must be nonnegative", self.kappa)));
        }
        if self.eps_h < 0.0 {
            return Err(Error::Config(format!("eps_h = {} must be nonnegative", self.eps_h)));
        }
        Ok(())
    }

    /// Elastic energy density.
    #[inline]
    pub fn w(&self, f: &Mat2) -> f64 {
        let e = f.transpose() * f - Mat2::identity();
        0.25 * self.c_w * e.norm_squared()
    }

    /// Derivative of [`Self::w`] with respect to `F`.
    #[inline]
    pub fn dw(&self, f: &Mat2) -> Mat2 {
        let e = f.transpose() * f - Mat2::identity();
        f * e * self.c_w
    }

    /// Orientation penalty; finite only for positive determinants.
    #[inline]
    pub fn vj(&self, f: &Mat2) -> Result<f64> {
        let det = f.determinant();
        if det <= 0.0 {
            return Err(Error::Inadmissible(format!("orientation violated: det F = {det}")));
        }
        Ok(self.vj_from_det(det))
    }

    /// `VJ` given a precomputed positive determinant.
    #[inline]
    pub fn vj_from_det(&self, det: f64) -> f64 {
        self.c_j * det.powf(-self.q)
    }

    /// Derivative of [`Self::vj`].
    #[inline]
    pub fn dvj(&self, f: &Mat2) -> Result<Mat2> {
        let det = f.determinant();
        if det <= 0.0 {
            return Err(Error::Inadmissible(format!("orientation violated: det F = {det}")));
        }
        Ok(self.dvj_unchecked(f, det))
    }

    /// Derivative of `VJ` given a precomputed positive determinant:
    /// `-q c_j det^{-q} F^{-T}`.
    #[inline]
    pub fn dvj_unchecked(&self, f: &Mat2, det: f64) -> Mat2 {
        let scale = -self.q * self.c_j * det.powf(-self.q) / det;
        // det * F^{-T} is the cofactor matrix; fold the 1/det into scale.
        let cof = Mat2::new(f[(1, 1)], -f[(1, 0)], -f[(0, 1)], f[(0, 0)]);
        cof * scale
    }

    /// Second-gradient energy density.
    #[inline]
    pub fn h2nd(&self, g: &Tensor3) -> f64 {
        let s = self.eps_h * self.eps_h + g.norm_squared();
        self.c_h / self.p * s.powf(0.5 * self.p)
    }

    /// Derivative of [`Self::h2nd`].
    #[inline]
    pub fn dh(&self, g: &Tensor3) -> Tensor3 {
        let s = self.eps_h * self.eps_h + g.norm_squared();
        g.scale(self.c_h * s.powf(0.5 * self.p - 1.0))
    }

    /// Viscous dissipation density, quadratic in the rate of the right
    /// Cauchy-Green tensor.
    #[inline]
    pub fn r_diss(&self, f: &Mat2, fdot: &Mat2) -> f64 {
        let cdot = fdot.transpose() * f + f.transpose() * fdot;
        0.25 * self.c_r * cdot.norm_squared()
    }

    /// Derivative of [`Self::r_diss`] in the rate argument: `c_r F Cdot`.
    #[inline]
    pub fn dr_dfdot(&self, f: &Mat2, fdot: &Mat2) -> Mat2 {
        let cdot = fdot.transpose() * f + f.transpose() * fdot;
        f * cdot * self.c_r
    }

    /// Deformation-dependent growth speed, pinched in
    /// `[gamma_min, gamma_max]`.
    #[inline]
    pub fn gamma(&self, f: &Mat2) -> Result<f64> {
        if f.determinant() <= 0.0 {
            return Err(Error::Inadmissible(format!(
                "orientation violated in growth speed: det F = {}",
                f.determinant()
            )));
        }
        let e = f.transpose() * f - Mat2::identity();
        Ok(self.gamma_min + (self.gamma_max - self.gamma_min) * (-self.kappa * e.norm_squared()).exp())
    }

    /// Two-material switch: 1 in the accreted body (`sigma <= 0`), the
    /// compliance `delta` in the fictitious medium (`sigma > 0`).
    #[inline]
    pub fn h_switch(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            1.0
        } else {
            self.delta
        }
    }

    /// Explicit components of the viscosity tensor: the symmetrizer on
    /// rate space scaled by `c_r / 2`.
    pub fn visc_tensor(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let id = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        0.5 * self.c_r * 0.5 * (id(i, k) * id(j, l) + id(i, l) * id(j, k))
    }
}
