//! Difference stencils on the uniform grid, with exact adjoints.
//!
//! First derivatives are second-order central in the interior and
//! second-order one-sided on the container boundary; second derivatives
//! use the standard 3-point interior stencil and a 4-point one-sided
//! closure. Mixed derivatives are compositions of the two first-derivative
//! operators, which commute exactly (they act on different grid axes).
//! Every operator comes with its transpose, applied by scattering the
//! same coefficients; energy gradients assembled through these adjoints
//! are exact derivatives of the discrete energy.
//!
//! All stencils reproduce affine fields exactly: gradients of affine
//! fields are the exact constant matrix and their second derivatives
//! vanish identically.

use crate::geometry::Grid;
use crate::math::{Mat2, Tensor3, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// First-derivative coefficients at line position `k` of `n`, as
/// (offset, coefficient) pairs scaled by `1/(2h)` at application time.
#[inline]
fn d1_stencil(k: usize, n: usize) -> [(isize, f64); 3] {
    if k == 0 {
        [(0, -3.0), (1, 4.0), (2, -1.0)]
    } else if k == n - 1 {
        [(0, 3.0), (-1, -4.0), (-2, 1.0)]
    } else {
        [(-1, -1.0), (1, 1.0), (0, 0.0)]
    }
}

/// Second-derivative coefficients at line position `k` of `n`, scaled by
/// `1/h^2` at application time.
#[inline]
fn d2_stencil(k: usize, n: usize) -> [(isize, f64); 4] {
    if k == 0 {
        [(0, 2.0), (1, -5.0), (2, 4.0), (3, -1.0)]
    } else if k == n - 1 {
        [(0, 2.0), (-1, -5.0), (-2, 4.0), (-3, -1.0)]
    } else {
        [(-1, 1.0), (0, -2.0), (1, 1.0), (2, 0.0)]
    }
}

struct AxisGeom {
    n_along: usize,
    n_across: usize,
    stride_along: usize,
    stride_across: usize,
}

fn axis_geom(grid: &Grid, axis: Axis) -> AxisGeom {
    match axis {
        Axis::X => AxisGeom {
            n_along: grid.nx,
            n_across: grid.ny,
            stride_along: 1,
            stride_across: grid.nx,
        },
        Axis::Y => AxisGeom {
            n_along: grid.ny,
            n_across: grid.nx,
            stride_along: grid.nx,
            stride_across: 1,
        },
    }
}

/// First derivative of a scalar field along an axis.
pub fn d1(u: &[f64], grid: &Grid, axis: Axis, out: &mut [f64]) {
    let g = axis_geom(grid, axis);
    let scale = 1.0 / (2.0 * grid.h);
    for line in 0..g.n_across {
        let base = line * g.stride_across;
        for k in 0..g.n_along {
            let at = base + k * g.stride_along;
            let mut acc = 0.0;
            for (off, c) in d1_stencil(k, g.n_along) {
                if c != 0.0 {
                    let src = (at as isize + off * g.stride_along as isize) as usize;
                    acc += c * u[src];
                }
            }
            out[at] = acc * scale;
        }
    }
}

/// Transpose of [`d1`]: scatters with the same coefficients.
pub fn d1_transpose(v: &[f64], grid: &Grid, axis: Axis, out: &mut [f64]) {
    let g = axis_geom(grid, axis);
    let scale = 1.0 / (2.0 * grid.h);
    out.fill(0.0);
    for line in 0..g.n_across {
        let base = line * g.stride_across;
        for k in 0..g.n_along {
            let at = base + k * g.stride_along;
            let w = v[at] * scale;
            if w == 0.0 {
                continue;
            }
            for (off, c) in d1_stencil(k, g.n_along) {
                if c != 0.0 {
                    let dst = (at as isize + off * g.stride_along as isize) as usize;
                    out[dst] += c * w;
                }
            }
        }
    }
}

/// Second derivative of a scalar field along an axis.
pub fn d2(u: &[f64], grid: &Grid, axis: Axis, out: &mut [f64]) {
    let g = axis_geom(grid, axis);
    let scale = 1.0 / (grid.h * grid.h);
    for line in 0..g.n_across {
        let base = line * g.stride_across;
        for k in 0..g.n_along {
            let at = base + k * g.stride_along;
            let mut acc = 0.0;
            for (off, c) in d2_stencil(k, g.n_along) {
                if c != 0.0 {
                    let src = (at as isize + off * g.stride_along as isize) as usize;
                    acc += c * u[src];
                }
            }
            out[at] = acc * scale;
        }
    }
}

/// Transpose of [`d2`].
pub fn d2_transpose(v: &[f64], grid: &Grid, axis: Axis, out: &mut [f64]) {
    let g = axis_geom(grid, axis);
    let scale = 1.0 / (grid.h * grid.h);
    out.fill(0.0);
    for line in 0..g.n_across {
        let base = line * g.stride_across;
        for k in 0..g.n_along {
            let at = base + k * g.stride_along;
            let w = v[at] * scale;
            if w == 0.0 {
                continue;
            }
            for (off, c) in d2_stencil(k, g.n_along) {
                if c != 0.0 {
                    let dst = (at as isize + off * g.stride_along as isize) as usize;
                    out[dst] += c * w;
                }
            }
        }
    }
}

/// Scratch buffers for repeated gradient/hessian evaluations.
#[derive(Debug, Clone)]
pub struct StencilScratch {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
}

impl StencilScratch {
    pub fn new(grid: &Grid) -> Self {
        let n = grid.node_count();
        StencilScratch { a: vec![0.0; n], b: vec![0.0; n], c: vec![0.0; n], d: vec![0.0; n] }
    }
}

/// Discrete deformation gradient: `out[n][(a, b)] = D_b y_a`.
pub fn gradient(y: &[Vec2], grid: &Grid, s: &mut StencilScratch, out: &mut [Mat2]) {
    for comp in 0..2 {
        for (n, v) in y.iter().enumerate() {
            s.a[n] = v[comp];
        }
        d1(&s.a, grid, Axis::X, &mut s.b);
        d1(&s.a, grid, Axis::Y, &mut s.c);
        for n in 0..y.len() {
            out[n][(comp, 0)] = s.b[n];
            out[n][(comp, 1)] = s.c[n];
        }
    }
}

/// Adjoint of [`gradient`]: accumulates `sum_b D_b^T p_{(a,b)}` into the
/// nodal force field. `p` should already carry any pointwise weights.
pub fn gradient_transpose_accumulate(
    p: &[Mat2],
    grid: &Grid,
    s: &mut StencilScratch,
    out: &mut [Vec2],
) {
    for comp in 0..2 {
        for (n, m) in p.iter().enumerate() {
            s.a[n] = m[(comp, 0)];
            s.b[n] = m[(comp, 1)];
        }
        d1_transpose(&s.a, grid, Axis::X, &mut s.c);
        d1_transpose(&s.b, grid, Axis::Y, &mut s.d);
        for n in 0..out.len() {
            out[n][comp] += s.c[n] + s.d[n];
        }
    }
}

/// Discrete second gradient: `out[n].comp[a][(b, c)] = D_b D_c y_a`, with
/// the mixed entry computed once (the axis operators commute) and stored
/// symmetrically.
pub fn hessian(y: &[Vec2], grid: &Grid, s: &mut StencilScratch, out: &mut [Tensor3]) {
    for comp in 0..2 {
        for (n, v) in y.iter().enumerate() {
            s.a[n] = v[comp];
        }
        d2(&s.a, grid, Axis::X, &mut s.b);
        d2(&s.a, grid, Axis::Y, &mut s.c);
        for n in 0..y.len() {
            out[n].comp[comp][(0, 0)] = s.b[n];
            out[n].comp[comp][(1, 1)] = s.c[n];
        }
        d1(&s.a, grid, Axis::Y, &mut s.b);
        d1(&s.b, grid, Axis::X, &mut s.c);
        for n in 0..y.len() {
            out[n].comp[comp][(0, 1)] = s.c[n];
            out[n].comp[comp][(1, 0)] = s.c[n];
        }
    }
}

/// Adjoint of [`hessian`]: accumulates the nodal forces of a rank-3
/// multiplier field (already pointwise-weighted).
pub fn hessian_transpose_accumulate(
    q: &[Tensor3],
    grid: &Grid,
    s: &mut StencilScratch,
    out: &mut [Vec2],
) {
    for comp in 0..2 {
        // Pure second derivatives.
        for (n, t) in q.iter().enumerate() {
            s.a[n] = t.comp[comp][(0, 0)];
            s.b[n] = t.comp[comp][(1, 1)];
        }
        d2_transpose(&s.a, grid, Axis::X, &mut s.c);
        d2_transpose(&s.b, grid, Axis::Y, &mut s.d);
        for n in 0..out.len() {
            out[n][comp] += s.c[n] + s.d[n];
        }
        // Mixed derivatives: forward map is D_x(D_y u) feeding both (0,1)
        // and (1,0); the adjoint is D_y^T(D_x^T (q01 + q10)).
        for (n, t) in q.iter().enumerate() {
            s.a[n] = t.comp[comp][(0, 1)] + t.comp[comp][(1, 0)];
        }
        d1_transpose(&s.a, grid, Axis::X, &mut s.b);
        d1_transpose(&s.b, grid, Axis::Y, &mut s.c);
        for n in 0..out.len() {
            out[n][comp] += s.c[n];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_grid, DomainSpec, Region};
    use proptest::prelude::*;

    fn test_grid(n: usize) -> Grid {
        let spec = DomainSpec {
            lx: 1.0,
            ly: 1.0,
            omega0: Region::disk(0.5, 0.5, 0.1),
            anchor: Region::disk(0.5, 0.5, 0.05),
            t_final: 0.25,
            gamma_min: 1.0,
            gamma_max: 1.0,
        };
        build_grid(&spec, n, n).unwrap()
    }

    fn eval_field(grid: &Grid, f: impl Fn(f64, f64) -> Vec2) -> Vec<Vec2> {
        (0..grid.node_count())
            .map(|n| {
                let p = grid.node_pos(n);
                f(p.x, p.y)
            })
            .collect()
    }

    #[test]
    fn gradient_exact_for_identity() {
        let grid = test_grid(17);
        let y = eval_field(&grid, |x, yv| Vec2::new(x, yv));
        let mut s = StencilScratch::new(&grid);
        let mut g = vec![Mat2::zeros(); grid.node_count()];
        gradient(&y, &grid, &mut s, &mut g);
        for m in &g {
            assert!((m - Mat2::identity()).norm() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn gradient_exact_for_affine(m00 in -2.0..2.0f64, m01 in -2.0..2.0f64,
                                     m10 in -2.0..2.0f64, m11 in -2.0..2.0f64,
                                     b0 in -1.0..1.0f64, b1 in -1.0..1.0f64) {
            let grid = test_grid(17);
            let m = Mat2::new(m00, m01, m10, m11);
            let y = eval_field(&grid, |x, yv| m * Vec2::new(x, yv) + Vec2::new(b0, b1));
            let mut s = StencilScratch::new(&grid);
            let mut g = vec![Mat2::zeros(); grid.node_count()];
            gradient(&y, &grid, &mut s, &mut g);
            let mut hs = vec![Tensor3::zeros(); grid.node_count()];
            hessian(&y, &grid, &mut s, &mut hs);
            for n in 0..grid.node_count() {
                prop_assert!((g[n] - m).norm() < 1e-11 * (1.0 + m.norm()));
                prop_assert!(hs[n].norm() < 1e-9);
            }
        }
    }

    #[test]
    fn gradient_second_order_on_smooth_field() {
        let grid = test_grid(65);
        let y = eval_field(&grid, |x, yv| Vec2::new(x.sin(), yv));
        let mut s = StencilScratch::new(&grid);
        let mut g = vec![Mat2::zeros(); grid.node_count()];
        gradient(&y, &grid, &mut s, &mut g);
        let mut max_err: f64 = 0.0;
        for n in 0..grid.node_count() {
            let p = grid.node_pos(n);
            let exact = Mat2::new(p.x.cos(), 0.0, 0.0, 1.0);
            max_err = max_err.max((g[n] - exact).norm());
        }
        assert!(max_err <= 10.0 * grid.h * grid.h, "max_err = {max_err}");
    }

    #[test]
    fn hessian_polynomial_exactness() {
        let grid = test_grid(33);
        let y = eval_field(&grid, |x, _| Vec2::new(x * x, 0.0));
        let mut s = StencilScratch::new(&grid);
        let mut hs = vec![Tensor3::zeros(); grid.node_count()];
        hessian(&y, &grid, &mut s, &mut hs);
        for n in 0..grid.node_count() {
            assert!((hs[n].comp[0][(0, 0)] - 2.0).abs() < 1e-10);
            assert!(hs[n].comp[1].norm() < 1e-10);
        }
    }

    #[test]
    fn hessian_second_order_on_smooth_field() {
        let grid = test_grid(65);
        let y = eval_field(&grid, |x, yv| Vec2::new(x.sin(), yv.cos()));
        let mut s = StencilScratch::new(&grid);
        let mut hs = vec![Tensor3::zeros(); grid.node_count()];
        hessian(&y, &grid, &mut s, &mut hs);
        let mut max_err: f64 = 0.0;
        for n in 0..grid.node_count() {
            let p = grid.node_pos(n);
            let mut exact = Tensor3::zeros();
            exact.comp[0][(0, 0)] = -p.x.sin();
            exact.comp[1][(1, 1)] = -p.y.cos();
            max_err = max_err.max(hs[n].sub(&exact).norm());
        }
        assert!(max_err <= 10.0 * grid.h * grid.h, "max_err = {max_err}");
    }

    #[test]
    fn adjoints_match_inner_products() {
        let grid = test_grid(17);
        let n = grid.node_count();
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut rand = || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng_state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let u: Vec<f64> = (0..n).map(|_| rand()).collect();
        let v: Vec<f64> = (0..n).map(|_| rand()).collect();
        for axis in [Axis::X, Axis::Y] {
            let mut du = vec![0.0; n];
            d1(&u, &grid, axis, &mut du);
            let mut dtv = vec![0.0; n];
            d1_transpose(&v, &grid, axis, &mut dtv);
            let lhs: f64 = du.iter().zip(&v).map(|(a, b)| a * b).sum();
            let rhs: f64 = u.iter().zip(&dtv).map(|(a, b)| a * b).sum();
            assert!((lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()));

            let mut d2u = vec![0.0; n];
            d2(&u, &grid, axis, &mut d2u);
            let mut d2tv = vec![0.0; n];
            d2_transpose(&v, &grid, axis, &mut d2tv);
            let lhs: f64 = d2u.iter().zip(&v).map(|(a, b)| a * b).sum();
            let rhs: f64 = u.iter().zip(&d2tv).map(|(a, b)| a * b).sum();
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
        }
    }

    /// The quadrature weights annihilate weighted sums of derivatives of
    /// fields vanishing on the container boundary; this is what makes the
    /// identity deformation exactly stationary under the volumetric term.
    #[test]
    fn weighted_derivative_of_boundary_vanishing_field_sums_to_zero() {
        let grid = test_grid(33);
        let n = grid.node_count();
        let mut z = vec![0.0; n];
        for k in 0..n {
            if !grid.is_boundary(k) {
                let p = grid.node_pos(k);
                z[k] = (7.3 * p.x).sin() * (3.1 * p.y).cos() + 0.2 * p.x * p.y;
            }
        }
        for axis in [Axis::X, Axis::Y] {
            let mut dz = vec![0.0; n];
            d1(&z, &grid, axis, &mut dz);
            let s: f64 = (0..n).map(|k| grid.quad_weight(k) * dz[k]).sum();
            assert!(s.abs() < 1e-13, "axis {axis:?}: sum = {s:e}");
        }
    }
}
