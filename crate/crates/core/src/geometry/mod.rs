//! Container geometry, region descriptors, and the uniform grid.
//!
//! The container is an axis-aligned rectangle `[0, lx] x [0, ly]`. The
//! initial body and the anchoring set are described by disks, unions of
//! disks, or polygons; disks admit exact point distances, polygons fall
//! back to segment distances. Grid masks are assigned by pointwise
//! membership of node centers, and strict inclusions are enforced with a
//! `2h` safety band so that discrete masks respect the continuous
//! inclusion chain.

pub mod stencil;

use crate::error::{Error, Result};
use crate::math::Vec2;
use serde::{Deserialize, Serialize};

/// A disk given by center and radius.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Disk {
    fn center_v(&self) -> Vec2 {
        Vec2::new(self.center[0], self.center[1])
    }
}

/// Region descriptor for the initial body and the anchoring set.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub enum Region {
    Disk(Disk),
    DiskUnion(Vec<Disk>),
    /// Closed polygon given by its vertices in order.
    Polygon(Vec<[f64; 2]>),
}

impl Region {
    pub fn disk(cx: f64, cy: f64, radius: f64) -> Region {
        Region::Disk(Disk { center: [cx, cy], radius })
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Disk(d) => d.radius <= 0.0,
            Region::DiskUnion(ds) => ds.iter().all(|d| d.radius <= 0.0),
            Region::Polygon(vs) => vs.len() < 3,
        }
    }

    /// Open-region membership of a point.
    pub fn contains(&self, p: Vec2) -> bool {
        match self {
            Region::Disk(d) => (p - d.center_v()).norm() < d.radius,
            Region::DiskUnion(ds) => ds.iter().any(|d| (p - d.center_v()).norm() < d.radius),
            Region::Polygon(vs) => polygon_contains(vs, p),
        }
    }

    /// Euclidean distance from `p` to the region (zero inside).
    ///
    /// Exact for disks and their unions; polygons use exact
    /// point-to-segment distances along the boundary.
    pub fn distance(&self, p: Vec2) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::Geometry("distance to empty region".into()));
        }
        Ok(match self {
            Region::Disk(d) => ((p - d.center_v()).norm() - d.radius).max(0.0),
            Region::DiskUnion(ds) => ds
                .iter()
                .map(|d| ((p - d.center_v()).norm() - d.radius).max(0.0))
                .fold(f64::INFINITY, f64::min),
            Region::Polygon(vs) => {
                if polygon_contains(vs, p) {
                    0.0
                } else {
                    polygon_boundary_distance(vs, p)
                }
            }
        })
    }

    /// Lower bound on the distance from `p` to the complement of the
    /// region (zero outside). Exact for a single disk; for unions the
    /// maximum of the per-disk depths is a safe lower bound.
    pub fn depth(&self, p: Vec2) -> f64 {
        match self {
            Region::Disk(d) => (d.radius - (p - d.center_v()).norm()).max(0.0),
            Region::DiskUnion(ds) => ds
                .iter()
                .map(|d| (d.radius - (p - d.center_v()).norm()).max(0.0))
                .fold(0.0, f64::max),
            Region::Polygon(vs) => {
                if polygon_contains(vs, p) {
                    polygon_boundary_distance(vs, p)
                } else {
                    0.0
                }
            }
        }
    }

    /// Sample points on the region boundary, used for inclusion gates.
    pub fn boundary_samples(&self, n: usize) -> Vec<Vec2> {
        let mut out = Vec::new();
        match self {
            Region::Disk(d) => sample_circle(d, n, &mut out),
            Region::DiskUnion(ds) => {
                for d in ds {
                    sample_circle(d, n, &mut out);
                }
            }
            Region::Polygon(vs) => {
                let m = vs.len();
                for k in 0..m {
                    let a = Vec2::new(vs[k][0], vs[k][1]);
                    let b = Vec2::new(vs[(k + 1) % m][0], vs[(k + 1) % m][1]);
                    for s in 0..n {
                        let t = s as f64 / n as f64;
                        out.push(a + (b - a) * t);
                    }
                }
            }
        }
        out
    }
}

fn sample_circle(d: &Disk, n: usize, out: &mut Vec<Vec2>) {
    for k in 0..n {
        let ang = std::f64::consts::TAU * k as f64 / n as f64;
        out.push(d.center_v() + Vec2::new(ang.cos(), ang.sin()) * d.radius);
    }
}

fn polygon_contains(vs: &[[f64; 2]], p: Vec2) -> bool {
    // Ray casting along +x.
    let mut inside = false;
    let m = vs.len();
    for k in 0..m {
        let a = vs[k];
        let b = vs[(k + 1) % m];
        let crosses = (a[1] > p.y) != (b[1] > p.y);
        if crosses {
            let x_int = a[0] + (p.y - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
            if p.x < x_int {
                inside = !inside;
            }
        }
    }
    inside
}

fn polygon_boundary_distance(vs: &[[f64; 2]], p: Vec2) -> f64 {
    let m = vs.len();
    let mut best = f64::INFINITY;
    for k in 0..m {
        let a = Vec2::new(vs[k][0], vs[k][1]);
        let b = Vec2::new(vs[(k + 1) % m][0], vs[(k + 1) % m][1]);
        best = best.min(point_segment_distance(p, a, b));
    }
    best
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Domain data: container, initial body, anchoring set, final time, and
/// the two growth-speed bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DomainSpec {
    pub lx: f64,
    pub ly: f64,
    pub omega0: Region,
    pub anchor: Region,
    pub t_final: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
}

impl DomainSpec {
    /// Distance from an interior point to the container boundary.
    pub fn dist_to_container_boundary(&self, p: Vec2) -> f64 {
        p.x.min(self.lx - p.x).min(p.y).min(self.ly - p.y)
    }

    /// Distance from the initial body to the container boundary.
    pub fn omega0_margin(&self) -> f64 {
        match &self.omega0 {
            Region::Disk(d) => self.dist_to_container_boundary(d.center_v()) - d.radius,
            Region::DiskUnion(ds) => ds
                .iter()
                .map(|d| self.dist_to_container_boundary(d.center_v()) - d.radius)
                .fold(f64::INFINITY, f64::min),
            Region::Polygon(vs) => {
                let region = Region::Polygon(vs.clone());
                region
                    .boundary_samples(512)
                    .iter()
                    .map(|p| self.dist_to_container_boundary(*p))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Per-node mask bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeFlags(u8);

impl NodeFlags {
    pub const BOUNDARY: u8 = 1;
    pub const OMEGA0: u8 = 2;
    pub const ANCHOR: u8 = 4;

    pub fn set(&mut self, bit: u8) {
        self.0 |= bit;
    }

    pub fn has(&self, bit: u8) -> bool {
        self.0 & bit != 0
    }

    pub fn bits(&self) -> u8 {
        self.0
    }
}

/// Uniform node-centered grid over the container with region masks and
/// boundary-corrected nodal quadrature weights.
///
/// Immutable after construction; shared freely between solver passes.
#[derive(Debug, Clone)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub lx: f64,
    pub ly: f64,
    flags: Vec<NodeFlags>,
    /// Nodal quadrature weights `h^2 * w_i * w_j`. The per-axis weights
    /// (1/4, 5/4, 1, ..., 1, 5/4, 1/4) are matched to the one-sided
    /// boundary stencils so that the weighted sum of any discrete
    /// derivative of a field vanishing on the container boundary is
    /// exactly zero; constants integrate to exactly `lx * ly`.
    weights: Vec<f64>,
}

impl Grid {
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn ij(&self, n: usize) -> (usize, usize) {
        (n % self.nx, n / self.nx)
    }

    #[inline]
    pub fn pos(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(i as f64 * self.h, j as f64 * self.h)
    }

    #[inline]
    pub fn node_pos(&self, n: usize) -> Vec2 {
        let (i, j) = self.ij(n);
        self.pos(i, j)
    }

    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn flags(&self, n: usize) -> NodeFlags {
        self.flags[n]
    }

    pub fn is_boundary(&self, n: usize) -> bool {
        self.flags[n].has(NodeFlags::BOUNDARY)
    }

    pub fn is_omega0(&self, n: usize) -> bool {
        self.flags[n].has(NodeFlags::OMEGA0)
    }

    pub fn is_anchor(&self, n: usize) -> bool {
        self.flags[n].has(NodeFlags::ANCHOR)
    }

    pub fn is_interior(&self, n: usize) -> bool {
        !self.is_boundary(n)
    }

    /// Nodes with prescribed deformation (anchoring set and container
    /// boundary).
    pub fn is_fixed(&self, n: usize) -> bool {
        self.is_boundary(n) || self.is_anchor(n)
    }

    #[inline]
    pub fn quad_weight(&self, n: usize) -> f64 {
        self.weights[n]
    }

    pub fn quad_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn omega0_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&n| self.is_omega0(n))
    }

    /// Minimum distance from a point to the container boundary.
    pub fn dist_to_container_boundary(&self, p: Vec2) -> f64 {
        p.x.min(self.lx - p.x).min(p.y).min(self.ly - p.y)
    }

    /// Distance from a point to the nearest node carrying the given mask
    /// bit. Errors when the mask is empty.
    pub fn dist_to_mask(&self, p: Vec2, bit: u8) -> Result<f64> {
        let mut best = f64::INFINITY;
        for n in 0..self.node_count() {
            if self.flags[n].has(bit) {
                best = best.min((p - self.node_pos(n)).norm());
            }
        }
        if best.is_infinite() {
            return Err(Error::Geometry("distance to empty node mask".into()));
        }
        Ok(best)
    }
}

fn axis_weights(n: usize) -> Vec<f64> {
    let mut w = vec![1.0; n];
    w[0] = 0.25;
    w[1] = 1.25;
    w[n - 1] = 0.25;
    w[n - 2] = 1.25;
    w
}

/// Builds the grid and masks, enforcing the hypothesis gates:
/// the anchoring set must sit strictly inside the initial body, and the
/// initial body dilated by the maximal growth distance must stay strictly
/// inside the container (with a `2h` discrete safety band each).
pub fn build_grid(spec: &DomainSpec, nx: usize, ny: usize) -> Result<Grid> {
    if nx < 17 || ny < 17 {
        return Err(Error::Geometry(format!(
            "resolution too coarse: need at least 17 nodes per axis, got {nx}x{ny}"
        )));
    }
    if spec.lx <= 0.0 || spec.ly <= 0.0 || spec.t_final <= 0.0 {
        return Err(Error::Geometry("container sides and final time must be positive".into()));
    }
    if !(spec.gamma_min > 0.0 && spec.gamma_min <= spec.gamma_max) {
        return Err(Error::Config(
            "hypothesis (H14) violated: require 0 < c_gamma <= C_gamma".into(),
        ));
    }
    let hx = spec.lx / (nx - 1) as f64;
    let hy = spec.ly / (ny - 1) as f64;
    if (hx - hy).abs() > 1e-12 * hx.max(hy) {
        return Err(Error::Geometry(format!(
            "cells must be square: lx/(nx-1) = {hx} but ly/(ny-1) = {hy}"
        )));
    }
    let h = hx;
    if spec.omega0.is_empty() {
        return Err(Error::Geometry("initial body region is empty".into()));
    }
    if spec.anchor.is_empty() {
        return Err(Error::Geometry("anchoring region is empty".into()));
    }

    // Anchor strictly inside the initial body, with a 2h band.
    let band = 2.0 * h;
    for p in spec.anchor.boundary_samples(256) {
        if spec.omega0.depth(p) < band {
            return Err(Error::Geometry(format!(
                "anchor not inside initial body: boundary point ({:.4}, {:.4}) has depth {:.4e} < 2h = {:.4e}",
                p.x,
                p.y,
                spec.omega0.depth(p),
                band
            )));
        }
    }

    // Growth containment gate: dist(Omega_0, dU) > C_gamma * T + 2h.
    let margin = spec.omega0_margin();
    let needed = spec.gamma_max * spec.t_final + band;
    if margin <= needed {
        return Err(Error::Geometry(format!(
            "hypothesis (H15) violated: dist(Omega_0, dU) = {margin:.4} must exceed C_gamma*T + 2h = {needed:.4}"
        )));
    }

    let wx = axis_weights(nx);
    let wy = axis_weights(ny);
    let mut flags = vec![NodeFlags::default(); nx * ny];
    let mut weights = vec![0.0; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let n = j * nx + i;
            let p = Vec2::new(i as f64 * h, j as f64 * h);
            if i == 0 || i == nx - 1 || j == 0 || j == ny - 1 {
                flags[n].set(NodeFlags::BOUNDARY);
            }
            if spec.omega0.contains(p) {
                flags[n].set(NodeFlags::OMEGA0);
            }
            if spec.anchor.contains(p) {
                flags[n].set(NodeFlags::ANCHOR);
            }
            weights[n] = h * h * wx[i] * wy[j];
        }
    }

    let grid = Grid { nx, ny, h, lx: spec.lx, ly: spec.ly, flags, weights };

    // Mask consistency, guaranteed by the inclusion gates above but
    // re-checked so a bad region descriptor cannot slip through.
    for n in 0..grid.node_count() {
        if grid.is_anchor(n) && !grid.is_omega0(n) {
            return Err(Error::Geometry("mask inconsistency: anchor node outside initial body".into()));
        }
        if grid.is_omega0(n) && grid.is_boundary(n) {
            return Err(Error::Geometry("mask inconsistency: initial body touches container boundary".into()));
        }
    }
    if grid.omega0_nodes().next().is_none() {
        return Err(Error::Geometry("initial body contains no grid nodes at this resolution".into()));
    }
    Ok(grid)
}
