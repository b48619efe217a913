//! Uniform space-time lattice, multilinear interpolation, and the
//! piecewise-constant density extension.
//!
//! Nodes are `x_i = lo + i*dx` per axis and time levels are `t_k = k*dt` with
//! `n_t * dt = horizon` exactly. A grid function is stored flat with axis 0
//! fastest. Every cell `E_i` is the closed box of half-width `dx/2` centered
//! at its node, so cells tile `[lo - dx/2, hi + dx/2]`.
//!
//! Query points outside the domain box are clamped per axis before
//! interpolation; the truncated box must be chosen large enough that the
//! transported mass never reaches it (the solvers count clamp events so this
//! can be checked after the fact).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerance on the unit-mass invariant of a [`DensitySlice`].
pub const MASS_TOL: f64 = 1e-12;

/// Uniform grid on a `[lo, hi]` box with time step `dt` and horizon `n_t*dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<const D: usize> {
    dx: f64,
    dt: f64,
    horizon: f64,
    n_t: usize,
    lo: [f64; D],
    hi: [f64; D],
    nodes: [usize; D],
    node_count: usize,
}

impl<const D: usize> GridSpec<D> {
    /// Builds a grid over `[lo, hi]` with spacing `dx` and `n_t = horizon/dt`
    /// time levels.
    ///
    /// `hi` is snapped up to the nearest node `lo + cells*dx` and `dt` is
    /// adjusted to the nearest value with an integer number of steps, so the
    /// lattice invariants hold exactly.
    pub fn new(lo: [f64; D], hi: [f64; D], dx: f64, horizon: f64, dt_target: f64) -> Result<Self> {
        if D == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidGrid(format!("dx must be positive, got {dx}")));
        }
        if !(dt_target > 0.0) || !dt_target.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "dt must be positive, got {dt_target}"
            )));
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        let mut nodes = [0usize; D];
        let mut hi_adj = hi;
        for a in 0..D {
            if !(hi[a] > lo[a]) {
                return Err(Error::InvalidGrid(format!(
                    "axis {a}: hi {} must exceed lo {}",
                    hi[a], lo[a]
                )));
            }
            let span = (hi[a] - lo[a]) / dx;
            let cells = if (span - span.round()).abs() < 1e-9 * span.max(1.0) {
                span.round() as usize
            } else {
                span.ceil() as usize
            };
            if cells < 1 {
                return Err(Error::InvalidGrid(format!(
                    "axis {a}: box shorter than one cell"
                )));
            }
            nodes[a] = cells + 1;
            hi_adj[a] = lo[a] + cells as f64 * dx;
        }
        let steps = horizon / dt_target;
        let n_t = (steps.round().max(1.0)) as usize;
        let dt = horizon / n_t as f64;
        let node_count = nodes.iter().product();
        Ok(Self {
            dx,
            dt,
            horizon,
            n_t,
            lo,
            hi: hi_adj,
            nodes,
            node_count,
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of time steps; there are `n_t + 1` time levels.
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn lo(&self) -> [f64; D] {
        self.lo
    }

    pub fn hi(&self) -> [f64; D] {
        self.hi
    }

    /// Nodes per axis.
    pub fn nodes(&self) -> [usize; D] {
        self.nodes
    }

    /// Total number of spatial nodes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Cell volume `dx^d`.
    pub fn cell_volume(&self) -> f64 {
        self.dx.powi(D as i32)
    }

    #[inline]
    pub fn flat_index(&self, mi: [usize; D]) -> usize {
        let mut idx = 0usize;
        for a in (0..D).rev() {
            debug_assert!(mi[a] < self.nodes[a]);
            idx = idx * self.nodes[a] + mi[a];
        }
        idx
    }

    #[inline]
    pub fn multi_index(&self, mut flat: usize) -> [usize; D] {
        let mut mi = [0usize; D];
        for a in 0..D {
            mi[a] = flat % self.nodes[a];
            flat /= self.nodes[a];
        }
        mi
    }

    /// Coordinates of the node with flat index `i`.
    #[inline]
    pub fn point(&self, i: usize) -> [f64; D] {
        let mi = self.multi_index(i);
        let mut x = [0.0; D];
        for a in 0..D {
            x[a] = self.lo[a] + mi[a] as f64 * self.dx;
        }
        x
    }

    /// Clamps `x` into the domain box per axis. The boolean is true when any
    /// coordinate moved.
    #[inline]
    pub fn clamp_point(&self, x: [f64; D]) -> ([f64; D], bool) {
        let mut y = x;
        let mut moved = false;
        for a in 0..D {
            if y[a] < self.lo[a] {
                y[a] = self.lo[a];
                moved = true;
            } else if y[a] > self.hi[a] {
                y[a] = self.hi[a];
                moved = true;
            }
        }
        (y, moved)
    }

    /// Whether two grids share the same spatial lattice and time levels.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.n_t == other.n_t
            && (self.dx - other.dx).abs() < 1e-12 * self.dx.max(1.0)
            && (self.dt - other.dt).abs() < 1e-12 * self.dt.max(1.0)
            && self
                .lo
                .iter()
                .zip(other.lo.iter())
                .all(|(a, b)| (a - b).abs() < 1e-12)
    }

    /// Calls `visit(node, weight)` for every vertex of the cell containing the
    /// clamped query point, with the multilinear basis weights. Weights are
    /// nonnegative and sum to one.
    #[inline]
    pub fn q1_accumulate<F: FnMut(usize, f64)>(&self, x: [f64; D], mut visit: F) {
        let (x, _) = self.clamp_point(x);
        let mut base = [0usize; D];
        let mut theta = [0.0f64; D];
        for a in 0..D {
            let s = (x[a] - self.lo[a]) / self.dx;
            let max_cell = self.nodes[a] - 2;
            let c = (s.floor() as usize).min(max_cell);
            base[a] = c;
            theta[a] = (s - c as f64).clamp(0.0, 1.0);
        }
        for corner in 0..(1usize << D) {
            let mut w = 1.0f64;
            let mut mi = base;
            for a in 0..D {
                if corner & (1 << a) != 0 {
                    w *= theta[a];
                    mi[a] += 1;
                } else {
                    w *= 1.0 - theta[a];
                }
            }
            visit(self.flat_index(mi), w);
        }
    }

    /// Interpolation stencil at `x`: node indices with their basis weights.
    /// Zero-weight vertices are dropped, so a query at a node returns a single
    /// pair with weight one.
    pub fn q1_weights(&self, x: [f64; D]) -> Vec<(usize, f64)> {
        let mut out = Vec::with_capacity(1 << D);
        self.q1_accumulate(x, |i, w| {
            if w != 0.0 {
                out.push((i, w));
            }
        });
        out
    }

    /// Multilinear interpolation of a nodal field at `x` (clamped into the box).
    #[inline]
    pub fn interpolate(&self, field: &SpaceField, x: [f64; D]) -> f64 {
        debug_assert_eq!(field.values.len(), self.node_count);
        let mut acc = 0.0;
        self.q1_accumulate(x, |i, w| {
            acc += w * field.values[i];
        });
        acc
    }

    /// Time level used by the value extension: `ceil(t/dt)`, with exact levels
    /// mapped to themselves.
    pub fn value_level(&self, t: f64) -> Result<usize> {
        let s = self.time_fraction(t)?;
        let r = s.round();
        let k = if (s - r).abs() < 1e-9 { r } else { s.ceil() };
        Ok(k as usize)
    }

    /// Time level used by the density extension: `floor(t/dt)`, with `t = T`
    /// mapped to the final level.
    pub fn density_level(&self, t: f64) -> Result<usize> {
        let s = self.time_fraction(t)?;
        let r = s.round();
        let k = if (s - r).abs() < 1e-9 { r } else { s.floor() };
        Ok((k as usize).min(self.n_t))
    }

    fn time_fraction(&self, t: f64) -> Result<f64> {
        let eps = 1e-9 * self.horizon.max(1.0);
        if t < -eps || t > self.horizon + eps {
            return Err(Error::TimeOutOfRange {
                t,
                horizon: self.horizon,
            });
        }
        Ok((t / self.dt).clamp(0.0, self.n_t as f64))
    }

    /// Flat index of the cell `E_i` containing `x`, or `None` when `x` lies
    /// outside the tiled region `[lo - dx/2, hi + dx/2]`.
    pub fn cell_of(&self, x: [f64; D]) -> Option<usize> {
        let mut mi = [0usize; D];
        for a in 0..D {
            let s = (x[a] - self.lo[a]) / self.dx;
            let r = s.round();
            if (s - r).abs() > 0.5 + 1e-12 || r < -0.5 || r > (self.nodes[a] - 1) as f64 + 0.5 {
                return None;
            }
            let i = r.clamp(0.0, (self.nodes[a] - 1) as f64) as usize;
            mi[a] = i;
        }
        Some(self.flat_index(mi))
    }
}

/// One real value per spatial node.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceField {
    pub values: Vec<f64>,
}

impl SpaceField {
    pub fn zeros<const D: usize>(g: &GridSpec<D>) -> Self {
        Self {
            values: vec![0.0; g.node_count()],
        }
    }

    pub fn constant<const D: usize>(g: &GridSpec<D>, c: f64) -> Self {
        Self {
            values: vec![c; g.node_count()],
        }
    }

    pub fn from_fn<const D: usize>(g: &GridSpec<D>, f: impl Fn([f64; D]) -> f64) -> Self {
        Self {
            values: (0..g.node_count()).map(|i| f(g.point(i))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Nonnegative per-node masses summing to one: a discrete probability
/// distribution with the mass of cell `E_i` carried by node `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySlice {
    mass: Vec<f64>,
}

impl DensitySlice {
    /// Validates nonnegativity and unit total mass (within [`MASS_TOL`]).
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        if let Some((i, &m)) = mass.iter().enumerate().find(|(_, m)| !(**m >= 0.0)) {
            return Err(Error::InvalidDensity(format!(
                "negative or NaN mass {m} at node {i}"
            )));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDensity(format!(
                "total mass {total} differs from 1 by more than {MASS_TOL}"
            )));
        }
        Ok(Self { mass })
    }

    /// Wraps masses produced by an operation that preserves the simplex by
    /// construction (transport, convex averaging). Checked in debug builds.
    pub(crate) fn from_simplex_preserving(mass: Vec<f64>) -> Self {
        debug_assert!(mass.iter().all(|m| *m >= 0.0));
        debug_assert!((mass.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { mass }
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// All mass at one node.
    pub fn point_mass<const D: usize>(g: &GridSpec<D>, node: usize) -> Self {
        let mut mass = vec![0.0; g.node_count()];
        mass[node] = 1.0;
        Self { mass }
    }

    pub fn uniform<const D: usize>(g: &GridSpec<D>) -> Self {
        let n = g.node_count();
        Self {
            mass: vec![1.0 / n as f64; n],
        }
    }
}

/// Value of the piecewise-constant density extension at `(x, t)`:
/// `mass_i / dx^d` for the cell containing `x`, at time level `floor(t/dt)`
/// (final level at `t = horizon`). Zero outside the tiled region.
pub fn extend_density_slice<const D: usize>(
    g: &GridSpec<D>,
    slice: &DensitySlice,
    x: [f64; D],
) -> f64 {
    match g.cell_of(x) {
        Some(i) => slice.mass()[i] / g.cell_volume(),
        None => 0.0,
    }
}

/// Projects an integrable density function onto cell masses by midpoint
/// quadrature `m0(x_i) * dx^d`, renormalized to total mass one.
pub fn project_initial_density<const D: usize>(
    g: &GridSpec<D>,
    m0: impl Fn([f64; D]) -> f64,
) -> Result<DensitySlice> {
    let vol = g.cell_volume();
    let mut mass: Vec<f64> = (0..g.node_count()).map(|i| m0(g.point(i)) * vol).collect();
    if let Some((i, &m)) = mass.iter().enumerate().find(|(_, m)| !(**m >= 0.0)) {
        return Err(Error::InvalidDensity(format!(
            "initial density is negative ({m}) at node {i}"
        )));
    }
    let total: f64 = mass.iter().sum();
    if total <= 0.0 {
        return Err(Error::EmptyProjection);
    }
    for m in &mut mass {
        *m /= total;
    }
    Ok(DensitySlice::from_simplex_preserving(mass))
}

/// Discrete first moment `sum_i x_i * mass_i`.
pub fn moment<const D: usize>(g: &GridSpec<D>, slice: &DensitySlice) -> [f64; D] {
    let mut mu = [0.0; D];
    for (i, &m) in slice.mass().iter().enumerate() {
        if m == 0.0 {
            continue;
        }
        let x = g.point(i);
        for a in 0..D {
            mu[a] += x[a] * m;
        }
    }
    mu
}

/// Gaussian kernel `(2*pi)^(-d/2) * sigma^(-d) * exp(-|x|^2 / (2 sigma^2))`.
#[inline]
pub fn gaussian_kernel<const D: usize>(x: [f64; D], sigma: f64) -> f64 {
    let r2: f64 = x.iter().map(|c| c * c).sum();
    let norm = (2.0 * std::f64::consts::PI).powi(D as i32).sqrt() * sigma.powi(D as i32);
    (-r2 / (2.0 * sigma * sigma)).exp() / norm
}

/// Kernel-smoothed density at `x`: masses treated as atoms at their cell
/// centers, Gaussian kernel of width `sigma` truncated at radius `4*sigma`.
pub fn mollified_density_at<const D: usize>(
    g: &GridSpec<D>,
    slice: &DensitySlice,
    sigma: f64,
    x: [f64; D],
) -> f64 {
    debug_assert!(sigma > 0.0);
    let radius = 4.0 * sigma;
    let r2 = radius * radius;
    let reach = (radius / g.dx()).ceil() as isize;
    let nodes = g.nodes();
    // Window of node indices per axis around x.
    let mut lo_idx = [0isize; D];
    let mut hi_idx = [0isize; D];
    for a in 0..D {
        let c = (x[a] - g.lo()[a]) / g.dx();
        lo_idx[a] = (c.floor() as isize - reach).max(0);
        hi_idx[a] = (c.ceil() as isize + reach).min(nodes[a] as isize - 1);
        if lo_idx[a] > hi_idx[a] {
            return 0.0;
        }
    }
    let mut acc = 0.0;
    let mut mi = lo_idx;
    loop {
        let mut idx = [0usize; D];
        for a in 0..D {
            idx[a] = mi[a] as usize;
        }
        let flat = g.flat_index(idx);
        let m = slice.mass()[flat];
        if m != 0.0 {
            let y = g.point(flat);
            let mut diff = [0.0; D];
            let mut d2 = 0.0;
            for a in 0..D {
                diff[a] = x[a] - y[a];
                d2 += diff[a] * diff[a];
            }
            if d2 <= r2 {
                acc += gaussian_kernel(diff, sigma) * m;
            }
        }
        // odometer increment
        let mut a = 0;
        loop {
            mi[a] += 1;
            if mi[a] <= hi_idx[a] {
                break;
            }
            mi[a] = lo_idx[a];
            a += 1;
            if a == D {
                return acc;
            }
        }
    }
}

/// Kernel-smoothed density sampled at every node.
pub fn mollified_density<const D: usize>(
    g: &GridSpec<D>,
    slice: &DensitySlice,
    sigma: f64,
) -> SpaceField {
    use rayon::prelude::*;
    let values: Vec<f64> = (0..g.node_count())
        .into_par_iter()
        .map(|i| mollified_density_at(g, slice, sigma, g.point(i)))
        .collect();
    SpaceField { values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid1(dx: f64) -> GridSpec<1> {
        GridSpec::new([-2.0], [2.0], dx, 0.25, 0.1).unwrap()
    }

    #[test]
    fn construction_adjusts_dt_and_hi() {
        let g = grid1(0.1);
        assert_eq!(g.nodes(), [41]);
        assert_abs_diff_eq!(g.n_t() as f64 * g.dt(), 0.25, epsilon = 1e-15);
        // hi snapped up when the box is not a whole number of cells
        let g2 = GridSpec::<1>::new([0.0], [1.05], 0.5, 1.0, 0.5).unwrap();
        assert_eq!(g2.nodes(), [4]);
        assert_abs_diff_eq!(g2.hi()[0], 1.5, epsilon = 1e-15);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(GridSpec::<1>::new([0.0], [1.0], -0.1, 1.0, 0.1).is_err());
        assert!(GridSpec::<1>::new([1.0], [0.0], 0.1, 1.0, 0.1).is_err());
        assert!(GridSpec::<1>::new([0.0], [1.0], 0.1, -1.0, 0.1).is_err());
    }

    #[test]
    fn q1_weights_at_node_is_single_pair() {
        let g = grid1(1.0);
        let w = g.q1_weights([0.0]);
        assert_eq!(w.len(), 1);
        let (i, wi) = w[0];
        assert_eq!(g.point(i), [0.0]);
        assert_eq!(wi, 1.0);
    }

    #[test]
    fn q1_weights_at_midpoint_splits_evenly() {
        let g = grid1(1.0);
        let w = g.q1_weights([0.5]);
        assert_eq!(w.len(), 2);
        for (_, wi) in w {
            assert_abs_diff_eq!(wi, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn q1_weights_2d_cell_center() {
        let g = GridSpec::<2>::new([-2.0, -2.0], [2.0, 2.0], 1.0, 1.0, 0.5).unwrap();
        let w = g.q1_weights([0.5, 0.5]);
        assert_eq!(w.len(), 4);
        for (_, wi) in w {
            assert_abs_diff_eq!(wi, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn interpolate_reproduces_affine_and_constants() {
        let g = grid1(1.0);
        let ident = SpaceField::from_fn(&g, |x| x[0]);
        assert_abs_diff_eq!(g.interpolate(&ident, [0.37]), 0.37, epsilon = 1e-14);
        let c = SpaceField::constant(&g, 4.5);
        assert_abs_diff_eq!(g.interpolate(&c, [-1.234]), 4.5, epsilon = 1e-14);
        // explicit two-node linearity
        let mut w = SpaceField::zeros(&g);
        let i0 = g.q1_weights([0.0])[0].0;
        let i1 = g.q1_weights([1.0])[0].0;
        w.values[i0] = 0.0;
        w.values[i1] = 2.0;
        assert_abs_diff_eq!(g.interpolate(&w, [0.5]), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn value_level_uses_ceiling() {
        let g = grid1(0.1);
        // dt adjusted: n_t = round(0.25/0.1) = 2 or 3 depending on rounding
        let dt = g.dt();
        assert_eq!(g.value_level(0.0).unwrap(), 0);
        assert_eq!(g.value_level(dt).unwrap(), 1);
        assert_eq!(g.value_level(0.5 * dt).unwrap(), 1);
        assert_eq!(g.value_level(1.5 * dt).unwrap(), 2);
        assert!(g.value_level(-0.1).is_err());
        assert!(g.value_level(g.horizon() + 0.1).is_err());
    }

    #[test]
    fn density_level_uses_floor_and_final_slice() {
        let g = grid1(0.1);
        let dt = g.dt();
        assert_eq!(g.density_level(0.5 * dt).unwrap(), 0);
        assert_eq!(g.density_level(dt).unwrap(), 1);
        assert_eq!(g.density_level(g.horizon()).unwrap(), g.n_t());
    }

    #[test]
    fn density_extension_values() {
        let g = grid1(0.1);
        let node = g.q1_weights([0.3]).first().unwrap().0;
        let m = DensitySlice::point_mass(&g, node);
        // inside the cell
        assert_abs_diff_eq!(
            extend_density_slice(&g, &m, [0.32]),
            1.0 / g.dx(),
            epsilon = 1e-12
        );
        // outside the support
        assert_eq!(extend_density_slice(&g, &m, [1.0]), 0.0);
        // outside the tiled region entirely
        assert_eq!(extend_density_slice(&g, &m, [2.5]), 0.0);
    }

    #[test]
    fn density_extension_integrates_to_one() {
        let g = grid1(0.1);
        let m = DensitySlice::uniform(&g);
        let total: f64 = (0..g.node_count())
            .map(|i| extend_density_slice(&g, &m, g.point(i)) * g.cell_volume())
            .sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn projection_of_cell_indicator_is_point_mass() {
        let g = grid1(0.1);
        let target = g.point(17);
        let m = project_initial_density(&g, |x| {
            if (x[0] - target[0]).abs() <= 0.049 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        assert_abs_diff_eq!(m.mass()[17], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn projection_rejects_missed_support() {
        let g = grid1(0.1);
        let r = project_initial_density(&g, |_| 0.0);
        assert!(matches!(r, Err(Error::EmptyProjection)));
    }

    #[test]
    fn gaussian_projection_matches_fine_quadrature() {
        // compare midpoint cell masses against Simpson integration per cell
        let g = grid1(0.1);
        let mu = 0.1;
        let var = 0.105;
        let gauss =
            |x: f64| (-(x - mu) * (x - mu) / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt();
        let m = project_initial_density(&g, |x| gauss(x[0])).unwrap();
        assert_abs_diff_eq!(m.total(), 1.0, epsilon = 1e-12);
        // high-resolution per-cell integrals (Simpson, 64 intervals per cell)
        let mut exact = vec![0.0; g.node_count()];
        for i in 0..g.node_count() {
            let c = g.point(i)[0];
            let a = c - 0.05;
            let n = 64;
            let h = 0.1 / n as f64;
            let mut s = gauss(a) + gauss(a + 0.1);
            for j in 1..n {
                s += gauss(a + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
            }
            exact[i] = s * h / 3.0;
        }
        let exact_total: f64 = exact.iter().sum();
        let l1: f64 = m
            .mass()
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b / exact_total).abs())
            .sum();
        // midpoint vs exact cell integrals: O(dx^2) per unit mass
        assert!(l1 < 2e-3, "projection error {l1}");
    }

    #[test]
    fn moment_examples() {
        let g = grid1(0.1);
        let i = g.q1_weights([0.7]).first().unwrap().0;
        let m = DensitySlice::point_mass(&g, i);
        assert_abs_diff_eq!(moment(&g, &m)[0], 0.7, epsilon = 1e-12);

        let i0 = g.q1_weights([0.0]).first().unwrap().0;
        let i1 = g.q1_weights([1.0]).first().unwrap().0;
        let mut mass = vec![0.0; g.node_count()];
        mass[i0] = 0.5;
        mass[i1] = 0.5;
        let m = DensitySlice::new(mass).unwrap();
        assert_abs_diff_eq!(moment(&g, &m)[0], 0.5, epsilon = 1e-12);

        let sym = project_initial_density(&g, |x| (-x[0] * x[0]).exp()).unwrap();
        assert_abs_diff_eq!(moment(&g, &sym)[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mollified_point_mass_peaks_at_kernel_origin() {
        let g = grid1(0.1);
        let j = g.q1_weights([0.5]).first().unwrap().0;
        let m = DensitySlice::point_mass(&g, j);
        let sigma = 0.5;
        let f = mollified_density(&g, &m, sigma);
        let expected = 1.0 / ((2.0 * std::f64::consts::PI).sqrt() * sigma);
        assert_abs_diff_eq!(f.values[j], expected, epsilon = 1e-14);
    }

    #[test]
    fn mollification_is_translation_equivariant_in_the_interior() {
        let g = grid1(0.1);
        let j = g.q1_weights([0.0]).first().unwrap().0;
        let m0 = DensitySlice::point_mass(&g, j);
        let m1 = DensitySlice::point_mass(&g, j + 1);
        let f0 = mollified_density(&g, &m0, 0.3);
        let f1 = mollified_density(&g, &m1, 0.3);
        // compare on nodes a safe distance from the boundary
        for i in 14..27 {
            assert_abs_diff_eq!(f0.values[i], f1.values[i + 1], epsilon = 1e-13);
        }
    }

    #[test]
    fn density_slice_validation() {
        assert!(DensitySlice::new(vec![0.5, 0.5]).is_ok());
        assert!(DensitySlice::new(vec![0.6, 0.5]).is_err());
        assert!(DensitySlice::new(vec![-0.1, 1.1]).is_err());
    }
}
