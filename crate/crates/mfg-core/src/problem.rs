//! Game data: running cost, optimal feedback map, couplings, initial measure.
//!
//! A problem instance bundles the Lagrangian `L(x, a)`, the feedback map
//! `DpH(x, p)` (gradient of the Legendre transform of `L`), the running and
//! terminal couplings `F` and `G` evaluated against a discrete density slice,
//! the initial density, and the half-width `C_H` of the admissible control
//! box. Couplings consume grid-native density slices directly; a problem is
//! immutable after construction and all evaluations are pure.

use crate::error::{Error, Result};
use crate::grid::{moment, mollified_density_at, DensitySlice, GridSpec};
use serde::{Deserialize, Serialize};

pub type PointFn<const D: usize> = Box<dyn Fn([f64; D]) -> f64 + Send + Sync>;
pub type ControlCostFn<const D: usize> = Box<dyn Fn([f64; D], [f64; D]) -> f64 + Send + Sync>;
pub type FeedbackFn<const D: usize> = Box<dyn Fn([f64; D], [f64; D]) -> [f64; D] + Send + Sync>;
pub type CouplingFn<const D: usize> =
    Box<dyn Fn([f64; D], &DensitySlice, &GridSpec<D>) -> f64 + Send + Sync>;

/// One mean field game instance.
pub struct MFGProblem<const D: usize> {
    /// Running cost `L(x, a)`, convex in the control.
    pub lagrangian: ControlCostFn<D>,
    /// Optimal feedback map `p -> argmax_a {a.p - L(x,a)}`.
    pub optimal_feedback: FeedbackFn<D>,
    /// Running coupling `F(x, m)`.
    pub running_coupling: CouplingFn<D>,
    /// Terminal coupling `G(x, m)`.
    pub terminal_coupling: CouplingFn<D>,
    /// Initial density function on `R^d`.
    pub initial_density: PointFn<D>,
    /// Max-norm half-width of the admissible control box.
    pub control_bound: f64,
    /// Time horizon.
    pub horizon: f64,
}

impl<const D: usize> MFGProblem<D> {
    #[inline]
    pub fn lagrangian(&self, x: [f64; D], a: [f64; D]) -> f64 {
        (self.lagrangian)(x, a)
    }

    #[inline]
    pub fn optimal_feedback(&self, x: [f64; D], p: [f64; D]) -> [f64; D] {
        (self.optimal_feedback)(x, p)
    }

    #[inline]
    pub fn running_coupling(&self, x: [f64; D], m: &DensitySlice, g: &GridSpec<D>) -> f64 {
        (self.running_coupling)(x, m, g)
    }

    #[inline]
    pub fn terminal_coupling(&self, x: [f64; D], m: &DensitySlice, g: &GridSpec<D>) -> f64 {
        (self.terminal_coupling)(x, m, g)
    }

    /// Clips a control into the admissible box componentwise.
    #[inline]
    pub fn clip_control(&self, a: [f64; D]) -> [f64; D] {
        let mut out = a;
        for c in &mut out {
            *c = c.clamp(-self.control_bound, self.control_bound);
        }
        out
    }

    /// Whether the control lies in the admissible box (up to rounding slack).
    #[inline]
    pub fn control_admissible(&self, a: [f64; D]) -> bool {
        a.iter().all(|c| c.abs() <= self.control_bound + 1e-12)
    }
}

/// Per-step cost `dt * (L(x_i, a) + F(x_i, m))` at node `i`.
pub fn running_cost<const D: usize>(
    p: &MFGProblem<D>,
    g: &GridSpec<D>,
    node: usize,
    a: [f64; D],
    m: &DensitySlice,
) -> Result<f64> {
    if !p.control_admissible(a) {
        return Err(Error::ControlOutOfBounds(a.to_vec(), p.control_bound));
    }
    let x = g.point(node);
    Ok(g.dt() * (p.lagrangian(x, a) + p.running_coupling(x, m, g)))
}

fn sq_norm<const D: usize>(v: [f64; D]) -> f64 {
    v.iter().map(|c| c * c).sum()
}

/// Gaussian density with mean `mu` and common diagonal variance `var`.
fn gaussian_density<const D: usize>(x: [f64; D], mu: [f64; D], var: f64) -> f64 {
    let mut d2 = 0.0;
    for a in 0..D {
        let d = x[a] - mu[a];
        d2 += d * d;
    }
    (-d2 / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).powi(D as i32).sqrt()
}

/// `Gamma(n/2)` for positive half-integer arguments.
fn gamma_half(twice_arg: u32) -> f64 {
    debug_assert!(twice_arg >= 1);
    let mut val = if twice_arg % 2 == 0 {
        1.0 // Gamma(1)
    } else {
        std::f64::consts::PI.sqrt() // Gamma(1/2)
    };
    let mut k = if twice_arg % 2 == 0 { 2 } else { 1 };
    while k + 2 <= twice_arg {
        val *= k as f64 / 2.0;
        k += 2;
    }
    val
}

/// Integral over `R^d` of the compactly supported bump `(1 - 4|x|^2)^3` on
/// `|x| <= 1/2`.
fn bump_integral(d: usize) -> f64 {
    // (pi^(d/2) / 2^d) * Gamma(4) / Gamma(d/2 + 4)
    let pi_pow = std::f64::consts::PI.powi(d as i32).sqrt();
    pi_pow / 2f64.powi(d as i32) * 6.0 / gamma_half(d as u32 + 8)
}

/// The radial bump `(1 - 4|x|^2)^3` on `|x| <= 1/2`, zero outside.
pub fn bump<const D: usize>(x: [f64; D]) -> f64 {
    let r2 = sq_norm(x);
    if 4.0 * r2 >= 1.0 {
        return 0.0;
    }
    let s = 1.0 - 4.0 * r2;
    s * s * s
}

/// Two-bump initial density: normalized sum of bumps centered at `+-(1,..,1)`.
pub fn two_bump_density<const D: usize>(x: [f64; D]) -> f64 {
    let mut xp = x;
    let mut xm = x;
    for a in 0..D {
        xp[a] -= 1.0;
        xm[a] += 1.0;
    }
    (bump(xp) + bump(xm)) / (2.0 * bump_integral(D))
}

/// Linear-quadratic Gaussian benchmark: quadratic control cost, quadratic
/// attraction to the population mean, Gaussian initial distribution.
pub fn lq_gaussian<const D: usize>(mu0: [f64; D], sigma0: f64, horizon: f64) -> MFGProblem<D> {
    assert!(sigma0 > 0.0, "initial variance must be positive");
    MFGProblem {
        lagrangian: Box::new(|_x, a| 0.5 * sq_norm(a)),
        optimal_feedback: Box::new(|_x, p| p),
        running_coupling: Box::new(|x, m, g| {
            let mean = moment(g, m);
            let mut d2 = 0.0;
            for a in 0..D {
                let d = x[a] - mean[a];
                d2 += d * d;
            }
            0.5 * d2
        }),
        terminal_coupling: Box::new(|_x, _m, _g| 0.0),
        initial_density: Box::new(move |x| gaussian_density(x, mu0, sigma0)),
        control_bound: 2.0,
        horizon,
    }
}

/// Drift field variants for the two-dimensional benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DriftKind {
    /// `b(x) = gamma * (-x_2, x_2)`.
    #[default]
    Literal,
    /// `b(x) = gamma * (-x_2, x_1)`, a rigid rotation.
    Rotational,
}

fn aversion_coupling<const D: usize>(lambda: f64, target: [f64; D], r_cut: f64, sigma: f64) -> CouplingFn<D> {
    Box::new(move |x, m, g| {
        let mut d2 = 0.0;
        for a in 0..D {
            let d = x[a] - target[a];
            d2 += d * d;
        }
        lambda * d2.min(r_cut) + mollified_density_at(g, m, sigma, x)
    })
}

/// One-dimensional target/aversion benchmark: quadratic control cost,
/// truncated quadratic attraction to a target plus kernel-smoothed crowd
/// aversion, two-bump initial density.
pub fn target_aversion_1d(lambda: f64, horizon: f64) -> MFGProblem<1> {
    assert!(lambda > 0.0);
    MFGProblem {
        lagrangian: Box::new(|_x, a| 0.5 * sq_norm(a)),
        optimal_feedback: Box::new(|_x, p| p),
        running_coupling: aversion_coupling(lambda, [0.0], 9.0, 0.5),
        terminal_coupling: Box::new(|_x, _m, _g| 0.0),
        initial_density: Box::new(two_bump_density::<1>),
        control_bound: 6.0,
        horizon,
    }
}

/// Two-dimensional variant with a state-dependent drift in the Hamiltonian:
/// `H(x,p) = |p|^2/2 + b(x).p`, so `L(x,a) = |a - b(x)|^2 / 2` and the
/// feedback map is `p + b(x)`.
pub fn target_aversion_2d(lambda: f64, gamma: f64, horizon: f64, drift: DriftKind) -> MFGProblem<2> {
    assert!(lambda > 0.0 && gamma > 0.0);
    let b = move |x: [f64; 2]| -> [f64; 2] {
        match drift {
            DriftKind::Literal => [-gamma * x[1], gamma * x[1]],
            DriftKind::Rotational => [-gamma * x[1], gamma * x[0]],
        }
    };
    MFGProblem {
        lagrangian: Box::new(move |x, a| {
            let bx = b(x);
            0.5 * ((a[0] - bx[0]).powi(2) + (a[1] - bx[1]).powi(2))
        }),
        optimal_feedback: Box::new(move |x, p| {
            let bx = b(x);
            [p[0] + bx[0], p[1] + bx[1]]
        }),
        running_coupling: aversion_coupling(lambda, [0.0; 2], 9.0, 0.5),
        terminal_coupling: Box::new(|_x, _m, _g| 0.0),
        initial_density: Box::new(two_bump_density::<2>),
        control_bound: 6.0,
        horizon,
    }
}

/// Built-in problem selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Lq,
    Aversion1d,
    Aversion2d,
}

impl ProblemKind {
    pub fn dim(self) -> usize {
        match self {
            ProblemKind::Aversion2d => 2,
            _ => 1,
        }
    }
}

/// Serializable parameters for the built-in problems. Optional fields fall
/// back to per-problem defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub kind: ProblemKind,
    /// Target weight in the aversion coupling.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Truncation of the quadratic target term.
    #[serde(default = "default_r_cut")]
    pub r_cut: f64,
    /// Aversion kernel width.
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    /// Target coordinate, broadcast on every axis.
    #[serde(default)]
    pub target: f64,
    /// Drift strength for the two-dimensional problem.
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    /// Gaussian mean for the linear-quadratic problem.
    #[serde(default = "default_mu0")]
    pub mu0: f64,
    /// Gaussian variance for the linear-quadratic problem.
    #[serde(default = "default_sigma0")]
    pub sigma0: f64,
    /// Horizon; defaults to 0.25 (lq), 4 (aversion-1d), 2.5 (aversion-2d).
    #[serde(default)]
    pub horizon: Option<f64>,
    /// Domain box per axis; defaults to [-2,2] (lq) or [-3,3] (aversion).
    #[serde(default)]
    pub domain: Option<(f64, f64)>,
    /// Control box half-width; defaults to 2 (lq) or 6 (aversion).
    #[serde(default)]
    pub control_bound: Option<f64>,
    #[serde(default)]
    pub drift: DriftKind,
}

fn default_lambda() -> f64 {
    2.5
}
fn default_r_cut() -> f64 {
    9.0
}
fn default_sigma() -> f64 {
    0.5
}
fn default_gamma() -> f64 {
    2.5
}
fn default_mu0() -> f64 {
    0.1
}
fn default_sigma0() -> f64 {
    0.105
}

impl ProblemConfig {
    pub fn new(kind: ProblemKind) -> Self {
        Self {
            kind,
            lambda: default_lambda(),
            r_cut: default_r_cut(),
            sigma: default_sigma(),
            target: 0.0,
            gamma: default_gamma(),
            mu0: default_mu0(),
            sigma0: default_sigma0(),
            horizon: None,
            domain: None,
            control_bound: None,
            drift: DriftKind::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda", self.lambda),
            ("r_cut", self.r_cut),
            ("sigma", self.sigma),
            ("gamma", self.gamma),
            ("sigma0", self.sigma0),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if let Some(t) = self.horizon {
            if !(t > 0.0) {
                return Err(Error::InvalidConfig(format!("horizon must be positive, got {t}")));
            }
        }
        if let Some(c) = self.control_bound {
            if !(c > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "control_bound must be positive, got {c}"
                )));
            }
        }
        if let Some((lo, hi)) = self.domain {
            if !(hi > lo) {
                return Err(Error::InvalidConfig(format!("empty domain [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    pub fn horizon(&self) -> f64 {
        self.horizon.unwrap_or(match self.kind {
            ProblemKind::Lq => 0.25,
            ProblemKind::Aversion1d => 4.0,
            ProblemKind::Aversion2d => 2.5,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain.unwrap_or(match self.kind {
            ProblemKind::Lq => (-2.0, 2.0),
            _ => (-3.0, 3.0),
        })
    }

    pub fn control_bound(&self) -> f64 {
        self.control_bound.unwrap_or(match self.kind {
            ProblemKind::Lq => 2.0,
            _ => 6.0,
        })
    }

    /// Builds the one-dimensional problem described by this configuration.
    pub fn build_1d(&self) -> Result<MFGProblem<1>> {
        self.validate()?;
        let mut p = match self.kind {
            ProblemKind::Lq => lq_gaussian([self.mu0], self.sigma0, self.horizon()),
            ProblemKind::Aversion1d => {
                let mut p = target_aversion_1d(self.lambda, self.horizon());
                p.running_coupling =
                    aversion_coupling(self.lambda, [self.target], self.r_cut, self.sigma);
                p
            }
            ProblemKind::Aversion2d => {
                return Err(Error::InvalidConfig(
                    "aversion-2d is a two-dimensional problem".into(),
                ))
            }
        };
        p.control_bound = self.control_bound();
        Ok(p)
    }

    /// Builds the two-dimensional problem described by this configuration.
    pub fn build_2d(&self) -> Result<MFGProblem<2>> {
        self.validate()?;
        match self.kind {
            ProblemKind::Aversion2d => {
                let mut p =
                    target_aversion_2d(self.lambda, self.gamma, self.horizon(), self.drift);
                p.running_coupling = aversion_coupling(
                    self.lambda,
                    [self.target; 2],
                    self.r_cut,
                    self.sigma,
                );
                p.control_bound = self.control_bound();
                Ok(p)
            }
            _ => Err(Error::InvalidConfig(format!(
                "{:?} is a one-dimensional problem",
                self.kind
            ))),
        }
    }
}
