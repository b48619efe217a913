//! Semi-Lagrangian solvers for first-order, evolutive, non-local mean field
//! games on uniform space-time grids.
//!
//! The coupled system is a backward Hamilton-Jacobi-Bellman equation for the
//! value function `v` and a forward continuity equation for the population
//! density `m`:
//!
//! ```text
//! -dv/dt + H(x, Dv) = F(x, m(t))        (backward, v(T) = G(x, m(T)))
//!  dm/dt - div(DpH(x, Dv) m) = 0        (forward,  m(0) = m0)
//! ```
//!
//! Both equations are discretized by following characteristics: the value
//! update interpolates at the foot `x - dt*a` of a candidate control, and the
//! density update spreads each node's mass with the same interpolation
//! weights. The discrete system is solved by fictitious play ([`fixedpoint::dlvi`]),
//! policy iteration ([`fixedpoint::dpi`]), or a two-grid combination of the
//! two ([`fixedpoint::adlvi`]).
//!
//! Layout:
//! - [`grid`]: uniform lattice geometry, multilinear interpolation, density
//!   extension and projection of initial measures.
//! - [`problem`]: game data (running cost, feedback map, couplings) and the
//!   built-in benchmark problems.
//! - [`hjb`]: backward value solve with boxed control minimization.
//! - [`transport`]: forward mass transport and the control cost functional.
//! - [`fixedpoint`]: the coupled-system iteration schemes and error metrics.
//! - [`monotone`]: discrete monotone-operator checks used as test oracles.
//! - [`oracle`]: closed-form reference solution for the linear-quadratic
//!   Gaussian benchmark.

pub mod error;
pub mod fixedpoint;
pub mod grid;
pub mod hjb;
pub mod monotone;
pub mod oracle;
pub mod problem;
pub mod transport;

pub use error::{Error, Result};
