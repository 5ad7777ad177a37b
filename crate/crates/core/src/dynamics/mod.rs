//! Time evolution of `(c11, c12, c13, b)` under the pseudomode-reduced
//! linear system `ẏ = M y`.
//!
//! The memory kernel `ℜ² e^{−λτ}` is replaced by a single damped mode `b`, so
//! the atoms and the mode form a closed 4×4 linear system. Two independent
//! solvers are provided: an adaptive Runge–Kutta stepper and an exact
//! matrix-exponential (resolvent) evaluation.

mod resolvent;
mod stepper;

pub use resolvent::evolve_resolvent;
pub use stepper::{evolve_stepper, integrate_linear, StepStats, DEFAULT_TOL};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::expm::{ExpPath, Propagator};
use crate::linalg::SquareMatrix;
use crate::system::{AmplitudeState, SystemParams};

/// Slack allowed on `|c11|² + |c12|² + |c13|² ≤ 1` before it is an error.
pub const POPULATION_TOL: f64 = 1e-9;

/// Index of the pseudomode amplitude in the state vector.
pub const PSEUDOMODE: usize = 3;

/// `M = −iH − λΠ` acting on `(c11, c12, c13, b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Generator {
    m: SquareMatrix<4>,
    lambda: f64,
}

/// Builds the generator for `params`:
///
/// ```text
/// ċ11 = −i r1 R b − i K1 c12 − i K3 c13
/// ċ12 = −i r2 R b − i K1 c11 − i K2 c13
/// ċ13 = −i r3 R b − i K3 c11 − i K2 c12
/// ḃ   = −λ b − i R (r1 c11 + r2 c12 + r3 c13)
/// ```
pub fn build_generator(params: &SystemParams) -> Generator {
    Generator::with_width(params, params.lambda)
}

impl Generator {
    /// Same couplings with the pseudomode decoupled from the continuum (`λ = 0`).
    pub fn without_leakage(params: &SystemParams) -> Self {
        Self::with_width(params, 0.0)
    }

    fn with_width(params: &SystemParams, lambda: f64) -> Self {
        let [k1, k2, k3] = params.k;
        let g = params.r.map(|r| r * params.rabi);
        let h = [
            [0.0, k1, k3, g[0]],
            [k1, 0.0, k2, g[1]],
            [k3, k2, 0.0, g[2]],
            [g[0], g[1], g[2], 0.0],
        ];
        let mut m = SquareMatrix::<4>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = C64::new(0.0, -h[i][j]);
            }
        }
        m[(PSEUDOMODE, PSEUDOMODE)] = C64::new(-lambda, 0.0);
        Self { m, lambda }
    }

    pub fn matrix(&self) -> &SquareMatrix<4> {
        &self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Recovers the real symmetric coupling matrix `H = i (M + λΠ)`.
    pub fn hamiltonian(&self) -> [[f64; 4]; 4] {
        let mut shifted = self.m;
        shifted[(PSEUDOMODE, PSEUDOMODE)] += self.lambda;
        let h = shifted.scale(C64::new(0.0, 1.0));
        std::array::from_fn(|i| std::array::from_fn(|j| h[(i, j)].re))
    }

    pub fn propagator(&self) -> Propagator<4> {
        Propagator::new(self.m)
    }

    pub fn derivative(&self, state: &AmplitudeState) -> AmplitudeState {
        AmplitudeState::from_array(self.m.mul_vec(&state.to_array()))
    }
}

/// How a [`Trajectory`] was produced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SolveInfo {
    Stepper(StepStats),
    Resolvent(ExpPath),
}

/// Sampled solution: `states[i]` is the amplitude vector at `times[i]`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<AmplitudeState>,
    pub info: SolveInfo,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &AmplitudeState)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    /// Largest componentwise deviation from `other` over matched samples.
    pub fn sup_distance(&self, other: &Trajectory) -> f64 {
        self.states
            .iter()
            .zip(&other.states)
            .map(|(a, b)| crate::linalg::vec_max_abs_diff(&a.to_array(), &b.to_array()))
            .fold(0.0, f64::max)
    }

    /// Largest increase of the total 4-vector norm between consecutive samples.
    pub fn max_norm_increase(&self) -> f64 {
        self.states
            .windows(2)
            .map(|w| w[1].total_norm_sqr().sqrt() - w[0].total_norm_sqr().sqrt())
            .fold(0.0, f64::max)
    }
}

/// Population that has left the atoms, `1 − Σ|c1j|²`, clamped to `[0, 1]`.
/// The leaked amplitude `|c(t)|` is its square root.
pub fn leaked_population(state: &AmplitudeState) -> Result<f64> {
    let leak = 1.0 - state.excited_population();
    if leak < -POPULATION_TOL {
        return Err(Error::InvalidState(format!(
            "atomic population exceeds 1 by {:.3e}",
            -leak
        )));
    }
    Ok(leak.clamp(0.0, 1.0))
}

/// Uniform grid of `samples` points on `[0, t_end]`.
pub fn uniform_grid(t_end: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    t_end
                } else {
                    t_end * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

pub(crate) fn check_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Domain("sample grid is empty".into()));
    }
    if !(times[0] >= 0.0) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("sample times must be finite and >= 0".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("sample times must be strictly increasing".into()));
    }
    Ok(())
}
