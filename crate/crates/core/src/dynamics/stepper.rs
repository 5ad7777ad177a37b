//! Dormand–Prince 5(4) integration of `ẏ = M y`. The system is autonomous, so
//! the stage nodes never enter.
//!
//! Steps are shortened to land exactly on each requested sample time, so the
//! output carries the full fifth-order accuracy with no interpolation.

use num_complex::Complex64 as C64;

use super::{check_grid, Generator, SolveInfo, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::system::AmplitudeState;

pub const DEFAULT_TOL: f64 = 1e-9;

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub tol: f64,
    pub min_step: f64,
    pub max_step: f64,
}

/// Integrates `ẏ = M y` from `y(0) = y0`, returning `y` at each time of the
/// strictly increasing grid `times`. The local error of every accepted step
/// satisfies `|e_i| ≤ tol (1 + max(|y_i|, |y_i'|))` componentwise.
pub fn integrate_linear<const N: usize>(
    m: &SquareMatrix<N>,
    y0: [C64; N],
    times: &[f64],
    tol: f64,
) -> Result<(Vec<[C64; N]>, StepStats)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    check_grid(times)?;

    let scale = m.norm_1();
    let mut stats = StepStats {
        tol,
        min_step: f64::INFINITY,
        ..Default::default()
    };
    let mut out = Vec::with_capacity(times.len());
    let mut t = 0.0;
    let mut y = y0;
    let mut k0 = m.mul_vec(&y);
    let mut h = if scale > 0.0 {
        0.5 * tol.powf(0.2) / scale
    } else {
        times[times.len() - 1].max(1.0)
    };

    for &target in times {
        while t < target {
            let remaining = target - t;
            let landing = h >= remaining;
            let step = if landing { remaining } else { h };
            if step < 1e-14 * t.abs().max(1.0) && !landing {
                return Err(Error::StepUnderflow {
                    t,
                    h: step,
                    accepted: stats.accepted,
                    rejected: stats.rejected,
                    generator_norm: scale,
                });
            }

            let (y_new, k_last, err) = dp5_step(m, &y, &k0, step, tol);
            if err <= 1.0 {
                t = if landing { target } else { t + step };
                y = y_new;
                k0 = k_last;
                stats.accepted += 1;
                stats.min_step = stats.min_step.min(step);
                stats.max_step = stats.max_step.max(step);
                // A short landing step says nothing about the natural step.
                if !landing || step >= 0.5 * h {
                    h = step * grow_factor(err);
                }
            } else {
                stats.rejected += 1;
                h = step * (SAFETY * err.powf(-0.2)).max(MIN_FACTOR);
            }
        }
        out.push(y);
    }
    if stats.accepted == 0 {
        stats.min_step = 0.0;
    }
    Ok((out, stats))
}

fn grow_factor(err: f64) -> f64 {
    if err == 0.0 {
        MAX_FACTOR
    } else {
        (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
    }
}

/// One Dormand–Prince step; returns the new state, its derivative (FSAL) and
/// the scaled error norm.
fn dp5_step<const N: usize>(
    m: &SquareMatrix<N>,
    y: &[C64; N],
    k0: &[C64; N],
    h: f64,
    tol: f64,
) -> ([C64; N], [C64; N], f64) {
    let mut k = [[C64::new(0.0, 0.0); N]; 7];
    k[0] = *k0;
    for s in 1..7 {
        let stage: [C64; N] = std::array::from_fn(|i| {
            let incr: C64 = (0..s).map(|j| k[j][i] * A[s][j]).sum();
            y[i] + incr * h
        });
        k[s] = m.mul_vec(&stage);
    }
    // Row 6 of A holds the fifth-order weights, so stage 6 was evaluated at
    // the new point.
    let y_new: [C64; N] = std::array::from_fn(|i| {
        let incr: C64 = (0..6).map(|j| k[j][i] * A[6][j]).sum();
        y[i] + incr * h
    });
    let mut err = 0.0f64;
    for i in 0..N {
        let e: C64 = (0..7).map(|j| k[j][i] * E[j]).sum::<C64>() * h;
        let sc = tol * (1.0 + y[i].norm().max(y_new[i].norm()));
        err = err.max(e.norm() / sc);
    }
    (y_new, k[6], err)
}

/// Adaptive evolution of `init` sampled on `times` (first sample may be 0).
pub fn evolve_stepper(
    gen: &Generator,
    init: &AmplitudeState,
    times: &[f64],
    tol: f64,
) -> Result<Trajectory> {
    let (ys, stats) = integrate_linear(gen.matrix(), init.to_array(), times, tol)?;
    Ok(Trajectory {
        times: times.to_vec(),
        states: ys.into_iter().map(AmplitudeState::from_array).collect(),
        info: SolveInfo::Stepper(stats),
    })
}
