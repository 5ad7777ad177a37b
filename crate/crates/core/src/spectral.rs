//! Resonant Lorentzian reservoir: spectral density, its correlation kernel,
//! and a numerical Fourier check of the closed-form kernel.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::quadrature;

/// Relative width of the strong/weak boundary `λ = 2ℜ`.
pub const REGIME_BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingRegime {
    /// `λ < 2ℜ`: oscillatory, reversible decay (good cavity).
    Strong,
    /// `λ > 2ℜ`: monotone decay (bad cavity).
    Weak,
    Boundary,
}

fn require_width(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "reservoir width must be positive, got {lambda}"
        )))
    }
}

/// `ℜ²λ / (π (Δ² + λ²))` at detuning `Δ = ω_k − ω₀`.
pub fn lorentzian_density(detuning: f64, rabi_weight: f64, lambda: f64) -> Result<f64> {
    require_width(lambda)?;
    Ok(rabi_weight * rabi_weight * lambda / (PI * (detuning * detuning + lambda * lambda)))
}

/// Reservoir correlation kernel `G(τ) = ℜ² e^{−λτ}` for `τ ≥ 0`.
pub fn correlation_function(tau: f64, rabi_weight: f64, lambda: f64) -> Result<C64> {
    require_width(lambda)?;
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!(
            "correlation kernel is causal; got tau = {tau}"
        )));
    }
    Ok(C64::new(rabi_weight * rabi_weight * (-lambda * tau).exp(), 0.0))
}

pub fn coupling_regime(rabi_weight: f64, lambda: f64) -> Result<CouplingRegime> {
    require_width(lambda)?;
    let threshold = 2.0 * rabi_weight;
    let regime = if (lambda - threshold).abs() <= REGIME_BOUNDARY_TOL * lambda.max(threshold) {
        CouplingRegime::Boundary
    } else if lambda < threshold {
        CouplingRegime::Strong
    } else {
        CouplingRegime::Weak
    };
    Ok(regime)
}

/// Result of [`fourier_correlation`].
#[derive(Clone, Copy, Debug)]
pub struct FourierEstimate {
    pub value: C64,
    /// Half-width of the detuning interval integrated numerically.
    pub cutoff: f64,
    /// Upper bound on the magnitude of the omitted tails.
    pub tail_bound: f64,
    /// Accumulated quadrature error estimate over the kept interval.
    pub quadrature_error: f64,
}

/// Default bound on the omitted tails, relative to `ℜ²`.
pub const FOURIER_TAIL_TOL: f64 = 1e-10;

/// `∫ J(Δ) e^{−iΔτ} dΔ` over all detunings by adaptive quadrature.
///
/// At `τ = 0` the integral is cut at `±200λ` and the Lorentzian tail mass
/// `(2ℜ²/π)(π/2 − atan(W/λ))` is added exactly. For `τ > 0` the cutoff `W`
/// is pushed out until the integration-by-parts tail bound
/// `4ℜ²λ / (π W² τ)` drops below `FOURIER_TAIL_TOL · ℜ²`.
pub fn fourier_correlation(tau: f64, rabi_weight: f64, lambda: f64) -> Result<FourierEstimate> {
    require_width(lambda)?;
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be finite and >= 0, got {tau}")));
    }
    let weight = rabi_weight * rabi_weight;
    let base_cutoff = 200.0 * lambda;
    let (cutoff, tail_bound) = if tau == 0.0 {
        (base_cutoff, 0.0)
    } else {
        let needed = (4.0 * lambda / (PI * tau * FOURIER_TAIL_TOL)).sqrt();
        let w = base_cutoff.max(needed);
        (w, 4.0 * weight * lambda / (PI * w * w * tau))
    };

    let density = |x: f64| weight * lambda / (PI * (x * x + lambda * lambda));
    let integrand = |x: f64| C64::from_polar(density(x), -x * tau);

    // Panels grow geometrically away from the peak, capped at half a period
    // of the oscillating factor.
    let cap = if tau > 0.0 { PI / tau } else { f64::INFINITY };
    let mut edges = vec![0.0];
    let mut x = 0.0;
    while x < cutoff {
        x = (x + cap.min((0.25 * x).max(0.5 * lambda))).min(cutoff);
        edges.push(x);
    }
    let panel_tol = 1e-15 * weight.max(f64::MIN_POSITIVE);

    let mut value = C64::new(0.0, 0.0);
    let mut quadrature_error = 0.0;
    for w in edges.windows(2) {
        let (right, er) = quadrature::integrate(&integrand, w[0], w[1], panel_tol);
        let (left, el) = quadrature::integrate(&integrand, -w[1], -w[0], panel_tol);
        value += right + left;
        quadrature_error += er + el;
    }
    if tau == 0.0 {
        value += 2.0 * weight / PI * (0.5 * PI - (cutoff / lambda).atan());
    }
    Ok(FourierEstimate {
        value,
        cutoff,
        tail_bound,
        quadrature_error,
    })
}
