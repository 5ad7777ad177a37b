//! Closed-form bipartite negativities of the Werner-mixed single-excitation
//! state, written in terms of the `ν`/`μ±` parameters.
//!
//! For cut `i` with `q = |c1i|²`, leak `L = |c|²` and `x = (1 − p)/4`, with
//! `ν_s = x + p L` shared by all cuts:
//!
//! ```text
//! ν_i1 = x + 2p q          ν_i2 = x + 2p (1 − q − L)
//! α_i  = x + 4p q (1 − q)  β_i  = x + p L (4q − L)
//! μ_i± = ν_s ± √(p (α_i − β_i))
//! N_i  = ¼ [−2 + |1 − p| + |ν_i1| + |ν_i2| + |μ_i+| + |μ_i−|]
//! ```
//!
//! In the tabulated parameter lists `α` is `ν14`, `ν23` and `ν33` for the
//! three cuts, and `ν33` reads `x + 4p |c13|² (1 − |c12|²)`. That form is
//! evaluated as written; the variant with `(1 − |c13|²)`, matching the other
//! two cuts, is computed alongside so a cross-check can tell which one agrees
//! with the partial-transpose eigenvalues.

use num_complex::Complex64 as C64;

use crate::dynamics::POPULATION_TOL;
use crate::error::{Error, Result};
use crate::system::AmplitudeState;

/// Agreement threshold between closed-form and eigenvalue negativities.
pub const CLOSED_FORM_TOL: f64 = 1e-8;

/// Radicands above `-RADICAND_TOL` are round-off around zero, not flagged.
const RADICAND_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormInputs {
    pub c11: C64,
    pub c12: C64,
    pub c13: C64,
    /// `|c(t)|²`, the population that has left the atoms.
    pub leak: f64,
    pub p: f64,
}

impl ClosedFormInputs {
    pub fn new(c11: C64, c12: C64, c13: C64, leak: f64, p: f64) -> Result<Self> {
        let expected = 1.0 - c11.norm_sqr() - c12.norm_sqr() - c13.norm_sqr();
        if (leak - expected).abs() > POPULATION_TOL {
            return Err(Error::InvalidState(format!(
                "leak {leak} inconsistent with amplitudes (expected {expected})"
            )));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                key: "p",
                value: p,
                bound: "must lie in [0, 1]",
            });
        }
        Ok(Self {
            c11,
            c12,
            c13,
            leak,
            p,
        })
    }

    pub fn from_state(state: &AmplitudeState, p: f64) -> Result<Self> {
        let leak = crate::dynamics::leaked_population(state)?;
        Self::new(state.c11, state.c12, state.c13, leak, p)
    }

    fn populations(&self) -> [f64; 3] {
        [self.c11.norm_sqr(), self.c12.norm_sqr(), self.c13.norm_sqr()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormNegativities {
    /// `[N_1-23, N_2-13, N_3-12]` with every parameter as tabulated.
    pub values: [f64; 3],
    /// `N_3-12` with `ν33 = x + 4p|c13|²(1 − |c13|²)`.
    pub cut3_symmetric: f64,
    /// Whether `p (α_i − β_i)` was negative (square root taken over ℂ).
    pub complex_radicand: [bool; 3],
    pub cut3_symmetric_complex_radicand: bool,
}

/// One cut. `q` is the cut atom's population; `qa, qb` are the two
/// populations entering `α = x + 4p qa (1 − qb)`.
fn cut(q: f64, qa: f64, qb: f64, leak: f64, p: f64) -> (f64, bool) {
    let x = (1.0 - p) / 4.0;
    let nu1 = x + 2.0 * p * q;
    let nu2 = x + 2.0 * p * (1.0 - q - leak);
    let nu_shared = x + p * leak;
    let alpha = x + 4.0 * p * qa * (1.0 - qb);
    let beta = x + p * leak * (4.0 * q - leak);
    let radicand = p * (alpha - beta);
    let root = C64::new(radicand, 0.0).sqrt();
    let mu_plus = C64::new(nu_shared, 0.0) + root;
    let mu_minus = C64::new(nu_shared, 0.0) - root;
    let n = 0.25 * (-2.0 + (1.0 - p).abs() + nu1.abs() + nu2.abs() + mu_plus.norm() + mu_minus.norm());
    (n, radicand < -RADICAND_TOL)
}

pub fn closed_form_negativities(inputs: &ClosedFormInputs) -> ClosedFormNegativities {
    let [q1, q2, q3] = inputs.populations();
    let (l, p) = (inputs.leak, inputs.p);
    let (n1, r1) = cut(q1, q1, q1, l, p);
    let (n2, r2) = cut(q2, q2, q2, l, p);
    let (n3, r3) = cut(q3, q3, q2, l, p);
    let (n3s, r3s) = cut(q3, q3, q3, l, p);
    ClosedFormNegativities {
        values: [n1, n2, n3],
        cut3_symmetric: n3s,
        complex_radicand: [r1, r2, r3],
        cut3_symmetric_complex_radicand: r3s,
    }
}

/// Which form of `ν33` reproduces the eigenvalue route on a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nu33Variant {
    /// Both agree (e.g. `|c12| = |c13|`, or cut 3 is separable).
    Both,
    Printed,
    Symmetric,
    Neither,
}

/// A cut on which the tabulated closed form missed the eigenvalue route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutFlag {
    /// 1, 2 or 3.
    pub cut: usize,
    pub gap: f64,
    pub complex_radicand: bool,
    /// Only cut 3 can be explained by the `ν33` variant.
    pub localized_to_nu33: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub closed: ClosedFormNegativities,
    /// `|closed − numeric|` per cut, tabulated parameters.
    pub gaps: [f64; 3],
    pub cut3_symmetric_gap: f64,
    pub flags: Vec<CutFlag>,
    pub nu33: Nu33Variant,
}

impl CrossCheck {
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().copied().fold(0.0, f64::max)
    }

    /// Largest gap with cut 3 evaluated from the symmetric `ν33`.
    pub fn resolved_max_gap(&self) -> f64 {
        self.gaps[0].max(self.gaps[1]).max(self.cut3_symmetric_gap)
    }

    /// No flag, or every flag explained by the `ν33` variant.
    pub fn is_consistent(&self) -> bool {
        self.flags.iter().all(|f| f.localized_to_nu33)
    }
}

/// Compares the closed forms against eigenvalue negativities `numeric`.
pub fn cross_check(inputs: &ClosedFormInputs, numeric: [f64; 3]) -> CrossCheck {
    let closed = closed_form_negativities(inputs);
    let gaps: [f64; 3] = std::array::from_fn(|i| (closed.values[i] - numeric[i]).abs());
    let cut3_symmetric_gap = (closed.cut3_symmetric - numeric[2]).abs();
    let symmetric_ok = cut3_symmetric_gap <= CLOSED_FORM_TOL;
    let printed_ok = gaps[2] <= CLOSED_FORM_TOL;

    let flags = (0..3)
        .filter(|&i| gaps[i] > CLOSED_FORM_TOL || closed.complex_radicand[i])
        .map(|i| CutFlag {
            cut: i + 1,
            gap: gaps[i],
            complex_radicand: closed.complex_radicand[i],
            localized_to_nu33: i == 2 && symmetric_ok,
        })
        .collect();
    let nu33 = match (printed_ok, symmetric_ok) {
        (true, true) => Nu33Variant::Both,
        (true, false) => Nu33Variant::Printed,
        (false, true) => Nu33Variant::Symmetric,
        (false, false) => Nu33Variant::Neither,
    };
    CrossCheck {
        closed,
        gaps,
        cut3_symmetric_gap,
        flags,
        nu33,
    }
}
