//! Physical parameters, initial conditions and the amplitude state vector.
//!
//! All frequencies share one unit; the reservoir width `lambda` is normally 1
//! so times are measured in units of `1/lambda`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on `Σ r_j² = 1` and `a² + b² + c² = 1`.
pub const NORM_TOL: f64 = 1e-9;

/// `1/√3`, the symmetric amplitude and relative coupling.
pub const INV_SQRT_3: f64 = 0.577_350_269_189_625_8;

/// Couplings of the three atoms to each other and to their reservoirs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    /// Dipole-dipole constants `[K1, K2, K3]` for the pairs (1,2), (2,3), (1,3).
    pub k: [f64; 3],
    /// Relative reservoir couplings `[r1, r2, r3]`, unit Euclidean norm.
    pub r: [f64; 3],
    /// Vacuum Rabi frequency `R`.
    pub rabi: f64,
    /// Reservoir spectral width `λ`.
    pub lambda: f64,
}

impl SystemParams {
    pub fn new(k: [f64; 3], r: [f64; 3], rabi: f64, lambda: f64) -> Result<Self> {
        let p = Self { k, r, rabi, lambda };
        p.check()?;
        Ok(p)
    }

    /// Equal dipole constants and equal relative couplings `1/√3`.
    pub fn uniform(k: f64, rabi: f64, lambda: f64) -> Self {
        Self {
            k: [k; 3],
            r: [INV_SQRT_3; 3],
            rabi,
            lambda,
        }
    }

    pub fn with_k(mut self, k: [f64; 3]) -> Self {
        self.k = k;
        self
    }

    pub fn with_r(mut self, r: [f64; 3]) -> Self {
        self.r = r;
        self
    }

    pub fn check(&self) -> Result<()> {
        for (key, v) in [("K1", self.k[0]), ("K2", self.k[1]), ("K3", self.k[2])] {
            finite(key, v)?;
        }
        for (key, v) in [("r1", self.r[0]), ("r2", self.r[1]), ("r3", self.r[2])] {
            finite(key, v)?;
        }
        finite("R", self.rabi)?;
        finite("lambda", self.lambda)?;
        let norm_sq: f64 = self.r.iter().map(|x| x * x).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization {
                what: "relative coupling vector (r1, r2, r3)",
                norm_sq,
                deviation: norm_sq - 1.0,
            });
        }
        if self.lambda <= 0.0 {
            return Err(Error::OutOfRange {
                key: "lambda",
                value: self.lambda,
                bound: "must be > 0",
            });
        }
        if self.rabi < 0.0 {
            return Err(Error::OutOfRange {
                key: "R",
                value: self.rabi,
                bound: "must be >= 0",
            });
        }
        Ok(())
    }
}

/// Initial superposition `a|100⟩ + b e^{iφ}|010⟩ + c|001⟩` with the reservoirs
/// in vacuum, mixed with white noise at purity `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi: f64,
    pub p: f64,
}

impl InitialState {
    pub fn new(a: f64, b: f64, c: f64, phi: f64, p: f64) -> Result<Self> {
        let s = Self { a, b, c, phi, p };
        s.check()?;
        Ok(s)
    }

    /// Rescales `(a, b, c)` to unit norm before validating.
    pub fn normalized(a: f64, b: f64, c: f64, phi: f64, p: f64) -> Result<Self> {
        let n = (a * a + b * b + c * c).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!(
                "cannot normalize amplitudes ({a}, {b}, {c})"
            )));
        }
        Self::new(a / n, b / n, c / n, phi, p)
    }

    /// The W state with relative phase `phi` and purity `p`.
    pub fn w_state(phi: f64, p: f64) -> Self {
        Self {
            a: INV_SQRT_3,
            b: INV_SQRT_3,
            c: INV_SQRT_3,
            phi,
            p,
        }
    }

    pub fn check(&self) -> Result<()> {
        for (key, v) in [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("phi", self.phi),
            ("p", self.p),
        ] {
            finite(key, v)?;
        }
        let norm_sq = self.a * self.a + self.b * self.b + self.c * self.c;
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization {
                what: "initial amplitudes (a, b, c)",
                norm_sq,
                deviation: norm_sq - 1.0,
            });
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::OutOfRange {
                key: "p",
                value: self.p,
                bound: "must lie in [0, 1]",
            });
        }
        Ok(())
    }

    /// Amplitude vector at `t = 0`; the pseudomode starts empty.
    pub fn amplitudes(&self) -> AmplitudeState {
        AmplitudeState {
            c11: C64::new(self.a, 0.0),
            c12: C64::from_polar(self.b, self.phi),
            c13: C64::new(self.c, 0.0),
            bm: C64::new(0.0, 0.0),
        }
    }
}

/// Checks both halves of a configuration, returning them unchanged.
pub fn validate(params: SystemParams, init: InitialState) -> Result<(SystemParams, InitialState)> {
    params.check()?;
    init.check()?;
    Ok((params, init))
}

fn finite(key: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            key,
            value: v,
            bound: "must be finite",
        })
    }
}

/// Atomic amplitudes `(c11, c12, c13)` of `|100⟩, |010⟩, |001⟩` and the
/// pseudomode amplitude `b`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AmplitudeState {
    pub c11: C64,
    pub c12: C64,
    pub c13: C64,
    pub bm: C64,
}

impl AmplitudeState {
    pub fn from_array([c11, c12, c13, bm]: [C64; 4]) -> Self {
        Self { c11, c12, c13, bm }
    }

    pub fn to_array(self) -> [C64; 4] {
        [self.c11, self.c12, self.c13, self.bm]
    }

    pub fn atoms(&self) -> [C64; 3] {
        [self.c11, self.c12, self.c13]
    }

    /// `|c11|² + |c12|² + |c13|²`.
    pub fn excited_population(&self) -> f64 {
        self.c11.norm_sqr() + self.c12.norm_sqr() + self.c13.norm_sqr()
    }

    /// Squared norm of the whole 4-vector, pseudomode included.
    pub fn total_norm_sqr(&self) -> f64 {
        self.excited_population() + self.bm.norm_sqr()
    }

    /// Every amplitude multiplied by `phase`.
    pub fn rotated(self, phase: C64) -> Self {
        Self::from_array(self.to_array().map(|x| x * phase))
    }
}

/// Dipole moment and separation vector of an atom pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleGeometry {
    pub d: [f64; 3],
    pub r: [f64; 3],
}

fn dot(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Static dipole-dipole constant `|r|⁻³ (d·d − 3 (d·r̂)²)`.
pub fn dipole_coupling(geom: &DipoleGeometry) -> Result<f64> {
    let r2 = dot(&geom.r, &geom.r);
    if !(r2 > 0.0) {
        return Err(Error::Domain("dipole separation vector has zero length".into()));
    }
    let dr = dot(&geom.d, &geom.r);
    Ok((dot(&geom.d, &geom.d) - 3.0 * dr * dr / r2) / (r2 * r2.sqrt()))
}

/// Relative couplings of the non-uniform figure columns, `(√0.2, √0.3, √0.5)`.
pub fn graded_couplings() -> [f64; 3] {
    [0.2f64.sqrt(), 0.3f64.sqrt(), FRAC_1_SQRT_2]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn perpendicular_dipole() {
        let g = DipoleGeometry {
            d: [0.0, 0.0, 1.0],
            r: [1.0, 0.0, 0.0],
        };
        assert!((dipole_coupling(&g).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parallel_dipole() {
        let g = DipoleGeometry {
            d: [0.0, 0.0, 1.0],
            r: [0.0, 0.0, 2.0],
        };
        assert!((dipole_coupling(&g).unwrap() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn oblique_dipole_matches_component_arithmetic() {
        let s = FRAC_1_SQRT_2;
        let g = DipoleGeometry {
            d: [s, s, 0.0],
            r: [3.0, 0.0, 0.0],
        };
        // d·d = 1, (d·r̂)² = 1/2, |r|³ = 27.
        let oracle = (1.0 - 3.0 * 0.5) / 27.0;
        assert!((dipole_coupling(&g).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle + 1.0 / 54.0).abs() < 1e-16);
    }

    #[test]
    fn zero_separation_is_a_domain_error() {
        let g = DipoleGeometry {
            d: [1.0, 0.0, 0.0],
            r: [0.0; 3],
        };
        assert!(matches!(dipole_coupling(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn figure_configurations_validate() {
        let init = InitialState::w_state(0.0, 1.0);
        assert!(validate(SystemParams::uniform(0.0, 10.0, 1.0), init).is_ok());
        let graded = SystemParams::uniform(0.0, 10.0, 1.0).with_r(graded_couplings());
        assert!(validate(graded, init).is_ok());
    }

    #[test]
    fn unnormalized_amplitudes_report_norm() {
        let err = InitialState::new(1.0, 1.0, 0.0, 0.0, 1.0).unwrap_err();
        match err {
            Error::Normalization { norm_sq, .. } => assert_eq!(norm_sq, 2.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn purity_and_width_bounds() {
        assert!(matches!(
            InitialState::new(1.0, 0.0, 0.0, 0.0, 1.5),
            Err(Error::OutOfRange { key: "p", .. })
        ));
        assert!(matches!(
            SystemParams::new([0.0; 3], [INV_SQRT_3; 3], 1.0, 0.0),
            Err(Error::OutOfRange { key: "lambda", .. })
        ));
    }

    #[test]
    fn renormalizing_constructor() {
        let s = InitialState::normalized(1.0, 1.0, 0.0, 0.0, 1.0).unwrap();
        assert!((s.a - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn initial_amplitudes_carry_phase_on_atom_two() {
        let s = InitialState::w_state(std::f64::consts::PI, 1.0).amplitudes();
        assert!((s.c12 + C64::new(INV_SQRT_3, 0.0)).norm() < 1e-15);
        assert_eq!(s.bm, C64::new(0.0, 0.0));
    }

    fn vec3() -> impl Strategy<Value = [f64; 3]> {
        [-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0]
    }

    proptest! {
        #[test]
        fn coupling_is_even_and_scales_inverse_cubically(
            d in vec3(), r in vec3(), s in 0.1f64..10.0,
        ) {
            prop_assume!(dot(&r, &r) > 1e-3);
            let k = dipole_coupling(&DipoleGeometry { d, r }).unwrap();
            let flipped = dipole_coupling(&DipoleGeometry { d, r: r.map(|x| -x) }).unwrap();
            let scaled = dipole_coupling(&DipoleGeometry { d, r: r.map(|x| s * x) }).unwrap();
            let tol = 1e-12 * (1.0 + k.abs());
            prop_assert!((k - flipped).abs() <= tol);
            prop_assert!((scaled * s.powi(3) - k).abs() <= tol);
        }
    }
}
