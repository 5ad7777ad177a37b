//! Reduced three-atom density matrix, Werner mixing and negativities.
//!
//! Basis ordering: index `4 q1 + 2 q2 + q3` for `|q1 q2 q3⟩`, so atom 3 is the
//! fastest-varying bit: `|000⟩, |001⟩, |010⟩, |011⟩, |100⟩, |101⟩, |110⟩, |111⟩`.

mod closed_form;

pub use closed_form::{
    closed_form_negativities, cross_check, ClosedFormInputs, ClosedFormNegativities, CrossCheck,
    CutFlag, Nu33Variant, CLOSED_FORM_TOL,
};

use num_complex::Complex64 as C64;

use crate::dynamics::leaked_population;
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::system::AmplitudeState;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Below this `N^(3)` the entanglement counts as dead.
pub const ESD_THRESHOLD: f64 = 1e-6;

pub type Matrix8 = SquareMatrix<8>;

/// One of the three atoms; selects the qubit for partial transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    One,
    Two,
    Three,
}

impl Atom {
    pub const ALL: [Atom; 3] = [Atom::One, Atom::Two, Atom::Three];

    /// Bit of this atom in the basis index.
    pub fn mask(self) -> usize {
        match self {
            Atom::One => 4,
            Atom::Two => 2,
            Atom::Three => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Atom::One),
            2 => Ok(Atom::Two),
            3 => Ok(Atom::Three),
            _ => Err(Error::Domain(format!("atom index must be 1, 2 or 3, got {i}"))),
        }
    }
}

/// Validated 8×8 three-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Matrix8);

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(rho: Matrix8) -> Result<Self> {
        check_structure(&rho)?;
        let min = hermitian_eigenvalues(&rho)?[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self(rho))
    }

    pub fn maximally_mixed() -> Self {
        Self(Matrix8::identity().scale(C64::new(0.125, 0.0)))
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized internally.
    pub fn pure(psi: &[C64; 8]) -> Result<Self> {
        let n = crate::linalg::vec_norm(psi);
        if !(n > 0.0) {
            return Err(Error::Domain("zero state vector".into()));
        }
        let mut m = Matrix8::zeros();
        for i in 0..8 {
            for j in 0..8 {
                m[(i, j)] = psi[i] * psi[j].conj() / (n * n);
            }
        }
        Ok(Self(m))
    }

    /// `ρ_A ⊗ ρ_B` for a one-qubit and a two-qubit state (atom 1 first).
    pub fn product(first: &SquareMatrix<2>, rest: &SquareMatrix<4>) -> Result<Self> {
        let mut m = Matrix8::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for i in 0..4 {
                    for j in 0..4 {
                        m[(4 * a + i, 4 * b + j)] = first[(a, b)] * rest[(i, j)];
                    }
                }
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.0
    }

    pub fn eigenvalues(&self) -> Result<[f64; 8]> {
        hermitian_eigenvalues(&self.0)
    }
}

fn check_structure(rho: &Matrix8) -> Result<()> {
    let defect = rho.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::InvalidState(format!("not Hermitian (defect {defect:.3e})")));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
    }
    Ok(())
}

const KET_100: usize = 4;
const KET_010: usize = 2;
const KET_001: usize = 1;

/// Traces the reservoir out of the single-excitation state.
///
/// Populations `(leak, |c13|², |c12|², |c11|²)` sit on `|000⟩, |001⟩, |010⟩,
/// |100⟩`; the only coherences are among the three singly-excited kets.
pub fn assemble_rho(state: &AmplitudeState) -> Result<DensityMatrix> {
    let leak = leaked_population(state)?;
    let kets = [(KET_100, state.c11), (KET_010, state.c12), (KET_001, state.c13)];
    let mut m = Matrix8::zeros();
    m[(0, 0)] = C64::new(leak, 0.0);
    for &(i, ci) in &kets {
        for &(j, cj) in &kets {
            m[(i, j)] = ci * cj.conj();
        }
    }
    // Round-off in the clamped leak can push the trace a hair off 1.
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        m = m.scale(C64::new(1.0 / trace, 0.0));
    }
    check_structure(&m)?;
    Ok(DensityMatrix(m))
}

/// `(1 − p)/8 · I + p ρ`.
pub fn werner_mix(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            key: "p",
            value: p,
            bound: "must lie in [0, 1]",
        });
    }
    let noise = Matrix8::identity().scale(C64::new((1.0 - p) / 8.0, 0.0));
    Ok(DensityMatrix(noise + rho.0.scale(C64::new(p, 0.0))))
}

/// Transposes the indices of `atom`: `⟨i|ρ^{T}|j⟩ = ⟨i'|ρ|j'⟩` where the
/// atom's bit is exchanged between `i` and `j`.
pub fn partial_transpose(rho: &Matrix8, atom: Atom) -> Matrix8 {
    let mask = atom.mask();
    let mut out = Matrix8::zeros();
    for i in 0..8 {
        for j in 0..8 {
            let (bi, bj) = (i & mask, j & mask);
            out[((i & !mask) | bj, (j & !mask) | bi)] = rho[(i, j)];
        }
    }
    out
}

/// `(‖ρ^{T_i}‖₁ − 1)/2`, clamped at zero.
pub fn bipartite_negativity(rho: &DensityMatrix, atom: Atom) -> Result<f64> {
    let ev = hermitian_eigenvalues(&partial_transpose(&rho.0, atom))?;
    let trace_norm: f64 = ev.iter().map(|x| x.abs()).sum();
    Ok((0.5 * (trace_norm - 1.0)).max(0.0))
}

/// Bipartite negativities of the three one-versus-two cuts and their
/// geometric mean `N^(3)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NegativityRecord {
    pub t: f64,
    pub n1_23: f64,
    pub n2_13: f64,
    pub n3_12: f64,
    pub n3: f64,
}

impl NegativityRecord {
    pub fn from_bipartite(t: f64, [n1, n2, n3c]: [f64; 3]) -> Self {
        let clamped = [n1, n2, n3c].map(|x| x.max(0.0));
        Self {
            t,
            n1_23: clamped[0],
            n2_13: clamped[1],
            n3_12: clamped[2],
            n3: (clamped[0] * clamped[1] * clamped[2]).cbrt(),
        }
    }

    pub fn at(self, t: f64) -> Self {
        Self { t, ..self }
    }

    pub fn bipartite(&self) -> [f64; 3] {
        [self.n1_23, self.n2_13, self.n3_12]
    }

    pub fn is_dead(&self) -> bool {
        self.n3 < ESD_THRESHOLD
    }
}

/// All three cuts plus `N^(3)`; the record's time is zero.
pub fn tripartite_negativity(rho: &DensityMatrix) -> Result<NegativityRecord> {
    let mut n = [0.0; 3];
    for (slot, atom) in n.iter_mut().zip(Atom::ALL) {
        *slot = bipartite_negativity(rho, atom)?;
    }
    Ok(NegativityRecord::from_bipartite(0.0, n))
}
