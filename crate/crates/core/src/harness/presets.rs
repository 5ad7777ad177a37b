//! Figure presets: one run configuration per plotted curve.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{RunConfig, Solver, Sweep, SweepVariable, DEFAULT_SAMPLES};
use crate::error::{Error, Result};
use crate::system::{graded_couplings, InitialState, SystemParams};

const GOOD_CAVITY_R: f64 = 10.0;
const BAD_CAVITY_R: f64 = 0.1;
const LAMBDA: f64 = 1.0;
const MIXED_PURITY: f64 = 0.7;

const UNIFORM_K: [f64; 4] = [0.0, 5.0, 10.0, 20.0];
const GRADED_K: [[f64; 3]; 4] = [
    [2.0, 5.0, 10.0],
    [10.0, 15.0, 20.0],
    [2.0, 18.0, 20.0],
    [8.0, 12.0, 18.0],
];

/// Points in the phase sweeps of `fig3*`.
pub const PHASE_STEPS: usize = 361;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetId {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig1d,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
}

impl PresetId {
    pub const ALL: [PresetId; 14] = [
        PresetId::Fig1a,
        PresetId::Fig1b,
        PresetId::Fig1c,
        PresetId::Fig1d,
        PresetId::Fig2a,
        PresetId::Fig2b,
        PresetId::Fig2c,
        PresetId::Fig2d,
        PresetId::Fig3a,
        PresetId::Fig3b,
        PresetId::Fig4a,
        PresetId::Fig4b,
        PresetId::Fig4c,
        PresetId::Fig4d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::Fig1a => "fig1a",
            PresetId::Fig1b => "fig1b",
            PresetId::Fig1c => "fig1c",
            PresetId::Fig1d => "fig1d",
            PresetId::Fig2a => "fig2a",
            PresetId::Fig2b => "fig2b",
            PresetId::Fig2c => "fig2c",
            PresetId::Fig2d => "fig2d",
            PresetId::Fig3a => "fig3a",
            PresetId::Fig3b => "fig3b",
            PresetId::Fig4a => "fig4a",
            PresetId::Fig4b => "fig4b",
            PresetId::Fig4c => "fig4c",
            PresetId::Fig4d => "fig4d",
        }
    }

    /// Good-cavity and bad-cavity time-evolution presets.
    pub fn is_time_evolution(self) -> bool {
        !matches!(self, PresetId::Fig3a | PresetId::Fig3b)
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset `{s}`")))
    }
}

#[derive(Clone, Copy)]
enum Couplings {
    Uniform,
    Graded,
}

struct Layout {
    rabi: f64,
    phi: f64,
    p: f64,
    couplings: Couplings,
    t_end: f64,
    phase_sweep: bool,
}

fn layout(id: PresetId) -> Layout {
    use Couplings::*;
    use PresetId::*;
    let (rabi, phi, couplings, t_end) = match id {
        Fig1a => (GOOD_CAVITY_R, 0.0, Uniform, 3.0),
        Fig1b => (GOOD_CAVITY_R, 0.0, Graded, 3.0),
        Fig1c => (GOOD_CAVITY_R, PI, Uniform, 10.0),
        Fig1d => (GOOD_CAVITY_R, PI, Graded, 10.0),
        Fig2a => (BAD_CAVITY_R, 0.0, Uniform, 50.0),
        Fig2b => (BAD_CAVITY_R, 0.0, Graded, 50.0),
        Fig2c => (BAD_CAVITY_R, PI, Uniform, 50.0),
        Fig2d => (BAD_CAVITY_R, PI, Graded, 50.0),
        Fig3a => (GOOD_CAVITY_R, 0.0, Uniform, 1.0),
        Fig3b => (BAD_CAVITY_R, 0.0, Uniform, 10.0),
        Fig4a => (GOOD_CAVITY_R, 0.0, Uniform, 3.0),
        Fig4b => (GOOD_CAVITY_R, PI, Uniform, 3.0),
        Fig4c => (BAD_CAVITY_R, 0.0, Uniform, 50.0),
        Fig4d => (BAD_CAVITY_R, PI, Uniform, 50.0),
    };
    let p = if matches!(id, Fig4a | Fig4b | Fig4c | Fig4d) {
        MIXED_PURITY
    } else {
        1.0
    };
    Layout {
        rabi,
        phi,
        p,
        couplings,
        t_end,
        phase_sweep: !id.is_time_evolution(),
    }
}

fn k_label(k: [f64; 3]) -> String {
    if k[0] == k[1] && k[1] == k[2] {
        format!("K{}", k[0])
    } else {
        format!("K{}-{}-{}", k[0], k[1], k[2])
    }
}

/// One configuration per plotted curve of `id`.
pub fn expand_preset(id: PresetId) -> Vec<RunConfig> {
    let l = layout(id);
    let (ks, r): (Vec<[f64; 3]>, [f64; 3]) = match l.couplings {
        Couplings::Uniform => (UNIFORM_K.iter().map(|&k| [k; 3]).collect(), SystemParams::uniform(0.0, 1.0, 1.0).r),
        Couplings::Graded => (GRADED_K.to_vec(), graded_couplings()),
    };
    ks.into_iter()
        .map(|k| {
            let label = k_label(k);
            RunConfig {
                output: PathBuf::from(format!("{id}_{label}.csv")),
                label,
                params: SystemParams {
                    k,
                    r,
                    rabi: l.rabi,
                    lambda: LAMBDA,
                },
                init: InitialState::w_state(l.phi, l.p),
                t_end: l.t_end,
                samples: DEFAULT_SAMPLES,
                sweep: l.phase_sweep.then_some(Sweep {
                    variable: SweepVariable::Phi,
                    start: 0.0,
                    end: TAU,
                    steps: PHASE_STEPS,
                }),
                solver: Solver::Resolvent,
            }
        })
        .collect()
}
