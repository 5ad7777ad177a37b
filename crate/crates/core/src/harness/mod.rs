//! Run configurations, figure presets, sweeps, phenomenology detectors and
//! CSV output.

mod config;
mod csv;
mod esd;
mod presets;

pub use config::{parse_config, parse_overrides, KEYS};
pub use csv::{read_csv, render_csv, write_bundle, write_csv, CsvTable};
pub use esd::{detect_esd, max_relative_drop, DeathInterval, REVIVAL_THRESHOLD};
pub use presets::{expand_preset, PresetId};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{build_generator, evolve_resolvent, evolve_stepper, uniform_grid, DEFAULT_TOL};
use crate::entanglement::{
    assemble_rho, cross_check, tripartite_negativity, werner_mix, ClosedFormInputs, NegativityRecord,
};
use crate::error::{Error, Result};
use crate::linalg::vec_max_abs_diff;
use crate::system::{AmplitudeState, InitialState, SystemParams};

/// Default number of samples per curve.
pub const DEFAULT_SAMPLES: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Stepper,
    Resolvent,
    /// Resolvent values, with the stepper and the closed forms as cross-checks.
    Both,
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stepper" => Ok(Solver::Stepper),
            "resolvent" => Ok(Solver::Resolvent),
            "both" => Ok(Solver::Both),
            _ => Err(Error::Config(format!(
                "`solver` must be stepper, resolvent or both, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Stepper => "stepper",
            Solver::Resolvent => "resolvent",
            Solver::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    Time,
    Phi,
    /// Uniform dipole constant `K1 = K2 = K3`.
    KUniform,
}

impl SweepVariable {
    /// CSV column name of the swept coordinate.
    pub fn column(self) -> &'static str {
        match self {
            SweepVariable::Time => "t",
            SweepVariable::Phi => "phi",
            SweepVariable::KUniform => "K",
        }
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" | "t" => Ok(SweepVariable::Time),
            "phi" => Ok(SweepVariable::Phi),
            "K" | "k" | "K-uniform" => Ok(SweepVariable::KUniform),
            _ => Err(Error::Config(format!(
                "sweep variable must be time, phi or K, got `{s}`"
            ))),
        }
    }
}

/// Linear sweep of one variable. For `Phi` and `KUniform` every point is
/// evolved to the configuration's `t_end`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    fn check(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!(
                "sweep needs at least 2 steps, got {}",
                self.steps
            )));
        }
        if !(self.start.is_finite() && self.end.is_finite()) || self.start == self.end {
            return Err(Error::Config(format!(
                "sweep range [{}, {}] is degenerate",
                self.start, self.end
            )));
        }
        if self.variable == SweepVariable::Time && (self.start < 0.0 || self.end < self.start) {
            return Err(Error::Config(
                "time sweeps must run forward from t >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Everything needed to produce one table.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Curve label, used to suffix bundle file names (e.g. `K20`, `K2-5-10`).
    pub label: String,
    pub params: SystemParams,
    pub init: InitialState,
    pub t_end: f64,
    pub samples: usize,
    pub sweep: Option<Sweep>,
    pub output: PathBuf,
    pub solver: Solver,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            label: String::new(),
            params: SystemParams::uniform(0.0, 10.0, 1.0),
            init: InitialState::w_state(0.0, 1.0),
            t_end: 3.0,
            samples: DEFAULT_SAMPLES,
            sweep: None,
            output: PathBuf::from("negativity.csv"),
            solver: Solver::Resolvent,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.check()?;
        self.init.check()?;
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::OutOfRange {
                key: "t_end",
                value: self.t_end,
                bound: "must be > 0",
            });
        }
        if self.samples < 2 {
            return Err(Error::OutOfRange {
                key: "samples",
                value: self.samples as f64,
                bound: "must be >= 2",
            });
        }
        if let Some(sweep) = &self.sweep {
            sweep.check()?;
        }
        Ok(())
    }

    pub fn axis(&self) -> SweepVariable {
        self.sweep.map_or(SweepVariable::Time, |s| s.variable)
    }
}

/// One output row: negativities plus the dual-oracle gaps when both solvers ran.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub record: NegativityRecord,
    /// Sup-norm distance between the stepper and resolvent amplitude vectors.
    pub solver_gap: Option<f64>,
    /// Largest `|closed form − eigenvalue route|` over the three cuts, with
    /// cut 3 from the symmetric `ν33`.
    pub closedform_gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub label: String,
    pub axis: SweepVariable,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn records(&self) -> Vec<NegativityRecord> {
        self.rows.iter().map(|r| r.record).collect()
    }

    pub fn has_gaps(&self) -> bool {
        self.rows.first().is_some_and(|r| r.solver_gap.is_some())
    }

    pub fn max_solver_gap(&self) -> Option<f64> {
        max_of(self.rows.iter().map(|r| r.solver_gap))
    }

    pub fn max_closedform_gap(&self) -> Option<f64> {
        max_of(self.rows.iter().map(|r| r.closedform_gap))
    }
}

fn max_of(it: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    it.fold(None, |acc, x| match (acc, x) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (None, b) => b,
        (a, None) => a,
    })
}

/// Amplitudes at each of `times`, from the requested solver(s).
struct Evolution {
    primary: Vec<AmplitudeState>,
    secondary: Option<Vec<AmplitudeState>>,
}

fn evolve(params: &SystemParams, init: &InitialState, times: &[f64], solver: Solver) -> Result<Evolution> {
    let gen = build_generator(params);
    let y0 = init.amplitudes();
    Ok(match solver {
        Solver::Stepper => Evolution {
            primary: evolve_stepper(&gen, &y0, times, DEFAULT_TOL)?.states,
            secondary: None,
        },
        Solver::Resolvent => Evolution {
            primary: evolve_resolvent(&gen, &y0, times)?.states,
            secondary: None,
        },
        Solver::Both => Evolution {
            primary: evolve_resolvent(&gen, &y0, times)?.states,
            secondary: Some(evolve_stepper(&gen, &y0, times, DEFAULT_TOL)?.states),
        },
    })
}

fn row(
    coordinate: f64,
    state: &AmplitudeState,
    check: Option<&AmplitudeState>,
    p: f64,
) -> Result<Row> {
    let rho = werner_mix(&assemble_rho(state)?, p)?;
    let record = tripartite_negativity(&rho)?.at(coordinate);
    let (solver_gap, closedform_gap) = match check {
        Some(other) => {
            let gap = vec_max_abs_diff(&state.to_array(), &other.to_array());
            let inputs = ClosedFormInputs::from_state(state, p)?;
            (Some(gap), Some(cross_check(&inputs, record.bipartite()).resolved_max_gap()))
        }
        None => (None, None),
    };
    Ok(Row {
        record,
        solver_gap,
        closedform_gap,
    })
}

/// Evolves, assembles, mixes and measures every sample of `config`.
pub fn run(config: &RunConfig) -> Result<Table> {
    config.validate()?;
    let p = config.init.p;
    let rows = match config.sweep {
        None | Some(Sweep {
            variable: SweepVariable::Time,
            ..
        }) => {
            let times = match config.sweep {
                Some(s) => s.points(),
                None => uniform_grid(config.t_end, config.samples),
            };
            let evo = evolve(&config.params, &config.init, &times, config.solver)?;
            (0..times.len())
                .into_par_iter()
                .map(|i| {
                    let check = evo.secondary.as_ref().map(|s| &s[i]);
                    row(times[i], &evo.primary[i], check, p)
                })
                .collect::<Result<Vec<_>>>()?
        }
        Some(sweep) => sweep
            .points()
            .into_par_iter()
            .map(|v| {
                let (mut params, mut init) = (config.params, config.init);
                match sweep.variable {
                    SweepVariable::Phi => init.phi = v,
                    SweepVariable::KUniform => params.k = [v; 3],
                    SweepVariable::Time => unreachable!(),
                }
                let times = [0.0, config.t_end];
                let evo = evolve(&params, &init, &times, config.solver)?;
                let check = evo.secondary.as_ref().map(|s| &s[1]);
                row(v, &evo.primary[1], check, p)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(Table {
        label: config.label.clone(),
        axis: config.axis(),
        rows,
    })
}

/// Runs independent configurations in parallel, preserving order.
pub fn run_all(configs: &[RunConfig]) -> Result<Vec<Table>> {
    configs.par_iter().map(run).collect()
}
