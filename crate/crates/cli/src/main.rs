use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tripent::harness::{parse_overrides, run_all, write_bundle};
use tripent::{detect_esd, parse_config, Error, Result, RunConfig, Sweep, Table};

/// Tripartite negativity of three dipole-coupled atoms in Lorentzian
/// reservoirs.
#[derive(Parser)]
#[command(name = "tripent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a configuration file (or the defaults) and write CSV.
    Run(Common),
    /// Expand a figure preset and write one CSV per curve.
    Preset {
        /// fig1a … fig4d
        id: String,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep time, phi or the uniform K and write CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Swept variable: time, phi or K.
        #[arg(long = "var")]
        variable: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Parse and validate without running.
    Validate(Common),
}

#[derive(Args)]
struct Common {
    /// Flat key=value configuration file.
    config: Option<PathBuf>,
    /// Override one key, e.g. `--set K1=2`. Repeatable; wins over the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// stepper, resolvent or both.
    #[arg(long)]
    solver: Option<String>,
    /// Output CSV path; preset bundles insert the curve label before the extension.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for relative output paths.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl Common {
    fn configs(&self, preset: Option<&str>) -> Result<Vec<RunConfig>> {
        let mut text = match &self.config {
            Some(path) => fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?,
            None => String::new(),
        };
        if let Some(id) = preset {
            text.push_str(&format!("\npreset={id}\n"));
        }
        let mut tokens = self.set.clone();
        if let Some(s) = &self.solver {
            tokens.push(format!("solver={s}"));
        }
        if let Some(o) = &self.output {
            tokens.push(format!("output={}", o.display()));
        }
        parse_config(&text, &parse_overrides(&tokens)?)
    }
}

fn summarize(path: &Path, table: &Table) {
    let records = table.records();
    let (first, last) = match (records.first(), records.last()) {
        (Some(f), Some(l)) => (f.n3, l.n3),
        _ => (f64::NAN, f64::NAN),
    };
    let esd = detect_esd(&records);
    let revived = esd.iter().filter(|d| d.revived).count();
    let mut line = format!(
        "{}: {} rows, N3 {first:.6} -> {last:.6}, {} death intervals ({revived} revived)",
        path.display(),
        records.len(),
        esd.len()
    );
    if let (Some(s), Some(c)) = (table.max_solver_gap(), table.max_closedform_gap()) {
        line.push_str(&format!(", max solver gap {s:.2e}, max closed-form gap {c:.2e}"));
    }
    println!("{line}");
}

fn execute(configs: &[RunConfig], out_dir: Option<&Path>) -> Result<()> {
    let out_dir = out_dir.unwrap_or(Path::new(""));
    if !out_dir.as_os_str().is_empty() {
        fs::create_dir_all(out_dir).map_err(|source| Error::Io {
            path: out_dir.to_path_buf(),
            source,
        })?;
    }
    let tables = run_all(configs)?;
    let paths = write_bundle(out_dir, configs, &tables)?;
    for (path, table) in paths.iter().zip(&tables) {
        summarize(path, table);
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(common) => execute(&common.configs(None)?, common.out_dir.as_deref()),
        Command::Preset { id, common } => execute(&common.configs(Some(&id))?, common.out_dir.as_deref()),
        Command::Sweep {
            common,
            variable,
            from,
            to,
            steps,
        } => {
            let sweep = Sweep {
                variable: variable.parse()?,
                start: from,
                end: to,
                steps,
            };
            let mut configs = common.configs(None)?;
            for c in &mut configs {
                c.sweep = Some(sweep);
                c.validate()?;
            }
            execute(&configs, common.out_dir.as_deref())
        }
        Command::Validate(common) => {
            for c in common.configs(None)? {
                let p = &c.params;
                println!(
                    "ok {}: K=({}, {}, {}) R={} lambda={} r=({:.6}, {:.6}, {:.6}) phi={} p={} t_end={} samples={} solver={} output={}",
                    if c.label.is_empty() { "-" } else { &c.label },
                    p.k[0], p.k[1], p.k[2], p.rabi, p.lambda, p.r[0], p.r[1], p.r[2],
                    c.init.phi, c.init.p, c.t_end, c.samples, c.solver, c.output.display()
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
