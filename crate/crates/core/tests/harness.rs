use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use tripent::entanglement::NegativityRecord;
use tripent::harness::{read_csv, write_bundle, Row};
use tripent::*;

#[test]
fn presets_are_deterministic() {
    for id in PresetId::ALL {
        assert_eq!(expand_preset(id), expand_preset(id));
    }
}

#[test]
fn fig1a_bundle_writes_one_file_per_curve() {
    let dir = tempfile::tempdir().unwrap();
    let configs: Vec<RunConfig> = expand_preset(PresetId::Fig1a)
        .into_iter()
        .map(|c| RunConfig { samples: 5, ..c })
        .collect();
    let tables: Vec<Table> = configs.iter().map(|c| run(c).unwrap()).collect();
    let paths = write_bundle(dir.path(), &configs, &tables).unwrap();
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["fig1a_K0.csv", "fig1a_K10.csv", "fig1a_K20.csv", "fig1a_K5.csv"]);
    let first = read_csv(&paths[0]).unwrap();
    assert_eq!(first.columns, ["t", "n1_23", "n2_13", "n3_12", "n3"]);
    assert_eq!(first.rows.len(), 5);
    assert!((first.rows[0][4] - 2f64.sqrt() / 3.0).abs() < 1e-12);
}

#[test]
fn dual_solver_csv_has_gap_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("both.csv");
    let config = RunConfig {
        samples: 3,
        solver: Solver::Both,
        ..RunConfig::default()
    };
    write_csv(&run(&config).unwrap(), &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    let parsed = read_csv(&path).unwrap();
    assert!(parsed.column("solver_gap").unwrap().iter().all(|g| *g < 1e-6));
    assert!(parsed.column("closedform_gap").unwrap().iter().all(|g| *g < 1e-8));
}

fn phase_table(k: f64, rabi: f64, t_end: f64, start: f64, end: f64, steps: usize) -> Vec<NegativityRecord> {
    let config = RunConfig {
        params: SystemParams::uniform(k, rabi, 1.0),
        t_end,
        sweep: Some(Sweep {
            variable: SweepVariable::Phi,
            start,
            end,
            steps,
        }),
        ..RunConfig::default()
    };
    run(&config).unwrap().records()
}

#[test]
fn phase_sweep_is_two_pi_periodic() {
    for (k, rabi, t) in [(0.0, 10.0, 1.0), (5.0, 0.1, 10.0), (20.0, 10.0, 2.5)] {
        let n = 60;
        let recs = phase_table(k, rabi, t, 0.0, 2.0 * TAU, 2 * n + 1);
        for i in 0..=n {
            assert!((recs[i].n3 - recs[i + n].n3).abs() < 1e-9, "K={k} φ={}", recs[i].t);
        }
    }
}

#[test]
fn phase_reflection_without_dipole_coupling() {
    for (rabi, t) in [(10.0, 1.0), (0.1, 10.0)] {
        let n = 40;
        let recs = phase_table(0.0, rabi, t, -PI, PI, 2 * n + 1);
        for i in 0..=n {
            assert!((recs[n - i].n3 - recs[n + i].n3).abs() < 1e-9, "R={rabi} φ={}", recs[n + i].t);
        }
    }
}

/// With dipole coupling the reflection pairs `(φ, K)` with `(−φ, −K)`:
/// complex conjugation flips the sign of the whole Hamiltonian, and negating
/// the pseudomode amplitude restores the reservoir couplings but not `K`.
#[test]
fn phase_reflection_pairs_opposite_dipole_constants() {
    for (k, rabi, t) in [(5.0, 10.0, 1.0), (20.0, 0.1, 10.0)] {
        let phis = [0.3, 1.1, 2.0, 2.9];
        for phi in phis {
            let n = |k: f64, phi: f64| {
                let config = RunConfig {
                    params: SystemParams::uniform(k, rabi, 1.0),
                    init: InitialState::w_state(phi, 1.0),
                    t_end: t,
                    samples: 2,
                    ..RunConfig::default()
                };
                run(&config).unwrap().rows[1].record.n3
            };
            assert!((n(k, phi) - n(-k, -phi)).abs() < 1e-9, "K={k} φ={phi}");
        }
    }
}

#[test]
fn parse_config_examples() {
    let red = parse_config("K1=2 K2=18 K3=20 R=10 phi=3.141592653589793", &[]).unwrap();
    assert_eq!(red.len(), 1);
    assert_eq!(red[0].params.k, [2.0, 18.0, 20.0]);
    assert_eq!(parse_config("preset=fig1a", &[]).unwrap().len(), 4);
    let err = parse_config("p=1.5", &[]).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("`p`"), "{err}");
}

fn arb_row() -> impl Strategy<Value = Row> {
    (
        0.0..1e3f64,
        prop::array::uniform3(0.0..1.0f64),
        proptest::option::of((0.0..1e-6f64, 0.0..1e-8f64)),
    )
        .prop_map(|(t, n, gaps)| Row {
            record: NegativityRecord::from_bipartite(t, n),
            solver_gap: gaps.map(|g| g.0),
            closedform_gap: gaps.map(|g| g.1),
        })
}

proptest! {
    #[test]
    fn csv_round_trip_is_bit_exact(rows in prop::collection::vec(arb_row(), 0..30), gaps in any::<bool>()) {
        let rows: Vec<Row> = rows
            .into_iter()
            .map(|r| Row {
                solver_gap: gaps.then(|| r.solver_gap.unwrap_or(0.0)),
                closedform_gap: gaps.then(|| r.closedform_gap.unwrap_or(0.0)),
                ..r
            })
            .collect();
        let table = Table { label: "x".into(), axis: SweepVariable::Time, rows };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&table, &path).unwrap();
        let back = read_csv(&path).unwrap();
        prop_assert_eq!(back.rows.len(), table.rows.len());
        for (row, parsed) in table.rows.iter().zip(&back.rows) {
            let r = row.record;
            let mut expected = vec![r.t, r.n1_23, r.n2_13, r.n3_12, r.n3];
            if gaps {
                expected.push(row.solver_gap.unwrap());
                expected.push(row.closedform_gap.unwrap());
            }
            prop_assert_eq!(parsed.len(), expected.len());
            for (a, b) in parsed.iter().zip(&expected) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
