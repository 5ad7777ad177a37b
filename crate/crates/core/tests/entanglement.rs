use approx::assert_abs_diff_eq;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tripent::dynamics::uniform_grid;
use tripent::system::INV_SQRT_3;
use tripent::*;

/// `det(A − x I)` by Gaussian elimination with partial pivoting.
fn shifted_det(a: &[[C64; 4]; 4], x: f64) -> f64 {
    let mut m = *a;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let mut det = C64::new(1.0, 0.0);
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm())).unwrap();
        if m[piv][col].norm() == 0.0 {
            return 0.0;
        }
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..4 {
            let f = m[r][col] / m[col][col];
            for c in col..4 {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    det.re
}

/// Real roots of the characteristic polynomial: sign changes on a fine
/// grid, refined by bisection.
fn bisection_eigenvalues(a: &[[C64; 4]; 4]) -> Vec<f64> {
    let bound: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt() + 1.0;
    let n = 20_000;
    let xs: Vec<f64> = (0..=n).map(|i| -bound + 2.0 * bound * i as f64 / n as f64).collect();
    let mut roots = Vec::new();
    for w in xs.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (shifted_det(a, lo), shifted_det(a, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if shifted_det(a, mid) * shifted_det(a, lo) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

#[test]
fn jacobi_matches_characteristic_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..40 {
        let mut a = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            a[i][i] = C64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in i + 1..4 {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[i][j] = z;
                a[j][i] = z.conj();
            }
        }
        let jacobi = hermitian_eigenvalues(&SquareMatrix::from_rows(a)).unwrap();
        let oracle = bisection_eigenvalues(&a);
        assert_eq!(oracle.len(), 4, "{oracle:?}");
        for (x, y) in jacobi.iter().zip(&oracle) {
            assert_abs_diff_eq!(*x, *y, epsilon = 1e-9);
        }
    }
}

#[test]
fn w_state_negativity_grows_with_purity() {
    let state = InitialState::w_state(0.0, 1.0).amplitudes();
    let mut previous = -1.0;
    let mut values = Vec::new();
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let rho = werner_mix(&assemble_rho(&state).unwrap(), p).unwrap();
        let n = tripartite_negativity(&rho).unwrap().n3;
        assert!(n >= previous - 1e-12, "p = {p}");
        previous = n;
        values.push(n);
    }
    assert_eq!(values[0], 0.0);
    assert_abs_diff_eq!(values[10], 2f64.sqrt() / 3.0, epsilon = 1e-12);
    // Strictly increasing once entangled.
    let first_alive = values.iter().position(|&n| n > 0.0).unwrap();
    assert!(values[first_alive..].windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn product_states_are_separable_on_their_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let u = [0; 2].map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let v = [0; 4].map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let nu = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let first = SquareMatrix::<2>::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| u[i] * u[j].conj() / (nu * nu))));
        let rest = SquareMatrix::<4>::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| v[i] * v[j].conj() / (nv * nv))));
        let rho = DensityMatrix::product(&first, &rest).unwrap();
        assert!(bipartite_negativity(&rho, Atom::One).unwrap() < 1e-10);
    }
}

fn evolved_states(params: &SystemParams, init: &InitialState) -> Vec<AmplitudeState> {
    let gen = build_generator(params);
    evolve_resolvent(&gen, &init.amplitudes(), &uniform_grid(4.0, 9)).unwrap().states
}

fn arb_state() -> impl Strategy<Value = (SystemParams, InitialState)> {
    (
        prop::array::uniform3(0.0..20.0f64),
        -1.0..1.0f64,
        prop::array::uniform3(-1.0..1.0f64),
        0.0..std::f64::consts::TAU,
        0.0..=1.0f64,
    )
        .prop_filter("nonzero", |(_, _, v, _, _)| v.iter().any(|x| x.abs() > 1e-3))
        .prop_map(|(k, log_rabi, v, phi, p)| {
            let params = SystemParams::uniform(0.0, 10f64.powf(log_rabi), 1.0).with_k(k);
            (params, InitialState::normalized(v[0], v[1], v[2], phi, p).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_phase_leaves_negativities_unchanged((params, init) in arb_state(), theta in -3.2..3.2f64) {
        for s in evolved_states(&params, &init) {
            let shifted = AmplitudeState { c12: s.c12 * C64::from_polar(1.0, theta), ..s };
            let n = |st: &AmplitudeState| {
                let rho = werner_mix(&assemble_rho(st).unwrap(), init.p).unwrap();
                tripartite_negativity(&rho).unwrap()
            };
            let (a, b) = (n(&s), n(&shifted));
            for (x, y) in a.bipartite().iter().zip(b.bipartite()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mixed_states_are_valid_and_pt_is_an_involution((params, init) in arb_state()) {
        for s in evolved_states(&params, &init) {
            let rho = werner_mix(&assemble_rho(&s).unwrap(), init.p).unwrap();
            // Full validation: Hermitian, unit trace, positive.
            DensityMatrix::new(*rho.matrix()).unwrap();
            for atom in Atom::ALL {
                let pt = partial_transpose(rho.matrix(), atom);
                prop_assert_eq!(partial_transpose(&pt, atom), *rho.matrix());
                prop_assert!((pt.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_forms_track_the_eigenvalue_route((params, init) in arb_state()) {
        for s in evolved_states(&params, &init) {
            let rho = werner_mix(&assemble_rho(&s).unwrap(), init.p).unwrap();
            let numeric = tripartite_negativity(&rho).unwrap().bipartite();
            let check = tripent::entanglement::cross_check(
                &ClosedFormInputs::from_state(&s, init.p).unwrap(),
                numeric,
            );
            prop_assert!(check.is_consistent(), "{:?}", check);
            prop_assert!(check.cut3_symmetric_gap < 1e-8);
        }
    }
}

#[test]
fn w_state_closed_form_is_exact() {
    let w = C64::new(INV_SQRT_3, 0.0);
    let inputs = ClosedFormInputs::new(w, w, w, 0.0, 1.0).unwrap();
    for n in closed_form_negativities(&inputs).values {
        assert_abs_diff_eq!(n, 2f64.sqrt() / 3.0, epsilon = 1e-12);
    }
}
