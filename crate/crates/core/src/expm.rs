//! Matrix exponential for small, possibly non-normal complex matrices.
//!
//! Two routes: a diagonalization `V diag(e^{μt}) V⁻¹` when the eigenvector
//! basis is well conditioned, and scaling-and-squaring of a truncated Taylor
//! series otherwise (defective or nearly defective generators).

use num_complex::Complex64 as C64;

use crate::linalg::{SquareMatrix, ONE, ZERO};

/// Eigenvector bases with `‖V‖₁‖V⁻¹‖₁` at or above this use the series route.
pub const MAX_EIGENBASIS_CONDITION: f64 = 1e8;

/// Truncation tolerance of the Taylor series (relative to the partial sum).
pub const SERIES_TOL: f64 = 1e-16;

const MAX_TAYLOR_TERMS: usize = 40;

/// `e^A` by scaling and squaring with a truncated Taylor series.
pub fn expm_series<const N: usize>(a: &SquareMatrix<N>) -> SquareMatrix<N> {
    let norm = a.norm_1();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a.scale(C64::new(0.5f64.powi(squarings), 0.0));

    let mut sum = SquareMatrix::<N>::identity();
    let mut term = SquareMatrix::<N>::identity();
    for k in 1..=MAX_TAYLOR_TERMS {
        term = (&term * &b).scale(C64::new(1.0 / k as f64, 0.0));
        sum = sum + term;
        if term.norm_1() <= SERIES_TOL * sum.norm_1() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Which route a [`Propagator`] uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExpPath {
    /// Diagonalization; `condition` is `‖V‖₁‖V⁻¹‖₁`.
    Eigen { condition: f64 },
    /// Scaling and squaring. `condition` is the rejected basis condition
    /// number, infinite when no basis could be formed.
    Series { condition: f64 },
}

#[derive(Clone, Debug)]
enum Route<const N: usize> {
    Eigen {
        values: [C64; N],
        vectors: SquareMatrix<N>,
        inverse: SquareMatrix<N>,
    },
    Series,
}

/// Evaluates `e^{Mt}` for a fixed `M` and arbitrary `t`.
#[derive(Clone, Debug)]
pub struct Propagator<const N: usize> {
    generator: SquareMatrix<N>,
    route: Route<N>,
    path: ExpPath,
}

impl<const N: usize> Propagator<N> {
    pub fn new(generator: SquareMatrix<N>) -> Self {
        match Eigensystem::compute(&generator) {
            Some(eig) if eig.condition < MAX_EIGENBASIS_CONDITION => Self {
                generator,
                path: ExpPath::Eigen {
                    condition: eig.condition,
                },
                route: Route::Eigen {
                    values: eig.values,
                    vectors: eig.vectors,
                    inverse: eig.inverse,
                },
            },
            other => Self {
                generator,
                route: Route::Series,
                path: ExpPath::Series {
                    condition: other.map_or(f64::INFINITY, |e| e.condition),
                },
            },
        }
    }

    /// Force the series route regardless of conditioning.
    pub fn series(generator: SquareMatrix<N>) -> Self {
        Self {
            generator,
            route: Route::Series,
            path: ExpPath::Series {
                condition: f64::NAN,
            },
        }
    }

    pub fn path(&self) -> ExpPath {
        self.path
    }

    pub fn generator(&self) -> &SquareMatrix<N> {
        &self.generator
    }

    pub fn matrix(&self, t: f64) -> SquareMatrix<N> {
        if t == 0.0 {
            return SquareMatrix::identity();
        }
        match &self.route {
            Route::Eigen {
                values,
                vectors,
                inverse,
            } => {
                let d = SquareMatrix::from_diagonal(std::array::from_fn(|i| (values[i] * t).exp()));
                &(vectors * &d) * inverse
            }
            Route::Series => expm_series(&self.generator.scale(C64::new(t, 0.0))),
        }
    }

    /// `e^{Mt} v`.
    pub fn apply(&self, t: f64, v: &[C64; N]) -> [C64; N] {
        if t == 0.0 {
            return *v;
        }
        match &self.route {
            Route::Eigen {
                values,
                vectors,
                inverse,
            } => {
                let w = inverse.mul_vec(v);
                let scaled: [C64; N] = std::array::from_fn(|i| w[i] * (values[i] * t).exp());
                vectors.mul_vec(&scaled)
            }
            Route::Series => self.matrix(t).mul_vec(v),
        }
    }
}

/// Right eigenpairs of a general complex matrix, columns of `vectors` having
/// unit Euclidean norm.
#[derive(Clone, Debug)]
pub struct Eigensystem<const N: usize> {
    pub values: [C64; N],
    pub vectors: SquareMatrix<N>,
    pub inverse: SquareMatrix<N>,
    pub condition: f64,
}

impl<const N: usize> Eigensystem<N> {
    /// Returns `None` if the eigenvector matrix is singular or the eigenpairs
    /// fail the residual check.
    pub fn compute(m: &SquareMatrix<N>) -> Option<Self> {
        let scale = m.norm_1();
        if scale == 0.0 {
            return Some(Self {
                values: [ZERO; N],
                vectors: SquareMatrix::identity(),
                inverse: SquareMatrix::identity(),
                condition: 1.0,
            });
        }
        let coeffs = characteristic_polynomial(m);
        let roots = polynomial_roots(&coeffs)?;

        let mut values = [ZERO; N];
        let mut vectors = SquareMatrix::<N>::zeros();
        for (k, &mu0) in roots.iter().enumerate() {
            let (mu, v) = inverse_iteration(m, mu0, scale);
            values[k] = mu;
            for i in 0..N {
                vectors[(i, k)] = v[i];
            }
        }

        // Residual ‖MV - VΛ‖₁ relative to ‖M‖₁.
        let residual = (m * &vectors - &vectors * &SquareMatrix::from_diagonal(values)).norm_1();
        if !(residual <= 1e-11 * scale) {
            return None;
        }
        let inverse = vectors.inverse()?;
        let condition = vectors.norm_1() * inverse.norm_1();
        if !condition.is_finite() {
            return None;
        }
        Some(Self {
            values,
            vectors,
            inverse,
            condition,
        })
    }
}

/// Monic characteristic polynomial coefficients `c[0] + c[1] x + … + x^N`
/// (Faddeev–LeVerrier); returns `N + 1` coefficients.
pub fn characteristic_polynomial<const N: usize>(a: &SquareMatrix<N>) -> Vec<C64> {
    let mut c = vec![ZERO; N + 1];
    c[N] = ONE;
    let mut mk = SquareMatrix::<N>::zeros();
    for k in 1..=N {
        mk = &(a * &mk) + &SquareMatrix::identity().scale(c[N + 1 - k]);
        c[N - k] = -(a * &mk).trace() / k as f64;
    }
    c
}

fn horner(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

/// All roots of a monic polynomial by Aberth–Ehrlich iteration.
fn polynomial_roots(c: &[C64]) -> Option<Vec<C64>> {
    let n = c.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    // Fujiwara-style scale of the root moduli.
    let radius = c[..n]
        .iter()
        .enumerate()
        .map(|(k, x)| x.norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            C64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p == ZERO {
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        ONE / d
                    }
                })
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.iter().all(|x| x.is_finite()).then_some(z)
}

/// Refine an approximate eigenvalue and find its eigenvector by shifted
/// inverse iteration.
fn inverse_iteration<const N: usize>(m: &SquareMatrix<N>, mu0: C64, scale: f64) -> (C64, [C64; N]) {
    let mut mu = mu0;
    // Deterministic start vector with no special alignment to the model's
    // symmetric subspaces.
    let mut v: [C64; N] = std::array::from_fn(|i| C64::new(1.0 + 0.37 * i as f64, 0.11 * (i * i) as f64));
    normalize(&mut v);
    for _ in 0..4 {
        let shifted = *m - SquareMatrix::identity().scale(mu);
        let lu = match shifted.lu() {
            Some(lu) => lu,
            None => {
                // Exactly singular: nudge off the eigenvalue.
                let nudged = *m - SquareMatrix::identity().scale(mu + C64::new(scale * 1e-14, 0.0));
                match nudged.lu() {
                    Some(lu) => lu,
                    None => break,
                }
            }
        };
        let x = lu.solve(&v);
        let vx: C64 = v.iter().zip(x.iter()).map(|(a, b)| a.conj() * b).sum();
        let mut next = x;
        if !normalize(&mut next) {
            break;
        }
        v = next;
        let av = m.mul_vec(&v);
        mu = v.iter().zip(av.iter()).map(|(a, b)| a.conj() * b).sum();
        if vx.norm() * scale > 1e15 {
            break;
        }
    }
    (mu, v)
}

fn normalize<const N: usize>(v: &mut [C64; N]) -> bool {
    let n = crate::linalg::vec_norm(v);
    if !(n.is_finite() && n > 0.0) {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= n);
    true
}
