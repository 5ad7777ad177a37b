//! Fixed-size dense complex matrices.
//!
//! Everything in this crate is 4×4 (amplitude generator) or 8×8 (three-qubit
//! density matrices), so matrices are stack arrays indexed `[row][col]`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex `N`×`N` matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix<const N: usize> {
    data: [[C64; N]; N],
}

impl<const N: usize> Default for SquareMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> SquareMatrix<N> {
    pub const DIM: usize = N;

    pub fn zeros() -> Self {
        Self { data: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(data: [[C64; N]; N]) -> Self {
        Self { data }
    }

    pub fn from_real(data: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = C64::new(data[i][j], 0.0);
            }
        }
        m
    }

    pub fn from_diagonal(diag: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i][i] = d;
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.data
    }

    pub fn diagonal(&self) -> [C64; N] {
        std::array::from_fn(|i| self.data[i][i])
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.data.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[j][i] = self.data[i][j].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[j][i] = self.data[i][j];
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[C64; N]) -> [C64; N] {
        std::array::from_fn(|i| {
            self.data[i]
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a * b)
                .sum()
        })
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.data[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_fro(&self) -> f64 {
        self.data
            .iter()
            .flatten()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .flatten()
            .zip(other.data.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `A - A^H`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// LU factorization with partial pivoting; `None` when a pivot vanishes.
    pub fn lu(&self) -> Option<Lu<N>> {
        let mut a = self.data;
        let mut perm: [usize; N] = std::array::from_fn(|i| i);
        let scale = self.norm_1().max(f64::MIN_POSITIVE);
        for k in 0..N {
            let (p, pmax) = (k..N)
                .map(|i| (i, a[i][k].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= scale * 1e-18 {
                return None;
            }
            a.swap(k, p);
            perm.swap(k, p);
            let pivot = a[k][k];
            for i in k + 1..N {
                let f = a[i][k] / pivot;
                a[i][k] = f;
                for j in k + 1..N {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        Some(Lu { lu: a, perm })
    }

    pub fn inverse(&self) -> Option<Self> {
        let lu = self.lu()?;
        let mut inv = Self::zeros();
        for j in 0..N {
            let mut e = [ZERO; N];
            e[j] = ONE;
            let col = lu.solve(&e);
            for i in 0..N {
                inv.data[i][j] = col[i];
            }
        }
        Some(inv)
    }
}

/// Packed LU factors from [`SquareMatrix::lu`].
#[derive(Clone, Copy, Debug)]
pub struct Lu<const N: usize> {
    lu: [[C64; N]; N],
    perm: [usize; N],
}

impl<const N: usize> Lu<N> {
    pub fn solve(&self, b: &[C64; N]) -> [C64; N] {
        let mut x: [C64; N] = std::array::from_fn(|i| b[self.perm[i]]);
        for i in 0..N {
            for j in 0..i {
                let t = self.lu[i][j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..N).rev() {
            for j in i + 1..N {
                let t = self.lu[i][j] * x[j];
                x[i] -= t;
            }
            x[i] /= self.lu[i][i];
        }
        x
    }
}

impl<const N: usize> Index<(usize, usize)> for SquareMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for SquareMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i][j]
    }
}

impl<const N: usize> Add for SquareMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Add<&SquareMatrix<N>> for &SquareMatrix<N> {
    type Output = SquareMatrix<N>;

    fn add(self, rhs: &SquareMatrix<N>) -> SquareMatrix<N> {
        *self + *rhs
    }
}

impl<const N: usize> Sub for SquareMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<const N: usize> Mul<&SquareMatrix<N>> for &SquareMatrix<N> {
    type Output = SquareMatrix<N>;

    fn mul(self, rhs: &SquareMatrix<N>) -> SquareMatrix<N> {
        let mut out = SquareMatrix::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.data[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        out
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest componentwise modulus of `a - b`.
pub fn vec_max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
