//! Dense complex matrix kernel for the 2-qubit system.
//!
//! Everything here works on small dense matrices (2x2 and 4x4 in practice):
//! Hermitian eigendecomposition by cyclic Jacobi rotations, Kronecker
//! products, partial trace / partial transpose over either subsystem,
//! Frobenius norm and unitarity checks. All operations are pure functions
//! on immutable values.

use num_complex::Complex;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Default tolerance for "is this matrix Hermitian" pre-checks.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-9;

/// Jacobi sweep budget for the Hermitian eigensolver.
const JACOBI_MAX_SWEEPS: usize = 50;

/// Off-diagonal magnitude below which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-14;

/// Which subsystem of the bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl Side {
    /// The opposite subsystem.
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => write!(f, "A"),
            Side::B => write!(f, "B"),
        }
    }
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major data. Panics if the length does not match.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// Diagonal matrix from real values.
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, Complex64::new(d, 0.0));
        }
        m
    }

    /// Assemble a square matrix whose k-th column is `columns[k]`.
    pub fn from_columns(columns: &[ComplexVector]) -> Self {
        let n = columns.len();
        let mut m = Self::zeros(columns[0].dim(), n);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), m.rows, "column length mismatch");
            for i in 0..m.rows {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// U * self * U^dagger.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    /// Largest entrywise deviation from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut max = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                max = max.max(d);
            }
        }
        max
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= tol
    }

    /// (M + M^dagger)/2, absorbing roundoff before eigendecomposition.
    pub fn symmetrized(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    /// Kronecker product, (A (x) B)[(i*rB+k),(j*cB+l)] = A[i,j]*B[k,l].
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let aij = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, aij * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Trace out the given subsystem of a 4x4 bipartite operator.
    ///
    /// `partial_trace(Side::B)` returns the reduced operator on A,
    /// (tr_B M)[a,a'] = sum_b M[ab,a'b], and vice versa.
    pub fn partial_trace(&self, traced: Side) -> Self {
        assert_eq!((self.rows, self.cols), (4, 4), "partial trace needs a 4x4 input");
        let mut out = Self::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    let (row, col) = match traced {
                        Side::B => (2 * i + k, 2 * j + k),
                        Side::A => (2 * k + i, 2 * k + j),
                    };
                    sum += self.get(row, col);
                }
                out.set(i, j, sum);
            }
        }
        out
    }

    /// Transpose the index pair of one subsystem of a 4x4 bipartite operator.
    pub fn partial_transpose(&self, side: Side) -> Self {
        assert_eq!((self.rows, self.cols), (4, 4), "partial transpose needs a 4x4 input");
        let mut out = Self::zeros(4, 4);
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        let src = match side {
                            Side::B => (2 * a + b2, 2 * a2 + b),
                            Side::A => (2 * a2 + b, 2 * a + b2),
                        };
                        out.set(2 * a + b, 2 * a2 + b2, self.get(src.0, src.1));
                    }
                }
            }
        }
        out
    }

    /// sqrt(Tr(M^dagger M)).
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True iff max |U^dagger U - I| <= tol.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    /// Largest entrywise deviation of U^dagger U from the identity.
    pub fn unitary_deviation(&self) -> f64 {
        assert!(self.is_square());
        let product = self.adjoint().matmul(self);
        product.max_abs_diff(&Self::identity(self.rows))
    }

    /// Largest entrywise absolute difference from another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Apply the matrix to a vector.
    pub fn matvec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.cols, v.dim());
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self.get(i, j) * v[j];
            }
        }
        ComplexVector::new(out)
    }

    /// Nested `[re, im]` rows, the entry layout of the JSON wire formats.
    pub fn to_entry_rows(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let z = self.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect()
    }

    /// Parse the nested `[re, im]` row layout, checking the expected shape.
    pub fn from_entry_rows(rows: &[Vec<[f64; 2]>], n: usize) -> Result<Self> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected a {n}x{n} entry grid"
            )));
        }
        let mut m = Self::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &[re, im]) in row.iter().enumerate() {
                m.set(i, j, Complex64::new(re, im));
            }
        }
        Ok(m)
    }

    /// Hermitian eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Eigenvalues come back ascending with matching orthonormal eigenvector
    /// columns. Fails with `NotHermitian` if the input is asymmetric beyond
    /// [`DEFAULT_HERMITIAN_TOL`], and with `NoConvergence` if the sweep
    /// budget is exhausted.
    pub fn eigh(&self) -> Result<EigenSystem> {
        assert!(self.is_square(), "eigh requires a square matrix");
        let dev = self.hermitian_deviation();
        if dev > DEFAULT_HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let n = self.rows;
        let mut a = self.symmetrized();
        let mut v = Self::identity(n);

        let mut converged = false;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if max_off_diagonal(&a) <= JACOBI_OFF_TOL {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && max_off_diagonal(&a) > JACOBI_OFF_TOL {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }

        // Sort ascending, carrying eigenvector columns along.
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

        let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = Self::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for r in 0..n {
                vectors.set(r, dst, v.get(r, src));
            }
        }
        Ok(EigenSystem {
            eigenvalues,
            eigenvectors: vectors,
        })
    }
}

/// Result of a Hermitian eigendecomposition: ascending eigenvalues and the
/// matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    /// The k-th eigenvector column.
    pub fn eigenvector(&self, k: usize) -> ComplexVector {
        let n = self.eigenvectors.rows();
        ComplexVector::new((0..n).map(|i| self.eigenvectors.get(i, k)).collect())
    }

    /// V diag(lambda) V^dagger.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::diagonal(&self.eigenvalues);
        self.eigenvectors
            .matmul(&lambda)
            .matmul(&self.eigenvectors.adjoint())
    }
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut max = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            max = max.max(a.get(p, q).norm());
        }
    }
    max
}

/// One Jacobi rotation zeroing the (p,q) entry of the Hermitian matrix `a`,
/// accumulated into `v`.
///
/// With a_pq = r e^{i theta}, the 2x2 block [[c, -s], [sigma s, sigma c]]
/// (sigma = e^{-i theta}) reduces the pair to the real symmetric case, where
/// the usual stable tangent formula applies.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a.get(p, q);
    let r = apq.norm();
    if r <= JACOBI_OFF_TOL * 0.1 {
        return;
    }
    let sigma = apq.conj() / r;
    let alpha = a.get(p, p).re;
    let beta = a.get(q, q).re;
    let w = (alpha - beta) / (2.0 * r);
    let t = if w >= 0.0 {
        1.0 / (w + (w * w + 1.0).sqrt())
    } else {
        -1.0 / (-w + (w * w + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let ss = sigma * s;
    let sc = sigma * c;

    // Column transform A <- A R.
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c + aiq * ss);
        a.set(i, q, aiq * sc - aip * s);
    }
    // Row transform A <- R^dagger A.
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c + aqj * ss.conj());
        a.set(q, j, aqj * sc.conj() - apj * s);
    }
    // Pin the rotated pair to exact Hermitian form.
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    a.set(p, p, Complex64::new(app.re, 0.0));
    a.set(q, q, Complex64::new(aqq.re, 0.0));
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));

    // Accumulate eigenvectors V <- V R.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c + viq * ss);
        v.set(i, q, viq * sc - vip * s);
    }
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(data: Vec<Complex64>) -> Self {
        Self { data }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self {
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// |self><other|.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                m.set(i, j, self.data[i] * other.data[j].conj());
            }
        }
        m
    }

    /// The rank-one projector |self><self|.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }
}

impl std::ops::Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

/// Pauli sigma_x.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

/// Pauli sigma_y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// Pauli sigma_z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

/// The three Pauli matrices in x, y, z order.
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}
