//! Validated two-qubit density matrices, their Bloch canonical form, and
//! the named state families used throughout the crate.
//!
//! Basis order is fixed as |00>, |01>, |10>, |11> (row-major, first index is
//! subsystem A) everywhere, and the Bell basis is fixed in the order
//! Phi+, Psi+, Psi-, Phi-.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{paulis, ComplexMatrix, ComplexVector, Side};

/// Default tolerance for Hermiticity / positivity checks on states.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Tolerance on |Tr(rho) - 1|.
const TRACE_TOL: f64 = 1e-10;

/// Four real eigenvalues of a state, stored in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: [f64; 4],
}

impl Spectrum {
    /// Sorts descending and validates: entries in [0,1], summing to 1.
    pub fn new(mut values: [f64; 4]) -> Result<Self> {
        values.sort_by(|a, b| b.total_cmp(a));
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(sum));
        }
        if values[3] < 0.0 {
            return Err(Error::NotPSD(values[3]));
        }
        if values[0] > 1.0 + TRACE_TOL {
            return Err(Error::OutOfRange(format!(
                "eigenvalue {} exceeds 1",
                values[0]
            )));
        }
        Ok(Self { values })
    }

    /// Clip eigenvalues in (-psd_tol, 0) to zero and renormalize the sum.
    /// Rejects anything below -psd_tol.
    pub(crate) fn clipped(raw: &[f64], psd_tol: f64) -> Result<Self> {
        let mut values = [0.0f64; 4];
        for (dst, &ev) in values.iter_mut().zip(raw) {
            if ev < -psd_tol {
                return Err(Error::NotPSD(ev));
            }
            *dst = ev.max(0.0);
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(sum));
        }
        for v in &mut values {
            *v = (*v / sum).clamp(0.0, 1.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Eigenvalues, descending (a1 >= a2 >= a3 >= a4).
    pub fn values(&self) -> &[f64; 4] {
        &self.values
    }

    /// Sum of squared eigenvalues, Tr(rho^2).
    pub fn purity(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Validated 4x4 density matrix of the bipartite system.
///
/// Construction enforces Hermiticity, unit trace and positivity; the
/// (clipped, renormalized) spectrum is cached for entropy work.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    spectrum: Spectrum,
    psd_tol: f64,
}

impl DensityMatrix {
    /// Validate a 4x4 matrix as a state with the default tolerance.
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::from_matrix_with_tol(m, DEFAULT_PSD_TOL)
    }

    /// Validate with an explicit Hermiticity/positivity tolerance.
    pub fn from_matrix_with_tol(m: ComplexMatrix, psd_tol: f64) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "expected a 4x4 state, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let dev = m.hermitian_deviation();
        if dev > psd_tol {
            return Err(Error::NotHermitian(dev));
        }
        let mat = m.symmetrized();
        let tr = mat.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        let sys = mat.eigh()?;
        let spectrum = Spectrum::clipped(&sys.eigenvalues, psd_tol)?;
        Ok(Self {
            mat,
            spectrum,
            psd_tol,
        })
    }

    /// The maximally mixed state I/4.
    pub fn maximally_mixed() -> Self {
        Self::from_matrix(ComplexMatrix::identity(4).scale_re(0.25))
            .expect("I/4 is a valid state")
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Cached clipped spectrum, descending.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    /// Reduced 2x2 state of the given subsystem (traces out the other).
    pub fn marginal(&self, keep: Side) -> ComplexMatrix {
        self.mat.partial_trace(keep.other())
    }

    /// Tr(rho^2), computed from the cached spectrum.
    pub fn purity(&self) -> f64 {
        self.spectrum.purity()
    }
}

/// Local Bloch vectors and correlation matrix of the canonical form
/// rho = (1/4)[I + sum_i r_i sigma_i (x) I + sum_i s_i I (x) sigma_i
///            + sum_ij t_ij sigma_i (x) sigma_j].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// r_i = Tr[rho (sigma_i (x) I)], s_i = Tr[rho (I (x) sigma_i)],
/// t_ij = Tr[rho (sigma_i (x) sigma_j)].
pub fn bloch_decompose(rho: &DensityMatrix) -> BlochForm {
    let sig = paulis();
    let i2 = ComplexMatrix::identity(2);
    let mut form = BlochForm {
        r: [0.0; 3],
        s: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        form.r[i] = rho.matrix().matmul(&sig[i].kron(&i2)).trace().re;
        form.s[i] = rho.matrix().matmul(&i2.kron(&sig[i])).trace().re;
        for j in 0..3 {
            form.t[i][j] = rho.matrix().matmul(&sig[i].kron(&sig[j])).trace().re;
        }
    }
    form
}

/// Assemble the canonical-form sum and validate it as a state.
/// Fails with `NotPSD` when the parameters leave the state space.
pub fn bloch_compose(form: &BlochForm) -> Result<DensityMatrix> {
    let sig = paulis();
    let i2 = ComplexMatrix::identity(2);
    let mut m = ComplexMatrix::identity(4);
    for i in 0..3 {
        m = m.add(&sig[i].kron(&i2).scale_re(form.r[i]));
        m = m.add(&i2.kron(&sig[i]).scale_re(form.s[i]));
        for j in 0..3 {
            m = m.add(&sig[i].kron(&sig[j]).scale_re(form.t[i][j]));
        }
    }
    DensityMatrix::from_matrix(m.scale_re(0.25))
}

/// Correlation parameters (c1, c2, c3) of a Bell-diagonal state, with the
/// derived chi = 1 + c1 + c2 + c3. Construction requires the point to lie
/// in the Bell tetrahedron (all four eigenvalues non-negative).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellDiagonalParams {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let p = Self { c1, c2, c3 };
        let min = p
            .eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -1e-12 {
            return Err(Error::NotPSD(min));
        }
        Ok(p)
    }

    pub fn c(&self) -> (f64, f64, f64) {
        (self.c1, self.c2, self.c3)
    }

    /// chi = 1 + c1 + c2 + c3.
    pub fn chi(&self) -> f64 {
        1.0 + self.c1 + self.c2 + self.c3
    }

    /// Closed-form eigenvalues
    /// (chi - 2c1)/4, (chi - 2c2)/4, (chi - 2c3)/4, (2 - chi)/4.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let chi = self.chi();
        [
            (chi - 2.0 * self.c1) / 4.0,
            (chi - 2.0 * self.c2) / 4.0,
            (chi - 2.0 * self.c3) / 4.0,
            (2.0 - chi) / 4.0,
        ]
    }
}

/// Bell-diagonal state: zero local Bloch vectors, T = diag(c1, c2, c3).
pub fn bell_diagonal(params: &BellDiagonalParams) -> Result<DensityMatrix> {
    let (c1, c2, c3) = params.c();
    bloch_compose(&BlochForm {
        r: [0.0; 3],
        s: [0.0; 3],
        t: [
            [c1, 0.0, 0.0],
            [0.0, c2, 0.0],
            [0.0, 0.0, c3],
        ],
    })
}

/// Werner state p |Phi+><Phi+| + (1-p) I/4.
///
/// Spectrum {(1+3p)/4, (1-p)/4 x3}.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "Werner mixing parameter p = {p} not in [0, 1]"
        )));
    }
    let phi = bell_basis()[0].projector();
    let m = phi
        .scale_re(p)
        .add(&ComplexMatrix::identity(4).scale_re((1.0 - p) / 4.0));
    DensityMatrix::from_matrix(m)
}

/// State incoherent in the computational basis:
/// diag(a1, a2, a3, a4) on |00>, |01>, |10>, |11>.
pub fn comp_diagonal(spec: &Spectrum) -> DensityMatrix {
    DensityMatrix::from_matrix(ComplexMatrix::diagonal(spec.values()))
        .expect("diagonal matrix of a valid spectrum is a valid state")
}

/// Classically correlated bit pair p |00><00| + (1-p) |11><11|.
pub fn correlated_bits(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "mixture weight p = {p} not in [0, 1]"
        )));
    }
    DensityMatrix::from_matrix(ComplexMatrix::diagonal(&[p, 0.0, 0.0, 1.0 - p]))
}

/// The four Bell vectors in the fixed order Phi+, Psi+, Psi-, Phi-.
pub fn bell_basis() -> [ComplexVector; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        ComplexVector::from_real(&[h, 0.0, 0.0, h]),
        ComplexVector::from_real(&[0.0, h, h, 0.0]),
        ComplexVector::from_real(&[0.0, h, -h, 0.0]),
        ComplexVector::from_real(&[h, 0.0, 0.0, -h]),
    ]
}

/// Wire format for states:
/// `{"dim":[2,2],"matrix":[[[re,im],...4],...4]}`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateJson {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self {
            dim: [2, 2],
            matrix: rho.matrix().to_entry_rows(),
        }
    }

    /// Parse and validate into a density matrix.
    pub fn into_state_with_tol(self, psd_tol: f64) -> Result<DensityMatrix> {
        if self.dim != [2, 2] {
            return Err(Error::DimensionMismatch(format!(
                "expected dim [2,2], got {:?}",
                self.dim
            )));
        }
        let m = ComplexMatrix::from_entry_rows(&self.matrix, 4)?;
        DensityMatrix::from_matrix_with_tol(m, psd_tol)
    }

    pub fn into_state(self) -> Result<DensityMatrix> {
        self.into_state_with_tol(DEFAULT_PSD_TOL)
    }
}

/// The mixed two-level state of the dense-coding illustration: subsystem A
/// carries [[a, b], [b, 1-a]] and subsystem B sits in |0>.
///
/// Total eigenvalues (1 +- q)/2 with q = sqrt(1 - 4a + 4a^2 + 4b^2); invalid
/// (a, b) combinations fail the positivity check.
pub fn two_level_demo_state(a: f64, b: f64) -> Result<DensityMatrix> {
    let qubit = ComplexMatrix::from_real(2, 2, &[a, b, b, 1.0 - a]);
    let ground = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
    DensityMatrix::from_matrix(qubit.kron(&ground))
}
