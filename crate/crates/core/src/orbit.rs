//! Global-unitary machinery: Haar sampling, Bell-diagonalizing unitaries,
//! and the closed-form orbit minimum of the conditional entropy.
//!
//! The conditional entropy over the orbit {U rho U^dagger} is bounded below
//! by S(rho) - 1 (the marginal entropy of a qubit tops out at 1 bit), and
//! the bound is attained by any unitary taking rho to Bell-diagonal form.
//! The minimum is therefore constructed, never searched; Haar probing exists
//! only as a falsification harness in the tests.

use serde::{Deserialize, Serialize};

use crate::classes::is_acvenn;
use crate::entropy::von_neumann;
use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector};
use crate::rng::SeedStream;
use crate::states::{bell_basis, DensityMatrix};

/// Tolerance for the U^dagger U = I validation.
pub const UNITARY_TOL: f64 = 1e-10;

/// Validated 4x4 global unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    mat: ComplexMatrix,
}

impl Unitary {
    /// Validate a 4x4 matrix as unitary within [`UNITARY_TOL`].
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows() != 4 || mat.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "expected a 4x4 unitary, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let dev = mat.unitary_deviation();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// The inverse U^dagger.
    pub fn inverse(&self) -> Unitary {
        Unitary {
            mat: self.mat.adjoint(),
        }
    }
}

/// Orbit optimum for a state: the minimal conditional entropy S(rho) - 1,
/// a unitary achieving it, and whether negativity is reachable at all.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub s_total: f64,
    pub min_cond_entropy: f64,
    pub achieving_unitary: Unitary,
    pub negativity_reachable: bool,
}

/// Wire format for unitaries and orbit reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitReportJson {
    pub s_total: f64,
    pub min_cond_entropy: f64,
    pub negativity_reachable: bool,
    pub achieving_unitary: Vec<Vec<[f64; 2]>>,
}

impl From<&OrbitReport> for OrbitReportJson {
    fn from(report: &OrbitReport) -> Self {
        Self {
            s_total: report.s_total,
            min_cond_entropy: report.min_cond_entropy,
            negativity_reachable: report.negativity_reachable,
            achieving_unitary: report.achieving_unitary.matrix().to_entry_rows(),
        }
    }
}

/// Draw a Haar-distributed 4x4 unitary: QR of a complex Ginibre matrix with
/// the R diagonal phases normalized away.
pub fn haar_unitary(rng: &mut SeedStream) -> Unitary {
    let n = 4;
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(
                i,
                j,
                Complex64::new(rng.standard_normal(), rng.standard_normal())
                    .scale(std::f64::consts::FRAC_1_SQRT_2),
            );
        }
    }
    let (q, r_diag) = gram_schmidt_qr(&g);
    // r_ii / |r_ii| is +1 by construction here; applying it anyway keeps the
    // published algorithm intact.
    let mut u = q;
    for j in 0..n {
        let phase = r_diag[j] / r_diag[j].norm();
        for i in 0..n {
            u.set(i, j, u.get(i, j) * phase);
        }
    }
    Unitary::new(u).expect("orthonormalized Ginibre columns form a unitary")
}

/// Modified Gram-Schmidt with a second orthogonalization pass; returns Q and
/// the diagonal of R.
fn gram_schmidt_qr(g: &ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    let n = g.rows();
    let mut q = g.clone();
    let mut r_diag = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    proj += q.get(i, k).conj() * q.get(i, j);
                }
                for i in 0..n {
                    let v = q.get(i, j) - proj * q.get(i, k);
                    q.set(i, j, v);
                }
            }
        }
        let norm = (0..n).map(|i| q.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        r_diag[j] = Complex64::new(norm, 0.0);
        for i in 0..n {
            let v = q.get(i, j) / norm;
            q.set(i, j, v);
        }
    }
    (q, r_diag)
}

/// Conjugate a state: U rho U^dagger.
///
/// Conjugation preserves Hermiticity and positivity for any matrix, so after
/// an explicit trace renormalization (a no-op up to roundoff for a unitary)
/// the output revalidates unconditionally.
pub fn apply(u: &Unitary, rho: &DensityMatrix) -> DensityMatrix {
    let m = rho.matrix().conjugate_by(u.matrix());
    let tr = m.trace().re;
    DensityMatrix::from_matrix_with_tol(m.scale_re(1.0 / tr), rho.psd_tol())
        .expect("conjugation preserves state validity")
}

/// The unitary sending the k-th descending eigenvector of `rho` to the k-th
/// Bell vector (order Phi+, Psi+, Psi-, Phi-), so that the conjugated state
/// is Bell-diagonal and both marginals are I/2.
///
/// Degenerate spectra are tie-broken deterministically: each eigenvector is
/// phase-rotated so its first nonzero component is real positive, then equal
/// eigenvalues are ordered lexicographically by component.
pub fn bell_diagonalizing_unitary(rho: &DensityMatrix) -> Unitary {
    let sys = rho
        .matrix()
        .eigh()
        .expect("a validated state is Hermitian");
    let n = 4;

    let mut vectors: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let v = sys.eigenvector(k);
            let mut comps: Vec<Complex64> = (0..n).map(|i| v[i]).collect();
            normalize_phase(&mut comps);
            (sys.eigenvalues[k], comps)
        })
        .collect();
    vectors.sort_by(|(ea, va), (eb, vb)| {
        eb.total_cmp(ea).then_with(|| lex_cmp(va, vb))
    });

    // U = sum_k |m_k><v_k|
    let bell = bell_basis();
    let mut u = ComplexMatrix::zeros(n, n);
    for (k, (_, v)) in vectors.iter().enumerate() {
        let vk = ComplexVector::new(v.clone());
        u = u.add(&bell[k].outer(&vk));
    }
    Unitary::new(u).expect("a change of orthonormal basis is unitary")
}

/// Rotate a global phase so the first component above roundoff is real
/// positive.
fn normalize_phase(comps: &mut [Complex64]) {
    let Some(first) = comps.iter().find(|z| z.norm() > 1e-12) else {
        return;
    };
    let phase = first.conj() / first.norm();
    for z in comps.iter_mut() {
        *z *= phase;
    }
}

fn lex_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// Closed-form orbit minimum of the conditional entropy: S(rho) - 1,
/// achieved by the Bell-diagonalizing unitary.
pub fn min_conditional_entropy(rho: &DensityMatrix) -> OrbitReport {
    let s_total = von_neumann(rho);
    OrbitReport {
        s_total,
        min_cond_entropy: s_total - 1.0,
        achieving_unitary: bell_diagonalizing_unitary(rho),
        negativity_reachable: !is_acvenn(rho),
    }
}

/// A unitary whose conjugate of `rho` has negative conditional entropy, or
/// `None` when no such unitary exists (the state sits in ACVENN).
pub fn negating_unitary(rho: &DensityMatrix) -> Option<Unitary> {
    if is_acvenn(rho) {
        None
    } else {
        Some(bell_diagonalizing_unitary(rho))
    }
}
