//! Constructive separating witness for the ACVENN class.
//!
//! Convexity and compactness of the class guarantee a separating hyperplane
//! for any outside state; this module builds one explicitly. For a target
//! chi with S(chi) < 1, bisect along the ray from I/4 to chi for the
//! boundary state sigma0 with S(sigma0) = 1, and take
//! W = -log2(sigma0) - I.
//!
//! Klein's inequality S(rho) <= -Tr[rho log2 sigma0] gives
//! Tr(W rho) >= S(rho) - 1, hence Tr(W rho) >= 0 on all of the class, while
//! tangency at sigma0 plus linearity along the ray forces Tr(W chi) < 0.
//! The witness is target-specific: a single hyperplane cannot see every
//! outside state.

use serde::{Deserialize, Serialize};

use crate::entropy::von_neumann;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::DensityMatrix;

/// Bisection iteration cap for the boundary search.
const BISECT_MAX_ITERS: usize = 200;

/// Bisection terminates when |S(sigma) - 1| drops below this.
const BISECT_S_TOL: f64 = 1e-10;

/// Hermitian witness operator with the tangent point and target that
/// generated it.
#[derive(Debug, Clone)]
pub struct WitnessOperator {
    w: ComplexMatrix,
    tangent_point: DensityMatrix,
    target: DensityMatrix,
    t0: f64,
}

impl WitnessOperator {
    pub fn operator(&self) -> &ComplexMatrix {
        &self.w
    }

    /// The boundary state sigma0 with S(sigma0) = 1.
    pub fn tangent_point(&self) -> &DensityMatrix {
        &self.tangent_point
    }

    /// The state the witness was built to detect.
    pub fn target(&self) -> &DensityMatrix {
        &self.target
    }

    /// Ray parameter of the tangent point, sigma0 = (1-t0) I/4 + t0 chi.
    pub fn t0(&self) -> f64 {
        self.t0
    }
}

/// Wire format: `{"W": matrix, "tangent_point": matrix, "t0": double,
/// "target": matrix}`, matrices in the same `[re, im]` entry layout as
/// state files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    #[serde(rename = "W")]
    pub w: Vec<Vec<[f64; 2]>>,
    pub tangent_point: Vec<Vec<[f64; 2]>>,
    pub t0: f64,
    pub target: Vec<Vec<[f64; 2]>>,
}

impl From<&WitnessOperator> for WitnessJson {
    fn from(witness: &WitnessOperator) -> Self {
        Self {
            w: witness.w.to_entry_rows(),
            tangent_point: witness.tangent_point.matrix().to_entry_rows(),
            t0: witness.t0,
            target: witness.target.matrix().to_entry_rows(),
        }
    }
}

impl WitnessJson {
    pub fn into_witness(self) -> Result<WitnessOperator> {
        let w = ComplexMatrix::from_entry_rows(&self.w, 4)?;
        let dev = w.hermitian_deviation();
        if dev > 1e-10 {
            return Err(Error::NotHermitian(dev));
        }
        let tangent_point =
            DensityMatrix::from_matrix(ComplexMatrix::from_entry_rows(&self.tangent_point, 4)?)?;
        let target =
            DensityMatrix::from_matrix(ComplexMatrix::from_entry_rows(&self.target, 4)?)?;
        Ok(WitnessOperator {
            w,
            tangent_point,
            target,
            t0: self.t0,
        })
    }
}

/// The state on the S = 1 level set along the ray from I/4 to `chi`,
/// located by bisection; `chi` itself must lie outside the class.
///
/// The ray anchor I/4 is the deepest interior point (S = 2), so the
/// crossing is unique and the boundary state has full rank.
pub fn boundary_point(chi: &DensityMatrix) -> Result<DensityMatrix> {
    let (sigma0, _) = boundary_point_with_parameter(chi)?;
    Ok(sigma0)
}

fn boundary_point_with_parameter(chi: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let s_chi = von_neumann(chi);
    if s_chi >= 1.0 {
        return Err(Error::TargetInsideClass(s_chi));
    }
    let i4 = ComplexMatrix::identity(4).scale_re(0.25);
    let state_at = |t: f64| {
        let m = i4.scale_re(1.0 - t).add(&chi.matrix().scale_re(t));
        DensityMatrix::from_matrix_with_tol(m, chi.psd_tol())
            .expect("convex combination of states is a state")
    };
    // S is strictly decreasing along the ray: S(0) = 2, S(1) < 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..BISECT_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        let sigma = state_at(mid);
        let s = von_neumann(&sigma);
        if (s - 1.0).abs() <= BISECT_S_TOL {
            return Ok((sigma, mid));
        }
        if s > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(BISECT_MAX_ITERS))
}

/// Build the tangent-hyperplane witness W = -log2(sigma0) - I for a target
/// outside the class.
pub fn build_witness(chi: &DensityMatrix) -> Result<WitnessOperator> {
    let (sigma0, t0) = boundary_point_with_parameter(chi)?;
    // matrix logarithm through the eigendecomposition; sigma0 has full rank
    // by construction, so every eigenvalue is safely positive
    let sys = sigma0
        .matrix()
        .eigh()
        .expect("a validated state is Hermitian");
    let diag: Vec<f64> = sys
        .eigenvalues
        .iter()
        .map(|&mu| -mu.log2() - 1.0)
        .collect();
    let w = sys
        .eigenvectors
        .matmul(&ComplexMatrix::diagonal(&diag))
        .matmul(&sys.eigenvectors.adjoint());
    Ok(WitnessOperator {
        w,
        tangent_point: sigma0,
        target: chi.clone(),
        t0,
    })
}

/// Tr(W rho).
pub fn eval_witness(witness: &WitnessOperator, rho: &DensityMatrix) -> f64 {
    witness.w.matmul(rho.matrix()).trace().re
}
