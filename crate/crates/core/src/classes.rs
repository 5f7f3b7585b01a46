//! Membership predicates for the absolute state classes.
//!
//! CVENN holds states with non-negative conditional entropy (conditioning on
//! A); ACVENN those that keep it non-negative under every global unitary,
//! characterized spectrally by S(rho) >= 1. The absolutely separable test is
//! the spectral inequality a1 <= a3 + 2 sqrt(a2 a4); Bell-CHSH locality uses
//! M(rho), the sum of the two largest eigenvalues of T^t T. Boundary states
//! count as members: all comparisons carry `CLASS_TOL` inclusively.

use serde::{Deserialize, Serialize};

use crate::entropy::{entropy_report, von_neumann};
use crate::error::{Error, Result};
use crate::linalg::Side;
use crate::states::{bloch_decompose, BellDiagonalParams, DensityMatrix, Spectrum};

/// Tolerance for all boundary comparisons in class predicates.
pub const CLASS_TOL: f64 = 1e-9;

/// Per-state membership verdicts and the scalar diagnostics behind them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub s_total: f64,
    pub cond_given_a: f64,
    pub cond_given_b: f64,
    pub m_value: f64,
    pub is_cvenn: bool,
    pub is_acvenn: bool,
    pub is_ppt_separable: bool,
    pub is_abs_separable: bool,
    pub is_bell_local: bool,
    pub distance_from_i4: f64,
}

/// Non-negative conditional entropy, conditioning on subsystem A.
pub fn is_cvenn(rho: &DensityMatrix) -> bool {
    let s_total = von_neumann(rho);
    let cond = s_total - crate::entropy::marginal_entropy(rho, Side::A);
    cond >= -CLASS_TOL
}

/// Conditional entropy stays non-negative under every global unitary:
/// S(rho) >= 1.
pub fn is_acvenn(rho: &DensityMatrix) -> bool {
    von_neumann(rho) >= 1.0 - CLASS_TOL
}

/// Peres-Horodecki criterion, necessary and sufficient in 2x2: separable iff
/// the partial transpose stays positive semidefinite.
pub fn is_ppt_separable(rho: &DensityMatrix) -> bool {
    let pt = rho.matrix().partial_transpose(Side::B);
    let sys = pt.eigh().expect("partial transpose of a state is Hermitian");
    sys.eigenvalues[0] >= -rho.psd_tol()
}

/// Spectral test for absolute separability: a1 <= a3 + 2 sqrt(a2 a4) on the
/// descending spectrum.
pub fn is_abs_separable(spec: &Spectrum) -> bool {
    let a = spec.values();
    a[0] <= a[2] + 2.0 * (a[1] * a[3]).sqrt() + CLASS_TOL
}

/// M(rho): the sum of the two largest eigenvalues of T^t T, where T is the
/// correlation matrix. Bell-CHSH local iff M <= 1.
pub fn chsh_m(rho: &DensityMatrix) -> f64 {
    let t = bloch_decompose(rho).t;
    let mut tt = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                tt[i][j] += t[k][i] * t[k][j];
            }
        }
    }
    let mut evs = sym3_eigenvalues(tt);
    evs.sort_by(|a, b| b.total_cmp(a));
    evs[0] + evs[1]
}

/// M(rho) <= 1 within tolerance.
pub fn is_bell_local(rho: &DensityMatrix) -> bool {
    chsh_m(rho) <= 1.0 + CLASS_TOL
}

/// The Werner family is absolutely Bell-CHSH local iff p <= 1/sqrt(2).
/// Only this special case is known; no general AL test exists here.
pub fn is_al_werner(p: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!(
            "Werner mixing parameter p = {p} not in [0, 1]"
        )));
    }
    Ok(p <= std::f64::consts::FRAC_1_SQRT_2 + CLASS_TOL)
}

/// Closed-form ACVENN test for Bell-diagonal states: with chi = 1+c1+c2+c3
/// and base-2 logs,
///
/// log[(chi-2c2)(chi-2c3)(2-chi)(chi-2c1)]
///   + c1 log[(chi-2c2)(chi-2c3) / ((2-chi)(chi-2c1))]
///   + c2 log[(chi-2c3)(chi-2c1) / ((chi-2c2)(2-chi))]
///   + c3 log[(chi-2c2)(chi-2c1) / ((chi-2c3)(2-chi))] <= 4.
///
/// Requires a strictly interior tetrahedron point; a zero eigenvalue makes
/// the logarithms blow up.
pub fn bd_acvenn_closed_form(params: &BellDiagonalParams) -> Result<bool> {
    let evs = params.eigenvalues();
    for &ev in &evs {
        if ev <= 0.0 {
            return Err(Error::DegenerateSpectrum(ev));
        }
    }
    let (c1, c2, c3) = params.c();
    let chi = params.chi();
    let [e1, e2, e3, e4] = [
        chi - 2.0 * c1,
        chi - 2.0 * c2,
        chi - 2.0 * c3,
        2.0 - chi,
    ];
    let lhs = (e2 * e3 * e4 * e1).log2()
        + c1 * ((e2 * e3) / (e4 * e1)).log2()
        + c2 * ((e3 * e1) / (e2 * e4)).log2()
        + c3 * ((e2 * e1) / (e3 * e4)).log2();
    Ok(lhs <= 4.0 + CLASS_TOL)
}

/// Full membership report for a state.
pub fn classify(rho: &DensityMatrix) -> ClassReport {
    let entropy = entropy_report(rho);
    let m_value = chsh_m(rho);
    ClassReport {
        s_total: entropy.s_total,
        cond_given_a: entropy.cond_given_a,
        cond_given_b: entropy.cond_given_b,
        m_value,
        is_cvenn: entropy.cond_given_a >= -CLASS_TOL,
        is_acvenn: entropy.s_total >= 1.0 - CLASS_TOL,
        is_ppt_separable: is_ppt_separable(rho),
        is_abs_separable: is_abs_separable(rho.spectrum()),
        is_bell_local: m_value <= 1.0 + CLASS_TOL,
        distance_from_i4: crate::mc::distance_from_i4(rho),
    }
}

/// The Werner mixing parameter where S(werner(p)) crosses 1, located by
/// bisection on 3(1-p)log2(1-p) + (1+3p)log2(1+3p) = 4.
pub fn werner_acvenn_threshold() -> f64 {
    let f = |p: f64| {
        let a = 1.0 - p;
        let b = 1.0 + 3.0 * p;
        let term_a = if a > 0.0 { 3.0 * a * a.log2() } else { 0.0 };
        term_a + b * b.log2() - 4.0
    };
    let (mut lo, mut hi) = (0.5, 1.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues of a real symmetric 3x3 matrix by cyclic Jacobi rotations.
fn sym3_eigenvalues(mut a: [[f64; 3]; 3]) -> [f64; 3] {
    for _ in 0..50 {
        let off = a[0][1].abs().max(a[0][2].abs()).max(a[1][2].abs());
        if off <= 1e-14 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..3 {
                let apq = a[p][q];
                if apq.abs() <= 1e-15 {
                    continue;
                }
                let w = (a[p][p] - a[q][q]) / (2.0 * apq);
                let t = if w >= 0.0 {
                    1.0 / (w + (w * w + 1.0).sqrt())
                } else {
                    -1.0 / (-w + (w * w + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..3 {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip + s * aiq;
                    a[i][q] = c * aiq - s * aip;
                }
                for j in 0..3 {
                    let (apj, aqj) = (a[p][j], a[q][j]);
                    a[p][j] = c * apj + s * aqj;
                    a[q][j] = c * aqj - s * apj;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    [a[0][0], a[1][1], a[2][2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::spectrum_entropy;
    use crate::linalg::ComplexMatrix;
    use crate::rng::SeedStream;
    use crate::states::{bell_basis, correlated_bits, werner};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn bell_state() -> DensityMatrix {
        DensityMatrix::from_matrix(bell_basis()[0].projector()).unwrap()
    }

    #[test]
    fn cvenn_examples() {
        assert!(is_cvenn(&DensityMatrix::maximally_mixed()));
        assert!(!is_cvenn(&bell_state()));
        assert!(is_cvenn(&correlated_bits(0.75).unwrap()));
    }

    #[test]
    fn acvenn_examples() {
        assert!(is_acvenn(&werner(0.5).unwrap()));
        assert!(!is_acvenn(&werner(0.9).unwrap()));
        assert!(is_acvenn(&DensityMatrix::maximally_mixed()));
        // pure states never qualify
        assert!(!is_acvenn(&bell_state()));
        assert!(!is_acvenn(&correlated_bits(1.0).unwrap()));
    }

    #[test]
    fn werner_threshold_bracketed() {
        let root = werner_acvenn_threshold();
        assert!((0.7475..=0.7477).contains(&root), "root {root}");
        assert!(is_acvenn(&werner(root - 1e-4).unwrap()));
        assert!(!is_acvenn(&werner(root + 1e-4).unwrap()));
    }

    #[test]
    fn ppt_examples() {
        assert!(is_ppt_separable(&werner(1.0 / 3.0).unwrap()));
        assert!(!is_ppt_separable(&werner(0.34).unwrap()));
        assert!(!is_ppt_separable(&bell_state()));
        // any product state is PPT
        let product = DensityMatrix::from_matrix(
            ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3])
                .kron(&ComplexMatrix::from_real(2, 2, &[0.4, 0.2, 0.2, 0.6])),
        )
        .unwrap();
        assert!(is_ppt_separable(&product));
        // Werner family: min PT eigenvalue is (1-3p)/4
        for p in [0.0, 0.2, 0.4, 0.6, 0.8, 1.0] {
            let pt = werner(p).unwrap().matrix().partial_transpose(Side::B);
            let min_ev = pt.eigh().unwrap().eigenvalues[0];
            assert_close(min_ev, (1.0 - 3.0 * p) / 4.0, 1e-12);
        }
    }

    #[test]
    fn abs_separable_examples() {
        // werner(1/3): equality case 1/2 = 1/6 + 2/6 counts as member
        assert!(is_abs_separable(werner(1.0 / 3.0).unwrap().spectrum()));
        assert!(!is_abs_separable(werner(0.34).unwrap().spectrum()));
        let spec = Spectrum::new([0.5, 0.3, 0.2, 0.0]).unwrap();
        assert!(!is_abs_separable(&spec));
        // renormalize the published minimum-entropy record state
        let raw = [0.341023, 0.331417, 0.327411, 0.000148614];
        let sum: f64 = raw.iter().sum();
        let spec = Spectrum::new(raw.map(|v| v / sum)).unwrap();
        assert!(is_abs_separable(&spec));
    }

    #[test]
    fn chsh_m_examples() {
        assert_close(chsh_m(&DensityMatrix::maximally_mixed()), 0.0, 1e-12);
        assert_close(chsh_m(&bell_state()), 2.0, 1e-12);
        for k in 0..=100 {
            let p = k as f64 / 100.0;
            assert_close(chsh_m(&werner(p).unwrap()), 2.0 * p * p, 1e-9);
        }
    }

    #[test]
    fn al_werner_examples() {
        assert!(is_al_werner(0.5).unwrap());
        assert!(is_al_werner(0.70).unwrap());
        assert!(!is_al_werner(0.71).unwrap());
        assert!(is_al_werner(1.2).is_err());
        // AL Werner states sit strictly inside ACVENN
        assert!(!is_al_werner(0.72).unwrap());
        assert!(is_acvenn(&werner(0.72).unwrap()));
    }

    #[test]
    fn closed_form_examples() {
        let origin = BellDiagonalParams::new(0.0, 0.0, 0.0).unwrap();
        assert!(bd_acvenn_closed_form(&origin).unwrap());
        // Werner point p = 0.8 lies past the entropy threshold
        let w = BellDiagonalParams::new(0.8, -0.8, 0.8).unwrap();
        assert!(!bd_acvenn_closed_form(&w).unwrap());
        // boundary point has a zero eigenvalue
        let corner = BellDiagonalParams::new(1.0, -1.0, 1.0).unwrap();
        assert!(matches!(
            bd_acvenn_closed_form(&corner),
            Err(Error::DegenerateSpectrum(_))
        ));
    }

    #[test]
    fn closed_form_agrees_with_spectral_test() {
        let mut rng = SeedStream::new(17);
        let mut checked = 0;
        while checked < 2000 {
            let c = (
                2.0 * rng.uniform() - 1.0,
                2.0 * rng.uniform() - 1.0,
                2.0 * rng.uniform() - 1.0,
            );
            let Ok(params) = BellDiagonalParams::new(c.0, c.1, c.2) else {
                continue;
            };
            if params.eigenvalues().iter().any(|&ev| ev <= 1e-12) {
                continue;
            }
            checked += 1;
            let closed = bd_acvenn_closed_form(&params).unwrap();
            let spectral = is_acvenn(&crate::states::bell_diagonal(&params).unwrap());
            assert_eq!(closed, spectral, "disagreement at {params:?}");
        }
    }

    #[test]
    fn classify_werner_chain() {
        // thresholds: AS/PPT at 1/3, AL at 0.7071, ACVENN at 0.7476
        let report = classify(&werner(0.2).unwrap());
        assert!(report.is_acvenn && report.is_abs_separable);
        assert!(report.is_bell_local && report.is_ppt_separable);

        let report = classify(&werner(0.5).unwrap());
        assert!(report.is_acvenn && !report.is_abs_separable);
        assert!(!report.is_ppt_separable && report.is_bell_local);

        let report = classify(&werner(0.75).unwrap());
        assert!(!report.is_acvenn && !report.is_bell_local);
    }

    #[test]
    fn lemma_as_implies_acvenn_on_sampled_spectra() {
        // every sampled spectrum passing the AS test carries S >= 1
        let mut rng = SeedStream::new(19);
        let mut accepted = 0;
        while accepted < 2000 {
            let mut cuts = [rng.uniform(), rng.uniform(), rng.uniform()];
            cuts.sort_by(f64::total_cmp);
            let spec = Spectrum::new([
                cuts[0],
                cuts[1] - cuts[0],
                cuts[2] - cuts[1],
                1.0 - cuts[2],
            ])
            .unwrap();
            if !is_abs_separable(&spec) {
                continue;
            }
            accepted += 1;
            assert!(spectrum_entropy(&spec) >= 1.0 - 1e-9);
        }
        // strictness: werner(0.5) is ACVENN but not AS
        let w = werner(0.5).unwrap();
        assert!(is_acvenn(&w) && !is_abs_separable(w.spectrum()));
    }
}
