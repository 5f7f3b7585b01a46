//! Worked dense-coding and state-merging scenarios.
//!
//! Both start from a state with zero conditional entropy and apply a fixed
//! global unitary that entangles the |00>/|11> plane with the Phi Bell pair,
//! driving the conditional entropy negative: the dense-coding capacity rises
//! above the classical bit, and the merging cost turns into banked
//! communication potential.

use serde::{Deserialize, Serialize};

use crate::entropy::{dense_coding_capacity, entropy_report};
use crate::error::Result;
use crate::linalg::{ComplexMatrix, Side};
use crate::orbit::{apply, Unitary};
use crate::states::{correlated_bits, two_level_demo_state, StateJson};

/// The global unitary mixing the computational |00>/|11> plane into the
/// Phi-/Phi+ Bell pair while fixing |01> and |10>:
///
/// ```text
///        1  [ 1  0  0  1 ]
/// U = ------ [ 0 s2  0  0 ],   s2 = sqrt(2)
///   sqrt(2) [ 0  0 s2  0 ]
///           [-1  0  0  1 ]
/// ```
pub fn bell_plane_mixer() -> Unitary {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let m = ComplexMatrix::from_real(
        4,
        4,
        &[
            s, 0.0, 0.0, s,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            -s, 0.0, 0.0, s,
        ],
    );
    Unitary::new(m).expect("fixed mixer is unitary")
}

/// Narrative record of the dense-coding activation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenseCodingDemo {
    pub a: f64,
    pub b: f64,
    /// Spectral gap of marginal A before the unitary; eigenvalues (1+-q)/2.
    pub q: f64,
    /// Spectral gap of marginal A afterwards.
    pub q_prime: f64,
    pub capacity_before: f64,
    pub capacity_after: f64,
    pub cond_given_a_before: f64,
    pub cond_given_a_after: f64,
    /// True when the unitary buys a quantum advantage (q > q').
    pub advantage: bool,
    pub initial_state: StateJson,
    pub transformed_state: StateJson,
}

/// Run the dense-coding activation for the two-level mixture with
/// parameters (a, b). Fails when (a, b) leaves the state space.
pub fn dense_coding_demo(a: f64, b: f64) -> Result<DenseCodingDemo> {
    let initial = two_level_demo_state(a, b)?;
    let transformed = apply(&bell_plane_mixer(), &initial);

    let gap = |rho: &crate::states::DensityMatrix| {
        let vals = rho.spectrum().values();
        vals[0] - vals[1]
    };
    let q = gap(&initial);
    let q_prime = marginal_gap(&transformed);

    let before = entropy_report(&initial);
    let after = entropy_report(&transformed);
    Ok(DenseCodingDemo {
        a,
        b,
        q,
        q_prime,
        capacity_before: dense_coding_capacity(&initial, Side::A),
        capacity_after: dense_coding_capacity(&transformed, Side::A),
        cond_given_a_before: before.cond_given_a,
        cond_given_a_after: after.cond_given_a,
        advantage: q > q_prime,
        initial_state: StateJson::from_state(&initial),
        transformed_state: StateJson::from_state(&transformed),
    })
}

/// Eigenvalue gap of marginal A, i.e. q' with marginal spectrum (1+-q')/2.
fn marginal_gap(rho: &crate::states::DensityMatrix) -> f64 {
    let m = rho.marginal(Side::A);
    let alpha = m.get(0, 0).re;
    let beta = m.get(1, 1).re;
    let half_gap = 0.5 * (alpha - beta);
    2.0 * (half_gap * half_gap + m.get(0, 1).norm_sqr()).sqrt()
}

/// Narrative record of the state-merging activation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateMergingDemo {
    pub s_total_before: f64,
    pub s_total_after: f64,
    pub cond_given_a_before: f64,
    pub cond_given_a_after: f64,
    pub initial_state: StateJson,
    pub transformed_state: StateJson,
}

/// Run the state-merging activation: the classical 3/4-1/4 bit mixture,
/// conjugated by the inverse mixer, lands at conditional entropy
/// h(3/4) - 1 ~ -0.1887 while the total entropy stays put.
pub fn state_merging_demo() -> StateMergingDemo {
    let initial = correlated_bits(0.75).expect("3/4 is a valid weight");
    let transformed = apply(&bell_plane_mixer().inverse(), &initial);
    let before = entropy_report(&initial);
    let after = entropy_report(&transformed);
    StateMergingDemo {
        s_total_before: before.s_total,
        s_total_after: after.s_total,
        cond_given_a_before: before.cond_given_a,
        cond_given_a_after: after.cond_given_a,
        initial_state: StateJson::from_state(&initial),
        transformed_state: StateJson::from_state(&transformed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn dense_coding_reference_point() {
        let demo = dense_coding_demo(0.5, 0.4).unwrap();
        assert_close(demo.q, 0.8, 1e-9);
        assert_close(demo.q_prime, 0.57f64.sqrt(), 1e-9);
        assert_close(demo.capacity_before, 1.0, 1e-12);
        assert_close(demo.cond_given_a_before, 0.0, 1e-12);

        // oracle: binary entropies of the (1 +- q)/2 spectra
        let h = |q: f64| {
            let p = (1.0 + q) / 2.0;
            -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
        };
        let expected = 1.0 + h(0.57f64.sqrt()) - h(0.8);
        assert_close(demo.capacity_after, expected, 1e-9);
        assert_close(demo.capacity_after, 1.0675, 1e-3);
        assert!(demo.advantage);
        assert!(demo.cond_given_a_after < 0.0);
    }

    #[test]
    fn q_formulas_hold_across_parameters() {
        for (a, b) in [(0.3, 0.2), (0.5, 0.4), (0.7, 0.1), (0.9, 0.25)] {
            let demo = dense_coding_demo(a, b).unwrap();
            let q = (1.0 - 4.0 * a + 4.0 * a * a + 4.0 * b * b).sqrt();
            let q_prime = (1.0 - 2.0 * a + a * a + 2.0 * b * b).sqrt();
            assert_close(demo.q, q, 1e-9);
            assert_close(demo.q_prime, q_prime, 1e-9);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(
            dense_coding_demo(0.0, 0.6),
            Err(Error::NotPSD(_))
        ));
    }

    #[test]
    fn state_merging_reference_point() {
        let demo = state_merging_demo();
        assert_close(demo.cond_given_a_before, 0.0, 1e-12);
        let h34 = -(0.75f64 * 0.75f64.log2() + 0.25 * 0.25f64.log2());
        assert_close(demo.cond_given_a_after, h34 - 1.0, 1e-9);
        assert_close(demo.cond_given_a_after, -0.1887, 1e-3);
        assert_close(demo.s_total_after, demo.s_total_before, 1e-9);
    }
}
