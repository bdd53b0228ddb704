//! Negativities: pairwise, one-vs-two bipartitions, and their geometric mean.
//!
//! The normalization follows N = -2 * sum of negative eigenvalues of the
//! partially transposed matrix, which puts both the Bell pair and the GHZ
//! bipartitions at exactly 1.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{
    eigen_hermitian, negativity_from_eigenvalues, partial_trace, partial_transpose,
    validate_density, ComplexMatrix, Mode, ALL_MODES,
};

/// A negativity below this counts as zero for subtype classification.
pub const ZERO_NEGATIVITY_EPS: f64 = 1e-9;

/// All seven negativities of a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub n_ij: f64,
    pub n_ik: f64,
    pub n_jk: f64,
    pub n_i_jk: f64,
    pub n_j_ik: f64,
    pub n_k_ij: f64,
    pub n_ijk: f64,
}

impl EntanglementReport {
    pub fn pair(&self, a: Mode, b: Mode) -> f64 {
        match key(a, b) {
            (Mode::I, Mode::J) => self.n_ij,
            (Mode::I, Mode::K) => self.n_ik,
            _ => self.n_jk,
        }
    }

    pub fn bipartition(&self, single: Mode) -> f64 {
        match single {
            Mode::I => self.n_i_jk,
            Mode::J => self.n_j_ik,
            Mode::K => self.n_k_ij,
        }
    }

    /// Booleans (n_ij > eps, n_ik > eps, n_jk > eps).
    pub fn zero_pattern(&self, eps: f64) -> [bool; 3] {
        [self.n_ij > eps, self.n_ik > eps, self.n_jk > eps]
    }

    pub const CSV_HEADER: [&'static str; 7] = [
        "N_ij", "N_ik", "N_jk", "N_i-jk", "N_j-ik", "N_k-ij", "N_ijk",
    ];

    pub fn csv_fields(&self) -> [f64; 7] {
        [
            self.n_ij,
            self.n_ik,
            self.n_jk,
            self.n_i_jk,
            self.n_j_ik,
            self.n_k_ij,
            self.n_ijk,
        ]
    }
}

fn key(a: Mode, b: Mode) -> (Mode, Mode) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn negativity_of_pt(pt: &ComplexMatrix) -> Result<f64> {
    let eig = eigen_hermitian(pt)?;
    Ok(negativity_from_eigenvalues(&eig.eigenvalues))
}

/// Two-mode negativity: trace out the third mode, partially transpose on
/// `a`, and sum the negative eigenvalues. Symmetric in (a, b).
pub fn negativity_pair(rho3: &ComplexMatrix, a: Mode, b: Mode) -> Result<f64> {
    if a == b {
        return Err(crate::error::Error::EqualModes);
    }
    validate_density(rho3)?;
    negativity_pair_unchecked(rho3, a, b)
}

fn negativity_pair_unchecked(rho3: &ComplexMatrix, a: Mode, b: Mode) -> Result<f64> {
    let reduced = partial_trace(rho3, &[a, b])?;
    let pt = partial_transpose(&reduced, a)?;
    negativity_of_pt(&pt)
}

/// One-vs-two bipartition negativity: partial transpose of the full 8x8
/// matrix on `single`.
pub fn negativity_bipartition(rho3: &ComplexMatrix, single: Mode) -> Result<f64> {
    validate_density(rho3)?;
    negativity_bipartition_unchecked(rho3, single)
}

fn negativity_bipartition_unchecked(rho3: &ComplexMatrix, single: Mode) -> Result<f64> {
    let pt = partial_transpose(rho3, single)?;
    negativity_of_pt(&pt)
}

/// All seven negativities; the tripartite value is the geometric mean of the
/// three bipartitions.
pub fn tripartite_negativity(rho3: &ComplexMatrix) -> Result<EntanglementReport> {
    validate_density(rho3)?;
    let n_ij = negativity_pair_unchecked(rho3, Mode::I, Mode::J)?;
    let n_ik = negativity_pair_unchecked(rho3, Mode::I, Mode::K)?;
    let n_jk = negativity_pair_unchecked(rho3, Mode::J, Mode::K)?;
    let mut bip = [0.0f64; 3];
    for (slot, mode) in ALL_MODES.iter().enumerate() {
        bip[slot] = negativity_bipartition_unchecked(rho3, *mode)?;
    }
    let n_ijk = (bip[0] * bip[1] * bip[2]).cbrt();
    Ok(EntanglementReport {
        n_ij,
        n_ik,
        n_jk,
        n_i_jk: bip[0],
        n_j_ik: bip[1],
        n_k_ij: bip[2],
        n_ijk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_state, pure_density, Family, FamilySpec, StateVector};
    use num_complex::Complex64;

    const W_BIPARTITION: f64 = 0.942_809_041_582_063_4; // 2*sqrt(2)/3
    const W_PAIR: f64 = 0.412_022_659_166_597; // (sqrt(5)-1)/3

    #[test]
    fn product_state_has_no_entanglement() {
        let rho = pure_density(&StateVector::basis(0));
        let report = tripartite_negativity(&rho).unwrap();
        for v in report.csv_fields() {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn ghz_pairs_zero_bipartitions_one() {
        let rho = pure_density(&StateVector::ghz());
        let report = tripartite_negativity(&rho).unwrap();
        assert_eq!(report.n_ij, 0.0);
        assert_eq!(report.n_ik, 0.0);
        assert_eq!(report.n_jk, 0.0);
        for mode in ALL_MODES {
            assert!((report.bipartition(mode) - 1.0).abs() < 1e-10);
        }
        assert!((report.n_ijk - 1.0).abs() < 1e-10);
    }

    #[test]
    fn w_state_negativities() {
        let rho = pure_density(&StateVector::w());
        let report = tripartite_negativity(&rho).unwrap();
        for mode in ALL_MODES {
            assert!((report.bipartition(mode) - W_BIPARTITION).abs() < 1e-10);
        }
        assert!((report.n_ijk - W_BIPARTITION).abs() < 1e-10);
        // Rounded to two decimals this is the 0.94 benchmark.
        assert!((report.n_ijk - 0.94).abs() < 0.005);
        for (a, b) in [(Mode::I, Mode::J), (Mode::I, Mode::K), (Mode::J, Mode::K)] {
            assert!((report.pair(a, b) - W_PAIR).abs() < 1e-10);
        }
    }

    #[test]
    fn jk_pair_of_100_111_superposition_is_maximal() {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[4] = r; // |100>
        amplitudes[7] = r; // |111>
        let rho = pure_density(&StateVector::new(amplitudes).unwrap());
        let n = negativity_pair(&rho, Mode::J, Mode::K).unwrap();
        assert!((n - 1.0).abs() < 1e-10);
    }

    #[test]
    fn pair_negativity_is_symmetric() {
        let spec = FamilySpec::from_probabilities(Family::Iii3, Mode::I, &[0.5, 0.3, 0.2]).unwrap();
        let rho = pure_density(&build_state(&spec).unwrap());
        let ab = negativity_pair(&rho, Mode::I, Mode::J).unwrap();
        let ba = negativity_pair(&rho, Mode::J, Mode::I).unwrap();
        assert!((ab - ba).abs() < 1e-10);
    }

    #[test]
    fn equal_modes_rejected() {
        let rho = pure_density(&StateVector::ghz());
        assert!(negativity_pair(&rho, Mode::I, Mode::I).is_err());
    }

    #[test]
    fn invalid_density_rejected() {
        let rho = pure_density(&StateVector::ghz()).scale(2.0);
        assert!(tripartite_negativity(&rho).is_err());
    }

    #[test]
    fn iii0_bipartitions_follow_the_closed_form() {
        // For C_000^2 = 1 - P, C_111^2 = P every bipartition negativity is
        // 2*sqrt(P(1-P)); checked on a P grid against the eigensolve route.
        for step in 0..=20 {
            let p = step as f64 / 20.0;
            let spec =
                FamilySpec::from_probabilities(Family::Iii0, Mode::I, &[1.0 - p, p]).unwrap();
            let rho = pure_density(&build_state(&spec).unwrap());
            let expect = 2.0 * (p * (1.0 - p)).sqrt();
            let report = tripartite_negativity(&rho).unwrap();
            for mode in ALL_MODES {
                assert!(
                    (report.bipartition(mode) - expect).abs() < 1e-10,
                    "P={p}: got {}, want {expect}",
                    report.bipartition(mode)
                );
            }
            assert!((report.n_ijk - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn geometric_mean_identity() {
        let spec =
            FamilySpec::from_probabilities(Family::Iii2, Mode::I, &[0.4, 0.1, 0.2, 0.3]).unwrap();
        let rho = pure_density(&build_state(&spec).unwrap());
        let report = tripartite_negativity(&rho).unwrap();
        let product = report.n_i_jk * report.n_j_ik * report.n_k_ij;
        assert!((report.n_ijk.powi(3) - product).abs() < 1e-12);
    }
}
