//! The parametric pure-state families and their random sampler.
//!
//! Each family is supported on a fixed set of basis kets selected by a pivot
//! mode; amplitudes are listed in ascending basis-index order of the support.
//! With pivot `i` the supports are
//!
//! ```text
//! III-0:  |000>, |111>
//! III-1A: |000>, |100>, |111>
//! III-1B: |000>, |011>, |111>
//! III-2:  |000>, |001>, |101>, |111>
//! III-3:  |000>, |101>, |110>
//! ```
//!
//! and changing the pivot relabels modes. The pivot is the distinguished
//! mode of the classification: for III-1 the mode outside the entangled
//! pair, for III-2 the mode shared by both entangled pairs. The III-2
//! support is a ladder |000> -> single -> double -> |111> whose first
//! excitation sits on the later non-pivot mode and whose second excitation
//! sits on the pivot itself; that choice makes the (j,k) pair separable for
//! pivot i, matching the zero pattern the classification assigns.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Mode};

/// Norm tolerance on state vectors and family amplitude lists.
pub const NORM_TOL: f64 = 1e-12;

/// Which parametric family a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "III-0")]
    Iii0,
    #[serde(rename = "III-1A")]
    Iii1A,
    #[serde(rename = "III-1B")]
    Iii1B,
    #[serde(rename = "III-2")]
    Iii2,
    #[serde(rename = "III-3")]
    Iii3,
    #[serde(rename = "GENERAL")]
    General,
}

pub const PARAMETRIC_FAMILIES: [Family; 5] = [
    Family::Iii0,
    Family::Iii1A,
    Family::Iii1B,
    Family::Iii2,
    Family::Iii3,
];

impl Family {
    /// Number of support kets, i.e. amplitudes in a spec.
    pub fn support_size(self) -> usize {
        match self {
            Family::Iii0 => 2,
            Family::Iii1A | Family::Iii1B | Family::Iii3 => 3,
            Family::Iii2 => 4,
            Family::General => 8,
        }
    }

    /// Basis indices carrying the amplitudes, ascending, for a given pivot.
    pub fn support(self, pivot: Mode) -> Vec<usize> {
        let pbit = 1usize << pivot.bit();
        let (first, second) = pivot.others();
        let fbit = 1usize << first.bit();
        let sbit = 1usize << second.bit();
        let mut kets = match self {
            Family::Iii0 => vec![0, 7],
            Family::Iii1A => vec![0, pbit, 7],
            Family::Iii1B => vec![0, 7 & !pbit, 7],
            // Single excitation on the later non-pivot mode, then the pivot.
            Family::Iii2 => vec![0, sbit, sbit | pbit, 7],
            // The two double-excitation kets that include the pivot.
            Family::Iii3 => vec![0, pbit | sbit, pbit | fbit],
            Family::General => (0..8).collect(),
        };
        kets.sort_unstable();
        kets
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Iii0 => "III-0",
            Family::Iii1A => "III-1A",
            Family::Iii1B => "III-1B",
            Family::Iii2 => "III-2",
            Family::Iii3 => "III-3",
            Family::General => "GENERAL",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        match name.to_ascii_uppercase().replace('_', "-").as_str() {
            "III-0" | "III0" => Some(Family::Iii0),
            "III-1A" | "III1A" => Some(Family::Iii1A),
            "III-1B" | "III1B" => Some(Family::Iii1B),
            "III-2" | "III2" => Some(Family::Iii2),
            "III-3" | "III3" => Some(Family::Iii3),
            "GENERAL" => Some(Family::General),
            _ => None,
        }
    }

    /// Default ensemble size used by the scan driver.
    pub fn default_count(self) -> usize {
        match self {
            Family::Iii0 | Family::General => 10_000,
            _ => 100_000,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A family member: which family, the pivot orientation, and one amplitude
/// per support ket (ascending basis order), normalized to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub pivot: Mode,
    pub amplitudes: Vec<Complex64>,
}

impl FamilySpec {
    pub fn new(family: Family, pivot: Mode, amplitudes: Vec<Complex64>) -> Result<Self> {
        let spec = FamilySpec {
            family,
            pivot,
            amplitudes,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Build a spec from probabilities, taking positive square roots.
    pub fn from_probabilities(family: Family, pivot: Mode, probs: &[f64]) -> Result<Self> {
        let amplitudes = probs
            .iter()
            .map(|&p| Complex64::new(p.max(0.0).sqrt(), 0.0))
            .collect();
        FamilySpec::new(family, pivot, amplitudes)
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.family.support_size();
        if self.amplitudes.len() != expected {
            return Err(Error::AmplitudeCount {
                got: self.amplitudes.len(),
                expected,
            });
        }
        let norm2: f64 = self.amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(())
    }

    /// Probabilities |amplitude|^2 in support order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn is_real_nonnegative(&self) -> bool {
        self.amplitudes.iter().all(|a| a.im == 0.0 && a.re >= 0.0)
    }

    /// JSON provenance object: {family, pivot, amplitudes: [{re, im}...]}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "pivot": self.pivot.label().to_string(),
            "amplitudes": self
                .amplitudes
                .iter()
                .map(|a| serde_json::json!({"re": a.re, "im": a.im}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("family spec json: {msg}"));
        let family = value
            .get("family")
            .and_then(|v| v.as_str())
            .and_then(Family::from_name)
            .ok_or_else(|| bad("missing or unknown family"))?;
        let pivot = value
            .get("pivot")
            .and_then(|v| v.as_str())
            .and_then(|s| s.chars().next())
            .and_then(Mode::from_label)
            .ok_or_else(|| bad("missing or unknown pivot"))?;
        let amplitudes = value
            .get("amplitudes")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing amplitudes"))?
            .iter()
            .map(|a| {
                let re = a.get("re").and_then(|v| v.as_f64());
                let im = a.get("im").and_then(|v| v.as_f64());
                match (re, im) {
                    (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(bad("amplitude entries need re and im")),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FamilySpec::new(family, pivot, amplitudes)
    }
}

/// A normalized three-qubit pure state, indexed |abc> = 4a + 2b + c.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: [Complex64; 8],
}

impl StateVector {
    pub fn new(amplitudes: [Complex64; 8]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(StateVector { amplitudes })
    }

    /// Wrap raw amplitudes without the norm check (for operator images and
    /// other intermediate vectors).
    pub fn from_raw(amplitudes: [Complex64; 8]) -> Self {
        StateVector { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    /// (|000> + |111>)/sqrt(2)
    pub fn ghz() -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[0] = r;
        amplitudes[7] = r;
        StateVector { amplitudes }
    }

    /// (|001> + |010> + |100>)/sqrt(3)
    pub fn w() -> Self {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        let r = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
        amplitudes[1] = r;
        amplitudes[2] = r;
        amplitudes[4] = r;
        StateVector { amplitudes }
    }
}

/// Place a family spec's amplitudes onto its support kets.
pub fn build_state(spec: &FamilySpec) -> Result<StateVector> {
    spec.validate()?;
    let support = spec.family.support(spec.pivot);
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    for (ket, amp) in support.iter().zip(spec.amplitudes.iter()) {
        amplitudes[*ket] = *amp;
    }
    StateVector::new(amplitudes)
}

/// rho = |psi><psi| as an 8x8 matrix.
pub fn pure_density(state: &StateVector) -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(8).expect("dimension 8 is valid");
    for r in 0..8 {
        for c in 0..8 {
            rho.set(r, c, state.amplitudes[r] * state.amplitudes[c].conj());
        }
    }
    rho
}

/// How sampled amplitudes are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmplitudeMode {
    /// Positive square roots of probabilities (the closed-form regime).
    RealNonnegative,
    /// Real amplitudes with random signs.
    RealSigned,
    /// Fully complex amplitudes.
    Complex,
}

impl AmplitudeMode {
    pub fn name(self) -> &'static str {
        match self {
            AmplitudeMode::RealNonnegative => "real-nonnegative",
            AmplitudeMode::RealSigned => "real-signed",
            AmplitudeMode::Complex => "complex",
        }
    }
}

/// Which measure the draws follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Measure {
    /// Amplitude vector uniform on the unit sphere of the support dimension.
    SphereUniform,
    /// Probability vector uniform on the simplex, amplitudes its square roots.
    SimplexUniform,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::SphereUniform => "sphere-uniform",
            Measure::SimplexUniform => "simplex-uniform",
        }
    }
}

/// Seeded sampler configuration. Identical configs produce bit-identical
/// streams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    pub amplitude_mode: AmplitudeMode,
    pub measure: Measure,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SamplerConfig {
            seed,
            count,
            amplitude_mode: AmplitudeMode::RealNonnegative,
            measure: Measure::SphereUniform,
        }
    }
}

/// Iterator of family specs drawn from a seeded ChaCha stream.
pub struct FamilySampler {
    family: Family,
    pivot: Mode,
    cfg: SamplerConfig,
    rng: ChaCha8Rng,
    emitted: usize,
}

impl FamilySampler {
    fn draw(&mut self) -> FamilySpec {
        let dim = self.family.support_size();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        match self.cfg.measure {
            Measure::SphereUniform => match self.cfg.amplitude_mode {
                AmplitudeMode::RealNonnegative | AmplitudeMode::RealSigned => {
                    let norm2 = loop {
                        for a in amplitudes.iter_mut() {
                            let g: f64 = self.rng.sample(StandardNormal);
                            *a = Complex64::new(g, 0.0);
                        }
                        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
                        if n2 > 1e-12 {
                            break n2;
                        }
                    };
                    let inv = 1.0 / norm2.sqrt();
                    for a in amplitudes.iter_mut() {
                        let v = a.re * inv;
                        let v = if self.cfg.amplitude_mode == AmplitudeMode::RealNonnegative {
                            v.abs()
                        } else {
                            v
                        };
                        *a = Complex64::new(v, 0.0);
                    }
                }
                AmplitudeMode::Complex => {
                    let norm2 = loop {
                        for a in amplitudes.iter_mut() {
                            let re: f64 = self.rng.sample(StandardNormal);
                            let im: f64 = self.rng.sample(StandardNormal);
                            *a = Complex64::new(re, im);
                        }
                        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
                        if n2 > 1e-12 {
                            break n2;
                        }
                    };
                    let inv = 1.0 / norm2.sqrt();
                    for a in amplitudes.iter_mut() {
                        *a *= inv;
                    }
                }
            },
            Measure::SimplexUniform => {
                // Uniform on the simplex via normalized Exp(1) draws.
                let mut probs = vec![0.0f64; dim];
                let mut total = 0.0;
                for p in probs.iter_mut() {
                    let u: f64 = self.rng.random();
                    *p = -(1.0 - u).ln();
                    total += *p;
                }
                for (a, p) in amplitudes.iter_mut().zip(probs.iter()) {
                    let r = (p / total).sqrt();
                    *a = match self.cfg.amplitude_mode {
                        AmplitudeMode::RealNonnegative => Complex64::new(r, 0.0),
                        AmplitudeMode::RealSigned => {
                            let sign = if self.rng.random::<bool>() { 1.0 } else { -1.0 };
                            Complex64::new(sign * r, 0.0)
                        }
                        AmplitudeMode::Complex => {
                            let phi: f64 = self.rng.random_range(0.0..(2.0 * std::f64::consts::PI));
                            Complex64::from_polar(r, phi)
                        }
                    };
                }
            }
        }
        // Renormalize exactly so downstream norm checks never trip.
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        FamilySpec {
            family: self.family,
            pivot: self.pivot,
            amplitudes,
        }
    }
}

impl Iterator for FamilySampler {
    type Item = FamilySpec;

    fn next(&mut self) -> Option<FamilySpec> {
        if self.emitted >= self.cfg.count {
            return None;
        }
        self.emitted += 1;
        Some(self.draw())
    }
}

/// Deterministic stream of `cfg.count` family specs with pivot `i`.
pub fn sample_family(family: Family, cfg: SamplerConfig) -> FamilySampler {
    sample_family_with_pivot(family, Mode::I, cfg)
}

pub fn sample_family_with_pivot(family: Family, pivot: Mode, cfg: SamplerConfig) -> FamilySampler {
    FamilySampler {
        family,
        pivot,
        cfg,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        emitted: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen_hermitian;

    #[test]
    fn ghz_is_the_balanced_iii0_member() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let spec = FamilySpec::from_probabilities(Family::Iii0, Mode::I, &[0.5, 0.5]).unwrap();
        let state = build_state(&spec).unwrap();
        assert!((state.amplitudes()[0].re - r).abs() < 1e-15);
        assert!((state.amplitudes()[7].re - r).abs() < 1e-15);
        assert_eq!(state, StateVector::ghz());
    }

    #[test]
    fn degenerate_corner_is_vacuum() {
        let spec =
            FamilySpec::from_probabilities(Family::Iii1A, Mode::I, &[1.0, 0.0, 0.0]).unwrap();
        let state = build_state(&spec).unwrap();
        assert!((state.amplitudes()[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn iii3_places_probabilities_on_named_kets() {
        let spec = FamilySpec::from_probabilities(Family::Iii3, Mode::I, &[0.2, 0.3, 0.5]).unwrap();
        let state = build_state(&spec).unwrap();
        let a = state.amplitudes();
        assert!((a[0].norm_sqr() - 0.2).abs() < 1e-12); // |000>
        assert!((a[5].norm_sqr() - 0.3).abs() < 1e-12); // |101>
        assert!((a[6].norm_sqr() - 0.5).abs() < 1e-12); // |110>
    }

    #[test]
    fn family_supports_match_the_parameterizations() {
        assert_eq!(Family::Iii0.support(Mode::I), vec![0, 7]);
        assert_eq!(Family::Iii1A.support(Mode::I), vec![0, 4, 7]);
        assert_eq!(Family::Iii1A.support(Mode::J), vec![0, 2, 7]);
        assert_eq!(Family::Iii1B.support(Mode::I), vec![0, 3, 7]);
        assert_eq!(Family::Iii2.support(Mode::I), vec![0, 1, 5, 7]);
        assert_eq!(Family::Iii2.support(Mode::J), vec![0, 1, 3, 7]);
        assert_eq!(Family::Iii2.support(Mode::K), vec![0, 2, 3, 7]);
        assert_eq!(Family::Iii3.support(Mode::I), vec![0, 5, 6]);
        assert_eq!(Family::Iii3.support(Mode::J), vec![0, 3, 6]);
    }

    #[test]
    fn non_normalized_spec_rejected() {
        let err = FamilySpec::new(
            Family::Iii0,
            Mode::I,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotNormalized(_)));
    }

    #[test]
    fn pure_density_is_rank_one() {
        let spec =
            FamilySpec::from_probabilities(Family::Iii2, Mode::I, &[0.4, 0.3, 0.2, 0.1]).unwrap();
        let rho = pure_density(&build_state(&spec).unwrap());
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        let eig = eigen_hermitian(&rho).unwrap();
        // Largest eigenvalue 1, the rest numerically zero.
        assert!((eig.eigenvalues[7] - 1.0).abs() < 1e-10);
        assert!(eig.eigenvalues[6].abs() < 1e-10);
    }

    #[test]
    fn ghz_density_corners() {
        let rho = pure_density(&StateVector::ghz());
        for &(r, c) in &[(0usize, 0usize), (0, 7), (7, 0), (7, 7)] {
            assert!((rho.get(r, c).re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let cfg = SamplerConfig::new(42, 5);
        let a: Vec<FamilySpec> = sample_family(Family::Iii1A, cfg).collect();
        let b: Vec<FamilySpec> = sample_family(Family::Iii1A, cfg).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_count_is_empty() {
        let cfg = SamplerConfig::new(1, 0);
        assert_eq!(sample_family(Family::Iii0, cfg).count(), 0);
    }

    #[test]
    fn draws_are_normalized() {
        for measure in [Measure::SphereUniform, Measure::SimplexUniform] {
            for mode in [
                AmplitudeMode::RealNonnegative,
                AmplitudeMode::RealSigned,
                AmplitudeMode::Complex,
            ] {
                let cfg = SamplerConfig {
                    seed: 7,
                    count: 200,
                    amplitude_mode: mode,
                    measure,
                };
                for spec in sample_family(Family::Iii2, cfg) {
                    spec.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn simplex_mean_is_one_third() {
        // Coordinates of a uniform 2-simplex have mean 1/3.
        let cfg = SamplerConfig {
            seed: 99,
            count: 100_000,
            amplitude_mode: AmplitudeMode::RealNonnegative,
            measure: Measure::SimplexUniform,
        };
        let mean: f64 = sample_family(Family::Iii1A, cfg)
            .map(|spec| spec.probabilities()[2])
            .sum::<f64>()
            / 100_000.0;
        assert!(
            (mean - 1.0 / 3.0).abs() < 0.005,
            "mean P_111 = {mean}, want 1/3 +- 0.005"
        );
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = FamilySpec::new(
            Family::Iii1B,
            Mode::J,
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.8),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let json = spec.to_json();
        assert_eq!(json["family"], "III-1B");
        assert_eq!(json["pivot"], "j");
        assert_eq!(json["amplitudes"][1]["im"], 0.8);
        let back = FamilySpec::from_json(&json).unwrap();
        assert_eq!(back, spec);
    }
}
