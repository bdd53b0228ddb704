//! Dense complex linear algebra for the three-qubit Hilbert space.
//!
//! Everything here works on matrices of dimension 2, 4, or 8. The basis
//! convention is |abc> <-> index 4a + 2b + c, i.e. mode `i` occupies the most
//! significant bit. The eigensolver is a cyclic Jacobi iteration for complex
//! Hermitian matrices; at these dimensions it is simple, accurate, and fast.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Hermiticity tolerance accepted on input validation.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// An eigenvalue counts as negative for negativity accumulation below this.
pub const NEGATIVE_EIG_TOL: f64 = -1e-10;

/// One of the three bosonic modes, ordered by bit significance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "j")]
    J,
    #[serde(rename = "k")]
    K,
}

pub const ALL_MODES: [Mode; 3] = [Mode::I, Mode::J, Mode::K];

impl Mode {
    /// Bit position in the 8-dimensional basis index (mode i is most significant).
    pub fn bit(self) -> usize {
        match self {
            Mode::I => 2,
            Mode::J => 1,
            Mode::K => 0,
        }
    }

    pub fn label(self) -> char {
        match self {
            Mode::I => 'i',
            Mode::J => 'j',
            Mode::K => 'k',
        }
    }

    /// The two modes other than `self`, in basis order.
    pub fn others(self) -> (Mode, Mode) {
        match self {
            Mode::I => (Mode::J, Mode::K),
            Mode::J => (Mode::I, Mode::K),
            Mode::K => (Mode::I, Mode::J),
        }
    }

    pub fn from_label(c: char) -> Option<Mode> {
        match c {
            'i' => Some(Mode::I),
            'j' => Some(Mode::J),
            'k' => Some(Mode::K),
            _ => None,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Raising or lowering ladder operator on the truncated (two-level) mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    Lower,
    Raise,
}

/// Dense square complex matrix tagged with the modes it spans.
///
/// `modes` lists the spanned modes by bit significance (most significant
/// first), so an 8x8 density matrix carries `[I, J, K]` and a reduced 4x4
/// matrix remembers which pair survived the partial trace.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    modes: Vec<Mode>,
    data: Vec<Complex64>,
}

fn default_modes(dim: usize) -> Vec<Mode> {
    match dim {
        2 => vec![Mode::I],
        4 => vec![Mode::I, Mode::J],
        8 => vec![Mode::I, Mode::J, Mode::K],
        _ => Vec::new(),
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(ComplexMatrix {
            dim,
            modes: default_modes(dim),
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for r in 0..dim {
            m.set(r, r, Complex64::new(1.0, 0.0));
        }
        Ok(m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (r, &v) in diag.iter().enumerate() {
            m.set(r, r, Complex64::new(v, 0.0));
        }
        Ok(m)
    }

    /// Build from a row-major slice of `dim * dim` entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::InvalidDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::InvalidDimension(entries.len()));
        }
        Ok(ComplexMatrix {
            dim,
            modes: default_modes(dim),
            data: entries.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub(crate) fn set_modes(&mut self, modes: Vec<Mode>) {
        debug_assert_eq!(1 << modes.len(), self.dim);
        self.modes = modes;
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] += v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|r| self.get(r, r)).sum()
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = self.clone();
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = ComplexMatrix {
            dim: n,
            modes: self.modes.clone(),
            data: vec![Complex64::new(0.0, 0.0); n * n],
        };
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.add_to(r, c, a * other.get(k, c));
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> ComplexMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise magnitude of M - M^dagger.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self.get(r, c) - self.get(c, r).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    /// Replace the matrix by (M + M^dagger) / 2 to suppress round-off drift.
    pub fn symmetrize(&mut self) {
        for r in 0..self.dim {
            for c in r..self.dim {
                let avg = 0.5 * (self.get(r, c) + self.get(c, r).conj());
                self.set(r, c, avg);
                self.set(c, r, avg.conj());
            }
        }
    }
}

/// Eigenvalues (ascending) and optionally the unitary of eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<ComplexMatrix>,
}

/// Eigenvalues of a Hermitian matrix, ascending. Input must be Hermitian
/// within [`HERMITICITY_TOL`]; it is symmetrized before iterating.
pub fn eigen_hermitian(m: &ComplexMatrix) -> Result<EigenResult> {
    jacobi(m, false)
}

/// Like [`eigen_hermitian`] but also accumulates eigenvectors, so that
/// M = V diag(w) V^dagger with the columns of V the eigenvectors.
pub fn eigen_hermitian_with_vectors(m: &ComplexMatrix) -> Result<EigenResult> {
    jacobi(m, true)
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<EigenResult> {
    let defect = m.hermiticity_defect();
    if defect >= HERMITICITY_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.dim;
    let mut a = m.clone();
    a.symmetrize();
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n)?)
    } else {
        None
    };

    let scale = a.frobenius_norm().max(1.0);
    let tol = JACOBI_OFF_TOL * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for r in 0..n {
            for c in (r + 1)..n {
                off += 2.0 * a.get(r, c).norm_sqr();
            }
        }
        if off.sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r < f64::EPSILON * scale * 1e-3 {
                    continue;
                }
                // Phase that makes the pivot entry real, then a real rotation.
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Column update: columns p and q of A (and V) by the plane
                // unitary U with U[p][p]=c, U[q][p]=-s*conj(phase),
                // U[p][q]=s*phase, U[q][q]=c.
                for row in 0..n {
                    let xp = a.get(row, p);
                    let xq = a.get(row, q);
                    a.set(row, p, xp * c - xq * s * phase.conj());
                    a.set(row, q, xp * s * phase + xq * c);
                }
                // Row update by U^dagger from the left.
                for col in 0..n {
                    let xp = a.get(p, col);
                    let xq = a.get(q, col);
                    a.set(p, col, xp * c - xq * s * phase);
                    a.set(q, col, xp * s * phase.conj() + xq * c);
                }
                if let Some(vm) = v.as_mut() {
                    for row in 0..n {
                        let xp = vm.get(row, p);
                        let xq = vm.get(row, q);
                        vm.set(row, p, xp * c - xq * s * phase.conj());
                        vm.set(row, q, xp * s * phase + xq * c);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|r| a.get(r, r).re).collect();
    order.sort_by(|&x, &y| diag[x].partial_cmp(&diag[y]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&idx| diag[idx]).collect();
    let eigenvectors = v.map(|vm| {
        let mut sorted = vm.clone();
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                sorted.set(row, new_col, vm.get(row, old_col));
            }
        }
        sorted
    });

    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Transpose the indices of one mode only. Requires the mode to be spanned
/// by the matrix; preserves Hermiticity and trace.
pub fn partial_transpose(m: &ComplexMatrix, mode: Mode) -> Result<ComplexMatrix> {
    if !matches!(m.dim, 4 | 8) {
        return Err(Error::InvalidDimension(m.dim));
    }
    let pos = m
        .modes
        .iter()
        .position(|&other| other == mode)
        .ok_or(Error::ModeNotInMatrix {
            mode: mode.label(),
            dim: m.dim,
        })?;
    let bit = 1usize << (m.modes.len() - 1 - pos);

    let mut out = m.clone();
    for r in 0..m.dim {
        for c in 0..m.dim {
            // Swap the chosen mode's bit between row and column index.
            let rr = (r & !bit) | (c & bit);
            let cc = (c & !bit) | (r & bit);
            out.set(rr, cc, m.get(r, c));
        }
    }
    Ok(out)
}

/// Trace out the modes not listed in `keep`. The input must be the full 8x8
/// matrix; `keep` selects one or two modes and the result spans them in
/// basis order.
pub fn partial_trace(m: &ComplexMatrix, keep: &[Mode]) -> Result<ComplexMatrix> {
    if m.dim != 8 {
        return Err(Error::InvalidDimension(m.dim));
    }
    let mut kept: Vec<Mode> = keep.to_vec();
    kept.sort();
    kept.dedup();
    if kept.is_empty() || kept.len() >= 3 {
        return Err(Error::InvalidSubsystem(format!(
            "keep must name 1 or 2 distinct modes, got {}",
            keep.len()
        )));
    }

    let traced: Vec<Mode> = ALL_MODES
        .iter()
        .copied()
        .filter(|mode| !kept.contains(mode))
        .collect();
    let out_dim = 1usize << kept.len();
    let mut out = ComplexMatrix::zeros(out_dim)?;
    out.set_modes(kept.clone());

    // Map a reduced index to its bits on the kept modes (basis order).
    let spread = |idx: usize| -> usize {
        let mut full = 0usize;
        for (slot, mode) in kept.iter().enumerate() {
            let bit = (idx >> (kept.len() - 1 - slot)) & 1;
            full |= bit << mode.bit();
        }
        full
    };

    for r in 0..out_dim {
        for c in 0..out_dim {
            let base_r = spread(r);
            let base_c = spread(c);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..(1usize << traced.len()) {
                let mut extra = 0usize;
                for (slot, mode) in traced.iter().enumerate() {
                    let bit = (t >> slot) & 1;
                    extra |= bit << mode.bit();
                }
                acc += m.get(base_r | extra, base_c | extra);
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Apply the truncated-mode ladder operator to one mode of an 8-amplitude
/// vector: lower maps |1> to |0> and kills |0>, raise is the adjoint. The
/// image is generally unnormalized; lowering twice always yields zero.
pub fn apply_mode_operator(
    amplitudes: &[Complex64; 8],
    mode: Mode,
    op: LadderOp,
) -> [Complex64; 8] {
    let bit = 1usize << mode.bit();
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for (idx, &amp) in amplitudes.iter().enumerate() {
        match op {
            LadderOp::Lower => {
                if idx & bit != 0 {
                    out[idx & !bit] += amp;
                }
            }
            LadderOp::Raise => {
                if idx & bit == 0 {
                    out[idx | bit] += amp;
                }
            }
        }
    }
    out
}

/// Validate that `rho` is an 8x8 density matrix: Hermitian, unit trace
/// within 1e-8, and no eigenvalue below -1e-8.
pub fn validate_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.dim != 8 {
        return Err(Error::InvalidDensityMatrix(format!(
            "expected dimension 8, got {}",
            rho.dim
        )));
    }
    let defect = rho.hermiticity_defect();
    if defect >= HERMITICITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "hermiticity defect {defect:.3e}"
        )));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace {} + {}i is not 1",
            tr.re, tr.im
        )));
    }
    let eig = eigen_hermitian(rho)?;
    let min = eig.eigenvalues[0];
    if min < -1e-8 {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative eigenvalue {min:.3e}"
        )));
    }
    Ok(())
}

/// Sum of eigenvalues strictly below [`NEGATIVE_EIG_TOL`], negated and
/// doubled: the negativity of an already partially transposed matrix.
pub fn negativity_from_eigenvalues(eigenvalues: &[f64]) -> f64 {
    let neg_sum: f64 = eigenvalues.iter().filter(|&&w| w < NEGATIVE_EIG_TOL).sum();
    if neg_sum == 0.0 {
        0.0
    } else {
        -2.0 * neg_sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_density() -> ComplexMatrix {
        // (|00> + |11>)/sqrt(2) as a 4x4 density matrix.
        let mut m = ComplexMatrix::zeros(4).unwrap();
        for &(r, col) in &[(0usize, 0usize), (0, 3), (3, 0), (3, 3)] {
            m.set(r, col, c(0.5, 0.0));
        }
        m
    }

    #[test]
    fn identity_eigenvalues() {
        let m = ComplexMatrix::identity(4).unwrap();
        let eig = eigen_hermitian(&m).unwrap();
        assert_eq!(eig.eigenvalues.len(), 4);
        for w in eig.eigenvalues {
            assert!((w - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let m = ComplexMatrix::from_diagonal(&[0.5, -0.5, 0.5, 0.5]).unwrap();
        let eig = eigen_hermitian(&m).unwrap();
        assert_eq!(eig.eigenvalues, vec![-0.5, 0.5, 0.5, 0.5]);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        // Hand-derived: rho^T_A = diag(1/2,0,0,1/2) plus an off-diagonal
        // block with eigenvalues +-1/2, so the spectrum is {-1/2, 1/2 x3}.
        let pt = partial_transpose(&bell_density(), Mode::I).unwrap();
        let eig = eigen_hermitian(&pt).unwrap();
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (got, want) in eig.eigenvalues.iter().zip(expect.iter()) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }
        assert!((negativity_from_eigenvalues(&eig.eigenvalues) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partial_transpose_requires_contained_mode() {
        let m = bell_density(); // spans [I, J] by default
        let err = partial_transpose(&m, Mode::K).unwrap_err();
        assert!(matches!(err, Error::ModeNotInMatrix { .. }));
    }

    #[test]
    fn diagonal_matrix_is_pt_invariant() {
        let m = ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let pt = partial_transpose(&m, Mode::J).unwrap();
        assert!(m.sub(&pt).frobenius_norm() < 1e-15);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(2).unwrap();
        m.set(0, 1, c(1.0, 0.0));
        let err = eigen_hermitian(&m).unwrap_err();
        assert!(matches!(err, Error::NotHermitian(_)));
    }

    #[test]
    fn eigen_reconstruction_and_moments() {
        // Random-ish Hermitian 8x8 fixed by hand; certify the solver through
        // matrix moments (independent of the Jacobi path) and reconstruction.
        let n = 8;
        let mut m = ComplexMatrix::zeros(n).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        for r in 0..n {
            let d = next();
            m.set(r, r, c(d, 0.0));
            for col in (r + 1)..n {
                let v = c(next(), next());
                m.set(r, col, v);
                m.set(col, r, v.conj());
            }
        }
        let eig = eigen_hermitian_with_vectors(&m).unwrap();
        let w = &eig.eigenvalues;
        assert!(w.windows(2).all(|p| p[0] <= p[1]));

        let tr = m.trace().re;
        assert!((w.iter().sum::<f64>() - tr).abs() < 1e-10);
        let fro2 = m.frobenius_norm().powi(2);
        assert!((w.iter().map(|x| x * x).sum::<f64>() - fro2).abs() < 1e-9);
        let m3 = m.matmul(&m).matmul(&m);
        assert!((w.iter().map(|x| x * x * x).sum::<f64>() - m3.trace().re).abs() < 1e-9);

        let v = eig.eigenvectors.unwrap();
        let mut lambda = ComplexMatrix::zeros(n).unwrap();
        for (r, &value) in w.iter().enumerate() {
            lambda.set(r, r, c(value, 0.0));
        }
        let rebuilt = v.matmul(&lambda).matmul(&v.adjoint());
        assert!(m.sub(&rebuilt).frobenius_norm() < 1e-10);
    }

    #[test]
    fn partial_trace_product_state() {
        // |000><000| reduced to {j,k} is |00><00|.
        let mut rho = ComplexMatrix::zeros(8).unwrap();
        rho.set(0, 0, c(1.0, 0.0));
        let red = partial_trace(&rho, &[Mode::J, Mode::K]).unwrap();
        assert_eq!(red.dim(), 4);
        assert_eq!(red.modes(), &[Mode::J, Mode::K]);
        assert!((red.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((red.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_ghz_pair() {
        // GHZ reduced to any pair is diag(1/2, 0, 0, 1/2).
        let mut rho = ComplexMatrix::zeros(8).unwrap();
        for &(r, col) in &[(0usize, 0usize), (0, 7), (7, 0), (7, 7)] {
            rho.set(r, col, c(0.5, 0.0));
        }
        let red = partial_trace(&rho, &[Mode::J, Mode::K]).unwrap();
        let expect = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(red.sub(&expect).frobenius_norm() < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_keep() {
        let rho = ComplexMatrix::identity(8).unwrap().scale(1.0 / 8.0);
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &ALL_MODES).is_err());
    }

    #[test]
    fn ladder_operator_rules() {
        let mut amps = [c(0.0, 0.0); 8];
        amps[0] = c(1.0, 0.0); // |000>
        let lowered = apply_mode_operator(&amps, Mode::I, LadderOp::Lower);
        assert!(lowered.iter().all(|a| a.norm() == 0.0));

        let mut amps = [c(0.0, 0.0); 8];
        amps[7] = c(1.0, 0.0); // |111>
        let lowered = apply_mode_operator(&amps, Mode::I, LadderOp::Lower);
        assert!((lowered[3] - c(1.0, 0.0)).norm() < 1e-15); // |011>

        let mut amps = [c(0.0, 0.0); 8];
        amps[5] = c(1.0, 0.0); // |101>
        let raised = apply_mode_operator(&amps, Mode::J, LadderOp::Raise);
        assert!((raised[7] - c(1.0, 0.0)).norm() < 1e-15); // |111>

        // Lowering twice annihilates anything.
        let mut amps = [c(0.0, 0.0); 8];
        for (n, a) in amps.iter_mut().enumerate() {
            *a = c(1.0 / (n as f64 + 2.0), 0.3);
        }
        let once = apply_mode_operator(&amps, Mode::K, LadderOp::Lower);
        let twice = apply_mode_operator(&once, Mode::K, LadderOp::Lower);
        assert!(twice.iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn ladder_round_trips_on_basis_states() {
        // raise after lower restores a basis ket whose mode was occupied;
        // lower after raise restores one whose mode was empty.
        for mode in ALL_MODES {
            let bit = 1usize << mode.bit();
            for idx in 0..8usize {
                let mut amps = [c(0.0, 0.0); 8];
                amps[idx] = c(1.0, 0.0);
                if idx & bit == 0 {
                    let raised = apply_mode_operator(&amps, mode, LadderOp::Raise);
                    let back = apply_mode_operator(&raised, mode, LadderOp::Lower);
                    assert_eq!(back, amps);
                } else {
                    let lowered = apply_mode_operator(&amps, mode, LadderOp::Lower);
                    let back = apply_mode_operator(&lowered, mode, LadderOp::Raise);
                    assert_eq!(back, amps);
                }
            }
        }
    }
}
