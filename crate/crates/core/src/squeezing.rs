//! Two- and three-mode principal squeeze variances.
//!
//! The numeric path assembles all first and second ladder-operator moments of
//! a density matrix and evaluates the variance of the rotated collective
//! quadrature X_theta = sum_m (a_m e^{-i theta} + a_m^dag e^{i theta}); the
//! principal squeeze variance is its minimum over theta, which has the closed
//! expression with the absolute-value term. The standard quantum limit is 2
//! for two modes and 3 for three modes.
//!
//! The analytic path evaluates each family's closed-form variances written in
//! the probabilities of the support kets. Two coefficients are corrected
//! relative to their commonly quoted forms; both corrections are forced by
//! the moment algebra and by the known optima (for example the three-mode
//! minimum 5 - 2 sqrt(2) of the vacuum/double/triple family), and each is
//! covered by an equivalence test against the numeric path.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::linalg::{validate_density, ComplexMatrix, LadderOp, Mode, ALL_MODES};

/// Mode pairs in fixed order (i,j), (i,k), (j,k).
pub const MODE_PAIRS: [(Mode, Mode); 3] =
    [(Mode::I, Mode::J), (Mode::I, Mode::K), (Mode::J, Mode::K)];

fn pair_slot(a: Mode, b: Mode) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (Mode::I, Mode::J) => 0,
        (Mode::I, Mode::K) => 1,
        _ => 2,
    }
}

/// First and second ladder-operator moments of a three-mode state.
///
/// `square` is kept explicitly even though a^2 annihilates every truncated
/// basis ket, so the numeric path also validates the operator construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTable {
    /// `<a_m>` per mode.
    pub mean: [Complex64; 3],
    /// `<a_m^dag a_m>` per mode.
    pub number: [f64; 3],
    /// `<a_a^dag a_b>` for pairs (i,j), (i,k), (j,k).
    pub cross_nd: [Complex64; 3],
    /// `<a_m^2>` per mode (identically zero on the truncated space).
    pub square: [Complex64; 3],
    /// `<a_a a_b>` for pairs (i,j), (i,k), (j,k).
    pub cross_aa: [Complex64; 3],
}

impl MomentTable {
    pub fn mean(&self, m: Mode) -> Complex64 {
        self.mean[m.bit_slot()]
    }

    pub fn number(&self, m: Mode) -> f64 {
        self.number[m.bit_slot()]
    }

    /// Centralized `<Delta a_m^dag Delta a_m>`.
    pub fn delta_number(&self, m: Mode) -> f64 {
        self.number(m) - self.mean(m).norm_sqr()
    }

    /// Centralized `<Delta a_a^dag Delta a_b>`.
    pub fn delta_cross_nd(&self, a: Mode, b: Mode) -> Complex64 {
        let raw = self.cross_nd[pair_slot(a, b)];
        let raw = if a <= b { raw } else { raw.conj() };
        raw - self.mean(a).conj() * self.mean(b)
    }

    /// Centralized `<(Delta a_m)^2>`.
    pub fn delta_square(&self, m: Mode) -> Complex64 {
        self.square[m.bit_slot()] - self.mean(m) * self.mean(m)
    }

    /// Centralized `<Delta a_a Delta a_b>`.
    pub fn delta_cross_aa(&self, a: Mode, b: Mode) -> Complex64 {
        self.cross_aa[pair_slot(a, b)] - self.mean(a) * self.mean(b)
    }
}

trait ModeSlot {
    fn bit_slot(self) -> usize;
}

impl ModeSlot for Mode {
    fn bit_slot(self) -> usize {
        match self {
            Mode::I => 0,
            Mode::J => 1,
            Mode::K => 2,
        }
    }
}

/// The four principal squeeze variances plus the moment table they derive
/// from. `lambda_two < 2` / `lambda_three < 3` flag squeezing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeReport {
    pub lambda_ij: f64,
    pub lambda_ik: f64,
    pub lambda_jk: f64,
    pub lambda_ijk: f64,
    pub moments: MomentTable,
}

impl SqueezeReport {
    pub fn pair(&self, a: Mode, b: Mode) -> f64 {
        match pair_slot(a, b) {
            0 => self.lambda_ij,
            1 => self.lambda_ik,
            _ => self.lambda_jk,
        }
    }

    pub const CSV_HEADER: [&'static str; 4] = ["lambda_ij", "lambda_ik", "lambda_jk", "lambda_ijk"];

    pub fn csv_fields(&self) -> [f64; 4] {
        [
            self.lambda_ij,
            self.lambda_ik,
            self.lambda_jk,
            self.lambda_ijk,
        ]
    }

    pub fn max_deviation(&self, other: &SqueezeReport) -> f64 {
        self.csv_fields()
            .iter()
            .zip(other.csv_fields().iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Tr(rho * O) for a chain of ladder operators (written left to right, so
/// `[(a, Raise), (b, Lower)]` is a_a^dag a_b). Each basis ket maps to at most
/// one ket with unit coefficient, so the trace needs only eight entries.
fn ladder_expectation(rho: &ComplexMatrix, chain: &[(Mode, LadderOp)]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    'kets: for v in 0..8usize {
        let mut u = v;
        for &(mode, op) in chain.iter().rev() {
            let bit = 1usize << mode.bit();
            match op {
                LadderOp::Lower => {
                    if u & bit == 0 {
                        continue 'kets;
                    }
                    u &= !bit;
                }
                LadderOp::Raise => {
                    if u & bit != 0 {
                        continue 'kets;
                    }
                    u |= bit;
                }
            }
        }
        acc += rho.get(v, u);
    }
    acc
}

/// All first and second moments of the truncated ladder operators.
pub fn compute_moments(rho3: &ComplexMatrix) -> Result<MomentTable> {
    validate_density(rho3)?;
    Ok(compute_moments_unchecked(rho3))
}

pub(crate) fn compute_moments_unchecked(rho3: &ComplexMatrix) -> MomentTable {
    let mut mean = [Complex64::new(0.0, 0.0); 3];
    let mut number = [0.0f64; 3];
    let mut square = [Complex64::new(0.0, 0.0); 3];
    for (slot, &m) in ALL_MODES.iter().enumerate() {
        mean[slot] = ladder_expectation(rho3, &[(m, LadderOp::Lower)]);
        number[slot] = ladder_expectation(rho3, &[(m, LadderOp::Raise), (m, LadderOp::Lower)]).re;
        square[slot] = ladder_expectation(rho3, &[(m, LadderOp::Lower), (m, LadderOp::Lower)]);
    }
    let mut cross_nd = [Complex64::new(0.0, 0.0); 3];
    let mut cross_aa = [Complex64::new(0.0, 0.0); 3];
    for (slot, &(a, b)) in MODE_PAIRS.iter().enumerate() {
        cross_nd[slot] = ladder_expectation(rho3, &[(a, LadderOp::Raise), (b, LadderOp::Lower)]);
        cross_aa[slot] = ladder_expectation(rho3, &[(a, LadderOp::Lower), (b, LadderOp::Lower)]);
    }
    MomentTable {
        mean,
        number,
        cross_nd,
        square,
        cross_aa,
    }
}

/// Theta-independent part and rotating coefficient of Var(X_theta) for a
/// two- or three-mode collective quadrature: Var = base + 2 Re(e^{-2i theta} w).
fn variance_parts(moments: &MomentTable, modes: &[Mode]) -> (f64, Complex64) {
    let mut base = modes.len() as f64;
    let mut w = Complex64::new(0.0, 0.0);
    for (slot, &m) in modes.iter().enumerate() {
        base += 2.0 * moments.delta_number(m);
        w += moments.delta_square(m);
        for &n in modes.iter().skip(slot + 1) {
            base += 4.0 * moments.delta_cross_nd(m, n).re;
            w += 2.0 * moments.delta_cross_aa(m, n);
        }
    }
    (base, w)
}

/// Variance of X_theta over the given modes at a fixed rotation phase.
pub fn quadrature_variance_at(moments: &MomentTable, modes: &[Mode], theta: f64) -> f64 {
    let (base, w) = variance_parts(moments, modes);
    base + 2.0 * (Complex64::from_polar(1.0, -2.0 * theta) * w).re
}

/// Two-mode principal squeeze variance (SQL = 2).
pub fn lambda_two_mode(moments: &MomentTable, a: Mode, b: Mode) -> f64 {
    let (base, w) = variance_parts(moments, &[a, b]);
    base - 2.0 * w.norm()
}

/// Three-mode principal squeeze variance (SQL = 3).
pub fn lambda_three_mode(moments: &MomentTable) -> f64 {
    let (base, w) = variance_parts(moments, &ALL_MODES);
    base - 2.0 * w.norm()
}

/// Full numeric report for a density matrix.
pub fn squeeze_report(rho3: &ComplexMatrix) -> Result<SqueezeReport> {
    let moments = compute_moments(rho3)?;
    Ok(report_from_moments(moments))
}

fn report_from_moments(moments: MomentTable) -> SqueezeReport {
    SqueezeReport {
        lambda_ij: lambda_two_mode(&moments, Mode::I, Mode::J),
        lambda_ik: lambda_two_mode(&moments, Mode::I, Mode::K),
        lambda_jk: lambda_two_mode(&moments, Mode::J, Mode::K),
        lambda_ijk: lambda_three_mode(&moments),
        moments,
    }
}

/// Minimize Var(X_theta) over a uniform theta grid on [0, pi), then refine
/// the best cell by golden-section search to a 1e-12 bracket. Converges to
/// the principal squeeze variance from above as `phase_steps` grows.
pub fn quadrature_variance_scan(
    rho3: &ComplexMatrix,
    modes: &[Mode],
    phase_steps: usize,
) -> Result<f64> {
    if !(modes.len() == 2 || modes.len() == 3) {
        return Err(Error::InvalidSubsystem(format!(
            "quadrature scan needs 2 or 3 modes, got {}",
            modes.len()
        )));
    }
    let mut distinct = modes.to_vec();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != modes.len() {
        return Err(Error::EqualModes);
    }
    if phase_steps < 3 {
        return Err(Error::InvalidArgument(
            "phase_steps must be at least 3".into(),
        ));
    }
    let moments = compute_moments(rho3)?;
    let var = |theta: f64| quadrature_variance_at(&moments, &distinct, theta);

    let step = std::f64::consts::PI / phase_steps as f64;
    let mut best_k = 0usize;
    let mut best = f64::INFINITY;
    for k in 0..phase_steps {
        let v = var(k as f64 * step);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let lo = (best_k as f64 - 1.0) * step;
    let hi = (best_k as f64 + 1.0) * step;
    let refined = golden_min(&var, lo, hi, 1e-12);
    Ok(refined.min(best))
}

/// Golden-section minimization of a unimodal function on [lo, hi].
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Argmin variant of [`golden_min`].
pub(crate) fn golden_argmin<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form squeeze variances for a parametric family member with real
/// nonnegative amplitudes. The moment table is computed numerically for
/// reference; the lambda fields come from the family formulas alone.
///
/// ```
/// use trimode::{lambda_closed_form, Family, FamilySpec, Mode};
///
/// // A balanced vacuum/triple superposition sits at twice the SQL.
/// let spec = FamilySpec::from_probabilities(Family::Iii0, Mode::I, &[0.5, 0.5])?;
/// let report = lambda_closed_form(&spec)?;
/// assert!((report.lambda_ij - 4.0).abs() < 1e-12);
/// assert!((report.lambda_ijk - 6.0).abs() < 1e-12);
/// # Ok::<(), trimode::Error>(())
/// ```
pub fn lambda_closed_form(spec: &FamilySpec) -> Result<SqueezeReport> {
    if spec.family == Family::General {
        return Err(Error::UnsupportedFamily);
    }
    if !spec.is_real_nonnegative() {
        return Err(Error::UnsupportedRegime);
    }
    spec.validate()?;
    let probs = spec.probabilities();
    let canonical = match spec.family {
        Family::Iii0 => closed_iii0(&probs),
        Family::Iii1A => closed_iii1a(&probs),
        Family::Iii1B => closed_iii1b(&probs),
        Family::Iii2 => closed_iii2(&probs),
        Family::Iii3 => closed_iii3(&probs),
        Family::General => unreachable!(),
    };

    // The formulas are written for pivot i; other pivots relabel modes.
    let canonical_of = |m: Mode| -> Mode {
        match spec.pivot {
            Mode::I => m,
            Mode::J => match m {
                Mode::I => Mode::J,
                Mode::J => Mode::I,
                Mode::K => Mode::K,
            },
            Mode::K => match m {
                Mode::I => Mode::J,
                Mode::J => Mode::K,
                Mode::K => Mode::I,
            },
        }
    };
    let lambda_pair =
        |a: Mode, b: Mode| -> f64 { canonical[pair_slot(canonical_of(a), canonical_of(b))] };

    let state = crate::families::build_state(spec)?;
    let rho = crate::families::pure_density(&state);
    let moments = compute_moments_unchecked(&rho);
    Ok(SqueezeReport {
        lambda_ij: lambda_pair(Mode::I, Mode::J),
        lambda_ik: lambda_pair(Mode::I, Mode::K),
        lambda_jk: lambda_pair(Mode::J, Mode::K),
        lambda_ijk: canonical[3],
        moments,
    })
}

/// [lambda_ij, lambda_ik, lambda_jk, lambda_ijk] in the pivot-i labeling.
fn closed_iii0(p: &[f64]) -> [f64; 4] {
    let p111 = p[1];
    let two = 2.0 + 4.0 * p111;
    [two, two, two, 3.0 + 6.0 * p111]
}

fn closed_iii1a(p: &[f64]) -> [f64; 4] {
    let (p000, p100, p111) = (p[0], p[1], p[2]);
    let lam_ij = 2.0 * (1.0 + p100 + 2.0 * p111 - 2.0 * p000 * p100);
    let lam_jk = 2.0 * (1.0 + 2.0 * p111 - 2.0 * (p100 * p111).sqrt());
    let lam_ijk = 3.0 + 2.0 * (p100 - p000 * p100 + 3.0 * p111)
        - 2.0 * (2.0 * (p100 * p111).sqrt() - p000 * p100).abs();
    [lam_ij, lam_ij, lam_jk, lam_ijk]
}

fn closed_iii1b(p: &[f64]) -> [f64; 4] {
    let (p000, p011, p111) = (p[0], p[1], p[2]);
    let lam_ij = 2.0 * (1.0 + p011 + 2.0 * p111 - 2.0 * p011 * p111);
    let lam_jk = 2.0 * (1.0 + 2.0 * p011 + 2.0 * p111 - 2.0 * (p000 * p011).sqrt());
    // The 2*P_011 coefficient: modes j and k both carry the double
    // excitation, so the photon-number sum contributes P_011 twice.
    let lam_ijk = 3.0 + 2.0 * (2.0 * p011 - p011 * p111 + 3.0 * p111)
        - 2.0 * (2.0 * (p000 * p011).sqrt() - p011 * p111).abs();
    [lam_ij, lam_ij, lam_jk, lam_ijk]
}

fn closed_iii2(p: &[f64]) -> [f64; 4] {
    // The published III-2 variances are written for the support
    // {|000>, |001>, |011>, |111>}, whose separable pair is (i,k), i.e. the
    // pivot-j orientation. Our canonical pivot-i member {|000>, |001>,
    // |101>, |111>} is its image under swapping modes i and j, sharing the
    // same slot probabilities, so the pair labels swap {i,k} <-> {j,k}.
    let (p000, p001, pdbl, p111) = (p[0], p[1], p[2], p[3]);
    let s_q1 = (p001 * p111).sqrt();
    let s_0w = (p000 * pdbl).sqrt();
    let s_all = (p000 * p001 * pdbl * p111).sqrt();

    let deep_pair = 2.0
        * (1.0 + pdbl - p001 * pdbl + 2.0 * p111
            - pdbl * p111
            - 2.0 * s_q1 * pdbl
            - (2.0 * (s_q1 * (1.0 - pdbl)) - p001 * pdbl - pdbl * p111).abs());
    // 2*P_dbl*P_111: the number moment and the collapsed absolute-value term
    // each contribute the product once.
    let separable_pair = 2.0
        * (1.0 + p001 - 2.0 * p000 * p001 + pdbl + 2.0 * p111 - 2.0 * pdbl * p111 - 4.0 * s_all);
    let shallow_pair = 2.0
        * (1.0 + p001 - p000 * p001 + 2.0 * pdbl + 2.0 * p111
            - p001 * pdbl
            - 2.0 * s_0w * p001
            - (2.0 * (s_0w * (1.0 - p001)) - p000 * p001 - p001 * pdbl).abs());
    let lam_ijk = 3.0
        + 2.0 * (p001 - p000 * p001 + 2.0 * pdbl - p001 * pdbl + 3.0 * p111 - pdbl * p111)
        - 4.0 * (s_0w * p001 + s_all + s_q1 * pdbl)
        - 2.0
            * (2.0 * (s_0w - s_0w * p001 + s_q1 - s_all - s_q1 * pdbl)
                - p000 * p001
                - p001 * pdbl
                - pdbl * p111)
                .abs();
    // Pivot-i labels: (i,j) deep entangled pair, (i,k) shallow entangled
    // pair, (j,k) the separable pair.
    [deep_pair, shallow_pair, separable_pair, lam_ijk]
}

fn closed_iii3(p: &[f64]) -> [f64; 4] {
    let (p000, p101, p110) = (p[0], p[1], p[2]);
    let lam_ij = 2.0 * (1.0 + p101 + 2.0 * p110 - 2.0 * (p000 * p110).sqrt());
    let lam_ik = 2.0 * (1.0 + p110 + 2.0 * p101 - 2.0 * (p000 * p101).sqrt());
    let lam_jk = 2.0 * (1.0 + p101 + p110 + 2.0 * (p101 * p110).sqrt());
    let lam_ijk = 3.0 + 2.0 * (2.0 * p101 + 2.0 * p110)
        - 4.0 * ((p000 * p101).sqrt() + (p000 * p110).sqrt())
        + 4.0 * (p101 * p110).sqrt();
    [lam_ij, lam_ik, lam_jk, lam_ijk]
}
