//! Extremal searches over a family's probability simplex: deterministic grid
//! scan followed by local refinement, plus the squeezing-threshold estimate
//! that combines Monte-Carlo sampling with boundary grids.

use rayon::prelude::*;

use crate::entanglement::{tripartite_negativity, EntanglementReport};
use crate::error::{Error, Result};
use crate::families::{
    build_state, pure_density, sample_family_with_pivot, Family, FamilySpec, SamplerConfig,
};
use crate::linalg::Mode;
use crate::squeezing::{golden_argmin, lambda_closed_form, SqueezeReport};

/// A lambda or negativity field that a search can optimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    NIj,
    NIk,
    NJk,
    NIJk,
    NJIk,
    NKIj,
    NIjk,
    LambdaIj,
    LambdaIk,
    LambdaJk,
    LambdaIjk,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::NIj => "N_ij",
            Objective::NIk => "N_ik",
            Objective::NJk => "N_jk",
            Objective::NIJk => "N_i-jk",
            Objective::NJIk => "N_j-ik",
            Objective::NKIj => "N_k-ij",
            Objective::NIjk => "N_ijk",
            Objective::LambdaIj => "lambda_ij",
            Objective::LambdaIk => "lambda_ik",
            Objective::LambdaJk => "lambda_jk",
            Objective::LambdaIjk => "lambda_ijk",
        }
    }

    pub fn from_name(name: &str) -> Option<Objective> {
        let n = name.trim().to_ascii_lowercase().replace('-', "_");
        Some(match n.as_str() {
            "n_ij" => Objective::NIj,
            "n_ik" => Objective::NIk,
            "n_jk" => Objective::NJk,
            "n_i_jk" => Objective::NIJk,
            "n_j_ik" => Objective::NJIk,
            "n_k_ij" => Objective::NKIj,
            "n_ijk" => Objective::NIjk,
            "lambda_ij" => Objective::LambdaIj,
            "lambda_ik" => Objective::LambdaIk,
            "lambda_jk" => Objective::LambdaJk,
            "lambda_ijk" => Objective::LambdaIjk,
            _ => return None,
        })
    }

    pub fn is_lambda(self) -> bool {
        matches!(
            self,
            Objective::LambdaIj | Objective::LambdaIk | Objective::LambdaJk | Objective::LambdaIjk
        )
    }

    pub fn of_entanglement(self, rep: &EntanglementReport) -> f64 {
        match self {
            Objective::NIj => rep.n_ij,
            Objective::NIk => rep.n_ik,
            Objective::NJk => rep.n_jk,
            Objective::NIJk => rep.n_i_jk,
            Objective::NJIk => rep.n_j_ik,
            Objective::NKIj => rep.n_k_ij,
            Objective::NIjk => rep.n_ijk,
            _ => f64::NAN,
        }
    }

    pub fn of_squeeze(self, rep: &SqueezeReport) -> f64 {
        match self {
            Objective::LambdaIj => rep.lambda_ij,
            Objective::LambdaIk => rep.lambda_ik,
            Objective::LambdaJk => rep.lambda_jk,
            Objective::LambdaIjk => rep.lambda_ijk,
            _ => f64::NAN,
        }
    }
}

/// Evaluate one objective for a family spec (closed form for lambdas, the
/// eigensolve route for negativities).
pub fn evaluate_objective(spec: &FamilySpec, objective: Objective) -> Result<f64> {
    if objective.is_lambda() {
        let rep = lambda_closed_form(spec)?;
        Ok(objective.of_squeeze(&rep))
    } else {
        let rho = pure_density(&build_state(spec)?);
        let rep = tripartite_negativity(&rho)?;
        Ok(objective.of_entanglement(&rep))
    }
}

/// Where an extremal search landed.
#[derive(Debug, Clone)]
pub struct ExtremumResult {
    pub family: Family,
    pub pivot: Mode,
    pub objective: Objective,
    pub maximize: bool,
    pub constraints: Vec<(usize, f64)>,
    pub arg: FamilySpec,
    pub value: f64,
}

/// Pin a support ket's probability (the ket is named by its basis index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pin {
    pub ket: usize,
    pub probability: f64,
}

fn probs_to_spec(family: Family, pivot: Mode, probs: &[f64]) -> FamilySpec {
    // Normalize to absorb accumulated round-off before validation.
    let total: f64 = probs.iter().sum();
    let normalized: Vec<f64> = probs.iter().map(|p| (p / total).max(0.0)).collect();
    FamilySpec::from_probabilities(family, pivot, &normalized)
        .expect("simplex point is a valid spec")
}

/// Deterministic grid scan over the family's free probability simplex with
/// `resolution` divisions, followed by pairwise golden-section refinement of
/// the free coordinates down to 1e-10 parameter tolerance.
pub fn find_extremum(
    family: Family,
    pivot: Mode,
    objective: Objective,
    maximize: bool,
    pins: &[Pin],
    resolution: usize,
) -> Result<ExtremumResult> {
    if family == Family::General {
        return Err(Error::UnsupportedFamily);
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "resolution must be at least 2".into(),
        ));
    }
    let support = family.support(pivot);
    let dim = support.len();

    let mut pinned = vec![None::<f64>; dim];
    let mut pinned_mass = 0.0;
    for pin in pins {
        let slot = support.iter().position(|&k| k == pin.ket).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "ket {:03b} is not in the support of {family} with pivot {pivot}",
                pin.ket
            ))
        })?;
        if !(0.0..=1.0).contains(&pin.probability) {
            return Err(Error::InvalidArgument(
                "pinned probabilities must lie in [0, 1]".into(),
            ));
        }
        pinned[slot] = Some(pin.probability);
        pinned_mass += pin.probability;
    }
    if pinned_mass > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(
            "pinned probabilities exceed total mass 1".into(),
        ));
    }
    let free: Vec<usize> = (0..dim).filter(|&s| pinned[s].is_none()).collect();
    if free.len() < 2 {
        return Err(Error::OverConstrained);
    }
    let mass = 1.0 - pinned_mass;

    let assemble = |free_probs: &[f64]| -> Vec<f64> {
        let mut probs = vec![0.0f64; dim];
        for (slot, value) in pinned.iter().enumerate() {
            if let Some(v) = value {
                probs[slot] = *v;
            }
        }
        for (&slot, &p) in free.iter().zip(free_probs.iter()) {
            probs[slot] = p;
        }
        probs
    };
    let sign = if maximize { -1.0 } else { 1.0 };
    let eval = |free_probs: &[f64]| -> f64 {
        let spec = probs_to_spec(family, pivot, &assemble(free_probs));
        match evaluate_objective(&spec, objective) {
            Ok(v) => sign * v,
            Err(_) => f64::INFINITY,
        }
    };

    // Grid stage: compositions of `resolution` among the free slots.
    let grid = compositions(resolution, free.len());
    let scored: Vec<(Vec<f64>, f64)> = grid
        .par_iter()
        .map(|combo| {
            let free_probs: Vec<f64> = combo
                .iter()
                .map(|&n| mass * n as f64 / resolution as f64)
                .collect();
            let score = eval(&free_probs);
            (free_probs, score)
        })
        .collect();
    let (mut best_probs, mut best_score) = scored
        .into_iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .ok_or(Error::OverConstrained)?;

    // Pairwise mass-transfer refinement.
    for _round in 0..200 {
        let mut moved = 0.0f64;
        for a in 0..free.len() {
            for b in (a + 1)..free.len() {
                let pa = best_probs[a];
                let pb = best_probs[b];
                let lo = -pa;
                let hi = pb;
                if hi - lo < 1e-14 {
                    continue;
                }
                let transfer = |t: f64| {
                    let mut probs = best_probs.clone();
                    probs[a] = (pa + t).max(0.0);
                    probs[b] = (pb - t).max(0.0);
                    eval(&probs)
                };
                let t = golden_argmin(&transfer, lo, hi, 1e-11);
                let candidate = transfer(t);
                if candidate < best_score - 1e-15 {
                    moved = moved.max(t.abs());
                    best_probs[a] = (pa + t).max(0.0);
                    best_probs[b] = (pb - t).max(0.0);
                    best_score = candidate;
                }
            }
        }
        if moved < 1e-10 {
            break;
        }
    }

    let arg = probs_to_spec(family, pivot, &assemble(&best_probs));
    let value = evaluate_objective(&arg, objective)?;
    Ok(ExtremumResult {
        family,
        pivot,
        objective,
        maximize,
        constraints: pins.iter().map(|p| (p.ket, p.probability)).collect(),
        arg,
        value,
    })
}

/// All length-`parts` tuples of nonnegative integers summing to `total`.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for n in 0..=total {
            prefix.push(n);
            rec(total - n, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(total, parts, &mut prefix, &mut out);
    out
}

/// Result of the squeezing-threshold estimate for one family.
#[derive(Debug, Clone)]
pub struct ThresholdResult {
    pub family: Family,
    /// Largest three-mode negativity among three-mode-squeezed states.
    pub max_n_ijk: f64,
    /// Spec attaining it, when any squeezed state was found.
    pub witness: Option<FamilySpec>,
    pub any_squeezed: bool,
}

/// Max N_ijk over states with lambda_ijk < 3, from Monte-Carlo samples plus
/// a deterministic simplex grid (boundaries included) and local refinement.
pub fn squeeze_threshold(family: Family, cfg: SamplerConfig) -> Result<ThresholdResult> {
    squeeze_threshold_with_pivot(family, Mode::I, cfg)
}

pub fn squeeze_threshold_with_pivot(
    family: Family,
    pivot: Mode,
    cfg: SamplerConfig,
) -> Result<ThresholdResult> {
    if family == Family::General {
        return Err(Error::UnsupportedFamily);
    }
    let dim = family.support_size();

    let score = |probs: &[f64]| -> Option<(f64, Vec<f64>)> {
        let spec = probs_to_spec(family, pivot, probs);
        let squeeze = lambda_closed_form(&spec).ok()?;
        if squeeze.lambda_ijk >= 3.0 {
            return None;
        }
        let rho = pure_density(&build_state(&spec).ok()?);
        let rep = tripartite_negativity(&rho).ok()?;
        Some((rep.n_ijk, probs.to_vec()))
    };

    // Monte-Carlo candidates on the requested measure.
    let sampled: Vec<Vec<f64>> = sample_family_with_pivot(family, pivot, cfg)
        .map(|spec| spec.probabilities())
        .collect();
    // Deterministic grid over the whole simplex, boundaries included.
    let resolution = match dim {
        2 => 2000,
        3 => 250,
        _ => 60,
    };
    let grid: Vec<Vec<f64>> = compositions(resolution, dim)
        .into_iter()
        .map(|combo| {
            combo
                .iter()
                .map(|&n| n as f64 / resolution as f64)
                .collect()
        })
        .collect();

    let best = sampled
        .par_iter()
        .chain(grid.par_iter())
        .filter_map(|probs| score(probs))
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let Some((mut best_n, mut best_probs)) = best else {
        return Ok(ThresholdResult {
            family,
            max_n_ijk: 0.0,
            witness: None,
            any_squeezed: false,
        });
    };

    // Local deterministic box refinement around the best point.
    let mut step = 1.0 / resolution as f64;
    for _ in 0..24 {
        let mut improved = false;
        for off in offsets_for(dim - 1) {
            let mut probs = best_probs.clone();
            let mut ok = true;
            let mut delta = 0.0;
            for (slot, &o) in off.iter().enumerate() {
                let v = probs[slot] + o as f64 * step;
                if !(0.0..=1.0).contains(&v) {
                    ok = false;
                    break;
                }
                probs[slot] = v;
                delta += o as f64 * step;
            }
            if !ok {
                continue;
            }
            let last = probs[dim - 1] - delta;
            if !(0.0..=1.0).contains(&last) {
                continue;
            }
            probs[dim - 1] = last;
            if let Some((n, p)) = score(&probs) {
                if n > best_n {
                    best_n = n;
                    best_probs = p;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
        if step < 1e-12 {
            break;
        }
    }

    let witness = probs_to_spec(family, pivot, &best_probs);
    Ok(ThresholdResult {
        family,
        max_n_ijk: best_n,
        witness: Some(witness),
        any_squeezed: true,
    })
}

/// {-1, 0, 1}^parts without the all-zero tuple.
fn offsets_for(parts: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let total = 3usize.pow(parts as u32);
    for code in 0..total {
        let mut c = code;
        let mut tuple = Vec::with_capacity(parts);
        let mut all_zero = true;
        for _ in 0..parts {
            let o = (c % 3) as i32 - 1;
            if o != 0 {
                all_zero = false;
            }
            tuple.push(o);
            c /= 3;
        }
        if !all_zero {
            out.push(tuple);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn objective_names_round_trip() {
        for obj in [
            Objective::NIj,
            Objective::NIjk,
            Objective::NIJk,
            Objective::LambdaJk,
            Objective::LambdaIjk,
        ] {
            assert_eq!(Objective::from_name(obj.name()), Some(obj));
        }
        assert_eq!(Objective::from_name("nope"), None);
    }

    #[test]
    fn iii1a_constrained_jk_minimum() {
        // With P_000 = 0 the minimum of lambda_jk is 4 - 2 sqrt(2) at
        // P_111 = (2 - sqrt(2))/4; the one-dimensional calculus oracle is
        // 8 p^2 - 8 p + 1 = 0.
        let result = find_extremum(
            Family::Iii1A,
            Mode::I,
            Objective::LambdaJk,
            false,
            &[Pin {
                ket: 0,
                probability: 0.0,
            }],
            400,
        )
        .unwrap();
        assert!((result.value - (4.0 - 2.0 * SQRT2)).abs() < 1e-9);
        let p111 = result.arg.probabilities()[2];
        assert!((p111 - (2.0 - SQRT2) / 4.0).abs() < 1e-6);
        // Re-evaluating the objective at the argument reproduces the value.
        let again = evaluate_objective(&result.arg, Objective::LambdaJk).unwrap();
        assert!((again - result.value).abs() < 1e-9);
    }

    #[test]
    fn iii1a_ij_minimum_at_quarter() {
        let result = find_extremum(
            Family::Iii1A,
            Mode::I,
            Objective::LambdaIj,
            false,
            &[Pin {
                ket: 7,
                probability: 0.0,
            }],
            400,
        )
        .unwrap();
        assert!((result.value - 1.75).abs() < 1e-9);
        assert!((result.arg.probabilities()[1] - 0.25).abs() < 1e-6);
    }

    #[test]
    fn over_constrained_rejected() {
        let err = find_extremum(
            Family::Iii0,
            Mode::I,
            Objective::LambdaIjk,
            false,
            &[Pin {
                ket: 0,
                probability: 0.0,
            }],
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OverConstrained));
    }

    #[test]
    fn iii0_minimum_is_the_sql() {
        let result = find_extremum(
            Family::Iii0,
            Mode::I,
            Objective::LambdaIjk,
            false,
            &[],
            1000,
        )
        .unwrap();
        assert!((result.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn iii3_entanglement_peak_is_symmetric() {
        let result = find_extremum(Family::Iii3, Mode::I, Objective::NIjk, true, &[], 150).unwrap();
        // Peak at equal probabilities, where the state is locally equivalent
        // to the W state: N_ijk = 2 sqrt(2)/3.
        assert!((result.value - 2.0 * SQRT2 / 3.0).abs() < 1e-6);
        for p in result.arg.probabilities() {
            assert!(
                (p - 1.0 / 3.0).abs() < 1e-4,
                "probs {:?}",
                result.arg.probabilities()
            );
        }
    }

    #[test]
    fn iii3_three_mode_minimum_value() {
        // Exact family minimum of lambda_ijk is 6 - sqrt(17), at the
        // symmetric point P_101 = P_110 = (17 - sqrt(153))/68.
        let result =
            find_extremum(Family::Iii3, Mode::I, Objective::LambdaIjk, false, &[], 300).unwrap();
        assert!(
            (result.value - (6.0 - 17.0f64.sqrt())).abs() < 1e-8,
            "min lambda_ijk = {}",
            result.value
        );
    }
}
