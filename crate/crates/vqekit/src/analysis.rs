//! Trainability diagnostics and trial-set statistics.
//!
//! The gradient-variance scan samples `∂C` at one designated parameter over
//! uniformly random parameter vectors, per qubit count, and fits the
//! exponential decay rate of the variance; the same samples yield the
//! cost-concentration statistics. Sample statistics use the `N−1` divisor
//! throughout.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{build_hea, build_hva, CircuitSpec};
use crate::error::{Error, Result};
use crate::init::random_params;
use crate::optimize::{self, derive_trial_seed, TrialRecord};
use crate::pauli::PauliSum;
use crate::statevector::StateVector;
use crate::tasks::{build_tfim, build_xxz, Boundary, Geometry};

/// Normalized gradient norm `G = (1/L) Σ_l (∂_l C)²`.
pub fn normalized_grad_norm(grad: &[f64]) -> Result<f64> {
    if grad.is_empty() {
        return Err(Error::InvalidArgument(
            "normalized gradient norm of an empty gradient".into(),
        ));
    }
    Ok(grad.iter().map(|g| g * g).sum::<f64>() / grad.len() as f64)
}

/// Chebyshev tail bound `P(|∂C| ≥ c) ≤ Var/c²`, capped at 1.
pub fn chebyshev_bound(variance: f64, c: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::InvalidArgument(
            "Chebyshev threshold must be positive".into(),
        ));
    }
    if variance < 0.0 {
        return Err(Error::InvalidArgument("variance must be nonnegative".into()));
    }
    Ok((variance / (c * c)).min(1.0))
}

/// Fraction of samples with `|x| ≥ c`; the empirical counterpart of
/// [`chebyshev_bound`].
pub fn exceedance_frequency(samples: &[f64], c: f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.iter().filter(|x| x.abs() >= c).count() as f64 / samples.len() as f64
}

fn sample_mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, var)
}

/// Per-size scan statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SizeStats {
    pub num_qubits: usize,
    pub samples: usize,
    pub mean_grad: f64,
    pub var_grad: f64,
    pub mean_cost: f64,
    pub var_cost: f64,
    /// Raw `∂C` samples, kept for exceedance checks; not serialized.
    #[serde(skip)]
    pub grad_samples: Vec<f64>,
}

impl SizeStats {
    /// Standard error of the gradient mean.
    pub fn grad_stderr(&self) -> f64 {
        (self.var_grad / self.samples as f64).sqrt()
    }
}

/// Least-squares fit of `ln Var = ln a − n·ln(rate)`: variance decaying as
/// `rate^{−n}` gives `rate > 1`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DecayFit {
    pub rate: f64,
    pub log_intercept: f64,
}

fn fit_decay(points: &[(usize, f64)]) -> Option<DecayFit> {
    // An exponential fit needs a few sizes and strictly positive variances.
    if points.len() < 4 || points.iter().any(|&(_, v)| v <= 0.0) {
        return None;
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(q, _)| q as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let xm = xs.iter().sum::<f64>() / n;
    let ym = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    Some(DecayFit {
        rate: (-slope).exp(),
        log_intercept: ym - slope * xm,
    })
}

/// Which model/ansatz pair a scan sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ScanFamily {
    /// Hardware-efficient ansatz on the transverse-field Ising chain.
    HeaTfim { j: f64, h: f64, boundary: Boundary },
    /// Hamiltonian-variational ansatz on the XXZ chain (three parts).
    HvaXxz {
        j: f64,
        delta: f64,
        boundary: Boundary,
    },
}

impl ScanFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ScanFamily::HeaTfim { .. } => "hea-tfim",
            ScanFamily::HvaXxz { .. } => "hva-xxz",
        }
    }

    fn build(&self, n: usize, layers: usize) -> Result<(CircuitSpec, PauliSum)> {
        match *self {
            ScanFamily::HeaTfim { j, h, boundary } => {
                Ok((build_hea(n, layers)?, build_tfim(n, j, h, boundary)?))
            }
            ScanFamily::HvaXxz { j, delta, boundary } => {
                let model = build_xxz(Geometry::Chain(n), j, delta, boundary)?;
                Ok((build_hva(&model.parts, layers)?, model.full))
            }
        }
    }
}

/// Scan settings. `param_index: None` picks the first parameter of the middle
/// layer, a representative bulk slot.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScanConfig {
    pub layers: usize,
    pub samples: usize,
    pub param_index: Option<usize>,
    /// Divide costs by `Σ|c_I|` so sizes are comparable.
    pub normalize_cost: bool,
    pub seed: u64,
}

/// A gradient-variance / cost-concentration scan over qubit counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarianceScan {
    pub family: String,
    pub layers: usize,
    pub normalized_cost: bool,
    pub seed: u64,
    pub rows: Vec<SizeStats>,
    /// Fitted `p` of `Var[∂C] ∈ O(p^{−n})`; needs ≥ 4 sizes.
    pub grad_decay: Option<DecayFit>,
    /// Fitted `b` of `Var[C] ∈ O(b^{−n})`.
    pub cost_decay: Option<DecayFit>,
}

/// Samples `∂C` at `param_index` and `C` itself over `samples` uniform
/// parameter draws. Seeds derive per draw, so the sampling parallelizes
/// without changing results.
pub fn scan_circuit(
    circuit: &CircuitSpec,
    h: &PauliSum,
    samples: usize,
    param_index: usize,
    seed: u64,
    cost_scale: f64,
) -> Result<SizeStats> {
    if param_index >= circuit.num_params() {
        return Err(Error::InvalidArgument(format!(
            "parameter index {param_index} out of range for {} parameters",
            circuit.num_params()
        )));
    }
    let draws: Vec<Result<(f64, f64)>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_trial_seed(seed, k as u64));
            let params = random_params(circuit.num_params(), &mut rng)?;
            let grad = optimize::gradient(circuit, &params, h)?;
            let cost = optimize::cost(circuit, &params, h)?;
            Ok((grad[param_index], cost / cost_scale))
        })
        .collect();
    let mut grad_samples = Vec::with_capacity(samples);
    let mut cost_samples = Vec::with_capacity(samples);
    for d in draws {
        let (g, c) = d?;
        grad_samples.push(g);
        cost_samples.push(c);
    }
    let (mean_grad, var_grad) = sample_mean_var(&grad_samples);
    let (mean_cost, var_cost) = sample_mean_var(&cost_samples);
    Ok(SizeStats {
        num_qubits: circuit.num_qubits(),
        samples,
        mean_grad,
        var_grad,
        mean_cost,
        var_cost,
        grad_samples,
    })
}

/// Gradient-variance scan over qubit counts (with cost statistics riding
/// along on the same samples).
///
/// Limits: sizes ≤ 10 (runtime) and ≥ 100 samples per size (meaningful
/// variance estimates).
pub fn variance_scan(family: ScanFamily, sizes: &[usize], cfg: &ScanConfig) -> Result<VarianceScan> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("no sizes to scan".into()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n > 10) {
        return Err(Error::SizeLimit {
            n,
            limit: 10,
            what: "variance scans",
        });
    }
    if cfg.samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "variance scans need at least 100 samples per size, got {}",
            cfg.samples
        )));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let (circuit, h) = family.build(n, cfg.layers)?;
        let param_index = match cfg.param_index {
            Some(idx) => idx,
            None => circuit
                .param_at(circuit.layers() / 2, 0)
                .expect("every layer has a first parameter"),
        };
        let cost_scale = if cfg.normalize_cost {
            h.coefficient_norm()
        } else {
            1.0
        };
        rows.push(scan_circuit(
            &circuit,
            &h,
            cfg.samples,
            param_index,
            derive_trial_seed(cfg.seed, n as u64),
            cost_scale,
        )?);
    }
    let grad_points: Vec<(usize, f64)> = rows.iter().map(|r| (r.num_qubits, r.var_grad)).collect();
    let cost_points: Vec<(usize, f64)> = rows.iter().map(|r| (r.num_qubits, r.var_cost)).collect();
    Ok(VarianceScan {
        family: family.name().into(),
        layers: cfg.layers,
        normalized_cost: cfg.normalize_cost,
        seed: cfg.seed,
        grad_decay: fit_decay(&grad_points),
        cost_decay: fit_decay(&cost_points),
        rows,
    })
}

/// Cost-concentration scan: the same sampler with cost normalization forced
/// on, so variances are comparable across sizes.
pub fn cost_concentration_scan(
    family: ScanFamily,
    sizes: &[usize],
    cfg: &ScanConfig,
) -> Result<VarianceScan> {
    let cfg = ScanConfig {
        normalize_cost: true,
        ..*cfg
    };
    variance_scan(family, sizes, &cfg)
}

/// Fidelity diagnostics for a transferred initialization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FidelityReport {
    /// `F1 = |⟨ψ_target | ψ_group⟩|²` — how close the grouped (non-interacting)
    /// ground state is to the true target ground state.
    pub f1: f64,
    /// `F2 = |⟨ψ_group | ψ_init⟩|²` — how well the transferred circuit
    /// reproduces the grouped ground state.
    pub f2: Option<f64>,
    /// `F_total = |⟨ψ_target | ψ_init⟩|²`.
    pub f_total: Option<f64>,
    pub target_ground_energy: f64,
    /// Energy of the grouped state under the grouped Hamiltonian.
    pub grouped_state_energy: f64,
}

/// Computes `F1`, and `F2`/`F_total` when a transferred-initialization state
/// is supplied.
///
/// The grouped state is the tensor power of `base_ground` over
/// `target_h.num_qubits() / base_ground.num_qubits()` copies, the base copy
/// on the lowest qubit indices. The target ground state comes from dense
/// diagonalization, so the target is capped at 12 qubits.
pub fn fidelity_diagnostics(
    base_ground: &StateVector,
    target_h: &PauliSum,
    grouped_h: &PauliSum,
    init_state: Option<&StateVector>,
) -> Result<FidelityReport> {
    let n_target = target_h.num_qubits();
    if grouped_h.num_qubits() != n_target {
        return Err(Error::QubitCountMismatch(
            grouped_h.num_qubits(),
            n_target,
        ));
    }
    let n_base = base_ground.num_qubits();
    if n_target % n_base != 0 || n_target == 0 {
        return Err(Error::InvalidArgument(format!(
            "target size {n_target} is not a multiple of the base size {n_base}"
        )));
    }
    if let Some(s) = init_state {
        if s.num_qubits() != n_target {
            return Err(Error::QubitCountMismatch(s.num_qubits(), n_target));
        }
    }

    let copies = n_target / n_base;
    let mut grouped = base_ground.clone();
    for _ in 1..copies {
        grouped = StateVector::tensor(&grouped, base_ground)?;
    }

    let target_ground = target_h.ground_state()?;
    let target_state = StateVector::from_amplitudes(n_target, target_ground.amplitudes)?;

    Ok(FidelityReport {
        f1: target_state.fidelity(&grouped)?,
        f2: init_state.map(|s| grouped.fidelity(s)).transpose()?,
        f_total: init_state.map(|s| target_state.fidelity(s)).transpose()?,
        target_ground_energy: target_ground.energy,
        grouped_state_energy: grouped.expectation(grouped_h)?,
    })
}

/// Aggregated statistics of one task run.
///
/// `successes == 0` is the explicit empty-summary marker: the iteration
/// statistics are `None` and the trace is empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskSummary {
    /// Total trial number: every trial executed, successful or not.
    pub ttn: usize,
    pub successes: usize,
    /// Mean iterations over successful runs.
    pub mean_iterations: Option<f64>,
    /// Sample standard deviation (divisor N−1) of iterations over successes.
    pub std_iterations: Option<f64>,
    /// Per-iteration mean of `G` over successful runs, aligned by iteration
    /// index; ragged tails average over the runs still alive at that index.
    pub mean_grad_norm_trace: Vec<f64>,
}

/// Summarizes a trial set: TTN, iteration statistics over successes, and the
/// per-iteration mean normalized gradient norm.
pub fn summarize(records: &[TrialRecord]) -> TaskSummary {
    let ttn = records.len();
    let successes: Vec<&TrialRecord> = records.iter().filter(|r| r.success).collect();
    if successes.is_empty() {
        return TaskSummary {
            ttn,
            successes: 0,
            mean_iterations: None,
            std_iterations: None,
            mean_grad_norm_trace: Vec::new(),
        };
    }
    let iters: Vec<f64> = successes.iter().map(|r| r.iterations as f64).collect();
    let (mean, var) = sample_mean_var(&iters);

    let longest = successes
        .iter()
        .map(|r| r.grad_norm_trace.len())
        .max()
        .unwrap_or(0);
    let mut mean_trace = Vec::with_capacity(longest);
    for t in 0..longest {
        let alive: Vec<f64> = successes
            .iter()
            .filter_map(|r| r.grad_norm_trace.get(t).copied())
            .collect();
        mean_trace.push(alive.iter().sum::<f64>() / alive.len() as f64);
    }

    TaskSummary {
        ttn,
        successes: successes.len(),
        mean_iterations: Some(mean),
        std_iterations: Some(var.sqrt()),
        mean_grad_norm_trace: mean_trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{canonicalize, Axis, PauliTerm};
    use approx::assert_abs_diff_eq;

    fn record(success: bool, iterations: usize, trace: Vec<f64>) -> TrialRecord {
        TrialRecord {
            trial_index: 0,
            init: "random".into(),
            seed: 0,
            initial_params: vec![],
            final_params: vec![],
            final_energy: 0.0,
            exact_energy: 0.0,
            iterations,
            converged: true,
            success,
            grad_norm_trace: trace,
            wall_time_s: 0.0,
        }
    }

    #[test]
    fn normalized_grad_norm_basics() {
        assert!(normalized_grad_norm(&[]).is_err());
        assert_abs_diff_eq!(normalized_grad_norm(&[0.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(normalized_grad_norm(&[1.0, -1.0]).unwrap(), 1.0);
    }

    #[test]
    fn normalized_grad_norm_matches_two_pass_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let v = random_params(257, &mut rng).unwrap();
        // Reference: explicit two-pass accumulation.
        let mut acc = 0.0f64;
        for x in &v {
            acc += x * x;
        }
        let reference = acc / v.len() as f64;
        assert_abs_diff_eq!(
            normalized_grad_norm(&v).unwrap(),
            reference,
            epsilon = 1e-14
        );
    }

    #[test]
    fn chebyshev_basics() {
        assert_abs_diff_eq!(chebyshev_bound(0.5, 1.0).unwrap(), 0.5);
        assert_abs_diff_eq!(chebyshev_bound(9.0, 1.0).unwrap(), 1.0);
        assert!(chebyshev_bound(0.5, 0.0).is_err());
        assert!(chebyshev_bound(-0.1, 1.0).is_err());
    }

    #[test]
    fn summarize_pinned_example() {
        let records = vec![
            record(true, 10, vec![1.0]),
            record(true, 20, vec![2.0, 4.0]),
            record(true, 30, vec![3.0, 5.0, 7.0]),
            record(false, 99, vec![9.0]),
        ];
        let s = summarize(&records);
        assert_eq!(s.ttn, 4);
        assert_eq!(s.successes, 3);
        assert_abs_diff_eq!(s.mean_iterations.unwrap(), 20.0);
        // Sample standard deviation with divisor N−1 = 2.
        assert_abs_diff_eq!(s.std_iterations.unwrap(), 10.0);
        // Ragged tails: index 0 over three runs, 1 over two, 2 over one.
        assert_eq!(s.mean_grad_norm_trace.len(), 3);
        assert_abs_diff_eq!(s.mean_grad_norm_trace[0], 2.0);
        assert_abs_diff_eq!(s.mean_grad_norm_trace[1], 4.5);
        assert_abs_diff_eq!(s.mean_grad_norm_trace[2], 7.0);
    }

    #[test]
    fn summarize_empty_marker() {
        let s = summarize(&[record(false, 5, vec![1.0])]);
        assert_eq!(s.ttn, 1);
        assert_eq!(s.successes, 0);
        assert_eq!(s.mean_iterations, None);
        assert_eq!(s.std_iterations, None);
        assert!(s.mean_grad_norm_trace.is_empty());
    }

    #[test]
    fn single_length_traces_average_to_themselves() {
        let records = vec![record(true, 1, vec![0.25])];
        let s = summarize(&records);
        assert_eq!(s.mean_grad_norm_trace, vec![0.25]);
    }

    #[test]
    fn one_qubit_cosine_variances_are_one_half() {
        // Circuit cost C = cos θ; under θ ~ U[−π, π): Var[∂C] = Var[−sin θ]
        // = 1/2 and Var[C] = Var[cos θ] = 1/2.
        let x_half = canonicalize(vec![PauliTerm::single(0.5, 0, Axis::X)], 1).unwrap();
        let circuit = crate::ansatz::build_hva(&[x_half], 1).unwrap();
        let h = canonicalize(vec![PauliTerm::single(1.0, 0, Axis::Z)], 1).unwrap();
        let stats = scan_circuit(&circuit, &h, 4000, 0, 99, 1.0).unwrap();
        assert!(stats.mean_grad.abs() < 3.0 * stats.grad_stderr());
        assert!((stats.var_grad - 0.5).abs() < 0.05, "{}", stats.var_grad);
        assert!((stats.var_cost - 0.5).abs() < 0.05, "{}", stats.var_cost);
    }

    #[test]
    fn constant_hamiltonian_has_zero_cost_variance() {
        let identity = canonicalize(vec![PauliTerm::identity(1.0)], 2).unwrap();
        let circuit = crate::ansatz::build_hea(2, 1).unwrap();
        let stats = scan_circuit(&circuit, &identity, 200, 0, 3, 1.0).unwrap();
        assert_abs_diff_eq!(stats.var_cost, 0.0, epsilon = 1e-20);
        assert_abs_diff_eq!(stats.var_grad, 0.0, epsilon = 1e-20);
    }

    #[test]
    fn decay_fit_recovers_synthetic_rate() {
        let points: Vec<(usize, f64)> = (2..=10)
            .step_by(2)
            .map(|n| (n, 3.0 * 2.0f64.powi(-(n as i32))))
            .collect();
        let fit = fit_decay(&points).unwrap();
        assert_abs_diff_eq!(fit.rate, 2.0, epsilon = 1e-12);
        assert!(fit_decay(&points[..3]).is_none());
    }

    #[test]
    fn variance_scan_guards() {
        let family = ScanFamily::HeaTfim {
            j: 1.0,
            h: 2.0,
            boundary: Boundary::Periodic,
        };
        let cfg = ScanConfig {
            layers: 2,
            samples: 100,
            param_index: None,
            normalize_cost: true,
            seed: 1,
        };
        assert!(matches!(
            variance_scan(family, &[12], &cfg),
            Err(Error::SizeLimit { .. })
        ));
        let too_few = ScanConfig {
            samples: 50,
            ..cfg
        };
        assert!(variance_scan(family, &[2], &too_few).is_err());
    }

    #[test]
    fn small_scan_is_deterministic_and_bounded() {
        let family = ScanFamily::HeaTfim {
            j: 1.0,
            h: 2.0,
            boundary: Boundary::Periodic,
        };
        let cfg = ScanConfig {
            layers: 2,
            samples: 120,
            param_index: None,
            normalize_cost: true,
            seed: 42,
        };
        let a = variance_scan(family, &[2, 3], &cfg).unwrap();
        let b = variance_scan(family, &[2, 3], &cfg).unwrap();
        assert_eq!(a.rows[0].var_grad.to_bits(), b.rows[0].var_grad.to_bits());
        assert_eq!(a.rows[1].mean_cost.to_bits(), b.rows[1].mean_cost.to_bits());

        // Chebyshev bound dominates the empirical exceedance (3σ slack).
        for row in &a.rows {
            for c in [0.05f64, 0.1, 0.2] {
                let bound = chebyshev_bound(row.var_grad, c).unwrap();
                let freq = exceedance_frequency(&row.grad_samples, c);
                let sigma = (freq * (1.0 - freq) / row.samples as f64).sqrt();
                assert!(
                    bound >= freq - 3.0 * sigma,
                    "bound {bound} vs freq {freq} at c={c}"
                );
            }
        }
    }

    #[test]
    fn fidelity_identity_when_target_equals_group() {
        // Two non-interacting transverse-field Ising pairs: unique ground
        // state, so the grouped state matches the target ground state.
        let half = crate::tasks::build_tfim(2, 1.0, 2.0, Boundary::Open).unwrap();
        let grouped = half.embedded(0, 4).unwrap().plus(&half.embedded(2, 4).unwrap()).unwrap();
        let base = half.ground_state().unwrap();
        let base_state = StateVector::from_amplitudes(2, base.amplitudes).unwrap();
        let report = fidelity_diagnostics(&base_state, &grouped, &grouped, None).unwrap();
        assert!((report.f1 - 1.0).abs() < 1e-10, "f1 = {}", report.f1);
        assert_abs_diff_eq!(
            report.grouped_state_energy,
            report.target_ground_energy,
            epsilon = 1e-10
        );
    }

    #[test]
    fn fidelity_f2_is_one_for_the_grouped_circuit_itself() {
        let half = crate::tasks::build_tfim(2, 1.0, 2.0, Boundary::Open).unwrap();
        let grouped = half.embedded(0, 4).unwrap().plus(&half.embedded(2, 4).unwrap()).unwrap();
        let base = half.ground_state().unwrap();
        let base_state = StateVector::from_amplitudes(2, base.amplitudes).unwrap();
        // "Unmodified circuit": the initialization state IS the grouped state.
        let init = StateVector::tensor(&base_state, &base_state).unwrap();
        let report = fidelity_diagnostics(&base_state, &grouped, &grouped, Some(&init)).unwrap();
        assert!((report.f2.unwrap() - 1.0).abs() < 1e-12);
        assert!((report.f_total.unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fidelity_size_mismatch_errors() {
        let half = crate::tasks::build_tfim(2, 1.0, 2.0, Boundary::Open).unwrap();
        let target = crate::tasks::build_tfim(4, 1.0, 2.0, Boundary::Open).unwrap();
        let base = half.ground_state().unwrap();
        let base_state = StateVector::from_amplitudes(2, base.amplitudes).unwrap();
        let wrong_group = crate::tasks::build_tfim(3, 1.0, 2.0, Boundary::Open).unwrap();
        assert!(matches!(
            fidelity_diagnostics(&base_state, &target, &wrong_group, None),
            Err(Error::QubitCountMismatch(3, 4))
        ));
    }
}
