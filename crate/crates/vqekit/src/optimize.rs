//! Cost evaluation, exact gradients, BFGS minimization, and the seeded
//! trial/success protocol.
//!
//! The primary gradient is a reverse (adjoint-state) sweep, exact on the
//! simulator at `O(G·2^n)` total cost for `G` gates. Two independent checks
//! are available: the parameter-shift rule for circuits whose parameterized
//! slots are all single-qubit rotations, and central finite differences for
//! every slot kind.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{normalized_grad_norm, summarize, TaskSummary};
use crate::ansatz::{CircuitSpec, GateSlot};
use crate::error::{Error, Result};
use crate::init::{
    ble_init, network_params, random_params, structure_transfer, ParamPool, TransferString,
};
use crate::pauli::PauliSum;
use crate::statevector::{
    cz_kernel, pauli_bilinear, pauli_exp_kernel, rx_kernel, rz_kernel, StateVector,
};

/// BFGS and line-search settings. Everything is pinned here so run manifests
/// can record the exact optimizer contract.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub iter_cap: usize,
    /// Terminate when the gradient max-norm drops below this.
    pub grad_tol: f64,
    /// Terminate when the parameter step max-norm drops below this.
    pub step_tol: f64,
    pub wolfe_c1: f64,
    pub wolfe_c2: f64,
    /// Central finite-difference step for the validation gradient.
    pub fd_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            iter_cap: 1000,
            grad_tol: 1e-6,
            step_tol: 1e-10,
            wolfe_c1: 1e-4,
            wolfe_c2: 0.9,
            fd_step: 1e-5,
        }
    }
}

fn check_shapes(circuit: &CircuitSpec, params: &[f64], h: &PauliSum) -> Result<()> {
    if params.len() != circuit.num_params() {
        return Err(Error::ParamCountMismatch {
            expected: circuit.num_params(),
            got: params.len(),
        });
    }
    if h.num_qubits() != circuit.num_qubits() {
        return Err(Error::QubitCountMismatch(
            h.num_qubits(),
            circuit.num_qubits(),
        ));
    }
    Ok(())
}

/// `C(θ) = ⟨0…0| U(θ)† H U(θ) |0…0⟩`.
pub fn cost(circuit: &CircuitSpec, params: &[f64], h: &PauliSum) -> Result<f64> {
    check_shapes(circuit, params, h)?;
    let state = circuit.evaluate(params, &StateVector::init_zero(circuit.num_qubits())?)?;
    state.expectation(h)
}

fn apply_gate_raw(amps: &mut [Complex64], gate: &GateSlot, params: &[f64], sign: f64) {
    match gate {
        GateSlot::RotX { qubit, param } => rx_kernel(amps, *qubit, sign * params[*param]),
        GateSlot::RotZ { qubit, param } => rz_kernel(amps, *qubit, sign * params[*param]),
        GateSlot::Cz { a, b } => cz_kernel(amps, *a, *b),
        GateSlot::PauliExp { term, param } => pauli_exp_kernel(amps, term, sign * params[*param]),
    }
}

/// Exact gradient by a reverse sweep: one forward evaluation, one operator
/// application, then per gate two inverse applications and (for parameterized
/// gates) one generator inner product. Parameters shared by several gates
/// accumulate each gate's contribution.
pub fn gradient(circuit: &CircuitSpec, params: &[f64], h: &PauliSum) -> Result<Vec<f64>> {
    check_shapes(circuit, params, h)?;
    let n = circuit.num_qubits();
    let mut psi = circuit
        .evaluate(params, &StateVector::init_zero(n)?)?
        .amplitudes()
        .to_vec();
    let mut lambda = vec![Complex64::new(0.0, 0.0); psi.len()];
    h.apply_to(&psi, &mut lambda);

    let mut grad = vec![0.0f64; circuit.num_params()];
    for gate in circuit.gates().iter().rev() {
        // With ψ_l the state after gate l and λ_l = U_{l+1}†…U_L† H ψ_L:
        //   rotation exp(−iθV/2):   ∂C = Im ⟨λ_l | V | ψ_l⟩
        //   exponential exp(−iθcP): ∂C = 2c · Im ⟨λ_l | P | ψ_l⟩
        match gate {
            GateSlot::RotX { qubit, param } => {
                let bit = 1usize << qubit;
                let mut acc = Complex64::new(0.0, 0.0);
                for (idx, &amp) in psi.iter().enumerate() {
                    acc += lambda[idx ^ bit].conj() * amp;
                }
                grad[*param] += acc.im;
            }
            GateSlot::RotZ { qubit, param } => {
                let bit = 1usize << qubit;
                let mut acc = Complex64::new(0.0, 0.0);
                for (idx, &amp) in psi.iter().enumerate() {
                    let z = if idx & bit == 0 { amp } else { -amp };
                    acc += lambda[idx].conj() * z;
                }
                grad[*param] += acc.im;
            }
            GateSlot::Cz { .. } => {}
            GateSlot::PauliExp { term, param } => {
                let unit = term.with_coefficient(1.0);
                let acc = pauli_bilinear(&lambda, &psi, &unit);
                grad[*param] += 2.0 * term.coefficient() * acc.im;
            }
        }
        apply_gate_raw(&mut psi, gate, params, -1.0);
        apply_gate_raw(&mut lambda, gate, params, -1.0);
    }
    Ok(grad)
}

/// Parameter-shift gradient, `[C(θ_l + π/2) − C(θ_l − π/2)] / 2` per slot.
/// Valid only when every parameterized slot is a single-qubit rotation used
/// by exactly one gate, as in the hardware-efficient family.
pub fn parameter_shift_gradient(
    circuit: &CircuitSpec,
    params: &[f64],
    h: &PauliSum,
) -> Result<Vec<f64>> {
    check_shapes(circuit, params, h)?;
    let mut uses = vec![0usize; circuit.num_params()];
    for gate in circuit.gates() {
        if let GateSlot::PauliExp { .. } = gate {
            return Err(Error::UnsupportedAnsatz(
                circuit.kind().name(),
                "the two-point shift rule covers rotation slots only",
            ));
        }
        if let Some(p) = gate.param_index() {
            uses[p] += 1;
        }
    }
    if uses.iter().any(|&u| u != 1) {
        return Err(Error::UnsupportedAnsatz(
            circuit.kind().name(),
            "the two-point shift rule needs one gate per parameter",
        ));
    }
    let shift = std::f64::consts::FRAC_PI_2;
    let mut grad = vec![0.0f64; circuit.num_params()];
    let mut shifted = params.to_vec();
    for l in 0..params.len() {
        shifted[l] = params[l] + shift;
        let plus = cost(circuit, &shifted, h)?;
        shifted[l] = params[l] - shift;
        let minus = cost(circuit, &shifted, h)?;
        shifted[l] = params[l];
        grad[l] = (plus - minus) / 2.0;
    }
    Ok(grad)
}

/// Central finite differences with the given step; works for every slot kind.
pub fn finite_difference_gradient(
    circuit: &CircuitSpec,
    params: &[f64],
    h: &PauliSum,
    step: f64,
) -> Result<Vec<f64>> {
    check_shapes(circuit, params, h)?;
    let mut grad = vec![0.0f64; circuit.num_params()];
    let mut shifted = params.to_vec();
    for l in 0..params.len() {
        shifted[l] = params[l] + step;
        let plus = cost(circuit, &shifted, h)?;
        shifted[l] = params[l] - step;
        let minus = cost(circuit, &shifted, h)?;
        shifted[l] = params[l];
        grad[l] = (plus - minus) / (2.0 * step);
    }
    Ok(grad)
}

/// Outcome of one BFGS minimization.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub params: Vec<f64>,
    pub energy: f64,
    /// Accepted quasi-Newton steps.
    pub iterations: usize,
    /// Terminated by a tolerance (not the iteration cap or an abort).
    pub converged: bool,
    /// A non-finite cost or gradient ended the run.
    pub aborted: bool,
    /// Energy at the start point and after each accepted step.
    pub energy_trace: Vec<f64>,
    /// Normalized gradient norm `G = (1/L)Σ(∂_l C)²`, aligned with
    /// `energy_trace`.
    pub grad_norm_trace: Vec<f64>,
}

struct Probe {
    f: f64,
    slope: f64,
    g: DVector<f64>,
}

enum LineSearchOutcome {
    Accepted(Probe, f64),
    NonFinite,
    Failed,
}

/// Strong-Wolfe line search: bracketing with doubling steps, then bisection
/// zoom. `probe(α)` evaluates the objective at `x + α·d`.
fn wolfe_search(
    mut probe: impl FnMut(f64) -> Probe,
    f0: f64,
    slope0: f64,
    c1: f64,
    c2: f64,
) -> LineSearchOutcome {
    const MAX_BRACKET: usize = 25;
    const MAX_ZOOM: usize = 50;
    const ALPHA_MAX: f64 = 1e4;

    let finite = |p: &Probe| p.f.is_finite() && p.g.iter().all(|v| v.is_finite());

    let mut alpha_prev = 0.0f64;
    let mut f_prev = f0;
    let mut alpha = 1.0f64;
    let bracket;
    let mut i = 0;
    loop {
        let p = probe(alpha);
        if !finite(&p) {
            return LineSearchOutcome::NonFinite;
        }
        if p.f > f0 + c1 * alpha * slope0 || (i > 0 && p.f >= f_prev) {
            bracket = (alpha_prev, f_prev, alpha);
            break;
        }
        if p.slope.abs() <= -c2 * slope0 {
            return LineSearchOutcome::Accepted(p, alpha);
        }
        if p.slope >= 0.0 {
            bracket = (alpha, p.f, alpha_prev);
            break;
        }
        alpha_prev = alpha;
        f_prev = p.f;
        alpha = (2.0 * alpha).min(ALPHA_MAX);
        i += 1;
        if alpha == alpha_prev || i >= MAX_BRACKET {
            return LineSearchOutcome::Failed;
        }
    }

    let (mut alpha_lo, mut f_lo, mut alpha_hi) = bracket;
    for _ in 0..MAX_ZOOM {
        let alpha_j = 0.5 * (alpha_lo + alpha_hi);
        let p = probe(alpha_j);
        if !finite(&p) {
            return LineSearchOutcome::NonFinite;
        }
        if p.f > f0 + c1 * alpha_j * slope0 || p.f >= f_lo {
            alpha_hi = alpha_j;
        } else {
            if p.slope.abs() <= -c2 * slope0 {
                return LineSearchOutcome::Accepted(p, alpha_j);
            }
            if p.slope * (alpha_hi - alpha_lo) >= 0.0 {
                alpha_hi = alpha_lo;
            }
            alpha_lo = alpha_j;
            f_lo = p.f;
        }
        if (alpha_hi - alpha_lo).abs() < 1e-16 * alpha_lo.abs().max(1.0) {
            break;
        }
    }
    LineSearchOutcome::Failed
}

/// BFGS with a strong-Wolfe line search over an arbitrary objective.
/// [`bfgs_minimize`] wraps it for circuits; tests drive it directly.
#[doc(hidden)]
pub fn bfgs_engine(
    initial: &[f64],
    mut eval: impl FnMut(&[f64]) -> (f64, Vec<f64>),
    config: &OptimizerConfig,
) -> Minimization {
    let dim = initial.len();
    let mut x = DVector::from_column_slice(initial);
    let (f0, g0) = eval(x.as_slice());
    let mut f = f0;
    let mut g = DVector::from_vec(g0);

    let mut result = Minimization {
        params: initial.to_vec(),
        energy: f,
        iterations: 0,
        converged: false,
        aborted: false,
        energy_trace: Vec::new(),
        grad_norm_trace: Vec::new(),
    };
    if !f.is_finite() || g.iter().any(|v| !v.is_finite()) {
        result.aborted = true;
        return result;
    }
    result.energy_trace.push(f);
    result
        .grad_norm_trace
        .push(normalized_grad_norm(g.as_slice()).expect("non-empty gradient"));

    let mut hinv = DMatrix::<f64>::identity(dim, dim);
    let mut first_update = true;

    loop {
        if g.amax() < config.grad_tol {
            result.converged = true;
            break;
        }
        if result.iterations >= config.iter_cap {
            break;
        }

        let mut direction = -(&hinv * &g);
        let mut slope = direction.dot(&g);
        if slope >= 0.0 {
            // Curvature information went bad; restart from steepest descent.
            hinv = DMatrix::identity(dim, dim);
            first_update = true;
            direction = -g.clone();
            slope = direction.dot(&g);
        }

        let outcome = wolfe_search(
            |alpha| {
                let probe_x = &x + alpha * &direction;
                let (fv, gv) = eval(probe_x.as_slice());
                let g = DVector::from_vec(gv);
                let slope = g.dot(&direction);
                Probe { f: fv, slope, g }
            },
            f,
            slope,
            config.wolfe_c1,
            config.wolfe_c2,
        );
        let (p, alpha) = match outcome {
            LineSearchOutcome::Accepted(p, alpha) => (p, alpha),
            LineSearchOutcome::NonFinite => {
                result.aborted = true;
                break;
            }
            LineSearchOutcome::Failed => break,
        };

        let step = alpha * &direction;
        let step_norm = step.amax();
        let y = &p.g - &g;
        x += &step;
        f = p.f;
        g = p.g;
        result.iterations += 1;
        result.energy_trace.push(f);
        result
            .grad_norm_trace
            .push(normalized_grad_norm(g.as_slice()).expect("non-empty gradient"));

        if step_norm < config.step_tol {
            result.converged = true;
            break;
        }

        let sy = step.dot(&y);
        if sy > 1e-10 * step.norm() * y.norm() {
            if first_update {
                // Scale the initial inverse Hessian (Nocedal & Wright 6.20).
                hinv *= sy / y.dot(&y);
                first_update = false;
            }
            let rho = 1.0 / sy;
            let hy = &hinv * &y;
            let yhy = y.dot(&hy);
            // H ← (I − ρsyᵀ) H (I − ρysᵀ) + ρssᵀ, expanded to rank-two form.
            let shy = &step * hy.transpose();
            hinv -= rho * (&shy + shy.transpose());
            hinv += (rho * rho * yhy + rho) * (&step * step.transpose());
        }
    }

    result.params = x.as_slice().to_vec();
    result.energy = f;
    result
}

/// Minimizes the circuit cost from `initial` with BFGS; exact adjoint
/// gradients drive both the steps and the strong-Wolfe line search.
pub fn bfgs_minimize(
    circuit: &CircuitSpec,
    h: &PauliSum,
    initial: &[f64],
    config: &OptimizerConfig,
) -> Result<Minimization> {
    check_shapes(circuit, initial, h)?;
    let nan = |len: usize| (f64::NAN, vec![f64::NAN; len]);
    Ok(bfgs_engine(
        initial,
        |params| match (cost(circuit, params, h), gradient(circuit, params, h)) {
            (Ok(f), Ok(g)) => (f, g),
            // Shape errors cannot happen past the check above; treat any
            // residual failure as a non-finite abort rather than a crash.
            _ => nan(params.len()),
        },
        config,
    ))
}

/// One optimization trial of the success protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    /// Initialization label: a T/R string, `"BLE"`, or `"random"`.
    pub init: String,
    /// The per-trial RNG seed derived from the master seed.
    pub seed: u64,
    pub initial_params: Vec<f64>,
    pub final_params: Vec<f64>,
    pub final_energy: f64,
    pub exact_energy: f64,
    pub iterations: usize,
    pub converged: bool,
    pub success: bool,
    /// `G = (1/L)Σ(∂_l C)²` per iteration, starting from the initial point.
    pub grad_norm_trace: Vec<f64>,
    /// Wall-clock seconds; a timing, excluded from determinism comparisons.
    pub wall_time_s: f64,
}

impl TrialRecord {
    /// The deterministic projection of the record: everything except the
    /// wall-clock timing.
    pub fn deterministic_eq(&self, other: &TrialRecord) -> bool {
        self.trial_index == other.trial_index
            && self.init == other.init
            && self.seed == other.seed
            && self.initial_params == other.initial_params
            && self.final_params == other.final_params
            && self.final_energy == other.final_energy
            && self.exact_energy == other.exact_energy
            && self.iterations == other.iterations
            && self.converged == other.converged
            && self.success == other.success
            && self.grad_norm_trace == other.grad_norm_trace
    }
}

/// How each trial draws its initial parameters.
#[derive(Clone, Debug)]
pub enum InitMethod<'a> {
    /// Cold start: every parameter uniform on `[−π, π)`.
    Random,
    /// Network transfer onto a tiled target; `T` copies reuse a pool draw.
    NetworkTransfer {
        base: &'a CircuitSpec,
        pool: &'a ParamPool,
        string: TransferString,
    },
    /// Structure transfer into layer blocks; `T` blocks reuse a pool draw.
    StructureTransfer {
        base: &'a CircuitSpec,
        pool: &'a ParamPool,
        string: TransferString,
    },
    /// Block-identity start for the alternating-order variant.
    Ble,
}

impl InitMethod<'_> {
    pub fn label(&self) -> String {
        match self {
            InitMethod::Random => "random".into(),
            InitMethod::NetworkTransfer { string, .. }
            | InitMethod::StructureTransfer { string, .. } => string.to_string(),
            InitMethod::Ble => "BLE".into(),
        }
    }

    /// Validates pool shapes before any trial runs.
    pub fn validate(&self, target: &CircuitSpec) -> Result<()> {
        match self {
            InitMethod::Random | InitMethod::Ble => Ok(()),
            InitMethod::NetworkTransfer { base, pool, .. }
            | InitMethod::StructureTransfer { base, pool, .. } => {
                pool.matches_circuit(base)?;
                if pool.entries.is_empty() {
                    return Err(Error::EmptyPool);
                }
                let _ = target;
                Ok(())
            }
        }
    }

    /// Draws initial parameters for one trial. RNG consumption order is
    /// pinned: one pool draw (when transferring), then the method's random
    /// slots in their documented order.
    fn sample(&self, target: &CircuitSpec, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        match self {
            InitMethod::Random => random_params(target.num_params(), rng),
            InitMethod::NetworkTransfer { base, pool, string } => {
                let entry = pool.draw(rng)?;
                network_params(base, &entry.params, target, string, rng)
            }
            InitMethod::StructureTransfer { base, pool, string } => {
                let entry = pool.draw(rng)?;
                structure_transfer(base, &entry.params, target, string, rng)
            }
            InitMethod::Ble => ble_init(target, rng),
        }
    }
}

/// A target experiment: run seeded trials until `target_successes` trials
/// land within `threshold` of `exact_energy`.
#[derive(Clone, Debug)]
pub struct RunPlan<'a> {
    pub circuit: &'a CircuitSpec,
    pub hamiltonian: &'a PauliSum,
    pub exact_energy: f64,
    pub threshold: f64,
    pub init: InitMethod<'a>,
    pub master_seed: u64,
    pub target_successes: usize,
    /// Hard stop against tasks that never accumulate enough successes.
    pub max_trials: usize,
    /// Worker threads; results are identical for any value.
    pub workers: usize,
    pub config: &'a OptimizerConfig,
}

/// Records plus summary of one task run. `ttn` (total trial number) equals
/// `records.len()`.
#[derive(Clone, Debug)]
pub struct TaskRun {
    pub records: Vec<TrialRecord>,
    pub summary: TaskSummary,
    pub reached_target: bool,
}

/// Mixes a master seed and a trial index into an independent 64-bit seed
/// (splitmix64 finalizer), so any trial is reproducible in isolation.
pub fn derive_trial_seed(master_seed: u64, trial_index: u64) -> u64 {
    let mut z = master_seed ^ trial_index.wrapping_mul(0x9E3779B97F4A7C15);
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn run_one_trial(plan: &RunPlan, trial_index: usize) -> Result<TrialRecord> {
    let started = Instant::now();
    let seed = derive_trial_seed(plan.master_seed, trial_index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial_params = plan.init.sample(plan.circuit, &mut rng)?;
    let m = bfgs_minimize(plan.circuit, plan.hamiltonian, &initial_params, plan.config)?;
    let success = !m.aborted && (m.energy - plan.exact_energy).abs() < plan.threshold;
    Ok(TrialRecord {
        trial_index,
        init: plan.init.label(),
        seed,
        initial_params,
        final_params: m.params,
        final_energy: m.energy,
        exact_energy: plan.exact_energy,
        iterations: m.iterations,
        converged: m.converged,
        success,
        grad_norm_trace: m.grad_norm_trace,
        wall_time_s: started.elapsed().as_secs_f64(),
    })
}

/// Runs seeded trials in index order until the success target is hit (or
/// `max_trials` is exhausted), then summarizes.
///
/// Trials are independent: each derives its own RNG stream from
/// `(master_seed, trial_index)`, so the record set is identical for any
/// worker count. Batches may compute a few trials past the stopping point;
/// those are discarded deterministically.
pub fn run_task(plan: &RunPlan) -> Result<TaskRun> {
    if plan.target_successes == 0 {
        return Err(Error::InvalidArgument(
            "target_successes must be at least 1".into(),
        ));
    }
    plan.init.validate(plan.circuit)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("failed to build thread pool: {e}")))?;

    let batch = 16usize;
    let mut records: Vec<TrialRecord> = Vec::new();
    let mut successes = 0usize;
    let mut next_index = 0usize;
    'outer: while successes < plan.target_successes && next_index < plan.max_trials {
        let hi = (next_index + batch).min(plan.max_trials);
        let chunk: Vec<Result<TrialRecord>> = pool.install(|| {
            (next_index..hi)
                .into_par_iter()
                .map(|i| run_one_trial(plan, i))
                .collect()
        });
        next_index = hi;
        for record in chunk {
            let record = record?;
            let was_success = record.success;
            records.push(record);
            if was_success {
                successes += 1;
                if successes == plan.target_successes {
                    break 'outer;
                }
            }
        }
    }

    let summary = summarize(&records);
    Ok(TaskRun {
        records,
        summary,
        reached_target: successes >= plan.target_successes,
    })
}
