//! Parameter initialization strategies and the trained-parameter pool.
//!
//! Four ways to produce initial parameters for a target circuit:
//!
//! - [`random_params`] — cold start, each angle uniform on `[−π, π)`;
//! - [`network_transfer`] — tile shifted copies of a trained base circuit,
//!   each copy either reusing the trained parameters (`T`) or drawn fresh
//!   (`R`);
//! - [`structure_transfer`] — keep the target circuit's structure and copy
//!   trained parameters into designated layer blocks;
//! - [`ble_init`] — block-identity start for the alternating-order HVA
//!   variant: consecutive layer pairs cancel to the identity.
//!
//! Randomness always comes through a caller-supplied RNG so trials own
//! disjoint, reproducible streams. Random draws happen in a pinned order
//! (copy order for network transfer, parameter order for structure transfer,
//! layer-pair-then-part order for BLE).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::{tile_hea, AnsatzKind, CircuitSpec};
use crate::error::{Error, Result};

/// Current parameter-pool file format version.
pub const POOL_FORMAT_VERSION: u32 = 1;

/// Per-block transfer marker: reuse trained parameters or draw fresh ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symbol {
    T,
    R,
}

/// A non-empty string over `{T, R}`, one symbol per transfer block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferString(Vec<Symbol>);

impl TransferString {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidArgument(
                "transfer string must be non-empty".into(),
            ));
        }
        Ok(TransferString(symbols))
    }

    pub fn all_t(len: usize) -> Result<Self> {
        TransferString::new(vec![Symbol::T; len])
    }

    pub fn all_r(len: usize) -> Result<Self> {
        TransferString::new(vec![Symbol::R; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn contains_transfer(&self) -> bool {
        self.0.contains(&Symbol::T)
    }
}

impl FromStr for TransferString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'T' => Ok(Symbol::T),
                'R' => Ok(Symbol::R),
                other => Err(Error::InvalidTransferSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        TransferString::new(symbols)
    }
}

impl fmt::Display for TransferString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Symbol::T => "T",
                Symbol::R => "R",
            })?;
        }
        Ok(())
    }
}

/// Cold-start parameters: `len` independent draws, uniform on `[−π, π)`.
pub fn random_params(len: usize, rng: &mut impl Rng) -> Result<Vec<f64>> {
    if len == 0 {
        return Err(Error::InvalidArgument(
            "cannot draw an empty parameter vector".into(),
        ));
    }
    Ok((0..len)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect())
}

/// Builds the network-transfer target circuit (shifted copies of `base`) and
/// its initial parameters: copy `i` gets the trained `base_params` when
/// `string[i] == T`, fresh random parameters otherwise.
///
/// Only hardware-efficient bases are supported; tiling a problem-inspired
/// ansatz would not preserve its physical meaning.
pub fn network_transfer(
    base: &CircuitSpec,
    base_params: &[f64],
    target_qubits: usize,
    string: &TransferString,
    rng: &mut impl Rng,
) -> Result<(CircuitSpec, Vec<f64>)> {
    let target = tile_hea(base, target_qubits)?;
    let params = network_params(base, base_params, &target, string, rng)?;
    Ok((target, params))
}

/// Parameter assembly for an already-tiled target circuit.
pub fn network_params(
    base: &CircuitSpec,
    base_params: &[f64],
    target: &CircuitSpec,
    string: &TransferString,
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    let copies = match target.kind() {
        AnsatzKind::TiledHea { copies, .. } => copies,
        other => {
            return Err(Error::UnsupportedAnsatz(
                other.name(),
                "network parameters need a tiled target circuit",
            ))
        }
    };
    if base_params.len() != base.num_params() {
        return Err(Error::ParamCountMismatch {
            expected: base.num_params(),
            got: base_params.len(),
        });
    }
    if string.len() != copies {
        return Err(Error::TransferStringLength {
            expected: copies,
            got: string.len(),
        });
    }
    let mut params = Vec::with_capacity(target.num_params());
    for &symbol in string.symbols() {
        match symbol {
            Symbol::T => params.extend_from_slice(base_params),
            Symbol::R => params.extend(random_params(base.num_params(), rng)?),
        }
    }
    Ok(params)
}

/// Copies trained base parameters into the target circuit's layout.
///
/// The target's layers split into `string.len()` contiguous blocks of equal
/// depth. Within a `T` block, target layer `p` draws from base layer
/// `p mod P_base` (the base tiles the deeper circuit):
///
/// - hardware-efficient: slots on the first `n_base` qubits copy the base
///   value at the same (qubit, rotation) position; higher qubits are random;
/// - Hamiltonian-variational (plain or alternating variant): the `(p, m)`
///   value copies directly — the part count must match, the qubit count may
///   differ.
///
/// `R` blocks are fully random.
pub fn structure_transfer(
    base: &CircuitSpec,
    base_params: &[f64],
    target: &CircuitSpec,
    string: &TransferString,
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    if base_params.len() != base.num_params() {
        return Err(Error::ParamCountMismatch {
            expected: base.num_params(),
            got: base_params.len(),
        });
    }
    if target.layers() % string.len() != 0 {
        return Err(Error::IndivisibleLayers {
            layers: target.layers(),
            blocks: string.len(),
        });
    }
    enum Mode {
        Hea { base_qubits: usize },
        Hva,
    }
    let mode = match (base.kind(), target.kind()) {
        (AnsatzKind::Hea, AnsatzKind::Hea) => {
            if base.num_qubits() > target.num_qubits() {
                return Err(Error::QubitCountMismatch(
                    base.num_qubits(),
                    target.num_qubits(),
                ));
            }
            Mode::Hea {
                base_qubits: base.num_qubits(),
            }
        }
        (AnsatzKind::Hva { parts: mb }, AnsatzKind::Hva { parts: mt })
        | (AnsatzKind::HvaVariant { parts: mb }, AnsatzKind::HvaVariant { parts: mt }) => {
            if mb != mt {
                return Err(Error::PoolMismatch(format!(
                    "base has {mb} Hamiltonian parts, target has {mt}"
                )));
            }
            Mode::Hva
        }
        (b, t) => {
            return Err(Error::UnsupportedAnsatz(
                b.name(),
                match t {
                    AnsatzKind::Hea => "structure transfer onto a hardware-efficient target",
                    _ => "structure transfer onto this target family",
                },
            ))
        }
    };

    let block_depth = target.layers() / string.len();
    let mut params = vec![0.0f64; target.num_params()];
    for (idx, site) in target.layout().iter().enumerate() {
        let block = site.layer / block_depth;
        let transferred = string.symbols()[block] == Symbol::T;
        let base_layer = site.layer % base.layers();
        let copied = if transferred {
            match mode {
                Mode::Hea { base_qubits } => {
                    let qubit = site.position / 3;
                    if qubit < base_qubits {
                        base.param_at(base_layer, site.position)
                    } else {
                        None
                    }
                }
                Mode::Hva => base.param_at(base_layer, site.position),
            }
        } else {
            None
        };
        params[idx] = match copied {
            Some(base_idx) => base_params[base_idx],
            None => random_params(1, rng)?[0],
        };
    }
    Ok(params)
}

/// Block-identity start for the alternating-order variant: odd layers are
/// uniform random, each following layer mirrors them negated, so every layer
/// pair compiles to the identity and the circuit maps the initial state to
/// itself exactly.
pub fn ble_init(circuit: &CircuitSpec, rng: &mut impl Rng) -> Result<Vec<f64>> {
    let parts = match circuit.kind() {
        AnsatzKind::HvaVariant { parts } => parts,
        other => {
            return Err(Error::UnsupportedAnsatz(
                other.name(),
                "block-identity initialization needs the alternating-order variant",
            ))
        }
    };
    let layers = circuit.layers();
    debug_assert_eq!(layers % 2, 0);
    let mut params = vec![0.0f64; circuit.num_params()];
    for pair_start in (0..layers).step_by(2) {
        for m in 0..parts {
            let value = random_params(1, rng)?[0];
            let odd = circuit
                .param_at(pair_start, m)
                .expect("variant layout covers every (layer, part)");
            let even = circuit
                .param_at(pair_start + 1, m)
                .expect("variant layout covers every (layer, part)");
            params[odd] = value;
            params[even] = -value;
        }
    }
    Ok(params)
}

/// One trained base solution: the seed that produced it, the energy it
/// reached, and the optimum parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoolEntry {
    pub seed: u64,
    pub energy: f64,
    pub params: Vec<f64>,
}

/// A pool of trained base-circuit solutions, persisted as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamPool {
    pub format_version: u32,
    pub task: String,
    pub ansatz: AnsatzKind,
    pub num_qubits: usize,
    pub layers: usize,
    pub num_params: usize,
    pub entries: Vec<PoolEntry>,
}

impl ParamPool {
    pub fn new(task: &str, circuit: &CircuitSpec, entries: Vec<PoolEntry>) -> Result<Self> {
        for e in &entries {
            if e.params.len() != circuit.num_params() {
                return Err(Error::PoolMismatch(format!(
                    "entry has {} parameters, circuit expects {}",
                    e.params.len(),
                    circuit.num_params()
                )));
            }
        }
        Ok(ParamPool {
            format_version: POOL_FORMAT_VERSION,
            task: task.to_string(),
            ansatz: circuit.kind(),
            num_qubits: circuit.num_qubits(),
            layers: circuit.layers(),
            num_params: circuit.num_params(),
            entries,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let pool: ParamPool = serde_json::from_str(&text)?;
        if pool.format_version != POOL_FORMAT_VERSION {
            return Err(Error::PoolMismatch(format!(
                "unsupported pool format version {}",
                pool.format_version
            )));
        }
        for e in &pool.entries {
            if e.params.len() != pool.num_params {
                return Err(Error::PoolMismatch(format!(
                    "entry has {} parameters, pool declares {}",
                    e.params.len(),
                    pool.num_params
                )));
            }
        }
        Ok(pool)
    }

    /// Checks that the pool was trained on this circuit shape.
    pub fn matches_circuit(&self, circuit: &CircuitSpec) -> Result<()> {
        if self.ansatz != circuit.kind()
            || self.num_qubits != circuit.num_qubits()
            || self.layers != circuit.layers()
            || self.num_params != circuit.num_params()
        {
            return Err(Error::PoolMismatch(format!(
                "pool shape ({:?}, n={}, layers={}, L={}) vs circuit ({:?}, n={}, layers={}, L={})",
                self.ansatz,
                self.num_qubits,
                self.layers,
                self.num_params,
                circuit.kind(),
                circuit.num_qubits(),
                circuit.layers(),
                circuit.num_params()
            )));
        }
        Ok(())
    }

    /// Uniformly random entry.
    pub fn draw(&self, rng: &mut impl Rng) -> Result<&PoolEntry> {
        if self.entries.is_empty() {
            return Err(Error::EmptyPool);
        }
        Ok(&self.entries[rng.random_range(0..self.entries.len())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{build_hea, build_hva, build_hva_variant};
    use crate::pauli::{canonicalize, PauliSum, PauliTerm};
    use crate::statevector::StateVector;
    use crate::tasks::{build_xxz, Boundary, Geometry};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xxz_parts(n: usize) -> Vec<PauliSum> {
        build_xxz(Geometry::Chain(n), 1.0, 2.0, Boundary::Periodic)
            .unwrap()
            .parts
    }

    #[test]
    fn random_params_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_params(0, &mut rng).is_err());

        let a = random_params(16, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        let b = random_params(16, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|&x| (-std::f64::consts::PI..std::f64::consts::PI).contains(&x)));
    }

    #[test]
    fn random_params_mean_is_statistically_zero() {
        let n = 100_000usize;
        let sample = random_params(n, &mut ChaCha8Rng::seed_from_u64(1234)).unwrap();
        let mean = sample.iter().sum::<f64>() / n as f64;
        // Uniform on [−π, π): σ = π/√3, so the standard error is π/√(3n).
        let stderr = std::f64::consts::PI / (3.0 * n as f64).sqrt();
        assert!(mean.abs() < 3.0 * stderr, "mean {mean} vs stderr {stderr}");
    }

    #[test]
    fn transfer_string_parse_and_display() {
        let s: TransferString = "TRt".parse().unwrap();
        assert_eq!(s.symbols(), &[Symbol::T, Symbol::R, Symbol::T]);
        assert_eq!(s.to_string(), "TRT");
        assert!(s.contains_transfer());
        assert!("".parse::<TransferString>().is_err());
        assert!(matches!(
            "TXR".parse::<TransferString>(),
            Err(Error::InvalidTransferSymbol('X'))
        ));
    }

    #[test]
    fn network_transfer_degenerate_single_copy() {
        let base = build_hea(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let theta: Vec<f64> = random_params(base.num_params(), &mut rng).unwrap();
        let (target, params) =
            network_transfer(&base, &theta, 4, &"T".parse().unwrap(), &mut rng).unwrap();
        assert_eq!(target.num_params(), base.num_params());
        assert_eq!(params, theta);

        // The degenerate single copy reproduces the base output state exactly.
        let zero = StateVector::init_zero(4).unwrap();
        let a = base.evaluate(&theta, &zero).unwrap();
        let b = target.evaluate(&params, &zero).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn network_transfer_copy_layout() {
        let base = build_hea(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let theta = random_params(base.num_params(), &mut rng).unwrap();
        let (target, params) =
            network_transfer(&base, &theta, 6, &"TRT".parse().unwrap(), &mut rng).unwrap();
        assert_eq!(target.num_params(), 3 * 48);
        assert_eq!(&params[0..48], theta.as_slice());
        assert_eq!(&params[96..144], theta.as_slice());
        assert_ne!(&params[48..96], theta.as_slice());
    }

    #[test]
    fn network_all_r_matches_cold_start_stream() {
        let base = build_hea(4, 4).unwrap();
        let theta = vec![0.0; base.num_params()];
        let mut rng_a = ChaCha8Rng::seed_from_u64(11);
        let (_, params) =
            network_transfer(&base, &theta, 6, &"RRR".parse().unwrap(), &mut rng_a).unwrap();
        let mut rng_b = ChaCha8Rng::seed_from_u64(11);
        let cold = random_params(3 * 48, &mut rng_b).unwrap();
        assert_eq!(params, cold);
    }

    #[test]
    fn network_transfer_rejects_hva_and_bad_lengths() {
        let parts = xxz_parts(4);
        let hva = build_hva(&parts, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            network_transfer(&hva, &vec![0.0; 12], 6, &"TTT".parse().unwrap(), &mut rng),
            Err(Error::UnsupportedAnsatz(..))
        ));

        let base = build_hea(4, 4).unwrap();
        assert!(matches!(
            network_transfer(&base, &vec![0.0; 48], 6, &"TT".parse().unwrap(), &mut rng),
            Err(Error::TransferStringLength {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn structure_transfer_hva_blocks() {
        // Base: 4-layer HVA (12 params). Target: 8 layers, "TR".
        let base = build_hva(&xxz_parts(4), 4).unwrap();
        let target = build_hva(&xxz_parts(8), 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let theta = random_params(base.num_params(), &mut rng).unwrap();
        let params =
            structure_transfer(&base, &theta, &target, &"TR".parse().unwrap(), &mut rng).unwrap();
        for layer in 0..4 {
            for m in 0..3 {
                let t = target.param_at(layer, m).unwrap();
                let b = base.param_at(layer, m).unwrap();
                assert_eq!(params[t], theta[b]);
            }
        }
        for layer in 4..8 {
            for m in 0..3 {
                let t = target.param_at(layer, m).unwrap();
                let b = base.param_at(layer - 4, m).unwrap();
                assert_ne!(params[t], theta[b]);
            }
        }
    }

    #[test]
    fn structure_transfer_all_t_cycles_base() {
        let base = build_hva(&xxz_parts(4), 4).unwrap();
        let target = build_hva(&xxz_parts(4), 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let theta = random_params(base.num_params(), &mut rng).unwrap();
        let params =
            structure_transfer(&base, &theta, &target, &"TT".parse().unwrap(), &mut rng).unwrap();
        let mut expected = theta.clone();
        expected.extend_from_slice(&theta);
        assert_eq!(params, expected);
    }

    #[test]
    fn structure_transfer_all_t_equal_layers_is_verbatim() {
        let base = build_hva(&xxz_parts(4), 4).unwrap();
        let target = build_hva(&xxz_parts(8), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let theta = random_params(base.num_params(), &mut rng).unwrap();
        let params =
            structure_transfer(&base, &theta, &target, &"TT".parse().unwrap(), &mut rng).unwrap();
        assert_eq!(params, theta);
    }

    #[test]
    fn structure_transfer_hea_slots() {
        // 4-qubit 4-layer base onto a 6-qubit 8-layer target with "RT":
        // layers 0–3 fully random; layers 4–7 copy base slots on qubits 0–3
        // (cycling base layers 0–3) and draw qubits 4–5 fresh.
        let base = build_hea(4, 4).unwrap();
        let target = build_hea(6, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let theta = random_params(base.num_params(), &mut rng).unwrap();
        let params =
            structure_transfer(&base, &theta, &target, &"RT".parse().unwrap(), &mut rng).unwrap();
        for param_idx in 0..target.num_params() {
            let site = target.site(param_idx);
            let qubit = site.position / 3;
            if site.layer >= 4 && qubit < 4 {
                let b = base.param_at(site.layer % 4, site.position).unwrap();
                assert_eq!(params[param_idx], theta[b], "site {site:?}");
            }
        }
        // Spot-check that transferred slots differ from untouched randoms.
        let t0 = target.param_at(0, 0).unwrap();
        let b0 = base.param_at(0, 0).unwrap();
        assert_ne!(params[t0], theta[b0]);
    }

    #[test]
    fn structure_transfer_errors() {
        let base = build_hva(&xxz_parts(4), 4).unwrap();
        let target = build_hva(&xxz_parts(8), 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let theta = vec![0.0; base.num_params()];
        assert!(matches!(
            structure_transfer(&base, &theta, &target, &"TTT".parse().unwrap(), &mut rng),
            Err(Error::IndivisibleLayers {
                layers: 8,
                blocks: 3
            })
        ));

        // Part-count mismatch.
        let two_parts = build_hva(&xxz_parts(4)[..2], 4).unwrap();
        assert!(structure_transfer(
            &two_parts,
            &vec![0.0; two_parts.num_params()],
            &target,
            &"TT".parse().unwrap(),
            &mut rng
        )
        .is_err());

        // Family mismatch.
        let hea = build_hea(4, 4).unwrap();
        assert!(matches!(
            structure_transfer(
                &hea,
                &vec![0.0; hea.num_params()],
                &target,
                &"TT".parse().unwrap(),
                &mut rng
            ),
            Err(Error::UnsupportedAnsatz(..))
        ));

        // Base wider than the target.
        let wide = build_hea(6, 8).unwrap();
        let narrow = build_hea(4, 8).unwrap();
        assert!(matches!(
            structure_transfer(
                &wide,
                &vec![0.0; wide.num_params()],
                &narrow,
                &"TT".parse().unwrap(),
                &mut rng
            ),
            Err(Error::QubitCountMismatch(6, 4))
        ));
    }

    #[test]
    fn ble_mirror_structure() {
        let circuit = build_hva_variant(&xxz_parts(4), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let params = ble_init(&circuit, &mut rng).unwrap();
        for pair_start in [0usize, 2] {
            for m in 0..3 {
                let odd = circuit.param_at(pair_start, m).unwrap();
                let even = circuit.param_at(pair_start + 1, m).unwrap();
                assert_abs_diff_eq!(params[even], -params[odd]);
            }
        }
    }

    #[test]
    fn ble_yields_identity_circuit() {
        let circuit = build_hva_variant(&xxz_parts(4), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let params = ble_init(&circuit, &mut rng).unwrap();
        let zero = StateVector::init_zero(4).unwrap();
        let out = circuit.evaluate(&params, &zero).unwrap();
        assert!(out.fidelity(&zero).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn ble_rejects_plain_hva() {
        let circuit = build_hva(&xxz_parts(4), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(matches!(
            ble_init(&circuit, &mut rng),
            Err(Error::UnsupportedAnsatz(..))
        ));
    }

    #[test]
    fn pool_roundtrip_and_draw() {
        let circuit = build_hea(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let entries: Vec<PoolEntry> = (0..4)
            .map(|i| PoolEntry {
                seed: i,
                energy: -8.0 - i as f64 * 1e-5,
                params: random_params(circuit.num_params(), &mut rng).unwrap(),
            })
            .collect();
        let pool = ParamPool::new("A", &circuit, entries).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.json");
        pool.save(&path).unwrap();
        let loaded = ParamPool::load(&path).unwrap();
        assert_eq!(loaded, pool);
        loaded.matches_circuit(&circuit).unwrap();

        // Save → load → save is byte-identical.
        let bytes_a = std::fs::read(&path).unwrap();
        loaded.save(&path).unwrap();
        let bytes_b = std::fs::read(&path).unwrap();
        assert_eq!(bytes_a, bytes_b);

        // Deterministic draw.
        let a = pool.draw(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = pool.draw(&mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pool_draw_is_uniform() {
        let circuit = build_hea(2, 1).unwrap();
        let entries: Vec<PoolEntry> = (0..4)
            .map(|i| PoolEntry {
                seed: i,
                energy: 0.0,
                params: vec![i as f64; circuit.num_params()],
            })
            .collect();
        let pool = ParamPool::new("t", &circuit, entries).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut counts = [0usize; 4];
        let draws = 10_000;
        for _ in 0..draws {
            let e = pool.draw(&mut rng).unwrap();
            counts[e.seed as usize] += 1;
        }
        // Binomial(10⁴, ¼): σ ≈ 43.3. Keep every count within 3σ.
        let expected = draws as f64 / 4.0;
        let sigma = (draws as f64 * 0.25 * 0.75).sqrt();
        for c in counts {
            assert!((c as f64 - expected).abs() < 3.0 * sigma, "counts {counts:?}");
        }
    }

    #[test]
    fn pool_errors() {
        let circuit = build_hea(2, 1).unwrap();
        let pool = ParamPool::new("t", &circuit, vec![]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(pool.draw(&mut rng), Err(Error::EmptyPool)));

        let other = build_hea(3, 1).unwrap();
        assert!(pool.matches_circuit(&other).is_err());

        assert!(ParamPool::new(
            "t",
            &circuit,
            vec![PoolEntry {
                seed: 0,
                energy: 0.0,
                params: vec![0.0; 5],
            }],
        )
        .is_err());

        // Version mismatch on load.
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.json");
        let mut bad = pool.clone();
        bad.format_version = 99;
        bad.save(&path).unwrap();
        assert!(matches!(
            ParamPool::load(&path),
            Err(Error::PoolMismatch(_))
        ));
    }

    #[test]
    fn r_slots_follow_the_cold_start_distribution() {
        // Network transfer with "TR": the R copy's first slot over many seeds
        // should look uniform on [−π, π) (mean ≈ 0, Var ≈ π²/3).
        let base = build_hea(2, 1).unwrap();
        let theta = vec![1.0; base.num_params()];
        let samples = 10_000usize;
        let mut values = Vec::with_capacity(samples);
        for seed in 0..samples as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, params) =
                network_transfer(&base, &theta, 3, &"TR".parse().unwrap(), &mut rng).unwrap();
            values.push(params[base.num_params()]);
        }
        let n = samples as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let sigma = std::f64::consts::PI / 3.0f64.sqrt();
        assert!(mean.abs() < 3.0 * sigma / n.sqrt(), "mean {mean}");
        // Var[uniform] = π²/3; the sample variance concentrates tightly at n = 10⁴.
        assert!((var - sigma * sigma).abs() < 0.15, "var {var}");
        assert!(values.iter().all(|v| v.abs() <= std::f64::consts::PI));
    }
}
