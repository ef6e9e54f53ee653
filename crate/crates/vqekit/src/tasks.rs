//! Spin-model builders and the registry of benchmark tasks A–F.
//!
//! Boundary conventions are explicit because the benchmark definitions leave
//! them open: one-dimensional chains default to periodic (matching the CZ
//! ring of the hardware-efficient ansatz), the 2×4 grid defaults to open.
//! Both are overridable through [`TaskConfig`], and run manifests record the
//! choice.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ansatz::{self, CircuitSpec};
use crate::error::{Error, Result};
use crate::pauli::{canonicalize, Axis, PauliSum, PauliTerm};

/// Chemical accuracy, the success threshold on ground-energy error.
pub const CHEMICAL_ACCURACY: f64 = 1.6e-3;

/// Default number of successful runs a task is driven to.
pub const DEFAULT_TARGET_SUCCESSES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        })
    }
}

/// Lattice geometry for the XXZ builder. Grid sites are indexed row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Chain(usize),
    Grid { rows: usize, cols: usize },
}

impl Geometry {
    pub fn num_sites(&self) -> usize {
        match *self {
            Geometry::Chain(n) => n,
            Geometry::Grid { rows, cols } => rows * cols,
        }
    }

    /// Nearest-neighbor bonds as `(low, high)` site pairs, deduplicated.
    fn bonds(&self, boundary: Boundary) -> Result<Vec<(usize, usize)>> {
        if self.num_sites() < 2 {
            return Err(Error::InvalidSize {
                n: self.num_sites(),
                reason: "a spin model needs at least two sites",
            });
        }
        let mut bonds: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut push = |a: usize, b: usize| {
            if a != b {
                bonds.insert((a.min(b), a.max(b)));
            }
        };
        match *self {
            Geometry::Chain(n) => {
                for i in 0..n - 1 {
                    push(i, i + 1);
                }
                if boundary == Boundary::Periodic {
                    push(n - 1, 0);
                }
            }
            Geometry::Grid { rows, cols } => {
                let site = |r: usize, c: usize| r * cols + c;
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            push(site(r, c), site(r, c + 1));
                        }
                        if r + 1 < rows {
                            push(site(r, c), site(r + 1, c));
                        }
                    }
                }
                if boundary == Boundary::Periodic {
                    for r in 0..rows {
                        push(site(r, cols - 1), site(r, 0));
                    }
                    for c in 0..cols {
                        push(site(rows - 1, c), site(0, c));
                    }
                }
            }
        }
        Ok(bonds.into_iter().collect())
    }
}

/// Transverse-field Ising model: `−J Σ Z_i Z_j − h Σ X_i` over nearest
/// neighbors.
pub fn build_tfim(n: usize, j: f64, h: f64, boundary: Boundary) -> Result<PauliSum> {
    let bonds = Geometry::Chain(n).bonds(boundary)?;
    let mut terms = Vec::new();
    for (a, b) in bonds {
        terms.push(PauliTerm::pair(-j, a, b, Axis::Z)?);
    }
    for i in 0..n {
        terms.push(PauliTerm::single(-h, i, Axis::X));
    }
    canonicalize(terms, n)
}

/// An XXZ Hamiltonian together with its three-part split.
#[derive(Clone, Debug)]
pub struct XxzModel {
    pub full: PauliSum,
    /// `[H_X, H_Y, H_Z]`; summing them reproduces `full` termwise.
    pub parts: Vec<PauliSum>,
}

/// Heisenberg XXZ model: per bond `{i,j}`,
/// `−J·X_iX_j` in `H_X`, `−J·Y_iY_j` in `H_Y`, `−J·Δ·Z_iZ_j` in `H_Z`.
pub fn build_xxz(geometry: Geometry, j: f64, delta: f64, boundary: Boundary) -> Result<XxzModel> {
    let n = geometry.num_sites();
    let bonds = geometry.bonds(boundary)?;
    let mut parts = Vec::new();
    for (axis, weight) in [(Axis::X, -j), (Axis::Y, -j), (Axis::Z, -j * delta)] {
        let terms = bonds
            .iter()
            .map(|&(a, b)| PauliTerm::pair(weight, a, b, axis))
            .collect::<Result<Vec<_>>>()?;
        parts.push(canonicalize(terms, n)?);
    }
    let full = parts[0].plus(&parts[1])?.plus(&parts[2])?;
    Ok(XxzModel { full, parts })
}

/// Reads a Hamiltonian text file, returning the operator and the optional
/// `# reference_energy:` recorded by whatever oracle produced the file.
pub fn load_hamiltonian_file(path: impl AsRef<Path>) -> Result<(PauliSum, Option<f64>)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    PauliSum::from_text(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskId {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl TaskId {
    pub const ALL: [TaskId; 6] = [
        TaskId::A,
        TaskId::B,
        TaskId::C,
        TaskId::D,
        TaskId::E,
        TaskId::F,
    ];
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TaskId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TaskId::A),
            "B" => Ok(TaskId::B),
            "C" => Ok(TaskId::C),
            "D" => Ok(TaskId::D),
            "E" => Ok(TaskId::E),
            "F" => Ok(TaskId::F),
            other => Err(Error::UnknownTask(other.into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferMethod {
    Network,
    Structure,
}

/// How to materialize a circuit for one side of a task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Hea { layers: usize },
    Hva { layers: usize },
    HvaVariant { layers: usize },
    /// Network-transfer target: tiled copies of a hardware-efficient base.
    TiledHea { base_qubits: usize, base_layers: usize },
}

/// One side (base or target) of a benchmark task: the Hamiltonian, its part
/// split when the ansatz needs one, and the circuit recipe.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub hamiltonian: PauliSum,
    /// Commuting part split for Hamiltonian-variational recipes.
    pub parts: Option<Vec<PauliSum>>,
    pub recipe: Recipe,
}

impl ProblemSpec {
    pub fn num_qubits(&self) -> usize {
        self.hamiltonian.num_qubits()
    }

    pub fn build_circuit(&self) -> Result<CircuitSpec> {
        let n = self.num_qubits();
        match &self.recipe {
            Recipe::Hea { layers } => ansatz::build_hea(n, *layers),
            Recipe::Hva { layers } => {
                let parts = self.parts.as_ref().ok_or_else(|| {
                    Error::InvalidArgument(format!("{} has no Hamiltonian part split", self.name))
                })?;
                ansatz::build_hva(parts, *layers)
            }
            Recipe::HvaVariant { layers } => {
                let parts = self.parts.as_ref().ok_or_else(|| {
                    Error::InvalidArgument(format!("{} has no Hamiltonian part split", self.name))
                })?;
                ansatz::build_hva_variant(parts, *layers)
            }
            Recipe::TiledHea {
                base_qubits,
                base_layers,
            } => {
                let base = ansatz::build_hea(*base_qubits, *base_layers)?;
                ansatz::tile_hea(&base, n)
            }
        }
    }
}

/// Base and target problems of a ready-to-run task.
#[derive(Clone, Debug)]
pub struct TaskProblems {
    pub base: ProblemSpec,
    pub target: ProblemSpec,
}

#[derive(Clone, Debug)]
pub enum TaskStatus {
    Ready(TaskProblems),
    /// The task is registered but cannot run, e.g. chemistry input files are
    /// missing. Not an error: the registry stays complete.
    MissingData(String),
}

/// A benchmark task: transfer method, allowed initialization strings, and the
/// success protocol parameters.
#[derive(Clone, Debug)]
pub struct TaskSpec {
    pub id: TaskId,
    pub transfer: TransferMethod,
    /// T/R strings from the benchmark tables, plus `"BLE"` where the
    /// block-identity baseline applies.
    pub allowed_init_strings: Vec<String>,
    /// Required length of T/R init strings.
    pub string_len: usize,
    pub success_threshold: f64,
    pub target_successes: usize,
    pub status: TaskStatus,
}

impl TaskSpec {
    pub fn problems(&self) -> Result<&TaskProblems> {
        match &self.status {
            TaskStatus::Ready(p) => Ok(p),
            TaskStatus::MissingData(reason) => Err(Error::TaskUnavailable {
                task: self.id.to_string(),
                reason: reason.clone(),
            }),
        }
    }

    /// Accepts strings from the allowed set, the all-T / all-R strings of the
    /// right length, and `"BLE"` where listed.
    pub fn validate_init_string(&self, s: &str) -> Result<()> {
        let upper = s.to_ascii_uppercase();
        if self.allowed_init_strings.iter().any(|a| a == &upper) {
            return Ok(());
        }
        if upper.len() == self.string_len
            && (upper.chars().all(|c| c == 'T') || upper.chars().all(|c| c == 'R'))
        {
            return Ok(());
        }
        Err(Error::InitStringNotAllowed {
            task: self.id.to_string(),
            string: s.into(),
        })
    }
}

/// Overridable task-registry knobs, loadable from a JSON file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct TaskConfig {
    /// Boundary for one-dimensional chains.
    pub boundary: Boundary,
    /// Boundary for the two-dimensional grid.
    pub grid_boundary: Boundary,
    pub success_threshold: f64,
    pub target_successes: usize,
    /// Directory holding `h2.txt` / `h3.txt` chemistry Hamiltonians.
    pub chem_dir: PathBuf,
    /// Per-task `[base, target]` layer-count overrides, keyed "A"…"F".
    pub layers: BTreeMap<String, [usize; 2]>,
}

impl Default for TaskConfig {
    fn default() -> Self {
        TaskConfig {
            boundary: Boundary::Periodic,
            grid_boundary: Boundary::Open,
            success_threshold: CHEMICAL_ACCURACY,
            target_successes: DEFAULT_TARGET_SUCCESSES,
            chem_dir: PathBuf::from("data/chem"),
            layers: BTreeMap::new(),
        }
    }
}

impl TaskConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    fn task_layers(&self, id: TaskId, default: [usize; 2]) -> [usize; 2] {
        self.layers
            .get(&id.to_string())
            .copied()
            .unwrap_or(default)
    }
}

const TFIM_J: f64 = 1.0;
const TFIM_H: f64 = 2.0;
const XXZ_J: f64 = 1.0;
const XXZ_DELTA: f64 = 2.0;

fn tfim_problem(n: usize, recipe: Recipe, boundary: Boundary) -> Result<ProblemSpec> {
    Ok(ProblemSpec {
        name: format!("tfim-chain-{n}"),
        hamiltonian: build_tfim(n, TFIM_J, TFIM_H, boundary)?,
        parts: None,
        recipe,
    })
}

fn xxz_problem(geometry: Geometry, recipe: Recipe, boundary: Boundary) -> Result<ProblemSpec> {
    let model = build_xxz(geometry, XXZ_J, XXZ_DELTA, boundary)?;
    let name = match geometry {
        Geometry::Chain(n) => format!("xxz-chain-{n}"),
        Geometry::Grid { rows, cols } => format!("xxz-grid-{rows}x{cols}"),
    };
    let wants_parts = matches!(recipe, Recipe::Hva { .. } | Recipe::HvaVariant { .. });
    Ok(ProblemSpec {
        name,
        hamiltonian: model.full,
        parts: wants_parts.then_some(model.parts),
        recipe,
    })
}

fn chemistry_problem(
    dir: &Path,
    file: &str,
    expect_qubits: usize,
    recipe: Recipe,
) -> Result<ProblemSpec> {
    let path = dir.join(file);
    let (hamiltonian, _reference) = load_hamiltonian_file(&path)?;
    if hamiltonian.num_qubits() != expect_qubits {
        return Err(Error::InvalidArgument(format!(
            "{} declares {} qubits, expected {expect_qubits}",
            path.display(),
            hamiltonian.num_qubits()
        )));
    }
    Ok(ProblemSpec {
        name: file.trim_end_matches(".txt").to_string(),
        hamiltonian,
        parts: None,
        recipe,
    })
}

/// The six benchmark tasks with their full hyperparameters.
///
/// | task | base | target | ansatz | transfer | string |
/// |------|------|--------|--------|----------|--------|
/// | A | TFIM chain 4 | TFIM chain 6 | HEA P=4 | network | 3 |
/// | B | TFIM chain 4 | TFIM chain 8 | HEA P=4 | network | 5 |
/// | C | H₂ (4 qubits) | H₃ (6 qubits) | HEA P=4→8 | structure | 2 |
/// | D | XXZ chain 4 | XXZ chain 8 | HVA P=4→8 | structure | 2 |
/// | E | XXZ chain 4 | XXZ grid 2×4 | HEA P=4→8 | structure | 4 |
/// | F | XXZ chain 4 | XXZ chain 8 | HVA variant P=4→8 | structure | 2, plus BLE |
///
/// Task C turns into [`TaskStatus::MissingData`] when the chemistry files are
/// absent; everything else is always ready.
pub fn task_registry(cfg: &TaskConfig) -> Result<Vec<TaskSpec>> {
    let chain = cfg.boundary;
    let grid = cfg.grid_boundary;
    let mut tasks = Vec::new();

    let strings = |list: &[&str]| -> Vec<String> { list.iter().map(|s| s.to_string()).collect() };
    let spec = |id, transfer, allowed: Vec<String>, string_len, status| TaskSpec {
        id,
        transfer,
        allowed_init_strings: allowed,
        string_len,
        success_threshold: cfg.success_threshold,
        target_successes: cfg.target_successes,
        status,
    };

    // A and B: network transfer of a 4-qubit, 4-block HEA onto larger chains.
    let [pa_base, pa_target] = cfg.task_layers(TaskId::A, [4, 4]);
    tasks.push(spec(
        TaskId::A,
        TransferMethod::Network,
        strings(&["TTT", "RRT", "TTR", "RRR"]),
        3,
        TaskStatus::Ready(TaskProblems {
            base: tfim_problem(4, Recipe::Hea { layers: pa_base }, chain)?,
            target: tfim_problem(
                6,
                Recipe::TiledHea {
                    base_qubits: 4,
                    base_layers: pa_target,
                },
                chain,
            )?,
        }),
    ));
    let [pb_base, pb_target] = cfg.task_layers(TaskId::B, [4, 4]);
    tasks.push(spec(
        TaskId::B,
        TransferMethod::Network,
        strings(&["TTTTT", "TRTRT", "RTRTR", "RRRRR"]),
        5,
        TaskStatus::Ready(TaskProblems {
            base: tfim_problem(4, Recipe::Hea { layers: pb_base }, chain)?,
            target: tfim_problem(
                8,
                Recipe::TiledHea {
                    base_qubits: 4,
                    base_layers: pb_target,
                },
                chain,
            )?,
        }),
    ));

    // C: structure transfer from H₂ onto H₃; needs external chemistry files.
    let [pc_base, pc_target] = cfg.task_layers(TaskId::C, [4, 8]);
    let chem_status = match (
        chemistry_problem(&cfg.chem_dir, "h2.txt", 4, Recipe::Hea { layers: pc_base }),
        chemistry_problem(&cfg.chem_dir, "h3.txt", 6, Recipe::Hea { layers: pc_target }),
    ) {
        (Ok(base), Ok(target)) => TaskStatus::Ready(TaskProblems { base, target }),
        (Err(e), _) | (_, Err(e)) => TaskStatus::MissingData(format!(
            "chemistry Hamiltonians not available ({e}); \
             generate them with scripts/chem_oracle.py"
        )),
    };
    tasks.push(spec(
        TaskId::C,
        TransferMethod::Structure,
        strings(&["TT", "TR", "RT", "RR"]),
        2,
        chem_status,
    ));

    // D: structure transfer of an XXZ-chain HVA, 4 layers onto 8.
    let [pd_base, pd_target] = cfg.task_layers(TaskId::D, [4, 8]);
    tasks.push(spec(
        TaskId::D,
        TransferMethod::Structure,
        strings(&["TT", "TR", "RT", "RR"]),
        2,
        TaskStatus::Ready(TaskProblems {
            base: xxz_problem(Geometry::Chain(4), Recipe::Hva { layers: pd_base }, chain)?,
            target: xxz_problem(Geometry::Chain(8), Recipe::Hva { layers: pd_target }, chain)?,
        }),
    ));

    // E: structure transfer of a chain-trained HEA onto the 2×4 grid.
    let [pe_base, pe_target] = cfg.task_layers(TaskId::E, [4, 8]);
    tasks.push(spec(
        TaskId::E,
        TransferMethod::Structure,
        strings(&["TTTT", "TRRT", "RTTR", "RRRR"]),
        4,
        TaskStatus::Ready(TaskProblems {
            base: xxz_problem(Geometry::Chain(4), Recipe::Hea { layers: pe_base }, chain)?,
            target: xxz_problem(
                Geometry::Grid { rows: 2, cols: 4 },
                Recipe::Hea { layers: pe_target },
                grid,
            )?,
        }),
    ));

    // F: alternating-order HVA variant with the BLE baseline.
    let [pf_base, pf_target] = cfg.task_layers(TaskId::F, [4, 8]);
    tasks.push(spec(
        TaskId::F,
        TransferMethod::Structure,
        strings(&["TT", "TR", "RT", "RR", "BLE"]),
        2,
        TaskStatus::Ready(TaskProblems {
            base: xxz_problem(
                Geometry::Chain(4),
                Recipe::HvaVariant { layers: pf_base },
                chain,
            )?,
            target: xxz_problem(
                Geometry::Chain(8),
                Recipe::HvaVariant { layers: pf_target },
                chain,
            )?,
        }),
    ));

    Ok(tasks)
}

/// Looks a task up in a freshly built registry.
pub fn find_task(cfg: &TaskConfig, id: TaskId) -> Result<TaskSpec> {
    Ok(task_registry(cfg)?
        .into_iter()
        .find(|t| t.id == id)
        .expect("registry contains every task id"))
}
