//! Circuit builders for the benchmark ansatz families.
//!
//! Every builder produces a [`CircuitSpec`]: a flat gate list plus a layout
//! table that records, for each parameter index, which layer and position
//! inside the layer it occupies. The layout is part of the public contract —
//! transfer-based initialization addresses parameters positionally through it.
//!
//! Layout positions:
//! - HEA: `position = 3·qubit + slot` with slots `0,1,2` for the Rz,Rx,Rz
//!   triple (in application order); `3n` positions per block.
//! - HVA and its alternating variant: `position = part index m`; `M`
//!   positions per layer.
//! - Tiled (network-transfer target): `layer = copy index`,
//!   `position = parameter index within the base circuit`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};
use crate::statevector::{RotationAxis, StateVector};

/// Which family a circuit belongs to, with the shape data transfers need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnsatzKind {
    Hea,
    Hva { parts: usize },
    HvaVariant { parts: usize },
    /// Shifted copies of a hardware-efficient base circuit (the
    /// network-transfer target shape).
    TiledHea {
        copies: usize,
        base_qubits: usize,
        base_layers: usize,
    },
}

impl AnsatzKind {
    pub fn name(&self) -> &'static str {
        match self {
            AnsatzKind::Hea => "hea",
            AnsatzKind::Hva { .. } => "hva",
            AnsatzKind::HvaVariant { .. } => "hva-variant",
            AnsatzKind::TiledHea { .. } => "tiled-hea",
        }
    }
}

/// One gate in a circuit. Parameterized kinds carry their parameter index;
/// the Pauli exponential also carries the term it exponentiates.
#[derive(Clone, Debug, PartialEq)]
pub enum GateSlot {
    RotX { qubit: usize, param: usize },
    RotZ { qubit: usize, param: usize },
    Cz { a: usize, b: usize },
    PauliExp { term: PauliTerm, param: usize },
}

impl GateSlot {
    pub fn param_index(&self) -> Option<usize> {
        match self {
            GateSlot::RotX { param, .. }
            | GateSlot::RotZ { param, .. }
            | GateSlot::PauliExp { param, .. } => Some(*param),
            GateSlot::Cz { .. } => None,
        }
    }
}

/// Layer/position coordinates of one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSite {
    pub layer: usize,
    pub position: usize,
}

/// An ordered gate sequence realizing `U(θ)`, together with its parameter
/// layout. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    kind: AnsatzKind,
    num_qubits: usize,
    layers: usize,
    gates: Vec<GateSlot>,
    num_params: usize,
    layout: Vec<ParamSite>,
}

impl CircuitSpec {
    pub fn kind(&self) -> AnsatzKind {
        self.kind
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn gates(&self) -> &[GateSlot] {
        &self.gates
    }

    pub fn num_params(&self) -> usize {
        self.num_params
    }

    /// Layout table indexed by parameter.
    pub fn layout(&self) -> &[ParamSite] {
        &self.layout
    }

    pub fn site(&self, param: usize) -> ParamSite {
        self.layout[param]
    }

    /// Reverse lookup into the layout table.
    pub fn param_at(&self, layer: usize, position: usize) -> Option<usize> {
        self.layout
            .iter()
            .position(|s| s.layer == layer && s.position == position)
    }

    /// Positions per layer implied by the ansatz kind.
    pub fn positions_per_layer(&self) -> usize {
        match self.kind {
            AnsatzKind::Hea => 3 * self.num_qubits,
            AnsatzKind::Hva { parts } | AnsatzKind::HvaVariant { parts } => parts,
            AnsatzKind::TiledHea {
                base_qubits,
                base_layers,
                ..
            } => 3 * base_qubits * base_layers,
        }
    }

    /// Applies the gates in sequence order to `initial`.
    pub fn evaluate(&self, params: &[f64], initial: &StateVector) -> Result<StateVector> {
        if params.len() != self.num_params {
            return Err(Error::ParamCountMismatch {
                expected: self.num_params,
                got: params.len(),
            });
        }
        if initial.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch(
                initial.num_qubits(),
                self.num_qubits,
            ));
        }
        let mut state = initial.clone();
        for gate in &self.gates {
            match gate {
                GateSlot::RotX { qubit, param } => {
                    state.apply_rotation(RotationAxis::X, *qubit, params[*param])?
                }
                GateSlot::RotZ { qubit, param } => {
                    state.apply_rotation(RotationAxis::Z, *qubit, params[*param])?
                }
                GateSlot::Cz { a, b } => state.apply_cz(*a, *b)?,
                GateSlot::PauliExp { term, param } => {
                    state.apply_pauli_exp(term, params[*param])?
                }
            }
        }
        Ok(state)
    }

    fn validate(self) -> Result<CircuitSpec> {
        debug_assert_eq!(self.layout.len(), self.num_params);
        let mut used = vec![false; self.num_params];
        for g in &self.gates {
            if let Some(p) = g.param_index() {
                used[p] = true;
            }
        }
        debug_assert!(used.iter().all(|&u| u), "unused parameter index");
        Ok(self)
    }
}

/// Hardware-efficient ansatz: `blocks` repetitions of per-qubit Rz,Rx,Rz
/// triples followed by the CZ ring `CZ(0,1)…CZ(n−2,n−1), CZ(n−1,0)`.
/// `num_params = 3·n·blocks`.
pub fn build_hea(num_qubits: usize, blocks: usize) -> Result<CircuitSpec> {
    if num_qubits < 2 {
        return Err(Error::InvalidSize {
            n: num_qubits,
            reason: "the ring entangler needs at least two qubits",
        });
    }
    if blocks < 1 {
        return Err(Error::InvalidArgument("blocks must be at least 1".into()));
    }
    let mut gates = Vec::new();
    let mut layout = Vec::new();
    let mut param = 0usize;
    for block in 0..blocks {
        for qubit in 0..num_qubits {
            for slot in 0..3usize {
                let gate = if slot == 1 {
                    GateSlot::RotX { qubit, param }
                } else {
                    GateSlot::RotZ { qubit, param }
                };
                gates.push(gate);
                layout.push(ParamSite {
                    layer: block,
                    position: 3 * qubit + slot,
                });
                param += 1;
            }
        }
        for i in 0..num_qubits - 1 {
            gates.push(GateSlot::Cz { a: i, b: i + 1 });
        }
        gates.push(GateSlot::Cz {
            a: num_qubits - 1,
            b: 0,
        });
    }
    CircuitSpec {
        kind: AnsatzKind::Hea,
        num_qubits,
        layers: blocks,
        gates,
        num_params: param,
        layout,
    }
    .validate()
}

fn check_parts(parts: &[PauliSum]) -> Result<usize> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "a Hamiltonian-variational ansatz needs at least one part".into(),
        ));
    }
    let n = parts[0].num_qubits();
    for part in parts {
        if part.num_qubits() != n {
            return Err(Error::QubitCountMismatch(n, part.num_qubits()));
        }
        let terms = part.terms();
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if !terms[i].commutes_with(&terms[j]) {
                    return Err(Error::NonCommutingPart);
                }
            }
        }
    }
    Ok(n)
}

/// Lowers `exp(−i·θ·H_m)` to one `PauliExp` slot per term, all sharing a
/// single parameter. Exact (not a product-formula split) because the part's
/// terms commute, which [`check_parts`] enforces.
fn push_part(gates: &mut Vec<GateSlot>, part: &PauliSum, param: usize) {
    for term in part.terms() {
        gates.push(GateSlot::PauliExp {
            term: term.clone(),
            param,
        });
    }
}

/// Hamiltonian-variational ansatz over commuting parts `H_1…H_M`:
/// layer `p` applies `exp(−i·θ_{p,m}·H_m)` for `m = 1…M`.
/// `num_params = M·layers`.
pub fn build_hva(parts: &[PauliSum], layers: usize) -> Result<CircuitSpec> {
    let num_qubits = check_parts(parts)?;
    if layers < 1 {
        return Err(Error::InvalidArgument("layers must be at least 1".into()));
    }
    let m = parts.len();
    let mut gates = Vec::new();
    let mut layout = Vec::new();
    for layer in 0..layers {
        for (part_idx, part) in parts.iter().enumerate() {
            let param = layer * m + part_idx;
            push_part(&mut gates, part, param);
            layout.push(ParamSite {
                layer,
                position: part_idx,
            });
        }
    }
    CircuitSpec {
        kind: AnsatzKind::Hva { parts: m },
        num_qubits,
        layers,
        gates,
        num_params: m * layers,
        layout,
    }
    .validate()
}

/// Alternating-order variant of the HVA: odd layers (1st, 3rd, …) apply the
/// parts in ascending order, even layers in descending order, so a layer pair
/// with mirrored, negated parameters compiles to the identity. Requires an
/// even layer count.
pub fn build_hva_variant(parts: &[PauliSum], layers: usize) -> Result<CircuitSpec> {
    let num_qubits = check_parts(parts)?;
    if layers == 0 || layers % 2 != 0 {
        return Err(Error::OddLayerCount(layers));
    }
    let m = parts.len();
    let mut gates = Vec::new();
    let mut layout = vec![
        ParamSite {
            layer: 0,
            position: 0
        };
        m * layers
    ];
    for layer in 0..layers {
        let ascending = layer % 2 == 0;
        let order: Vec<usize> = if ascending {
            (0..m).collect()
        } else {
            (0..m).rev().collect()
        };
        for part_idx in order {
            let param = layer * m + part_idx;
            push_part(&mut gates, &parts[part_idx], param);
        }
        for part_idx in 0..m {
            layout[layer * m + part_idx] = ParamSite {
                layer,
                position: part_idx,
            };
        }
    }
    CircuitSpec {
        kind: AnsatzKind::HvaVariant { parts: m },
        num_qubits,
        layers,
        gates,
        num_params: m * layers,
        layout,
    }
    .validate()
}

/// Network-transfer target shape: `target_qubits − n + 1` shifted copies of a
/// hardware-efficient base circuit, copy `i` acting on qubits `i…i+n−1`.
/// Copy `i`'s parameters occupy indices `i·L…(i+1)·L−1` with `L` the base
/// parameter count.
pub fn tile_hea(base: &CircuitSpec, target_qubits: usize) -> Result<CircuitSpec> {
    if base.kind() != AnsatzKind::Hea {
        return Err(Error::UnsupportedAnsatz(
            base.kind().name(),
            "network transfer tiles problem-agnostic (hardware-efficient) circuits only",
        ));
    }
    let n = base.num_qubits();
    if target_qubits < n {
        return Err(Error::InvalidSize {
            n: target_qubits,
            reason: "target must have at least as many qubits as the base",
        });
    }
    let copies = target_qubits - n + 1;
    let base_params = base.num_params();
    let mut gates = Vec::new();
    let mut layout = Vec::new();
    for copy in 0..copies {
        for gate in base.gates() {
            gates.push(match gate {
                GateSlot::RotX { qubit, param } => GateSlot::RotX {
                    qubit: qubit + copy,
                    param: param + copy * base_params,
                },
                GateSlot::RotZ { qubit, param } => GateSlot::RotZ {
                    qubit: qubit + copy,
                    param: param + copy * base_params,
                },
                GateSlot::Cz { a, b } => GateSlot::Cz {
                    a: a + copy,
                    b: b + copy,
                },
                GateSlot::PauliExp { .. } => unreachable!("HEA circuits have no PauliExp slots"),
            });
        }
        for p in 0..base_params {
            layout.push(ParamSite {
                layer: copy,
                position: p,
            });
        }
    }
    CircuitSpec {
        kind: AnsatzKind::TiledHea {
            copies,
            base_qubits: n,
            base_layers: base.layers(),
        },
        num_qubits: target_qubits,
        layers: copies,
        gates,
        num_params: copies * base_params,
        layout,
    }
    .validate()
}
