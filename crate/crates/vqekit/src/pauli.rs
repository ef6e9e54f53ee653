//! Real-weighted Pauli-string algebra and exact ground-state solving.
//!
//! A Hamiltonian is a [`PauliSum`]: a canonical list of [`PauliTerm`]s, each a
//! real coefficient times a tensor product of single-qubit Pauli operators.
//! Coefficients are real by construction, which keeps every sum Hermitian.
//!
//! Dense materialization and eigensolving are capped at 12 qubits; they exist
//! to produce exact reference energies and to back tests, not to scale.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Terms whose merged coefficient magnitude falls below this are dropped.
pub const MERGE_DROP_THRESHOLD: f64 = 1e-12;

/// Dense materialization and eigensolving refuse systems larger than this.
pub const DENSE_QUBIT_LIMIT: usize = 12;

/// Largest size handled by direct dense diagonalization; above it (and up to
/// [`DENSE_QUBIT_LIMIT`]) the ground state comes from a Lanczos iteration.
const DIRECT_EIGEN_LIMIT: usize = 10;

/// Single-qubit Pauli axis. The identity is represented by absence: a term
/// stores factors only for qubits on which it acts nontrivially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Option<Axis>> {
        match c {
            'I' => Some(None),
            'X' => Some(Some(Axis::X)),
            'Y' => Some(Some(Axis::Y)),
            'Z' => Some(Some(Axis::Z)),
            _ => None,
        }
    }
}

/// One real-weighted Pauli string, e.g. `0.5 · Z0 X2`.
///
/// Factors are kept sorted by strictly increasing qubit index; an empty factor
/// list is the identity term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    coefficient: f64,
    factors: Vec<(usize, Axis)>,
}

impl PauliTerm {
    /// Builds a term, sorting factors into canonical order. Rejects duplicate
    /// qubit indices (the algebra here has no symbolic products like X·X).
    pub fn new(coefficient: f64, mut factors: Vec<(usize, Axis)>) -> Result<Self> {
        factors.sort_by_key(|&(q, _)| q);
        for pair in factors.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateQubit(pair[0].0));
            }
        }
        Ok(PauliTerm {
            coefficient,
            factors,
        })
    }

    /// The identity term with the given coefficient.
    pub fn identity(coefficient: f64) -> Self {
        PauliTerm {
            coefficient,
            factors: Vec::new(),
        }
    }

    /// Convenience constructor for a single-qubit factor.
    pub fn single(coefficient: f64, qubit: usize, axis: Axis) -> Self {
        PauliTerm {
            coefficient,
            factors: vec![(qubit, axis)],
        }
    }

    /// Convenience constructor for a two-qubit factor.
    pub fn pair(coefficient: f64, a: usize, b: usize, axis: Axis) -> Result<Self> {
        PauliTerm::new(coefficient, vec![(a, axis), (b, axis)])
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn factors(&self) -> &[(usize, Axis)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.last().map(|&(q, _)| q)
    }

    pub(crate) fn with_coefficient(&self, coefficient: f64) -> Self {
        PauliTerm {
            coefficient,
            factors: self.factors.clone(),
        }
    }

    /// Returns the same term acting on qubits shifted up by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        PauliTerm {
            coefficient: self.coefficient,
            factors: self
                .factors
                .iter()
                .map(|&(q, a)| (q + offset, a))
                .collect(),
        }
    }

    /// Action of the unit-coefficient Pauli string on a computational basis
    /// state: `P|idx⟩ = phase · |target⟩`.
    pub(crate) fn action_on_basis(&self, idx: usize) -> (usize, Complex64) {
        let mut target = idx;
        let mut phase = Complex64::new(1.0, 0.0);
        for &(q, axis) in &self.factors {
            let bit = (idx >> q) & 1;
            match axis {
                Axis::X => target ^= 1 << q,
                Axis::Y => {
                    target ^= 1 << q;
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                Axis::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        (target, phase)
    }

    /// Whether two Pauli strings commute: they do iff they differ on an even
    /// number of qubits where both act nontrivially.
    pub fn commutes_with(&self, other: &PauliTerm) -> bool {
        let mut clashes = 0usize;
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.factors.len() && j < other.factors.len() {
            let (qa, aa) = self.factors[i];
            let (qb, ab) = other.factors[j];
            if qa == qb {
                if aa != ab {
                    clashes += 1;
                }
                i += 1;
                j += 1;
            } else if qa < qb {
                i += 1;
            } else {
                j += 1;
            }
        }
        clashes % 2 == 0
    }

    fn word(&self, num_qubits: usize) -> String {
        let mut chars = vec!['I'; num_qubits];
        for &(q, axis) in &self.factors {
            chars[q] = axis.label();
        }
        chars.into_iter().collect()
    }
}

/// A Hermitian operator as a canonical sum of Pauli terms on `num_qubits`
/// qubits. Construct via [`canonicalize`]; instances are immutable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<PauliTerm>,
}

/// Canonical form: validates indices, merges identical factor sequences,
/// drops negligible terms, and sorts terms lexicographically.
pub fn canonicalize(terms: Vec<PauliTerm>, num_qubits: usize) -> Result<PauliSum> {
    if num_qubits < 1 {
        return Err(Error::InvalidSize {
            n: num_qubits,
            reason: "a Pauli sum needs at least one qubit",
        });
    }
    let mut merged: BTreeMap<Vec<(usize, Axis)>, f64> = BTreeMap::new();
    for term in terms {
        if let Some(q) = term.max_qubit() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        *merged.entry(term.factors).or_insert(0.0) += term.coefficient;
    }
    let terms = merged
        .into_iter()
        .filter(|&(_, c)| c.abs() >= MERGE_DROP_THRESHOLD)
        .map(|(factors, coefficient)| PauliTerm {
            coefficient,
            factors,
        })
        .collect();
    Ok(PauliSum { num_qubits, terms })
}

/// Exact lowest eigenpair of a [`PauliSum`].
#[derive(Clone, Debug)]
pub struct GroundState {
    pub energy: f64,
    /// Lowest-eigenvalue eigenvector (2^n amplitudes, arbitrary global phase).
    pub amplitudes: Vec<Complex64>,
}

impl PauliSum {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficient magnitudes; an easy upper bound on the spectral
    /// radius, used for shifts and cost normalization.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// `α·H` with the same canonical structure.
    pub fn scaled(&self, alpha: f64) -> Result<PauliSum> {
        canonicalize(
            self.terms
                .iter()
                .map(|t| t.with_coefficient(alpha * t.coefficient))
                .collect(),
            self.num_qubits,
        )
    }

    /// `H + other`, termwise.
    pub fn plus(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch(
                self.num_qubits,
                other.num_qubits,
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        canonicalize(terms, self.num_qubits)
    }

    /// The same operator embedded in a `new_num_qubits`-qubit register with
    /// its support shifted up by `offset`.
    pub fn embedded(&self, offset: usize, new_num_qubits: usize) -> Result<PauliSum> {
        canonicalize(
            self.terms.iter().map(|t| t.shifted(offset)).collect(),
            new_num_qubits,
        )
    }

    /// `out = H · v` on raw amplitude slices of length `2^n`.
    pub fn apply_to(&self, v: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(v.len(), 1 << self.num_qubits);
        debug_assert_eq!(out.len(), v.len());
        out.fill(Complex64::new(0.0, 0.0));
        for term in &self.terms {
            let c = term.coefficient;
            for (idx, &amp) in v.iter().enumerate() {
                let (target, phase) = term.action_on_basis(idx);
                out[target] += phase * (c * amp);
            }
        }
    }

    /// Dense `2^n × 2^n` matrix of the operator. Capped at
    /// [`DENSE_QUBIT_LIMIT`] qubits.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        if self.num_qubits > DENSE_QUBIT_LIMIT {
            return Err(Error::SizeLimit {
                n: self.num_qubits,
                limit: DENSE_QUBIT_LIMIT,
                what: "dense materialization",
            });
        }
        let dim = 1usize << self.num_qubits;
        let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
        for term in &self.terms {
            let c = Complex64::new(term.coefficient, 0.0);
            for col in 0..dim {
                let (row, phase) = term.action_on_basis(col);
                m[(row, col)] += c * phase;
            }
        }
        Ok(m)
    }

    /// Minimum eigenvalue to 1e-10 absolute accuracy.
    pub fn ground_energy(&self) -> Result<f64> {
        Ok(self.ground_state()?.energy)
    }

    /// Minimum eigenvalue and its eigenvector.
    ///
    /// Dense Hermitian diagonalization up to 10 qubits; a shifted Lanczos
    /// iteration on the matrix-free operator for 11 and 12 qubits.
    pub fn ground_state(&self) -> Result<GroundState> {
        if self.num_qubits > DENSE_QUBIT_LIMIT {
            return Err(Error::SizeLimit {
                n: self.num_qubits,
                limit: DENSE_QUBIT_LIMIT,
                what: "exact eigensolving",
            });
        }
        if self.num_qubits <= DIRECT_EIGEN_LIMIT {
            let m = self.to_dense()?;
            let eig = m.symmetric_eigen();
            let mut best = 0usize;
            for i in 1..eig.eigenvalues.len() {
                if eig.eigenvalues[i] < eig.eigenvalues[best] {
                    best = i;
                }
            }
            Ok(GroundState {
                energy: eig.eigenvalues[best],
                amplitudes: eig.eigenvectors.column(best).iter().copied().collect(),
            })
        } else {
            self.ground_state_lanczos()
        }
    }

    /// Lanczos with full reorthogonalization on `c·I − H` (c = Σ|c_I| + 1, so
    /// the target becomes the dominant eigenvalue).
    fn ground_state_lanczos(&self) -> Result<GroundState> {
        let dim = 1usize << self.num_qubits;
        let shift = self.coefficient_norm() + 1.0;
        let matvec = |v: &[Complex64], out: &mut [Complex64]| {
            self.apply_to(v, out);
            for (o, &x) in out.iter_mut().zip(v.iter()) {
                *o = shift * x - *o;
            }
        };

        // Deterministic pseudo-random start vector.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9E3779B97F4A7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64 - 0.5
        };
        let mut x: Vec<Complex64> = (0..dim).map(|_| Complex64::new(next(), next())).collect();
        normalize(&mut x);

        let max_krylov = 120.min(dim);
        let tol = 1e-11;
        let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
        for _restart in 0..60 {
            let mut basis: Vec<Vec<Complex64>> = vec![x.clone()];
            let mut alphas: Vec<f64> = Vec::new();
            let mut betas: Vec<f64> = Vec::new();
            for j in 0..max_krylov {
                matvec(&basis[j], &mut scratch);
                let alpha = dot(&basis[j], &scratch).re;
                alphas.push(alpha);
                let mut w = scratch.clone();
                axpy(&mut w, -Complex64::new(alpha, 0.0), &basis[j]);
                if j > 0 {
                    axpy(&mut w, -Complex64::new(betas[j - 1], 0.0), &basis[j - 1]);
                }
                // Full reorthogonalization keeps the basis clean at this scale.
                for b in &basis {
                    let overlap = dot(b, &w);
                    axpy(&mut w, -overlap, b);
                }
                let beta = norm(&w);
                if beta < 1e-13 || j + 1 == max_krylov {
                    break;
                }
                betas.push(beta);
                for a in w.iter_mut() {
                    *a /= beta;
                }
                basis.push(w);
            }

            let k = alphas.len();
            let mut tri = DMatrix::zeros(k, k);
            for i in 0..k {
                tri[(i, i)] = alphas[i];
                if i + 1 < k {
                    tri[(i, i + 1)] = betas[i];
                    tri[(i + 1, i)] = betas[i];
                }
            }
            let eig = tri.symmetric_eigen();
            let mut best = 0usize;
            for i in 1..k {
                if eig.eigenvalues[i] > eig.eigenvalues[best] {
                    best = i;
                }
            }
            let theta = eig.eigenvalues[best];
            let y = eig.eigenvectors.column(best);
            let mut ritz = vec![Complex64::new(0.0, 0.0); dim];
            for (j, b) in basis.iter().enumerate() {
                axpy(&mut ritz, Complex64::new(y[j], 0.0), b);
            }
            normalize(&mut ritz);
            matvec(&ritz, &mut scratch);
            axpy(&mut scratch, -Complex64::new(theta, 0.0), &ritz);
            let residual = norm(&scratch);
            x = ritz;
            if residual < tol {
                return Ok(GroundState {
                    energy: shift - theta,
                    amplitudes: x,
                });
            }
        }
        Err(Error::InvalidArgument(
            "Lanczos iteration did not reach the requested accuracy".into(),
        ))
    }

    /// Serializes to the Hamiltonian text format.
    ///
    /// ```text
    /// # qubits: <n>
    /// # reference_energy: <float>     (optional)
    /// <coefficient> <pauli-word>
    /// ```
    ///
    /// The pauli-word has one character per qubit over `{I,X,Y,Z}`; character
    /// `k` is the axis on qubit `k`.
    pub fn to_text(&self, reference_energy: Option<f64>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# qubits: {}", self.num_qubits);
        if let Some(e) = reference_energy {
            let _ = writeln!(out, "# reference_energy: {e}");
        }
        for term in &self.terms {
            let _ = writeln!(out, "{} {}", term.coefficient, term.word(self.num_qubits));
        }
        out
    }

    /// Parses the text format produced by [`PauliSum::to_text`].
    ///
    /// Blank lines and `#` comments are ignored, except for the `# qubits:`
    /// directive (required before any term) and the optional
    /// `# reference_energy:` directive.
    pub fn from_text(text: &str) -> Result<(PauliSum, Option<f64>)> {
        let mut num_qubits: Option<usize> = None;
        let mut reference: Option<f64> = None;
        let mut terms: Vec<PauliTerm> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("qubits:") {
                    let n: usize = v.trim().parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid qubit count {:?}", v.trim()),
                    })?;
                    if n < 1 {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "qubit count must be at least 1".into(),
                        });
                    }
                    num_qubits = Some(n);
                } else if let Some(v) = rest.strip_prefix("reference_energy:") {
                    let e: f64 = v.trim().parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid reference energy {:?}", v.trim()),
                    })?;
                    reference = Some(e);
                }
                continue;
            }
            let n = num_qubits.ok_or_else(|| Error::Parse {
                line: line_no,
                message: "term appears before the `# qubits:` directive".into(),
            })?;
            let mut parts = line.split_whitespace();
            let coeff_str = parts.next().unwrap();
            let word = parts.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected `<coefficient> <pauli-word>`".into(),
            })?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "trailing content after the pauli-word".into(),
                });
            }
            let coefficient: f64 = coeff_str.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid coefficient {coeff_str:?}"),
            })?;
            if !coefficient.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("coefficient {coeff_str:?} is not finite"),
                });
            }
            if word.chars().count() != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "pauli-word {:?} has length {}, expected {n}",
                        word,
                        word.chars().count()
                    ),
                });
            }
            let mut factors = Vec::new();
            for (q, c) in word.chars().enumerate() {
                match Axis::from_char(c) {
                    Some(Some(axis)) => factors.push((q, axis)),
                    Some(None) => {}
                    None => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("invalid pauli character {c:?}"),
                        })
                    }
                }
            }
            terms.push(PauliTerm {
                coefficient,
                factors,
            });
        }
        let n = num_qubits.ok_or_else(|| Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `# qubits:` directive".into(),
        })?;
        Ok((canonicalize(terms, n)?, reference))
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = norm(v);
    for a in v.iter_mut() {
        *a /= n;
    }
}

fn axpy(y: &mut [Complex64], a: Complex64, x: &[Complex64]) {
    for (yi, &xi) in y.iter_mut().zip(x.iter()) {
        *yi += a * xi;
    }
}
