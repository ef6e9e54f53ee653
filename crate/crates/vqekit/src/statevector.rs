//! Exact statevector simulation.
//!
//! Basis ordering is little-endian: qubit `k` is bit `k` of the basis index,
//! so `|q1 q0⟩ = |1 0⟩` lives at index 1 on two qubits. The `|11⟩` CZ test
//! pins this convention.
//!
//! Rotations follow the generator convention `R(θ) = exp(−i·θ·P/2)`;
//! Pauli-string exponentials apply `exp(−i·θ·c·P)` with `c` the term's
//! coefficient folded into the phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, PauliTerm};

/// Memory guard: `2^24` amplitudes is the largest state this crate will hold.
pub const MAX_QUBITS: usize = 24;

/// Rotation generator axis (the benchmark ansatzes only rotate about X and Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationAxis {
    X,
    Z,
}

/// A normalized `2^n`-amplitude quantum state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits, `1 ≤ n ≤ 24`.
    pub fn init_zero(num_qubits: usize) -> Result<Self> {
        if num_qubits < 1 {
            return Err(Error::InvalidSize {
                n: num_qubits,
                reason: "a state needs at least one qubit",
            });
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::SizeLimit {
                n: num_qubits,
                limit: MAX_QUBITS,
                what: "statevector simulation",
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps existing amplitudes; the vector must have length `2^n` and unit
    /// norm (within 1e-8).
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if num_qubits < 1 || num_qubits > MAX_QUBITS {
            return Err(Error::InvalidSize {
                n: num_qubits,
                reason: "qubit count out of range",
            });
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes, got {}",
                1usize << num_qubits,
                amps.len()
            )));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-8 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, basis_index: usize) -> Complex64 {
        self.amps[basis_index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Applies `exp(−i·angle·P/2)` for `P ∈ {X, Z}` on one qubit.
    pub fn apply_rotation(&mut self, axis: RotationAxis, qubit: usize, angle: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        match axis {
            RotationAxis::X => rx_kernel(&mut self.amps, qubit, angle),
            RotationAxis::Z => rz_kernel(&mut self.amps, qubit, angle),
        }
        Ok(())
    }

    /// Controlled-Z: negates amplitudes of basis states with both bits set.
    /// Symmetric in its arguments.
    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::InvalidPair(a));
        }
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        cz_kernel(&mut self.amps, a, b);
        Ok(())
    }

    /// Applies `exp(−i·angle·c·P)` where `c` and `P` come from the term.
    pub fn apply_pauli_exp(&mut self, term: &PauliTerm, angle: f64) -> Result<()> {
        if let Some(q) = term.max_qubit() {
            self.check_qubit(q)?;
        }
        pauli_exp_kernel(&mut self.amps, term, angle);
        Ok(())
    }

    /// `⟨ψ|H|ψ⟩`. The imaginary residue must stay below 1e-10; anything larger
    /// indicates corrupted state or operator data and is reported as an error.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64> {
        if h.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch(h.num_qubits(), self.num_qubits));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for term in h.terms() {
            acc += term.coefficient() * pauli_bilinear(&self.amps, &self.amps, term);
        }
        if acc.im.abs() >= 1e-10 {
            return Err(Error::ImaginaryResidue(acc.im));
        }
        Ok(acc.re)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::QubitCountMismatch(
                self.num_qubits,
                other.num_qubits,
            ));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, in `[0, 1]`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Tensor product with `low` occupying the low qubit indices and `high`
    /// the high ones: `amps[i] = low[i & mask] · high[i >> n_low]`.
    pub fn tensor(low: &StateVector, high: &StateVector) -> Result<StateVector> {
        let n = low.num_qubits + high.num_qubits;
        if n > MAX_QUBITS {
            return Err(Error::SizeLimit {
                n,
                limit: MAX_QUBITS,
                what: "statevector simulation",
            });
        }
        let mask = (1usize << low.num_qubits) - 1;
        let amps = (0..1usize << n)
            .map(|i| low.amps[i & mask] * high.amps[i >> low.num_qubits])
            .collect();
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub(crate) fn from_raw_unchecked(num_qubits: usize, amps: Vec<Complex64>) -> StateVector {
        StateVector { num_qubits, amps }
    }
}

pub(crate) fn rz_kernel(amps: &mut [Complex64], qubit: usize, angle: f64) {
    let phase0 = Complex64::from_polar(1.0, -angle / 2.0);
    let phase1 = Complex64::from_polar(1.0, angle / 2.0);
    let bit = 1usize << qubit;
    for (idx, amp) in amps.iter_mut().enumerate() {
        *amp *= if idx & bit == 0 { phase0 } else { phase1 };
    }
}

pub(crate) fn rx_kernel(amps: &mut [Complex64], qubit: usize, angle: f64) {
    let c = (angle / 2.0).cos();
    let ms = Complex64::new(0.0, -(angle / 2.0).sin());
    let bit = 1usize << qubit;
    for i0 in 0..amps.len() {
        if i0 & bit == 0 {
            let i1 = i0 | bit;
            let a0 = amps[i0];
            let a1 = amps[i1];
            amps[i0] = c * a0 + ms * a1;
            amps[i1] = ms * a0 + c * a1;
        }
    }
}

pub(crate) fn cz_kernel(amps: &mut [Complex64], a: usize, b: usize) {
    let mask = (1usize << a) | (1usize << b);
    for (idx, amp) in amps.iter_mut().enumerate() {
        if idx & mask == mask {
            *amp = -*amp;
        }
    }
}

/// `exp(−i·φ·P)` with `φ = angle · coefficient`, using the pairing
/// `P|i⟩ = phase(i)·|i ⊕ flip⟩`; cost is one pass over the amplitudes.
pub(crate) fn pauli_exp_kernel(amps: &mut [Complex64], term: &PauliTerm, angle: f64) {
    let phi = angle * term.coefficient();
    let c = phi.cos();
    let ms = Complex64::new(0.0, -phi.sin());
    let flip: usize = term
        .factors()
        .iter()
        .filter(|&&(_, axis)| axis != crate::pauli::Axis::Z)
        .map(|&(q, _)| 1usize << q)
        .sum();
    if flip == 0 {
        // Diagonal string: each amplitude picks up exp(−i·φ·(±1)).
        for (idx, amp) in amps.iter_mut().enumerate() {
            let (_, phase) = term.action_on_basis(idx);
            *amp *= Complex64::new(c, 0.0) + ms * phase;
        }
        return;
    }
    let anchor = flip & flip.wrapping_neg();
    for i in 0..amps.len() {
        if i & anchor == 0 {
            let (j, phase_i) = term.action_on_basis(i);
            let a_i = amps[i];
            let a_j = amps[j];
            // P is Hermitian, so ⟨i|P|j⟩ = conj(⟨j|P|i⟩).
            amps[i] = c * a_i + ms * phase_i.conj() * a_j;
            amps[j] = c * a_j + ms * phase_i * a_i;
        }
    }
}

/// `⟨bra|P|ket⟩` for a unit-coefficient Pauli string.
pub(crate) fn pauli_bilinear(
    bra: &[Complex64],
    ket: &[Complex64],
    term: &PauliTerm,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, &amp) in ket.iter().enumerate() {
        let (target, phase) = term.action_on_basis(idx);
        acc += bra[target].conj() * phase * amp;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{canonicalize, Axis};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        StateVector::from_amplitudes(n, amps).unwrap()
    }

    #[test]
    fn init_zero_has_unit_amplitude_at_origin() {
        for n in 1..=3 {
            let s = StateVector::init_zero(n).unwrap();
            assert_eq!(s.amplitudes().len(), 1 << n);
            assert_abs_diff_eq!(s.amplitude(0).re, 1.0);
            for idx in 1..(1 << n) {
                assert_abs_diff_eq!(s.amplitude(idx).norm(), 0.0);
            }
        }
    }

    #[test]
    fn init_zero_bounds() {
        assert!(StateVector::init_zero(0).is_err());
        assert!(StateVector::init_zero(25).is_err());
    }

    #[test]
    fn rx_pi_maps_zero_to_minus_i_one() {
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply_rotation(RotationAxis::X, 0, std::f64::consts::PI)
            .unwrap();
        assert_abs_diff_eq!(s.amplitude(0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1).re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1).im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn rz_phases_zero_state() {
        let theta = 0.37;
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply_rotation(RotationAxis::Z, 0, theta).unwrap();
        let expected = Complex64::from_polar(1.0, -theta / 2.0);
        assert_abs_diff_eq!((s.amplitude(0) - expected).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1).norm(), 0.0);
    }

    #[test]
    fn cz_negates_one_one_only() {
        // |11⟩ on two qubits is basis index 3.
        let mut s = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        s.apply_cz(0, 1).unwrap();
        assert_abs_diff_eq!(s.amplitude(3).re, -1.0);

        // |01⟩ (qubit 0 set) is untouched.
        let mut s = StateVector::from_amplitudes(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        s.apply_cz(0, 1).unwrap();
        assert_abs_diff_eq!(s.amplitude(1).re, 1.0);
    }

    #[test]
    fn cz_is_symmetric() {
        let s = random_state(3, 11);
        let mut a = s.clone();
        let mut b = s;
        a.apply_cz(0, 2).unwrap();
        b.apply_cz(2, 0).unwrap();
        assert_eq!(a, b);
        assert!(matches!(a.apply_cz(1, 1), Err(Error::InvalidPair(1))));
    }

    #[test]
    fn pauli_exp_of_z_phases_zero_state() {
        let theta = 0.81;
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply_pauli_exp(&PauliTerm::single(1.0, 0, Axis::Z), theta)
            .unwrap();
        let expected = Complex64::from_polar(1.0, -theta);
        assert_abs_diff_eq!((s.amplitude(0) - expected).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn pauli_exp_zero_angle_is_identity() {
        let s = random_state(3, 5);
        let mut t = s.clone();
        t.apply_pauli_exp(
            &PauliTerm::new(0.7, vec![(0, Axis::X), (2, Axis::Y)]).unwrap(),
            0.0,
        )
        .unwrap();
        for (a, b) in s.amplitudes().iter().zip(t.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn expectation_basics() {
        let s = StateVector::init_zero(4).unwrap();
        let z0 = canonicalize(vec![PauliTerm::single(1.0, 0, Axis::Z)], 4).unwrap();
        assert_abs_diff_eq!(s.expectation(&z0).unwrap(), 1.0);

        let s = StateVector::init_zero(1).unwrap();
        let x0 = canonicalize(vec![PauliTerm::single(1.0, 0, Axis::X)], 1).unwrap();
        assert_abs_diff_eq!(s.expectation(&x0).unwrap(), 0.0);
    }

    #[test]
    fn expectation_rejects_mismatched_sizes() {
        let s = StateVector::init_zero(2).unwrap();
        let z0 = canonicalize(vec![PauliTerm::single(1.0, 0, Axis::Z)], 3).unwrap();
        assert!(matches!(
            s.expectation(&z0),
            Err(Error::QubitCountMismatch(3, 2))
        ));
    }

    #[test]
    fn fidelity_basics() {
        let psi = random_state(3, 7);
        assert_abs_diff_eq!(psi.fidelity(&psi).unwrap(), 1.0, epsilon = 1e-12);

        let zero = StateVector::init_zero(1).unwrap();
        let mut one = StateVector::init_zero(1).unwrap();
        one.apply_rotation(RotationAxis::X, 0, std::f64::consts::PI)
            .unwrap();
        assert_abs_diff_eq!(zero.fidelity(&one).unwrap(), 0.0, epsilon = 1e-12);

        // Global phase invariance.
        let mut phased = psi.clone();
        let phase = Complex64::from_polar(1.0, 1.234);
        for a in phased.amps_mut() {
            *a *= phase;
        }
        assert_abs_diff_eq!(psi.fidelity(&phased).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gates_preserve_norm_and_invert() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut s = random_state(4, 3);
        let original = s.clone();
        let mut applied: Vec<(u8, usize, usize, f64)> = Vec::new();
        for _ in 0..1000 {
            let kind = rng.random_range(0..4u8);
            let q = rng.random_range(0..4usize);
            let mut q2 = rng.random_range(0..4usize);
            if q2 == q {
                q2 = (q2 + 1) % 4;
            }
            let angle = rng.random_range(-3.0..3.0f64);
            match kind {
                0 => s.apply_rotation(RotationAxis::X, q, angle).unwrap(),
                1 => s.apply_rotation(RotationAxis::Z, q, angle).unwrap(),
                2 => s.apply_cz(q, q2).unwrap(),
                _ => s
                    .apply_pauli_exp(
                        &PauliTerm::new(0.5, vec![(q.min(q2), Axis::X), (q.max(q2), Axis::Y)])
                            .unwrap(),
                        angle,
                    )
                    .unwrap(),
            }
            applied.push((kind, q, q2, angle));
        }
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        for &(kind, q, q2, angle) in applied.iter().rev() {
            match kind {
                0 => s.apply_rotation(RotationAxis::X, q, -angle).unwrap(),
                1 => s.apply_rotation(RotationAxis::Z, q, -angle).unwrap(),
                2 => s.apply_cz(q, q2).unwrap(),
                _ => s
                    .apply_pauli_exp(
                        &PauliTerm::new(0.5, vec![(q.min(q2), Axis::X), (q.max(q2), Axis::Y)])
                            .unwrap(),
                        -angle,
                    )
                    .unwrap(),
            }
        }
        for (a, b) in s.amplitudes().iter().zip(original.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn tensor_orders_low_then_high() {
        let zero = StateVector::init_zero(1).unwrap();
        let mut one = StateVector::init_zero(1).unwrap();
        one.apply_rotation(RotationAxis::X, 0, std::f64::consts::PI)
            .unwrap();
        // low = |1⟩ on qubit 0, high = |0⟩ on qubit 1 → basis index 1.
        let t = StateVector::tensor(&one, &zero).unwrap();
        assert_abs_diff_eq!(t.amplitude(1).norm(), 1.0, epsilon = 1e-12);
    }
}
