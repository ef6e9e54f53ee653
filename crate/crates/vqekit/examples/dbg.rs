use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vqekit::ansatz::build_hea;
use vqekit::optimize::*;
use vqekit::pauli::{canonicalize, Axis, PauliTerm};
use vqekit::statevector::StateVector;
use vqekit::tasks::{build_tfim, Boundary};
use vqekit::init::random_params;

fn main() {
    let n = 4usize;
    let h = build_tfim(n, 1.0, 2.0, Boundary::Periodic).unwrap();
    let exact = h.ground_energy().unwrap();
    // spin-flip parity operator X⊗X⊗X⊗X
    let flip = canonicalize(
        vec![PauliTerm::new(1.0, (0..n).map(|q| (q, Axis::X)).collect()).unwrap()],
        n,
    )
    .unwrap();
    let circuit = build_hea(n, 4).unwrap();
    let cfg = OptimizerConfig::default();
    for seed in 0..6u64 {
        let p0 = random_params(
            circuit.num_params(),
            &mut ChaCha8Rng::seed_from_u64(derive_trial_seed(7, seed)),
        )
        .unwrap();
        let m = bfgs_minimize(&circuit, &h, &p0, &cfg).unwrap();
        let state = circuit
            .evaluate(&m.params, &StateVector::init_zero(n).unwrap())
            .unwrap();
        let parity = state.expectation(&flip).unwrap();
        println!(
            "seed {seed}: E err {:.3e}, <XXXX> = {:+.6}",
            (m.energy - exact).abs(),
            parity
        );
    }
    // parity of the INITIAL state under the circuit at random params
    for seed in 0..3u64 {
        let p0 = random_params(
            circuit.num_params(),
            &mut ChaCha8Rng::seed_from_u64(seed + 55),
        )
        .unwrap();
        let state = circuit
            .evaluate(&p0, &StateVector::init_zero(n).unwrap())
            .unwrap();
        println!(
            "random params: <XXXX> = {:+.6}",
            state.expectation(&flip).unwrap()
        );
    }
}
