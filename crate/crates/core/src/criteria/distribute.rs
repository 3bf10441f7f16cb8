use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qstate::{measure_sample, MeasurementBasis, PureState, Sign};
use crate::{Error, Result};

const FIDELITY_TOL: f64 = 1e-10;
const PURITY_TOL: f64 = 1e-10;

/// One simulated round of entanglement distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub outcomes: Vec<i8>,
    /// GHZ sign predicted from the parity of `-1` outcomes.
    pub predicted: Sign,
    pub fidelity: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributeReport {
    pub n: usize,
    pub k: usize,
    pub trials: Vec<TrialOutcome>,
    pub min_fidelity: f64,
    /// Every trial left the unmeasured qubits in the predicted GHZ state.
    pub x_basis_pass: bool,
    /// A z-basis measurement of any single qubit leaves a product state.
    pub z_basis_product: bool,
    pub pass: bool,
}

/// Measures the first `k` qubits of `|0..0> + |1..1>` along x in each of
/// `trials` seeded rounds. An even number of `-1` outcomes must leave the
/// other `n - k` qubits in `|0..0> + |1..1>`, an odd number in
/// `|0..0> - |1..1>`.
pub fn distribute_check(n: usize, k: usize, trials: usize, seed: u64) -> Result<DistributeReport> {
    if !(1 <= k && k < n && n <= 10) {
        return Err(Error::InvalidParameter(format!("need 1 <= k < n <= 10, got n = {n}, k = {k}")));
    }
    let ghz = PureState::ghz(n, Sign::Plus)?;
    let measured: Vec<usize> = (0..k).collect();
    let x_basis = MeasurementBasis::x(n);
    let trials = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let rec = measure_sample(&ghz, &x_basis, &measured, crate::rng::derive_seed(seed, t))?;
            let predicted = Sign::from_parity(rec.minus_count() % 2 == 1);
            let post = rec.post.as_ref().expect("k < n leaves qubits unmeasured");
            let fidelity = post.fidelity(&PureState::ghz(n - k, predicted)?);
            Ok(TrialOutcome {
                outcomes: rec.outcomes,
                predicted,
                fidelity,
                pass: (fidelity - 1.0).abs() <= FIDELITY_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let z_basis = MeasurementBasis::z(n);
    let mut z_basis_product = true;
    for q in 0..n {
        let rec = measure_sample(&ghz, &z_basis, &[q], crate::rng::derive_seed(seed ^ 0x7A, q as u64))?;
        let post = rec.post.expect("one qubit measured");
        if post.n() > 1 {
            for r in 0..post.n() {
                z_basis_product &= post.reduced(&[r])?.purity() >= 1.0 - PURITY_TOL;
            }
        }
    }

    let min_fidelity = trials.iter().map(|t| t.fidelity).fold(f64::INFINITY, f64::min);
    let x_basis_pass = trials.iter().all(|t| t.pass);
    Ok(DistributeReport {
        n,
        k,
        trials,
        min_fidelity,
        x_basis_pass,
        z_basis_product,
        pass: x_basis_pass && z_basis_product,
    })
}
