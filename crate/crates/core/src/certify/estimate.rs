use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellop::{expand_correlators, Settings};
use crate::qstate::{outcome_distribution, sample_indices, MeasurementBasis, StateView};
use crate::{Error, Result};

pub const MIN_SHOTS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermEstimate {
    /// Choice string, `u` for `a` and `p` for `a'` per qubit.
    pub label: String,
    pub coefficient: f64,
    /// Sample mean of the outcome product.
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub shots_per_term: usize,
    pub terms: Vec<TermEstimate>,
}

/// Simulated measurement of `<B_n>`: every correlator in the expansion is
/// measured separately with `shots_per_term` shots. Term `i` samples from
/// stream `child(seed, i)`.
pub fn estimate_e<'a>(
    state: impl Into<StateView<'a>>,
    st: &Settings,
    shots_per_term: usize,
    seed: u64,
) -> Result<Estimate> {
    let state = state.into();
    let n = state.n();
    if st.n() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: st.n() });
    }
    if shots_per_term < MIN_SHOTS {
        return Err(Error::InvalidParameter(format!("need at least {MIN_SHOTS} shots per term, got {shots_per_term}")));
    }
    let poly = expand_correlators(n)?;
    let terms: Vec<_> = poly.terms().collect();
    let terms = terms
        .par_iter()
        .enumerate()
        .map(|(i, &(mask, c))| {
            let basis = MeasurementBasis::new(
                (0..n)
                    .map(|q| if poly.is_primed(mask, q) { st.pairs[q].a_prime } else { st.pairs[q].a })
                    .collect(),
            );
            let probs = outcome_distribution(state, &basis)?;
            let mut rng = crate::rng::child(seed, i as u64);
            let odd = sample_indices(&probs, shots_per_term, &mut rng)
                .into_iter()
                .filter(|idx| idx.count_ones() % 2 == 1)
                .count();
            let shots = shots_per_term as f64;
            let mean = (shots - 2.0 * odd as f64) / shots;
            let sample_var = (1.0 - mean * mean) * shots / (shots - 1.0);
            Ok(TermEstimate {
                label: poly.label(mask),
                coefficient: *c.numer() as f64 / *c.denom() as f64,
                mean,
                stderr: (sample_var / shots).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let value = terms.iter().map(|t| t.coefficient * t.mean).sum();
    let stderr = terms.iter().map(|t| (t.coefficient * t.stderr).powi(2)).sum::<f64>().sqrt();
    Ok(Estimate { value, stderr, shots_per_term, terms })
}
