use super::{run_restarts, unit_or, Argmax, OptConfig, OptResult, Restart, Sense};
use crate::bellop::{bell_expectation, bell_operator, local_coefficients, Settings};
use crate::qstate::{eigh, spectrum, PureState, StateView};
use crate::tolerances::ASCENT_SLACK;
use crate::{Error, Result};

const MAX_SETTINGS_QUBITS: usize = 10;

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_SETTINGS_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 2, max: MAX_SETTINGS_QUBITS });
    }
    Ok(())
}

/// One pass of closed-form updates over every qubit. `<B_n>` is linear in
/// each direction, so aligning it with its coefficient vector is optimal.
/// Returns the value after the pass.
pub(crate) fn ascend_once(state: StateView<'_>, st: &mut Settings, start: f64) -> Result<f64> {
    let mut value = start;
    for q in 0..st.n() {
        let lc = local_coefficients(state, st, q)?;
        let pair = &mut st.pairs[q];
        pair.a = unit_or(lc.coeff_a, pair.a);
        pair.a_prime = unit_or(lc.coeff_a_prime, pair.a_prime);
        let next = lc.value(pair.a.vector(), pair.a_prime.vector());
        debug_assert!(next >= value - ASCENT_SLACK * value.abs().max(1.0), "ascent step decreased {value} -> {next}");
        value = next;
    }
    Ok(value)
}

/// Maximises `<B_n>` over measurement settings for a fixed state by
/// coordinate ascent from random directions.
pub fn max_violation_settings<'a>(state: impl Into<StateView<'a>>, cfg: &OptConfig) -> Result<OptResult> {
    let state = state.into();
    check_n(state.n())?;
    let n = state.n();
    run_restarts(
        cfg,
        Sense::Maximize,
        |_, rng| {
            let mut st = Settings::random(n, rng);
            let mut value = bell_expectation(state, &st)?;
            let mut trace = vec![value];
            let mut converged = false;
            for _ in 0..cfg.max_iterations {
                let next = ascend_once(state, &mut st, value)?;
                trace.push(next);
                let gain = next - value;
                value = next;
                if gain < cfg.tol {
                    converged = true;
                    break;
                }
            }
            Ok(Restart { trace, argmax: Argmax::Settings { settings: st }, converged })
        },
        |arg| match arg {
            Argmax::Settings { settings } => bell_expectation(state, settings),
            _ => unreachable!("settings search returns settings"),
        },
    )
}

fn top_pair(st: &Settings) -> Result<(f64, PureState)> {
    let e = eigh(&bell_operator(st)?)?;
    let v = e.top_vector();
    Ok((e.values[0], PureState::normalized(st.n(), v.iter().copied().collect())?))
}

/// Maximises the largest eigenvalue of `B_n` over settings, alternating
/// between the top eigenvector and a settings pass on it.
pub fn max_eigen_settings(n: usize, cfg: &OptConfig) -> Result<OptResult> {
    check_n(n)?;
    run_restarts(
        cfg,
        Sense::Maximize,
        |_, rng| {
            let mut st = Settings::random(n, rng);
            let (mut value, mut psi) = top_pair(&st)?;
            let mut trace = vec![value];
            let mut converged = false;
            for _ in 0..cfg.max_iterations {
                ascend_once(StateView::Pure(&psi), &mut st, value)?;
                let (next, next_psi) = top_pair(&st)?;
                trace.push(next);
                let gain = next - value;
                value = next;
                psi = next_psi;
                if gain < cfg.tol {
                    converged = true;
                    break;
                }
            }
            Ok(Restart { trace, argmax: Argmax::Settings { settings: st }, converged })
        },
        |arg| match arg {
            Argmax::Settings { settings } => Ok(spectrum(&bell_operator(settings)?)?.max()),
            _ => unreachable!("settings search returns settings"),
        },
    )
}
