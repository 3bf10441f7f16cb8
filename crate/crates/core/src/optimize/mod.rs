//! Multi-start maximisation of Bell values and the search for symmetric
//! states with maximally mixed reductions.
//!
//! Restarts are independent: restart `r` draws from
//! [`child(seed, r)`](crate::rng::child) and restarts run on the rayon pool.
//! The reduction keeps the best final value and breaks ties by the lowest
//! restart index, so results do not depend on the number of workers.

mod mm;
mod product;
mod settings;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellop::Settings;
use crate::symstate::SymVector;
use crate::tolerances::{BACKTRACK_FACTOR, FD_STEP, MAX_ITERATIONS};
use crate::{Complex64, Error, Result};

pub use mm::search_mm_partial;
pub use product::{effective_operator, product_bound_max};
pub use settings::{max_eigen_settings, max_violation_settings};

/// Agreement required between the reported optimum and a fresh evaluation.
pub const VERIFY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptConfig {
    pub restarts: usize,
    /// Stop a restart once one full round improves the objective by less.
    pub tol: f64,
    pub seed: u64,
    pub max_iterations: usize,
    pub fd_step: f64,
    pub backtrack: f64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            tol: 1e-12,
            seed: crate::rng::DEFAULT_SEED,
            max_iterations: MAX_ITERATIONS,
            fd_step: FD_STEP,
            backtrack: BACKTRACK_FACTOR,
        }
    }
}

impl OptConfig {
    pub fn new(restarts: usize, tol: f64, seed: u64) -> Self {
        Self { restarts, tol, seed, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("at least one restart is required".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max_iterations must be positive".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::InvalidParameter(format!("fd_step must be positive, got {}", self.fd_step)));
        }
        if !(self.backtrack > 0.0 && self.backtrack < 1.0) {
            return Err(Error::InvalidParameter(format!("backtrack must lie in (0, 1), got {}", self.backtrack)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximize => a > b,
            Sense::Minimize => a < b,
        }
    }
}

/// Where the optimum was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Argmax {
    Settings { settings: Settings },
    /// Entangled block on the leading qubits, single-qubit states on the rest.
    ProductState {
        settings: Settings,
        block: Vec<Complex64>,
        product: Vec<[Complex64; 2]>,
    },
    SymState { state: SymVector },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub sense: Sense,
    pub best_value: f64,
    /// The objective evaluated afresh at `argmax`.
    pub verified_value: f64,
    pub argmax: Argmax,
    pub restarts: usize,
    pub best_restart: usize,
    /// Objective after each round, one list per restart. Monotone in the
    /// direction of `sense`.
    pub traces: Vec<Vec<f64>>,
    /// The best restart stopped on its tolerance rather than the iteration cap.
    pub converged: bool,
}

impl OptResult {
    /// Whether `verified_value` agrees with `best_value`.
    pub fn is_sound(&self) -> bool {
        (self.best_value - self.verified_value).abs() <= VERIFY_TOL * self.best_value.abs().max(1.0)
    }
}

pub(crate) struct Restart {
    pub trace: Vec<f64>,
    pub argmax: Argmax,
    pub converged: bool,
}

/// Runs `cfg.restarts` restarts in parallel and reduces deterministically.
pub(crate) fn run_restarts<F, V>(cfg: &OptConfig, sense: Sense, restart: F, verify: V) -> Result<OptResult>
where
    F: Fn(usize, &mut crate::rng::Rng) -> Result<Restart> + Sync,
    V: Fn(&Argmax) -> Result<f64>,
{
    cfg.validate()?;
    let runs = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| restart(r, &mut crate::rng::child(cfg.seed, r as u64)))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if sense.better(final_value(run), final_value(&runs[best])) {
            best = r;
        }
    }
    let best_value = final_value(&runs[best]);
    let converged = runs[best].converged;
    let argmax = runs[best].argmax.clone();
    let verified_value = verify(&argmax)?;
    Ok(OptResult {
        sense,
        best_value,
        verified_value,
        argmax,
        restarts: cfg.restarts,
        best_restart: best,
        traces: runs.into_iter().map(|r| r.trace).collect(),
        converged,
    })
}

fn final_value(r: &Restart) -> f64 {
    *r.trace.last().expect("every trace holds the starting value")
}

fn unit_or(v: [f64; 3], fallback: crate::Direction) -> crate::Direction {
    crate::Direction::normalize(v).unwrap_or(fallback)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(OptConfig::new(1, 0.0, 0).validate().is_err());
        assert!(OptConfig::new(0, 1e-9, 0).validate().is_err());
        assert!(OptConfig { backtrack: 1.0, ..OptConfig::default() }.validate().is_err());
        assert!(OptConfig::default().validate().is_ok());
    }

    #[test]
    fn ties_go_to_lowest_restart() {
        let cfg = OptConfig::new(6, 1e-9, 3);
        let res = run_restarts(
            &cfg,
            Sense::Maximize,
            |r, _| {
                Ok(Restart {
                    trace: vec![0.0, if r % 2 == 1 { 5.0 } else { 1.0 }],
                    argmax: Argmax::Settings { settings: Settings::new(vec![]) },
                    converged: true,
                })
            },
            |_| Ok(5.0),
        )
        .unwrap();
        assert_eq!(res.best_restart, 1);
        assert_eq!(res.best_value, 5.0);
        assert!(res.is_sound());
    }
}
