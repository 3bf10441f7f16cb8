use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::operator::bell_expectation;
use crate::qstate::{Direction, PureState, Sign};
use crate::{Error, Result};

/// The two measurement directions `(a, a')` available on one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPair {
    pub a: Direction,
    pub a_prime: Direction,
}

impl MeasurementPair {
    pub fn new(a: Direction, a_prime: Direction) -> Self {
        Self { a, a_prime }
    }
}

/// Measurement settings for every qubit, serialized as a JSON list of
/// `{"a": [x, y, z], "a_prime": [x, y, z]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Settings {
    pub pairs: Vec<MeasurementPair>,
}

impl Settings {
    pub fn new(pairs: Vec<MeasurementPair>) -> Self {
        Self { pairs }
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    /// Independent uniformly random directions.
    pub fn random(n: usize, rng: &mut crate::rng::Rng) -> Self {
        Self {
            pairs: (0..n)
                .map(|_| MeasurementPair::new(random_direction(rng), random_direction(rng)))
                .collect(),
        }
    }

    /// Same settings with qubit `i` of the result taken from `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Settings {
        Settings { pairs: order.iter().map(|&q| self.pairs[q]).collect() }
    }

    /// Settings on a subset of qubits, in the given order.
    pub fn select(&self, qubits: &[usize]) -> Settings {
        self.permuted(qubits)
    }
}

/// Uniform point on the unit sphere.
pub fn random_direction(rng: &mut crate::rng::Rng) -> Direction {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).max(0.0).sqrt();
    Direction::normalize([r * phi.cos(), r * phi.sin(), z]).unwrap_or(Direction::Z)
}

/// GHZ-optimal settings and the perpendicular orientation that was kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GhzSettings {
    pub settings: Settings,
    /// `+1` when `a'_j` is `a_j` rotated by `+pi/2` in the xy-plane.
    pub perpendicular_sign: i8,
    pub expectation: f64,
}

/// Settings under which `|0..0> + |1..1>` reaches the largest Bell value:
/// `a_j` in the xy-plane at angle `(j-1)(-1)^(n+1) pi/(2n)` from the x-axis
/// (qubits counted from 1) and `a'_j` perpendicular to it in that plane. The
/// sense of the perpendicular is not fixed by the recipe, so both are tried
/// and the larger expectation is kept.
pub fn ghz_optimal_settings(n: usize) -> Result<GhzSettings> {
    if !(2..=crate::tolerances::MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 2, max: crate::tolerances::MAX_QUBITS });
    }
    let ghz = PureState::ghz(n, Sign::Plus)?;
    let parity = if n % 2 == 1 { 1.0 } else { -1.0 };
    let mut best: Option<GhzSettings> = None;
    for sign in [1i8, -1] {
        let settings = Settings::new(
            (0..n)
                .map(|j| {
                    let theta = j as f64 * parity * PI / (2 * n) as f64;
                    MeasurementPair::new(
                        Direction::in_xy(theta),
                        Direction::in_xy(theta + sign as f64 * FRAC_PI_2),
                    )
                })
                .collect(),
        );
        let expectation = bell_expectation(&ghz, &settings)?;
        if best.as_ref().is_none_or(|b| expectation > b.expectation) {
            best = Some(GhzSettings { settings, perpendicular_sign: sign, expectation });
        }
    }
    Ok(best.expect("two candidates evaluated"))
}

/// Bell value of `alpha|0..0> + beta|1..1>` (real amplitudes) at the
/// GHZ-optimal settings, as a factor over the classical bound 2, next to the
/// closed form `alpha beta 2^((n-1)/2)` found in the literature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedGhzReport {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub value: f64,
    pub violation_factor: f64,
    pub stated_factor: f64,
}

pub fn weighted_ghz_violation(n: usize, alpha: f64, beta: f64) -> Result<WeightedGhzReport> {
    let psi = PureState::ghz_weighted(n, alpha.into(), beta.into())?;
    let value = bell_expectation(&psi, &ghz_optimal_settings(n)?.settings)?;
    Ok(WeightedGhzReport {
        n,
        alpha,
        beta,
        value,
        violation_factor: value / 2.0,
        stated_factor: alpha * beta * 2f64.powf((n as f64 - 1.0) / 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn angle(d: &Direction) -> f64 {
        let v = d.vector();
        v[1].atan2(v[0])
    }

    #[test]
    fn two_qubit_angles() {
        let s = ghz_optimal_settings(2).unwrap().settings;
        assert!(angle(&s.pairs[0].a).abs() < 1e-15);
        assert!((angle(&s.pairs[1].a) + FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn three_qubit_angles() {
        let s = ghz_optimal_settings(3).unwrap().settings;
        let want = [0.0, PI / 6.0, PI / 3.0];
        for (p, w) in s.pairs.iter().zip(want) {
            assert!((angle(&p.a) - w).abs() < 1e-15);
            assert!(p.a.dot(&p.a_prime).abs() < 1e-15);
            assert!(p.a.vector()[2] == 0.0 && p.a_prime.vector()[2] == 0.0);
        }
    }

    #[test]
    fn settings_json_shape() {
        let s = Settings::new(vec![MeasurementPair::new(Direction::X, Direction::Z)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[{"a":[1.0,0.0,0.0],"a_prime":[0.0,0.0,1.0]}]"#);
        let back: Settings = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Settings>(r#"[{"a":[1,1,0],"a_prime":[0,0,1]}]"#).is_err());
    }

    #[test]
    fn random_directions_are_unit() {
        let mut rng = crate::rng::seeded(1);
        for _ in 0..100 {
            let d = random_direction(&mut rng).vector();
            assert!(((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() - 1.0).abs() < 1e-12);
        }
    }
}
