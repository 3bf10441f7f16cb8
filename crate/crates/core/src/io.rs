//! JSON file formats.
//!
//! A state file holds `n` and exactly one of
//!
//! * `"amplitudes"`: `2^n` entries `[re, im]`, qubit 0 most significant;
//! * `"density"`: a `2^n x 2^n` nested list of `[re, im]` entries;
//! * `"symmetric"`: `n + 1` entries `[re, im]`, the coefficients of the
//!   unnormalized Dicke kets `|j,n>`.
//!
//! Amplitudes are normalized on load. Density matrices must already satisfy
//! the usual invariants. A settings file is the JSON form of
//! [`Settings`]: a list of `{"a": [x, y, z], "a_prime": [x, y, z]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bellop::Settings;
use crate::qstate::{CMatrix, StateView};
use crate::symstate::SymVector;
use crate::{Complex64, DensityMatrix, Error, PureState, Result};

/// Amplitude tolerance when reading a pure state as a symmetric one.
pub const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<Vec<Complex64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<Vec<Complex64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
    Symmetric(SymVector, PureState),
}

impl LoadedState {
    pub fn n(&self) -> usize {
        self.view().n()
    }

    pub fn view(&self) -> StateView<'_> {
        match self {
            LoadedState::Pure(p) | LoadedState::Symmetric(_, p) => StateView::Pure(p),
            LoadedState::Mixed(r) => StateView::Mixed(r),
        }
    }

    pub fn pure(&self) -> Result<&PureState> {
        match self {
            LoadedState::Pure(p) | LoadedState::Symmetric(_, p) => Ok(p),
            LoadedState::Mixed(_) => Err(Error::InvalidState("a pure state is required".into())),
        }
    }

    pub fn symmetric(&self) -> Result<SymVector> {
        match self {
            LoadedState::Symmetric(s, _) => Ok(s.clone()),
            _ => SymVector::from_pure(self.pure()?, SYMMETRY_TOL),
        }
    }
}

impl StateFile {
    pub fn from_pure(psi: &PureState) -> Self {
        Self { n: psi.n(), amplitudes: Some(psi.amplitudes().to_vec()), ..Self::default() }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let density = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect();
        Self { n: rho.n(), density: Some(density), ..Self::default() }
    }

    pub fn from_symmetric(s: &SymVector) -> Self {
        Self { n: s.n, symmetric: Some(s.coeff.clone()), ..Self::default() }
    }

    pub fn load(self) -> Result<LoadedState> {
        let n = self.n;
        if n == 0 || n > crate::tolerances::MAX_QUBITS {
            return Err(Error::QubitCount { n, min: 1, max: crate::tolerances::MAX_QUBITS });
        }
        match (self.amplitudes, self.density, self.symmetric) {
            (Some(amp), None, None) => Ok(LoadedState::Pure(PureState::normalized(n, amp)?)),
            (None, Some(rows), None) => {
                let dim = 1usize << n;
                if rows.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, actual: rows.len() });
                }
                if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
                    return Err(Error::DimensionMismatch { expected: dim, actual: bad.len() });
                }
                let mat = CMatrix::from_fn(dim, dim, |r, c| rows[r][c]);
                Ok(LoadedState::Mixed(DensityMatrix::new(n, mat)?))
            }
            (None, None, Some(coeff)) => {
                let s = SymVector::new(n, coeff)?;
                let psi = s.embed()?;
                Ok(LoadedState::Symmetric(s, psi))
            }
            _ => Err(Error::Parse(
                "state file needs exactly one of \"amplitudes\", \"density\", \"symmetric\"".into(),
            )),
        }
    }
}

pub fn parse_state(json: &str) -> Result<LoadedState> {
    serde_json::from_str::<StateFile>(json)?.load()
}

pub fn read_state(path: impl AsRef<Path>) -> Result<LoadedState> {
    parse_state(&std::fs::read_to_string(path)?)
}

pub fn parse_settings(json: &str) -> Result<Settings> {
    Ok(serde_json::from_str(json)?)
}

pub fn read_settings(path: impl AsRef<Path>) -> Result<Settings> {
    parse_settings(&std::fs::read_to_string(path)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Sign;

    #[test]
    fn amplitudes_are_normalized() {
        let s = parse_state(r#"{"n": 2, "amplitudes": [[1,0],[0,0],[0,0],[1,0]]}"#).unwrap();
        let ghz = PureState::ghz(2, Sign::Plus).unwrap();
        assert!((s.pure().unwrap().fidelity(&ghz) - 1.0).abs() < 1e-15);
        assert!(s.symmetric().is_ok());
    }

    #[test]
    fn density_round_trip() {
        let rho = PureState::ghz(2, Sign::Minus).unwrap().to_density();
        let json = serde_json::to_string(&StateFile::from_density(&rho)).unwrap();
        match parse_state(&json).unwrap() {
            LoadedState::Mixed(back) => assert_eq!(back, rho),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symmetric_form() {
        let s = parse_state(r#"{"n": 3, "symmetric": [[1,0],[0,0],[0,0],[-1,0]]}"#).unwrap();
        assert!((s.pure().unwrap().fidelity(&PureState::ghz(3, Sign::Minus).unwrap()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn malformed_files() {
        assert!(parse_state(r#"{"n": 2}"#).is_err());
        assert!(parse_state(r#"{"n": 2, "amplitudes": [[1,0]]}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "amplitudes": [[0,0],[0,0]]}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "density": [[[2,0],[0,0]],[[0,0],[0,0]]]}"#).is_err());
        assert!(parse_state(r#"{"n": 1, "amplitudes": [[1,0],[0,0]], "extra": 1}"#).is_err());
        assert!(parse_state("not json").is_err());
        let mixed = parse_state(r#"{"n": 1, "density": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#).unwrap();
        assert!(mixed.pure().is_err());
    }

    #[test]
    fn settings_files() {
        let st = parse_settings(r#"[{"a":[1,0,0],"a_prime":[0,1,0]},{"a":[0,0,1],"a_prime":[1,0,0]}]"#).unwrap();
        assert_eq!(st.n(), 2);
        assert!(parse_settings(r#"[{"a":[1,1,0],"a_prime":[0,1,0]}]"#).is_err());
    }
}
