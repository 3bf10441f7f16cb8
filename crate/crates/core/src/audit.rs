//! The acceptance criteria as runnable checks. Each check returns a
//! [`CriterionReport`]; a failed property is a report with `pass: false`,
//! while `Err` is reserved for a check that could not run.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bellop::{
    bell_expectation, bell_operator, bound_check, fnm_identity_check, ghz_optimal_settings, lhv_max, Settings,
};
use crate::certify::{estimate_e, example_rho3, RHO3_CLAIMED};
use crate::criteria::{
    depolarize, distribute_check, fragility, known_mm_states, mm_partial_residual, mutual_information,
    numeric_fidelity_slope, DEFAULT_FRAGILITY_TOL,
};
use crate::optimize::{max_eigen_settings, product_bound_max, search_mm_partial, OptConfig};
use crate::qstate::{eigh, max_abs, CMatrix, MeasurementBasis, PureState, Sign};
use crate::symstate::{
    bell_basis, embed_split, ghz_y_form, gram_deviation, inner, split, BasisLabel, SymState,
};
use crate::{DensityMatrix, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub run: fn(u64) -> Result<CriterionReport>,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "LHV bound", run: lhv_bound },
        Criterion { id: 2, name: "operator bound", run: operator_bound },
        Criterion { id: 3, name: "GHZ angle recipe", run: ghz_recipe },
        Criterion { id: 4, name: "optimizer recovery", run: optimizer_recovery },
        Criterion { id: 5, name: "independent-qubit bound", run: independent_bound },
        Criterion { id: 6, name: "F decomposition", run: f_decomposition },
        Criterion { id: 7, name: "fragility", run: fragility_check },
        Criterion { id: 8, name: "distribution", run: distribution },
        Criterion { id: 9, name: "mutual information", run: mutual_info },
        Criterion { id: 10, name: "maximally mixed reductions", run: mm_states },
        Criterion { id: 11, name: "symmetric basis algebra", run: symmetric_algebra },
        Criterion { id: 12, name: "GHZ orthogonal basis", run: ghz_basis },
        Criterion { id: 13, name: "three-qubit mixed example", run: rho3_example },
        Criterion { id: 14, name: "shot-noise pipeline", run: shot_noise },
    ]
}

pub fn run_all(seed: u64) -> Result<Vec<CriterionReport>> {
    criteria().iter().map(|c| (c.run)(seed)).collect()
}

fn report(id: u8, pass: bool, detail: String) -> Result<CriterionReport> {
    let name = criteria()
        .into_iter()
        .find(|c| c.id == id)
        .map(|c| c.name.to_string())
        .unwrap_or_default();
    Ok(CriterionReport { id, name, pass, detail })
}

fn quantum_max(n: usize) -> f64 {
    2f64.powf((n as f64 + 1.0) / 2.0)
}

fn ghz(n: usize) -> Result<PureState> {
    PureState::ghz(n, Sign::Plus)
}

pub fn lhv_bound(_seed: u64) -> Result<CriterionReport> {
    let mut bad = Vec::new();
    for n in 2..=10 {
        let m = lhv_max(n)?;
        if m != 2.into() {
            bad.push(format!("n={n}: {m}"));
        }
    }
    report(1, bad.is_empty(), format!("max F_n over all assignments, n=2..10; mismatches: {bad:?}"))
}

pub fn operator_bound(seed: u64) -> Result<CriterionReport> {
    let mut worst_ratio: f64 = 0.0;
    let mut violations = 0;
    for n in 2..=8 {
        let mut rng = crate::rng::child(seed, n as u64);
        for _ in 0..100 {
            let c = bound_check(&Settings::random(n, &mut rng))?;
            worst_ratio = worst_ratio.max(c.lambda_max_sq / c.bound);
            violations += usize::from(!c.pass);
        }
    }
    let mut worst_dev: f64 = 0.0;
    for n in 2..=10 {
        let st = ghz_optimal_settings(n)?.settings;
        let top = eigh(&bell_operator(&st)?)?.values[0];
        worst_dev = worst_dev.max((top - quantum_max(n)).abs());
    }
    report(
        2,
        violations == 0 && worst_dev <= 1e-9,
        format!(
            "{violations} bound violations in 700 random settings (max lambda^2 / 2^(n+1) = {worst_ratio:.12}); \
             GHZ settings top eigenvalue deviation {worst_dev:.3e}"
        ),
    )
}

pub fn ghz_recipe(_seed: u64) -> Result<CriterionReport> {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let st = ghz_optimal_settings(n)?.settings;
        worst = worst.max((bell_expectation(&ghz(n)?, &st)? - quantum_max(n)).abs());
    }
    report(3, worst <= 1e-9, format!("max |<B_n> - 2^((n+1)/2)| over n=2..10: {worst:.3e}"))
}

pub fn optimizer_recovery(seed: u64) -> Result<CriterionReport> {
    let mut worst: f64 = 0.0;
    let mut unsound = 0;
    for n in 2..=6 {
        let r = max_eigen_settings(n, &OptConfig::new(50, 1e-13, seed))?;
        worst = worst.max(quantum_max(n) - r.best_value);
        unsound += usize::from(!r.is_sound());
    }
    report(
        4,
        worst <= 1e-6 && unsound == 0,
        format!("50 restarts, n=2..6: largest shortfall {worst:.3e}, {unsound} unverified optima"),
    )
}

pub fn independent_bound(seed: u64) -> Result<CriterionReport> {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, m) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
        let r = product_bound_max(n, m, &OptConfig::new(20, 1e-13, seed))?;
        let want = 2f64.powf((n - m + 1) as f64 / 2.0);
        let dev = (r.best_value - want).abs();
        pass &= dev <= 1e-5 && r.is_sound();
        parts.push(format!("({n},{m}): {:.10} vs {want:.10}", r.best_value));
    }
    report(5, pass, parts.join("; "))
}

pub fn f_decomposition(seed: u64) -> Result<CriterionReport> {
    let mut nonzero = Vec::new();
    for n in 2..=10 {
        for m in 1..n {
            let dev = fnm_identity_check(n, m, 1000, crate::rng::derive_seed(seed, (n * 16 + m) as u64))?;
            if dev != 0.into() {
                nonzero.push(format!("({n},{m}): {dev}"));
            }
        }
    }
    report(6, nonzero.is_empty(), format!("1000 assignments per 1 <= m < n <= 10; nonzero deviations: {nonzero:?}"))
}

pub fn fragility_check(_seed: u64) -> Result<CriterionReport> {
    let mut frag_dev: f64 = 0.0;
    let mut reduction_dev: f64 = 0.0;
    let mut all_maximal = true;
    for n in 2..=10 {
        let psi = ghz(n)?;
        let f = fragility(&psi, DEFAULT_FRAGILITY_TOL)?;
        frag_dev = frag_dev.max((f.fragility - 3.0 * n as f64).abs());
        all_maximal &= f.is_maximal;
        let half = CMatrix::identity(2, 2) * Complex64::new(0.5, 0.0);
        for q in 0..n {
            reduction_dev = reduction_dev.max(max_abs(&(psi.reduced(&[q])?.matrix() - &half)));
        }
    }

    let mut composition_dev: f64 = 0.0;
    let mut states: Vec<DensityMatrix> = (2..=5).map(|n| Ok(ghz(n)?.to_density())).collect::<Result<_>>()?;
    states.push(crate::certify::rho3_state()?);
    states.push(SymState::dicke(1, 3)?.embed()?.to_density());
    for rho in &states {
        for (s, t) in [(0.13, 0.29), (0.05, 0.5), (0.0, 0.2)] {
            let twice = depolarize(&depolarize(rho, s)?, t)?;
            let once = depolarize(rho, s + t)?;
            composition_dev = composition_dev.max(max_abs(&(twice.matrix() - once.matrix())));
        }
    }

    let mut slope_dev: f64 = 0.0;
    let mut probes: Vec<PureState> = (2..=8).map(ghz).collect::<Result<_>>()?;
    probes.push(SymState::dicke(1, 3)?.embed()?);
    probes.push(PureState::zeros(3)?);
    for psi in &probes {
        let f = fragility(psi, DEFAULT_FRAGILITY_TOL)?;
        slope_dev = slope_dev.max((numeric_fidelity_slope(psi, 1e-6)? + f.fragility).abs());
    }

    report(
        7,
        frag_dev <= 1e-10 && reduction_dev <= 1e-10 && all_maximal && composition_dev <= 1e-10 && slope_dev <= 1e-6,
        format!(
            "GHZ n=2..10: fragility deviation {frag_dev:.3e}, reduction deviation {reduction_dev:.3e}, \
             all maximal {all_maximal}; composition deviation {composition_dev:.3e}; \
             fidelity slope vs -fragility {slope_dev:.3e}"
        ),
    )
}

pub fn distribution(seed: u64) -> Result<CriterionReport> {
    let mut min_fidelity = f64::INFINITY;
    let mut failures = Vec::new();
    for n in 2..=8 {
        for k in 1..n {
            let r = distribute_check(n, k, 200, crate::rng::derive_seed(seed, (n * 16 + k) as u64))?;
            min_fidelity = min_fidelity.min(r.min_fidelity);
            if !r.pass {
                failures.push(format!("({n},{k})"));
            }
        }
    }
    report(
        8,
        failures.is_empty() && (1.0 - min_fidelity).abs() <= 1e-10,
        format!("200 trials per 1 <= k < n <= 8; min fidelity {min_fidelity:.15}; failing pairs {failures:?}"),
    )
}

pub fn mutual_info(_seed: u64) -> Result<CriterionReport> {
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let mi = mutual_information(&ghz(n)?, &MeasurementBasis::z(n))?;
        worst = worst.max((mi.bits - (n - 1) as f64).abs());
    }
    let triplet = mutual_information(&SymState::dicke(1, 2)?.embed()?, &MeasurementBasis::z(2))?.bits;
    report(
        9,
        worst <= 1e-10 && (triplet - 1.0).abs() <= 1e-10,
        format!("GHZ n=2..10 deviation from n-1 bits {worst:.3e}; triplet {triplet:.15} bits"),
    )
}

pub fn mm_states(seed: u64) -> Result<CriterionReport> {
    let mut worst: f64 = 0.0;
    for (_, s) in known_mm_states() {
        worst = worst.max(mm_partial_residual(&s)?.residual);
    }
    let cfg = OptConfig { restarts: 200, tol: 1e-16, seed, ..OptConfig::default() };
    let floor = search_mm_partial(5, &cfg)?;
    report(
        10,
        worst < 1e-9 && floor.best_value > 1e-3 && floor.is_sound(),
        format!(
            "largest residual of the listed states {worst:.3e}; five-qubit search over 200 restarts \
             bottoms out at {:.6e} (empirical floor)",
            floor.best_value
        ),
    )
}

/// Single-qubit kets `[label][z bit]` written out independently of the
/// symbolic code.
fn kets(label: BasisLabel) -> [[Complex64; 2]; 2] {
    let c = Complex64::new;
    match label {
        BasisLabel::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
        BasisLabel::X => [[c(1.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)]],
        BasisLabel::Y => [[c(1.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(1.0, 0.0)]],
    }
}

/// Dense unnormalized vector of a labelled symmetric state, built by
/// summing tensor products of the labelled kets.
fn dense(s: &SymState) -> Vec<Complex64> {
    let n = s.n();
    let k = kets(s.basis());
    let coeff: Vec<Complex64> = s
        .coefficients()
        .iter()
        .map(|z| Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)))
        .collect();
    (0..1usize << n)
        .map(|z| {
            (0..1usize << n)
                .map(|label| {
                    let mut amp = coeff[label.count_ones() as usize];
                    for q in 0..n {
                        let shift = n - 1 - q;
                        amp *= k[(label >> shift) & 1][(z >> shift) & 1];
                    }
                    amp
                })
                .sum()
        })
        .collect()
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `a - lambda b` with `lambda` read off the largest entry of `b`.
fn dev_up_to_scalar(a: &[Complex64], b: &[Complex64]) -> f64 {
    let pivot = (0..b.len()).max_by(|&i, &j| b[i].norm().total_cmp(&b[j].norm())).unwrap_or(0);
    let lambda = a[pivot] / b[pivot];
    a.iter().zip(b).map(|(x, y)| (x - lambda * y).norm()).fold(0.0, f64::max)
}

pub fn symmetric_algebra(_seed: u64) -> Result<CriterionReport> {
    let mut inner_dev: f64 = 0.0;
    let mut split_dev: f64 = 0.0;
    let mut x_dev: f64 = 0.0;
    let mut ghz_dev: f64 = 0.0;
    let mut parity_ok = true;
    for n in 1..=8 {
        let dicke: Vec<Vec<Complex64>> = (0..=n).map(|j| Ok(dense(&SymState::dicke(j, n)?))).collect::<Result<_>>()?;
        for j in 0..=n {
            for k in 0..=n {
                let dot: Complex64 = dicke[j].iter().zip(&dicke[k]).map(|(a, b)| a.conj() * b).sum();
                let want = inner(j, k, n)?.to_f64().unwrap_or(f64::NAN);
                inner_dev = inner_dev.max((dot - want).norm());
            }
            for m in 1..n {
                split_dev = split_dev.max(max_dev(&embed_split(&split(j, n, m)?)?, &dicke[j]));
            }
            let change = SymState::dicke(j, n)?.z_to_x()?;
            let s = Complex64::new(change.scalar.re.to_f64().unwrap_or(f64::NAN), change.scalar.im.to_f64().unwrap_or(f64::NAN));
            let back: Vec<Complex64> = dense(&change.state).into_iter().map(|a| a * s).collect();
            x_dev = x_dev.max(max_dev(&back, &dicke[j]));
        }
        if n >= 2 {
            for sign in [Sign::Plus, Sign::Minus] {
                let z_form = SymState::ghz(n, sign)?;
                let target = dense(&z_form);
                let x_form = z_form.z_to_x()?;
                let parity = if sign == Sign::Plus { n % 2 } else { (n + 1) % 2 };
                parity_ok &= x_form
                    .state
                    .coefficients()
                    .iter()
                    .enumerate()
                    .all(|(l, c)| num_traits::Zero::is_zero(c) || l % 2 == parity);
                ghz_dev = ghz_dev.max(dev_up_to_scalar(&dense(&x_form.state), &target));
                ghz_dev = ghz_dev.max(dev_up_to_scalar(&dense(&ghz_y_form(n, sign)?), &target));
            }
        }
    }
    report(
        11,
        inner_dev == 0.0 && split_dev == 0.0 && x_dev == 0.0 && ghz_dev == 0.0 && parity_ok,
        format!(
            "n <= 8 against dense product-ket embeddings: inner {inner_dev:e}, split {split_dev:e}, \
             z->x {x_dev:e}, GHZ x/y forms {ghz_dev:e}, GHZ x parity {parity_ok}"
        ),
    )
}

pub fn ghz_basis(_seed: u64) -> Result<CriterionReport> {
    let mut worst: f64 = 0.0;
    let mut counts_ok = true;
    for n in 2..=8 {
        let states = bell_basis(n)?.iter().map(|b| b.to_pure()).collect::<Result<Vec<_>>>()?;
        counts_ok &= states.len() == 1 << n;
        worst = worst.max(gram_deviation(&states));
    }
    report(12, worst <= 1e-12 && counts_ok, format!("n=2..8: 2^n states, max |G - I| = {worst:.3e}"))
}

pub fn rho3_example(seed: u64) -> Result<CriterionReport> {
    let (_, r) = example_rho3(&OptConfig::new(20, 1e-13, seed))?;
    let max = r.optimized.best_value;
    let pass = max <= 4.0 + 1e-8 && r.certification.certified_entangled == Some(2) && r.optimized.is_sound();
    report(
        13,
        pass,
        format!(
            "value at listed angles {:.12}; maximum over settings {max:.12}; certified {:?}; \
             claimed {RHO3_CLAIMED:.12} flagged {:?}",
            r.value_at_listed_angles, r.certification.certified_entangled, r.claimed_certification.flags
        ),
    )
}

pub fn shot_noise(seed: u64) -> Result<CriterionReport> {
    let psi = ghz(3)?;
    let st = ghz_optimal_settings(3)?.settings;
    let exact = bell_expectation(&psi, &st)?;
    let mut inside = 0;
    for rep in 0..100 {
        let e = estimate_e(&psi, &st, 100_000, crate::rng::derive_seed(seed, rep))?;
        inside += usize::from((e.value - exact).abs() <= 4.0 * e.stderr);
    }
    report(14, inside >= 95, format!("{inside}/100 estimates within 4 standard errors of {exact:.12}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_ordered() {
        let ids: Vec<u8> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=14).collect::<Vec<_>>());
    }

    #[test]
    fn dense_oracle_on_one_qubit() {
        let plus_x = SymState::new(1, vec![crate::symstate::exact::exact_zero(), crate::symstate::exact::exact_one()], BasisLabel::X).unwrap();
        let v = dense(&plus_x);
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn scalar_deviation() {
        let a = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 2.0)];
        let b = [Complex64::new(0.0, -1.0), Complex64::new(1.0, 0.0)];
        assert_eq!(dev_up_to_scalar(&a, &b), 0.0);
        let c = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(dev_up_to_scalar(&c, &b) > 0.5);
    }
}
