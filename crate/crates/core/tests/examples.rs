//! Worked examples with independently computed expectations.

use klyshko::bellop::{
    bell_expectation, bell_operator, expand_correlators, f_classical, f_prime, fnm_identity_check,
    ghz_optimal_settings, lhv_max, weighted_ghz_violation, Assignment, MeasurementPair, Settings,
};
use klyshko::certify::{certify_depth, thresholds};
use klyshko::criteria::{distribute_check, fragility, mm_partial_residual, mutual_information};
use klyshko::optimize::{
    max_eigen_settings, max_violation_settings, product_bound_max, search_mm_partial, Argmax, OptConfig,
};
use klyshko::qstate::{spectrum, CMatrix, MeasurementBasis};
use klyshko::symstate::{SymState, SymVector};
use klyshko::{Complex64, Direction, PureState, Sign};
use num_rational::Rational64;

fn cfg(restarts: usize) -> OptConfig {
    OptConfig::new(restarts, 1e-13, klyshko::rng::DEFAULT_SEED)
}

#[test]
fn classical_polynomial_examples() {
    let two = Rational64::from_integer(2);
    assert_eq!(f_classical(&Assignment::new(vec![(1, 1)]).unwrap()), two);
    assert_eq!(f_classical(&Assignment::new(vec![(1, 1), (1, -1)]).unwrap()), two);
    assert_eq!(f_prime(&Assignment::new(vec![(1, -1)]).unwrap()), -two);
    // F_3 with every value +1 is abc' + ab'c + a'bc - a'b'c' = 2.
    assert_eq!(f_classical(&Assignment::new(vec![(1, 1); 3]).unwrap()), two);
    let p3 = expand_correlators(3).unwrap();
    assert_eq!(p3.terms().count(), 4);
    // Choice strings uup, upu, puu carry +1 and ppp carries -1.
    for (label, want) in [("uup", 1), ("upu", 1), ("puu", 1), ("ppp", -1)] {
        let mask = (0..8).find(|&m| p3.label(m) == label).unwrap();
        assert_eq!(p3.coeffs[mask], Rational64::from_integer(want), "{label}");
    }
    assert_eq!(lhv_max(8).unwrap(), two);
}

#[test]
fn decomposition_examples() {
    assert_eq!(fnm_identity_check(6, 3, 1000, 1).unwrap(), Rational64::from_integer(0));
    assert_eq!(fnm_identity_check(12, 5, 1000, 2).unwrap(), Rational64::from_integer(0));
}

#[test]
fn base_case_operator() {
    let st = Settings::new(vec![MeasurementPair::new(Direction::Z, Direction::X)]);
    let b = bell_operator(&st).unwrap();
    let want = CMatrix::from_fn(2, 2, |r, c| Complex64::new(if r != c { 0.0 } else if r == 0 { 2.0 } else { -2.0 }, 0.0));
    assert_eq!(b, want);
}

#[test]
fn weighted_ghz_factor() {
    // Oracle: a Mermin-type correlator of alpha|000> + beta|111> in the xy-plane is
    // 2 alpha beta cos(sum of angles), so the value scales the GHZ value 4 by 2 alpha beta.
    let r = weighted_ghz_violation(3, 0.6, 0.8).unwrap();
    assert!((r.value - 2.0 * 0.6 * 0.8 * 4.0).abs() < 1e-12, "{}", r.value);
    let psi = PureState::ghz_weighted(3, 0.6.into(), 0.8.into()).unwrap();
    let b = bell_operator(&ghz_optimal_settings(3).unwrap().settings).unwrap();
    let direct = psi.to_density().expectation(&b).unwrap().re;
    assert!((r.value - direct).abs() < 1e-12);
    assert!((r.violation_factor - 2.0 * r.stated_factor).abs() < 1e-12);
}

#[test]
fn optimizer_examples() {
    let r = max_eigen_settings(6, &cfg(50)).unwrap();
    assert!((r.best_value - 2f64.powf(3.5)).abs() < 1e-6, "{}", r.best_value);
    let Argmax::Settings { settings } = &r.argmax else { panic!() };
    assert!((spectrum(&bell_operator(settings).unwrap()).unwrap().max() - r.best_value).abs() < 1e-10);

    for (n, m) in [(4, 2), (2, 1)] {
        let r = product_bound_max(n, m, &cfg(20)).unwrap();
        let want = 2f64.powf((n - m + 1) as f64 / 2.0);
        assert!((r.best_value - want).abs() < 1e-5, "({n},{m}): {}", r.best_value);
    }
}

#[test]
fn ghz_block_with_product_tail() {
    for (n, m) in [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3)] {
        let psi = PureState::ghz(n - m, Sign::Plus).unwrap().tensor(&PureState::zeros(m).unwrap()).unwrap();
        let r = max_violation_settings(&psi, &cfg(20)).unwrap();
        let bound = thresholds(n).unwrap()[m];
        assert!((r.best_value - bound).abs() < 1e-6, "({n},{m}): {} vs {bound}", r.best_value);
        let c = certify_depth(r.best_value, n, 1e-9).unwrap();
        assert_eq!(c.certified_entangled, Some(n - m), "({n},{m})");
    }
}

#[test]
fn mm_search_examples() {
    for n in [3, 4] {
        let r = search_mm_partial(n, &OptConfig { restarts: 20, tol: 1e-16, ..cfg(20) }).unwrap();
        assert!(r.best_value < 1e-9, "n = {n}: {}", r.best_value);
        let Argmax::SymState { state } = &r.argmax else { panic!() };
        // Every one-qubit reduction of a recovered state is I/2.
        let psi = state.embed().unwrap();
        for q in 0..n {
            let rho = psi.reduced(&[q]).unwrap();
            assert!((rho.matrix()[(0, 0)].re - 0.5).abs() < 1e-4 && rho.matrix()[(0, 1)].norm() < 1e-4);
        }
    }
}

#[test]
fn criteria_examples() {
    let g5 = PureState::ghz(5, Sign::Plus).unwrap();
    let f = fragility(&g5, 1e-10).unwrap();
    assert!((f.fragility - 15.0).abs() < 1e-12 && f.is_maximal);

    let zeros = fragility(&PureState::zeros(4).unwrap(), 1e-10).unwrap();
    assert!((zeros.fragility - 8.0).abs() < 1e-12 && !zeros.is_maximal);

    // W state: each qubit is |1> with probability 1/3, so <sigma_z> = 1/3.
    let w = fragility(&SymState::dicke(1, 3).unwrap().embed().unwrap(), 1e-10).unwrap();
    for r in &w.bloch_vectors {
        assert!(r[0].abs() < 1e-12 && r[1].abs() < 1e-12 && (r[2] - 1.0 / 3.0).abs() < 1e-12);
    }
    assert!((w.fragility - 26.0 / 3.0).abs() < 1e-12);

    let mi = mutual_information(&PureState::ghz(4, Sign::Plus).unwrap(), &MeasurementBasis::z(4)).unwrap();
    assert!((mi.bits - 3.0).abs() < 1e-12);

    let d = distribute_check(6, 3, 200, 17).unwrap();
    assert!(d.pass && d.trials.len() == 200);

    let psi62 = SymVector::from_real(6, &[-3.0, 0.0, 1.0, 0.0, 1.0, 0.0, -3.0]).unwrap();
    assert!(mm_partial_residual(&psi62).unwrap().residual < 1e-9);
}

#[test]
fn certification_examples() {
    assert_eq!(certify_depth(2.5, 3, 1e-9).unwrap().certified_entangled, Some(2));
    assert_eq!(certify_depth(3.0, 3, 1e-9).unwrap().certified_entangled, Some(3));
    assert_eq!(certify_depth(1.0, 5, 1e-9).unwrap().certified_entangled, Some(0));
    let psi = PureState::zeros(3).unwrap();
    let st = Settings::random(3, &mut klyshko::rng::seeded(5));
    assert!(bell_expectation(&psi, &st).unwrap() <= 2.0 + 1e-9);
}
