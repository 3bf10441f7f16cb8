use serde_json::json;

use klyshko::audit;
use klyshko::bellop::ghz_optimal_settings;
use klyshko::certify::{certify_depth, estimate_e, example_rho3, thresholds, MIN_SHOTS};
use klyshko::criteria::{distribute_check, fragility, mm_partial_residual, mutual_information, DEFAULT_FRAGILITY_TOL};
use klyshko::io::{read_settings, read_state, LoadedState};
use klyshko::optimize::{max_eigen_settings, OptConfig};
use klyshko::qstate::{spectrum, MeasurementBasis};
use klyshko::symstate::{bell_basis, exact, ghz_y_form, gram_deviation, SymState};
use klyshko::tolerances::{ESTIMATE_SIGMAS, EXACT_CERT_EPS, OPERATOR_BOUND_SLACK};
use klyshko::Sign;

use crate::config::{Label, RunConfig, SignArg, Which, DEFAULT_RESTARTS, DEFAULT_SHOTS, DEFAULT_TOL, DEFAULT_TRIALS};
use crate::{CliError, Output};

/// Largest register for the dense Gram check of `bellbasis`.
const BELLBASIS_MAX_QUBITS: usize = 10;
/// Largest register for `bellmax`.
const BELLMAX_MAX_QUBITS: usize = 10;
/// Allowed shortfall of `bellmax` from the quantum maximum.
const BELLMAX_TOL: f64 = 1e-6;
const MM_TOL: f64 = 1e-9;
const GRAM_TOL: f64 = 1e-12;

pub fn dispatch(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.command.as_str() {
        "bellmax" => bellmax(cfg),
        "certify" => certify(cfg),
        "criteria" => criteria(cfg),
        "basis" => basis(cfg),
        "bellbasis" => bellbasis(cfg),
        "thresholds" => thresholds_table(cfg),
        "spectrum" => spectrum_table(cfg),
        "rho3" => rho3(cfg),
        "verify" => verify(cfg),
        other => Err(CliError::Usage(format!("unknown command {other}"))),
    }
}

fn opt_config(cfg: &RunConfig) -> Result<OptConfig, CliError> {
    let c = OptConfig::new(
        cfg.restarts.unwrap_or(DEFAULT_RESTARTS),
        cfg.tol.unwrap_or(DEFAULT_TOL),
        cfg.seed(),
    );
    if c.restarts == 0 || !(c.tol > 0.0) {
        return Err(CliError::Usage("--restarts must be positive and --tol > 0".into()));
    }
    Ok(c)
}

fn load(cfg: &RunConfig) -> Result<LoadedState, CliError> {
    let path = cfg.require_state()?;
    let state = read_state(path).map_err(|e| CliError::Usage(format!("state file {}: {e}", path.display())))?;
    if let Some(n) = cfg.n {
        if n != state.n() {
            return Err(CliError::Usage(format!("--n {n} disagrees with the {}-qubit state file", state.n())));
        }
    }
    Ok(state)
}

fn quantum_max(n: usize) -> f64 {
    2f64.powf((n as f64 + 1.0) / 2.0)
}

fn bellmax(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.require_n()?;
    if !(2..=BELLMAX_MAX_QUBITS).contains(&n) {
        return Err(CliError::Usage(format!("bellmax needs 2 <= n <= {BELLMAX_MAX_QUBITS}, got {n}")));
    }
    let r = max_eigen_settings(n, &opt_config(cfg)?)?;
    let target = quantum_max(n);
    let deviation = target - r.best_value;
    let ok = deviation.abs() <= BELLMAX_TOL && r.best_value <= target + OPERATOR_BOUND_SLACK && r.is_sound();
    Ok(Output {
        result: json!({
            "n": n,
            "best_value": r.best_value,
            "target": target,
            "deviation": deviation,
            "optimizer": r,
        }),
        table: None,
        ok,
    })
}

fn certify(cfg: &RunConfig) -> Result<Output, CliError> {
    if cfg.estimate.unwrap_or(false) {
        let state = load(cfg)?;
        let n = state.n();
        let settings = match &cfg.settings {
            Some(p) => read_settings(p).map_err(|e| CliError::Usage(format!("settings file {}: {e}", p.display())))?,
            None => ghz_optimal_settings(n)?.settings,
        };
        if settings.n() != n {
            return Err(CliError::Usage(format!("settings cover {} qubits, state has {n}", settings.n())));
        }
        let shots = cfg.shots.unwrap_or(DEFAULT_SHOTS);
        if shots < MIN_SHOTS {
            return Err(CliError::Usage(format!("--shots must be at least {MIN_SHOTS}")));
        }
        let est = estimate_e(state.view(), &settings, shots, cfg.seed())?;
        let epsilon = cfg.epsilon.unwrap_or(ESTIMATE_SIGMAS * est.stderr);
        if epsilon < 0.0 {
            return Err(CliError::Usage("--epsilon must be non-negative".into()));
        }
        let cert = certify_depth(est.value.max(0.0), n, epsilon)?;
        let ok = cert.flags.is_empty();
        Ok(Output { result: json!({ "estimate": est, "certification": cert }), table: None, ok })
    } else {
        let n = cfg.require_n()?;
        let e = cfg.e.ok_or_else(|| CliError::Usage("certify needs --e VALUE or --estimate".into()))?;
        let epsilon = cfg.epsilon.unwrap_or(EXACT_CERT_EPS);
        if e < 0.0 || epsilon < 0.0 {
            return Err(CliError::Usage("E and epsilon must be non-negative".into()));
        }
        if n < 2 {
            return Err(CliError::Usage(format!("certify needs n >= 2, got {n}")));
        }
        let cert = certify_depth(e, n, epsilon)?;
        let ok = cert.flags.is_empty();
        Ok(Output { result: serde_json::to_value(&cert)?, table: None, ok })
    }
}

fn criteria(cfg: &RunConfig) -> Result<Output, CliError> {
    let which = cfg
        .which
        .ok_or_else(|| CliError::Usage("criteria needs --which fragility|mutinfo|mm|distribute".into()))?;
    let (result, ok) = match which {
        Which::Fragility => {
            let state = load(cfg)?;
            let psi = state.pure().map_err(|e| CliError::Usage(e.to_string()))?;
            (serde_json::to_value(fragility(psi, DEFAULT_FRAGILITY_TOL)?)?, true)
        }
        Which::Mutinfo => {
            let state = load(cfg)?;
            let n = state.n();
            let basis = match cfg.basis.unwrap_or(Label::Z) {
                Label::Z => MeasurementBasis::z(n),
                Label::X => MeasurementBasis::x(n),
                Label::Y => MeasurementBasis::uniform(n, klyshko::Direction::Y),
            };
            (serde_json::to_value(mutual_information(state.view(), &basis)?)?, true)
        }
        Which::Mm => {
            let state = load(cfg)?;
            let s = state.symmetric().map_err(|e| CliError::Usage(e.to_string()))?;
            if s.n < 2 {
                return Err(CliError::Usage("mm needs at least two qubits".into()));
            }
            let r = mm_partial_residual(&s)?;
            let pass = r.residual < MM_TOL;
            (json!({ "report": r, "maximally_mixed": pass, "tol": MM_TOL }), true)
        }
        Which::Distribute => {
            let n = match cfg.n {
                Some(n) => n,
                None => load(cfg)?.n(),
            };
            let k = cfg.k.ok_or_else(|| CliError::Usage("distribute needs --k".into()))?;
            if !(1 <= k && k < n && n <= 10) {
                return Err(CliError::Usage(format!("distribute needs 1 <= k < n <= 10, got n = {n}, k = {k}")));
            }
            let r = distribute_check(n, k, cfg.trials.unwrap_or(DEFAULT_TRIALS), cfg.seed())?;
            let pass = r.pass;
            (serde_json::to_value(r)?, pass)
        }
    };
    Ok(Output { result, table: None, ok })
}

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn basis(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.require_n()?;
    if n == 0 || n > klyshko::tolerances::MAX_QUBITS {
        return Err(CliError::Usage(format!("basis needs 1 <= n <= {}", klyshko::tolerances::MAX_QUBITS)));
    }
    if cfg.from.unwrap_or(Label::Z) != Label::Z {
        return Err(CliError::Usage("only --from z is supported".into()));
    }
    let to = cfg.to.ok_or_else(|| CliError::Usage("basis needs --to x|y".into()))?;
    let (input, name) = match (cfg.dicke, cfg.ghz) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --ghz or --dicke".into())),
        (Some(j), None) if j <= n => (SymState::dicke(j, n)?, format!("|{j},{n}>")),
        (Some(j), None) => return Err(CliError::Usage(format!("--dicke {j} exceeds n = {n}"))),
        (None, g) => {
            let s = sign(g.unwrap_or(SignArg::Plus));
            let op = if s == Sign::Plus { '+' } else { '-' };
            (SymState::ghz(n, s)?, format!("|0,{n}> {op} |{n},{n}>"))
        }
    };
    let (output, scalar) = match to {
        Label::X => {
            let change = input.z_to_x()?;
            (change.state, change.scalar)
        }
        Label::Y => {
            if cfg.dicke.is_some() {
                return Err(CliError::Usage("the y form is available for GHZ states only".into()));
            }
            let s = sign(cfg.ghz.unwrap_or(SignArg::Plus));
            let y = ghz_y_form(n, s)?;
            let scalar = input
                .ratio_to(&y)
                .ok_or_else(|| CliError::Usage("y form is not proportional to the input".into()))?;
            (y, scalar)
        }
        Label::Z => return Err(CliError::Usage("--to must be x or y".into())),
    };
    let check = output.to_z().scale(&scalar) == input;
    let mut table = vec![vec!["j".to_string(), "z".to_string(), format!("{to:?}").to_lowercase()]];
    for (j, (a, b)) in input.table().iter().zip(output.table()).enumerate() {
        table.push(vec![j.to_string(), a.value.clone(), b.value]);
    }
    Ok(Output {
        result: json!({
            "n": n,
            "state": name,
            "to": to,
            "input": input.table(),
            "output": output.table(),
            "scalar": exact::display(&scalar),
            "input_equals_scalar_times_output": check,
        }),
        table: Some(table),
        ok: check,
    })
}

fn bellbasis(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.require_n()?;
    if !(2..=BELLBASIS_MAX_QUBITS).contains(&n) {
        return Err(CliError::Usage(format!("bellbasis needs 2 <= n <= {BELLBASIS_MAX_QUBITS}")));
    }
    let states = bell_basis(n)?;
    let pure = states.iter().map(|b| b.to_pure()).collect::<klyshko::Result<Vec<_>>>()?;
    let dev = gram_deviation(&pure);
    let mut table = vec![vec!["index".to_string(), "state".to_string()]];
    table.extend(states.iter().enumerate().map(|(i, b)| vec![i.to_string(), b.label()]));
    let labels: Vec<String> = states.iter().map(|b| b.label()).collect();
    Ok(Output {
        result: json!({ "n": n, "count": states.len(), "gram_deviation": dev, "states": labels }),
        table: Some(table),
        ok: dev <= GRAM_TOL && states.len() == 1 << n,
    })
}

fn thresholds_table(cfg: &RunConfig) -> Result<Output, CliError> {
    let n = cfg.require_n()?;
    if n < 2 {
        return Err(CliError::Usage(format!("thresholds need n >= 2, got {n}")));
    }
    let t = thresholds(n)?;
    let mut table = vec![vec!["k".to_string(), "bound".to_string()]];
    table.extend(t.iter().enumerate().map(|(k, b)| vec![k.to_string(), b.to_string()]));
    Ok(Output { result: json!({ "n": n, "thresholds": t }), table: Some(table), ok: true })
}

fn spectrum_table(cfg: &RunConfig) -> Result<Output, CliError> {
    let state = load(cfg)?;
    let rho = match &cfg.keep {
        Some(keep) => match &state {
            LoadedState::Mixed(r) => r.partial_trace(keep),
            _ => state.pure()?.reduced(keep),
        }
        .map_err(|e| CliError::Usage(e.to_string()))?,
        None => match &state {
            LoadedState::Mixed(r) => r.clone(),
            _ => state.pure()?.to_density(),
        },
    };
    let values = spectrum(rho.matrix())?.eigenvalues;
    let mut table = vec![vec!["index".to_string(), "eigenvalue".to_string()]];
    table.extend(values.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.to_string()]));
    Ok(Output { result: json!({ "keep": cfg.keep, "eigenvalues": values }), table: Some(table), ok: true })
}

fn rho3(cfg: &RunConfig) -> Result<Output, CliError> {
    let (_, report) = example_rho3(&opt_config(cfg)?)?;
    let ok = report.optimized.best_value <= report.quantum_maximum + OPERATOR_BOUND_SLACK;
    Ok(Output { result: serde_json::to_value(report)?, table: None, ok })
}

fn verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut reports = Vec::new();
    for c in audit::criteria() {
        if cfg.only.as_ref().is_some_and(|only| !only.contains(&c.id)) {
            continue;
        }
        let r = (c.run)(cfg.seed())?;
        eprintln!("{} [{:>2}] {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.name);
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.pass);
    let mut table = vec![vec!["id".to_string(), "name".to_string(), "pass".to_string(), "detail".to_string()]];
    table.extend(
        reports
            .iter()
            .map(|r| vec![r.id.to_string(), r.name.clone(), r.pass.to_string(), r.detail.clone()]),
    );
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(Output {
        result: json!({ "passed": passed, "total": reports.len(), "criteria": reports }),
        table: Some(table),
        ok,
    })
}

