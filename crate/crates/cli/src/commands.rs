use std::path::Path;

use bellbox_core::bell::{
    classical_probabilities, discriminate, run_battery, standard_battery, BatteryConfigs,
};
use bellbox_core::marbles::{
    estimate, estimate_parallel, exact_chain_probabilities, local_box, MarbleProtocol, SamplingMode,
};
use bellbox_core::operators::{
    classical_operator, gram_determinant, interference_product, linearly_independent, mixture,
    qbb_operator, INDEPENDENCE_TOL,
};
use bellbox_core::quantum::quantum_probabilities;
use bellbox_core::{Angle, EventProbabilities, MixtureConfig, MixtureEntry, Model};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::angle::{parse_angle, parse_angle_list};
use crate::report::{num, per_event, probability_fields, Report};
use crate::{Cli, CliError, Command, ModeArg, Setting};

pub const DEFAULT_DISCRIMINATE_TOL: f64 = 0.01;
/// Mixture weights must sum to one within this before being rescaled.
pub const MIXTURE_SUM_TOL: f64 = 1e-9;
/// Probabilities passed to `discriminate` must sum to one within this.
pub const PROBS_SUM_TOL: f64 = 1e-6;

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Qm(s) => Ok(closed_form("qm", Model::Quantum, s)),
        Command::Classical(s) => Ok(closed_form("classical", Model::Classical, s)),
        Command::Chsh { model, configs } => chsh((*model).into(), configs.as_deref()),
        Command::Operator { setting, model } => Ok(operator(
            setting,
            (*model).into(),
            cli.tol.unwrap_or(INDEPENDENCE_TOL),
        )),
        Command::Marbles {
            setting,
            trials,
            seed,
            mode,
            box_size,
            swap,
            serial,
        } => {
            let mode = match mode {
                ModeArg::Exact => SamplingMode::Exact,
                ModeArg::Quantized => SamplingMode::Quantized {
                    box_size: *box_size,
                },
            };
            let protocol = MarbleProtocol {
                alpha: setting.alpha,
                beta: setting.beta,
                mode,
                swap_right: *swap,
            };
            marbles(&protocol, *trials, *seed, *serial)
        }
        Command::Mixture { config } => mixture_command(config),
        Command::Discriminate { probs } => {
            discriminate_command(probs, cli.tol.unwrap_or(DEFAULT_DISCRIMINATE_TOL))
        }
    }
}

fn with_setting(report: &mut Report, alpha: Angle, beta: Angle) {
    report.set_num("alpha_rad", alpha.radians());
    report.set_num("beta_rad", beta.radians());
}

fn closed_form(command: &str, model: Model, s: &Setting) -> Report {
    let mut r = Report::new(command);
    with_setting(&mut r, s.alpha, s.beta);
    r.set("model", model.label());
    r.set_probabilities(&model.probabilities(s.alpha, s.beta));
    r
}

fn chsh(model: Model, configs: Option<&str>) -> Result<Report, CliError> {
    let battery: BatteryConfigs = match configs {
        None => standard_battery(),
        Some(text) => {
            let angles = parse_angle_list(text).map_err(|e| CliError::Usage(e.to_string()))?;
            if angles.len() != 8 {
                return Err(CliError::Usage(format!(
                    "--configs needs 8 angles (4 pairs), got {}",
                    angles.len()
                )));
            }
            std::array::from_fn(|i| (angles[2 * i], angles[2 * i + 1]))
        }
    };
    let result = run_battery(model, battery);
    let mut r = Report::new("chsh");
    r.set("model", model.label());
    let rows: Vec<Value> = battery
        .iter()
        .zip(result.correlations)
        .map(|(&(a, b), k)| {
            json!({
                "alpha_rad": num(a.radians()),
                "beta_rad": num(b.radians()),
                "correlation": num(k),
            })
        })
        .collect();
    r.set("configs", rows);
    r.set_num("lhs", result.lhs);
    r.set("violated", result.violated());
    Ok(r)
}

fn operator(s: &Setting, model: Model, tol: f64) -> Report {
    let op = match model {
        Model::Quantum => qbb_operator(s.alpha, s.beta),
        Model::Classical => classical_operator(s.alpha, s.beta),
    };
    let mut r = Report::new("operator");
    with_setting(&mut r, s.alpha, s.beta);
    r.set("model", model.label());
    r.set(
        "weights",
        op.weights().into_iter().map(num).collect::<Vec<_>>(),
    );
    let shown: Vec<Value> = op
        .terms()
        .iter()
        .map(|(_, k)| Value::from(k.components().map(num).to_vec()))
        .collect();
    r.set("tilde_states", shown);
    r.set_num("interference_c", interference_product(s.alpha, s.beta));
    r.set_num("gram_det", gram_determinant(s.alpha, s.beta));
    r.set(
        "linearly_independent",
        linearly_independent(s.alpha, s.beta, tol),
    );
    r.set_num("trace", op.trace());
    r.set_probabilities(&op.probabilities());
    r
}

/// `(p̂ − p)/sqrt(p(1−p)/N)`; `null` when the reference variance is zero but
/// the estimate differs.
fn z_score(estimate: f64, reference: f64, trials: u64) -> Value {
    let se = (reference * (1.0 - reference) / trials as f64).sqrt();
    let diff = estimate - reference;
    if se > 0.0 {
        num(diff / se)
    } else if diff.abs() < 1e-15 {
        num(0.0)
    } else {
        Value::Null
    }
}

fn marbles(
    protocol: &MarbleProtocol,
    trials: u64,
    seed: u64,
    serial: bool,
) -> Result<Report, CliError> {
    let report = if serial {
        estimate(protocol, trials, seed)?
    } else {
        estimate_parallel(protocol, trials, seed)?
    };
    let reference = exact_chain_probabilities(protocol)?;
    let empirical = report.probabilities();

    let mut r = Report::new("marbles");
    with_setting(&mut r, protocol.alpha, protocol.beta);
    r.set("model", "classical");
    r.set("mode", protocol.mode.label());
    if let SamplingMode::Quantized { box_size } = protocol.mode {
        r.set("box_size", box_size);
        let boxes = |theta| -> Result<Value, CliError> {
            let b = local_box(theta, box_size)?;
            Ok(json!({ "white": b.white, "black": b.black }))
        };
        r.set(
            "boxes",
            json!({ "a": boxes(protocol.alpha)?, "b": boxes(protocol.beta)? }),
        );
    }
    r.set("swap_right", protocol.swap_right);
    r.set("trials", trials);
    r.set("seed", seed);
    r.set("counts", per_event(report.counts));
    r.set_probabilities(&empirical);
    r.set_num("correlation_stderr", report.correlation_standard_error());
    r.set("stderr", per_event(report.standard_errors().map(num)));
    r.set("reference", Value::Object(probability_fields(&reference)));
    r.set_num("reference_correlation", reference.correlation());
    let (emp, exp) = (empirical.values(), reference.values());
    let z: [Value; 4] = std::array::from_fn(|i| z_score(emp[i], exp[i], trials));
    r.set("z_scores", per_event(z));
    Ok(r)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AngleField {
    Number(f64),
    Expr(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureRow {
    r: f64,
    alpha: AngleField,
    beta: AngleField,
}

fn resolve(field: &AngleField, key: &str, row: usize) -> Result<Angle, CliError> {
    match field {
        AngleField::Number(x) => {
            Angle::try_new(*x).map_err(|e| CliError::Usage(format!("entry {row}: {key}: {e}")))
        }
        AngleField::Expr(s) => {
            parse_angle(s).map_err(|e| CliError::Usage(format!("entry {row}: {key}: {e}")))
        }
    }
}

/// Reads a mixture file: a JSON array of `{"r", "alpha", "beta"}` objects,
/// with angles given as numbers (radians) or angle expressions.
pub fn load_mixture(path: &Path) -> Result<MixtureConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_mixture(&text)
}

pub fn parse_mixture(text: &str) -> Result<MixtureConfig, CliError> {
    let rows: Vec<MixtureRow> =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("mixture schema: {e}")))?;
    if rows.is_empty() {
        return Err(CliError::Usage("mixture schema: empty array".into()));
    }
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        entries.push(MixtureEntry {
            weight: row.r,
            alpha: resolve(&row.alpha, "alpha", i)?,
            beta: resolve(&row.beta, "beta", i)?,
        });
    }
    if let Some(e) = entries.iter().find(|e| e.weight < 0.0) {
        return Err(CliError::Domain(format!(
            "mixture weight {} is negative",
            e.weight
        )));
    }
    let sum: f64 = entries.iter().map(|e| e.weight).sum();
    if (sum - 1.0).abs() > MIXTURE_SUM_TOL {
        return Err(CliError::Domain(format!(
            "mixture weights sum to {sum}, expected 1"
        )));
    }
    for e in &mut entries {
        e.weight /= sum;
    }
    Ok(MixtureConfig::new(entries)?)
}

fn mixture_command(path: &Path) -> Result<Report, CliError> {
    let config = load_mixture(path)?;
    let op = mixture(&config);
    let mut r = Report::new("mixture");
    r.set("model", "quantum");
    let components: Vec<Value> = config
        .entries()
        .iter()
        .map(|e| {
            let mut row = probability_fields(&quantum_probabilities(e.alpha, e.beta));
            row.insert("r".into(), num(e.weight));
            row.insert("alpha_rad".into(), num(e.alpha.radians()));
            row.insert("beta_rad".into(), num(e.beta.radians()));
            Value::Object(row)
        })
        .collect();
    r.set("components", components);
    r.set_num("trace", op.trace());
    r.set_probabilities(&op.probabilities());
    Ok(r)
}

fn discriminate_command(text: &str, tol: f64) -> Result<Report, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--probs: {e}")))?;
    let values: [f64; 4] = values.try_into().map_err(|v: Vec<f64>| {
        CliError::Usage(format!("--probs needs 4 values, got {}", v.len()))
    })?;
    let probs = EventProbabilities::new(values, PROBS_SUM_TOL)
        .map_err(|e| CliError::Usage(format!("--probs: {e}")))?;
    let verdict = discriminate(&probs, tol);
    let mut r = Report::new("discriminate");
    r.set_probabilities(&probs);
    r.set_num("tol", tol);
    r.set("verdict", verdict.label());
    // reference templates for the reader
    let at = Angle::new(std::f64::consts::FRAC_PI_4);
    r.set(
        "quantum_template",
        Value::Object(probability_fields(&quantum_probabilities(at, at))),
    );
    r.set(
        "classical_template",
        Value::Object(probability_fields(&classical_probabilities(at, at))),
    );
    Ok(r)
}
