//! Command dispatch.

use std::path::Path;

use located_core::rat::parse_rat;
use located_core::{
    distance, epsilon_net, metric_complement, point_extract, validate_oracle, Complement,
    CoverVerdict, Error, PositivityOracle,
};

use crate::config::Config;
use crate::report::{Report, Value};

pub const EXIT_OK: i32 = 0;
/// A verified negative result, e.g. the validator found a counterexample.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// The oracle broke its splitting contract.
pub const EXIT_ORACLE_DEFECT: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Distance(String),
    Point(String),
    Net(String),
    Complement(String),
    Cover { ball: String, family: Vec<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Distance(_) => "distance",
            Command::Point(_) => "point",
            Command::Net(_) => "net",
            Command::Complement(_) => "complement",
            Command::Cover { .. } => "cover",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub json: bool,
    pub digits: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            digits: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run(command: &Command, config: &Config, base_dir: &Path, options: &Options) -> Outcome {
    let (code, report) = match config.build(base_dir) {
        Ok((_, oracle)) => match execute(command, config, &oracle) {
            Ok(done) => done,
            Err(e) => error_report(command.name(), &e),
        },
        Err(e) => error_report(command.name(), &e),
    };
    let stdout = if options.json {
        report.render_json(options.digits)
    } else {
        report.render_text(options.digits)
    };
    Outcome { code, stdout }
}

fn error_report(command: &str, e: &Error) -> (i32, Report) {
    let code = match e {
        Error::NoPositiveBallWithin(_) => EXIT_NEGATIVE,
        Error::SplittingExhausted { .. } => EXIT_ORACLE_DEFECT,
        _ => EXIT_USAGE,
    };
    let kind = match e {
        Error::Domain(_) => "Domain",
        Error::Parameter(_) => "Parameter",
        Error::Parse(_) => "Parse",
        Error::NotPositive(_) => "NotPositive",
        Error::NoPositiveBallWithin(_) => "NoPositiveBallWithin",
        Error::SplittingExhausted { .. } => "SplittingExhausted",
        Error::UnsupportedSpace => "UnsupportedSpace",
    };
    let mut r = Report::new(command);
    r.push("error", Value::Text(kind.into()));
    r.push("message", Value::Text(e.to_string()));
    (code, r)
}

fn execute(
    command: &Command,
    config: &Config,
    oracle: &PositivityOracle,
) -> Result<(i32, Report), Error> {
    let space = oracle.space();
    let mut r = Report::new(command.name());
    r.push("oracle", Value::Text(oracle.label().to_string()));
    let code = match command {
        Command::Validate => {
            let report = validate_oracle(oracle, config.samples, config.depth, config.seed)?;
            for (name, tally) in [
                ("monotonicity", &report.monotonicity),
                ("splitting", &report.splitting),
                ("located", &report.located),
            ] {
                r.push(
                    name,
                    Value::Row(vec![
                        ("run", Value::Int(tally.run as u64)),
                        ("failed", Value::Int(tally.failed as u64)),
                    ]),
                );
            }
            for (i, cx) in report.counterexamples.iter().enumerate() {
                r.push(format!("counterexample[{i}]"), Value::Text(cx.to_string()));
            }
            r.push(
                "verdict",
                Value::Text(if report.passed() { "pass" } else { "fail" }.into()),
            );
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        Command::Distance(x) => {
            let x = space.parse_point(x)?;
            let b = distance(oracle, &x, config.tol_exp, &config.r_max)?;
            r.push("x", Value::Point(x));
            r.push("lo", Value::Rat(b.lo.clone()));
            r.push("hi", Value::Rat(b.hi.clone()));
            r.push("width", Value::Rat(b.width()));
            r.push("oracle_calls", Value::Int(b.oracle_calls as u64));
            EXIT_OK
        }
        Command::Point(ball) => {
            let ball = space.parse_ball(ball)?;
            let found = point_extract(oracle, &ball, config.tol_exp, config.depth)?;
            r.push("approx", Value::Point(found.approx.clone()));
            r.push("tolerance", Value::Rat(found.tolerance.clone()));
            r.push("chain_length", Value::Int(found.chain.len() as u64));
            for (i, b) in found.chain.iter().enumerate() {
                r.push(format!("chain[{i}]"), Value::Ball(b.clone()));
            }
            EXIT_OK
        }
        Command::Net(eps) => {
            let eps = parse_rat(eps)?;
            let net = epsilon_net(oracle, &eps, config.tol_exp, config.depth)?;
            r.push("epsilon", Value::Rat(net.epsilon.clone()));
            r.push("count", Value::Int(net.points.len() as u64));
            for (i, p) in net.points.iter().enumerate() {
                r.push(
                    format!("net[{i}]"),
                    Value::Row(vec![
                        ("approx", Value::Point(p.approx.clone())),
                        ("tolerance", Value::Rat(p.tolerance.clone())),
                        ("chain", Value::Int(p.chain.len() as u64)),
                    ]),
                );
            }
            EXIT_OK
        }
        Command::Complement(x) => {
            let x = space.parse_point(x)?;
            r.push("x", Value::Point(x.clone()));
            match metric_complement(oracle, &x, config.tol_exp)? {
                Complement::InComplement(delta) => {
                    r.push("verdict", Value::Text("InComplement".into()));
                    r.push("delta", Value::Rat(delta));
                }
                Complement::NotDetected => {
                    r.push("verdict", Value::Text("NotDetected".into()));
                    r.push("max_exp", Value::Int(config.tol_exp as u64));
                }
            }
            EXIT_OK
        }
        Command::Cover { ball, family } => {
            let a = space.parse_ball(ball)?;
            let u = family
                .iter()
                .map(|b| space.parse_ball(b))
                .collect::<Result<Vec<_>, _>>()?;
            r.push("a", Value::Ball(a.clone()));
            match space.kov_check(&a, &u, config.depth)? {
                CoverVerdict::Covered(w) => {
                    r.push("verdict", Value::Text("Covered".into()));
                    r.push("depth", Value::Int(w.depth as u64));
                    r.push("scale", Value::Rat(w.scale.clone()));
                    r.push("b", Value::Ball(w.b.clone()));
                    r.push("c", Value::Ball(w.c.clone()));
                    r.push("u0_size", Value::Int(w.u0.len() as u64));
                    for (i, m) in w.u0.iter().enumerate() {
                        r.push(format!("u0[{i}]"), Value::Ball(m.clone()));
                    }
                }
                CoverVerdict::Unknown { depth } => {
                    r.push("verdict", Value::Text("Unknown".into()));
                    r.push("depth", Value::Int(depth as u64));
                }
            }
            EXIT_OK
        }
    };
    Ok((code, r))
}
