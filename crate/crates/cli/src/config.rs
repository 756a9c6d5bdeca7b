//! Line-oriented space/oracle configuration.
//!
//! ```text
//! # comment
//! space line | space box DIM BOUND | space finite PATH
//! oracle interval A B | oracle union [A1,B1] [A2,B2] ... | oracle points P1 P2 ...
//! oracle brouwer true|false | oracle broken
//! tol EXP
//! rmax R
//! depth N
//! seed N
//! samples N
//! ```

use std::path::{Path, PathBuf};

use located_core::algorithms::{default_r_max, DEFAULT_DEPTH, DEFAULT_TOL_EXP};
use located_core::rat::parse_rat;
use located_core::{MetricSpace, OracleSpec, PositivityOracle, Rat};
use num_traits::Signed;
use thiserror::Error;

pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceDecl {
    Line,
    Box { dim: usize, bound: Rat },
    Finite(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleDecl {
    Interval(Rat, Rat),
    Union(Vec<(Rat, Rat)>),
    /// Points as written; they are interpreted once the space is known.
    Points(Vec<String>),
    Brouwer(bool),
    Broken,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub space: SpaceDecl,
    pub oracle: OracleDecl,
    pub tol_exp: u32,
    pub r_max: Rat,
    pub depth: u32,
    pub seed: u64,
    pub samples: usize,
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut space = None;
    let mut oracle = None;
    let mut tol_exp = DEFAULT_TOL_EXP;
    let mut r_max = default_r_max();
    let mut depth = DEFAULT_DEPTH;
    let mut seed = 0u64;
    let mut samples = DEFAULT_SAMPLES;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ConfigError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let args = &words[1..];
        match words[0] {
            "space" => {
                if space.is_some() {
                    return Err(err("duplicate space declaration".into()));
                }
                space = Some(parse_space(args).map_err(err)?);
            }
            "oracle" => {
                if oracle.is_some() {
                    return Err(err("duplicate oracle declaration".into()));
                }
                oracle = Some(parse_oracle(args).map_err(err)?);
            }
            "tol" => {
                tol_exp = single(args, "tol").and_then(parse_num).map_err(err)?;
                if tol_exp == 0 {
                    return Err(err("tol must be at least 1".into()));
                }
            }
            "rmax" => {
                r_max = single(args, "rmax").and_then(rational).map_err(err)?;
                if !r_max.is_positive() {
                    return Err(err("rmax must be positive".into()));
                }
            }
            "depth" => depth = single(args, "depth").and_then(parse_num).map_err(err)?,
            "seed" => seed = single(args, "seed").and_then(parse_num).map_err(err)?,
            "samples" => samples = single(args, "samples").and_then(parse_num).map_err(err)?,
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let space = space.ok_or(ConfigError {
        line: end,
        message: "missing space declaration".into(),
    })?;
    let oracle = oracle.ok_or(ConfigError {
        line: end,
        message: "missing oracle declaration".into(),
    })?;
    Ok(Config {
        space,
        oracle,
        tol_exp,
        r_max,
        depth,
        seed,
        samples,
    })
}

fn single<'a>(args: &[&'a str], key: &str) -> Result<&'a str, String> {
    match args {
        [one] => Ok(one),
        _ => Err(format!("`{key}` takes exactly one value")),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("malformed number `{s}`"))
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_space(args: &[&str]) -> Result<SpaceDecl, String> {
    match args {
        ["line"] => Ok(SpaceDecl::Line),
        ["box", dim, bound] => {
            let dim: usize = parse_num(dim)?;
            let bound = rational(bound)?;
            if dim == 0 || !bound.is_positive() {
                return Err("box needs a positive dimension and bound".into());
            }
            Ok(SpaceDecl::Box { dim, bound })
        }
        ["finite", path] => Ok(SpaceDecl::Finite(PathBuf::from(path))),
        _ => Err("expected `space line`, `space box DIM BOUND` or `space finite PATH`".into()),
    }
}

fn ordered_piece(a: Rat, b: Rat) -> Result<(Rat, Rat), String> {
    if a > b {
        return Err(format!("interval [{a},{b}] has a > b"));
    }
    Ok((a, b))
}

fn parse_oracle(args: &[&str]) -> Result<OracleDecl, String> {
    match args {
        ["interval", a, b] => {
            let (a, b) = ordered_piece(rational(a)?, rational(b)?)?;
            Ok(OracleDecl::Interval(a, b))
        }
        ["union", pieces @ ..] if !pieces.is_empty() => {
            let pieces = pieces
                .iter()
                .map(|p| {
                    let inner = p
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(|| format!("union piece `{p}` must look like [A,B]"))?;
                    let (a, b) = inner
                        .split_once(',')
                        .ok_or_else(|| format!("union piece `{p}` lacks `,`"))?;
                    ordered_piece(rational(a)?, rational(b)?)
                })
                .collect::<Result<_, _>>()?;
            Ok(OracleDecl::Union(pieces))
        }
        ["points", points @ ..] if !points.is_empty() => {
            for p in points {
                for part in p.split(',') {
                    rational(part)?;
                }
            }
            Ok(OracleDecl::Points(
                points.iter().map(|s| s.to_string()).collect(),
            ))
        }
        ["brouwer", "true"] => Ok(OracleDecl::Brouwer(true)),
        ["brouwer", "false"] => Ok(OracleDecl::Brouwer(false)),
        ["broken"] => Ok(OracleDecl::Broken),
        _ => Err(
            "expected `oracle interval A B`, `oracle union [A,B] ...`, `oracle points P ...`, \
                  `oracle brouwer true|false` or `oracle broken`"
                .into(),
        ),
    }
}

impl Config {
    /// Builds the space and oracle; relative matrix paths resolve against `base_dir`.
    pub fn build(&self, base_dir: &Path) -> located_core::Result<(OracleSpec, PositivityOracle)> {
        let space = match &self.space {
            SpaceDecl::Line => MetricSpace::Line,
            SpaceDecl::Box { dim, bound } => MetricSpace::boxed(*dim, bound.clone())?,
            SpaceDecl::Finite(path) => {
                let path = base_dir.join(path);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    located_core::Error::Parameter(format!("cannot read {}: {e}", path.display()))
                })?;
                MetricSpace::finite_from_text(&text)?
            }
        };
        let spec = match &self.oracle {
            OracleDecl::Interval(a, b) => OracleSpec::Interval {
                a: a.clone(),
                b: b.clone(),
            },
            OracleDecl::Union(pieces) => OracleSpec::Union(pieces.clone()),
            OracleDecl::Points(points) => OracleSpec::Points(
                points
                    .iter()
                    .map(|p| space.parse_point(p))
                    .collect::<Result<_, _>>()?,
            ),
            OracleDecl::Brouwer(flag) => OracleSpec::Brouwer(*flag),
            OracleDecl::Broken => OracleSpec::Broken,
        };
        let oracle = spec.build(&space)?;
        Ok((spec, oracle))
    }
}
