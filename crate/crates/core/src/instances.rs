//! Shipped positivity oracles with closed-form ground truth.
//!
//! Every semantic oracle decides `P(B(q; r))` as "the open ball meets the
//! closed set Y", which is `D(q) < r` for the closed-form distance `D` to Y.
//! The oracles themselves use overlap tests rather than `D`, so the two
//! routes can be checked against each other.

use num_traits::Zero;

use crate::ball::FormalBall;
use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Point};
use crate::overt::PositivityOracle;
use crate::rat::{int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSpec {
    /// The cube `[a, b]^dim` (an interval on the line).
    Interval {
        a: Rat,
        b: Rat,
    },
    Union(Vec<(Rat, Rat)>),
    Points(Vec<Point>),
    /// The closed sublocale with its proposition decided: `[0,1]` when
    /// `true`, `[0,2]` when `false`.
    Brouwer(bool),
    /// Violates monotonicity; a validator fixture.
    Broken,
}

impl OracleSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            OracleSpec::Interval { a, b } => check_piece(a, b),
            OracleSpec::Union(pieces) => {
                if pieces.is_empty() {
                    return Err(Error::Parameter("union needs at least one interval".into()));
                }
                pieces.iter().try_for_each(|(a, b)| check_piece(a, b))
            }
            OracleSpec::Points(ys) if ys.is_empty() => Err(Error::Parameter(
                "points oracle needs at least one point".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn build(&self, space: &MetricSpace) -> Result<PositivityOracle> {
        self.validate()?;
        match self {
            OracleSpec::Interval { a, b } => interval_oracle(space, a.clone(), b.clone()),
            OracleSpec::Union(pieces) => union_oracle(space, pieces.clone()),
            OracleSpec::Points(ys) => points_oracle(space, ys.clone()),
            OracleSpec::Brouwer(flag) => {
                require_line(space)?;
                Ok(brouwer_oracle(*flag))
            }
            OracleSpec::Broken => {
                require_line(space)?;
                Ok(broken_oracle())
            }
        }
    }

    /// Distance from `x` to the intended closed set; `None` for the broken
    /// oracle, which has no intended set.
    pub fn closed_form_distance(&self, space: &MetricSpace, x: &Point) -> Result<Option<Rat>> {
        space.check_point(x)?;
        Ok(match self {
            OracleSpec::Interval { a, b } => Some(cube_distance(x, a, b)),
            OracleSpec::Union(pieces) => pieces.iter().map(|(a, b)| cube_distance(x, a, b)).min(),
            OracleSpec::Points(ys) => ys
                .iter()
                .map(|y| space.dist(x, y))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min(),
            OracleSpec::Brouwer(flag) => Some(cube_distance(x, &int(0), &brouwer_right_end(*flag))),
            OracleSpec::Broken => None,
        })
    }
}

fn check_piece(a: &Rat, b: &Rat) -> Result<()> {
    if a > b {
        return Err(Error::Parameter(format!("interval [{a},{b}] has a > b")));
    }
    Ok(())
}

fn require_coords(space: &MetricSpace) -> Result<()> {
    if space.dim().is_none() {
        return Err(Error::Parameter(format!(
            "interval oracles need a coordinate space, not {space}"
        )));
    }
    Ok(())
}

fn require_line(space: &MetricSpace) -> Result<()> {
    if *space != MetricSpace::Line {
        return Err(Error::Parameter(format!(
            "this oracle lives on the line, not {space}"
        )));
    }
    Ok(())
}

fn cube_distance(x: &Point, a: &Rat, b: &Rat) -> Rat {
    let coords = x.coords().expect("coordinate point");
    coords
        .iter()
        .map(|q| (a - q).max(q - b).max(Rat::zero()))
        .max()
        .unwrap_or_else(Rat::zero)
}

/// `B(q; r)` meets `[a, b]^dim` iff `q_i − r < b` and `q_i + r > a` on every axis.
fn cube_overlaps(ball: &FormalBall, a: &Rat, b: &Rat) -> bool {
    let r = ball.radius();
    ball.center()
        .coords()
        .expect("coordinate point")
        .iter()
        .all(|q| &(q - r) < b && &(q + r) > a)
}

pub fn interval_oracle(space: &MetricSpace, a: Rat, b: Rat) -> Result<PositivityOracle> {
    require_coords(space)?;
    check_piece(&a, &b)?;
    let label = format!("interval [{a},{b}]");
    Ok(PositivityOracle::new(
        space.clone(),
        label,
        move |_, ball| cube_overlaps(ball, &a, &b),
    ))
}

pub fn union_oracle(space: &MetricSpace, pieces: Vec<(Rat, Rat)>) -> Result<PositivityOracle> {
    require_coords(space)?;
    OracleSpec::Union(pieces.clone()).validate()?;
    let label = format!(
        "union {}",
        pieces
            .iter()
            .map(|(a, b)| format!("[{a},{b}]"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(PositivityOracle::new(
        space.clone(),
        label,
        move |_, ball| pieces.iter().any(|(a, b)| cube_overlaps(ball, a, b)),
    ))
}

pub fn points_oracle(space: &MetricSpace, ys: Vec<Point>) -> Result<PositivityOracle> {
    OracleSpec::Points(ys.clone()).validate()?;
    for y in &ys {
        space.check_point(y)?;
    }
    let label = format!(
        "points {}",
        ys.iter()
            .map(|y| y.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(PositivityOracle::new(
        space.clone(),
        label,
        move |space, ball| {
            ys.iter()
                .any(|y| space.dist_unchecked(ball.center(), y) < *ball.radius())
        },
    ))
}

fn brouwer_right_end(flag: bool) -> Rat {
    if flag {
        int(1)
    } else {
        int(2)
    }
}

/// The decided form of the non-overt example on the line: the open
/// `{(p,0) | p<0} ∪ {(2,q) | q>2} ∪ {(1,q) | q>1 and flag}` leaves
/// `[0,1]` when the flag holds and `[0,2]` otherwise.
pub fn brouwer_oracle(flag: bool) -> PositivityOracle {
    let right = brouwer_right_end(flag);
    let zero = int(0);
    PositivityOracle::new(
        MetricSpace::Line,
        format!("brouwer {flag}"),
        move |_, ball| cube_overlaps(ball, &zero, &right),
    )
}

/// Positive on balls of radius at most 1 meeting `[0,1]`, and nowhere else,
/// so `B(0;1) ≤ B(0;2)` with the first positive and the second not.
pub fn broken_oracle() -> PositivityOracle {
    let (zero, one) = (int(0), int(1));
    PositivityOracle::new(MetricSpace::Line, "broken", move |_, ball| {
        *ball.radius() <= one && cube_overlaps(ball, &zero, &one)
    })
}
