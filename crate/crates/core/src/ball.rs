//! Formal balls of the localic completion and their order relations.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, Point};
use crate::rat::{parse_rat, pow2_neg, Rat};

/// The basic open `b(center, radius)`; the radius is strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalBall {
    center: Point,
    radius: Rat,
}

/// A K-finite family of balls. Duplicates are allowed.
pub type BallSet = Vec<FormalBall>;

impl FormalBall {
    pub fn new(center: Point, radius: Rat) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Parameter(format!(
                "ball radius must be positive, got {radius}"
            )));
        }
        Ok(FormalBall { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }
}

impl fmt::Display for FormalBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({};{})", self.center, self.radius)
    }
}

impl MetricSpace {
    pub fn check_ball(&self, b: &FormalBall) -> Result<()> {
        self.check_point(&b.center)
    }

    /// Parses the literal `B(center;radius)`.
    pub fn parse_ball(&self, s: &str) -> Result<FormalBall> {
        let s = s.trim();
        let inner = s
            .strip_prefix("B(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "ball literal must look like B(center;radius), got `{s}`"
                ))
            })?;
        let (c, r) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("ball literal `{s}` lacks `;`")))?;
        FormalBall::new(self.parse_point(c)?, parse_rat(r)?)
    }

    /// `a < b` iff `d(a, b) < r_b − r_a`.
    pub fn ball_lt(&self, a: &FormalBall, b: &FormalBall) -> Result<bool> {
        Ok(self.dist(&a.center, &b.center)? < &b.radius - &a.radius)
    }

    /// `a ≤ b` iff `d(a, b) ≤ r_b − r_a`. Exact distances make this
    /// equivalent to `d < t` for every `t > r_b − r_a`.
    pub fn ball_le(&self, a: &FormalBall, b: &FormalBall) -> Result<bool> {
        Ok(self.dist(&a.center, &b.center)? <= &b.radius - &a.radius)
    }

    /// `U < V`: every member of `U` is strictly below some member of `V`.
    pub fn set_lt(&self, u: &[FormalBall], v: &[FormalBall]) -> Result<bool> {
        for a in u {
            if !self.below_some(a, v, Self::ball_lt)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership of `c` in `U_≤ ∩ V_≤`.
    pub fn in_down_meet(&self, c: &FormalBall, u: &[FormalBall], v: &[FormalBall]) -> Result<bool> {
        Ok(self.below_some(c, u, Self::ball_le)? && self.below_some(c, v, Self::ball_le)?)
    }

    fn below_some(
        &self,
        a: &FormalBall,
        v: &[FormalBall],
        rel: fn(&Self, &FormalBall, &FormalBall) -> Result<bool>,
    ) -> Result<bool> {
        for b in v {
            if rel(self, a, b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Balls of radius `2^-k` centered at net points deep enough inside `b`
    /// that each is `≤ b`. Requires `2^-k ≤ radius(b)/2`.
    pub fn refine(&self, b: &FormalBall, k: i32) -> Result<BallSet> {
        self.check_ball(b)?;
        let step = pow2_neg(k);
        if step > &b.radius / Rat::from_integer(2.into()) {
            return Err(Error::Parameter(format!(
                "refine scale 2^-{k} exceeds half the radius of {b}"
            )));
        }
        let reach = &b.radius - &step;
        Ok(self
            .local_net(&b.center, &b.radius, &step)?
            .into_iter()
            .filter(|z| self.dist_unchecked(z, &b.center) <= reach)
            .map(|z| FormalBall {
                center: z,
                radius: step.clone(),
            })
            .collect())
    }
}
