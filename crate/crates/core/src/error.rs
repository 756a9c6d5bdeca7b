use thiserror::Error;

use crate::ball::FormalBall;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A point or ball does not belong to the metric space it was used with.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ball {0} is not positive")]
    NotPositive(FormalBall),
    /// No ball B(x, r) with r ≤ r_max was positive: Y is empty or farther than r_max.
    #[error("no positive ball within r_max = {0}")]
    NoPositiveBallWithin(Rat),
    /// The oracle was positive on `ball` but on no refinement within `depth` extra levels.
    #[error("splitting exhausted at {ball} after {depth} extra levels (oracle defect)")]
    SplittingExhausted { ball: FormalBall, depth: u32 },
    #[error("space is not totally bounded")]
    UnsupportedSpace,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
