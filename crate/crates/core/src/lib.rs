//! Located distance functions, point extraction and ε-nets for overt closed
//! sublocales of the localic completion of a metric space.
//!
//! A closed sublocale is presented by a decidable [`PositivityOracle`] on the
//! formal balls `B(x; r)` of an exact-rational [`MetricSpace`]. From it the
//! [`algorithms`] module computes certified rational brackets for `d(x, Y)`,
//! shrinking chains of positive balls converging to points of `Y`, and
//! ε-nets when the space is totally bounded. [`cover`] certifies elementary
//! covers of balls by finite families.

pub mod algorithms;
pub mod ball;
pub mod cover;
pub mod error;
pub mod instances;
pub mod metric;
pub mod overt;
pub mod rat;

pub use algorithms::{
    dichotomy, distance, epsilon_net, metric_complement, point_extract, point_extract_within,
    Complement, Dichotomy, DistanceBounds, NetResult, PointApprox,
};
pub use ball::{BallSet, FormalBall};
pub use cover::{CoverVerdict, CoverWitness};
pub use error::{Error, Result};
pub use instances::OracleSpec;
pub use metric::{GlobalNet, MetricSpace, Point};
pub use overt::{validate_oracle, Counterexample, PositivityOracle, ValidationReport};
pub use rat::Rat;
