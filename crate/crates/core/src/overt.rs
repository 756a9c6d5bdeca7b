//! Positivity oracles for overt closed sublocales, and a falsification
//! suite for their axioms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::FormalBall;
use crate::cover::MAX_NET_POINTS;
use crate::error::Result;
use crate::metric::{MetricSpace, Point};
use crate::rat::{least_dyadic_exponent, pow2_neg, Rat};

type Predicate = dyn Fn(&MetricSpace, &FormalBall) -> bool + Send + Sync;

/// A decidable positivity predicate on the formal balls of one space.
#[derive(Clone)]
pub struct PositivityOracle {
    space: MetricSpace,
    label: String,
    predicate: Arc<Predicate>,
}

impl PositivityOracle {
    pub fn new<F>(space: MetricSpace, label: impl Into<String>, predicate: F) -> Self
    where
        F: Fn(&MetricSpace, &FormalBall) -> bool + Send + Sync + 'static,
    {
        PositivityOracle {
            space,
            label: label.into(),
            predicate: Arc::new(predicate),
        }
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_positive(&self, b: &FormalBall) -> Result<bool> {
        self.space.check_ball(b)?;
        Ok((self.predicate)(&self.space, b))
    }
}

impl fmt::Debug for PositivityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PositivityOracle")
            .field("space", &self.space)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `smaller ≤ larger`, `P(smaller)`, but not `P(larger)`.
    Monotonicity {
        smaller: FormalBall,
        larger: FormalBall,
    },
    /// `P(ball)` yet no refinement up to `depth` extra levels is positive.
    Splitting { ball: FormalBall, depth: u32 },
    /// `inner < outer`, `P(inner)`, but not `P(outer)`.
    Located {
        inner: FormalBall,
        outer: FormalBall,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Monotonicity { smaller, larger } => {
                write!(
                    f,
                    "monotonicity: {smaller} <= {larger}, positive then not positive"
                )
            }
            Counterexample::Splitting { ball, depth } => {
                write!(
                    f,
                    "splitting: {ball} positive, no positive refinement within {depth} levels"
                )
            }
            Counterexample::Located { inner, outer } => {
                write!(f, "located: {inner} < {outer}, positive then not positive")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub run: usize,
    pub failed: usize,
}

impl CheckTally {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub monotonicity: CheckTally,
    pub splitting: CheckTally,
    pub located: CheckTally,
    pub counterexamples: Vec<Counterexample>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.monotonicity.passed() && self.splitting.passed() && self.located.passed()
    }
}

/// Keep at most this many counterexamples per report.
const MAX_REPORTED: usize = 16;

/// Runs the monotonicity, splitting and located-condition checks on
/// `sample_count` random balls each. Deterministic for a given seed.
pub fn validate_oracle(
    oracle: &PositivityOracle,
    sample_count: usize,
    depth: u32,
    seed: u64,
) -> Result<ValidationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = BallSampler::new(oracle.space());
    let mut report = ValidationReport::default();

    for _ in 0..sample_count {
        let (smaller, larger) = sampler.le_pair(&mut rng, false);
        report.monotonicity.run += 1;
        if oracle.is_positive(&smaller)? && !oracle.is_positive(&larger)? {
            report.monotonicity.failed += 1;
            record(
                &mut report,
                Counterexample::Monotonicity { smaller, larger },
            );
        }
    }

    for _ in 0..sample_count {
        let (inner, outer) = sampler.le_pair(&mut rng, true);
        report.located.run += 1;
        if oracle.is_positive(&inner)? && !oracle.is_positive(&outer)? {
            report.located.failed += 1;
            record(&mut report, Counterexample::Located { inner, outer });
        }
    }

    // Splitting needs positive balls; draw until one turns up, bounded.
    let mut attempts = 0;
    let mut checked = 0;
    while checked < sample_count && attempts < 20 * sample_count {
        attempts += 1;
        let b = sampler.ball(&mut rng);
        if !oracle.is_positive(&b)? {
            continue;
        }
        checked += 1;
        report.splitting.run += 1;
        if find_positive_refinement(oracle, &b, depth)?.is_none() {
            report.splitting.failed += 1;
            record(&mut report, Counterexample::Splitting { ball: b, depth });
        }
    }
    Ok(report)
}

fn record(report: &mut ValidationReport, cx: Counterexample) {
    if report.counterexamples.len() < MAX_REPORTED {
        report.counterexamples.push(cx);
    }
}

/// Escalates `k` from the least admissible scale for `b` up to `depth`
/// further levels and returns the first positive member of `refine(b, k)`.
pub(crate) fn find_positive_refinement(
    oracle: &PositivityOracle,
    b: &FormalBall,
    depth: u32,
) -> Result<Option<FormalBall>> {
    let space = oracle.space();
    let half = b.radius() / Rat::from_integer(2.into());
    let k0 = least_dyadic_exponent(&half);
    for extra in 0..=depth as i32 {
        let k = k0 + extra;
        if space.local_net_size(b.radius(), &pow2_neg(k)) > MAX_NET_POINTS {
            break;
        }
        for c in space.refine(b, k)? {
            if oracle.is_positive(&c)? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Random balls with dyadic-ish rational centers and radii.
struct BallSampler<'a> {
    space: &'a MetricSpace,
}

const LINE_HALF_WIDTH: i64 = 8;
const GRAIN: i64 = 16;

impl<'a> BallSampler<'a> {
    fn new(space: &'a MetricSpace) -> Self {
        BallSampler { space }
    }

    fn coord(&self, rng: &mut ChaCha8Rng, half_width: &Rat) -> Rat {
        // Uniform on the grid of step 1/GRAIN within [-half_width, half_width].
        let n = (half_width * Rat::from_integer(GRAIN.into()))
            .floor()
            .to_integer();
        let n: i64 = i64::try_from(n).unwrap_or(i64::MAX / 2);
        Rat::new(rng.gen_range(-n..=n).into(), GRAIN.into())
    }

    fn point(&self, rng: &mut ChaCha8Rng) -> Point {
        match self.space {
            MetricSpace::Line => {
                Point::scalar(self.coord(rng, &Rat::from_integer(LINE_HALF_WIDTH.into())))
            }
            MetricSpace::Box { dim, bound } => {
                Point::Coords((0..*dim).map(|_| self.coord(rng, bound)).collect())
            }
            MetricSpace::Finite { matrix } => Point::Index(rng.gen_range(0..matrix.len())),
        }
    }

    fn radius(&self, rng: &mut ChaCha8Rng) -> Rat {
        Rat::new(rng.gen_range(1..=4 * GRAIN).into(), GRAIN.into())
    }

    fn ball(&self, rng: &mut ChaCha8Rng) -> FormalBall {
        FormalBall::new(self.point(rng), self.radius(rng)).expect("positive radius")
    }

    /// A pair `smaller ≤ larger` (strictly `<` when `strict`): the larger
    /// center is drawn first, the smaller one near it with room to spare.
    fn le_pair(&self, rng: &mut ChaCha8Rng, strict: bool) -> (FormalBall, FormalBall) {
        loop {
            let larger = self.ball(rng);
            let smaller_radius = self.radius(rng);
            if smaller_radius >= *larger.radius() {
                continue;
            }
            let slack = larger.radius() - &smaller_radius;
            let candidates: Vec<Point> = (0..8)
                .map(|_| self.point_near(rng, larger.center(), &slack))
                .collect();
            for c in candidates {
                let d = self.space.dist_unchecked(&c, larger.center());
                let ok = if strict { d < slack } else { d <= slack };
                if ok {
                    let smaller =
                        FormalBall::new(c, smaller_radius.clone()).expect("positive radius");
                    return (smaller, larger);
                }
            }
        }
    }

    fn point_near(&self, rng: &mut ChaCha8Rng, center: &Point, slack: &Rat) -> Point {
        match (self.space, center) {
            (MetricSpace::Finite { .. }, _) => self.point(rng),
            (_, Point::Coords(cs)) => {
                let coords = cs
                    .iter()
                    .map(|c| {
                        let offset = self.coord(rng, slack);
                        let v = c + offset;
                        match self.space {
                            MetricSpace::Box { bound, .. } => {
                                v.clamp(-bound.clone(), bound.clone())
                            }
                            _ => v,
                        }
                    })
                    .collect();
                Point::Coords(coords)
            }
            _ => unreachable!("coordinate spaces have coordinate points"),
        }
    }
}
