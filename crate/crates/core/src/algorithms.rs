//! Algorithms extracted from the locatedness and compactness arguments:
//! the dichotomy for located sets, point extraction from a positive ball,
//! certified distance brackets, metric-complement detection and ε-nets.

use num_traits::{Signed, Zero};

use crate::ball::FormalBall;
use crate::error::{Error, Result};
use crate::metric::{GlobalNet, Point};
use crate::overt::{find_positive_refinement, PositivityOracle};
use crate::rat::{int, pow2_neg, Rat};

pub const DEFAULT_TOL_EXP: u32 = 20;
pub const DEFAULT_DEPTH: u32 = 12;

pub fn default_r_max() -> Rat {
    pow2_neg(-16)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// `Y ∩ B(x, δ) = ∅`.
    Empty,
    /// `Y` meets `B(x, ε)`.
    Meets,
}

/// Decides `Y ∩ B(x,δ) = ∅` or `Y ≬ B(x,ε)` for `0 < δ < ε`.
///
/// With a decidable oracle a single query at `δ` settles it: a positive
/// `B(x; δ)` contains a point of `Y`, which then lies in `B(x, ε)` as well.
pub fn dichotomy(
    oracle: &PositivityOracle,
    x: &Point,
    delta: &Rat,
    eps: &Rat,
) -> Result<Dichotomy> {
    if !delta.is_positive() || delta >= eps {
        return Err(Error::Parameter(format!(
            "dichotomy needs 0 < delta < eps, got {delta}, {eps}"
        )));
    }
    let b = FormalBall::new(x.clone(), delta.clone())?;
    Ok(if oracle.is_positive(&b)? {
        Dichotomy::Meets
    } else {
        Dichotomy::Empty
    })
}

/// A certified bracket `lo ≤ d(x, Y) < hi` (with `lo = 0` allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceBounds {
    pub lo: Rat,
    pub hi: Rat,
    pub oracle_calls: usize,
}

impl DistanceBounds {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }
}

/// Brackets `d(x, Y)` to width `2^-tol_exp`.
///
/// Doubles `r` from `min(1, r_max)` until `B(x; r)` is positive, then bisects
/// keeping `B(x; hi)` positive and `B(x; lo)` not positive (or `lo = 0`).
pub fn distance(
    oracle: &PositivityOracle,
    x: &Point,
    tol_exp: u32,
    r_max: &Rat,
) -> Result<DistanceBounds> {
    bracket_distance(oracle, x, tol_exp, r_max, |_, _| {})
}

fn bracket_distance<F>(
    oracle: &PositivityOracle,
    x: &Point,
    tol_exp: u32,
    r_max: &Rat,
    mut on_step: F,
) -> Result<DistanceBounds>
where
    F: FnMut(&Rat, &Rat),
{
    if tol_exp == 0 {
        return Err(Error::Parameter("tol_exp must be at least 1".into()));
    }
    if !r_max.is_positive() {
        return Err(Error::Parameter(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    oracle.space().check_point(x)?;
    let mut calls = 0usize;
    let mut positive_at = |r: &Rat| -> Result<bool> {
        calls += 1;
        oracle.is_positive(&FormalBall::new(x.clone(), r.clone())?)
    };

    let mut lo = Rat::zero();
    let mut r = int(1).min(r_max.clone());
    let mut hi = loop {
        if positive_at(&r)? {
            break r;
        }
        if &r >= r_max {
            return Err(Error::NoPositiveBallWithin(r_max.clone()));
        }
        lo = r.clone();
        r = (&r * int(2)).min(r_max.clone());
    };
    on_step(&lo, &hi);

    let tol = pow2_neg(tol_exp as i32);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / int(2);
        if positive_at(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
        on_step(&lo, &hi);
    }
    Ok(DistanceBounds {
        lo,
        hi,
        oracle_calls: calls,
    })
}

/// A shrinking chain of positive balls; `approx` is the center of the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointApprox {
    pub chain: Vec<FormalBall>,
    pub approx: Point,
    pub tolerance: Rat,
}

impl PointApprox {
    pub fn last(&self) -> &FormalBall {
        self.chain.last().expect("chain is nonempty")
    }
}

/// Extracts a point of `Y` from the positive ball `b`, to within `2^-tol_exp`.
pub fn point_extract(
    oracle: &PositivityOracle,
    b: &FormalBall,
    tol_exp: u32,
    depth: u32,
) -> Result<PointApprox> {
    point_extract_within(oracle, b, &pow2_neg(tol_exp as i32), depth)
}

/// Builds `a_1 = b ≥ a_2 ≥ …` with each `a_{n+1}` a positive member of
/// `refine(a_n, k)`, `k` escalating from the least scale at most half the
/// radius, until the radius drops to `tolerance`.
pub fn point_extract_within(
    oracle: &PositivityOracle,
    b: &FormalBall,
    tolerance: &Rat,
    depth: u32,
) -> Result<PointApprox> {
    if !tolerance.is_positive() {
        return Err(Error::Parameter("tolerance must be positive".into()));
    }
    if !oracle.is_positive(b)? {
        return Err(Error::NotPositive(b.clone()));
    }
    let mut chain = vec![b.clone()];
    loop {
        let current = chain.last().expect("chain is nonempty");
        if current.radius() <= tolerance {
            break;
        }
        match find_positive_refinement(oracle, current, depth)? {
            Some(next) => chain.push(next),
            None => {
                return Err(Error::SplittingExhausted {
                    ball: current.clone(),
                    depth,
                })
            }
        }
    }
    let approx = chain.last().expect("chain is nonempty").center().clone();
    Ok(PointApprox {
        chain,
        approx,
        tolerance: tolerance.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Complement {
    /// `B(x, δ) ∩ Y = ∅`, so `x` lies in the metric complement.
    InComplement(Rat),
    /// Every tried ball was positive: `d(x, Y) < 2^-max_exp`.
    NotDetected,
}

/// Tries `δ = 1/2, 1/4, …, 2^-max_exp` and reports the first non-positive
/// `B(x; δ)`.
pub fn metric_complement(oracle: &PositivityOracle, x: &Point, max_exp: u32) -> Result<Complement> {
    if max_exp == 0 {
        return Err(Error::Parameter("max_exp must be at least 1".into()));
    }
    for e in 1..=max_exp {
        let delta = pow2_neg(e as i32);
        if !oracle.is_positive(&FormalBall::new(x.clone(), delta.clone())?)? {
            return Ok(Complement::InComplement(delta));
        }
    }
    Ok(Complement::NotDetected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetResult {
    pub epsilon: Rat,
    pub points: Vec<PointApprox>,
}

/// An ε-net of `Y` for a totally bounded space.
///
/// Centers come from `global_net(ε/4)`; each center whose `B(z; ε/2)` is
/// positive yields an extracted point at tolerance `2^-tol_exp ≤ ε/4`.
/// An extracted point within `ε/4` of an already kept one is dropped. Each
/// `y ∈ Y` is within `ε/4` of a center, hence within `3ε/4` of that center's
/// extracted point, hence within `ε` of a kept one.
pub fn epsilon_net(
    oracle: &PositivityOracle,
    eps: &Rat,
    tol_exp: u32,
    depth: u32,
) -> Result<NetResult> {
    if !eps.is_positive() {
        return Err(Error::Parameter(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    let quarter = eps / int(4);
    let tolerance = pow2_neg(tol_exp as i32);
    if tolerance > quarter {
        return Err(Error::Parameter(format!(
            "2^-{tol_exp} exceeds epsilon/4 = {quarter}"
        )));
    }
    let space = oracle.space();
    let centers = match space.global_net(&quarter)? {
        GlobalNet::Net(centers) => centers,
        GlobalNet::Unbounded => return Err(Error::UnsupportedSpace),
    };
    let half = eps / int(2);
    let mut points: Vec<PointApprox> = Vec::new();
    for z in centers {
        let b = FormalBall::new(z, half.clone())?;
        if !oracle.is_positive(&b)? {
            continue;
        }
        let found = point_extract_within(oracle, &b, &tolerance, depth)?;
        let redundant = points
            .iter()
            .any(|kept| space.dist_unchecked(&kept.approx, &found.approx) <= quarter);
        if !redundant {
            points.push(found);
        }
    }
    Ok(NetResult {
        epsilon: eps.clone(),
        points,
    })
}
