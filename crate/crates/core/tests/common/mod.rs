//! Ground truth computed without the library: closed-form distances to
//! intervals and point sets on the line, and an exact slack computation for
//! covers of an interval by open intervals.

#![allow(dead_code)]

use located_core::rat::{int, rat};
use located_core::{FormalBall, Point, Rat};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn interval_distance(x: &Rat, a: &Rat, b: &Rat) -> Rat {
    let mut d = Rat::zero();
    if x < a {
        d = a - x;
    }
    if x > b {
        d = x - b;
    }
    d
}

pub fn union_distance(x: &Rat, pieces: &[(Rat, Rat)]) -> Rat {
    pieces
        .iter()
        .map(|(a, b)| interval_distance(x, a, b))
        .min()
        .unwrap()
}

pub fn points_distance(x: &Rat, ys: &[Rat]) -> Rat {
    ys.iter().map(|y| (x - y).abs()).min().unwrap()
}

pub fn scalar(p: &Point) -> Rat {
    p.coords().expect("line point")[0].clone()
}

pub fn line_ball(c: Rat, r: Rat) -> FormalBall {
    FormalBall::new(Point::scalar(c), r).unwrap()
}

/// A random rational `n/den` with `|n/den| ≤ half_width`.
pub fn rand_rat(rng: &mut ChaCha8Rng, half_width: i64, den: i64) -> Rat {
    rat(rng.gen_range(-half_width * den..=half_width * den), den)
}

pub fn rand_pos_rat(rng: &mut ChaCha8Rng, max: i64, den: i64) -> Rat {
    rat(rng.gen_range(1..=max * den), den)
}

pub fn rand_union(rng: &mut ChaCha8Rng) -> Vec<(Rat, Rat)> {
    let n = rng.gen_range(1..=4);
    (0..n)
        .map(|_| {
            let a = rand_rat(rng, 6, 12);
            let len = rat(rng.gen_range(0..=36), 12);
            let b = &a + len;
            (a, b)
        })
        .collect()
}

pub fn rand_points(rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let n = rng.gen_range(1..=5);
    (0..n).map(|_| rand_rat(rng, 6, 24)).collect()
}

/// Tent value `r − |p − c|` of the best member at `p`: positive iff `p`
/// lies in the union of the open intervals.
pub fn envelope(p: &Rat, members: &[(Rat, Rat)]) -> Rat {
    members
        .iter()
        .map(|(c, r)| r - (p - c).abs())
        .max()
        .unwrap()
}

/// Points where the envelope over `[lo, hi]` can attain its minimum: the
/// ends, member ends and crossings of a falling and a rising tent side.
pub fn envelope_candidates(lo: &Rat, hi: &Rat, members: &[(Rat, Rat)]) -> Vec<Rat> {
    let mut cands = vec![lo.clone(), hi.clone()];
    for (ci, ri) in members {
        cands.push(ci - ri);
        cands.push(ci + ri);
        cands.push(ci.clone());
        for (cj, rj) in members {
            // ri − (p − ci) = rj + (p − cj)
            cands.push((ri + ci - rj + cj) / int(2));
        }
    }
    cands.retain(|p| p >= lo && p <= hi);
    cands
}

/// Minimum over the closed interval `[c − r, c + r]` of the envelope.
pub fn closed_cover_slack(c: &Rat, r: &Rat, members: &[(Rat, Rat)]) -> Rat {
    let (lo, hi) = (c - r, c + r);
    envelope_candidates(&lo, &hi, members)
        .iter()
        .map(|p| envelope(p, members))
        .min()
        .unwrap()
}

/// A point of the open interval `(c − r, c + r)` outside every member, if
/// the candidate set (plus midpoints between candidates) finds one.
pub fn uncovered_interior_point(c: &Rat, r: &Rat, members: &[(Rat, Rat)]) -> Option<Rat> {
    let (lo, hi) = (c - r, c + r);
    let mut cands = envelope_candidates(&lo, &hi, members);
    cands.sort();
    cands.dedup();
    let mids: Vec<Rat> = cands.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    cands.extend(mids);
    cands
        .into_iter()
        .filter(|p| p > &lo && p < &hi)
        .find(|p| !envelope(p, members).is_positive())
}
