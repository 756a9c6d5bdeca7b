//! Certificates for the elementary cover `a ◁κ U` with K-finite `U`.
//!
//! The check is sound but incomplete: `Covered` carries a witness that can be
//! re-verified on its own, `Unknown` refutes nothing.

use crate::ball::{BallSet, FormalBall};
use crate::error::{Error, Result};
use crate::metric::MetricSpace;
use crate::rat::{pow2_neg, Rat};

pub const DEFAULT_MAX_DEPTH: u32 = 12;

/// Nets larger than this stop the depth escalation.
pub const MAX_NET_POINTS: u128 = 1 << 22;

/// `U0 ∈ A(b, c)` with `U0 < U`, for the concentric chain `b < c < a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub b: FormalBall,
    pub c: FormalBall,
    pub u0: BallSet,
    pub scale: Rat,
    pub depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum CoverVerdict {
    Covered(CoverWitness),
    /// No witness up to `depth`. The search stops early once a point of
    /// the closure of `a` is found outside every member.
    Unknown {
        depth: u32,
    },
}

impl CoverVerdict {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverVerdict::Covered(_))
    }
}

impl MetricSpace {
    /// Net-based sufficient condition for `b ⊲_eps U0`: every net point `z`
    /// (step `eps/2`) at depth `eps` inside `b` has `B(z; eps) ≤ u` for some
    /// member `u`. When it holds, every point at depth `eps` in `b` lies at
    /// least `eps/2` inside some member.
    pub fn balcov_check(&self, b: &FormalBall, u0: &[FormalBall], eps: &Rat) -> Result<bool> {
        self.check_ball(b)?;
        if eps > b.radius() {
            return Err(Error::Parameter(format!(
                "scale {eps} exceeds radius of {b}"
            )));
        }
        let half = eps / Rat::from_integer(2.into());
        let reach = b.radius() - eps;
        for z in self.local_net(b.center(), b.radius(), &half)? {
            if self.dist_unchecked(&z, b.center()) > reach {
                continue;
            }
            let q = FormalBall::new(z, eps.clone())?;
            let mut below = false;
            for u in u0 {
                if self.ball_le(&q, u)? {
                    below = true;
                    break;
                }
            }
            if !below {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches depths `1..=max_depth` for a cover certificate of `a` by `U`.
    ///
    /// At depth `d` the chain is `b = B(x; r(1-2^-d))`, `c = B(x; r(1-2^-d-1))`
    /// and the scale is `r·2^-(d+1)`. Besides the witness conditions, the
    /// scale net over the closure of `a` must sit strictly below `U`, so a
    /// `Covered` verdict means every point of `a` lies inside some member.
    pub fn kov_check(
        &self,
        a: &FormalBall,
        u: &[FormalBall],
        max_depth: u32,
    ) -> Result<CoverVerdict> {
        self.check_ball(a)?;
        for m in u {
            self.check_ball(m)?;
        }
        if max_depth == 0 {
            return Err(Error::Parameter("max_depth must be at least 1".into()));
        }
        let one = Rat::from_integer(1.into());
        let x = a.center();
        let r = a.radius();
        for depth in 1..=max_depth {
            let d = depth as i32;
            let scale = r * pow2_neg(d + 1);
            let half = &scale / Rat::from_integer(2.into());
            if self.local_net_size(r, &half) > MAX_NET_POINTS {
                break;
            }
            let b = FormalBall::new(x.clone(), r * (&one - pow2_neg(d)))?;
            let c = FormalBall::new(x.clone(), r * (&one - pow2_neg(d + 1)))?;

            match self.closure_below(a, u, &scale)? {
                ClosureCheck::Below => {}
                ClosureCheck::TooCoarse => continue,
                ClosureCheck::Escapes => return Ok(CoverVerdict::Unknown { depth }),
            }
            let reach = b.radius() - &scale;
            let u0: BallSet = self
                .local_net(x, b.radius(), &half)?
                .into_iter()
                .filter(|z| self.dist_unchecked(z, x) <= reach)
                .map(|z| FormalBall::new(z, scale.clone()))
                .collect::<Result<_>>()?;
            let witness = CoverWitness {
                b,
                c,
                u0,
                scale,
                depth,
            };
            if self.verify_cover_witness(a, u, &witness)? {
                return Ok(CoverVerdict::Covered(witness));
            }
        }
        Ok(CoverVerdict::Unknown { depth: max_depth })
    }

    /// Re-checks the witness conditions: `b < c < a`, `U0 < {c}`, `U0 < U`
    /// and `b ⊲_scale U0`.
    pub fn verify_cover_witness(
        &self,
        a: &FormalBall,
        u: &[FormalBall],
        w: &CoverWitness,
    ) -> Result<bool> {
        Ok(self.ball_lt(&w.b, &w.c)?
            && self.ball_lt(&w.c, a)?
            && self.set_lt(&w.u0, std::slice::from_ref(&w.c))?
            && self.set_lt(&w.u0, u)?
            && w.scale <= *w.b.radius()
            && self.balcov_check(&w.b, &w.u0, &w.scale)?)
    }

    /// Checks `B(z; scale) < u` for some member, for every net point `z`
    /// (step `scale/2`) in the closure of `a`.
    fn closure_below(&self, a: &FormalBall, u: &[FormalBall], scale: &Rat) -> Result<ClosureCheck> {
        let half = scale / Rat::from_integer(2.into());
        let mut outcome = ClosureCheck::Below;
        for z in self.local_net(a.center(), a.radius(), &half)? {
            if self.dist_unchecked(&z, a.center()) > *a.radius() {
                continue;
            }
            let mut inside = false;
            let mut below = false;
            for m in u {
                let d = self.dist_unchecked(&z, m.center());
                if d < m.radius() - scale {
                    below = true;
                    break;
                }
                inside |= d < *m.radius();
            }
            if !inside && !below {
                return Ok(ClosureCheck::Escapes);
            }
            if !below {
                outcome = ClosureCheck::TooCoarse;
            }
        }
        Ok(outcome)
    }
}

enum ClosureCheck {
    Below,
    /// Some point is inside `U` but with less room than the scale.
    TooCoarse,
    /// Some point of the closure lies outside every member; no depth helps.
    Escapes,
}
