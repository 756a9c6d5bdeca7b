//! Exact-rational metric spaces together with their net oracles.
//!
//! Every distance is an exact rational, so the order relations on formal
//! balls and all cover checks built on top of them are decidable. Boxes use
//! the ℓ∞ metric for that reason.

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{ceil_to_u64, parse_rat, Rat};

/// A carrier point. Line and box points are coordinate vectors (length 1 on
/// the line); finite-space points are indices into the distance matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Coords(Vec<Rat>),
    Index(usize),
}

impl Point {
    pub fn scalar(x: Rat) -> Self {
        Point::Coords(vec![x])
    }

    pub fn coords(&self) -> Option<&[Rat]> {
        match self {
            Point::Coords(c) => Some(c),
            Point::Index(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Coords(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Point::Index(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricSpace {
    /// ℚ with |a − b|.
    Line,
    /// Rational points of [−bound, bound]^dim with the max metric.
    Box { dim: usize, bound: Rat },
    /// A finite carrier given by its distance matrix.
    Finite { matrix: Vec<Vec<Rat>> },
}

/// Result of asking for a net over the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlobalNet {
    Net(Vec<Point>),
    Unbounded,
}

impl MetricSpace {
    pub fn line() -> Self {
        MetricSpace::Line
    }

    pub fn boxed(dim: usize, bound: Rat) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("box dimension must be at least 1".into()));
        }
        if !bound.is_positive() {
            return Err(Error::Parameter(format!(
                "box bound must be positive, got {bound}"
            )));
        }
        Ok(MetricSpace::Box { dim, bound })
    }

    /// Builds a finite space, checking that the matrix is a metric with
    /// positive off-diagonal entries.
    pub fn finite(matrix: Vec<Vec<Rat>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::Parameter(
                "finite space needs at least one point".into(),
            ));
        }
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Parameter(format!("distance matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if !matrix[i][i].is_zero() {
                return Err(Error::Parameter(format!("d({i},{i}) must be 0")));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::Parameter(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
                if i != j && !matrix[i][j].is_positive() {
                    return Err(Error::Parameter(format!("d({i},{j}) must be positive")));
                }
                for k in 0..n {
                    if matrix[i][k] > &matrix[i][j] + &matrix[j][k] {
                        return Err(Error::Parameter(format!(
                            "triangle inequality fails for ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(MetricSpace::Finite { matrix })
    }

    /// Parses a matrix file: a leading line with the number of points, then
    /// the rows as whitespace-separated rationals.
    pub fn finite_from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?
            .parse()
            .map_err(|_| Error::Parse("matrix file must start with the point count".into()))?;
        let mut matrix = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let tok = tokens
                    .next()
                    .ok_or_else(|| Error::Parse(format!("matrix entry ({i},{j}) missing")))?;
                row.push(parse_rat(tok)?);
            }
            matrix.push(row);
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing entries after matrix".into()));
        }
        Self::finite(matrix)
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            MetricSpace::Line => Some(1),
            MetricSpace::Box { dim, .. } => Some(*dim),
            MetricSpace::Finite { .. } => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, MetricSpace::Line)
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (MetricSpace::Line, Point::Coords(c)) if c.len() == 1 => Ok(()),
            (MetricSpace::Box { dim, bound }, Point::Coords(c)) if c.len() == *dim => {
                if c.iter().all(|x| x.abs() <= *bound) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "point {p} lies outside the box [-{bound},{bound}]^{dim}"
                    )))
                }
            }
            (MetricSpace::Finite { matrix }, Point::Index(i)) if *i < matrix.len() => Ok(()),
            _ => Err(Error::Domain(format!(
                "point {p} does not belong to {self}"
            ))),
        }
    }

    /// Parses a point in this space's syntax: comma-separated rationals, or
    /// an index for finite spaces.
    pub fn parse_point(&self, s: &str) -> Result<Point> {
        let p = match self {
            MetricSpace::Finite { .. } => Point::Index(
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed point index `{s}`")))?,
            ),
            _ => Point::Coords(s.split(',').map(parse_rat).collect::<Result<_>>()?),
        };
        self.check_point(&p)?;
        Ok(p)
    }

    pub fn dist(&self, p: &Point, q: &Point) -> Result<Rat> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.dist_unchecked(p, q))
    }

    /// Distance for points already known to belong to this space.
    pub(crate) fn dist_unchecked(&self, p: &Point, q: &Point) -> Rat {
        match (p, q) {
            (Point::Coords(a), Point::Coords(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .max()
                .unwrap_or_else(Rat::zero),
            (Point::Index(i), Point::Index(j)) => match self {
                MetricSpace::Finite { matrix } => matrix[*i][*j].clone(),
                _ => unreachable!("index points only occur in finite spaces"),
            },
            _ => unreachable!("mixed point kinds"),
        }
    }

    /// Points `z` such that every carrier point `p` with `d(p, x) < radius`
    /// has `d(p, z) ≤ step` for some `z`.
    ///
    /// Line and box nets are grids of the given step anchored at `x`, so each
    /// such `p` also has a grid point no farther from `x` than `p` itself.
    pub fn local_net(&self, x: &Point, radius: &Rat, step: &Rat) -> Result<Vec<Point>> {
        self.check_point(x)?;
        if !radius.is_positive() || !step.is_positive() {
            return Err(Error::Parameter(
                "local_net radius and step must be positive".into(),
            ));
        }
        match self {
            MetricSpace::Finite { matrix } => Ok((0..matrix.len())
                .map(Point::Index)
                .filter(|z| &self.dist_unchecked(x, z) < radius)
                .collect()),
            _ => {
                if step >= radius {
                    return Ok(vec![x.clone()]);
                }
                let n = ceil_to_u64(&(radius / step))
                    .ok_or_else(|| Error::Parameter("net too fine".into()))?
                    as i64;
                let center = x.coords().expect("coordinate point");
                let axis: Vec<Vec<Rat>> = center
                    .iter()
                    .map(|c| {
                        (-n..=n)
                            .map(|i| self.clamp(c + step * Rat::from_integer(i.into())))
                            .collect()
                    })
                    .collect();
                Ok(dedup(product(&axis)))
            }
        }
    }

    /// Centers such that every carrier point lies within `step` of one of them.
    pub fn global_net(&self, step: &Rat) -> Result<GlobalNet> {
        if !step.is_positive() {
            return Err(Error::Parameter("global_net step must be positive".into()));
        }
        match self {
            MetricSpace::Line => Ok(GlobalNet::Unbounded),
            MetricSpace::Finite { matrix } => Ok(GlobalNet::Net(
                (0..matrix.len()).map(Point::Index).collect(),
            )),
            MetricSpace::Box { dim, bound } => {
                let n = ceil_to_u64(&(Rat::from_integer(2.into()) * bound / step))
                    .ok_or_else(|| Error::Parameter("net too fine".into()))?;
                let line: Vec<Rat> = (0..=n)
                    .map(|i| self.clamp(-bound + step * Rat::from_integer(i.into())))
                    .collect();
                let axis = vec![line; *dim];
                Ok(GlobalNet::Net(dedup(product(&axis))))
            }
        }
    }

    /// Upper bound on the number of points `local_net(_, radius, step)` returns.
    pub fn local_net_size(&self, radius: &Rat, step: &Rat) -> u128 {
        match self {
            MetricSpace::Finite { matrix } => matrix.len() as u128,
            _ if step >= radius => 1,
            _ => {
                let side = ceil_to_u64(&(radius / step)).map_or(u128::MAX, |n| 2 * n as u128 + 1);
                let dim = self.dim().unwrap_or(1) as u32;
                side.checked_pow(dim).unwrap_or(u128::MAX)
            }
        }
    }

    fn clamp(&self, v: Rat) -> Rat {
        match self {
            MetricSpace::Box { bound, .. } => v.clamp(-bound.clone(), bound.clone()),
            _ => v,
        }
    }
}

impl fmt::Display for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricSpace::Line => f.write_str("line"),
            MetricSpace::Box { dim, bound } => write!(f, "box({dim}, bound {bound})"),
            MetricSpace::Finite { matrix } => write!(f, "finite({} points)", matrix.len()),
        }
    }
}

fn product(axis: &[Vec<Rat>]) -> Vec<Point> {
    let mut acc: Vec<Vec<Rat>> = vec![Vec::new()];
    for values in axis {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    acc.into_iter().map(Point::Coords).collect()
}

fn dedup(points: Vec<Point>) -> Vec<Point> {
    let mut seen = HashSet::new();
    points
        .into_iter()
        .filter(|p| seen.insert(p.clone()))
        .collect()
}
