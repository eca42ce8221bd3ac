//! Model spaces, their metrics and samplers, configurations in `F(X, k)`
//! and the forgetful projections `F(X, k) -> F(X, r)`.
//!
//! Every model carries a concrete metric so that "distinct" and "open"
//! can be tested numerically: geodesic on spheres and projective spaces,
//! the max of circle distances on tori, Euclidean on `R^m` and the disc,
//! a branch metric on the wedge `S^2 v S^1` and the discrete metric on
//! finite sets.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default separation below which two points count as colliding.
pub const DEFAULT_SEPARATION: f64 = 1e-9;

/// Tolerance on `| |v| - 1 |` for unit-vector payloads.
pub const UNIT_TOLERANCE: f64 = 1e-9;

const RENORMALIZE_BELOW: f64 = 1e-15;

/// Wedge basepoint on the sphere branch, `a0 = (1, 0, 0)`.
pub const WEDGE_SPHERE_BASE: [f64; 3] = [1.0, 0.0, 0.0];

/// A named model space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Sphere(usize),
    RealProjective(usize),
    Torus(usize),
    Euclidean(usize),
    Disc(usize),
    WedgeS2S1,
    Discrete(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Geodesic,
    Euclidean,
    QuotientGeodesic,
    BranchMetric,
    Discrete,
}

impl Space {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Space::Sphere(d) | Space::RealProjective(d) => d >= 1,
            Space::Torus(m) | Space::Euclidean(m) | Space::Disc(m) => m >= 1,
            Space::Discrete(n) => n >= 1,
            Space::WedgeS2S1 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidSpace(format!("{self} has no points or no dimension")))
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Space::Sphere(d) | Space::RealProjective(d) => d,
            Space::Torus(m) | Space::Euclidean(m) | Space::Disc(m) => m,
            Space::WedgeS2S1 => 2,
            Space::Discrete(_) => 0,
        }
    }

    /// Every shipped model is a metric space, hence Hausdorff.
    pub fn is_hausdorff(self) -> bool {
        true
    }

    pub fn is_boundaryless_manifold(self) -> bool {
        !matches!(self, Space::Disc(_) | Space::WedgeS2S1 | Space::Discrete(_))
    }

    pub fn metric(self) -> MetricKind {
        match self {
            Space::Sphere(_) | Space::Torus(_) => MetricKind::Geodesic,
            Space::RealProjective(_) => MetricKind::QuotientGeodesic,
            Space::Euclidean(_) | Space::Disc(_) => MetricKind::Euclidean,
            Space::WedgeS2S1 => MetricKind::BranchMetric,
            Space::Discrete(_) => MetricKind::Discrete,
        }
    }

    /// Length of the coordinate payload of a point.
    fn payload_len(self) -> usize {
        match self {
            Space::Sphere(d) | Space::RealProjective(d) => d + 1,
            Space::Torus(m) | Space::Euclidean(m) | Space::Disc(m) => m,
            Space::WedgeS2S1 => 3,
            Space::Discrete(_) => 1,
        }
    }

    pub fn distance(self, p: &SpacePoint, q: &SpacePoint) -> Result<f64> {
        self.expect(p.space)?;
        self.expect(q.space)?;
        Ok(raw_distance(self, &p.coords, &q.coords))
    }

    pub(crate) fn expect(self, found: Space) -> Result<()> {
        if found == self {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: self,
                found,
            })
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sphere(d) => write!(f, "S{d}"),
            Space::RealProjective(d) => write!(f, "RP{d}"),
            Space::Torus(m) => write!(f, "T{m}"),
            Space::Euclidean(m) => write!(f, "R{m}"),
            Space::Disc(m) => write!(f, "D{m}"),
            Space::WedgeS2S1 => write!(f, "S2vS1"),
            Space::Discrete(n) => write!(f, "Discrete{n}"),
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |rest: &str| -> Result<usize> {
            rest.parse::<usize>()
                .map_err(|_| Error::Parse(format!("unknown space `{s}`")))
        };
        let space = if s == "S2vS1" || s == "S2vee S1" {
            Space::WedgeS2S1
        } else if let Some(rest) = s.strip_prefix("Discrete") {
            Space::Discrete(num(rest)?)
        } else if let Some(rest) = s.strip_prefix("RP") {
            Space::RealProjective(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('S') {
            Space::Sphere(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('T') {
            Space::Torus(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('R') {
            Space::Euclidean(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('D') {
            Space::Disc(num(rest)?)
        } else {
            return Err(Error::Parse(format!("unknown space `{s}`")));
        };
        space.validate()
    }
}

impl Serialize for Space {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the wedge `(S^2 x {b0}) u ({a0} x S^1)`.
///
/// The basepoint `(a0, b0)` is always stored as `Circle(0.0)`.
#[derive(Clone, Debug, PartialEq)]
pub enum WedgePoint {
    Sphere([f64; 3]),
    Circle(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    /// Unit vectors (sphere, projective space) or plain vectors (`R^m`, disc).
    Vector(Vec<f64>),
    /// Angles in `[0, 2pi)`.
    Angles(Vec<f64>),
    Wedge(WedgePoint),
    Index(usize),
}

/// A canonical point of a model space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacePoint {
    space: Space,
    coords: Coords,
}

impl SpacePoint {
    /// Validates and canonicalizes a raw payload.
    pub fn new(space: Space, coords: Coords) -> Result<Self> {
        let space = space.validate()?;
        let invalid = |reason: String| Error::InvalidPoint { space, reason };
        let coords = match (space, coords) {
            (Space::Sphere(_) | Space::RealProjective(_), Coords::Vector(v)) => {
                if v.len() != space.payload_len() {
                    return Err(invalid(format!("expected {} coordinates", space.payload_len())));
                }
                check_finite(&v).map_err(invalid)?;
                let n = norm(&v);
                if (n - 1.0).abs() > UNIT_TOLERANCE {
                    return Err(invalid(format!("norm {n} is not 1")));
                }
                Coords::Vector(v)
            }
            (Space::Torus(m), Coords::Angles(a)) => {
                if a.len() != m {
                    return Err(invalid(format!("expected {m} angles")));
                }
                check_finite(&a).map_err(invalid)?;
                Coords::Angles(a)
            }
            (Space::Euclidean(m) | Space::Disc(m), Coords::Vector(v)) => {
                if v.len() != m {
                    return Err(invalid(format!("expected {m} coordinates")));
                }
                check_finite(&v).map_err(invalid)?;
                if matches!(space, Space::Disc(_)) && norm(&v) > 1.0 + UNIT_TOLERANCE {
                    return Err(invalid("point lies outside the unit disc".into()));
                }
                Coords::Vector(v)
            }
            (Space::WedgeS2S1, Coords::Wedge(w)) => {
                match &w {
                    WedgePoint::Sphere(a) => {
                        check_finite(a).map_err(invalid)?;
                        let n = norm(a);
                        if (n - 1.0).abs() > UNIT_TOLERANCE {
                            return Err(invalid(format!("norm {n} is not 1")));
                        }
                    }
                    WedgePoint::Circle(t) => {
                        if !t.is_finite() {
                            return Err(invalid("non-finite angle".into()));
                        }
                    }
                }
                Coords::Wedge(w)
            }
            (Space::Discrete(n), Coords::Index(i)) => {
                if i >= n {
                    return Err(invalid(format!("index {i} >= {n}")));
                }
                Coords::Index(i)
            }
            (_, c) => return Err(invalid(format!("payload {c:?} does not fit this space"))),
        };
        Ok(SpacePoint {
            space,
            coords: canonical_coords(space, coords),
        })
    }

    pub fn sphere(v: Vec<f64>) -> Result<Self> {
        let d = v.len().checked_sub(1).ok_or_else(|| Error::InvalidSpace("S-1".into()))?;
        Self::new(Space::Sphere(d), Coords::Vector(v))
    }

    pub fn projective(v: Vec<f64>) -> Result<Self> {
        let d = v.len().checked_sub(1).ok_or_else(|| Error::InvalidSpace("RP-1".into()))?;
        Self::new(Space::RealProjective(d), Coords::Vector(v))
    }

    pub fn torus(angles: Vec<f64>) -> Result<Self> {
        Self::new(Space::Torus(angles.len()), Coords::Angles(angles))
    }

    pub fn euclidean(v: Vec<f64>) -> Result<Self> {
        Self::new(Space::Euclidean(v.len()), Coords::Vector(v))
    }

    pub fn disc(v: Vec<f64>) -> Result<Self> {
        Self::new(Space::Disc(v.len()), Coords::Vector(v))
    }

    pub fn wedge_sphere(a: [f64; 3]) -> Result<Self> {
        Self::new(Space::WedgeS2S1, Coords::Wedge(WedgePoint::Sphere(a)))
    }

    pub fn wedge_circle(angle: f64) -> Result<Self> {
        Self::new(Space::WedgeS2S1, Coords::Wedge(WedgePoint::Circle(angle)))
    }

    pub fn discrete(n: usize, i: usize) -> Result<Self> {
        Self::new(Space::Discrete(n), Coords::Index(i))
    }

    /// Point of `S^1` (as a sphere) at the given angle.
    pub fn circle_angle(theta: f64) -> Self {
        SpacePoint {
            space: Space::Sphere(1),
            coords: canonical_coords(Space::Sphere(1), Coords::Vector(vec![theta.cos(), theta.sin()])),
        }
    }

    /// Normalizes an arbitrary nonzero vector onto the sphere or projective space.
    pub fn from_direction(space: Space, v: &[f64]) -> Result<Self> {
        let n = norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidPoint {
                space,
                reason: "zero or non-finite direction".into(),
            });
        }
        Self::new(space, Coords::Vector(v.iter().map(|x| x / n).collect()))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    /// Vector payload, for spheres, projective spaces, `R^m` and discs.
    pub fn vector(&self) -> Option<&[f64]> {
        match &self.coords {
            Coords::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn angles(&self) -> Option<&[f64]> {
        match &self.coords {
            Coords::Angles(a) => Some(a),
            _ => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self.coords {
            Coords::Index(i) => Some(i),
            _ => None,
        }
    }

    pub fn wedge(&self) -> Option<&WedgePoint> {
        match &self.coords {
            Coords::Wedge(w) => Some(w),
            _ => None,
        }
    }

    pub fn canonicalize(&self) -> Self {
        SpacePoint {
            space: self.space,
            coords: canonical_coords(self.space, self.coords.clone()),
        }
    }

    pub fn distance(&self, other: &SpacePoint) -> Result<f64> {
        self.space.distance(self, other)
    }

    /// Distance without the space check; callers guarantee matching spaces.
    pub fn dist(&self, other: &SpacePoint) -> f64 {
        debug_assert_eq!(self.space, other.space);
        raw_distance(self.space, &self.coords, &other.coords)
    }

    /// Builds a point from an already-canonical payload (internal fast path).
    pub(crate) fn from_canonical(space: Space, coords: Coords) -> Self {
        SpacePoint {
            space,
            coords: canonical_coords(space, coords),
        }
    }
}

fn check_finite(v: &[f64]) -> std::result::Result<(), String> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err("non-finite coordinate".into())
    }
}

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let n = norm(&v);
    if (n - 1.0).abs() > RENORMALIZE_BELOW {
        v.iter_mut().for_each(|x| *x /= n);
    }
    // flush negative zeros
    v.iter_mut().for_each(|x| *x += 0.0);
    v
}

fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w + 0.0
    }
}

fn canonical_coords(space: Space, coords: Coords) -> Coords {
    match (space, coords) {
        (Space::Sphere(_), Coords::Vector(v)) => Coords::Vector(unit(v)),
        (Space::RealProjective(_), Coords::Vector(v)) => {
            let mut v = unit(v);
            if let Some(first) = v.iter().copied().find(|x| *x != 0.0) {
                if first < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x + 0.0);
                }
            }
            Coords::Vector(v)
        }
        (Space::Torus(_), Coords::Angles(a)) => Coords::Angles(a.into_iter().map(wrap_angle).collect()),
        (Space::Disc(_), Coords::Vector(mut v)) => {
            let n = norm(&v);
            if n > 1.0 {
                v.iter_mut().for_each(|x| *x /= n);
            }
            Coords::Vector(v)
        }
        (Space::WedgeS2S1, Coords::Wedge(WedgePoint::Sphere(a))) => {
            let u = unit(a.to_vec());
            let a = [u[0], u[1], u[2]];
            if sphere_angle(&a, &WEDGE_SPHERE_BASE) <= 1e-12 {
                Coords::Wedge(WedgePoint::Circle(0.0))
            } else {
                Coords::Wedge(WedgePoint::Sphere(a))
            }
        }
        (Space::WedgeS2S1, Coords::Wedge(WedgePoint::Circle(t))) => {
            Coords::Wedge(WedgePoint::Circle(wrap_angle(t)))
        }
        (_, c) => c,
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Geodesic angle between unit vectors, accurate near `0` and `pi`.
pub(crate) fn sphere_angle(p: &[f64], q: &[f64]) -> f64 {
    let (mut diff, mut sum) = (0.0, 0.0);
    for (x, y) in p.iter().zip(q) {
        diff += (x - y) * (x - y);
        sum += (x + y) * (x + y);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Distance between two angles on the unit circle.
pub(crate) fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn wedge_distance(p: &WedgePoint, q: &WedgePoint) -> f64 {
    match (p, q) {
        (WedgePoint::Sphere(a), WedgePoint::Sphere(b)) => sphere_angle(a, b),
        (WedgePoint::Circle(s), WedgePoint::Circle(t)) => circle_distance(*s, *t),
        (WedgePoint::Sphere(a), WedgePoint::Circle(t)) | (WedgePoint::Circle(t), WedgePoint::Sphere(a)) => {
            sphere_angle(a, &WEDGE_SPHERE_BASE) + circle_distance(*t, 0.0)
        }
    }
}

fn raw_distance(space: Space, p: &Coords, q: &Coords) -> f64 {
    match (p, q) {
        (Coords::Vector(a), Coords::Vector(b)) => match space {
            Space::Sphere(_) => sphere_angle(a, b),
            Space::RealProjective(_) => {
                let neg: Vec<f64> = b.iter().map(|x| -x).collect();
                sphere_angle(a, b).min(sphere_angle(a, &neg))
            }
            _ => a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
        },
        (Coords::Angles(a), Coords::Angles(b)) => a
            .iter()
            .zip(b)
            .map(|(x, y)| circle_distance(*x, *y))
            .fold(0.0, f64::max),
        (Coords::Wedge(a), Coords::Wedge(b)) => wedge_distance(a, b),
        (Coords::Index(i), Coords::Index(j)) => {
            if i == j {
                0.0
            } else {
                1.0
            }
        }
        _ => f64::NAN,
    }
}

/// Metric on a model space. Mismatched spaces are an error.
pub fn distance(space: Space, p: &SpacePoint, q: &SpacePoint) -> Result<f64> {
    space.distance(p, q)
}

fn normal_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

fn unit_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let v = normal_vec(rng, len);
        let n = norm(&v);
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Draws one point from the model's natural distribution.
pub fn sample_point<R: Rng>(space: Space, rng: &mut R) -> SpacePoint {
    let coords = match space {
        Space::Sphere(d) | Space::RealProjective(d) => Coords::Vector(unit_vec(rng, d + 1)),
        Space::Torus(m) => Coords::Angles((0..m).map(|_| rng.random_range(0.0..TAU)).collect()),
        Space::Euclidean(m) => Coords::Vector(normal_vec(rng, m)),
        Space::Disc(m) => {
            let r: f64 = rng.random::<f64>().powf(1.0 / m as f64);
            Coords::Vector(unit_vec(rng, m).into_iter().map(|x| x * r).collect())
        }
        Space::WedgeS2S1 => {
            if rng.random_bool(0.5) {
                let v = unit_vec(rng, 3);
                Coords::Wedge(WedgePoint::Sphere([v[0], v[1], v[2]]))
            } else {
                Coords::Wedge(WedgePoint::Circle(rng.random_range(0.0..TAU)))
            }
        }
        Space::Discrete(n) => Coords::Index(rng.random_range(0..n)),
    };
    SpacePoint::from_canonical(space, coords)
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points sampled deterministically from `seed`.
pub fn sample(space: Space, seed: u64, n: usize) -> Result<Vec<SpacePoint>> {
    let space = space.validate()?;
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    Ok((0..n).map(|_| sample_point(space, &mut rng)).collect())
}

/// Random point within distance `eps` of `p` (and still on the model).
pub fn perturb<R: Rng>(p: &SpacePoint, eps: f64, rng: &mut R) -> SpacePoint {
    let space = p.space;
    let coords = match (&p.coords, space) {
        (Coords::Vector(v), Space::Sphere(_) | Space::RealProjective(_)) => {
            Coords::Vector(sphere_step(v, eps * rng.random::<f64>(), rng))
        }
        (Coords::Vector(v), _) => {
            let step = eps * rng.random::<f64>();
            let u = unit_vec(rng, v.len());
            Coords::Vector(v.iter().zip(&u).map(|(x, d)| x + step * d).collect())
        }
        (Coords::Angles(a), _) => Coords::Angles(a.iter().map(|x| x + rng.random_range(-eps..=eps)).collect()),
        (Coords::Wedge(WedgePoint::Circle(t)), _) => {
            Coords::Wedge(WedgePoint::Circle(t + rng.random_range(-eps..=eps)))
        }
        (Coords::Wedge(WedgePoint::Sphere(a)), _) => {
            let w = sphere_step(a, eps * rng.random::<f64>(), rng);
            Coords::Wedge(WedgePoint::Sphere([w[0], w[1], w[2]]))
        }
        (Coords::Index(i), _) => Coords::Index(*i),
    };
    SpacePoint::from_canonical(space, coords)
}

/// Moves the unit vector `v` by exactly `angle` in a random tangent direction.
fn sphere_step<R: Rng>(v: &[f64], angle: f64, rng: &mut R) -> Vec<f64> {
    loop {
        let mut t = normal_vec(rng, v.len());
        let c = dot(&t, v);
        t.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
        let n = norm(&t);
        if n > 1e-6 {
            let (s, c) = angle.sin_cos();
            return v.iter().zip(&t).map(|(x, y)| c * x + s * y / n).collect();
        }
    }
}

/// Point at fraction `t` along the unique shortest geodesic from `p` to `q`.
pub fn geodesic_point(space: Space, p: &SpacePoint, q: &SpacePoint, t: f64) -> Result<SpacePoint> {
    space.expect(p.space)?;
    space.expect(q.space)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("geodesic parameter {t} outside [0, 1]")));
    }
    if t == 0.0 {
        return Ok(p.clone());
    }
    if t == 1.0 {
        return Ok(q.clone());
    }
    let coords = match (&p.coords, &q.coords) {
        (Coords::Vector(a), Coords::Vector(b)) => match space {
            Space::Sphere(_) => Coords::Vector(slerp(a, b, t)?),
            Space::RealProjective(_) => {
                let c = dot(a, b);
                if c.abs() < 1e-12 {
                    return Err(Error::AmbiguousGeodesic);
                }
                let lift: Vec<f64> = if c < 0.0 { b.iter().map(|x| -x).collect() } else { b.clone() };
                Coords::Vector(slerp(a, &lift, t)?)
            }
            _ => Coords::Vector(a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()),
        },
        (Coords::Angles(a), Coords::Angles(b)) => {
            let mut out = Vec::with_capacity(a.len());
            for (x, y) in a.iter().zip(b) {
                let d = signed_angle(*x, *y);
                if (d.abs() - PI).abs() < 1e-12 {
                    return Err(Error::AmbiguousGeodesic);
                }
                out.push(x + t * d);
            }
            Coords::Angles(out)
        }
        (Coords::Wedge(a), Coords::Wedge(b)) => Coords::Wedge(wedge_geodesic(a, b, t)?),
        (Coords::Index(i), Coords::Index(j)) => {
            if i == j {
                Coords::Index(*i)
            } else {
                return Err(Error::AmbiguousGeodesic);
            }
        }
        _ => return Err(Error::AmbiguousGeodesic),
    };
    Ok(SpacePoint::from_canonical(space, coords))
}

/// Signed shortest angle from `a` to `b`, in `[-pi, pi)`.
pub(crate) fn signed_angle(a: f64, b: f64) -> f64 {
    (b - a + PI).rem_euclid(TAU) - PI
}

fn slerp(a: &[f64], b: &[f64], t: f64) -> Result<Vec<f64>> {
    let sum = norm(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>());
    if sum < 1e-12 {
        return Err(Error::AmbiguousGeodesic);
    }
    let theta = sphere_angle(a, b);
    if theta < 1e-9 {
        let v: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
        return Ok(unit(v));
    }
    let s = theta.sin();
    let (wa, wb) = (((1.0 - t) * theta).sin() / s, (t * theta).sin() / s);
    Ok(unit(a.iter().zip(b).map(|(x, y)| wa * x + wb * y).collect()))
}

fn wedge_geodesic(a: &WedgePoint, b: &WedgePoint, t: f64) -> Result<WedgePoint> {
    let to_sphere = |w: &[f64]| WedgePoint::Sphere([w[0], w[1], w[2]]);
    Ok(match (a, b) {
        (WedgePoint::Sphere(x), WedgePoint::Sphere(y)) => to_sphere(&slerp(x, y, t)?),
        (WedgePoint::Circle(s), WedgePoint::Circle(u)) => {
            let d = signed_angle(*s, *u);
            if (d.abs() - PI).abs() < 1e-12 {
                return Err(Error::AmbiguousGeodesic);
            }
            WedgePoint::Circle(s + t * d)
        }
        (WedgePoint::Sphere(x), WedgePoint::Circle(u)) => {
            let (l1, l2) = (sphere_angle(x, &WEDGE_SPHERE_BASE), circle_distance(*u, 0.0));
            if (l2 - PI).abs() < 1e-12 {
                return Err(Error::AmbiguousGeodesic);
            }
            let s = t * (l1 + l2);
            if s <= l1 {
                to_sphere(&slerp(x, &WEDGE_SPHERE_BASE, s / l1)?)
            } else {
                WedgePoint::Circle((s - l1) * signed_angle(0.0, *u).signum())
            }
        }
        (WedgePoint::Circle(_), WedgePoint::Sphere(_)) => return wedge_geodesic(b, a, 1.0 - t),
    })
}

/// An ordered tuple of pairwise distinct points: a point of `F(X, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    space: Space,
    points: Vec<SpacePoint>,
}

impl Configuration {
    pub fn new(space: Space, points: Vec<SpacePoint>) -> Result<Self> {
        Self::with_separation(space, points, DEFAULT_SEPARATION)
    }

    /// Builds a configuration whose points must be further apart than `separation`
    /// (for finite sets, simply different).
    pub fn with_separation(space: Space, points: Vec<SpacePoint>, separation: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("a configuration needs k >= 1 points".into()));
        }
        for p in &points {
            space.expect(p.space)?;
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d = points[i].dist(&points[j]);
                let clash = match space {
                    Space::Discrete(_) => d == 0.0,
                    _ => d <= separation,
                };
                if clash {
                    return Err(Error::NotDistinct { i, j, distance: d });
                }
            }
        }
        Ok(Configuration { space, points })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[SpacePoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<SpacePoint> {
        self.points
    }

    /// Forgets all but the first `r` points.
    pub fn project(&self, r: usize) -> Result<Configuration> {
        if r == 0 || r > self.k() {
            return Err(Error::ProjectionOutOfRange { r, k: self.k() });
        }
        Ok(Configuration {
            space: self.space,
            points: self.points[..r].to_vec(),
        })
    }

    /// Smallest pairwise distance (infinite when `k = 1`).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                best = best.min(self.points[i].dist(&self.points[j]));
            }
        }
        best
    }

    pub fn pairwise_distances(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                out.push(self.points[i].dist(&self.points[j]));
            }
        }
        out
    }

    /// Max-coordinate distance between two configurations of the same size.
    pub fn distance(&self, other: &Configuration) -> f64 {
        if self.k() != other.k() || self.space != other.space {
            return f64::INFINITY;
        }
        self.points
            .iter()
            .zip(&other.points)
            .map(|(p, q)| p.dist(q))
            .fold(0.0, f64::max)
    }
}

/// Forgets all but the first `r` points of `cfg`.
pub fn project(cfg: &Configuration, r: usize) -> Result<Configuration> {
    cfg.project(r)
}

/// Rejection-samples a point of `F(X, k)`.
pub fn sample_configuration<R: Rng>(space: Space, k: usize, rng: &mut R) -> Result<Configuration> {
    if let Space::Discrete(n) = space {
        if k > n {
            return Err(Error::InvalidArgument(format!("F(Discrete{n}, {k}) is empty")));
        }
    }
    for _ in 0..10_000 {
        let points: Vec<SpacePoint> = (0..k).map(|_| sample_point(space, rng)).collect();
        if let Ok(cfg) = Configuration::new(space, points) {
            return Ok(cfg);
        }
    }
    Err(Error::InvalidArgument(format!("could not sample a point of F({space}, {k})")))
}

// JSON encoding

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Branch {
    Sphere,
    Circle,
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    branch: Option<Branch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
}

impl Serialize for SpacePoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (branch, coords, index) = match &self.coords {
            Coords::Vector(v) | Coords::Angles(v) => (None, Some(v.clone()), None),
            Coords::Wedge(WedgePoint::Sphere(a)) => (Some(Branch::Sphere), Some(a.to_vec()), None),
            Coords::Wedge(WedgePoint::Circle(t)) => (Some(Branch::Circle), Some(vec![*t]), None),
            Coords::Index(i) => (None, None, Some(*i)),
        };
        RawPoint {
            space: self.space,
            branch,
            coords,
            index,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpacePoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPoint::deserialize(deserializer)?;
        let missing = || D::Error::custom("missing `coords`");
        let coords = match raw.space {
            Space::Discrete(_) => Coords::Index(raw.index.ok_or_else(|| D::Error::custom("missing `index`"))?),
            Space::Torus(_) => Coords::Angles(raw.coords.ok_or_else(missing)?),
            Space::WedgeS2S1 => {
                let c = raw.coords.ok_or_else(missing)?;
                match raw.branch {
                    Some(Branch::Circle) if c.len() == 1 => Coords::Wedge(WedgePoint::Circle(c[0])),
                    Some(Branch::Sphere) if c.len() == 3 => Coords::Wedge(WedgePoint::Sphere([c[0], c[1], c[2]])),
                    _ => return Err(D::Error::custom("wedge points need `branch` and matching `coords`")),
                }
            }
            _ => Coords::Vector(raw.coords.ok_or_else(missing)?),
        };
        SpacePoint::new(raw.space, coords).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawConfiguration {
    space: Space,
    points: Vec<SpacePoint>,
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawConfiguration {
            space: self.space,
            points: self.points.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawConfiguration::deserialize(deserializer)?;
        Configuration::new(raw.space, raw.points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: [Space; 9] = [
        Space::Sphere(1),
        Space::Sphere(2),
        Space::RealProjective(3),
        Space::Torus(2),
        Space::Euclidean(3),
        Space::Disc(2),
        Space::WedgeS2S1,
        Space::Discrete(5),
        Space::Sphere(3),
    ];

    #[test]
    fn parse_and_display_agree() {
        for s in ALL {
            assert_eq!(s.to_string().parse::<Space>().unwrap(), s);
        }
        assert!("S0x".parse::<Space>().is_err());
        assert!("Discrete0".parse::<Space>().is_err());
    }

    #[test]
    fn descriptor_flags() {
        for s in ALL {
            assert!(s.is_hausdorff());
            let expect = !matches!(s, Space::Disc(_) | Space::WedgeS2S1 | Space::Discrete(_));
            assert_eq!(s.is_boundaryless_manifold(), expect, "{s}");
        }
    }

    #[test]
    fn sphere_identity_and_antipode() {
        let p = SpacePoint::sphere(vec![0.0, 0.6, 0.8]).unwrap();
        let q = SpacePoint::sphere(vec![0.0, -0.6, -0.8]).unwrap();
        let s2 = Space::Sphere(2);
        assert_eq!(distance(s2, &p, &p).unwrap(), 0.0);
        assert!((distance(s2, &p, &q).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn mismatched_spaces_rejected() {
        let p = SpacePoint::sphere(vec![1.0, 0.0, 0.0]).unwrap();
        let q = SpacePoint::projective(vec![1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            distance(Space::Sphere(2), &p, &q),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn projective_sign_canonical() {
        let p = SpacePoint::projective(vec![-0.6, 0.8, 0.0, 0.0]).unwrap();
        assert_eq!(p.vector().unwrap(), &[0.6, -0.8, 0.0, 0.0]);
        let q = SpacePoint::projective(vec![0.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(q.vector().unwrap(), &[0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn wedge_basepoint_is_circle_representation() {
        let p = SpacePoint::wedge_sphere(WEDGE_SPHERE_BASE).unwrap();
        assert_eq!(p.wedge(), Some(&WedgePoint::Circle(0.0)));
        let q = SpacePoint::wedge_sphere([-1.0, 0.0, 0.0]).unwrap();
        let r = SpacePoint::wedge_circle(PI).unwrap();
        assert!((distance(Space::WedgeS2S1, &q, &r).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn invalid_payloads() {
        assert!(SpacePoint::sphere(vec![1.0, 1.0]).is_err());
        assert!(SpacePoint::disc(vec![1.0, 1.0]).is_err());
        assert!(SpacePoint::discrete(3, 3).is_err());
        assert!(SpacePoint::new(Space::Torus(2), Coords::Vector(vec![0.0, 0.0])).is_err());
    }

    #[test]
    fn sample_is_deterministic() {
        let a = sample(Space::Sphere(1), 7, 3).unwrap();
        let b = sample(Space::Sphere(1), 7, 3).unwrap();
        assert_eq!(a, b);
        assert!(sample(Space::Sphere(1), 7, 0).is_err());
    }

    #[test]
    fn sphere_sample_is_balanced() {
        let pts = sample(Space::Sphere(2), 1, 10_000).unwrap();
        let mut mean = [0.0; 3];
        for p in &pts {
            for (m, x) in mean.iter_mut().zip(p.vector().unwrap()) {
                *m += x / pts.len() as f64;
            }
        }
        assert!(norm(&mean) < 0.05, "mean norm {}", norm(&mean));
    }

    #[test]
    fn discrete_samples_in_range() {
        let pts = sample(Space::Discrete(4), 3, 8).unwrap();
        assert!(pts.iter().all(|p| p.index().unwrap() < 4));
    }

    #[test]
    fn projection_examples() {
        let s1 = Space::Sphere(1);
        let pts: Vec<_> = [0.0, 2.0, 4.0].iter().map(|t| SpacePoint::circle_angle(*t)).collect();
        let cfg = Configuration::new(s1, pts.clone()).unwrap();
        assert_eq!(cfg.project(1).unwrap().points(), &pts[..1]);
        assert_eq!(cfg.project(3).unwrap(), cfg);
        let pair = cfg.project(2).unwrap();
        assert!(Configuration::new(s1, pair.points().to_vec()).is_ok());
        assert!(matches!(cfg.project(0), Err(Error::ProjectionOutOfRange { .. })));
        assert!(matches!(cfg.project(4), Err(Error::ProjectionOutOfRange { .. })));
    }

    #[test]
    fn collision_rejected() {
        let p = SpacePoint::circle_angle(1.0);
        assert!(matches!(
            Configuration::new(Space::Sphere(1), vec![p.clone(), p]),
            Err(Error::NotDistinct { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn geodesic_examples() {
        let s1 = Space::Sphere(1);
        let p = SpacePoint::circle_angle(0.3);
        for t in [0.0, 0.25, 0.5, 1.0] {
            assert_eq!(geodesic_point(s1, &p, &p, t).unwrap(), p);
        }
        let s2 = Space::Sphere(2);
        let a = SpacePoint::sphere(vec![1.0, 0.0, 0.0]).unwrap();
        let b = SpacePoint::sphere(vec![0.0, 1.0, 0.0]).unwrap();
        let mid = geodesic_point(s2, &a, &b, 0.5).unwrap();
        let h = 0.5f64.sqrt();
        assert!(mid.dist(&SpacePoint::sphere(vec![h, h, 0.0]).unwrap()) < 1e-15);
        let minus = SpacePoint::sphere(vec![-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(geodesic_point(s2, &a, &minus, 0.5), Err(Error::AmbiguousGeodesic)));
    }

    #[test]
    fn geodesic_is_constant_speed() {
        let s2 = Space::Sphere(2);
        let pts = sample(s2, 11, 40).unwrap();
        for w in pts.chunks(2) {
            let d = w[0].dist(&w[1]);
            for t in [0.1, 0.37, 0.8] {
                let m = geodesic_point(s2, &w[0], &w[1], t).unwrap();
                assert!((w[0].dist(&m) - t * d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wedge_geodesic_passes_through_basepoint() {
        let a = SpacePoint::wedge_sphere([0.0, 1.0, 0.0]).unwrap();
        let b = SpacePoint::wedge_circle(PI / 2.0).unwrap();
        let m = geodesic_point(Space::WedgeS2S1, &a, &b, 0.5).unwrap();
        assert_eq!(m.wedge(), Some(&WedgePoint::Circle(0.0)));
    }

    #[test]
    fn json_round_trip() {
        let p = SpacePoint::sphere(vec![0.0, 0.0, 1.0]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"space":"S2","coords":[0.0,0.0,1.0]}"#);
        let w = SpacePoint::wedge_circle(1.25).unwrap();
        let back: SpacePoint = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
        let d: SpacePoint = serde_json::from_str(r#"{"space":"Discrete4","index":2}"#).unwrap();
        assert_eq!(d.index(), Some(2));
        let bad = serde_json::from_str::<Configuration>(
            r#"{"space":"S1","points":[{"space":"S1","coords":[1,0]},{"space":"S1","coords":[1,0]}]}"#,
        );
        assert!(bad.is_err());
    }
}
