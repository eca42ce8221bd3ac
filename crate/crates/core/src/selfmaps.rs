//! Named self-maps of the model spaces and their numerical checks:
//! fixed-point gap, pairwise non-coincidence and mapping degree on `S^1`, `S^2`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, Coords, Space, SpacePoint, WedgePoint, DEFAULT_SEPARATION, WEDGE_SPHERE_BASE};

/// Named vector fields that can be flowed for a short time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorField {
    /// `v(x) = Jx`, rotating each coordinate pair of an odd sphere.
    OddSphereRotation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "snake_case")]
pub enum Recipe {
    Antipodal,
    /// `[x1 : y1 : ... ] -> [-y1 : x1 : ...]` on `RP^(2n+1)`.
    RpOddRotation,
    GroupTranslation { by: SpacePoint },
    /// Sphere branch onto the circle through `gamma`, circle branch by the antipode.
    WedgeShift,
    VectorFieldFlow { field: VectorField, epsilon: f64 },
    Identity,
    /// Applied left to right.
    Composite { maps: Vec<SelfMap> },
    CpOddRotation,
    HpOddRotation,
}

impl Recipe {
    pub fn name(&self) -> &'static str {
        match self {
            Recipe::Antipodal => "antipodal",
            Recipe::RpOddRotation => "rp_odd_rotation",
            Recipe::GroupTranslation { .. } => "group_translation",
            Recipe::WedgeShift => "wedge_shift",
            Recipe::VectorFieldFlow { .. } => "vector_field_flow",
            Recipe::Identity => "identity",
            Recipe::Composite { .. } => "composite",
            Recipe::CpOddRotation => "cp_odd_rotation",
            Recipe::HpOddRotation => "hp_odd_rotation",
        }
    }
}

/// A continuous self-map of a model space, given by a recipe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSelfMap", into = "RawSelfMap")]
pub struct SelfMap {
    space: Space,
    recipe: Recipe,
}

#[derive(Serialize, Deserialize)]
struct RawSelfMap {
    space: Space,
    #[serde(flatten)]
    recipe: Recipe,
}

impl TryFrom<RawSelfMap> for SelfMap {
    type Error = Error;

    fn try_from(raw: RawSelfMap) -> Result<Self> {
        SelfMap::new(raw.space, raw.recipe)
    }
}

impl From<SelfMap> for RawSelfMap {
    fn from(f: SelfMap) -> Self {
        RawSelfMap {
            space: f.space,
            recipe: f.recipe,
        }
    }
}

fn identity_element(space: Space) -> Option<SpacePoint> {
    match space {
        Space::Sphere(1) => Some(SpacePoint::circle_angle(0.0)),
        Space::Torus(m) => SpacePoint::torus(vec![0.0; m]).ok(),
        Space::Euclidean(m) => SpacePoint::euclidean(vec![0.0; m]).ok(),
        Space::Discrete(n) => SpacePoint::discrete(n, 0).ok(),
        _ => None,
    }
}

impl SelfMap {
    pub fn new(space: Space, recipe: Recipe) -> Result<Self> {
        let space = space.validate()?;
        let mismatch = |recipe: &Recipe| Error::RecipeMismatch {
            recipe: recipe.name().to_string(),
            space,
        };
        match (&recipe, space) {
            (Recipe::Antipodal, Space::Sphere(_)) => {}
            (Recipe::RpOddRotation, Space::RealProjective(d)) if d % 2 == 1 => {}
            (Recipe::GroupTranslation { by }, _) => {
                let e = identity_element(space).ok_or_else(|| mismatch(&recipe))?;
                if by.space() != space {
                    return Err(Error::SpaceMismatch {
                        expected: space,
                        found: by.space(),
                    });
                }
                if by.dist(&e) == 0.0 {
                    return Err(Error::InvalidArgument("translation by the identity element".into()));
                }
            }
            (Recipe::WedgeShift, Space::WedgeS2S1) => {}
            (Recipe::VectorFieldFlow { field, epsilon }, Space::Sphere(d)) => {
                let VectorField::OddSphereRotation = field;
                if d % 2 == 0 {
                    return Err(mismatch(&recipe));
                }
                if !(*epsilon > 0.0 && *epsilon <= PI) {
                    return Err(Error::InvalidArgument(format!("flow time {epsilon} outside (0, pi]")));
                }
            }
            (Recipe::Identity, _) => {}
            (Recipe::Composite { maps }, _) => {
                if maps.is_empty() {
                    return Err(Error::EmptyMapList);
                }
                if let Some(bad) = maps.iter().find(|m| m.space != space) {
                    return Err(Error::SpaceMismatch {
                        expected: space,
                        found: bad.space,
                    });
                }
            }
            (Recipe::CpOddRotation | Recipe::HpOddRotation, _) => {
                return Err(Error::Unsupported(format!(
                    "{} (complex and quaternionic projective models are not implemented)",
                    recipe.name()
                )))
            }
            _ => return Err(mismatch(&recipe)),
        }
        Ok(SelfMap { space, recipe })
    }

    pub fn antipodal(d: usize) -> Self {
        SelfMap {
            space: Space::Sphere(d),
            recipe: Recipe::Antipodal,
        }
    }

    pub fn identity(space: Space) -> Self {
        SelfMap {
            space,
            recipe: Recipe::Identity,
        }
    }

    pub fn rp_odd_rotation(d: usize) -> Result<Self> {
        Self::new(Space::RealProjective(d), Recipe::RpOddRotation)
    }

    pub fn translation(by: SpacePoint) -> Result<Self> {
        Self::new(by.space(), Recipe::GroupTranslation { by })
    }

    /// Rotation of `S^1` by `theta`.
    pub fn circle_rotation(theta: f64) -> Result<Self> {
        Self::translation(SpacePoint::circle_angle(theta))
    }

    pub fn wedge_shift() -> Self {
        SelfMap {
            space: Space::WedgeS2S1,
            recipe: Recipe::WedgeShift,
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// Whether the recipe is known to have no fixed points.
    pub fn is_fixed_point_free(&self) -> bool {
        match &self.recipe {
            Recipe::Antipodal
            | Recipe::RpOddRotation
            | Recipe::GroupTranslation { .. }
            | Recipe::WedgeShift
            | Recipe::VectorFieldFlow { .. } => true,
            Recipe::Identity | Recipe::Composite { .. } => false,
            Recipe::CpOddRotation | Recipe::HpOddRotation => true,
        }
    }

    pub fn evaluate(&self, p: &SpacePoint) -> Result<SpacePoint> {
        if p.space() != self.space {
            return Err(Error::SpaceMismatch {
                expected: self.space,
                found: p.space(),
            });
        }
        Ok(self.apply(p))
    }

    /// Evaluation on a point already known to lie in `self.space`.
    pub(crate) fn apply(&self, p: &SpacePoint) -> SpacePoint {
        let space = self.space;
        let coords = match (&self.recipe, p.coords()) {
            (Recipe::Identity, _) => return p.clone(),
            (Recipe::Composite { maps }, _) => {
                return maps.iter().fold(p.clone(), |x, f| f.apply(&x));
            }
            (Recipe::Antipodal, Coords::Vector(v)) => Coords::Vector(v.iter().map(|x| -x).collect()),
            (Recipe::RpOddRotation, Coords::Vector(v)) => Coords::Vector(pair_rotate(v, 1.0, 0.0)),
            (Recipe::VectorFieldFlow { epsilon, .. }, Coords::Vector(v)) => {
                let (s, c) = epsilon.sin_cos();
                Coords::Vector(pair_rotate(v, s, c))
            }
            (Recipe::GroupTranslation { by }, c) => match (c, by.coords()) {
                (Coords::Vector(v), Coords::Vector(g)) if space == Space::Sphere(1) => {
                    Coords::Vector(vec![g[0] * v[0] - g[1] * v[1], g[1] * v[0] + g[0] * v[1]])
                }
                (Coords::Vector(v), Coords::Vector(g)) => Coords::Vector(v.iter().zip(g).map(|(x, y)| x + y).collect()),
                (Coords::Angles(a), Coords::Angles(g)) => Coords::Angles(a.iter().zip(g).map(|(x, y)| x + y).collect()),
                (Coords::Index(i), Coords::Index(g)) => {
                    let Space::Discrete(n) = space else { unreachable!() };
                    Coords::Index((i + g) % n)
                }
                _ => unreachable!("validated at construction"),
            },
            (Recipe::WedgeShift, Coords::Wedge(w)) => Coords::Wedge(match w {
                WedgePoint::Sphere(a) => WedgePoint::Circle(wedge_gamma(a[0])),
                WedgePoint::Circle(t) => WedgePoint::Circle(t + PI),
            }),
            _ => unreachable!("validated at construction"),
        };
        SpacePoint::from_canonical(space, coords)
    }
}

/// `(x, y) -> (c x - s y, s x + c y)` on consecutive coordinate pairs.
///
/// With `s = 1, c = 0` this is the complex structure `J`.
fn pair_rotate(v: &[f64], s: f64, c: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len());
    for pair in v.chunks(2) {
        out.push(c * pair[0] - s * pair[1]);
        out.push(s * pair[0] + c * pair[1]);
    }
    out
}

/// Angle of `gamma(a1)`, the path in `S^1` from `b0` (at `a1 = -1`) to `-b0` (at `a1 = 1`).
pub fn wedge_gamma(a1: f64) -> f64 {
    PI * (a1.clamp(-1.0, 1.0) + 1.0) / 2.0
}

/// Smallest `d(p, f(p))` over `n` sampled points.
pub fn fixed_point_gap(f: &SelfMap, seed: u64, n: usize) -> Result<f64> {
    let pts = geometry::sample(f.space, seed, n)?;
    Ok(pts
        .par_iter()
        .map(|p| p.dist(&f.apply(p)))
        .reduce(|| f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoincidenceWitness {
    pub point: SpacePoint,
    pub i: usize,
    pub j: usize,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Noncoincidence {
    /// Verified on the sample only.
    pub noncoincident: bool,
    pub min_distance: f64,
    pub witness: Option<CoincidenceWitness>,
    pub seed: u64,
    pub samples: usize,
}

/// Checks `f_i(x) != f_j(x)` for all sampled `x` and `i < j`.
pub fn are_noncoincident(fs: &[SelfMap], seed: u64, n: usize) -> Result<Noncoincidence> {
    let first = fs.first().ok_or(Error::EmptyMapList)?;
    if let Some(bad) = fs.iter().find(|f| f.space != first.space) {
        return Err(Error::SpaceMismatch {
            expected: first.space,
            found: bad.space,
        });
    }
    let pts = geometry::sample(first.space, seed, n)?;
    let best = pts
        .par_iter()
        .enumerate()
        .filter_map(|(idx, x)| {
            let images: Vec<SpacePoint> = fs.iter().map(|f| f.apply(x)).collect();
            let mut best: Option<(f64, usize, usize, usize)> = None;
            for i in 0..images.len() {
                for j in i + 1..images.len() {
                    let d = images[i].dist(&images[j]);
                    if best.is_none_or(|b| d < b.0) {
                        best = Some((d, idx, i, j));
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if (b.0, b.1) < (a.0, a.1) { b } else { a });
    Ok(match best {
        None => Noncoincidence {
            noncoincident: true,
            min_distance: f64::INFINITY,
            witness: None,
            seed,
            samples: n,
        },
        Some((d, idx, i, j)) => Noncoincidence {
            noncoincident: d > DEFAULT_SEPARATION,
            min_distance: d,
            witness: Some(CoincidenceWitness {
                point: pts[idx].clone(),
                i,
                j,
                distance: d,
            }),
            seed,
            samples: n,
        },
    })
}

/// Mapping degree of a self-map of `S^1` or `S^2`.
pub fn degree(f: &SelfMap) -> Result<i64> {
    match f.space {
        Space::Sphere(1) => circle_degree(f),
        Space::Sphere(2) => sphere2_degree(f, 96),
        other => Err(Error::Unsupported(format!("degree on {other}"))),
    }
}

fn angle_of(p: &SpacePoint) -> f64 {
    let v = p.vector().expect("circle point");
    v[1].atan2(v[0])
}

/// Winding number by accumulating lifted angle increments around the loop.
fn circle_degree(f: &SelfMap) -> Result<i64> {
    let mut n = 4096usize;
    while n <= 1 << 20 {
        let mut total = 0.0;
        let mut prev = angle_of(&f.apply(&SpacePoint::circle_angle(0.0)));
        let mut fine = true;
        for j in 1..=n {
            let cur = angle_of(&f.apply(&SpacePoint::circle_angle(TAU * j as f64 / n as f64)));
            let step = geometry::signed_angle(prev, cur);
            if step.abs() > PI / 4.0 {
                fine = false;
                break;
            }
            total += step;
            prev = cur;
        }
        if fine {
            let w = total / TAU;
            let rounded = w.round();
            if (w - rounded).abs() < 1e-6 {
                return Ok(rounded as i64);
            }
        }
        n *= 4;
    }
    Err(Error::Unsupported("map varies too fast to lift its angle".into()))
}

fn det3(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Vertices and triangles of a cube-sphere mesh with `res` cells per face edge.
fn cube_sphere(res: usize) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let mut verts = Vec::new();
    let mut tris = Vec::new();
    let side = res + 1;
    for face in 0..6 {
        let axis = face / 2;
        let sign = if face % 2 == 0 { 1.0 } else { -1.0 };
        let base = verts.len();
        for i in 0..side {
            for j in 0..side {
                let u = -1.0 + 2.0 * i as f64 / res as f64;
                let w = -1.0 + 2.0 * j as f64 / res as f64;
                let mut v = [0.0; 3];
                v[axis] = sign;
                v[(axis + 1) % 3] = u;
                v[(axis + 2) % 3] = w;
                let n = geometry::norm(&v);
                verts.push([v[0] / n, v[1] / n, v[2] / n]);
            }
        }
        for i in 0..res {
            for j in 0..res {
                let a = base + i * side + j;
                let (b, c, d) = (a + side, a + 1, a + side + 1);
                tris.push([a, b, d]);
                tris.push([a, d, c]);
            }
        }
    }
    (verts, tris)
}

/// Signed count of preimages of a regular value over a triangulated sphere.
///
/// Each mesh triangle whose image (a small spherical triangle) contains the
/// value contributes the product of domain and image orientations. Values
/// that land near an image edge are discarded and another is tried.
fn sphere2_degree(f: &SelfMap, res: usize) -> Result<i64> {
    let (verts, tris) = cube_sphere(res);
    let images: Vec<[f64; 3]> = verts
        .par_iter()
        .map(|v| {
            let p = SpacePoint::from_canonical(Space::Sphere(2), Coords::Vector(v.to_vec()));
            let q = f.apply(&p);
            let w = q.vector().expect("sphere point");
            [w[0], w[1], w[2]]
        })
        .collect();
    for t in &tris {
        for (x, y) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            if geometry::sphere_angle(&images[x], &images[y]) > PI / 4.0 {
                return Err(Error::Unsupported("map varies too fast for the mesh".into()));
            }
        }
    }
    const ATTEMPTS: usize = 8;
    let candidates = geometry::sample(Space::Sphere(2), 0x5eed, ATTEMPTS)?;
    'value: for y in &candidates {
        let y = y.vector().expect("sphere point");
        let mut total = 0i64;
        for t in &tris {
            let (a, mut b, mut c) = (&images[t[0]], &images[t[1]], &images[t[2]]);
            let img = det3(a, b, c);
            if img == 0.0 {
                continue;
            }
            if img < 0.0 {
                std::mem::swap(&mut b, &mut c);
            }
            if geometry::dot(y, a) + geometry::dot(y, b) + geometry::dot(y, c) <= 0.0 {
                continue;
            }
            let tests = [det3(y, b, c), det3(a, y, c), det3(a, b, y)];
            if tests.iter().all(|x| *x > 0.0) {
                if tests.iter().any(|x| *x < 1e-13) {
                    continue 'value;
                }
                let dom = det3(&verts[t[0]], &verts[t[1]], &verts[t[2]]).signum() as i64;
                total += dom * img.signum() as i64;
            } else if tests.iter().all(|x| *x > -1e-13) {
                // within rounding of an edge
                continue 'value;
            }
        }
        return Ok(total);
    }
    Err(Error::DegenerateRegularValue { attempts: ATTEMPTS })
}

/// One row of the catalog listing.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub recipe: &'static str,
    pub spaces: &'static str,
    pub fixed_point_free: bool,
    pub implemented: bool,
}

pub fn catalog() -> Vec<CatalogEntry> {
    let row = |recipe, spaces, fixed_point_free, implemented| CatalogEntry {
        recipe,
        spaces,
        fixed_point_free,
        implemented,
    };
    vec![
        row("antipodal", "S^d, d >= 1", true, true),
        row("rp_odd_rotation", "RP^(2n+1)", true, true),
        row("group_translation", "S1, T^m, R^m, Discrete(n >= 2)", true, true),
        row("wedge_shift", "S2vS1", true, true),
        row("vector_field_flow", "S^(2n+1)", true, true),
        row("identity", "any", false, true),
        row("composite", "any", false, true),
        row("cp_odd_rotation", "CP^(2n+1)", true, false),
        row("hp_odd_rotation", "HP^(2n+1)", true, false),
    ]
}

/// A catalog map without fixed points on `space`, if the catalog has one.
pub fn fixed_point_free_map(space: Space) -> Option<SelfMap> {
    match space {
        Space::Sphere(d) => Some(SelfMap::antipodal(d)),
        Space::RealProjective(d) if d % 2 == 1 => SelfMap::rp_odd_rotation(d).ok(),
        Space::Torus(m) => {
            let mut by = vec![0.0; m];
            by[0] = PI;
            SelfMap::translation(SpacePoint::torus(by).ok()?).ok()
        }
        Space::Euclidean(m) => {
            let mut by = vec![0.0; m];
            by[0] = 1.0;
            SelfMap::translation(SpacePoint::euclidean(by).ok()?).ok()
        }
        Space::WedgeS2S1 => Some(SelfMap::wedge_shift()),
        Space::Discrete(n) if n >= 2 => SelfMap::translation(SpacePoint::discrete(n, 1).ok()?).ok(),
        _ => None,
    }
}

/// Basepoint compatibility of the wedge map: both branch formulas at `(a0, b0)`.
pub fn wedge_basepoint_images() -> (f64, f64) {
    let from_sphere = wedge_gamma(WEDGE_SPHERE_BASE[0]);
    let from_circle = (0.0 + PI).rem_euclid(TAU);
    (from_sphere, from_circle)
}
