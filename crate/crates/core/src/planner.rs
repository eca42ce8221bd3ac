//! Region-based motion planners for the `(k, 1)` problem: move `k` robots so the
//! first one reaches a goal. Every planner moves the whole configuration by a path
//! of isometries, so pairwise distances (and collision-freeness) are preserved.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::presets::preset_for;
use crate::bounds::Interval;
use crate::geometry::{
    perturb, rng_for, sample_configuration, signed_angle, sphere_angle, Configuration, Space, SpacePoint,
    DEFAULT_SEPARATION,
};
use crate::error::{Error, Result};

/// Samples per unit of rotation angle (or translation length).
pub const DEFAULT_DENSITY: f64 = 256.0;
pub const ENDPOINT_TOLERANCE: f64 = 1e-9;
pub const RIGIDITY_TOLERANCE: f64 = 1e-9;
pub const CONTINUITY_THRESHOLD: f64 = 100.0;
pub const PROBE_RADIUS: f64 = 1e-3;
const PROBES: usize = 4;
const PROBE_GRID: usize = 33;
/// Margin keeping the circle and torus region predicates away from their boundaries.
const GROUP_MARGIN: f64 = 1e-6;
/// Pole used by the sphere planner.
const POLE: [f64; 3] = [0.0, 0.0, 1.0];
/// Fixed rotation moving the polar caps to the equator.
const OFF_POLE: Rotation = Rotation {
    axis: [1.0, 0.0, 0.0],
    angle: FRAC_PI_2,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanQuery {
    pub space: Space,
    pub k: usize,
    pub r: usize,
    pub start: Configuration,
    pub goal: Configuration,
}

impl PlanQuery {
    pub fn new(start: Configuration, goal: Configuration) -> Result<Self> {
        let q = PlanQuery {
            space: start.space(),
            k: start.k(),
            r: goal.k(),
            start,
            goal,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.start.space() != self.space || self.goal.space() != self.space {
            return Err(Error::InvalidArgument("start and goal live on different spaces".into()));
        }
        if self.start.k() != self.k || self.goal.k() != self.r {
            return Err(Error::InvalidArgument("k or r does not match the configurations".into()));
        }
        if self.r == 0 || self.r > self.k {
            return Err(Error::ProjectionOutOfRange { r: self.r, k: self.k });
        }
        Ok(())
    }

    /// Random query: uniform start in `F(X,k)` and goal in `F(X,r)`.
    pub fn random<R: Rng>(space: Space, k: usize, r: usize, rng: &mut R) -> Result<Self> {
        let start = sample_configuration(space, k, rng)?;
        let goal = sample_configuration(space, r, rng)?;
        Self::new(start, goal)
    }

    fn first(&self) -> &SpacePoint {
        &self.start.points()[0]
    }

    fn target(&self) -> &SpacePoint {
        &self.goal.points()[0]
    }

    fn distance(&self, other: &PlanQuery) -> f64 {
        self.start.distance(&other.start).max(self.goal.distance(&other.goal))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlannerKind {
    /// Two regions on the circle.
    Circle,
    /// Three regions on the 2-sphere, `k = 2`.
    Sphere2,
    /// Group translations on the torus `T^m`, `2^m` regions. Per coordinate, region
    /// bit 0 takes the shorter signed angle and bit 1 the counterclockwise angle in `(0, 2pi)`.
    Group,
}

impl PlannerKind {
    pub fn for_query(q: &PlanQuery) -> Result<Self> {
        if q.r != 1 {
            return Err(Error::Unsupported(format!("planners handle r = 1 only, got r = {}", q.r)));
        }
        match q.space {
            Space::Sphere(1) => Ok(PlannerKind::Circle),
            Space::Sphere(2) if q.k == 2 => Ok(PlannerKind::Sphere2),
            Space::Sphere(2) => Err(Error::Unsupported(
                "no planner on the 2-sphere for k >= 3; the projection has no section".into(),
            )),
            Space::Torus(_) => Ok(PlannerKind::Group),
            s => Err(Error::Unsupported(format!("no planner for {s}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::Circle => "circle_21",
            PlannerKind::Sphere2 => "sphere2_21",
            PlannerKind::Group => "group_translation",
        }
    }

    pub fn region_count(self, space: Space) -> usize {
        match (self, space) {
            (PlannerKind::Circle, _) => 2,
            (PlannerKind::Sphere2, _) => 3,
            (PlannerKind::Group, Space::Torus(m)) => 1 << m,
            (PlannerKind::Group, _) => 2,
        }
    }

    /// Whether the open predicate of region `id` (1-based) holds at `q`.
    pub fn region_holds(self, q: &PlanQuery, id: usize) -> bool {
        self.region_margin(q, id) > 0.0
    }

    /// Slack in the predicate of region `id` at `q`, in radians: positive inside
    /// the region, and moving the first robot and the goal by at most `m / 2`
    /// each keeps a query with margin `m` inside.
    pub fn region_margin(self, q: &PlanQuery, id: usize) -> f64 {
        if id == 0 || id > self.region_count(q.space) {
            return f64::NEG_INFINITY;
        }
        match self {
            PlannerKind::Circle | PlannerKind::Group => {
                let bits = id - 1;
                group_deltas(q)
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        if bits >> i & 1 == 0 {
                            PI - d.abs() - GROUP_MARGIN
                        } else {
                            d.abs() - GROUP_MARGIN
                        }
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            PlannerKind::Sphere2 => {
                let a = vec3(q.first());
                let g = vec3(q.target());
                let pole_gap = sphere_angle(&a, &POLE).min(sphere_angle(&a, &neg(&POLE)));
                match id {
                    1 => sphere_angle(&g, &neg(&a)) - PI / 6.0,
                    2 => (pole_gap - PI / 8.0).min(sphere_angle(&g, &a) - FRAC_PI_2),
                    _ => (PI / 6.0 - pole_gap).min(sphere_angle(&g, &OFF_POLE.apply(&a)) - PI / 24.0),
                }
            }
        }
    }

    /// Lowest-numbered region whose predicate holds.
    pub fn region_of(self, q: &PlanQuery) -> Result<usize> {
        (1..=self.region_count(q.space))
            .find(|&id| self.region_holds(q, id))
            .ok_or(Error::DegenerateQuery)
    }

    /// The motion prescribed by region `id`; the region predicate is checked.
    pub fn motion_in_region(self, q: &PlanQuery, id: usize) -> Result<Motion> {
        if !self.region_holds(q, id) {
            return Err(Error::DegenerateQuery);
        }
        Ok(match self {
            PlannerKind::Circle | PlannerKind::Group => {
                let bits = id - 1;
                let delta = group_deltas(q)
                    .into_iter()
                    .enumerate()
                    .map(|(i, d)| if bits >> i & 1 == 0 { d } else { d.rem_euclid(2.0 * PI) })
                    .collect();
                Motion::Translation { delta }
            }
            PlannerKind::Sphere2 => {
                let a = vec3(q.first());
                let g = vec3(q.target());
                let steps = match id {
                    1 => vec![Rotation::taking(&a, &g)],
                    2 => vec![Rotation::new(cross(&a, &POLE), PI), Rotation::taking(&neg(&a), &g)],
                    _ => {
                        let b = OFF_POLE.apply(&a);
                        vec![OFF_POLE, Rotation::new(cross(&b, &POLE), PI), Rotation::taking(&neg(&b), &g)]
                    }
                };
                Motion::Rotations { steps }
            }
        })
    }
}

/// Signed shortest angle from the first robot to the goal, per coordinate.
fn group_deltas(q: &PlanQuery) -> Vec<f64> {
    match q.space {
        Space::Torus(_) => {
            let a = q.first().angles().expect("torus point");
            let g = q.target().angles().expect("torus point");
            a.iter().zip(g).map(|(x, y)| signed_angle(*x, *y)).collect()
        }
        _ => vec![signed_angle(circle_angle(q.first()), circle_angle(q.target()))],
    }
}

fn circle_angle(p: &SpacePoint) -> f64 {
    let v = p.vector().expect("circle point");
    v[1].atan2(v[0])
}

fn vec3(p: &SpacePoint) -> [f64; 3] {
    let v = p.vector().expect("sphere point");
    [v[0], v[1], v[2]]
}

fn neg(v: &[f64; 3]) -> [f64; 3] {
    [-v[0], -v[1], -v[2]]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Rotation of `R^3` about a unit axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl Rotation {
    fn new(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        Rotation {
            axis: [axis[0] / n, axis[1] / n, axis[2] / n],
            angle,
        }
    }

    /// Rotation in the plane of `a` and `b` taking `a` to `b` along the shorter arc.
    fn taking(a: &[f64; 3], b: &[f64; 3]) -> Self {
        let axis = cross(a, b);
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n < 1e-300 {
            return Rotation {
                axis: [0.0, 0.0, 1.0],
                angle: 0.0,
            };
        }
        Rotation::new(axis, sphere_angle(a, b))
    }

    fn partial(&self, s: f64) -> Rotation {
        Rotation {
            axis: self.axis,
            angle: self.angle * s,
        }
    }

    /// Rodrigues' formula.
    fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let (s, c) = self.angle.sin_cos();
        let k = &self.axis;
        let kv = cross(k, v);
        let kd = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = v[i] * c + kv[i] * s + k[i] * kd * (1.0 - c);
        }
        out
    }
}

/// A path of isometries, parametrized by `t` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Motion {
    /// Rotations of the sphere applied one after another, each taking equal time.
    Rotations { steps: Vec<Rotation> },
    /// Translation by `t * delta` in angle coordinates (circle or torus).
    Translation { delta: Vec<f64> },
}

impl Motion {
    /// Total rotation angle or translation length.
    pub fn length(&self) -> f64 {
        match self {
            Motion::Rotations { steps } => steps.iter().map(|r| r.angle.abs()).sum(),
            Motion::Translation { delta } => delta.iter().map(|d| d * d).sum::<f64>().sqrt(),
        }
    }

    /// Bound on how fast any point moves per unit of `t`.
    pub fn speed(&self) -> f64 {
        match self {
            Motion::Rotations { steps } => steps.iter().map(|r| r.angle.abs()).fold(0.0, f64::max) * steps.len() as f64,
            Motion::Translation { .. } => self.length(),
        }
    }

    pub fn point_at(&self, p: &SpacePoint, t: f64) -> Result<SpacePoint> {
        match self {
            Motion::Rotations { steps } => {
                let mut v = vec3(p);
                let n = steps.len() as f64;
                for (i, step) in steps.iter().enumerate() {
                    let s = (t * n - i as f64).clamp(0.0, 1.0);
                    if s > 0.0 {
                        v = step.partial(s).apply(&v);
                    }
                }
                SpacePoint::sphere(v.to_vec())
            }
            Motion::Translation { delta } => match p.space() {
                Space::Torus(_) => {
                    let a = p.angles().expect("torus point");
                    SpacePoint::torus(a.iter().zip(delta).map(|(x, d)| x + t * d).collect())
                }
                _ => Ok(SpacePoint::circle_angle(circle_angle(p) + t * delta[0])),
            },
        }
    }

    pub fn config_at(&self, cfg: &Configuration, t: f64) -> Result<Vec<SpacePoint>> {
        cfg.points().iter().map(|p| self.point_at(p, t)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanSample {
    pub t: f64,
    pub points: Vec<SpacePoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotionPlan {
    pub planner: PlannerKind,
    pub region_id: usize,
    pub regions: usize,
    pub seed: u64,
    pub density: f64,
    pub rigid: bool,
    pub motion: Motion,
    pub samples: Vec<PlanSample>,
}

impl MotionPlan {
    /// Trajectory as CSV: one row per sample and robot.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,robot,coords\n");
        for s in &self.samples {
            for (i, p) in s.points.iter().enumerate() {
                let coords = p.vector().or_else(|| p.angles()).unwrap_or(&[]);
                let joined: Vec<String> = coords.iter().map(|c| format!("{c:.12}")).collect();
                let _ = writeln!(out, "{},{},{}", s.t, i, joined.join(";"));
            }
        }
        out
    }

    pub fn final_points(&self) -> &[SpacePoint] {
        &self.samples.last().expect("plans have samples").points
    }
}

pub fn plan(q: &PlanQuery) -> Result<MotionPlan> {
    plan_with_density(q, DEFAULT_DENSITY)
}

pub fn plan_with_density(q: &PlanQuery, density: f64) -> Result<MotionPlan> {
    q.validate()?;
    let kind = PlannerKind::for_query(q)?;
    let id = kind.region_of(q)?;
    plan_in_region(q, kind, id, density)
}

/// Plans using region `id`, failing if the query is outside it.
pub fn plan_in_region(q: &PlanQuery, kind: PlannerKind, id: usize, density: f64) -> Result<MotionPlan> {
    if !(density > 0.0) {
        return Err(Error::InvalidArgument("sample density must be positive".into()));
    }
    let motion = kind.motion_in_region(q, id)?;
    let n = ((motion.length() * density).ceil() as usize + 1).max(2);
    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            Ok(PlanSample {
                t,
                points: motion.config_at(&q.start, t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MotionPlan {
        planner: kind,
        region_id: id,
        regions: kind.region_count(q.space),
        seed: 0,
        density,
        rigid: true,
        motion,
        samples,
    })
}

pub fn plan_circle_21(q: &PlanQuery) -> Result<MotionPlan> {
    expect_kind(q, PlannerKind::Circle)?;
    plan(q)
}

pub fn plan_sphere2_21(q: &PlanQuery) -> Result<MotionPlan> {
    expect_kind(q, PlannerKind::Sphere2)?;
    plan(q)
}

pub fn plan_group(q: &PlanQuery) -> Result<MotionPlan> {
    if !matches!(q.space, Space::Torus(_) | Space::Sphere(1)) {
        return Err(Error::Unsupported(format!("no group planner for {}", q.space)));
    }
    plan(q)
}

fn expect_kind(q: &PlanQuery, kind: PlannerKind) -> Result<()> {
    let found = PlannerKind::for_query(q)?;
    if found != kind {
        return Err(Error::Unsupported(format!("{} planner does not apply to {}", kind.name(), q.space)));
    }
    Ok(())
}

/// Plans every query in parallel; results keep the input order.
pub fn plan_batch(queries: &[PlanQuery]) -> Vec<Result<MotionPlan>> {
    queries.par_iter().map(plan).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanChecks {
    pub valid_points: bool,
    pub endpoints: bool,
    pub separation: bool,
    pub rigidity: bool,
    pub continuity_in_t: bool,
    pub continuity_probe: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanReport {
    pub start_error: f64,
    pub goal_error: f64,
    pub min_separation: f64,
    /// Largest change of any pairwise distance along the path.
    pub rigidity_error: f64,
    /// Largest jump between consecutive samples, relative to the allowed jump.
    pub max_jump_ratio: f64,
    pub probe_ratio: f64,
    pub probes: usize,
    pub checks: PlanChecks,
    pub passed: bool,
}

fn pairwise(points: &[SpacePoint]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push(points[i].dist(&points[j]));
        }
    }
    out
}

fn points_distance(a: &[SpacePoint], b: &[SpacePoint]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p.dist(q)).fold(0.0, f64::max)
}

/// Checks endpoints, separation, rigidity, continuity in `t` and continuity in the query.
pub fn verify_plan(plan: &MotionPlan, q: &PlanQuery, seed: u64) -> Result<PlanReport> {
    q.validate()?;
    let space = q.space;
    let valid_points = !plan.samples.is_empty()
        && plan
            .samples
            .iter()
            .all(|s| s.points.len() == q.k && s.points.iter().all(|p| p.space() == space));
    if !valid_points {
        return Ok(failed_report());
    }
    let first = &plan.samples[0].points;
    let last = plan.final_points();
    let start_error = points_distance(first, q.start.points());
    let goal_error = points_distance(&last[..q.r], q.goal.points());
    let min_separation = plan
        .samples
        .iter()
        .flat_map(|s| pairwise(&s.points))
        .fold(f64::INFINITY, f64::min);
    let initial = pairwise(first);
    let rigidity_error = plan
        .samples
        .iter()
        .flat_map(|s| pairwise(&s.points).into_iter().zip(initial.clone()).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    let allowed = |dt: f64| 4.0 * plan.motion.speed() * dt + 1e-12;
    let max_jump_ratio = plan
        .samples
        .windows(2)
        .map(|w| points_distance(&w[0].points, &w[1].points) / allowed((w[1].t - w[0].t).abs()))
        .fold(0.0, f64::max);
    let (probe_ratio, probes) = probe_continuity(plan, q, seed)?;
    let checks = PlanChecks {
        valid_points,
        endpoints: start_error <= ENDPOINT_TOLERANCE && goal_error <= ENDPOINT_TOLERANCE,
        separation: min_separation > DEFAULT_SEPARATION,
        rigidity: !plan.rigid || rigidity_error <= RIGIDITY_TOLERANCE,
        continuity_in_t: max_jump_ratio <= 1.0,
        continuity_probe: probe_ratio <= CONTINUITY_THRESHOLD,
    };
    let passed = checks.valid_points
        && checks.endpoints
        && checks.separation
        && checks.rigidity
        && checks.continuity_in_t
        && checks.continuity_probe;
    Ok(PlanReport {
        start_error,
        goal_error,
        min_separation,
        rigidity_error,
        max_jump_ratio,
        probe_ratio,
        probes,
        checks,
        passed,
    })
}

fn failed_report() -> PlanReport {
    PlanReport {
        start_error: f64::INFINITY,
        goal_error: f64::INFINITY,
        min_separation: 0.0,
        rigidity_error: f64::INFINITY,
        max_jump_ratio: f64::INFINITY,
        probe_ratio: f64::INFINITY,
        probes: 0,
        checks: PlanChecks {
            valid_points: false,
            endpoints: false,
            separation: false,
            rigidity: false,
            continuity_in_t: false,
            continuity_probe: false,
        },
        passed: false,
    }
}

/// Replans nearby queries in the same region and compares the motions on a grid of times.
/// Probes stay within a quarter of the region margin; a plan whose region does not hold fails.
fn probe_continuity(plan: &MotionPlan, q: &PlanQuery, seed: u64) -> Result<(f64, usize)> {
    let margin = plan.planner.region_margin(q, plan.region_id);
    if margin <= 0.0 {
        return Ok((f64::INFINITY, 0));
    }
    // stay far enough inside the region that nearby queries are not across its boundary
    let radius = PROBE_RADIUS.min(margin / 4.0);
    let mut rng = rng_for(seed);
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for _ in 0..PROBES * 4 {
        if used == PROBES {
            break;
        }
        let eps = radius * rng.random_range(0.1..=1.0);
        let start: Vec<SpacePoint> = q.start.points().iter().map(|p| perturb(p, eps, &mut rng)).collect();
        let goal: Vec<SpacePoint> = q.goal.points().iter().map(|p| perturb(p, eps, &mut rng)).collect();
        let (Ok(start), Ok(goal)) = (Configuration::new(q.space, start), Configuration::new(q.space, goal)) else {
            continue;
        };
        let nearby = PlanQuery::new(start, goal)?;
        if !plan.planner.region_holds(&nearby, plan.region_id) {
            continue;
        }
        let moved = q.distance(&nearby);
        if moved == 0.0 {
            continue;
        }
        let other = plan.planner.motion_in_region(&nearby, plan.region_id)?;
        let mut sup: f64 = 0.0;
        for i in 0..PROBE_GRID {
            let t = i as f64 / (PROBE_GRID - 1) as f64;
            let here = plan.motion.config_at(&q.start, t)?;
            let there = other.config_at(&nearby.start, t)?;
            sup = sup.max(points_distance(&here, &there));
        }
        worst = worst.max(sup / moved);
        used += 1;
    }
    Ok((worst, used))
}

/// Replaces the sample nearest `t` by the configuration rotated half a turn.
pub fn inject_teleport(plan: &MotionPlan, t: f64) -> Result<MotionPlan> {
    let mut out = plan.clone();
    let i = nearest_sample(plan, t);
    let jump = match plan.samples[i].points[0].space() {
        Space::Torus(m) => Motion::Translation { delta: vec![PI; m] },
        Space::Sphere(1) => Motion::Translation { delta: vec![PI] },
        _ => Motion::Rotations {
            steps: vec![Rotation::new([0.0, 0.0, 1.0], PI)],
        },
    };
    out.samples[i].points = plan.samples[i]
        .points
        .iter()
        .map(|p| jump.point_at(p, 1.0))
        .collect::<Result<_>>()?;
    Ok(out)
}

/// Moves the second robot onto the first at the sample nearest `t`.
pub fn inject_collision(plan: &MotionPlan, t: f64) -> MotionPlan {
    let mut out = plan.clone();
    let i = nearest_sample(plan, t);
    if out.samples[i].points.len() >= 2 {
        out.samples[i].points[1] = out.samples[i].points[0].clone();
    }
    out
}

fn nearest_sample(plan: &MotionPlan, t: f64) -> usize {
    (0..plan.samples.len())
        .min_by(|&a, &b| {
            (plan.samples[a].t - t)
                .abs()
                .partial_cmp(&(plan.samples[b].t - t).abs())
                .expect("finite times")
        })
        .expect("plans have samples")
}

/// How the planner's region count compares with the propagated bounds on `TC(pi(k,1,X))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Optimality {
    pub regions: usize,
    pub complexity: Interval,
    /// `Some(true)` when the region count equals the exactly known complexity.
    pub optimal: Option<bool>,
    /// The region count is at least the propagated lower bound.
    pub consistent: bool,
}

pub fn optimality(space: Space, k: usize) -> Result<Optimality> {
    let kind = match space {
        Space::Sphere(1) => PlannerKind::Circle,
        Space::Sphere(2) => PlannerKind::Sphere2,
        Space::Torus(_) => PlannerKind::Group,
        s => return Err(Error::Unsupported(format!("no planner for {s}"))),
    };
    let regions = kind.region_count(space);
    let knowledge = preset_for(&space)?;
    let q = knowledge.parse_quantity(&format!("TC(pi({k},1,{space}))"))?;
    let complexity = knowledge.query(&q)?.interval;
    let n = crate::bounds::Ext::Fin(regions as u64);
    let optimal = if complexity.lo == complexity.hi {
        Some(complexity.lo == n)
    } else if complexity.hi < n {
        Some(false)
    } else {
        None
    };
    Ok(Optimality {
        regions,
        complexity,
        optimal,
        consistent: complexity.lo <= n,
    })
}
