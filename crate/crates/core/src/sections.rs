//! Explicit local sections of the projections `F(X,k) -> F(X,r)`, covers by
//! such sections, and a sampling verifier.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Attr, SpaceTerm};
use crate::error::{Error, Result};
use crate::geometry::{self, Configuration, Space, SpacePoint, DEFAULT_SEPARATION};
use crate::selfmaps::{self, SelfMap};

/// Largest allowed ratio `d(s(x), s(x')) / d(x, x')` in the continuity probe.
pub const CONTINUITY_THRESHOLD: f64 = 100.0;
/// Radius of the perturbations used by the continuity probe.
pub const PROBE_RADIUS: f64 = 1e-3;
/// Largest allowed `|pi(s(x)) - x|`.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Open subset of `F(X, r)` given by strict distance conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Everything,
    /// Every coordinate is further than the separation threshold from each listed point.
    Avoid { points: Vec<SpacePoint> },
}

impl Region {
    /// Smallest distance from a coordinate of `x` to an excluded point.
    pub fn margin(&self, x: &Configuration) -> f64 {
        match self {
            Region::Everything => f64::INFINITY,
            Region::Avoid { points } => x
                .points()
                .iter()
                .flat_map(|c| points.iter().map(move |p| c.dist(p)))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn contains(&self, x: &Configuration) -> bool {
        self.margin(x) > DEFAULT_SEPARATION
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SectionMap {
    /// `x -> (x, tail)`.
    AppendFixed { tail: Vec<SpacePoint> },
    /// `x -> (x, f_2(x), ..., f_k(x))` on `F(X, 1) = X`.
    AppendImages { maps: Vec<SelfMap> },
    /// First `m` coordinates of another section.
    Truncate { inner: Box<SectionMap>, m: usize },
}

impl SectionMap {
    fn points(&self, x: &Configuration) -> Vec<SpacePoint> {
        match self {
            SectionMap::AppendFixed { tail } => x.points().iter().chain(tail).cloned().collect(),
            SectionMap::AppendImages { maps } => {
                let head = &x.points()[0];
                std::iter::once(head.clone()).chain(maps.iter().map(|f| f.apply(head))).collect()
            }
            SectionMap::Truncate { inner, m } => {
                let mut pts = inner.points(x);
                pts.truncate(*m);
                pts
            }
        }
    }
}

/// A continuous right inverse of `F(X,k) -> F(X,r)` over an open region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalSection {
    pub space: Space,
    pub k: usize,
    pub r: usize,
    pub region: Region,
    pub map: SectionMap,
}

impl LocalSection {
    pub fn contains(&self, x: &Configuration) -> bool {
        x.space() == self.space && x.k() == self.r && self.region.contains(x)
    }

    pub fn is_global(&self) -> bool {
        self.region == Region::Everything
    }

    /// `s(x)`; fails when `x` is not a base point of the right shape or the image
    /// is not a configuration.
    pub fn apply(&self, x: &Configuration) -> Result<Configuration> {
        self.space.expect(x.space())?;
        if x.k() != self.r {
            return Err(Error::InvalidArgument(format!(
                "section of pi({},{}) applied to a configuration of {} points",
                self.k,
                self.r,
                x.k()
            )));
        }
        Configuration::new(self.space, self.map.points(x))
    }

    pub fn apply_point(&self, x: &SpacePoint) -> Result<Configuration> {
        self.apply(&Configuration::new(self.space, vec![x.clone()])?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionCover {
    pub space: Space,
    pub k: usize,
    pub r: usize,
    pub pieces: Vec<LocalSection>,
    pub claims_cover: bool,
}

impl SectionCover {
    /// Index of the first piece whose region contains `x`.
    pub fn piece_for(&self, x: &Configuration) -> Option<usize> {
        self.pieces.iter().position(|s| s.contains(x))
    }

    pub fn single(section: LocalSection) -> Self {
        SectionCover {
            space: section.space,
            k: section.k,
            r: section.r,
            claims_cover: section.is_global(),
            pieces: vec![section],
        }
    }

    /// Same cover with piece `i` removed; still claims to cover.
    pub fn without_piece(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.pieces.remove(i);
        out
    }
}

/// `k` distinct points to use as basepoints: seed-0 samples, or the first `k`
/// points of a finite space.
pub fn default_basepoints(space: Space, k: usize) -> Result<Vec<SpacePoint>> {
    match space {
        Space::Discrete(n) => {
            if k > n {
                return Err(Error::InvalidArgument(format!("Discrete{n} has fewer than {k} points")));
            }
            (0..k).map(|i| SpacePoint::discrete(n, i)).collect()
        }
        _ => geometry::sample(space, 0, k),
    }
}

fn check_basepoints(space: Space, k: usize, basepoints: &[SpacePoint]) -> Result<()> {
    if !space.is_hausdorff() {
        return Err(Error::NotHausdorff(space.to_string()));
    }
    if basepoints.len() != k {
        return Err(Error::InvalidArgument(format!(
            "expected {k} basepoints, got {}",
            basepoints.len()
        )));
    }
    Configuration::new(space, basepoints.to_vec()).map(|_| ())
}

/// `k` pieces; piece `i` avoids every basepoint but `p_i` and appends them in order.
pub fn key_lemma_cover(space: Space, k: usize, basepoints: &[SpacePoint]) -> Result<SectionCover> {
    if k < 2 {
        return Err(Error::InvalidArgument("the cover needs k >= 2".into()));
    }
    binomial_cover(space, k, 1, basepoints)
}

/// One piece for each `r`-subset `I` of the basepoints: tuples avoiding the
/// complementary points, mapped to `(x, p_j : j not in I)`.
pub fn binomial_cover(space: Space, k: usize, r: usize, basepoints: &[SpacePoint]) -> Result<SectionCover> {
    if !(1..k).contains(&r) {
        return Err(Error::ProjectionOutOfRange { r, k });
    }
    check_basepoints(space, k, basepoints)?;
    let pieces = combinations(k, r)
        .into_iter()
        .map(|subset| {
            let rest: Vec<SpacePoint> = (0..k)
                .filter(|j| !subset.contains(j))
                .map(|j| basepoints[j].clone())
                .collect();
            LocalSection {
                space,
                k,
                r,
                region: Region::Avoid { points: rest.clone() },
                map: SectionMap::AppendFixed { tail: rest },
            }
        })
        .collect();
    Ok(SectionCover {
        space,
        k,
        r,
        pieces,
        claims_cover: true,
    })
}

/// `r`-subsets of `0..k` in lexicographic order.
pub fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

/// Global section `x -> (x, f_2(x), ..., f_k(x))` of `F(X,k) -> X` from
/// fixed-point-free, pairwise noncoincident self-maps, checked on `n` samples.
pub fn from_fpf_family(fs: &[SelfMap], seed: u64, n: usize) -> Result<LocalSection> {
    let first = fs.first().ok_or(Error::EmptyMapList)?;
    let space = first.space();
    for (i, f) in fs.iter().enumerate() {
        space.expect(f.space())?;
        let gap = selfmaps::fixed_point_gap(f, seed, n)?;
        if gap <= DEFAULT_SEPARATION {
            let pts = geometry::sample(space, seed, n)?;
            let worst = pts
                .iter()
                .min_by(|a, b| a.dist(&f.apply(a)).total_cmp(&b.dist(&f.apply(b))))
                .expect("nonempty sample");
            return Err(Error::CoincidenceDetected(format!(
                "map {} ({}) moves {} by only {gap:e}",
                i + 2,
                f.recipe().name(),
                serde_json::to_string(worst)?
            )));
        }
    }
    let check = selfmaps::are_noncoincident(fs, seed, n)?;
    if !check.noncoincident {
        let w = check.witness.expect("a failed check has a witness");
        return Err(Error::CoincidenceDetected(format!(
            "maps {} and {} agree at {} (distance {:e})",
            w.i + 2,
            w.j + 2,
            serde_json::to_string(&w.point)?,
            w.distance
        )));
    }
    Ok(LocalSection {
        space,
        k: fs.len() + 1,
        r: 1,
        region: Region::Everything,
        map: SectionMap::AppendImages { maps: fs.to_vec() },
    })
}

/// `x -> (x, -x)` on `S^d`.
pub fn sphere_sigma(d: usize) -> Result<LocalSection> {
    if d == 0 {
        return Err(Error::InvalidSpace("S^0 has no sigma section here; use d >= 1".into()));
    }
    Ok(LocalSection {
        space: Space::Sphere(d).validate()?,
        k: 2,
        r: 1,
        region: Region::Everything,
        map: SectionMap::AppendImages {
            maps: vec![SelfMap::antipodal(d)],
        },
    })
}

/// Section of `F(X,m) -> X` obtained by forgetting the last `k - m` points.
pub fn drop_points(s: &LocalSection, m: usize) -> Result<LocalSection> {
    if s.r != 1 {
        return Err(Error::InvalidArgument("drop_points needs a section over X".into()));
    }
    if m < 1 || m > s.k {
        return Err(Error::InvalidArgument(format!("cannot keep {m} of {} points", s.k)));
    }
    if m == s.k {
        return Ok(s.clone());
    }
    Ok(LocalSection {
        k: m,
        map: SectionMap::Truncate {
            inner: Box::new(s.map.clone()),
            m,
        },
        ..s.clone()
    })
}

/// Smallest `d(x, s(x)_2)` over `n` samples: the fixed-point gap of the self-map
/// induced by a global section of `F(X,2) -> X`.
pub fn induced_map_gap(s: &LocalSection, seed: u64, n: usize) -> Result<f64> {
    if s.r != 1 || s.k < 2 || !s.is_global() {
        return Err(Error::InvalidArgument("needs a global section over X with k >= 2".into()));
    }
    let pts = geometry::sample(s.space, seed, n)?;
    pts.par_iter()
        .map(|x| s.apply_point(x).map(|y| x.dist(&y.points()[1])))
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Checks {
    pub coverage: bool,
    pub identity: bool,
    pub separation: bool,
    pub continuity: bool,
    pub valid_images: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub space: Space,
    pub k: usize,
    pub r: usize,
    pub pieces: usize,
    pub seed: u64,
    pub samples: usize,
    pub landmarks: usize,
    pub claims_cover: bool,
    /// Fraction of sampled base points lying in at least one region.
    pub coverage: f64,
    pub uncovered: Option<Configuration>,
    pub identity_error: f64,
    pub min_separation: f64,
    pub continuity_ratio: f64,
    pub invalid_images: usize,
    pub checks: Checks,
    pub passed: bool,
}

#[derive(Default)]
struct Tally {
    covered: usize,
    uncovered: Option<(usize, Configuration)>,
    identity: f64,
    separation: f64,
    ratio: f64,
    invalid: usize,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.covered += o.covered;
        self.uncovered = match (self.uncovered, o.uncovered) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self.identity = self.identity.max(o.identity);
        self.separation = self.separation.min(o.separation);
        self.ratio = self.ratio.max(o.ratio);
        self.invalid += o.invalid;
        self
    }
}

/// Base configurations built from excluded points, so that a missing piece shows up.
fn landmarks(cover: &SectionCover) -> Vec<Configuration> {
    let mut excluded: Vec<SpacePoint> = Vec::new();
    for s in &cover.pieces {
        if let Region::Avoid { points } = &s.region {
            for p in points {
                if !excluded.contains(p) {
                    excluded.push(p.clone());
                }
            }
        }
    }
    if excluded.len() < cover.r {
        return Vec::new();
    }
    combinations(excluded.len(), cover.r)
        .into_iter()
        .filter_map(|idx| Configuration::new(cover.space, idx.iter().map(|&i| excluded[i].clone()).collect()).ok())
        .collect()
}

fn probe_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = geometry::rng_for(seed);
    rng.set_stream(stream + 1);
    rng
}

fn perturb_configuration(x: &Configuration, rng: &mut ChaCha8Rng) -> Option<Configuration> {
    let pts = x.points().iter().map(|p| geometry::perturb(p, PROBE_RADIUS, rng)).collect();
    Configuration::new(x.space(), pts).ok()
}

fn examine(cover: &SectionCover, idx: usize, x: &Configuration, seed: u64) -> Tally {
    let mut t = Tally {
        separation: f64::INFINITY,
        ..Tally::default()
    };
    let mut rng = probe_rng(seed, idx as u64);
    let mut any = false;
    for s in cover.pieces.iter().filter(|s| s.contains(x)) {
        any = true;
        let y = match s.apply(x) {
            Ok(y) => y,
            Err(_) => {
                t.invalid += 1;
                continue;
            }
        };
        let back = y.project(cover.r).expect("image has k >= r points");
        let exact = back.points().iter().zip(x.points()).all(|(a, b)| a == b);
        let err = if exact { 0.0 } else { back.distance(x).max(f64::MIN_POSITIVE) };
        t.identity = t.identity.max(err);
        t.separation = t.separation.min(y.min_separation());
        if let Some(x2) = perturb_configuration(x, &mut rng).filter(|x2| s.contains(x2)) {
            let dx = x.distance(&x2);
            if dx > 1e-15 {
                if let Ok(y2) = s.apply(&x2) {
                    t.ratio = t.ratio.max(y.distance(&y2) / dx);
                }
            }
        }
    }
    if any {
        t.covered = 1;
    } else {
        t.uncovered = Some((idx, x.clone()));
    }
    t
}

/// Samples `n` base configurations (basepoint landmarks first) and checks
/// coverage, `pi . s = id`, image separation and a local Lipschitz probe.
pub fn verify_cover(cover: &SectionCover, seed: u64, n: usize) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be at least 1".into()));
    }
    let marks = landmarks(cover);
    let mut bases: Vec<Configuration> = marks.iter().take(n).cloned().collect();
    let mut rng = geometry::rng_for(seed);
    while bases.len() < n {
        bases.push(geometry::sample_configuration(cover.space, cover.r, &mut rng)?);
    }
    let t = bases
        .par_iter()
        .enumerate()
        .map(|(i, x)| examine(cover, i, x, seed))
        .reduce(
            || Tally {
                separation: f64::INFINITY,
                ..Tally::default()
            },
            Tally::merge,
        );
    let coverage = t.covered as f64 / n as f64;
    let checks = Checks {
        coverage: !cover.claims_cover || t.covered == n,
        identity: t.identity <= IDENTITY_TOLERANCE,
        separation: t.separation > DEFAULT_SEPARATION,
        continuity: t.ratio <= CONTINUITY_THRESHOLD,
        valid_images: t.invalid == 0,
    };
    let passed = checks.coverage && checks.identity && checks.separation && checks.continuity && checks.valid_images;
    Ok(VerificationReport {
        space: cover.space,
        k: cover.k,
        r: cover.r,
        pieces: cover.pieces.len(),
        seed,
        samples: n,
        landmarks: marks.len().min(n),
        claims_cover: cover.claims_cover,
        coverage,
        uncovered: t.uncovered.map(|(_, x)| x),
        identity_error: t.identity,
        min_separation: t.separation,
        continuity_ratio: t.ratio,
        invalid_images: t.invalid,
        checks,
        passed,
    })
}

pub fn verify_section(s: &LocalSection, seed: u64, n: usize) -> Result<VerificationReport> {
    verify_cover(&SectionCover::single(s.clone()), seed, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sec21 {
    One,
    Two,
    Infinite,
    Unknown,
}

impl std::fmt::Display for Sec21 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sec21::One => "1",
            Sec21::Two => "2",
            Sec21::Infinite => "inf",
            Sec21::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FppVerdict {
    pub space: Space,
    pub fpp: Answer,
    pub sec21: Sec21,
    /// False when `F(X,2)` is empty and the characterization says nothing.
    pub theorem_applies: bool,
    pub reason: String,
    /// Global section of `F(X,2) -> X` when the space lacks the FPP.
    pub section: Option<LocalSection>,
    pub gap: Option<f64>,
}

/// Samples used to confirm a catalog map is fixed-point free before reporting it.
const VERDICT_SAMPLES: usize = 2000;

/// FPP and `sec(F(X,2) -> X)` for a model space. A fixed-point-free catalog map
/// gives a global section; otherwise only a preset FPP fact gives `sec = 2`.
pub fn fpp_verdict(space: Space, seed: u64) -> Result<FppVerdict> {
    let space = space.validate()?;
    if !space.is_hausdorff() {
        return Err(Error::NotHausdorff(space.to_string()));
    }
    if space == Space::Discrete(1) {
        return Ok(FppVerdict {
            space,
            fpp: Answer::Yes,
            sec21: Sec21::Infinite,
            theorem_applies: false,
            reason: "one point: F(X,2) is empty, so the projection has no local sections".into(),
            section: None,
            gap: None,
        });
    }
    if let Some(f) = selfmaps::fixed_point_free_map(space) {
        let s = from_fpf_family(std::slice::from_ref(&f), seed, VERDICT_SAMPLES)?;
        let gap = induced_map_gap(&s, seed, VERDICT_SAMPLES)?;
        return Ok(FppVerdict {
            space,
            fpp: Answer::No,
            sec21: Sec21::One,
            theorem_applies: true,
            reason: format!("{} has no fixed points; x -> (x, f(x)) is a global section", f.recipe().name()),
            section: Some(s),
            gap: Some(gap),
        });
    }
    let store = bounds::presets::preset_for(&space)?.propagate()?;
    if let Some(d) = store.space_holds(&SpaceTerm::named(space.to_string()), Attr::Fpp) {
        return Ok(FppVerdict {
            space,
            fpp: Answer::Yes,
            sec21: Sec21::Two,
            theorem_applies: true,
            reason: d.render().trim_end().to_string(),
            section: None,
            gap: None,
        });
    }
    Ok(FppVerdict {
        space,
        fpp: Answer::Unknown,
        sec21: Sec21::Unknown,
        theorem_applies: true,
        reason: "no fixed-point-free catalog map and no FPP fact".into(),
        section: None,
        gap: None,
    })
}

/// Random order of pieces; used to check that verification does not depend on it.
pub fn shuffled(cover: &SectionCover, seed: u64) -> SectionCover {
    let mut out = cover.clone();
    out.pieces.shuffle(&mut geometry::rng_for(seed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(space: Space, pts: Vec<SpacePoint>) -> Configuration {
        Configuration::new(space, pts).unwrap()
    }

    #[test]
    fn key_lemma_on_circle() {
        let p = vec![SpacePoint::circle_angle(0.0), SpacePoint::circle_angle(PI / 2.0)];
        let cover = key_lemma_cover(Space::Sphere(1), 2, &p).unwrap();
        assert_eq!(cover.pieces.len(), 2);
        let x = SpacePoint::circle_angle(1.0);
        let y = cover.pieces[0].apply_point(&x).unwrap();
        assert_eq!(y.points(), &[x.clone(), p[1].clone()]);
        assert!(!cover.pieces[0].contains(&cfg(Space::Sphere(1), vec![p[1].clone()])));
        assert!(cover.pieces[1].contains(&cfg(Space::Sphere(1), vec![p[1].clone()])));
        let report = verify_cover(&cover, 0, 2000).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.coverage, 1.0);
        assert_eq!(report.identity_error, 0.0);
    }

    #[test]
    fn key_lemma_preconditions() {
        let s2 = Space::Sphere(2);
        let p = default_basepoints(s2, 3).unwrap();
        assert!(key_lemma_cover(s2, 1, &p[..1]).is_err());
        assert!(key_lemma_cover(s2, 3, &p[..2]).is_err());
        let same = vec![p[0].clone(), p[0].clone(), p[1].clone()];
        assert!(matches!(key_lemma_cover(s2, 3, &same), Err(Error::NotDistinct { .. })));
    }

    #[test]
    fn binomial_counts_and_specialization() {
        let s2 = Space::Sphere(2);
        for (k, r, c) in [(3, 2, 3), (4, 2, 6), (4, 1, 4), (5, 3, 10)] {
            let p = default_basepoints(s2, k).unwrap();
            assert_eq!(binomial_cover(s2, k, r, &p).unwrap().pieces.len(), c);
        }
        let p = default_basepoints(s2, 2).unwrap();
        assert_eq!(binomial_cover(s2, 2, 1, &p).unwrap(), key_lemma_cover(s2, 2, &p).unwrap());
        assert!(binomial_cover(s2, 2, 2, &p).is_err());
    }

    #[test]
    fn binomial_cover_verifies() {
        let s2 = Space::Sphere(2);
        let p = default_basepoints(s2, 4).unwrap();
        let report = verify_cover(&binomial_cover(s2, 4, 2, &p).unwrap(), 1, 2000).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn removed_piece_is_detected() {
        let s2 = Space::Sphere(2);
        let p = default_basepoints(s2, 3).unwrap();
        let cover = key_lemma_cover(s2, 3, &p).unwrap();
        for i in 0..3 {
            let report = verify_cover(&cover.without_piece(i), 0, 500).unwrap();
            assert!(report.coverage < 1.0);
            assert!(!report.checks.coverage && !report.passed);
            assert!(report.uncovered.is_some());
        }
    }

    #[test]
    fn sigma() {
        let s = sphere_sigma(2).unwrap();
        let y = s.apply_point(&SpacePoint::sphere(vec![0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(y.points()[1].vector().unwrap(), &[0.0, 0.0, -1.0]);
        assert!((y.min_separation() - PI).abs() < 1e-15);
        assert!(verify_section(&s, 0, 2000).unwrap().passed);
    }

    #[test]
    fn group_translations() {
        let fs = vec![
            SelfMap::circle_rotation(2.0 * PI / 3.0).unwrap(),
            SelfMap::circle_rotation(4.0 * PI / 3.0).unwrap(),
        ];
        let s = from_fpf_family(&fs, 0, 1000).unwrap();
        assert_eq!((s.k, s.r), (3, 1));
        assert!(verify_section(&s, 0, 1000).unwrap().passed);
        let d = drop_points(&s, 2).unwrap();
        let direct = from_fpf_family(&fs[..1], 0, 1000).unwrap();
        for x in geometry::sample(Space::Sphere(1), 5, 100).unwrap() {
            assert_eq!(d.apply_point(&x).unwrap(), direct.apply_point(&x).unwrap());
        }
        assert_eq!(drop_points(&s, 3).unwrap(), s);
        assert!(drop_points(&s, 0).is_err());
    }

    #[test]
    fn coincidences_rejected() {
        let id = SelfMap::identity(Space::Sphere(2));
        assert!(matches!(from_fpf_family(&[id], 0, 100), Err(Error::CoincidenceDetected(_))));
        let a = SelfMap::antipodal(2);
        assert!(matches!(
            from_fpf_family(&[a.clone(), a], 0, 100),
            Err(Error::CoincidenceDetected(_))
        ));
        assert!(matches!(from_fpf_family(&[], 0, 100), Err(Error::EmptyMapList)));
    }

    #[test]
    fn torus_drop_points() {
        let t2 = Space::Torus(2);
        let fs = vec![
            SelfMap::translation(SpacePoint::torus(vec![PI, 0.0]).unwrap()).unwrap(),
            SelfMap::translation(SpacePoint::torus(vec![0.0, PI]).unwrap()).unwrap(),
            SelfMap::translation(SpacePoint::torus(vec![PI, PI]).unwrap()).unwrap(),
        ];
        let s = from_fpf_family(&fs, 0, 1000).unwrap();
        let d = drop_points(&s, 3).unwrap();
        assert_eq!(d.space, t2);
        assert!(verify_section(&d, 0, 1000).unwrap().passed);
    }

    #[test]
    fn induced_self_map() {
        for space in [Space::Sphere(1), Space::Sphere(3), Space::RealProjective(3), Space::Torus(2)] {
            let f = selfmaps::fixed_point_free_map(space).unwrap();
            let s = from_fpf_family(&[f], 0, 500).unwrap();
            assert!(induced_map_gap(&s, 1, 500).unwrap() > 0.0);
        }
    }

    #[test]
    fn verdicts() {
        let v = fpp_verdict(Space::Sphere(2), 0).unwrap();
        assert_eq!((v.fpp, v.sec21), (Answer::No, Sec21::One));
        assert!(v.section.is_some());
        let v = fpp_verdict(Space::RealProjective(2), 0).unwrap();
        assert_eq!((v.fpp, v.sec21), (Answer::Yes, Sec21::Two));
        let v = fpp_verdict(Space::RealProjective(3), 0).unwrap();
        assert_eq!((v.fpp, v.sec21), (Answer::No, Sec21::One));
        assert!(v.reason.contains("rp_odd_rotation"));
        let v = fpp_verdict(Space::Disc(2), 0).unwrap();
        assert_eq!(v.sec21, Sec21::Two);
        let v = fpp_verdict(Space::Discrete(1), 0).unwrap();
        assert_eq!((v.fpp, v.sec21, v.theorem_applies), (Answer::Yes, Sec21::Infinite, false));
        let v = fpp_verdict(Space::Discrete(4), 0).unwrap();
        assert_eq!(v.sec21, Sec21::One);
    }

    #[test]
    fn piece_order_irrelevant() {
        let s2 = Space::Sphere(2);
        let p = default_basepoints(s2, 3).unwrap();
        let cover = binomial_cover(s2, 3, 2, &p).unwrap();
        let a = verify_cover(&cover, 3, 300).unwrap();
        let b = verify_cover(&shuffled(&cover, 9), 3, 300).unwrap();
        assert_eq!((a.passed, a.coverage), (b.passed, b.coverage));
    }
}
