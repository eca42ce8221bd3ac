//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use confsec::bounds::presets::preset;
use confsec::bounds::{parse_quantity, Ext, Interval, Knowledge};
use confsec::certificates::{
    rp2_certificate, verify_cup_certificate, verify_induced_certificate, CertifiedFact, Coefficients,
    CupLengthCertificate, GradedRing, RawElement, RawProduct, RawRing, Rejection,
};
use confsec::finite::{self, FinitePoset, SecValue};
use confsec::geometry::Space;
use confsec::planner::{self, PlanQuery, PlannerKind};
use confsec::sections::{self, SectionCover};
use confsec::selfmaps::{self, SelfMap};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn discrete_models() -> Outcome {
    for n in 2..=6 {
        let p = FinitePoset::antichain(n).map_err(e)?;
        let fpp = finite::has_fpp(&p).map_err(e)?;
        ensure(!fpp.has_fpp, || format!("discrete({n}) reported FPP"))?;
        let sec = finite::sec_pi21(&p, finite::DEFAULT_MAX_COVER).map_err(e)?;
        ensure(sec.value == SecValue::Finite(1), || format!("discrete({n}): sec = {}", sec.value))?;
    }
    let one = FinitePoset::antichain(1).map_err(e)?;
    let c = finite::main_theorem_check(&one, finite::DEFAULT_MAX_COVER).map_err(e)?;
    ensure(c.sec == SecValue::Infinite, || format!("one point: sec = {}", c.sec))?;
    ensure(!c.applicable, || "one point: theorem flagged applicable".into())?;
    Ok("sizes 2..6: no FPP, sec = 1; size 1: sec = inf, inapplicable".into())
}

fn covers() -> Outcome {
    let n = 10_000;
    let cases: Vec<(&str, SectionCover, usize)> = vec![
        ("key lemma S1 k=2", key_lemma(Space::Sphere(1), 2)?, 2),
        ("key lemma S2 k=3", key_lemma(Space::Sphere(2), 3)?, 3),
        ("key lemma T2 k=3", key_lemma(Space::Torus(2), 3)?, 3),
        ("binomial S2 (3,2)", binomial(Space::Sphere(2), 3, 2)?, 3),
        ("binomial S2 (4,2)", binomial(Space::Sphere(2), 4, 2)?, 6),
    ];
    let mut worst_identity = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for (name, cover, pieces) in cases {
        ensure(cover.pieces.len() == pieces, || format!("{name}: {} pieces", cover.pieces.len()))?;
        let r = sections::verify_cover(&cover, 0, n).map_err(e)?;
        ensure(
            r.passed
                && r.coverage == 1.0
                && r.identity_error <= 1e-12
                && r.min_separation > 1e-9
                && r.continuity_ratio <= 100.0
                && r.samples >= n,
            || format!("{name}: {r:?}"),
        )?;
        worst_identity = worst_identity.max(r.identity_error);
        worst_ratio = worst_ratio.max(r.continuity_ratio);
    }
    Ok(format!("5 covers, 1e4 samples each; identity error <= {worst_identity:e}, continuity ratio <= {worst_ratio:.3}"))
}

fn key_lemma(space: Space, k: usize) -> Result<SectionCover, String> {
    sections::key_lemma_cover(space, k, &sections::default_basepoints(space, k).map_err(e)?).map_err(e)
}

fn binomial(space: Space, k: usize, r: usize) -> Result<SectionCover, String> {
    sections::binomial_cover(space, k, r, &sections::default_basepoints(space, k).map_err(e)?).map_err(e)
}

fn catalog_gaps() -> Outcome {
    let n = 10_000;
    for d in 1..=3 {
        let g = selfmaps::fixed_point_gap(&SelfMap::antipodal(d), 0, n).map_err(e)?;
        ensure((g - PI).abs() <= 1e-9, || format!("antipodal on S{d}: gap {g}"))?;
    }
    let rp3 = SelfMap::rp_odd_rotation(3).map_err(e)?;
    let g = selfmaps::fixed_point_gap(&rp3, 0, n).map_err(e)?;
    ensure((g - PI / 2.0).abs() <= 1e-9, || format!("RP3 rotation: gap {g}"))?;
    let w = selfmaps::fixed_point_gap(&SelfMap::wedge_shift(), 0, n).map_err(e)?;
    ensure(w > 0.1, || format!("wedge shift: gap {w}"))?;
    let (from_sphere, from_circle) = selfmaps::wedge_basepoint_images();
    ensure(from_sphere == PI && from_circle == PI, || format!("wedge basepoint images {from_sphere}, {from_circle}"))?;
    Ok(format!("antipodal pi on S1..S3, RP3 pi/2, wedge gap {w:.4}, gamma(1) = -b0 exactly"))
}

fn degrees() -> Outcome {
    let a1 = selfmaps::degree(&SelfMap::antipodal(1)).map_err(e)?;
    let a2 = selfmaps::degree(&SelfMap::antipodal(2)).map_err(e)?;
    let i1 = selfmaps::degree(&SelfMap::identity(Space::Sphere(1))).map_err(e)?;
    let i2 = selfmaps::degree(&SelfMap::identity(Space::Sphere(2))).map_err(e)?;
    ensure((a1, a2, i1, i2) == (1, -1, 1, 1), || format!("degrees {a1} {a2} {i1} {i2}"))?;
    Ok("winding(antipodal S1) = 1, deg(antipodal S2) = -1, deg(id) = 1".into())
}

fn interval(space: &str, q: &str) -> Result<Interval, String> {
    let k: Knowledge = preset(space).map_err(e)?;
    let q = parse_quantity(q, &BTreeSet::new()).map_err(e)?;
    Ok(k.query(&q).map_err(e)?.interval)
}

fn bounds_values() -> Outcome {
    let mut checked = 0;
    let mut expect = |space: &str, q: &str, want: Interval| -> Result<(), String> {
        let got = interval(space, q)?;
        checked += 1;
        ensure(got == want, || format!("{q}: got {got}, want {want}"))
    };
    for (s, v) in [("S1", 2), ("S3", 2), ("S2", 3), ("S4", 3)] {
        expect(s, &format!("TC(pi(2,1,{s}))"), Interval::exactly(v))?;
    }
    for k in 2..=5 {
        expect("RP2", &format!("TC(pi({k},1,RP2))"), Interval::new(3, 4))?;
    }
    for s in ["S2", "S4"] {
        for k in 3..=5 {
            for r in 1..=2 {
                expect(s, &format!("sec(pi({k},{r},{s}))"), Interval::exactly(2))?;
            }
        }
    }
    for s in ["S1", "S3"] {
        for k in 2..=5 {
            expect(s, &format!("sec(pi({k},1,{s}))"), Interval::exactly(1))?;
        }
    }
    for g in ["S1", "S3", "T2", "RP3"] {
        let cat = interval(g, &format!("cat({g})"))?;
        ensure(cat.lo == cat.hi && cat.lo != Ext::Inf, || format!("cat({g}) = {cat}"))?;
        for k in 2..=4 {
            expect(g, &format!("TC(pi({k},1,{g}))"), cat)?;
        }
    }
    for k in 2..=5 {
        let d = interval("D2", &format!("TC(pi({k},1,D2))"))?;
        checked += 1;
        ensure(d.lo >= Ext::Fin(2), || format!("TC(pi({k},1,D2)) = {d}"))?;
    }
    Ok(format!("{checked} intervals exact"))
}

fn exterior_raw() -> RawRing {
    RawRing {
        coefficients: Coefficients::Z,
        basis: vec!["a".into(), "b".into(), "ab".into()],
        degrees: vec![1, 1, 2],
        products: vec![
            RawProduct {
                left: "a".into(),
                right: "b".into(),
                result: RawElement::Name("ab".into()),
            },
            RawProduct {
                left: "b".into(),
                right: "a".into(),
                result: RawElement::Combination([("ab".to_string(), confsec::certificates::RawCoefficient::Int(-1))].into()),
            },
        ],
    }
}

fn cup(ring: RawRing, classes: &[&str]) -> Result<Result<Vec<CertifiedFact>, Rejection>, String> {
    verify_cup_certificate(&CupLengthCertificate {
        map: "pi(2,1,X)".into(),
        ring,
        classes: classes.iter().map(|c| RawElement::Name(c.to_string())).collect(),
        assertion: None,
    })
    .map_err(e)
}

fn lower(facts: &[CertifiedFact]) -> Option<u64> {
    match facts.first() {
        Some(CertifiedFact::SecAtLeast { lower, .. }) => Some(*lower),
        _ => None,
    }
}

fn certificates() -> Outcome {
    GradedRing::new(&exterior_raw()).map_err(e)?;
    let two = cup(exterior_raw(), &["a", "b"])?;
    ensure(two.as_ref().ok().and_then(|f| lower(f)) == Some(3), || format!("two classes: {two:?}"))?;
    let one = cup(exterior_raw(), &["a"])?;
    ensure(one.as_ref().ok().and_then(|f| lower(f)) == Some(2), || format!("one class: {one:?}"))?;
    let square = cup(exterior_raw(), &["a", "a"])?;
    ensure(square == Err(Rejection::ProductVanishes { stage: 2 }), || format!("x^2: {square:?}"))?;
    let rp2 = verify_induced_certificate(&rp2_certificate()).map_err(e)?.map_err(e)?;
    let sec2 = rp2.iter().any(|f| matches!(f, CertifiedFact::SecEquals { map, value: 2, .. } if map == "pi(2,1,RP2)"));
    let fpp = rp2.iter().any(|f| matches!(f, CertifiedFact::Fpp { space, .. } if space == "RP2"));
    ensure(sec2 && fpp, || format!("RP2: {rp2:?}"))?;
    Ok("2 classes -> sec >= 3, 1 class -> sec >= 2, x^2 rejected, RP2 -> sec = 2 and FPP".into())
}

fn planners() -> Outcome {
    let queries = 1000;
    for (space, kind, regions) in [(Space::Sphere(1), PlannerKind::Circle, 2), (Space::Sphere(2), PlannerKind::Sphere2, 3)] {
        let opt = planner::optimality(space, 2).map_err(e)?;
        ensure(opt.regions == regions && opt.optimal == Some(true) && opt.consistent, || format!("{space}: {opt:?}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut used = BTreeSet::new();
        for i in 0..queries {
            let q = PlanQuery::random(space, 2, 1, &mut rng).map_err(e)?;
            ensure(PlannerKind::for_query(&q).map_err(e)? == kind, || format!("{space}: planner choice"))?;
            let plan = match kind {
                PlannerKind::Sphere2 => planner::plan_sphere2_21(&q),
                _ => planner::plan_circle_21(&q),
            }
            .map_err(|err| format!("{space} query {i}: region predicates miss: {err}"))?;
            ensure(plan.regions == regions, || format!("{space}: {} regions", plan.regions))?;
            check_plan(&plan, &q, i)?;
            for id in 1..=regions {
                if id != plan.region_id && kind.region_holds(&q, id) {
                    let other = planner::plan_in_region(&q, kind, id, planner::DEFAULT_DENSITY).map_err(e)?;
                    check_plan(&other, &q, i)?;
                    used.insert(id);
                }
            }
            used.insert(plan.region_id);
            if i % 50 == 0 {
                let teleport = planner::inject_teleport(&plan, 0.5).map_err(e)?;
                ensure(!planner::verify_plan(&teleport, &q, i).map_err(e)?.passed, || format!("{space} query {i}: teleport passed"))?;
                let collision = planner::inject_collision(&plan, 0.5);
                ensure(!planner::verify_plan(&collision, &q, i).map_err(e)?.passed, || format!("{space} query {i}: collision passed"))?;
            }
        }
        ensure(used.len() == regions, || format!("{space}: only regions {used:?} exercised"))?;
    }
    Ok("S1: 2 regions, S2: 3 regions, 1e3 queries each verified in every region that holds, injected faults rejected".into())
}

fn check_plan(plan: &planner::MotionPlan, q: &PlanQuery, seed: u64) -> Result<(), String> {
    let r = planner::verify_plan(plan, q, seed).map_err(e)?;
    ensure(
        r.passed && r.start_error <= 1e-9 && r.goal_error <= 1e-9 && r.rigidity_error <= 1e-9 && r.probe_ratio <= 100.0,
        || format!("{} region {} query {seed}: {r:?}", q.space, plan.region_id),
    )
}

fn finite_cross_check() -> Outcome {
    let mut count = 0;
    let mut sec_one = 0;
    for n in 1..=5 {
        for p in finite::posets_up_to_iso(n).map_err(e)? {
            count += 1;
            let fpp = finite::has_fpp(&p).map_err(e)?;
            let sec = finite::sec_pi21(&p, finite::DEFAULT_MAX_COVER).map_err(e)?;
            let is_one = sec.value == SecValue::Finite(1);
            ensure(is_one == !fpp.has_fpp, || format!("{}: sec = {}, FPP = {}", p.to_json(), sec.value, fpp.has_fpp))?;
            if is_one {
                sec_one += 1;
                let s = &sec.cover[0];
                ensure(s.domain.len() == p.n(), || format!("{}: cover piece is not global", p.to_json()))?;
                let f = finite::map_from_section(s, &p).ok_or_else(|| format!("{}: section gives no map", p.to_json()))?;
                ensure(f.fixed_points().is_empty(), || format!("{}: map from section has fixed points", p.to_json()))?;
                let w = fpp.witness.as_ref().ok_or_else(|| format!("{}: no witness", p.to_json()))?;
                ensure(finite::section_from_map(w).is_valid(&p), || format!("{}: witness gives no section", p.to_json()))?;
            }
        }
    }
    ensure(count == 1 + 2 + 5 + 16 + 63, || format!("{count} posets"))?;
    Ok(format!("{count} posets, {sec_one} with sec = 1, all matching"))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 finite Hausdorff models", Duration::from_secs(1), discrete_models),
        ("2 key lemma and binomial covers", Duration::from_secs(30), covers),
        ("3 fixed-point-free catalog", Duration::from_secs(60), catalog_gaps),
        ("4 degree law", Duration::from_secs(60), degrees),
        ("5 bounds engine values", Duration::from_secs(1), bounds_values),
        ("6 certificates", Duration::from_secs(60), certificates),
        ("7 planners", Duration::from_secs(60), planners),
        ("8 finite-space cross-check", Duration::from_secs(300), finite_cross_check),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let line = match result {
            Ok(detail) if took <= limit => format!("PASS {name} ({:.2?}, limit {:?}): {detail}", took, limit),
            Ok(detail) => format!("FAIL {name} ({:.2?} over limit {:?}): {detail}", took, limit),
            Err(why) => format!("FAIL {name} ({:.2?}): {why}", took),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
