use std::collections::BTreeSet;

use confsec::bounds::presets::{preset, preset_for};
use confsec::bounds::{parse_quantity, Ext, Interval, Knowledge};
use confsec::certificates::{self, CupLengthCertificate};
use confsec::finite::{self, FinitePoset, SecValue};
use confsec::geometry::{Space, SpacePoint};
use confsec::planner;
use confsec::sections::{self, Answer, SectionCover};
use confsec::selfmaps::{self, SelfMap};

fn q(s: &str) -> confsec::bounds::Quantity {
    parse_quantity(s, &BTreeSet::new()).unwrap()
}

#[test]
fn induced_certificate_feeds_the_bounds_engine() {
    let facts = certificates::verify_induced_certificate(&certificates::rp2_certificate()).unwrap().unwrap();
    let mut k = Knowledge::new();
    certificates::record(&facts, &mut k).unwrap();
    k.axiom_eq(q("cat(RP2)"), 3).axiom_eq(q("TC(RP2)"), 4);
    k.space_attribute("RP2", confsec::bounds::Attr::Hausdorff)
        .space_attribute("RP2", confsec::bounds::Attr::ManifoldNbDim2);
    let sec = k.query(&q("sec(pi(2,1,RP2))")).unwrap();
    assert_eq!(sec.interval, Interval::exactly(2));
    assert!(sec.explain().contains("certificate") || sec.explain().contains("induced"), "{}", sec.explain());
    assert_eq!(k.query(&q("TC(pi(3,1,RP2))")).unwrap().interval, Interval::new(3, 4));
}

#[test]
fn cup_certificate_file_feeds_the_bounds_engine() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cup_s2_k3.json")).unwrap();
    let cert = CupLengthCertificate::from_json_str(&text).unwrap();
    let facts = certificates::verify_cup_certificate(&cert).unwrap().unwrap();
    let mut k = Knowledge::new();
    certificates::record(&facts, &mut k).unwrap();
    let i = k.query(&q("sec(pi(3,1,S2))")).unwrap().interval;
    assert_eq!(i.lo, Ext::Fin(2));
    // consistent with the sphere preset, which pins the value
    k.extend(&preset("S2").unwrap());
    assert_eq!(k.query(&q("sec(pi(3,1,S2))")).unwrap().interval, Interval::exactly(2));
}

#[test]
fn verdicts_agree_with_presets() {
    for space in [Space::Sphere(1), Space::Sphere(2), Space::Sphere(3), Space::RealProjective(2), Space::RealProjective(3), Space::Torus(2), Space::Disc(2), Space::WedgeS2S1] {
        let v = sections::fpp_verdict(space, 0).unwrap();
        let bound = preset_for(&space).unwrap().query(&q(&format!("sec(pi(2,1,{space}))"))).unwrap().interval;
        match v.fpp {
            Answer::No => assert_eq!(bound, Interval::exactly(1), "{space}"),
            Answer::Yes => assert_eq!(bound, Interval::exactly(2), "{space}"),
            Answer::Unknown => assert!(bound.contains(1) && bound.contains(2), "{space}"),
        }
    }
}

#[test]
fn discrete_models_agree_with_finite_oracle() {
    for n in 1..=6 {
        let p = FinitePoset::antichain(n).unwrap();
        let exact = finite::sec_pi21(&p, finite::DEFAULT_MAX_COVER).unwrap().value;
        let bound = preset(&format!("Discrete{n}")).unwrap().query(&q(&format!("sec(pi(2,1,Discrete{n}))"))).unwrap().interval;
        match exact {
            SecValue::Finite(v) => assert_eq!(bound, Interval::exactly(v as u64), "n={n}"),
            SecValue::Infinite => assert_eq!(bound.lo, Ext::Inf, "n={n}"),
            SecValue::Unbounded => panic!("n={n}"),
        }
    }
}

#[test]
fn fixed_point_free_maps_give_verified_sections() {
    for space in [Space::Sphere(1), Space::Sphere(2), Space::RealProjective(3), Space::Torus(2), Space::WedgeS2S1] {
        let f = selfmaps::fixed_point_free_map(space).unwrap();
        let s = sections::from_fpf_family(&[f], 0, 2000).unwrap();
        let report = sections::verify_cover(&SectionCover::single(s), 0, 2000).unwrap();
        assert!(report.passed, "{space}: {report:?}");
    }
    let rotations = [SelfMap::circle_rotation(2.0 * std::f64::consts::PI / 3.0).unwrap(), SelfMap::circle_rotation(4.0 * std::f64::consts::PI / 3.0).unwrap()];
    let s = sections::from_fpf_family(&rotations, 0, 2000).unwrap();
    assert!(sections::verify_cover(&SectionCover::single(s), 0, 2000).unwrap().passed);
    assert!(sections::from_fpf_family(&[SelfMap::identity(Space::Sphere(2))], 0, 100).is_err());
}

#[test]
fn planner_regions_match_propagated_complexity() {
    for (space, k) in [(Space::Sphere(1), 2), (Space::Sphere(1), 4), (Space::Sphere(2), 2), (Space::Torus(2), 3)] {
        let o = planner::optimality(space, k).unwrap();
        assert!(o.consistent, "{space} k={k}: {o:?}");
        let tc = preset_for(&space).unwrap().query(&q(&format!("TC(pi({k},1,{space}))"))).unwrap().interval;
        assert!(tc.contains(o.regions as u64) || o.optimal == Some(false), "{space}: {} regions vs {tc}", o.regions);
    }
}

#[test]
fn circle_plan_example() {
    let start = confsec::geometry::Configuration::new(
        Space::Sphere(1),
        vec![SpacePoint::circle_angle(0.0), SpacePoint::circle_angle(std::f64::consts::FRAC_PI_2)],
    )
    .unwrap();
    let goal = confsec::geometry::Configuration::new(Space::Sphere(1), vec![SpacePoint::circle_angle(std::f64::consts::FRAC_PI_4)]).unwrap();
    let query = planner::PlanQuery::new(start, goal).unwrap();
    let plan = planner::plan(&query).unwrap();
    assert_eq!(plan.region_id, 1);
    let end = plan.final_points();
    assert!((end[0].dist(&SpacePoint::circle_angle(std::f64::consts::FRAC_PI_4))) < 1e-12);
    assert!((end[1].dist(&SpacePoint::circle_angle(3.0 * std::f64::consts::FRAC_PI_4))) < 1e-12);
    assert!(planner::verify_plan(&plan, &query, 0).unwrap().passed);
}
