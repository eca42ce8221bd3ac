//! Attribute and value presets for the built-in model spaces.

use std::str::FromStr;

use super::terms::{Attr, Interval, MapTerm, Quantity, SpaceTerm, Subject};
use super::Knowledge;
use crate::error::{Error, Result};
use crate::geometry::Space;

/// Largest `k` for which the disc preset records that `pi(k,r,D^m)` is not a fibration.
const DISC_FIBRATION_RANGE: u32 = 6;

/// Preset for a model space given by name (`S2`, `RP3`, `T2`, `R3`, `D2`, `S2vS1`, `Discrete4`).
pub fn preset(name: &str) -> Result<Knowledge> {
    let space = Space::from_str(name).map_err(|_| Error::Parse(format!("no preset for `{name}`")))?;
    preset_for(&space)
}

pub fn preset_for(space: &Space) -> Result<Knowledge> {
    space.validate()?;
    let name = space.to_string();
    let x = SpaceTerm::named(&name);
    let mut k = Knowledge::new();
    let attr = |k: &mut Knowledge, a: Attr, note: &str| {
        k.attribute_with_note(Subject::Space(x.clone()), a, note);
    };
    let value = |k: &mut Knowledge, q: Quantity, v: Interval, note: &str| {
        k.axiom_with_note(q, v, note);
    };
    let cat = Quantity::Cat(x.clone());
    let tc = Quantity::Tc(x.clone());
    let manifold = |k: &mut Knowledge, dim: usize| {
        if dim >= 2 {
            k.attribute_with_note(Subject::Space(x.clone()), Attr::ManifoldNbDim2, "model space");
        }
    };

    match *space {
        Space::Sphere(d) => {
            for a in [Attr::Hausdorff, Attr::Anr, Attr::PathConnectedCw, Attr::SmoothManifold, Attr::Sphere] {
                attr(&mut k, a, "model space");
            }
            manifold(&mut k, d);
            attr(&mut k, Attr::NotFpp, "antipodal map has no fixed points");
            attr(&mut k, Attr::NotContractible, "model space");
            if d % 2 == 0 {
                attr(&mut k, Attr::EvenSphere, "model space");
            } else {
                attr(&mut k, Attr::OddDimDiffManifold, "model space");
                attr(&mut k, Attr::NonvanishingVf, "x -> Jx");
            }
            if d == 1 || d == 3 {
                attr(&mut k, Attr::LieGroup, "unit complex numbers / quaternions");
            }
            if d == 1 {
                attr(&mut k, Attr::CompactB1Nonzero, "model space");
            }
            value(&mut k, cat, Interval::exactly(2), "sphere");
            let t = if d % 2 == 0 { 3 } else { 2 };
            value(&mut k, tc, Interval::exactly(t), "sphere");
            k.equivalence(SpaceTerm::config(&x, 2), x.clone());
        }
        Space::RealProjective(d) => {
            for a in [Attr::Hausdorff, Attr::Anr, Attr::PathConnectedCw, Attr::SmoothManifold] {
                attr(&mut k, a, "model space");
            }
            manifold(&mut k, d);
            attr(&mut k, Attr::NotContractible, "model space");
            if d % 2 == 0 {
                attr(&mut k, Attr::Fpp, "Lefschetz number of every self-map is nonzero");
            } else {
                attr(&mut k, Attr::NotFpp, "odd rotation has no fixed points");
                attr(&mut k, Attr::OddDimDiffManifold, "model space");
                attr(&mut k, Attr::NonvanishingVf, "model space");
            }
            if d == 1 || d == 3 {
                attr(&mut k, Attr::LieGroup, "SO(2) / SO(3)");
            }
            value(&mut k, cat, Interval::exactly(d as u64 + 1), "projective space");
            let known_tc = match d {
                1 => Some(2),
                2 | 3 => Some(4),
                _ => None,
            };
            if let Some(t) = known_tc {
                value(&mut k, tc, Interval::exactly(t), "projective space");
            }
        }
        Space::Torus(m) => {
            for a in [
                Attr::Hausdorff,
                Attr::Anr,
                Attr::PathConnectedCw,
                Attr::SmoothManifold,
                Attr::LieGroup,
                Attr::CompactB1Nonzero,
                Attr::NonvanishingVf,
                Attr::NotContractible,
            ] {
                attr(&mut k, a, "model space");
            }
            manifold(&mut k, m);
            attr(&mut k, Attr::NotFpp, "half-turn translation has no fixed points");
            value(&mut k, cat, Interval::exactly(m as u64 + 1), "torus");
            value(&mut k, tc, Interval::exactly(m as u64 + 1), "torus");
        }
        Space::Euclidean(m) => {
            for a in [
                Attr::Hausdorff,
                Attr::Anr,
                Attr::PathConnectedCw,
                Attr::SmoothManifold,
                Attr::LieGroup,
                Attr::NonvanishingVf,
                Attr::Contractible,
            ] {
                attr(&mut k, a, "model space");
            }
            manifold(&mut k, m);
            attr(&mut k, Attr::NotFpp, "translation has no fixed points");
        }
        Space::Disc(m) => {
            for a in [Attr::Hausdorff, Attr::Anr, Attr::PathConnectedCw, Attr::Contractible] {
                attr(&mut k, a, "model space");
            }
            attr(&mut k, Attr::Fpp, "Brouwer fixed point theorem");
            if m >= 1 {
                for kk in 2..=DISC_FIBRATION_RANGE {
                    for r in 1..kk {
                        k.attribute_with_note(
                            Subject::Map(MapTerm::pi(kk, r, &x)),
                            Attr::NotFibration,
                            "fibres over interior and boundary points differ",
                        );
                    }
                }
            }
        }
        Space::WedgeS2S1 => {
            for a in [Attr::Hausdorff, Attr::Anr, Attr::PathConnectedCw, Attr::NotContractible] {
                attr(&mut k, a, "model space");
            }
            attr(&mut k, Attr::NotFpp, "wedge shift has no fixed points");
            value(&mut k, cat, Interval::exactly(2), "suspension");
        }
        Space::Discrete(n) => {
            k.cardinality(x.clone(), n as u64);
            attr(&mut k, Attr::Hausdorff, "discrete");
            if n == 1 {
                attr(&mut k, Attr::Fpp, "one point");
            } else {
                attr(&mut k, Attr::NotFpp, "cyclic shift has no fixed points");
            }
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{Ext, Interval};
    use std::collections::BTreeSet;

    fn query(preset_name: &str, quantity: &str) -> Interval {
        let k = preset(preset_name).unwrap();
        let q = crate::bounds::parse_quantity(quantity, &BTreeSet::new()).unwrap();
        k.query(&q).unwrap().interval
    }

    #[test]
    fn sphere_table() {
        assert_eq!(query("S1", "TC(pi(2,1,S1))"), Interval::exactly(2));
        assert_eq!(query("S2", "TC(pi(2,1,S2))"), Interval::exactly(3));
        assert_eq!(query("S3", "TC(pi(2,1,S3))"), Interval::exactly(2));
        assert_eq!(query("S4", "TC(pi(2,1,S4))"), Interval::exactly(3));
        assert_eq!(query("S2", "sec(pi(3,2,S2))"), Interval::exactly(2));
        assert_eq!(query("S2", "TC(pi(3,2,S2))"), Interval::new(2, 3));
        assert_eq!(query("S3", "sec(pi(4,2,S3))"), Interval::exactly(1));
        assert_eq!(query("S3", "TC(pi(4,2,S3))"), Interval::exactly(2));
    }

    #[test]
    fn every_preset_is_consistent() {
        for name in ["S1", "S2", "S3", "S4", "RP2", "RP3", "RP4", "T1", "T2", "T3", "R1", "R3", "D2", "S2vS1"] {
            let k = preset(name).unwrap();
            for q in ["TC(pi(4,1,{X}))", "TC(pi(4,2,{X}))", "sec(pi(2,1,{X}))", "TC(F({X},2))"] {
                let q = crate::bounds::parse_quantity(&q.replace("{X}", name), &BTreeSet::new()).unwrap();
                k.query(&q).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
        for n in 1..=6 {
            preset(&format!("Discrete{n}")).unwrap().query(&crate::bounds::parse_quantity(
                &format!("sec(pi(3,1,Discrete{n}))"),
                &BTreeSet::new(),
            ).unwrap()).unwrap();
        }
    }

    #[test]
    fn lie_groups() {
        for (name, c) in [("T2", 3), ("S3", 2), ("RP3", 4), ("S1", 2)] {
            for kk in 2..=4 {
                assert_eq!(query(name, &format!("TC(pi({kk},1,{name}))")), Interval::exactly(c), "{name} k={kk}");
            }
        }
    }

    #[test]
    fn disc_lower_bound() {
        let i = query("D2", "TC(pi(3,1,D2))");
        assert_eq!(i.lo, Ext::Fin(2));
        assert_eq!(query("D2", "sec(pi(2,1,D2))"), Interval::exactly(2));
    }

    #[test]
    fn discrete_spaces() {
        assert_eq!(query("Discrete1", "sec(pi(2,1,Discrete1))").lo, Ext::Inf);
        assert_eq!(query("Discrete3", "sec(pi(2,1,Discrete3))"), Interval::exactly(1));
        assert_eq!(query("Discrete3", "sec(pi(4,1,Discrete3))").lo, Ext::Inf);
    }

    #[test]
    fn unknown_preset() {
        assert!(preset("K3").is_err());
    }
}
