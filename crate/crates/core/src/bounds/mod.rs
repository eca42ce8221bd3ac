//! Interval propagation over `cat`, `TC`, `sec` and `secat` with derivation trees.
//!
//! A [`Knowledge`] base (axioms, attribute flags, declared maps, homotopy
//! equivalences, certificates) is closed under the fixed rule set of
//! [`load_rules`]. The result is an immutable [`FactStore`] in which every bound
//! carries the tree of rule applications that produced it.

pub mod presets;
mod rules;
pub mod terms;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use rules::{load_rules, Rule};
pub use terms::{
    binomial, parse_quantity, parse_space, parse_subject, Attr, Ext, Interval, MapTerm, Quantity, SpaceTerm,
    Subject,
};

/// Largest `k` for which every intermediate projection `pi(a,b,X)`, `b < a <= k`,
/// is registered alongside `pi(k,r,X)`.
const FAMILY_LIMIT: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Lower(Quantity, Ext),
    Upper(Quantity, Ext),
    Holds(Subject, Attr),
    /// Free-form premise such as a verified certificate.
    Given(String),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Lower(q, v) => write!(f, "{q} >= {v}"),
            Statement::Upper(q, v) => write!(f, "{q} <= {v}"),
            Statement::Holds(s, a) => write!(f, "{a}({s})"),
            Statement::Given(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Axiom(String),
    Certificate(String),
    Rule {
        id: &'static str,
        premises: Vec<Arc<Derivation>>,
    },
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub statement: Statement,
    pub source: Source,
}

impl Derivation {
    fn leaf(statement: Statement, source: Source) -> Arc<Self> {
        Arc::new(Derivation { statement, source })
    }

    pub fn premises(&self) -> &[Arc<Derivation>] {
        match &self.source {
            Source::Rule { premises, .. } => premises,
            _ => &[],
        }
    }

    /// Rule ids used anywhere in the tree.
    pub fn rule_ids(&self) -> BTreeSet<&'static str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            if let Source::Rule { id, premises } = &d.source {
                out.insert(*id);
                stack.extend(premises.iter().map(|p| p.as_ref()));
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.premises().iter().map(|p| p.depth()).max().unwrap_or(0)
    }

    /// Indented multi-line rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        let tag = match &self.source {
            Source::Axiom(note) if note.is_empty() => "axiom".to_string(),
            Source::Axiom(note) => format!("axiom: {note}"),
            Source::Certificate(note) => format!("certificate: {note}"),
            Source::Rule { id, .. } => {
                let rule = rules::rule(id);
                match rule.and_then(|r| r.warning) {
                    Some(w) => format!("{id} {} (warning: {w})", rule.map_or("", |r| r.statement)),
                    None => format!("{id} {}", rule.map_or("", |r| r.statement)),
                }
            }
        };
        let _ = writeln!(out, "{:indent$}{}  [{}]", "", self.statement, tag, indent = indent);
        for p in self.premises() {
            p.render_into(out, indent + 2);
        }
    }

    pub fn to_json(&self) -> Value {
        let (source, note) = match &self.source {
            Source::Axiom(n) => ("axiom".to_string(), n.clone()),
            Source::Certificate(n) => ("certificate".to_string(), n.clone()),
            Source::Rule { id, .. } => (id.to_string(), String::new()),
        };
        let mut v = json!({
            "statement": self.statement.to_string(),
            "source": source,
            "premises": self.premises().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        });
        if !note.is_empty() {
            v["note"] = json!(note);
        }
        v
    }
}

/// A bound on one quantity together with the derivations of both ends.
#[derive(Clone, Debug)]
pub struct Fact {
    pub quantity: Quantity,
    pub interval: Interval,
    pub lower: Option<Arc<Derivation>>,
    pub upper: Option<Arc<Derivation>>,
}

impl Fact {
    pub fn explain(&self) -> String {
        let mut out = format!("{} in {}\n", self.quantity, self.interval);
        for d in [&self.lower, &self.upper].into_iter().flatten() {
            out.push_str(&d.render());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quantity": self.quantity.to_string(),
            "interval": self.interval,
            "lower": self.lower.as_ref().map(|d| d.to_json()),
            "upper": self.upper.as_ref().map(|d| d.to_json()),
        })
    }
}

/// Two derivations that cannot both hold.
#[derive(Clone, Debug)]
pub struct Contradiction {
    pub description: String,
    pub left: Arc<Derivation>,
    pub right: Arc<Derivation>,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "contradiction: {}\n{}{}",
            self.description,
            self.left.render(),
            self.right.render()
        )
    }
}

impl std::error::Error for Contradiction {}

/// Input to propagation.
#[derive(Clone, Debug, Default)]
pub struct Knowledge {
    statements: Vec<Arc<Derivation>>,
    maps: BTreeMap<String, (SpaceTerm, SpaceTerm)>,
    equivalences: Vec<(SpaceTerm, SpaceTerm)>,
    retracts: Vec<(SpaceTerm, SpaceTerm)>,
    cup_lengths: Vec<(MapTerm, u32, String)>,
    cardinalities: BTreeMap<SpaceTerm, u64>,
    terms: Vec<Quantity>,
}

impl Knowledge {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn axiom(&mut self, q: Quantity, interval: Interval) -> &mut Self {
        self.axiom_with_note(q, interval, "")
    }

    pub fn axiom_with_note(&mut self, q: Quantity, interval: Interval, note: &str) -> &mut Self {
        if interval.lo > Ext::ONE {
            self.statements.push(Derivation::leaf(
                Statement::Lower(q.clone(), interval.lo),
                Source::Axiom(note.into()),
            ));
        }
        if interval.hi < Ext::Inf {
            self.statements.push(Derivation::leaf(
                Statement::Upper(q.clone(), interval.hi),
                Source::Axiom(note.into()),
            ));
        }
        self.terms.push(q);
        self
    }

    pub fn axiom_eq(&mut self, q: Quantity, v: u64) -> &mut Self {
        self.axiom(q, Interval::exactly(v))
    }

    pub fn attribute(&mut self, subject: Subject, attr: Attr) -> &mut Self {
        self.attribute_with_note(subject, attr, "")
    }

    pub fn attribute_with_note(&mut self, subject: Subject, attr: Attr, note: &str) -> &mut Self {
        self.statements.push(Derivation::leaf(
            Statement::Holds(subject, attr),
            Source::Axiom(note.into()),
        ));
        self
    }

    pub fn space_attribute(&mut self, space: &str, attr: Attr) -> &mut Self {
        self.attribute(Subject::Space(SpaceTerm::named(space)), attr)
    }

    /// A bound established by a verified certificate.
    pub fn certified_bound(&mut self, q: Quantity, interval: Interval, note: &str) -> &mut Self {
        if interval.lo > Ext::ONE {
            self.statements.push(Derivation::leaf(
                Statement::Lower(q.clone(), interval.lo),
                Source::Certificate(note.into()),
            ));
        }
        if interval.hi < Ext::Inf {
            self.statements.push(Derivation::leaf(
                Statement::Upper(q.clone(), interval.hi),
                Source::Certificate(note.into()),
            ));
        }
        self.terms.push(q);
        self
    }

    pub fn certified_attribute(&mut self, subject: Subject, attr: Attr, note: &str) -> &mut Self {
        self.statements.push(Derivation::leaf(
            Statement::Holds(subject, attr),
            Source::Certificate(note.into()),
        ));
        self
    }

    /// `k` classes pulled back from the base with nonzero product in the total space.
    pub fn cup_length(&mut self, map: MapTerm, k: u32, note: &str) -> &mut Self {
        self.terms.push(Quantity::Sec(map.clone()));
        self.cup_lengths.push((map, k, note.into()));
        self
    }

    pub fn declare_map(&mut self, name: &str, domain: SpaceTerm, codomain: SpaceTerm) -> &mut Self {
        self.maps.insert(name.into(), (domain, codomain));
        self
    }

    pub fn equivalence(&mut self, a: SpaceTerm, b: SpaceTerm) -> &mut Self {
        self.equivalences.push((a, b));
        self
    }

    /// `retract` is a deformation retract of `space`.
    pub fn deformation_retract(&mut self, retract: SpaceTerm, space: SpaceTerm) -> &mut Self {
        self.retracts.push((retract, space));
        self
    }

    pub fn cardinality(&mut self, space: SpaceTerm, n: u64) -> &mut Self {
        self.cardinalities.insert(space, n);
        self
    }

    /// Makes the rules consider `q` even if nothing mentions it yet.
    pub fn term(&mut self, q: Quantity) -> &mut Self {
        self.terms.push(q);
        self
    }

    pub fn extend(&mut self, other: &Knowledge) -> &mut Self {
        self.statements.extend(other.statements.iter().cloned());
        self.maps.extend(other.maps.clone());
        self.equivalences.extend(other.equivalences.iter().cloned());
        self.retracts.extend(other.retracts.iter().cloned());
        self.cup_lengths.extend(other.cup_lengths.iter().cloned());
        self.cardinalities.extend(other.cardinalities.clone());
        self.terms.extend(other.terms.iter().cloned());
        self
    }

    pub fn with_preset(mut self, name: &str) -> Result<Self> {
        self.extend(&presets::preset(name)?);
        Ok(self)
    }

    pub fn map_names(&self) -> BTreeSet<String> {
        self.maps.keys().cloned().collect()
    }

    pub fn parse_quantity(&self, s: &str) -> Result<Quantity> {
        parse_quantity(s, &self.map_names())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawFacts = serde_json::from_str(s)?;
        raw.into_knowledge()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn propagate(&self) -> Result<FactStore> {
        let order: Vec<usize> = (0..load_rules().len()).collect();
        self.propagate_in_order(&order)
    }

    /// Propagation applying the rules in the given order each round.
    pub fn propagate_in_order(&self, order: &[usize]) -> Result<FactStore> {
        let rules = load_rules();
        let mut store = FactStore {
            ctx: self.clone(),
            ..FactStore::default()
        };
        for q in &self.terms {
            store.register_quantity(q);
        }
        for (p, _, _) in &self.cup_lengths {
            store.register_map(p);
        }
        for (a, b) in self.equivalences.iter().chain(&self.retracts) {
            store.register_space(a);
            store.register_space(b);
        }
        for d in &self.statements {
            store.insert(d.clone())?;
        }
        loop {
            store.rounds += 1;
            let mut changed = false;
            for &i in order {
                let derived = rules[i].fire(&store);
                for d in derived {
                    changed |= store.insert(Arc::new(d))?;
                }
            }
            if !changed {
                return Ok(store);
            }
        }
    }

    /// Registers `q`, propagates and returns its tightest bounds.
    pub fn query(&self, q: &Quantity) -> Result<Fact> {
        let mut k = self.clone();
        k.term(q.clone());
        Ok(k.propagate()?.query(q))
    }
}

/// Closed set of derived bounds and attributes. Immutable after propagation.
#[derive(Clone, Debug, Default)]
pub struct FactStore {
    lower: BTreeMap<Quantity, Arc<Derivation>>,
    upper: BTreeMap<Quantity, Arc<Derivation>>,
    attrs: BTreeMap<(Subject, Attr), Arc<Derivation>>,
    spaces: BTreeSet<SpaceTerm>,
    map_terms: BTreeSet<MapTerm>,
    ctx: Knowledge,
    rounds: usize,
}

fn bound_value(d: &Derivation) -> Ext {
    match d.statement {
        Statement::Lower(_, v) | Statement::Upper(_, v) => v,
        _ => unreachable!("bound maps hold bound statements"),
    }
}

impl FactStore {
    pub fn query(&self, q: &Quantity) -> Fact {
        Fact {
            quantity: q.clone(),
            interval: self.interval(q),
            lower: self.lower.get(q).cloned(),
            upper: self.upper.get(q).cloned(),
        }
    }

    pub fn interval(&self, q: &Quantity) -> Interval {
        Interval {
            lo: self.lo(q),
            hi: self.hi(q),
        }
    }

    pub fn lo(&self, q: &Quantity) -> Ext {
        self.lower.get(q).map_or(Ext::ONE, |d| bound_value(d))
    }

    pub fn hi(&self, q: &Quantity) -> Ext {
        self.upper.get(q).map_or(Ext::Inf, |d| bound_value(d))
    }

    pub fn holds(&self, subject: &Subject, attr: Attr) -> Option<&Arc<Derivation>> {
        self.attrs.get(&(subject.clone(), attr))
    }

    pub fn space_holds(&self, x: &SpaceTerm, attr: Attr) -> Option<&Arc<Derivation>> {
        self.holds(&Subject::Space(x.clone()), attr)
    }

    pub fn map_holds(&self, p: &MapTerm, attr: Attr) -> Option<&Arc<Derivation>> {
        self.holds(&Subject::Map(p.clone()), attr)
    }

    /// All quantities with a nontrivial bound.
    pub fn facts(&self) -> Vec<Fact> {
        let qs: BTreeSet<&Quantity> = self.lower.keys().chain(self.upper.keys()).collect();
        qs.into_iter().map(|q| self.query(q)).collect()
    }

    pub fn attributes(&self) -> impl Iterator<Item = (&Subject, Attr)> {
        self.attrs.keys().map(|(s, a)| (s, *a))
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// `(total space, base)` of a map term, when known.
    pub fn ends(&self, p: &MapTerm) -> Option<(SpaceTerm, SpaceTerm)> {
        match p {
            MapTerm::Pi { k, r, base } => Some((SpaceTerm::config(base, *k), SpaceTerm::config(base, *r))),
            MapTerm::Named(n) => self.ctx.maps.get(n).cloned(),
        }
    }

    fn cardinality(&self, x: &SpaceTerm) -> Option<u64> {
        self.ctx.cardinalities.get(x).copied()
    }

    fn register_space(&mut self, x: &SpaceTerm) {
        if !self.spaces.insert(x.clone()) {
            return;
        }
        match x {
            SpaceTerm::Named(_) => {}
            SpaceTerm::Config(b, _) => self.register_space(&b.clone()),
            SpaceTerm::Product(a, b) => {
                self.register_space(&a.clone());
                self.register_space(&b.clone());
            }
        }
    }

    fn register_map(&mut self, p: &MapTerm) {
        if !self.map_terms.insert(p.clone()) {
            return;
        }
        if let Some((e, b)) = self.ends(p) {
            self.register_space(&e);
            self.register_space(&b);
            self.register_space(&SpaceTerm::product(&e, &b));
        }
        if let MapTerm::Pi { k, r, base } = p {
            let (k, r) = (*k, *r);
            self.register_space(&SpaceTerm::config(base, 2));
            if k >= 2 {
                self.register_map(&MapTerm::pi(2, 1, base));
            }
            if k <= FAMILY_LIMIT {
                for a in 2..=k {
                    for b in 1..a {
                        self.register_map(&MapTerm::pi(a, b, base));
                    }
                }
            } else {
                self.register_map(&MapTerm::pi(k, 1, base));
            }
            if r == 1 {
                let partners: Vec<SpaceTerm> = self
                    .ctx
                    .retracts
                    .iter()
                    .filter_map(|(l, x)| {
                        if l == base {
                            Some(x.clone())
                        } else if x == base {
                            Some(l.clone())
                        } else {
                            None
                        }
                    })
                    .collect();
                for other in partners {
                    self.register_map(&MapTerm::pi(k, 1, &other));
                }
            }
        }
    }

    fn register_quantity(&mut self, q: &Quantity) {
        if let Some(x) = q.space() {
            self.register_space(&x.clone());
        }
        if let Some(p) = q.map() {
            self.register_map(&p.clone());
        }
    }

    /// Adds a derivation if it tightens the store. Reports a contradiction
    /// when the new statement clashes with an existing one.
    fn insert(&mut self, d: Arc<Derivation>) -> Result<bool> {
        match &d.statement {
            Statement::Lower(q, v) => {
                if *v <= self.lo(q) {
                    return Ok(false);
                }
                self.register_quantity(q);
                self.lower.insert(q.clone(), d.clone());
                if let Some(up) = self.upper.get(q).filter(|u| bound_value(u) < *v) {
                    return Err(contradiction(format!("{q} has lower bound above upper bound"), d.clone(), up.clone()));
                }
                Ok(true)
            }
            Statement::Upper(q, v) => {
                if *v >= self.hi(q) {
                    return Ok(false);
                }
                self.register_quantity(q);
                self.upper.insert(q.clone(), d.clone());
                if let Some(lo) = self.lower.get(q).filter(|l| bound_value(l) > *v) {
                    return Err(contradiction(format!("{q} has lower bound above upper bound"), lo.clone(), d.clone()));
                }
                if *v == Ext::Fin(0) {
                    return Err(contradiction(format!("{q} bounded by 0"), d.clone(), d.clone()));
                }
                Ok(true)
            }
            Statement::Holds(s, a) => {
                let key = (s.clone(), *a);
                if self.attrs.contains_key(&key) {
                    return Ok(false);
                }
                match s {
                    Subject::Space(x) => self.register_space(x),
                    Subject::Map(p) => self.register_map(p),
                }
                if let Some(other) = a.negation().and_then(|n| self.attrs.get(&(s.clone(), n))) {
                    return Err(contradiction(format!("{a}({s}) and its negation"), d.clone(), other.clone()));
                }
                self.attrs.insert(key, d);
                Ok(true)
            }
            Statement::Given(_) => Ok(false),
        }
    }
}

fn contradiction(description: String, left: Arc<Derivation>, right: Arc<Derivation>) -> Error {
    Error::Contradiction(Box::new(Contradiction {
        description,
        left,
        right,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxiom {
    q: String,
    #[serde(default)]
    eq: Option<Ext>,
    #[serde(default)]
    lo: Option<Ext>,
    #[serde(default)]
    hi: Option<Ext>,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    domain: String,
    codomain: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCup {
    map: String,
    classes: u32,
    #[serde(default)]
    note: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawFacts {
    #[serde(default)]
    presets: Vec<String>,
    #[serde(default)]
    axioms: Vec<RawAxiom>,
    #[serde(default)]
    attributes: BTreeMap<String, Vec<Attr>>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    equivalences: Vec<(String, String)>,
    #[serde(default)]
    deformation_retracts: Vec<(String, String)>,
    #[serde(default)]
    cup_lengths: Vec<RawCup>,
    #[serde(default)]
    cardinalities: BTreeMap<String, u64>,
    #[serde(default)]
    terms: Vec<String>,
}

impl RawFacts {
    fn into_knowledge(self) -> Result<Knowledge> {
        let mut k = Knowledge::new();
        for name in &self.presets {
            k.extend(&presets::preset(name)?);
        }
        for (name, m) in &self.maps {
            k.declare_map(name, parse_space(&m.domain)?, parse_space(&m.codomain)?);
        }
        let maps = k.map_names();
        for a in self.axioms {
            let q = parse_quantity(&a.q, &maps)?;
            let interval = match (a.eq, a.lo, a.hi) {
                (Some(v), None, None) => Interval { lo: v, hi: v },
                (None, lo, hi) if lo.is_some() || hi.is_some() => Interval {
                    lo: lo.unwrap_or(Ext::ONE),
                    hi: hi.unwrap_or(Ext::Inf),
                },
                _ => {
                    return Err(Error::Parse(format!(
                        "axiom on {} needs either `eq` or `lo`/`hi`",
                        a.q
                    )))
                }
            };
            if interval.lo > interval.hi {
                return Err(Error::Parse(format!("axiom on {} has lo > hi", a.q)));
            }
            k.axiom_with_note(q, interval, &a.note);
        }
        for (subject, attrs) in &self.attributes {
            let s = parse_subject(subject, &maps)?;
            for a in attrs {
                k.attribute(s.clone(), *a);
            }
        }
        for (a, b) in &self.equivalences {
            k.equivalence(parse_space(a)?, parse_space(b)?);
        }
        for (l, x) in &self.deformation_retracts {
            k.deformation_retract(parse_space(l)?, parse_space(x)?);
        }
        for c in &self.cup_lengths {
            let Subject::Map(p) = parse_subject(&c.map, &maps)? else {
                return Err(Error::Parse(format!("`{}` is not a map", c.map)));
            };
            k.cup_length(p, c.classes, &c.note);
        }
        for (x, n) in &self.cardinalities {
            k.cardinality(parse_space(x)?, *n);
        }
        for t in &self.terms {
            k.term(parse_quantity(t, &maps)?);
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quantity {
        parse_quantity(s, &BTreeSet::new()).unwrap()
    }

    fn x(s: &str) -> SpaceTerm {
        SpaceTerm::named(s)
    }

    #[test]
    fn rule_count() {
        assert_eq!(load_rules().len(), 23);
        let ids: BTreeSet<_> = load_rules().iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), 23);
    }

    #[test]
    fn empty_store_is_unknown() {
        let store = Knowledge::new().propagate().unwrap();
        let f = store.query(&q("TC(pi(2,1,S3))"));
        assert_eq!(f.interval, Interval::UNKNOWN);
        assert!(f.lower.is_none() && f.upper.is_none());
    }

    #[test]
    fn rp2_interval() {
        let mut k = Knowledge::new();
        k.axiom_eq(q("cat(RP2)"), 3)
            .axiom_eq(q("TC(RP2)"), 4)
            .space_attribute("RP2", Attr::Fpp)
            .space_attribute("RP2", Attr::Hausdorff)
            .space_attribute("RP2", Attr::ManifoldNbDim2);
        for kk in 2..=5 {
            let f = k.query(&q(&format!("TC(pi({kk},1,RP2))"))).unwrap();
            assert_eq!(f.interval, Interval::new(3, 4), "k={kk}\n{}", f.explain());
        }
    }

    #[test]
    fn odd_sphere_with_section() {
        let mut k = Knowledge::new();
        let p = MapTerm::pi(2, 1, &x("S3"));
        k.axiom_eq(Quantity::Sec(p.clone()), 1)
            .axiom_eq(q("TC(S3)"), 2)
            .attribute(Subject::Map(p.clone()), Attr::Fibration);
        let f = k.query(&Quantity::TcMap(p)).unwrap();
        assert_eq!(f.interval, Interval::exactly(2));
        let ids = f.lower.unwrap().rule_ids();
        assert!(ids.contains("R12") || ids.contains("R14"), "{ids:?}");
    }

    #[test]
    fn hausdorff_guard_for_main_theorem() {
        let p = q("sec(pi(2,1,X))");
        let mut k = Knowledge::new();
        k.space_attribute("X", Attr::Fpp);
        assert_eq!(k.query(&p).unwrap().interval, Interval::UNKNOWN);
        k.space_attribute("X", Attr::Hausdorff);
        let f = k.query(&p).unwrap();
        assert_eq!(f.interval, Interval::exactly(2));
        assert!(f.lower.unwrap().rule_ids().contains("R9"));
    }

    #[test]
    fn section_guard_for_tc_equality() {
        let p = MapTerm::Named("p".into());
        let mut k = Knowledge::new();
        k.declare_map("p", x("E"), x("B")).axiom_eq(q("TC(B)"), 3);
        k.attribute(Subject::Map(p.clone()), Attr::Fibration);
        let f = k.query(&Quantity::TcMap(p.clone())).unwrap();
        assert_eq!(f.interval.hi, Ext::Fin(3));
        assert!(f.interval.lo < Ext::Fin(3));
        k.attribute(Subject::Map(p.clone()), Attr::HasSection);
        let f = k.query(&Quantity::TcMap(p)).unwrap();
        assert_eq!(f.interval, Interval::exactly(3));
    }

    #[test]
    fn r14_needs_fibration_and_section() {
        let p = MapTerm::Named("p".into());
        let r14 = rules::rule("R14").unwrap();
        let mut k = Knowledge::new();
        k.declare_map("p", x("E"), x("B"))
            .axiom_eq(q("TC(B)"), 3)
            .term(Quantity::TcMap(p.clone()));
        k.attribute(Subject::Map(p.clone()), Attr::HasSection);
        assert!(r14.fire(&k.propagate().unwrap()).is_empty());
        k.attribute(Subject::Map(p.clone()), Attr::Fibration);
        let mut bare = Knowledge::new();
        bare.declare_map("p", x("E"), x("B"))
            .axiom_eq(q("TC(B)"), 3)
            .term(Quantity::TcMap(p.clone()))
            .attribute(Subject::Map(p.clone()), Attr::HasSection)
            .attribute(Subject::Map(p), Attr::Fibration);
        let before = bare.propagate_in_order(&[]).unwrap();
        assert!(!r14.fire(&before).is_empty());
    }

    #[test]
    fn contractibility_contradiction() {
        let mut k = Knowledge::new();
        k.axiom_eq(q("TC(X)"), 1).space_attribute("X", Attr::NotContractible);
        match k.propagate() {
            Err(Error::Contradiction(c)) => {
                let ids: BTreeSet<_> = c.left.rule_ids().union(&c.right.rule_ids()).copied().collect();
                assert!(ids.contains("R17"), "{c}");
            }
            other => panic!("expected a contradiction, got {other:?}"),
        }
    }

    #[test]
    fn facts_file() {
        let src = r#"{
            "axioms": [{"q": "cat(RP2)", "eq": 3}, {"q": "TC(RP2)", "lo": 4, "hi": 4}],
            "attributes": {"RP2": ["hausdorff", "ANR", "FPP", "manifold_nb_dim2"]},
            "terms": ["TC(pi(3,1,RP2))"]
        }"#;
        let k = Knowledge::from_json_str(src).unwrap();
        let store = k.propagate().unwrap();
        assert_eq!(store.interval(&q("TC(pi(3,1,RP2))")), Interval::new(3, 4));
        assert!(Knowledge::from_json_str(r#"{"axioms":[{"q":"cat(X)"}]}"#).is_err());
        assert!(Knowledge::from_json_str(r#"{"axioms":[{"q":"cat(X)","lo":3,"hi":2}]}"#).is_err());
        assert!(Knowledge::from_json_str(r#"{"attributes":{"X":["shiny"]}}"#).is_err());
    }

    #[test]
    fn named_maps_in_facts() {
        let src = r#"{
            "maps": {"p": {"domain": "E", "codomain": "B"}},
            "axioms": [{"q": "cat(B)", "eq": 2}, {"q": "sec(p)", "eq": 2}],
            "attributes": {"p": ["fibration"]}
        }"#;
        let k = Knowledge::from_json_str(src).unwrap();
        let tc = k.parse_quantity("TC(p)").unwrap();
        assert_eq!(tc, Quantity::TcMap(MapTerm::Named("p".into())));
        let f = k.query(&tc).unwrap();
        assert_eq!(f.interval.lo, Ext::Fin(2));
        assert_eq!(k.query(&q("secat(p)")).unwrap().interval, Interval::exactly(2));
    }

    #[test]
    fn cup_length_lower_bound() {
        let mut k = Knowledge::new();
        k.cup_length(MapTerm::Named("p".into()), 2, "exterior algebra");
        let f = k.query(&q("sec(p)")).unwrap();
        assert_eq!(f.interval.lo, Ext::Fin(3));
        assert!(f.explain().contains("certificate: exterior algebra"));
    }

    #[test]
    fn deformation_retract_transfers_secat() {
        let mut k = Knowledge::new();
        k.deformation_retract(x("L"), x("X"))
            .axiom(q("secat(pi(3,1,L))"), Interval::new(1, 1))
            .term(q("secat(pi(3,1,X))"));
        let store = k.propagate().unwrap();
        assert_eq!(store.interval(&q("secat(pi(3,1,X))")), Interval::exactly(1));
    }

    #[test]
    fn explanation_lists_premises() {
        let k = presets::preset("S2").unwrap();
        let f = k.query(&q("TC(pi(3,2,S2))")).unwrap();
        assert_eq!(f.interval, Interval::new(2, 3));
        let text = f.explain();
        assert!(text.contains("R11") && text.contains("R13"), "{text}");
        assert!(f.upper.unwrap().depth() >= 2);
    }

    #[test]
    fn monotone_in_knowledge() {
        let base = presets::preset("RP2").unwrap();
        let target = q("TC(pi(3,1,RP2))");
        let before = base.query(&target).unwrap().interval;
        let mut more = base.clone();
        more.axiom(q("cat(F(RP2,3))"), Interval::new(2, 9));
        let after = more.query(&target).unwrap().interval;
        assert!(after.within(&before));
    }
}
