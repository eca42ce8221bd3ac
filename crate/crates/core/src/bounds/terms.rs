//! Symbolic spaces, maps, quantities and the interval domain `{1, 2, ..., inf}`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Fin(u64),
    Inf,
}

impl Ext {
    pub const ONE: Ext = Ext::Fin(1);

    pub fn finite(self) -> Option<u64> {
        match self {
            Ext::Fin(v) => Some(v),
            Ext::Inf => None,
        }
    }

    /// `self - 1`, floored at 1.
    pub fn pred(self) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v.saturating_sub(1).max(1)),
            Ext::Inf => Ext::Inf,
        }
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        match (self, rhs) {
            (Ext::Fin(a), Ext::Fin(b)) => a.checked_add(b).map_or(Ext::Inf, Ext::Fin),
            _ => Ext::Inf,
        }
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, rhs: Ext) -> Ext {
        match (self, rhs) {
            (Ext::Fin(a), Ext::Fin(b)) => a.checked_mul(b).map_or(Ext::Inf, Ext::Fin),
            _ => Ext::Inf,
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::Fin(v) => s.serialize_u64(*v),
            Ext::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(0) => Err(serde::de::Error::custom("values start at 1")),
            Raw::N(v) => Ok(Ext::Fin(v)),
            Raw::S(s) if s == "inf" || s == "∞" => Ok(Ext::Inf),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a positive integer or \"inf\", got {s}"))),
        }
    }
}

/// Closed interval `[lo, hi]` of extended positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Ext,
    pub hi: Ext,
}

impl Interval {
    pub const UNKNOWN: Interval = Interval {
        lo: Ext::ONE,
        hi: Ext::Inf,
    };

    pub fn new(lo: u64, hi: u64) -> Self {
        Interval {
            lo: Ext::Fin(lo),
            hi: Ext::Fin(hi),
        }
    }

    pub fn exactly(v: u64) -> Self {
        Self::new(v, v)
    }

    pub fn at_least(v: u64) -> Self {
        Interval {
            lo: Ext::Fin(v),
            hi: Ext::Inf,
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= Ext::Fin(v) && Ext::Fin(v) <= self.hi
    }

    /// `self` lies inside `other`.
    pub fn within(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceTerm {
    Named(String),
    /// `F(X, k)`, with `k >= 2` after normalization.
    Config(Box<SpaceTerm>, u32),
    Product(Box<SpaceTerm>, Box<SpaceTerm>),
}

impl SpaceTerm {
    pub fn named(s: impl Into<String>) -> Self {
        SpaceTerm::Named(s.into())
    }

    /// `F(X, k)`; `F(X, 1)` is `X` itself.
    pub fn config(base: &SpaceTerm, k: u32) -> Self {
        if k == 1 {
            base.clone()
        } else {
            SpaceTerm::Config(Box::new(base.clone()), k)
        }
    }

    pub fn product(a: &SpaceTerm, b: &SpaceTerm) -> Self {
        SpaceTerm::Product(Box::new(a.clone()), Box::new(b.clone()))
    }
}

impl fmt::Display for SpaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTerm::Named(s) => write!(f, "{s}"),
            SpaceTerm::Config(x, k) => write!(f, "F({x},{k})"),
            SpaceTerm::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapTerm {
    /// The projection `F(X, k) -> F(X, r)` onto the first `r` points.
    Pi { k: u32, r: u32, base: SpaceTerm },
    Named(String),
}

impl MapTerm {
    pub fn pi(k: u32, r: u32, base: &SpaceTerm) -> Self {
        MapTerm::Pi {
            k,
            r,
            base: base.clone(),
        }
    }
}

impl fmt::Display for MapTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapTerm::Pi { k, r, base } => write!(f, "pi({k},{r},{base})"),
            MapTerm::Named(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    Cat(SpaceTerm),
    Tc(SpaceTerm),
    Sec(MapTerm),
    Secat(MapTerm),
    TcMap(MapTerm),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Cat(x) => write!(f, "cat({x})"),
            Quantity::Tc(x) => write!(f, "TC({x})"),
            Quantity::Sec(p) => write!(f, "sec({p})"),
            Quantity::Secat(p) => write!(f, "secat({p})"),
            Quantity::TcMap(p) => write!(f, "TC({p})"),
        }
    }
}

impl Quantity {
    pub fn map(&self) -> Option<&MapTerm> {
        match self {
            Quantity::Sec(p) | Quantity::Secat(p) | Quantity::TcMap(p) => Some(p),
            _ => None,
        }
    }

    pub fn space(&self) -> Option<&SpaceTerm> {
        match self {
            Quantity::Cat(x) | Quantity::Tc(x) => Some(x),
            _ => None,
        }
    }
}

/// Subject of an attribute.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Space(SpaceTerm),
    Map(MapTerm),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Space(x) => write!(f, "{x}"),
            Subject::Map(p) => write!(f, "{p}"),
        }
    }
}

/// Boolean properties used by rule guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attr {
    Hausdorff,
    /// Connected manifold without boundary, dimension at least 2.
    #[serde(alias = "manifold_nb_dim>=2", alias = "manifold_nb_dim≥2")]
    ManifoldNbDim2,
    Fibration,
    NotFibration,
    HasSection,
    Contractible,
    NotContractible,
    Nullhomotopic,
    #[serde(alias = "path_connected_CW")]
    PathConnectedCw,
    #[serde(alias = "ANR")]
    Anr,
    LieGroup,
    SmoothManifold,
    OddDimDiffManifold,
    CompactB1Nonzero,
    NonvanishingVf,
    #[serde(alias = "FPP")]
    Fpp,
    #[serde(alias = "not_FPP")]
    NotFpp,
    Sphere,
    EvenSphere,
}

impl Attr {
    pub fn negation(self) -> Option<Attr> {
        match self {
            Attr::Contractible => Some(Attr::NotContractible),
            Attr::NotContractible => Some(Attr::Contractible),
            Attr::Fpp => Some(Attr::NotFpp),
            Attr::NotFpp => Some(Attr::Fpp),
            Attr::Fibration => Some(Attr::NotFibration),
            Attr::NotFibration => Some(Attr::Fibration),
            _ => None,
        }
    }
}

impl fmt::Display for Attr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        write!(f, "{}", s.as_ref().and_then(|v| v.as_str()).unwrap_or("?"))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    maps: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src)))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("expected `{tok}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_alphanumeric() || matches!(c, '_' | '^' | '-' | '.' | '\'')))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn int(&mut self) -> Result<u32> {
        let s = self.ident()?;
        match s.parse::<u32>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => self.err("expected a positive integer"),
        }
    }

    fn at_call(&self, head: &str) -> bool {
        let rest = self.src[self.pos..].trim_start();
        rest.starts_with(head) && rest[head.len()..].trim_start().starts_with('(')
    }

    fn space(&mut self) -> Result<SpaceTerm> {
        if self.at_call("F") {
            self.eat("F");
            self.expect("(")?;
            let x = self.space()?;
            self.expect(",")?;
            let k = self.int()?;
            self.expect(")")?;
            Ok(SpaceTerm::config(&x, k))
        } else if self.at_call("prod") {
            self.eat("prod");
            self.expect("(")?;
            let a = self.space()?;
            self.expect(",")?;
            let b = self.space()?;
            self.expect(")")?;
            Ok(SpaceTerm::product(&a, &b))
        } else {
            Ok(SpaceTerm::Named(self.ident()?))
        }
    }

    fn map(&mut self) -> Result<MapTerm> {
        if self.at_call("pi") {
            self.eat("pi");
            self.expect("(")?;
            let k = self.int()?;
            self.expect(",")?;
            let r = self.int()?;
            self.expect(",")?;
            let base = self.space()?;
            self.expect(")")?;
            if r > k {
                return Err(Error::Parse(format!("pi({k},{r},..) needs r <= k")));
            }
            Ok(MapTerm::Pi { k, r, base })
        } else {
            Ok(MapTerm::Named(self.ident()?))
        }
    }

    fn is_map_ahead(&self) -> bool {
        if self.at_call("pi") {
            return true;
        }
        let rest = self.src[self.pos..].trim_start();
        let name: String = rest.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        rest[name.len()..].trim_start().starts_with(')') && self.maps.contains(&name)
    }

    fn quantity(&mut self) -> Result<Quantity> {
        let head = self.ident()?;
        self.expect("(")?;
        let q = match head.as_str() {
            "cat" => Quantity::Cat(self.space()?),
            "sec" => Quantity::Sec(self.map()?),
            "secat" => Quantity::Secat(self.map()?),
            "TC" if self.is_map_ahead() => Quantity::TcMap(self.map()?),
            "TC" => Quantity::Tc(self.space()?),
            _ => return self.err(&format!("unknown quantity `{head}`")),
        };
        self.expect(")")?;
        Ok(q)
    }

    fn done(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parses `cat(X)`, `TC(X)`, `TC(pi(k,r,X))`, `sec(..)`, `secat(..)`.
/// Plain names inside `TC(..)` denote maps when listed in `maps`.
pub fn parse_quantity(s: &str, maps: &BTreeSet<String>) -> Result<Quantity> {
    let mut p = Parser { src: s, pos: 0, maps };
    let q = p.quantity()?;
    p.done()?;
    Ok(q)
}

pub fn parse_space(s: &str) -> Result<SpaceTerm> {
    let empty = BTreeSet::new();
    let mut p = Parser {
        src: s,
        pos: 0,
        maps: &empty,
    };
    let x = p.space()?;
    p.done()?;
    Ok(x)
}

/// A subject: `pi(..)` terms and names listed in `maps` are maps, everything else a space.
pub fn parse_subject(s: &str, maps: &BTreeSet<String>) -> Result<Subject> {
    let mut p = Parser { src: s, pos: 0, maps };
    let subject = if p.at_call("pi") || maps.contains(s.trim()) {
        Subject::Map(p.map()?)
    } else {
        Subject::Space(p.space()?)
    };
    p.done()?;
    Ok(subject)
}

/// Binomial coefficient, saturating to infinity.
pub fn binomial(n: u64, k: u64) -> Ext {
    if k > n {
        return Ext::Fin(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Ext::Inf;
        }
    }
    Ext::Fin(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let maps: BTreeSet<String> = ["p".to_string()].into();
        for s in [
            "cat(RP2)",
            "TC(pi(2,1,S3))",
            "sec(pi(3,2,S2))",
            "secat(p)",
            "TC(p)",
            "TC(F(S2,2))",
            "cat(prod(F(RP2,2),RP2))",
        ] {
            assert_eq!(parse_quantity(s, &maps).unwrap().to_string(), s);
        }
        assert_eq!(
            parse_quantity("TC(pi(2,1,S3))", &maps).unwrap(),
            Quantity::TcMap(MapTerm::pi(2, 1, &SpaceTerm::named("S3")))
        );
        assert_eq!(parse_quantity("TC(X)", &maps).unwrap(), Quantity::Tc(SpaceTerm::named("X")));
        assert_eq!(parse_space("F(X,1)").unwrap(), SpaceTerm::named("X"));
        assert!(parse_quantity("foo(X)", &maps).is_err());
        assert!(parse_quantity("sec(pi(1,2,X))", &maps).is_err());
        assert!(parse_quantity("cat(X) extra", &maps).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Ext::Fin(6));
        assert_eq!(binomial(3, 2), Ext::Fin(3));
        assert_eq!(binomial(5, 5), Ext::Fin(1));
        assert_eq!(binomial(200, 100), Ext::Inf);
    }

    #[test]
    fn ext_arithmetic() {
        assert_eq!(Ext::Fin(2) + Ext::Fin(3), Ext::Fin(5));
        assert_eq!(Ext::Fin(2) * Ext::Inf, Ext::Inf);
        assert_eq!(Ext::Fin(1).pred(), Ext::Fin(1));
        assert!(Ext::Fin(u64::MAX) > Ext::Fin(3));
        assert!(Ext::Inf > Ext::Fin(u64::MAX));
        let i: Interval = serde_json::from_str(r#"{"lo":1,"hi":"inf"}"#).unwrap();
        assert_eq!(i, Interval::UNKNOWN);
        assert_eq!(Interval::new(3, 4).to_string(), "[3,4]");
    }
}
