//! Checkable lower-bound certificates: cup-length certificates over a graded
//! ring given by its product table, and induced-map certificates for
//! `F(X,2) -> X` whose ranks are computed exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{parse_subject, Attr, Interval, Knowledge, MapTerm, Quantity, SpaceTerm, Subject};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Z,
    Zp(i64),
    Q,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => write!(f, "Z"),
            Coefficients::Zp(p) => write!(f, "Z{p}"),
            Coefficients::Q => write!(f, "Q"),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" => return Ok(Coefficients::Z),
            "Q" => return Ok(Coefficients::Q),
            _ => {}
        }
        let digits = t.strip_prefix("Z_").or_else(|| t.strip_prefix('Z'));
        match digits.and_then(|d| d.parse::<i64>().ok()) {
            Some(p) if is_prime(p) => Ok(Coefficients::Zp(p)),
            Some(p) => Err(Error::InvalidRing(format!("{p} is not prime"))),
            None => Err(Error::InvalidRing(format!("unknown coefficients `{s}` (use Z, Q or Zp)"))),
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Coefficients {
    fn normalize(&self, c: Rational64) -> Result<Rational64> {
        match self {
            Coefficients::Q => Ok(c),
            Coefficients::Z if c.is_integer() => Ok(c),
            Coefficients::Zp(p) if c.is_integer() => Ok(Rational64::from_integer(c.to_integer().rem_euclid(*p))),
            _ => Err(Error::InvalidRing(format!("coefficient {c} is not an integer over {self}"))),
        }
    }
}

/// A coefficient in JSON: an integer or a string such as `"-3/2"`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawCoefficient {
    Int(i64),
    Text(String),
}

impl RawCoefficient {
    fn value(&self) -> Result<Rational64> {
        match self {
            RawCoefficient::Int(i) => Ok(Rational64::from_integer(*i)),
            RawCoefficient::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRing(format!("bad coefficient `{s}`"))),
        }
    }
}

/// A ring element in JSON: a basis name, or a map from basis names to coefficients.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawElement {
    Name(String),
    Combination(BTreeMap<String, RawCoefficient>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawProduct {
    pub left: String,
    pub right: String,
    pub result: RawElement,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawRing {
    pub coefficients: Coefficients,
    pub basis: Vec<String>,
    pub degrees: Vec<u32>,
    /// Nonzero products of basis elements; missing entries are zero.
    #[serde(alias = "relations")]
    pub products: Vec<RawProduct>,
}

/// Linear combination of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Rational64>);

impl Element {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == Rational64::from_integer(0))
    }

    pub fn coefficients(&self) -> &[Rational64] {
        &self.0
    }

    fn neg(&self) -> Element {
        Element(self.0.iter().map(|c| -c).collect())
    }
}

/// Graded ring over Z, Z/p or Q given by a basis and a product table.
/// The unit is not part of the basis.
#[derive(Clone, Debug)]
pub struct GradedRing {
    coefficients: Coefficients,
    names: Vec<String>,
    degrees: Vec<u32>,
    index: BTreeMap<String, usize>,
    table: Vec<Vec<Element>>,
}

impl GradedRing {
    /// Builds the ring and checks grading, associativity and graded commutativity
    /// on every basis pair and triple.
    pub fn new(raw: &RawRing) -> Result<Self> {
        let n = raw.basis.len();
        if raw.degrees.len() != n {
            return Err(Error::InvalidRing(format!("{} basis names but {} degrees", n, raw.degrees.len())));
        }
        let mut index = BTreeMap::new();
        for (i, name) in raw.basis.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidRing(format!("duplicate basis element `{name}`")));
            }
        }
        let mut ring = GradedRing {
            coefficients: raw.coefficients,
            names: raw.basis.clone(),
            degrees: raw.degrees.clone(),
            index,
            table: vec![vec![Element(vec![Rational64::from_integer(0); n]); n]; n],
        };
        let mut seen = BTreeSet::new();
        for p in &raw.products {
            let a = ring.basis_index(&p.left)?;
            let b = ring.basis_index(&p.right)?;
            if !seen.insert((a, b)) {
                return Err(Error::InvalidRing(format!("product {}*{} given twice", p.left, p.right)));
            }
            ring.table[a][b] = ring.element(&p.result)?;
        }
        ring.check()?;
        Ok(ring)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::new(&serde_json::from_str(s)?)
    }

    /// Exterior algebra on degree-one generators; basis elements are the
    /// nonempty products `x_i1 x_i2 ...` with increasing indices.
    pub fn exterior(generators: &[&str], coefficients: Coefficients) -> Result<Self> {
        let g = generators.len();
        if g > 10 {
            return Err(Error::InvalidRing("at most 10 exterior generators".into()));
        }
        let subsets: Vec<u32> = (1u32..1 << g).collect();
        let name = |s: u32| (0..g).filter(|i| s >> i & 1 == 1).map(|i| generators[i]).collect::<String>();
        let mut products = Vec::new();
        for &s in &subsets {
            for &t in &subsets {
                if s & t != 0 {
                    continue;
                }
                // sign of the shuffle putting S followed by T in increasing order
                let inversions: u32 = (0..g)
                    .filter(|i| s >> i & 1 == 1)
                    .map(|i| (t & ((1u32 << i) - 1)).count_ones())
                    .sum();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                products.push(RawProduct {
                    left: name(s),
                    right: name(t),
                    result: RawElement::Combination(BTreeMap::from([(name(s | t), RawCoefficient::Int(sign))])),
                });
            }
        }
        Self::new(&RawRing {
            coefficients,
            basis: subsets.iter().map(|&s| name(s)).collect(),
            degrees: subsets.iter().map(|s| s.count_ones()).collect(),
            products,
        })
    }

    /// `coefficients[a]/(a^height)` with `a` in the given degree; basis `a, a2, ..., a{height-1}`.
    pub fn truncated_polynomial(generator: &str, degree: u32, height: u32, coefficients: Coefficients) -> Result<Self> {
        if height < 2 {
            return Err(Error::InvalidRing("height must be at least 2".into()));
        }
        let name = |i: u32| if i == 1 { generator.to_string() } else { format!("{generator}{i}") };
        let mut products = Vec::new();
        for i in 1..height {
            for j in 1..height {
                if i + j < height {
                    products.push(RawProduct {
                        left: name(i),
                        right: name(j),
                        result: RawElement::Name(name(i + j)),
                    });
                }
            }
        }
        Self::new(&RawRing {
            coefficients,
            basis: (1..height).map(name).collect(),
            degrees: (1..height).map(|i| i * degree).collect(),
            products,
        })
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn basis(&self) -> &[String] {
        &self.names
    }

    pub fn degree_of(&self, name: &str) -> Result<u32> {
        Ok(self.degrees[self.basis_index(name)?])
    }

    fn basis_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownBasis(name.into()))
    }

    pub fn zero(&self) -> Element {
        Element(vec![Rational64::from_integer(0); self.names.len()])
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        let mut e = self.zero();
        e.0[self.basis_index(name)?] = Rational64::from_integer(1);
        Ok(e)
    }

    pub fn element(&self, raw: &RawElement) -> Result<Element> {
        match raw {
            RawElement::Name(n) => self.generator(n),
            RawElement::Combination(terms) => {
                let mut e = self.zero();
                for (name, c) in terms {
                    let i = self.basis_index(name)?;
                    e.0[i] = self.coefficients.normalize(e.0[i] + c.value()?)?;
                }
                Ok(e)
            }
        }
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| self.coefficients.normalize(x + y).expect("integral sum"))
                .collect(),
        )
    }

    /// Bilinear extension of the product table.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut out = self.zero();
        for (i, ca) in a.0.iter().enumerate().filter(|(_, c)| **c != Rational64::from_integer(0)) {
            for (j, cb) in b.0.iter().enumerate().filter(|(_, c)| **c != Rational64::from_integer(0)) {
                for (l, ce) in self.table[i][j].0.iter().enumerate() {
                    out.0[l] += ca * cb * ce;
                }
            }
        }
        out.0 = out
            .0
            .into_iter()
            .map(|c| self.coefficients.normalize(c).expect("integral product"))
            .collect();
        out
    }

    pub fn multiply_names(&self, a: &str, b: &str) -> Result<Element> {
        Ok(self.multiply(&self.generator(a)?, &self.generator(b)?))
    }

    /// Degree of a homogeneous element; `None` for zero or mixed degrees.
    pub fn degree(&self, e: &Element) -> Option<u32> {
        let degs: BTreeSet<u32> = (0..e.0.len())
            .filter(|&i| e.0[i] != Rational64::from_integer(0))
            .map(|i| self.degrees[i])
            .collect();
        (degs.len() == 1).then(|| *degs.iter().next().expect("one degree"))
    }

    pub fn render(&self, e: &Element) -> String {
        let terms: Vec<String> = e
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Rational64::from_integer(0))
            .map(|(i, c)| {
                if *c == Rational64::from_integer(1) {
                    self.names[i].clone()
                } else {
                    format!("{c}*{}", self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.names.len();
        for a in 0..n {
            for b in 0..n {
                let prod = &self.table[a][b];
                let want = self.degrees[a] + self.degrees[b];
                if let Some(l) = (0..n).find(|&l| prod.0[l] != Rational64::from_integer(0) && self.degrees[l] != want) {
                    return Err(Error::InvalidRing(format!(
                        "{}*{} has a term {} of degree {}, expected {want}",
                        self.names[a], self.names[b], self.names[l], self.degrees[l]
                    )));
                }
                let swapped = &self.table[b][a];
                let expected = if self.degrees[a] * self.degrees[b] % 2 == 1 { swapped.neg() } else { swapped.clone() };
                let expected = self.add(&expected, &self.zero());
                if *prod != expected {
                    return Err(Error::InvalidRing(format!(
                        "graded commutativity fails for {} and {}",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            let ea = self.generator(&self.names[a]).expect("basis");
            for b in 0..n {
                let ab = self.multiply(&ea, &self.generator(&self.names[b]).expect("basis"));
                for c in 0..n {
                    let ec = self.generator(&self.names[c]).expect("basis");
                    let left = self.multiply(&ab, &ec);
                    let right = self.multiply(&ea, &self.table[b][c]);
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = bad {
            return Err(Error::InvalidRing(format!(
                "associativity fails for ({}, {}, {})",
                self.names[a], self.names[b], self.names[c]
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    #[error("class {index} is zero")]
    ZeroClass { index: usize },
    #[error("the product vanishes after multiplying the first {stage} classes")]
    ProductVanishes { stage: usize },
    #[error("every induced map is injective")]
    AllInjective,
    #[error("every induced map is surjective")]
    AllSurjective,
}

/// A fact accepted by a certificate, ready to feed into the bounds engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertifiedFact {
    /// A nonzero product of `classes` pulled-back-to-zero classes: `sec >= classes + 1`.
    SecAtLeast { map: String, lower: u64, classes: u32, provenance: String },
    SecEquals { map: String, value: u64, provenance: String },
    Fpp { space: String, provenance: String },
}

impl fmt::Display for CertifiedFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertifiedFact::SecAtLeast { map, lower, provenance, .. } => write!(f, "sec({map}) >= {lower}  [{provenance}]"),
            CertifiedFact::SecEquals { map, value, provenance } => write!(f, "sec({map}) = {value}  [{provenance}]"),
            CertifiedFact::Fpp { space, provenance } => write!(f, "{space} has the fixed point property  [{provenance}]"),
        }
    }
}

fn map_term(id: &str) -> Result<MapTerm> {
    match parse_subject(id, &BTreeSet::new())? {
        Subject::Map(m) => Ok(m),
        Subject::Space(_) => Err(Error::Parse(format!("`{id}` is not a map"))),
    }
}

/// Adds accepted facts to `knowledge` with certificate provenance.
pub fn record(facts: &[CertifiedFact], knowledge: &mut Knowledge) -> Result<()> {
    for fact in facts {
        match fact {
            CertifiedFact::SecAtLeast { map, classes, provenance, .. } => {
                knowledge.cup_length(map_term(map)?, *classes, provenance);
            }
            CertifiedFact::SecEquals { map, value, provenance } => {
                knowledge.certified_bound(Quantity::Sec(map_term(map)?), Interval::exactly(*value), provenance);
            }
            CertifiedFact::Fpp { space, provenance } => {
                knowledge.certified_attribute(Subject::Space(crate::bounds::parse_space(space)?), Attr::Fpp, provenance);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CupLengthCertificate {
    /// Map the bound is about, e.g. `pi(2,1,RP2)`.
    pub map: String,
    /// Cohomology ring of the base.
    pub ring: RawRing,
    /// Classes asserted to pull back to zero in the total space.
    pub classes: Vec<RawElement>,
    #[serde(default)]
    pub assertion: Option<String>,
}

impl CupLengthCertificate {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub type Verdict = std::result::Result<Vec<CertifiedFact>, Rejection>;

/// Accepts iff every class is nonzero and their product is nonzero.
pub fn verify_cup_certificate(cert: &CupLengthCertificate) -> Result<Verdict> {
    map_term(&cert.map)?;
    let ring = GradedRing::new(&cert.ring)?;
    if cert.classes.is_empty() {
        return Err(Error::InvalidArgument("a cup-length certificate needs at least one class".into()));
    }
    let classes = cert
        .classes
        .iter()
        .map(|c| ring.element(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(check_product(&ring, &classes).map(|()| {
        let k = classes.len() as u32;
        let mut provenance = format!("cup-length certificate, {k} classes");
        if let Some(a) = &cert.assertion {
            provenance.push_str(&format!("; assumes {a}"));
        }
        vec![CertifiedFact::SecAtLeast {
            map: cert.map.clone(),
            lower: k as u64 + 1,
            classes: k,
            provenance,
        }]
    }))
}

/// `Ok` iff all classes and their running product are nonzero.
pub fn check_product(ring: &GradedRing, classes: &[Element]) -> std::result::Result<(), Rejection> {
    if let Some(index) = classes.iter().position(Element::is_zero) {
        return Err(Rejection::ZeroClass { index });
    }
    let mut acc = classes[0].clone();
    for (i, c) in classes.iter().enumerate().skip(1) {
        acc = ring.multiply(&acc, c);
        if acc.is_zero() {
            return Err(Rejection::ProductVanishes { stage: i + 1 });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    Homology,
    Cohomology,
    Homotopy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    PullbackNoninjective,
    PushforwardNonsurjective,
}

/// An integer matrix of a homomorphism `Z^cols -> Z^rows` (or the same over Z/p, Q).
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeMatrix {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InducedMapCertificate {
    /// Must be `pi(2,1,X)`.
    pub map: String,
    pub functor: Functor,
    pub direction: Direction,
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeMatrix>,
}

impl InducedMapCertificate {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Invariant factors of an integer matrix (Smith normal form diagonal, nonzero entries).
pub fn smith_invariants(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            let (bi, bj) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("pivot row or column is nonzero");
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rank over Z/p by elimination.
pub fn rank_mod_p(m: &[Vec<i64>], rows: usize, cols: usize, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let inverse = |x: i64| {
        let (mut r, mut e, mut base) = (1i64, p - 2, x);
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = inverse(a[rank][c]);
        for j in 0..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..rows {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixProperties {
    pub degree: u32,
    pub injective: bool,
    pub surjective: bool,
}

fn matrix_properties(d: &DegreeMatrix, coefficients: Coefficients) -> Result<MatrixProperties> {
    if d.matrix.len() != d.rows || d.matrix.iter().any(|r| r.len() != d.cols) {
        return Err(Error::InvalidArgument(format!(
            "degree {} matrix is not {}x{}",
            d.degree, d.rows, d.cols
        )));
    }
    let (injective, surjective) = match coefficients {
        Coefficients::Zp(p) => {
            let r = rank_mod_p(&d.matrix, d.rows, d.cols, p);
            (r == d.cols, r == d.rows)
        }
        Coefficients::Q => {
            let r = smith_invariants(&d.matrix, d.rows, d.cols).len();
            (r == d.cols, r == d.rows)
        }
        Coefficients::Z => {
            let inv = smith_invariants(&d.matrix, d.rows, d.cols);
            (inv.len() == d.cols, inv.len() == d.rows && inv.iter().all(|&x| x == 1))
        }
    };
    Ok(MatrixProperties {
        degree: d.degree,
        injective,
        surjective,
    })
}

/// Per-degree injectivity and surjectivity of the matrices in `cert`.
pub fn induced_properties(cert: &InducedMapCertificate) -> Result<Vec<MatrixProperties>> {
    cert.degrees.iter().map(|d| matrix_properties(d, cert.coefficients)).collect()
}

/// Accepts a non-injective pullback or non-surjective pushforward of `F(X,2) -> X`,
/// emitting `sec = 2` and the fixed point property for `X` (assumed Hausdorff).
pub fn verify_induced_certificate(cert: &InducedMapCertificate) -> Result<Verdict> {
    let base = match map_term(&cert.map)? {
        MapTerm::Pi { k: 2, r: 1, base } => base,
        _ => return Err(Error::InvalidArgument(format!("`{}` is not of the form pi(2,1,X)", cert.map))),
    };
    match (cert.direction, cert.functor) {
        (Direction::PullbackNoninjective, Functor::Cohomology) => {}
        (Direction::PushforwardNonsurjective, Functor::Homology | Functor::Homotopy) => {}
        (d, f) => {
            return Err(Error::InvalidArgument(format!("direction {d:?} does not match functor {f:?}")));
        }
    }
    if cert.degrees.is_empty() {
        return Err(Error::InvalidArgument("no matrices given".into()));
    }
    let props = induced_properties(cert)?;
    let witness = match cert.direction {
        Direction::PullbackNoninjective => props.iter().find(|p| !p.injective).ok_or(Rejection::AllInjective),
        Direction::PushforwardNonsurjective => props.iter().find(|p| !p.surjective).ok_or(Rejection::AllSurjective),
    };
    Ok(witness.map(|w| {
        let what = match cert.direction {
            Direction::PullbackNoninjective => "not injective",
            Direction::PushforwardNonsurjective => "not surjective",
        };
        let functor = format!("{:?}", cert.functor).to_lowercase();
        let provenance = format!(
            "induced {functor} map in degree {} over {} is {what}; X assumed Hausdorff",
            w.degree, cert.coefficients
        );
        let space = SpaceTerm::to_string(&base);
        vec![
            CertifiedFact::SecEquals {
                map: cert.map.clone(),
                value: 2,
                provenance: provenance.clone(),
            },
            CertifiedFact::Fpp {
                space,
                provenance: format!("sec = 2 by {provenance}, then the FPP characterization"),
            },
        ]
    }))
}

pub fn load_cup_certificate(path: &Path) -> Result<CupLengthCertificate> {
    CupLengthCertificate::from_json_str(&std::fs::read_to_string(path)?)
}

pub fn load_induced_certificate(path: &Path) -> Result<InducedMapCertificate> {
    InducedMapCertificate::from_json_str(&std::fs::read_to_string(path)?)
}

/// Certificate for the real projective plane: `pi_2(F(RP2,2)) = 0 -> pi_2(RP2) = Z`.
pub fn rp2_certificate() -> InducedMapCertificate {
    InducedMapCertificate {
        map: "pi(2,1,RP2)".into(),
        functor: Functor::Homotopy,
        direction: Direction::PushforwardNonsurjective,
        coefficients: Coefficients::Z,
        degrees: vec![DegreeMatrix {
            degree: 2,
            rows: 1,
            cols: 0,
            matrix: vec![vec![]],
        }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(gens: &[&str]) -> GradedRing {
        GradedRing::exterior(gens, Coefficients::Z).unwrap()
    }

    fn cup(ring: RawRing, classes: &[&str]) -> Verdict {
        verify_cup_certificate(&CupLengthCertificate {
            map: "pi(2,1,T2)".into(),
            ring,
            classes: classes.iter().map(|c| RawElement::Name(c.to_string())).collect(),
            assertion: None,
        })
        .unwrap()
    }

    fn exterior_raw() -> RawRing {
        serde_json::from_str(
            r#"{"coefficients":"Z","basis":["x","y","xy"],"degrees":[1,1,2],
                "products":[{"left":"x","right":"y","result":"xy"},
                            {"left":"y","right":"x","result":{"xy":-1}}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn exterior_products() {
        let r = GradedRing::new(&exterior_raw()).unwrap();
        let xy = r.multiply_names("x", "y").unwrap();
        assert_eq!(r.render(&xy), "xy");
        assert!(r.multiply_names("x", "x").unwrap().is_zero());
        assert_eq!(r.render(&r.multiply_names("y", "x").unwrap()), "-1*xy");
        assert!(matches!(r.multiply_names("x", "z"), Err(Error::UnknownBasis(_))));
        let r3 = ext(&["a", "b", "c"]);
        let abc = r3.multiply(&r3.multiply_names("a", "b").unwrap(), &r3.generator("c").unwrap());
        assert_eq!(r3.render(&abc), "abc");
        assert_eq!(r3.degree(&abc), Some(3));
    }

    #[test]
    fn truncated_polynomial() {
        let r = GradedRing::truncated_polynomial("a", 1, 3, Coefficients::Zp(2)).unwrap();
        assert_eq!(r.render(&r.multiply_names("a", "a").unwrap()), "a2");
        assert!(r.multiply_names("a", "a2").unwrap().is_zero());
        // over Z an odd-degree square must vanish
        assert!(GradedRing::truncated_polynomial("a", 1, 3, Coefficients::Z).is_err());
        assert!(GradedRing::truncated_polynomial("c", 2, 4, Coefficients::Z).is_ok());
    }

    #[test]
    fn ring_validation() {
        let mut bad = exterior_raw();
        bad.products.pop();
        assert!(matches!(GradedRing::new(&bad), Err(Error::InvalidRing(_))));
        let mut bad = exterior_raw();
        bad.degrees[2] = 3;
        assert!(GradedRing::new(&bad).is_err());
        let nonassoc: RawRing = serde_json::from_str(
            r#"{"coefficients":"Q","basis":["u","v","w"],"degrees":[2,4,6],
                "products":[{"left":"u","right":"u","result":"v"},
                            {"left":"u","right":"v","result":"w"},
                            {"left":"v","right":"u","result":"w"}]}"#,
        )
        .unwrap();
        // (uu)u = vu = w and u(uu) = uv = w, fine; breaking one side fails
        assert!(GradedRing::new(&nonassoc).is_ok());
        let mut broken = nonassoc.clone();
        broken.products[2].result = RawElement::Combination(BTreeMap::from([("w".into(), RawCoefficient::Int(2))]));
        assert!(GradedRing::new(&broken).is_err());
        assert!("Z4".parse::<Coefficients>().is_err());
        assert_eq!("Z_5".parse::<Coefficients>().unwrap(), Coefficients::Zp(5));
    }

    #[test]
    fn cup_certificates() {
        let facts = cup(exterior_raw(), &["x", "y"]).unwrap();
        assert!(matches!(&facts[0], CertifiedFact::SecAtLeast { lower: 3, .. }));
        assert_eq!(cup(exterior_raw(), &["x", "x"]), Err(Rejection::ProductVanishes { stage: 2 }));
        let facts = cup(exterior_raw(), &["x"]).unwrap();
        assert!(matches!(&facts[0], CertifiedFact::SecAtLeast { lower: 2, classes: 1, .. }));
        let mut raw = exterior_raw();
        raw.basis.push("z".into());
        raw.degrees.push(5);
        let cert = CupLengthCertificate {
            map: "pi(2,1,T2)".into(),
            ring: raw,
            classes: vec![RawElement::Combination(BTreeMap::new())],
            assertion: None,
        };
        assert_eq!(verify_cup_certificate(&cert).unwrap(), Err(Rejection::ZeroClass { index: 0 }));
    }

    #[test]
    fn cup_certificate_feeds_bounds() {
        let facts = cup(exterior_raw(), &["x", "y"]).unwrap();
        let mut k = Knowledge::new();
        record(&facts, &mut k).unwrap();
        let q = k.parse_quantity("sec(pi(2,1,T2))").unwrap();
        let fact = k.query(&q).unwrap();
        assert!(fact.interval.lo >= crate::bounds::Ext::Fin(3));
        assert!(fact.explain().contains("cup-length certificate, 2 classes"));
    }

    #[test]
    fn smith_normal_form() {
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]], 2, 2), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![1, 1]], 1, 2), vec![1]);
        assert_eq!(smith_invariants(&[vec![0, 0]], 1, 2), Vec::<i128>::new());
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]], 2, 2), vec![1, 6]);
        assert_eq!(rank_mod_p(&[vec![2, 4], vec![6, 8]], 2, 2, 2), 0);
        assert_eq!(rank_mod_p(&[vec![2, 4], vec![6, 8]], 2, 2, 3), 2);
    }

    fn induced(direction: Direction, functor: Functor, mats: Vec<(usize, usize, Vec<Vec<i64>>)>) -> InducedMapCertificate {
        InducedMapCertificate {
            map: "pi(2,1,X)".into(),
            functor,
            direction,
            coefficients: Coefficients::Z,
            degrees: mats
                .into_iter()
                .enumerate()
                .map(|(i, (rows, cols, matrix))| DegreeMatrix {
                    degree: i as u32 + 1,
                    rows,
                    cols,
                    matrix,
                })
                .collect(),
        }
    }

    #[test]
    fn rp2_certificate_is_accepted() {
        let facts = verify_induced_certificate(&rp2_certificate()).unwrap().unwrap();
        assert!(matches!(&facts[0], CertifiedFact::SecEquals { value: 2, .. }));
        assert!(matches!(&facts[1], CertifiedFact::Fpp { space, .. } if space == "RP2"));
    }

    #[test]
    fn induced_examples() {
        let push = Direction::PushforwardNonsurjective;
        let identity = induced(push, Functor::Homology, vec![(1, 1, vec![vec![1]]), (2, 2, vec![vec![1, 0], vec![0, 1]])]);
        assert_eq!(verify_induced_certificate(&identity).unwrap(), Err(Rejection::AllSurjective));
        let pull = induced(Direction::PullbackNoninjective, Functor::Cohomology, vec![(1, 1, vec![vec![1]])]);
        assert_eq!(verify_induced_certificate(&pull).unwrap(), Err(Rejection::AllInjective));
        let mixed = induced(push, Functor::Homology, vec![(1, 2, vec![vec![1, 1]]), (2, 1, vec![vec![1], vec![0]])]);
        assert!(verify_induced_certificate(&mixed).unwrap().is_ok());
        let doubling = induced(push, Functor::Homology, vec![(1, 1, vec![vec![2]])]);
        assert!(verify_induced_certificate(&doubling).unwrap().is_ok());
        let mut over_q = doubling.clone();
        over_q.coefficients = Coefficients::Q;
        assert_eq!(verify_induced_certificate(&over_q).unwrap(), Err(Rejection::AllSurjective));
        let mismatched = induced(Direction::PullbackNoninjective, Functor::Homotopy, vec![(1, 1, vec![vec![0]])]);
        assert!(verify_induced_certificate(&mismatched).is_err());
        let malformed = induced(push, Functor::Homology, vec![(2, 2, vec![vec![1]])]);
        assert!(verify_induced_certificate(&malformed).is_err());
    }

    #[test]
    fn induced_certificate_feeds_bounds() {
        let facts = verify_induced_certificate(&rp2_certificate()).unwrap().unwrap();
        let mut k = Knowledge::new();
        record(&facts, &mut k).unwrap();
        let store = k.propagate().unwrap();
        let q = k.parse_quantity("sec(pi(2,1,RP2))").unwrap();
        assert_eq!(store.interval(&q), Interval::exactly(2));
        assert!(store.space_holds(&SpaceTerm::named("RP2"), Attr::Fpp).is_some());
    }
}
