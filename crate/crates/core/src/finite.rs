//! Finite topological spaces as posets (opens are up-sets, continuous maps are
//! monotone maps): fixed point property, `F(P,2)`, brute-force `sec` of the
//! projection `F(P,2) -> P`, homotopy classes of maps and minimal root numbers.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on partial assignments explored by one search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Default largest cover size tried by [`sec_pi21`].
pub const DEFAULT_MAX_COVER: usize = 4;
/// Largest poset accepted by searches that enumerate subsets.
const MAX_SUBSET_N: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset(n={}, covers={:?})", self.n, self.strict_pairs())
    }
}

impl FinitePoset {
    /// Closes `relations` reflexively and transitively; rejects cycles.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPoset("a poset needs at least one point".into()));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in relations {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!("relation ({i},{j}) outside 0..{n}")));
            }
            leq[i * n + j] = true;
        }
        for m in 0..n {
            for i in 0..n {
                if leq[i * n + m] {
                    for j in 0..n {
                        if leq[m * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::InvalidPoset(format!("{i} and {j} lie on a cycle")));
                }
            }
        }
        Ok(FinitePoset { n, leq })
    }

    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &rel)
    }

    /// Discrete space on `n` points.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    /// Four-point model of the circle: two minimal points below two maximal ones.
    pub fn circle() -> Self {
        Self::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// All pairs `i < j` in the order (`i != j`).
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.leq(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Finite spaces are Hausdorff exactly when discrete.
    pub fn is_hausdorff(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    pub fn is_up_set(&self, set: &[bool]) -> bool {
        (0..self.n).all(|i| !set[i] || (0..self.n).all(|j| !self.leq(i, j) || set[j]))
    }

    /// Smallest open set containing `x`.
    pub fn up_set_of(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(x, j)).collect()
    }

    pub fn is_monotone(&self, codomain: &FinitePoset, values: &[usize]) -> bool {
        values.len() == self.n
            && values.iter().all(|&v| v < codomain.n)
            && self.strict_pairs().iter().all(|&(i, j)| codomain.leq(values[i], values[j]))
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawPoset = serde_json::from_str(s)?;
        Self::new(raw.n, &raw.leq)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n, "leq": self.strict_pairs() })
    }

    /// Relation of the poset relabelled by `perm` (point `i` becomes `perm[i]`), as a bitmask.
    fn relabelled_mask(&self, perm: &[usize]) -> u128 {
        let mut mask = 0u128;
        for (i, j) in self.strict_pairs() {
            mask |= 1 << (perm[i] * self.n + perm[j]);
        }
        mask
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoset {
    n: usize,
    #[serde(default)]
    leq: Vec<(usize, usize)>,
}

impl Serialize for FinitePoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoset::deserialize(d)?;
        FinitePoset::new(raw.n, &raw.leq).map_err(serde::de::Error::custom)
    }
}

/// A monotone (continuous) map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    domain: FinitePoset,
    codomain: FinitePoset,
    values: Vec<usize>,
}

impl PosetMap {
    pub fn new(domain: FinitePoset, codomain: FinitePoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain.n {
            return Err(Error::InvalidMap(format!(
                "{} values for a domain of {} points",
                values.len(),
                domain.n
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= codomain.n) {
            return Err(Error::InvalidMap(format!("value {v} outside the codomain")));
        }
        if let Some((i, j)) = domain
            .strict_pairs()
            .into_iter()
            .find(|&(i, j)| !codomain.leq(values[i], values[j]))
        {
            return Err(Error::InvalidMap(format!("not monotone: {i} <= {j} but f({i}) !<= f({j})")));
        }
        Ok(PosetMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn self_map(p: &FinitePoset, values: Vec<usize>) -> Result<Self> {
        Self::new(p.clone(), p.clone(), values)
    }

    pub fn identity(p: &FinitePoset) -> Self {
        PosetMap {
            domain: p.clone(),
            codomain: p.clone(),
            values: (0..p.n).collect(),
        }
    }

    pub fn constant(domain: &FinitePoset, codomain: &FinitePoset, a: usize) -> Result<Self> {
        Self::new(domain.clone(), codomain.clone(), vec![a; domain.n])
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn domain(&self) -> &FinitePoset {
        &self.domain
    }

    pub fn codomain(&self) -> &FinitePoset {
        &self.codomain
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] == i).collect()
    }

    /// `f <= g` pointwise.
    pub fn below(&self, other: &PosetMap) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| self.codomain.leq(a, b))
    }
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Lexicographically least monotone `g` on the up-set `domain` (values in `p`)
/// with `g(x) != x`; entries outside `domain` are `usize::MAX`.
fn fixed_point_free_on(p: &FinitePoset, domain: &[bool], budget: &mut Budget) -> Result<Option<Vec<usize>>> {
    let order: Vec<usize> = (0..p.n).filter(|&i| domain[i]).collect();
    let mut values = vec![usize::MAX; p.n];
    fn go(p: &FinitePoset, order: &[usize], pos: usize, values: &mut [usize], budget: &mut Budget) -> Result<bool> {
        if pos == order.len() {
            return Ok(true);
        }
        let x = order[pos];
        for v in 0..p.n {
            if v == x {
                continue;
            }
            budget.tick()?;
            let ok = order[..pos].iter().all(|&y| {
                (!p.leq(y, x) || p.leq(values[y], v)) && (!p.leq(x, y) || p.leq(v, values[y]))
            });
            if ok {
                values[x] = v;
                if go(p, order, pos + 1, values, budget)? {
                    return Ok(true);
                }
            }
        }
        values[x] = usize::MAX;
        Ok(false)
    }
    Ok(go(p, &order, 0, &mut values, budget)?.then_some(values))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FppResult {
    pub has_fpp: bool,
    /// Lexicographically least fixed-point-free monotone self-map, when one exists.
    pub witness: Option<Vec<usize>>,
    pub nodes: u64,
}

pub fn has_fpp(p: &FinitePoset) -> Result<FppResult> {
    has_fpp_with_budget(p, DEFAULT_BUDGET)
}

pub fn has_fpp_with_budget(p: &FinitePoset, budget: u64) -> Result<FppResult> {
    let mut b = Budget::new(budget);
    let witness = fixed_point_free_on(p, &vec![true; p.n], &mut b)?;
    Ok(FppResult {
        has_fpp: witness.is_none(),
        witness,
        nodes: b.used,
    })
}

/// `F(P,2)`: ordered pairs of distinct points with the componentwise order.
/// Returns the poset and the pair labelling its points.
pub fn config2(p: &FinitePoset) -> Result<(FinitePoset, Vec<(usize, usize)>)> {
    if p.n < 2 {
        return Err(Error::InvalidPoset("F(P,2) needs at least two points".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..p.n)
        .flat_map(|x| (0..p.n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut rel = Vec::new();
    for (a, &(x, y)) in pairs.iter().enumerate() {
        for (b, &(u, v)) in pairs.iter().enumerate() {
            if a != b && p.leq(x, u) && p.leq(y, v) {
                rel.push((a, b));
            }
        }
    }
    Ok((FinitePoset::new(pairs.len(), &rel)?, pairs))
}

/// Local section `x -> (x, g(x))` of `F(P,2) -> P` over an open set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSection {
    /// Points of the up-set, ascending.
    pub domain: Vec<usize>,
    /// `g(x)` for each point of `domain`.
    pub values: Vec<usize>,
}

impl FiniteSection {
    pub fn image(&self, x: usize) -> Option<(usize, usize)> {
        let i = self.domain.iter().position(|&d| d == x)?;
        Some((x, self.values[i]))
    }

    /// Open domain, distinct image pairs and monotone into `F(P,2)`.
    pub fn is_valid(&self, p: &FinitePoset) -> bool {
        let mut mask = vec![false; p.n];
        for &d in &self.domain {
            if d >= p.n {
                return false;
            }
            mask[d] = true;
        }
        if !p.is_up_set(&mask) || self.values.len() != self.domain.len() {
            return false;
        }
        let distinct = self.domain.iter().zip(&self.values).all(|(x, g)| x != g && *g < p.n);
        let monotone = self.domain.iter().zip(&self.values).all(|(&x, &gx)| {
            self.domain
                .iter()
                .zip(&self.values)
                .all(|(&y, &gy)| !p.leq(x, y) || p.leq(gx, gy))
        });
        distinct && monotone
    }
}

/// Global section from a fixed-point-free self-map.
pub fn section_from_map(f: &[usize]) -> FiniteSection {
    FiniteSection {
        domain: (0..f.len()).collect(),
        values: f.to_vec(),
    }
}

/// Fixed-point-free self-map from a global section.
pub fn map_from_section(s: &FiniteSection, p: &FinitePoset) -> Option<PosetMap> {
    if s.domain.len() != p.n || !s.is_valid(p) {
        return None;
    }
    PosetMap::self_map(p, s.values.clone()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SecValue {
    Finite(usize),
    /// No cover exists at all: some point lies in no open set with a local section.
    Infinite,
    /// A cover exists but needs more than the allowed number of pieces.
    Unbounded,
}

impl fmt::Display for SecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SecValue::Finite(m) => write!(f, "{m}"),
            SecValue::Infinite => write!(f, "inf"),
            SecValue::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecResult {
    pub value: SecValue,
    pub cover: Vec<FiniteSection>,
    /// Points lying in no open set that admits a local section.
    pub uncoverable: Vec<usize>,
    pub nodes: u64,
}

/// Smallest number of open sets with local sections of `F(P,2) -> P` covering `P`,
/// searched up to `max_cover` pieces.
pub fn sec_pi21(p: &FinitePoset, max_cover: usize) -> Result<SecResult> {
    sec_pi21_with_budget(p, max_cover, DEFAULT_BUDGET)
}

pub fn sec_pi21_with_budget(p: &FinitePoset, max_cover: usize, budget: u64) -> Result<SecResult> {
    let n = p.n;
    if n == 1 {
        return Ok(SecResult {
            value: SecValue::Infinite,
            cover: Vec::new(),
            uncoverable: vec![0],
            nodes: 0,
        });
    }
    if n > MAX_SUBSET_N {
        return Err(Error::InvalidArgument(format!("sec search supports at most {MAX_SUBSET_N} points")));
    }
    let mut b = Budget::new(budget);
    let to_section = |mask: &[bool], g: &[usize]| {
        let domain: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        let values = domain.iter().map(|&i| g[i]).collect();
        FiniteSection { domain, values }
    };
    if let Some(g) = fixed_point_free_on(p, &vec![true; n], &mut b)? {
        return Ok(SecResult {
            value: SecValue::Finite(1),
            cover: vec![to_section(&vec![true; n], &g)],
            uncoverable: Vec::new(),
            nodes: b.used,
        });
    }
    // A point is coverable iff its minimal open set admits a section.
    let mut uncoverable = Vec::new();
    for x in 0..n {
        let mut mask = vec![false; n];
        for j in p.up_set_of(x) {
            mask[j] = true;
        }
        if fixed_point_free_on(p, &mask, &mut b)?.is_none() {
            uncoverable.push(x);
        }
    }
    if !uncoverable.is_empty() {
        return Ok(SecResult {
            value: SecValue::Infinite,
            cover: Vec::new(),
            uncoverable,
            nodes: b.used,
        });
    }
    let mut good: Vec<(u32, Vec<usize>)> = Vec::new();
    for bits in 1u32..(1 << n) {
        let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if !p.is_up_set(&mask) {
            continue;
        }
        if let Some(g) = fixed_point_free_on(p, &mask, &mut b)? {
            good.push((bits, g));
        }
    }
    let maximal: Vec<&(u32, Vec<usize>)> = good
        .iter()
        .filter(|(a, _)| !good.iter().any(|(c, _)| c != a && c & a == *a))
        .collect();
    let full = (1u32 << n) - 1;
    for m in 2..=max_cover.min(maximal.len()) {
        for combo in crate::sections::combinations(maximal.len(), m) {
            b.tick()?;
            let union = combo.iter().fold(0u32, |acc, &i| acc | maximal[i].0);
            if union == full {
                let cover = combo
                    .iter()
                    .map(|&i| {
                        let (bits, g) = maximal[i];
                        let mask: Vec<bool> = (0..n).map(|j| bits >> j & 1 == 1).collect();
                        to_section(&mask, g)
                    })
                    .collect();
                return Ok(SecResult {
                    value: SecValue::Finite(m),
                    cover,
                    uncoverable: Vec::new(),
                    nodes: b.used,
                });
            }
        }
    }
    Ok(SecResult {
        value: SecValue::Unbounded,
        cover: Vec::new(),
        uncoverable: Vec::new(),
        nodes: b.used,
    })
}

/// All monotone maps `domain -> codomain`, lexicographically.
pub fn monotone_maps(domain: &FinitePoset, codomain: &FinitePoset, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut b = Budget::new(budget);
    let mut out = Vec::new();
    let mut values = vec![0; domain.n];
    fn go(
        d: &FinitePoset,
        c: &FinitePoset,
        pos: usize,
        values: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        b: &mut Budget,
    ) -> Result<()> {
        if pos == d.n {
            out.push(values.to_vec());
            return Ok(());
        }
        for v in 0..c.n {
            b.tick()?;
            let ok = (0..pos).all(|y| (!d.leq(y, pos) || c.leq(values[y], v)) && (!d.leq(pos, y) || c.leq(v, values[y])));
            if ok {
                values[pos] = v;
                go(d, c, pos + 1, values, out, b)?;
            }
        }
        Ok(())
    }
    go(domain, codomain, 0, &mut values, &mut out, &mut b)?;
    Ok(out)
}

/// Maps in the path component of `f` in the pointwise-ordered poset of monotone maps.
pub fn homotopy_class(f: &PosetMap, budget: u64) -> Result<Vec<Vec<usize>>> {
    let all = monotone_maps(&f.domain, &f.codomain, budget)?;
    let c = &f.codomain;
    let comparable = |a: &[usize], b: &[usize]| {
        a.iter().zip(b).all(|(&x, &y)| c.leq(x, y)) || a.iter().zip(b).all(|(&x, &y)| c.leq(y, x))
    };
    let start = all.iter().position(|m| m == &f.values).expect("f is monotone");
    let mut seen = vec![false; all.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut work = 0u64;
    while let Some(i) = queue.pop_front() {
        for j in 0..all.len() {
            work += 1;
            if work > budget {
                return Err(Error::SearchBudgetExceeded(budget));
            }
            if !seen[j] && comparable(&all[i], &all[j]) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(all.into_iter().zip(seen).filter(|(_, s)| *s).map(|(m, _)| m).collect())
}

pub fn homotopic(f: &PosetMap, g: &PosetMap) -> Result<bool> {
    if f.domain != g.domain || f.codomain != g.codomain {
        return Err(Error::InvalidMap("maps have different domains or codomains".into()));
    }
    if f == g {
        return Ok(true);
    }
    Ok(homotopy_class(f, DEFAULT_BUDGET)?.contains(&g.values))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimalRoots {
    pub value: usize,
    /// A map in the class of `f` realizing the minimum.
    pub realized_by: Vec<usize>,
    pub class_size: usize,
}

/// `min |g^{-1}(a)|` over maps `g` homotopic to `f`.
pub fn mr_bruteforce(f: &PosetMap, a: usize) -> Result<MinimalRoots> {
    if a >= f.codomain.n {
        return Err(Error::InvalidArgument(format!("point {a} outside the codomain")));
    }
    let class = homotopy_class(f, DEFAULT_BUDGET)?;
    let (value, realized_by) = class
        .iter()
        .map(|g| (g.iter().filter(|&&v| v == a).count(), g.clone()))
        .min()
        .expect("class contains f");
    Ok(MinimalRoots {
        value,
        realized_by,
        class_size: class.len(),
    })
}

/// Both sides of "FPP iff sec(F(P,2) -> P) = 2" plus the section/map correspondence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub n: usize,
    pub hausdorff: bool,
    pub has_fpp: bool,
    pub sec: SecValue,
    /// The characterization needs a point of `F(P,2)`.
    pub applicable: bool,
    /// `FPP iff sec = 2` on this poset.
    pub characterization_holds: bool,
    /// `sec = 1 iff no FPP`, with witnesses converting both ways.
    pub section_correspondence: bool,
}

pub fn main_theorem_check(p: &FinitePoset, max_cover: usize) -> Result<TheoremCheck> {
    let fpp = has_fpp(p)?;
    let sec = sec_pi21(p, max_cover)?;
    let sec_one = sec.value == SecValue::Finite(1);
    let mut correspondence = sec_one == !fpp.has_fpp;
    if let Some(w) = &fpp.witness {
        correspondence &= section_from_map(w).is_valid(p);
    }
    if sec_one {
        correspondence &= map_from_section(&sec.cover[0], p).is_some_and(|g| g.fixed_points().is_empty());
    }
    Ok(TheoremCheck {
        n: p.n,
        hausdorff: p.is_hausdorff(),
        has_fpp: fpp.has_fpp,
        sec: sec.value,
        applicable: p.n >= 2,
        characterization_holds: fpp.has_fpp == (sec.value == SecValue::Finite(2)),
        section_correspondence: correspondence,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// One representative of each isomorphism class of posets on `n` points.
/// Every poset has a linear extension, so naturally labelled relations suffice.
pub fn posets_up_to_iso(n: usize) -> Result<Vec<FinitePoset>> {
    if n == 0 || n > 7 {
        return Err(Error::InvalidArgument("enumeration supports 1..=7 points".into()));
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let classes: BTreeMap<u128, FinitePoset> = (0u64..1 << slots.len())
        .into_par_iter()
        .filter_map(|bits| {
            let rel: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let p = FinitePoset::new(n, &rel).ok()?;
            // keep only transitively closed inputs so each relation appears once
            if p.strict_pairs().len() != rel.len() {
                return None;
            }
            let key = perms.iter().map(|perm| p.relabelled_mask(perm)).min().expect("n >= 1");
            Some((key, p))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, (k, p)| {
            acc.entry(k).or_insert(p);
            acc
        });
    Ok(classes.into_values().collect())
}

/// Isomorphism-class representatives for every size in `1..=max_n`.
pub fn all_posets_up_to(max_n: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(posets_up_to_iso(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_validation() {
        let p = FinitePoset::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(FinitePoset::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::new(2, &[(0, 5)]).is_err());
        assert!(FinitePoset::new(0, &[]).is_err());
        let q = FinitePoset::from_json_str(r#"{"n":3,"leq":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(p, q);
        let back: FinitePoset = serde_json::from_value(p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn fpp_examples() {
        let two_chain = FinitePoset::chain(2).unwrap();
        assert!(has_fpp(&two_chain).unwrap().has_fpp);
        assert_eq!(monotone_maps(&two_chain, &two_chain, 100).unwrap().len(), 3);
        let r = has_fpp(&FinitePoset::antichain(2).unwrap()).unwrap();
        assert_eq!((r.has_fpp, r.witness), (false, Some(vec![1, 0])));
        let r = has_fpp(&FinitePoset::circle()).unwrap();
        assert_eq!(r.witness, Some(vec![1, 0, 3, 2]));
        assert!(has_fpp(&FinitePoset::antichain(1).unwrap()).unwrap().has_fpp);
    }

    #[test]
    fn budget_is_enforced() {
        let p = FinitePoset::chain(6).unwrap();
        assert!(matches!(has_fpp_with_budget(&p, 10), Err(Error::SearchBudgetExceeded(10))));
    }

    #[test]
    fn config2_examples() {
        let (c, pairs) = config2(&FinitePoset::antichain(2).unwrap()).unwrap();
        assert_eq!(pairs, vec![(0, 1), (1, 0)]);
        assert!(!c.comparable(0, 1));
        let (c, _) = config2(&FinitePoset::chain(2).unwrap()).unwrap();
        assert!(c.is_hausdorff());
        for n in 2..6 {
            assert_eq!(config2(&FinitePoset::chain(n).unwrap()).unwrap().0.n(), n * n - n);
        }
        assert!(config2(&FinitePoset::antichain(1).unwrap()).is_err());
    }

    #[test]
    fn sec_examples() {
        let r = sec_pi21(&FinitePoset::antichain(2).unwrap(), 4).unwrap();
        assert_eq!(r.value, SecValue::Finite(1));
        assert_eq!(r.cover[0].values, vec![1, 0]);
        for n in 2..=6 {
            assert_eq!(sec_pi21(&FinitePoset::antichain(n).unwrap(), 4).unwrap().value, SecValue::Finite(1));
        }
        let r = sec_pi21(&FinitePoset::chain(2).unwrap(), 4).unwrap();
        assert_eq!(r.value, SecValue::Infinite);
        assert_eq!(r.uncoverable, vec![0]);
        assert_eq!(sec_pi21(&FinitePoset::antichain(1).unwrap(), 4).unwrap().value, SecValue::Infinite);
    }

    #[test]
    fn cover_pieces_are_sections() {
        for p in all_posets_up_to(4).unwrap() {
            let r = sec_pi21(&p, 4).unwrap();
            let mut covered = vec![false; p.n()];
            for s in &r.cover {
                assert!(s.is_valid(&p), "{p:?} {s:?}");
                s.domain.iter().for_each(|&d| covered[d] = true);
            }
            if let SecValue::Finite(m) = r.value {
                assert_eq!(r.cover.len(), m);
                assert!(covered.iter().all(|&c| c));
            }
        }
    }

    #[test]
    fn homotopy_examples() {
        let a2 = FinitePoset::antichain(2).unwrap();
        let id = PosetMap::identity(&a2);
        let swap = PosetMap::self_map(&a2, vec![1, 0]).unwrap();
        assert!(homotopic(&id, &id).unwrap());
        assert!(!homotopic(&id, &swap).unwrap());
        let c3 = FinitePoset::chain(3).unwrap();
        let lo = PosetMap::constant(&c3, &c3, 0).unwrap();
        let hi = PosetMap::constant(&c3, &c3, 2).unwrap();
        assert!(homotopic(&lo, &hi).unwrap());
        assert!(PosetMap::self_map(&c3, vec![2, 1, 0]).is_err());
    }

    #[test]
    fn minimal_roots() {
        let c2 = FinitePoset::chain(2).unwrap();
        let r = mr_bruteforce(&PosetMap::identity(&c2), 1).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.class_size, 3);
        let a2 = FinitePoset::antichain(2).unwrap();
        let f = PosetMap::constant(&a2, &a2, 0).unwrap();
        assert_eq!(mr_bruteforce(&f, 1).unwrap().value, 0);
        assert_eq!(mr_bruteforce(&f, 0).unwrap().value, 2);
        let circle = FinitePoset::circle();
        let r = mr_bruteforce(&PosetMap::identity(&circle), 0).unwrap();
        assert!(r.value <= 1);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| posets_up_to_iso(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn theorem_on_discrete_and_chain() {
        for n in 2..=6 {
            let c = main_theorem_check(&FinitePoset::antichain(n).unwrap(), 4).unwrap();
            assert!(c.hausdorff && !c.has_fpp && c.characterization_holds && c.section_correspondence);
        }
        let c = main_theorem_check(&FinitePoset::chain(2).unwrap(), 4).unwrap();
        assert!(c.has_fpp && c.sec == SecValue::Infinite && !c.characterization_holds);
        assert!(c.section_correspondence);
    }
}
