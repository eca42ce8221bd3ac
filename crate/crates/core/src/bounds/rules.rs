use std::sync::{Arc, OnceLock};

use super::terms::{binomial, Attr, Ext, MapTerm, Quantity, SpaceTerm, Subject};
use super::{bound_value, Derivation, FactStore, Source, Statement};

type D = Arc<Derivation>;

/// One encoded inequality or implication.
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
    pub guard: &'static str,
    pub warning: Option<&'static str>,
    apply: fn(&mut Emit),
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} [{}]", self.id, self.statement, self.guard)
    }
}

impl Rule {
    pub(super) fn fire(&self, store: &FactStore) -> Vec<Derivation> {
        let mut e = Emit {
            s: store,
            id: self.id,
            out: Vec::new(),
        };
        (self.apply)(&mut e);
        e.out
    }
}

pub(super) fn rule(id: &str) -> Option<&'static Rule> {
    load_rules().iter().find(|r| r.id == id)
}

struct Emit<'a> {
    s: &'a FactStore,
    id: &'static str,
    out: Vec<Derivation>,
}

fn with(guard: &[D], d: &D) -> Vec<D> {
    let mut v = guard.to_vec();
    v.push(d.clone());
    v
}

impl Emit<'_> {
    fn push(&mut self, statement: Statement, premises: Vec<D>) {
        self.out.push(Derivation {
            statement,
            source: Source::Rule { id: self.id, premises },
        });
    }

    fn lower(&mut self, q: Quantity, v: Ext, premises: Vec<D>) {
        if v > self.s.lo(&q) {
            self.push(Statement::Lower(q, v), premises);
        }
    }

    fn upper(&mut self, q: Quantity, v: Ext, premises: Vec<D>) {
        if v < self.s.hi(&q) {
            self.push(Statement::Upper(q, v), premises);
        }
    }

    fn holds(&mut self, subject: Subject, attr: Attr, premises: Vec<D>) {
        if self.s.holds(&subject, attr).is_none() {
            self.push(Statement::Holds(subject, attr), premises);
        }
    }

    /// `a <= b`: lower bounds flow up to `b`, upper bounds flow down to `a`.
    fn le(&mut self, a: &Quantity, b: &Quantity, guard: &[D]) {
        if let Some(d) = self.s.lower.get(a) {
            self.lower(b.clone(), bound_value(d), with(guard, d));
        }
        if let Some(d) = self.s.upper.get(b) {
            self.upper(a.clone(), bound_value(d), with(guard, d));
        }
    }

    fn eq(&mut self, a: &Quantity, b: &Quantity, guard: &[D]) {
        self.le(a, b, guard);
        self.le(b, a, guard);
    }

    fn at_least(&self, q: &Quantity, v: u64) -> Option<D> {
        self.s.lower.get(q).filter(|d| bound_value(d) >= Ext::Fin(v)).cloned()
    }

    fn at_most(&self, q: &Quantity, v: u64) -> Option<D> {
        self.s.upper.get(q).filter(|d| bound_value(d) <= Ext::Fin(v)).cloned()
    }

    fn space(&self, x: &SpaceTerm, a: Attr) -> Option<D> {
        self.s.space_holds(x, a).cloned()
    }

    fn map(&self, p: &MapTerm, a: Attr) -> Option<D> {
        self.s.map_holds(p, a).cloned()
    }

    fn registered(&self, p: &MapTerm) -> bool {
        self.s.map_terms.contains(p)
    }
}

fn sec(p: &MapTerm) -> Quantity {
    Quantity::Sec(p.clone())
}
fn secat(p: &MapTerm) -> Quantity {
    Quantity::Secat(p.clone())
}
fn tcm(p: &MapTerm) -> Quantity {
    Quantity::TcMap(p.clone())
}
fn cat(x: &SpaceTerm) -> Quantity {
    Quantity::Cat(x.clone())
}
fn tc(x: &SpaceTerm) -> Quantity {
    Quantity::Tc(x.clone())
}
fn sp(x: &SpaceTerm) -> Subject {
    Subject::Space(x.clone())
}
fn mp(p: &MapTerm) -> Subject {
    Subject::Map(p.clone())
}

fn given(text: String, source: Source) -> D {
    Arc::new(Derivation {
        statement: Statement::Given(text),
        source,
    })
}

struct Pi {
    map: MapTerm,
    k: u32,
    r: u32,
    base: SpaceTerm,
}

fn pis(s: &FactStore) -> Vec<Pi> {
    s.map_terms
        .iter()
        .filter_map(|m| match m {
            MapTerm::Pi { k, r, base } => Some(Pi {
                map: m.clone(),
                k: *k,
                r: *r,
                base: base.clone(),
            }),
            _ => None,
        })
        .collect()
}

fn with_ends(s: &FactStore) -> Vec<(MapTerm, SpaceTerm, SpaceTerm)> {
    s.map_terms
        .iter()
        .filter_map(|p| s.ends(p).map(|(e, b)| (p.clone(), e, b)))
        .collect()
}

/// Base has fewer than `k` points, so `F(X,k)` is empty.
fn too_small(s: &FactStore, x: &SpaceTerm, k: u32) -> bool {
    s.cardinality(x).is_some_and(|n| n < k as u64)
}

fn r1(e: &mut Emit) {
    for p in e.s.map_terms.clone() {
        e.le(&secat(&p), &sec(&p), &[]);
        if let Some(d) = e.at_most(&sec(&p), 1) {
            e.holds(mp(&p), Attr::HasSection, vec![d]);
        }
        if let Some(d) = e.map(&p, Attr::HasSection) {
            e.upper(sec(&p), Ext::ONE, vec![d]);
        }
    }
}

fn r2(e: &mut Emit) {
    for p in e.s.map_terms.clone() {
        if let Some(f) = e.map(&p, Attr::Fibration) {
            e.eq(&sec(&p), &secat(&p), &[f]);
        }
    }
}

fn r3(e: &mut Emit) {
    for (p, k, note) in e.s.ctx.cup_lengths.clone() {
        let leaf = given(
            format!("product of {k} pulled-back classes is nonzero in the total space of {p}"),
            Source::Certificate(note),
        );
        e.lower(sec(&p), Ext::Fin(k as u64 + 1), vec![leaf]);
    }
}

fn r4(e: &mut Emit) {
    for (p, _, b) in with_ends(e.s) {
        e.le(&secat(&p), &cat(&b), &[]);
        if let Some(f) = e.map(&p, Attr::Fibration) {
            e.le(&sec(&p), &cat(&b), &[f]);
        }
    }
}

fn r5(e: &mut Emit) {
    for (p, _, b) in with_ends(e.s) {
        if let Some(n) = e.map(&p, Attr::Nullhomotopic) {
            e.eq(&secat(&p), &cat(&b), &[n]);
        }
    }
}

fn r6(e: &mut Emit) {
    for pi in pis(e.s) {
        if pi.r != 1 || pi.k < 2 || too_small(e.s, &pi.base, pi.k) {
            continue;
        }
        if let Some(h) = e.space(&pi.base, Attr::Hausdorff) {
            e.upper(sec(&pi.map), Ext::Fin(pi.k as u64), vec![h]);
        }
    }
}

fn r7(e: &mut Emit) {
    for pi in pis(e.s) {
        if let Some(n) = e.s.cardinality(&pi.base) {
            if n < pi.k as u64 {
                if n >= pi.r as u64 {
                    let leaf = given(
                        format!("{} has {n} points, so F({},{}) is empty", pi.base, pi.base, pi.k),
                        Source::Axiom("cardinality".into()),
                    );
                    e.lower(sec(&pi.map), Ext::Inf, vec![leaf]);
                }
                continue;
            }
        }
        if let Some(h) = e.space(&pi.base, Attr::Hausdorff) {
            e.upper(sec(&pi.map), binomial(pi.k as u64, pi.r as u64), vec![h]);
        }
    }
}

fn r8(e: &mut Emit) {
    for pi in pis(e.s) {
        if pi.k <= pi.r {
            continue;
        }
        if let Some(m) = e.space(&pi.base, Attr::ManifoldNbDim2) {
            e.holds(mp(&pi.map), Attr::Fibration, vec![m.clone()]);
            e.le(&sec(&pi.map), &cat(&SpaceTerm::config(&pi.base, pi.r)), &[m]);
        }
    }
}

fn r9(e: &mut Emit) {
    for pi in pis(e.s) {
        if (pi.k, pi.r) != (2, 1) || too_small(e.s, &pi.base, 2) {
            continue;
        }
        let Some(h) = e.space(&pi.base, Attr::Hausdorff) else {
            continue;
        };
        let q = sec(&pi.map);
        if let Some(f) = e.space(&pi.base, Attr::Fpp) {
            e.lower(q.clone(), Ext::Fin(2), vec![h.clone(), f]);
        }
        if let Some(f) = e.space(&pi.base, Attr::NotFpp) {
            e.upper(q.clone(), Ext::ONE, vec![h.clone(), f]);
        }
        if let Some(d) = e.at_least(&q, 2) {
            e.holds(sp(&pi.base), Attr::Fpp, vec![h.clone(), d]);
        }
        if let Some(d) = e.at_most(&q, 1) {
            e.holds(sp(&pi.base), Attr::NotFpp, vec![h, d]);
        }
    }
}

fn r10(e: &mut Emit) {
    let all = pis(e.s);
    for a in all.iter().filter(|p| p.r == 1) {
        for b in all.iter().filter(|p| p.r == 1 && p.base == a.base && 2 <= p.k && p.k < a.k) {
            if let Some(d) = e.at_most(&sec(&a.map), 1) {
                e.upper(sec(&b.map), Ext::ONE, vec![d]);
            }
            if let Some(d) = e.at_least(&sec(&b.map), 2) {
                e.lower(sec(&a.map), Ext::Fin(2), vec![d]);
            }
        }
        let Some(sph) = e.space(&a.base, Attr::Sphere) else {
            continue;
        };
        let two = MapTerm::pi(a.k, 2, &a.base);
        if a.k < 3 || !e.registered(&two) {
            continue;
        }
        for (x, y) in [(&a.map, &two), (&two, &a.map)] {
            if let Some(d) = e.at_most(&sec(x), 1) {
                e.upper(sec(y), Ext::ONE, vec![sph.clone(), d]);
            }
            if let Some(d) = e.at_least(&sec(x), 2) {
                e.lower(sec(y), Ext::Fin(2), vec![sph.clone(), d]);
            }
        }
    }
}

fn r11(e: &mut Emit) {
    for (p, _, b) in with_ends(e.s) {
        e.le(&cat(&b), &tcm(&p), &[]);
        e.le(&sec(&p), &tcm(&p), &[]);
    }
}

fn r12(e: &mut Emit) {
    for (p, en, b) in with_ends(e.s) {
        if let Some(s) = e.map(&p, Attr::HasSection) {
            e.le(&tc(&b), &tcm(&p), &[s.clone()]);
            e.le(&tcm(&p), &tc(&en), &[s]);
        }
    }
    // pi(k,r) = pi(l,r) . pi(k,l)
    for pi in pis(e.s) {
        for l in pi.r + 1..pi.k {
            let first = MapTerm::pi(pi.k, l, &pi.base);
            let second = MapTerm::pi(l, pi.r, &pi.base);
            if let Some(s) = e.map(&first, Attr::HasSection) {
                e.le(&tcm(&second), &tcm(&pi.map), &[s]);
            }
            if let Some(s) = e.map(&second, Attr::HasSection) {
                e.le(&tcm(&pi.map), &tcm(&first), &[s]);
            }
        }
    }
}

fn r13(e: &mut Emit) {
    for (p, _, b) in with_ends(e.s) {
        if let Some(f) = e.map(&p, Attr::Fibration) {
            e.le(&tcm(&p), &tc(&b), &[f]);
        }
    }
    for pi in pis(e.s) {
        for l in pi.r + 1..pi.k {
            let first = MapTerm::pi(pi.k, l, &pi.base);
            let second = MapTerm::pi(l, pi.r, &pi.base);
            if let Some(f) = e.map(&first, Attr::Fibration) {
                e.le(&tcm(&pi.map), &tcm(&second), &[f]);
            }
        }
    }
}

fn r14(e: &mut Emit) {
    for (p, _, b) in with_ends(e.s) {
        let (Some(f), Some(s)) = (e.map(&p, Attr::Fibration), e.map(&p, Attr::HasSection)) else {
            continue;
        };
        let g = [f, s];
        e.eq(&tcm(&p), &tc(&b), &g);
        if let Some(c) = e.space(&b, Attr::Contractible) {
            e.upper(tcm(&p), Ext::ONE, with(&g, &c));
        }
        if let Some(c) = e.space(&b, Attr::NotContractible) {
            e.lower(tcm(&p), Ext::Fin(2), with(&g, &c));
        }
        if let Some(d) = e.at_most(&tcm(&p), 1) {
            e.holds(sp(&b), Attr::Contractible, with(&g, &d));
        }
        if let Some(d) = e.at_least(&tcm(&p), 2) {
            e.holds(sp(&b), Attr::NotContractible, with(&g, &d));
        }
    }
}

fn anr(e: &mut Emit, x: &SpaceTerm) -> Option<D> {
    if let Some(d) = e.space(x, Attr::Anr) {
        return Some(d);
    }
    if let SpaceTerm::Config(base, _) = x {
        // open subset of a power of an ANR manifold
        let a = e.space(base, Attr::Anr)?;
        let m = e.space(base, Attr::ManifoldNbDim2)?;
        e.holds(sp(x), Attr::Anr, vec![a.clone(), m.clone()]);
        return None;
    }
    None
}

fn r15(e: &mut Emit) {
    for (p, en, b) in with_ends(e.s) {
        let Some(f) = e.map(&p, Attr::Fibration) else {
            continue;
        };
        let (Some(ae), Some(ab)) = (anr(e, &en), anr(e, &b)) else {
            continue;
        };
        let g = [f, ae, ab];
        e.le(&cat(&b), &tcm(&p), &g);
        e.le(&tcm(&p), &tc(&b), &g);
        e.le(&tcm(&p), &cat(&SpaceTerm::product(&en, &b)), &g);
        if let (Some(ce), Some(sc)) = (e.s.upper.get(&cat(&en)).cloned(), e.s.upper.get(&sec(&p)).cloned()) {
            let (c, s) = (bound_value(&ce), bound_value(&sc));
            let bound = (c + c * s).pred();
            let mut premises = g.to_vec();
            premises.extend([ce, sc]);
            e.upper(tcm(&p), bound, premises);
        }
    }
}

fn r16(e: &mut Emit) {
    for x in e.s.spaces.clone() {
        if let Some(pc) = e.space(&x, Attr::PathConnectedCw) {
            e.le(&cat(&x), &tc(&x), &[pc.clone()]);
            if let Some(d) = e.s.upper.get(&cat(&x)).cloned() {
                let v = bound_value(&d);
                e.upper(tc(&x), (v + v).pred(), vec![pc.clone(), d]);
            }
            if let Some(d) = e.s.lower.get(&tc(&x)).cloned() {
                if let Ext::Fin(t) = bound_value(&d) {
                    e.lower(cat(&x), Ext::Fin((t + 1).div_ceil(2)), vec![pc, d]);
                }
            }
        }
        if let Some(l) = e.space(&x, Attr::LieGroup) {
            e.eq(&tc(&x), &cat(&x), &[l]);
        }
    }
    for (a, b) in e.s.ctx.equivalences.clone() {
        let leaf = given(format!("{a} is homotopy equivalent to {b}"), Source::Axiom(String::new()));
        let g = [leaf];
        e.eq(&cat(&a), &cat(&b), &g);
        e.eq(&tc(&a), &tc(&b), &g);
        for attr in [Attr::Contractible, Attr::NotContractible] {
            for (x, y) in [(&a, &b), (&b, &a)] {
                if let Some(d) = e.space(x, attr) {
                    e.holds(sp(y), attr, with(&g, &d));
                }
            }
        }
    }
}

fn r17(e: &mut Emit) {
    for x in e.s.spaces.clone() {
        if let Some(c) = e.space(&x, Attr::Contractible) {
            e.upper(cat(&x), Ext::ONE, vec![c.clone()]);
            e.upper(tc(&x), Ext::ONE, vec![c]);
        }
        if let Some(c) = e.space(&x, Attr::NotContractible) {
            e.lower(cat(&x), Ext::Fin(2), vec![c.clone()]);
            e.lower(tc(&x), Ext::Fin(2), vec![c]);
        }
        for q in [cat(&x), tc(&x)] {
            if let Some(d) = e.at_most(&q, 1) {
                e.holds(sp(&x), Attr::Contractible, vec![d]);
            }
            if let Some(d) = e.at_least(&q, 2) {
                e.holds(sp(&x), Attr::NotContractible, vec![d]);
            }
        }
    }
}

fn r18(e: &mut Emit) {
    for pi in pis(e.s) {
        let Some(h) = e.space(&pi.base, Attr::Hausdorff) else {
            continue;
        };
        let x = &pi.base;
        if pi.r == 1 && pi.k >= 2 {
            if let Some(f) = e.space(x, Attr::Fpp) {
                let g = [h.clone(), f];
                e.le(&cat(x), &tcm(&pi.map), &g);
                e.lower(tcm(&pi.map), Ext::Fin(2), g.to_vec());
            }
        }
        if (pi.k, pi.r) == (2, 1) {
            let t = tcm(&pi.map);
            let witnesses = [
                (e.s.upper.get(&t), e.s.lower.get(&tc(x))),
                (e.s.upper.get(&tc(&SpaceTerm::config(x, 2))), e.s.lower.get(&t)),
            ];
            for (up, lo) in witnesses {
                if let (Some(up), Some(lo)) = (up, lo) {
                    if bound_value(up) < bound_value(lo) {
                        let premises = vec![h.clone(), up.clone(), lo.clone()];
                        e.lower(sec(&pi.map), Ext::Fin(2), premises.clone());
                        e.holds(sp(x), Attr::Fpp, premises);
                    }
                }
            }
            if let (Some(nc), Some(nf)) = (e.space(x, Attr::NotContractible), e.space(x, Attr::NotFpp)) {
                e.holds(sp(&SpaceTerm::config(x, 2)), Attr::NotContractible, vec![h.clone(), nc, nf]);
            }
        }
    }
}

fn r19(e: &mut Emit) {
    for pi in pis(e.s) {
        if pi.k <= 2 || !(pi.r == 1 || pi.r == 2) {
            continue;
        }
        if let Some(es) = e.space(&pi.base, Attr::EvenSphere) {
            let two = Ext::Fin(2);
            e.lower(sec(&pi.map), two, vec![es.clone()]);
            e.upper(sec(&pi.map), two, vec![es.clone()]);
            let b = cat(&SpaceTerm::config(&pi.base, pi.r));
            e.lower(b.clone(), two, vec![es.clone()]);
            e.upper(b, two, vec![es]);
        }
    }
}

fn r20(e: &mut Emit) {
    for pi in pis(e.s) {
        let Some(o) = e.space(&pi.base, Attr::OddDimDiffManifold) else {
            continue;
        };
        if pi.r == 1 && pi.k >= 2 {
            e.upper(sec(&pi.map), Ext::ONE, vec![o]);
        } else if pi.r == 2 && pi.k > 2 {
            if let Some(s) = e.space(&pi.base, Attr::Sphere) {
                e.upper(sec(&pi.map), Ext::ONE, vec![o, s]);
            }
        }
    }
}

fn r21(e: &mut Emit) {
    for (l, x) in e.s.ctx.retracts.clone() {
        let leaf = given(format!("{l} is a deformation retract of {x}"), Source::Axiom(String::new()));
        for pi in pis(e.s) {
            if pi.r != 1 || pi.base != x {
                continue;
            }
            let on_l = MapTerm::pi(pi.k, 1, &l);
            if e.registered(&on_l) {
                e.le(&secat(&pi.map), &secat(&on_l), &[leaf.clone()]);
            }
        }
    }
}

fn r22(e: &mut Emit) {
    for pi in pis(e.s) {
        if pi.r != 1 || pi.k < 2 {
            continue;
        }
        let x = &pi.base;
        if let (Some(s), Some(v)) = (e.space(x, Attr::SmoothManifold), e.space(x, Attr::NonvanishingVf)) {
            e.upper(sec(&pi.map), Ext::ONE, vec![s, v]);
        }
        if let Some(b) = e.space(x, Attr::CompactB1Nonzero) {
            e.upper(sec(&pi.map), Ext::ONE, vec![b]);
        }
        if let Some(l) = e.space(x, Attr::LieGroup) {
            // F(G,k) is G x F(G - 1, k - 1)
            e.holds(mp(&pi.map), Attr::Fibration, vec![l]);
        }
    }
}

fn r23(e: &mut Emit) {
    for pi in pis(e.s) {
        let x = &pi.base;
        if let Some(m) = e.space(x, Attr::ManifoldNbDim2) {
            if pi.k > pi.r {
                if let Some(d) = e.at_most(&sec(&pi.map), 1) {
                    e.eq(&tcm(&pi.map), &tc(&SpaceTerm::config(x, pi.r)), &[m.clone(), d]);
                }
            }
            if let (Some(f), true) = (e.space(x, Attr::Fpp), pi.r == 1 && pi.k >= 2) {
                let g = [m.clone(), f];
                e.le(&cat(x), &tcm(&pi.map), &g);
                e.lower(tcm(&pi.map), Ext::Fin(2), g.to_vec());
                e.le(&tcm(&pi.map), &tc(x), &g);
                e.holds(sp(x), Attr::NotContractible, g.to_vec());
                if pi.k == 2 {
                    let f2 = SpaceTerm::config(x, 2);
                    e.le(&tcm(&pi.map), &cat(&SpaceTerm::product(&f2, x)), &g);
                    if let Some(d) = e.s.upper.get(&cat(&f2)).cloned() {
                        let c = bound_value(&d);
                        e.upper(tcm(&pi.map), (c + c + c).pred(), with(&g, &d));
                    }
                }
            }
        }
        if (pi.k, pi.r) != (2, 1) {
            continue;
        }
        let (Some(pc), Some(nc), Some(nh)) = (
            e.space(x, Attr::PathConnectedCw),
            e.space(x, Attr::NotContractible),
            e.map(&pi.map, Attr::Nullhomotopic),
        ) else {
            continue;
        };
        let g = vec![pc, nc, nh];
        let two = Ext::Fin(2);
        e.lower(cat(x), two, g.clone());
        e.upper(cat(x), two, g.clone());
        e.lower(tc(x), two, g.clone());
        e.upper(tc(x), Ext::Fin(3), g.clone());
        for q in [sec(&pi.map), secat(&pi.map)] {
            e.lower(q.clone(), two, g.clone());
            e.upper(q, two, g.clone());
        }
    }
}

static RULES: OnceLock<Vec<Rule>> = OnceLock::new();

/// The fixed rule set, in default application order.
pub fn load_rules() -> &'static [Rule] {
    RULES.get_or_init(|| {
        vec![
            Rule {
                id: "R1",
                statement: "secat(p) <= sec(p); sec(p) = 1 iff p has a section",
                guard: "none",
                warning: None,
                apply: r1,
            },
            Rule {
                id: "R2",
                statement: "sec(p) = secat(p)",
                guard: "fibration(p)",
                warning: None,
                apply: r2,
            },
            Rule {
                id: "R3",
                statement: "sec(p) >= k+1 from k pulled-back classes with nonzero product",
                guard: "verified cup certificate",
                warning: None,
                apply: r3,
            },
            Rule {
                id: "R4",
                statement: "secat(p) <= cat(B); sec(p) <= cat(B) for fibrations",
                guard: "fibration(p) for the sec part",
                warning: None,
                apply: r4,
            },
            Rule {
                id: "R5",
                statement: "secat(p) = cat(B)",
                guard: "nullhomotopic(p)",
                warning: None,
                apply: r5,
            },
            Rule {
                id: "R6",
                statement: "sec(pi(k,1,X)) <= k",
                guard: "hausdorff(X)",
                warning: None,
                apply: r6,
            },
            Rule {
                id: "R7",
                statement: "sec(pi(k,r,X)) <= C(k,r)",
                guard: "hausdorff(X)",
                warning: None,
                apply: r7,
            },
            Rule {
                id: "R8",
                statement: "pi(k,r,M) is a fibration and sec(pi(k,r,M)) <= cat(F(M,r))",
                guard: "manifold_nb_dim2(M), k > r",
                warning: None,
                apply: r8,
            },
            Rule {
                id: "R9",
                statement: "X has the FPP iff sec(pi(2,1,X)) = 2",
                guard: "hausdorff(X)",
                warning: None,
                apply: r9,
            },
            Rule {
                id: "R10",
                statement: "sec(pi(k,1,X)) = 1 implies sec(pi(j,1,X)) = 1 for j <= k; on spheres sec(pi(k,1)) = 1 iff sec(pi(k,2)) = 1",
                guard: "sphere(X) for the second part",
                warning: None,
                apply: r10,
            },
            Rule {
                id: "R11",
                statement: "TC(p) >= max{cat(B), sec(p)}",
                guard: "none",
                warning: None,
                apply: r11,
            },
            Rule {
                id: "R12",
                statement: "TC(B) <= TC(p) <= TC(E); composites through a map with a section",
                guard: "has_section",
                warning: None,
                apply: r12,
            },
            Rule {
                id: "R13",
                statement: "TC(p'p) <= TC(p'); TC(p) <= TC(B)",
                guard: "fibration(p)",
                warning: None,
                apply: r13,
            },
            Rule {
                id: "R14",
                statement: "TC(p) = TC(B); TC(p) = 1 iff B contractible",
                guard: "fibration(p), has_section(p)",
                warning: None,
                apply: r14,
            },
            Rule {
                id: "R15",
                statement: "cat(B) <= TC(p) <= min{cat(E) + cat(E) sec(p) - 1, TC(B), cat(E x B)}",
                guard: "fibration(p), ANR(E), ANR(B)",
                warning: Some("imported from a different definition of TC(p)"),
                apply: r15,
            },
            Rule {
                id: "R16",
                statement: "cat(X) <= TC(X) <= 2 cat(X) - 1; homotopy invariance; TC(G) = cat(G)",
                guard: "path_connected_CW(X); lie_group(G)",
                warning: None,
                apply: r16,
            },
            Rule {
                id: "R17",
                statement: "TC(X) = 1 iff cat(X) = 1 iff X contractible",
                guard: "none",
                warning: None,
                apply: r17,
            },
            Rule {
                id: "R18",
                statement: "FPP gives TC(pi(k,1,X)) >= max{cat(X), 2}; TC(pi(2,1,X)) outside [TC(X), TC(F(X,2))] gives FPP; F(X,2) not contractible without FPP",
                guard: "hausdorff(X)",
                warning: None,
                apply: r18,
            },
            Rule {
                id: "R19",
                statement: "sec(pi(k,r,S^d)) = cat(F(S^d,r)) = 2 for k > 2, r in {1,2}",
                guard: "even_sphere(X)",
                warning: None,
                apply: r19,
            },
            Rule {
                id: "R20",
                statement: "sec(pi(k,1,M)) = 1; odd spheres also sec(pi(k,2)) = 1",
                guard: "odd_dim_diff_manifold(M)",
                warning: None,
                apply: r20,
            },
            Rule {
                id: "R21",
                statement: "secat(pi(k,1,L)) >= secat(pi(k,1,X))",
                guard: "L deformation retract of X",
                warning: None,
                apply: r21,
            },
            Rule {
                id: "R22",
                statement: "sec(pi(k,1,M)) = 1",
                guard: "smooth + nonvanishing_vf, or compact_b1_nonzero; lie_group gives fibration",
                warning: None,
                apply: r22,
            },
            Rule {
                id: "R23",
                statement: "TC(pi(k,r,M)) = TC(F(M,r)) when sec = 1; FPP gives max{2,cat(M)} <= TC(pi(k,1,M)) <= TC(M); nullhomotopic pi(2,1,X) gives cat(X) = 2",
                guard: "manifold_nb_dim2(M); path_connected_CW + not contractible + nullhomotopic",
                warning: None,
                apply: r23,
            },
        ]
    })
}
