//! Naive fixpoint reference: every rule is applied to the whole triple set
//! each round until a round adds nothing. Shares no evaluation code with the
//! engine under test, only the term types.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use kg_core::vocab::{owl, rdf, rdfs};
use kg_core::{Graph, Term, Triple};

type T = (u32, u32, u32);

struct Interner {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
}

impl Interner {
    fn id(&mut self, t: &Term) -> u32 {
        if let Some(&i) = self.ids.get(t) {
            return i;
        }
        let i = self.terms.len() as u32;
        self.terms.push(t.clone());
        self.ids.insert(t.clone(), i);
        i
    }
}

struct K {
    ty: u32,
    sco: u32,
    spo: u32,
    dom: u32,
    rng: u32,
    first: u32,
    rest: u32,
    nil: u32,
    same: u32,
    diff: u32,
    all_diff: u32,
    members: u32,
    distinct: u32,
    fp: u32,
    tp: u32,
    inv: u32,
    eqc: u32,
    dw: u32,
    comp: u32,
    int: u32,
    uni: u32,
    onp: u32,
    svf: u32,
    avf: u32,
    nothing: u32,
}

/// Result of the reference computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleClosure {
    pub triples: BTreeSet<Triple>,
    /// `(rule, sorted conflicting triples)`.
    pub violations: BTreeSet<(String, Vec<Triple>)>,
}

/// Closure of `graph` under the RDFS rules, and the OWL rules too when
/// `owl` is set.
pub fn naive_closure(graph: &Graph, owl_rules: bool) -> OracleClosure {
    let mut int = Interner {
        terms: Vec::new(),
        ids: HashMap::new(),
    };
    let mut set: HashSet<T> = HashSet::new();
    for t in graph.iter() {
        let k = (int.id(&t.subject), int.id(&t.predicate), int.id(&t.object));
        set.insert(k);
    }
    let mut iri = |s: &str| int.id(&Term::iri(s));
    let k = K {
        ty: iri(rdf::TYPE),
        sco: iri(rdfs::SUB_CLASS_OF),
        spo: iri(rdfs::SUB_PROPERTY_OF),
        dom: iri(rdfs::DOMAIN),
        rng: iri(rdfs::RANGE),
        first: iri(rdf::FIRST),
        rest: iri(rdf::REST),
        nil: iri(rdf::NIL),
        same: iri(owl::SAME_AS),
        diff: iri(owl::DIFFERENT_FROM),
        all_diff: iri(owl::ALL_DIFFERENT),
        members: iri(owl::MEMBERS),
        distinct: iri(owl::DISTINCT_MEMBERS),
        fp: iri(owl::FUNCTIONAL_PROPERTY),
        tp: iri(owl::TRANSITIVE_PROPERTY),
        inv: iri(owl::INVERSE_OF),
        eqc: iri(owl::EQUIVALENT_CLASS),
        dw: iri(owl::DISJOINT_WITH),
        comp: iri(owl::COMPLEMENT_OF),
        int: iri(owl::INTERSECTION_OF),
        uni: iri(owl::UNION_OF),
        onp: iri(owl::ON_PROPERTY),
        svf: iri(owl::SOME_VALUES_FROM),
        avf: iri(owl::ALL_VALUES_FROM),
        nothing: iri(owl::NOTHING),
    };
    let terms = int.terms;
    let valid = |t: &T| !terms[t.0 as usize].is_literal() && terms[t.1 as usize].is_iri();

    loop {
        let mut new: Vec<T> = Vec::new();
        round(&k, &set, owl_rules, &mut new);
        let before = set.len();
        for t in new {
            if valid(&t) {
                set.insert(t);
            }
        }
        if set.len() == before {
            break;
        }
    }

    let decode = |t: &T| {
        Triple::new(
            terms[t.0 as usize].clone(),
            terms[t.1 as usize].clone(),
            terms[t.2 as usize].clone(),
        )
    };
    let violations = if owl_rules {
        violations(&k, &set)
            .into_iter()
            .map(|(rule, ts)| {
                let mut ts: Vec<Triple> = ts.iter().map(decode).collect();
                ts.sort();
                ts.dedup();
                (rule.to_string(), ts)
            })
            .collect()
    } else {
        BTreeSet::new()
    };
    OracleClosure {
        triples: set.iter().map(decode).collect(),
        violations,
    }
}

fn pairs(set: &HashSet<T>, p: u32) -> Vec<(u32, u32)> {
    set.iter().filter(|t| t.1 == p).map(|t| (t.0, t.2)).collect()
}

fn members(k: &K, set: &HashSet<T>, head: u32) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let mut seen = HashSet::from([head]);
    let mut todo = vec![head];
    while let Some(n) = todo.pop() {
        if n == k.nil {
            continue;
        }
        for t in set.iter().filter(|t| t.0 == n) {
            if t.1 == k.first {
                out.insert(t.2);
            }
            if t.1 == k.rest && seen.insert(t.2) {
                todo.push(t.2);
            }
        }
    }
    out
}

/// Some rest-path from `head` to nil visits only nodes with a first element
/// in `typed`.
fn all_covered(k: &K, set: &HashSet<T>, head: u32, typed: &HashSet<u32>) -> bool {
    let good = |n: u32| n != k.nil && set.iter().any(|t| t.0 == n && t.1 == k.first && typed.contains(&t.2));
    if !good(head) {
        return false;
    }
    let mut seen = HashSet::from([head]);
    let mut todo = VecDeque::from([head]);
    while let Some(n) = todo.pop_front() {
        for t in set.iter().filter(|t| t.0 == n && t.1 == k.rest) {
            if t.2 == k.nil {
                return true;
            }
            if good(t.2) && seen.insert(t.2) {
                todo.push_back(t.2);
            }
        }
    }
    false
}

fn round(k: &K, set: &HashSet<T>, owl_rules: bool, out: &mut Vec<T>) {
    let sco = pairs(set, k.sco);
    let spo = pairs(set, k.spo);
    let types = pairs(set, k.ty);
    let all: Vec<T> = set.iter().copied().collect();

    for &(a, b) in &sco {
        for &(b2, c) in &sco {
            if b == b2 {
                out.push((a, k.sco, c));
            }
        }
        for &(x, c) in &types {
            if c == a {
                out.push((x, k.ty, b));
            }
        }
    }
    for &(a, b) in &spo {
        for &(b2, c) in &spo {
            if b == b2 {
                out.push((a, k.spo, c));
            }
        }
        for t in &all {
            if t.1 == a {
                out.push((t.0, b, t.2));
            }
        }
    }
    for (p, c) in pairs(set, k.dom) {
        for t in all.iter().filter(|t| t.1 == p) {
            out.push((t.0, k.ty, c));
        }
    }
    for (p, c) in pairs(set, k.rng) {
        for t in all.iter().filter(|t| t.1 == p) {
            out.push((t.2, k.ty, c));
        }
    }
    if !owl_rules {
        return;
    }

    let same = pairs(set, k.same);
    for &(x, y) in &same {
        out.push((y, k.same, x));
        for &(y2, z) in &same {
            if y == y2 {
                out.push((x, k.same, z));
            }
        }
        for t in &all {
            if t.0 == x {
                out.push((y, t.1, t.2));
            }
            if t.1 == x {
                out.push((t.0, y, t.2));
            }
            if t.2 == x {
                out.push((t.0, t.1, y));
            }
        }
    }
    for &(p, c) in &types {
        if c == k.fp {
            let edges: Vec<_> = all.iter().filter(|t| t.1 == p).collect();
            for a in &edges {
                for b in &edges {
                    if a.0 == b.0 && a.2 != b.2 {
                        out.push((a.2, k.same, b.2));
                    }
                }
            }
        }
        if c == k.tp {
            let edges: Vec<_> = all.iter().filter(|t| t.1 == p).collect();
            for a in &edges {
                for b in &edges {
                    if a.2 == b.0 {
                        out.push((a.0, p, b.2));
                    }
                }
            }
        }
    }
    for (p, q) in pairs(set, k.inv) {
        for t in &all {
            if t.1 == p {
                out.push((t.2, q, t.0));
            }
            if t.1 == q {
                out.push((t.2, p, t.0));
            }
        }
    }
    for (c, d) in pairs(set, k.eqc) {
        out.push((c, k.sco, d));
        out.push((d, k.sco, c));
    }
    let sco_set: HashSet<(u32, u32)> = sco.iter().copied().collect();
    for &(c, d) in &sco {
        if sco_set.contains(&(d, c)) {
            out.push((c, k.eqc, d));
        }
    }

    let mut typed_by: HashMap<u32, HashSet<u32>> = HashMap::new();
    for &(x, c) in &types {
        typed_by.entry(x).or_default().insert(c);
    }
    for (c, l) in pairs(set, k.int) {
        for m in members(k, set, l) {
            out.push((c, k.sco, m));
            for &(x, cx) in &types {
                if cx == c {
                    out.push((x, k.ty, m));
                }
            }
        }
        for (x, cs) in &typed_by {
            if all_covered(k, set, l, cs) {
                out.push((*x, k.ty, c));
            }
        }
    }
    for (c, l) in pairs(set, k.uni) {
        for m in members(k, set, l) {
            out.push((m, k.sco, c));
            for &(x, cx) in &types {
                if cx == m {
                    out.push((x, k.ty, c));
                }
            }
        }
    }
    for (r, p) in pairs(set, k.onp) {
        for (r2, d) in pairs(set, k.svf) {
            if r2 != r {
                continue;
            }
            for t in all.iter().filter(|t| t.1 == p) {
                if set.contains(&(t.2, k.ty, d)) {
                    out.push((t.0, k.ty, r));
                }
            }
        }
        for (r2, d) in pairs(set, k.avf) {
            if r2 != r {
                continue;
            }
            for t in all.iter().filter(|t| t.1 == p) {
                if set.contains(&(t.0, k.ty, r)) {
                    out.push((t.2, k.ty, d));
                }
            }
        }
    }
}

fn violations(k: &K, set: &HashSet<T>) -> Vec<(&'static str, Vec<T>)> {
    let mut out = Vec::new();
    let types = pairs(set, k.ty);
    for (pred, rule) in [(k.dw, "cax-dw"), (k.comp, "cls-com")] {
        for (c1, c2) in pairs(set, pred) {
            for &(x, c) in &types {
                if c == c1 && set.contains(&(x, k.ty, c2)) {
                    out.push((rule, vec![(c1, pred, c2), (x, k.ty, c1), (x, k.ty, c2)]));
                }
            }
        }
    }
    for (x, y) in pairs(set, k.same) {
        if set.contains(&(x, k.diff, y)) {
            out.push(("eq-diff1", vec![(x, k.same, y), (x, k.diff, y)]));
        }
    }
    for &(a, c) in &types {
        if c != k.all_diff {
            continue;
        }
        for lp in [k.members, k.distinct] {
            for (a2, l) in pairs(set, lp) {
                if a2 != a {
                    continue;
                }
                let ms: Vec<u32> = members(k, set, l).into_iter().collect();
                for i in 0..ms.len() {
                    for j in 0..ms.len() {
                        if i != j && set.contains(&(ms[i], k.same, ms[j])) {
                            out.push(("eq-diff2", vec![(a, k.ty, k.all_diff), (a, lp, l), (ms[i], k.same, ms[j])]));
                        }
                    }
                }
            }
        }
    }
    for &(x, c) in &types {
        if c == k.nothing {
            out.push(("cls-nothing2", vec![(x, k.ty, k.nothing)]));
        }
    }
    out
}
