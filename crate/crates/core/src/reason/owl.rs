use std::collections::{BTreeSet, VecDeque};

use super::{tr, Conclusion, InconsistencyReport, Violation, Vocab};
use crate::graph::{Graph, IdTriple, TermId};

const EQ_SYM: &str = "eq-sym";
const EQ_TRANS: &str = "eq-trans";
const EQ_REP_S: &str = "eq-rep-s";
const EQ_REP_P: &str = "eq-rep-p";
const EQ_REP_O: &str = "eq-rep-o";
const PRP_FP: &str = "prp-fp";
const PRP_TRP: &str = "prp-trp";
const PRP_INV1: &str = "prp-inv1";
const PRP_INV2: &str = "prp-inv2";
const SCM_EQC1: &str = "scm-eqc1";
const SCM_EQC2: &str = "scm-eqc2";
const CLS_INT1: &str = "cls-int1";
const CLS_INT2: &str = "cls-int2";
const SCM_INT: &str = "scm-int";
const CLS_UNI: &str = "cls-uni";
const SCM_UNI: &str = "scm-uni";
const CLS_SVF1: &str = "cls-svf1";
const CLS_AVF: &str = "cls-avf";

pub(super) const CAX_DW: &str = "cax-dw";
pub(super) const CLS_COM: &str = "cls-com";
pub(super) const EQ_DIFF1: &str = "eq-diff1";
pub(super) const EQ_DIFF2: &str = "eq-diff2";
pub(super) const CLS_NOTHING2: &str = "cls-nothing2";

/// Members of the list at `head`: the `rdf:first` of every node reachable
/// through `rdf:rest`. Reading lists this way keeps the rules monotone even
/// for malformed or branching lists.
pub(crate) fn list_members(v: &Vocab, g: &Graph, head: TermId) -> BTreeSet<TermId> {
    let mut members = BTreeSet::new();
    let mut seen = BTreeSet::from([head]);
    let mut queue = VecDeque::from([head]);
    while let Some(n) = queue.pop_front() {
        if n == v.nil {
            continue;
        }
        members.extend(g.objects(n, v.first));
        for r in g.objects(n, v.rest) {
            if seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    members
}

/// Whether some `rdf:rest` path from `head` reaches `rdf:nil` through nodes
/// that each have a first element satisfying `ok`. The empty list never
/// qualifies.
fn covered_path(v: &Vocab, g: &Graph, head: TermId, ok: impl Fn(TermId) -> bool) -> bool {
    let good = |n: TermId| n != v.nil && g.objects(n, v.first).any(&ok);
    if !good(head) {
        return false;
    }
    let mut seen = BTreeSet::from([head]);
    let mut queue = VecDeque::from([head]);
    while let Some(n) = queue.pop_front() {
        for r in g.objects(n, v.rest) {
            if r == v.nil {
                return true;
            }
            if good(r) && seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    false
}

pub(super) fn fire(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    equality(v, g, t, out);
    properties(v, g, t, out);
    classes(v, g, t, out);
    restrictions(v, g, t, out);
}

fn equality(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let IdTriple { s, p, o } = t;
    let eq = v.same_as;
    if p == eq {
        out.push((tr(o, eq, s), EQ_SYM, vec![t]));
        for z in g.objects(o, eq) {
            out.push((tr(s, eq, z), EQ_TRANS, vec![t, tr(o, eq, z)]));
        }
        for x in g.subjects(eq, s) {
            out.push((tr(x, eq, o), EQ_TRANS, vec![tr(x, eq, s), t]));
        }
        for e in g.matching(Some(s), None, None) {
            out.push((tr(o, e.p, e.o), EQ_REP_S, vec![t, e]));
        }
        for e in g.matching(None, Some(s), None) {
            out.push((tr(e.s, o, e.o), EQ_REP_P, vec![t, e]));
        }
        for e in g.matching(None, None, Some(s)) {
            out.push((tr(e.s, e.p, o), EQ_REP_O, vec![t, e]));
        }
    }
    for s2 in g.objects(s, eq) {
        out.push((tr(s2, p, o), EQ_REP_S, vec![tr(s, eq, s2), t]));
    }
    for p2 in g.objects(p, eq) {
        out.push((tr(s, p2, o), EQ_REP_P, vec![tr(p, eq, p2), t]));
    }
    for o2 in g.objects(o, eq) {
        out.push((tr(s, p, o2), EQ_REP_O, vec![tr(o, eq, o2), t]));
    }
}

fn properties(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let IdTriple { s, p, o } = t;
    let eq = v.same_as;

    if p == v.type_ && o == v.functional {
        for e in g.matching(None, Some(s), None) {
            for y2 in g.objects(e.s, s).filter(|&y2| y2 != e.o) {
                out.push((tr(e.o, eq, y2), PRP_FP, vec![t, e, tr(e.s, s, y2)]));
            }
        }
    }
    let fp = tr(p, v.type_, v.functional);
    if g.contains_ids(fp) {
        for y2 in g.objects(s, p).filter(|&y2| y2 != o) {
            let other = tr(s, p, y2);
            out.push((tr(o, eq, y2), PRP_FP, vec![fp, t, other]));
            out.push((tr(y2, eq, o), PRP_FP, vec![fp, other, t]));
        }
    }

    if p == v.type_ && o == v.transitive {
        for e in g.matching(None, Some(s), None) {
            for z in g.objects(e.o, s) {
                out.push((tr(e.s, s, z), PRP_TRP, vec![t, e, tr(e.o, s, z)]));
            }
        }
    }
    let trp = tr(p, v.type_, v.transitive);
    if g.contains_ids(trp) {
        for z in g.objects(o, p) {
            out.push((tr(s, p, z), PRP_TRP, vec![trp, t, tr(o, p, z)]));
        }
        for w in g.subjects(p, s) {
            out.push((tr(w, p, o), PRP_TRP, vec![trp, tr(w, p, s), t]));
        }
    }

    if p == v.inverse_of {
        for e in g.matching(None, Some(s), None) {
            out.push((tr(e.o, o, e.s), PRP_INV1, vec![t, e]));
        }
        for e in g.matching(None, Some(o), None) {
            out.push((tr(e.o, s, e.s), PRP_INV2, vec![t, e]));
        }
    }
    for q in g.objects(p, v.inverse_of) {
        out.push((tr(o, q, s), PRP_INV1, vec![tr(p, v.inverse_of, q), t]));
    }
    for q in g.subjects(v.inverse_of, p) {
        out.push((tr(o, q, s), PRP_INV2, vec![tr(q, v.inverse_of, p), t]));
    }
}

fn classes(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let IdTriple { s, p, o } = t;
    let sco = v.sub_class_of;

    if p == v.equivalent_class {
        out.push((tr(s, sco, o), SCM_EQC1, vec![t]));
        out.push((tr(o, sco, s), SCM_EQC1, vec![t]));
    }
    if p == sco && g.contains_ids(tr(o, sco, s)) {
        out.push((tr(s, v.equivalent_class, o), SCM_EQC2, vec![t, tr(o, sco, s)]));
        out.push((tr(o, v.equivalent_class, s), SCM_EQC2, vec![tr(o, sco, s), t]));
    }

    if [v.first, v.rest, v.intersection_of, v.union_of].contains(&p) {
        operators_everywhere(v, g, out);
    } else if p == v.type_ {
        operators_for_type(v, g, t, out);
    }
}

/// Intersection and union rules for one new `(x rdf:type d)`.
fn operators_for_type(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let (x, d) = (t.s, t.o);
    for l in g.objects(d, v.intersection_of) {
        let def = tr(d, v.intersection_of, l);
        for m in list_members(v, g, l) {
            out.push((tr(x, v.type_, m), CLS_INT2, vec![def, t]));
        }
    }
    for def in g.matching(None, Some(v.intersection_of), None) {
        if list_members(v, g, def.o).contains(&d)
            && covered_path(v, g, def.o, |f| g.contains_ids(tr(x, v.type_, f)))
        {
            out.push((tr(x, v.type_, def.s), CLS_INT1, vec![def, t]));
        }
    }
    for def in g.matching(None, Some(v.union_of), None) {
        if list_members(v, g, def.o).contains(&d) {
            out.push((tr(x, v.type_, def.s), CLS_UNI, vec![def, t]));
        }
    }
}

/// Re-evaluates the intersection and union rules over the whole graph after
/// a change to list structure or operator definitions.
fn operators_everywhere(v: &Vocab, g: &Graph, out: &mut Vec<Conclusion>) {
    for def in g.matching(None, Some(v.intersection_of), None) {
        let c = def.s;
        let members = list_members(v, g, def.o);
        let mut candidates = BTreeSet::new();
        for &m in &members {
            out.push((tr(c, v.sub_class_of, m), SCM_INT, vec![def]));
            for x in g.subjects(v.type_, c) {
                out.push((tr(x, v.type_, m), CLS_INT2, vec![def, tr(x, v.type_, c)]));
            }
            candidates.extend(g.subjects(v.type_, m));
        }
        for x in candidates {
            if covered_path(v, g, def.o, |f| g.contains_ids(tr(x, v.type_, f))) {
                out.push((tr(x, v.type_, c), CLS_INT1, vec![def]));
            }
        }
    }
    for def in g.matching(None, Some(v.union_of), None) {
        let c = def.s;
        for m in list_members(v, g, def.o) {
            out.push((tr(m, v.sub_class_of, c), SCM_UNI, vec![def]));
            for x in g.subjects(v.type_, m) {
                out.push((tr(x, v.type_, c), CLS_UNI, vec![def, tr(x, v.type_, m)]));
            }
        }
    }
}

fn restrictions(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let IdTriple { s, p, o } = t;
    if [v.on_property, v.some_values_from, v.all_values_from].contains(&p) {
        restrictions_everywhere(v, g, out);
        return;
    }
    if p == v.type_ {
        // s is a filler of type o.
        for r in g.subjects(v.some_values_from, o) {
            for prop in g.objects(r, v.on_property) {
                for x in g.subjects(prop, s) {
                    let premises = vec![tr(r, v.some_values_from, o), tr(r, v.on_property, prop), tr(x, prop, s), t];
                    out.push((tr(x, v.type_, r), CLS_SVF1, premises));
                }
            }
        }
        // s is a member of restriction o.
        for d in g.objects(o, v.all_values_from) {
            for prop in g.objects(o, v.on_property) {
                for y in g.objects(s, prop) {
                    let premises = vec![tr(o, v.all_values_from, d), tr(o, v.on_property, prop), t, tr(s, prop, y)];
                    out.push((tr(y, v.type_, d), CLS_AVF, premises));
                }
            }
        }
    }
    // t as the property edge.
    for r in g.subjects(v.on_property, p) {
        for d in g.objects(r, v.some_values_from) {
            let filler = tr(o, v.type_, d);
            if g.contains_ids(filler) {
                let premises = vec![tr(r, v.some_values_from, d), tr(r, v.on_property, p), t, filler];
                out.push((tr(s, v.type_, r), CLS_SVF1, premises));
            }
        }
        let member = tr(s, v.type_, r);
        if g.contains_ids(member) {
            for d in g.objects(r, v.all_values_from) {
                let premises = vec![tr(r, v.all_values_from, d), tr(r, v.on_property, p), member, t];
                out.push((tr(o, v.type_, d), CLS_AVF, premises));
            }
        }
    }
}

fn restrictions_everywhere(v: &Vocab, g: &Graph, out: &mut Vec<Conclusion>) {
    for on in g.matching(None, Some(v.on_property), None) {
        let (r, prop) = (on.s, on.o);
        for d in g.objects(r, v.some_values_from) {
            for e in g.matching(None, Some(prop), None) {
                let filler = tr(e.o, v.type_, d);
                if g.contains_ids(filler) {
                    let premises = vec![tr(r, v.some_values_from, d), on, e, filler];
                    out.push((tr(e.s, v.type_, r), CLS_SVF1, premises));
                }
            }
        }
        for d in g.objects(r, v.all_values_from) {
            for x in g.subjects(v.type_, r) {
                for y in g.objects(x, prop) {
                    let premises = vec![tr(r, v.all_values_from, d), on, tr(x, v.type_, r), tr(x, prop, y)];
                    out.push((tr(y, v.type_, d), CLS_AVF, premises));
                }
            }
        }
    }
}

/// Contradictions present in a saturated graph.
pub(super) fn violations(v: &Vocab, g: &Graph) -> InconsistencyReport {
    let mut found: Vec<(&'static str, Vec<IdTriple>)> = Vec::new();
    for (pred, rule) in [(v.disjoint_with, CAX_DW), (v.complement_of, CLS_COM)] {
        for axiom in g.matching(None, Some(pred), None) {
            for x in g.subjects(v.type_, axiom.s) {
                let other = tr(x, v.type_, axiom.o);
                if g.contains_ids(other) {
                    found.push((rule, vec![axiom, tr(x, v.type_, axiom.s), other]));
                }
            }
        }
    }
    for same in g.matching(None, Some(v.same_as), None) {
        let diff = tr(same.s, v.different_from, same.o);
        if g.contains_ids(diff) {
            found.push((EQ_DIFF1, vec![same, diff]));
        }
    }
    for decl in g.matching(None, Some(v.type_), Some(v.all_different)) {
        for list_pred in [v.members, v.distinct_members] {
            for l in g.objects(decl.s, list_pred) {
                let members: Vec<TermId> = list_members(v, g, l).into_iter().collect();
                for &a in &members {
                    for &b in members.iter().filter(|&&b| b != a) {
                        let same = tr(a, v.same_as, b);
                        if g.contains_ids(same) {
                            found.push((EQ_DIFF2, vec![decl, tr(decl.s, list_pred, l), same]));
                        }
                    }
                }
            }
        }
    }
    for x in g.subjects(v.type_, v.nothing) {
        found.push((CLS_NOTHING2, vec![tr(x, v.type_, v.nothing)]));
    }
    InconsistencyReport::new(
        found
            .into_iter()
            .map(|(rule, ts)| Violation {
                rule,
                triples: ts.into_iter().map(|t| g.decode(t)).collect(),
            })
            .collect(),
    )
}
