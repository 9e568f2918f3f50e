use super::{tr, Conclusion, Vocab};
use crate::graph::{Graph, IdTriple};

pub(super) const SCM_SCO: &str = "scm-sco";
pub(super) const CAX_SCO: &str = "cax-sco";
pub(super) const SCM_SPO: &str = "scm-spo";
pub(super) const PRP_SPO: &str = "prp-spo1";
pub(super) const PRP_DOM: &str = "prp-dom";
pub(super) const PRP_RNG: &str = "prp-rng";

/// Fires every RDFS rule with `t` in each premise position it can fill.
pub(super) fn fire(v: &Vocab, g: &Graph, t: IdTriple, out: &mut Vec<Conclusion>) {
    let IdTriple { s, p, o } = t;

    if p == v.sub_class_of {
        // (s ⊑ o), (o ⊑ c) ⇒ s ⊑ c ; (a ⊑ s), (s ⊑ o) ⇒ a ⊑ o
        for c in g.objects(o, v.sub_class_of) {
            out.push((tr(s, p, c), SCM_SCO, vec![t, tr(o, p, c)]));
        }
        for a in g.subjects(v.sub_class_of, s) {
            out.push((tr(a, p, o), SCM_SCO, vec![tr(a, p, s), t]));
        }
        for x in g.subjects(v.type_, s) {
            out.push((tr(x, v.type_, o), CAX_SCO, vec![t, tr(x, v.type_, s)]));
        }
    }
    if p == v.type_ {
        for d in g.objects(o, v.sub_class_of) {
            out.push((tr(s, v.type_, d), CAX_SCO, vec![tr(o, v.sub_class_of, d), t]));
        }
    }

    if p == v.sub_property_of {
        for c in g.objects(o, v.sub_property_of) {
            out.push((tr(s, p, c), SCM_SPO, vec![t, tr(o, p, c)]));
        }
        for a in g.subjects(v.sub_property_of, s) {
            out.push((tr(a, p, o), SCM_SPO, vec![tr(a, p, s), t]));
        }
        for e in g.matching(None, Some(s), None) {
            out.push((tr(e.s, o, e.o), PRP_SPO, vec![t, e]));
        }
    }
    if p == v.domain {
        for e in g.matching(None, Some(s), None) {
            out.push((tr(e.s, v.type_, o), PRP_DOM, vec![t, e]));
        }
    }
    if p == v.range {
        for e in g.matching(None, Some(s), None) {
            out.push((tr(e.o, v.type_, o), PRP_RNG, vec![t, e]));
        }
    }

    // `t` as the instance premise of the property rules.
    for q in g.objects(p, v.sub_property_of) {
        out.push((tr(s, q, o), PRP_SPO, vec![tr(p, v.sub_property_of, q), t]));
    }
    for c in g.objects(p, v.domain) {
        out.push((tr(s, v.type_, c), PRP_DOM, vec![tr(p, v.domain, c), t]));
    }
    for c in g.objects(p, v.range) {
        out.push((tr(o, v.type_, c), PRP_RNG, vec![tr(p, v.range, c), t]));
    }
}
