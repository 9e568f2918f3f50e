//! Seeded random graphs over a small vocabulary, mixing plain edges with
//! schema and OWL axioms so that every rule gets exercised.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kg_core::vocab::{owl, rdf, rdfs};
use kg_core::{Graph, Term, Triple};

const NS: &str = "http://example.org/v#";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Plain edges plus subclass, subproperty, domain and range axioms.
    Rdfs,
    /// Everything in `Rdfs` plus equality, property characteristics, class
    /// operators and the axioms behind violations.
    Owl,
}

/// The ten user terms: eight IRIs, one blank node, one literal.
pub fn vocabulary() -> Vec<Term> {
    let mut v: Vec<Term> = (0..8).map(|i| Term::iri(format!("{NS}t{i}"))).collect();
    v.push(Term::blank("n0"));
    v.push(Term::literal("lit"));
    v
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Gen {
    rng: ChaCha8Rng,
    vocab: Vec<Term>,
    triples: Vec<Triple>,
    lists: usize,
}

impl Gen {
    fn any(&mut self) -> Term {
        self.vocab.choose(&mut self.rng).expect("vocabulary").clone()
    }

    fn resource(&mut self) -> Term {
        let n = self.vocab.len() - 1;
        self.vocab[self.rng.gen_range(0..n)].clone()
    }

    fn iri(&mut self) -> Term {
        self.vocab[self.rng.gen_range(0..8)].clone()
    }

    fn push(&mut self, s: Term, p: &str, o: Term) {
        self.triples.push(Triple::new(s, Term::iri(p), o));
    }

    fn list(&mut self) -> Term {
        let len = self.rng.gen_range(1..=3);
        let nodes: Vec<Term> = (0..len)
            .map(|_| {
                self.lists += 1;
                Term::blank(format!("l{}", self.lists))
            })
            .collect();
        for (i, node) in nodes.iter().enumerate() {
            let member = self.resource();
            self.push(node.clone(), rdf::FIRST, member);
            let rest = nodes.get(i + 1).cloned().unwrap_or(Term::iri(rdf::NIL));
            self.push(node.clone(), rdf::REST, rest);
        }
        nodes[0].clone()
    }

    fn one(&mut self, flavor: Flavor) {
        let pick = self.rng.gen_range(0..if flavor == Flavor::Owl { 22 } else { 10 });
        let (s, o) = (self.resource(), self.any());
        match pick {
            0 | 1 => self.push(s, rdfs::SUB_CLASS_OF, o),
            2 => self.push(s, rdfs::SUB_PROPERTY_OF, o),
            3 => self.push(s, rdfs::DOMAIN, o),
            4 => self.push(s, rdfs::RANGE, o),
            5 | 6 => self.push(s, rdf::TYPE, o),
            7 => {
                let o = self.resource();
                self.push(s, rdfs::SUB_PROPERTY_OF, o)
            }
            8 | 9 => {
                let p = self.iri();
                self.triples.push(Triple::new(s, p, o));
            }
            10 => self.push(s, owl::SAME_AS, o),
            11 => self.push(s, owl::DIFFERENT_FROM, o),
            12 => self.push(s, rdf::TYPE, Term::iri(owl::FUNCTIONAL_PROPERTY)),
            13 => self.push(s, rdf::TYPE, Term::iri(owl::TRANSITIVE_PROPERTY)),
            14 => self.push(s, owl::INVERSE_OF, o),
            15 => self.push(s, owl::EQUIVALENT_CLASS, o),
            16 => {
                let rule = if self.rng.gen_bool(0.5) { owl::DISJOINT_WITH } else { owl::COMPLEMENT_OF };
                self.push(s, rule, o)
            }
            17 => {
                let l = self.list();
                self.push(s, owl::INTERSECTION_OF, l)
            }
            18 => {
                let l = self.list();
                self.push(s, owl::UNION_OF, l)
            }
            19 => {
                let p = self.iri();
                self.push(s.clone(), owl::ON_PROPERTY, p);
                let rule = if self.rng.gen_bool(0.5) { owl::SOME_VALUES_FROM } else { owl::ALL_VALUES_FROM };
                self.push(s, rule, o)
            }
            20 => {
                let l = self.list();
                self.push(s.clone(), rdf::TYPE, Term::iri(owl::ALL_DIFFERENT));
                self.push(s, owl::MEMBERS, l)
            }
            _ => {
                if self.rng.gen_bool(0.2) {
                    self.push(s, rdf::TYPE, Term::iri(owl::NOTHING))
                } else {
                    let p = self.iri();
                    self.triples.push(Triple::new(s, p, o));
                }
            }
        }
    }
}

/// A graph of at most `max_triples` triples; the same seed always yields the
/// same graph.
pub fn random_graph(seed: u64, max_triples: usize, flavor: Flavor) -> Graph {
    Graph::from_triples(random_triples(seed, max_triples, flavor)).expect("generated triples are well formed")
}

/// The triples behind [`random_graph`], in generation order, possibly with
/// repeats.
pub fn random_triples(seed: u64, max_triples: usize, flavor: Flavor) -> Vec<Triple> {
    let mut g = Gen {
        rng: rng(seed),
        vocab: vocabulary(),
        triples: Vec::new(),
        lists: 0,
    };
    let target = g.rng.gen_range(1..=max_triples.max(1));
    while g.triples.len() < target {
        g.one(flavor);
    }
    g.triples.truncate(max_triples);
    g.triples
}

/// Plain edges only (no schema vocabulary), for store and parser tests.
pub fn random_data_graph(seed: u64, max_triples: usize) -> Graph {
    let mut r = rng(seed);
    let vocab = vocabulary();
    let extra = [
        Term::typed("5", kg_core::vocab::xsd::INTEGER),
        Term::lang("Warszawa", "pl"),
        Term::literal("with \"quotes\"\nand newline"),
        Term::blank("b.1"),
    ];
    let n = r.gen_range(0..=max_triples);
    let mut g = Graph::new();
    for _ in 0..n {
        let subjects: Vec<&Term> = vocab.iter().chain(&extra).filter(|t| t.is_resource()).collect();
        let s = (*subjects.choose(&mut r).expect("subjects")).clone();
        let p = vocab[r.gen_range(0..8)].clone();
        let o = vocab.iter().chain(&extra).collect::<Vec<_>>().choose(&mut r).map(|t| (*t).clone()).expect("objects");
        g.insert(&Triple::new(s, p, o)).expect("well formed");
    }
    g
}
