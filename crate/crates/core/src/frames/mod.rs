//! Frame-based knowledge: general and individual frames, slots holding
//! defined or default facets, inheritance along IS-A and INSTANCE-OF, and
//! export to RDF.

mod parse;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::error::ModelError;
use crate::graph::Graph;
use crate::term::{Term, Triple};
use crate::vocab::{rdf, rdfs};

pub use parse::parse_frames;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// A category; parents are IS-A links.
    General,
    /// A single object; parents are INSTANCE-OF links.
    Individual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strength {
    Defined,
    Default,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    AllowedValues(BTreeSet<String>),
    /// The value must name a frame that is, or inherits from, this general
    /// frame.
    FrameType(String),
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::AllowedValues(vs) => {
                write!(f, "one-of")?;
                for v in vs {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            Constraint::FrameType(t) => write!(f, "type {t}"),
        }
    }
}

/// A slot filler. A facet may carry only a constraint and no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub value: Option<String>,
    pub strength: Strength,
    pub constraint: Option<Constraint>,
}

impl Facet {
    pub fn defined(value: impl Into<String>) -> Self {
        Facet {
            value: Some(value.into()),
            strength: Strength::Defined,
            constraint: None,
        }
    }

    pub fn default_value(value: impl Into<String>) -> Self {
        Facet {
            value: Some(value.into()),
            strength: Strength::Default,
            constraint: None,
        }
    }

    pub fn constraint_only(constraint: Constraint) -> Self {
        Facet {
            value: None,
            strength: Strength::Defined,
            constraint: Some(constraint),
        }
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = Some(constraint);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub name: String,
    pub kind: FrameKind,
    /// IS-A targets for general frames, INSTANCE-OF targets for individual
    /// ones, in declaration order.
    pub parents: Vec<String>,
    pub slots: IndexMap<String, Facet>,
}

impl Frame {
    pub fn general(name: impl Into<String>, is_a: &[&str]) -> Self {
        Self::new(name, FrameKind::General, is_a)
    }

    pub fn individual(name: impl Into<String>, instance_of: &[&str]) -> Self {
        Self::new(name, FrameKind::Individual, instance_of)
    }

    fn new(name: impl Into<String>, kind: FrameKind, parents: &[&str]) -> Self {
        Frame {
            name: name.into(),
            kind,
            parents: parents.iter().map(|p| p.to_string()).collect(),
            slots: IndexMap::new(),
        }
    }

    pub fn slot(mut self, name: impl Into<String>, facet: Facet) -> Self {
        self.slots.insert(name.into(), facet);
        self
    }
}

/// A resolved slot value and the frame that supplied it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotValue {
    pub value: String,
    pub strength: Strength,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("unknown frame `{0}`")]
    UnknownFrame(String),
    #[error("frame `{0}` is already defined")]
    Duplicate(String),
    #[error("IS-A cycle through `{0}`")]
    Cycle(String),
    #[error("frame `{frame}` cannot link to `{target}`: {reason}")]
    BadLink {
        frame: String,
        target: String,
        reason: &'static str,
    },
    #[error("value `{value}` for slot `{slot}` violates constraint `{constraint}` from frame `{source_frame}`")]
    ConstraintViolation {
        slot: String,
        value: String,
        constraint: Constraint,
        source_frame: String,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Frames in declaration order. Parents need not be declared; undeclared
/// names act as opaque general frames.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrameSystem {
    frames: IndexMap<String, Frame>,
}

impl FrameSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Frame> {
        self.frames.get(name)
    }

    pub fn frames(&self) -> impl Iterator<Item = &Frame> {
        self.frames.values()
    }

    /// Adds `frame`, rejecting duplicates, links to individual frames and
    /// links that would close an IS-A cycle.
    pub fn add(&mut self, frame: Frame) -> Result<(), FrameError> {
        if self.frames.contains_key(&frame.name) {
            return Err(FrameError::Duplicate(frame.name));
        }
        for p in &frame.parents {
            if self.get(p).is_some_and(|f| f.kind == FrameKind::Individual) {
                return Err(FrameError::BadLink {
                    frame: frame.name.clone(),
                    target: p.clone(),
                    reason: "target is an individual frame",
                });
            }
            if frame.kind == FrameKind::General
                && (*p == frame.name || self.ancestors(p).iter().any(|a| *a == frame.name))
            {
                return Err(FrameError::Cycle(frame.name.clone()));
            }
        }
        self.frames.insert(frame.name.clone(), frame);
        Ok(())
    }

    /// `name` followed by its ancestors in breadth-first order, parents
    /// visited in declaration order.
    pub fn ancestors(&self, name: &str) -> Vec<&str> {
        let mut order: Vec<&str> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        if let Some((key, _)) = self.frames.get_key_value(name) {
            queue.push_back(key.as_str());
        } else {
            return vec![];
        }
        while let Some(n) = queue.pop_front() {
            if !seen.insert(n) {
                continue;
            }
            order.push(n);
            if let Some(f) = self.frames.get(n) {
                for p in &f.parents {
                    queue.push_back(p.as_str());
                }
            }
        }
        order
    }

    /// Resolves a slot: a defined value from the nearest frame having one,
    /// otherwise a default value from the nearest frame having one. `None`
    /// when the frame is unknown or no frame in its lineage fills the slot.
    pub fn get_slot(&self, frame: &str, slot: &str) -> Option<SlotValue> {
        self.frames.get(frame)?;
        let lineage = self.ancestors(frame);
        for strength in [Strength::Defined, Strength::Default] {
            for name in &lineage {
                let Some(facet) = self.frames.get(*name).and_then(|f| f.slots.get(slot)) else {
                    continue;
                };
                if facet.strength != strength {
                    continue;
                }
                if let Some(value) = &facet.value {
                    return Some(SlotValue {
                        value: value.clone(),
                        strength,
                        source: name.to_string(),
                    });
                }
            }
        }
        None
    }

    /// The nearest constraint on `slot` and the frame declaring it.
    pub fn constraint_for(&self, frame: &str, slot: &str) -> Option<(&Constraint, &str)> {
        self.ancestors(frame).into_iter().find_map(|name| {
            let f = self.frames.get(name)?;
            let c = f.slots.get(slot)?.constraint.as_ref()?;
            Some((c, f.name.as_str()))
        })
    }

    /// Whether `value` names a declared frame that is `class` or inherits from
    /// it.
    pub fn is_kind_of(&self, value: &str, class: &str) -> bool {
        self.ancestors(value).contains(&class)
    }

    /// Stores `value` as a defined facet of `slot` if the nearest inherited
    /// constraint admits it. A local constraint is kept.
    pub fn fill_slot(&mut self, frame: &str, slot: &str, value: &str) -> Result<(), FrameError> {
        if !self.frames.contains_key(frame) {
            return Err(FrameError::UnknownFrame(frame.to_string()));
        }
        if let Some((constraint, source)) = self.constraint_for(frame, slot) {
            let ok = match constraint {
                Constraint::AllowedValues(vs) => vs.contains(value),
                Constraint::FrameType(class) => self.is_kind_of(value, class),
            };
            if !ok {
                return Err(FrameError::ConstraintViolation {
                    slot: slot.to_string(),
                    value: value.to_string(),
                    constraint: constraint.clone(),
                    source_frame: source.to_string(),
                });
            }
        }
        let f = self.frames.get_mut(frame).expect("checked above");
        let facet = f.slots.entry(slot.to_string()).or_insert_with(|| Facet::defined(""));
        facet.value = Some(value.to_string());
        facet.strength = Strength::Defined;
        Ok(())
    }
}

/// Exports frames as RDF under `namespace`: IS-A as `rdfs:subClassOf`,
/// INSTANCE-OF as `rdf:type`, and each defined slot value as a property
/// triple. Values naming a known frame become IRIs, others plain literals.
/// Defaults are not exported.
pub fn frames_to_graph(system: &FrameSystem, namespace: &str) -> Result<Graph, ModelError> {
    let iri = |local: &str| Term::iri(format!("{namespace}{local}"));
    let mut g = Graph::new();
    for f in system.frames() {
        let subject = iri(&f.name);
        let link = match f.kind {
            FrameKind::General => rdfs::SUB_CLASS_OF,
            FrameKind::Individual => rdf::TYPE,
        };
        for p in &f.parents {
            g.insert(&Triple::new(subject.clone(), Term::iri(link), iri(p)))?;
        }
        for (slot, facet) in &f.slots {
            let (Strength::Defined, Some(value)) = (facet.strength, &facet.value) else {
                continue;
            };
            let object = if system.get(value).is_some() {
                iri(value)
            } else {
                Term::literal(value.clone())
            };
            g.insert(&Triple::new(subject.clone(), iri(slot), object))?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system() -> FrameSystem {
        let mut s = FrameSystem::new();
        s.add(Frame::general("Food", &[]).slot("edible", Facet::defined("yes")))
            .unwrap();
        s.add(
            Frame::general("Vegetables", &["Food"])
                .slot("colour", Facet::default_value("green"))
                .slot("taste", Facet::default_value("bland")),
        )
        .unwrap();
        s.add(
            Frame::general("Carrots", &["Vegetables"]).slot(
                "colour",
                Facet::defined("orange").with_constraint(Constraint::AllowedValues(
                    ["orange".to_string(), "purple".to_string()].into(),
                )),
            ),
        )
        .unwrap();
        s.add(Frame::individual("carrot1", &["Carrots"]).slot("taste", Facet::default_value("sweet")))
            .unwrap();
        s
    }

    #[test]
    fn inherited_defined_value() {
        let s = system();
        let v = s.get_slot("carrot1", "colour").unwrap();
        assert_eq!((v.value.as_str(), v.source.as_str()), ("orange", "Carrots"));
        assert_eq!(s.get_slot("carrot1", "edible").unwrap().source, "Food");
        assert_eq!(s.get_slot("carrot1", "weight"), None);
        assert_eq!(s.get_slot("nobody", "colour"), None);
    }

    #[test]
    fn defined_beats_nearer_default() {
        let s = system();
        assert_eq!(s.get_slot("Vegetables", "colour").unwrap().value, "green");
        assert_eq!(s.get_slot("carrot1", "taste").unwrap().value, "sweet");
    }

    #[test]
    fn fill_checks_nearest_constraint() {
        let mut s = system();
        s.fill_slot("carrot1", "colour", "purple").unwrap();
        assert_eq!(s.get_slot("carrot1", "colour").unwrap().source, "carrot1");
        let err = s.fill_slot("carrot1", "colour", "blue").unwrap_err();
        assert!(matches!(err, FrameError::ConstraintViolation { ref source_frame, .. } if source_frame == "Carrots"));
        s.fill_slot("carrot1", "weight", "80g").unwrap();
        assert!(matches!(s.fill_slot("nobody", "x", "y"), Err(FrameError::UnknownFrame(_))));
    }

    #[test]
    fn frame_type_constraint() {
        let mut s = FrameSystem::new();
        s.add(Frame::general("Locality", &[])).unwrap();
        s.add(Frame::general("City", &["Locality"])).unwrap();
        s.add(Frame::general("Country", &[]).slot("capital", Facet::constraint_only(Constraint::FrameType("City".into()))))
            .unwrap();
        s.add(Frame::individual("warsaw", &["City"])).unwrap();
        s.add(Frame::individual("poland", &["Country"])).unwrap();
        s.fill_slot("poland", "capital", "warsaw").unwrap();
        assert!(s.fill_slot("poland", "capital", "poland").is_err());
        assert!(s.fill_slot("poland", "capital", "Kraków").is_err());
    }

    #[test]
    fn cycles_and_bad_links_rejected() {
        let mut s = FrameSystem::new();
        s.add(Frame::general("A", &["B"])).unwrap();
        s.add(Frame::general("B", &["C"])).unwrap();
        assert_eq!(s.add(Frame::general("C", &["A"])), Err(FrameError::Cycle("C".into())));
        assert_eq!(s.add(Frame::general("D", &["D"])), Err(FrameError::Cycle("D".into())));
        s.add(Frame::individual("x", &["A"])).unwrap();
        assert!(matches!(s.add(Frame::general("E", &["x"])), Err(FrameError::BadLink { .. })));
        assert!(matches!(s.add(Frame::general("A", &[])), Err(FrameError::Duplicate(_))));
    }

    #[test]
    fn export() {
        let s = system();
        let ns = "http://example.edu#";
        let g = frames_to_graph(&s, ns).unwrap();
        let e = |l: &str| Term::iri(format!("{ns}{l}"));
        assert!(g.contains(&Triple::new(e("Carrots"), Term::iri(rdfs::SUB_CLASS_OF), e("Vegetables"))));
        assert!(g.contains(&Triple::new(e("Carrots"), e("colour"), Term::literal("orange"))));
        assert!(g.contains(&Triple::new(e("carrot1"), Term::iri(rdf::TYPE), e("Carrots"))));
        assert!(!g.iter().any(|t| t.object == Term::literal("green")));
        assert!(frames_to_graph(&FrameSystem::new(), ns).unwrap().is_empty());
    }
}
