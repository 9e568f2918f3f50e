use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use kg_core::{Graph, Term, Triple};

use crate::EmbedError;

/// Distance used in `score = -‖e_s + r_p - e_o‖`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Norm {
    #[default]
    L1,
    L2,
}

impl FromStr for Norm {
    type Err = EmbedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "L1" => Ok(Norm::L1),
            "L2" => Ok(Norm::L2),
            _ => Err(EmbedError::InvalidConfig(format!("unknown norm `{s}` (expected L1 or L2)"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "L1",
            Norm::L2 => "L2",
        })
    }
}

impl Norm {
    pub fn length(self, v: &[f64]) -> f64 {
        match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }

    /// Gradient of [`Norm::length`] at `v`; zero where it is not
    /// differentiable.
    fn gradient(self, v: &[f64]) -> Vec<f64> {
        match self {
            Norm::L1 => v
                .iter()
                .map(|&x| if x > 0.0 { 1.0 } else if x < 0.0 { -1.0 } else { 0.0 })
                .collect(),
            Norm::L2 => {
                let n = self.length(v);
                if n == 0.0 {
                    vec![0.0; v.len()]
                } else {
                    v.iter().map(|x| x / n).collect()
                }
            }
        }
    }
}

/// A triple as `(subject, relation, object)` row indices.
pub type Ids = [usize; 3];

/// Gradient of a loss with respect to the vectors it touches, keyed by
/// entity or relation index.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Gradient {
    pub entities: BTreeMap<usize, Vec<f64>>,
    pub relations: BTreeMap<usize, Vec<f64>>,
}

fn accumulate(map: &mut BTreeMap<usize, Vec<f64>>, key: usize, g: &[f64], sign: f64) {
    let slot = map.entry(key).or_insert_with(|| vec![0.0; g.len()]);
    for (a, b) in slot.iter_mut().zip(g) {
        *a += sign * b;
    }
}

/// TransE lookup tables: one vector per entity and per relation of the
/// training graph, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingModel {
    dim: usize,
    norm: Norm,
    entities: Vec<Term>,
    relations: Vec<Term>,
    entity_ids: HashMap<Term, usize>,
    relation_ids: HashMap<Term, usize>,
    e: Vec<f64>,
    r: Vec<f64>,
}

fn index(terms: &[Term]) -> HashMap<Term, usize> {
    terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}

impl EmbeddingModel {
    /// Vectors drawn uniformly from `[-6/√d, 6/√d]`, entities first, both in
    /// canonical term order; entity vectors are then scaled to unit L2 norm.
    pub fn init(graph: &Graph, dim: usize, norm: Norm, rng: &mut impl Rng) -> Result<Self, EmbedError> {
        if graph.is_empty() {
            return Err(EmbedError::EmptyGraph);
        }
        if dim == 0 {
            return Err(EmbedError::InvalidConfig("dimension must be at least 1".into()));
        }
        let entities: Vec<Term> = graph.entities().into_iter().collect();
        let relations: Vec<Term> = graph.relations().into_iter().collect();
        let bound = 6.0 / (dim as f64).sqrt();
        let mut draw = |n: usize| -> Vec<f64> { (0..n * dim).map(|_| rng.gen_range(-bound..=bound)).collect() };
        let e = draw(entities.len());
        let r = draw(relations.len());
        let mut model = EmbeddingModel {
            dim,
            norm,
            entity_ids: index(&entities),
            relation_ids: index(&relations),
            entities,
            relations,
            e,
            r,
        };
        model.normalize_entities();
        Ok(model)
    }

    /// A model with the given vectors, used as is.
    pub fn from_vectors(
        dim: usize,
        norm: Norm,
        entities: Vec<(Term, Vec<f64>)>,
        relations: Vec<(Term, Vec<f64>)>,
    ) -> Result<Self, EmbedError> {
        if dim == 0 {
            return Err(EmbedError::InvalidConfig("dimension must be at least 1".into()));
        }
        let split = |rows: Vec<(Term, Vec<f64>)>| -> Result<(Vec<Term>, Vec<f64>), EmbedError> {
            let mut terms = Vec::with_capacity(rows.len());
            let mut flat = Vec::with_capacity(rows.len() * dim);
            for (t, v) in rows {
                if v.len() != dim {
                    return Err(EmbedError::DimensionMismatch {
                        term: t.to_string(),
                        expected: dim,
                        found: v.len(),
                    });
                }
                if terms.contains(&t) {
                    return Err(EmbedError::InvalidConfig(format!("duplicate vector for {t}")));
                }
                terms.push(t);
                flat.extend(v);
            }
            Ok((terms, flat))
        };
        let (entities, e) = split(entities)?;
        let (relations, r) = split(relations)?;
        Ok(EmbeddingModel {
            dim,
            norm,
            entity_ids: index(&entities),
            relation_ids: index(&relations),
            entities,
            relations,
            e,
            r,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn entities(&self) -> &[Term] {
        &self.entities
    }

    pub fn relations(&self) -> &[Term] {
        &self.relations
    }

    pub fn entity_id(&self, t: &Term) -> Option<usize> {
        self.entity_ids.get(t).copied()
    }

    pub fn relation_id(&self, t: &Term) -> Option<usize> {
        self.relation_ids.get(t).copied()
    }

    pub fn entity(&self, i: usize) -> &[f64] {
        &self.e[i * self.dim..(i + 1) * self.dim]
    }

    pub fn entity_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.e[i * self.dim..(i + 1) * self.dim]
    }

    pub fn relation(&self, i: usize) -> &[f64] {
        &self.r[i * self.dim..(i + 1) * self.dim]
    }

    pub fn relation_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.r[i * self.dim..(i + 1) * self.dim]
    }

    /// Row indices of `t`, or an error naming the first unknown term.
    pub fn ids(&self, t: &Triple) -> Result<Ids, EmbedError> {
        let ent = |x: &Term| self.entity_id(x).ok_or_else(|| EmbedError::UnknownEntity(x.to_string()));
        let rel = self
            .relation_id(&t.predicate)
            .ok_or_else(|| EmbedError::UnknownRelation(t.predicate.to_string()))?;
        Ok([ent(&t.subject)?, rel, ent(&t.object)?])
    }

    pub fn triple(&self, ids: Ids) -> Triple {
        Triple::new(
            self.entities[ids[0]].clone(),
            self.relations[ids[1]].clone(),
            self.entities[ids[2]].clone(),
        )
    }

    fn residual(&self, [s, p, o]: Ids) -> Vec<f64> {
        let (es, rp, eo) = (self.entity(s), self.relation(p), self.entity(o));
        (0..self.dim).map(|i| es[i] + rp[i] - eo[i]).collect()
    }

    pub fn distance_ids(&self, ids: Ids) -> f64 {
        self.norm.length(&self.residual(ids))
    }

    pub fn score_ids(&self, ids: Ids) -> f64 {
        -self.distance_ids(ids)
    }

    /// `-‖e_s + r_p - e_o‖`; zero for an exact translation.
    pub fn score(&self, s: &Term, p: &Term, o: &Term) -> Result<f64, EmbedError> {
        let ids = self.ids(&Triple::new(s.clone(), p.clone(), o.clone()))?;
        Ok(self.score_ids(ids))
    }

    /// Scales every entity vector to unit L2 norm (zero vectors stay zero).
    pub fn normalize_entities(&mut self) {
        let dim = self.dim;
        for row in self.e.chunks_mut(dim) {
            let n = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.0 {
                row.iter_mut().for_each(|x| *x /= n);
            }
        }
    }

    /// Margin ranking loss `max(0, margin + d(pos) - d(neg))` and its
    /// gradient. The gradient is empty when the hinge is inactive.
    pub fn hinge_ids(&self, pos: Ids, neg: Ids, margin: f64) -> (f64, Gradient) {
        let (rp, rn) = (self.residual(pos), self.residual(neg));
        let loss = margin + self.norm.length(&rp) - self.norm.length(&rn);
        let mut grad = Gradient::default();
        if loss <= 0.0 {
            return (0.0, grad);
        }
        for (ids, res, sign) in [(pos, &rp, 1.0), (neg, &rn, -1.0)] {
            let g = self.norm.gradient(res);
            accumulate(&mut grad.entities, ids[0], &g, sign);
            accumulate(&mut grad.relations, ids[1], &g, sign);
            accumulate(&mut grad.entities, ids[2], &g, -sign);
        }
        (loss, grad)
    }

    pub fn hinge(&self, pos: &Triple, neg: &Triple, margin: f64) -> Result<(f64, Gradient), EmbedError> {
        Ok(self.hinge_ids(self.ids(pos)?, self.ids(neg)?, margin))
    }

    /// One gradient step: every touched vector moves by `-rate * gradient`.
    pub fn apply(&mut self, grad: &Gradient, rate: f64) {
        for (&i, g) in &grad.entities {
            self.entity_mut(i).iter_mut().zip(g).for_each(|(x, d)| *x -= rate * d);
        }
        for (&i, g) in &grad.relations {
            self.relation_mut(i).iter_mut().zip(g).for_each(|(x, d)| *x -= rate * d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(l: &str) -> Term {
        Term::iri(format!("http://e/{l}"))
    }

    fn toy() -> EmbeddingModel {
        EmbeddingModel::from_vectors(
            2,
            Norm::L1,
            vec![(t("s"), vec![1.0, 0.0]), (t("o"), vec![1.0, 1.0]), (t("o2"), vec![1.0, 2.0])],
            vec![(t("p"), vec![0.0, 1.0])],
        )
        .unwrap()
    }

    #[test]
    fn exact_translation_scores_zero() {
        let m = toy();
        assert_eq!(m.score(&t("s"), &t("p"), &t("o")).unwrap(), 0.0);
        assert_eq!(m.score(&t("s"), &t("p"), &t("o2")).unwrap(), -1.0);
        assert!(matches!(m.score(&t("x"), &t("p"), &t("o")), Err(EmbedError::UnknownEntity(n)) if n.contains("x")));
        assert!(matches!(m.score(&t("s"), &t("q"), &t("o")), Err(EmbedError::UnknownRelation(_))));
    }

    #[test]
    fn init_shapes_and_unit_entities() {
        let g = Graph::from_triples((0..5).map(|i| {
            Triple::new(t(&format!("e{i}")), t(if i % 2 == 0 { "p" } else { "q" }), t(&format!("e{}", (i + 1) % 5)))
        }))
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = EmbeddingModel::init(&g, 3, Norm::L1, &mut rng).unwrap();
        assert_eq!((m.entities().len(), m.relations().len()), (5, 2));
        for i in 0..5 {
            let n = m.entity(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-9);
        }
        let bound = 6.0 / 3f64.sqrt();
        assert!((0..2).all(|i| m.relation(i).iter().all(|x| x.abs() <= bound)));
        let again = EmbeddingModel::init(&g, 3, Norm::L1, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(m, again);
        assert!(matches!(
            EmbeddingModel::init(&Graph::new(), 3, Norm::L1, &mut rng),
            Err(EmbedError::EmptyGraph)
        ));
    }

    #[test]
    fn inactive_hinge_has_no_gradient() {
        let m = toy();
        let pos = Triple::new(t("s"), t("p"), t("o"));
        let neg = Triple::new(t("o2"), t("p"), t("s"));
        // d(pos) = 0, d(neg) = |0-1| + |2+1-0| = 4 >= margin.
        let (loss, grad) = m.hinge(&pos, &neg, 1.0).unwrap();
        assert_eq!(loss, 0.0);
        assert_eq!(grad, Gradient::default());
    }
}
