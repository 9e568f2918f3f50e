use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kg_core::{Graph, Term, Triple};

use crate::model::{EmbeddingModel, Ids, Norm};
use crate::EmbedError;

/// Rejection draws before a filtered sampler enumerates the unknown
/// corruptions instead.
const MAX_RETRIES: usize = 32;

/// Which end of a positive triple is replaced to build a negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Corruption {
    Head,
    Tail,
    /// Head or tail with equal probability.
    #[default]
    Both,
}

impl FromStr for Corruption {
    type Err = EmbedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "head" => Ok(Corruption::Head),
            "tail" => Ok(Corruption::Tail),
            "both" => Ok(Corruption::Both),
            _ => Err(EmbedError::InvalidConfig(format!(
                "unknown corruption `{s}` (expected head, tail or both)"
            ))),
        }
    }
}

impl fmt::Display for Corruption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corruption::Head => "head",
            Corruption::Tail => "tail",
            Corruption::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub dim: usize,
    pub norm: Norm,
    pub margin: f64,
    pub learning_rate: f64,
    pub epochs: usize,
    pub negatives: usize,
    pub corruption: Corruption,
    pub filtered: bool,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 50,
            norm: Norm::L1,
            margin: 1.0,
            learning_rate: 0.01,
            epochs: 100,
            negatives: 1,
            corruption: Corruption::Both,
            filtered: true,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), EmbedError> {
        let bad = |m: &str| Err(EmbedError::InvalidConfig(m.into()));
        if self.dim == 0 {
            return bad("dimension must be at least 1");
        }
        if !(self.margin > 0.0 && self.margin.is_finite()) {
            return bad("margin must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be positive");
        }
        if self.negatives == 0 {
            return bad("at least one negative per positive is required");
        }
        Ok(())
    }
}

/// Replaces the head or tail of a triple with a uniformly drawn entity.
#[derive(Debug, Clone)]
pub struct NegativeSampler {
    entities: Vec<Term>,
    relations: Vec<Term>,
    known: HashSet<Ids>,
    corruption: Corruption,
    filtered: bool,
}

impl NegativeSampler {
    /// With `filtered`, corruptions that are triples of `graph` are redrawn.
    pub fn new(
        model: &EmbeddingModel,
        graph: &Graph,
        corruption: Corruption,
        filtered: bool,
    ) -> Result<Self, EmbedError> {
        let known = graph.iter().map(|t| model.ids(&t)).collect::<Result<_, _>>()?;
        Ok(NegativeSampler {
            entities: model.entities().to_vec(),
            relations: model.relations().to_vec(),
            known,
            corruption,
            filtered,
        })
    }

    pub fn sample_ids(&self, t: Ids, rng: &mut impl Rng) -> Result<Ids, EmbedError> {
        let n = self.entities.len();
        if self.filtered && n < 2 {
            return Err(EmbedError::UnsatisfiableSampling);
        }
        let slot = match self.corruption {
            Corruption::Head => 0,
            Corruption::Tail => 2,
            Corruption::Both => {
                if rng.gen_bool(0.5) {
                    0
                } else {
                    2
                }
            }
        };
        let with = |x: usize| {
            let mut c = t;
            c[slot] = x;
            c
        };
        for _ in 0..MAX_RETRIES {
            let c = with(rng.gen_range(0..n));
            if !self.filtered || !self.known.contains(&c) {
                return Ok(c);
            }
        }
        let open: Vec<usize> = (0..n).filter(|&x| !self.known.contains(&with(x))).collect();
        if let Some(&x) = open.choose(rng) {
            return Ok(with(x));
        }
        let mut x = rng.gen_range(0..n - 1);
        if x >= t[slot] {
            x += 1;
        }
        Ok(with(x))
    }

    pub fn sample(&self, t: &Triple, rng: &mut impl Rng) -> Result<Triple, EmbedError> {
        let find = |terms: &[Term], x: &Term| terms.iter().position(|y| y == x);
        let unknown = |x: &Term| EmbedError::UnknownEntity(x.to_string());
        let ids = [
            find(&self.entities, &t.subject).ok_or_else(|| unknown(&t.subject))?,
            find(&self.relations, &t.predicate).ok_or_else(|| EmbedError::UnknownRelation(t.predicate.to_string()))?,
            find(&self.entities, &t.object).ok_or_else(|| unknown(&t.object))?,
        ];
        let c = self.sample_ids(ids, rng)?;
        Ok(Triple::new(
            self.entities[c[0]].clone(),
            self.relations[c[1]].clone(),
            self.entities[c[2]].clone(),
        ))
    }
}

/// The random stream used for initialization; training draws from a
/// separate stream of the same seed.
pub fn init_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn train_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Plain per-sample SGD over shuffled positives.
#[derive(Debug, Clone)]
pub struct Trainer {
    config: TrainConfig,
    rng: ChaCha8Rng,
    positives: Vec<Ids>,
    sampler: NegativeSampler,
}

impl Trainer {
    pub fn new(model: &EmbeddingModel, graph: &Graph, config: &TrainConfig) -> Result<Self, EmbedError> {
        config.validate()?;
        let sampler = NegativeSampler::new(model, graph, config.corruption, config.filtered)?;
        let mut positives: Vec<Ids> = graph.iter().map(|t| model.ids(&t)).collect::<Result<_, _>>()?;
        positives.sort_unstable();
        Ok(Trainer {
            config: config.clone(),
            rng: train_rng(config.seed),
            positives,
            sampler,
        })
    }

    /// One pass over the positives; returns the mean hinge loss over all
    /// positive/negative pairs. Entity vectors are renormalized afterwards.
    pub fn train_epoch(&mut self, model: &mut EmbeddingModel) -> Result<f64, EmbedError> {
        let mut order = self.positives.clone();
        order.shuffle(&mut self.rng);
        let mut total = 0.0;
        let mut pairs = 0usize;
        for pos in order {
            for _ in 0..self.config.negatives {
                let neg = self.sampler.sample_ids(pos, &mut self.rng)?;
                let (loss, grad) = model.hinge_ids(pos, neg, self.config.margin);
                if loss > 0.0 {
                    model.apply(&grad, self.config.learning_rate);
                }
                total += loss;
                pairs += 1;
            }
        }
        model.normalize_entities();
        Ok(if pairs == 0 { 0.0 } else { total / pairs as f64 })
    }
}

/// Initializes a model on `graph` and trains it for `config.epochs`
/// epochs. Returns the model and the mean loss of every epoch.
pub fn train(graph: &Graph, config: &TrainConfig) -> Result<(EmbeddingModel, Vec<f64>), EmbedError> {
    config.validate()?;
    let mut model = EmbeddingModel::init(graph, config.dim, config.norm, &mut init_rng(config.seed))?;
    let mut trainer = Trainer::new(&model, graph, config)?;
    let losses = (0..config.epochs)
        .map(|_| trainer.train_epoch(&mut model))
        .collect::<Result<_, _>>()?;
    Ok((model, losses))
}
