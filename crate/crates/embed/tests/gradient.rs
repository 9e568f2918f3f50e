use kg_core::Term;
use kg_embed::{EmbeddingModel, Ids, Norm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIM: usize = 4;
const ENTITIES: usize = 6;
const RELATIONS: usize = 2;
const STEP: f64 = 1e-6;

fn random_model(rng: &mut ChaCha8Rng, norm: Norm) -> EmbeddingModel {
    let mut v = |n: usize, kind: &str| -> Vec<(Term, Vec<f64>)> {
        (0..n)
            .map(|i| {
                let t = Term::iri(format!("http://e/{kind}{i}"));
                (t, (0..DIM).map(|_| rng.gen_range(-1.0..1.0)).collect())
            })
            .collect()
    };
    let e = v(ENTITIES, "e");
    let r = v(RELATIONS, "r");
    EmbeddingModel::from_vectors(DIM, norm, e, r).unwrap()
}

/// Every parameter, flattened: entities first, then relations.
fn flat_gradient(model: &EmbeddingModel, pos: Ids, neg: Ids, margin: f64) -> Vec<f64> {
    let (_, g) = model.hinge_ids(pos, neg, margin);
    let mut out = vec![0.0; (ENTITIES + RELATIONS) * DIM];
    for (i, v) in g.entities {
        out[i * DIM..(i + 1) * DIM].copy_from_slice(&v);
    }
    for (i, v) in g.relations {
        out[(ENTITIES + i) * DIM..(ENTITIES + i + 1) * DIM].copy_from_slice(&v);
    }
    out
}

fn central_differences(model: &EmbeddingModel, pos: Ids, neg: Ids, margin: f64) -> Vec<f64> {
    let loss = |m: &EmbeddingModel| m.hinge_ids(pos, neg, margin).0;
    let mut out = Vec::new();
    for k in 0..(ENTITIES + RELATIONS) * DIM {
        let (row, col) = (k / DIM, k % DIM);
        let nudge = |delta: f64| {
            let mut m = model.clone();
            if row < ENTITIES {
                m.entity_mut(row)[col] += delta;
            } else {
                m.relation_mut(row - ENTITIES)[col] += delta;
            }
            loss(&m)
        };
        out.push((nudge(STEP) - nudge(-STEP)) / (2.0 * STEP));
    }
    out
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(m: &EmbeddingModel, [s, p, o]: Ids) -> Vec<f64> {
    (0..DIM).map(|i| m.entity(s)[i] + m.relation(p)[i] - m.entity(o)[i]).collect()
}

fn check(norm: Norm, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut active = 0;
    while checked < 100 {
        let model = random_model(&mut rng, norm);
        let margin = rng.gen_range(0.1..3.0);
        let pos = [rng.gen_range(0..ENTITIES), rng.gen_range(0..RELATIONS), rng.gen_range(0..ENTITIES)];
        let mut neg = pos;
        let slot = if rng.gen_bool(0.5) { 0 } else { 2 };
        neg[slot] = rng.gen_range(0..ENTITIES);
        if neg == pos {
            continue;
        }
        let slack = margin + norm.length(&residual(&model, pos)) - norm.length(&residual(&model, neg));
        if slack.abs() < 1e-6 {
            continue;
        }
        // L1 is not differentiable where a residual component vanishes.
        if norm == Norm::L1
            && [pos, neg].iter().any(|&t| residual(&model, t).iter().any(|x| x.abs() < 1e-4))
        {
            continue;
        }
        let analytic = flat_gradient(&model, pos, neg, margin);
        let numeric = central_differences(&model, pos, neg, margin);
        let diff: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, n)| a - n).collect();
        let scale = norm2(&analytic).max(norm2(&numeric));
        if scale == 0.0 {
            assert_eq!(norm2(&diff), 0.0);
        } else {
            let rel = norm2(&diff) / scale;
            assert!(rel < 1e-4, "{norm} sample {checked}: relative error {rel}");
            active += 1;
        }
        checked += 1;
    }
    assert!(active >= 50, "only {active} samples had an active hinge");
}

#[test]
fn l1_gradient_matches_finite_differences() {
    check(Norm::L1, 11);
}

#[test]
fn l2_gradient_matches_finite_differences() {
    check(Norm::L2, 12);
}
