use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use kg_core::io::parse_term;
use kg_core::{PrefixMap, Term};
use kg_embed::{
    evaluate, predict_links, read_model, train, write_model, Corruption, EmbeddingModel, LinkQuery, Metrics, Norm,
    TrainConfig,
};

use crate::{load_graph, CmdResult, Failure, InputFormat, EXIT_OK};

/// Environment variable that replaces the `--seed` value when set.
pub const SEED_ENV: &str = "KB_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    L1,
    L2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CorruptionArg {
    Head,
    Tail,
    Both,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    graph: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 50)]
    dim: usize,
    #[arg(long, default_value_t = 1.0)]
    margin: f64,
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    #[arg(long, default_value_t = 100)]
    epochs: usize,
    /// Replaced by the KB_SEED environment variable when that is set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "l1")]
    norm: NormArg,
    /// Negatives drawn per positive.
    #[arg(long, default_value_t = 1)]
    negatives: usize,
    #[arg(long, value_enum, default_value = "both")]
    corruption: CorruptionArg,
    /// Allow negatives that are training triples.
    #[arg(long)]
    unfiltered: bool,
    #[arg(long, value_enum)]
    format: Option<InputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum EmbedCommand {
    /// Train a TransE model and write it to --model.
    Train(TrainArgs),
    /// Filtered ranking metrics of a model on held-out triples.
    Eval {
        train: PathBuf,
        test: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Top-k completions of (subject, relation, ?) or (?, relation, object).
    Predict {
        graph: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, conflicts_with = "object", required_unless_present = "object")]
        subject: Option<String>,
        #[arg(long)]
        object: Option<String>,
        #[arg(long)]
        relation: String,
        #[arg(short, long, default_value_t = 10)]
        k: usize,
        /// Skip completions that are already in the graph.
        #[arg(long)]
        filtered: bool,
    },
}

pub fn run(cmd: EmbedCommand, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        EmbedCommand::Train(args) => cmd_train(args, out, err),
        EmbedCommand::Eval {
            train,
            test,
            model,
            json,
        } => cmd_eval(&train, &test, &model, json, out, err),
        EmbedCommand::Predict {
            graph,
            model,
            subject,
            object,
            relation,
            k,
            filtered,
        } => cmd_predict(&graph, &model, subject, object, &relation, k, filtered, out, err),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::usage(format!("stdout: {e}")))
}

fn seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| Failure::usage(format!("{SEED_ENV}=`{v}`: {e}"))),
        Err(_) => Ok(flag),
    }
}

fn cmd_train(a: TrainArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (g, _) = load_graph(&a.graph, a.format, err)?;
    let config = TrainConfig {
        dim: a.dim,
        norm: match a.norm {
            NormArg::L1 => Norm::L1,
            NormArg::L2 => Norm::L2,
        },
        margin: a.margin,
        learning_rate: a.lr,
        epochs: a.epochs,
        negatives: a.negatives,
        corruption: match a.corruption {
            CorruptionArg::Head => Corruption::Head,
            CorruptionArg::Tail => Corruption::Tail,
            CorruptionArg::Both => Corruption::Both,
        },
        filtered: !a.unfiltered,
        seed: seed(a.seed)?,
    };
    let (model, losses) = train(&g, &config).map_err(|e| Failure::usage(e.to_string()))?;
    fs::write(&a.model, write_model(&model)).map_err(|e| Failure::usage(format!("{}: {e}", a.model.display())))?;
    let mut text = String::from("epoch\tloss\n");
    for (i, l) in losses.iter().enumerate() {
        text.push_str(&format!("{}\t{l:.6}\n", i + 1));
    }
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn load_model(path: &Path) -> Result<EmbeddingModel, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    read_model(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn metrics_json(m: &Metrics) -> serde_json::Value {
    json!({
        "count": m.count,
        "mean_rank": m.mean_rank,
        "mrr": m.mrr,
        "hits@1": m.hits_at_1,
        "hits@3": m.hits_at_3,
        "hits@10": m.hits_at_10,
    })
}

fn metrics_row(name: &str, m: &Metrics) -> String {
    format!(
        "{name}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n",
        m.count, m.mean_rank, m.mrr, m.hits_at_1, m.hits_at_3, m.hits_at_10
    )
}

fn cmd_eval(train: &Path, test: &Path, model: &Path, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (train_g, _) = load_graph(train, None, err)?;
    let (test_g, _) = load_graph(test, None, err)?;
    let model = load_model(model)?;
    let test: Vec<_> = test_g.iter().collect();
    let report = evaluate(&model, &train_g, &test).map_err(|e| Failure::query(e.to_string()))?;
    let text = if json {
        let per: serde_json::Map<String, serde_json::Value> = report
            .per_relation
            .iter()
            .map(|(r, m)| (r.to_string(), metrics_json(m)))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({
            "overall": metrics_json(&report.overall),
            "per_relation": per,
        }))
        .expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::from("relation\tcount\tmean_rank\tmrr\thits@1\thits@3\thits@10\n");
        s.push_str(&metrics_row("all", &report.overall));
        for (r, m) in &report.per_relation {
            s.push_str(&metrics_row(&r.to_string(), m));
        }
        s
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

/// Reads a term given on the command line: N-Triples syntax, a prefixed
/// name known to `prefixes`, or else a bare IRI.
pub fn resolve_term(text: &str, prefixes: &PrefixMap) -> Result<Term, Failure> {
    let bad = |e: String| Failure::usage(format!("term `{text}`: {e}"));
    if text.starts_with('<') || text.starts_with("_:") || text.starts_with('"') {
        return parse_term(text).map_err(|e| bad(e.to_string()));
    }
    if let Some((prefix, _)) = text.split_once(':') {
        if prefixes.get(prefix).is_some() {
            return prefixes.expand_qname(text).map(Term::iri).map_err(|e| bad(e.to_string()));
        }
    }
    Ok(Term::iri(text))
}

#[allow(clippy::too_many_arguments)]
fn cmd_predict(
    graph: &Path,
    model: &Path,
    subject: Option<String>,
    object: Option<String>,
    relation: &str,
    k: usize,
    filtered: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let (g, prefixes) = load_graph(graph, None, err)?;
    let model = load_model(model)?;
    let relation = resolve_term(relation, &prefixes)?;
    let query = match (subject, object) {
        (Some(s), _) => LinkQuery::Tail {
            subject: resolve_term(&s, &prefixes)?,
            relation,
        },
        (None, Some(o)) => LinkQuery::Head {
            relation,
            object: resolve_term(&o, &prefixes)?,
        },
        (None, None) => return Err(Failure::usage("one of --subject or --object is required")),
    };
    let ranked = predict_links(&model, &g, &query, k, filtered).map_err(|e| Failure::query(e.to_string()))?;
    let mut text = String::from("rank\tentity\tscore\n");
    for (i, (t, s)) in ranked.iter().enumerate() {
        text.push_str(&format!("{}\t{t}\t{s:.6}\n", i + 1));
    }
    write_out(out, &text)?;
    Ok(EXIT_OK)
}
