//! End-to-end commands. Each reads a [`RunConfig`], writes its outputs under
//! `output_dir` with fixed file names, and returns the main result.
//!
//! | command    | files |
//! |------------|-------|
//! | stats      | `stats.csv`, `stats.txt` |
//! | preprocess | `tokens.tsv`, `frequencies.csv`, `dtm.csv`, `vocabulary.txt` |
//! | topics     | `bic.csv`, `bic.svg`, `model_selection.json`, `topic_terms.csv`, `mixture.csv`, `model.json` |
//! | cooccur    | per focal term `cooccur_<term>.csv`, `ego_<term>.graphml`, `.dot`, `.svg` |
//! | simulate   | `dtm.csv`, `vocabulary.txt`, `truth.json` |
//! | explore    | `frequencies.csv`, `frequencies.svg`, `wordcloud.csv`, `word_network.graphml`, `.dot`, `.svg` |
//!
//! Every command also writes `effective_config.toml`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::cooccur::{build_boolean_contexts, ego_network, Association, CooccurrenceIndex, EgoNetwork};
use crate::corpus::{aggregate_by, load_corpus, load_texts, Corpus};
use crate::dtm::{build_dtm, lexical_stats, rank_frequencies, term_frequencies, trim_dtm, ContextUnit, DocTermMatrix, LexicalStats, Weighting};
use crate::error::{Error, Result};
use crate::explore::{term_network, wordcloud_data, write_frequency_csv, write_wordcloud_csv};
use crate::lda::{
    doc_topic_mixture, sample_corpus, select_k, topic_terms, write_bic_csv, write_bic_svg, LdaModel, ModelSelectionResult,
    SyntheticCorpus,
};
use crate::network::Network;
use crate::svg;
use crate::textprep::{preprocess_corpus, TokenizedDoc};

fn write(path: &Path, content: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io(path, e))
}

fn write_network(net: &Network, cfg: &RunConfig, stem: &str) -> Result<()> {
    write(&cfg.output(&format!("{stem}.graphml")), net.to_graphml())?;
    write(&cfg.output(&format!("{stem}.dot")), net.to_dot())?;
    write(&cfg.output(&format!("{stem}.svg")), svg::network(net))
}

pub fn load_input(cfg: &RunConfig) -> Result<Corpus> {
    let dir = cfg
        .corpus
        .dir
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("no corpus directory given".into()))?;
    match &cfg.corpus.metadata {
        Some(meta) => load_corpus(dir, meta),
        None => load_texts(dir),
    }
}

fn tokenize_input(cfg: &RunConfig, corpus: &Corpus) -> Result<Vec<TokenizedDoc>> {
    let docs = preprocess_corpus(corpus, &cfg.prep_config()?);
    if docs.iter().all(TokenizedDoc::is_empty) {
        return Err(Error::EmptyCorpus);
    }
    Ok(docs)
}

/// Removes tokens whose corpus frequency is below `min_freq`.
pub fn drop_rare_tokens(docs: &[TokenizedDoc], min_freq: u64) -> Vec<TokenizedDoc> {
    let freq: HashMap<String, u64> = term_frequencies(docs).into_iter().collect();
    docs.iter()
        .map(|d| {
            let sentences = d
                .sentences
                .iter()
                .map(|s| s.iter().filter(|t| freq[t.as_str()] >= min_freq).cloned().collect::<Vec<_>>())
                .filter(|s| !s.is_empty())
                .collect();
            TokenizedDoc::new(d.id.clone(), sentences)
        })
        .collect()
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<LexicalStats> {
    let docs = tokenize_input(cfg, &load_input(cfg)?)?;
    let stats = lexical_stats(&docs)?;
    cfg.prepare_output()?;

    let rows = [
        ("documents", stats.n_docs.to_string()),
        ("tokens", stats.n_tokens.to_string()),
        ("types", stats.n_types.to_string()),
        ("ttr", stats.ttr.to_string()),
        ("hapax_pct", (100.0 * stats.hapax_pct).to_string()),
        ("guiraud", stats.guiraud.to_string()),
    ];
    let path = cfg.output("stats.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["feature", "value"])?;
    for (k, v) in &rows {
        w.write_record([*k, v.as_str()])?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;
    write(&cfg.output("stats.txt"), stats_report(&stats))?;
    Ok(stats)
}

/// Human-readable key features table.
pub fn stats_report(s: &LexicalStats) -> String {
    format!(
        "Key features of the corpus\n\
         Documents       {}\n\
         Tokens          {}\n\
         Types           {}\n\
         TTR             {:.1}%\n\
         Hapax           {:.1}%\n\
         Guiraud index   {:.2}\n",
        s.n_docs,
        s.n_tokens,
        s.n_types,
        100.0 * s.ttr,
        100.0 * s.hapax_pct,
        s.guiraud
    )
}

pub fn cmd_preprocess(cfg: &RunConfig) -> Result<Vec<TokenizedDoc>> {
    let docs = tokenize_input(cfg, &load_input(cfg)?)?;
    cfg.prepare_output()?;

    let mut tsv = String::from("doc_id\tsentence\ttokens\n");
    for d in &docs {
        for (i, s) in d.sentences.iter().enumerate() {
            let _ = writeln!(tsv, "{}\t{}\t{}", d.id, i, s.join(" "));
        }
    }
    write(&cfg.output("tokens.tsv"), tsv)?;
    write_frequency_csv(&rank_frequencies(term_frequencies(&docs)), &cfg.output("frequencies.csv"))?;

    let dtm = build_dtm(&docs, Weighting::Count, cfg.matrix.context)?;
    let mut dtm = trim_dtm(&dtm, cfg.preprocess.min_term_freq)?;
    if cfg.matrix.weighting == Weighting::Boolean {
        dtm = dtm.to_boolean();
    }
    dtm.write_triplets(&cfg.output("dtm.csv"), &cfg.output("vocabulary.txt"))?;
    Ok(docs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopicsOutcome {
    pub selection: ModelSelectionResult,
    pub model: LdaModel,
}

/// Count matrix for topic modelling: either the configured triplet file or
/// the corpus, preprocessed, optionally aggregated, and trimmed.
pub fn topic_matrix(cfg: &RunConfig) -> Result<DocTermMatrix> {
    if let Some(path) = &cfg.corpus.dtm {
        let vocab = cfg
            .corpus
            .vocabulary
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("a triplet matrix needs its vocabulary file".into()))?;
        return DocTermMatrix::read_triplets(path, vocab, Weighting::Count, ContextUnit::Document);
    }
    let mut corpus = load_input(cfg)?;
    if let Some(var) = &cfg.topics.group_by {
        corpus = aggregate_by(&corpus, var)?;
    }
    let docs = tokenize_input(cfg, &corpus)?;
    let dtm = build_dtm(&docs, Weighting::Count, ContextUnit::Document)?;
    trim_dtm(&dtm, cfg.preprocess.min_term_freq)
}

pub fn cmd_topics(cfg: &RunConfig) -> Result<TopicsOutcome> {
    let dtm = topic_matrix(cfg)?;
    let (k_min, k_max) = cfg.topics.k_range();
    let (mut selection, models) = select_k(&dtm, k_min, k_max, &cfg.topics.lda_config(k_min))?;
    if let Some(k) = cfg.topics.choose_k {
        selection = selection.with_choice(k)?;
    }
    let model = models
        .into_iter()
        .find(|m| m.k() == selection.chosen_k)
        .expect("chosen k was fitted");

    cfg.prepare_output()?;
    write_bic_csv(&selection, &cfg.output("bic.csv"))?;
    write_bic_svg(&selection, &cfg.output("bic.svg"))?;
    #[derive(Serialize)]
    struct SelectionExport<'a> {
        #[serde(flatten)]
        result: &'a ModelSelectionResult,
        parameters: String,
        observations: String,
        n_observations: u64,
        n_terms: usize,
        n_documents: usize,
    }
    let export = SelectionExport {
        result: &selection,
        parameters: selection.parameter_count.to_string(),
        observations: selection.observation_count.to_string(),
        n_observations: dtm.total(),
        n_terms: dtm.n_terms(),
        n_documents: dtm.n_rows(),
    };
    write(&cfg.output("model_selection.json"), serde_json::to_string_pretty(&export)? + "\n")?;

    let path = cfg.output("topic_terms.csv");
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["topic", "rank", "term", "probability"])?;
    for (t, terms) in topic_terms(&model, cfg.topics.top_terms).iter().enumerate() {
        for (r, (term, p)) in terms.iter().enumerate() {
            w.write_record([(t + 1).to_string(), (r + 1).to_string(), term.clone(), p.to_string()])?;
        }
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    let path = cfg.output("mixture.csv");
    let mut w = csv::Writer::from_path(&path)?;
    let mut header = vec!["doc_id".to_string()];
    header.extend((1..=model.k()).map(|t| format!("topic_{t}")));
    w.write_record(&header)?;
    for (id, theta) in doc_topic_mixture(&model) {
        let mut rec = vec![id];
        rec.extend(theta.iter().map(f64::to_string));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    model.write_json(&cfg.output("model.json"))?;
    Ok(TopicsOutcome { selection, model })
}

/// File-name-safe form of a term.
fn file_stem(term: &str) -> String {
    term.chars()
        .map(|c| if c.is_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect()
}

pub fn write_associations_csv(rows: &[Association], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["term", "llr", "m_i", "m_j", "m_ij"])?;
    for a in rows {
        w.write_record([a.term.clone(), a.llr.to_string(), a.m_i.to_string(), a.m_j.to_string(), a.m_ij.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn cmd_cooccur(cfg: &RunConfig) -> Result<Vec<EgoNetwork>> {
    if cfg.cooccur.focal_terms.is_empty() {
        return Err(Error::InvalidParameter("no focal terms given".into()));
    }
    let docs = tokenize_input(cfg, &load_input(cfg)?)?;
    let docs = drop_rare_tokens(&docs, cfg.preprocess.min_term_freq);
    let bdtm = build_boolean_contexts(&docs, cfg.cooccur.context)?;
    let index = CooccurrenceIndex::new(&bdtm);
    let focal_cols = cfg
        .cooccur
        .focal_terms
        .iter()
        .map(|f| index.column(f))
        .collect::<Result<Vec<_>>>()?;

    cfg.prepare_output()?;
    let opts = cfg.cooccur.ego_options();
    let mut nets = Vec::new();
    for (focal, col) in cfg.cooccur.focal_terms.iter().zip(focal_cols) {
        let stem = file_stem(focal);
        let mut ranked = index.associations(col);
        ranked.truncate(cfg.cooccur.top_n);
        write_associations_csv(&ranked, &cfg.output(&format!("cooccur_{stem}.csv")))?;
        let ego = ego_network(&bdtm, focal, &opts)?;
        write_network(&ego.to_network(), cfg, &format!("ego_{stem}"))?;
        nets.push(ego);
    }
    Ok(nets)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<SyntheticCorpus> {
    let spec = cfg.simulate.spec();
    let sim = sample_corpus(&spec)?;
    cfg.prepare_output()?;
    sim.dtm.write_triplets(&cfg.output("dtm.csv"), &cfg.output("vocabulary.txt"))?;
    #[derive(Serialize)]
    struct Truth<'a> {
        spec: &'a crate::lda::SimulationSpec,
        doc_ids: Vec<String>,
        beta: &'a [Vec<f64>],
        theta: &'a [Vec<f64>],
        assignments: &'a [Vec<usize>],
    }
    let truth = Truth {
        spec: &spec,
        doc_ids: sim.dtm.rows().iter().map(|r| r.to_string()).collect(),
        beta: &sim.true_beta,
        theta: &sim.true_theta,
        assignments: &sim.true_assignments,
    };
    write(&cfg.output("truth.json"), serde_json::to_string(&truth)? + "\n")?;
    Ok(sim)
}

pub fn cmd_explore(cfg: &RunConfig) -> Result<Network> {
    let docs = tokenize_input(cfg, &load_input(cfg)?)?;
    let e = &cfg.explore;
    let ranked = rank_frequencies(term_frequencies(&docs));
    cfg.prepare_output()?;

    let top: Vec<(String, u64)> = ranked.iter().take(e.top_n).cloned().collect();
    write_frequency_csv(&top, &cfg.output("frequencies.csv"))?;
    let bars: Vec<(String, f64)> = top.iter().map(|(t, f)| (t.clone(), *f as f64)).collect();
    write(
        &cfg.output("frequencies.svg"),
        svg::bar_chart(&bars, &format!("Most used {} words", bars.len())),
    )?;
    let cloud = wordcloud_data(&ranked, e.cloud_terms, e.cloud_min_size, e.cloud_max_size)?;
    write_wordcloud_csv(&cloud, &cfg.output("wordcloud.csv"))?;

    let dtm = build_dtm(&docs, Weighting::Count, e.context)?;
    let net = term_network(&dtm, e.network_top_n.min(dtm.n_terms()))?;
    write_network(&net, cfg, "word_network")?;
    Ok(net)
}
