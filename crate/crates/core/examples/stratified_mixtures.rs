//! Groups interviews by entry channel and models each group as a mixture
//! of topics.
//!
//!     cargo run --example stratified_mixtures

use std::path::Path;

use corpuslens::corpus::{aggregate_by, load_corpus};
use corpuslens::dtm::{build_dtm, trim_dtm, ContextUnit, Weighting};
use corpuslens::lda::{doc_topic_mixture, fit_lda, topic_terms, LdaConfig};
use corpuslens::textprep::{preprocess_corpus, PrepConfig};

fn main() -> corpuslens::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let corpus = load_corpus(&data.join("interviews"), &data.join("metadata.csv"))?;
    let groups = aggregate_by(&corpus, "entry_channel")?;
    println!("{} interviews -> {} subcorpora ({})", corpus.len(), groups.len(), groups.provenance());

    let prep = PrepConfig::from_files(
        Some(&data.join("stopwords.txt")),
        Some(&data.join("lemmas.tsv")),
        Some(&data.join("collocations.txt")),
        3,
        true,
    )?;
    let docs = preprocess_corpus(&groups, &prep);
    let dtm = trim_dtm(&build_dtm(&docs, Weighting::Count, ContextUnit::Document)?, 2)?;

    let model = fit_lda(&dtm, &LdaConfig { alpha: Some(0.5), ..LdaConfig::new(2) })?;
    for (t, terms) in topic_terms(&model, 5).iter().enumerate() {
        let words: Vec<String> = terms.iter().map(|(w, p)| format!("{w} {p:.3}")).collect();
        println!("topic {}: {}", t + 1, words.join(", "));
    }
    println!();
    for (group, theta) in doc_topic_mixture(&model) {
        let shares: Vec<String> = theta.iter().map(|x| format!("{x:.2}")).collect();
        println!("{group:<8} {}", shares.join("  "));
    }
    Ok(())
}
