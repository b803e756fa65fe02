//! Cleans the sample interviews and prints the document-term matrix.
//!
//!     cargo run --example preprocess

use std::path::Path;

use corpuslens::corpus::load_corpus;
use corpuslens::dtm::{build_dtm, trim_dtm, ContextUnit, Weighting};
use corpuslens::textprep::{preprocess_corpus, PrepConfig};

fn main() -> corpuslens::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let corpus = load_corpus(&data.join("interviews"), &data.join("metadata.csv"))?;
    let prep = PrepConfig::from_files(
        Some(&data.join("stopwords.txt")),
        Some(&data.join("lemmas.tsv")),
        Some(&data.join("collocations.txt")),
        3,
        true,
    )?;

    let docs = preprocess_corpus(&corpus, &prep);
    for d in &docs {
        println!("{}: {}", d.id, d.tokens().collect::<Vec<_>>().join(" "));
    }

    let dtm = trim_dtm(&build_dtm(&docs, Weighting::Count, ContextUnit::Document)?, 3)?;
    println!("\n{} documents x {} terms kept at frequency >= 3", dtm.n_rows(), dtm.n_terms());
    for (r, c, n) in dtm.triplets().take(12) {
        println!("{},{},{}", dtm.rows()[r], dtm.vocab().term(c), n);
    }
    Ok(())
}
