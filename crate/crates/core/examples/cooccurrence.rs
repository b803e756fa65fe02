//! LLR rankings around a focal term and its ego network.
//!
//!     cargo run --example cooccurrence [focal]

use std::path::Path;

use corpuslens::cooccur::{build_boolean_contexts, cooccurring_terms, ego_network, llr, ContingencyCounts, EgoOptions};
use corpuslens::corpus::load_texts;
use corpuslens::dtm::ContextUnit;
use corpuslens::textprep::{preprocess_corpus, PrepConfig};

fn main() -> corpuslens::Result<()> {
    let focal = std::env::args().nth(1).unwrap_or_else(|| "work".into());
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let prep = PrepConfig::from_files(
        Some(&data.join("stopwords.txt")),
        Some(&data.join("lemmas.tsv")),
        Some(&data.join("collocations.txt")),
        3,
        true,
    )?;
    let docs = preprocess_corpus(&load_texts(&data.join("interviews"))?, &prep);
    let contexts = build_boolean_contexts(&docs, ContextUnit::Sentence)?;
    println!("{} sentence contexts", contexts.n_rows());

    println!("\nterm            LLR   M_i  M_j  M_ij");
    for a in cooccurring_terms(&contexts, &focal, 10)? {
        println!("{:<12} {:>7.3} {:>4} {:>4} {:>5}", a.term, a.llr, a.m_i, a.m_j, a.m_ij);
    }

    let opts = EgoOptions { depth: 2, top_n: 5, fanout: 2, ..EgoOptions::default() };
    let net = ego_network(&contexts, &focal, &opts)?.to_network();
    println!("\n{}", net.to_dot());

    let perfect = ContingencyCounts::new(10, 5, 5, 5)?;
    println!("two terms always together in 5 of 10 contexts: LLR = {:.4}", llr(&perfect)?);
    Ok(())
}
