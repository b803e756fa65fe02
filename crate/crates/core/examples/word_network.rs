//! Word-cloud sizes and the frequency-based network of the top words,
//! written as GraphML and SVG to the system temp directory.
//!
//!     cargo run --example word_network

use std::path::Path;

use corpuslens::corpus::load_texts;
use corpuslens::dtm::{build_dtm, rank_frequencies, term_frequencies, ContextUnit, Weighting};
use corpuslens::explore::{term_network, wordcloud_data};
use corpuslens::svg;
use corpuslens::textprep::{preprocess_corpus, PrepConfig};

fn main() -> corpuslens::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let prep = PrepConfig::from_files(
        Some(&data.join("stopwords.txt")),
        Some(&data.join("lemmas.tsv")),
        Some(&data.join("collocations.txt")),
        3,
        true,
    )?;
    let docs = preprocess_corpus(&load_texts(&data.join("interviews"))?, &prep);

    let ranked = rank_frequencies(term_frequencies(&docs));
    for w in wordcloud_data(&ranked, 8, 12.0, 48.0)? {
        println!("{:<12} {:>3}  size {:.1}", w.term, w.frequency, w.size);
    }

    let dtm = build_dtm(&docs, Weighting::Count, ContextUnit::Sentence)?;
    let net = term_network(&dtm, 8)?;
    let out = std::env::temp_dir();
    std::fs::write(out.join("word_network.graphml"), net.to_graphml()).expect("write graphml");
    std::fs::write(out.join("word_network.svg"), svg::network(&net)).expect("write svg");
    println!("\n{} edges; files in {}", net.edges.len(), out.display());
    for &(a, b, w) in net.edges.iter().filter(|e| e.2 >= 2.0) {
        println!("  {} -- {}  {}", net.nodes[a].0, net.nodes[b].0, w);
    }
    Ok(())
}
