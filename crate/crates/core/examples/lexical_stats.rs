//! Key features and the most frequent words of a corpus.
//!
//!     cargo run --example lexical_stats

use std::path::Path;

use corpuslens::corpus::load_texts;
use corpuslens::dtm::{lexical_stats, rank_frequencies, term_frequencies, LexicalStats};
use corpuslens::pipeline::stats_report;
use corpuslens::textprep::{preprocess_corpus, PrepConfig};

fn main() -> corpuslens::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let prep = PrepConfig::from_files(Some(&data.join("stopwords.txt")), Some(&data.join("lemmas.tsv")), None, 3, true)?;
    let docs = preprocess_corpus(&load_texts(&data.join("interviews"))?, &prep);

    print!("{}", stats_report(&lexical_stats(&docs)?));
    println!("\nMost used words");
    for (term, f) in rank_frequencies(term_frequencies(&docs)).iter().take(10) {
        println!("  {term:<12} {f}");
    }

    // the same ratios from published counts
    let s = LexicalStats::from_counts(30, 112_026, 4_155, 2_000)?;
    println!("\nTTR for 4,155 types over 112,026 tokens: {:.1}%", 100.0 * s.ttr);
    Ok(())
}
