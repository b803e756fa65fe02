//! Drives the batch commands from a TOML configuration, the way the
//! command-line tool does.
//!
//!     cargo run --example run_config

use std::path::Path;

use corpuslens::config::RunConfig;
use corpuslens::pipeline::{cmd_cooccur, cmd_stats, cmd_topics};

fn main() -> corpuslens::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let out = std::env::temp_dir().join("corpuslens-run");
    let toml = format!(
        r#"output_dir = "{out}"

[corpus]
dir = "{data}/interviews"
metadata = "{data}/metadata.csv"
stopwords = "{data}/stopwords.txt"
lemmas = "{data}/lemmas.tsv"
collocations = "{data}/collocations.txt"

[preprocess]
min_term_freq = 2

[topics]
k_min = 2
k_max = 4
alpha = 0.5

[cooccur]
focal_terms = ["work", "family"]
"#,
        out = out.display(),
        data = data.display()
    );
    let config = RunConfig::from_toml(&toml)?;

    let stats = cmd_stats(&config)?;
    println!("{} tokens, {} types", stats.n_tokens, stats.n_types);
    let topics = cmd_topics(&config)?;
    println!("BIC {:?} -> k={}", topics.selection.bic, topics.selection.chosen_k);
    let nets = cmd_cooccur(&config)?;
    println!("{} ego networks", nets.len());

    let mut files: Vec<_> = std::fs::read_dir(&out)
        .expect("output dir")
        .map(|e| e.expect("entry").file_name().to_string_lossy().into_owned())
        .collect();
    files.sort();
    println!("{}: {}", out.display(), files.join(" "));
    Ok(())
}
