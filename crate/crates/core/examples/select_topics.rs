//! Chooses the number of topics by BIC on a synthetic three-topic corpus,
//! then overrides the choice.
//!
//!     cargo run --release --example select_topics

use corpuslens::lda::{sample_corpus, select_k, LdaConfig, SimulationSpec};

fn main() -> corpuslens::Result<()> {
    let spec = SimulationSpec {
        k: 3,
        v: 60,
        m: 300,
        doc_len: 120,
        alpha: 0.1,
        delta: 0.1,
        seed: 3,
    };
    let sim = sample_corpus(&spec)?;
    let template = LdaConfig {
        alpha: Some(0.1),
        ..LdaConfig::default()
    };
    let (result, models) = select_k(&sim.dtm, 2, 6, &template)?;
    for (k, bic) in result.k_values.iter().zip(&result.bic) {
        println!("k={k}  BIC={bic:.1}");
    }
    println!("lowest BIC at k={} (penalty {}, n = {})", result.best_k, result.parameter_count, result.observation_count);

    let result = result.with_choice(2)?;
    let chosen = &models[result.index_of(result.chosen_k).unwrap()];
    println!("chosen k={} with {} topics fitted", result.chosen_k, chosen.k());
    Ok(())
}
