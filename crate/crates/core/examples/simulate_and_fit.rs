//! Draws a corpus from two topics with disjoint vocabularies, fits LDA and
//! checks how well the topics come back.
//!
//!     cargo run --release --example simulate_and_fit

use corpuslens::lda::{block_topics, fit_lda, match_topics, sample_from_topics, topic_terms, LdaConfig};

fn main() -> corpuslens::Result<()> {
    let truth = block_topics(2, 40);
    let sim = sample_from_topics(&truth, 200, 100, 0.1, 7)?;
    println!("{} documents, {} tokens", sim.dtm.n_rows(), sim.dtm.total());

    let config = LdaConfig {
        alpha: Some(0.1),
        em_rel_tol: 1e-6,
        seed: 7,
        ..LdaConfig::new(2)
    };
    let model = fit_lda(&sim.dtm, &config)?;
    let d = &model.diagnostics;
    println!("{} EM iterations, converged: {}, bound {:.2}", d.n_iter, d.converged, d.log_likelihood_bound);

    let m = match_topics(&model.beta, &truth)?;
    for (e, terms) in topic_terms(&model, 10).iter().enumerate() {
        let words: Vec<&str> = terms.iter().map(|t| t.0.as_str()).collect();
        println!(
            "topic {e} -> true {}  precision {:.1}  {}",
            m.permutation[e],
            m.precision[e],
            words.join(" ")
        );
    }
    Ok(())
}
