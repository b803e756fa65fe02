//! Smoothed latent Dirichlet allocation.
//!
//! Documents draw topic proportions θ ~ Dirichlet(α); topics draw term
//! distributions β ~ Dirichlet(δ); each token picks a topic z ~ θ and then a
//! term w ~ β_z. Fitting is variational EM with fixed symmetric priors: the
//! E-step runs coordinate ascent on per-document variational parameters
//! (φ, γ), and the M-step sets β to δ-smoothed expected counts.

mod matching;
mod select;
mod simulate;
mod vem;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matching::{match_topics, TopicMatch};
pub use select::{bic, bic_with, select_k, write_bic_csv, write_bic_svg, ModelSelectionResult, ObservationCount, ParameterCount};
pub use simulate::{block_topics, sample_corpus, sample_dirichlet, sample_from_topics, SimulationSpec, SyntheticCorpus};
pub use vem::{elbo, fit_lda, smoothing_term};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    /// Number of topics.
    pub k: usize,
    /// Symmetric document-topic prior. `None` means 50/k.
    pub alpha: Option<f64>,
    /// Symmetric topic-term prior.
    pub delta: f64,
    pub seed: u64,
    pub em_max_iter: usize,
    pub em_rel_tol: f64,
    pub estep_max_iter: usize,
    pub estep_rel_tol: f64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig {
            k: 2,
            alpha: None,
            delta: 0.1,
            seed: 1,
            em_max_iter: 100,
            em_rel_tol: 1e-4,
            estep_max_iter: 50,
            estep_rel_tol: 1e-6,
        }
    }
}

impl LdaConfig {
    pub fn new(k: usize) -> Self {
        LdaConfig {
            k,
            ..Default::default()
        }
    }

    pub fn with_k(&self, k: usize) -> Self {
        LdaConfig { k, ..self.clone() }
    }

    /// Resolved α for this k.
    pub fn alpha_value(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.k < 1 {
            return bad("k must be at least 1".into());
        }
        if !self.alpha_value().is_finite() || self.alpha_value() <= 0.0 {
            return bad(format!("alpha must be positive, got {}", self.alpha_value()));
        }
        if !self.delta.is_finite() || self.delta <= 0.0 {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if [self.em_rel_tol, self.estep_rel_tol].iter().any(|t| t.is_nan() || *t <= 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.em_max_iter < 1 || self.estep_max_iter < 1 {
            return bad("iteration caps must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    /// Objective after each EM iteration. Nondecreasing.
    pub elbo_trace: Vec<f64>,
    pub n_iter: usize,
    pub converged: bool,
    /// Final value of the objective; equals [`elbo`] on the returned model.
    pub log_likelihood_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    pub config: LdaConfig,
    /// Vocabulary in column order.
    pub terms: Vec<String>,
    pub doc_ids: Vec<String>,
    /// k × V, rows sum to one.
    pub beta: Vec<Vec<f64>>,
    /// M × k variational Dirichlet parameters.
    pub gamma: Vec<Vec<f64>>,
    /// M × k, γ normalized per row.
    pub theta: Vec<Vec<f64>>,
    pub diagnostics: FitDiagnostics,
}

impl LdaModel {
    pub fn k(&self) -> usize {
        self.beta.len()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn n_docs(&self) -> usize {
        self.gamma.len()
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Export<'a> {
            config: &'a LdaConfig,
            alpha: f64,
            vocabulary: &'a [String],
            doc_ids: &'a [String],
            beta: &'a [Vec<f64>],
            gamma: &'a [Vec<f64>],
            diagnostics: &'a FitDiagnostics,
        }
        let mut s = serde_json::to_string_pretty(&Export {
            config: &self.config,
            alpha: self.config.alpha_value(),
            vocabulary: &self.terms,
            doc_ids: &self.doc_ids,
            beta: &self.beta,
            gamma: &self.gamma,
            diagnostics: &self.diagnostics,
        })?;
        s.push('\n');
        Ok(s)
    }

    /// Reads a model written by [`LdaModel::to_json`]; θ is recomputed from γ.
    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Import {
            config: LdaConfig,
            vocabulary: Vec<String>,
            doc_ids: Vec<String>,
            beta: Vec<Vec<f64>>,
            gamma: Vec<Vec<f64>>,
            diagnostics: FitDiagnostics,
        }
        let m: Import = serde_json::from_str(json)?;
        Ok(LdaModel {
            theta: normalize_rows(&m.gamma),
            config: m.config,
            terms: m.vocabulary,
            doc_ids: m.doc_ids,
            beta: m.beta,
            gamma: m.gamma,
            diagnostics: m.diagnostics,
        })
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }
}

pub(crate) fn normalize_rows(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|r| {
            let s: f64 = r.iter().sum();
            r.iter().map(|x| x / s).collect()
        })
        .collect()
}

/// Top `n` terms of each topic by probability, ties broken by term.
pub fn topic_terms(model: &LdaModel, n: usize) -> Vec<Vec<(String, f64)>> {
    model
        .beta
        .iter()
        .map(|row| {
            let mut idx: Vec<usize> = (0..row.len()).collect();
            idx.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then_with(|| model.terms[a].cmp(&model.terms[b])));
            idx.into_iter()
                .take(n)
                .map(|i| (model.terms[i].clone(), row[i]))
                .collect()
        })
        .collect()
}

/// Document-topic proportions labelled by document id.
pub fn doc_topic_mixture(model: &LdaModel) -> Vec<(String, Vec<f64>)> {
    model.doc_ids.iter().cloned().zip(model.theta.iter().cloned()).collect()
}
