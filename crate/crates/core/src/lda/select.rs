//! Choosing k by the Bayesian information criterion.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{fit_lda, LdaConfig, LdaModel};
use crate::dtm::DocTermMatrix;
use crate::error::{Error, Result};
use crate::svg;

/// Which parameters the BIC penalty counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParameterCount {
    /// k(V − 1): free topic-term probabilities only.
    #[default]
    TopicTerms,
    /// k(V − 1) + M(k − 1): also the per-document mixtures.
    TopicTermsAndMixtures,
}

/// What counts as one observation in the ln(n) factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObservationCount {
    #[default]
    Tokens,
    Documents,
}

impl ParameterCount {
    pub fn count(self, k: usize, v: usize, m: usize) -> f64 {
        let topic_terms = (k * (v - 1)) as f64;
        match self {
            ParameterCount::TopicTerms => topic_terms,
            ParameterCount::TopicTermsAndMixtures => topic_terms + (m * (k - 1)) as f64,
        }
    }
}

impl ObservationCount {
    pub fn count(self, dtm: &DocTermMatrix) -> f64 {
        match self {
            ObservationCount::Tokens => dtm.total() as f64,
            ObservationCount::Documents => dtm.n_rows() as f64,
        }
    }
}

impl fmt::Display for ParameterCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParameterCount::TopicTerms => "k*(V-1)",
            ParameterCount::TopicTermsAndMixtures => "k*(V-1)+M*(k-1)",
        })
    }
}

impl fmt::Display for ObservationCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObservationCount::Tokens => "total tokens",
            ObservationCount::Documents => "documents",
        })
    }
}

/// −2·bound + p·ln(n) with p = k(V − 1) and n = total tokens.
pub fn bic(model: &LdaModel, dtm: &DocTermMatrix) -> f64 {
    bic_with(model, dtm, ParameterCount::default(), ObservationCount::default())
}

pub fn bic_with(model: &LdaModel, dtm: &DocTermMatrix, p: ParameterCount, n: ObservationCount) -> f64 {
    -2.0 * model.diagnostics.log_likelihood_bound
        + p.count(model.k(), model.n_terms(), model.n_docs()) * n.count(dtm).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSelectionResult {
    pub k_values: Vec<usize>,
    pub bic: Vec<f64>,
    pub best_k: usize,
    pub chosen_k: usize,
    pub parameter_count: ParameterCount,
    pub observation_count: ObservationCount,
}

impl ModelSelectionResult {
    /// Overrides the chosen k; it must be one of the fitted values.
    pub fn with_choice(mut self, k: usize) -> Result<Self> {
        if !self.k_values.contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "chosen k={k} was not fitted (range {:?})",
                self.k_values
            )));
        }
        self.chosen_k = k;
        Ok(self)
    }

    pub fn index_of(&self, k: usize) -> Option<usize> {
        self.k_values.iter().position(|&x| x == k)
    }
}

/// Fits every k in `k_min..=k_max` with `template` (only k varies) and
/// picks the smallest BIC, ties going to the smaller k.
pub fn select_k(
    dtm: &DocTermMatrix,
    k_min: usize,
    k_max: usize,
    template: &LdaConfig,
) -> Result<(ModelSelectionResult, Vec<LdaModel>)> {
    if k_min < 1 || k_min > k_max {
        return Err(Error::InvalidParameter(format!("invalid k range {k_min}..{k_max}")));
    }
    if k_max > dtm.n_terms() {
        return Err(Error::TooManyTopics { k: k_max, v: dtm.n_terms() });
    }
    let mut models = Vec::new();
    let mut scores = Vec::new();
    for k in k_min..=k_max {
        log::info!("fitting k={k}");
        let model = fit_lda(dtm, &template.with_k(k)).map_err(|e| Error::FitFailed { k, source: Box::new(e) })?;
        scores.push(bic(&model, dtm));
        models.push(model);
    }
    let k_values: Vec<usize> = (k_min..=k_max).collect();
    let best = (1..scores.len()).fold(0, |b, i| if scores[i] < scores[b] { i } else { b });
    let result = ModelSelectionResult {
        best_k: k_values[best],
        chosen_k: k_values[best],
        k_values,
        bic: scores,
        parameter_count: ParameterCount::default(),
        observation_count: ObservationCount::default(),
    };
    Ok((result, models))
}

pub fn write_bic_csv(result: &ModelSelectionResult, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["k", "bic"])?;
    for (k, b) in result.k_values.iter().zip(&result.bic) {
        w.write_record([k.to_string(), b.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_bic_svg(result: &ModelSelectionResult, path: &Path) -> Result<()> {
    let points: Vec<(f64, f64)> = result.k_values.iter().map(|&k| k as f64).zip(result.bic.iter().copied()).collect();
    let title = format!("BIC by number of topics (best k={}, chosen k={})", result.best_k, result.chosen_k);
    std::fs::write(path, svg::line_plot(&points, &title, "k", "BIC")).map_err(|e| Error::io(path, e))
}
