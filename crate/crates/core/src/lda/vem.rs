//! Variational EM for LDA with a point estimate of β.
//!
//! The quantity maximized (and traced) is
//!
//! ```text
//! F = Σ_d L_d(γ_d, φ_d; α, β) + δ · Σ_t Σ_w ln β_tw
//! ```
//!
//! where `L_d` is the per-document variational lower bound on
//! ln p(w_d | α, β) and the second term is the log-density, up to a
//! constant, of a Dirichlet(δ + 1) prior on each topic. Its β-maximizer is
//! exactly the δ-smoothed expected-count estimate used in the M-step, so
//! every E-step sweep and every M-step can only raise F.
//!
//! φ is never stored between iterations: given γ and β its optimum is
//! available in closed form, and F is always evaluated there.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::simulate::sample_log_dirichlet;
use super::{normalize_rows, FitDiagnostics, LdaConfig, LdaModel};
use crate::dtm::{DocTermMatrix, Weighting};
use crate::error::{Error, Result};
use crate::special::{digamma, ln_gamma};

/// Sparse bag of words for one document.
struct DocWords {
    words: Vec<usize>,
    counts: Vec<f64>,
    total: f64,
}

fn collect_docs(dtm: &DocTermMatrix) -> Vec<DocWords> {
    dtm.row_entries()
        .iter()
        .map(|row| DocWords {
            words: row.iter().map(|e| e.0).collect(),
            counts: row.iter().map(|e| e.1 as f64).collect(),
            total: row.iter().map(|e| e.1 as f64).sum(),
        })
        .collect()
}

/// log β stored word-major: entry `w * k + t`.
struct LogBeta {
    k: usize,
    values: Vec<f64>,
}

impl LogBeta {
    fn word(&self, w: usize) -> &[f64] {
        &self.values[w * self.k..(w + 1) * self.k]
    }

    fn from_rows(beta: &[Vec<f64>]) -> Self {
        let k = beta.len();
        let v = beta.first().map_or(0, Vec::len);
        let mut values = vec![0.0; k * v];
        for (t, row) in beta.iter().enumerate() {
            for (w, &p) in row.iter().enumerate() {
                values[w * k + t] = p.ln();
            }
        }
        LogBeta { k, values }
    }

    fn to_rows(&self, v: usize) -> Vec<Vec<f64>> {
        (0..self.k)
            .map(|t| (0..v).map(|w| self.values[w * self.k + t].exp()).collect())
            .collect()
    }
}

/// Writes normalized φ for one word into `phi` and returns ln Σ_t β_tw e^{ψ(γ_t)}.
#[inline]
fn word_phi(log_beta: &[f64], psi: &[f64], phi: &mut [f64]) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for ((p, &lb), &ps) in phi.iter_mut().zip(log_beta).zip(psi) {
        *p = lb + ps;
        max = max.max(*p);
    }
    let mut sum = 0.0;
    for p in phi.iter_mut() {
        *p = (*p - max).exp();
        sum += *p;
    }
    let inv = 1.0 / sum;
    phi.iter_mut().for_each(|p| *p *= inv);
    max + sum.ln()
}

/// Coordinate ascent on (φ, γ) for one document, warm-started from `gamma`.
/// Returns φ (nnz × k) from the final sweep; `gamma` holds the matching update.
fn infer_document(doc: &DocWords, log_beta: &LogBeta, alpha: f64, gamma: &mut [f64], cfg: &LdaConfig) -> Vec<f64> {
    let k = log_beta.k;
    let mut phi = vec![0.0; doc.words.len() * k];
    let mut psi = vec![0.0; k];
    let mut next = vec![0.0; k];
    for _ in 0..cfg.estep_max_iter {
        for (p, &g) in psi.iter_mut().zip(gamma.iter()) {
            *p = digamma(g);
        }
        next.fill(alpha);
        for (j, (&w, &n)) in doc.words.iter().zip(&doc.counts).enumerate() {
            let row = &mut phi[j * k..(j + 1) * k];
            word_phi(log_beta.word(w), &psi, row);
            for (g, &p) in next.iter_mut().zip(row.iter()) {
                *g += n * p;
            }
        }
        let change = gamma
            .iter()
            .zip(&next)
            .map(|(&old, &new)| ((new - old) / old).abs())
            .fold(0.0, f64::max);
        gamma.copy_from_slice(&next);
        if change < cfg.estep_rel_tol {
            break;
        }
    }
    phi
}

/// L_d evaluated at the optimal φ for the given γ and β.
fn document_bound(doc: &DocWords, log_beta: &LogBeta, alpha: f64, gamma: &[f64]) -> f64 {
    let k = log_beta.k;
    let kf = k as f64;
    let gsum: f64 = gamma.iter().sum();
    let psi_sum = digamma(gsum);
    let psi: Vec<f64> = gamma.iter().map(|&g| digamma(g)).collect();

    // E[ln p(θ|α)] − E[ln q(θ|γ)]
    let mut bound = ln_gamma(kf * alpha) - kf * ln_gamma(alpha) - ln_gamma(gsum);
    for (&g, &p) in gamma.iter().zip(&psi) {
        let e_log_theta = p - psi_sum;
        bound += (alpha - 1.0) * e_log_theta + ln_gamma(g) - (g - 1.0) * e_log_theta;
    }
    // E[ln p(z|θ)] + E[ln p(w|z,β)] − E[ln q(z|φ)]
    let mut phi = vec![0.0; k];
    for (&w, &n) in doc.words.iter().zip(&doc.counts) {
        bound += n * (word_phi(log_beta.word(w), &psi, &mut phi) - psi_sum);
    }
    bound
}

/// δ · Σ ln β: the smoothing part of the objective.
pub fn smoothing_term(beta: &[Vec<f64>], delta: f64) -> f64 {
    delta * beta.iter().flatten().map(|p| p.ln()).sum::<f64>()
}

fn objective(docs: &[DocWords], log_beta: &LogBeta, alpha: f64, delta: f64, gamma: &[Vec<f64>]) -> f64 {
    let per_doc: Vec<f64> = docs
        .par_iter()
        .zip(gamma.par_iter())
        .map(|(d, g)| document_bound(d, log_beta, alpha, g))
        .collect();
    // fixed summation order keeps seeded runs bit-identical
    let data: f64 = per_doc.iter().sum();
    data + delta * log_beta.values.iter().sum::<f64>()
}

fn check_shape(model: &LdaModel, dtm: &DocTermMatrix) -> Result<()> {
    if dtm.n_rows() != model.n_docs() || dtm.n_terms() != model.n_terms() {
        return Err(Error::DimensionMismatch(format!(
            "model is {}×{} (docs×terms), matrix is {}×{}",
            model.n_docs(),
            model.n_terms(),
            dtm.n_rows(),
            dtm.n_terms()
        )));
    }
    if model.beta.iter().any(|r| r.len() != model.n_terms()) || model.gamma.iter().any(|g| g.len() != model.k()) {
        return Err(Error::DimensionMismatch("ragged beta or gamma".into()));
    }
    Ok(())
}

/// Objective of `model` on `dtm`: the variational bound on the corpus
/// log-likelihood at the model's β and γ (φ at its optimum) plus the
/// δ-smoothing term. For a fitted model this equals
/// `diagnostics.log_likelihood_bound`.
pub fn elbo(model: &LdaModel, dtm: &DocTermMatrix) -> Result<f64> {
    check_shape(model, dtm)?;
    let docs = collect_docs(dtm);
    let log_beta = LogBeta::from_rows(&model.beta);
    Ok(objective(
        &docs,
        &log_beta,
        model.config.alpha_value(),
        model.config.delta,
        &model.gamma,
    ))
}

fn initial_log_beta(k: usize, v: usize, delta: f64, seed: u64) -> LogBeta {
    let mut values = vec![0.0; k * v];
    for t in 0..k {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        for (w, lp) in sample_log_dirichlet(&mut rng, delta, v).into_iter().enumerate() {
            values[w * k + t] = lp;
        }
    }
    LogBeta { k, values }
}

fn m_step(docs: &[DocWords], phis: &[Vec<f64>], k: usize, v: usize, delta: f64) -> LogBeta {
    let mut counts = vec![delta; k * v];
    for (doc, phi) in docs.iter().zip(phis) {
        for (j, (&w, &n)) in doc.words.iter().zip(&doc.counts).enumerate() {
            for t in 0..k {
                counts[w * k + t] += n * phi[j * k + t];
            }
        }
    }
    let mut totals = vec![0.0; k];
    for w in 0..v {
        for t in 0..k {
            totals[t] += counts[w * k + t];
        }
    }
    for w in 0..v {
        for t in 0..k {
            counts[w * k + t] = (counts[w * k + t] / totals[t]).ln();
        }
    }
    LogBeta { k, values: counts }
}

/// Fits LDA by variational EM. Deterministic for a given config and seed.
pub fn fit_lda(dtm: &DocTermMatrix, config: &LdaConfig) -> Result<LdaModel> {
    config.validate()?;
    if dtm.weighting() != Weighting::Count {
        return Err(Error::InvalidParameter("LDA needs a count-weighted matrix".into()));
    }
    let (k, v) = (config.k, dtm.n_terms());
    if k > v {
        return Err(Error::TooManyTopics { k, v });
    }
    if dtm.total() == 0 {
        return Err(Error::EmptyCorpus);
    }
    let alpha = config.alpha_value();
    let docs = collect_docs(dtm);

    let mut log_beta = initial_log_beta(k, v, config.delta, config.seed);
    let mut gamma: Vec<Vec<f64>> = docs.iter().map(|d| vec![alpha + d.total / k as f64; k]).collect();
    let mut trace: Vec<f64> = Vec::new();
    let mut converged = false;

    for iteration in 1..=config.em_max_iter {
        let phis: Vec<Vec<f64>> = docs
            .par_iter()
            .zip(gamma.par_iter_mut())
            .map(|(d, g)| infer_document(d, &log_beta, alpha, g, config))
            .collect();
        log_beta = m_step(&docs, &phis, k, v, config.delta);

        let value = objective(&docs, &log_beta, alpha, config.delta, &gamma);
        if !value.is_finite() {
            return Err(Error::NumericalFailure { iteration });
        }
        let previous = trace.last().copied();
        trace.push(value);
        if let Some(prev) = previous {
            if ((value - prev) / prev.abs()).abs() < config.em_rel_tol {
                converged = true;
                break;
            }
        }
    }

    let beta = log_beta.to_rows(v);
    Ok(LdaModel {
        config: config.clone(),
        terms: dtm.vocab().terms().to_vec(),
        doc_ids: dtm.rows().iter().map(|r| r.to_string()).collect(),
        theta: normalize_rows(&gamma),
        beta,
        gamma,
        diagnostics: FitDiagnostics {
            n_iter: trace.len(),
            converged,
            log_likelihood_bound: *trace.last().expect("at least one iteration"),
            elbo_trace: trace,
        },
    })
}
