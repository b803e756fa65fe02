//! Draws corpora from the LDA generative process.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Gamma, Open01};
use serde::{Deserialize, Serialize};

use crate::dtm::{ContextUnit, DocTermMatrix, RowId, Vocabulary, Weighting};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub k: usize,
    pub v: usize,
    pub m: usize,
    pub doc_len: usize,
    pub alpha: f64,
    pub delta: f64,
    pub seed: u64,
}

impl SimulationSpec {
    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.v < 1 || self.m < 1 || self.doc_len < 1 {
            return Err(Error::InvalidParameter("k, v, m and doc_len must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite() && self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidParameter("alpha and delta must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    /// Count-weighted, one row per document, terms `w000`, `w001`, ...
    pub dtm: DocTermMatrix,
    pub true_beta: Vec<Vec<f64>>,
    pub true_theta: Vec<Vec<f64>>,
    /// Topic of every token, per document, in draw order.
    pub true_assignments: Vec<Vec<usize>>,
}

/// ln of a Dirichlet(a·1_n) draw. Each component is sampled as
/// ln G + ln(U)/a with G ~ Gamma(a + 1), which stays finite for tiny `a`.
pub(crate) fn sample_log_dirichlet<R: Rng>(rng: &mut R, a: f64, n: usize) -> Vec<f64> {
    let gamma = Gamma::new(a + 1.0, 1.0).expect("shape is positive");
    let mut logs: Vec<f64> = (0..n)
        .map(|_| {
            let g: f64 = gamma.sample(rng);
            let u: f64 = Open01.sample(rng);
            g.ln() + u.ln() / a
        })
        .collect();
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    logs.iter_mut().for_each(|l| *l -= lse);
    logs
}

/// One draw from a symmetric Dirichlet(a) on `n` categories.
pub fn sample_dirichlet<R: Rng>(rng: &mut R, a: f64, n: usize) -> Vec<f64> {
    let p: Vec<f64> = sample_log_dirichlet(rng, a, n).into_iter().map(f64::exp).collect();
    let s: f64 = p.iter().sum();
    p.into_iter().map(|x| x / s).collect()
}

/// `k` topics over `v` terms, each uniform on its own contiguous block of
/// `v / k` terms (the last block takes the remainder) and zero elsewhere.
pub fn block_topics(k: usize, v: usize) -> Vec<Vec<f64>> {
    let width = v / k;
    (0..k)
        .map(|t| {
            let lo = t * width;
            let hi = if t + 1 == k { v } else { lo + width };
            (0..v)
                .map(|w| if (lo..hi).contains(&w) { 1.0 / (hi - lo) as f64 } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Draws β row by row from Dirichlet(δ), then documents via [`sample_from_topics`].
pub fn sample_corpus(spec: &SimulationSpec) -> Result<SyntheticCorpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let beta: Vec<Vec<f64>> = (0..spec.k).map(|_| sample_dirichlet(&mut rng, spec.delta, spec.v)).collect();
    generate(beta, spec.m, spec.doc_len, spec.alpha, &mut rng)
}

/// Documents drawn from fixed topics: θ ~ Dirichlet(α) per document, then
/// for each token z ~ θ and w ~ β_z.
pub fn sample_from_topics(
    true_beta: &[Vec<f64>],
    m: usize,
    doc_len: usize,
    alpha: f64,
    seed: u64,
) -> Result<SyntheticCorpus> {
    let v = true_beta.first().map_or(0, Vec::len);
    if true_beta.iter().any(|r| r.len() != v) {
        return Err(Error::DimensionMismatch("topic rows differ in length".into()));
    }
    SimulationSpec { k: true_beta.len(), v, m, doc_len, alpha, delta: 1.0, seed }.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate(true_beta.to_vec(), m, doc_len, alpha, &mut rng)
}

fn generate(beta: Vec<Vec<f64>>, m: usize, doc_len: usize, alpha: f64, rng: &mut ChaCha8Rng) -> Result<SyntheticCorpus> {
    let (k, v) = (beta.len(), beta[0].len());
    let term_dists = beta
        .iter()
        .map(|row| WeightedIndex::new(row).map_err(|e| Error::InvalidParameter(format!("topic row: {e}"))))
        .collect::<Result<Vec<_>>>()?;

    let mut theta = Vec::with_capacity(m);
    let mut assignments = Vec::with_capacity(m);
    let mut entries = Vec::with_capacity(m);
    for _ in 0..m {
        let th = sample_dirichlet(rng, alpha, k);
        let topic_dist = WeightedIndex::new(&th).expect("Dirichlet draw has positive mass");
        let mut counts = vec![0u64; v];
        let mut z = Vec::with_capacity(doc_len);
        for _ in 0..doc_len {
            let t = topic_dist.sample(rng);
            counts[term_dists[t].sample(rng)] += 1;
            z.push(t);
        }
        entries.push(
            counts
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .collect::<Vec<_>>(),
        );
        theta.push(th);
        assignments.push(z);
    }

    let width = (v - 1).to_string().len().max(3);
    let vocab = Vocabulary::from_terms((0..v).map(|w| format!("w{w:0width$}")))?;
    let id_width = (m - 1).to_string().len().max(3);
    let rows = (0..m)
        .map(|d| RowId { doc_id: format!("doc{d:0id_width$}"), sentence: None })
        .collect();
    let dtm = DocTermMatrix::from_rows(rows, vocab, entries, Weighting::Count, ContextUnit::Document)?;
    Ok(SyntheticCorpus { dtm, true_beta: beta, true_theta: theta, true_assignments: assignments })
}
