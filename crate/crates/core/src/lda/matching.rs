//! Aligning estimated topics with known ones.

use crate::error::{Error, Result};

const TOP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct TopicMatch {
    /// `permutation[e]` is the true topic matched to estimated topic `e`.
    pub permutation: Vec<usize>,
    /// Per estimated topic: share of its top-10 terms that are among the
    /// true topic's top-10 (terms tied with the 10th true value count too).
    pub precision: Vec<f64>,
    pub cosine: Vec<f64>,
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}

fn ranked(row: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..row.len()).collect();
    idx.sort_by(|&a, &b| row[b].total_cmp(&row[a]).then(a.cmp(&b)));
    idx
}

fn top_precision(est: &[f64], truth: &[f64]) -> f64 {
    let n = TOP.min(est.len());
    let cutoff = truth[ranked(truth)[n - 1]];
    let hits = ranked(est)[..n].iter().filter(|&&w| truth[w] >= cutoff).count();
    hits as f64 / n as f64
}

/// Greedy matching: repeatedly takes the most similar (estimated, true)
/// pair by cosine among unused topics.
pub fn match_topics(est_beta: &[Vec<f64>], true_beta: &[Vec<f64>]) -> Result<TopicMatch> {
    let k = est_beta.len();
    let v = est_beta.first().map_or(0, Vec::len);
    if k == 0 || v == 0 {
        return Err(Error::InvalidParameter("no topics to match".into()));
    }
    if true_beta.len() != k || est_beta.iter().chain(true_beta).any(|r| r.len() != v) {
        return Err(Error::DimensionMismatch(format!(
            "estimated {}×{}, true {}×{}",
            k,
            v,
            true_beta.len(),
            true_beta.first().map_or(0, Vec::len)
        )));
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(k * k);
    for (e, er) in est_beta.iter().enumerate() {
        for (t, tr) in true_beta.iter().enumerate() {
            pairs.push((cosine(er, tr), e, t));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut permutation = vec![usize::MAX; k];
    let mut cos = vec![0.0; k];
    let mut used = vec![false; k];
    for (c, e, t) in pairs {
        if permutation[e] == usize::MAX && !used[t] {
            permutation[e] = t;
            cos[e] = c;
            used[t] = true;
        }
    }
    let precision = (0..k)
        .map(|e| top_precision(&est_beta[e], &true_beta[permutation[e]]))
        .collect();
    Ok(TopicMatch { permutation, precision, cosine: cos })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lda::sample_dirichlet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn truth(seed: u64, k: usize, v: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| sample_dirichlet(&mut rng, 0.5, v)).collect()
    }

    #[test]
    fn identity_and_permutation() {
        let t = truth(1, 4, 40);
        let m = match_topics(&t, &t).unwrap();
        assert_eq!(m.permutation, [0, 1, 2, 3]);
        assert!(m.precision.iter().all(|&p| p == 1.0));

        let order = [2, 0, 3, 1];
        let est: Vec<_> = order.iter().map(|&i| t[i].clone()).collect();
        let m = match_topics(&est, &t).unwrap();
        assert_eq!(m.permutation, order);
        assert!(m.precision.iter().all(|&p| p == 1.0));
    }

    #[test]
    fn random_topics_score_near_chance() {
        let reps = 400;
        let mut total = 0.0;
        for s in 0..reps {
            let t = truth(s, 2, 40);
            let est = truth(10_000 + s, 2, 40);
            total += match_topics(&est, &t).unwrap().precision.iter().sum::<f64>() / 2.0;
        }
        let mean = total / reps as f64;
        assert!((mean - 0.25).abs() < 0.05, "mean precision {mean}");
    }

    #[test]
    fn shape_errors() {
        let t = truth(1, 2, 10);
        assert!(matches!(match_topics(&t, &t[..1]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(match_topics(&t, &truth(1, 2, 11)), Err(Error::DimensionMismatch(_))));
    }
}
