//! Frequency-driven views of a corpus: word-cloud sizing and the top-N
//! word network with raw co-occurrence counts as edge weights.

use std::path::Path;

use serde::Serialize;

use crate::dtm::{top_terms, DocTermMatrix};
use crate::error::{Error, Result};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordCloudDatum {
    pub term: String,
    pub frequency: u64,
    pub size: f64,
}

/// Keeps the first `max_terms` of a ranked frequency list and maps
/// frequency linearly onto `[min_size, max_size]`. Equal frequencies all
/// get `max_size`.
pub fn wordcloud_data(freqs: &[(String, u64)], max_terms: usize, min_size: f64, max_size: f64) -> Result<Vec<WordCloudDatum>> {
    if freqs.is_empty() {
        return Err(Error::InvalidParameter("no frequencies".into()));
    }
    if min_size.is_nan() || max_size.is_nan() || min_size >= max_size {
        return Err(Error::InvalidParameter(format!("min_size {min_size} must be below max_size {max_size}")));
    }
    let kept = &freqs[..max_terms.min(freqs.len())];
    let hi = kept.iter().map(|f| f.1).max().unwrap_or(0);
    let lo = kept.iter().map(|f| f.1).min().unwrap_or(0);
    Ok(kept
        .iter()
        .map(|(term, f)| WordCloudDatum {
            term: term.clone(),
            frequency: *f,
            size: if hi == lo {
                max_size
            } else {
                min_size + (max_size - min_size) * (f - lo) as f64 / (hi - lo) as f64
            },
        })
        .collect())
}

pub fn write_wordcloud_csv(data: &[WordCloudDatum], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for d in data {
        w.serialize(d)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// `(term, frequency)` table with a header.
pub fn write_frequency_csv(freqs: &[(String, u64)], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["term", "frequency"])?;
    for (t, f) in freqs {
        w.write_record([t.as_str(), &f.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Network of the `top_n` most frequent terms. Node value is the term's
/// column total; edge weight is the number of rows (documents or
/// sentences, as the matrix was built) containing both terms. Edges are
/// ordered by (term_a, term_b) with term_a < term_b.
pub fn term_network(dtm: &DocTermMatrix, top_n: usize) -> Result<Network> {
    if top_n > dtm.n_terms() {
        return Err(Error::InvalidParameter(format!(
            "top_n={top_n} exceeds vocabulary size {}",
            dtm.n_terms()
        )));
    }
    let top = top_terms(dtm, top_n);
    let mut slot = vec![usize::MAX; dtm.n_terms()];
    for (i, (term, _)) in top.iter().enumerate() {
        slot[dtm.vocab().get(term).expect("term from this vocabulary")] = i;
    }
    let mut counts = vec![0u64; top_n * top_n];
    let mut present = Vec::new();
    for row in dtm.row_entries() {
        present.clear();
        present.extend(row.iter().map(|&(c, _)| slot[c]).filter(|&s| s != usize::MAX));
        for (x, &a) in present.iter().enumerate() {
            for &b in &present[x + 1..] {
                counts[a.min(b) * top_n + a.max(b)] += 1;
            }
        }
    }
    let mut edges = Vec::new();
    for a in 0..top_n {
        for b in a + 1..top_n {
            let c = counts[a * top_n + b];
            if c > 0 {
                let (a, b) = if top[a].0 < top[b].0 { (a, b) } else { (b, a) };
                edges.push((a, b, c as f64));
            }
        }
    }
    edges.sort_by(|x, y| (&top[x.0].0, &top[x.1].0).cmp(&(&top[y.0].0, &top[y.1].0)));
    Ok(Network {
        name: format!("top{top_n}"),
        node_attr: "frequency".into(),
        edge_attr: "cooccurrences".into(),
        integer_edges: true,
        centered: false,
        nodes: top,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtm::{build_dtm, ContextUnit, Weighting};
    use crate::textprep::TokenizedDoc;

    fn dtm(docs: &[&[&str]]) -> DocTermMatrix {
        let docs: Vec<_> = docs
            .iter()
            .enumerate()
            .map(|(i, t)| TokenizedDoc::from_tokens(format!("d{i}"), t.iter().copied()))
            .collect();
        build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap()
    }

    #[test]
    fn cloud_sizes() {
        let f = vec![("a".to_string(), 10), ("b".to_string(), 5)];
        let c = wordcloud_data(&f, 10, 1.0, 3.0).unwrap();
        assert_eq!((c[0].size, c[1].size), (3.0, 1.0));
        assert_eq!(wordcloud_data(&f[..1], 10, 1.0, 3.0).unwrap()[0].size, 3.0);
        assert_eq!(wordcloud_data(&f, 1, 1.0, 3.0).unwrap().len(), 1);
        assert!(wordcloud_data(&f, 10, 3.0, 3.0).is_err());
        assert!(wordcloud_data(&[], 10, 1.0, 3.0).is_err());
    }

    #[test]
    fn forced_network() {
        let n = term_network(&dtm(&[&["a", "b"], &["a"]]), 2).unwrap();
        assert_eq!(n.nodes, [("a".to_string(), 2), ("b".to_string(), 1)]);
        assert_eq!(n.edges, [(0, 1, 1.0)]);
    }

    #[test]
    fn disjoint_documents_have_no_cross_edges() {
        let m = dtm(&[&["a", "a", "b"], &["c", "d", "d"]]);
        let n = term_network(&m, 4).unwrap();
        let names: Vec<(&str, &str)> = n.edges.iter().map(|e| (n.nodes[e.0].0.as_str(), n.nodes[e.1].0.as_str())).collect();
        assert_eq!(names, [("a", "b"), ("c", "d")]);
        assert!(term_network(&m, 5).is_err());
    }

    #[test]
    fn edge_weight_bounded_by_context_frequency() {
        let m = dtm(&[&["x", "y", "z"], &["x", "y"], &["y", "z", "z"], &["x"]]);
        let n = term_network(&m, 3).unwrap();
        let df = m.to_boolean().column_totals();
        for &(a, b, w) in &n.edges {
            let fa = df[m.vocab().get(&n.nodes[a].0).unwrap()];
            let fb = df[m.vocab().get(&n.nodes[b].0).unwrap()];
            assert!(w as u64 <= fa.min(fb));
        }
        let expected: Vec<_> = top_terms(&m, 3);
        assert_eq!(n.nodes, expected);
    }
}
