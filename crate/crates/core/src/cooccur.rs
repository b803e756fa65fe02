//! Boolean-context co-occurrence analysis ranked by Dunning's
//! log-likelihood ratio, and focal-term ego networks.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::ddouble::Dd;
use crate::dtm::{build_dtm, ContextUnit, DocTermMatrix, Weighting};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::textprep::TokenizedDoc;

/// Document (context) frequencies for a term pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ContingencyCounts {
    /// Number of contexts.
    pub m_total: u64,
    /// Contexts containing the first term.
    pub m_i: u64,
    /// Contexts containing the second term.
    pub m_j: u64,
    /// Contexts containing both.
    pub m_ij: u64,
}

impl ContingencyCounts {
    pub fn new(m_total: u64, m_i: u64, m_j: u64, m_ij: u64) -> Result<Self> {
        let c = ContingencyCounts {
            m_total,
            m_i,
            m_j,
            m_ij,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let &ContingencyCounts {
            m_total,
            m_i,
            m_j,
            m_ij,
        } = self;
        if m_i > m_total {
            return Err(Error::InvalidCounts(format!("m_i={m_i} exceeds m_total={m_total}")));
        }
        if m_j > m_total {
            return Err(Error::InvalidCounts(format!("m_j={m_j} exceeds m_total={m_total}")));
        }
        if m_ij > m_i.min(m_j) {
            return Err(Error::InvalidCounts(format!(
                "m_ij={m_ij} exceeds min(m_i={m_i}, m_j={m_j})"
            )));
        }
        if m_i + m_j - m_ij > m_total {
            return Err(Error::InvalidCounts(format!(
                "m_i + m_j - m_ij = {} exceeds m_total={m_total}",
                m_i + m_j - m_ij
            )));
        }
        if m_total >= 1 << 53 {
            return Err(Error::InvalidCounts(format!("m_total={m_total} too large")));
        }
        Ok(())
    }

    /// Counts with the two terms swapped.
    pub fn transposed(&self) -> Self {
        ContingencyCounts {
            m_i: self.m_j,
            m_j: self.m_i,
            ..*self
        }
    }

    /// Observed joint count above its independence expectation.
    pub fn is_attraction(&self) -> bool {
        u128::from(self.m_ij) * u128::from(self.m_total) > u128::from(self.m_i) * u128::from(self.m_j)
    }
}

/// Log-likelihood ratio
///
/// ```text
/// LLR = 2 [ M ln M − Mi ln Mi − Mj ln Mj + Mij ln Mij
///         + (M − Mi − Mj + Mij) ln(M − Mi − Mj + Mij)
///         + (Mi − Mij) ln(Mi − Mij) + (Mj − Mij) ln(Mj − Mij)
///         − (M − Mi) ln(M − Mi) − (M − Mj) ln(M − Mj) ]
/// ```
///
/// with 0·ln 0 = 0. The terms are accumulated in double-double precision so
/// near-independent pairs do not lose their value to cancellation.
pub fn llr(c: &ContingencyCounts) -> Result<f64> {
    c.validate()?;
    let ContingencyCounts {
        m_total: m,
        m_i: mi,
        m_j: mj,
        m_ij: mij,
    } = *c;
    let mut positive = [m, mij, m + mij - mi - mj, mi - mij, mj - mij];
    let mut negative = [mi, mj, m - mi, m - mj];
    // fixed summation order keeps llr exactly symmetric in the two terms
    positive.sort_unstable();
    negative.sort_unstable();
    let sum = positive.iter().fold(Dd::ZERO, |acc, &x| acc + Dd::xlnx(x));
    let sum = negative.iter().fold(sum, |acc, &x| acc - Dd::xlnx(x));
    Ok(2.0 * sum.to_f64())
}

/// Boolean matrix over documents or sentences.
pub fn build_boolean_contexts(docs: &[TokenizedDoc], context: ContextUnit) -> Result<DocTermMatrix> {
    build_dtm(docs, Weighting::Boolean, context)
}

/// One ranked association of a candidate term with a focal term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Association {
    pub term: String,
    pub llr: f64,
    pub m_i: u64,
    pub m_j: u64,
    pub m_ij: u64,
}

/// Column postings of a boolean matrix: which contexts contain each term.
/// Any nonzero entry counts as presence.
#[derive(Debug, Clone)]
pub struct CooccurrenceIndex<'a> {
    dtm: &'a DocTermMatrix,
    postings: Vec<Vec<usize>>,
}

impl<'a> CooccurrenceIndex<'a> {
    pub fn new(dtm: &'a DocTermMatrix) -> Self {
        let mut postings = vec![Vec::new(); dtm.n_terms()];
        for (r, c, _) in dtm.triplets() {
            postings[c].push(r);
        }
        CooccurrenceIndex { dtm, postings }
    }

    pub fn n_contexts(&self) -> u64 {
        self.dtm.n_rows() as u64
    }

    pub fn term(&self, col: usize) -> &str {
        self.dtm.vocab().term(col)
    }

    pub fn context_frequency(&self, col: usize) -> u64 {
        self.postings[col].len() as u64
    }

    /// Looks up a term, suggesting the closest vocabulary entries when absent.
    pub fn column(&self, term: &str) -> Result<usize> {
        self.dtm.vocab().get(term).ok_or_else(|| Error::UnknownTerm {
            term: term.to_string(),
            suggestions: nearest_terms(term, self.dtm.vocab().terms(), 5),
        })
    }

    fn joint(&self, a: usize, b: usize) -> u64 {
        let (pa, pb) = (&self.postings[a], &self.postings[b]);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < pa.len() && j < pb.len() {
            match pa[i].cmp(&pb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn counts(&self, a: usize, b: usize) -> ContingencyCounts {
        ContingencyCounts {
            m_total: self.n_contexts(),
            m_i: self.context_frequency(a),
            m_j: self.context_frequency(b),
            m_ij: self.joint(a, b),
        }
    }

    /// All terms attracted to `focal` (joint count ≥ 1 and above the
    /// independence expectation), by descending LLR, ties by term.
    pub fn associations(&self, focal: usize) -> Vec<Association> {
        let mut joint: HashMap<usize, u64> = HashMap::new();
        for &r in &self.postings[focal] {
            for &(c, _) in self.dtm.row(r) {
                if c != focal {
                    *joint.entry(c).or_insert(0) += 1;
                }
            }
        }
        let m_i = self.context_frequency(focal);
        let mut out: Vec<Association> = joint
            .into_iter()
            .filter_map(|(c, m_ij)| {
                let counts = ContingencyCounts {
                    m_total: self.n_contexts(),
                    m_i,
                    m_j: self.context_frequency(c),
                    m_ij,
                };
                counts.is_attraction().then(|| Association {
                    term: self.term(c).to_string(),
                    llr: llr(&counts).expect("counts derived from one matrix are consistent"),
                    m_i,
                    m_j: counts.m_j,
                    m_ij,
                })
            })
            .collect();
        out.sort_by(|a, b| b.llr.total_cmp(&a.llr).then_with(|| a.term.cmp(&b.term)));
        out
    }
}

/// Top `top_n` terms co-occurring with `focal` by LLR.
pub fn cooccurring_terms(bdtm: &DocTermMatrix, focal: &str, top_n: usize) -> Result<Vec<Association>> {
    let index = CooccurrenceIndex::new(bdtm);
    let col = index.column(focal)?;
    let mut out = index.associations(col);
    out.truncate(top_n);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EgoOptions {
    /// First-ring size.
    pub top_n: usize,
    /// 1 for a star around the focal term, 2 to add ramifications.
    pub depth: u8,
    /// Minimum LLR for any edge.
    pub llr_threshold: f64,
    /// Ramifications per first-ring term at depth 2.
    pub fanout: usize,
}

impl Default for EgoOptions {
    fn default() -> Self {
        EgoOptions {
            top_n: 10,
            depth: 1,
            llr_threshold: 0.0,
            fanout: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EgoNetwork {
    pub focal: String,
    pub depth: u8,
    /// `(term, degree)`; the focal term comes first, then the first ring
    /// in rank order, then ramifications in discovery order.
    pub nodes: Vec<(String, u64)>,
    pub edges: Vec<(String, String, f64)>,
}

impl EgoNetwork {
    pub fn to_network(&self) -> Network {
        let index: HashMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, (t, _))| (t.as_str(), i))
            .collect();
        Network {
            name: self.focal.clone(),
            node_attr: "degree".into(),
            edge_attr: "llr".into(),
            integer_edges: false,
            centered: true,
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .map(|(a, b, w)| (index[a.as_str()], index[b.as_str()], *w))
                .collect(),
        }
    }
}

/// Ego network around `focal`.
///
/// Depth 1: the focal term and its `top_n` strongest associates with
/// LLR ≥ threshold. Depth 2 adds, for each ring term, up to `fanout` of its
/// own associates outside the ring (LLR ≥ threshold), plus edges between
/// ring terms that attract each other with LLR ≥ threshold.
pub fn ego_network(bdtm: &DocTermMatrix, focal: &str, opts: &EgoOptions) -> Result<EgoNetwork> {
    if !matches!(opts.depth, 1 | 2) {
        return Err(Error::InvalidParameter(format!("depth must be 1 or 2, got {}", opts.depth)));
    }
    if opts.llr_threshold.is_nan() || opts.llr_threshold < 0.0 {
        return Err(Error::InvalidParameter("llr_threshold must be nonnegative".into()));
    }
    let index = CooccurrenceIndex::new(bdtm);
    let f = index.column(focal)?;

    let mut nodes: Vec<usize> = vec![f];
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut ring: Vec<usize> = Vec::new();
    for a in index
        .associations(f)
        .into_iter()
        .filter(|a| a.llr >= opts.llr_threshold)
        .take(opts.top_n)
    {
        let c = bdtm.vocab().get(&a.term).expect("term from vocabulary");
        ring.push(c);
        nodes.push(c);
        edges.push((f, c, a.llr));
    }

    if opts.depth == 2 {
        let in_ring: HashSet<usize> = ring.iter().copied().chain([f]).collect();
        for (x, &a) in ring.iter().enumerate() {
            for &b in &ring[x + 1..] {
                let counts = index.counts(a, b);
                if counts.m_ij >= 1 && counts.is_attraction() {
                    let w = llr(&counts)?;
                    if w >= opts.llr_threshold {
                        edges.push((a, b, w));
                    }
                }
            }
        }
        let mut seen = in_ring.clone();
        let mut linked: HashSet<(usize, usize)> = HashSet::new();
        for &r in &ring {
            let branches = index
                .associations(r)
                .into_iter()
                .filter(|a| a.llr >= opts.llr_threshold)
                .map(|a| (bdtm.vocab().get(&a.term).expect("term from vocabulary"), a.llr))
                .filter(|(c, _)| !in_ring.contains(c))
                .take(opts.fanout);
            for (c, w) in branches {
                if seen.insert(c) {
                    nodes.push(c);
                }
                if linked.insert((r, c)) {
                    edges.push((r, c, w));
                }
            }
        }
    }

    let pos: HashMap<usize, usize> = nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut degree = vec![0u64; nodes.len()];
    for &(a, b, _) in &edges {
        degree[pos[&a]] += 1;
        degree[pos[&b]] += 1;
    }
    Ok(EgoNetwork {
        focal: focal.to_string(),
        depth: opts.depth,
        nodes: nodes
            .iter()
            .zip(degree)
            .map(|(&c, d)| (index.term(c).to_string(), d))
            .collect(),
        edges: edges
            .into_iter()
            .map(|(a, b, w)| (index.term(a).to_string(), index.term(b).to_string(), w))
            .collect(),
    })
}

fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut cur = vec![i + 1; b.len() + 1];
        for (j, &cb) in b.iter().enumerate() {
            cur[j + 1] = (prev[j] + usize::from(ca != cb)).min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Up to `n` vocabulary terms closest to `term` by edit distance.
pub fn nearest_terms(term: &str, vocab: &[String], n: usize) -> Vec<String> {
    let mut scored: Vec<(usize, &String)> = vocab.iter().map(|t| (edit_distance(term, t), t)).collect();
    scored.sort();
    scored.into_iter().take(n).map(|(_, t)| t.clone()).collect()
}
