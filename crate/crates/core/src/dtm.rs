//! Sparse document-term (or sentence-term) matrices, frequency trimming and
//! corpus lexical statistics.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::TokenizedDoc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    #[default]
    Count,
    Boolean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ContextUnit {
    #[default]
    Document,
    Sentence,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Count => "count",
            Weighting::Boolean => "boolean",
        })
    }
}

impl fmt::Display for ContextUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContextUnit::Document => "document",
            ContextUnit::Sentence => "sentence",
        })
    }
}

impl FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "count" => Ok(Weighting::Count),
            "boolean" => Ok(Weighting::Boolean),
            _ => Err(format!("unknown weighting {s:?} (count or boolean)")),
        }
    }
}

impl FromStr for ContextUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "document" => Ok(ContextUnit::Document),
            "sentence" => Ok(ContextUnit::Sentence),
            _ => Err(format!("unknown context {s:?} (document or sentence)")),
        }
    }
}

/// Identifies one matrix row: a document, or one sentence of it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowId {
    pub doc_id: String,
    pub sentence: Option<usize>,
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sentence {
            Some(s) => write!(f, "{}#{}", self.doc_id, s),
            None => f.write_str(&self.doc_id),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fails on duplicate terms.
    pub fn from_terms<S: Into<String>>(terms: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut v = Vocabulary::new();
        for t in terms {
            let t = t.into();
            if v.index.contains_key(&t) {
                return Err(Error::InvalidParameter(format!("duplicate vocabulary term {t:?}")));
            }
            v.insert(t);
        }
        Ok(v)
    }

    /// Returns the column of `term`, adding it if new.
    pub fn insert(&mut self, term: impl Into<String>) -> usize {
        let term = term.into();
        if let Some(&i) = self.index.get(&term) {
            return i;
        }
        let i = self.terms.len();
        self.index.insert(term.clone(), i);
        self.terms.push(term);
        i
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, col: usize) -> &str {
        &self.terms[col]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Row-major sparse matrix. Each row holds `(column, value)` pairs sorted by
/// column with no zeros and no repeated columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocTermMatrix {
    rows: Vec<RowId>,
    vocab: Vocabulary,
    entries: Vec<Vec<(usize, u64)>>,
    weighting: Weighting,
    context: ContextUnit,
}

impl DocTermMatrix {
    /// Assembles a matrix from per-row `(column, value)` lists. Zero values
    /// are dropped and repeated columns within a row are summed.
    pub fn from_rows(
        rows: Vec<RowId>,
        vocab: Vocabulary,
        entries: Vec<Vec<(usize, u64)>>,
        weighting: Weighting,
        context: ContextUnit,
    ) -> Result<Self> {
        if rows.len() != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} row ids for {} rows",
                rows.len(),
                entries.len()
            )));
        }
        let v = vocab.len();
        let mut clean = Vec::with_capacity(entries.len());
        for mut row in entries {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut out: Vec<(usize, u64)> = Vec::with_capacity(row.len());
            for (c, x) in row {
                if c >= v {
                    return Err(Error::DimensionMismatch(format!("column {c} outside vocabulary of {v}")));
                }
                if x == 0 {
                    continue;
                }
                match out.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx += x,
                    _ => out.push((c, x)),
                }
            }
            if weighting == Weighting::Boolean {
                out.iter_mut().for_each(|e| e.1 = 1);
            }
            clean.push(out);
        }
        Ok(DocTermMatrix {
            rows,
            vocab,
            entries: clean,
            weighting,
            context,
        })
    }

    pub fn rows(&self) -> &[RowId] {
        &self.rows
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn context(&self) -> ContextUnit {
        self.context
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_terms(&self) -> usize {
        self.vocab.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.entries[i]
    }

    pub fn row_entries(&self) -> &[Vec<(usize, u64)>] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map_or(0, |i| self.entries[row][i].1)
    }

    /// `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, x)| (r, c, x)))
    }

    /// Sum of each column. For boolean weighting this is the number of
    /// contexts containing the term.
    pub fn column_totals(&self) -> Vec<u64> {
        let mut totals = vec![0; self.vocab.len()];
        for (_, c, x) in self.triplets() {
            totals[c] += x;
        }
        totals
    }

    pub fn row_totals(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().map(|e| e.1).sum()).collect()
    }

    pub fn total(&self) -> u64 {
        self.triplets().map(|t| t.2).sum()
    }

    /// Same rows and vocabulary with every stored entry set to 1.
    pub fn to_boolean(&self) -> DocTermMatrix {
        let mut out = self.clone();
        out.weighting = Weighting::Boolean;
        out.entries.iter_mut().flatten().for_each(|e| e.1 = 1);
        out
    }

    /// Dense copy, rows by columns.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut dense = vec![vec![0; self.vocab.len()]; self.rows.len()];
        for (r, c, x) in self.triplets() {
            dense[r][c] = x;
        }
        dense
    }

    /// Writes `row_id,term,value` triplets and the vocabulary sidecar (one
    /// term per line, in column order).
    pub fn write_triplets(&self, csv_path: &Path, vocab_path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(csv_path)?;
        w.write_record(["row_id", "term", "value"])?;
        for (r, c, x) in self.triplets() {
            w.write_record([self.rows[r].to_string(), self.vocab.term(c).to_string(), x.to_string()])?;
        }
        w.flush().map_err(|e| Error::io(csv_path, e))?;

        let mut f = fs::File::create(vocab_path).map_err(|e| Error::io(vocab_path, e))?;
        for t in self.vocab.terms() {
            writeln!(f, "{t}").map_err(|e| Error::io(vocab_path, e))?;
        }
        Ok(())
    }

    /// Reads a triplet export. Rows appear in order of first occurrence;
    /// rows with no entries cannot be recovered from the triplet file.
    pub fn read_triplets(
        csv_path: &Path,
        vocab_path: &Path,
        weighting: Weighting,
        context: ContextUnit,
    ) -> Result<DocTermMatrix> {
        let vocab_text = fs::read_to_string(vocab_path).map_err(|e| Error::io(vocab_path, e))?;
        let vocab = Vocabulary::from_terms(vocab_text.lines().filter(|l| !l.is_empty()))?;

        let mut reader = csv::Reader::from_path(csv_path)?;
        let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if header != ["row_id", "term", "value"] {
            return Err(Error::malformed(csv_path, "expected header row_id,term,value"));
        }
        let mut row_index: HashMap<String, usize> = HashMap::new();
        let mut rows = Vec::new();
        let mut entries: Vec<Vec<(usize, u64)>> = Vec::new();
        for (lineno, record) in reader.records().enumerate() {
            let record = record?;
            let bad = |m: &str| Error::malformed(csv_path, format!("record {}: {m}", lineno + 1));
            let row_id = record.get(0).ok_or_else(|| bad("missing row_id"))?;
            let term = record.get(1).ok_or_else(|| bad("missing term"))?;
            let value: u64 = record
                .get(2)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad("value is not a nonnegative integer"))?;
            let col = vocab.get(term).ok_or_else(|| bad("term not in vocabulary"))?;
            let r = *row_index.entry(row_id.to_string()).or_insert_with(|| {
                rows.push(parse_row_id(row_id, context));
                entries.push(Vec::new());
                rows.len() - 1
            });
            entries[r].push((col, value));
        }
        DocTermMatrix::from_rows(rows, vocab, entries, weighting, context)
    }
}

fn parse_row_id(s: &str, context: ContextUnit) -> RowId {
    if context == ContextUnit::Sentence {
        if let Some((doc, idx)) = s.rsplit_once('#') {
            if let Ok(i) = idx.parse() {
                return RowId {
                    doc_id: doc.to_string(),
                    sentence: Some(i),
                };
            }
        }
    }
    RowId {
        doc_id: s.to_string(),
        sentence: None,
    }
}

/// One row per document (or per sentence); the vocabulary follows first
/// occurrence order across the corpus.
pub fn build_dtm(docs: &[TokenizedDoc], weighting: Weighting, context: ContextUnit) -> Result<DocTermMatrix> {
    if docs.iter().all(TokenizedDoc::is_empty) {
        return Err(Error::EmptyCorpus);
    }
    let mut vocab = Vocabulary::new();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let count = |tokens: &mut dyn Iterator<Item = &str>, vocab: &mut Vocabulary| {
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for t in tokens {
            *counts.entry(vocab.insert(t)).or_insert(0) += 1;
        }
        counts.into_iter().collect::<Vec<_>>()
    };
    for doc in docs {
        match context {
            ContextUnit::Document => {
                rows.push(RowId {
                    doc_id: doc.id.clone(),
                    sentence: None,
                });
                entries.push(count(&mut doc.tokens(), &mut vocab));
            }
            ContextUnit::Sentence => {
                for (i, sentence) in doc.sentences.iter().enumerate() {
                    rows.push(RowId {
                        doc_id: doc.id.clone(),
                        sentence: Some(i),
                    });
                    entries.push(count(&mut sentence.iter().map(String::as_str), &mut vocab));
                }
            }
        }
    }
    DocTermMatrix::from_rows(rows, vocab, entries, weighting, context)
}

/// Drops columns whose total is below `min_total_freq`. Rows left without
/// entries are kept. Column order of surviving terms is preserved.
pub fn trim_dtm(dtm: &DocTermMatrix, min_total_freq: u64) -> Result<DocTermMatrix> {
    if min_total_freq < 1 {
        return Err(Error::InvalidParameter("min_total_freq must be at least 1".into()));
    }
    let totals = dtm.column_totals();
    let mut remap = vec![None; totals.len()];
    let mut vocab = Vocabulary::new();
    for (c, &t) in totals.iter().enumerate() {
        if t >= min_total_freq {
            remap[c] = Some(vocab.insert(dtm.vocab.term(c)));
        }
    }
    let entries = dtm
        .entries
        .iter()
        .map(|row| row.iter().filter_map(|&(c, x)| remap[c].map(|n| (n, x))).collect())
        .collect();
    Ok(DocTermMatrix {
        rows: dtm.rows.clone(),
        vocab,
        entries,
        weighting: dtm.weighting,
        context: dtm.context,
    })
}

/// Key features of a tokenized corpus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LexicalStats {
    pub n_docs: usize,
    pub n_tokens: u64,
    pub n_types: u64,
    /// Types over tokens.
    pub ttr: f64,
    /// Fraction of types that occur exactly once (multiply by 100 for a
    /// percentage).
    pub hapax_pct: f64,
    /// Types over the square root of tokens.
    pub guiraud: f64,
}

impl LexicalStats {
    pub fn from_counts(n_docs: usize, n_tokens: u64, n_types: u64, n_hapax: u64) -> Result<Self> {
        if n_tokens == 0 {
            return Err(Error::EmptyCorpus);
        }
        if n_types == 0 || n_types > n_tokens || n_hapax > n_types {
            return Err(Error::InvalidParameter(format!(
                "inconsistent counts: N={n_tokens}, V={n_types}, hapax={n_hapax}"
            )));
        }
        let (n, v) = (n_tokens as f64, n_types as f64);
        Ok(LexicalStats {
            n_docs,
            n_tokens,
            n_types,
            ttr: v / n,
            hapax_pct: n_hapax as f64 / v,
            guiraud: v / n.sqrt(),
        })
    }
}

/// Corpus-wide token frequencies in first-occurrence order.
pub fn term_frequencies(docs: &[TokenizedDoc]) -> Vec<(String, u64)> {
    let mut vocab = Vocabulary::new();
    let mut freq: Vec<u64> = Vec::new();
    for t in docs.iter().flat_map(TokenizedDoc::tokens) {
        let i = vocab.insert(t);
        if i == freq.len() {
            freq.push(0);
        }
        freq[i] += 1;
    }
    vocab.terms.into_iter().zip(freq).collect()
}

pub fn lexical_stats(docs: &[TokenizedDoc]) -> Result<LexicalStats> {
    let freqs = term_frequencies(docs);
    let n: u64 = freqs.iter().map(|f| f.1).sum();
    let hapax = freqs.iter().filter(|f| f.1 == 1).count() as u64;
    LexicalStats::from_counts(docs.len(), n, freqs.len() as u64, hapax)
}

/// Sorts `(term, frequency)` pairs by descending frequency, ties by term.
pub fn rank_frequencies(mut freqs: Vec<(String, u64)>) -> Vec<(String, u64)> {
    freqs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    freqs
}

/// Top `n` terms by column total, ties broken lexicographically.
pub fn top_terms(dtm: &DocTermMatrix, n: usize) -> Vec<(String, u64)> {
    let freqs = dtm
        .vocab
        .terms()
        .iter()
        .cloned()
        .zip(dtm.column_totals())
        .collect();
    let mut ranked = rank_frequencies(freqs);
    ranked.truncate(n);
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(id: &str, tokens: &[&str]) -> TokenizedDoc {
        TokenizedDoc::from_tokens(id, tokens.iter().copied())
    }

    #[test]
    fn build_counts_and_boolean() {
        let docs = [doc("d", &["a", "b", "a"])];
        let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
        assert_eq!(m.to_dense(), vec![vec![2, 1]]);
        assert_eq!(m.vocab().terms(), ["a", "b"]);
        let m = build_dtm(&docs, Weighting::Boolean, ContextUnit::Document).unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 1]]);

        let docs = [doc("x", &["a"]), doc("y", &["a", "b"])];
        let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn sentence_rows() {
        let d = TokenizedDoc::new("d", vec![vec!["a".into(), "b".into()], vec!["a".into()]]);
        let m = build_dtm(&[d], Weighting::Boolean, ContextUnit::Sentence).unwrap();
        assert_eq!(m.to_dense(), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(m.rows()[1].to_string(), "d#1");
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let docs = [doc("a", &[]), doc("b", &[])];
        assert!(matches!(
            build_dtm(&docs, Weighting::Count, ContextUnit::Document),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn trim_by_total_frequency() {
        let mut tokens = vec!["a"; 25];
        tokens.extend(vec!["b"; 19]);
        let docs = [doc("d", &tokens), doc("e", &["b"; 0])];
        let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
        let t = trim_dtm(&m, 20).unwrap();
        assert_eq!(t.vocab().terms(), ["a"]);
        assert_eq!(t.n_rows(), 2);
        assert_eq!(trim_dtm(&m, 1).unwrap(), m);
        assert!(trim_dtm(&m, 0).is_err());
    }

    #[test]
    fn trimmed_rows_may_become_empty() {
        let docs = [doc("d", &["a", "a"]), doc("e", &["b"])];
        let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
        let t = trim_dtm(&m, 2).unwrap();
        assert_eq!(t.to_dense(), vec![vec![2], vec![0]]);
    }

    #[test]
    fn stats_small() {
        let s = lexical_stats(&[doc("d", &["a", "a", "b"])]).unwrap();
        assert_eq!((s.n_tokens, s.n_types), (3, 2));
        assert!((s.ttr - 2.0 / 3.0).abs() < 1e-12);
        assert!((s.hapax_pct - 0.5).abs() < 1e-12);
        assert!((s.guiraud - 2.0 / 3f64.sqrt()).abs() < 1e-12);

        let s = lexical_stats(&[doc("d", &["x"])]).unwrap();
        assert_eq!((s.ttr, s.hapax_pct, s.guiraud), (1.0, 1.0, 1.0));

        assert!(lexical_stats(&[doc("d", &[])]).is_err());
    }

    #[test]
    fn ttr_from_reported_counts() {
        let s = LexicalStats::from_counts(30, 112_026, 4_155, 0).unwrap();
        assert_eq!(format!("{:.1}", s.ttr * 100.0), "3.7");
        assert!((s.ttr - 0.0371).abs() < 5e-5);
    }

    #[test]
    fn top_terms_ranking() {
        let mut tokens = vec!["good"; 579];
        tokens.extend(vec!["work"; 914]);
        tokens.extend(vec!["year"; 604]);
        let m = build_dtm(&[doc("d", &tokens)], Weighting::Count, ContextUnit::Document).unwrap();
        assert_eq!(top_terms(&m, 2), [("work".to_string(), 914), ("year".to_string(), 604)]);
        assert_eq!(top_terms(&m, 10).len(), 3);

        let m = build_dtm(&[doc("d", &["b", "a", "b", "a", "c"])], Weighting::Count, ContextUnit::Document).unwrap();
        assert_eq!(top_terms(&m, 2), [("a".to_string(), 2), ("b".to_string(), 2)]);
    }

    #[test]
    fn triplet_csv_round_trip() {
        let docs = [doc("d,1", &["a", "b", "a"]), doc("e", &["c", "a"])];
        let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (c, v) = (dir.path().join("m.csv"), dir.path().join("m.vocab"));
        m.write_triplets(&c, &v).unwrap();
        assert_eq!(
            fs::read_to_string(&c).unwrap(),
            "row_id,term,value\n\"d,1\",a,2\n\"d,1\",b,1\ne,a,1\ne,c,1\n"
        );
        assert_eq!(fs::read_to_string(&v).unwrap(), "a\nb\nc\n");
        let back = DocTermMatrix::read_triplets(&c, &v, Weighting::Count, ContextUnit::Document).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn from_rows_normalizes() {
        let vocab = Vocabulary::from_terms(["a", "b"]).unwrap();
        let row = RowId { doc_id: "r".into(), sentence: None };
        let m = DocTermMatrix::from_rows(
            vec![row.clone()],
            vocab.clone(),
            vec![vec![(1, 2), (0, 0), (1, 3)]],
            Weighting::Count,
            ContextUnit::Document,
        )
        .unwrap();
        assert_eq!(m.row(0), &[(1, 5)]);
        assert!(DocTermMatrix::from_rows(vec![row], vocab, vec![vec![(2, 1)]], Weighting::Count, ContextUnit::Document).is_err());
        assert!(Vocabulary::from_terms(["a", "a"]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn corpus() -> impl Strategy<Value = Vec<TokenizedDoc>> {
            proptest::collection::vec(
                proptest::collection::vec(proptest::collection::vec("[a-f]{1,2}", 0..8), 0..4),
                1..6,
            )
            .prop_map(|docs| {
                docs.into_iter()
                    .enumerate()
                    .map(|(i, s)| TokenizedDoc::new(format!("d{i}"), s.into_iter().filter(|x| !x.is_empty()).collect()))
                    .collect()
            })
            .prop_filter("non-empty", |d: &Vec<TokenizedDoc>| d.iter().any(|x| !x.is_empty()))
        }

        proptest! {
            #[test]
            fn count_sum_equals_token_count(docs in corpus()) {
                let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
                let n: usize = docs.iter().map(TokenizedDoc::n_tokens).sum();
                prop_assert_eq!(m.total(), n as u64);
            }

            #[test]
            fn boolean_is_indicator_of_count(docs in corpus(), sentence in any::<bool>()) {
                let ctx = if sentence { ContextUnit::Sentence } else { ContextUnit::Document };
                let c = build_dtm(&docs, Weighting::Count, ctx).unwrap().to_dense();
                let b = build_dtm(&docs, Weighting::Boolean, ctx).unwrap().to_dense();
                for (rc, rb) in c.iter().zip(&b) {
                    for (x, y) in rc.iter().zip(rb) {
                        prop_assert_eq!(*y, u64::from(*x > 0));
                    }
                }
            }

            #[test]
            fn trimming_is_monotone(docs in corpus(), c1 in 1u64..6, c2 in 1u64..6) {
                let (lo, hi) = (c1.min(c2), c1.max(c2));
                let m = build_dtm(&docs, Weighting::Count, ContextUnit::Document).unwrap();
                let a = trim_dtm(&m, lo).unwrap();
                let b = trim_dtm(&m, hi).unwrap();
                prop_assert!(a.n_terms() <= m.n_terms());
                for t in b.vocab().terms() {
                    prop_assert!(a.vocab().get(t).is_some());
                }
            }

            #[test]
            fn guiraud_identity(docs in corpus()) {
                let s = lexical_stats(&docs).unwrap();
                let back = s.guiraud * (s.n_tokens as f64).sqrt();
                prop_assert!((back - s.n_types as f64).abs() <= 1e-12 * s.n_types as f64);
                prop_assert!(s.ttr > 0.0 && s.ttr <= 1.0);
                prop_assert!((0.0..=1.0).contains(&s.hapax_pct));
            }
        }
    }
}
