//! Cleaning pipeline from raw text to lemma tokens grouped by sentence.
//!
//! Order per sentence: tokenize (lowercase, URL, punctuation and number
//! removal) → join collocations → lemmatize → drop stopwords and short
//! words. Collocations are matched on surface forms, and filtering sees
//! lemmas.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};

/// Joins the words of a multi-word expression into a single token.
pub const COLLOCATION_JOINER: char = '_';

/// Ordered multi-word expressions, matched greedily longest-first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Collocations {
    expressions: Vec<Vec<String>>,
    by_first: HashMap<String, Vec<usize>>,
}

impl Collocations {
    /// Each expression is normalized with [`tokenize`] and must yield at
    /// least two words.
    pub fn new<S: AsRef<str>>(expressions: &[S], lowercase: bool) -> Result<Self> {
        let mut out = Collocations::default();
        for raw in expressions {
            let words = tokenize(raw.as_ref(), lowercase);
            if words.len() < 2 {
                return Err(Error::InvalidParameter(format!(
                    "collocation {:?} must contain at least two words",
                    raw.as_ref()
                )));
            }
            if out.expressions.contains(&words) {
                continue;
            }
            out.by_first
                .entry(words[0].clone())
                .or_default()
                .push(out.expressions.len());
            out.expressions.push(words);
        }
        let exprs = &out.expressions;
        for candidates in out.by_first.values_mut() {
            // stable: equal lengths keep list order
            candidates.sort_by_key(|&i| std::cmp::Reverse(exprs[i].len()));
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.expressions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.expressions.is_empty()
    }

    pub fn expressions(&self) -> impl Iterator<Item = String> + '_ {
        self.expressions.iter().map(|w| w.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrepConfig {
    pub stopwords: HashSet<String>,
    pub lemma_table: HashMap<String, String>,
    pub collocations: Collocations,
    pub min_word_len: usize,
    pub lowercase: bool,
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfig {
            stopwords: HashSet::new(),
            lemma_table: HashMap::new(),
            collocations: Collocations::default(),
            min_word_len: 3,
            lowercase: true,
        }
    }
}

impl PrepConfig {
    pub fn new(
        stopwords: impl IntoIterator<Item = String>,
        lemma_table: impl IntoIterator<Item = (String, String)>,
        collocations: &[String],
        min_word_len: usize,
        lowercase: bool,
    ) -> Result<Self> {
        if min_word_len < 1 {
            return Err(Error::InvalidParameter("min_word_len must be at least 1".into()));
        }
        let norm = |s: String| if lowercase { s.to_lowercase() } else { s };
        Ok(PrepConfig {
            stopwords: stopwords.into_iter().map(norm).collect(),
            lemma_table: lemma_table
                .into_iter()
                .map(|(k, v)| (norm(k), norm(v)))
                .collect(),
            collocations: Collocations::new(collocations, lowercase)?,
            min_word_len,
            lowercase,
        })
    }

    /// Reads the optional stopword, lemma and collocation files.
    pub fn from_files(
        stopwords: Option<&Path>,
        lemmas: Option<&Path>,
        collocations: Option<&Path>,
        min_word_len: usize,
        lowercase: bool,
    ) -> Result<Self> {
        let stop = match stopwords {
            Some(p) => read_word_list(p)?,
            None => Vec::new(),
        };
        let lemma = match lemmas {
            Some(p) => read_lemma_table(p)?,
            None => Vec::new(),
        };
        let colloc = match collocations {
            Some(p) => read_word_list(p)?,
            None => Vec::new(),
        };
        PrepConfig::new(stop, lemma, &colloc, min_word_len, lowercase)
    }
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| Error::NotUtf8(path.to_path_buf()))
}

/// One entry per line; blank lines and lines starting with `#` are skipped.
pub fn read_word_list(path: &Path) -> Result<Vec<String>> {
    Ok(read_text(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

/// `token<TAB>lemma` per line.
pub fn read_lemma_table(path: &Path) -> Result<Vec<(String, String)>> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        match (cols.next(), cols.next(), cols.next()) {
            (Some(tok), Some(lemma), None) if !tok.trim().is_empty() && !lemma.trim().is_empty() => {
                out.push((tok.trim().to_string(), lemma.trim().to_string()))
            }
            _ => {
                return Err(Error::malformed(
                    path,
                    format!("line {}: expected token<TAB>lemma", lineno + 1),
                ))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedDoc {
    pub id: String,
    pub sentences: Vec<Vec<String>>,
}

impl TokenizedDoc {
    pub fn new(id: impl Into<String>, sentences: Vec<Vec<String>>) -> Self {
        TokenizedDoc {
            id: id.into(),
            sentences,
        }
    }

    /// A single-sentence document.
    pub fn from_tokens<S: Into<String>>(id: impl Into<String>, tokens: impl IntoIterator<Item = S>) -> Self {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        let sentences = if tokens.is_empty() { Vec::new() } else { vec![tokens] };
        TokenizedDoc::new(id, sentences)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.sentences.iter().flatten().map(String::as_str)
    }

    pub fn n_tokens(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.iter().all(Vec::is_empty)
    }
}

/// Splits on `.`, `!` or `?` followed by whitespace or end of text.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if matches!(c, '.' | '!' | '?') {
            let boundary = match chars.peek() {
                None => true,
                Some((_, next)) => next.is_whitespace(),
            };
            if boundary {
                let end = i + c.len_utf8();
                push_trimmed(&mut out, &text[start..end]);
                start = end;
            }
        }
    }
    push_trimmed(&mut out, &text[start..]);
    out
}

fn push_trimmed(out: &mut Vec<String>, segment: &str) {
    let s = segment.trim();
    if !s.is_empty() {
        out.push(s.to_string());
    }
}

/// Byte offset where a URL starts inside a whitespace-free word, if any.
fn url_start(word: &str) -> Option<usize> {
    let www = word.find("www.");
    let scheme = word.find("://").map(|pos| {
        word[..pos]
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
            .last()
            .map_or(pos, |(i, _)| i)
    });
    match (www, scheme) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Lowercases (optionally), removes URLs, splits on whitespace and on any
/// non-alphanumeric character, and drops purely numeric pieces.
pub fn tokenize(sentence: &str, lowercase: bool) -> Vec<String> {
    let text = if lowercase {
        sentence.to_lowercase()
    } else {
        sentence.to_string()
    };
    let mut out = Vec::new();
    for word in text.split_whitespace() {
        let word = match url_start(word) {
            Some(i) => &word[..i],
            None => word,
        };
        for piece in word.split(|c: char| !c.is_alphanumeric()) {
            if !piece.is_empty() && !piece.chars().all(char::is_numeric) {
                out.push(piece.to_string());
            }
        }
    }
    out
}

/// Replaces runs of tokens matching a collocation by the underscore-joined
/// form, scanning left to right and preferring the longest expression.
pub fn apply_collocations(tokens: &[String], collocations: &Collocations) -> Vec<String> {
    if collocations.is_empty() {
        return tokens.to_vec();
    }
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let hit = collocations.by_first.get(&tokens[i]).and_then(|cands| {
            cands.iter().map(|&c| &collocations.expressions[c]).find(|expr| {
                tokens.len() - i >= expr.len() && tokens[i..i + expr.len()] == expr[..]
            })
        });
        match hit {
            Some(expr) => {
                out.push(expr.join(&COLLOCATION_JOINER.to_string()));
                i += expr.len();
            }
            None => {
                out.push(tokens[i].clone());
                i += 1;
            }
        }
    }
    out
}

pub fn is_collocation(token: &str) -> bool {
    token.contains(COLLOCATION_JOINER)
}

/// Maps tokens through the lemma table; unknown tokens and collocations
/// pass through unchanged.
pub fn lemmatize(tokens: &[String], lemma_table: &HashMap<String, String>) -> Vec<String> {
    tokens
        .iter()
        .map(|t| {
            if is_collocation(t) {
                t.clone()
            } else {
                lemma_table.get(t).unwrap_or(t).clone()
            }
        })
        .collect()
}

/// Drops stopwords, then single-word tokens shorter than `min_word_len`
/// characters. Collocations are exempt from the length rule.
pub fn filter_tokens(tokens: &[String], config: &PrepConfig) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| !config.stopwords.contains(*t))
        .filter(|t| is_collocation(t) || t.chars().count() >= config.min_word_len)
        .cloned()
        .collect()
}

pub fn preprocess_sentence(sentence: &str, config: &PrepConfig) -> Vec<String> {
    let tokens = tokenize(sentence, config.lowercase);
    let tokens = apply_collocations(&tokens, &config.collocations);
    let tokens = lemmatize(&tokens, &config.lemma_table);
    filter_tokens(&tokens, config)
}

pub fn preprocess_document(doc: &Document, config: &PrepConfig) -> TokenizedDoc {
    let sentences = segment_sentences(&doc.text)
        .iter()
        .map(|s| preprocess_sentence(s, config))
        .filter(|s| !s.is_empty())
        .collect();
    TokenizedDoc::new(doc.id.clone(), sentences)
}

/// Preprocesses every document in parallel; output keeps corpus order.
pub fn preprocess_corpus(corpus: &Corpus, config: &PrepConfig) -> Vec<TokenizedDoc> {
    corpus
        .documents()
        .par_iter()
        .map(|d| preprocess_document(d, config))
        .collect()
}
