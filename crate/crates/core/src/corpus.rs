//! Document collections loaded from a directory of text files plus a
//! delimited metadata table.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};

/// Column of the metadata table that carries the document identifier.
pub const DOC_ID_COLUMN: &str = "doc_id";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    /// Variable name to value. A missing value is stored as the empty string.
    pub metadata: BTreeMap<String, String>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Provenance {
    #[default]
    Raw,
    AggregatedBy(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Raw => f.write_str("raw"),
            Provenance::AggregatedBy(v) => write!(f, "aggregated-by:{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    provenance: Provenance,
}

impl Corpus {
    /// Builds a corpus from documents, checking id uniqueness and that every
    /// document carries the same metadata keys (absent keys are filled with
    /// the empty marker).
    pub fn new(mut documents: Vec<Document>) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut seen = HashSet::new();
        for doc in &documents {
            if doc.id.is_empty() {
                return Err(Error::InvalidParameter("document id is empty".into()));
            }
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::DuplicateDocId(doc.id.clone()));
            }
        }
        let keys: HashSet<String> = documents
            .iter()
            .flat_map(|d| d.metadata.keys().cloned())
            .collect();
        for doc in &mut documents {
            for key in &keys {
                doc.metadata.entry(key.clone()).or_default();
            }
        }
        Ok(Corpus {
            documents,
            provenance: Provenance::Raw,
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn variables(&self) -> Vec<&str> {
        self.documents[0].metadata.keys().map(String::as_str).collect()
    }
}

/// Loads `<id>.txt` files from `corpus_dir` and joins them with the metadata
/// table by `doc_id`. Documents are ordered by id.
pub fn load_corpus(corpus_dir: &Path, metadata_path: &Path) -> Result<Corpus> {
    let metadata = read_metadata(metadata_path)?;
    let files = list_texts(corpus_dir)?;

    let mut used = HashSet::new();
    let mut documents = Vec::with_capacity(files.len());
    for (id, path) in files {
        let meta = metadata
            .rows
            .get(&id)
            .ok_or_else(|| Error::MissingMetadata(id.clone()))?;
        used.insert(id.clone());
        documents.push(Document {
            text: read_text(&path)?,
            id,
            metadata: meta.clone(),
        });
    }
    for id in metadata.rows.keys().filter(|id| !used.contains(*id)) {
        warn!("metadata row {id:?} has no matching text file; ignored");
    }
    Corpus::new(documents)
}

/// Like [`load_corpus`] for a directory without a metadata table.
pub fn load_texts(corpus_dir: &Path) -> Result<Corpus> {
    let documents = list_texts(corpus_dir)?
        .into_iter()
        .map(|(id, path)| Ok(Document::new(id, read_text(&path)?)))
        .collect::<Result<Vec<_>>>()?;
    Corpus::new(documents)
}

fn list_texts(corpus_dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut files = Vec::new();
    let entries = fs::read_dir(corpus_dir).map_err(|e| Error::io(corpus_dir, e))?;
    for entry in entries {
        let path = entry.map_err(|e| Error::io(corpus_dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                files.push((stem.to_string(), path.clone()));
            }
        }
    }
    if files.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    files.sort();
    Ok(files)
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| Error::NotUtf8(path.to_path_buf()))
}

struct MetadataTable {
    rows: BTreeMap<String, BTreeMap<String, String>>,
}

/// Picks the most frequent of comma, tab and semicolon in the header line.
fn detect_delimiter(header: &str) -> u8 {
    b",\t;"
        .iter()
        .copied()
        .max_by_key(|d| (header.bytes().filter(|b| b == d).count(), *d == b','))
        .unwrap_or(b',')
}

fn read_metadata(path: &Path) -> Result<MetadataTable> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let content = String::from_utf8(bytes).map_err(|_| Error::NotUtf8(path.to_path_buf()))?;
    let content = content.trim_start_matches('\u{feff}');
    let header = content.lines().next().unwrap_or("");
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(detect_delimiter(header))
        .flexible(true)
        .from_reader(content.as_bytes());

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::malformed(path, e.to_string()))?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let id_col = headers
        .iter()
        .position(|h| h == DOC_ID_COLUMN)
        .ok_or_else(|| Error::malformed(path, format!("no {DOC_ID_COLUMN} column")))?;

    let mut rows = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::malformed(path, e.to_string()))?;
        let id = record.get(id_col).unwrap_or("").trim().to_string();
        if id.is_empty() {
            continue;
        }
        let meta: BTreeMap<String, String> = headers
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != id_col)
            .map(|(i, h)| (h.clone(), record.get(i).unwrap_or("").trim().to_string()))
            .collect();
        if rows.insert(id.clone(), meta).is_some() {
            return Err(Error::DuplicateDocId(id));
        }
    }
    Ok(MetadataTable { rows })
}

/// Concatenates documents sharing a value of `variable` into one document
/// per value. Groups are ordered lexicographically by value; member texts
/// keep input order and are joined by a single newline.
pub fn aggregate_by(corpus: &Corpus, variable: &str) -> Result<Corpus> {
    if !corpus.documents[0].metadata.contains_key(variable) {
        return Err(Error::UnknownVariable(variable.to_string()));
    }
    let empty: Vec<String> = corpus
        .documents
        .iter()
        .filter(|d| d.metadata[variable].is_empty())
        .map(|d| d.id.clone())
        .collect();
    if !empty.is_empty() {
        return Err(Error::EmptyGroupValue {
            variable: variable.to_string(),
            ids: empty,
        });
    }

    let mut groups: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for doc in &corpus.documents {
        groups
            .entry(doc.metadata[variable].as_str())
            .or_default()
            .push(doc.text.as_str());
    }
    let documents = groups
        .into_iter()
        .map(|(value, texts)| Document::new(value, texts.join("\n")).with_meta(variable, value))
        .collect();
    let mut out = Corpus::new(documents)?;
    out.provenance = Provenance::AggregatedBy(variable.to_string());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write_corpus(files: &[(&str, &str)], metadata: &str) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        let docs = dir.path().join("docs");
        fs::create_dir(&docs).unwrap();
        for (name, text) in files {
            fs::write(docs.join(name), text).unwrap();
        }
        fs::write(dir.path().join("meta.csv"), metadata).unwrap();
        dir
    }

    fn load(dir: &tempfile::TempDir) -> Result<Corpus> {
        load_corpus(&dir.path().join("docs"), &dir.path().join("meta.csv"))
    }

    #[test]
    fn loads_in_id_order() {
        let dir = write_corpus(
            &[("b.txt", "yo"), ("a.txt", "hi")],
            "doc_id,channel\na,x\nb,y\n",
        );
        let corpus = load(&dir).unwrap();
        let ids: Vec<_> = corpus.documents().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["a", "b"]);
        assert_eq!(corpus.documents()[0].text, "hi");
        assert_eq!(corpus.documents()[1].metadata["channel"], "y");
        assert_eq!(corpus.provenance().to_string(), "raw");
    }

    #[test]
    fn extra_metadata_row_is_ignored() {
        let dir = write_corpus(&[("a.txt", "hi")], "doc_id,channel\na,x\nb,y\n");
        assert_eq!(load(&dir).unwrap().len(), 1);
    }

    #[test]
    fn missing_metadata_names_document() {
        let dir = write_corpus(&[("a.txt", "hi"), ("b.txt", "yo")], "doc_id,channel\na,x\n");
        match load(&dir) {
            Err(Error::MissingMetadata(id)) => assert_eq!(id, "b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_doc_id_is_rejected() {
        let dir = write_corpus(&[("a.txt", "hi")], "doc_id,channel\na,x\na,y\n");
        assert!(matches!(load(&dir), Err(Error::DuplicateDocId(id)) if id == "a"));
    }

    #[test]
    fn non_utf8_file_is_named() {
        let dir = write_corpus(&[("a.txt", "hi")], "doc_id\na\n");
        fs::write(dir.path().join("docs/a.txt"), [0xff, 0xfe, 0x00]).unwrap();
        match load(&dir) {
            Err(Error::NotUtf8(path)) => assert!(path.ends_with("a.txt")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tab_and_semicolon_delimiters() {
        let dir = write_corpus(&[("a.txt", "hi")], "doc_id\tchannel\na\tx\n");
        assert_eq!(load(&dir).unwrap().documents()[0].metadata["channel"], "x");
        let dir = write_corpus(&[("a.txt", "hi")], "doc_id;channel\na;x\n");
        assert_eq!(load(&dir).unwrap().documents()[0].metadata["channel"], "x");
    }

    #[test]
    fn missing_values_become_empty_marker() {
        let dir = write_corpus(
            &[("a.txt", "hi"), ("b.txt", "yo")],
            "doc_id,channel,age\na,x\nb,y,30\n",
        );
        let corpus = load(&dir).unwrap();
        assert_eq!(corpus.documents()[0].metadata["age"], "");
        assert_eq!(corpus.variables(), ["age", "channel"]);
    }

    #[test]
    fn empty_directory_is_empty_corpus() {
        let dir = write_corpus(&[], "doc_id\n");
        assert!(matches!(load(&dir), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn aggregate_two_docs_same_value() {
        let corpus = Corpus::new(vec![
            Document::new("d1", "first text").with_meta("g", "x"),
            Document::new("d2", "second").with_meta("g", "x"),
        ])
        .unwrap();
        let agg = aggregate_by(&corpus, "g").unwrap();
        assert_eq!(agg.len(), 1);
        assert_eq!(agg.documents()[0].id, "x");
        assert_eq!(agg.documents()[0].text, "first text\nsecond");
        assert_eq!(agg.provenance().to_string(), "aggregated-by:g");
    }

    #[test]
    fn aggregate_groups_sorted_by_value() {
        let channels = ["study_work", "irregular", "reunification"];
        let docs = (0..30)
            .map(|i| Document::new(format!("d{i:02}"), format!("t{i}")).with_meta("entry_channel", channels[i % 3]))
            .collect();
        let agg = aggregate_by(&Corpus::new(docs).unwrap(), "entry_channel").unwrap();
        let ids: Vec<_> = agg.documents().iter().map(|d| d.id.as_str()).collect();
        assert_eq!(ids, ["irregular", "reunification", "study_work"]);
        assert!(agg.documents()[0].text.starts_with("t1\nt4\n"));
    }

    #[test]
    fn aggregate_identity_like_when_values_unique() {
        let corpus = Corpus::new(vec![
            Document::new("a", "one").with_meta("g", "p"),
            Document::new("b", "two").with_meta("g", "q"),
        ])
        .unwrap();
        let agg = aggregate_by(&corpus, "g").unwrap();
        let pairs: Vec<_> = agg
            .documents()
            .iter()
            .map(|d| (d.id.as_str(), d.text.as_str()))
            .collect();
        assert_eq!(pairs, [("p", "one"), ("q", "two")]);
        assert_eq!(aggregate_by(&agg, "g").unwrap().documents(), agg.documents());
    }

    #[test]
    fn aggregate_errors() {
        let corpus = Corpus::new(vec![
            Document::new("a", "one").with_meta("g", ""),
            Document::new("b", "two").with_meta("g", "q"),
        ])
        .unwrap();
        assert!(matches!(aggregate_by(&corpus, "nope"), Err(Error::UnknownVariable(_))));
        match aggregate_by(&corpus, "g") {
            Err(Error::EmptyGroupValue { ids, .. }) => assert_eq!(ids, ["a"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn aggregated_length_is_sum_plus_separators(
                texts in proptest::collection::vec(("[a-zé ]{0,12}", 0usize..3), 1..12)
            ) {
                let docs: Vec<Document> = texts
                    .iter()
                    .enumerate()
                    .map(|(i, (t, g))| Document::new(format!("d{i}"), t.clone()).with_meta("g", format!("v{g}")))
                    .collect();
                let corpus = Corpus::new(docs.clone()).unwrap();
                let agg = aggregate_by(&corpus, "g").unwrap();
                for out in agg.documents() {
                    let members: Vec<&Document> = docs.iter().filter(|d| d.metadata["g"] == out.id).collect();
                    let expected: usize = members.iter().map(|d| d.text.chars().count()).sum::<usize>() + members.len() - 1;
                    prop_assert_eq!(out.text.chars().count(), expected);
                }
                let again = aggregate_by(&agg, "g").unwrap();
                prop_assert_eq!(again.documents(), agg.documents());
            }
        }
    }
}
