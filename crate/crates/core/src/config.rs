//! Run configuration: a sectioned TOML file whose values command-line flags
//! may override. Every command writes the effective configuration next to
//! its outputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cooccur::EgoOptions;
use crate::dtm::{ContextUnit, Weighting};
use crate::error::{Error, Result};
use crate::lda::{LdaConfig, SimulationSpec};
use crate::textprep::PrepConfig;

pub const EFFECTIVE_CONFIG_FILE: &str = "effective_config.toml";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub output_dir: PathBuf,
    pub corpus: CorpusSection,
    pub preprocess: PreprocessSection,
    pub matrix: MatrixSection,
    pub topics: TopicsSection,
    pub cooccur: CooccurSection,
    pub explore: ExploreSection,
    pub simulate: SimulateSection,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSection {
    /// Directory of `<doc_id>.txt` files.
    pub dir: Option<PathBuf>,
    /// Metadata table with a `doc_id` column.
    pub metadata: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub lemmas: Option<PathBuf>,
    pub collocations: Option<PathBuf>,
    /// Precomputed count matrix in triplet form, used instead of `dir`
    /// by the topics command.
    pub dtm: Option<PathBuf>,
    /// Vocabulary sidecar for `dtm`.
    pub vocabulary: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessSection {
    pub min_word_len: usize,
    pub lowercase: bool,
    /// Terms with a corpus total below this are dropped before modelling.
    pub min_term_freq: u64,
}

impl Default for PreprocessSection {
    fn default() -> Self {
        PreprocessSection {
            min_word_len: 3,
            lowercase: true,
            min_term_freq: 20,
        }
    }
}

/// Shape of the exported matrix in the preprocess command.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatrixSection {
    pub weighting: Weighting,
    pub context: ContextUnit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopicsSection {
    /// Fit this k only, skipping the range.
    pub k: Option<usize>,
    pub k_min: usize,
    pub k_max: usize,
    /// Override of the BIC choice.
    pub choose_k: Option<usize>,
    /// `None` means 50/k.
    pub alpha: Option<f64>,
    pub delta: f64,
    pub seed: u64,
    pub em_max_iter: usize,
    pub em_rel_tol: f64,
    pub estep_max_iter: usize,
    pub estep_rel_tol: f64,
    /// Metadata variable to aggregate documents by before fitting.
    pub group_by: Option<String>,
    /// Terms listed per topic.
    pub top_terms: usize,
}

impl Default for TopicsSection {
    fn default() -> Self {
        let lda = LdaConfig::default();
        TopicsSection {
            k: None,
            k_min: 2,
            k_max: 10,
            choose_k: None,
            alpha: lda.alpha,
            delta: lda.delta,
            seed: lda.seed,
            em_max_iter: lda.em_max_iter,
            em_rel_tol: lda.em_rel_tol,
            estep_max_iter: lda.estep_max_iter,
            estep_rel_tol: lda.estep_rel_tol,
            group_by: None,
            top_terms: 10,
        }
    }
}

impl TopicsSection {
    pub fn lda_config(&self, k: usize) -> LdaConfig {
        LdaConfig {
            k,
            alpha: self.alpha,
            delta: self.delta,
            seed: self.seed,
            em_max_iter: self.em_max_iter,
            em_rel_tol: self.em_rel_tol,
            estep_max_iter: self.estep_max_iter,
            estep_rel_tol: self.estep_rel_tol,
        }
    }

    /// Inclusive k range to fit.
    pub fn k_range(&self) -> (usize, usize) {
        match self.k {
            Some(k) => (k, k),
            None => (self.k_min, self.k_max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CooccurSection {
    pub focal_terms: Vec<String>,
    pub top_n: usize,
    pub context: ContextUnit,
    pub depth: u8,
    pub llr_threshold: f64,
    pub fanout: usize,
}

impl Default for CooccurSection {
    fn default() -> Self {
        let ego = EgoOptions::default();
        CooccurSection {
            focal_terms: Vec::new(),
            top_n: ego.top_n,
            context: ContextUnit::Sentence,
            depth: ego.depth,
            llr_threshold: ego.llr_threshold,
            fanout: ego.fanout,
        }
    }
}

impl CooccurSection {
    pub fn ego_options(&self) -> EgoOptions {
        EgoOptions {
            top_n: self.top_n,
            depth: self.depth,
            llr_threshold: self.llr_threshold,
            fanout: self.fanout,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExploreSection {
    /// Rows in the frequency table and bar chart.
    pub top_n: usize,
    /// Nodes in the word network.
    pub network_top_n: usize,
    pub context: ContextUnit,
    pub cloud_terms: usize,
    pub cloud_min_size: f64,
    pub cloud_max_size: f64,
}

impl Default for ExploreSection {
    fn default() -> Self {
        ExploreSection {
            top_n: 35,
            network_top_n: 30,
            context: ContextUnit::Document,
            cloud_terms: 100,
            cloud_min_size: 10.0,
            cloud_max_size: 60.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateSection {
    pub k: usize,
    pub v: usize,
    pub m: usize,
    pub doc_len: usize,
    pub alpha: f64,
    pub delta: f64,
    pub seed: u64,
}

impl Default for SimulateSection {
    fn default() -> Self {
        SimulateSection {
            k: 3,
            v: 60,
            m: 300,
            doc_len: 120,
            alpha: 0.1,
            delta: 0.1,
            seed: 1,
        }
    }
}

impl SimulateSection {
    pub fn spec(&self) -> SimulationSpec {
        SimulationSpec {
            k: self.k,
            v: self.v,
            m: self.m,
            doc_len: self.doc_len,
            alpha: self.alpha,
            delta: self.delta,
            seed: self.seed,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            output_dir: PathBuf::from("out"),
            corpus: CorpusSection::default(),
            preprocess: PreprocessSection::default(),
            matrix: MatrixSection::default(),
            topics: TopicsSection::default(),
            cooccur: CooccurSection::default(),
            explore: ExploreSection::default(),
            simulate: SimulateSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn prep_config(&self) -> Result<PrepConfig> {
        PrepConfig::from_files(
            self.corpus.stopwords.as_deref(),
            self.corpus.lemmas.as_deref(),
            self.corpus.collocations.as_deref(),
            self.preprocess.min_word_len,
            self.preprocess.lowercase,
        )
    }

    /// Creates `output_dir` and writes the effective configuration into it.
    pub fn prepare_output(&self) -> Result<()> {
        std::fs::create_dir_all(&self.output_dir).map_err(|e| Error::io(&self.output_dir, e))?;
        let path = self.output_dir.join(EFFECTIVE_CONFIG_FILE);
        std::fs::write(&path, self.to_toml()?).map_err(|e| Error::io(&path, e))
    }

    pub fn output(&self, name: &str) -> PathBuf {
        self.output_dir.join(name)
    }
}
