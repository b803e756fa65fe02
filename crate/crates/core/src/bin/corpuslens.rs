use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corpuslens::config::RunConfig;
use corpuslens::dtm::{ContextUnit, Weighting};
use corpuslens::pipeline;
use corpuslens::Result;

#[derive(Parser)]
#[command(name = "corpuslens", version, about = "Corpus statistics, topic models and co-occurrence networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Key lexical features of the corpus.
    Stats(Common),
    /// Tokenized corpus, frequencies and the trimmed document-term matrix.
    Preprocess {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        weighting: Option<Weighting>,
        #[arg(long)]
        context: Option<ContextUnit>,
    },
    /// LDA with BIC selection of k, topic terms and document mixtures.
    Topics {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        topics: TopicArgs,
    },
    /// LLR rankings and ego networks for focal terms.
    Cooccur {
        #[command(flatten)]
        common: Common,
        /// Focal term; repeat for several.
        #[arg(long = "focal")]
        focal: Vec<String>,
        #[arg(long)]
        top_n: Option<usize>,
        #[arg(long)]
        context: Option<ContextUnit>,
        #[arg(long)]
        depth: Option<u8>,
        #[arg(long)]
        llr_threshold: Option<f64>,
        #[arg(long)]
        fanout: Option<usize>,
    },
    /// Synthetic corpus from the LDA generative process.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        doc_len: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Frequency table, word-cloud data and the top-N word network.
    Explore {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        top_n: Option<usize>,
        #[arg(long)]
        network_top_n: Option<usize>,
        #[arg(long)]
        context: Option<ContextUnit>,
    },
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, short)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    corpus_dir: Option<PathBuf>,
    #[arg(long)]
    metadata: Option<PathBuf>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    lemmas: Option<PathBuf>,
    #[arg(long)]
    collocations: Option<PathBuf>,
    #[arg(long)]
    min_word_len: Option<usize>,
    #[arg(long)]
    min_term_freq: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct TopicArgs {
    /// Fit a single k instead of a range.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k_min: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    /// Report this k instead of the BIC minimum.
    #[arg(long)]
    choose_k: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    em_max_iter: Option<usize>,
    #[arg(long)]
    em_rel_tol: Option<f64>,
    #[arg(long)]
    group_by: Option<String>,
    #[arg(long)]
    top_terms: Option<usize>,
    /// Count matrix in triplet form instead of a text corpus.
    #[arg(long)]
    dtm: Option<PathBuf>,
    #[arg(long)]
    vocabulary: Option<PathBuf>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn set_opt<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

impl Common {
    fn config(self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        set(&mut c.output_dir, self.output_dir);
        set_opt(&mut c.corpus.dir, self.corpus_dir);
        set_opt(&mut c.corpus.metadata, self.metadata);
        set_opt(&mut c.corpus.stopwords, self.stopwords);
        set_opt(&mut c.corpus.lemmas, self.lemmas);
        set_opt(&mut c.corpus.collocations, self.collocations);
        set(&mut c.preprocess.min_word_len, self.min_word_len);
        set(&mut c.preprocess.min_term_freq, self.min_term_freq);
        set(&mut c.topics.seed, self.seed);
        set(&mut c.simulate.seed, self.seed);
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Stats(common) => {
            let stats = pipeline::cmd_stats(&common.config()?)?;
            print!("{}", pipeline::stats_report(&stats));
        }
        Command::Preprocess { common, weighting, context } => {
            let mut c = common.config()?;
            set(&mut c.matrix.weighting, weighting);
            set(&mut c.matrix.context, context);
            let docs = pipeline::cmd_preprocess(&c)?;
            println!("preprocessed {} documents into {}", docs.len(), c.output_dir.display());
        }
        Command::Topics { common, topics: t } => {
            let mut c = common.config()?;
            let s = &mut c.topics;
            set_opt(&mut s.k, t.k);
            set(&mut s.k_min, t.k_min);
            set(&mut s.k_max, t.k_max);
            set_opt(&mut s.choose_k, t.choose_k);
            set_opt(&mut s.alpha, t.alpha);
            set(&mut s.delta, t.delta);
            set(&mut s.em_max_iter, t.em_max_iter);
            set(&mut s.em_rel_tol, t.em_rel_tol);
            set_opt(&mut s.group_by, t.group_by);
            set(&mut s.top_terms, t.top_terms);
            set_opt(&mut c.corpus.dtm, t.dtm);
            set_opt(&mut c.corpus.vocabulary, t.vocabulary);
            let out = pipeline::cmd_topics(&c)?;
            for (k, b) in out.selection.k_values.iter().zip(&out.selection.bic) {
                println!("k={k}\tBIC={b:.2}");
            }
            println!("best k={}, chosen k={}", out.selection.best_k, out.selection.chosen_k);
        }
        Command::Cooccur { common, focal, top_n, context, depth, llr_threshold, fanout } => {
            let mut c = common.config()?;
            if !focal.is_empty() {
                c.cooccur.focal_terms = focal;
            }
            set(&mut c.cooccur.top_n, top_n);
            set(&mut c.cooccur.context, context);
            set(&mut c.cooccur.depth, depth);
            set(&mut c.cooccur.llr_threshold, llr_threshold);
            set(&mut c.cooccur.fanout, fanout);
            for net in pipeline::cmd_cooccur(&c)? {
                println!("{}: {} nodes, {} edges", net.focal, net.nodes.len(), net.edges.len());
            }
        }
        Command::Simulate { common, k, v, m, doc_len, alpha, delta } => {
            let mut c = common.config()?;
            let s = &mut c.simulate;
            set(&mut s.k, k);
            set(&mut s.v, v);
            set(&mut s.m, m);
            set(&mut s.doc_len, doc_len);
            set(&mut s.alpha, alpha);
            set(&mut s.delta, delta);
            let sim = pipeline::cmd_simulate(&c)?;
            println!("{} documents, {} tokens", sim.dtm.n_rows(), sim.dtm.total());
        }
        Command::Explore { common, top_n, network_top_n, context } => {
            let mut c = common.config()?;
            set(&mut c.explore.top_n, top_n);
            set(&mut c.explore.network_top_n, network_top_n);
            set(&mut c.explore.context, context);
            let net = pipeline::cmd_explore(&c)?;
            println!("word network: {} nodes, {} edges", net.nodes.len(), net.edges.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
