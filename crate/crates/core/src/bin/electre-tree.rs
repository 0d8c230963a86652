use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use electre_tree::io::{self, BoundaryModel, EnsembleFile, Normalization, RunConfig};
use electre_tree::{Error, Result, Rule};

#[derive(Parser)]
#[command(
    name = "electre-tree",
    version,
    about = "ELECTRE Tri-B sorting and ensemble elicitation"
)]
struct Cli {
    /// Overrides the master seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elicit parameters with an ensemble and write a report.
    Elicit {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        models: Option<usize>,
        /// Share of alternatives sampled for each model.
        #[arg(long)]
        fraction: Option<f64>,
        #[arg(long)]
        generations: Option<usize>,
        #[arg(long)]
        rule: Option<Rule>,
        /// Drop models below this accuracy before voting and merging.
        #[arg(long)]
        trim: Option<f64>,
        /// Where to store the ensemble (JSON).
        #[arg(long)]
        ensemble: Option<PathBuf>,
        /// Report path; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Classify new alternatives with a stored ensemble.
    Classify {
        #[arg(long)]
        ensemble: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordered k-means++ clusters.
    Cluster {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plain ELECTRE Tri-B with given parameters (TOML or JSON).
    Trib {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        rule: Option<Rule>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a decision-boundary grid over two criteria.
    Boundary {
        /// Ensemble file; votes and merged model.
        #[arg(long, conflicts_with = "params")]
        ensemble: Option<PathBuf>,
        /// Parameters of a single model, used with the data options.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        rule: Option<Rule>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        /// Value for a criterion off the grid axes, as NAME=VALUE.
        #[arg(long = "fix", value_parser = parse_fix)]
        fix: Vec<(String, f64)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DataArgs {
    /// Run configuration (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV dataset, overriding the config.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Number of classes.
    #[arg(short, long)]
    k: Option<usize>,
    /// Column with class names, excluded from the criteria.
    #[arg(long)]
    label_column: Option<String>,
    /// none or minmax.
    #[arg(long)]
    normalization: Option<Normalization>,
}

impl DataArgs {
    fn config(&self, seed: Option<u64>) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(p) = &self.input {
            c.dataset = p.clone();
        }
        if let Some(k) = self.k {
            c.k = k;
        }
        if let Some(l) = &self.label_column {
            c.label_column = Some(l.clone());
        }
        if let Some(n) = self.normalization {
            c.normalization = n;
        }
        if let Some(s) = seed {
            c.seed = s;
        }
        if c.dataset.as_os_str().is_empty() {
            return Err(Error::Config("no dataset: pass --input or --config".into()));
        }
        Ok(c)
    }
}

fn parse_fix(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value.parse().map_err(|_| format!("'{value}' is not a number"))?;
    Ok((name.to_owned(), v))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::File {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Elicit {
            data,
            models,
            fraction,
            generations,
            rule,
            trim,
            ensemble,
            report,
        } => {
            let mut c = data.config(cli.seed)?;
            if let Some(n) = models {
                c.n_models = n;
            }
            if let Some(f) = fraction {
                c.sample_fraction = f;
            }
            if let Some(g) = generations {
                c.ga.generations = g;
            }
            if let Some(r) = rule {
                c.rule = r;
            }
            if trim.is_some() {
                c.trim = trim;
            }
            let out = io::run_elicit(&c)?;
            if let Some(p) = ensemble {
                out.file.save(&p)?;
            }
            emit(report.as_deref(), &out.report.render())
        }
        Command::Classify { ensemble, input, out } => {
            let file = EnsembleFile::load(&ensemble)?;
            let res = io::run_classify(&file, io::table::open(&input)?)?;
            if !res.fingerprint_matches {
                eprintln!("warning: input differs from the data the ensemble was built on");
            }
            emit(out.as_deref(), &res.table.render())
        }
        Command::Cluster { data, restarts, out } => {
            let mut c = data.config(cli.seed)?;
            if let Some(r) = restarts {
                c.cluster_restarts = r;
            }
            emit(out.as_deref(), &io::run_cluster(&c)?.render())
        }
        Command::Trib {
            params,
            data,
            rule,
            out,
        } => {
            let params = io::run::load_parameters(&params)?;
            let mut c = data.config(cli.seed)?;
            if c.k == 0 {
                c.k = params.n_classes();
            }
            c.validate()?;
            let d = io::load_unlabeled(io::table::open(&c.dataset)?, &c)?;
            let text = io::run_trib(&d.matrix, &params, rule.unwrap_or(c.rule), &c.class_names())?;
            emit(out.as_deref(), &text)
        }
        Command::Boundary {
            ensemble,
            params,
            data,
            rule,
            x,
            y,
            resolution,
            fix,
            out,
        } => {
            let model = match (ensemble, params) {
                (Some(e), _) => BoundaryModel::from_file(&EnsembleFile::load(&e)?)?,
                (None, Some(p)) => {
                    let params = io::run::load_parameters(&p)?;
                    let mut c = data.config(cli.seed)?;
                    if c.k == 0 {
                        c.k = params.n_classes();
                    }
                    let d = io::load_unlabeled(io::table::open(&c.dataset)?, &c)?;
                    BoundaryModel::from_parameters(&params, &d.matrix, rule.unwrap_or(c.rule))?
                }
                (None, None) => return Err(Error::Config("pass --ensemble or --params".into())),
            };
            let fixed: BTreeMap<String, f64> = fix.into_iter().collect();
            let grid = io::boundary_grid(&model, &x, &y, resolution, &fixed)?;
            let mut buf = Vec::new();
            io::write_grid(&mut buf, &grid)?;
            emit(out.as_deref(), std::str::from_utf8(&buf).expect("csv output is utf-8"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
