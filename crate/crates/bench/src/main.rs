//! `ldml` command-line interface: dataset generation, single runs,
//! benchmark sweeps and plotting.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ldml::format::{fmt_f64, load, save};
use ldml::metrics::worst_error;
use ldml::rng::rng_stream;
use ldml::{DataSet, Label, Vector};
use ldml_bench::experiment::{make_instance, run_algorithm};
use ldml_bench::{
    emit_csv, emit_plot, load_csv, presets, run_experiment, summarize, worker_count, Algorithm, BenchError, ExperimentSpec,
    MetricMode, Outcome, Params, RawConfig, Result,
};

#[derive(Parser)]
#[command(name = "ldml", version, about = "List-decodable mixture learning experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigSource {
    /// Config file (`ldml-config-v1`).
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in preset: paper_fig2, paper_heavy_tails, paper_wlow_sweep, desk_small.
    #[arg(long)]
    preset: Option<String>,
    /// Override a config key, e.g. `--set seeds=10`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl ConfigSource {
    fn load(&self) -> Result<RawConfig> {
        let mut raw = match (&self.config, &self.preset) {
            (Some(path), _) => RawConfig::load(path)?,
            (None, Some(name)) => presets::preset(name)?,
            (None, None) => return Err(BenchError::Config("pass --config <file> or --preset <name>".into())),
        };
        for pair in &self.overrides {
            raw.set_pair(pair)?;
        }
        Ok(raw)
    }

    /// Like [`ConfigSource::load`], but an empty config when no source is given.
    fn load_or_empty(&self) -> Result<RawConfig> {
        if self.config.is_some() || self.preset.is_some() {
            return self.load();
        }
        let mut raw = RawConfig::parse(ldml_bench::config::SCHEMA)?;
        for pair in &self.overrides {
            raw.set_pair(pair)?;
        }
        Ok(raw)
    }

    fn spec(&self) -> Result<ExperimentSpec> {
        ExperimentSpec::from_config(&self.load()?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write one attacked mixture sample as an ldml-v1 dataset.
    Gen {
        #[command(flatten)]
        source: ConfigSource,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attack model; defaults to the first one in the config.
        #[arg(long)]
        attack: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one algorithm on a dataset and print its list.
    Run {
        #[arg(long)]
        data: PathBuf,
        /// ours, vanilla_ldme, kmeans, robust_kmeans or dbscan.
        #[arg(long, default_value = "ours")]
        algorithm: String,
        #[command(flatten)]
        source: ConfigSource,
        /// Algorithm setting, e.g. `w_low=0.1` or `k=5`; the first grid entry
        /// of the algorithm by default.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a full experiment and write one CSV row per (algorithm, setting, seed).
    Bench {
        #[command(flatten)]
        source: ConfigSource,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG chart.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Worker threads (LDML_THREADS takes precedence).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Render a CSV report as an SVG bar chart.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// `list_size:<L>` or `error:<x>`.
        #[arg(long, default_value = "list_size:10")]
        mode: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen {
            source,
            seed,
            attack,
            out,
        } => gen(&source.spec()?, seed, attack.as_deref(), &out),
        Command::Run {
            data,
            algorithm,
            source,
            params,
            seed,
        } => run(&data, &algorithm, &source, params.as_deref(), seed),
        Command::Bench {
            source,
            out,
            plot,
            threads,
        } => bench(&source.spec()?, &out, plot.as_deref(), threads),
        Command::Plot { csv, out, mode } => {
            let mode: MetricMode = mode.parse().map_err(BenchError::Config)?;
            emit_plot(&load_csv(&csv)?, mode, &out)
        }
    }
}

fn gen(spec: &ExperimentSpec, seed: u64, attack: Option<&str>, out: &Path) -> Result<()> {
    let attack = match attack {
        None => &spec.attacks[0],
        Some(name) => spec
            .attacks
            .iter()
            .find(|a| a.kind.name() == name)
            .ok_or_else(|| BenchError::Config(format!("attack `{name}` is not listed in the config")))?,
    };
    let inst = make_instance(spec, attack, seed)?;
    save(&inst.data, out)?;
    eprintln!(
        "wrote {} points in d={} ({} attack) to {}",
        inst.data.len(),
        inst.data.dim(),
        attack.kind.name(),
        out.display()
    );
    for (i, mu) in inst.mixture.means.iter().enumerate() {
        eprintln!("  mean {i}: weight {:.4}, |mu| {:.4}", inst.mixture.weights[i], ldml::linalg::norm(mu.as_slice()));
    }
    Ok(())
}

/// Sample means of the labelled components, the reference for `run`.
fn component_means(ds: &DataSet) -> Vec<Vector> {
    let Some(labels) = ds.labels() else {
        return Vec::new();
    };
    let k = labels
        .iter()
        .filter_map(|l| match l {
            Label::Component(c) => Some(*c as usize + 1),
            Label::Adversary => None,
        })
        .max()
        .unwrap_or(0);
    (0..k)
        .filter_map(|c| {
            let idx: Vec<usize> = (0..ds.len()).filter(|&i| labels[i] == Label::Component(c as u32)).collect();
            (!idx.is_empty()).then(|| ds.subset(&idx).mean().ok()).flatten()
        })
        .collect()
}

fn run(data: &Path, algorithm: &str, source: &ConfigSource, params: Option<&str>, seed: u64) -> Result<()> {
    let alg = Algorithm::parse(algorithm).ok_or_else(|| BenchError::Config(format!("unknown algorithm `{algorithm}`")))?;
    let ds = load(data)?;
    let mut raw = source.load_or_empty()?;
    // The dataset fixes the shape; the config supplies constants and grids.
    for (key, value) in [("k", "1"), ("weights", "1"), ("attacks", "none"), ("attack.target", "smallest"), ("attack.extra_targets", "")] {
        raw.set(key, value);
    }
    raw.set("d", &ds.dim().to_string());
    raw.set("n", &ds.len().to_string());
    raw.set("algorithms", alg.name());
    if let Some(p) = params {
        for kv in p.split_whitespace() {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| BenchError::Config(format!("param `{kv}` is not key=value")))?;
            let key = match (alg, k) {
                (Algorithm::Ours | Algorithm::VanillaLdme, "w_low") => "w_low".to_string(),
                (_, "w_low") => return Err(BenchError::Config(format!("{} has no w_low", alg.name()))),
                _ => format!("{}.{k}", alg.name()),
            };
            raw.set(&key, v);
        }
    }
    let spec = ExperimentSpec::from_config(&raw)?;
    let setting: &Params = &spec.grid[0];
    let mut rng = rng_stream(seed, "run/cli").fork(alg.name());
    let t0 = std::time::Instant::now();
    let list = run_algorithm(&spec, setting, &ds, &mut rng)?;
    let elapsed = t0.elapsed().as_secs_f64() * 1e3;
    println!("# {} {setting} seed={seed}", alg.name());
    println!("# list_size {}", list.len());
    for h in list.iter() {
        let coords: Vec<String> = h.mean.as_slice().iter().map(|&x| fmt_f64(x)).collect();
        println!("{} {}", fmt_f64(h.alpha_hat), coords.join(" "));
    }
    let truth = component_means(&ds);
    if !truth.is_empty() && !list.is_empty() {
        let m = worst_error(&truth, &list)?;
        println!("# worst_error {} (against labelled component sample means)", fmt_f64(m.worst_error));
        let per: Vec<String> = m.per_cluster_error.iter().map(|&e| fmt_f64(e)).collect();
        println!("# per_cluster_errors {}", per.join(";"));
    }
    println!("# runtime_ms {elapsed:.1}");
    Ok(())
}

fn bench(spec: &ExperimentSpec, out: &Path, plot: Option<&Path>, threads: Option<usize>) -> Result<()> {
    let threads = worker_count(threads)?;
    eprintln!("{}: {} runs on {threads} workers", spec.name, spec.row_count());
    let t0 = std::time::Instant::now();
    let report = run_experiment(spec, threads)?;
    emit_csv(&report, out)?;
    if let Some(p) = plot {
        emit_plot(&report, spec.metric_mode, p)?;
    }
    println!("# {} ({}), {:.1} s", spec.name, spec.metric_mode, t0.elapsed().as_secs_f64());
    for cell in summarize(&report, spec.metric_mode) {
        match cell.outcome {
            Outcome::Value { setting, runs, q } => println!(
                "{:<32} {:<14} median {:>10.4} [q25 {:.4}, q75 {:.4}] runs {runs} ({setting})",
                cell.group, cell.algorithm, q.median, q.q25, q.q75
            ),
            Outcome::NotAvailable => println!("{:<32} {:<14} n/a", cell.group, cell.algorithm),
        }
    }
    Ok(())
}
