//! Command-line front end: argument parsing into a [`config::RunConfig`]
//! and execution of that config. The binary is a thin wrapper so tests can
//! drive both halves in-process.

pub mod commands;
pub mod config;
pub mod report;

use clap::{Parser, Subcommand};
use config::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "netparity",
    version,
    about = "Information parity analysis for undirected networks"
)]
pub struct Cli {
    /// Upper bound on worker threads for parallel stages (default: all
    /// cores). Never changes results, only wall time.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Threshold a correlation matrix into an unweighted graph.
    Build(commands::BuildArgs),
    /// Compute the full information-parity matrix of a graph.
    Parity(commands::ParityArgs),
    /// Average parity across a density grid for one condition.
    Sweep(commands::SweepArgs),
    /// Compare two conditions of one subject at matched densities.
    Compare(commands::CompareArgs),
    /// Run a manifest of paired subjects and report sign consistency.
    Cohort(commands::CohortArgs),
    /// Generate synthetic graphs and correlation matrices.
    Synth(commands::SynthArgs),
    /// Export high-parity pairs as a TSV edge list.
    Export(commands::ExportArgs),
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let workers = self.workers;
        match self.command {
            Command::Build(args) => args.into_config(workers),
            Command::Parity(args) => args.into_config(workers),
            Command::Sweep(args) => args.into_config(workers),
            Command::Compare(args) => args.into_config(workers),
            Command::Cohort(args) => args.into_config(workers),
            Command::Synth(args) => args.into_config(workers),
            Command::Export(args) => args.into_config(workers),
        }
    }
}

/// Parses argv into an effective configuration with defaults applied.
/// Usage problems surface as a [`clap::Error`], which the binary prints
/// and turns into a nonzero exit.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv).map(Cli::into_config)
}

/// Runs one configuration to completion. `workers`, when set, bounds the
/// parallelism of every library stage via a scoped thread pool; results
/// are identical for any bound.
pub fn execute(config: &RunConfig) -> anyhow::Result<()> {
    let run = || match config.command {
        config::CommandKind::Build => commands::run_build(config),
        config::CommandKind::Parity => commands::run_parity(config),
        config::CommandKind::Sweep => commands::run_sweep(config),
        config::CommandKind::Compare => commands::run_compare(config),
        config::CommandKind::Cohort => commands::run_cohort(config),
        config::CommandKind::Synth => commands::run_synth(config),
        config::CommandKind::Export => commands::run_export(config),
    };
    match config.workers {
        Some(0) => anyhow::bail!("--workers must be at least 1"),
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| anyhow::anyhow!("--workers {workers}: {e}"))?
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use config::{CommandKind, ReportFormat};
    use netparity::parity::LogBase;

    fn parse(line: &[&str]) -> RunConfig {
        parse_args(std::iter::once("netparity").chain(line.iter().copied())).unwrap()
    }

    #[test]
    fn parity_args_map_to_config() {
        let config = parse(&[
            "parity",
            "--graph",
            "g.edges",
            "--log-base",
            "bits",
            "--output",
            "pm.csv",
        ]);
        assert_eq!(config.command, CommandKind::Parity);
        assert_eq!(config.graph.as_deref(), Some("g.edges"));
        assert_eq!(config.log_base, LogBase::Bits);
        assert_eq!(config.output.as_deref(), Some("pm.csv"));
        assert!(!config.giant_component);
    }

    #[test]
    fn sweep_grid_parses_to_nine_targets() {
        let config = parse(&["sweep", "--corr", "c.csv", "--mean-degrees", "8:40:4"]);
        let targets =
            config::parse_density_grid(config.mean_degrees.as_deref().unwrap(), 104).unwrap();
        assert_eq!(targets.len(), 9);
    }

    #[test]
    fn compare_requires_both_conditions() {
        let err = parse_args(["netparity", "compare", "--corr-a", "a.csv"]).unwrap_err();
        assert!(err.to_string().contains("--corr-b"));
    }

    #[test]
    fn defaults_are_baked_into_the_config() {
        let config = parse(&["sweep", "--corr", "c.csv"]);
        assert_eq!(config.mean_degrees.as_deref(), Some("8:40:4"));
        assert_eq!(config.log_base, LogBase::Bits);
        assert_eq!(config.format, ReportFormat::Json);

        let config = parse(&["build", "--corr", "c.csv"]);
        assert_eq!(config.mean_degrees.as_deref(), Some("28"));

        let config = parse(&["export", "--parity", "pm.csv"]);
        assert_eq!(config.cutoff, Some(0.25));
    }

    #[test]
    fn workers_is_global_and_never_echoed() {
        let config = parse(&["cohort", "--manifest", "m.csv", "--workers", "4"]);
        assert_eq!(config.workers, Some(4));
        assert_eq!(config.echo().workers, None);
        let json = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        assert!(parse_args(["netparity", "sweep", "--corr", "c.csv", "--bogus"]).is_err());
        assert!(parse_args(["netparity", "nonsense"]).is_err());
    }

    #[test]
    fn conflicting_inputs_are_usage_errors() {
        let err = parse_args([
            "netparity", "build", "--corr", "c.csv", "--series", "t.csv",
        ])
        .unwrap_err();
        assert!(err.to_string().contains("cannot be used with"));
        let err = parse_args([
            "netparity",
            "build",
            "--corr",
            "c.csv",
            "--mean-degree",
            "10",
            "--threshold",
            "0.5",
        ])
        .unwrap_err();
        assert!(err.to_string().contains("cannot be used with"));
        // Cluster pairs without a cluster file are meaningless.
        assert!(parse_args([
            "netparity",
            "compare",
            "--corr-a",
            "a.csv",
            "--corr-b",
            "b.csv",
            "--cluster-pairs",
            "x:y",
        ])
        .is_err());
    }
}
