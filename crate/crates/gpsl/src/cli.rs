//! Command-line definitions. The subcommand arguments double as the
//! `parameters` record of a run manifest.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "gpsl", version, about = "Heating functionals, optimal profiles and neutron-star bounds")]
pub struct Cli {
    /// JSON file overriding physical constants (falls back to $GPSL_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "gpsl-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate one heating functional.
    Functional(FunctionalArgs),
    /// Write the data behind a figure.
    Figures(FiguresArgs),
    /// Run a verification suite; exit 1 if any property fails.
    Verify(VerifyArgs),
    /// Print and write the effective physical constants.
    Constants(ConstantsArgs),
    /// Re-run the command recorded in a manifest and compare digests.
    #[serde(skip)]
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Functional(_) => "functional",
            Command::Figures(_) => "figures",
            Command::Verify(_) => "verify",
            Command::Constants(_) => "constants",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalKind {
    /// `I[√g]`, needs --g.
    Dirichlet,
    /// Macroscopic collapse functional `I_{r_C}`, needs --g.
    Irc,
    /// Macroscopic feedback functional `I_{r_G}`, needs --g.
    Irg,
    /// Isolated-particle feedback functional, needs --gc and --gg.
    I0,
    /// Pair feedback functional at separation --d, needs --gc and --gg.
    Pair,
    /// Two-particle collapse functional with masses --m1, --m2 at --d, needs --g.
    TwoParticle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Quadrature,
    /// Closed form; only for `i0` with a Gaussian collapse profile and a
    /// Gaussian or matching optimal feedback profile.
    Closed,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FunctionalArgs {
    #[arg(long, value_enum)]
    pub kind: FunctionalKind,
    /// Profile spec, e.g. gaussian:1.0, subgauss:1.9:1.0, quartic:1.0,
    /// optimal:rc=1.0[:rg=1.0], ball:1.0, table:path.csv.
    #[arg(long)]
    pub g: Option<String>,
    /// Collapse profile spec.
    #[arg(long)]
    pub gc: Option<String>,
    /// Feedback profile spec.
    #[arg(long)]
    pub gg: Option<String>,
    /// Particle separation.
    #[arg(long, default_value_t = 0.0)]
    pub d: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Quadrature)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureName {
    /// `R/r_G` against `r_G/r_C`.
    RadiusCurve,
    /// Gaussian collapse profile against optimal feedback profiles.
    ProfileCompare,
    /// `log10` of the Gaussian over optimal feedback heating.
    RatioCurve,
    /// Gaussian collapse profile against uniform-ball feedback profiles.
    MacroProfileCompare,
    /// `λ±` for every catalogue star along `r_C` and `r_G`.
    ExclusionStars,
    /// Internal upper bound merged with external curves.
    ExclusionMerged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfilesArg {
    Optimal,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityArg {
    Uniform,
    TolmanVii,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FiguresArgs {
    #[arg(value_enum)]
    pub name: FigureName,
    /// Log10 grid `start:stop:count` of r_G/r_C, or of lengths in m for
    /// the exclusion figures.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Linear grid `start:stop:count` of r/r_C for the profile figures.
    #[arg(long, allow_hyphen_values = true)]
    pub r_grid: Option<String>,
    /// r_G/r_C values for the profile figures.
    #[arg(long, value_delimiter = ',')]
    pub rg: Vec<f64>,
    /// The length held fixed in exclusion grids, in m.
    #[arg(long, default_value_t = 1e-7)]
    pub fixed_length: f64,
    /// r_G values (m) of the lower-bound lines in the merged exclusion plot.
    #[arg(long, value_delimiter = ',')]
    pub lower_rg: Vec<f64>,
    /// Star catalog JSON; defaults to the two built-in stars.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
    /// Star for the merged plot; defaults to the first catalog entry.
    #[arg(long)]
    pub star: Option<String>,
    /// External upper-bound curves (CSV: r_C, lambda_upper, label).
    #[arg(long)]
    pub overlay: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ProfilesArg::Optimal)]
    pub profiles: ProfilesArg,
    /// Use the rounded coefficients 0.012 and 0.80.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = DensityArg::Uniform)]
    pub density: DensityArg,
    /// Also write a gnuplot script per figure.
    #[arg(long)]
    pub gnuplot_stub: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Sandwich,
    CounterexamplePsl,
    CounterexampleGpsl,
    Closedforms,
    Scaling,
    OptimalityPerturbation,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Sandwich => "sandwich",
            Suite::CounterexamplePsl => "counterexample-psl",
            Suite::CounterexampleGpsl => "counterexample-gpsl",
            Suite::Closedforms => "closedforms",
            Suite::Scaling => "scaling",
            Suite::OptimalityPerturbation => "optimality-perturbation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Monte Carlo samples per configuration.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    /// Number of random configurations.
    #[arg(long, default_value_t = 200)]
    pub configs: usize,
    /// Largest particle number of a configuration.
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    /// Number of perturbations.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Perturbation amplitude.
    #[arg(long, default_value_t = 0.05)]
    pub amplitude: f64,
    /// Flash offset z/r_C of the feedback counter-example.
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ConstantsArgs {
    /// Print the snapshot to stdout as well.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parameters_round_trip() {
        let cli = Cli::try_parse_from(["gpsl", "figures", "ratio-curve", "--grid", "-2:1:31", "--rg", "1,2"]).unwrap();
        let v = serde_json::to_value(&cli.command).unwrap();
        assert_eq!(v["subcommand"], "figures");
        let back: Command = serde_json::from_value(v).unwrap();
        assert_eq!(back, cli.command);
    }
}
