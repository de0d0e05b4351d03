use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::model::DEFAULT_CELL_CAP;

#[derive(Debug, Parser)]
#[command(name = "sc6v", version, about = "Exact verifiers for the stochastic colored six-vertex model")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct GlobalArgs {
    /// Master seed; every random draw derives from it.
    #[arg(long, env = "HV_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Random evaluation points per identity.
    #[arg(long, default_value_t = 10, global = true)]
    pub trials: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Largest domain enumerated configuration by configuration.
    #[arg(long, default_value_t = DEFAULT_CELL_CAP, global = true)]
    pub cap_cells: usize,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Flip invariance of a boundary-conditioned rectangle probability.
    VerifyFlip(VerifyFlipArgs),
    /// The generalized flip identity for a decorated rectangle element.
    VerifyGenflip(GenFlipArgs),
    /// Equality of joint height laws under a transformation of cuts.
    VerifyMain(MainArgs),
    /// Color-position symmetry of a product of R-factors.
    CpsCheck(CpsArgs),
    /// Kazhdan–Lusztig R-polynomials.
    Rpoly(RpolyArgs),
    /// Distinguished subexpressions of a reduced word.
    DistSubexpr(DistArgs),
    /// Finite-field point counts of positroid strata.
    PositroidCount(PositroidArgs),
    /// Pipe-dream counts by boundary data and the rotation identities.
    CountPd(CountPdArgs),
    /// Scan for counterexamples to the conditional shift identities.
    Conjecture79(ConjectureArgs),
    /// Monte Carlo sampling of the model.
    Sample(SampleArgs),
    /// Two-sample test of polymer shift invariance.
    PolymerTest(PolymerArgs),
    /// Regenerate the golden corpus and compare with the committed files.
    Corpus(CorpusArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyFlip(_) => "verify-flip",
            Command::VerifyGenflip(_) => "verify-genflip",
            Command::VerifyMain(_) => "verify-main",
            Command::CpsCheck(_) => "cps-check",
            Command::Rpoly(_) => "rpoly",
            Command::DistSubexpr(_) => "dist-subexpr",
            Command::PositroidCount(_) => "positroid-count",
            Command::CountPd(_) => "count-pd",
            Command::Conjecture79(_) => "conjecture79",
            Command::Sample(_) => "sample",
            Command::PolymerTest(_) => "polymer-test",
            Command::Corpus(_) => "corpus",
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct VerifyFlipArgs {
    /// Instance file `{"M", "N", "H", "V"}`; the worked 2×3 example if absent.
    pub instance: Option<PathBuf>,
    /// Check every realized boundary pair of every rectangle with `M + N ≤ TOTAL`.
    #[arg(long, value_name = "TOTAL", conflicts_with = "instance")]
    pub exhaustive: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct GenFlipArgs {
    /// Instance file; the nine-color example if absent.
    pub instance: Option<PathBuf>,
    /// Check this many random instances instead.
    #[arg(long, value_name = "COUNT", conflicts_with = "instance")]
    pub random: Option<usize>,
    /// Largest `n` for random instances.
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureExample {
    Double,
    Global,
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Rational,
    Prime,
}

#[derive(Clone, Debug, Args)]
pub struct MainArgs {
    /// Instance file with `domain`, `cuts`, `image_domain`, `image_cuts`, `xmap`, `ymap`.
    #[arg(required_unless_present_any = ["example", "random"])]
    pub instance: Option<PathBuf>,
    /// One of the built-in flip instances.
    #[arg(long, conflicts_with_all = ["instance", "random"])]
    pub example: Option<FigureExample>,
    /// Check this many random catalog instances.
    #[arg(long, value_name = "COUNT", conflicts_with = "instance")]
    pub random: Option<usize>,
    /// Box for random instances, as `COLUMNSxROWS`.
    #[arg(long, default_value = "3x4")]
    pub size: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Rational)]
    pub backend: BackendArg,
}

#[derive(Clone, Debug, Args)]
pub struct CpsArgs {
    /// Instance file `{"n", "word"}`.
    #[arg(required_unless_present = "random")]
    pub instance: Option<PathBuf>,
    /// Check this many random words instead.
    #[arg(long, value_name = "COUNT", conflicts_with = "instance")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub max_n: usize,
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,
}

#[derive(Clone, Debug, Args)]
pub struct RpolyArgs {
    #[arg(long)]
    pub n: usize,
    /// Lower permutation in one-line notation, e.g. `1,3,2`.
    #[arg(long)]
    pub pi: Option<String>,
    /// Upper permutation; every `w ∈ S_n` if absent.
    #[arg(long)]
    pub w: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub pi: String,
    /// Reduced word, e.g. `1,2,1`.
    #[arg(long, required_unless_present = "w")]
    pub word: Option<String>,
    /// Use the canonical reduced word of this permutation.
    #[arg(long, conflicts_with = "word")]
    pub w: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct PositroidArgs {
    #[arg(long = "M", visible_alias = "m")]
    pub m: usize,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Report a single horizontal condition, e.g. `[[3,1]]`.
    #[arg(long = "H", requires = "v")]
    pub h: Option<String>,
    #[arg(long = "V", requires = "h")]
    pub v: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct CountPdArgs {
    #[arg(long = "M", visible_alias = "m")]
    pub m: usize,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long = "H", requires = "v")]
    pub h: Option<String>,
    #[arg(long = "V", requires = "h")]
    pub v: Option<String>,
    /// Report crossing-count polynomials instead of plain counts.
    #[arg(long)]
    pub q_analog: bool,
}

#[derive(Clone, Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
}

#[derive(Clone, Debug, Args)]
pub struct SampleArgs {
    /// Lower boundary path, e.g. `LLUU`.
    #[arg(long = "P", requires = "q_path")]
    pub p_path: Option<String>,
    /// Upper boundary path.
    #[arg(long = "Q", requires = "p_path")]
    pub q_path: Option<String>,
    /// Rectangle `COLUMNSxROWS` when no paths are given.
    #[arg(long, default_value = "2x2", conflicts_with = "p_path")]
    pub rectangle: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Cut `l,d,u,r` whose height is recorded; repeatable.
    #[arg(long = "cut")]
    pub cuts: Vec<String>,
    /// Stream one NDJSON record per sample to standard output.
    #[arg(long)]
    pub stream: bool,
}

#[derive(Clone, Debug, Args)]
pub struct PolymerArgs {
    /// Shift specification file; the built-in one-row shift if absent.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.01)]
    pub significance: f64,
    /// Run the built-in negative control (rows not relabelled).
    #[arg(long, conflicts_with = "spec")]
    pub negative_control: bool,
    /// Check the Gamma degeneration instead of shift invariance.
    #[arg(long, conflicts_with_all = ["spec", "negative_control"])]
    pub gamma: bool,
}

#[derive(Clone, Debug, Args)]
pub struct CorpusArgs {
    /// Corpus directory (default: the one shipped with the crate).
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Rewrite the golden files instead of comparing.
    #[arg(long)]
    pub regen: bool,
}
