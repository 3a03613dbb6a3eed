use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fsr_core::angle_dynamics::Angle;
use fsr_core::mating::Side;
use fsr_core::Config;

#[derive(Debug, Parser)]
#[command(name = "fsr", version, about = "Finite subdivision rules for matings of Misiurewicz quadratics")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Cache directory; results are reused across runs.
    #[arg(long, global = true, env = "FSR_WORKSPACE", value_name = "DIR")]
    pub workspace: Option<PathBuf>,
    /// Bound on triod resolution steps and ray-closure joins.
    #[arg(long, global = true, value_name = "N")]
    pub depth_bound: Option<usize>,
    /// Largest limb denominator searched.
    #[arg(long, global = true, value_name = "N")]
    pub limb_bound: Option<usize>,
    /// Deepest level expanded explicitly.
    #[arg(long, global = true, value_name = "N")]
    pub expansion_bound: Option<usize>,
}

impl Global {
    pub fn config(&self) -> Config {
        let mut c = Config::default();
        if let Some(n) = self.depth_bound {
            c.triod_bound = n;
            c.closure_bound = n;
        }
        if let Some(n) = self.limb_bound {
            c.limb_bound = n;
        }
        if let Some(n) = self.expansion_bound {
            c.expansion_bound = n;
        }
        c
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single polynomials.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Matings of two polynomials.
    #[command(subcommand)]
    Mate(MateCommand),
    /// Subdivision rules.
    #[command(subcommand)]
    Rule(RuleCommand),
    /// Render an artifact as JSON, DOT or SVG.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Hubbard tree of the parameter angle.
    Tree { angle: Angle },
}

#[derive(Debug, Clone, Args)]
pub struct Pair {
    pub alpha: Angle,
    pub beta: Angle,
}

#[derive(Debug, Subcommand)]
pub enum MateCommand {
    /// Admissibility of the pair.
    Validate(Pair),
    /// Ray classes generating the essential equivalence.
    Partition(Pair),
    /// Subdivision rule of the essential mating.
    Fsr {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "SIDE")]
        single_tree: Option<SideArg>,
    },
    /// Obstruction check of the essential partition.
    Obstruction(Pair),
    /// Pseudo-equator, edge replacement matrix and recovered angles.
    PseudoEquator(Pair),
}

#[derive(Debug, Subcommand)]
pub enum RuleCommand {
    /// Tile census for levels 0..=n.
    Iterate {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "N")]
        levels: usize,
        #[arg(long, value_name = "SIDE")]
        single_tree: Option<SideArg>,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, value_enum)]
    pub format: Format,
    #[arg(long, value_enum)]
    pub target: Target,
    /// One angle for `tree`, two for every other target.
    #[arg(required = true, num_args = 1..=2)]
    pub angles: Vec<Angle>,
    /// Subdivision level: 0 is the base complex, 1 its pullback.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    #[arg(long, value_name = "SIDE")]
    pub single_tree: Option<SideArg>,
    /// Write here instead of stdout.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Alpha,
    Beta,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Alpha => Side::Alpha,
            SideArg::Beta => Side::Beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Tree,
    Partition,
    Complex,
    Rule,
    Equator,
    Decomposition,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Tree => "tree",
            Target::Partition => "partition",
            Target::Complex => "complex",
            Target::Rule => "rule",
            Target::Equator => "equator",
            Target::Decomposition => "decomposition",
        }
    }
}
