//! `coxsub`: command-line front end for nerves, homology, colourings and
//! presentations of Coxeter groups.
//!
//! Exit codes: 0 success, 1 negative verdict under `--strict` (or a failed
//! `verify`), 2 input error, 3 precondition or hypothesis failure.

mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use coxsub::CoefficientRing;

#[derive(Parser, Debug)]
#[command(name = "coxsub", version, about = "Nerves, homology and torsion-free subgroups of Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Exit with status 1 when a predicate command's verdict is negative.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for independent homology computations.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Rings {
    /// Coefficient ring: Z, Q or Fp:<p>. Repeatable.
    #[arg(long = "ring", default_value = "Z")]
    pub rings: Vec<CoefficientRing>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Also write the produced document to this file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nerve of a Coxeter system: the complex of spherical subsets.
    Nerve {
        system: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Whether a complex is flag.
    FlagCheck { complex: PathBuf },
    /// Simplicial homology.
    Homology {
        complex: PathBuf,
        #[command(flatten)]
        rings: Rings,
        #[arg(long)]
        reduced: bool,
    },
    /// Simplicial cohomology.
    Cohomology {
        complex: PathBuf,
        #[command(flatten)]
        rings: Rings,
        #[arg(long)]
        reduced: bool,
    },
    /// Pseudo-manifold, homology-manifold and orientability checks.
    ManifoldCheck {
        complex: PathBuf,
        #[command(flatten)]
        rings: Rings,
    },
    /// Whether a complex is a homology sphere.
    SphereCheck {
        complex: PathBuf,
        #[command(flatten)]
        rings: Rings,
    },
    /// Barycentric subdivision.
    Subdivide {
        complex: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Proper colouring of the graph of finite labels.
    Color {
        system: PathBuf,
        /// Look for a colouring with at most this many colours instead of
        /// the chromatic number.
        #[arg(long, conflicts_with = "by_dimension")]
        colors: Option<usize>,
        /// Colour subdivision vertices by the dimension of their simplex.
        #[arg(long)]
        by_dimension: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Adjacency, connectivity and star coverage of colour classes.
    ColorReport { system: PathBuf, coloring: PathBuf },
    /// Products of equally coloured generators lying in the colouring kernel.
    SubgroupGens { system: PathBuf, coloring: PathBuf },
    /// Presentation with commutator and square relators pulled back along a
    /// colouring.
    PullbackPresentation {
        system: PathBuf,
        coloring: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Orbifold Euler characteristic of a Coxeter group.
    Euler {
        system: PathBuf,
        /// Also print the characteristic multiplied by this index.
        #[arg(long)]
        index: Option<u64>,
    },
    /// Cells and homology of the Davis complex modulo a colouring kernel.
    DavisQuotient {
        system: PathBuf,
        /// A homomorphism or colouring file.
        hom: PathBuf,
        #[command(flatten)]
        rings: Rings,
    },
    /// Virtual cohomological dimension read off the nerve.
    VcdReport {
        system: PathBuf,
        #[command(flatten)]
        rings: Rings,
    },
    /// Cohomology with group-ring coefficients for manifold nerves.
    FreeCohomology {
        system: PathBuf,
        #[command(flatten)]
        rings: Rings,
    },
    /// Normal form of a word in a right-angled Coxeter group.
    WordReduce {
        system: PathBuf,
        word: String,
        /// Only delete cancelling pairs; keep the letter order.
        #[arg(long)]
        geodesic_only: bool,
    },
    /// Whether generator images send every relator to the identity.
    VerifyHom { presentation: PathBuf, system: PathBuf, images: PathBuf },
    /// Reidemeister-Schreier presentation of a homomorphism's kernel.
    RsPresentation {
        /// A presentation, or a system (its Coxeter presentation is used).
        presentation: PathBuf,
        /// A homomorphism or colouring file.
        hom: PathBuf,
        /// Run Tietze simplification with this effort afterwards.
        #[arg(long)]
        simplify: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Tietze simplification.
    Tietze {
        presentation: PathBuf,
        #[arg(long, default_value_t = 4)]
        effort: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Abelian invariants of a presentation or of a Coxeter system.
    Abelianize { presentation: PathBuf },
    /// Run the built-in check battery and print a scorecard.
    Verify {
        /// Run only this check.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// What a command produced: text for stdout and whether its verdict was
/// negative.
pub struct Outcome {
    pub stdout: String,
    pub negative: bool,
    /// Negative verdicts that fail regardless of `--strict`.
    pub always_fail: bool,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, negative: false, always_fail: false }
    }

    pub fn verdict(stdout: String, positive: bool) -> Self {
        Outcome { stdout, negative: !positive, always_fail: false }
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Precondition(String),
}

impl From<coxsub::Error> for CliError {
    fn from(e: coxsub::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Precondition(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stdout.is_empty() && !out.stdout.ends_with('\n') {
                println!();
            }
            if out.always_fail || (out.negative && cli.global.strict) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Precondition(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
