use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use repcalc_core::homcalc::DEFAULT_SEED;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "repcalc",
    version,
    about = "Exact computations with finite-dimensional modules over finitely presented algebras"
)]
struct Cli {
    /// Read every document over this field instead (Q, F<p>, F<p>^<r>).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    /// Plain text, one item per line (scheme-equations only).
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CatalogName {
    Kronecker,
    DualNumbers,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an algebra and report its basic invariants.
    AlgebraCheck { algebra: PathBuf },
    /// Check the defining relations on a module.
    ModuleValidate { module: PathBuf },
    /// Krull-Schmidt decomposition with isomorphism classes of summands.
    ModuleDecompose { module: PathBuf },
    /// Basis of Hom(source, target).
    ModuleHom {
        source: PathBuf,
        target: PathBuf,
        /// Only radical morphisms (both modules indecomposable).
        #[arg(long)]
        radical: bool,
    },
    /// dim Ext^degree(source, target).
    ModuleExt {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Vector space dual over the opposite algebra.
    ModuleDual { module: PathBuf },
    /// Membership predicates.
    Membership {
        #[command(subcommand)]
        predicate: Membership,
    },
    /// Embed a module over k<x_1..x_n> into the (n+1)-Kronecker algebra.
    EmbedKronecker { module: PathBuf },
    /// Equations of the module scheme Mod(A, n) for a free presentation.
    SchemeEquations {
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Stabilizer and orbit dimensions, optionally comparing two points.
    SchemeOrbit {
        module: PathBuf,
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Specialize a family at (lambda, index).
    TubeSpecialize {
        family: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        index: usize,
    },
    /// 0 -> X_i -> X_j -> X_(j-i) -> 0 at lambda.
    TubeSes {
        family: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Specialize, decompose and classify a family over a grid of points.
    ExperimentBt1 {
        family: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        lambdas: Vec<String>,
        #[arg(long, default_value_t = 3)]
        i_max: usize,
    },
    /// Random chains of radical maps between small indecomposables.
    ExperimentHaradaSai {
        /// Built-in catalog, used when no modules are given.
        #[arg(long, value_enum, default_value_t = CatalogName::Kronecker)]
        catalog: CatalogName,
        #[arg(long)]
        bound: usize,
        #[arg(long, default_value_t = 100)]
        chains: usize,
        /// Indecomposable modules forming the catalog.
        modules: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Membership {
    /// target is generated by module.
    Gen { module: PathBuf, target: PathBuf },
    /// target is cogenerated by module.
    Cogen { module: PathBuf, target: PathBuf },
    /// Hom(module, target) = 0 (right) or Hom(target, module) = 0 (left).
    HomOrth {
        module: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Ext^degree vanishing on the chosen side.
    ExtOrth {
        module: PathBuf,
        target: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Projective dimension at most bound.
    Pdim {
        module: PathBuf,
        #[arg(long)]
        bound: usize,
    },
    /// target is injective relative to the sequence.
    RelInj { ses: PathBuf, target: PathBuf },
    /// Presentation morphism with image in the radical.
    P1 {
        /// Presentation document; omitted when --module is given.
        presentation: Option<PathBuf>,
        /// Use the minimal presentation of this module.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Presentation morphism with image and kernel in the radicals.
    P2 {
        presentation: Option<PathBuf>,
        #[arg(long)]
        module: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(commands::Failure::Domain(report)) => {
            eprintln!("{}", report);
            ExitCode::from(1)
        }
    }
}
