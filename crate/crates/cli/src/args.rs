use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "jnp",
    version = concat!(env!("CARGO_PKG_VERSION"), " (algebra format 1)"),
    about = "Exact computations with Jacobi Novikov-Poisson algebras"
)]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an identity on an algebra file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        law: LawArg,
        /// Map name for derivation and admissible-pair checks.
        #[arg(long, default_value = "P")]
        map: String,
        /// Second map for admissible-pair checks.
        #[arg(long, default_value = "Q")]
        map2: String,
        /// Product a derivation is checked against.
        #[arg(long, value_enum, default_value = "dot")]
        which: WhichArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Basis of the integral space.
    Integrals { file: PathBuf },
    /// Basis of the invariant symmetric forms.
    Forms { file: PathBuf },
    /// Decide whether a nondegenerate integral exists.
    Frobenius {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Build a new algebra from one or two inputs.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the Jacobi axioms on the Laurent extension over a degree grid.
    Affinize {
        file: PathBuf,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        grid: String,
        /// Evaluate over a prime field anyway.
        #[arg(long)]
        allow_prime: bool,
    },
    /// Module checks and constructions.
    #[command(subcommand)]
    Module(Module),
    /// Built-in families of algebras.
    #[command(subcommand)]
    Catalog(Catalog),
    /// Enumerate second products on a base algebra over a prime field.
    Search {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "jnp")]
        law: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Check that the second product is simple (prime fields only).
    Simple {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Args, Debug)]
pub struct Output {
    /// Write the resulting file here instead of standard output.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// a∘b = a·P(b) for a derivation P.
    FromDerivation {
        file: PathBuf,
        #[arg(long, default_value = "P")]
        map: String,
        #[command(flatten)]
        out: Output,
    },
    /// a∘b = a·(P + qQ)(b) for an admissible pair.
    CircQ {
        file: PathBuf,
        #[arg(long, default_value = "P")]
        map: String,
        #[arg(long, default_value = "Q")]
        map2: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        out: Output,
    },
    /// Commutator bracket of a JNP algebra.
    Commutator {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Bracket twisted by a derivation.
    Twisted {
        file: PathBuf,
        #[arg(long, default_value = "P")]
        map: String,
        #[command(flatten)]
        out: Output,
    },
    /// Tensor product of two JNP algebras.
    TensorJnp {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Jacobi algebra on the tensor product of a JNP and a right JNP algebra.
    TensorJacobi {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// a∘b + ξ·a·b.
    XiShift {
        file: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[command(flatten)]
        out: Output,
    },
    /// a∘(u·b).
    Kantor {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        out: Output,
    },
    /// Conformal deformation of a Jacobi algebra by an invertible element.
    Conformal {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum Module {
    /// Check a module given as MOD.json (or the `module` key of an algebra file).
    Check { algebra: PathBuf, module: PathBuf },
    /// The adjoint module.
    Adjoint {
        algebra: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The dual of a module.
    Dual {
        algebra: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum Catalog {
    List,
    Emit {
        name: String,
        /// Parameter assignment K=V; repeatable.
        #[arg(long = "set", allow_hyphen_values = true)]
        set: Vec<String>,
        /// Target field: `p=P`, or `Q` for the rationals.
        #[arg(long)]
        field: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    Verify {
        #[arg(long)]
        plan: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LawArg {
    UnitalCommAssoc,
    Novikov,
    RightNovikov,
    Dnp,
    Jnp,
    RightJnp,
    Jacobi,
    TransposedPoisson,
    Quadratic,
    DotFrobenius,
    FrobeniusJacobi,
    Derivation,
    Admissible,
    Simple,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum WhichArg {
    Dot,
    Circ,
    Bracket,
}
