use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "torsion",
    version,
    about = "Exact tables for torsion growth in rank-r Galois modules over Z and F_q[T]",
    after_help = "Polynomials are given as comma-separated coefficients, constant term first: \
                  \"1,1,1\" is T^2+T+1. Exit codes: 0 success, 1 budget or overflow refusal \
                  (or a failed check), 2 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum RingArg {
    #[value(name = "Z")]
    Z,
    #[value(name = "Fq")]
    Fq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Base ring: the integers or F_q[T]
    #[arg(long, global = true, value_enum, ignore_case = true, default_value = "Z")]
    pub ring: RingArg,
    /// Field size for --ring Fq (prime)
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Rank of the module
    #[arg(long, global = true, default_value_t = 2)]
    pub r: usize,
    /// Ideal generator: an integer, or polynomial coefficients "c0,c1,..."
    #[arg(long, global = true)]
    pub modulus: Option<String>,
    #[arg(long = "max-norm", global = true)]
    pub max_norm: Option<u64>,
    #[arg(long = "max-n", global = true)]
    pub max_n: Option<u64>,
    /// Bound C₀ on the index of the Galois image
    #[arg(long = "index-bound", global = true, default_value_t = 1)]
    pub index_bound: u64,
    /// Growth exponent γ in (0, 1], e.g. "1/2"; defaults to 1/r
    #[arg(long, global = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Maximum number of candidate matrices an enumeration may visit
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub budget: u128,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads (default: all cores); never changes results
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupArg {
    /// GL_r(A/a)
    Gl,
    /// stabilizer of a point of exact order a
    Fix,
    /// stabilizer of a cyclic submodule ≅ A/a
    Stab,
    /// (A/a)^×
    Units,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Primes of norm ≤ --max-norm in norm order
    Primes,
    /// Order of GL_r(A/a) or one of its stabilizers
    GlOrder {
        #[arg(long, value_enum, default_value = "gl")]
        group: GroupArg,
        /// Also count by brute-force enumeration
        #[arg(long)]
        verify: bool,
    },
    /// Orbit and stabilizer sizes by enumeration (one vector, or all)
    Orbit {
        /// Coordinates "x1,...,xr" as residue indices
        #[arg(long)]
        vector: Option<String>,
    },
    /// θ(a) as an exact rational
    Theta,
    /// Truncated Euler product for ζ_A(s)
    Zeta {
        #[arg(long, default_value_t = 2)]
        s: u32,
    },
    /// Mertens products ∏(1 - 1/|p|)^{-1} against log n
    Mertens {
        #[arg(long)]
        step: Option<u64>,
    },
    /// Degree interval of K(x) for x of order a, and the basis ratio bound
    Degree,
    /// Torsion upper bound C([L:K] loglog [L:K])^γ, or the p-primary form
    Bound {
        #[arg(long)]
        degree: String,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        /// Prime for the p-primary bound C [L:K]^γ
        #[arg(long)]
        prime: Option<String>,
    },
    /// Bound on the order of a rational cyclic submodule, C [L:K]^{1/(r-1)}
    IsogenyBound {
        #[arg(long)]
        degree: String,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
    },
    /// Primorial tower (or p-primary tower with --prime)
    Tower {
        #[arg(long)]
        prime: Option<String>,
    },
    /// Roots of unity in Q(ζ_n) against φ(n) loglog φ(n)
    Cyclotomic,
    /// Subgroup scan over GL_r(A/a) measuring the empirical constant
    Simulate {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Two points for the intersection-degree check
        #[arg(long)]
        x1: Option<String>,
        #[arg(long)]
        x2: Option<String>,
    },
    /// Formula-versus-oracle suite; exits 1 on any mismatch
    CheckAll,
}
