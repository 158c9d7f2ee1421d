use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use omega_core::tower::Tower;
use omega_core::{
    embed, from_residues, parse_set_expression, EventuallyPeriodicSet, PolyadicNumber, TowerSpec,
};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "omega",
    version,
    about = "Exact arithmetic in generalized polyadic completions"
)]
pub struct Invocation {
    /// Tower spec: factorial:<depth> | prime:<p>:<depth> | primorial:<depth> | explicit:<B1>,<B2>,...
    #[arg(long, global = true, default_value = "factorial:8", value_parser = parse_tower_spec)]
    pub tower: TowerSpec,

    /// Override the depth of the tower spec.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Output mode.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON record per result.
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print generators, moduli and prime caps of the tower.
    TowerShow,
    /// Norm of an integer (exact) or of a residue chain (interval).
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: Operand,
    },
    /// Distance between two elements.
    Dist {
        #[arg(allow_hyphen_values = true)]
        a: Operand,
        #[arg(allow_hyphen_values = true)]
        b: Operand,
    },
    /// Evaluate an expression over + - * with integer atoms and neg(..).
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Limit of an integer sequence.
    SeqLimit {
        /// Number of trailing terms that must agree at every level.
        #[arg(long, default_value_t = omega_core::DEFAULT_STABILITY_WINDOW)]
        window: usize,
        #[arg(required = true, allow_hyphen_values = true, value_delimiter = ',')]
        terms: Vec<BigInt>,
    },
    /// Gcd certificate of two elements.
    Gcd {
        #[arg(allow_hyphen_values = true)]
        a: Operand,
        #[arg(allow_hyphen_values = true)]
        b: Operand,
    },
    /// Inverse up to the tower depth.
    Inverse {
        #[arg(allow_hyphen_values = true)]
        a: Operand,
    },
    /// Whether a divides b at every level.
    Divides {
        #[arg(allow_hyphen_values = true)]
        a: Operand,
        #[arg(allow_hyphen_values = true)]
        b: Operand,
    },
    /// Prime dichotomy: p divides a, or a and p are coprime.
    Dichotomy {
        p: u64,
        #[arg(allow_hyphen_values = true)]
        a: Operand,
    },
    /// Minimal positive generator g(m) of the ideal m*Omega.
    MinGen {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Whether m belongs to the generator set A.
    #[command(name = "in-A", alias = "in-a")]
    InA {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Whether a finite set is closed to divisibility.
    IsCd {
        #[arg(required = true, value_delimiter = ',')]
        values: Vec<u64>,
    },
    /// Density nu*(S) of a set expression.
    Density {
        #[arg(value_parser = parse_set)]
        set: EventuallyPeriodicSet,
    },
    /// R(S:M); without a modulus, the ratio at every tower level.
    CountResidues {
        #[arg(value_parser = parse_set)]
        set: EventuallyPeriodicSet,
        #[arg(value_parser = parse_positive)]
        modulus: Option<BigInt>,
    },
    /// Haar measure of the coset r + m*Omega.
    Haar {
        r: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Whether an element lies in the closure of a set.
    ClosureMember {
        #[arg(allow_hyphen_values = true)]
        a: Operand,
        #[arg(value_parser = parse_set)]
        set: EventuallyPeriodicSet,
    },
    /// Level map from the coarse tower into the fine tower (--tower).
    RefineCheck {
        #[arg(long, value_parser = parse_tower_spec)]
        coarse: TowerSpec,
    },
    /// Project an element of the fine tower onto the coarse tower.
    Project {
        #[arg(long, value_parser = parse_tower_spec)]
        coarse: TowerSpec,
        #[arg(allow_hyphen_values = true)]
        a: Operand,
    },
    /// Generator of the kernel of the projection.
    KernelGen {
        #[arg(long, value_parser = parse_tower_spec)]
        coarse: TowerSpec,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::TowerShow => "tower-show",
            Command::Norm { .. } => "norm",
            Command::Dist { .. } => "dist",
            Command::Eval { .. } => "eval",
            Command::SeqLimit { .. } => "seq-limit",
            Command::Gcd { .. } => "gcd",
            Command::Inverse { .. } => "inverse",
            Command::Divides { .. } => "divides",
            Command::Dichotomy { .. } => "dichotomy",
            Command::MinGen { .. } => "min-gen",
            Command::InA { .. } => "in-A",
            Command::IsCd { .. } => "is-cd",
            Command::Density { .. } => "density",
            Command::CountResidues { .. } => "count-residues",
            Command::Haar { .. } => "haar",
            Command::ClosureMember { .. } => "closure-member",
            Command::RefineCheck { .. } => "refine-check",
            Command::Project { .. } => "project",
            Command::KernelGen { .. } => "kernel-gen",
        }
    }
}

/// An element operand: a decimal integer or a residue chain `[r1,r2,...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Integer(BigInt),
    Residues(Vec<BigInt>),
}

impl FromStr for Operand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            return inner
                .split(',')
                .map(|r| {
                    r.trim()
                        .parse::<BigInt>()
                        .map_err(|_| format!("invalid residue `{}`", r.trim()))
                })
                .collect::<Result<_, _>>()
                .map(Operand::Residues);
        }
        s.parse::<BigInt>()
            .map(Operand::Integer)
            .map_err(|_| format!("expected an integer or a residue chain [r1,...,rN], got `{s}`"))
    }
}

impl Operand {
    pub fn resolve(&self, tower: &Tower) -> omega_core::Result<PolyadicNumber> {
        match self {
            Operand::Integer(a) => Ok(embed(tower, a.clone())),
            Operand::Residues(rs) => from_residues(tower, rs),
        }
    }
}

fn parse_tower_spec(s: &str) -> Result<TowerSpec, String> {
    s.parse::<TowerSpec>().map_err(|e| e.to_string())
}

fn parse_set(s: &str) -> Result<EventuallyPeriodicSet, String> {
    parse_set_expression(s).map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<BigInt, String> {
    match s.parse::<BigInt>() {
        Ok(m) if m > BigInt::from(0) => Ok(m),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}
