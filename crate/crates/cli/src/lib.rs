//! Command dispatch for the `omega` binary.

pub mod args;
pub mod eval;
pub mod record;

use std::io::{self, Write};

use num_bigint::BigInt;
use omega_core::measure::level_ratios;
use omega_core::tower::Tower;
use omega_core::{
    check_refinement, closure_member, count_incongruent, distance, divides, gcd_certificate,
    haar_coset, in_a, inverse, is_cd_set, kernel_generator, limit_of_sequence, minimal_generator,
    norm, norm_of_integer, nu_star, prime_dichotomy, project, Dichotomy, DyadicInterval, Error,
    PolyadicNumber, TowerSpec,
};

pub use args::{Command, Format, Invocation, Operand};
use record::{CapEntry, CertificateLevel, LevelPair, Outcome, RatioLevel, Record};

/// Exit status for domain failures such as a non-unit or a divergent sequence.
pub const EXIT_DOMAIN: i32 = 1;
/// Exit status for malformed input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Syntax(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(
                Error::NotUnit { .. }
                | Error::NotRefinable { .. }
                | Error::NotConverged { .. }
                | Error::InexactCaps { .. }
                | Error::NotInA(_)
                | Error::TowerMismatch,
            ) => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        }
    }

    fn outcome(&self) -> Outcome {
        let (error, level, prime) = match self {
            Failure::Core(Error::NotUnit { level, prime }) => {
                ("not-unit", Some(*level), Some(prime.to_string()))
            }
            Failure::Core(Error::NotRefinable { level }) => ("not-refinable", Some(*level), None),
            Failure::Core(Error::NotConverged { level }) => ("not-converged", Some(*level), None),
            Failure::Core(Error::InexactCaps { prime, .. }) => {
                ("inexact-caps", None, Some(prime.to_string()))
            }
            Failure::Core(Error::NotInA(p)) => ("not-in-a", None, Some(p.to_string())),
            Failure::Core(Error::CompatibilityViolation { level }) => {
                ("incompatible", Some(*level), None)
            }
            Failure::Core(_) => ("invalid-input", None, None),
            Failure::Syntax(_) => ("syntax", None, None),
        };
        Outcome::Error {
            error: error.into(),
            message: self.to_string(),
            level,
            prime,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Syntax(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn element(x: &PolyadicNumber) -> Outcome {
    Outcome::Element {
        residues: strings(x.residues()),
        moduli: strings(x.tower().moduli()),
    }
}

fn dyadic(v: &DyadicInterval) -> Outcome {
    Outcome::Dyadic {
        lower: v.lower.to_string(),
        tail: v.tail.to_string(),
        exact: v.is_exact(),
    }
}

fn advisory(exact: bool) -> &'static str {
    if exact {
        ""
    } else {
        " (inexact: depends on a cap known only to the tower depth)"
    }
}

/// A computed result: the structured record plus its text rendering.
struct Output {
    outcome: Outcome,
    text: String,
}

impl Output {
    fn new(outcome: Outcome, text: impl Into<String>) -> Self {
        Output {
            outcome,
            text: text.into(),
        }
    }
}

fn build(spec: &TowerSpec) -> Result<Tower, Failure> {
    Ok(spec.build()?)
}

fn compute(inv: &Invocation, tower: &Tower) -> Result<Output, Failure> {
    Ok(match &inv.command {
        Command::TowerShow => {
            let caps: Vec<CapEntry> = tower
                .primes()
                .map(|p| CapEntry {
                    prime: p.to_string(),
                    cap: tower.cap(p).to_string(),
                })
                .collect();
            let mut text = format!("tower {}\nn | B_n | M_n\n", tower.spec());
            for (i, (b, m)) in tower.generators().iter().zip(tower.moduli()).enumerate() {
                text += &format!("{} | {} | {}\n", i + 1, b, m);
            }
            let caps_text: Vec<String> = caps
                .iter()
                .map(|c| format!("{}:{}", c.prime, c.cap))
                .collect();
            text += &format!("caps {}", caps_text.join(" "));
            Output::new(
                Outcome::Tower {
                    generators: strings(tower.generators()),
                    moduli: strings(tower.moduli()),
                    caps,
                },
                text,
            )
        }
        Command::Norm { x } => {
            let value = match x {
                Operand::Integer(a) => norm_of_integer(tower, a),
                other => norm(&other.resolve(tower)?),
            };
            Output::new(dyadic(&value), value.to_string())
        }
        Command::Dist { a, b } => {
            let value = distance(&a.resolve(tower)?, &b.resolve(tower)?)?;
            Output::new(dyadic(&value), value.to_string())
        }
        Command::Eval { expr } => {
            let x = eval::evaluate(tower, expr).map_err(|e| Failure::Syntax(e.to_string()))?;
            Output::new(element(&x), x.to_string())
        }
        Command::SeqLimit { window, terms } => {
            let x = limit_of_sequence(tower, terms, *window)?;
            Output::new(element(&x), x.to_string())
        }
        Command::Gcd { a, b } => {
            let cert = gcd_certificate(&a.resolve(tower)?, &b.resolve(tower)?)?;
            let delta = cert.delta();
            let levels = cert
                .levels()
                .iter()
                .enumerate()
                .map(|(i, l)| CertificateLevel {
                    n: i + 1,
                    modulus: l.modulus.to_string(),
                    d: l.d.to_string(),
                    u: l.u.to_string(),
                    v: l.v.to_string(),
                })
                .collect();
            Output::new(
                Outcome::Certificate {
                    levels,
                    delta: strings(delta.residues()),
                },
                format!("{cert}delta = {delta}"),
            )
        }
        Command::Inverse { a } => {
            let x = inverse(&a.resolve(tower)?)?;
            Output::new(element(&x), x.to_string())
        }
        Command::Divides { a, b } => {
            let value = divides(&a.resolve(tower)?, &b.resolve(tower)?)?;
            Output::new(Outcome::Boolean { value, exact: true }, value.to_string())
        }
        Command::Dichotomy { p, a } => {
            let alpha = a.resolve(tower)?;
            match prime_dichotomy(*p, &alpha)? {
                Dichotomy::Divides => Output::new(
                    Outcome::Dichotomy {
                        branch: "divides".into(),
                        lambda: None,
                        sigma: None,
                    },
                    format!("{p} divides the element"),
                ),
                Dichotomy::Coprime { lambda, sigma } => Output::new(
                    Outcome::Dichotomy {
                        branch: "coprime".into(),
                        lambda: Some(strings(lambda.residues())),
                        sigma: Some(strings(sigma.residues())),
                    },
                    format!(
                        "coprime: lambda*a + sigma*{p} = 1\nlambda = {lambda}\nsigma = {sigma}"
                    ),
                ),
            }
        }
        Command::MinGen { m } => {
            let g = minimal_generator(tower, *m);
            Output::new(
                Outcome::Generator {
                    value: g.value.to_string(),
                    exact: g.exact,
                },
                format!("{}{}", g.value, advisory(g.exact)),
            )
        }
        Command::InA { m } => {
            let r = in_a(tower, *m);
            Output::new(
                Outcome::Boolean {
                    value: r.member,
                    exact: r.exact,
                },
                format!("{}{}", r.member, advisory(r.exact)),
            )
        }
        Command::IsCd { values } => {
            let value = is_cd_set(values);
            Output::new(Outcome::Boolean { value, exact: true }, value.to_string())
        }
        Command::Density { set } => {
            let d = nu_star(set, tower);
            Output::new(
                Outcome::Rational {
                    value: d.to_string(),
                    exact: d.exact,
                },
                format!("{d}{}", advisory(d.exact)),
            )
        }
        Command::CountResidues {
            set,
            modulus: Some(m),
        } => {
            let count = count_incongruent(set, m);
            Output::new(
                Outcome::Count {
                    modulus: m.to_string(),
                    count: count.to_string(),
                },
                count.to_string(),
            )
        }
        Command::CountResidues { set, modulus: None } => {
            let ratios = level_ratios(set, tower);
            let limit = nu_star(set, tower);
            let mut text = String::from("n | M_n | R(S:M_n) | R/M_n\n");
            let levels: Vec<RatioLevel> = ratios
                .iter()
                .zip(tower.moduli())
                .enumerate()
                .map(|(i, (r, m))| {
                    let count: BigInt = count_incongruent(set, m);
                    let ratio = format!("{}/{}", r.numer(), r.denom());
                    text += &format!("{} | {} | {} | {}\n", i + 1, m, count, ratio);
                    RatioLevel {
                        n: i + 1,
                        modulus: m.to_string(),
                        count: count.to_string(),
                        ratio,
                    }
                })
                .collect();
            text += &format!("limit {limit}{}", advisory(limit.exact));
            Output::new(
                Outcome::Ratios {
                    levels,
                    limit: limit.to_string(),
                    exact: limit.exact,
                },
                text,
            )
        }
        Command::Haar { r, m } => {
            let d = haar_coset(tower, *r, *m)?;
            Output::new(
                Outcome::Rational {
                    value: d.to_string(),
                    exact: d.exact,
                },
                format!("{d}{}", advisory(d.exact)),
            )
        }
        Command::ClosureMember { a, set } => {
            let value = closure_member(&a.resolve(tower)?, set);
            Output::new(Outcome::Boolean { value, exact: true }, value.to_string())
        }
        Command::RefineCheck { coarse } => {
            let c = build(coarse)?;
            let map = check_refinement(tower, &c)?;
            let pairs = map
                .levels()
                .iter()
                .enumerate()
                .map(|(k, &n)| LevelPair { k: k + 1, n })
                .collect();
            Output::new(
                Outcome::Refinement {
                    coarse: c.spec().to_string(),
                    map: pairs,
                },
                map.to_string().trim_end().to_string(),
            )
        }
        Command::Project { coarse, a } => {
            let c = build(coarse)?;
            let map = check_refinement(tower, &c)?;
            let x = project(&map, &a.resolve(tower)?)?;
            Output::new(element(&x), x.to_string())
        }
        Command::KernelGen { coarse } => {
            let c = build(coarse)?;
            let map = check_refinement(tower, &c)?;
            let x = kernel_generator(&map)?;
            Output::new(element(&x), x.to_string())
        }
    })
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn execute(inv: &Invocation, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    let spec = match inv.depth {
        Some(d) => inv.tower.clone().with_depth(d),
        None => inv.tower.clone(),
    };
    let result = build(&spec).and_then(|tower| compute(inv, &tower));
    let record = |outcome| Record {
        command: inv.command.name().to_string(),
        tower: spec.to_string(),
        outcome,
    };
    match result {
        Ok(output) => {
            match inv.format {
                Format::Text => writeln!(out, "{}", output.text)?,
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&record(output.outcome))?)?
                }
            }
            Ok(0)
        }
        Err(failure) => {
            match inv.format {
                Format::Text => writeln!(err, "error: {failure}")?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&record(failure.outcome()))?
                )?,
            }
            Ok(failure.exit_code())
        }
    }
}
