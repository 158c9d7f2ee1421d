//! Modulus towers: the finite-depth description of a completion.
//!
//! A tower stores the raw generator sequence `B_1..B_N` and the divisibility
//! chain `M_n = lcm(B_1, .., B_n)`. The generator set `A` of the completion is
//! the set of all divisors of all `M_n`; it is never enumerated.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numtheory::{self, factor, is_prime};

/// Shared handle to an immutable tower.
pub type Tower = Arc<ModulusTower>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TowerKind {
    /// `B_n = n!`, the polyadic integers.
    Factorial,
    /// `B_n = p^n`, the p-adic integers.
    PrimePower(u64),
    /// `B_n` is the product of the first `n` primes.
    Primorial,
    /// An explicit finite generator list. Only the first `depth` entries
    /// enter the residue chain; the norm of an integer reads the whole list.
    Explicit(Vec<u64>),
}

impl TowerKind {
    pub fn default_depth(&self) -> usize {
        match self {
            TowerKind::Factorial => 8,
            TowerKind::PrimePower(_) => 16,
            TowerKind::Primorial => 6,
            TowerKind::Explicit(list) => list.len(),
        }
    }

    /// Generators `B_1, B_2, ...` as an iterator. Finite for explicit towers.
    pub fn generators(&self) -> Box<dyn Iterator<Item = BigInt> + '_> {
        match self {
            TowerKind::Factorial => Box::new((1u64..).scan(BigInt::one(), |acc, n| {
                *acc *= n;
                Some(acc.clone())
            })),
            TowerKind::PrimePower(p) => {
                let p = BigInt::from(*p);
                Box::new((1..).scan(BigInt::one(), move |acc, _: u32| {
                    *acc *= &p;
                    Some(acc.clone())
                }))
            }
            TowerKind::Primorial => Box::new(numtheory::primes().scan(BigInt::one(), |acc, p| {
                *acc *= p;
                Some(acc.clone())
            })),
            TowerKind::Explicit(list) => Box::new(list.iter().map(|&b| BigInt::from(b))),
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, TowerKind::Explicit(_))
    }
}

/// A parsed tower spec string: `factorial:<depth>`, `prime:<p>:<depth>`,
/// `primorial:<depth>` or `explicit:<B1>,<B2>,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    pub kind: TowerKind,
    pub depth: usize,
}

impl TowerSpec {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn build(&self) -> Result<Tower> {
        build_tower(self.kind.clone(), self.depth)
    }
}

impl FromStr for TowerSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: &str| Error::TowerSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let depth = |s: &str| -> Result<usize> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("depth must be a decimal integer"));
            }
            let d: usize = s.parse().map_err(|_| bad("depth out of range"))?;
            if d == 0 {
                return Err(Error::ZeroDepth);
            }
            Ok(d)
        };
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["factorial", d] => Ok(TowerSpec { kind: TowerKind::Factorial, depth: depth(d)? }),
            ["primorial", d] => Ok(TowerSpec { kind: TowerKind::Primorial, depth: depth(d)? }),
            ["prime", p, d] => {
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("prime must be a decimal integer"));
                }
                let p: u64 = p.parse().map_err(|_| bad("prime out of range"))?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(TowerSpec { kind: TowerKind::PrimePower(p), depth: depth(d)? })
            }
            ["explicit", list] => {
                if list.is_empty() {
                    return Err(Error::EmptyGenerators);
                }
                let mut gens = Vec::new();
                for (i, item) in list.split(',').enumerate() {
                    let digits = item.strip_prefix('-').unwrap_or(item);
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad("generators must be decimal integers"));
                    }
                    let v: i128 = item.parse().map_err(|_| bad("generator out of range"))?;
                    if v <= 0 {
                        return Err(Error::InvalidGenerator { index: i + 1, value: v });
                    }
                    let v = u64::try_from(v).map_err(|_| Error::OperandTooLarge(v.to_string()))?;
                    gens.push(v);
                }
                let depth = gens.len();
                Ok(TowerSpec { kind: TowerKind::Explicit(gens), depth })
            }
            _ => Err(bad("expected factorial:<depth>, prime:<p>:<depth>, primorial:<depth> or explicit:<B1>,<B2>,...")),
        }
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TowerKind::Factorial => write!(f, "factorial:{}", self.depth),
            TowerKind::PrimePower(p) => write!(f, "prime:{}:{}", p, self.depth),
            TowerKind::Primorial => write!(f, "primorial:{}", self.depth),
            TowerKind::Explicit(list) => {
                let items: Vec<String> = list[..self.depth].iter().map(u64::to_string).collect();
                write!(f, "explicit:{}", items.join(","))
            }
        }
    }
}

/// A depth-`N` tower `M_1 | M_2 | ... | M_N` with its raw generators.
#[derive(Debug, Clone)]
pub struct ModulusTower {
    kind: TowerKind,
    generators: Vec<BigInt>,
    moduli: Vec<BigInt>,
    /// Factorization of `M_n`, one entry per level.
    factors: Vec<Vec<(u64, u32)>>,
}

impl PartialEq for ModulusTower {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.kind == other.kind && self.moduli.len() == other.moduli.len())
    }
}

impl Eq for ModulusTower {}

/// Builds the tower of the given kind truncated at `depth`.
pub fn build_tower(kind: TowerKind, depth: usize) -> Result<Tower> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let gen_factors: Vec<Vec<(u64, u32)>> = match &kind {
        TowerKind::Factorial => {
            let mut acc: Vec<(u64, u32)> = Vec::new();
            (1..=depth as u64)
                .map(|n| {
                    acc = merge(&acc, &factor(n), |a, b| a + b);
                    acc.clone()
                })
                .collect()
        }
        TowerKind::PrimePower(p) => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            (1..=depth as u32).map(|e| vec![(*p, e)]).collect()
        }
        TowerKind::Primorial => {
            let mut acc: Vec<(u64, u32)> = Vec::new();
            numtheory::primes()
                .take(depth)
                .map(|p| {
                    acc.push((p, 1));
                    acc.clone()
                })
                .collect()
        }
        TowerKind::Explicit(list) => {
            if list.is_empty() {
                return Err(Error::EmptyGenerators);
            }
            if list.len() < depth {
                return Err(Error::DepthExceedsGenerators {
                    depth,
                    available: list.len(),
                });
            }
            if let Some(i) = list.iter().position(|&b| b == 0) {
                return Err(Error::InvalidGenerator {
                    index: i + 1,
                    value: 0,
                });
            }
            list[..depth].iter().map(|&b| factor(b)).collect()
        }
    };

    let generators: Vec<BigInt> = gen_factors.iter().map(|f| expand(f)).collect();
    let mut factors = Vec::with_capacity(depth);
    let mut acc: Vec<(u64, u32)> = Vec::new();
    for f in &gen_factors {
        acc = merge(&acc, f, u32::max);
        factors.push(acc.clone());
    }
    let moduli: Vec<BigInt> = factors.iter().map(|f| expand(f)).collect();

    for n in 0..depth {
        assert!(
            (&moduli[n] % &generators[n]).is_zero(),
            "B_n must divide M_n"
        );
        if n + 1 < depth {
            assert!(
                (&moduli[n + 1] % &moduli[n]).is_zero(),
                "M_n must divide M_(n+1)"
            );
        }
    }

    Ok(Arc::new(ModulusTower {
        kind,
        generators,
        moduli,
        factors,
    }))
}

fn merge(a: &[(u64, u32)], b: &[(u64, u32)], combine: impl Fn(u32, u32) -> u32) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = a.to_vec();
    for &(p, e) in b {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 = combine(slot.1, e),
            None => out.push((p, e)),
        }
    }
    out.sort_unstable();
    out
}

fn expand(f: &[(u64, u32)]) -> BigInt {
    f.iter().fold(BigInt::one(), |acc, &(p, e)| {
        acc * num_traits::pow(BigInt::from(p), e as usize)
    })
}

impl ModulusTower {
    pub fn kind(&self) -> &TowerKind {
        &self.kind
    }

    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            kind: self.kind.clone(),
            depth: self.depth(),
        }
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }

    pub fn moduli(&self) -> &[BigInt] {
        &self.moduli
    }

    /// `M_level`, with `level` 1-based.
    pub fn modulus(&self, level: usize) -> &BigInt {
        &self.moduli[level - 1]
    }

    pub fn top_modulus(&self) -> &BigInt {
        self.moduli.last().expect("depth >= 1")
    }

    /// Factorization of `M_level` (1-based).
    pub fn level_factors(&self, level: usize) -> &[(u64, u32)] {
        &self.factors[level - 1]
    }

    /// Primes dividing `M_N`, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors
            .last()
            .expect("depth >= 1")
            .iter()
            .map(|&(p, _)| p)
    }

    /// `v_p(M_level)`.
    pub fn level_valuation(&self, level: usize, p: u64) -> u32 {
        self.factors[level - 1]
            .iter()
            .find(|(q, _)| *q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// `sup_n v_p(M_n)` as far as the tower kind determines it. `p` must be prime.
    pub fn cap(&self, p: u64) -> Cap {
        match &self.kind {
            TowerKind::Factorial => Cap::Infinite,
            TowerKind::PrimePower(q) if *q == p => Cap::Infinite,
            TowerKind::PrimePower(_) => Cap::Finite(0),
            TowerKind::Primorial => Cap::Finite(1),
            TowerKind::Explicit(_) => Cap::UnknownAtDepth(self.level_valuation(self.depth(), p)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Finite(u32),
    Infinite,
    /// The cap is at least the given valuation of `M_N`; nothing more is known.
    UnknownAtDepth(u32),
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Finite(k) => write!(f, "{k}"),
            Cap::Infinite => write!(f, "inf"),
            Cap::UnknownAtDepth(k) => write!(f, ">={k} (unknown beyond depth)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapReport {
    pub prime: u64,
    pub cap: Cap,
}

pub fn cap_valuation(tower: &ModulusTower, p: u64) -> Result<CapReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(CapReport {
        prime: p,
        cap: tower.cap(p),
    })
}

/// Least positive generator of the ideal `m*Omega` together with whether the
/// value is certain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalGenerator {
    pub value: u64,
    pub exact: bool,
}

/// `g(m) = prod_{p | m} p^min(v_p(m), cap_p)`.
///
/// An unknown cap is replaced by `v_p(M_N)`, its known lower bound. The result
/// is still exact when that bound already reaches `v_p(m)`.
///
/// Panics if `m == 0`.
pub fn minimal_generator(tower: &ModulusTower, m: u64) -> MinimalGenerator {
    assert!(m >= 1, "minimal_generator requires m >= 1");
    let mut value = 1u64;
    let mut exact = true;
    for (p, e) in factor(m) {
        let kept = match tower.cap(p) {
            Cap::Infinite => e,
            Cap::Finite(c) => e.min(c),
            Cap::UnknownAtDepth(k) => {
                if k < e {
                    exact = false;
                }
                e.min(k)
            }
        };
        value *= p.pow(kept);
    }
    MinimalGenerator { value, exact }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// `false` when membership rests on a cap only known to depth `N`.
    pub exact: bool,
}

/// Whether `m` belongs to `A = { g(n) : n >= 1 }`, i.e. `g(m) = m`.
pub fn in_a(tower: &ModulusTower, m: u64) -> Membership {
    let g = minimal_generator(tower, m);
    Membership {
        member: g.value == m,
        exact: g.exact,
    }
}

/// Whether a finite set contains 1 and is closed under divisors and pairwise lcm.
pub fn is_cd_set(set: &[u64]) -> bool {
    let members: std::collections::BTreeSet<u64> = set.iter().copied().collect();
    if !members.contains(&1) || members.contains(&0) {
        return false;
    }
    for &m in &members {
        if numtheory::divisors(m).iter().any(|d| !members.contains(d)) {
            return false;
        }
    }
    for &a in &members {
        for &b in members.range(a..) {
            match (a / a.gcd(&b)).checked_mul(b) {
                Some(l) if members.contains(&l) => {}
                _ => return false,
            }
        }
    }
    true
}
