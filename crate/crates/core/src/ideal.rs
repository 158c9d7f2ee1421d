//! Divisibility, gcd certificates, units and principal ideal generators.
//!
//! Everything here works level by level: a statement about the completion is
//! certified by checking it modulo each `M_n` of the tower.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{embed, PolyadicNumber};
use crate::numtheory::{ext_gcd, is_prime, mod_inverse, modulo, smallest_prime_factor};
use crate::tower::{in_a, Tower};

fn check_same(a: &PolyadicNumber, b: &PolyadicNumber) -> Result<()> {
    if Arc::ptr_eq(a.tower(), b.tower()) || a.tower() == b.tower() {
        Ok(())
    } else {
        Err(Error::TowerMismatch)
    }
}

/// Whether `alpha * x = beta` is solvable modulo every `M_n`, i.e.
/// `gcd(r_n(alpha), M_n)` divides `r_n(beta)` at every level.
pub fn divides(alpha: &PolyadicNumber, beta: &PolyadicNumber) -> Result<bool> {
    check_same(alpha, beta)?;
    Ok(alpha
        .residues()
        .iter()
        .zip(beta.residues())
        .zip(alpha.tower().moduli())
        .all(|((a, b), m)| (b % a.gcd(m)).is_zero()))
}

/// One level of a gcd certificate: `v*r + u*s = d (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCertificate {
    pub modulus: BigInt,
    pub d: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

/// Per-level Bezout witnesses for a common divisor of two elements.
///
/// The `d_n` satisfy `gcd(d_(n+1), M_n) = d_n` but do not form a residue
/// chain in general; [`GcdCertificate::delta`] gives a compatible element
/// generating the same ideal at every level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdCertificate {
    tower: Tower,
    levels: Vec<LevelCertificate>,
}

impl GcdCertificate {
    pub fn levels(&self) -> &[LevelCertificate] {
        &self.levels
    }

    pub fn d_values(&self) -> Vec<BigInt> {
        self.levels.iter().map(|l| l.d.clone()).collect()
    }

    /// The truncated gcd `d_N`.
    pub fn top(&self) -> &BigInt {
        &self.levels.last().expect("depth >= 1").d
    }

    /// `d_N` embedded as an element. Its residue at level `n` has gcd `d_n`
    /// with `M_n`, so it generates the certified ideal at every level.
    pub fn delta(&self) -> PolyadicNumber {
        embed(&self.tower, self.top().clone())
    }

    /// Checks the Bezout, chain and divisor laws against the operands.
    pub fn verify(&self, alpha: &PolyadicNumber, beta: &PolyadicNumber) -> bool {
        if self.levels.len() != alpha.tower().depth() || check_same(alpha, beta).is_err() {
            return false;
        }
        self.levels.iter().enumerate().all(|(i, l)| {
            let m = &l.modulus;
            let (r, s) = (&alpha.residues()[i], &beta.residues()[i]);
            let bezout = modulo(&(&l.v * r + &l.u * s - &l.d), m).is_zero();
            let chain = i == 0 || self.levels[i - 1].d == l.d.gcd(&self.levels[i - 1].modulus);
            let divisor =
                (m % &l.d).is_zero() && (r.gcd(m) % &l.d).is_zero() && (s.gcd(m) % &l.d).is_zero();
            let normalized = !l.d.is_zero() && (&l.d <= m) && (!m.is_one() || l.d.is_one());
            bezout && chain && divisor && normalized
        })
    }
}

impl fmt::Display for GcdCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n | M_n | d_n | u_n | v_n")?;
        for (i, l) in self.levels.iter().enumerate() {
            writeln!(f, "{} | {} | {} | {} | {}", i + 1, l.modulus, l.d, l.u, l.v)?;
        }
        Ok(())
    }
}

/// `d_n = gcd(r_n, s_n, M_n)` with coefficients from the extended Euclidean
/// algorithm, reduced into `[0, M_n)`.
pub fn gcd_certificate(alpha: &PolyadicNumber, beta: &PolyadicNumber) -> Result<GcdCertificate> {
    check_same(alpha, beta)?;
    let levels = alpha
        .residues()
        .iter()
        .zip(beta.residues())
        .zip(alpha.tower().moduli())
        .map(|((r, s), m)| {
            let (g, x, y) = ext_gcd(r, s);
            let (d, x2, _) = ext_gcd(&g, m);
            LevelCertificate {
                modulus: m.clone(),
                v: modulo(&(&x2 * x), m),
                u: modulo(&(&x2 * y), m),
                d,
            }
        })
        .collect();
    Ok(GcdCertificate {
        tower: Arc::clone(alpha.tower()),
        levels,
    })
}

/// Inverse up to depth `N`, or the first level where a prime of the tower
/// divides both the residue and the modulus.
pub fn inverse(alpha: &PolyadicNumber) -> Result<PolyadicNumber> {
    let tower = alpha.tower();
    let mut residues = Vec::with_capacity(tower.depth());
    for (i, (r, m)) in alpha.residues().iter().zip(tower.moduli()).enumerate() {
        match mod_inverse(r, m) {
            Some(inv) => residues.push(inv),
            None => {
                let level = i + 1;
                let prime = smallest_prime_factor(
                    &r.gcd(m),
                    tower.level_factors(level).iter().map(|&(p, _)| p),
                )
                .expect("a non-unit residue shares a prime with the modulus");
                return Err(Error::NotUnit { level, prime });
            }
        }
    }
    crate::number::from_residues(tower, &residues)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dichotomy {
    Divides,
    /// `lambda * alpha + sigma * p = 1` at every level.
    Coprime {
        lambda: PolyadicNumber,
        sigma: PolyadicNumber,
    },
}

impl Dichotomy {
    pub fn verify(&self, p: u64, alpha: &PolyadicNumber) -> bool {
        let tower = alpha.tower();
        match self {
            Dichotomy::Divides => divides(&embed(tower, p), alpha).unwrap_or(false),
            Dichotomy::Coprime { lambda, sigma } => {
                let lhs = &(lambda * alpha) + &(sigma * &embed(tower, p));
                lhs == embed(tower, 1)
            }
        }
    }
}

/// For a prime `p` in `A`: either `p` divides `alpha`, or `alpha` and `p`
/// generate the unit ideal, with coefficients attached.
pub fn prime_dichotomy(p: u64, alpha: &PolyadicNumber) -> Result<Dichotomy> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let tower = alpha.tower();
    if !in_a(tower, p).member {
        return Err(Error::NotInA(p));
    }
    if divides(&embed(tower, p), alpha)? {
        return Ok(Dichotomy::Divides);
    }
    // p | M_N and p does not divide r_N, so gcd(r_N, p) = 1 over the integers
    // and the integer coefficients serve every level at once.
    let (g, x, y) = ext_gcd(alpha.top_residue(), &BigInt::from(p));
    debug_assert!(g.is_one());
    Ok(Dichotomy::Coprime {
        lambda: embed(tower, x),
        sigma: embed(tower, y),
    })
}

/// Generator of the ideal spanned by `gens` at every level, folding
/// [`gcd_certificate`] over the list.
pub fn ideal_generator(gens: &[PolyadicNumber]) -> Result<PolyadicNumber> {
    let (first, rest) = gens.split_first().ok_or(Error::EmptyIdealList)?;
    let tower = first.tower();
    let mut acc = embed(tower, first.top_residue().gcd(tower.top_modulus()));
    for g in rest {
        acc = gcd_certificate(&acc, g)?.delta();
    }
    Ok(acc)
}
