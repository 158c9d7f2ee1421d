//! Truncated elements of a completion as compatible residue chains, with ring
//! operations, the generalized polyadic norm, the induced metric and limits of
//! integer sequences.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::error::{Error, Result};
use crate::numtheory::modulo;
use crate::tower::{ModulusTower, Tower};

pub const DEFAULT_STABILITY_WINDOW: usize = 2;

/// An element of the completion known modulo `M_1, .., M_N`.
///
/// Invariants: `0 <= r_n < M_n` and `r_(n+1) = r_n (mod M_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyadicNumber {
    tower: Tower,
    residues: Vec<BigInt>,
}

/// Canonical image of an integer (negative integers via additive inverses).
pub fn embed(tower: &Tower, a: impl Into<BigInt>) -> PolyadicNumber {
    let a = a.into();
    let residues = tower.moduli().iter().map(|m| modulo(&a, m)).collect();
    PolyadicNumber {
        tower: Arc::clone(tower),
        residues,
    }
}

/// Builds an element from one residue per level, normalizing each into
/// `[0, M_n)` and checking the chain condition.
pub fn from_residues(tower: &Tower, residues: &[BigInt]) -> Result<PolyadicNumber> {
    if residues.len() != tower.depth() {
        return Err(Error::LengthMismatch {
            expected: tower.depth(),
            found: residues.len(),
        });
    }
    let residues: Vec<BigInt> = residues
        .iter()
        .zip(tower.moduli())
        .map(|(r, m)| modulo(r, m))
        .collect();
    for n in 1..residues.len() {
        if modulo(&residues[n], tower.modulus(n)) != residues[n - 1] {
            return Err(Error::CompatibilityViolation { level: n });
        }
    }
    Ok(PolyadicNumber {
        tower: Arc::clone(tower),
        residues,
    })
}

impl PolyadicNumber {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    /// `r_level`, 1-based.
    pub fn residue(&self, level: usize) -> &BigInt {
        &self.residues[level - 1]
    }

    /// The residue at the deepest level; it determines all the others.
    pub fn top_residue(&self) -> &BigInt {
        self.residues.last().expect("depth >= 1")
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    fn same_tower(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.tower, &other.tower) || self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        self.same_tower(other)?;
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.tower.moduli())
            .map(|((a, b), m)| modulo(&f(a, b), m))
            .collect();
        Ok(PolyadicNumber {
            tower: Arc::clone(&self.tower),
            residues,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn negate(&self) -> Self {
        let residues = self
            .residues
            .iter()
            .zip(self.tower.moduli())
            .map(|(r, m)| modulo(&(m - r), m))
            .collect();
        PolyadicNumber {
            tower: Arc::clone(&self.tower),
            residues,
        }
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &PolyadicNumber {
            type Output = PolyadicNumber;

            /// Panics if the operands live on different towers.
            fn $method(self, rhs: &PolyadicNumber) -> PolyadicNumber {
                self.$try(rhs).expect("operands live on different towers")
            }
        }

        impl $trait for PolyadicNumber {
            type Output = PolyadicNumber;

            fn $method(self, rhs: PolyadicNumber) -> PolyadicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);

impl Neg for &PolyadicNumber {
    type Output = PolyadicNumber;

    fn neg(self) -> PolyadicNumber {
        self.negate()
    }
}

impl Neg for PolyadicNumber {
    type Output = PolyadicNumber;

    fn neg(self) -> PolyadicNumber {
        self.negate()
    }
}

impl fmt::Display for PolyadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "[{}] mod [{}]",
            join(&self.residues),
            join(self.tower.moduli())
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Applies `op`; `rhs` is ignored for `Neg` and required otherwise.
pub fn arith(
    op: ArithOp,
    lhs: &PolyadicNumber,
    rhs: Option<&PolyadicNumber>,
) -> Result<PolyadicNumber> {
    let rhs = || rhs.ok_or(Error::TowerMismatch);
    match op {
        ArithOp::Add => lhs.try_add(rhs()?),
        ArithOp::Sub => lhs.try_sub(rhs()?),
        ArithOp::Mul => lhs.try_mul(rhs()?),
        ArithOp::Neg => Ok(lhs.negate()),
    }
}

/// Exact norm `sum_{n : B_n does not divide a} 2^-n` of an integer.
///
/// Built-in generator sequences are nondecreasing, so once `B_n > |a|` every
/// later level contributes and the remaining tail sums to `2^-(n-1)`. Explicit
/// towers know nothing past their list; the result then carries a tail.
pub fn norm_of_integer(tower: &ModulusTower, a: &BigInt) -> DyadicInterval {
    if a.is_zero() {
        return DyadicInterval::exact(Dyadic::zero());
    }
    let magnitude = a.abs();
    let monotone = !tower.kind().is_explicit();
    let mut lower = Dyadic::zero();
    let mut levels = 0u32;
    for (i, b) in tower.kind().generators().enumerate() {
        let n = i as u32 + 1;
        if monotone && b > magnitude {
            return DyadicInterval::exact(&lower + &Dyadic::pow2_neg(n - 1));
        }
        if !(a % &b).is_zero() {
            lower = &lower + &Dyadic::pow2_neg(n);
        }
        levels = n;
    }
    DyadicInterval {
        lower,
        tail: Dyadic::pow2_neg(levels),
    }
}

/// Norm of a truncated element: levels beyond `N` are unknown and reported as
/// a tail of width `2^-N`.
pub fn norm(x: &PolyadicNumber) -> DyadicInterval {
    let tower = x.tower();
    let lower = x
        .residues
        .iter()
        .zip(tower.generators())
        .enumerate()
        .filter(|(_, (r, b))| !(*r % *b).is_zero())
        .map(|(i, _)| Dyadic::pow2_neg(i as u32 + 1))
        .sum();
    DyadicInterval {
        lower,
        tail: Dyadic::pow2_neg(tower.depth() as u32),
    }
}

pub fn distance(a: &PolyadicNumber, b: &PolyadicNumber) -> Result<DyadicInterval> {
    Ok(norm(&a.try_sub(b)?))
}

/// Limit of an integer sequence: every level must be constant over the last
/// `window` entries. Reports the first level that is not.
pub fn limit_of_sequence(tower: &Tower, seq: &[BigInt], window: usize) -> Result<PolyadicNumber> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    if seq.len() < window {
        return Err(Error::NotConverged { level: 1 });
    }
    let suffix = &seq[seq.len() - window..];
    let mut residues = Vec::with_capacity(tower.depth());
    for (i, m) in tower.moduli().iter().enumerate() {
        let r = modulo(&suffix[0], m);
        if suffix[1..].iter().any(|s| modulo(s, m) != r) {
            return Err(Error::NotConverged { level: i + 1 });
        }
        residues.push(r);
    }
    Ok(PolyadicNumber {
        tower: Arc::clone(tower),
        residues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{build_tower, TowerKind};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn factorial(depth: usize) -> Tower {
        build_tower(TowerKind::Factorial, depth).unwrap()
    }

    #[test]
    fn embeds_integers() {
        let t = factorial(4);
        assert_eq!(embed(&t, 7).residues(), ints(&[0, 1, 1, 7]).as_slice());
        assert!(embed(&t, 0).is_zero());
        assert_eq!(embed(&t, -1).residues(), ints(&[0, 1, 5, 23]).as_slice());
        assert_eq!(embed(&t, 7).to_string(), "[0, 1, 1, 7] mod [1, 2, 6, 24]");
    }

    #[test]
    fn residue_chains() {
        let t = factorial(3);
        assert!(from_residues(&t, &ints(&[0, 1, 3])).is_ok());
        assert_eq!(
            from_residues(&t, &ints(&[0, 1, 2])),
            Err(Error::CompatibilityViolation { level: 2 })
        );
        assert_eq!(
            from_residues(&t, &ints(&[0, 1])),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
        let p = build_tower(TowerKind::PrimePower(2), 3).unwrap();
        assert!(from_residues(&p, &ints(&[1, 3, 7])).is_ok());
        // normalization into [0, M_n)
        assert_eq!(
            from_residues(&p, &ints(&[-1, 7, 15])).unwrap(),
            embed(&p, -1)
        );
    }

    #[test]
    fn ring_operations() {
        let t = factorial(4);
        assert_eq!(&embed(&t, 7) + &embed(&t, 5), embed(&t, 12));
        assert_eq!(-embed(&t, 1), embed(&t, -1));
        assert_eq!(
            arith(ArithOp::Neg, &embed(&t, 1), None).unwrap().residues(),
            ints(&[0, 1, 5, 23]).as_slice()
        );

        let t3 = factorial(3);
        let x = from_residues(&t3, &ints(&[0, 1, 3])).unwrap();
        let prod = arith(ArithOp::Mul, &x, Some(&embed(&t3, 2))).unwrap();
        assert!(prod.is_zero());

        let other = build_tower(TowerKind::PrimePower(2), 4).unwrap();
        assert_eq!(
            embed(&t, 1).try_add(&embed(&other, 1)),
            Err(Error::TowerMismatch)
        );
    }

    #[test]
    fn integer_norms() {
        let f = factorial(8);
        let n = |a: i64| norm_of_integer(&f, &BigInt::from(a));
        assert_eq!(n(0), DyadicInterval::exact(Dyadic::zero()));
        assert_eq!(n(1), DyadicInterval::exact(Dyadic::pow2_neg(1)));
        assert_eq!(n(6), DyadicInterval::exact(Dyadic::pow2_neg(3)));
        // 4: 1!,2! divide, 3! does not, tail from 4! on
        assert_eq!(n(4), DyadicInterval::exact(Dyadic::pow2_neg(2)));
        assert_eq!(n(-6), n(6));
        let p = build_tower(TowerKind::PrimePower(2), 16).unwrap();
        assert_eq!(
            norm_of_integer(&p, &BigInt::from(2)),
            DyadicInterval::exact(Dyadic::pow2_neg(1))
        );
        assert_eq!(
            norm_of_integer(&p, &BigInt::from(3)),
            DyadicInterval::exact(Dyadic::one())
        );
    }

    #[test]
    fn explicit_integer_norm_has_tail() {
        let e = build_tower(TowerKind::Explicit(vec![4, 6]), 2).unwrap();
        let v = norm_of_integer(&e, &BigInt::from(6));
        assert_eq!(v.lower, Dyadic::pow2_neg(1));
        assert_eq!(v.tail, Dyadic::pow2_neg(2));
        assert!(norm_of_integer(&e, &BigInt::zero()).is_exact());
    }

    #[test]
    fn distances() {
        let t = factorial(4);
        let x = embed(&t, 9);
        let d = distance(&x, &x).unwrap();
        assert!(d.lower.is_zero());
        assert_eq!(d.tail, Dyadic::pow2_neg(4));
        // ||1|| = 1/2; depth 4 sees 1/4 + 1/8 + 1/16 and leaves 1/16 open
        let d = distance(&embed(&t, 0), &embed(&t, 1)).unwrap();
        assert_eq!(d.lower, Dyadic::new(7u32, 4));
        assert_eq!(d.upper(), Dyadic::pow2_neg(1));
        let d = distance(&embed(&t, 2), &embed(&t, 26)).unwrap();
        assert!(d.lower.is_zero());
        assert_eq!(d.tail, Dyadic::pow2_neg(4));
    }

    #[test]
    fn limits() {
        let t = factorial(5);
        let moduli: Vec<BigInt> = t.moduli().to_vec();
        assert!(limit_of_sequence(&t, &moduli, 1).unwrap().is_zero());
        let c = vec![BigInt::from(17); 4];
        assert_eq!(limit_of_sequence(&t, &c, 2).unwrap(), embed(&t, 17));
        let s: Vec<BigInt> = (1..=5)
            .map(|n| 1 + BigInt::from(n) * t.modulus(n))
            .collect();
        assert_eq!(limit_of_sequence(&t, &s, 1).unwrap(), embed(&t, 1));
        let alternating = ints(&[0, 1, 0, 1]);
        assert_eq!(
            limit_of_sequence(&t, &alternating, 2),
            Err(Error::NotConverged { level: 2 })
        );
        assert_eq!(limit_of_sequence(&t, &[], 2), Err(Error::EmptySequence));
        assert_eq!(
            limit_of_sequence(&t, &ints(&[3]), 2),
            Err(Error::NotConverged { level: 1 })
        );
        // the bare moduli reach M_N only in their last term
        assert_eq!(
            limit_of_sequence(&t, &moduli, 2),
            Err(Error::NotConverged { level: 5 })
        );
    }
}
