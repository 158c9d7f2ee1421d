//! Exact dyadic rationals `k / 2^e` and the intervals used to report norms of
//! truncated elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    numerator: BigUint,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigUint>, exponent: u32) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            return Dyadic::zero();
        }
        let shift = numerator.trailing_zeros().unwrap_or(0).min(exponent as u64) as u32;
        numerator >>= shift;
        exponent -= shift;
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    /// `2^-n`.
    pub fn pow2_neg(n: u32) -> Self {
        Dyadic {
            numerator: BigUint::one(),
            exponent: n,
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn scaled_to(&self, exponent: u32) -> BigUint {
        &self.numerator << (exponent - self.exponent)
    }

    /// Exact decimal expansion (every dyadic rational has a finite one).
    pub fn to_decimal(&self) -> String {
        if self.exponent == 0 {
            return self.numerator.to_string();
        }
        // k / 2^e = k * 5^e / 10^e
        let e = self.exponent as usize;
        let digits = (&self.numerator * num_traits::pow(BigUint::from(5u32), e)).to_string();
        let digits = format!("{digits:0>width$}", width = e + 1);
        let (int, frac) = digits.split_at(digits.len() - e);
        format!("{int}.{}", frac.trim_end_matches('0'))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        Dyadic::new(self.scaled_to(e) + rhs.scaled_to(e), e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |a, b| &a + &b)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

/// A value known to lie in `[lower, lower + tail]`. `tail == 0` marks an exact
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lower: Dyadic,
    pub tail: Dyadic,
}

impl DyadicInterval {
    pub fn exact(value: Dyadic) -> Self {
        DyadicInterval {
            lower: value,
            tail: Dyadic::zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.tail.is_zero()
    }

    pub fn upper(&self) -> Dyadic {
        &self.lower + &self.tail
    }

    pub fn contains(&self, value: &Dyadic) -> bool {
        &self.lower <= value && *value <= self.upper()
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{} (exact) = {}", self.lower, self.lower.to_decimal())
        } else {
            write!(
                f,
                "[{}, {} + {}] = [{}, {}]",
                self.lower,
                self.lower,
                self.tail,
                self.lower.to_decimal(),
                self.upper().to_decimal()
            )
        }
    }
}
