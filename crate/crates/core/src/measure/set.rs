use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numtheory::divisors;

/// Largest period produced by set algebra.
pub const MAX_PERIOD: u64 = 1 << 24;
/// Largest number of leading points removed from a progression `AP(a, q)`.
pub const MAX_EXCEPTIONS: u64 = 1 << 20;

/// A subset of the naturals (0 included) that agrees with a union of residue
/// classes modulo `period` outside finitely many points.
///
/// Canonical form: the period is minimal, every added point lies outside the
/// periodic classes and every removed point inside them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSet {
    period: u64,
    residues: BTreeSet<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
}

impl SetOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersection => a && b,
            SetOp::Difference => a && !b,
        }
    }
}

impl EventuallyPeriodicSet {
    /// Builds and canonicalizes a set. Residues are reduced modulo `period`.
    pub fn new(
        period: u64,
        residues: impl IntoIterator<Item = u64>,
        added: impl IntoIterator<Item = u64>,
        removed: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        let residues = residues.into_iter().map(|r| r % period).collect();
        let mut set = EventuallyPeriodicSet {
            period,
            residues,
            added: added.into_iter().collect(),
            removed: removed.into_iter().collect(),
        };
        let both: Vec<u64> = set.added.intersection(&set.removed).copied().collect();
        for x in both {
            set.removed.remove(&x);
        }
        set.canonicalize();
        Ok(set)
    }

    pub fn empty() -> Self {
        EventuallyPeriodicSet {
            period: 1,
            residues: BTreeSet::new(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn naturals() -> Self {
        EventuallyPeriodicSet {
            residues: BTreeSet::from([0]),
            ..Self::empty()
        }
    }

    /// `{a, a + q, a + 2q, ...}`.
    pub fn progression(start: u64, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::ZeroPeriod);
        }
        let r = start % step;
        if start / step > MAX_EXCEPTIONS {
            return Err(Error::TooManyExceptions { start, step });
        }
        let removed = (0..start / step).map(|k| r + k * step);
        Self::new(step, [r], [], removed)
    }

    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        EventuallyPeriodicSet {
            added: points.into_iter().collect(),
            ..Self::empty()
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn added(&self) -> &BTreeSet<u64> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.removed
    }

    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    /// Largest point at which the set departs from its periodic part.
    pub fn last_exception(&self) -> Option<u64> {
        self.added.iter().chain(&self.removed).max().copied()
    }

    pub fn periodic_contains(&self, x: u64) -> bool {
        self.residues.contains(&(x % self.period))
    }

    pub fn contains(&self, x: u64) -> bool {
        self.added.contains(&x) || (self.periodic_contains(x) && !self.removed.contains(&x))
    }

    fn canonicalize(&mut self) {
        let q = self.period;
        let count = self.residues.len() as u64;
        for d in divisors(q) {
            let reduced: BTreeSet<u64> = self.residues.iter().map(|r| r % d).collect();
            if reduced.len() as u64 * (q / d) == count {
                self.period = d;
                self.residues = reduced;
                break;
            }
        }
        let (q, t) = (self.period, &self.residues);
        self.added.retain(|x| !t.contains(&(x % q)));
        self.removed.retain(|x| t.contains(&(x % q)));
    }

    pub fn complement(&self) -> Self {
        let residues = (0..self.period)
            .filter(|r| !self.residues.contains(r))
            .collect();
        let mut out = EventuallyPeriodicSet {
            period: self.period,
            residues,
            added: self.removed.clone(),
            removed: self.added.clone(),
        };
        out.canonicalize();
        out
    }

    pub fn combine(&self, op: SetOp, other: &Self) -> Result<Self> {
        let period = self.period.lcm(&other.period);
        if period > MAX_PERIOD {
            return Err(Error::PeriodTooLarge(period.to_string()));
        }
        let residues: BTreeSet<u64> = (0..period)
            .filter(|&r| op.apply(self.periodic_contains(r), other.periodic_contains(r)))
            .collect();
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        let candidates = self
            .added
            .iter()
            .chain(&self.removed)
            .chain(&other.added)
            .chain(&other.removed);
        for &x in candidates {
            let actual = op.apply(self.contains(x), other.contains(x));
            match (actual, residues.contains(&(x % period))) {
                (true, false) => {
                    added.insert(x);
                }
                (false, true) => {
                    removed.insert(x);
                }
                _ => {}
            }
        }
        let mut out = EventuallyPeriodicSet {
            period,
            residues,
            added,
            removed,
        };
        out.canonicalize();
        Ok(out)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(SetOp::Union, other)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(SetOp::Intersection, other)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(SetOp::Difference, other)
    }
}

/// Boolean operation on two sets; the result is canonical.
pub fn set_algebra(
    op: SetOp,
    a: &EventuallyPeriodicSet,
    b: &EventuallyPeriodicSet,
) -> Result<EventuallyPeriodicSet> {
    a.combine(op, b)
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "period={} residues={{{}}} added={{{}}} removed={{{}}}",
            self.period,
            list(&self.residues),
            list(&self.added),
            list(&self.removed)
        )
    }
}
