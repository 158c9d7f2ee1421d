//! The density submeasure `nu*(S) = lim R(S:M_n)/M_n` on eventually periodic
//! sets, Haar measure of cosets and membership in topological closures.

mod parse;
mod set;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::number::PolyadicNumber;
use crate::numtheory::{modulo, to_u64};
use crate::tower::{minimal_generator, ModulusTower};

pub use parse::parse_set_expression;
pub use set::{set_algebra, EventuallyPeriodicSet, SetOp, MAX_EXCEPTIONS, MAX_PERIOD};

/// An exact measure value; `exact` is false when it depends on a cap the tower
/// only knows to its truncation depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub value: BigRational,
    pub exact: bool,
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

fn distinct_mod(values: &BTreeSet<u64>, g: u64) -> BTreeSet<u64> {
    values.iter().map(|t| t % g).collect()
}

/// `R(S:M)`: the number of residue classes modulo `M` that meet `S`.
///
/// A class meets the periodic part iff it agrees with some residue modulo
/// `gcd(Q, M)`; such a class holds infinitely many points, so finitely many
/// removals never empty it. Added points can occupy further classes.
pub fn count_incongruent(set: &EventuallyPeriodicSet, modulus: &BigInt) -> BigInt {
    assert!(
        modulus.sign() == num_bigint::Sign::Plus,
        "modulus must be positive"
    );
    let g = to_u64(&modulus.gcd(&BigInt::from(set.period()))).expect("gcd divides a u64 period");
    let periodic = distinct_mod(set.residues(), g);
    let base = modulus / g * periodic.len();
    let isolated: BTreeSet<BigInt> = set
        .added()
        .iter()
        .filter(|&&x| !periodic.contains(&(x % g)))
        .map(|&x| modulo(&BigInt::from(x), modulus))
        .collect();
    base + isolated.len()
}

/// `R(S:M_n)/M_n` for every level of the tower. The sequence is nonincreasing
/// and converges to [`nu_star`].
pub fn level_ratios(set: &EventuallyPeriodicSet, tower: &ModulusTower) -> Vec<BigRational> {
    tower
        .moduli()
        .iter()
        .map(|m| BigRational::new(count_incongruent(set, m), m.clone()))
        .collect()
}

/// `nu*(S) = |T mod G| / G` with `G = g(Q)`, the eventual value of
/// `gcd(Q, M_n)`. Finite deviations contribute nothing in the limit.
pub fn nu_star(set: &EventuallyPeriodicSet, tower: &ModulusTower) -> Density {
    let g = minimal_generator(tower, set.period());
    let classes = distinct_mod(set.residues(), g.value).len();
    Density {
        value: BigRational::new(BigInt::from(classes), BigInt::from(g.value)),
        exact: g.exact,
    }
}

/// Haar measure of the clopen coset `r + m*Omega`, namely `1/g(m)`.
pub fn haar_coset(tower: &ModulusTower, residue: u64, modulus: u64) -> Result<Density> {
    if modulus == 0 {
        return Err(Error::ZeroPeriod);
    }
    if residue >= modulus {
        return Err(Error::ResidueOutOfRange { residue, modulus });
    }
    let g = minimal_generator(tower, modulus);
    Ok(Density {
        value: BigRational::new(BigInt::from(1), BigInt::from(g.value)),
        exact: g.exact,
    })
}

/// Whether `alpha` lies in the closure of `S` up to depth `N`: every level
/// needs some `s` in `S` with `s = r_n (mod M_n)`.
pub fn closure_member(alpha: &PolyadicNumber, set: &EventuallyPeriodicSet) -> bool {
    let q = BigInt::from(set.period());
    alpha
        .residues()
        .iter()
        .zip(alpha.tower().moduli())
        .all(|(r, m)| {
            let g = to_u64(&m.gcd(&q)).expect("gcd divides a u64 period");
            let target = to_u64(&modulo(r, &BigInt::from(g))).expect("below a u64 period");
            set.residues().iter().any(|t| t % g == target)
                || set
                    .added()
                    .iter()
                    .any(|&x| &modulo(&BigInt::from(x), m) == r)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::embed;
    use crate::tower::{build_tower, TowerKind};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn counts() {
        let s = parse_set_expression("AP(3,4)").unwrap();
        assert_eq!(count_incongruent(&s, &BigInt::from(8)), BigInt::from(2));
        for m in 1..=12u64 {
            let s = EventuallyPeriodicSet::progression(0, m).unwrap();
            let modulus = BigInt::from(24 * m);
            assert_eq!(count_incongruent(&s, &modulus), BigInt::from(24));
        }
        let s = EventuallyPeriodicSet::finite([5]);
        assert_eq!(count_incongruent(&s, &BigInt::from(24)), BigInt::from(1));
        // 1 and 25 share a class mod 24
        let s = EventuallyPeriodicSet::finite([1, 25, 2]);
        assert_eq!(count_incongruent(&s, &BigInt::from(24)), BigInt::from(2));
    }

    #[test]
    fn densities() {
        let f = build_tower(TowerKind::Factorial, 8).unwrap();
        for m in 1..=10u64 {
            for r in 0..m {
                let s = EventuallyPeriodicSet::progression(r, m).unwrap();
                assert_eq!(nu_star(&s, &f).value, q(1, m as i64));
            }
        }
        let finite = parse_set_expression("{5,9,14}").unwrap();
        assert_eq!(nu_star(&finite, &f).value, q(0, 1));
        let p = build_tower(TowerKind::PrimePower(2), 16).unwrap();
        let threes = parse_set_expression("AP(0,3)").unwrap();
        assert_eq!(
            nu_star(&threes, &p),
            Density {
                value: q(1, 1),
                exact: true
            }
        );
        assert_eq!(nu_star(&threes, &p).to_string(), "1/1");
    }

    #[test]
    fn ratios_decrease_to_density() {
        let f = build_tower(TowerKind::Factorial, 6).unwrap();
        let s = parse_set_expression("AP(1,4) | {2}").unwrap();
        let ratios = level_ratios(&s, &f);
        assert!(ratios.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(ratios[3], q(6 + 1, 24));
        assert_eq!(nu_star(&s, &f).value, q(1, 4));
    }

    #[test]
    fn coset_measure() {
        let f = build_tower(TowerKind::Factorial, 8).unwrap();
        assert_eq!(haar_coset(&f, 1, 6).unwrap().value, q(1, 6));
        let p = build_tower(TowerKind::PrimePower(2), 16).unwrap();
        assert_eq!(haar_coset(&p, 0, 12).unwrap().value, q(1, 4));
        assert_eq!(haar_coset(&p, 0, 1).unwrap().value, q(1, 1));
        assert_eq!(
            haar_coset(&p, 3, 3),
            Err(Error::ResidueOutOfRange {
                residue: 3,
                modulus: 3
            })
        );
    }

    #[test]
    fn closures() {
        let f = build_tower(TowerKind::Factorial, 8).unwrap();
        assert!(closure_member(
            &embed(&f, 7),
            &parse_set_expression("AP(3,4)").unwrap()
        ));
        assert!(closure_member(
            &embed(&f, 0),
            &parse_set_expression("AP(4,4)").unwrap()
        ));
        assert!(!closure_member(
            &embed(&f, 1),
            &parse_set_expression("AP(0,2)").unwrap()
        ));
        let finite = EventuallyPeriodicSet::finite([5]);
        assert!(closure_member(&embed(&f, 5), &finite));
        assert!(!closure_member(&embed(&f, 6), &finite));
        // 5 + M_N agrees with 5 at every level
        assert!(closure_member(&embed(&f, 5 + 40320), &finite));
    }
}
