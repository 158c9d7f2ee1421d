//! Projection from a finer completion onto a coarser one and the generator of
//! its kernel.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::number::{from_residues, PolyadicNumber};
use crate::numtheory::{crt, modulo};
use crate::tower::{Cap, Tower};

/// For each coarse level `k`, the least fine level `n(k)` with `M'_k | M_n(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementMap {
    fine: Tower,
    coarse: Tower,
    levels: Vec<usize>,
}

impl RefinementMap {
    pub fn fine(&self) -> &Tower {
        &self.fine
    }

    pub fn coarse(&self) -> &Tower {
        &self.coarse
    }

    /// `n(k)` for `k = 1..=K`, 1-based.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// Whether the coarse truncation already sees the whole kernel at the
    /// fine depth: `min(cap'_p, v_p(M_N)) <= v_p(M'_K)` for every prime of the
    /// fine tower. Only then does `project(beta) = 0` coincide with
    /// divisibility by [`kernel_generator`] at every fine level.
    pub fn saturates(&self) -> bool {
        let (n, k) = (self.fine.depth(), self.coarse.depth());
        self.fine.level_factors(n).iter().all(|&(p, v)| {
            let needed = match self.coarse.cap(p) {
                Cap::Infinite => v,
                Cap::Finite(c) | Cap::UnknownAtDepth(c) => c.min(v),
            };
            needed <= self.coarse.level_valuation(k, p)
        })
    }
}

impl fmt::Display for RefinementMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in self.levels.iter().enumerate() {
            writeln!(f, "{} -> {}", k + 1, n)?;
        }
        Ok(())
    }
}

pub fn check_refinement(fine: &Tower, coarse: &Tower) -> Result<RefinementMap> {
    let mut levels = Vec::with_capacity(coarse.depth());
    let mut n = 0;
    for (k, target) in coarse.moduli().iter().enumerate() {
        // M'_k | M'_(k+1), so the search resumes where the previous level stopped.
        while n < fine.depth() && !(&fine.moduli()[n] % target).is_zero() {
            n += 1;
        }
        if n == fine.depth() {
            return Err(Error::NotRefinable { level: k + 1 });
        }
        levels.push(n + 1);
    }
    Ok(RefinementMap {
        fine: Arc::clone(fine),
        coarse: Arc::clone(coarse),
        levels,
    })
}

/// `r'_k = r_n(k) mod M'_k`: the continuous extension of the identity on the
/// integers.
pub fn project(map: &RefinementMap, beta: &PolyadicNumber) -> Result<PolyadicNumber> {
    if !(Arc::ptr_eq(beta.tower(), &map.fine) || **beta.tower() == *map.fine) {
        return Err(Error::TowerMismatch);
    }
    let residues: Vec<BigInt> = map
        .levels
        .iter()
        .zip(map.coarse.moduli())
        .map(|(&n, m)| modulo(beta.residue(n), m))
        .collect();
    from_residues(&map.coarse, &residues)
}

/// The element generating the kernel of [`project`]: at fine level `n`, the
/// CRT solution of `x = p^cap'_p (mod p^v_p(M_n))` over the primes of `M_n`,
/// with `p^inf = 0`.
pub fn kernel_generator(map: &RefinementMap) -> Result<PolyadicNumber> {
    let fine = &map.fine;
    let top = fine.depth();
    let caps: Vec<(u64, Option<u32>)> = fine
        .level_factors(top)
        .iter()
        .map(|&(p, v)| match map.coarse.cap(p) {
            Cap::Infinite => Ok((p, None)),
            Cap::Finite(c) => Ok((p, Some(c))),
            // An unknown cap at least v_p(M_N) behaves like infinity here.
            Cap::UnknownAtDepth(k) if k >= v => Ok((p, None)),
            Cap::UnknownAtDepth(k) => Err(Error::InexactCaps { prime: p, known: k }),
        })
        .collect::<Result<_>>()?;

    let residues: Vec<BigInt> = (1..=top)
        .map(|n| {
            let congruences: Vec<(BigInt, BigInt)> = caps
                .iter()
                .filter_map(|&(p, cap)| {
                    let v = fine.level_valuation(n, p);
                    (v > 0).then(|| {
                        let modulus = num_traits::pow(BigInt::from(p), v as usize);
                        let residue = match cap {
                            Some(c) if c < v => num_traits::pow(BigInt::from(p), c as usize),
                            _ => BigInt::zero(),
                        };
                        (residue, modulus)
                    })
                })
                .collect();
            crt(&congruences)
        })
        .collect();
    from_residues(fine, &residues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::divides;
    use crate::number::embed;
    use crate::tower::{build_tower, TowerKind};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn refinement_maps() {
        let fine = build_tower(TowerKind::Factorial, 6).unwrap();
        let coarse = build_tower(TowerKind::PrimePower(2), 3).unwrap();
        let map = check_refinement(&fine, &coarse).unwrap();
        assert_eq!(map.levels(), &[2, 4, 4]);
        assert_eq!(map.to_string(), "1 -> 2\n2 -> 4\n3 -> 4\n");

        let same = check_refinement(&fine, &fine).unwrap();
        assert_eq!(same.levels(), &[1, 2, 3, 4, 5, 6]);

        let p = build_tower(TowerKind::PrimePower(2), 8).unwrap();
        assert_eq!(
            check_refinement(&p, &fine),
            Err(Error::NotRefinable { level: 3 })
        );
    }

    #[test]
    fn projections() {
        let fine = build_tower(TowerKind::Factorial, 6).unwrap();
        let coarse = build_tower(TowerKind::PrimePower(2), 3).unwrap();
        let map = check_refinement(&fine, &coarse).unwrap();
        assert_eq!(
            project(&map, &embed(&fine, 7)).unwrap().residues(),
            ints(&[1, 3, 7]).as_slice()
        );
        assert!(project(&map, &embed(&fine, 0)).unwrap().is_zero());
        assert_eq!(project(&map, &embed(&coarse, 0)), Err(Error::TowerMismatch));

        let fine4 = build_tower(TowerKind::Factorial, 4).unwrap();
        let coarse2 = build_tower(TowerKind::PrimePower(2), 2).unwrap();
        let map = check_refinement(&fine4, &coarse2).unwrap();
        let beta = from_residues(&fine4, &ints(&[0, 1, 3, 15])).unwrap();
        assert_eq!(
            project(&map, &beta).unwrap().residues(),
            ints(&[1, 3]).as_slice()
        );
    }

    #[test]
    fn kernel_generators() {
        let fine = build_tower(TowerKind::Factorial, 4).unwrap();
        let two = build_tower(TowerKind::PrimePower(2), 3).unwrap();
        let map = check_refinement(&fine, &two).unwrap();
        let alpha = kernel_generator(&map).unwrap();
        assert_eq!(alpha.residues(), ints(&[0, 0, 4, 16]).as_slice());
        assert!(project(&map, &alpha).unwrap().is_zero());
        assert!(map.saturates());

        let primorial = build_tower(TowerKind::Primorial, 2).unwrap();
        let map = check_refinement(&fine, &primorial).unwrap();
        assert_eq!(
            kernel_generator(&map).unwrap().top_residue(),
            &BigInt::from(18)
        );

        let map = check_refinement(&fine, &fine).unwrap();
        assert!(kernel_generator(&map).unwrap().is_zero());

        let explicit = build_tower(TowerKind::Explicit(vec![2, 4]), 2).unwrap();
        let map = check_refinement(&fine, &explicit).unwrap();
        assert_eq!(
            kernel_generator(&map),
            Err(Error::InexactCaps { prime: 2, known: 2 })
        );
        let fine2 = build_tower(TowerKind::Factorial, 3).unwrap();
        let explicit = build_tower(TowerKind::Explicit(vec![2]), 1).unwrap();
        let map = check_refinement(&fine2, &explicit).unwrap();
        // v_2(6) = 1 is already reached by the known cap at 2; 3 never divides M'.
        let alpha = kernel_generator(&map);
        assert_eq!(alpha, Err(Error::InexactCaps { prime: 3, known: 0 }));
    }

    #[test]
    fn kernel_divides_projection_zeros() {
        let fine = build_tower(TowerKind::Factorial, 4).unwrap();
        let coarse = build_tower(TowerKind::PrimePower(2), 3).unwrap();
        let map = check_refinement(&fine, &coarse).unwrap();
        let alpha = kernel_generator(&map).unwrap();
        for b in 0..24 {
            let beta = embed(&fine, b);
            let in_kernel = project(&map, &beta).unwrap().is_zero();
            assert_eq!(in_kernel, divides(&alpha, &beta).unwrap(), "beta = {b}");
        }
    }
}
