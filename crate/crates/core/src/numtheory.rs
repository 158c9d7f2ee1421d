//! Small integer helpers shared by the tower, ideal and measure modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Prime factorization of `n` as ascending `(prime, exponent)` pairs. `1` and
/// `0` have no factors.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    if n < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

pub fn to_u64(n: &BigInt) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::OperandTooLarge(n.to_string()))
}

/// Mathematical remainder in `[0, m)` for `m > 0`.
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Exponent of `p` in `n`; `u32::MAX` for `n = 0`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Returns `(g, x, y)` with `g = gcd(a, b) = x*a + y*b`, `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.sign() == num_bigint::Sign::Minus {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of `a` modulo `m`, if it exists. Every residue is invertible
/// modulo 1 (the inverse is 0).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&modulo(a, m), m);
    if g.is_one() || m.is_one() {
        Some(modulo(&x, m))
    } else {
        None
    }
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli, returning the
/// solution in `[0, prod m_i)`.
pub fn crt(congruences: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in congruences {
        // x + m*t = r (mod mi)  =>  t = (r - x) * m^-1 (mod mi)
        let inv = mod_inverse(&m, mi).expect("crt moduli must be pairwise coprime");
        let t = modulo(&((r - &x) * inv), mi);
        x += &m * t;
        m *= mi;
    }
    modulo(&x, &m)
}

/// The `n`-th prime, 1-based.
pub fn nth_prime(n: usize) -> u64 {
    primes().nth(n - 1).expect("prime iterator is infinite")
}

pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&k| is_prime(k))
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let current = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn smallest_prime_factor(n: &BigInt, candidates: impl IntoIterator<Item = u64>) -> Option<u64> {
    candidates
        .into_iter()
        .find(|&p| (n % BigInt::from(p)).is_zero())
}
