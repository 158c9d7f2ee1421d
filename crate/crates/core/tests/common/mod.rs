#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use omega_core::tower::Tower;
use omega_core::TowerSpec;
use rand::Rng;

/// Built-in tower kinds at their default depths.
pub const BUILTIN: &[&str] = &["factorial:8", "prime:2:16", "prime:3:10", "primorial:6"];

pub fn tower(spec: &str) -> Tower {
    spec.parse::<TowerSpec>().unwrap().build().unwrap()
}

pub fn top_u64(t: &Tower) -> u64 {
    u64::try_from(t.top_modulus()).unwrap()
}

pub fn moduli_u64(t: &Tower) -> Vec<u64> {
    t.moduli()
        .iter()
        .map(|m| u64::try_from(m).unwrap())
        .collect()
}

pub fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Set expressions as a syntax tree, evaluated by brute force independently
/// of the library's periodic representation.
#[derive(Debug, Clone)]
pub enum Expr {
    Ap(u64, u64),
    Finite(Vec<u64>),
    Not(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn render(&self) -> String {
        match self {
            Expr::Ap(a, q) => format!("AP({a},{q})"),
            Expr::Finite(v) => {
                format!(
                    "{{{}}}",
                    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                )
            }
            Expr::Not(e) => format!("~{}", e.render_term()),
            Expr::Bin(op, a, b) => format!("{} {op} {}", a.render(), b.render_term()),
        }
    }

    fn render_term(&self) -> String {
        match self {
            Expr::Bin(..) => format!("({})", self.render()),
            _ => self.render(),
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        match self {
            Expr::Ap(a, q) => x >= *a && (x - a) % q == 0,
            Expr::Finite(v) => v.contains(&x),
            Expr::Not(e) => !e.contains(x),
            Expr::Bin('|', a, b) => a.contains(x) || b.contains(x),
            Expr::Bin('&', a, b) => a.contains(x) && b.contains(x),
            Expr::Bin('-', a, b) => a.contains(x) && !b.contains(x),
            Expr::Bin(op, ..) => unreachable!("operator {op}"),
        }
    }

    /// A period of the set beyond [`Expr::threshold`].
    pub fn period(&self) -> u64 {
        match self {
            Expr::Ap(_, q) => *q,
            Expr::Finite(_) => 1,
            Expr::Not(e) => e.period(),
            Expr::Bin(_, a, b) => a.period().lcm(&b.period()),
        }
    }

    /// Every point at or above this is governed by the period.
    pub fn threshold(&self) -> u64 {
        match self {
            Expr::Ap(a, _) => *a,
            Expr::Finite(v) => v.iter().max().map_or(0, |m| m + 1),
            Expr::Not(e) => e.threshold(),
            Expr::Bin(_, a, b) => a.threshold().max(b.threshold()),
        }
    }

    /// `R(S:M)` by scanning one full period of classes past the threshold.
    pub fn scan_count(&self, m: u64) -> u64 {
        let end = self.threshold() + self.period().lcm(&m);
        let mut seen = vec![false; m as usize];
        for x in 0..end {
            if self.contains(x) {
                seen[(x % m) as usize] = true;
            }
        }
        seen.iter().filter(|&&b| b).count() as u64
    }

    /// Occupied classes mod `m` of the whole set and of its periodic tail
    /// (points at or above the threshold).
    pub fn scan_with_tail(&self, m: u64) -> (u64, u64) {
        let start = self.threshold();
        let end = start + self.period().lcm(&m);
        let (mut all, mut tail) = (vec![false; m as usize], vec![false; m as usize]);
        for x in 0..end {
            if self.contains(x) {
                all[(x % m) as usize] = true;
                if x >= start {
                    tail[(x % m) as usize] = true;
                }
            }
        }
        let count = |v: &[bool]| v.iter().filter(|&&b| b).count() as u64;
        (count(&all), count(&tail))
    }
}

pub fn random_expr(rng: &mut impl Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.75) {
            Expr::Ap(rng.gen_range(0..30), rng.gen_range(1..=12))
        } else {
            let n = rng.gen_range(0..=3);
            Expr::Finite((0..n).map(|_| rng.gen_range(0..40)).collect())
        };
    }
    if rng.gen_bool(0.2) {
        return Expr::Not(Box::new(random_expr(rng, depth - 1)));
    }
    let op = ['|', '&', '-'][rng.gen_range(0..3)];
    Expr::Bin(
        op,
        Box::new(random_expr(rng, depth - 1)),
        Box::new(random_expr(rng, depth - 1)),
    )
}

/// Brute-force ideals of `Z/M`: every ideal is enumerated as a membership
/// table and generators are found by search, with no gcd arithmetic.
pub struct IdealOracle {
    m: u64,
    /// id of the ideal generated by each residue
    single: Vec<usize>,
    sets: Vec<Vec<bool>>,
    index: std::collections::HashMap<Vec<bool>, usize>,
}

impl IdealOracle {
    pub fn new(m: u64) -> Self {
        let mut oracle = IdealOracle {
            m,
            single: Vec::with_capacity(m as usize),
            sets: Vec::new(),
            index: Default::default(),
        };
        for a in 0..m {
            let mut set = vec![false; m as usize];
            for x in 0..m {
                set[((a * x) % m) as usize] = true;
            }
            let id = oracle.intern(set);
            oracle.single.push(id);
        }
        oracle
    }

    fn intern(&mut self, set: Vec<bool>) -> usize {
        if let Some(&id) = self.index.get(&set) {
            return id;
        }
        self.sets.push(set.clone());
        self.index.insert(set, self.sets.len() - 1);
        self.sets.len() - 1
    }

    /// Least `g` in `1..=M` whose principal ideal is the given one (`g = M`
    /// stands for 0).
    fn least_generator(&self, id: usize) -> u64 {
        (1..self.m)
            .find(|&g| self.single[g as usize] == id)
            .unwrap_or_else(|| {
                assert_eq!(self.single[0], id, "ideal is not principal");
                self.m
            })
    }

    pub fn principal(&self, a: u64) -> u64 {
        self.least_generator(self.single[a as usize])
    }

    /// Least generator of `aZ/M + bZ/M` for every pair, indexed `[a * M + b]`.
    pub fn all_pairs(&self) -> Vec<u64> {
        let mut memo = std::collections::HashMap::new();
        let mut out = Vec::with_capacity((self.m * self.m) as usize);
        for a in 0..self.m {
            for b in 0..self.m {
                let key = (self.single[a as usize], self.single[b as usize]);
                let g = *memo.entry(key).or_insert_with(|| {
                    let (sa, sb) = (&self.sets[key.0], &self.sets[key.1]);
                    let mut sum = vec![false; self.m as usize];
                    for x in (0..self.m).filter(|&x| sa[x as usize]) {
                        for y in (0..self.m).filter(|&y| sb[y as usize]) {
                            sum[((x + y) % self.m) as usize] = true;
                        }
                    }
                    let id = *self.index.get(&sum).expect("sum of ideals is principal");
                    self.least_generator(id)
                });
                out.push(g);
            }
        }
        out
    }
}
