//! Exact arithmetic in completions of the positive integers with respect to
//! generalized polyadic norms.
//!
//! A completion is described by a [`ModulusTower`]: a generator sequence
//! `B_1, B_2, ...` drawn from a divisor-closed, lcm-closed set of moduli,
//! together with its prefix-lcm chain `M_1 | M_2 | ... | M_N`. Elements of the
//! completion are truncated to depth `N` and stored as compatible residue
//! chains ([`PolyadicNumber`]).
//!
//! The modules follow the structure of the ring:
//!
//! * [`tower`]: tower construction, per-prime caps and minimal ideal generators.
//! * [`number`]: residue chains, ring operations, the norm and metric, limits.
//! * [`ideal`]: divisibility, gcd certificates, units and principal generators.
//! * [`measure`]: eventually periodic subsets of the naturals and their density.
//! * [`quotient`]: projections between completions and their kernels.

pub mod dyadic;
pub mod error;
pub mod ideal;
pub mod measure;
pub mod number;
pub mod numtheory;
pub mod quotient;
pub mod tower;

pub use dyadic::{Dyadic, DyadicInterval};
pub use error::{Error, Result};
pub use ideal::{
    divides, gcd_certificate, ideal_generator, inverse, prime_dichotomy, Dichotomy, GcdCertificate,
    LevelCertificate,
};
pub use measure::{
    closure_member, count_incongruent, haar_coset, nu_star, parse_set_expression, Density,
    EventuallyPeriodicSet, SetOp,
};
pub use number::{
    arith, distance, embed, from_residues, limit_of_sequence, norm, norm_of_integer, ArithOp,
    PolyadicNumber, DEFAULT_STABILITY_WINDOW,
};
pub use quotient::{check_refinement, kernel_generator, project, RefinementMap};
pub use tower::{
    build_tower, cap_valuation, in_a, is_cd_set, minimal_generator, Cap, CapReport, Membership,
    MinimalGenerator, ModulusTower, TowerKind, TowerSpec,
};
