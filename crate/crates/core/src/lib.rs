//! Exact verification toolkit for the totient equations
//! `phi(|x^m - y^m|) = |x^n - y^n|` and their Lucas-quotient variants
//! `phi(z (x^m +- y^m)/(x +- y)) = z (x^n +- y^n)/(x +- y)`.
//!
//! * [`arith`]: primality, factoring, totient and valuations on `u128`.
//! * [`lucas`]: quotient shapes, gcd reduction, rank of apparition, primitive divisors.
//! * [`equation`]: the six equations, case split, exact checking, solution families.
//! * [`search`]: exhaustive box sweeps with a certification verdict.
//! * [`lemma`]: the finite computer searches and identities the proofs rely on.
//! * [`bounds`]: 50-digit evaluation of the explicit analytic constants.

pub mod arith;
pub mod bounds;
pub mod equation;
mod error;
pub mod lemma;
pub mod lucas;
pub mod search;

pub use arith::{Effort, Factorization};
pub use equation::{CandidateSolution, EquationId, FamilyTag, SolutionRecord};
pub use error::{Error, Result};
pub use search::{CertificationReport, SearchBox, Verdict};
