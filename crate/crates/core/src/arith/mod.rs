//! Exact integer services: primality, factoring, totient, valuations.
//!
//! Everything works on `u128`. Values that would not fit surface as
//! [`Error::Overflow`](crate::Error::Overflow) in the callers.

mod factor;
pub mod modular;
mod primality;
pub mod sieve;

pub use factor::{euler_phi, factor, least_prime_factor, nu, omega, tau, Effort, Factorization};
pub use primality::{is_prime, DETERMINISTIC_LIMIT};
pub use sieve::{nth_prime, primes_up_to, totients_up_to};
