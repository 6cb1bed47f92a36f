//! Exact arithmetic: rationals, p-adic valuations, factorization, primality
//! and a few multiplicative functions.

mod factor;
mod multiplicative;
mod primality;
mod rat;
mod sieve;
mod valuation;

pub use factor::{factor, omega_u64, prime_support, Factorization};
pub use multiplicative::{
    cyclotomic_coeffs, cyclotomic_value, eval_poly, factorial, is_squarefree, kronecker_odd_prime, lcm_all, totient,
    totient_u64,
};
pub use primality::{
    is_prime, is_prime_fast, is_prime_u64, jacobi, PrimalityCertificate, PrimalityMethod, Witness, PROBABILISTIC_ROUNDS,
};
pub use rat::{rat, Int, Rat};
pub use sieve::{pi, primes_in_window, primes_upto};
pub use valuation::{int_valuation, val, valuation, ValResult};

pub(crate) use primality::int_string;
pub(crate) use valuation::int_valuation_u64;
