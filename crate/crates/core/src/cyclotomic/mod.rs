//! Exact arithmetic for character values: cyclotomic numbers and
//! cyclotomic combinations of square roots.

mod cyclo;
mod parse;
mod radical;

pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloNumber};
pub use radical::{prime_factors, sqrt_prime_cyclo, square_split, RadicalValue};
