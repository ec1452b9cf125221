#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod decide;
pub mod exactnum;
pub mod formula;
pub mod mpoly;
pub mod poly;
pub mod sections;
pub mod sper;

/// Arbitrary-precision rationals, always in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;
