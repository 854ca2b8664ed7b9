//! Exact arithmetic substrate.

pub mod compare;
pub mod cyclo;
pub mod poly;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

pub use compare::{certified_pow_compare, ComparisonVerdict, Method, Outcome};
pub use cyclo::{cyclo_mul, cyclo_norm, CycloElement};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn uint_rat(n: &BigUint) -> Rational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `q^e` by powering numerator and denominator separately; both stay coprime, so no
/// reduction is needed.
pub fn pow_rational(q: &Rational, e: usize) -> Rational {
    BigRational::new_raw(
        num_traits::pow(q.numer().clone(), e),
        num_traits::pow(q.denom().clone(), e),
    )
}
