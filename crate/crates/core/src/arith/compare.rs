//! Certified decisions of `q^E < bound` for `0 < q < 1`, including exponents far too
//! large to expand.
//!
//! Small exponents are decided exactly. Large ones compare `E * ln q` against
//! `ln bound` with fixed-point interval logarithms: every rounding is directed, and
//! the series tails carry explicit remainder bounds, so a decided comparison is a
//! proof. Inconclusive comparisons retry at doubled precision.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{domain, internal, Result};

const MAX_PRECISION_BITS: u32 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    ProvenLess,
    ProvenGreaterOrEqual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ExactRational,
    DirectedRounding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComparisonVerdict {
    pub outcome: Outcome,
    pub method: Method,
    pub precision_bits_used: u32,
}

impl ComparisonVerdict {
    pub fn is_less(&self) -> bool {
        self.outcome == Outcome::ProvenLess
    }
}

/// Decide `q^exponent < bound`.
pub fn certified_pow_compare(
    q: &BigRational,
    exponent: &BigUint,
    bound: &BigRational,
    cfg: &Config,
) -> Result<ComparisonVerdict> {
    if !q.is_positive() || q >= &BigRational::one() {
        return Err(domain(format!("base {q} is not in (0, 1)")));
    }
    if !bound.is_positive() {
        return Err(domain(format!("bound {bound} is not positive")));
    }
    if exponent.is_zero() {
        return Ok(exact_verdict(&BigRational::one(), bound));
    }

    let small = exponent.bits() <= cfg.exact_threshold_bits as u64
        || *exponent == BigUint::one() << cfg.exact_threshold_bits;
    if (small && !cfg.force_directed) || equality_possible(q, exponent, bound) {
        let e = exponent_to_usize(exponent)?;
        return Ok(exact_verdict(&super::pow_rational(q, e), bound));
    }

    let e = BigInt::from_biguint(Sign::Plus, exponent.clone());
    let mut prec = cfg.start_precision_bits.max(16);
    loop {
        let (q_lo, q_hi) = ln_bounds(q, prec);
        let (b_lo, b_hi) = ln_bounds(bound, prec);
        // e > 0, so the interval for e * ln q is [e * q_lo, e * q_hi]
        if &e * &q_hi < b_lo {
            return Ok(ComparisonVerdict {
                outcome: Outcome::ProvenLess,
                method: Method::DirectedRounding,
                precision_bits_used: prec,
            });
        }
        if &e * &q_lo >= b_hi {
            return Ok(ComparisonVerdict {
                outcome: Outcome::ProvenGreaterOrEqual,
                method: Method::DirectedRounding,
                precision_bits_used: prec,
            });
        }
        if prec >= MAX_PRECISION_BITS {
            return Err(internal(format!(
                "comparison undecided at {prec} bits for q={q}, bound={bound}"
            )));
        }
        prec *= 2;
    }
}

fn exact_verdict(lhs: &BigRational, bound: &BigRational) -> ComparisonVerdict {
    ComparisonVerdict {
        outcome: if lhs < bound {
            Outcome::ProvenLess
        } else {
            Outcome::ProvenGreaterOrEqual
        },
        method: Method::ExactRational,
        precision_bits_used: 0,
    }
}

fn exponent_to_usize(e: &BigUint) -> Result<usize> {
    usize::try_from(e).map_err(|_| internal(format!("exponent {e} too large to expand")))
}

/// `q^E = bound` forces `den(bound) = den(q)^E`, whose bit length lies in
/// `[E (b - 1) + 1, E b]` with `b` the bit length of `den(q)`. Outside that window the
/// interval comparison is guaranteed to terminate; inside it the bound is already as
/// large as the exact power, so expanding it costs nothing extra.
fn equality_possible(q: &BigRational, exponent: &BigUint, bound: &BigRational) -> bool {
    let b = q.denom().bits();
    let bd = BigUint::from(bound.denom().bits());
    let lo = exponent * (b - 1) + 1u32;
    let hi = exponent * b;
    bd >= lo && bd <= hi
}

/// Fixed-point bounds `(lo, hi)` with `lo / 2^prec <= ln x <= hi / 2^prec`.
pub fn ln_bounds(x: &BigRational, prec: u32) -> (BigInt, BigInt) {
    assert!(x.is_positive());
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    // k = floor(log2 x), so that y = x / 2^k lies in [1, 2)
    let mut k = num.bits() as i64 - den.bits() as i64;
    let (mut yn, mut yd) = scale_pow2(num, den, k);
    if yn < yd {
        k -= 1;
        (yn, yd) = scale_pow2(num, den, k);
    }
    debug_assert!(yn >= yd && yn < &yd << 1);

    let (y_lo, y_hi) = atanh_series_bounds(&(&yn - &yd), &(&yn + &yd), prec);
    let (y_lo, y_hi) = (y_lo << 1, y_hi << 1);
    if k == 0 {
        return (y_lo, y_hi);
    }
    let (l2_lo, l2_hi) = ln2_bounds(prec);
    let kb = BigInt::from(k);
    if k > 0 {
        (&kb * l2_lo + y_lo, &kb * l2_hi + y_hi)
    } else {
        (&kb * l2_hi + y_lo, &kb * l2_lo + y_hi)
    }
}

fn scale_pow2(num: &BigUint, den: &BigUint, k: i64) -> (BigUint, BigUint) {
    if k >= 0 {
        (num.clone(), den << k as u64)
    } else {
        (num << (-k) as u64, den.clone())
    }
}

/// Bounds on `ln 2 = 2 atanh(1/3)`.
pub fn ln2_bounds(prec: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_series_bounds(&BigUint::one(), &BigUint::from(3u32), prec);
    (lo << 1, hi << 1)
}

/// Fixed-point bounds on `atanh(zn / zd) = sum z^(2i+1) / (2i+1)` for `0 <= z <= 1/3`.
fn atanh_series_bounds(zn: &BigUint, zd: &BigUint, prec: u32) -> (BigInt, BigInt) {
    debug_assert!(zn * 3u32 <= *zd);
    if zn.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let scaled = zn << prec as u64;
    let (z_lo, rem) = scaled.div_rem(zd);
    let z_hi = if rem.is_zero() {
        z_lo.clone()
    } else {
        &z_lo + 1u32
    };

    let zz_lo = (&z_lo * &z_lo) >> prec as u64;
    let zz_hi = ceil_shift(&(&z_hi * &z_hi), prec);

    let mut pow_lo = z_lo.clone();
    let mut pow_hi = z_hi.clone();
    let mut sum_lo = z_lo;
    let mut sum_hi = z_hi;
    let mut i: u64 = 0;
    loop {
        i += 1;
        let denom = BigUint::from(2 * i + 1);
        pow_lo = (&pow_lo * &zz_lo) >> prec as u64;
        pow_hi = ceil_shift(&(&pow_hi * &zz_hi), prec);
        sum_lo += &pow_lo / &denom;
        sum_hi += pow_hi.div_ceil(&denom);
        if pow_hi <= BigUint::one() {
            // remaining terms sum to at most pow * z^2 / (1 - z^2) <= pow / 8
            sum_hi += &pow_hi;
            break;
        }
    }
    (BigInt::from(sum_lo), BigInt::from(sum_hi))
}

fn ceil_shift(x: &BigUint, bits: u32) -> BigUint {
    let q = x >> bits as u64;
    if (&q << bits as u64) == *x {
        q
    } else {
        q + 1u32
    }
}
