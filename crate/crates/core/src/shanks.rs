//! Shanks' simplest cubic fields: for `p = a^2 + 3a + 9`, the polynomial
//! `x^3 - a x^2 - (a + 3) x - 1` has discriminant `p^2`.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primality::is_prime;
use crate::serde_util;

const SCAN_CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ShanksRecord {
    pub a: u64,
    #[serde(with = "serde_util::biguint")]
    pub p: BigUint,
    /// `(b, c, d)` of `x^3 + b x^2 + c x + d`.
    pub cubic_coeffs: CubicCoeffs,
    #[serde(with = "serde_util::bigint")]
    pub discriminant: BigInt,
    pub is_prime: bool,
    /// Free-form data attached from outside (for example a class group 2-rank from a
    /// computer algebra system). Never computed or checked here.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_annotation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicCoeffs {
    #[serde(with = "serde_util::bigint")]
    pub b: BigInt,
    #[serde(with = "serde_util::bigint")]
    pub c: BigInt,
    #[serde(with = "serde_util::bigint")]
    pub d: BigInt,
}

pub fn shanks_prime(a: u64) -> BigUint {
    let a = BigUint::from(a);
    &a * &a + &a * 3u32 + 9u32
}

impl ShanksRecord {
    pub fn new(a: u64) -> Self {
        let p = shanks_prime(a);
        let ai = BigInt::from(a);
        let cubic_coeffs = CubicCoeffs {
            b: -&ai,
            c: -(&ai + 3u32),
            d: BigInt::from(-1),
        };
        let mut record = ShanksRecord {
            a,
            is_prime: is_prime(&p),
            p,
            cubic_coeffs,
            discriminant: BigInt::from(0),
            external_annotation: None,
        };
        record.discriminant = cubic_discriminant(&record);
        record
    }

    /// The identity `disc = p^2`.
    pub fn discriminant_verified(&self) -> bool {
        let p = BigInt::from(self.p.clone());
        self.discriminant == &p * &p
    }
}

/// `18bcd - 4b^3 d + b^2 c^2 - 4c^3 - 27d^2` of the monic cubic.
pub fn cubic_discriminant(record: &ShanksRecord) -> BigInt {
    let CubicCoeffs { b, c, d } = &record.cubic_coeffs;
    BigInt::from(18) * b * c * d - BigInt::from(4) * b * b * b * d + b * b * c * c
        - BigInt::from(4) * c * c * c
        - BigInt::from(27) * d * d
}

/// Records with prime `p` for `a` in `[a_min, a_max]`, in increasing `a`.
pub fn shanks_scan(a_min: u64, a_max: u64) -> Result<Vec<ShanksRecord>> {
    if a_min < 1 || a_min > a_max {
        return Err(Error::Usage(format!(
            "invalid range [{a_min}, {a_max}]: need 1 <= a_min <= a_max"
        )));
    }
    let chunks: Vec<(u64, u64)> = (a_min..=a_max)
        .step_by(SCAN_CHUNK as usize)
        .map(|lo| (lo, lo.saturating_add(SCAN_CHUNK - 1).min(a_max)))
        .collect();
    let out = chunks
        .par_iter()
        .flat_map_iter(|&(lo, hi)| {
            (lo..=hi)
                .filter(|&a| is_prime(&shanks_prime(a)))
                .map(ShanksRecord::new)
        })
        .collect();
    Ok(out)
}
