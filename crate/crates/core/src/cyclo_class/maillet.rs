//! Maillet determinant: for an odd prime `p`, the `(p-1)/2` square matrix with entry
//! `a * b^{-1} mod p` (least positive residue) has determinant `+- p^{(p-3)/2} h^-`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{domain, internal, Result};
use crate::primality::is_prime_u64;

fn inverse_mod(a: u64, p: u64) -> u64 {
    let e = i64::extended_gcd(&(a as i64), &(p as i64));
    e.x.rem_euclid(p as i64) as u64
}

pub fn maillet_matrix(p: u64) -> Vec<Vec<BigInt>> {
    let half = (p - 1) / 2;
    (1..=half)
        .map(|a| {
            (1..=half)
                .map(|b| BigInt::from(a * inverse_mod(b, p) % p))
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `h^-(Q(zeta_p))` from the Maillet determinant.
pub fn maillet_hminus(p: u64) -> Result<BigUint> {
    if p == 2 || !is_prime_u64(p) {
        return Err(domain(format!("{p} is not an odd prime")));
    }
    let det = bareiss_determinant(maillet_matrix(p)).abs();
    let scale = num_traits::pow(BigInt::from(p), ((p - 3) / 2) as usize);
    let (h, rem) = det.div_rem(&scale);
    if !rem.is_zero() || h.is_zero() {
        return Err(internal(format!(
            "Maillet determinant {det} is not a nonzero multiple of {p}^{}",
            (p - 3) / 2
        )));
    }
    Ok(h.to_biguint().expect("nonnegative"))
}
