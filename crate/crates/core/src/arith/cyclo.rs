use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{self, IntPoly};
use crate::error::{Error, Result};

/// An element of `Q(zeta_n)`, stored as the coefficients of `1, x, ..., x^(phi(n)-1)`
/// in `Q[x] / Phi_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElement {
    level: u64,
    modulus: Arc<IntPoly>,
    coeffs: Vec<BigRational>,
}

impl CycloElement {
    /// Build from an arbitrary-length coefficient vector, reducing modulo `Phi_n`.
    pub fn new(level: u64, coeffs: Vec<BigRational>) -> Self {
        let modulus = Arc::new(poly::cyclotomic(level));
        Self::with_modulus(level, modulus, coeffs)
    }

    fn with_modulus(level: u64, modulus: Arc<IntPoly>, mut coeffs: Vec<BigRational>) -> Self {
        let deg = modulus.len() - 1;
        reduce(&mut coeffs, &modulus);
        coeffs.resize(deg, BigRational::zero());
        CycloElement {
            level,
            modulus,
            coeffs,
        }
    }

    pub fn from_rational(level: u64, c: BigRational) -> Self {
        Self::new(level, vec![c])
    }

    pub fn zero(level: u64) -> Self {
        Self::new(level, Vec::new())
    }

    pub fn one(level: u64) -> Self {
        Self::from_rational(level, BigRational::one())
    }

    /// `zeta_n^k`.
    pub fn root_power(level: u64, k: u64) -> Self {
        let mut coeffs = vec![BigRational::zero(); (k % level) as usize + 1];
        coeffs[(k % level) as usize] = BigRational::one();
        Self::new(level, coeffs)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::Usage(format!(
                "cyclotomic level mismatch: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloElement {
            level: self.level,
            modulus: Arc::clone(&self.modulus),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        CycloElement {
            level: self.level,
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycloElement {
            level: self.level,
            modulus: Arc::clone(&self.modulus),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product reduced modulo `Phi_n`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); (2 * n).saturating_sub(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::with_modulus(
            self.level,
            Arc::clone(&self.modulus),
            prod,
        ))
    }

    /// Norm down to `Q`, as `Res(Phi_n, A)` with denominators cleared first.
    pub fn norm(&self) -> BigRational {
        if self.level == 1 {
            return self.coeffs[0].clone();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: IntPoly = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from(den.clone())).to_integer())
            .collect();
        if poly::degree(&scaled).is_none() {
            return BigRational::zero();
        }
        let deg = (self.modulus.len() - 1) as u32;
        let res = poly::resultant(&self.modulus, &scaled);
        BigRational::new(res, num_traits::pow(den, deg as usize))
    }
}

/// Reduce in place modulo a monic integer polynomial.
fn reduce(coeffs: &mut Vec<BigRational>, modulus: &IntPoly) {
    debug_assert!(poly::is_monic(modulus));
    let deg = modulus.len() - 1;
    while coeffs.len() > deg {
        let top = coeffs.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = coeffs.len() - deg;
        for (i, m) in modulus.iter().enumerate().take(deg) {
            if !m.is_zero() {
                coeffs[shift + i] -= &top * BigRational::from(m.clone());
            }
        }
    }
}

/// Multiply two elements, returning a usage error on level mismatch.
pub fn cyclo_mul(a: &CycloElement, b: &CycloElement) -> Result<CycloElement> {
    a.mul(b)
}

pub fn cyclo_norm(a: &CycloElement) -> BigRational {
    a.norm()
}
