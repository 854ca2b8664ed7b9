//! Relative class numbers of `Q(zeta_{p^s})` from generalized Bernoulli numbers, with
//! the Maillet determinant as an independent check for prime conductors.
//!
//! `h^- = Q w prod_{chi odd} (-B_{1,chi} / 2)` with `Q = 1` for prime-power conductors,
//! `w = 2 p^s` (odd `p`) or `2^s`. The product over a Galois orbit of characters of order
//! `n` is the norm from `Q(zeta_n)` of one representative's factor.

pub mod characters;
pub mod maillet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, CycloElement};
use crate::cohomology::FieldParams;
use crate::error::{domain, internal, Result};
use crate::serde_util;

pub use characters::{enumerate_odd_characters, prime_power, CharacterOrbit, DirichletCharacter};
pub use maillet::maillet_hminus;

/// `B_{1,chi} = (1/f) sum_{a=1}^{f} chi~(a) a`, with `f` the conductor and `chi~` the
/// primitive character inducing `chi`.
pub fn b1_chi(chi: &DirichletCharacter) -> Result<CycloElement> {
    if !chi.is_odd() {
        return Err(domain("B_{1,chi} is only computed for odd characters"));
    }
    let f = chi.conductor();
    let n = chi.order;
    // for 1 <= a <= f <= p^s and p not dividing a, chi~(a) = chi(a)
    let table = chi.value_table();
    let mut coeffs = vec![BigRational::from_integer(0.into()); n as usize];
    for a in 1..=f {
        if let Some(e) = table[(a % chi.modulus) as usize] {
            coeffs[e as usize] += BigRational::from_integer(a.into());
        }
    }
    let b = CycloElement::new(n, coeffs).scale(&rat(1u32, f));
    if b.is_zero() {
        return Err(internal(format!("B_1 vanished for odd character {chi:?}")));
    }
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitFactor {
    pub order: u64,
    pub conductor: u64,
    pub size: u64,
    /// Norm of `-B_{1,chi}/2` over the orbit.
    #[serde(with = "serde_util::rational")]
    pub norm: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HMinusResult {
    pub modulus: u64,
    #[serde(with = "serde_util::biguint")]
    pub h_minus: BigUint,
    pub orbit_count: usize,
    pub q_factor: u64,
    pub w_factor: u64,
    pub orbits: Vec<OrbitFactor>,
}

fn orbit_factor(orbit: &CharacterOrbit) -> Result<OrbitFactor> {
    let chi = &orbit.representative;
    let factor = b1_chi(chi)?.scale(&rat(-1, 2));
    Ok(OrbitFactor {
        order: chi.order,
        conductor: chi.conductor(),
        size: orbit.size,
        norm: factor.norm(),
    })
}

/// `h^-(Q(zeta_m))` for a prime power `m > 2`.
pub fn relative_class_number(modulus: u64) -> Result<HMinusResult> {
    if modulus <= 2 {
        return Err(domain(format!("modulus {modulus} has no odd characters")));
    }
    let (p, _) = prime_power(modulus)?;
    let orbits = enumerate_odd_characters(modulus)?;
    let factors: Vec<OrbitFactor> = orbits.par_iter().map(orbit_factor).collect::<Result<_>>()?;

    let w = if p == 2 { modulus } else { 2 * modulus };
    let q = 1u64;
    let product = factors
        .iter()
        .fold(BigRational::one(), |acc, f| acc * &f.norm)
        * rat(q * w, 1u32);
    if !product.is_integer() || !product.is_positive() {
        return Err(internal(format!(
            "h^- for modulus {modulus} came out as {product}, not a positive integer"
        )));
    }
    let h_minus = product.to_integer().to_biguint().expect("positive integer");
    Ok(HMinusResult {
        modulus,
        h_minus,
        orbit_count: factors.len(),
        q_factor: q,
        w_factor: w,
        orbits: factors,
    })
}

/// Parameters of the Hilbert class field `H` of `Q(zeta_{p^s})` over `Q`, seen through
/// the splitting of `p`: the prime `(1 - zeta)` is totally ramified in `Q(zeta_{p^s})`
/// and principal, so it splits completely in `H`. Hence `e = phi(p^s)`, `f = 1`,
/// `g = h`.
pub fn cyclotomic_tower_params(p: u64, s: u32, h: impl Into<BigUint>) -> Result<FieldParams> {
    if !crate::primality::is_prime_u64(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    if s == 0 || p.checked_pow(s).is_none_or(|m| m <= 2) {
        return Err(domain(format!("p^s = {p}^{s} must exceed 2")));
    }
    let e = p.pow(s - 1) * (p - 1);
    FieldParams::new(p, e, 1, h, 0u32)
}
