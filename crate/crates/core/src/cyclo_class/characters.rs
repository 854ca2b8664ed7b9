//! Dirichlet characters of `(Z/p^s)^x`, one representative per Galois orbit.
//!
//! Odd `p`: the group is cyclic on the least primitive root `g` mod `p^2`, and the
//! character with exponent `a` sends `g` to `zeta_phi^a`. It is odd iff `a` is odd, and
//! its Galois orbit is determined by `gcd(a, phi)`.
//!
//! `p = 2`, `s >= 3`: the group is `<-1> x <5>`, and `(eps, j)` sends `-1` to
//! `(-1)^eps` and `5` to `zeta_{2^(s-2)}^j`. The orbit is determined by `eps` and the
//! 2-adic valuation of `j`. For `s = 2` only the quadratic character mod 4 is odd.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::poly::{divisors, euler_phi};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GeneratorImages {
    /// Image of the primitive root is `zeta_phi^exponent`.
    Cyclic { generator: u64, exponent: u64 },
    /// Images of `-1` and `5` are `(-1)^eps` and `zeta_{2^(s-2)}^j`.
    TwoPower { eps: u8, j: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirichletCharacter {
    pub p: u64,
    pub s: u32,
    pub modulus: u64,
    pub images: GeneratorImages,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterOrbit {
    pub representative: DirichletCharacter,
    pub size: u64,
}

/// Split `m = p^s`, rejecting anything that is not a prime power.
pub fn prime_power(m: u64) -> Result<(u64, u32)> {
    let f = crate::arith::poly::factorize(m);
    match f.as_slice() {
        [(p, s)] => Ok((*p, *s)),
        _ => Err(domain(format!("{m} is not a prime power"))),
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Least positive primitive root modulo `p^2` (`p` odd); it generates `(Z/p^s)^x` for
/// every `s`.
pub fn primitive_root_p2(p: u64) -> u64 {
    let m = p * p;
    let phi = p * (p - 1);
    let primes: Vec<u64> = crate::arith::poly::factorize(phi)
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    (2..m)
        .find(|&g| g % p != 0 && primes.iter().all(|&q| mod_pow(g, phi / q, m) != 1))
        .expect("primitive roots exist modulo p^2")
}

impl DirichletCharacter {
    pub fn is_odd(&self) -> bool {
        match self.images {
            GeneratorImages::Cyclic { exponent, .. } => exponent % 2 == 1,
            GeneratorImages::TwoPower { eps, .. } => eps == 1,
        }
    }

    /// Exponent `e` with `chi(x) = zeta_order^e`, for every residue mod the modulus;
    /// `None` where `gcd(x, p) != 1`.
    pub fn value_table(&self) -> Vec<Option<u64>> {
        let m = self.modulus;
        let n = self.order;
        let mut table = vec![None; m as usize];
        match self.images {
            GeneratorImages::Cyclic {
                generator,
                exponent,
            } => {
                let phi = euler_phi(m);
                // zeta_phi^exponent = zeta_n^(exponent n / phi)
                let step = (exponent * n / phi) % n;
                let mut x = 1u64;
                for i in 0..phi {
                    table[x as usize] = Some(i * step % n);
                    x = x * generator % m;
                }
            }
            GeneratorImages::TwoPower { eps, j } => {
                let minus_one = if eps == 1 { n / 2 } else { 0 };
                let five_order = if self.s >= 2 { 1u64 << (self.s - 2) } else { 1 };
                let five_step = (j * n / five_order) % n;
                let mut x = 1u64;
                for k in 0..five_order {
                    let v = k * five_step % n;
                    table[x as usize] = Some(v);
                    table[(m - x) as usize] = Some((v + minus_one) % n);
                    x = x * 5 % m;
                }
            }
        }
        table
    }

    /// Least `p^t` through which the character factors.
    pub fn conductor(&self) -> u64 {
        match self.images {
            GeneratorImages::Cyclic { .. } => {
                if self.order == 1 {
                    return 1;
                }
                // the p-part of the order is p^(t - 1)
                let mut t = 1;
                let mut n = self.order;
                while n % self.p == 0 {
                    n /= self.p;
                    t += 1;
                }
                self.p.pow(t)
            }
            GeneratorImages::TwoPower { eps, j } => {
                if j == 0 {
                    return if eps == 1 { 4 } else { 1 };
                }
                let five_order = 1u64 << (self.s - 2);
                let image_order = five_order / j.gcd(&five_order);
                4 * image_order
            }
        }
    }
}

/// Odd characters modulo `p^s`, one per Galois orbit, with orbit sizes.
pub fn enumerate_odd_characters(modulus: u64) -> Result<Vec<CharacterOrbit>> {
    if modulus <= 2 {
        return Ok(Vec::new());
    }
    let (p, s) = prime_power(modulus)?;
    let phi = euler_phi(modulus);
    let mut out = Vec::new();
    if p == 2 {
        if s == 2 {
            out.push(CharacterOrbit {
                representative: DirichletCharacter {
                    p,
                    s,
                    modulus,
                    images: GeneratorImages::TwoPower { eps: 1, j: 0 },
                    order: 2,
                },
                size: 1,
            });
            return Ok(out);
        }
        let five_order = 1u64 << (s - 2);
        // j = 2^v for v < s - 2, plus j = 0
        let mut js: Vec<u64> = (0..s - 2).map(|v| 1u64 << v).collect();
        js.push(0);
        for j in js {
            let image_order = if j == 0 { 1 } else { five_order / j };
            let order = image_order.max(2);
            out.push(CharacterOrbit {
                representative: DirichletCharacter {
                    p,
                    s,
                    modulus,
                    images: GeneratorImages::TwoPower { eps: 1, j },
                    order,
                },
                size: euler_phi(order),
            });
        }
    } else {
        let generator = primitive_root_p2(p);
        for d in divisors(phi).into_iter().filter(|d| d % 2 == 1) {
            let order = phi / d;
            out.push(CharacterOrbit {
                representative: DirichletCharacter {
                    p,
                    s,
                    modulus,
                    images: GeneratorImages::Cyclic {
                        generator,
                        exponent: d,
                    },
                    order,
                },
                size: euler_phi(order),
            });
        }
    }
    Ok(out)
}
