//! Miller-Rabin primality.
//!
//! Deterministic below 3.317e24 using the first thirteen primes as bases; above that,
//! 64 rounds with bases drawn from a ChaCha stream seeded by `n` itself, so results are
//! reproducible.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DETERMINISTIC_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const PROBABILISTIC_ROUNDS: usize = 64;

/// 3317044064679887385961981: below this the 13 prime bases above are a proof.
fn deterministic_limit() -> BigUint {
    "3317044064679887385961981".parse().expect("literal")
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

pub fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().expect("n - 1 > 0");
    let d = &n_minus_one >> s;

    if n < &deterministic_limit() {
        return DETERMINISTIC_BASES
            .iter()
            .all(|&a| strong_probable_prime(n, &BigUint::from(a), &d, s));
    }
    let seed = n
        .to_u64_digits()
        .iter()
        .fold(0u64, |acc, w| acc.rotate_left(7) ^ w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    (0..PROBABILISTIC_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        strong_probable_prime(n, &a, &d, s)
    })
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let n_minus_one = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == n_minus_one {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Trial division, for independent cross-checks on small inputs.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn small_primes(upto: u64) -> Vec<u64> {
    (2..=upto).filter(|&n| is_prime_trial(n)).collect()
}
