//! Dense integer polynomials, coefficients stored low degree first.
//!
//! Only what the cyclotomic kernel needs: cyclotomic polynomials, pseudo-remainders
//! and the subresultant resultant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntPoly = Vec<BigInt>;

pub fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, `None` for the zero polynomial.
pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn lead(p: &[BigInt]) -> &BigInt {
    &p[degree(p).expect("nonzero polynomial")]
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = degree(b).expect("pseudo-division by zero");
    let lb = lead(b).clone();
    let mut r: IntPoly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb, steps);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

fn exact_div_scalar(p: &mut IntPoly, d: &BigInt) {
    for c in p.iter_mut() {
        let (q, r) = c.div_rem(d);
        debug_assert!(r.is_zero(), "inexact scalar division");
        *c = q;
    }
}

/// Resultant over the integers by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (Some(mut da), Some(mut db)) = (degree(a), degree(b)) else {
        return BigInt::zero();
    };
    let ca = content(a);
    let cb = content(b);
    let mut a: IntPoly = a[..=da].to_vec();
    let mut b: IntPoly = b[..=db].to_vec();
    exact_div_scalar(&mut a, &ca);
    exact_div_scalar(&mut b, &cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);

    let mut sign_negative = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = true;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while db > 0 {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let mut r = prem(&a, &b);
        a = b;
        da = db;
        let Some(dr) = degree(&r) else {
            return BigInt::zero();
        };
        r.truncate(dr + 1);
        exact_div_scalar(&mut r, &(&g * num_traits::pow(h.clone(), delta)));
        b = r;
        db = dr;
        g = lead(&a).clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
    }
    // b is a nonzero constant here.
    let lb = b[0].clone();
    let res = if da == 0 {
        BigInt::one()
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    let res = t * res;
    if sign_negative {
        -res
    } else {
        res
    }
}

/// The n-th cyclotomic polynomial, via `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let divs = divisors(n);
    let mut num: IntPoly = vec![BigInt::one()];
    for &d in &divs {
        if mobius(n / d) == 1 {
            num = mul_xd_minus_one(&num, d as usize);
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            num = div_xd_minus_one(&num, d as usize);
        }
    }
    trim(&mut num);
    num
}

fn mul_xd_minus_one(p: &[BigInt], d: usize) -> IntPoly {
    let mut out = vec![BigInt::zero(); p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Exact division by `x^d - 1`: q_i = q_{i-d} - p_i, read off from the top.
fn div_xd_minus_one(p: &[BigInt], d: usize) -> IntPoly {
    let n = p.len() - 1;
    assert!(n >= d);
    let mut rem: IntPoly = p.to_vec();
    let mut q = vec![BigInt::zero(); n - d + 1];
    for i in (d..=n).rev() {
        let c = rem[i].clone();
        q[i - d] = c.clone();
        rem[i - d] += &c;
        rem[i] = BigInt::zero();
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "x^d - 1 does not divide");
    q
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Evaluate at an integer point (Horner).
#[cfg(test)]
pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn is_monic(p: &[BigInt]) -> bool {
    degree(p).is_some_and(|d| p[d].is_one())
}

#[allow(dead_code)]
pub fn abs_max(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ip(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Resultant as the determinant of the Sylvester matrix, by fraction-field
    /// Gaussian elimination. Independent of the subresultant path.
    fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
        let m = degree(a).unwrap();
        let n = degree(b).unwrap();
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for row in 0..n {
            for j in 0..=m {
                mat[row][row + j] = BigRational::from(a[m - j].clone());
            }
        }
        for row in 0..m {
            for j in 0..=n {
                mat[n + row][row + j] = BigRational::from(b[n - j].clone());
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return BigInt::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let factor = &mat[r][col] / &pv;
                for c in col..size {
                    let sub = &factor * &mat[col][c];
                    mat[r][c] -= sub;
                }
            }
        }
        assert!(det.is_integer());
        det.to_integer()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ip(&[-1, 1]));
        assert_eq!(cyclotomic(2), ip(&[1, 1]));
        assert_eq!(cyclotomic(3), ip(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ip(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ip(&[1, 0, -1, 0, 1]));
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert_eq!(abs_max(&cyclotomic(105)), BigInt::from(2));
    }

    #[test]
    fn cyclotomic_degrees_and_product() {
        for n in 1..=60u64 {
            assert_eq!(degree(&cyclotomic(n)), Some(euler_phi(n) as usize));
            assert!(is_monic(&cyclotomic(n)));
        }
        // prod_{d | 12} Phi_d = x^12 - 1, checked at x = 3
        let x = BigInt::from(3);
        let prod: BigInt = divisors(12)
            .iter()
            .map(|&d| eval(&cyclotomic(d), &x))
            .product();
        assert_eq!(prod, BigInt::from(3i64.pow(12) - 1));
    }

    #[test]
    fn resultant_hand_values() {
        // Res(x^2 + 1, x + 1) = 2
        assert_eq!(resultant(&ip(&[1, 0, 1]), &ip(&[1, 1])), BigInt::from(2));
        // Res(x - a, x - b) = a - b
        assert_eq!(resultant(&ip(&[-3, 1]), &ip(&[-7, 1])), BigInt::from(-4));
        // constant second argument: c^deg
        assert_eq!(resultant(&ip(&[1, 1, 1]), &ip(&[5])), BigInt::from(25));
        // common root
        assert_eq!(resultant(&ip(&[-1, 0, 1]), &ip(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases: Vec<(IntPoly, IntPoly)> = vec![
            (ip(&[2, -3, 0, 5, 1]), ip(&[7, 1, -2])),
            (ip(&[1, 1, 1, 1, 1]), ip(&[3, 0, 4, -1])),
            (ip(&[-6, 4, 0, 0, 2]), ip(&[9, 3, 3])),
            (ip(&[1, 2, 3]), ip(&[4, 5, 6, 7, 8, 9])),
            (ip(&[0, 1, 0, 1]), ip(&[2, 0, 2, 0, 1])),
            (ip(&[5, -1, 2, 7, -3, 1]), ip(&[-2, 4, 1, 6, 1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(
                resultant(&a, &b),
                sylvester_resultant(&a, &b),
                "{a:?} {b:?}"
            );
        }
    }

    #[test]
    fn prem_identity() {
        let a = ip(&[3, 1, 4, 1, 5]);
        let b = ip(&[2, 0, 3]);
        let r = prem(&a, &b);
        assert!(degree(&r).map_or(true, |d| d < 2));
        // lc(b)^3 * a - r is divisible by b: check at roots-free points by evaluating
        // lc^3 a(x) - r(x) mod b(x) == 0 using a second prem
        let mut scaled: IntPoly = a.iter().map(|c| c * BigInt::from(27)).collect();
        for (i, c) in r.iter().enumerate() {
            scaled[i] -= c;
        }
        trim(&mut scaled);
        assert!(degree(&prem(&scaled, &b)).is_none());
    }
}
