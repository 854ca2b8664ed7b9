//! Acceptance criteria. Runs without the libtest harness so each criterion prints one
//! PASS/FAIL line even when test output is captured.

use std::time::{Duration, Instant};

use gs_tower::arith::{certified_pow_compare, pow_rational, rat, rat_int, CycloElement, Rational};
use gs_tower::cohomology::{
    analyze_tower, gamma_k_presentation, gamma_presentation, prop0_inequality, Certificate,
    FieldParams, Verdict,
};
use gs_tower::cyclo_class::{maillet_hminus, relative_class_number};
use gs_tower::gs::{gs_eval, DepthTerm, GsPolynomial};
use gs_tower::primality::{is_prime_u64, small_primes};
use gs_tower::shanks::{shanks_scan, ShanksRecord};
use gs_tower::Config;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn table_exact() -> Check {
    let mut worst = Duration::ZERO;
    for (m, want) in [(64u64, 17u64), (81, 2593), (125, 57708445601)] {
        let start = Instant::now();
        let h = ok(relative_class_number(m))?.h_minus;
        let took = start.elapsed();
        worst = worst.max(took);
        ensure(h == BigUint::from(want), || {
            format!("h^-({m}) = {h}, expected {want}")
        })?;
        ensure(took < Duration::from_secs(60), || {
            format!("modulus {m} took {took:?} (limit 60s)")
        })?;
    }
    Ok(format!("h^- = 17, 2593, 57708445601; slowest {worst:?}"))
}

fn table_bounds() -> Check {
    let start = Instant::now();
    let h49 = ok(relative_class_number(49))?.h_minus;
    ensure(h49 >= BigUint::from(43u32), || {
        format!("h^-(49) = {h49} < 43")
    })?;
    let primes: Vec<u64> = (29..=199).filter(|&p| is_prime_u64(p)).collect();
    let mut least: Option<(u64, BigUint)> = None;
    for &p in &primes {
        let h = ok(relative_class_number(p))?.h_minus;
        ensure(h >= BigUint::from(8u32), || format!("h^-({p}) = {h} < 8"))?;
        if least.as_ref().is_none_or(|(_, l)| &h < l) {
            least = Some((p, h));
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || {
        format!("took {took:?} (limit 5min)")
    })?;
    let (lp, lh) = least.expect("range is nonempty");
    Ok(format!(
        "h^-(49) = {h49}; {} primes in [29, 199], least h^-({lp}) = {lh}; {took:?}",
        primes.len()
    ))
}

fn maillet_oracle() -> Check {
    let start = Instant::now();
    let primes: Vec<u64> = small_primes(100).into_iter().filter(|&p| p > 2).collect();
    for &p in &primes {
        let a = ok(relative_class_number(p))?.h_minus;
        let b = ok(maillet_hminus(p))?;
        ensure(a == b, || {
            format!("p = {p}: characters give {a}, Maillet gives {b}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || {
        format!("took {took:?} (limit 2min)")
    })?;
    Ok(format!(
        "{} odd primes <= 100 agree; {took:?}",
        primes.len()
    ))
}

fn pipeline() -> Check {
    let start = Instant::now();
    let params = ok(FieldParams::new(2, 32, 1, 17u32, 0u32))?;
    let cert = ok(analyze_tower(&params, &Config::default()))?;
    ensure(cert.verdict == Verdict::InfiniteByCutting, || {
        format!("verdict {:?}", cert.verdict)
    })?;
    ensure(cert.d == BigUint::from(289u32), || {
        format!("d = {}", cert.d)
    })?;
    ensure(cert.r == BigUint::from(9553u32), || {
        format!("r = {}", cert.r)
    })?;
    let t0 = rat(289, 19106);
    ensure(cert.t0.as_ref() == Some(&t0), || {
        format!("t0 = {:?}", cert.t0)
    })?;
    ensure(cert.gamma_value == Some(rat(-45309, 38212)), || {
        format!("P(t0) = {:?}", cert.gamma_value)
    })?;

    // independent exact value of P_Gamma(t0) from the closed form
    let closed = Rational::one() - rat_int(289) * &t0 + rat_int(9553) * &t0 * &t0;
    ensure(closed == rat(-45309, 38212), || {
        format!("closed form gives {closed}")
    })?;

    let k = cert.cut_level_k.ok_or("no cut level")?;
    let replayed = ok(cert.replay())?;
    ensure(replayed == Verdict::InfiniteByCutting, || {
        format!("replay gave {replayed:?}")
    })?;
    // the cut polynomial at k is negative in exact arithmetic too
    let cut = ok(ok(gamma_k_presentation(&params, k))?.polynomial())?;
    let exact = ok(gs_eval(&cut, &t0, &Config::default()))?;
    ensure(exact.is_negative(), || format!("P_Gamma_{k}(t0) = {exact}"))?;

    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || {
        format!("took {took:?} (limit 1s)")
    })?;
    Ok(format!(
        "d=289, r=9553, P(289/19106) = -45309/38212, k = {k}, replay ok; {took:?}"
    ))
}

fn inequality_sweep() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for g in 8u32..=200 {
        for x in 1u32..=50 {
            ensure(prop0_inequality(g, x), || {
                format!("fails at g = {g}, x = {x}")
            })?;
            count += 1;
        }
    }
    ensure(!prop0_inequality(7u32, 1u32), || {
        "holds at g = 7, x = 1".into()
    })?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || {
        format!("took {took:?} (limit 1s)")
    })?;
    Ok(format!("{count} pairs hold, (7, 1) fails; {took:?}"))
}

fn shanks_fixture() -> Check {
    let start = Instant::now();
    let recs = ok(shanks_scan(17279, 17279))?;
    ensure(recs.len() == 1, || format!("{} records", recs.len()))?;
    let p = BigInt::from(298615687u64);
    ensure(
        recs[0].p == BigUint::from(298615687u64) && recs[0].is_prime,
        || format!("p = {}", recs[0].p),
    )?;
    ensure(recs[0].discriminant == &p * &p, || {
        format!("disc = {}", recs[0].discriminant)
    })?;
    for a in 1..=10_000u64 {
        let rec = ShanksRecord::new(a);
        let q = BigInt::from(a * a + 3 * a + 9);
        ensure(rec.discriminant == &q * &q, || {
            format!("identity fails at a = {a}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || {
        format!("took {took:?} (limit 10s)")
    })?;
    Ok(format!(
        "p = 298615687 prime, disc = p^2, identity for a <= 10^4; {took:?}"
    ))
}

fn hand_example() -> Check {
    let start = Instant::now();
    let cfg = Config::default();
    let params = ok(FieldParams::new(2, 1, 1, 8u32, 0u32))?;
    let pres = ok(gamma_presentation(&params))?;
    ensure(pres.d == BigUint::from(12u32), || format!("d = {}", pres.d))?;
    ensure(pres.relation_count() == BigUint::from(31u32), || {
        format!("r = {}", pres.relation_count())
    })?;
    let t0 = rat(6, 31);
    let value = ok(gs_eval(&ok(pres.polynomial())?, &t0, &cfg))?;
    ensure(value == rat(-5, 31), || format!("P(6/31) = {value}"))?;

    let cert = ok(analyze_tower(&params, &cfg))?;
    ensure(cert.t0 == Some(t0.clone()), || {
        format!("t0 = {:?}", cert.t0)
    })?;
    ensure(cert.cut_level_k == Some(2), || {
        format!("k = {:?}", cert.cut_level_k)
    })?;
    ok(cert.replay())?;

    // exact replay of both cut levels: 1 - 12t + 31t^2 + 24 t^(2^k)
    let base = rat(-5, 31);
    let at = |k: u32| &base + rat_int(24) * pow_rational(&t0, 1usize << k);
    ensure(!at(1).is_negative(), || {
        format!("k = 1 already negative: {}", at(1))
    })?;
    ensure(at(2).is_negative(), || {
        format!("k = 2 not negative: {}", at(2))
    })?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || {
        format!("took {took:?} (limit 1s)")
    })?;
    Ok(format!("d=12, r=31, P(6/31) = -5/31, k = 2; {took:?}"))
}

fn random_unit_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den: u64 = rng.gen_range(2..10_000);
    rat(rng.gen_range(1..den), den)
}

fn property_suites() -> Check {
    const CASES: usize = 1000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cfg = Config::default();

    for _ in 0..CASES {
        let d: u32 = rng.gen_range(1..1000);
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(0..4) {
            terms.push(ok(DepthTerm::plain(
                rng.gen_range(2..40),
                rng.gen_range(1u32..1000),
            ))?);
        }
        if rng.gen_bool(0.5) {
            terms.push(ok(DepthTerm::power(
                2,
                rng.gen_range(1..40),
                rng.gen_range(1u32..100),
            ))?);
        }
        let poly = ok(GsPolynomial::new(d, terms))?;
        let v = ok(gs_eval(&poly, &Rational::zero(), &cfg))?;
        ensure(v.is_one(), || format!("P(0) = {v} for {poly:?}"))?;
    }

    let directed = Config {
        force_directed: true,
        ..Config::default()
    };
    let mut near = 0;
    for i in 0..CASES {
        let q = random_unit_rational(&mut rng);
        let e: usize = rng.gen_range(1..400);
        let exact = pow_rational(&q, e);
        let bound = match i % 4 {
            0 => exact.clone(),
            1 => {
                near += 1;
                &exact * rat(1_000_001, 1_000_000)
            }
            2 => {
                near += 1;
                &exact * rat(999_999, 1_000_000)
            }
            _ => random_unit_rational(&mut rng),
        };
        let want = exact < bound;
        for c in [&cfg, &directed] {
            let got = ok(certified_pow_compare(&q, &BigUint::from(e), &bound, c))?;
            ensure(got.is_less() == want, || {
                format!("{q}^{e} < {bound}: got {:?}, expected {want}", got.outcome)
            })?;
        }
    }

    for _ in 0..CASES {
        let n: u64 = rng.gen_range(1..=24);
        let element = |rng: &mut ChaCha8Rng| {
            let coeffs = (0..rng.gen_range(1..=n as usize))
                .map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
                .collect();
            CycloElement::new(n, coeffs)
        };
        let a = element(&mut rng);
        let b = element(&mut rng);
        let ab = ok(a.mul(&b))?;
        ensure(ab.norm() == a.norm() * b.norm(), || {
            format!("N(ab) != N(a)N(b) for {a:?}, {b:?}")
        })?;
    }

    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut rounds = 0;
    for _ in 0..200 {
        let p = primes[rng.gen_range(0..primes.len())];
        let (e, f) = (rng.gen_range(1..60u64), rng.gen_range(1..4u64));
        let mut g: u64 = rng.gen_range(1..40);
        if (e * f * g) % 2 == 1 {
            g += 1;
        }
        let dim_vs: u32 = rng.gen_range(0..3);
        let params = ok(FieldParams::new(p, e, f, g, dim_vs))?;
        let a = ok(analyze_tower(&params, &cfg))?;
        let b = ok(analyze_tower(&params, &cfg))?;
        let text = ok(serde_json::to_string(&a))?;
        ensure(text == ok(serde_json::to_string(&b))?, || {
            format!("nondeterministic for {params:?}")
        })?;
        let back: Certificate = ok(serde_json::from_str(&text))?;
        ensure(back == a, || format!("round trip changed {params:?}"))?;
        let v = ok(back.replay())?;
        ensure(v == a.verdict, || {
            format!("replay verdict {v:?} for {params:?}")
        })?;
        rounds += 1;
    }

    let took = start.elapsed();
    Ok(format!(
        "{CASES} P(0)=1, {CASES} x2 comparisons ({near} near-equal), {CASES} norm products, \
         {rounds} certificate round trips; {took:?}"
    ))
}

/// For every computed modulus with phi above 220, h^- exceeds 10^9.
fn large_phi_threshold() -> Check {
    let start = Instant::now();
    let moduli = [229u64, 233, 239, 241, 251, 289, 361, 529];
    for m in moduli {
        let h = ok(relative_class_number(m))?.h_minus;
        ensure(h >= BigUint::from(1_000_000_000u64), || {
            format!("h^-({m}) = {h} < 10^9")
        })?;
    }
    let took = start.elapsed();
    Ok(format!("h^- >= 10^9 for moduli {moduli:?}; {took:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 table values exact", table_exact),
        ("2 table bounds", table_bounds),
        ("3 Maillet oracle agreement", maillet_oracle),
        ("4 cutting pipeline (2, 32, 1, 17)", pipeline),
        ("5 inequality sweep", inequality_sweep),
        ("6 Shanks fixture", shanks_fixture),
        ("7 hand example (g=8, ef=1)", hand_example),
        ("8 property suites", property_suites),
        ("9 large-phi class numbers", large_phi_threshold),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
