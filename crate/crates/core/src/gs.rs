//! Golod-Shafarevich polynomials `P(t) = 1 - d t + sum count * t^depth`, negativity
//! witnesses, and the minimal cut level search.
//!
//! A finite pro-p group has `P(t) > 0` on all of `(0, 1)`, so a certified point with
//! `P(t0) < 0` proves the presented group infinite. Nothing here ever proves finiteness.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    certified_pow_compare, pow_rational, rat, uint_rat, ComparisonVerdict, Rational,
};
use crate::config::Config;
use crate::error::{domain, Error, Result};
use crate::serde_util;

/// Exponent cap for the fallback bound `count * t^min(depth, FALLBACK_POWER)`.
const FALLBACK_POWER: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Depth {
    Plain(u64),
    /// `base^exp`, kept factored because the expanded value may be astronomically large.
    Power {
        base: u64,
        exp: u32,
    },
}

impl Depth {
    pub fn value(&self) -> BigUint {
        match *self {
            Depth::Plain(d) => BigUint::from(d),
            Depth::Power { base, exp } => Pow::pow(BigUint::from(base), exp),
        }
    }

    pub fn is_factored(&self) -> bool {
        matches!(self, Depth::Power { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Depth::Plain(d) if d < 2 => Err(domain(format!(
                "relation depth {d} < 2 is impossible in a minimal presentation"
            ))),
            Depth::Power { base, .. } if !crate::primality::is_prime_u64(base) => {
                Err(domain(format!("factored depth base {base} is not prime")))
            }
            Depth::Power { base, exp }
                if Pow::pow(BigUint::from(base), exp) < BigUint::from(2u32) =>
            {
                Err(domain(format!(
                    "depth {base}^{exp} < 2: cut relations need depth at least 2"
                )))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthTerm {
    pub depth: Depth,
    #[serde(with = "serde_util::biguint")]
    pub count: BigUint,
}

impl DepthTerm {
    pub fn plain(depth: u64, count: impl Into<BigUint>) -> Result<Self> {
        Self::new(Depth::Plain(depth), count.into())
    }

    pub fn power(base: u64, exp: u32, count: impl Into<BigUint>) -> Result<Self> {
        Self::new(Depth::Power { base, exp }, count.into())
    }

    pub fn new(depth: Depth, count: BigUint) -> Result<Self> {
        depth.validate()?;
        if count.is_zero() {
            return Err(domain("relation term count must be positive"));
        }
        Ok(DepthTerm { depth, count })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsPolynomial {
    #[serde(with = "serde_util::biguint")]
    pub d: BigUint,
    pub terms: Vec<DepthTerm>,
}

impl GsPolynomial {
    pub fn new(d: impl Into<BigUint>, terms: Vec<DepthTerm>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(domain("generator count d must be at least 1"));
        }
        Ok(GsPolynomial { d, terms })
    }

    /// `1 - d t + r t^2`.
    pub fn quadratic(d: impl Into<BigUint>, r: impl Into<BigUint>) -> Result<Self> {
        let r = r.into();
        let terms = if r.is_zero() {
            Vec::new()
        } else {
            vec![DepthTerm::plain(2, r)?]
        };
        Self::new(d, terms)
    }

    pub fn with_term(&self, term: DepthTerm) -> Self {
        let mut out = self.clone();
        out.terms.push(term);
        out
    }

    /// Total count of plain depth-2 terms.
    pub fn depth_two_count(&self) -> BigUint {
        self.terms
            .iter()
            .filter(|t| t.depth == Depth::Plain(2))
            .map(|t| t.count.clone())
            .sum()
    }

    /// `1 - d t + sum over plain terms`.
    fn plain_part(&self, t: &Rational) -> Rational {
        let mut acc = BigRational::one() - uint_rat(&self.d) * t;
        for term in &self.terms {
            if let Depth::Plain(depth) = term.depth {
                acc += uint_rat(&term.count) * pow_rational(t, depth as usize);
            }
        }
        acc
    }
}

fn check_unit_interval(t: &Rational, open: bool) -> Result<()> {
    let ok = if open {
        t.is_positive() && t < &BigRational::one()
    } else {
        !t.is_negative() && t <= &BigRational::one()
    };
    if ok {
        Ok(())
    } else {
        Err(domain(format!("t = {t} outside the unit interval")))
    }
}

fn within_threshold(e: &BigUint, cfg: &Config) -> bool {
    e.bits() <= cfg.exact_threshold_bits as u64 || *e == BigUint::one() << cfg.exact_threshold_bits
}

/// Exact value of `P(t)` for `0 <= t <= 1`.
pub fn gs_eval(poly: &GsPolynomial, t: &Rational, cfg: &Config) -> Result<Rational> {
    check_unit_interval(t, false)?;
    let mut acc = poly.plain_part(t);
    let trivial_t = t.is_zero() || t.is_one();
    for term in &poly.terms {
        if let Depth::Power { base, exp } = term.depth {
            let e = term.depth.value();
            let power = if trivial_t {
                t.clone()
            } else if within_threshold(&e, cfg) {
                pow_rational(t, usize::try_from(&e).expect("below threshold"))
            } else {
                return Err(Error::OversizedDepth { base, exp });
            };
            acc += uint_rat(&term.count) * power;
        }
    }
    Ok(acc)
}

/// Certified verdict for one factored term, recorded in witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TailBound {
    pub term: DepthTerm,
    /// Proven upper bound on `count * t^depth` (the budget the verdict certifies).
    #[serde(with = "serde_util::rational")]
    pub contribution: Rational,
    /// Verdict of `t^depth < contribution / count`; absent when the fallback bound was used.
    pub verdict: Option<ComparisonVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundedValue {
    #[serde(with = "serde_util::rational")]
    pub upper_bound: Rational,
    pub tail_bounds: Vec<TailBound>,
}

impl BoundedValue {
    pub fn verdict_trail(&self) -> Vec<ComparisonVerdict> {
        self.tail_bounds
            .iter()
            .filter_map(|b| b.verdict.clone())
            .collect()
    }
}

/// Certified upper bound on `P(t)`, `0 < t < 1`.
///
/// Plain terms are exact. When the plain part is negative, its slack is split equally
/// among the factored terms and each term is bounded by the smallest budget
/// `slack / (m 2^j)`, `j >= 1`, that a certified comparison proves. Terms that do not fit
/// in the slack fall back to `count * t^min(depth, 64)`, which is valid since `t < 1`.
pub fn gs_eval_bounded(poly: &GsPolynomial, t: &Rational, cfg: &Config) -> Result<BoundedValue> {
    check_unit_interval(t, true)?;
    let plain = poly.plain_part(t);
    let factored: Vec<&DepthTerm> = poly
        .terms
        .iter()
        .filter(|t| t.depth.is_factored())
        .collect();
    if factored.is_empty() {
        return Ok(BoundedValue {
            upper_bound: plain,
            tail_bounds: Vec::new(),
        });
    }

    let share = plain
        .is_negative()
        .then(|| -&plain / rat(factored.len() as u64, 1u32));
    let mut upper = plain;
    let mut tail_bounds = Vec::with_capacity(factored.len());
    for term in factored {
        let bound = bound_term(term, t, share.as_ref(), cfg)?;
        upper += &bound.contribution;
        tail_bounds.push(bound);
    }
    Ok(BoundedValue {
        upper_bound: upper,
        tail_bounds,
    })
}

fn bound_term(
    term: &DepthTerm,
    t: &Rational,
    share: Option<&Rational>,
    cfg: &Config,
) -> Result<TailBound> {
    let exponent = term.depth.value();
    let count = uint_rat(&term.count);
    let mut best: Option<(Rational, ComparisonVerdict)> = None;
    if let Some(share) = share {
        let mut budget = share.clone();
        for _ in 0..cfg.budget_halvings.max(1) {
            budget /= rat(2u32, 1u32);
            let verdict = certified_pow_compare(t, &exponent, &(&budget / &count), cfg)?;
            if !verdict.is_less() {
                break;
            }
            best = Some((budget.clone(), verdict));
        }
    }
    Ok(match best {
        Some((contribution, verdict)) => TailBound {
            term: term.clone(),
            contribution,
            verdict: Some(verdict),
        },
        None => {
            let cap = exponent.clone().min(BigUint::from(FALLBACK_POWER));
            let cap = usize::try_from(&cap).expect("capped");
            TailBound {
                term: term.clone(),
                contribution: count * pow_rational(t, cap),
                verdict: None,
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum WitnessSource {
    /// `t0 = d / (2 r)` with `r` the depth-2 relation count.
    QuadraticMinimum,
    /// First negative point on the dyadic grid `j / 2^m`.
    DyadicGrid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NegativityWitness {
    #[serde(with = "serde_util::rational")]
    pub t0: Rational,
    #[serde(with = "serde_util::rational")]
    pub value: Rational,
    pub tail_bounds: Vec<TailBound>,
    pub source: WitnessSource,
}

impl NegativityWitness {
    /// Witness invariants: negative value, and every factored term certified inside the
    /// slack by a `ProvenLess` verdict.
    pub fn is_sound(&self) -> bool {
        self.value.is_negative()
            && self
                .tail_bounds
                .iter()
                .all(|b| b.verdict.as_ref().is_some_and(ComparisonVerdict::is_less))
    }
}

fn witness_at(
    poly: &GsPolynomial,
    t: &Rational,
    source: WitnessSource,
    cfg: &Config,
) -> Result<Option<NegativityWitness>> {
    let bounded = gs_eval_bounded(poly, t, cfg)?;
    let w = NegativityWitness {
        t0: t.clone(),
        value: bounded.upper_bound,
        tail_bounds: bounded.tail_bounds,
        source,
    };
    Ok(w.is_sound().then_some(w))
}

/// The quadratic-minimum candidate `d / (2 r)`, when it lies in `(0, 1)`.
pub fn quadratic_candidate(poly: &GsPolynomial) -> Option<Rational> {
    let r = poly.depth_two_count();
    if r.is_zero() {
        return None;
    }
    let t0 = BigRational::new(poly.d.clone().into(), (r * 2u32).into());
    (t0 < BigRational::one()).then_some(t0)
}

/// Search for a certified point where `P` is negative. `None` proves nothing.
pub fn find_witness(poly: &GsPolynomial, cfg: &Config) -> Result<Option<NegativityWitness>> {
    if let Some(t0) = quadratic_candidate(poly) {
        if let Some(w) = witness_at(poly, &t0, WitnessSource::QuadraticMinimum, cfg)? {
            return Ok(Some(w));
        }
    }
    let grid: Vec<Rational> = (1..=cfg.grid_depth)
        .flat_map(|m| {
            let den = BigUint::one() << m;
            (1u64..(1u64 << m))
                .step_by(2)
                .map(move |j| BigRational::new(j.into(), den.clone().into()))
        })
        .collect();
    let found = grid
        .par_iter()
        .map(|t| witness_at(poly, t, WitnessSource::DyadicGrid, cfg))
        .find_first(|r| !matches!(r, Ok(None)));
    found.unwrap_or(Ok(None))
}

/// Least `k` (with `p^k >= 2`) such that appending `tail_count` relations of depth `p^k`
/// still certifies `P(t0) < 0`, together with the witness.
pub fn min_cut_level(
    gamma: &GsPolynomial,
    t0: &Rational,
    p: u64,
    tail_count: &BigUint,
    cfg: &Config,
) -> Result<(u32, NegativityWitness)> {
    let exact = gs_eval(gamma, t0, cfg)?;
    if !exact.is_negative() {
        return Err(domain(format!(
            "P(t0) = {exact} at t0 = {t0} is not negative; no cut level can help"
        )));
    }
    if !(t0.is_positive() && t0 < &BigRational::one()) {
        return Err(domain(format!("t0 = {t0} outside (0, 1)")));
    }
    for k in first_cut_level(p)?..=cfg.max_cut_level {
        let poly = gamma.with_term(DepthTerm::power(p, k, tail_count.clone())?);
        if let Some(w) = witness_at(&poly, t0, WitnessSource::QuadraticMinimum, cfg)? {
            return Ok((k, w));
        }
    }
    Err(Error::Internal(format!(
        "no cut level up to {} certified at t0 = {t0}",
        cfg.max_cut_level
    )))
}

/// Least `k` with `p^k >= 2`.
pub fn first_cut_level(p: u64) -> Result<u32> {
    if !crate::primality::is_prime_u64(p) {
        return Err(domain(format!("{p} is not prime")));
    }
    Ok(1)
}
