//! Presentation data for `G_S` and its cut quotients, and the tower analysis pipeline.
//!
//! For `K/Q` Galois, totally imaginary, containing `mu_p`, with `S` the places above
//! `p`:
//!
//! * `dim H^2 = g - 1 + dim V_S`
//! * `dim H^1 = efg/2 + 1 + dim H^2`
//!
//! Cutting by the local commutators at each place gives `Gamma`, with
//! `g * binom(ef + 2, 2)` extra depth-2 relations; cutting further by the `p^k`-th
//! powers of the `g (ef + 2)` local generators gives `Gamma_k`.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::config::Config;
use crate::error::{domain, Error, Result};
use crate::gs::{
    self, first_cut_level, gs_eval, gs_eval_bounded, DepthTerm, GsPolynomial, NegativityWitness,
    WitnessSource,
};
use crate::primality::is_prime_u64;
use crate::serde_util;

pub const CAVEAT_TOWER_DISJUNCTION: &str = "either the p-class field tower of K is already \
     infinite, or the certificate applies over the top H of that tower, where p does not \
     divide the class number";
pub const CAVEAT_DIM_VS_ZERO: &str = "dim V_S = 0 is an input assumption (class number prime \
     to p, as at the top of the tower); it is not computed from field data";
pub const CAVEAT_H_PLUS: &str = "g is the relative class number h^-; h^+ = 1 is assumed per \
     published tables";
pub const CAVEAT_GRID_WITNESS: &str = "witness point chosen by dyadic grid search rather than \
     the quadratic minimum d/2r";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldParams {
    pub p: u64,
    /// Ramification index of a prime above `p`.
    pub e: u64,
    /// Residue degree of a prime above `p`.
    pub f: u64,
    /// Number of primes above `p`.
    #[serde(with = "serde_util::biguint")]
    pub g: BigUint,
    /// `dim V_S / K^{x p}`.
    #[serde(with = "serde_util::biguint")]
    pub dim_vs: BigUint,
    pub contains_mu_p: bool,
    pub totally_imaginary: bool,
}

impl FieldParams {
    /// Parameters of a totally imaginary Galois field containing `mu_p`.
    pub fn new(
        p: u64,
        e: u64,
        f: u64,
        g: impl Into<BigUint>,
        dim_vs: impl Into<BigUint>,
    ) -> Result<Self> {
        let params = FieldParams {
            p,
            e,
            f,
            g: g.into(),
            dim_vs: dim_vs.into(),
            contains_mu_p: true,
            totally_imaginary: true,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime_u64(self.p) {
            return Err(domain(format!("p = {} is not prime", self.p)));
        }
        if self.e == 0 || self.f == 0 || self.g.is_zero() {
            return Err(domain("e, f and g must be positive"));
        }
        if !self.contains_mu_p || !self.totally_imaginary {
            return Err(domain(
                "dimension formulas need a totally imaginary field containing mu_p",
            ));
        }
        if !(self.ef() * &self.g).bit(0) {
            Ok(())
        } else {
            Err(domain(format!(
                "efg = {} is odd; a totally imaginary field has even degree",
                self.ef() * &self.g
            )))
        }
    }

    pub fn ef(&self) -> BigUint {
        BigUint::from(self.e) * self.f
    }

    /// Local generator count per place, `ef + 2`.
    pub fn local_generators(&self) -> BigUint {
        self.ef() + 2u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationData {
    #[serde(with = "serde_util::biguint")]
    pub d: BigUint,
    pub relation_terms: Vec<DepthTerm>,
}

impl PresentationData {
    pub fn relation_count(&self) -> BigUint {
        self.relation_terms.iter().map(|t| t.count.clone()).sum()
    }

    pub fn polynomial(&self) -> Result<GsPolynomial> {
        GsPolynomial::new(self.d.clone(), self.relation_terms.clone())
    }
}

pub fn h2_dim(params: &FieldParams) -> Result<BigUint> {
    params.validate()?;
    Ok(&params.g - 1u32 + &params.dim_vs)
}

pub fn h1_dim(params: &FieldParams) -> Result<BigUint> {
    let h2 = h2_dim(params)?;
    Ok(params.ef() * &params.g / 2u32 + 1u32 + h2)
}

/// `G_S` itself, with every relation at the worst-case depth 2.
pub fn gs_presentation(params: &FieldParams) -> Result<PresentationData> {
    let r = h2_dim(params)?;
    Ok(PresentationData {
        d: h1_dim(params)?,
        relation_terms: depth_two(r)?,
    })
}

/// `Gamma`: `G_S` cut by the `binom(ef + 2, 2)` local commutators at each of the `g` places.
pub fn gamma_presentation(params: &FieldParams) -> Result<PresentationData> {
    let m = params.local_generators();
    let commutators = &params.g * (&m * (&m - 1u32) / 2u32);
    Ok(PresentationData {
        d: h1_dim(params)?,
        relation_terms: depth_two(h2_dim(params)? + commutators)?,
    })
}

fn depth_two(count: BigUint) -> Result<Vec<DepthTerm>> {
    if count.is_zero() {
        Ok(Vec::new())
    } else {
        Ok(vec![DepthTerm::plain(2, count)?])
    }
}

/// `Gamma_k`: additionally cut by the `p^k`-th powers of the `g (ef + 2)` local generators.
pub fn gamma_k_presentation(params: &FieldParams, k: u32) -> Result<PresentationData> {
    let mut pres = gamma_presentation(params)?;
    if k < first_cut_level(params.p)? {
        return Err(domain(format!(
            "cut level k = {k} gives depth p^k < 2; cut relations need depth at least 2"
        )));
    }
    pres.relation_terms
        .push(DepthTerm::power(params.p, k, tail_count(params))?);
    Ok(pres)
}

pub fn tail_count(params: &FieldParams) -> BigUint {
    &params.g * params.local_generators()
}

/// `16 + 8 (x + 2)(x + 1) < g (x + 2)^2`, exactly.
pub fn prop0_inequality(g: impl Into<BigUint>, x: impl Into<BigUint>) -> bool {
    let g = g.into();
    let x = x.into();
    let lhs = BigUint::from(16u32) + BigUint::from(8u32) * (&x + 2u32) * (&x + 1u32);
    let rhs = g * (&x + 2u32) * (&x + 2u32);
    lhs < rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    InfiniteByCutting,
    /// Reserved for an externally established infinite tower; the pipeline never
    /// produces it.
    InfiniteTowerAlready,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub params: FieldParams,
    #[serde(with = "serde_util::biguint")]
    pub d: BigUint,
    #[serde(with = "serde_util::biguint")]
    pub r: BigUint,
    #[serde(with = "serde_util::opt_rational")]
    pub t0: Option<Rational>,
    /// Exact `P_Gamma(t0)`.
    #[serde(with = "serde_util::opt_rational")]
    pub gamma_value: Option<Rational>,
    pub cut_level_k: Option<u32>,
    /// Certified bound for `P_{Gamma_k}(t0)` at the minimal cut level.
    pub cut_witness: Option<NegativityWitness>,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    pub config: Config,
}

/// Run the full cutting pipeline on one parameter set.
pub fn analyze_tower(params: &FieldParams, cfg: &Config) -> Result<Certificate> {
    let pres = gamma_presentation(params)?;
    let gamma = pres.polynomial()?;
    let r = pres.relation_count();

    let mut caveats = vec![CAVEAT_TOWER_DISJUNCTION.to_string()];
    if params.dim_vs.is_zero() {
        caveats.push(CAVEAT_DIM_VS_ZERO.to_string());
    }

    let witness = gs::find_witness(&gamma, cfg)?;
    let (t0, gamma_value, cut) = match witness {
        Some(w) => {
            if w.source == WitnessSource::DyadicGrid {
                caveats.push(CAVEAT_GRID_WITNESS.to_string());
            }
            let (k, cut_witness) =
                gs::min_cut_level(&gamma, &w.t0, params.p, &tail_count(params), cfg)?;
            (Some(w.t0), Some(w.value), Some((k, cut_witness)))
        }
        None => {
            let t0 = gs::quadratic_candidate(&gamma);
            let value = t0.as_ref().map(|t| gs_eval(&gamma, t, cfg)).transpose()?;
            (t0, value, None)
        }
    };
    let verdict = if cut.is_some() {
        Verdict::InfiniteByCutting
    } else {
        Verdict::Inconclusive
    };
    let (cut_level_k, cut_witness) = cut.unzip();
    Ok(Certificate {
        params: params.clone(),
        d: pres.d,
        r,
        t0,
        gamma_value,
        cut_level_k,
        cut_witness,
        verdict,
        caveats,
        config: *cfg,
    })
}

impl Certificate {
    /// Re-derive every recorded number at the recorded point and cut level, without
    /// searching, and return the verdict they support.
    pub fn replay(&self) -> Result<Verdict> {
        let cfg = &self.config;
        let pres = gamma_presentation(&self.params)?;
        let gamma = pres.polynomial()?;
        expect_eq("d", &pres.d, &self.d)?;
        expect_eq("r", &pres.relation_count(), &self.r)?;

        match (&self.t0, &self.gamma_value) {
            (Some(t0), Some(value)) => expect_eq("gammaValue", &gs_eval(&gamma, t0, cfg)?, value)?,
            (None, None) => {}
            _ => {
                return Err(Error::Replay(
                    "t0 and gammaValue must be recorded together".into(),
                ))
            }
        }

        let verdict = match (self.cut_level_k, &self.cut_witness) {
            (Some(k), Some(witness)) => {
                let t0 = self
                    .t0
                    .as_ref()
                    .ok_or_else(|| Error::Replay("cut level without t0".into()))?;
                if !self.gamma_value.as_ref().is_some_and(Signed::is_negative) {
                    return Err(Error::Replay(
                        "cut level recorded but P_Gamma(t0) >= 0".into(),
                    ));
                }
                expect_eq("witness t0", &witness.t0, t0)?;
                let poly = gamma_k_presentation(&self.params, k)?.polynomial()?;
                let bounded = gs_eval_bounded(&poly, t0, cfg)?;
                expect_eq("witness value", &bounded.upper_bound, &witness.value)?;
                if bounded.tail_bounds != witness.tail_bounds {
                    return Err(Error::Replay("tail bounds differ".into()));
                }
                if !witness.is_sound() {
                    return Err(Error::Replay(
                        "witness is not a sound negativity proof".into(),
                    ));
                }
                if k > first_cut_level(self.params.p)? {
                    let below = gamma_k_presentation(&self.params, k - 1)?.polynomial()?;
                    if gs_eval_bounded(&below, t0, cfg)?.upper_bound.is_negative() {
                        return Err(Error::Replay(format!("cut level {k} is not minimal")));
                    }
                }
                Verdict::InfiniteByCutting
            }
            (None, None) => {
                // the search was exhaustive over the recorded configuration
                if gs::find_witness(&gamma, cfg)?.is_some() {
                    return Err(Error::Replay(
                        "a witness exists but none was recorded".into(),
                    ));
                }
                Verdict::Inconclusive
            }
            _ => {
                return Err(Error::Replay(
                    "cut level and witness must be recorded together".into(),
                ))
            }
        };
        if verdict != self.verdict {
            return Err(Error::Replay(format!(
                "recorded verdict {:?}, replay gives {verdict:?}",
                self.verdict
            )));
        }
        Ok(verdict)
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: &T, recorded: &T) -> Result<()> {
    if got == recorded {
        Ok(())
    } else {
        Err(Error::Replay(format!(
            "{what}: recomputed {got}, recorded {recorded}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::gs::Depth;

    fn params(p: u64, e: u64, f: u64, g: u64, dim_vs: u64) -> FieldParams {
        FieldParams::new(p, e, f, g, dim_vs).unwrap()
    }

    fn count2(pres: &PresentationData) -> BigUint {
        pres.polynomial().unwrap().depth_two_count()
    }

    #[test]
    fn h2_examples() {
        assert_eq!(h2_dim(&params(2, 32, 1, 17, 0)).unwrap(), 16u32.into());
        assert_eq!(h2_dim(&params(2, 2, 1, 1, 0)).unwrap(), 0u32.into());
        assert_eq!(h2_dim(&params(2, 4, 2, 8, 3)).unwrap(), 10u32.into());
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_dim(&params(2, 32, 1, 17, 0)).unwrap(), 289u32.into());
        assert_eq!(h1_dim(&params(2, 2, 1, 1, 0)).unwrap(), 2u32.into());
        assert_eq!(h1_dim(&params(2, 4, 2, 8, 0)).unwrap(), 40u32.into());
    }

    #[test]
    fn flags_and_parity_are_enforced() {
        let mut p = params(3, 2, 1, 1, 0);
        p.totally_imaginary = false;
        assert!(matches!(h2_dim(&p), Err(Error::Domain(_))));
        let mut p = params(3, 2, 1, 1, 0);
        p.contains_mu_p = false;
        assert!(h1_dim(&p).is_err());
        assert!(FieldParams::new(2, 1, 1, 1u32, 0u32).is_err());
        assert!(FieldParams::new(4, 2, 1, 1u32, 0u32).is_err());
        assert!(FieldParams::new(3, 0, 1, 2u32, 0u32).is_err());
    }

    #[test]
    fn gamma_examples() {
        let pres = gamma_presentation(&params(2, 1, 1, 8, 0)).unwrap();
        assert_eq!(
            (pres.d.clone(), count2(&pres)),
            (12u32.into(), 31u32.into())
        );
        let pres = gamma_presentation(&params(2, 32, 1, 17, 0)).unwrap();
        assert_eq!(
            (pres.d.clone(), count2(&pres)),
            (289u32.into(), 9553u32.into())
        );
        let pres = gamma_presentation(&params(2, 2, 1, 1, 0)).unwrap();
        assert_eq!((pres.d.clone(), count2(&pres)), (2u32.into(), 6u32.into()));
    }

    #[test]
    fn gamma_k_examples() {
        let pres = gamma_k_presentation(&params(2, 1, 1, 8, 0), 2).unwrap();
        let last = pres.relation_terms.last().unwrap();
        assert_eq!(last.depth, Depth::Power { base: 2, exp: 2 });
        assert_eq!(last.count, 24u32.into());
        assert_eq!(last.depth.value(), 4u32.into());

        assert!(gamma_k_presentation(&params(2, 32, 1, 17, 0), 0).is_err());

        let pres = gamma_k_presentation(&params(3, 2, 1, 1, 0), 1).unwrap();
        let last = pres.relation_terms.last().unwrap();
        assert_eq!(
            (last.depth.value(), last.count.clone()),
            (3u32.into(), 4u32.into())
        );
    }

    #[test]
    fn inequality_examples() {
        assert!(prop0_inequality(8u32, 1u32));
        assert!(!prop0_inequality(7u32, 1u32));
        assert!(prop0_inequality(8u32, 100u32));
    }

    #[test]
    fn inequality_small_g_exhaustive() {
        // x = 1: 64 < 9g iff g >= 8
        for g in 1..=7u32 {
            assert!(!prop0_inequality(g, 1u32), "g = {g}");
        }
        for g in 8..=200u32 {
            for x in 1..=50u32 {
                assert!(prop0_inequality(g, x));
            }
        }
    }

    #[test]
    fn corollary_consistency() {
        for e in 1..=12u64 {
            for f in 1..=4u64 {
                for g in 1..=20u64 {
                    if (e * f * g) % 2 == 1 {
                        continue;
                    }
                    let p = params(3, e, f, g, 0);
                    let expect = BigUint::from(g) * (e * f + 2) / 2u32;
                    assert_eq!(h1_dim(&p).unwrap(), expect);
                    assert_eq!(h2_dim(&p).unwrap(), BigUint::from(g - 1));
                }
            }
        }
    }

    #[test]
    fn analyze_examples() {
        let cfg = Config::default();
        let c = analyze_tower(&params(2, 32, 1, 17, 0), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::InfiniteByCutting);
        assert_eq!((c.d.clone(), c.r.clone()), (289u32.into(), 9553u32.into()));
        assert_eq!(c.t0, Some(rat(289, 19106)));
        assert_eq!(c.gamma_value, Some(rat(-45309, 38212)));
        assert_eq!(c.cut_level_k, Some(1));
        assert_eq!(c.replay().unwrap(), Verdict::InfiniteByCutting);
        assert!(c.caveats.iter().any(|s| s == CAVEAT_TOWER_DISJUNCTION));

        let c = analyze_tower(&params(5, 1, 1, 2, 0), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!((c.d.clone(), c.r.clone()), (3u32.into(), 7u32.into()));
        assert!(c.cut_level_k.is_none());
        assert_eq!(c.replay().unwrap(), Verdict::Inconclusive);

        let g = 57708445601u64;
        let c = analyze_tower(&params(5, 100, 1, g, 0), &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::InfiniteByCutting);
        assert_eq!(c.d, BigUint::from(g) * 51u32);
        assert_eq!(c.r, BigUint::from(g) - 1u32 + BigUint::from(g) * 5151u32);
        assert!(&c.d * &c.d > BigUint::from(4u32) * &c.r);
        c.replay().unwrap();
    }

    #[test]
    fn inequality_implies_witness() {
        let cfg = Config::default();
        for g in (8..=40u64).chain([64, 101, 200]) {
            for x in (1..=1000u64).step_by(37).chain([1, 2, 999, 1000]) {
                let (e, g) = if (g * x) % 2 == 0 { (x, g) } else { (x, g + 1) };
                assert!(prop0_inequality(g, e));
                let c = analyze_tower(&params(3, e, 1, g, 0), &cfg).unwrap();
                assert_eq!(c.verdict, Verdict::InfiniteByCutting, "g={g} x={e}");
                assert!(&c.d * &c.d > BigUint::from(4u32) * &c.r);
            }
        }
    }

    #[test]
    fn tampered_certificates_fail_replay() {
        let cfg = Config::default();
        let c = analyze_tower(&params(2, 1, 1, 8, 0), &cfg).unwrap();
        assert_eq!(c.cut_level_k, Some(2));
        c.replay().unwrap();

        let mut bad = c.clone();
        bad.cut_level_k = Some(3);
        assert!(bad.replay().is_err());

        let mut bad = c.clone();
        bad.gamma_value = Some(rat(-1, 2));
        assert!(bad.replay().is_err());

        let mut bad = c.clone();
        bad.verdict = Verdict::Inconclusive;
        assert!(bad.replay().is_err());

        let mut bad = c;
        bad.r += 1u32;
        assert!(bad.replay().is_err());
    }
}
