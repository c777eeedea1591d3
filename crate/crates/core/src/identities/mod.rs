//! The identity registry: every q-series identity implemented as an exact
//! LHS/RHS pair of truncated series with a uniform verification API.
//!
//! Each entry builds both sides with independent code paths wherever the
//! source material allows (theta sums vs hypergeometric sums, sum sides vs
//! product sides) and compares them coefficientwise on a declared window.
//! Ambiguously printed displays are run under every defensible reading; the
//! report notes which single reading verifies.

mod builders;
mod h34;
mod m35;
mod m38;
mod m3t;
mod santos;

pub use builders::{h34_theta, h35_theta, h38_theta, mm_theta, zagier_theta};
pub use santos::{santos, SantosVariant};

use crate::number::{rat, Rat};
use crate::report::{DiscrepancyReport, Status, VerificationReport};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::time::Instant;

/// Integer parameters for a verification run; unknown keys are rejected.
pub type Params = BTreeMap<String, i64>;

/// Outcome produced by an identity runner before wrapping into a report.
pub(crate) struct RunOutcome {
    pub passed: bool,
    pub discrepancy: Option<DiscrepancyReport>,
    pub q_order: Rat,
    pub x_window: Option<(i64, i64)>,
    pub notes: Vec<String>,
}

impl RunOutcome {
    fn pure_q(passed: bool, discrepancy: Option<DiscrepancyReport>, q_order: Rat) -> Self {
        RunOutcome { passed, discrepancy, q_order, x_window: None, notes: Vec::new() }
    }

    fn windowed(
        passed: bool,
        discrepancy: Option<DiscrepancyReport>,
        q_order: Rat,
        x_lo: i64,
        x_hi: i64,
    ) -> Self {
        RunOutcome { passed, discrepancy, q_order, x_window: Some((x_lo, x_hi)), notes: Vec::new() }
    }
}

/// Compare two q-series sides at `order`, packaging any mismatch.
pub(crate) fn q_outcome(
    lhs: &crate::qseries::QSeries,
    rhs: &crate::qseries::QSeries,
    order: &Rat,
) -> Result<RunOutcome> {
    let d = lhs.first_discrepancy(rhs, order)?;
    Ok(RunOutcome::pure_q(
        d.is_none(),
        d.map(|(e, a, b)| DiscrepancyReport {
            x_exp: None,
            q_exp: e.to_string(),
            lhs: a.to_string(),
            rhs: b.to_string(),
        }),
        order.clone(),
    ))
}

/// Compare two (x, q)-series sides on the declared window.
pub(crate) fn x_outcome(
    lhs: &crate::qseries::XQSeries,
    rhs: &crate::qseries::XQSeries,
    order: &Rat,
    x_lo: i64,
    x_hi: i64,
) -> Result<RunOutcome> {
    let d = lhs.first_discrepancy_on_window(rhs, order, x_lo, x_hi)?;
    Ok(RunOutcome::windowed(d.is_none(), d.map(Into::into), order.clone(), x_lo, x_hi))
}

/// A registered identity.
pub struct IdentityDef {
    pub id: &'static str,
    pub summary: &'static str,
    /// Parameter names with their default values.
    pub defaults: &'static [(&'static str, i64)],
    runner: fn(&ResolvedParams) -> Result<RunOutcome>,
}

/// Parameters after merging defaults with caller overrides.
pub(crate) struct ResolvedParams(BTreeMap<String, i64>);

impl ResolvedParams {
    pub fn get(&self, key: &str) -> i64 {
        self.0[key]
    }

    pub fn order(&self) -> Rat {
        rat(self.get("order"))
    }
}

/// The full identity registry, in documentation order.
pub fn registry() -> &'static [IdentityDef] {
    &REGISTRY
}

/// Verify one identity; `params` override the registered defaults.
pub fn verify(id: &str, params: &Params) -> Result<VerificationReport> {
    let def = REGISTRY
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let mut resolved: BTreeMap<String, i64> =
        def.defaults.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (k, v) in params {
        if !resolved.contains_key(k) {
            return Err(Error::InvalidParam(format!(
                "identity `{id}` does not take parameter `{k}` (expected one of {:?})",
                def.defaults.iter().map(|(k, _)| *k).collect::<Vec<_>>()
            )));
        }
        resolved.insert(k.clone(), *v);
    }
    validate(id, &resolved)?;
    let start = Instant::now();
    let outcome = (def.runner)(&ResolvedParams(resolved.clone()))?;
    Ok(VerificationReport {
        id: id.to_string(),
        params: resolved,
        status: if outcome.passed { Status::Pass } else { Status::Fail },
        first_discrepancy: outcome.discrepancy,
        q_order: outcome.q_order.to_string(),
        x_window: outcome.x_window,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        notes: outcome.notes,
    })
}

/// Verify every registry entry at its defaults, in registry order.
pub fn verify_all() -> Result<Vec<VerificationReport>> {
    REGISTRY.iter().map(|d| verify(d.id, &Params::new())).collect()
}

fn validate(id: &str, p: &BTreeMap<String, i64>) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParam(format!("{id}: {msg}")));
    for (k, v) in p {
        match k.as_str() {
            "order" if *v < 0 => return bad(format!("order must be >= 0, got {v}")),
            "n_max" | "span" | "x_hi" if *v < 0 => {
                return bad(format!("{k} must be >= 0, got {v}"))
            }
            "a" if !(0..=1).contains(v) => return bad(format!("a must be 0 or 1, got {v}")),
            "k" if !(*v == 2 || *v == 4 || *v == 8) => {
                return bad(format!("k must be 2, 4 or 8, got {v}"))
            }
            "t" if *v < 2 || *v % 3 == 0 => {
                return bad(format!("t must be >= 2 and coprime to 3, got {v}"))
            }
            _ => {}
        }
    }
    if let (Some(t), Some(m)) = (p.get("t"), p.get("m")) {
        if !(1..*t).contains(m) {
            return bad(format!("m must satisfy 1 <= m < t, got m={m}, t={t}"));
        }
    }
    if let (Some(lo), Some(hi)) = (p.get("x_lo"), p.get("x_hi")) {
        if lo > hi {
            return bad(format!("x_lo={lo} exceeds x_hi={hi}"));
        }
    }
    Ok(())
}

static REGISTRY: [IdentityDef; 33] = [
    IdentityDef {
        id: "santos_closed_vs_recursion",
        summary: "Santos polynomial pair: Gaussian-binomial closed form equals the 2x2 matrix recursion, exactly",
        defaults: &[("n_max", 100)],
        runner: santos::run_closed_vs_recursion,
    },
    IdentityDef {
        id: "x_partial_structure",
        summary: "structure of the partial sums sum_n (q)_n (T_n+T_{n+1}) (a=0) resp. S (a=1): per-term constant coefficient and tail valuation",
        defaults: &[("a", 0), ("n_max", 24), ("order", 50)],
        runner: h34::run_x_partial_structure,
    },
    IdentityDef {
        id: "h_def_expansion",
        summary: "theta-sum construction of the two mod-24 series reproduces their displayed leading terms",
        defaults: &[("a", 0), ("order", 60), ("x_hi", 40)],
        runner: h34::run_h_def_expansion,
    },
    IdentityDef {
        id: "h_difference_eqs",
        summary: "the coupled q-difference equations of the mod-24 pair",
        defaults: &[("order", 60), ("x_hi", 40)],
        runner: h34::run_h_difference_eqs,
    },
    IdentityDef {
        id: "zagier_H_split",
        summary: "-q^(1/2) x^2 H0(x) + H1(x) equals the mod-12 theta in q^(1/2)",
        defaults: &[("order", 60), ("x_hi", 40)],
        runner: h34::run_zagier_split,
    },
    IdentityDef {
        id: "zagier_hypergeometric",
        summary: "the mod-12 theta equals sum_n (x;q)_{n+1} x^n",
        defaults: &[("order", 60), ("x_hi", 40)],
        runner: h34::run_zagier_hypergeometric,
    },
    IdentityDef {
        id: "prop_H_and_etc",
        summary: "H^(1-a)(x) as the double sum with (x)_{n+1} x^{2n} and two bracketed Gaussian-binomial sums",
        defaults: &[("a", 0), ("order", 60), ("x_lo", -5), ("x_hi", 40)],
        runner: h34::run_prop_h_and_etc,
    },
    IdentityDef {
        id: "h_lemma_form",
        summary: "the rewritten form with (qx)_inf and ((qx)_n - (qx)_inf) blocks (a=0 needs a correction term, recorded in notes)",
        defaults: &[("a", 0), ("order", 60), ("x_lo", -5), ("x_hi", 40)],
        runner: h34::run_h_lemma_form,
    },
    IdentityDef {
        id: "slater_83",
        summary: "(q)_inf sum q^{2n(n+1)}/(q)_{2n+1} equals the (8,16)-modulus product",
        defaults: &[("order", 200)],
        runner: h34::run_slater_83,
    },
    IdentityDef {
        id: "slater_86",
        summary: "(q)_inf sum q^{2n^2}/(q)_{2n} equals the (8,16)-modulus product",
        defaults: &[("order", 200)],
        runner: h34::run_slater_86,
    },
    IdentityDef {
        id: "strange_0",
        summary: "weight-1 mod-24 theta (family 0) equals product, Lambert and Santos-tail blocks; corrected product constant +5/2",
        defaults: &[("order", 100)],
        runner: h34::run_strange_0,
    },
    IdentityDef {
        id: "strange_1",
        summary: "weight-1 mod-24 theta (family 1) equals product, Lambert and Santos-tail blocks; corrected constant -1/2 and an extra (q)_inf",
        defaults: &[("order", 100)],
        runner: h34::run_strange_1,
    },
    IdentityDef {
        id: "aux_zagier_chi6",
        summary: "mod-6 theta equals sum_n (-x)_{n+1} (-x)^n",
        defaults: &[("order", 50), ("x_hi", 30)],
        runner: m35::run_aux_zagier_chi6,
    },
    IdentityDef {
        id: "aux_chi10_0",
        summary: "mod-10 theta (support 3,7) equals the single-extra-sum hypergeometric form",
        defaults: &[("order", 50), ("x_hi", 30)],
        runner: m35::run_aux_chi10_0,
    },
    IdentityDef {
        id: "aux_chi10_1",
        summary: "mod-10 theta (support 1,9) equals the single-extra-sum hypergeometric form",
        defaults: &[("order", 50), ("x_hi", 30)],
        runner: m35::run_aux_chi10_1,
    },
    IdentityDef {
        id: "aux_link_chi6t",
        summary: "shifted mod-6 theta equals the alternating q^{n(n+1)/2} double sum",
        defaults: &[("order", 50), ("x_hi", 30)],
        runner: m35::run_aux_link_chi6t,
    },
    IdentityDef {
        id: "m35_difference_eqs",
        summary: "the four coupled difference equations of the modulus-30 family",
        defaults: &[("order", 50), ("x_hi", 40)],
        runner: m35::run_difference_eqs,
    },
    IdentityDef {
        id: "m35_half_splits",
        summary: "the two half-index splits, verified after the substitution x -> x^2",
        defaults: &[("order", 50), ("x_hi", 40)],
        runner: m35::run_half_splits,
    },
    IdentityDef {
        id: "m35_products",
        summary: "the four x=1 product forms of the modulus-30 family",
        defaults: &[("order", 50)],
        runner: m35::run_products,
    },
    IdentityDef {
        id: "m35_prop_14a",
        summary: "modulus-30 (1,4) series: base-q^10 Zagier-type pair",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_14a,
    },
    IdentityDef {
        id: "m35_prop_14b",
        summary: "modulus-30 (1,4) series: base-q^6 double sum (ambiguous exponent placement; dual reading)",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_14b,
    },
    IdentityDef {
        id: "m35_prop_14c",
        summary: "modulus-30 (1,4) series: base-q^5 alternating double sum",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_14c,
    },
    IdentityDef {
        id: "m35_prop_13a",
        summary: "modulus-30 (1,3) series: base-q^6 double sum (dual reading)",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_13a,
    },
    IdentityDef {
        id: "m35_prop_13b",
        summary: "modulus-30 (1,3) series: base-q^5 alternating double sum",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_13b,
    },
    IdentityDef {
        id: "m35_prop_12a",
        summary: "modulus-30 (1,2) series: base-q^10 Zagier-type pair",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_12a,
    },
    IdentityDef {
        id: "m35_prop_12b",
        summary: "modulus-30 (1,2) series: base-q^5 alternating double sum",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_12b,
    },
    IdentityDef {
        id: "m35_prop_11a",
        summary: "modulus-30 (1,1) series: base-q^5 form with the 1 - x^{-2} head",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_11a,
    },
    IdentityDef {
        id: "m35_prop_11b",
        summary: "modulus-30 (1,1) series: base-q^10 Zagier-type pair with negative shift",
        defaults: &[("order", 50), ("x_lo", -5), ("x_hi", 40)],
        runner: m35::run_prop_11b,
    },
    IdentityDef {
        id: "m38_relations",
        summary: "modulus-48 family: the q^(1/4) split, even-index reductions, and the triple-sum forms (congruence reading of the constraint)",
        defaults: &[("order", 40), ("x_lo", -8), ("x_hi", 30)],
        runner: m38::run_m38_relations,
    },
    IdentityDef {
        id: "m3_2p_prop",
        summary: "the mod-12k split of the q^(1/k) series into 2k-modulus components, with the exponent non-integrality check",
        defaults: &[("k", 2), ("order", 40), ("x_hi", 30)],
        runner: m38::run_m3_2p_prop,
    },
    IdentityDef {
        id: "m3t_general",
        summary: "the general alternating double-sum form for the (3,t) family",
        defaults: &[("t", 5), ("m", 1), ("order", 40), ("x_lo", -5), ("x_hi", 30)],
        runner: m3t::run_m3t_general,
    },
    IdentityDef {
        id: "jacobi_triple",
        summary: "Jacobi triple product: bilateral sum vs infinite product",
        defaults: &[("order", 60), ("span", 12)],
        runner: run_jacobi,
    },
    IdentityDef {
        id: "quintuple",
        summary: "Watson quintuple product: bilateral sum vs infinite product",
        defaults: &[("order", 60), ("span", 12)],
        runner: run_quintuple,
    },
];

fn run_jacobi(p: &ResolvedParams) -> Result<RunOutcome> {
    let order = p.order();
    let span = p.get("span");
    let (lhs, rhs) = crate::qseries::jacobi_triple_sides(span, &order)?;
    let d = lhs.first_discrepancy_on_window(&rhs, &order, -span, span + 1)?;
    Ok(RunOutcome::windowed(d.is_none(), d.map(Into::into), order, -span, span + 1))
}

fn run_quintuple(p: &ResolvedParams) -> Result<RunOutcome> {
    let order = p.order();
    let span = p.get("span");
    let (lhs, rhs) = crate::qseries::quintuple_sides(span, &order)?;
    let d = lhs.first_discrepancy_on_window(&rhs, &order, -span, span + 1)?;
    Ok(RunOutcome::windowed(d.is_none(), d.map(Into::into), order, -span, span + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_rejected() {
        assert!(matches!(verify("bogus", &Params::new()), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn unknown_param_rejected() {
        let mut p = Params::new();
        p.insert("zorp".into(), 3);
        assert!(matches!(verify("slater_83", &p), Err(Error::InvalidParam(_))));
    }

    #[test]
    fn vacuous_zero_order_passes() {
        let mut p = Params::new();
        p.insert("order".into(), 0);
        let r = verify("slater_86", &p).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn registry_ids_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|d| d.id).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn jacobi_registry_entries_small() {
        let mut p = Params::new();
        p.insert("order".into(), 30);
        p.insert("span".into(), 8);
        assert!(verify("jacobi_triple", &p).unwrap().passed());
        assert!(verify("quintuple", &p).unwrap().passed());
    }
}
