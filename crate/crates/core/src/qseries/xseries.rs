//! Laurent polynomials in `x` whose coefficients are truncated q-series.
//!
//! The x-window works like the q-window: exponents below `xlo` are known
//! zero, exponents at or above `xtrunc` are unknown ([`EXACT`] when nothing
//! is). Every stored coefficient shares the global q-truncation `qtrunc` and
//! the global valuation floor `qlo`, which is what makes window propagation
//! through products sound without per-term bookkeeping.

use super::{lcm, wadd, QSeries, EXACT};
use crate::number::Rat;
use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XQSeries {
    qdenom: i64,
    /// Every coefficient's valuation is `>= qlo/qdenom`.
    qlo: i64,
    /// q-exponents `>= qtrunc/qdenom` are unknown in every coefficient.
    qtrunc: i64,
    /// x-exponents `< xlo` are zero.
    xlo: i64,
    /// x-exponents `>= xtrunc` are unknown.
    xtrunc: i64,
    terms: BTreeMap<i64, QSeries>,
}

impl XQSeries {
    /// Series with nothing known nonzero; `q_order` in q units of `1/qdenom`.
    pub fn zero_to(qdenom: i64, q_order: i64, x_order: i64) -> Self {
        XQSeries {
            qdenom,
            qlo: q_order.min(0),
            qtrunc: q_order,
            xlo: x_order.min(0),
            xtrunc: x_order,
            terms: BTreeMap::new(),
        }
        .normalized()
    }

    /// The exact zero.
    pub fn zero() -> Self {
        XQSeries { qdenom: 1, qlo: 0, qtrunc: EXACT, xlo: 0, xtrunc: EXACT, terms: BTreeMap::new() }
    }

    /// The exact constant 1.
    pub fn one() -> Self {
        Self::monomial(Rat::from(1), 0, &Rat::new())
    }

    /// Exact monomial `c * x^xe * q^qe`.
    pub fn monomial(c: Rat, xe: i64, qe: &Rat) -> Self {
        let qs = QSeries::monomial(c, qe);
        let qdenom = qs.denom();
        let (qlo, qtrunc) = (qs.lo_units().min(0), EXACT);
        let mut terms = BTreeMap::new();
        terms.insert(xe, qs);
        XQSeries { qdenom, qlo, qtrunc, xlo: xe.min(0), xtrunc: EXACT, terms }.normalized()
    }

    /// Embed a pure q-series at `x^0`.
    pub fn from_q(qs: QSeries) -> Self {
        let qdenom = qs.denom();
        let qlo = qs.lo_units().min(0);
        let qtrunc = qs.trunc_units();
        let mut terms = BTreeMap::new();
        terms.insert(0, qs);
        XQSeries { qdenom, qlo, qtrunc, xlo: 0, xtrunc: EXACT, terms }.normalized()
    }

    /// Assemble from explicit windows and terms (builder use). The declared
    /// `xlo`/`qlo` must lower-bound the stored support.
    pub(crate) fn from_parts(
        qdenom: i64,
        qlo: i64,
        qtrunc: i64,
        xlo: i64,
        xtrunc: i64,
        terms: BTreeMap<i64, QSeries>,
    ) -> Self {
        debug_assert!(terms.keys().all(|&k| k >= xlo));
        debug_assert!(terms
            .values()
            .all(|s| s.nonzero_terms().next().map_or(true, |(u, _)| u >= qlo)));
        XQSeries { qdenom, qlo, qtrunc, xlo, xtrunc, terms }.normalized()
    }

    pub fn qdenom(&self) -> i64 {
        self.qdenom
    }

    pub fn q_trunc_exp(&self) -> Option<Rat> {
        (self.qtrunc != EXACT).then(|| Rat::from((self.qtrunc, self.qdenom)))
    }

    pub fn x_window(&self) -> (i64, Option<i64>) {
        (self.xlo, (self.xtrunc != EXACT).then_some(self.xtrunc))
    }

    /// Raw (qlo, qtrunc) in `1/qdenom` units; `qtrunc` may be the sentinel.
    pub(crate) fn q_window_units(&self) -> (i64, i64) {
        (self.qlo, self.qtrunc)
    }

    /// Largest x-exponent that is fully known (exclusive bound); for exact
    /// series this is one past the stored support.
    fn x_known_hi(&self) -> i64 {
        if self.xtrunc == EXACT {
            self.terms.keys().next_back().map_or(0, |k| k + 1)
        } else {
            self.xtrunc
        }
    }

    /// Coefficient q-series at `x^xe`: `None` when unknown.
    pub fn coeff_x(&self, xe: i64) -> Option<QSeries> {
        if xe >= self.xtrunc {
            return None;
        }
        Some(match self.terms.get(&xe) {
            Some(s) => s.clone(),
            None => QSeries::zero_to(self.qtrunc, self.qdenom),
        })
    }

    /// Coefficient at `x^xe q^qe`: `None` when unknown.
    pub fn coeff(&self, xe: i64, qe: &Rat) -> Option<Rat> {
        self.coeff_x(xe)?.coeff(qe)
    }

    /// Iterate stored (x-exponent, coefficient series) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &QSeries)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    fn normalized(mut self) -> Self {
        let qtrunc = self.qtrunc;
        let qdenom = self.qdenom;
        self.terms.retain(|_, s| s.nonzero_terms().next().is_some());
        let mut rebuilt = BTreeMap::new();
        for (k, s) in std::mem::take(&mut self.terms) {
            if k >= self.xtrunc {
                continue;
            }
            let mut s = s.with_denom(qdenom);
            if qtrunc < s.trunc_units() {
                s = s.truncate_to(&Rat::from((qtrunc, qdenom)));
            }
            if s.nonzero_terms().next().is_some() {
                rebuilt.insert(k, s);
            }
        }
        self.terms = rebuilt;
        // tighten declared floors to what is stored
        if let Some(min) = self.terms.keys().next() {
            self.xlo = self.xlo.max(*min).min(self.xtrunc);
        } else {
            self.xlo = self.xtrunc.min(0);
        }
        if let Some(v) = self.terms.values().filter_map(|s| {
            s.nonzero_terms().next().map(|(u, _)| u)
        }).min() {
            self.qlo = self.qlo.max(v).min(self.qtrunc);
        } else {
            self.qlo = self.qtrunc.min(0);
        }
        self
    }

    fn with_qdenom(&self, d: i64) -> Self {
        assert!(d % self.qdenom == 0);
        let f = d / self.qdenom;
        if f == 1 {
            return self.clone();
        }
        XQSeries {
            qdenom: d,
            qlo: self.qlo * f,
            qtrunc: if self.qtrunc == EXACT { EXACT } else { self.qtrunc * f },
            xlo: self.xlo,
            xtrunc: self.xtrunc,
            terms: self.terms.iter().map(|(k, s)| (*k, s.with_denom(d))).collect(),
        }
    }

    fn common(a: &XQSeries, b: &XQSeries) -> (XQSeries, XQSeries) {
        let d = lcm(a.qdenom, b.qdenom);
        (a.with_qdenom(d), b.with_qdenom(d))
    }

    pub fn add(&self, other: &XQSeries) -> XQSeries {
        let (a, b) = XQSeries::common(self, other);
        let mut terms = a.terms.clone();
        for (k, s) in &b.terms {
            terms
                .entry(*k)
                .and_modify(|t| *t = t.add(s))
                .or_insert_with(|| s.clone());
        }
        XQSeries {
            qdenom: a.qdenom,
            qlo: a.qlo.min(b.qlo),
            qtrunc: a.qtrunc.min(b.qtrunc),
            xlo: a.xlo.min(b.xlo),
            xtrunc: a.xtrunc.min(b.xtrunc),
            terms,
        }
        .normalized()
    }

    pub fn neg(&self) -> XQSeries {
        let mut out = self.clone();
        for s in out.terms.values_mut() {
            *s = s.neg();
        }
        out
    }

    pub fn sub(&self, other: &XQSeries) -> XQSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &XQSeries) -> XQSeries {
        let (a, b) = XQSeries::common(self, other);
        let qtrunc = wadd(a.qlo, b.qtrunc).min(wadd(b.qlo, a.qtrunc));
        let xtrunc = wadd(a.xlo, b.xtrunc).min(wadd(b.xlo, a.xtrunc));
        let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (i, si) in &a.terms {
            for (j, sj) in &b.terms {
                let k = i + j;
                if k >= xtrunc {
                    continue;
                }
                let p = si.mul(sj);
                terms
                    .entry(k)
                    .and_modify(|t| *t = t.add(&p))
                    .or_insert(p);
            }
        }
        XQSeries {
            qdenom: a.qdenom,
            qlo: a.qlo + b.qlo,
            qtrunc,
            xlo: a.xlo + b.xlo,
            xtrunc,
            terms,
        }
        .normalized()
    }

    /// Multiply by the exact monomial `c * x^xs * q^qs`.
    pub fn scale_mono(&self, c: &Rat, xs: i64, qs: &Rat) -> XQSeries {
        let d = lcm(self.qdenom, qs.denom().to_i64().expect("exponent overflow"));
        let a = self.with_qdenom(d);
        let shift = Rat::from(qs * &Rat::from(d)).numer().to_i64().expect("exponent overflow");
        XQSeries {
            qdenom: d,
            qlo: a.qlo + shift,
            qtrunc: wadd(a.qtrunc, shift),
            xlo: a.xlo + xs,
            xtrunc: wadd(a.xtrunc, xs),
            terms: a
                .terms
                .iter()
                .map(|(k, s)| (k + xs, s.scale_mono(c, qs)))
                .collect(),
        }
        .normalized()
    }

    /// Substitute `x -> q^m x`: the coefficient of `x^i` picks up `q^{m i}`.
    pub fn subst_x_to_qx(&self, m: &Rat) -> XQSeries {
        let d = lcm(self.qdenom, m.denom().to_i64().expect("exponent overflow"));
        let a = self.with_qdenom(d);
        let mu = Rat::from(m * &Rat::from(d)).numer().to_i64().expect("exponent overflow");
        // pessimistic global windows: the worst shift over the known x range
        let xe_min = if mu >= 0 { a.xlo } else { a.x_known_hi() - 1 };
        let shift_min = mu * xe_min;
        let terms: BTreeMap<i64, QSeries> = a
            .terms
            .iter()
            .map(|(k, s)| (*k, s.scale_mono(&Rat::from(1), &Rat::from((mu * k, d)))))
            .collect();
        XQSeries {
            qdenom: d,
            qlo: a.qlo + shift_min,
            qtrunc: wadd(a.qtrunc, shift_min),
            xlo: a.xlo,
            xtrunc: a.xtrunc,
            terms,
        }
        .normalized()
    }

    /// Substitute `x -> x^xpow`, `q -> q^qpow` (both positive).
    pub fn subst_powers(&self, xpow: i64, qpow: i64) -> XQSeries {
        assert!(xpow >= 1 && qpow >= 1);
        let scale_q = |u: i64| -> i64 {
            if u == EXACT {
                EXACT
            } else {
                u.saturating_mul(qpow).min(EXACT)
            }
        };
        let terms: BTreeMap<i64, QSeries> = self
            .terms
            .iter()
            .map(|(k, s)| {
                let mut coeffs = Vec::new();
                let mut lo = 0;
                let mut first = true;
                for (u, c) in s.nonzero_terms() {
                    if first {
                        lo = u * qpow;
                        first = false;
                    }
                    let idx = (u * qpow - lo) as usize;
                    if coeffs.len() <= idx {
                        coeffs.resize(idx + 1, Rat::new());
                    }
                    coeffs[idx] = c.clone();
                }
                let trunc = scale_q(s.trunc_units());
                (k * xpow, QSeries::from_window(self.qdenom, lo, coeffs, trunc))
            })
            .collect();
        let xtrunc = if self.xtrunc == EXACT {
            EXACT
        } else {
            (self.xtrunc - 1).saturating_mul(xpow) + 1
        };
        XQSeries {
            qdenom: self.qdenom,
            qlo: self.qlo.saturating_mul(qpow),
            qtrunc: scale_q(self.qtrunc),
            xlo: self.xlo.saturating_mul(xpow),
            xtrunc,
            terms,
        }
        .normalized()
    }

    /// Substitute `q -> q^(1/k)`: exponent values divide by `k`.
    pub fn subst_q_root(&self, k: i64) -> XQSeries {
        assert!(k >= 1);
        XQSeries {
            qdenom: self.qdenom * k,
            qlo: self.qlo,
            qtrunc: self.qtrunc,
            xlo: self.xlo,
            xtrunc: self.xtrunc,
            terms: self.terms.clone(),
        }
        // terms keep their (denom-relative) units but the denом changed;
        // rebuild each coefficient under the new denominator
        .rebuild_denom()
    }

    fn rebuild_denom(mut self) -> Self {
        let d = self.qdenom;
        let terms = std::mem::take(&mut self.terms);
        self.terms = terms
            .into_iter()
            .map(|(k, s)| {
                // keep unit numerators, reinterpret them under the new denominator
                let mut dense = Vec::new();
                let mut lo = 0i64;
                let mut first = true;
                for (u, c) in s.nonzero_terms() {
                    if first {
                        lo = u;
                        first = false;
                    }
                    let idx = (u - lo) as usize;
                    if dense.len() <= idx {
                        dense.resize(idx + 1, Rat::new());
                    }
                    dense[idx] = c.clone();
                }
                (k, QSeries::from_window(d, lo, dense, s.trunc_units()))
            })
            .collect();
        self.normalized()
    }

    /// Reduce the q denominator where possible.
    pub fn normalize_qdenom(&self) -> XQSeries {
        let mut g = self.qdenom;
        for s in self.terms.values() {
            for (u, _) in s.nonzero_terms() {
                g = super::gcd(g, u.abs());
                if g == 1 {
                    return self.clone();
                }
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let d = self.qdenom / g;
        let terms: BTreeMap<i64, QSeries> = self
            .terms
            .iter()
            .map(|(k, s)| (*k, {
                let mut dense = Vec::new();
                let mut lo = 0i64;
                let mut first = true;
                for (u, c) in s.nonzero_terms() {
                    debug_assert!(u % g == 0);
                    if first {
                        lo = u / g;
                        first = false;
                    }
                    let idx = (u / g - lo) as usize;
                    if dense.len() <= idx {
                        dense.resize(idx + 1, Rat::new());
                    }
                    dense[idx] = c.clone();
                }
                let trunc = if s.trunc_units() == EXACT { EXACT } else { s.trunc_units().div_euclid(g) };
                QSeries::from_window(d, lo, dense, trunc)
            }))
            .collect();
        XQSeries {
            qdenom: d,
            qlo: self.qlo.div_euclid(g),
            qtrunc: if self.qtrunc == EXACT { EXACT } else { self.qtrunc.div_euclid(g) },
            xlo: self.xlo,
            xtrunc: self.xtrunc,
            terms,
        }
        .normalized()
    }

    /// Forget q-knowledge beyond `order`, leaving the x-window alone.
    pub fn clamp_q(&self, order: &Rat) -> XQSeries {
        let d = lcm(self.qdenom, order.denom().to_i64().expect("order overflow"));
        let a = self.with_qdenom(d);
        let t = Rat::from(order * &Rat::from(d)).numer().to_i64().expect("order overflow");
        XQSeries {
            qdenom: d,
            qlo: a.qlo.min(t),
            qtrunc: a.qtrunc.min(t),
            xlo: a.xlo,
            xtrunc: a.xtrunc,
            terms: a.terms,
        }
        .normalized()
    }

    /// Forget q-knowledge beyond `order` and x-knowledge beyond `x_hi`.
    pub fn clamp(&self, order: &Rat, x_hi: i64) -> XQSeries {
        let d = lcm(self.qdenom, order.denom().to_i64().expect("order overflow"));
        let a = self.with_qdenom(d);
        let t = Rat::from(order * &Rat::from(d)).numer().to_i64().expect("order overflow");
        XQSeries {
            qdenom: d,
            qlo: a.qlo.min(t),
            qtrunc: a.qtrunc.min(t),
            xlo: a.xlo.min(x_hi),
            xtrunc: a.xtrunc.min(x_hi),
            terms: a.terms,
        }
        .normalized()
    }

    /// First discrepancy on the declared window (q-exponents `< order`,
    /// x-exponents in `[x_lo, x_hi)`). Errors when either operand cannot
    /// certify the window.
    pub fn first_discrepancy_on_window(
        &self,
        other: &XQSeries,
        order: &Rat,
        x_lo: i64,
        x_hi: i64,
    ) -> Result<Option<Discrepancy>> {
        for s in [self, other] {
            if let Some(t) = s.q_trunc_exp() {
                if &t < order {
                    return Err(Error::InsufficientOrder { requested: order.clone(), provable: t });
                }
            }
            if s.xtrunc != EXACT && s.xtrunc < x_hi {
                return Err(Error::InsufficientOrder {
                    requested: Rat::from(x_hi),
                    provable: Rat::from(s.xtrunc),
                });
            }
        }
        let (a, b) = XQSeries::common(self, other);
        let mut keys: Vec<i64> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            if k < x_lo || k >= x_hi {
                continue;
            }
            let sa = a.coeff_x(k).expect("window certified");
            let sb = b.coeff_x(k).expect("window certified");
            if let Some((e, ca, cb)) = sa.first_discrepancy(&sb, order)? {
                return Ok(Some(Discrepancy { x_exp: k, q_exp: e, lhs: ca, rhs: cb }));
            }
        }
        Ok(None)
    }

    pub fn eq_on_window(&self, other: &XQSeries, order: &Rat, x_lo: i64, x_hi: i64) -> Result<bool> {
        Ok(self.first_discrepancy_on_window(other, order, x_lo, x_hi)?.is_none())
    }
}

/// A single coefficient mismatch between two series sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub x_exp: i64,
    pub q_exp: Rat,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, ratio};

    #[test]
    fn monomial_product() {
        let a = XQSeries::monomial(rat(2), 3, &ratio(1, 2));
        let b = XQSeries::monomial(rat(3), -1, &ratio(1, 2));
        let p = a.mul(&b);
        assert_eq!(p.coeff(2, &rat(1)), Some(rat(6)));
        assert_eq!(p.coeff(0, &rat(0)), Some(rat(0)));
    }

    #[test]
    fn x_window_propagates_through_mul() {
        let mut terms = BTreeMap::new();
        terms.insert(0, QSeries::one());
        let a = XQSeries::from_parts(1, 0, 10, 0, 4, terms); // known x < 4
        let b = XQSeries::monomial(rat(1), 2, &rat(0));
        let p = a.mul(&b);
        assert_eq!(p.x_window().1, Some(6));
        assert!(p.coeff_x(6).is_none());
        assert!(p.coeff_x(5).is_some());
    }

    #[test]
    fn subst_x_to_qx_shifts_coefficients() {
        // x + x^2  ->  qx + q^2 x^2
        let s = XQSeries::monomial(rat(1), 1, &rat(0)).add(&XQSeries::monomial(rat(1), 2, &rat(0)));
        let t = s.subst_x_to_qx(&rat(1));
        assert_eq!(t.coeff(1, &rat(1)), Some(rat(1)));
        assert_eq!(t.coeff(2, &rat(2)), Some(rat(1)));
        assert_eq!(t.coeff(1, &rat(0)), Some(rat(0)));
    }

    #[test]
    fn subst_powers_doubles() {
        let s = XQSeries::monomial(rat(5), 2, &rat(3));
        let t = s.subst_powers(2, 2);
        assert_eq!(t.coeff(4, &rat(6)), Some(rat(5)));
    }

    #[test]
    fn subst_q_root_divides_exponents() {
        let s = XQSeries::monomial(rat(1), 0, &rat(3));
        let t = s.subst_q_root(4);
        assert_eq!(t.coeff(0, &ratio(3, 4)), Some(rat(1)));
    }

    #[test]
    fn window_equality_errors_when_uncertifiable() {
        let a = XQSeries::zero_to(1, 5, 10);
        let b = XQSeries::zero_to(1, 5, 10);
        assert!(a.eq_on_window(&b, &rat(5), 0, 10).unwrap());
        assert!(a.eq_on_window(&b, &rat(6), 0, 10).is_err());
        assert!(a.eq_on_window(&b, &rat(5), 0, 11).is_err());
    }
}
