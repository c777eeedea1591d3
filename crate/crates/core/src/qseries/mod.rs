//! Exact truncated Laurent series in `q^(1/D)` and in `(x, q)`.
//!
//! [`QSeries`] stores coefficients for exponents `lo/D .. trunc/D`; everything
//! below `lo/D` is known zero, everything at or above `trunc/D` is unknown.
//! Exact polynomials (Gaussian binomials, Santos polynomials, monomials) use
//! the [`EXACT`] truncation sentinel: beyond the stored support everything is
//! known zero, so products of exact series stay exact.
//!
//! Binary operations rescale both operands to the lcm denominator and
//! propagate the tightest provable truncation window. Equality always takes
//! an explicit comparison order; comparing beyond a provable window is an
//! `Err`, never a silent pass.

mod classic;
mod products;
mod text;
mod theta;
mod xseries;

pub use classic::{euler_qbinomial_checks, jacobi_triple_sides, quintuple_sides, EulerReport};
pub use products::{
    gauss_binom, geometric_inverse, lambert_partial, lambert_sum, poch_q, poch_q_exact,
    pochhammer, GaussRows,
};
pub use theta::{theta_q, theta_x};
pub use xseries::{Discrepancy, XQSeries};

use crate::number::{Int, Rat};
use crate::{Error, Result};

/// Truncation sentinel: every exponent beyond the stored support is known
/// zero (the series is exact, e.g. a polynomial).
pub const EXACT: i64 = i64::MAX / 4;

/// Saturating window addition: anything beyond `EXACT` stays `EXACT`.
pub(crate) fn wadd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

/// Exact truncated Laurent series in `q^(1/denom)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    /// All exponents are integer multiples of `1/denom`.
    denom: i64,
    /// Lowest possibly-nonzero exponent, in units of `1/denom`.
    lo: i64,
    /// Coefficients for exponents `lo, lo+1, ..`, in units of `1/denom`.
    coeffs: Vec<Rat>,
    /// Exponents `>= trunc/denom` are unknown; [`EXACT`] if none are.
    trunc: i64,
}

impl QSeries {
    /// Series with no known-nonzero coefficient below `trunc` (units of `1/denom`).
    pub fn zero_to(trunc: i64, denom: i64) -> Self {
        assert!(denom >= 1);
        QSeries { denom, lo: trunc.min(0), coeffs: vec![], trunc }.normalized()
    }

    /// The exact zero series.
    pub fn zero() -> Self {
        QSeries { denom: 1, lo: 0, coeffs: vec![], trunc: EXACT }
    }

    /// The exact constant `1`.
    pub fn one() -> Self {
        Self::monomial(Rat::from(1), &Rat::new())
    }

    /// Exact monomial `c * q^e`.
    pub fn monomial(c: Rat, e: &Rat) -> Self {
        let denom = e.denom().to_i64().expect("exponent denominator overflow");
        let lo = e.numer().to_i64().expect("exponent numerator overflow");
        QSeries { denom, lo, coeffs: vec![c], trunc: EXACT }.normalized()
    }

    /// Exact polynomial in `q^(1/denom)` from ascending coefficients starting
    /// at exponent `lo/denom`.
    pub fn from_coeffs(denom: i64, lo: i64, coeffs: Vec<Rat>) -> Self {
        assert!(denom >= 1);
        QSeries { denom, lo, coeffs, trunc: EXACT }.normalized()
    }

    /// Truncated series from ascending coefficients on `[lo, trunc)`.
    pub fn from_window(denom: i64, lo: i64, coeffs: Vec<Rat>, trunc: i64) -> Self {
        assert!(denom >= 1);
        assert!(trunc == EXACT || trunc - lo >= coeffs.len() as i64);
        QSeries { denom, lo, coeffs, trunc }.normalized()
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Lowest possibly-nonzero exponent.
    pub fn lo_exp(&self) -> Rat {
        Rat::from((self.lo, self.denom))
    }

    /// Truncation order; `None` when the series is exact.
    pub fn trunc_exp(&self) -> Option<Rat> {
        (self.trunc != EXACT).then(|| Rat::from((self.trunc, self.denom)))
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub(crate) fn trunc_units(&self) -> i64 {
        self.trunc
    }

    pub(crate) fn lo_units(&self) -> i64 {
        self.lo
    }

    /// Coefficient at exponent `e`: `None` if unknown (at or above the
    /// truncation), `Some(0)` for known zeros (including exponents not
    /// representable in `1/denom` units).
    pub fn coeff(&self, e: &Rat) -> Option<Rat> {
        let scaled = Rat::from(e * &Rat::from(self.denom));
        if scaled.denom() != &Int::from(1) {
            // not a multiple of 1/denom: known zero below the truncation
            if self.trunc == EXACT {
                return Some(Rat::new());
            }
            return (scaled < Rat::from(self.trunc)).then(Rat::new);
        }
        let u = scaled.numer().to_i64().expect("exponent overflow");
        self.coeff_units(u)
    }

    /// Coefficient at exponent `u/denom`.
    pub(crate) fn coeff_units(&self, u: i64) -> Option<Rat> {
        if u >= self.trunc {
            None
        } else if u < self.lo || u >= self.lo + self.coeffs.len() as i64 {
            Some(Rat::new())
        } else {
            Some(self.coeffs[(u - self.lo) as usize].clone())
        }
    }

    /// Iterate stored nonzero terms as (units, coefficient).
    pub(crate) fn nonzero_terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cmp0() != std::cmp::Ordering::Equal)
            .map(|(i, c)| (self.lo + i as i64, c))
    }

    /// Valuation (lowest exponent with nonzero known coefficient), in units.
    fn valuation_units(&self) -> Option<i64> {
        self.nonzero_terms().next().map(|(u, _)| u)
    }

    /// Lowest exponent with a nonzero known coefficient, if any.
    pub fn valuation(&self) -> Option<Rat> {
        self.valuation_units().map(|u| Rat::from((u, self.denom)))
    }

    /// Iterate known nonzero terms as (exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Rat, Rat)> + '_ {
        self.nonzero_terms().map(|(u, c)| (Rat::from((u, self.denom)), c.clone()))
    }

    fn normalized(mut self) -> Self {
        // trim leading zeros, raising lo
        let lead = self
            .coeffs
            .iter()
            .take_while(|c| c.cmp0() == std::cmp::Ordering::Equal)
            .count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.trunc == EXACT {
            while self.coeffs.last().map(|c| c.cmp0() == std::cmp::Ordering::Equal) == Some(true) {
                self.coeffs.pop();
            }
            if self.coeffs.is_empty() {
                self.lo = 0;
            }
        } else {
            // dense window invariant: len == trunc - lo
            let want = (self.trunc - self.lo).max(0) as usize;
            if self.coeffs.len() < want {
                self.coeffs.resize(want, Rat::new());
            } else if self.coeffs.len() > want {
                self.coeffs.truncate(want);
            }
            if self.coeffs.is_empty() {
                self.lo = self.trunc;
            }
        }
        self
    }

    /// Rescale so all exponents are expressed in units of `1/new_denom`
    /// (`denom` must divide `new_denom`).
    pub fn with_denom(&self, new_denom: i64) -> Self {
        assert!(new_denom >= 1 && new_denom % self.denom == 0);
        let f = new_denom / self.denom;
        if f == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rat::new(); self.coeffs.len().saturating_mul(f as usize)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * f as usize] = c.clone();
        }
        QSeries {
            denom: new_denom,
            lo: self.lo * f,
            coeffs,
            trunc: if self.trunc == EXACT { EXACT } else { self.trunc * f },
        }
        .normalized()
    }

    /// Reduce the denominator by the gcd of all nonzero exponent numerators.
    pub fn normalize_denom(&self) -> Self {
        let mut g = self.denom;
        for (u, _) in self.nonzero_terms() {
            g = gcd(g, u.abs());
            if g == 1 {
                return self.clone();
            }
        }
        if g <= 1 {
            return self.clone();
        }
        let coeffs: Vec<Rat> = self
            .coeffs
            .iter()
            .step_by(g as usize)
            .cloned()
            .collect();
        QSeries {
            denom: self.denom / g,
            lo: self.lo.div_euclid(g) + i64::from(self.lo.rem_euclid(g) != 0),
            coeffs,
            trunc: if self.trunc == EXACT { EXACT } else { self.trunc.div_euclid(g) },
        }
        .normalized()
    }

    fn common(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let d = lcm(a.denom, b.denom);
        (a.with_denom(d), b.with_denom(d))
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let (a, b) = QSeries::common(self, other);
        let trunc = a.trunc.min(b.trunc);
        let lo = a.lo.min(b.lo).min(trunc);
        let hi = if trunc == EXACT {
            (a.lo + a.coeffs.len() as i64).max(b.lo + b.coeffs.len() as i64)
        } else {
            trunc
        };
        let mut coeffs = vec![Rat::new(); (hi - lo).max(0) as usize];
        for (u, c) in a.nonzero_terms().chain(b.nonzero_terms()) {
            if u < hi {
                coeffs[(u - lo) as usize] += c;
            }
        }
        QSeries { denom: a.denom, lo, coeffs, trunc }.normalized()
    }

    pub fn neg(&self) -> QSeries {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = Rat::from(-&*c);
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        if c.cmp0() == std::cmp::Ordering::Equal {
            let mut out = QSeries::zero();
            out.trunc = self.trunc;
            out.denom = self.denom;
            return out.normalized();
        }
        let mut out = self.clone();
        for q in &mut out.coeffs {
            *q *= c;
        }
        out
    }

    /// Multiply by the exact monomial `c * q^e`.
    pub fn scale_mono(&self, c: &Rat, e: &Rat) -> QSeries {
        let ed = e.denom().to_i64().expect("exponent overflow");
        let d = lcm(self.denom, ed);
        let s = self.with_denom(d);
        let shift = (Rat::from(e * &Rat::from(d)))
            .numer()
            .to_i64()
            .expect("exponent overflow");
        QSeries {
            denom: d,
            lo: s.lo + shift,
            coeffs: s.coeffs,
            trunc: wadd(s.trunc, shift),
        }
        .normalized()
        .scale(c)
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let (a, b) = QSeries::common(self, other);
        let trunc = wadd(a.lo, b.trunc).min(wadd(b.lo, a.trunc));
        let lo = a.lo + b.lo;
        let hi = if trunc == EXACT {
            lo + (a.coeffs.len() + b.coeffs.len()).saturating_sub(1) as i64
        } else {
            trunc
        };
        let mut coeffs = vec![Rat::new(); (hi - lo).max(0) as usize];
        // iterate the sparser operand outside
        let (outer, inner) = if a.coeffs.len() <= b.coeffs.len() { (&a, &b) } else { (&b, &a) };
        for (ua, ca) in outer.nonzero_terms() {
            for (ub, cb) in inner.nonzero_terms() {
                let u = ua + ub;
                if u < hi {
                    coeffs[(u - lo) as usize] += Rat::from(ca * cb);
                }
            }
        }
        QSeries { denom: a.denom, lo, coeffs, trunc }.normalized()
    }

    /// Forget knowledge beyond `order` (in q units), clamping the window.
    pub fn truncate_to(&self, order: &Rat) -> QSeries {
        let d = lcm(self.denom, order.denom().to_i64().expect("order overflow"));
        let s = self.with_denom(d);
        let t = (Rat::from(order * &Rat::from(d)))
            .numer()
            .to_i64()
            .expect("order overflow");
        if t >= s.trunc {
            return s;
        }
        QSeries {
            denom: s.denom,
            lo: s.lo.min(t),
            coeffs: s.coeffs,
            trunc: t,
        }
        .normalized()
    }

    /// Multiplicative inverse, provable up to exponent `order`.
    ///
    /// Errors with [`Error::NonInvertible`] when no nonzero coefficient is
    /// known, and with [`Error::InsufficientOrder`] when the requested order
    /// exceeds what the operand's truncation can certify.
    pub fn inverse(&self, order: &Rat) -> Result<QSeries> {
        let v = self.valuation_units().ok_or(Error::NonInvertible)?;
        if v != self.lo {
            // leading (lowest-window) coefficient is zero
            return Err(Error::NonInvertible);
        }
        let d = lcm(self.denom, order.denom().to_i64().expect("order overflow"));
        let s = self.with_denom(d);
        let v = v * d / self.denom;
        let t_req = (Rat::from(order * &Rat::from(d)))
            .numer()
            .to_i64()
            .expect("order overflow");
        // result window [-v, t_req); relative length needed:
        let len = (t_req + v).max(0) as usize;
        if s.trunc != EXACT {
            let provable = s.trunc - 2 * v; // trunc of the inverse
            if t_req > provable {
                return Err(Error::InsufficientOrder {
                    requested: order.clone(),
                    provable: Rat::from((provable, d)),
                });
            }
        }
        let c0 = s.coeffs[0].clone();
        let mut inv = vec![Rat::new(); len];
        if len > 0 {
            inv[0] = Rat::from(1) / c0.clone();
            for n in 1..len {
                let mut acc = Rat::new();
                for k in 1..=n.min(s.coeffs.len() - 1) {
                    if s.coeffs[k].cmp0() != std::cmp::Ordering::Equal {
                        acc += Rat::from(&s.coeffs[k] * &inv[n - k]);
                    }
                }
                inv[n] = -acc / c0.clone();
            }
        }
        Ok(QSeries { denom: d, lo: -v, coeffs: inv, trunc: t_req }.normalized())
    }

    /// Compare all coefficients with exponent `< order`.
    ///
    /// Errors when either operand's truncation cannot certify the window.
    pub fn eq_to_order(&self, other: &QSeries, order: &Rat) -> Result<bool> {
        Ok(self.first_discrepancy(other, order)?.is_none())
    }

    /// First differing exponent below `order`, with both coefficients.
    pub fn first_discrepancy(
        &self,
        other: &QSeries,
        order: &Rat,
    ) -> Result<Option<(Rat, Rat, Rat)>> {
        for s in [self, other] {
            if let Some(t) = s.trunc_exp() {
                if &t < order {
                    return Err(Error::InsufficientOrder {
                        requested: order.clone(),
                        provable: t,
                    });
                }
            }
        }
        let (a, b) = QSeries::common(self, other);
        let t = (Rat::from(order * &Rat::from(a.denom)))
            .numer()
            .to_i64()
            .expect("order overflow");
        let lo = a.lo.min(b.lo);
        let hi = t.min(
            (a.lo + a.coeffs.len() as i64).max(b.lo + b.coeffs.len() as i64),
        );
        for u in lo..hi {
            let ca = a.coeff_units(u).unwrap_or_default();
            let cb = b.coeff_units(u).unwrap_or_default();
            if ca != cb {
                return Ok(Some((Rat::from((u, a.denom)), ca, cb)));
            }
        }
        Ok(None)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, ratio};

    fn poly(coeffs: &[i64]) -> QSeries {
        QSeries::from_coeffs(1, 0, coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn mul_polys() {
        // (1 + q)(1 - q) = 1 - q^2, exact
        let p = poly(&[1, 1]).mul(&poly(&[1, -1]));
        assert_eq!(p, poly(&[1, 0, -1]));
        assert!(p.is_exact());
    }

    #[test]
    fn fractional_exponent_lcm() {
        // q^{1/2} * q^{1/3} = q^{5/6} with denominator 6
        let a = QSeries::monomial(rat(1), &ratio(1, 2));
        let b = QSeries::monomial(rat(1), &ratio(1, 3));
        let p = a.mul(&b);
        assert_eq!(p.denom(), 6);
        assert_eq!(p.coeff(&ratio(5, 6)), Some(rat(1)));
    }

    #[test]
    fn add_cancels() {
        // (1 - q) + q = 1
        let s = poly(&[1, -1]).add(&QSeries::monomial(rat(1), &rat(1)));
        assert_eq!(s, poly(&[1]));
    }

    #[test]
    fn truncation_window_of_product() {
        // a known to order 5, b exact: product trunc = lo_b + trunc_a
        let a = QSeries::from_window(1, 0, vec![rat(1); 5], 5);
        let b = QSeries::monomial(rat(1), &rat(2));
        let p = a.mul(&b);
        assert_eq!(p.trunc_exp(), Some(rat(7)));
        assert_eq!(p.lo_exp(), rat(2));
    }

    #[test]
    fn inverse_geometric() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let inv = poly(&[1, -1]).inverse(&rat(6)).unwrap();
        for k in 0..6 {
            assert_eq!(inv.coeff(&rat(k)), Some(rat(1)));
        }
        assert_eq!(inv.coeff(&rat(6)), None);
    }

    #[test]
    fn inverse_of_constant() {
        let inv = poly(&[2]).inverse(&rat(3)).unwrap();
        assert_eq!(inv.coeff(&rat(0)), Some(ratio(1, 2)));
        assert_eq!(inv.coeff(&rat(1)), Some(rat(0)));
    }

    #[test]
    fn inverse_pochhammer2_example() {
        // 1/((1-q)(1-q^2)) = 1 + q + 2q^2 + 2q^3 + 3q^4 + ...
        let p2 = poly(&[1, -1]).mul(&poly(&[1, 0, -1]));
        let inv = p2.inverse(&rat(5)).unwrap();
        let expected = [1, 1, 2, 2, 3];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(inv.coeff(&rat(k as i64)), Some(rat(*e)), "at q^{k}");
        }
    }

    #[test]
    fn inverse_rejects_zero_leading() {
        assert!(matches!(QSeries::zero().inverse(&rat(3)), Err(Error::NonInvertible)));
        let z = QSeries::zero_to(4, 1);
        assert!(matches!(z.inverse(&rat(3)), Err(Error::NonInvertible)));
    }

    #[test]
    fn inverse_insufficient_order() {
        let a = QSeries::from_window(1, 0, vec![rat(1), rat(-1), rat(0)], 3);
        assert!(a.inverse(&rat(3)).is_ok());
        assert!(matches!(
            a.inverse(&rat(4)),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn eq_requires_certifiable_window() {
        let a = QSeries::from_window(1, 0, vec![rat(1); 5], 5);
        let b = poly(&[1, 1, 1, 1, 1]);
        assert!(a.eq_to_order(&b, &rat(5)).unwrap());
        assert!(matches!(
            a.eq_to_order(&b, &rat(6)),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn discrepancy_reported() {
        let a = poly(&[1, 2, 3]);
        let b = poly(&[1, 2, 4]);
        let d = a.first_discrepancy(&b, &rat(10)).unwrap();
        assert_eq!(d, Some((rat(2), rat(3), rat(4))));
    }

    #[test]
    fn normalize_denom_reduces() {
        let s = QSeries::monomial(rat(5), &ratio(2, 4));
        assert_eq!(s.denom(), 2); // 2/4 reduced to 1/2 at construction
        let t = QSeries::monomial(rat(1), &ratio(1, 2)).mul(&QSeries::monomial(rat(1), &ratio(1, 2)));
        assert_eq!(t.normalize_denom().denom(), 1);
    }

    #[test]
    fn laurent_negative_exponents() {
        let s = QSeries::monomial(rat(3), &rat(-2)).add(&poly(&[1]));
        assert_eq!(s.coeff(&rat(-2)), Some(rat(3)));
        assert_eq!(s.coeff(&rat(-1)), Some(rat(0)));
        assert_eq!(s.coeff(&rat(0)), Some(rat(1)));
    }
}
