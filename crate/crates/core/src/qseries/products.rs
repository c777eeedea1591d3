//! q-Pochhammer products, Gaussian binomials, and Lambert sums.

use super::{QSeries, XQSeries, EXACT};
use crate::number::{Int, Rat};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Finite q-Pochhammer `(coef * q^q0 ; q^base)_n` as an exact polynomial.
pub fn poch_q_exact(coef: &Rat, q0: &Rat, base: &Rat, n: u64) -> QSeries {
    let mut acc = QSeries::one();
    for k in 0..n {
        let e = Rat::from(q0 + &Rat::from(base * &Rat::from(k)));
        let factor = QSeries::one().sub(&QSeries::monomial(coef.clone(), &e));
        acc = acc.mul(&factor);
    }
    acc
}

/// q-Pochhammer `(coef * q^q0 ; q^base)_n` truncated at `order`; `n = None`
/// is the infinite product.
///
/// The infinite product requires `base > 0` so factors eventually fall below
/// the truncation and the product stabilizes; everything reported is exact.
pub fn poch_q(coef: &Rat, q0: &Rat, base: &Rat, n: Option<u64>, order: &Rat) -> Result<QSeries> {
    if n.is_none() && base.cmp0() != std::cmp::Ordering::Greater {
        return Err(Error::NonStabilizing(base.clone()));
    }
    let mut acc = QSeries::one().truncate_to(order);
    let mut k = 0u64;
    loop {
        if let Some(n) = n {
            if k >= n {
                break;
            }
        }
        let e = Rat::from(q0 + &Rat::from(base * &Rat::from(k)));
        if n.is_none() && &e >= order {
            break;
        }
        let factor = QSeries::one().sub(&QSeries::monomial(coef.clone(), &e));
        acc = acc.mul(&factor).truncate_to(order);
        k += 1;
    }
    Ok(acc)
}

/// Two-variable q-Pochhammer
/// `prod_{k=1}^{n} (1 - coef * x^{x_exp} * q^{q_exp + (k-1) base})`.
///
/// Finite products are returned fully exact (`q_order`/`x_order` are
/// ignored): clamping a factor mid-product would cascade unknown windows
/// across Laurent operands. The infinite product requires a positive `base`
/// so it stabilizes below `q_order`; its x-support is bounded through the
/// q-truncation and the result is clamped to the requested windows.
pub fn pochhammer(
    coef: &Rat,
    x_exp: i64,
    q_exp: &Rat,
    base: &Rat,
    n: Option<u64>,
    q_order: &Rat,
    x_order: i64,
) -> Result<XQSeries> {
    let mut acc = XQSeries::one();
    match n {
        Some(n) => {
            for k in 0..n {
                let e = Rat::from(q_exp + &Rat::from(base * &Rat::from(k)));
                let factor = XQSeries::one().sub(&XQSeries::monomial(coef.clone(), x_exp, &e));
                acc = acc.mul(&factor);
            }
            Ok(acc)
        }
        None => {
            if base.cmp0() != std::cmp::Ordering::Greater {
                return Err(Error::NonStabilizing(base.clone()));
            }
            acc = acc.clamp_q(q_order);
            let mut k = 0u64;
            loop {
                let e = Rat::from(q_exp + &Rat::from(base * &Rat::from(k)));
                if &e >= q_order {
                    break;
                }
                let factor = XQSeries::one().sub(&XQSeries::monomial(coef.clone(), x_exp, &e));
                acc = acc.mul(&factor).clamp_q(q_order);
                k += 1;
            }
            Ok(acc.clamp(q_order, x_order))
        }
    }
}

/// Gaussian binomial `[n over k]` in the variable `q^base_exp`: an exact
/// polynomial, `0` outside `n >= k >= 0`.
pub fn gauss_binom(n: i64, k: i64, base_exp: i64) -> QSeries {
    if k < 0 || k > n || n < 0 {
        return QSeries::zero();
    }
    GaussRows::new(base_exp).row(n as usize)[k as usize].clone()
}

/// Rolling Pascal-triangle rows of Gaussian binomials in `q^base`.
///
/// `[n;k] = [n-1;k] + q^{base (n-k)} [n-1;k-1]`; rows are built on demand so
/// iterating `n = 0..N` costs one polynomial addition per entry.
pub struct GaussRows {
    base: i64,
    n: usize,
    row: Vec<QSeries>,
}

impl GaussRows {
    pub fn new(base: i64) -> Self {
        assert!(base >= 1);
        GaussRows { base, n: 0, row: vec![QSeries::one()] }
    }

    /// Advance to and return row `n` (panics if asked to go backwards).
    pub fn row(&mut self, n: usize) -> &[QSeries] {
        assert!(n >= self.n, "rows advance forward only");
        while self.n < n {
            let m = self.n + 1;
            let mut next = Vec::with_capacity(m + 1);
            next.push(QSeries::one());
            for k in 1..m {
                let shifted = self.row[k - 1]
                    .scale_mono(&Rat::from(1), &Rat::from(self.base * (m as i64 - k as i64)));
                next.push(self.row[k].add(&shifted));
            }
            next.push(QSeries::one());
            self.row = next;
            self.n = m;
        }
        &self.row
    }

    pub fn entry(&mut self, n: usize, k: i64) -> QSeries {
        if k < 0 || k as usize > n {
            return QSeries::zero();
        }
        self.row(n)[k as usize].clone()
    }
}

/// `sum_{k >= 1+shift} q^k / (1 - q^k)` truncated at `order`: the coefficient
/// of `q^m` counts divisors of `m` that exceed `shift`.
pub fn lambert_sum(shift: u64, order: &Rat) -> QSeries {
    let t = order_units(order);
    let mut coeffs = vec![Rat::new(); t.max(0) as usize];
    for k in (1 + shift as i64)..t {
        let mut m = k;
        while m < t {
            coeffs[m as usize] += 1;
            m += k;
        }
    }
    QSeries::from_window(1, 0, coeffs, t.max(0))
}

/// Partial Lambert sum `sum_{k=1}^{m} q^k / (1 - q^k)` truncated at `order`.
pub fn lambert_partial(m: u64, order: &Rat) -> QSeries {
    let t = order_units(order);
    let mut coeffs = vec![Rat::new(); t.max(0) as usize];
    for k in 1..=(m as i64).min(t) {
        let mut j = k;
        while j < t {
            coeffs[j as usize] += 1;
            j += k;
        }
    }
    QSeries::from_window(1, 0, coeffs, t.max(0))
}

fn order_units(order: &Rat) -> i64 {
    assert_eq!(order.denom(), &Int::from(1), "integral order expected");
    order.numer().to_i64().expect("order overflow")
}

/// `1/(1 - c x^{xe} q^{qe})` as a truncated geometric series
/// (requires `qe > 0`, or `qe == 0` with `xe > 0`).
pub fn geometric_inverse(c: &Rat, xe: i64, qe: &Rat, q_order: &Rat, x_order: i64) -> XQSeries {
    assert!(
        qe.cmp0() == std::cmp::Ordering::Greater
            || (qe.cmp0() == std::cmp::Ordering::Equal && xe > 0),
        "geometric series needs a positive valuation direction"
    );
    let qden = qe.denom().to_i64().unwrap().max(q_order.denom().to_i64().unwrap());
    let qden = super::lcm(
        qe.denom().to_i64().unwrap(),
        super::lcm(q_order.denom().to_i64().unwrap(), qden),
    );
    let t_units = Rat::from(q_order * &Rat::from(qden)).numer().to_i64().unwrap();
    let step_units = Rat::from(qe * &Rat::from(qden)).numer().to_i64().unwrap();
    let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
    let mut i = 0i64;
    let mut cp = Rat::from(1);
    let mut x_min = 0i64;
    loop {
        let qpos = i * step_units;
        let xpos = i * xe;
        if qpos >= t_units || (xe > 0 && xpos >= x_order) {
            break;
        }
        x_min = x_min.min(xpos);
        let mono = QSeries::from_window(
            qden,
            qpos,
            vec![cp.clone()],
            if step_units > 0 { t_units } else { EXACT },
        );
        terms
            .entry(xpos)
            .and_modify(|s| *s = s.add(&mono))
            .or_insert(mono);
        cp *= c;
        i += 1;
        if i > 1_000_000 {
            panic!("geometric series failed to terminate");
        }
    }
    XQSeries::from_parts(qden, 0, t_units, x_min, if xe > 0 { x_order } else { EXACT }, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, ratio};

    #[test]
    fn poch3_expansion() {
        // (q;q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
        let p = poch_q_exact(&rat(1), &rat(1), &rat(1), 3);
        let expected: [(i64, i64); 6] = [(0, 1), (1, -1), (2, -1), (4, 1), (5, 1), (6, -1)];
        for (e, c) in expected {
            assert_eq!(p.coeff(&rat(e)), Some(rat(c)), "at q^{e}");
        }
        assert_eq!(p.coeff(&rat(3)), Some(rat(0)));
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(poch_q_exact(&rat(1), &rat(1), &rat(1), 0), QSeries::one());
    }

    #[test]
    fn euler_pentagonal_oracle() {
        // (q;q)_inf = sum_k (-1)^k q^{k(3k-1)/2}, brute force to order 60
        let order = rat(60);
        let p = poch_q(&rat(1), &rat(1), &rat(1), None, &order).unwrap();
        let mut expected = QSeries::zero_to(60, 1);
        for k in -10i64..=10 {
            let e = k * (3 * k - 1) / 2;
            if e < 60 {
                let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                expected = expected.add(&QSeries::monomial(rat(sign), &rat(e)));
            }
        }
        assert!(p.eq_to_order(&expected, &order).unwrap());
    }

    #[test]
    fn infinite_product_requires_positive_base() {
        assert!(matches!(
            poch_q(&rat(1), &rat(1), &rat(0), None, &rat(10)),
            Err(Error::NonStabilizing(_))
        ));
    }

    #[test]
    fn gauss_binom_examples() {
        // [4 over 2] = 1 + q + 2q^2 + q^3 + q^4
        let g = gauss_binom(4, 2, 1);
        for (e, c) in [(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)] {
            assert_eq!(g.coeff(&rat(e)), Some(rat(c)));
        }
        assert_eq!(gauss_binom(7, 0, 1), QSeries::one());
        assert_eq!(gauss_binom(2, 3, 1), QSeries::zero());
        assert_eq!(gauss_binom(-1, 0, 1), QSeries::zero());
    }

    #[test]
    fn gauss_binom_via_exact_division() {
        // [4;2] = (q)_4 / ((q)_2 (q)_2): multiply back instead of dividing
        let g = gauss_binom(4, 2, 1);
        let q2 = poch_q_exact(&rat(1), &rat(1), &rat(1), 2);
        let q4 = poch_q_exact(&rat(1), &rat(1), &rat(1), 4);
        assert_eq!(g.mul(&q2).mul(&q2), q4);
    }

    #[test]
    fn pascal_recurrence_to_30() {
        let mut rows = GaussRows::new(1);
        let mut prev: Vec<QSeries> = rows.row(0).to_vec();
        for n in 1..=30usize {
            let row = rows.row(n).to_vec();
            for k in 1..n {
                let rhs = prev[k].add(
                    &prev[k - 1].scale_mono(&rat(1), &rat(n as i64 - k as i64)),
                );
                assert_eq!(row[k], rhs, "Pascal failed at [{n};{k}]");
            }
            prev = row;
        }
    }

    #[test]
    fn pochhammer_incremental_step() {
        // (a;q)_n * (1 - a q^n) = (a;q)_{n+1} for n <= 30
        let a = ratio(2, 3);
        for n in 0..=30u64 {
            let pn = poch_q_exact(&a, &rat(0), &rat(1), n);
            let factor = QSeries::one().sub(&QSeries::monomial(a.clone(), &rat(n as i64)));
            assert_eq!(pn.mul(&factor), poch_q_exact(&a, &rat(0), &rat(1), n + 1));
        }
    }

    #[test]
    fn lambert_examples() {
        let l = lambert_sum(0, &rat(5));
        for (e, c) in [(1, 1), (2, 2), (3, 2), (4, 3)] {
            assert_eq!(l.coeff(&rat(e)), Some(rat(c)));
        }
        let l1 = lambert_sum(0, &rat(2));
        assert_eq!(l1.coeff(&rat(1)), Some(rat(1)));
        // partial m=1: geometric series
        let p = lambert_partial(1, &rat(5));
        for e in 1..5 {
            assert_eq!(p.coeff(&rat(e)), Some(rat(1)));
        }
        // shift drops small divisors
        let s = lambert_sum(1, &rat(5));
        assert_eq!(s.coeff(&rat(1)), Some(rat(0)));
        assert_eq!(s.coeff(&rat(2)), Some(rat(1)));
        assert_eq!(s.coeff(&rat(4)), Some(rat(2)));
    }

    #[test]
    fn two_variable_pochhammer_truncates() {
        // (x q; q)_inf to order 6, x < 5
        let p = pochhammer(&rat(1), 1, &rat(1), &rat(1), None, &rat(6), 5).unwrap();
        assert_eq!(p.coeff(0, &rat(0)), Some(rat(1)));
        assert_eq!(p.coeff(1, &rat(1)), Some(rat(-1)));
        assert_eq!(p.coeff(1, &rat(2)), Some(rat(-1)));
        assert_eq!(p.coeff(2, &rat(3)), Some(rat(1)));
        assert!(p.coeff(0, &rat(6)).is_none());
    }
}
