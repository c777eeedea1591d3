//! The classical two-variable identities: Jacobi triple product, Watson
//! quintuple product, and the q-binomial/Euler expansion family.

use super::{pochhammer, products::geometric_inverse, QSeries, XQSeries};
use crate::number::{rat, Rat};
use crate::Result;
use std::collections::BTreeMap;

/// Both sides of the Jacobi triple product
/// `sum_k (-1)^k q^{k^2/2} x^k = (q, x^{-1}q^{1/2}, x q^{1/2}; q)_inf`,
/// truncated identically: q-exponents below `q_order`, x-exponents in
/// `[-x_span, x_span]`.
pub fn jacobi_triple_sides(x_span: i64, q_order: &Rat) -> Result<(XQSeries, XQSeries)> {
    assert!(x_span >= 0);
    let x_hi = x_span + 1;
    let t2 = double_units(q_order);
    // LHS: one monomial per k; every x-exponent in range is fully known
    let kmax = (1..).find(|&k: &i64| k * k >= t2 && k > x_hi).unwrap();
    let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
    for k in -kmax..=kmax {
        let e2 = k * k; // q-exponent in half-units
        if e2 < t2 {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            terms.insert(k, QSeries::from_window(2, e2, vec![rat(sign)], t2));
        }
    }
    let lhs = XQSeries::from_parts(2, 0, t2, -(kmax + 1), kmax + 1, terms);
    // the x^{-1} factors reach down to x-exponent -sqrt(2T); pad the build
    // window so the product still certifies x < x_hi
    let pad = isqrt(t2) + 2;
    let xb = x_hi + pad;
    let half = Rat::from((1, 2));
    let rhs = pochhammer(&rat(1), 0, &rat(1), &rat(1), None, q_order, xb)?
        .mul(&pochhammer(&rat(1), -1, &half, &rat(1), None, q_order, xb)?)
        .mul(&pochhammer(&rat(1), 1, &half, &rat(1), None, q_order, xb)?);
    Ok((lhs.clamp(q_order, x_hi), rhs.clamp(q_order, x_hi)))
}

/// Both sides of the Watson quintuple product
/// `sum_k q^{k(3k-1)/2} x^{3k} (1 - x q^k)
///    = (q, x, q x^{-1}; q)_inf (q x^2, q x^{-2}; q^2)_inf`.
pub fn quintuple_sides(x_span: i64, q_order: &Rat) -> Result<(XQSeries, XQSeries)> {
    assert!(x_span >= 0);
    let x_hi = x_span + 1;
    let t = int_units(q_order);
    let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
    let mut add = |xe: i64, qe: i64, c: i64| {
        if qe < t {
            let mono = QSeries::from_window(1, qe, vec![rat(c)], t);
            terms
                .entry(xe)
                .and_modify(|s| *s = s.add(&mono))
                .or_insert(mono);
        }
    };
    let kmax = (1..).find(|&k: &i64| k * (3 * k - 1) / 2 >= t && 3 * k > x_hi).unwrap();
    for k in -kmax..=kmax {
        let qe = k * (3 * k - 1) / 2;
        add(3 * k, qe, 1);
        add(3 * k + 1, qe + k, -1);
    }
    let lhs = XQSeries::from_parts(1, 0, t, -(3 * kmax + 2), 3 * kmax + 2, terms);
    // two factors reach into negative x-exponents (down to -sqrt(2T) and
    // -2 sqrt(T)); the pairwise window formula charges both against the top
    let pad = isqrt(2 * t) + 2 * isqrt(t) + 4;
    let xb = x_hi + pad;
    let rhs = pochhammer(&rat(1), 0, &rat(1), &rat(1), None, q_order, xb)?
        .mul(&pochhammer(&rat(1), 1, &rat(0), &rat(1), None, q_order, xb)?)
        .mul(&pochhammer(&rat(1), -1, &rat(1), &rat(1), None, q_order, xb)?)
        .mul(&pochhammer(&rat(1), 2, &rat(1), &rat(2), None, q_order, xb)?)
        .mul(&pochhammer(&rat(1), -2, &rat(1), &rat(2), None, q_order, xb)?);
    Ok((lhs.clamp(q_order, x_hi), rhs.clamp(q_order, x_hi)))
}

/// Result of the q-binomial / Euler identity battery.
#[derive(Clone, Debug, Default)]
pub struct EulerReport {
    pub failures: Vec<String>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify, as truncated two-variable series with `z` the second formal
/// variable:
///
/// 1. `sum_n (a;q)_n/(q)_n z^n = (a z)_inf/(z)_inf` for `a = q^m`, `m <= 3`;
/// 2. `sum_n q^{n(n-1)/2} z^n/(q)_n = (-z)_inf` (Euler);
/// 3. `(z)_n = sum_k [n;k] (-z)^k q^{k(k-1)/2}` for `n <= n_max`;
/// 4. `1/(z)_n = sum_k [n+k-1;k] z^k` for `n <= n_max`.
pub fn euler_qbinomial_checks(q_order: &Rat, z_span: i64, n_max: i64) -> Result<EulerReport> {
    let mut report = EulerReport::default();
    let z_hi = z_span + 1;
    let one = rat(1);

    // (q)_n as exact polynomials, reused everywhere
    let poch_n = |n: i64| super::poch_q_exact(&one, &rat(1), &rat(1), n as u64);

    // 1. q-binomial formula, a = q^m
    for m in 0..=3i64 {
        let mut lhs = XQSeries::zero_to(1, int_units(q_order), z_hi);
        for n in 0..z_hi {
            let am = super::poch_q_exact(&one, &rat(m), &rat(1), n as u64);
            let num = am.mul(&poch_n(n).inverse(q_order)?);
            lhs = lhs.add(&XQSeries::from_q(num).scale_mono(&one, n, &rat(0)));
        }
        let mut rhs = pochhammer(&one, 1, &rat(m), &rat(1), None, q_order, z_hi)?;
        for k in 0.. {
            if &rat(k) >= q_order {
                break;
            }
            rhs = rhs.mul(&geometric_inverse(&one, 1, &rat(k), q_order, z_hi));
            rhs = rhs.clamp(q_order, z_hi);
        }
        if !lhs.eq_on_window(&rhs, q_order, 0, z_hi)? {
            report.failures.push(format!("q-binomial formula with a=q^{m}"));
        }
    }

    // 2. Euler identity
    let mut lhs = XQSeries::zero_to(1, int_units(q_order), z_hi);
    for n in 0..z_hi {
        let coeff = poch_n(n)
            .inverse(q_order)?
            .scale_mono(&one, &Rat::from((n * (n - 1) / 2, 1)));
        lhs = lhs.add(&XQSeries::from_q(coeff).scale_mono(&one, n, &rat(0)));
    }
    let rhs = pochhammer(&rat(-1), 1, &rat(0), &rat(1), None, q_order, z_hi)?;
    if !lhs.eq_on_window(&rhs, q_order, 0, z_hi)? {
        report.failures.push("Euler identity".into());
    }

    // 3. (z)_n expansion in Gaussian binomials (exact polynomials both sides)
    let mut rows = super::products::GaussRows::new(1);
    for n in 0..=n_max {
        let lhs = pochhammer(&one, 1, &rat(0), &rat(1), Some(n as u64), q_order, z_hi)?;
        let mut rhs = XQSeries::zero();
        for (k, g) in rows.row(n as usize).to_vec().into_iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let term = XQSeries::from_q(
                g.scale_mono(&rat(sign), &Rat::from((k as i64 * (k as i64 - 1) / 2, 1))),
            )
            .scale_mono(&one, k as i64, &rat(0));
            rhs = rhs.add(&term);
        }
        if !lhs.eq_on_window(&rhs.clamp(q_order, z_hi), q_order, 0, z_hi)? {
            report.failures.push(format!("(z)_n Gaussian expansion at n={n}"));
        }
    }

    // 4. 1/(z)_n = sum_k [n+k-1;k] z^k
    for n in 1..=n_max {
        let mut lhs = XQSeries::one().clamp(q_order, z_hi);
        for j in 0..n {
            lhs = lhs.mul(&geometric_inverse(&one, 1, &rat(j), q_order, z_hi));
            lhs = lhs.clamp(q_order, z_hi);
        }
        let mut rhs = XQSeries::zero_to(1, int_units(q_order), z_hi);
        for k in 0..z_hi {
            let g = super::gauss_binom(n + k - 1, k, 1);
            rhs = rhs.add(&XQSeries::from_q(g.truncate_to(q_order)).scale_mono(&one, k, &rat(0)));
        }
        if !lhs.eq_on_window(&rhs, q_order, 0, z_hi)? {
            report.failures.push(format!("1/(z)_n binomial expansion at n={n}"));
        }
    }

    Ok(report)
}

fn isqrt(n: i64) -> i64 {
    (n.max(0) as f64).sqrt() as i64 + 1
}

fn int_units(order: &Rat) -> i64 {
    assert_eq!(order.denom().to_i64(), Some(1), "integral order expected");
    order.numer().to_i64().expect("order overflow")
}

fn double_units(order: &Rat) -> i64 {
    let scaled = Rat::from(order * &rat(2));
    assert_eq!(scaled.denom().to_i64(), Some(1), "order must be a multiple of 1/2");
    scaled.numer().to_i64().expect("order overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_sides_agree_small() {
        let (lhs, rhs) = jacobi_triple_sides(6, &rat(20)).unwrap();
        assert!(lhs.eq_on_window(&rhs, &rat(20), -6, 7).unwrap());
    }

    #[test]
    fn jacobi_empty_window_vacuous() {
        let (lhs, rhs) = jacobi_triple_sides(0, &rat(10)).unwrap();
        assert!(lhs.eq_on_window(&rhs, &rat(10), 0, 0).unwrap());
    }

    #[test]
    fn quintuple_sides_agree_small() {
        let (lhs, rhs) = quintuple_sides(6, &rat(20)).unwrap();
        assert!(lhs.eq_on_window(&rhs, &rat(20), -6, 7).unwrap());
    }

    #[test]
    fn quintuple_k0_and_k1_rows() {
        let (lhs, _) = quintuple_sides(4, &rat(10)).unwrap();
        // k = 0 term: 1 - x
        assert_eq!(lhs.coeff(0, &rat(0)), Some(rat(1)));
        assert_eq!(lhs.coeff(1, &rat(0)), Some(rat(-1)));
        // x^3 row starts at q^{1(3-1)/2} = q^1
        assert_eq!(lhs.coeff(3, &rat(1)), Some(rat(1)));
        assert_eq!(lhs.coeff(3, &rat(0)), Some(rat(0)));
    }

    #[test]
    fn euler_battery_small() {
        let r = euler_qbinomial_checks(&rat(12), 6, 4).unwrap();
        assert!(r.passed(), "failures: {:?}", r.failures);
    }
}
