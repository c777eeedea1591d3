//! Theta-type sums driven by periodic characters.

use super::{QSeries, XQSeries};
use crate::characters::PeriodicChar;
use crate::number::{Int, Rat};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// `sum_{n >= 0} n^weight chi(n) q^{(n^2 - c)/A}` truncated at `order`,
/// denominator reduced after construction.
pub fn theta_q(chi: &PeriodicChar, a_div: i64, c: i64, weight: u8, order: &Rat) -> QSeries {
    assert!(a_div >= 1);
    let t_units = units(order, a_div);
    let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
    let mut n = 0i64;
    loop {
        let e = n * n - c;
        if e >= t_units {
            break;
        }
        let v = chi.value(n);
        if v != 0 {
            let w = if weight == 0 { Rat::from(v) } else { Rat::from(v * n) };
            *coeffs.entry(e).or_default() += w;
        }
        n += 1;
    }
    let lo = coeffs.keys().next().copied().unwrap_or(t_units).min(t_units);
    let mut dense = vec![Rat::new(); (t_units - lo).max(0) as usize];
    for (e, v) in coeffs {
        dense[(e - lo) as usize] = v;
    }
    QSeries::from_window(a_div, lo, dense, t_units).normalize_denom()
}

/// `sum_{n >= 0} n^weight chi(n) q^{(n^2 - c)/A} x^{(n - e)/2}` with q-exponents
/// truncated at `q_order` and the x-window certified up to `x_hi`.
///
/// Errors when some `n` in the character's support makes `(n - e)/2`
/// non-integral.
pub fn theta_x(
    chi: &PeriodicChar,
    a_div: i64,
    c: i64,
    e_shift: i64,
    weight: u8,
    q_order: &Rat,
    x_hi: i64,
) -> Result<XQSeries> {
    assert!(a_div >= 1);
    let t_units = units(q_order, a_div);
    let mut terms: BTreeMap<i64, QSeries> = BTreeMap::new();
    let mut n = 0i64;
    let mut x_lo = 0i64;
    loop {
        let qe = n * n - c;
        let xe2 = n - e_shift;
        // stop once both the q-exponent is beyond the order and the
        // x-exponent is beyond the requested window (both grow with n)
        if qe >= t_units && xe2 >= 2 * x_hi {
            break;
        }
        let v = chi.value(n);
        if v != 0 {
            if xe2 % 2 != 0 {
                return Err(Error::FractionalXExponent(chi.label().to_string(), n));
            }
            let xe = xe2 / 2;
            x_lo = x_lo.min(xe);
            if qe < t_units {
                let w = if weight == 0 { Rat::from(v) } else { Rat::from(v * n) };
                let mono = QSeries::from_window(a_div, qe, vec![w], t_units);
                terms
                    .entry(xe)
                    .and_modify(|s| *s = s.add(&mono))
                    .or_insert(mono);
            }
        }
        n += 1;
    }
    let qlo = terms
        .values()
        .filter_map(|s| s.nonzero_terms().next().map(|(u, _)| u))
        .min()
        .unwrap_or(0)
        .min(0);
    let x_hi_known = x_hi.max((n - e_shift) / 2);
    Ok(
        XQSeries::from_parts(a_div, qlo, t_units, x_lo, x_hi_known, terms)
            .normalize_qdenom(),
    )
}

fn units(order: &Rat, denom: i64) -> i64 {
    let scaled = Rat::from(order * &Rat::from(denom));
    assert_eq!(scaled.denom(), &Int::from(1), "order must be a multiple of 1/A");
    scaled.numer().to_i64().expect("order overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters;
    use crate::number::rat;
    use crate::qseries::poch_q;

    #[test]
    fn eta_numerator_matches_euler_product() {
        // sum chi12(n) q^{(n^2-1)/24} = (q;q)_inf, coefficientwise to order 100
        let chi12 = characters::builtin("chi12").unwrap();
        let order = rat(100);
        let theta = theta_q(&chi12, 24, 1, 0, &order);
        let product = poch_q(&rat(1), &rat(1), &rat(1), None, &order).unwrap();
        assert!(theta.eq_to_order(&product, &order).unwrap());
        assert_eq!(theta.denom(), 1);
    }

    #[test]
    fn weight_one_leading_terms() {
        // sum n chi24_0(n) q^{(n^2-25)/48} = 5 - 11 q^2 x^0 ... (q-only form)
        let chi = characters::builtin("chi24_0").unwrap();
        let th = theta_q(&chi, 48, 25, 1, &rat(10));
        assert_eq!(th.coeff(&rat(0)), Some(rat(5)));
        assert_eq!(th.coeff(&rat(2)), Some(rat(-11)));
        assert_eq!(th.coeff(&rat(3)), Some(rat(-13)));
        assert_eq!(th.coeff(&rat(7)), Some(rat(19)));
    }

    #[test]
    fn h0_two_variable_leading_terms() {
        // 1 - q^2 x^3 - q^3 x^4 + q^7 x^7 + ...
        let chi = characters::builtin("chi24_0").unwrap();
        let h0 = theta_x(&chi, 48, 25, 5, 0, &rat(20), 30).unwrap();
        assert_eq!(h0.coeff(0, &rat(0)), Some(rat(1)));
        assert_eq!(h0.coeff(3, &rat(2)), Some(rat(-1)));
        assert_eq!(h0.coeff(4, &rat(3)), Some(rat(-1)));
        assert_eq!(h0.coeff(7, &rat(7)), Some(rat(1)));
        assert_eq!(h0.coeff(5, &rat(4)), Some(rat(0)));
    }

    #[test]
    fn fractional_x_rejected() {
        let chi = characters::builtin("chi24_0").unwrap();
        // shift 4 makes (n-4)/2 half-integral on the support {5,11,13,19}
        assert!(matches!(
            theta_x(&chi, 48, 25, 4, 0, &rat(10), 10),
            Err(Error::FractionalXExponent(_, _))
        ));
    }
}
