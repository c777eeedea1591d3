//! Shared series builders used across the identity registry.

use crate::characters::{builtin, minimal_model_char};
use crate::number::{rat, Rat};
use crate::qseries::{poch_q, poch_q_exact, theta_x, QSeries, XQSeries};
use crate::Result;

/// Two-variable theta of the minimal-model character `(s,t,n,m)`:
/// `sum_k chi(k) q^{(k^2 - d^2)/(4st)} x^{(k - |d|)/2}` with `d = nt - ms`.
pub fn mm_theta(s: i64, t: i64, n: i64, m: i64, q_order: &Rat, x_hi: i64) -> Result<XQSeries> {
    let chi = minimal_model_char(s, t, n, m)?;
    let d = n * t - m * s;
    theta_x(&chi, 4 * s * t, d * d, d.abs(), 0, q_order, x_hi)
}

/// The modulus-24 pair: `a = 0` is the (3,4)-model (1,3) member, `a = 1`
/// the (1,1) member.
pub fn h34_theta(a: i64, q_order: &Rat, x_hi: i64) -> Result<XQSeries> {
    match a {
        0 => mm_theta(3, 4, 1, 3, q_order, x_hi),
        1 => mm_theta(3, 4, 1, 1, q_order, x_hi),
        _ => Err(crate::Error::InvalidParam(format!("a must be 0 or 1, got {a}"))),
    }
}

/// The modulus-30 family member `(1, m)`.
pub fn h35_theta(m: i64, q_order: &Rat, x_hi: i64) -> Result<XQSeries> {
    mm_theta(3, 5, 1, m, q_order, x_hi)
}

/// The modulus-48 family member `(1, m)`.
pub fn h38_theta(m: i64, q_order: &Rat, x_hi: i64) -> Result<XQSeries> {
    mm_theta(3, 8, 1, m, q_order, x_hi)
}

/// The mod-12 theta `sum_n chi12(n) p^{(n^2-1)/24} x^{(n-1)/2}` in the
/// *unscaled* nome `p` (exponents integral); callers substitute
/// `p -> q^{1/2}` or `p -> q^{1/4}` as needed.
pub fn zagier_theta(p_order: &Rat, x_hi: i64) -> Result<XQSeries> {
    let chi12 = builtin("chi12")?;
    theta_x(&chi12, 24, 1, 1, 0, p_order, x_hi)
}

/// `(q;q)_n` for `n = 0..=n_max`, truncated at `order`.
pub fn qpoch_prefix(n_max: i64, order: &Rat) -> Vec<QSeries> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut acc = QSeries::one().truncate_to(order);
    out.push(acc.clone());
    for k in 1..=n_max {
        let factor = QSeries::one().sub(&QSeries::monomial(rat(1), &rat(k)));
        acc = acc.mul(&factor).truncate_to(order);
        out.push(acc.clone());
    }
    out
}

/// `(q;q)_inf` truncated at `order`.
pub fn qpoch_inf(order: &Rat) -> QSeries {
    poch_q(&rat(1), &rat(1), &rat(1), None, order).expect("positive base")
}

/// `(c q^{e}; q^{base})_inf` truncated at `order` (pure q-series shorthand).
pub fn prod(c: i64, e: i64, base: i64, order: &Rat) -> QSeries {
    poch_q(&rat(c), &rat(e), &rat(base), None, order).expect("positive base")
}

/// `(x; q)_{n}` as an exact polynomial in (x, q): internal helper for
/// hypergeometric sides, with `y = coef * x^{xe} q^{qe}` and base `q^{b}`.
pub fn poch_xy(coef: &Rat, xe: i64, qe: &Rat, b: &Rat, n: u64, q_order: &Rat) -> Result<XQSeries> {
    crate::qseries::pochhammer(coef, xe, qe, b, Some(n), q_order, crate::qseries::EXACT)
}

/// `1/(q)_m` truncated at `order`.
pub fn inv_qpoch(m: u64, order: &Rat) -> Result<QSeries> {
    poch_q_exact(&rat(1), &rat(1), &rat(1), m).inverse(order)
}
