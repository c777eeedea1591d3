//! The general alternating double-sum form of the (3,t) family.

use super::builders::mm_theta;
use super::{x_outcome, ResolvedParams, RunOutcome};
use crate::number::{rat, Rat};
use crate::qseries::{GaussRows, QSeries, XQSeries};
use crate::Result;
use std::collections::HashMap;

/// `I_t^{(m)}(x) = sum_{n,c >= 0} (-1)^n
///    q^{(t/2) n(n+1) + t c(c+1) - (t-m)(n+c)} x^{t(n+c)}
///    (1 - q^{2(t-m)(n+c+1)} x^{3(t-m)}) [n; c]_{q^t}`,
/// truncated at `q_order` with x-support certified below `x_hi`.
pub fn i_tm(t: i64, m: i64, q_order: &Rat, x_hi: i64) -> XQSeries {
    assert!(t >= 2 && (1..t).contains(&m));
    assert_eq!(q_order.denom().to_i64(), Some(1), "integral order expected");
    let units = q_order.numer().to_i64().expect("order overflow");
    let mut acc = XQSeries::zero_to(1, units, x_hi);
    let mut rows = GaussRows::new(t);
    let mut row_cache: HashMap<usize, Vec<QSeries>> = HashMap::new();
    let mut n = 0i64;
    loop {
        // q-exponent of the (n, c=0) term; both the q- and x-valuation grow
        // with n, so stop once both leave the windows
        let min_q = t * n * (n + 1) / 2 - (t - m) * n;
        if rat(min_q) >= *q_order && t * n >= x_hi {
            break;
        }
        let row = row_cache
            .entry(n as usize)
            .or_insert_with(|| rows.row(n as usize).to_vec());
        for c in 0..=n {
            let qe = t * n * (n + 1) / 2 + t * c * (c + 1) - (t - m) * (n + c);
            if rat(qe) >= *q_order && t * (n + c) >= x_hi {
                continue;
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let head = XQSeries::one().sub(&XQSeries::monomial(
                rat(1),
                3 * (t - m),
                &rat(2 * (t - m) * (n + c + 1)),
            ));
            let term = XQSeries::from_q(row[c as usize].clone())
                .mul(&head)
                .scale_mono(&rat(sign), t * (n + c), &rat(qe));
            acc = acc.add(&term.clamp(q_order, x_hi));
        }
        n += 1;
    }
    acc
}

pub(crate) fn run_m3t_general(p: &ResolvedParams) -> Result<RunOutcome> {
    let (t, m) = (p.get("t"), p.get("m"));
    let order = p.order();
    let (x_lo, x_hi) = (p.get("x_lo"), p.get("x_hi"));
    let target = mm_theta(3, t, 1, m, &order, x_hi + 4)?;
    let i = i_tm(t, m, &order, x_hi + 4);
    let rhs = if t - 3 * m < 0 {
        i
    } else {
        // 1 - x^{3m-t} + x^{3m-t} I_t^{(m)}(x), with 3m - t < 0 a Laurent head
        let shift = 3 * m - t;
        XQSeries::one()
            .sub(&XQSeries::monomial(rat(1), shift, &rat(0)))
            .add(&i.scale_mono(&rat(1), shift, &rat(0)))
    };
    let mut out = x_outcome(&target, &rhs, &order, x_lo, x_hi)?;
    out.notes.push(format!(
        "branch: t - 3m = {} ({})",
        t - 3 * m,
        if t - 3 * m < 0 { "direct" } else { "with the 1 - x^(3m-t) head" }
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{verify, Params};

    #[test]
    fn several_family_members() {
        let mut p = Params::new();
        p.insert("order".into(), 24);
        p.insert("x_lo".into(), -4);
        p.insert("x_hi".into(), 18);
        for (t, m) in [(5, 4), (5, 2), (4, 1), (4, 3), (7, 3), (8, 5)] {
            p.insert("t".into(), t);
            p.insert("m".into(), m);
            let r = verify("m3t_general", &p).unwrap();
            assert!(r.passed(), "t={t} m={m}: {:?}", r.first_discrepancy);
        }
    }

    #[test]
    fn laurent_branch_for_small_m() {
        let mut p = Params::new();
        p.insert("order".into(), 24);
        p.insert("x_lo".into(), -4);
        p.insert("x_hi".into(), 18);
        p.insert("t".into(), 5);
        p.insert("m".into(), 1);
        let r = verify("m3t_general", &p).unwrap();
        assert!(r.passed(), "{:?}", r.first_discrepancy);
        assert!(r.notes[0].contains("head"));
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut p = Params::new();
        p.insert("t".into(), 6); // divisible by 3
        assert!(verify("m3t_general", &p).is_err());
        let mut p = Params::new();
        p.insert("t".into(), 5);
        p.insert("m".into(), 5);
        assert!(verify("m3t_general", &p).is_err());
    }
}
