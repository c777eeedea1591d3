//! The Santos polynomial pair: Gaussian-binomial closed forms and the 2x2
//! matrix recursion, both exact.

use super::{ResolvedParams, RunOutcome};
use crate::number::{rat, Rat};
use crate::qseries::{GaussRows, QSeries};
use crate::report::DiscrepancyReport;
use crate::Result;

/// Which construction of the pair to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SantosVariant {
    /// Double sums against Gaussian binomials.
    ClosedForm,
    /// The 2x2 matrix step from the pair (1, 0).
    Recursion,
}

/// The n-th Santos pair `(S_n, T_n)` as exact polynomials.
pub fn santos(n: u64, variant: SantosVariant) -> (QSeries, QSeries) {
    match variant {
        SantosVariant::Recursion => {
            let mut pairs = SantosIter::new();
            let mut last = pairs.next().unwrap();
            for _ in 0..n {
                last = pairs.next().unwrap();
            }
            last
        }
        SantosVariant::ClosedForm => {
            let mut rows = GaussRows::new(1);
            closed_from_row(n, rows.row(n as usize))
        }
    }
}

/// `S_n = sum_k q^{2k^2} [n; 2k]`, `T_n = sum_k q^{2k(k+1)} [n; 2k+1]`
/// given row `n` of the Gaussian-binomial triangle.
pub(crate) fn closed_from_row(n: u64, row: &[QSeries]) -> (QSeries, QSeries) {
    let mut s = QSeries::zero();
    let mut t = QSeries::zero();
    let mut k = 0i64;
    while 2 * k <= n as i64 {
        s = s.add(&row[(2 * k) as usize].scale_mono(&rat(1), &rat(2 * k * k)));
        if 2 * k + 1 <= n as i64 {
            t = t.add(&row[(2 * k + 1) as usize].scale_mono(&rat(1), &rat(2 * k * (k + 1))));
        }
        k += 1;
    }
    (s, t)
}

/// Iterator over `(S_n, T_n)` by the matrix recursion
/// `(S_{n+1}, T_{n+1}) = (S_n + q^{n+1} T_n, q^n S_n + T_n)`.
pub(crate) struct SantosIter {
    n: i64,
    s: QSeries,
    t: QSeries,
}

impl SantosIter {
    pub fn new() -> Self {
        SantosIter { n: 0, s: QSeries::one(), t: QSeries::zero() }
    }
}

impl Iterator for SantosIter {
    type Item = (QSeries, QSeries);

    fn next(&mut self) -> Option<(QSeries, QSeries)> {
        let out = (self.s.clone(), self.t.clone());
        let n = self.n;
        let s_next = self.s.add(&self.t.scale_mono(&rat(1), &rat(n + 1)));
        let t_next = self.s.scale_mono(&rat(1), &rat(n)).add(&self.t);
        self.s = s_next;
        self.t = t_next;
        self.n += 1;
        Some(out)
    }
}

/// Truncated variant of the recursion for series work: every polynomial is
/// clamped at `order` so degrees stay bounded.
pub(crate) struct SantosIterTruncated {
    inner: SantosIter,
    order: Rat,
}

impl SantosIterTruncated {
    pub fn new(order: &Rat) -> Self {
        SantosIterTruncated { inner: SantosIter::new(), order: order.clone() }
    }
}

impl Iterator for SantosIterTruncated {
    type Item = (QSeries, QSeries);

    fn next(&mut self) -> Option<(QSeries, QSeries)> {
        // truncate the *state* so the degree never grows past the order
        self.inner.s = self.inner.s.truncate_to(&self.order);
        self.inner.t = self.inner.t.truncate_to(&self.order);
        self.inner.next()
    }
}

pub(crate) fn run_closed_vs_recursion(p: &ResolvedParams) -> Result<RunOutcome> {
    let n_max = p.get("n_max").max(0) as u64;
    let mut rows = GaussRows::new(1);
    let mut rec = SantosIter::new();
    for n in 0..=n_max {
        let (s_closed, t_closed) = closed_from_row(n, rows.row(n as usize));
        let (s_rec, t_rec) = rec.next().unwrap();
        // exact polynomials: structural equality is full equality
        if s_closed != s_rec || t_closed != t_rec {
            let (lhs, rhs, which) = if s_closed != s_rec {
                (s_closed, s_rec, "S")
            } else {
                (t_closed, t_rec, "T")
            };
            let cap = rat(2 * (n as i64) * (n as i64) + 2);
            let d = lhs.first_discrepancy(&rhs, &cap)?.map(|(e, a, b)| DiscrepancyReport {
                x_exp: None,
                q_exp: e.to_string(),
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
            let mut out = RunOutcome::pure_q(false, d, cap);
            out.notes.push(format!("first divergence at n={n} in the {which} component"));
            return Ok(out);
        }
    }
    let mut out = RunOutcome::pure_q(true, None, rat((n_max as i64).pow(2) / 2 + 2));
    out.notes.push(format!("closed form and recursion agree exactly for n <= {n_max}"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_pair() {
        let (s0, t0) = santos(0, SantosVariant::Recursion);
        assert_eq!(s0, QSeries::one());
        assert_eq!(t0, QSeries::zero());
        let (s0c, t0c) = santos(0, SantosVariant::ClosedForm);
        assert_eq!(s0c, QSeries::one());
        assert_eq!(t0c, QSeries::zero());
    }

    #[test]
    fn pair_at_two() {
        // S_2 = 1 + q^2, T_2 = 1 + q
        for v in [SantosVariant::ClosedForm, SantosVariant::Recursion] {
            let (s2, t2) = santos(2, v);
            assert_eq!(s2.coeff(&rat(0)), Some(rat(1)));
            assert_eq!(s2.coeff(&rat(2)), Some(rat(1)));
            assert_eq!(s2.coeff(&rat(1)), Some(rat(0)));
            assert_eq!(t2.coeff(&rat(0)), Some(rat(1)));
            assert_eq!(t2.coeff(&rat(1)), Some(rat(1)));
        }
    }

    #[test]
    fn channels_agree_to_fifty() {
        let mut rows = GaussRows::new(1);
        let mut rec = SantosIter::new();
        for n in 0..=50u64 {
            let closed = closed_from_row(n, rows.row(n as usize));
            let by_rec = rec.next().unwrap();
            assert_eq!(closed, by_rec, "divergence at n={n}");
        }
    }
}
