//! Exact rational polynomials, Bernoulli polynomials, and the Taylor
//! expansion of sinh-ratio generating functions.
//!
//! No floating point enters this module; every coefficient is a reduced
//! `rug::Rational`.

use crate::number::{binomial, factorial, rat, Int, Rat};
use std::sync::Mutex;

/// Dense univariate polynomial over the rationals, coefficients ascending by
/// degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    /// Build from ascending coefficients, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.cmp0() == std::cmp::Ordering::Equal) == Some(true) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| Rat::from(a * c)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.cmp0() != std::cmp::Ordering::Equal {
                    out[i + j] += Rat::from(a * b);
                }
            }
        }
        RatPoly::new(out)
    }

    /// Product truncated to degree `order` (inclusive).
    fn mul_trunc(&self, other: &RatPoly, order: usize) -> RatPoly {
        let mut out = vec![Rat::new(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.cmp0() != std::cmp::Ordering::Equal {
                    out[i + j] += Rat::from(a * b);
                }
            }
        }
        RatPoly::new(out)
    }
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`), memoized.
pub fn bernoulli_number(n: usize) -> Rat {
    static CACHE: Mutex<Vec<Rat>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(rat(1));
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{k=0}^{m} C(m+1,k) B_k = 0  =>  B_m
        let mut s = Rat::new();
        for (k, b) in cache.iter().enumerate() {
            s += Rat::from(b * &Rat::from(binomial(m as u32 + 1, k as u32)));
        }
        s /= -Rat::from(m as i64 + 1);
        cache.push(s);
    }
    cache[n].clone()
}

/// The n-th Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^{n-k}`, exact.
pub fn bernoulli_poly(n: usize) -> RatPoly {
    let mut coeffs = vec![Rat::new(); n + 1];
    for k in 0..=n {
        // coefficient of x^{n-k}
        coeffs[n - k] = Rat::from(bernoulli_number(k) * Rat::from(binomial(n as u32, k as u32)));
    }
    RatPoly::new(coeffs)
}

/// Exact evaluation `p(x)`; thin wrapper kept as a named operation.
pub fn eval_ratpoly(p: &RatPoly, x: &Rat) -> Rat {
    p.eval(x)
}

/// Taylor coefficients of `sinh(a x) sinh(b x) / sinh(c x)` about `x = 0` up
/// to degree `order`. The numerator product has valuation 2 and `sinh(c x)/x`
/// has nonzero constant term, so the quotient is a power series; it is odd
/// in `x`.
pub fn sinh_ratio_taylor(a: u32, b: u32, c: u32, order: usize) -> RatPoly {
    assert!(c > 0, "denominator frequency must be positive");
    let num = sinh_poly(a, order + 1).mul_trunc(&sinh_poly(b, order + 1), order + 1);
    // num = x^2 * e(x) with e even; divide by x once and multiply by the
    // series inverse of sinh(c x)/x
    let shifted = RatPoly::new(num.coeffs()[1..].to_vec());
    let den = RatPoly::new(sinh_poly(c, order + 1).coeffs()[1..].to_vec());
    shifted.mul_trunc(&invert_series(&den, order), order)
}

/// `sinh(a x)` truncated to degree `order`.
fn sinh_poly(a: u32, order: usize) -> RatPoly {
    let mut coeffs = vec![Rat::new(); order + 1];
    let big_a = Int::from(a);
    let mut a_pow = big_a.clone();
    let mut k = 1usize;
    while k <= order {
        coeffs[k] = Rat::from((a_pow.clone(), factorial(k as u32)));
        a_pow *= big_a.clone().square();
        k += 2;
    }
    RatPoly::new(coeffs)
}

/// Power-series inverse of `p` (nonzero constant term) to degree `order`.
fn invert_series(p: &RatPoly, order: usize) -> RatPoly {
    let c0 = p.coeff(0);
    assert!(c0.cmp0() != std::cmp::Ordering::Equal, "series not invertible");
    let mut inv = vec![Rat::new(); order + 1];
    inv[0] = Rat::from(1) / c0.clone();
    for n in 1..=order {
        let mut s = Rat::new();
        for k in 1..=n.min(p.coeffs().len().saturating_sub(1)) {
            s += Rat::from(&p.coeff(k) * &inv[n - k]);
        }
        inv[n] = -s / c0.clone();
    }
    RatPoly::new(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::ratio;

    #[test]
    fn bernoulli_poly_small() {
        assert_eq!(bernoulli_poly(0), RatPoly::new(vec![rat(1)]));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(bernoulli_poly(2), RatPoly::new(vec![ratio(1, 6), rat(-1), rat(1)]));
        // B_1(0) = -1/2
        assert_eq!(bernoulli_poly(1).eval(&rat(0)), ratio(-1, 2));
    }

    #[test]
    fn bernoulli_numbers_classical() {
        assert_eq!(bernoulli_number(0), rat(1));
        assert_eq!(bernoulli_number(1), ratio(-1, 2));
        assert_eq!(bernoulli_number(2), ratio(1, 6));
        assert_eq!(bernoulli_number(12), ratio(-691, 2730));
        assert_eq!(bernoulli_number(13), rat(0));
    }

    #[test]
    fn eval_examples() {
        let b2 = bernoulli_poly(2);
        assert_eq!(eval_ratpoly(&b2, &ratio(1, 2)), ratio(-1, 12));
        let one = RatPoly::constant(rat(1));
        assert_eq!(eval_ratpoly(&one, &ratio(7, 3)), rat(1));
        let x = RatPoly::new(vec![rat(0), rat(1)]);
        assert_eq!(eval_ratpoly(&x, &ratio(5, 24)), ratio(5, 24));
    }

    #[test]
    fn bernoulli_reflection() {
        // B_n(1-x) = (-1)^n B_n(x) for n <= 50, by coefficient comparison
        for n in 0..=50usize {
            let b = bernoulli_poly(n);
            // compose with (1 - x): build coefficients of B_n(1-x)
            let mut acc = RatPoly::zero();
            let one_minus_x = RatPoly::new(vec![rat(1), rat(-1)]);
            let mut pow = RatPoly::constant(rat(1));
            for k in 0..=n {
                acc = acc.add(&pow.scale(&b.coeff(k)));
                if k < n {
                    pow = pow.mul(&one_minus_x);
                }
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(acc, b.scale(&rat(sign)), "reflection failed at n={n}");
        }
    }

    #[test]
    fn bernoulli_multiplication_theorem() {
        // B_n(2x) = 2^{n-1} (B_n(x) + B_n(x + 1/2)), checked at rational points
        for n in 0..=10usize {
            let b = bernoulli_poly(n);
            for p in [ratio(1, 3), ratio(5, 7), rat(2), ratio(-3, 4)] {
                let lhs = b.eval(&Rat::from(&p * &rat(2)));
                let sum = b.eval(&p) + b.eval(&Rat::from(&p + &ratio(1, 2)));
                let rhs = if n == 0 { sum / rat(2) } else { sum * ratio(1 << (n - 1), 1) };
                assert_eq!(lhs, rhs, "multiplication theorem failed at n={n}");
            }
        }
    }

    #[test]
    fn sinh_ratio_cancellation() {
        // sh(x) sh(x) / sh(x) = sh(x) = x + x^3/6 to order 3
        let p = sinh_ratio_taylor(1, 1, 1, 3);
        assert_eq!(p.coeff(1), rat(1));
        assert_eq!(p.coeff(2), rat(0));
        assert_eq!(p.coeff(3), ratio(1, 6));
    }

    #[test]
    fn sinh_ratio_leading_coefficients() {
        // x^1 coefficients: ab/c
        assert_eq!(sinh_ratio_taylor(3, 4, 12, 1).coeff(1), rat(1));
        assert_eq!(sinh_ratio_taylor(3, 8, 12, 1).coeff(1), rat(2));
    }

    #[test]
    fn sinh_ratio_is_odd() {
        let p = sinh_ratio_taylor(3, 4, 12, 13);
        for k in (0..=13).step_by(2) {
            assert_eq!(p.coeff(k), rat(0), "even coefficient x^{k} nonzero");
        }
    }
}
