//! Arbitrary-precision integer/rational aliases and small constructors.
//!
//! `rug::Rational` is always stored in canonical form (reduced, positive
//! denominator), which is exactly the invariant the exact coefficient domain
//! requires.

pub use rug::{Integer as Int, Rational as Rat};

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from(n)
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::from((n, d))
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u32, k: u32) -> Int {
    if k > n {
        return Int::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Factorial as a big integer.
pub fn factorial(n: u32) -> Int {
    let mut acc = Int::from(1);
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Euclidean remainder in `0..m` for possibly negative `n`.
pub fn rem_euclid(n: i64, m: i64) -> i64 {
    debug_assert!(m > 0);
    n.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_canonical() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert!(r.denom() > &0);
        assert_eq!(r.numer(), &Int::from(-3));
        assert_eq!(r.denom(), &Int::from(2));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(10, 3), Int::from(120));
        assert_eq!(binomial(5, 7), Int::ZERO);
        assert_eq!(binomial(0, 0), Int::from(1));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(6), 720);
    }
}
