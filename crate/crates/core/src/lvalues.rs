//! Exact L-function values at negative integers via the finite Bernoulli
//! sum, the integer t-series families, and the asymptotic moment check that
//! links them to theta-type sums.

use crate::characters::PeriodicChar;
use crate::exact::{bernoulli_poly, sinh_ratio_taylor};
use crate::number::{factorial, rat, Int, Rat};
use crate::{Error, Result};
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

/// `L(-k, chi) = -(f^k / (k+1)) sum_{n=1}^{f} chi(n) B_{k+1}(n/f)`, exact.
///
/// Requires a mean-zero character (enforced by construction of
/// [`PeriodicChar`], checked again here).
pub fn l_value_negative(k: u32, chi: &PeriodicChar) -> Result<Rat> {
    if chi.values().iter().sum::<i64>() != 0 {
        return Err(Error::NonZeroMean(chi.label().to_string()));
    }
    let f = chi.modulus();
    let b = bernoulli_poly(k as usize + 1);
    let mut s = Rat::new();
    for n in 1..=f {
        let v = chi.value(n);
        if v != 0 {
            s += Rat::from(b.eval(&Rat::from((n, f))) * rat(v));
        }
    }
    let fk = Rat::from(Int::from(f).pow(k));
    Ok(Rat::from(-s * fk) / rat(k as i64 + 1))
}

/// Which t-series family to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TFamily {
    /// From the mod-24 character supported on {5,11,13,19}.
    Zero,
    /// From the mod-24 character supported on {1,7,17,23}.
    One,
    /// From the mod-12 character, via `-(-4)^n L(-2n-1, chi12)`.
    Two,
    /// Elementwise sum of families zero and one.
    Sum,
}

impl TFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "0" | "zero" => Ok(TFamily::Zero),
            "1" | "one" => Ok(TFamily::One),
            "2" | "two" => Ok(TFamily::Two),
            "sum" => Ok(TFamily::Sum),
            _ => Err(Error::InvalidParam(format!("unknown t-series family `{s}`"))),
        }
    }
}

/// An integer t-series family; integrality is asserted after exact rational
/// computation. Values serialize as decimal integer strings.
#[derive(Clone, Debug, Serialize)]
pub struct TSeriesFamily {
    pub family: TFamily,
    #[serde(serialize_with = "ints_as_strings")]
    pub values: Vec<Int>,
}

fn ints_as_strings<S: serde::Serializer>(v: &[Int], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i.to_string()))
}

/// n-th member of a family, exact.
pub fn t_value(family: TFamily, n: u32) -> Result<Int> {
    let r = match family {
        TFamily::Zero | TFamily::One => {
            let chi = crate::characters::builtin(if family == TFamily::Zero {
                "chi24_0"
            } else {
                "chi24_1"
            })?;
            // (1/2) (-1)^{n+1} L(-2n-1, chi)
            let l = l_value_negative(2 * n + 1, &chi)?;
            let sign = if n % 2 == 0 { -1 } else { 1 };
            Rat::from(l * rat(sign)) / rat(2)
        }
        TFamily::Two => {
            let chi12 = crate::characters::builtin("chi12")?;
            let l = l_value_negative(2 * n + 1, &chi12)?;
            let scale = Rat::from(rat(-4).pow(n));
            Rat::from(-l * scale)
        }
        TFamily::Sum => {
            return Ok(t_value(TFamily::Zero, n)? + t_value(TFamily::One, n)?);
        }
    };
    if r.denom().to_i64() != Some(1) {
        return Err(Error::InvalidParam(format!("t-series member n={n} is not integral: {r}")));
    }
    Ok(Rat::from(r).into_numer_denom().0)
}

/// First `count` members of the family.
pub fn t_series(family: TFamily, count: u32) -> Result<TSeriesFamily> {
    let values = (0..count).map(|n| t_value(family, n)).collect::<Result<Vec<_>>>()?;
    Ok(TSeriesFamily { family, values })
}

/// Outcome of a generating-function cross-check for one family.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratingCheck {
    pub family: TFamily,
    pub n_max: u32,
    pub passed: bool,
    pub mismatches: Vec<u32>,
}

/// For families 0 and 1, check
/// `(-1)^n t_n / (2n+1)!` = coefficient of `x^{2n+1}` in the matching
/// sinh-ratio Taylor expansion (frequencies (3,4,12) resp. (3,8,12)).
/// For family 2, check the two closed forms against each other: the
/// `-(-4)^n L(-2n-1, chi12)` form and the Bernoulli-sum form with the
/// `24^{2n+1}/(2n+2)` prefactor over the mod-12 table.
pub fn tseries_generating_check(family: TFamily, n_max: u32) -> Result<GeneratingCheck> {
    let mut mismatches = Vec::new();
    match family {
        TFamily::Zero | TFamily::One => {
            let b = if family == TFamily::Zero { 4 } else { 8 };
            let taylor = sinh_ratio_taylor(3, b, 12, 2 * n_max as usize + 1);
            for n in 0..=n_max {
                let t = t_value(family, n)?;
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let expected = Rat::from((Int::from(sign) * t, factorial(2 * n + 1)));
                if taylor.coeff(2 * n as usize + 1) != expected {
                    mismatches.push(n);
                }
            }
        }
        TFamily::Two => {
            let chi12 = crate::characters::builtin("chi12")?;
            let b_form = |n: u32| -> Result<Rat> {
                // (1/2)(-1)^n 24^{2n+1}/(2n+2) sum_{k=1}^{12} chi12(k) B_{2n+2}(k/12)
                let bp = bernoulli_poly(2 * n as usize + 2);
                let mut s = Rat::new();
                for k in 1..=12i64 {
                    let v = chi12.value(k);
                    if v != 0 {
                        s += Rat::from(bp.eval(&Rat::from((k, 12))) * rat(v));
                    }
                }
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let pref = Rat::from((Int::from(24).pow(2 * n + 1), Int::from(2 * n + 2)));
                Ok(Rat::from(Rat::from(s * pref) * rat(sign)) / rat(2))
            };
            for n in 0..=n_max {
                if Rat::from(t_value(TFamily::Two, n)?) != b_form(n)? {
                    mismatches.push(n);
                }
            }
        }
        TFamily::Sum => {
            for n in 0..=n_max {
                if t_value(TFamily::Sum, n)?
                    != t_value(TFamily::Zero, n)? + t_value(TFamily::One, n)?
                {
                    mismatches.push(n);
                }
            }
        }
    }
    Ok(GeneratingCheck { family, n_max, passed: mismatches.is_empty(), mismatches })
}

/// Per-sample outcome of the asymptotic moment check.
#[derive(Clone, Debug, Serialize)]
pub struct MomentCheck {
    pub t: String,
    pub precision_bits: u32,
    /// |LHS - K-term partial sum| for K = 0..=k_max, as decimal strings.
    pub errors: Vec<String>,
    /// 2 * |next term| bounds, same indexing.
    pub bounds: Vec<String>,
    pub passed: bool,
}

/// Check the asymptotic expansion
/// `sum_{n>=0} n chi(n) e^{-n^2 t}  ~  sum_k L(-2k-1, chi) (-t)^k / k!`
/// at each rational sample `t`, asserting the next-term error bound
/// `|LHS - S_K| <= 2 |term_{K+1}|` for every `K <= k_max`.
pub fn asymptotic_moment_check(
    chi: &PeriodicChar,
    k_max: u32,
    t_samples: &[Rat],
    precision: u32,
) -> Result<Vec<MomentCheck>> {
    let mut out = Vec::new();
    for t in t_samples {
        assert!(t.cmp0() == std::cmp::Ordering::Greater && t < &rat(1), "t in (0,1)");
        let tf = Float::with_val(precision, t);
        let lhs = theta_weight1_real(chi, &tf, precision)?;
        let mut errors = Vec::new();
        let mut bounds = Vec::new();
        let mut partial = Float::with_val(precision, 0);
        let mut passed = true;
        let term = |k: u32| -> Result<Float> {
            let l = l_value_negative(2 * k + 1, chi)?;
            let tk = Float::with_val(precision, &tf).pow(k) / Float::with_val(precision, factorial(k));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Ok(Float::with_val(precision, &l) * tk * sign)
        };
        for k in 0..=k_max {
            partial += term(k)?;
            let err = Float::with_val(precision, &lhs - &partial).abs();
            let bound = term(k + 1)?.abs() * 2;
            if err > bound {
                passed = false;
            }
            errors.push(sci(&err));
            bounds.push(sci(&bound));
        }
        out.push(MomentCheck {
            t: t.to_string(),
            precision_bits: precision,
            errors,
            bounds,
            passed,
        });
    }
    Ok(out)
}

/// `sum_{n>=0} n chi(n) e^{-n^2 t}` with a certified Gaussian tail cutoff:
/// stops once `n e^{-n^2 t}` (and the whole remaining tail, bounded by a
/// geometric series) is below `2^{-(precision+8)}`.
fn theta_weight1_real(chi: &PeriodicChar, t: &Float, precision: u32) -> Result<Float> {
    let mut acc = Float::with_val(precision, 0);
    let threshold = Float::with_val(precision, Float::i_exp(1, -((precision as i32) + 8)));
    let mut n = 0i64;
    loop {
        let nf = Float::with_val(precision, n);
        let n2t = Float::with_val(precision, &nf * &nf) * t;
        let mag = Float::with_val(precision, -&n2t).exp();
        let head = Float::with_val(precision, &nf * &mag);
        let v = chi.value(n);
        if v != 0 {
            acc += Float::with_val(precision, &head) * v;
        }
        // tail bound: once n^2 t >= 1, sum_{m>n} m e^{-m^2 t} <= 2 n e^{-n^2 t}
        if n > 0 && n2t > 1 {
            let tail = head * 2;
            if tail < threshold {
                break;
            }
        }
        n += 1;
        if n > 100_000_000 {
            return Err(Error::PrecisionUnreachable {
                precision,
                reason: "Gaussian tail cutoff exceeded the iteration cap".into(),
            });
        }
    }
    Ok(acc)
}

fn sci(f: &Float) -> String {
    format!("{:.6e}", f.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::builtin;

    #[test]
    fn l_values_from_the_t_table() {
        let chi0 = builtin("chi24_0").unwrap();
        assert_eq!(l_value_negative(1, &chi0).unwrap(), rat(-2));
        assert_eq!(l_value_negative(3, &chi0).unwrap(), rat(238));
        let chi12 = builtin("chi12").unwrap();
        assert_eq!(l_value_negative(1, &chi12).unwrap(), rat(-2));
    }

    #[test]
    fn t_table_first_members() {
        assert_eq!(t_value(TFamily::Zero, 0).unwrap(), 1);
        assert_eq!(t_value(TFamily::Zero, 1).unwrap(), 119);
        assert_eq!(t_value(TFamily::One, 0).unwrap(), 2);
        assert_eq!(t_value(TFamily::Two, 0).unwrap(), 2);
        assert_eq!(t_value(TFamily::Sum, 0).unwrap(), 3);
        assert_eq!(t_value(TFamily::Sum, 1).unwrap(), 261);
    }

    #[test]
    fn l_value_rejects_nonzero_mean() {
        // constructing a non-mean-zero character is already an error; build a
        // valid one and check the guard stays consistent
        let chi = builtin("chi6").unwrap();
        assert!(l_value_negative(1, &chi).is_ok());
    }

    #[test]
    fn generating_checks_pass() {
        for fam in [TFamily::Zero, TFamily::One, TFamily::Two] {
            let r = tseries_generating_check(fam, 6).unwrap();
            assert!(r.passed, "family {:?} mismatches {:?}", fam, r.mismatches);
        }
    }

    #[test]
    fn two_expressions_for_families_agree() {
        // L-value form vs Bernoulli-sum form of the same number, n <= 10
        let chi0 = builtin("chi24_0").unwrap();
        for n in 0..=10u32 {
            let l = l_value_negative(2 * n + 1, &chi0).unwrap();
            let bp = bernoulli_poly(2 * n as usize + 2);
            let mut s = Rat::new();
            for k in 1..=24i64 {
                let v = chi0.value(k);
                if v != 0 {
                    s += Rat::from(bp.eval(&Rat::from((k, 24))) * rat(v));
                }
            }
            let direct = Rat::from(-s * Rat::from((Int::from(24).pow(2 * n + 1), Int::from(2 * n + 2))));
            assert_eq!(l, direct, "Bernoulli-sum form differs at n={n}");
        }
    }

    #[test]
    fn moment_check_small_sample() {
        let chi = builtin("chi12").unwrap();
        let r = asymptotic_moment_check(&chi, 2, &[Rat::from((1, 20))], 128).unwrap();
        assert!(r[0].passed, "errors {:?} bounds {:?}", r[0].errors, r[0].bounds);
    }
}
