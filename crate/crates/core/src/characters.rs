//! Integer-valued periodic functions with mean zero, the built-in tables,
//! minimal-model characters, Legendre-symbol characters, and exhaustive
//! verification of the character-level relations the identity proofs use.

use crate::number::rem_euclid;
use crate::{Error, Result};
use serde::Serialize;

/// Periodic integer-valued function on the integers with period `modulus`
/// and mean value zero over one period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicChar {
    modulus: i64,
    values: Vec<i64>,
    label: String,
}

impl PeriodicChar {
    /// Build from one period of values (index = residue). Errors unless the
    /// values sum to zero.
    pub fn new(modulus: i64, values: Vec<i64>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        assert!(modulus >= 1 && values.len() == modulus as usize);
        if values.iter().sum::<i64>() != 0 {
            return Err(Error::NonZeroMean(label));
        }
        Ok(PeriodicChar { modulus, values, label })
    }

    /// From a sparse table `{residue: value}`; other residues are zero.
    pub fn from_table(modulus: i64, table: &[(i64, i64)], label: impl Into<String>) -> Result<Self> {
        let mut values = vec![0i64; modulus as usize];
        for &(r, v) in table {
            values[rem_euclid(r, modulus) as usize] += v;
        }
        Self::new(modulus, values, label)
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at any integer via reduction mod the period.
    pub fn value(&self, n: i64) -> i64 {
        self.values[rem_euclid(n, self.modulus) as usize]
    }

    /// Shifted/dilated value `chi((n - shift)/dilate)`: zero unless
    /// `dilate | (n - shift)`.
    pub fn value_shift_dilate(&self, n: i64, shift: i64, dilate: i64) -> i64 {
        debug_assert!(dilate >= 1);
        let d = n - shift;
        if d.rem_euclid(dilate) != 0 {
            0
        } else {
            self.value(d / dilate)
        }
    }

    /// True when `chi(-n) = chi(n)` for all n.
    pub fn is_even(&self) -> bool {
        (0..self.modulus).all(|n| self.value(n) == self.value(-n))
    }
}

/// The built-in tables. Names: `chi24_0`, `chi24_1`, `chi12`, `chi24`,
/// `chi6`, `chi6_tilde`, `chi10_0`, `chi10_1`.
pub fn builtin(name: &str) -> Result<PeriodicChar> {
    let (modulus, table): (i64, &[(i64, i64)]) = match name {
        "chi24_0" => (24, &[(5, 1), (11, -1), (13, -1), (19, 1)]),
        "chi24_1" => (24, &[(1, 1), (7, -1), (17, -1), (23, 1)]),
        "chi12" => (12, &[(1, 1), (5, -1), (7, -1), (11, 1)]),
        "chi24" => (24, &[(1, 1), (5, 1), (7, -1), (11, -1), (13, -1), (17, -1), (19, 1), (23, 1)]),
        "chi6" => (6, &[(1, 1), (5, -1)]),
        "chi6_tilde" => (6, &[(2, 1), (4, -1)]),
        "chi10_0" => (10, &[(3, 1), (7, -1)]),
        "chi10_1" => (10, &[(1, 1), (9, -1)]),
        _ => return Err(Error::UnknownCharacter(name.to_string())),
    };
    PeriodicChar::from_table(modulus, table, name)
}

/// Minimal-model character: modulus `2st`, `+1` at `±(nt - ms)`, `-1` at
/// `±(nt + ms)`.
pub fn minimal_model_char(s: i64, t: i64, n: i64, m: i64) -> Result<PeriodicChar> {
    if gcd(s, t) != 1 || !(1 <= n && n <= s - 1) || !(1 <= m && m <= t - 1) {
        return Err(Error::InvalidParam(format!(
            "minimal model character needs gcd(s,t)=1, 1<=n<=s-1, 1<=m<=t-1; got ({s},{t},{n},{m})"
        )));
    }
    let f = 2 * s * t;
    let a = n * t - m * s;
    let b = n * t + m * s;
    // the four support points are distinct under the preconditions
    assert!(
        rem_euclid(a, f) != rem_euclid(b, f) && rem_euclid(a, f) != rem_euclid(-b, f),
        "degenerate support"
    );
    PeriodicChar::from_table(
        f,
        &[(a, 1), (-a, 1), (b, -1), (-b, -1)],
        format!("chi{}_{{{n},{m}}}", f),
    )
}

/// Kronecker–Legendre character `n -> (D/n)` for `D` in `{12, 24}`.
pub fn legendre_char(d: i64) -> Result<PeriodicChar> {
    if d != 12 && d != 24 {
        return Err(Error::UnsupportedLegendre(d));
    }
    let values: Vec<i64> = (0..d).map(|n| kronecker(d, n)).collect();
    PeriodicChar::new(d, values, format!("legendre{d}"))
}

/// Kronecker symbol `(a/n)` for `n >= 0`.
fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return i64::from(a == 1 || a == -1);
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    // factor out 2s from n: (a/2) = 0 if a even, else (-1)^((a^2-1)/8)
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = rem_euclid(a, 8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    a = rem_euclid(a, n);
    // Jacobi symbol by quadratic reciprocity
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = rem_euclid(n, 8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if rem_euclid(a, 4) == 3 && rem_euclid(n, 4) == 3 {
            result = -result;
        }
        a = rem_euclid(a, n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Outcome of one character-level relation check.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub period_checked: i64,
    pub passed: bool,
    pub first_failure: Option<i64>,
}

fn check(relation: impl Into<String>, period: i64, f: impl Fn(i64) -> bool) -> RelationCheck {
    let first_failure = (0..period).find(|&n| !f(n));
    RelationCheck {
        relation: relation.into(),
        period_checked: period,
        passed: first_failure.is_none(),
        first_failure,
    }
}

/// Exhaustively verify every character relation the identity proofs rely on,
/// one full period each.
pub fn verify_char_relations() -> Vec<RelationCheck> {
    let chi24_0 = builtin("chi24_0").unwrap();
    let chi24_1 = builtin("chi24_1").unwrap();
    let chi12 = builtin("chi12").unwrap();
    let chi24 = builtin("chi24").unwrap();
    let chi6 = builtin("chi6").unwrap();
    let chi6t = builtin("chi6_tilde").unwrap();
    let chi10_0 = builtin("chi10_0").unwrap();
    let chi10_1 = builtin("chi10_1").unwrap();

    let mut out = Vec::new();

    out.push(check("-chi24_0 + chi24_1 = chi12", 24, |n| {
        -chi24_0.value(n) + chi24_1.value(n) == chi12.value(n)
    }));
    out.push(check("chi24_0 + chi24_1 = chi24", 24, |n| {
        chi24_0.value(n) + chi24_1.value(n) == chi24.value(n)
    }));
    out.push(check("chi12 = (12/n) Legendre", 12, |n| {
        chi12.value(n) == legendre_char(12).unwrap().value(n)
    }));
    out.push(check("chi24 = (24/n) Legendre", 24, |n| {
        chi24.value(n) == legendre_char(24).unwrap().value(n)
    }));

    // chi12(2k+3) chi12(n) = sum_{a=0}^{k-1} (-1)^{a-1} chi_{12k}^{(1,2a+1)}(n)
    for k in [2i64, 4] {
        let lhs_scale = chi12.value(2 * k + 3);
        let chi12 = chi12.clone();
        let parts: Vec<PeriodicChar> = (0..k)
            .map(|a| minimal_model_char(3, 2 * k, 1, 2 * a + 1).unwrap())
            .collect();
        out.push(check(
            format!("chi12(2k+3) chi12 = sum_a (-1)^(a-1) chi_(12k)^(1,2a+1), k={k}"),
            2 * 12 * k,
            move |n| {
                let rhs: i64 = parts
                    .iter()
                    .enumerate()
                    .map(|(a, chi)| if a % 2 == 0 { -chi.value(n) } else { chi.value(n) })
                    .sum();
                lhs_scale * chi12.value(n) == rhs
            },
        ));
    }

    // mod-30 decompositions behind the M(3,5) identities
    let chi30 = |m: i64| minimal_model_char(3, 5, 1, m).unwrap();
    out.push(check("chi30^(1,1)(n) = -chi6((n-3)/5) + chi6((n+3)/5)", 30, |n| {
        chi30(1).value(n) == -chi6.value_shift_dilate(n, 3, 5) + chi6.value_shift_dilate(n, -3, 5)
    }));
    out.push(check("chi30^(1,2)(n) = -chi6((n-6)/5) + chi6((n+6)/5)", 30, |n| {
        chi30(2).value(n) == -chi6.value_shift_dilate(n, 6, 5) + chi6.value_shift_dilate(n, -6, 5)
    }));
    out.push(check("chi30^(1,3)(n) = -chi10_0((n-5)/3) + chi10_0((n+5)/3)", 30, |n| {
        chi30(3).value(n)
            == -chi10_0.value_shift_dilate(n, 5, 3) + chi10_0.value_shift_dilate(n, -5, 3)
    }));
    out.push(check("chi30^(1,4)(n) = -chi10_1((n-10)/3) + chi10_1((n+10)/3)", 30, |n| {
        chi30(4).value(n)
            == -chi10_1.value_shift_dilate(n, 10, 3) + chi10_1.value_shift_dilate(n, -10, 3)
    }));
    for a in 1..=3i64 {
        let lhs = chi30(5 - a);
        let chi6t = chi6t.clone();
        out.push(check(
            format!("chi30^(1,{}) = -chi6~((n-3a)/5) + chi6~((n+3a)/5), a={a}", 5 - a),
            30,
            move |n| {
                lhs.value(n)
                    == -chi6t.value_shift_dilate(n, 3 * a, 5)
                        + chi6t.value_shift_dilate(n, -3 * a, 5)
            },
        ));
    }

    out
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_chi24_0_table() {
        let chi = builtin("chi24_0").unwrap();
        assert_eq!(chi.value(5), 1);
        assert_eq!(chi.value(11), -1);
        assert_eq!(chi.value(13), -1);
        assert_eq!(chi.value(19), 1);
        assert_eq!(chi.value(29), 1); // periodicity
        assert_eq!(chi.value(0), 0);
        assert_eq!(chi.value(7), 0);
    }

    #[test]
    fn builtin_chi6_tilde() {
        let chi = builtin("chi6_tilde").unwrap();
        assert_eq!(chi.value(2), 1);
        assert_eq!(chi.value(4), -1);
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(builtin("bogus"), Err(Error::UnknownCharacter(_))));
    }

    #[test]
    fn all_builtins_mean_zero_and_even_support() {
        for name in ["chi24_0", "chi24_1", "chi12", "chi24", "chi6", "chi6_tilde", "chi10_0", "chi10_1"]
        {
            let chi = builtin(name).unwrap();
            assert_eq!(chi.values().iter().sum::<i64>(), 0, "{name} mean");
        }
    }

    #[test]
    fn mean_zero_enforced() {
        assert!(matches!(
            PeriodicChar::new(3, vec![1, 0, 0], "bad"),
            Err(Error::NonZeroMean(_))
        ));
    }

    #[test]
    fn minimal_model_reproduces_builtins() {
        let chi = minimal_model_char(3, 4, 1, 3).unwrap();
        let b = builtin("chi24_0").unwrap();
        assert_eq!(chi.values(), b.values());
        let chi = minimal_model_char(3, 4, 1, 1).unwrap();
        let b = builtin("chi24_1").unwrap();
        assert_eq!(chi.values(), b.values());
        let chi = minimal_model_char(2, 3, 1, 1).unwrap();
        let b = builtin("chi12").unwrap();
        assert_eq!(chi.values(), b.values());
    }

    #[test]
    fn legendre_tables() {
        let l12 = legendre_char(12).unwrap();
        for (n, v) in [(1, 1), (5, -1), (7, -1), (11, 1)] {
            assert_eq!(l12.value(n), v, "(12/{n})");
        }
        let l24 = legendre_char(24).unwrap();
        for n in [1, 5, 19, 23] {
            assert_eq!(l24.value(n), 1, "(24/{n})");
        }
        for n in [7, 11, 13, 17] {
            assert_eq!(l24.value(n), -1, "(24/{n})");
        }
        for n in (0..24).step_by(2) {
            assert_eq!(l24.value(n), 0, "(24/{n}) even");
        }
        assert!(matches!(legendre_char(8), Err(Error::UnsupportedLegendre(8))));
    }

    #[test]
    fn all_relations_pass() {
        for r in verify_char_relations() {
            assert!(r.passed, "relation failed: {} at n={:?}", r.relation, r.first_failure);
        }
    }

    #[test]
    fn shift_dilate_gating() {
        let chi6 = builtin("chi6").unwrap();
        // chi6((8-3)/5) = chi6(1) = 1; chi6((9-3)/5) gated to 0
        assert_eq!(chi6.value_shift_dilate(8, 3, 5), 1);
        assert_eq!(chi6.value_shift_dilate(9, 3, 5), 0);
        // negative arguments reduce mod the period
        assert_eq!(chi6.value_shift_dilate(-2, 3, 5), chi6.value(-1));
    }
}
