//! Canonical text serialization of series, round-tripping every field
//! bit-exactly.
//!
//! Format (all exponents and coefficients as reduced fractions):
//!
//! ```text
//! QS[d=48,lo=-25,tr=2880]{-25/48:1,71/48:-2}
//! XQS[d=4,qlo=0,qtr=160,xlo=-2,xtr=40]{-2:QS[...];0:QS[...]}
//! ```
//!
//! `tr=exact` marks the exact-truncation sentinel.

use super::{QSeries, XQSeries, EXACT};
use crate::number::Rat;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QS[d={},lo={},tr=", self.denom, self.lo)?;
        if self.trunc == EXACT {
            write!(f, "exact")?;
        } else {
            write!(f, "{}", self.trunc)?;
        }
        write!(f, "]{{")?;
        let mut first = true;
        for (u, c) in self.nonzero_terms() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{}:{}", Rat::from((u, self.denom)), c)?;
        }
        write!(f, "}}")
    }
}

impl FromStr for QSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("QS[")
            .ok_or_else(|| Error::Parse(format!("missing QS header: {s}")))?;
        let (header, rest) = body
            .split_once(']')
            .ok_or_else(|| Error::Parse("unterminated header".into()))?;
        let terms_body = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse("missing term braces".into()))?;
        let mut denom = None;
        let mut lo = None;
        let mut trunc = None;
        for part in header.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field: {part}")))?;
            match k {
                "d" => denom = Some(parse_i64(v)?),
                "lo" => lo = Some(parse_i64(v)?),
                "tr" => trunc = Some(if v == "exact" { EXACT } else { parse_i64(v)? }),
                _ => return Err(Error::Parse(format!("unknown header field: {k}"))),
            }
        }
        let (denom, lo, trunc) = (
            denom.ok_or_else(|| Error::Parse("missing d".into()))?,
            lo.ok_or_else(|| Error::Parse("missing lo".into()))?,
            trunc.ok_or_else(|| Error::Parse("missing tr".into()))?,
        );
        let mut pairs = Vec::new();
        if !terms_body.is_empty() {
            for term in terms_body.split(',') {
                let (e, c) = term
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad term: {term}")))?;
                let e = Rat::from_str(e).map_err(|e| Error::Parse(e.to_string()))?;
                let c = Rat::from_str(c).map_err(|e| Error::Parse(e.to_string()))?;
                let scaled = Rat::from(&e * &Rat::from(denom));
                if scaled.denom().to_i64() != Some(1) {
                    return Err(Error::Parse(format!("exponent {e} not in 1/{denom} units")));
                }
                pairs.push((scaled.numer().to_i64().ok_or_else(|| Error::Parse("overflow".into()))?, c));
            }
        }
        let hi = pairs.iter().map(|(u, _)| u + 1).max().unwrap_or(lo);
        let len = if trunc == EXACT { hi - lo } else { trunc - lo };
        let mut coeffs = vec![Rat::new(); len.max(0) as usize];
        for (u, c) in pairs {
            if u < lo || (trunc != EXACT && u >= trunc) {
                return Err(Error::Parse(format!("term at {u} outside window")));
            }
            coeffs[(u - lo) as usize] = c;
        }
        Ok(QSeries::from_window(denom, lo, coeffs, trunc))
    }
}

impl fmt::Display for XQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (xlo, xtr) = (self.x_window().0, self.x_window().1);
        write!(f, "XQS[d={},qlo={},qtr=", self.qdenom(), self.qlo_units())?;
        match self.q_trunc_exp() {
            None => write!(f, "exact")?,
            Some(_) => write!(f, "{}", self.qtrunc_units())?,
        }
        write!(f, ",xlo={xlo},xtr=")?;
        match xtr {
            None => write!(f, "exact")?,
            Some(t) => write!(f, "{t}")?,
        }
        write!(f, "]{{")?;
        let mut first = true;
        for (xe, s) in self.terms() {
            if !first {
                write!(f, ";")?;
            }
            first = false;
            write!(f, "{xe}:{s}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for XQSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("XQS[")
            .ok_or_else(|| Error::Parse(format!("missing XQS header: {s}")))?;
        let (header, rest) = body
            .split_once(']')
            .ok_or_else(|| Error::Parse("unterminated header".into()))?;
        let terms_body = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse("missing term braces".into()))?;
        let mut fields = BTreeMap::new();
        for part in header.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field: {part}")))?;
            fields.insert(k.to_string(), v.to_string());
        }
        let get = |k: &str| -> Result<i64> {
            let v = fields.get(k).ok_or_else(|| Error::Parse(format!("missing {k}")))?;
            if v == "exact" {
                Ok(EXACT)
            } else {
                parse_i64(v)
            }
        };
        let (qdenom, qlo, qtr, xlo, xtr) =
            (get("d")?, get("qlo")?, get("qtr")?, get("xlo")?, get("xtr")?);
        let mut terms = BTreeMap::new();
        if !terms_body.is_empty() {
            for term in terms_body.split(';') {
                let (xe, qs) = term
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad x-term: {term}")))?;
                terms.insert(parse_i64(xe)?, QSeries::from_str(qs)?.with_denom(qdenom));
            }
        }
        Ok(XQSeries::from_parts(qdenom, qlo, qtr, xlo, xtr, terms))
    }
}

fn parse_i64(s: &str) -> Result<i64> {
    s.parse().map_err(|_| Error::Parse(format!("bad integer: {s}")))
}

impl XQSeries {
    fn qlo_units(&self) -> i64 {
        // exposed for serialization only
        self.q_window_units().0
    }

    fn qtrunc_units(&self) -> i64 {
        self.q_window_units().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{rat, ratio};
    use crate::qseries::{pochhammer, theta_x};

    #[test]
    fn qseries_roundtrip() {
        let s = QSeries::from_window(
            6,
            -3,
            vec![ratio(1, 2), rat(0), rat(0), rat(1), rat(0), rat(0), ratio(-2, 3), rat(0), rat(0)],
            6,
        );
        let text = s.to_string();
        let back: QSeries = text.parse().unwrap();
        assert_eq!(s, back);
        assert_eq!(text, back.to_string());
    }

    #[test]
    fn exact_poly_roundtrip() {
        let s = QSeries::from_coeffs(1, 0, vec![rat(1), rat(-1), rat(2)]);
        let back: QSeries = s.to_string().parse().unwrap();
        assert_eq!(s, back);
        assert!(back.is_exact());
    }

    #[test]
    fn xqseries_roundtrip() {
        let chi = crate::characters::builtin("chi24_0").unwrap();
        let h = theta_x(&chi, 48, 25, 5, 0, &rat(12), 12).unwrap();
        let back: XQSeries = h.to_string().parse().unwrap();
        assert_eq!(h, back);
        let p = pochhammer(&rat(1), 1, &rat(1), &rat(1), None, &rat(8), 6).unwrap();
        let back: XQSeries = p.to_string().parse().unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(QSeries::from_str("QS[d=2,lo=0,tr=4]{1/3:1}").is_err()); // bad units
        assert!(QSeries::from_str("nope").is_err());
        assert!(XQSeries::from_str("XQS[d=1]{}").is_err());
    }
}
