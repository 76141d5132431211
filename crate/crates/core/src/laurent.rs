//! Exact arithmetic in Z[v, v^-1] with the bar and iota involutions.
//!
//! Values are sparse maps from exponent to nonzero integer coefficient,
//! kept normalized so that structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse Laurent polynomial `{0}`")]
pub struct LaurentParseError(String);

fn mul_i64(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

fn add_i64(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c * v^n`.
    pub fn monomial(c: i64, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    pub fn v_pow(n: i64) -> Self {
        LaurentPoly::monomial(1, n)
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut out = LaurentPoly::zero();
        for &(n, c) in terms {
            out = out.add(&LaurentPoly::monomial(c, n));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> i64 {
        self.terms.get(&n).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&n, &c)| (n, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&n, &c) in &other.terms {
            let e = terms.entry(n).or_insert(0);
            *e = add_i64(*e, c);
            if *e == 0 {
                terms.remove(&n);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&n, &c)| (n, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (&n1, &c1) in &self.terms {
            for (&n2, &c2) in &other.terms {
                let e = terms.entry(n1 + n2).or_insert(0);
                *e = add_i64(*e, mul_i64(c1, c2));
            }
        }
        terms.retain(|_, c| *c != 0);
        LaurentPoly { terms }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&n, &k)| (n, mul_i64(k, c))).collect() }
    }

    /// Multiplication by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&m, &c)| (m + n, c)).collect() }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&n, &c)| (-n, c)).collect() }
    }

    /// The involution `v -> -v^-1`: each `c v^n` becomes `(-1)^n c v^-n`.
    pub fn iota(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&n, &c)| (-n, if n.rem_euclid(2) == 1 { -c } else { c }))
                .collect(),
        }
    }

    /// Evaluation at `v = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| add_i64(acc, c))
    }

    /// True iff every exponent is >= 1 (membership in `v Z[v]`).
    pub fn in_v_times_poly(&self) -> bool {
        self.terms.keys().all(|&n| n >= 1)
    }

    /// True iff every exponent is <= -1.
    pub fn in_vinv_times_poly(&self) -> bool {
        self.terms.keys().all(|&n| n <= -1)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Parses the rendering grammar, e.g. `"v^-1 + 2 + v^3"` or `"-2v + 1"`.
    pub fn parse(s: &str) -> Result<Self, LaurentParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentParseError(s.to_string()));
        }
        let mut out = LaurentPoly::zero();
        let mut rest = compact.as_str();
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        }
        while !rest.is_empty() {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(i, c)| (c == '+' || c == '-') && rest.as_bytes()[i - 1] != b'^')
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (tok, tail) = rest.split_at(end);
            out = out.add(&parse_term(tok, sign).ok_or_else(|| LaurentParseError(s.to_string()))?);
            rest = tail;
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                sign = 1;
                rest = r;
            } else if !rest.is_empty() {
                return Err(LaurentParseError(s.to_string()));
            }
        }
        Ok(out)
    }
}

fn parse_term(tok: &str, sign: i64) -> Option<LaurentPoly> {
    let tok = tok.trim_end_matches('*');
    if let Some(vpos) = tok.find('v') {
        let (coeff_str, v_part) = tok.split_at(vpos);
        let coeff_str = coeff_str.trim_end_matches('*');
        let c: i64 = if coeff_str.is_empty() { 1 } else { coeff_str.parse().ok()? };
        let exp: i64 = match v_part.strip_prefix('v') {
            Some("") => 1,
            Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
            None => return None,
        };
        Some(LaurentPoly::monomial(sign * c, exp))
    } else {
        let c: i64 = tok.parse().ok()?;
        Some(LaurentPoly::monomial(sign * c, 0))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&n, &c) in &self.terms {
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.unsigned_abs();
            match n {
                0 => write!(f, "{a}")?,
                1 => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "v")?;
                }
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "v^{n}")?;
                }
            }
        }
        Ok(())
    }
}
