//! Exact sparse Laurent-polynomial arithmetic over the integers.
//!
//! Two ambient group rings are modeled here: `Z[s, s^-1]` as [`LaurentPoly`]
//! and `Z[s^±1, t^±1]` as [`BiLaurent`], where the monomial `s^n*t^m` stands
//! for the pair `(s^n, s^m)` of deck transformations. Both types keep a
//! canonical form at all times: a sorted term map with no zero coefficients.
//!
//! All arithmetic is checked. An exponent or coefficient that would overflow
//! an `i64` panics instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors from exact division.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The polynomial is not divisible by `1 - s`; the remainder is what is
    /// left over after subtracting the best `(1 - s)`-multiple.
    #[error("not divisible by 1 - s (remainder {remainder})")]
    NotDivisible { remainder: LaurentPoly },
}

/// Error from parsing the canonical text form of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed polynomial: {0}")]
pub struct ParsePolyError(String);

#[inline]
fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("coefficient overflow: {a} + {b}"))
}

#[inline]
fn mul_coeff(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("coefficient overflow: {a} * {b}"))
}

#[inline]
fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("exponent overflow: {a} + {b}"))
}

/// An element `s^n` of the infinite cyclic group carried by an intersection
/// point or a surgery dual curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(pub i64);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Group composition: exponents add.
    pub fn compose(self, other: GroupElem) -> GroupElem {
        GroupElem(add_exp(self.0, other.0))
    }

    pub fn inverse(self) -> GroupElem {
        GroupElem(
            self.0
                .checked_neg()
                .unwrap_or_else(|| panic!("exponent overflow: -({})", self.0)),
        )
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s^{}", self.0)
    }
}

/// A sparse integer Laurent polynomial in `s`.
///
/// Canonical form: the term map never stores a zero coefficient, so
/// structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// The polynomial `c * s^exp` (zero if `c == 0`).
    pub fn monomial(exp: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// The factor `1 - s` that every surgery pushoff contributes.
    pub fn one_minus_s() -> Self {
        LaurentPoly::from_terms([(0, 1), (1, -1)])
    }

    /// Accumulates `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (exp, c) in iter {
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = add_coeff(*entry, c);
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(add_exp(e1, e2), mul_coeff(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(e, mul_coeff(c, k));
        }
        out
    }

    /// The augmentation `s -> 1`: the signed count of group-ring terms.
    pub fn augment(&self) -> i64 {
        self.terms().fold(0, |acc, (_, c)| add_coeff(acc, c))
    }

    /// Exact division by `1 - s`.
    ///
    /// Synthetic division from the lowest exponent: the quotient coefficients
    /// are the running partial sums of the dividend's coefficients, and the
    /// division is exact precisely when the final partial sum (the
    /// augmentation) vanishes. On failure the leftover `augment(p) * s^hi`
    /// is reported as the remainder.
    pub fn divide_one_minus_s(&self) -> Result<LaurentPoly, AlgebraError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let lo = *self.terms.keys().next().expect("nonzero");
        let hi = *self.terms.keys().next_back().expect("nonzero");
        let mut quotient = LaurentPoly::zero();
        let mut running = 0i64;
        for exp in lo..hi {
            running = add_coeff(running, self.coeff(exp));
            quotient.add_term(exp, running);
        }
        running = add_coeff(running, self.coeff(hi));
        if running != 0 {
            return Err(AlgebraError::NotDivisible {
                remainder: LaurentPoly::monomial(hi, running),
            });
        }
        Ok(quotient)
    }

    /// Strips the `(1-s)^2` factor of a double-surgery intersection
    /// polynomial, returning the cofactor `q` together with `augment(q)`,
    /// the modeled linking number.
    pub fn extract_q(&self) -> Result<(LaurentPoly, i64), AlgebraError> {
        let once = self.divide_one_minus_s()?;
        let q = once.divide_one_minus_s()?;
        let lk = q.augment();
        Ok((q, lk))
    }
}

/// A sparse integer Laurent polynomial in `s` and `t`, ordered
/// lexicographically on the exponent pair `(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), i64>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent::default()
    }

    pub fn one() -> Self {
        BiLaurent::monomial(0, 0, 1)
    }

    /// The polynomial `c * s^n * t^m` (zero if `c == 0`).
    pub fn monomial(n: i64, m: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((n, m), c);
        }
        BiLaurent { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(iter: I) -> Self {
        let mut p = BiLaurent::zero();
        for ((n, m), c) in iter {
            p.add_term(n, m, c);
        }
        p
    }

    pub fn add_term(&mut self, n: i64, m: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((n, m)).or_insert(0);
        *entry = add_coeff(*entry, c);
        if *entry == 0 {
            self.terms.remove(&(n, m));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, n: i64, m: i64) -> i64 {
        self.terms.get(&(n, m)).copied().unwrap_or(0)
    }

    /// Terms in lexicographic `(n, m)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(&nm, &c)| (nm, c))
    }

    pub fn neg(&self) -> Self {
        BiLaurent {
            terms: self.terms.iter().map(|(&nm, &c)| (nm, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((n, m), c) in other.terms() {
            out.add_term(n, m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiLaurent::zero();
        for ((n1, m1), c1) in self.terms() {
            for ((n2, m2), c2) in other.terms() {
                out.add_term(add_exp(n1, n2), add_exp(m1, m2), mul_coeff(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = BiLaurent::zero();
        for ((n, m), c) in self.terms() {
            out.add_term(n, m, mul_coeff(c, k));
        }
        out
    }

    /// The augmentation `s, t -> 1`.
    pub fn augment(&self) -> i64 {
        self.terms().fold(0, |acc, (_, c)| add_coeff(acc, c))
    }
}

// ---------------------------------------------------------------------------
// Text form
//
// Grammar per term: optional sign, optional integer coefficient followed by
// `*`, then `s^<int>` and (for the two-variable ring) optionally `*t^<int>`.
// A bare integer is accepted as a constant term. Output is always in
// canonical order with explicit `s^..`/`t^..` parts.
// ---------------------------------------------------------------------------

fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: i64, mono: &str) -> fmt::Result {
    let mag = c.unsigned_abs();
    if first {
        if c < 0 {
            write!(f, "-")?;
        }
    } else if c < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if mag == 1 {
        write!(f, "{mono}")
    } else {
        write!(f, "{mag}*{mono}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            fmt_term(f, i == 0, c, &format!("s^{e}"))?;
        }
        Ok(())
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((n, m), c)) in self.terms().enumerate() {
            fmt_term(f, i == 0, c, &format!("s^{n}*t^{m}"))?;
        }
        Ok(())
    }
}

/// One parsed term: coefficient, `s`-exponent, optional `t`-exponent.
type RawTerm = (i64, i64, Option<i64>);

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<(), ParsePolyError> {
        match self.bump() {
            Some(got) if got == b => Ok(()),
            got => Err(ParsePolyError(format!(
                "expected '{}' at byte {}, found {:?}",
                b as char,
                self.pos.saturating_sub(1),
                got.map(|g| g as char)
            ))),
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParsePolyError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<i64>()
            .map_err(|_| ParsePolyError(format!("bad integer {text:?} at byte {start}")))
    }

    /// `s^<int>` optionally followed by `*t^<int>`.
    fn parse_mono(&mut self) -> Result<(i64, Option<i64>), ParsePolyError> {
        self.expect(b's')?;
        self.expect(b'^')?;
        let n = self.parse_int()?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            self.expect(b't')?;
            self.expect(b'^')?;
            let m = self.parse_int()?;
            Ok((n, Some(m)))
        } else {
            self.pos = save;
            Ok((n, None))
        }
    }

    fn parse_term(&mut self) -> Result<RawTerm, ParsePolyError> {
        match self.peek() {
            Some(b's') => {
                let (n, m) = self.parse_mono()?;
                Ok((1, n, m))
            }
            Some(b) if b.is_ascii_digit() || b == b'-' => {
                let c = self.parse_int()?;
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    let (n, m) = self.parse_mono()?;
                    Ok((c, n, m))
                } else {
                    self.pos = save;
                    Ok((c, 0, None))
                }
            }
            got => Err(ParsePolyError(format!(
                "expected a term at byte {}, found {:?}",
                self.pos,
                got.map(|g| g as char)
            ))),
        }
    }

    fn parse_poly(&mut self) -> Result<Vec<RawTerm>, ParsePolyError> {
        let mut out = Vec::new();
        self.skip_ws();
        let mut sign = 1i64;
        if self.peek() == Some(b'+') {
            self.pos += 1;
            self.skip_ws();
        } else if self.peek() == Some(b'-') {
            // A leading '-' belongs to the first term's integer when one
            // follows directly; otherwise it negates the monomial.
            if !matches!(self.src.get(self.pos + 1), Some(b) if b.is_ascii_digit()) {
                sign = -1;
                self.pos += 1;
                self.skip_ws();
            }
        }
        let (c, n, m) = self.parse_term()?;
        out.push((mul_coeff(sign, c), n, m));
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(b) => {
                    return Err(ParsePolyError(format!(
                        "expected '+' or '-' at byte {}, found '{}'",
                        self.pos, b as char
                    )))
                }
            }
            self.pos += 1;
            self.skip_ws();
            let (c, n, m) = self.parse_term()?;
            out.push((mul_coeff(sign, c), n, m));
        }
        Ok(out)
    }
}

fn parse_raw(s: &str) -> Result<Vec<RawTerm>, ParsePolyError> {
    let trimmed = s.trim();
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    Cursor::new(trimmed).parse_poly()
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LaurentPoly::zero();
        for (c, n, m) in parse_raw(s)? {
            if m.is_some() {
                return Err(ParsePolyError(
                    "t-part not allowed in a one-variable polynomial".into(),
                ));
            }
            p.add_term(n, c);
        }
        Ok(p)
    }
}

impl FromStr for BiLaurent {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = BiLaurent::zero();
        for (c, n, m) in parse_raw(s)? {
            p.add_term(n, m.unwrap_or(0), c);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl Serialize for BiLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BiLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
