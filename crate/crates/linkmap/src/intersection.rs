//! Transverse intersection data and the surgery calculus on it.
//!
//! An intersection point is recorded as its sign and the `pi_1` element read
//! off a connecting loop; a list of records sums to the group-ring
//! intersection number lambda. Surgering a disk along a dual curve of class
//! `g` replaces every record by a nearby pair with opposite signs, which
//! multiplies lambda by `(1 - g)`; doing it twice with a meridinal dual
//! produces the `(1-s)^2 q(s)` pattern of the basis spheres.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{GroupElem, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    /// A meridinal dual curve must represent a nontrivial group element;
    /// with g = 1 the factor (1 - g) collapses to 0.
    #[error("meridian must not be the identity")]
    IdentityMeridian,
    #[error("malformed record line: {0:?}")]
    MalformedRecord(String),
}

/// Sign of a transverse intersection point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+" } else { "-" })
    }
}

// Signs travel through JSON as the integers 1 and -1, never as booleans or
// strings, to match the certificate file format.
impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        Sign::from_i64(v).ok_or_else(|| D::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// One transverse intersection point: its sign and the group element
/// `s^elem` carried by a loop through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntersectionRecord {
    pub sign: Sign,
    pub elem: GroupElem,
}

impl IntersectionRecord {
    pub fn new(sign: Sign, exponent: i64) -> Self {
        IntersectionRecord {
            sign,
            elem: GroupElem(exponent),
        }
    }
}

/// The dual-curve data for one surgery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurgeryConfig {
    /// Class of the dual curve's based loop.
    pub dual_elem: GroupElem,
    /// Orientation-convention toggle: push off along the reversed arc, so
    /// the partner record carries g^-1 instead of g.
    pub inverse_dual: bool,
}

impl SurgeryConfig {
    pub fn new(dual_exponent: i64) -> Self {
        SurgeryConfig {
            dual_elem: GroupElem(dual_exponent),
            inverse_dual: false,
        }
    }

    pub fn effective_dual(&self) -> GroupElem {
        if self.inverse_dual {
            self.dual_elem.inverse()
        } else {
            self.dual_elem
        }
    }
}

/// The group-ring intersection number: the signed sum of the points'
/// group elements.
pub fn lambda_sum(points: &[IntersectionRecord]) -> LaurentPoly {
    LaurentPoly::from_terms(points.iter().map(|r| (r.elem.0, r.sign.as_i64())))
}

/// The group element comparing two intersection points of the same pair of
/// surfaces: `lambda_x * lambda_y^-1`.
pub fn relative_elem(x: IntersectionRecord, y: IntersectionRecord) -> GroupElem {
    x.elem.compose(y.elem.inverse())
}

/// Pushes a surgered disk off itself: every input record `(e, a)` yields the
/// adjacent pair `(e, a), (-e, g*a)` in the output, so
/// `lambda_sum(output) = (1 - g) * lambda_sum(input)` exactly.
pub fn surgery_pushoff(
    points: &[IntersectionRecord],
    cfg: &SurgeryConfig,
) -> Vec<IntersectionRecord> {
    let g = cfg.effective_dual();
    let mut out = Vec::with_capacity(points.len() * 2);
    for r in points {
        out.push(*r);
        out.push(IntersectionRecord {
            sign: r.sign.flip(),
            elem: g.compose(r.elem),
        });
    }
    out
}

/// Realizes a basis 2-sphere's intersection pattern with a dual family: the
/// polynomial `q` is laid out as records and surgered twice along a
/// meridinal dual, so the resulting records sum to `(1 - s)^2 q(s)` with
/// `s` the meridian's class.
pub fn basis_sphere_lambda(
    q: &LaurentPoly,
    meridian: GroupElem,
) -> Result<Vec<IntersectionRecord>, IntersectionError> {
    if meridian.is_identity() {
        return Err(IntersectionError::IdentityMeridian);
    }
    let mut records = Vec::new();
    for (exp, c) in q.terms() {
        let sign = if c > 0 { Sign::Plus } else { Sign::Minus };
        for _ in 0..c.unsigned_abs() {
            records.push(IntersectionRecord {
                sign,
                elem: GroupElem(exp),
            });
        }
    }
    let cfg = SurgeryConfig {
        dual_elem: meridian,
        inverse_dual: false,
    };
    Ok(surgery_pushoff(&surgery_pushoff(&records, &cfg), &cfg))
}

/// Record list text form: one record per line, `+ n` or `- n`.
pub fn format_records(points: &[IntersectionRecord]) -> String {
    let mut out = String::new();
    for r in points {
        out.push_str(&format!("{} {}\n", r.sign, r.elem.0));
    }
    out
}

pub fn parse_records(text: &str) -> Result<Vec<IntersectionRecord>, IntersectionError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || IntersectionError::MalformedRecord(line.to_string());
        let (sign, rest) = match line.split_at(1) {
            ("+", rest) => (Sign::Plus, rest),
            ("-", rest) => (Sign::Minus, rest),
            _ => return Err(bad()),
        };
        let exp: i64 = rest.trim().parse().map_err(|_| bad())?;
        out.push(IntersectionRecord::new(sign, exp));
    }
    Ok(out)
}
