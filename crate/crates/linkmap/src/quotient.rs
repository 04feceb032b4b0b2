//! The quotient ring Pi(X-, f+) of `Z[s^±1, t^±1]` by the relations T1-T4,
//! made executable three independent ways:
//!
//! 1. a closed-form normal-form map [`nf`] onto `Z2⟨t : t^2 = 1⟩`,
//! 2. constructive certificates ([`certify_nf`]) expressing each
//!    `s^n t^m - t^bit` as an explicit integer combination of relation
//!    instances, checkable by exact polynomial arithmetic, and
//! 3. a finite-window Smith-normal-form diagnostic ([`window_report`]) over
//!    the relation lattice.
//!
//! The certificate generator replays a fixed induction; it never searches.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::BiLaurent;
use crate::snf::smith_normal_form;

/// Largest |n|, |m| accepted by [`certify_nf`]. Certificate length grows
/// linearly and coefficients quadratically in the exponents, so this cap
/// keeps everything comfortably inside i64.
pub const CERT_RANGE_LIMIT: i64 = 1024;

/// Largest window accepted by [`window_report`]; the relation matrix at
/// N = 12 is already 1850 x 625.
pub const WINDOW_LIMIT: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("certification range exceeded: ({n}, {m}) outside [-{CERT_RANGE_LIMIT}, {CERT_RANGE_LIMIT}]^2")]
    RangeExceeded { n: i64, m: i64 },
    #[error("window too large: N = {0} exceeds {WINDOW_LIMIT}")]
    WindowTooLarge(i64),
    #[error("window must be at least 1, got {0}")]
    WindowTooSmall(i64),
    #[error("malformed certificate text: {0}")]
    MalformedCertificate(String),
}

/// An element of Pi(X-, f+) in normal form: `c1 + ct * t` with bit
/// coefficients, the group ring `Z2⟨t : t^2 = 1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiElement {
    pub c1: bool,
    pub ct: bool,
}

impl PiElement {
    pub const ZERO: PiElement = PiElement {
        c1: false,
        ct: false,
    };
    pub const ONE: PiElement = PiElement {
        c1: true,
        ct: false,
    };
    pub const T: PiElement = PiElement {
        c1: false,
        ct: true,
    };
    pub const ONE_PLUS_T: PiElement = PiElement { c1: true, ct: true };

    pub fn is_zero(self) -> bool {
        !self.c1 && !self.ct
    }

    /// `(1 + t) * omega` for a bit omega: the theorem's right-hand side.
    pub fn one_plus_t_times(omega: u8) -> PiElement {
        if omega % 2 == 1 {
            PiElement::ONE_PLUS_T
        } else {
            PiElement::ZERO
        }
    }
}

/// Addition in a characteristic-2 ring: componentwise XOR.
impl std::ops::Add for PiElement {
    type Output = PiElement;

    fn add(self, other: PiElement) -> PiElement {
        PiElement {
            c1: self.c1 ^ other.c1,
            ct: self.ct ^ other.ct,
        }
    }
}

impl fmt::Display for PiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match (self.c1, self.ct) {
            (false, false) => "0",
            (true, false) => "1",
            (false, true) => "t",
            (true, true) => "1+t",
        };
        write!(f, "{text}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a Pi element: {0:?} (expected 0, 1, t, or 1+t)")]
pub struct ParsePiError(String);

impl FromStr for PiElement {
    type Err = ParsePiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(PiElement::ZERO),
            "1" => Ok(PiElement::ONE),
            "t" => Ok(PiElement::T),
            "1+t" => Ok(PiElement::ONE_PLUS_T),
            other => Err(ParsePiError(other.to_string())),
        }
    }
}

impl Serialize for PiElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The four relation families presenting Pi(X-, f+).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    T1,
    T2,
    T3,
    T4,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            RelationKind::T1 => "T1",
            RelationKind::T2 => "T2",
            RelationKind::T3 => "T3",
            RelationKind::T4 => "T4",
        };
        write!(f, "{text}")
    }
}

impl FromStr for RelationKind {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T1" => Ok(RelationKind::T1),
            "T2" => Ok(RelationKind::T2),
            "T3" => Ok(RelationKind::T3),
            "T4" => Ok(RelationKind::T4),
            other => Err(QuotientError::MalformedCertificate(format!(
                "unknown relation kind {other:?}"
            ))),
        }
    }
}

/// One concrete relation generator with integer parameters. `m` is carried
/// for all kinds but ignored by T1; the constructors pin it to 0 there so
/// equal instances compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub n: i64,
    pub m: i64,
}

impl RelationInstance {
    pub fn t1(n: i64) -> Self {
        RelationInstance {
            kind: RelationKind::T1,
            n,
            m: 0,
        }
    }

    pub fn t2(n: i64, m: i64) -> Self {
        RelationInstance {
            kind: RelationKind::T2,
            n,
            m,
        }
    }

    pub fn t3(n: i64, m: i64) -> Self {
        RelationInstance {
            kind: RelationKind::T3,
            n,
            m,
        }
    }

    pub fn t4(n: i64, m: i64) -> Self {
        RelationInstance {
            kind: RelationKind::T4,
            n,
            m,
        }
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.n, self.m)
    }
}

impl FromStr for RelationInstance {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QuotientError::MalformedCertificate(format!("bad relation instance {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        let close = s.strip_suffix(')').ok_or_else(bad)?;
        let kind: RelationKind = s[..open].parse()?;
        let params: Vec<&str> = close[open + 1..].split(',').collect();
        if params.len() != 2 {
            return Err(bad());
        }
        let n: i64 = params[0].trim().parse().map_err(|_| bad())?;
        let m: i64 = params[1].trim().parse().map_err(|_| bad())?;
        Ok(match kind {
            RelationKind::T1 => RelationInstance::t1(n),
            _ => RelationInstance { kind, n, m },
        })
    }
}

/// Expands a relation instance to its group-ring element:
///
/// * T1: `s^n t^n - s^n`
/// * T2: `s^n t^m + s^-n t^(m-n)`
/// * T3: `s^n t^m + s^m t^n`
/// * T4: `s^n t^m - 2 s^n t^(m+1) + s^n t^(m+2)`
pub fn expand_relation(r: RelationInstance) -> BiLaurent {
    let mut p = BiLaurent::zero();
    match r.kind {
        RelationKind::T1 => {
            p.add_term(r.n, r.n, 1);
            p.add_term(r.n, 0, -1);
        }
        RelationKind::T2 => {
            p.add_term(r.n, r.m, 1);
            p.add_term(-r.n, r.m - r.n, 1);
        }
        RelationKind::T3 => {
            p.add_term(r.n, r.m, 1);
            p.add_term(r.m, r.n, 1);
        }
        RelationKind::T4 => {
            p.add_term(r.n, r.m, 1);
            p.add_term(r.n, r.m + 1, -2);
            p.add_term(r.n, r.m + 2, 1);
        }
    }
    p
}

/// The exponent bit `(n + n*m + m) mod 2`, computed on parities so no
/// product can overflow.
fn parity_bit(n: i64, m: i64) -> u8 {
    let np = n.rem_euclid(2);
    let mp = m.rem_euclid(2);
    ((np + np * mp + mp) % 2) as u8
}

/// The normal-form map onto `Z2⟨t : t^2 = 1⟩`: each monomial `c * s^n t^m`
/// contributes `(c mod 2) * t^((n + nm + m) mod 2)` and contributions
/// XOR-accumulate.
pub fn nf(p: &BiLaurent) -> PiElement {
    let mut acc = PiElement::ZERO;
    for ((n, m), c) in p.terms() {
        if c.rem_euclid(2) == 1 {
            acc = acc
                + if parity_bit(n, m) == 1 {
                    PiElement::T
                } else {
                    PiElement::ONE
                };
        }
    }
    acc
}

/// The map phi_f, extended Z2-linearly from
/// `(a, b) -> t^(rho(a) + rho(a)rho(b) + rho(b))` with rho = exponent
/// parity. Agrees with [`nf`] pointwise; kept as a separate entry point
/// because it is defined before the normal form is available, and the
/// agreement of the two code paths is itself a tested property.
pub fn phi(p: &BiLaurent) -> PiElement {
    let mut count = [0i64; 2];
    for ((a, b), c) in p.terms() {
        let rho_a = a.rem_euclid(2);
        let rho_b = b.rem_euclid(2);
        let e = ((rho_a + rho_a * rho_b + rho_b) % 2) as usize;
        count[e] = count[e]
            .checked_add(c)
            .unwrap_or_else(|| panic!("coefficient overflow in phi"));
    }
    PiElement {
        c1: count[0].rem_euclid(2) == 1,
        ct: count[1].rem_euclid(2) == 1,
    }
}

/// A machine-checkable witness that `s^n t^m` is congruent to `t^nf_bit`
/// modulo the relations: an integer combination of relation instances whose
/// expansions telescope exactly to `s^n t^m - t^nf_bit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NFCertificate {
    pub target: (i64, i64),
    pub nf_bit: u8,
    /// `(coefficient, instance)` entries, sorted by instance.
    pub combo: Vec<(i64, RelationInstance)>,
}

impl fmt::Display for NFCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "target {} {} nf {}",
            self.target.0, self.target.1, self.nf_bit
        )?;
        for (c, inst) in &self.combo {
            writeln!(f, "{c} {inst}")?;
        }
        Ok(())
    }
}

impl FromStr for NFCertificate {
    type Err = QuotientError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |line: &str| QuotientError::MalformedCertificate(format!("bad line {line:?}"));
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| QuotientError::MalformedCertificate("empty certificate".into()))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let &[tag, n, m, nf_tag, bit] = tokens.as_slice() else {
            return Err(bad(header));
        };
        if tag != "target" || nf_tag != "nf" {
            return Err(bad(header));
        }
        let target = (
            n.parse().map_err(|_| bad(header))?,
            m.parse().map_err(|_| bad(header))?,
        );
        let nf_bit: u8 = bit.parse().map_err(|_| bad(header))?;
        let mut combo = Vec::new();
        for line in lines {
            let mut parts = line.trim().splitn(2, ' ');
            let coeff: i64 = parts
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| bad(line))?;
            let inst: RelationInstance = parts.next().ok_or_else(|| bad(line))?.trim().parse()?;
            combo.push((coeff, inst));
        }
        Ok(NFCertificate {
            target,
            nf_bit,
            combo,
        })
    }
}

/// Checks a certificate by exact arithmetic: true iff
/// `sum coeff * expand(instance) == s^n t^m - t^nf_bit`.
pub fn verify_certificate(cert: &NFCertificate) -> bool {
    let mut sum = BiLaurent::zero();
    for (c, inst) in &cert.combo {
        sum = sum.add(&expand_relation(*inst).scale(*c));
    }
    let mut expect = BiLaurent::monomial(cert.target.0, cert.target.1, 1);
    expect.add_term(0, i64::from(cert.nf_bit), -1);
    sum == expect
}

// ---------------------------------------------------------------------------
// Certificate construction.
//
// The generator composes four families of pre-proved combinations, each an
// exact identity of Laurent polynomials:
//
//   2T(m):    T2(0,m)                                      = 2 t^m
//   TM(m):    telescoping T4(0,_) ladder                   = t^m - t^(m mod 2)
//   STM(k):   T3/T1 base cases plus a T4(1,_) ladder       = s t^k - t
//   G(n,m):   T3(n,0|1) base cases plus a T4(n,_) ladder   = s^n t^m - t^bit
//
// Each ladder step is the second-difference identity
//   X t^j = 2 X t^(j-1) - X t^(j-2) + expand(T4(.., j-2)),
// with 2t-corrections keeping the right-hand tail pinned at t^bit. All
// recurrences are evaluated iteratively with two rolling accumulators.
// ---------------------------------------------------------------------------

type Combo = BTreeMap<RelationInstance, i64>;

fn combo_add(c: &mut Combo, coeff: i64, inst: RelationInstance) {
    if coeff == 0 {
        return;
    }
    let entry = c.entry(inst).or_insert(0);
    *entry = entry
        .checked_add(coeff)
        .unwrap_or_else(|| panic!("certificate coefficient overflow"));
    if *entry == 0 {
        c.remove(&inst);
    }
}

fn combo_add_scaled(dst: &mut Combo, src: &Combo, k: i64) {
    for (inst, c) in src {
        let scaled = c
            .checked_mul(k)
            .unwrap_or_else(|| panic!("certificate coefficient overflow"));
        combo_add(dst, scaled, *inst);
    }
}

/// Proves `2 t^m = 0`: the degenerate T2 instance with n = 0.
fn combo_2t(m: i64) -> Combo {
    let mut c = Combo::new();
    combo_add(&mut c, 1, RelationInstance::t2(0, m));
    c
}

/// Proves `t^m - t^(m mod 2) = 0`. Pure telescoping, no scaling: each rung
/// contributes T4(0, j) + T2(0, j+1) - T2(0, j+2) = t^j - t^(j+2).
fn combo_tm(m: i64) -> Combo {
    let mut c = Combo::new();
    let base = m.rem_euclid(2);
    if m >= 2 {
        let mut j = base + 2;
        while j <= m {
            combo_add(&mut c, 1, RelationInstance::t4(0, j - 2));
            combo_add(&mut c, 1, RelationInstance::t2(0, j - 1));
            combo_add(&mut c, -1, RelationInstance::t2(0, j - 2));
            j += 2;
        }
    } else if m <= -1 {
        let mut j = base - 2;
        while j >= m {
            combo_add(&mut c, 1, RelationInstance::t4(0, j));
            combo_add(&mut c, 1, RelationInstance::t2(0, j + 1));
            combo_add(&mut c, -1, RelationInstance::t2(0, j + 2));
            j -= 2;
        }
    }
    c
}

/// Proves `s t^k - t = 0`. Bases: `s - t = T3(1,0) - T2(0,1)` and
/// `s t - t = T1(1) + (s - t)`; the ladder runs on T4(1, _).
fn combo_stm(k: i64) -> Combo {
    let mut stm0 = Combo::new();
    combo_add(&mut stm0, 1, RelationInstance::t3(1, 0));
    combo_add(&mut stm0, -1, RelationInstance::t2(0, 1));
    let mut stm1 = stm0.clone();
    combo_add(&mut stm1, 1, RelationInstance::t1(1));
    match k {
        0 => stm0,
        1 => stm1,
        _ if k >= 2 => {
            let (mut below, mut at) = (stm0, stm1);
            for j in 2..=k {
                let mut next = Combo::new();
                combo_add_scaled(&mut next, &at, 2);
                combo_add_scaled(&mut next, &below, -1);
                combo_add(&mut next, 1, RelationInstance::t4(1, j - 2));
                below = at;
                at = next;
            }
            at
        }
        _ => {
            let (mut above, mut at) = (stm1, stm0);
            for j in (k..=-1).rev() {
                let mut next = Combo::new();
                combo_add_scaled(&mut next, &at, 2);
                combo_add_scaled(&mut next, &above, -1);
                combo_add(&mut next, 1, RelationInstance::t4(1, j));
                above = at;
                at = next;
            }
            at
        }
    }
}

/// Proves `s^n t^m - t^((n + nm + m) mod 2) = 0` for any exponents.
fn combo_general(n: i64, m: i64) -> Combo {
    if n == 0 {
        return combo_tm(m);
    }
    // G(n, 0): fold s^n over to t^n with T3, then straighten the tail.
    let mut g0 = Combo::new();
    combo_add(&mut g0, 1, RelationInstance::t3(n, 0));
    combo_add_scaled(&mut g0, &combo_tm(n), -1);
    combo_add_scaled(&mut g0, &combo_2t(n.rem_euclid(2)), -1);
    // G(n, 1): fold s^n t over to s t^n with T3, then use STM.
    let mut g1 = Combo::new();
    combo_add(&mut g1, 1, RelationInstance::t3(n, 1));
    combo_add_scaled(&mut g1, &combo_stm(n), -1);
    combo_add_scaled(&mut g1, &combo_2t(1), -1);
    match m {
        0 => g0,
        1 => g1,
        _ if m >= 2 => {
            let (mut below, mut at) = (g0, g1);
            for j in 2..=m {
                let mut next = Combo::new();
                combo_add_scaled(&mut next, &at, 2);
                combo_add_scaled(&mut next, &below, -1);
                combo_add(&mut next, 1, RelationInstance::t4(n, j - 2));
                combo_add_scaled(&mut next, &combo_2t(i64::from(parity_bit(n, j - 1))), 1);
                combo_add_scaled(&mut next, &combo_2t(i64::from(parity_bit(n, j))), -1);
                below = at;
                at = next;
            }
            at
        }
        _ => {
            let (mut above, mut at) = (g1, g0);
            for j in (m..=-1).rev() {
                let mut next = Combo::new();
                combo_add_scaled(&mut next, &at, 2);
                combo_add_scaled(&mut next, &above, -1);
                combo_add(&mut next, 1, RelationInstance::t4(n, j));
                combo_add_scaled(&mut next, &combo_2t(i64::from(parity_bit(n, j + 1))), 1);
                combo_add_scaled(&mut next, &combo_2t(i64::from(parity_bit(n, j))), -1);
                above = at;
                at = next;
            }
            at
        }
    }
}

/// Builds the certificate for `s^n t^m ≡ t^((n + nm + m) mod 2)`
/// deterministically; the construction is a fixed induction, not a search.
pub fn certify_nf(n: i64, m: i64) -> Result<NFCertificate, QuotientError> {
    if n.abs() > CERT_RANGE_LIMIT || m.abs() > CERT_RANGE_LIMIT {
        return Err(QuotientError::RangeExceeded { n, m });
    }
    let combo = combo_general(n, m)
        .into_iter()
        .map(|(inst, c)| (c, inst))
        .collect();
    Ok(NFCertificate {
        target: (n, m),
        nf_bit: parity_bit(n, m),
        combo,
    })
}

// ---------------------------------------------------------------------------
// Window diagnostics.
// ---------------------------------------------------------------------------

/// Diagnostics for the relation lattice truncated to the exponent window
/// `[-N, N]^2`. Soundness is window-independent; completeness at a finite
/// window is NOT claimed (relations reaching across the boundary are
/// missing), so the invariant factors are reported as data, not as a
/// presentation of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDiagnostics {
    pub window: i64,
    pub monomials: usize,
    pub instances: usize,
    pub lattice_rank: usize,
    pub invariant_factors: Vec<i64>,
    pub soundness: bool,
    pub independence: bool,
}

impl fmt::Display for WindowDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window: {}", self.window)?;
        writeln!(f, "monomials: {}", self.monomials)?;
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(f, "lattice_rank: {}", self.lattice_rank)?;
        let factors: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect();
        writeln!(f, "invariant_factors: {}", factors.join(" "))?;
        writeln!(f, "soundness: {}", u8::from(self.soundness))?;
        writeln!(f, "independence: {}", u8::from(self.independence))
    }
}

/// All relation instances whose expansions lie entirely inside the window,
/// in a fixed enumeration order (T1, T2, T3, T4; parameters ascending).
fn window_instances(n_win: i64) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    for n in -n_win..=n_win {
        out.push(RelationInstance::t1(n));
    }
    for n in -n_win..=n_win {
        for m in -n_win..=n_win {
            if (m - n).abs() <= n_win {
                out.push(RelationInstance::t2(n, m));
            }
        }
    }
    for n in -n_win..=n_win {
        for m in -n_win..=n_win {
            out.push(RelationInstance::t3(n, m));
        }
    }
    for n in -n_win..=n_win {
        for m in -n_win..=n_win - 2 {
            out.push(RelationInstance::t4(n, m));
        }
    }
    out
}

/// F2 row span with rows keyed by leading column; reduction in ascending
/// key order settles each bit exactly once.
struct F2Span {
    words: usize,
    rows: BTreeMap<usize, Vec<u64>>,
}

impl F2Span {
    fn new(width: usize) -> Self {
        F2Span {
            words: width.div_ceil(64),
            rows: BTreeMap::new(),
        }
    }

    fn zero_vec(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (&lead, row) in &self.rows {
            if v[lead / 64] >> (lead % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<u64>) {
        let r = self.reduce(v);
        if let Some(lead) = leading_bit(&r) {
            self.rows.insert(lead, r);
        }
    }

    fn contains(&self, v: Vec<u64>) -> bool {
        leading_bit(&self.reduce(v)).is_none()
    }
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Expansion coefficients of the given relation instances over the window's
/// monomial basis, columns in lexicographic `(n, m)` order.
fn window_matrix(n_win: i64, instances: &[RelationInstance]) -> Vec<Vec<i128>> {
    let side = (2 * n_win + 1) as usize;
    let col = |n: i64, m: i64| ((n + n_win) as usize) * side + (m + n_win) as usize;
    instances
        .iter()
        .map(|inst| {
            let mut row = vec![0i128; side * side];
            for ((n, m), c) in expand_relation(*inst).terms() {
                row[col(n, m)] = i128::from(c);
            }
            row
        })
        .collect()
}

/// Runs the window diagnostic: enumerates in-window relation instances,
/// checks that [`nf`] kills each one, diagonalizes the relation lattice, and
/// checks that the classes of 1 and t stay independent in the mod-2 window
/// quotient.
pub fn window_report(n_win: i64) -> Result<WindowDiagnostics, QuotientError> {
    if n_win < 1 {
        return Err(QuotientError::WindowTooSmall(n_win));
    }
    if n_win > WINDOW_LIMIT {
        return Err(QuotientError::WindowTooLarge(n_win));
    }
    let instances = window_instances(n_win);
    let soundness = instances
        .iter()
        .all(|inst| nf(&expand_relation(*inst)).is_zero());

    let matrix = window_matrix(n_win, &instances);
    let side = (2 * n_win + 1) as usize;
    let monomials = side * side;
    let snf = smith_normal_form(&matrix);
    let invariant_factors: Vec<i64> = snf
        .diag
        .iter()
        .map(|&d| i64::try_from(d).expect("invariant factor exceeds i64"))
        .collect();

    let mut span = F2Span::new(monomials);
    for row in &matrix {
        let mut bits = span.zero_vec();
        for (j, &v) in row.iter().enumerate() {
            if v.rem_euclid(2) == 1 {
                bits[j / 64] |= 1 << (j % 64);
            }
        }
        span.insert(bits);
    }
    let unit = |n: i64, m: i64| {
        let j = ((n + n_win) as usize) * side + (m + n_win) as usize;
        let mut v = span.zero_vec();
        v[j / 64] |= 1 << (j % 64);
        v
    };
    let e1 = unit(0, 0);
    let et = unit(0, 1);
    let sum: Vec<u64> = e1.iter().zip(&et).map(|(a, b)| a ^ b).collect();
    let independence = !span.contains(e1) && !span.contains(et) && !span.contains(sum);

    Ok(WindowDiagnostics {
        window: n_win,
        monomials,
        instances: instances.len(),
        lattice_rank: snf.rank(),
        invariant_factors,
        soundness,
        independence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bl(s: &str) -> BiLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            expand_relation(RelationInstance::t1(1)),
            bl("s^1*t^1 - s^1")
        );
        assert_eq!(expand_relation(RelationInstance::t2(0, 1)), bl("2*s^0*t^1"));
        assert_eq!(
            expand_relation(RelationInstance::t4(0, 0)),
            bl("s^0*t^0 - 2*s^0*t^1 + s^0*t^2")
        );
        // T3 on the diagonal collapses to a single doubled monomial.
        assert_eq!(expand_relation(RelationInstance::t3(2, 2)), bl("2*s^2*t^2"));
        // T1 at n = 0 is the zero relation.
        assert!(expand_relation(RelationInstance::t1(0)).is_zero());
    }

    #[test]
    fn nf_examples() {
        assert_eq!(nf(&bl("s^1*t^0")), PiElement::T);
        assert_eq!(nf(&bl("s^1*t^1")), PiElement::T);
        assert_eq!(nf(&bl("s^0*t^2")), PiElement::ONE);
        // 3 + 3*2 + 2 = 11, odd.
        assert_eq!(nf(&bl("s^3*t^2")), PiElement::T);
        assert_eq!(nf(&BiLaurent::zero()), PiElement::ZERO);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&bl("s^0*t^0")), PiElement::ONE);
        // rho parities (0, 1): 0 + 0 + 1 = 1.
        assert_eq!(phi(&bl("s^2*t^5")), PiElement::T);
        assert_eq!(phi(&bl("2*s^1*t^1")), PiElement::ZERO);
    }

    #[test]
    fn pi_element_display_round_trip() {
        for e in [
            PiElement::ZERO,
            PiElement::ONE,
            PiElement::T,
            PiElement::ONE_PLUS_T,
        ] {
            assert_eq!(e.to_string().parse::<PiElement>().unwrap(), e);
            assert_eq!(e + e, PiElement::ZERO);
        }
        assert_eq!(PiElement::ONE + PiElement::T, PiElement::ONE_PLUS_T);
        assert_eq!(PiElement::one_plus_t_times(1), PiElement::ONE_PLUS_T);
        assert_eq!(PiElement::one_plus_t_times(0), PiElement::ZERO);
    }

    #[test]
    fn relation_soundness_grid() {
        for n in -64..=64 {
            assert!(nf(&expand_relation(RelationInstance::t1(n))).is_zero());
        }
        for n in -32..=32 {
            for m in -32..=32 {
                for inst in [
                    RelationInstance::t2(n, m),
                    RelationInstance::t3(n, m),
                    RelationInstance::t4(n, m),
                ] {
                    assert!(nf(&expand_relation(inst)).is_zero(), "nf not 0 on {inst}");
                }
            }
        }
    }

    #[test]
    fn parity_formula_t2_consistent() {
        // The same bit must come out of both T2-related exponent pairs.
        for n in -32i64..=32 {
            for m in -32i64..=32 {
                assert_eq!(
                    parity_bit(n, m),
                    parity_bit(-n, m - n),
                    "mismatch at ({n},{m})"
                );
            }
        }
    }

    #[test]
    fn certificate_for_s_matches_hand_combo() {
        let cert = certify_nf(1, 0).unwrap();
        assert_eq!(cert.nf_bit, 1);
        assert_eq!(
            cert.combo,
            vec![
                (-1, RelationInstance::t2(0, 1)),
                (1, RelationInstance::t3(1, 0)),
            ]
        );
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn certificate_for_identity_is_empty() {
        let cert = certify_nf(0, 0).unwrap();
        assert_eq!(cert.nf_bit, 0);
        assert!(cert.combo.is_empty());
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn certificate_for_t_squared_matches_hand_combo() {
        let cert = certify_nf(0, 2).unwrap();
        assert_eq!(cert.nf_bit, 0);
        assert_eq!(
            cert.combo,
            vec![
                (-1, RelationInstance::t2(0, 0)),
                (1, RelationInstance::t2(0, 1)),
                (1, RelationInstance::t4(0, 0)),
            ]
        );
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn certificate_sweep_desk_scale() {
        for n in -8..=8 {
            for m in -8..=8 {
                let cert = certify_nf(n, m).unwrap();
                assert_eq!(cert.nf_bit, parity_bit(n, m));
                assert!(verify_certificate(&cert), "bad certificate for ({n},{m})");
            }
        }
    }

    #[test]
    fn certificate_far_corners() {
        for (n, m) in [
            (1024, 1024),
            (-1024, -1024),
            (1024, -1024),
            (0, 1023),
            (-517, 200),
        ] {
            let cert = certify_nf(n, m).unwrap();
            assert!(verify_certificate(&cert), "bad certificate for ({n},{m})");
        }
        assert_eq!(
            certify_nf(1025, 0),
            Err(QuotientError::RangeExceeded { n: 1025, m: 0 })
        );
    }

    #[test]
    fn tampered_certificate_fails() {
        let mut cert = certify_nf(1, 0).unwrap();
        cert.combo[0].0 = -cert.combo[0].0;
        assert!(!verify_certificate(&cert));
        let mut cert = certify_nf(-3, 5).unwrap();
        cert.combo.pop();
        assert!(!verify_certificate(&cert));
        let mut cert = certify_nf(2, 2).unwrap();
        cert.nf_bit ^= 1;
        assert!(!verify_certificate(&cert));
    }

    #[test]
    fn certificate_text_round_trip() {
        let cert = certify_nf(-3, 5).unwrap();
        let text = cert.to_string();
        assert!(text.starts_with("target -3 5 nf"));
        let back: NFCertificate = text.parse().unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back));
        assert!("target 1 x nf 0".parse::<NFCertificate>().is_err());
        assert!("target 1 0 nf 1\n2 T9(0,0)"
            .parse::<NFCertificate>()
            .is_err());
    }

    #[test]
    fn window_reports_sound_and_independent() {
        for n_win in 1..=4 {
            let report = window_report(n_win).unwrap();
            assert!(report.soundness, "nf missed a relation at N={n_win}");
            assert!(report.independence, "1 and t collapsed at N={n_win}");
            assert_eq!(
                report.monomials,
                ((2 * n_win + 1) * (2 * n_win + 1)) as usize
            );
            assert!(report.lattice_rank <= report.monomials);
            for w in report.invariant_factors.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn window_rank_agrees_with_f2_elimination() {
        // Two independent mod-2 ranks: odd invariant factors vs elimination.
        let n_win = 2;
        let instances = window_instances(n_win);
        let matrix = window_matrix(n_win, &instances);
        let snf = smith_normal_form(&matrix);
        let mut span = F2Span::new(matrix[0].len());
        for row in &matrix {
            let mut bits = span.zero_vec();
            for (j, &v) in row.iter().enumerate() {
                if v.rem_euclid(2) == 1 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            span.insert(bits);
        }
        assert_eq!(snf.rank_mod2(), span.rows.len());
    }

    #[test]
    fn window_independence_agrees_with_augmented_snf() {
        // e is outside the mod-2 row span iff appending it raises the count
        // of odd invariant factors.
        let n_win = 2;
        let instances = window_instances(n_win);
        let matrix = window_matrix(n_win, &instances);
        let base = smith_normal_form(&matrix).rank_mod2();
        let side = (2 * n_win + 1) as usize;
        let unit = |n: i64, m: i64| {
            let mut row = vec![0i128; side * side];
            row[((n + n_win) as usize) * side + (m + n_win) as usize] = 1;
            row
        };
        let mut e1t = unit(0, 0);
        for (a, b) in e1t.iter_mut().zip(unit(0, 1)) {
            *a += b;
        }
        for extra in [unit(0, 0), unit(0, 1), e1t] {
            let mut augmented = matrix.clone();
            augmented.push(extra);
            assert_eq!(smith_normal_form(&augmented).rank_mod2(), base + 1);
        }
    }

    #[test]
    fn window_bounds() {
        assert_eq!(window_report(0), Err(QuotientError::WindowTooSmall(0)));
        assert_eq!(window_report(13), Err(QuotientError::WindowTooLarge(13)));
    }

    fn arb_bilaurent() -> impl Strategy<Value = BiLaurent> {
        proptest::collection::vec((((-20i64..=20), (-20i64..=20)), (-9i64..=9)), 0..8)
            .prop_map(BiLaurent::from_terms)
    }

    proptest! {
        #[test]
        fn nf_is_additive(p in arb_bilaurent(), q in arb_bilaurent()) {
            prop_assert_eq!(nf(&p.add(&q)), nf(&p) + nf(&q));
        }

        #[test]
        fn nf_kills_doubles(p in arb_bilaurent()) {
            prop_assert_eq!(nf(&p.scale(2)), PiElement::ZERO);
            prop_assert_eq!(phi(&p.scale(2)), PiElement::ZERO);
        }

        #[test]
        fn nf_and_phi_agree(p in arb_bilaurent()) {
            prop_assert_eq!(nf(&p), phi(&p));
        }

        #[test]
        fn nf_vanishes_on_certified_differences(n in -40i64..=40, m in -40i64..=40) {
            // s^n t^m - t^bit lies in the relation lattice, so nf kills it.
            let cert = certify_nf(n, m).unwrap();
            prop_assert!(verify_certificate(&cert));
            let mut diff = BiLaurent::monomial(n, m, 1);
            diff.add_term(0, i64::from(cert.nf_bit), -1);
            prop_assert_eq!(nf(&diff), PiElement::ZERO);
        }
    }

    #[test]
    fn nf_and_phi_agree_on_monomial_grid() {
        for n in -16..=16 {
            for m in -16..=16 {
                let p = BiLaurent::monomial(n, m, 1);
                assert_eq!(nf(&p), phi(&p), "disagreement at ({n},{m})");
            }
        }
    }
}
