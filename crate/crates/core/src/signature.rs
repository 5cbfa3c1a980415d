//! Oscillation signatures and their algebra.
//!
//! An [`OscMatrix`] assigns a nonnegative integer to every pair `i < j` of a
//! finite linear order `0..n`. A [`Signature`] is an `OscMatrix` that has
//! passed [`validate`], i.e. every triple satisfies the `(!)` law.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::ParseError;

/// Errors from signature construction and the symbolic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("matrix violates (!) at triples {0:?}")]
    Invalid(Vec<(usize, usize, usize)>),
    #[error("right operand of * must be all-positive; pair ({0}, {1}) is zero")]
    NotAllPositive(usize, usize),
    #[error("base element {index} out of range for base of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("cannot remove the top element of the empty signature")]
    Empty,
    #[error("enumeration bounds exceeded (n <= {max_n}, vmax <= {max_v})")]
    Bounds { max_n: usize, max_v: u32 },
    #[error("label list has {got} entries, expected {expected}")]
    Labels { got: usize, expected: usize },
    #[error("malformed signature JSON: {0}")]
    Json(String),
}

// ---------------------------------------------------------------------------
// The (!) relation

/// Condition (1): `r >= min(p - 1, q)`, with equality unless `p == q`.
pub fn bang_rel(p: i64, q: i64, r: i64) -> bool {
    let m = (p - 1).min(q);
    if p == q {
        r >= m
    } else {
        r == m
    }
}

/// The four equivalent formulations of `r = p ! q`, in order: the `r`-form,
/// the `q`-form, the `p`-form and the conjunction of three inequalities.
pub fn bang_conditions(p: i64, q: i64, r: i64) -> [bool; 4] {
    let c1 = bang_rel(p, q, r);
    let m2 = p.min(r);
    let c2 = q >= m2 && (p == r + 1 || q == m2);
    let m3 = q.min(r + 1);
    let c3 = p >= m3 && (q == r || p == m3);
    let c4 = p >= q.min(r + 1) && q >= p.min(r) && r >= (p - 1).min(q);
    [c1, c2, c3, c4]
}

/// The value of `p ! q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bang {
    /// `p != q`: the unique solution.
    Exactly(i64),
    /// `p == q`: every `r` at least this bound is a solution.
    AtLeast(i64),
}

pub fn bang(p: i64, q: i64) -> Bang {
    let m = (p - 1).min(q);
    if p == q {
        Bang::AtLeast(m)
    } else {
        Bang::Exactly(m)
    }
}

// ---------------------------------------------------------------------------
// Matrices

/// A nonnegative integer on each pair `i < j` of `0..n`, with a label per
/// base element. Labels are provenance only and are ignored by equality.
#[derive(Clone, Debug)]
pub struct OscMatrix {
    n: usize,
    vals: Vec<u32>,
    labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl OscMatrix {
    pub fn zeros(n: usize) -> Self {
        OscMatrix {
            n,
            vals: vec![0; n * n],
            labels: default_labels(n),
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The value on the pair `{i, j}`, in either order.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j && i < self.n && j < self.n);
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.vals[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i != j && j < self.n, "pair ({i}, {j}) out of range");
        self.vals[i * self.n + j] = v;
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SignatureError> {
        if labels.len() != self.n {
            return Err(SignatureError::Labels {
                got: labels.len(),
                expected: self.n,
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Pair values in row-major order of the pairs `i < j`.
    pub fn values(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Every triple `i < j < k` at which `(!)` fails.
    pub fn violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let (p, q, r) = (self.get(j, k), self.get(i, k), self.get(i, j));
                    if !bang_rel(p as i64, q as i64, r as i64) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

impl PartialEq for OscMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.values() == other.values()
    }
}

impl Eq for OscMatrix {}

impl Hash for OscMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.values().hash(state);
    }
}

/// Checks the `(!)` law on every triple.
pub fn validate(m: OscMatrix) -> Result<Signature, Vec<(usize, usize, usize)>> {
    let bad = m.violations();
    if bad.is_empty() {
        Ok(Signature { m })
    } else {
        Err(bad)
    }
}

// ---------------------------------------------------------------------------
// Signatures

/// A validated oscillation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    m: OscMatrix,
}

/// Where an element of an inflated base came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Original(usize),
    Conjugate(usize),
}

fn wrap_label(l: &str) -> String {
    if l.contains('^') {
        format!("({l})")
    } else {
        l.to_string()
    }
}

impl Signature {
    pub fn zero() -> Self {
        Signature { m: OscMatrix::zeros(0) }
    }

    pub fn one() -> Self {
        Signature { m: OscMatrix::zeros(1) }
    }

    /// The two-element signature with value `k`.
    pub fn pair(k: u32) -> Self {
        Self::trusted(OscMatrix::from_fn(2, |_, _| k))
    }

    pub fn new(m: OscMatrix) -> Result<Self, SignatureError> {
        validate(m).map_err(SignatureError::Invalid)
    }

    /// Wraps a matrix known to be valid by construction; checked in debug
    /// builds while the cubic check is cheap.
    fn trusted(m: OscMatrix) -> Self {
        debug_assert!(m.n > 48 || m.violations().is_empty(), "internal operation broke (!)");
        Signature { m }
    }

    pub fn n(&self) -> usize {
        self.m.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.m.get(i, j)
    }

    pub fn matrix(&self) -> &OscMatrix {
        &self.m
    }

    pub fn labels(&self) -> &[String] {
        &self.m.labels
    }

    /// Same values, labels reset to `0..n`.
    pub fn canonical(&self) -> Self {
        let mut m = self.m.clone();
        m.labels = default_labels(m.n);
        Signature { m }
    }

    /// `(|A|, sum of values)`, ordered lexicographically.
    pub fn complexity(&self) -> (usize, u64) {
        (self.n(), self.m.values().iter().map(|&v| v as u64).sum())
    }

    pub fn is_all_positive(&self) -> bool {
        self.m.values().iter().all(|&v| v > 0)
    }

    /// Concatenation with zeros across.
    pub fn sum(&self, other: &Signature) -> Signature {
        self.concat(other, 0)
    }

    /// Concatenation with ones across; `other` must be all-positive.
    pub fn star(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let n = other.n();
        for i in 0..n {
            for j in i + 1..n {
                if other.get(i, j) == 0 {
                    return Err(SignatureError::NotAllPositive(i, j));
                }
            }
        }
        Ok(self.concat(other, 1))
    }

    fn concat(&self, other: &Signature, across: u32) -> Signature {
        let (a, b) = (self.n(), other.n());
        let m = OscMatrix::from_fn(a + b, |i, j| match (i < a, j < a) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - a, j - a),
            _ => across,
        });
        Signature::trusted(m)
    }

    /// Adds `levels` to every value; `E` is two levels.
    pub fn exp(&self, levels: u32) -> Signature {
        let m = OscMatrix::from_fn(self.n(), |i, j| self.get(i, j) + levels);
        Signature::trusted(m)
    }

    /// Pointwise decrement, defined when every value is positive.
    pub fn decrement(&self) -> Option<Signature> {
        if !self.is_all_positive() {
            return None;
        }
        let m = OscMatrix::from_fn(self.n(), |i, j| self.get(i, j) - 1);
        Some(Signature::trusted(m))
    }

    /// The induced signature on a subset of the base, given as indices in
    /// any order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Signature, SignatureError> {
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n()) {
            return Err(SignatureError::OutOfRange {
                index: bad,
                n: self.n(),
            });
        }
        let mut m = OscMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]));
        m.labels = idx.iter().map(|&i| self.m.labels[i].clone()).collect();
        Ok(Signature::trusted(m))
    }

    /// Removes the top element.
    pub fn drop_top(&self) -> Result<Signature, SignatureError> {
        if self.n() == 0 {
            return Err(SignatureError::Empty);
        }
        let keep: Vec<usize> = (0..self.n() - 1).collect();
        self.restrict(&keep)
    }

    /// The largest `j` below the top with a zero against the top.
    fn last_zero_against_top(&self) -> Option<usize> {
        let n = self.n();
        if n < 2 {
            return None;
        }
        (0..n - 1).rev().find(|&j| self.get(j, n - 1) == 0)
    }

    /// Not a nontrivial sum. The empty signature counts as decomposable.
    pub fn is_indecomposable(&self) -> bool {
        self.n() > 0 && self.last_zero_against_top().is_none()
    }

    /// The unique splitting into indecomposable summands.
    pub fn decompose(&self) -> Vec<Signature> {
        let mut parts = Vec::new();
        let mut cur = self.clone();
        while cur.n() > 0 {
            match cur.last_zero_against_top() {
                None => {
                    parts.push(cur);
                    break;
                }
                Some(j) => {
                    let hi: Vec<usize> = (j + 1..cur.n()).collect();
                    let lo: Vec<usize> = (0..=j).collect();
                    parts.push(cur.restrict(&hi).expect("in range"));
                    cur = cur.restrict(&lo).expect("in range");
                }
            }
        }
        parts.reverse();
        parts
    }

    /// Rotation: the top of the last indecomposable summand moves to the
    /// bottom of that summand with its column decremented.
    pub fn rotate(&self) -> Signature {
        let n = self.n();
        if n <= 1 {
            return Signature::zero();
        }
        if let Some(j) = self.last_zero_against_top() {
            let lo: Vec<usize> = (0..=j).collect();
            let hi: Vec<usize> = (j + 1..n).collect();
            let b = self.restrict(&lo).expect("in range");
            let c = self.restrict(&hi).expect("in range");
            return b.sum(&c.rotate()).canonical();
        }
        let top = n - 1;
        let m = OscMatrix::from_fn(n, |a, b| match (a, b) {
            (0, b) => self.get(b - 1, top) - 1,
            (a, b) => self.get(a - 1, b - 1),
        });
        Signature::trusted(m)
    }

    /// Inflation at base element `m`; see [`Signature::inflate_with_origins`].
    pub fn inflate(&self, m: usize) -> Result<Signature, SignatureError> {
        self.inflate_with_origins(m).map(|(s, _)| s)
    }

    /// Inflation at `m`, also reporting the origin of each new base element.
    ///
    /// The base is: originals below `m`, then a conjugate `i^m` for each
    /// `i < m` with a positive value against `m`, then `m` and everything
    /// above it.
    pub fn inflate_with_origins(&self, m: usize) -> Result<(Signature, Vec<Origin>), SignatureError> {
        let n = self.n();
        if m >= n {
            return Err(SignatureError::OutOfRange { index: m, n });
        }
        let mut origins: Vec<Origin> = (0..m).map(Origin::Original).collect();
        origins.extend((0..m).filter(|&i| self.get(i, m) > 0).map(Origin::Conjugate));
        origins.extend((m..n).map(Origin::Original));
        // o(m, m) is infinite; `against_m` returns None there.
        let against_m = |k: usize| if k == m { None } else { Some(self.get(k, m)) };
        let value = |a: Origin, b: Origin| -> u32 {
            use Origin::*;
            match (a, b) {
                (Original(i), Original(j)) => self.get(i, j),
                (Conjugate(i), Conjugate(j)) => self.get(i, j),
                (Original(i), Conjugate(j)) => (self.get(j, m) - 1).min(self.get(i, m)),
                (Conjugate(i), Original(k)) => match against_m(k) {
                    None => self.get(i, m),
                    Some(v) => self.get(i, m).min(v),
                },
            }
        };
        let mut mat = OscMatrix::from_fn(origins.len(), |a, b| value(origins[a], origins[b]));
        let ml = wrap_label(&self.m.labels[m]);
        mat.labels = origins
            .iter()
            .map(|o| match *o {
                Origin::Original(i) => self.m.labels[i].clone(),
                Origin::Conjugate(i) => format!("{}^{}", wrap_label(&self.m.labels[i]), ml),
            })
            .collect();
        Ok((Signature::trusted(mat), origins))
    }

    /// Every signature on `n` elements with values at most `vmax`, in
    /// lexicographic order of the row-major value vector.
    pub fn enumerate(n: usize, vmax: u32) -> Result<Vec<Signature>, SignatureError> {
        const MAX_N: usize = 5;
        const MAX_V: u32 = 5;
        if n > MAX_N || vmax > MAX_V {
            return Err(SignatureError::Bounds {
                max_n: MAX_N,
                max_v: MAX_V,
            });
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut out = Vec::new();
        let mut m = OscMatrix::zeros(n);
        fill(&pairs, 0, vmax, &mut m, &mut out);
        Ok(out)
    }
}

fn fill(pairs: &[(usize, usize)], at: usize, vmax: u32, m: &mut OscMatrix, out: &mut Vec<Signature>) {
    let Some(&(j, k)) = pairs.get(at) else {
        out.push(Signature { m: m.clone() });
        return;
    };
    for v in 0..=vmax {
        m.set(j, k, v);
        // (j, k) is the last pair of every triple (i, j, k) to be assigned.
        let ok = (0..j).all(|i| bang_rel(v as i64, m.get(i, k) as i64, m.get(i, j) as i64));
        if ok {
            fill(pairs, at + 1, vmax, m, out);
        }
    }
    m.set(j, k, 0);
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct SigJson {
    n: usize,
    o: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Signature {
    /// `{"n":..,"o":{"i,j":v,..},"labels":[..]}`; labels are omitted when
    /// they are the default `0..n`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_sig_json()).expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_sig_json()).expect("serializable")
    }

    fn to_sig_json(&self) -> SigJson {
        let n = self.n();
        let mut o = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                o.insert(format!("{i},{j}"), self.get(i, j));
            }
        }
        let labels = (self.m.labels != default_labels(n)).then(|| self.m.labels.clone());
        SigJson { n, o, labels }
    }

    pub fn from_json(text: &str) -> Result<Signature, SignatureError> {
        let raw: SigJson = serde_json::from_str(text).map_err(|e| SignatureError::Json(e.to_string()))?;
        let mut m = OscMatrix::zeros(raw.n);
        let mut seen = 0;
        for (key, v) in &raw.o {
            let parsed = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
            match parsed {
                Some((i, j)) if i < j && j < raw.n => {
                    m.set(i, j, *v);
                    seen += 1;
                }
                _ => return Err(SignatureError::Json(format!("bad pair key {key:?}"))),
            }
        }
        let expected = raw.n * raw.n.saturating_sub(1) / 2;
        if seen != expected {
            return Err(SignatureError::Json(format!(
                "expected {expected} pair values, found {seen}"
            )));
        }
        if let Some(labels) = raw.labels {
            m = m.with_labels(labels)?;
        }
        Signature::new(m)
    }
}

// ---------------------------------------------------------------------------
// Terms

/// An expression over `zero`, `one`, `+`, `*`, `exp` and `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigTerm {
    Zero,
    One,
    Sum(Box<SigTerm>, Box<SigTerm>),
    Star(Box<SigTerm>, Box<SigTerm>),
    Exp(Box<SigTerm>),
    E(Box<SigTerm>),
}

impl SigTerm {
    pub fn eval(&self) -> Result<Signature, SignatureError> {
        Ok(match self {
            SigTerm::Zero => Signature::zero(),
            SigTerm::One => Signature::one(),
            SigTerm::Sum(a, b) => a.eval()?.sum(&b.eval()?),
            SigTerm::Star(a, b) => a.eval()?.star(&b.eval()?)?,
            SigTerm::Exp(a) => a.eval()?.exp(1),
            SigTerm::E(a) => a.eval()?.exp(2),
        })
    }

    pub fn sum(a: SigTerm, b: SigTerm) -> SigTerm {
        SigTerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn star(a: SigTerm, b: SigTerm) -> SigTerm {
        SigTerm::Star(Box::new(a), Box::new(b))
    }

    pub fn exp(a: SigTerm) -> SigTerm {
        SigTerm::Exp(Box::new(a))
    }

    pub fn exp2(a: SigTerm) -> SigTerm {
        SigTerm::E(Box::new(a))
    }
}

impl fmt::Display for SigTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigTerm::Zero => f.write_str("0"),
            SigTerm::One => f.write_str("1"),
            SigTerm::Sum(a, b) => match **b {
                SigTerm::Sum(..) => write!(f, "{a}+({b})"),
                _ => write!(f, "{a}+{b}"),
            },
            SigTerm::Star(a, b) => {
                let wrap = |t: &SigTerm| matches!(t, SigTerm::Sum(..));
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str("*")?;
                if wrap(b) || matches!(**b, SigTerm::Star(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            SigTerm::Exp(a) => write!(f, "exp({a})"),
            SigTerm::E(a) => write!(f, "E({a})"),
        }
    }
}

impl FromStr for SigTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.sum()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(t)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<SigTerm, ParseError> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = SigTerm::sum(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<SigTerm, ParseError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = SigTerm::star(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<SigTerm, ParseError> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(SigTerm::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(SigTerm::One)
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(SigTerm::E(Box::new(t)))
            }
            Some(b'e') if self.src[self.pos..].starts_with(b"exp") => {
                self.pos += 3;
                self.expect(b'(')?;
                let t = self.sum()?;
                self.expect(b')')?;
                Ok(SigTerm::Exp(Box::new(t)))
            }
            Some(_) => Err(self.error("expected '0', '1', 'exp(', 'E(' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
