//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents, each exponent itself an ordinal in the same form.
//! Zero is the empty list and a natural number `n` is the single term
//! `(0, n)`. Coefficients are `u64`; an operation whose coefficient would
//! overflow panics, in the same way primitive integer overflow does in debug
//! builds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One Cantor-normal-form summand `w^exponent * coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// An ordinal below epsilon-zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Which ordinal sum to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AddMode {
    /// The usual, non-commutative ordinal sum.
    Ordered,
    /// The Hessenberg (natural) sum.
    Natural,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("exponents must be strictly decreasing (term {0})")]
    NotDecreasing(usize),
    #[error("coefficients must be positive (term {0})")]
    ZeroCoefficient(usize),
}

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exponent: Self::zero(),
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^a`.
    pub fn omega_pow(a: Ordinal) -> Self {
        Self::monomial(a, 1)
    }

    /// `w^a * c`, or zero when `c == 0`.
    pub fn monomial(a: Ordinal, c: u64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent: a,
                coefficient: c,
            }],
        }
    }

    /// Builds an ordinal from terms, checking the normal-form invariants at
    /// the top level (exponents are already well-formed by construction).
    pub fn from_terms(terms: Vec<Term>) -> Result<Self, OrdinalError> {
        for (i, t) in terms.iter().enumerate() {
            if t.coefficient == 0 {
                return Err(OrdinalError::ZeroCoefficient(i));
            }
            if i > 0 && terms[i - 1].exponent <= t.exponent {
                return Err(OrdinalError::NotDecreasing(i));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// True for ordinals of the form `w^a` (coefficient one, single term).
    pub fn is_omega_power(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.coefficient == 1)
    }

    /// Nesting depth of the exponent tower; finite ordinals have depth 0
    /// and `w` has depth 1.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.exponent.is_zero() {
                    0
                } else {
                    1 + t.exponent.depth()
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// Ordered sum `self + other`.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.leading_exponent() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut rest = other.terms.iter();
        for t in &self.terms {
            match t.exponent.cmp(lead) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    let first = rest.next().expect("other is nonzero");
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: checked_add(t.coefficient, first.coefficient),
                    });
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Natural (Hessenberg) sum.
    pub fn natural_add(&self, other: &Ordinal) -> Ordinal {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].exponent.cmp(&b[j].exponent) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: a[i].exponent.clone(),
                        coefficient: checked_add(a[i].coefficient, b[j].coefficient),
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend_from_slice(&b[j..]);
        Ordinal { terms }
    }

    pub fn add_mode(&self, other: &Ordinal, mode: AddMode) -> Ordinal {
        match mode {
            AddMode::Ordered => self.add(other),
            AddMode::Natural => self.natural_add(other),
        }
    }

    /// Ordered product `self * other`, distributing over the terms of
    /// `other`.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = self.leading_exponent() else {
            return Ordinal::zero();
        };
        let mut terms = Vec::new();
        for t in &other.terms {
            if t.exponent.is_zero() {
                // self * c: only the leading coefficient is scaled.
                let head = &self.terms[0];
                terms.push(Term {
                    exponent: head.exponent.clone(),
                    coefficient: checked_mul(head.coefficient, t.coefficient),
                });
                terms.extend_from_slice(&self.terms[1..]);
            } else {
                terms.push(Term {
                    exponent: lead.add(&t.exponent),
                    coefficient: t.coefficient,
                });
            }
        }
        Ordinal { terms }
    }

    /// `w^(-1 + self)`: zero for zero, `w^(n-1)` for finite `n >= 1`, and
    /// `w^self` for infinite `self`.
    pub fn omega_pow_shifted(&self) -> Ordinal {
        match self.as_nat() {
            Some(0) => Ordinal::zero(),
            Some(n) => Ordinal::omega_pow(Ordinal::nat(n - 1)),
            None => Ordinal::omega_pow(self.clone()),
        }
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> Ordinal {
        Ordinal::one().add(self)
    }

    /// The unique `x` with `1 + x = self`, if `self > 0`.
    pub fn minus_one_plus(&self) -> Option<Ordinal> {
        match self.as_nat() {
            Some(0) => None,
            Some(n) => Some(Ordinal::nat(n - 1)),
            None => Some(self.clone()),
        }
    }

    /// `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }
}

fn checked_add(a: u64, b: u64) -> u64 {
    a.checked_add(b).expect("ordinal coefficient overflow")
}

fn checked_mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("ordinal coefficient overflow")
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.exponent.cmp(&b.exponent).then(a.coefficient.cmp(&b.coefficient));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn ord_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

pub fn ord_add(a: &Ordinal, b: &Ordinal, mode: AddMode) -> Ordinal {
    a.add_mode(b, mode)
}

pub fn ord_mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    a.mul(b)
}

/// `w^a`, or `w^(-1 + a)` when `shifted`.
pub fn ord_omega_pow(a: &Ordinal, shifted: bool) -> Ordinal {
    if shifted {
        a.omega_pow_shifted()
    } else {
        Ordinal::omega_pow(a.clone())
    }
}

/// The tower `tau(0) = 2`, `tau(1) = w`, `tau(k + 1) = w^tau(k)`.
pub fn tau(k: u32) -> Ordinal {
    match k {
        0 => Ordinal::nat(2),
        _ => (1..k).fold(Ordinal::omega(), |t, _| Ordinal::omega_pow(t)),
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent != Ordinal::one() {
                if t.exponent.is_finite() || t.exponent == Ordinal::omega() {
                    write!(f, "^{}", t.exponent)?;
                } else {
                    write!(f, "^({})", t.exponent)?;
                }
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
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

    fn expr(&mut self) -> Result<Ordinal, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseError> {
        let f = self.factor()?;
        if self.peek() == Some(b'*') {
            self.pos += 1;
            let n = self.nat()?;
            return Ok(f.mul(&Ordinal::nat(n)));
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<Ordinal, ParseError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.factor()?;
                    Ok(Ordinal::omega_pow(e))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => Err(self.error("expected a number, 'w' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                message: "number too large".to_string(),
            })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    // Ordinals below w^w as coefficient vectors indexed by degree; an
    // independent model for sums and products with finite exponents.
    fn poly(a: &Ordinal) -> Vec<u64> {
        let deg = a.leading_exponent().map(|e| e.as_nat().unwrap() as usize).unwrap_or(0);
        let mut v = vec![0; deg + 1];
        for t in a.terms() {
            v[t.exponent.as_nat().unwrap() as usize] = t.coefficient;
        }
        v
    }

    fn poly_add(a: &[u64], b: &[u64]) -> Vec<u64> {
        let Some(d) = b.iter().rposition(|&c| c > 0) else {
            return a.to_vec();
        };
        let mut out = b.to_vec();
        out.resize(a.len().max(b.len()), 0);
        if d + 1 < a.len() {
            out[d + 1..a.len()].copy_from_slice(&a[d + 1..]);
        }
        if d < a.len() {
            out[d] += a[d];
        }
        out
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        v
    }

    fn small_poly() -> impl Strategy<Value = Ordinal> {
        prop::collection::vec(0u64..4, 1..5).prop_map(|cs| {
            let terms = cs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c > 0)
                .map(|(k, &c)| Term {
                    exponent: Ordinal::nat(k as u64),
                    coefficient: c,
                })
                .collect();
            Ordinal::from_terms(terms).unwrap()
        })
    }

    pub(crate) fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..4).prop_map(Ordinal::nat);
        leaf.prop_recursive(3, 24, 4, |inner| {
            prop::collection::vec((inner, 1u64..4), 1..4).prop_map(|mut ts| {
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                ts.dedup_by(|a, b| a.0 == b.0);
                let terms = ts
                    .into_iter()
                    .map(|(exponent, coefficient)| Term { exponent, coefficient })
                    .collect();
                Ordinal::from_terms(terms).unwrap()
            })
        })
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(ord_cmp(&Ordinal::omega(), &Ordinal::omega()), Ordering::Equal);
        assert_eq!(ord_cmp(&o("w"), &o("w*2")), Ordering::Less);
        assert_eq!(ord_cmp(&o("w^w+1"), &o("w^w")), Ordering::Greater);
    }

    #[test]
    fn addition_examples() {
        assert_eq!(ord_add(&o("1"), &o("w"), AddMode::Ordered), o("w"));
        assert_eq!(ord_add(&o("1"), &o("w"), AddMode::Natural), o("w+1"));
        assert_eq!(o("w").add(&o("w")), o("w*2"));
        // right cancellation fails: 1 + w = 0 + w
        assert_eq!(o("1").add(&o("w")), o("0").add(&o("w")));
    }

    #[test]
    fn product_examples() {
        assert_eq!(o("w").mul(&o("w")), o("w^2"));
        assert_eq!(o("w+1").mul(&o("w")), o("w^2"));
        assert_eq!(o("2").mul(&o("w")), o("w"));
        assert!(o("2").mul(&o("w")) < o("w").mul(&o("2")));
        assert_eq!(o("w^w+3").mul(&o("0")), Ordinal::zero());
        assert_eq!(o("w+1").mul(&o("3")), o("w*3+1"));
    }

    #[test]
    fn shifted_powers() {
        assert_eq!(ord_omega_pow(&o("0"), true), Ordinal::zero());
        assert_eq!(ord_omega_pow(&o("1"), true), Ordinal::one());
        assert_eq!(ord_omega_pow(&o("w"), true), o("w^w"));
        assert_eq!(ord_omega_pow(&o("3"), false), o("w^3"));
        assert_eq!(ord_omega_pow(&o("3"), true), o("w^2"));
    }

    #[test]
    fn tower() {
        assert_eq!(tau(0), o("2"));
        assert_eq!(tau(1), o("w"));
        assert_eq!(tau(2), o("w^w"));
        // tau(4) built by hand, one exponent at a time.
        let w = Ordinal::omega();
        let t4 = Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::omega_pow(w)));
        assert_eq!(tau(4), t4);
        assert_eq!(tau(4).to_string(), "w^(w^(w^w))");
    }

    #[test]
    fn codec_examples() {
        let a = o("w^w + w*2 + 1");
        let exps: Vec<_> = a.terms().iter().map(|t| (t.exponent.clone(), t.coefficient)).collect();
        assert_eq!(exps, vec![(o("w"), 1), (o("1"), 2), (o("0"), 1)]);
        assert_eq!(a.to_string(), "w^w+w*2+1");
        assert_eq!(o("1 + w"), Ordinal::omega());
        let tower = o("w^(w^(w+2))");
        assert_eq!(tower.to_string(), "w^(w^(w+2))");
        assert_eq!(
            tower,
            Ordinal::omega_pow(Ordinal::omega_pow(Ordinal::omega().add(&Ordinal::nat(2))))
        );
        assert_eq!(o("w^w^w"), o("w^(w^w)"));
        assert_eq!(o("(w+1)*3"), o("w*3+1"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = "w + ".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "w^(2".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "w x".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.pos, 2);
        assert!("".parse::<Ordinal>().is_err());
        assert!("w*w".parse::<Ordinal>().is_err());
    }

    #[test]
    fn from_terms_rejects_non_normal_forms() {
        let bad = vec![
            Term {
                exponent: Ordinal::zero(),
                coefficient: 1,
            },
            Term {
                exponent: Ordinal::one(),
                coefficient: 1,
            },
        ];
        assert_eq!(Ordinal::from_terms(bad), Err(OrdinalError::NotDecreasing(1)));
        let zero = vec![Term {
            exponent: Ordinal::one(),
            coefficient: 0,
        }];
        assert_eq!(Ordinal::from_terms(zero), Err(OrdinalError::ZeroCoefficient(0)));
    }

    proptest! {
        #[test]
        fn cmp_is_a_total_order(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            prop_assert_eq!(a == b, a.cmp(&b) == Ordering::Equal);
        }

        #[test]
        fn sums_agree_with_polynomial_model(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(trim(poly(&a.add(&b))), trim(poly_add(&poly(&a), &poly(&b))));
        }

        #[test]
        fn finite_multiples_are_repeated_sums(a in arb_ordinal(), n in 0u64..5) {
            let mut acc = Ordinal::zero();
            for _ in 0..n {
                acc = acc.add(&a);
            }
            prop_assert_eq!(a.mul(&Ordinal::nat(n)), acc);
        }

        #[test]
        fn left_cancellation(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.add(&b) == a.add(&c), b == c);
        }

        #[test]
        fn sum_and_product_are_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn natural_sum_commutes(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert_eq!(a.natural_add(&b), b.natural_add(&a));
            prop_assert!(a.natural_add(&b) >= a.add(&b));
        }

        #[test]
        fn omega_powers_multiply(a in arb_ordinal(), b in arb_ordinal()) {
            let lhs = Ordinal::omega_pow(a.clone()).mul(&Ordinal::omega_pow(b.clone()));
            prop_assert_eq!(lhs, Ordinal::omega_pow(a.add(&b)));
        }

        #[test]
        fn render_parse_round_trip(a in arb_ordinal()) {
            let text = a.to_string();
            let back: Ordinal = text.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn shift_inverts_one_plus(a in arb_ordinal()) {
            prop_assert_eq!(a.one_plus().minus_one_plus(), Some(a.clone()));
        }
    }
}
