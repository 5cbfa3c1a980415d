//! The rank function ρ from signatures to ordinals below ε₀, reduced
//! signatures, and the EA-class formulas.

use thiserror::Error;

use crate::ordinal::{AddMode, Ordinal, Term};
use crate::signature::{Origin, Signature};

/// How the ranks of indecomposable summands are combined at the top level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RhoMode {
    /// Ordinal sum in listed order.
    Ordered,
    /// Natural sum, i.e. summands sorted by rank first.
    #[default]
    Sorted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizerError {
    #[error("{0} is outside computed family")]
    OutsideFamily(Ordinal),
    #[error("coefficient overflow computing {0}")]
    Overflow(String),
}

/// The rank of `a`. Below the top level every sum is ordered.
pub fn rho(a: &Signature, mode: RhoMode) -> Ordinal {
    let add = match mode {
        RhoMode::Ordered => AddMode::Ordered,
        RhoMode::Sorted => AddMode::Natural,
    };
    match a.n() {
        0 => return Ordinal::zero(),
        1 => return Ordinal::one(),
        _ => {}
    }
    if !a.is_indecomposable() {
        return a
            .decompose()
            .iter()
            .map(rho_indecomposable)
            .fold(Ordinal::zero(), |acc, r| acc.add_mode(&r, add));
    }
    rho_indecomposable(a)
}

fn descend(parent: &Signature, child: &Signature) {
    assert!(
        child.complexity() < parent.complexity(),
        "rho recursion failed to descend: {child} from {parent}"
    );
}

fn rho_indecomposable(a: &Signature) -> Ordinal {
    if a.n() <= 1 {
        return rho(a, RhoMode::Ordered);
    }
    if let Some(dec) = a.decrement() {
        descend(a, &dec);
        return rho(&dec, RhoMode::Ordered).omega_pow_shifted();
    }
    let (b, c) = mixed_factors(a);
    descend(a, &b);
    descend(a, &c);
    let beta = b
        .decompose()
        .iter()
        .map(|s| inner_rank(&rho_indecomposable(s)))
        .max()
        .expect("the 1-part of a mixed signature is nonempty");
    beta.add(&rho(&c, RhoMode::Ordered)).omega_pow_shifted()
}

/// For `r = w^(-1 + x)`, returns `x`. Every indecomposable rank has this form.
fn inner_rank(r: &Ordinal) -> Ordinal {
    let g = r.leading_exponent().expect("indecomposable rank is nonzero");
    debug_assert!(r.is_omega_power());
    match g.as_nat() {
        Some(k) => Ordinal::nat(k + 1),
        None => g.clone(),
    }
}

/// Splits an indecomposable signature with an interior zero into `(B, C)`
/// such that the matching restriction of its inflation at the top is
/// `B * exp(C)`. `B` gathers the elements oscillating once against the top.
pub fn mixed_factors(a: &Signature) -> (Signature, Signature) {
    let top = a.n() - 1;
    let (infl, origins) = a.inflate_with_origins(top).expect("top is in range");
    let mut ones = Vec::new();
    let mut rest = Vec::new();
    for (k, o) in origins.iter().enumerate() {
        match *o {
            Origin::Original(i) if i == top => rest.push(k),
            Origin::Original(i) if a.get(i, top) == 1 => ones.push(k),
            Origin::Conjugate(i) if a.get(i, top) > 1 => rest.push(k),
            _ => {}
        }
    }
    let b = infl.restrict(&ones).expect("in range");
    let e = infl.restrict(&rest).expect("in range");
    let c = e.decrement().expect("conjugate part is all-positive");
    debug_assert_eq!(ones.len() + rest.len(), a.n());
    debug_assert_eq!(
        {
            let mut all = ones.clone();
            all.extend(&rest);
            infl.restrict(&all).unwrap()
        },
        b.star(&e).unwrap()
    );
    (b, c)
}

/// The reduced signature of rank `xi`.
pub fn materialize(xi: &Ordinal) -> Signature {
    let mut out = Signature::zero();
    for Term { exponent, coefficient } in xi.terms() {
        let part = if exponent.is_zero() {
            Signature::one()
        } else {
            materialize(&exponent.one_plus()).exp(1)
        };
        for _ in 0..*coefficient {
            out = out.sum(&part);
        }
    }
    out
}

/// The reduced representative of `a` under biembeddability.
pub fn normalize(a: &Signature) -> Signature {
    materialize(&rho(a, RhoMode::Sorted))
}

pub fn is_reduced(a: &Signature) -> bool {
    normalize(a) == *a
}

/// Whether the group of `a` embeds in the group of `b`.
pub fn leq(a: &Signature, b: &Signature) -> bool {
    rho(a, RhoMode::Sorted) <= rho(b, RhoMode::Sorted)
}

/// EA-class of the group of rank `xi`, on the family `w^(w^a * 2^n)` and
/// the finite ranks.
pub fn ea_class(xi: &Ordinal) -> Result<Ordinal, NormalizerError> {
    if let Some(k) = xi.as_nat() {
        return Ok(Ordinal::nat(u64::from(k >= 1)));
    }
    let outside = || NormalizerError::OutsideFamily(xi.clone());
    let [Term {
        exponent: delta,
        coefficient: 1,
    }] = xi.terms()
    else {
        return Err(outside());
    };
    let [Term {
        exponent: a,
        coefficient: c,
    }] = delta.terms()
    else {
        return Err(outside());
    };
    if !c.is_power_of_two() {
        return Err(outside());
    }
    let n = u64::from(c.trailing_zeros());
    if a.is_zero() {
        Ok(Ordinal::nat(n + 1))
    } else {
        Ok(Ordinal::omega().mul(a).add(&Ordinal::nat(n + 2)))
    }
}

/// A rank whose group has EA-class `alpha + 2`.
pub fn ea_to_xi(alpha: &Ordinal) -> Result<Ordinal, NormalizerError> {
    let mut head = Vec::new();
    let mut n = 0;
    for t in alpha.terms() {
        match t.exponent.minus_one_plus() {
            Some(e) => head.push(Term {
                exponent: e,
                coefficient: t.coefficient,
            }),
            None => n = t.coefficient,
        }
    }
    let overflow = || NormalizerError::Overflow(format!("ea_to_xi({alpha})"));
    let alpha1 = Ordinal::from_terms(head).map_err(|_| overflow())?;
    if alpha1.is_zero() {
        let exp = u32::try_from(n + 1).map_err(|_| overflow())?;
        let c = 2u64.checked_pow(exp).ok_or_else(overflow)?;
        Ok(Ordinal::omega_pow(Ordinal::nat(c)))
    } else {
        let exp = u32::try_from(n).map_err(|_| overflow())?;
        let c = 2u64.checked_pow(exp).ok_or_else(overflow)?;
        Ok(Ordinal::omega_pow(Ordinal::monomial(alpha1, c)))
    }
}
