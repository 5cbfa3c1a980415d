//! Group words over a generating set, the commutation predicates, and the
//! wreath-product interval.

use std::fmt;
use std::str::FromStr;

use super::genset::{oscillation, GenSet};
use super::pl::{Orbital, PlMap};
use super::{RealizationError, Scalar};

/// A product of generator powers, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupWord(pub Vec<(usize, i64)>);

impl GroupWord {
    pub fn gen(i: usize) -> Self {
        GroupWord(vec![(i, 1)])
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn then(&self, other: &GroupWord) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        GroupWord(v)
    }

    /// `w⁻¹ self w`.
    pub fn conj(&self, w: &GroupWord) -> Self {
        w.inverse().then(self).then(w)
    }
}

/// Parses `a b^-1 c2^3` style words; letters `a..z` name generators
/// `0..25` and an optional trailing number adds 26 per step, so `a1` is 26.
/// Factors are separated by spaces or `*`. A bare index `g4` is also
/// accepted.
impl FromStr for GroupWord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
        {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| format!("bad exponent in {tok:?}"))?),
                None => (tok, 1),
            };
            let idx = if let Some(num) = base.strip_prefix('g').filter(|n| !n.is_empty()) {
                num.parse::<usize>().map_err(|_| format!("bad generator {base:?}"))?
            } else {
                let mut chars = base.chars();
                let c = chars.next().ok_or_else(|| format!("empty factor in {s:?}"))?;
                if !c.is_ascii_lowercase() {
                    return Err(format!("bad generator {base:?}"));
                }
                let rest: &str = chars.as_str();
                let block = if rest.is_empty() {
                    0
                } else {
                    rest.parse::<usize>().map_err(|_| format!("bad generator {base:?}"))?
                };
                (c as u8 - b'a') as usize + 26 * block
            };
            if exp != 0 {
                out.push((idx, exp));
            }
        }
        Ok(GroupWord(out))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| if e == 1 { format!("g{i}") } else { format!("g{i}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The map named by `w`.
pub fn pl_eval<T: Scalar>(s: &GenSet<T>, w: &GroupWord) -> Result<PlMap<T>, RealizationError> {
    let mut acc = PlMap::identity();
    for &(i, e) in &w.0 {
        if i >= s.len() {
            return Err(RealizationError::NoElement(i, s.len()));
        }
        acc = acc.then(&s.get(i).map().pow(e));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub c: bool,
    pub d: bool,
    pub t: Option<bool>,
}

/// `C(x,y)`: `x` and `y` commute.
pub fn commute<T: Scalar>(x: &PlMap<T>, y: &PlMap<T>) -> bool {
    x.commutes_with(y)
}

/// `D(x,y)`: `x` and `y` do not commute but `x` commutes with `x^y`.
pub fn dominates<T: Scalar>(x: &PlMap<T>, y: &PlMap<T>) -> bool {
    !commute(x, y) && commute(x, &x.conj(y))
}

/// `T(x,y,z)`: `D(x,y) ∧ D(x,z) ∧ D(y,z) ∧ C(x, y^z)`.
pub fn tower<T: Scalar>(x: &PlMap<T>, y: &PlMap<T>, z: &PlMap<T>) -> bool {
    dominates(x, y) && dominates(x, z) && dominates(y, z) && commute(x, &y.conj(z))
}

/// `C(x,y)`, `D(x,y)` and, when `z` is given, `T(x,y,z)`.
pub fn predicates<T: Scalar>(x: &PlMap<T>, y: &PlMap<T>, z: Option<&PlMap<T>>) -> Predicates {
    Predicates {
        c: commute(x, y),
        d: dominates(x, y),
        t: z.map(|z| tower(x, y, z)),
    }
}

/// An orbital `J` of `x` with `J·y` disjoint from `J`.
pub fn dom_witness<T: Scalar>(x: &PlMap<T>, y: &PlMap<T>) -> Option<Orbital<T>> {
    x.orbitals().into_iter().find(|j| {
        let (a, b) = (y.eval(&j.lo), y.eval(&j.hi));
        a >= j.hi || b <= j.lo
    })
}

/// For a split `S = B * C` at `split`, an interval containing the supports
/// of `B`, inside the rightmost orbital of every element of `C`, and clear
/// of their feet.
pub fn wreath_witness<T: Scalar>(s: &GenSet<T>, split: usize) -> Result<(T, T), RealizationError> {
    if split == 0 || split >= s.len() {
        return Err(RealizationError::NotStarSplit(format!(
            "split {split} leaves an empty side"
        )));
    }
    let (b, c) = s.fns().split_at(split);
    for (i, f) in b.iter().enumerate() {
        for (j, g) in c.iter().enumerate() {
            let o = oscillation(f, g);
            if o != 1 {
                return Err(RealizationError::NotStarSplit(format!(
                    "cross oscillation o({i}, {}) = {o}",
                    split + j
                )));
            }
        }
    }
    let lo = b.iter().map(|f| f.lo().clone()).min().expect("nonempty");
    let hi = b.iter().map(|f| f.hi().clone()).max().expect("nonempty");
    for (j, g) in c.iter().enumerate() {
        let r = g.orbitals().last().expect("nonempty support");
        if !(r.lo <= lo && hi <= r.hi) {
            return Err(RealizationError::NoWitness(format!(
                "({lo}, {hi}) is not inside the rightmost orbital of element {}",
                split + j
            )));
        }
        if g.feet()
            .iter()
            .any(|ft| ft.lo.clone().max(lo.clone()) < ft.hi.clone().min(hi.clone()))
        {
            return Err(RealizationError::NoWitness(format!(
                "({lo}, {hi}) meets a foot of element {}",
                split + j
            )));
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalizer::materialize;
    use crate::realization::realize;
    use crate::signature::{SigTerm, Signature};
    use crate::Rat;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn term(s: &str) -> Signature {
        s.parse::<SigTerm>().unwrap().eval().unwrap()
    }

    #[test]
    fn word_parsing() {
        let w: GroupWord = "a b^-1 * c2^3".parse().unwrap();
        assert_eq!(w, GroupWord(vec![(0, 1), (1, -1), (2 + 52, 3)]));
        assert_eq!("g4^2".parse::<GroupWord>().unwrap(), GroupWord(vec![(4, 2)]));
        assert_eq!("".parse::<GroupWord>().unwrap(), GroupWord::default());
        assert!("A".parse::<GroupWord>().is_err());
        assert!("a^x".parse::<GroupWord>().is_err());
        assert_eq!(w.inverse().to_string(), "g54^-3 g1 g0^-1");
    }

    #[test]
    fn evaluation() {
        let s = realize::<Rat>(&Signature::pair(2)).unwrap();
        let w = GroupWord(vec![(0, 1), (0, -1)]);
        assert!(pl_eval(&s, &w).unwrap().is_identity());
        assert!(pl_eval(&s, &GroupWord(vec![(2, 1)])).is_err());
        // supt(g^h) = supt(g)·h
        let gh = pl_eval(&s, &GroupWord::gen(0).conj(&GroupWord::gen(1))).unwrap();
        let h = s.get(1).map();
        let o = gh.orbitals();
        assert_eq!(o[0].lo, h.eval(s.get(0).lo()));
        assert_eq!(o.last().unwrap().hi, h.eval(s.get(0).hi()));
    }

    #[test]
    fn random_words_cancel() {
        let mut rng = StdRng::seed_from_u64(3);
        let sets: Vec<GenSet<Rat>> = ["1+1", "1*1", "E(1+1)", "1*1+1"]
            .iter()
            .map(|t| realize(&term(t)).unwrap())
            .collect();
        for _ in 0..60 {
            let s = &sets[rng.gen_range(0..sets.len())];
            let len = rng.gen_range(0..5);
            let w = GroupWord(
                (0..len)
                    .map(|_| (rng.gen_range(0..s.len()), [-2, -1, 1, 2][rng.gen_range(0..4)]))
                    .collect(),
            );
            let m = pl_eval(s, &w).unwrap().then(&pl_eval(s, &w.inverse()).unwrap());
            assert!(m.is_identity(), "{w}");
        }
    }

    #[test]
    fn basic_predicates() {
        let s = realize::<Rat>(&term("1+1")).unwrap();
        let (x, y) = (s.get(0).map(), s.get(1).map());
        assert!(commute(x, x) && !dominates(x, x));
        assert!(x.commutator(y).is_identity());
        let p = predicates(x, y, None);
        assert!(p.c && !p.d && p.t.is_none());
    }

    #[test]
    fn nested_bumps_dominate() {
        let s = realize::<Rat>(&Signature::pair(1)).unwrap();
        let (x, y) = (s.get(0).map(), s.get(1).map());
        assert!(dominates(x, y));
        let j = dom_witness(x, y).unwrap();
        assert_eq!(j.lo, *s.get(0).lo());
    }

    #[test]
    fn wreath_intervals() {
        let s = realize::<Rat>(&term("1*1")).unwrap();
        assert!(wreath_witness(&s, 1).is_ok());
        let s = realize::<Rat>(&term("1+1")).unwrap();
        assert!(matches!(wreath_witness(&s, 1), Err(RealizationError::NotStarSplit(_))));
        let r = materialize(&"w^w".parse().unwrap());
        let doubled = r.star(&r).unwrap();
        let s = realize::<Rat>(&doubled).unwrap();
        wreath_witness(&s, 2).unwrap();
    }
}
