//! Piecewise-linear homeomorphisms of [0,1] with exact breakpoints.
//!
//! Maps act on the right: `f.then(g)` is `x ↦ g(f(x))`, and the conjugate
//! `f^g` is `g⁻¹ f g`, whose support is the image of `f`'s support under `g`.

use super::{RealizationError, Scalar};

/// A maximal open interval on which a map moves every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbital<T> {
    pub lo: T,
    pub hi: T,
    pub positive: bool,
}

impl<T: Scalar> Orbital<T> {
    pub fn contains(&self, x: &T) -> bool {
        self.lo < *x && *x < self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlMap<T> {
    pts: Vec<(T, T)>,
}

impl<T: Scalar> PlMap<T> {
    pub fn identity() -> Self {
        PlMap {
            pts: vec![(T::zero(), T::zero()), (T::one(), T::one())],
        }
    }

    /// Builds a map from its breakpoints. Points must include `(0,0)` and
    /// `(1,1)` and increase strictly in both coordinates; collinear interior
    /// points are dropped.
    pub fn new(pts: Vec<(T, T)>) -> Result<Self, RealizationError> {
        let bad = |m: &str| Err(RealizationError::BadMap(m.to_string()));
        if pts.len() < 2 {
            return bad("need at least two breakpoints");
        }
        let (first, last) = (&pts[0], &pts[pts.len() - 1]);
        if !(first.0.is_zero() && first.1.is_zero() && last.0.is_one() && last.1.is_one()) {
            return bad("breakpoints must start at (0,0) and end at (1,1)");
        }
        if pts.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return bad("breakpoints must increase strictly in both coordinates");
        }
        Ok(Self::simplify(pts))
    }

    fn simplify(pts: Vec<(T, T)>) -> Self {
        let mut out: Vec<(T, T)> = Vec::with_capacity(pts.len());
        for p in pts {
            if out.last().is_some_and(|q| q.0 == p.0) {
                continue;
            }
            if out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                // Drop b when a, b, p are collinear.
                if (b.1.clone() - a.1.clone()) * (p.0.clone() - b.0.clone())
                    == (p.1.clone() - b.1.clone()) * (b.0.clone() - a.0.clone())
                {
                    out.pop();
                }
            }
            out.push(p);
        }
        PlMap { pts: out }
    }

    /// A single bump on `(u, v)` through the interior point `(x, y)`.
    pub fn bump(u: T, v: T, x: T, y: T) -> Result<Self, RealizationError> {
        let mut pts = Vec::new();
        if !u.is_zero() {
            pts.push((T::zero(), T::zero()));
        }
        pts.push((u.clone(), u));
        pts.push((x, y));
        pts.push((v.clone(), v.clone()));
        if !v.is_one() {
            pts.push((T::one(), T::one()));
        }
        Self::new(pts)
    }

    pub fn breakpoints(&self) -> &[(T, T)] {
        &self.pts
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2
    }

    fn interpolate(pts: &[(T, T)], x: &T, key: impl Fn(&(T, T)) -> (&T, &T)) -> T {
        let i = pts.partition_point(|p| key(p).0 < x);
        if i < pts.len() && key(&pts[i]).0 == x {
            return key(&pts[i]).1.clone();
        }
        assert!(i > 0 && i < pts.len(), "argument {x} outside [0,1]");
        let (x0, y0) = key(&pts[i - 1]);
        let (x1, y1) = key(&pts[i]);
        y0.clone() + (x.clone() - x0.clone()) * (y1.clone() - y0.clone()) / (x1.clone() - x0.clone())
    }

    pub fn eval(&self, x: &T) -> T {
        Self::interpolate(&self.pts, x, |p| (&p.0, &p.1))
    }

    pub fn eval_inv(&self, y: &T) -> T {
        Self::interpolate(&self.pts, y, |p| (&p.1, &p.0))
    }

    pub fn inverse(&self) -> Self {
        PlMap {
            pts: self.pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `x ↦ g(self(x))`.
    pub fn then(&self, g: &PlMap<T>) -> PlMap<T> {
        let mut xs: Vec<T> = self.pts.iter().map(|p| p.0.clone()).collect();
        xs.extend(g.pts.iter().map(|p| self.eval_inv(&p.0)));
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = g.eval(&self.eval(&x));
                (x, y)
            })
            .collect();
        Self::simplify(pts)
    }

    pub fn pow(&self, k: i64) -> PlMap<T> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = PlMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.then(&base);
        }
        acc
    }

    /// `g⁻¹ self g`.
    pub fn conj(&self, g: &PlMap<T>) -> PlMap<T> {
        g.inverse().then(self).then(g)
    }

    /// `self⁻¹ g⁻¹ self g`.
    pub fn commutator(&self, g: &PlMap<T>) -> PlMap<T> {
        self.inverse().then(&g.inverse()).then(self).then(g)
    }

    pub fn commutes_with(&self, g: &PlMap<T>) -> bool {
        self.then(g) == g.then(self)
    }

    /// Orbitals left to right, with exact endpoints.
    pub fn orbitals(&self) -> Vec<Orbital<T>> {
        let d = |p: &(T, T)| p.1.clone() - p.0.clone();
        let mut cuts: Vec<T> = Vec::new();
        for w in self.pts.windows(2) {
            let (d0, d1) = (d(&w[0]), d(&w[1]));
            cuts.push(w[0].0.clone());
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                let root = w[0].0.clone() + d0.clone() * (w[1].0.clone() - w[0].0.clone()) / (d0 - d1);
                cuts.push(root);
            }
        }
        cuts.push(T::one());
        let two = T::one() + T::one();
        let mut out: Vec<Orbital<T>> = Vec::new();
        for w in cuts.windows(2) {
            let mid = (w[0].clone() + w[1].clone()) / two.clone();
            let delta = self.eval(&mid) - mid;
            if delta.is_zero() {
                continue;
            }
            let positive = delta.is_positive();
            match out.last_mut() {
                Some(o) if o.hi == w[0] && o.positive == positive && self.eval(&w[0]) != w[0] => {
                    o.hi = w[1].clone();
                }
                _ => out.push(Orbital {
                    lo: w[0].clone(),
                    hi: w[1].clone(),
                    positive,
                }),
            }
        }
        out
    }

    /// Agrees with `self` on `[lo, hi]` and is the identity elsewhere. Both
    /// endpoints must be fixed points.
    pub fn restrict(&self, lo: &T, hi: &T) -> PlMap<T> {
        debug_assert!(self.eval(lo) == *lo && self.eval(hi) == *hi);
        let mut pts = vec![(T::zero(), T::zero()), (lo.clone(), lo.clone())];
        pts.extend(self.pts.iter().filter(|p| p.0 > *lo && p.0 < *hi).cloned());
        pts.push((hi.clone(), hi.clone()));
        pts.push((T::one(), T::one()));
        Self::simplify(pts)
    }

    /// The copy of `self` conjugated by the affine map of `[0,1]` onto
    /// `[lo, hi]`, extended by the identity.
    pub fn scaled(&self, lo: &T, hi: &T) -> PlMap<T> {
        let w = hi.clone() - lo.clone();
        let s = |t: &T| lo.clone() + w.clone() * t.clone();
        let mut pts = vec![(T::zero(), T::zero())];
        pts.extend(self.pts.iter().map(|(x, y)| (s(x), s(y))));
        pts.push((T::one(), T::one()));
        Self::simplify(pts)
    }

    /// Slope of each linear piece, left to right.
    pub fn slopes(&self) -> Vec<T> {
        self.pts
            .windows(2)
            .map(|w| (w[1].1.clone() - w[0].1.clone()) / (w[1].0.clone() - w[0].0.clone()))
            .collect()
    }
}
