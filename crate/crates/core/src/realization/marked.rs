//! Marked functions: PL maps with one marker per bump, and their feet.

use super::pl::{Orbital, PlMap};
use super::{frac, half, RealizationError, Scalar};

/// A foot of a bump: `(lo, hi)` for a left foot, `[lo, hi)` for a right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foot<T> {
    pub lo: T,
    pub hi: T,
    pub left: bool,
    pub bump: usize,
}

impl<T: Scalar> Foot<T> {
    /// Open and half-open feet with these conventions meet exactly when the
    /// larger left end is below the smaller right end.
    pub fn meets(&self, other: &Foot<T>) -> bool {
        self.lo.clone().max(other.lo.clone()) < self.hi.clone().min(other.hi.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedFn<T> {
    map: PlMap<T>,
    markers: Vec<T>,
    orbitals: Vec<Orbital<T>>,
}

impl<T: Scalar> MarkedFn<T> {
    pub fn new(map: PlMap<T>, markers: Vec<T>) -> Result<Self, RealizationError> {
        let orbitals = map.orbitals();
        if orbitals.len() != markers.len() {
            return Err(RealizationError::Marker(format!(
                "{} markers for {} bumps",
                markers.len(),
                orbitals.len()
            )));
        }
        if let Some((o, s)) = orbitals.iter().zip(&markers).find(|(o, s)| !o.contains(s)) {
            return Err(RealizationError::Marker(format!(
                "marker {s} outside bump ({}, {})",
                o.lo, o.hi
            )));
        }
        Ok(MarkedFn { map, markers, orbitals })
    }

    /// Disjoint bumps given as `(u, v, x, y)`: support `(u, v)` and one
    /// interior breakpoint `(x, y)`. The marker is `min(x, y)`, so the feet
    /// are `(u, min)` and `[max, v)`.
    pub fn from_bumps(parts: &[(T, T, T, T)]) -> Result<Self, RealizationError> {
        let mut pts = vec![(T::zero(), T::zero())];
        let mut markers = Vec::new();
        let mut sorted = parts.to_vec();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        for (u, v, x, y) in sorted {
            pts.push((u.clone(), u));
            markers.push(x.clone().min(y.clone()));
            pts.push((x, y));
            pts.push((v.clone(), v));
        }
        pts.push((T::one(), T::one()));
        pts.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        Self::new(PlMap::new(pts)?, markers)
    }

    /// The bump on `(u, v)` through `(u + w/16, u + 15w/16)`, marked at the
    /// breakpoint.
    pub fn unit_bump(u: T, v: T) -> Self {
        let w = v.clone() - u.clone();
        let x = u.clone() + w.clone() * frac(1, 16);
        let y = u.clone() + w * frac(15, 16);
        Self::from_bumps(&[(u, v, x, y)]).expect("canonical bump")
    }

    /// The bump on `(r, s)` through `(mid, r + 3(s-r)/4)`, marked at `mid`.
    pub fn rotation_bump(r: T, s: T) -> Self {
        let mid = half(r.clone() + s.clone());
        let y = r.clone() + (s.clone() - r.clone()) * frac(3, 4);
        Self::from_bumps(&[(r, s, mid, y)]).expect("canonical bump")
    }

    pub fn map(&self) -> &PlMap<T> {
        &self.map
    }

    pub fn markers(&self) -> &[T] {
        &self.markers
    }

    pub fn orbitals(&self) -> &[Orbital<T>] {
        &self.orbitals
    }

    pub fn bump_count(&self) -> usize {
        self.orbitals.len()
    }

    pub fn feet(&self) -> Vec<Foot<T>> {
        let mut out = Vec::with_capacity(2 * self.orbitals.len());
        for (k, (o, s)) in self.orbitals.iter().zip(&self.markers).enumerate() {
            let t = if o.positive {
                self.map.eval(s)
            } else {
                self.map.eval_inv(s)
            };
            out.push(Foot {
                lo: o.lo.clone(),
                hi: s.clone(),
                left: true,
                bump: k,
            });
            out.push(Foot {
                lo: t,
                hi: o.hi.clone(),
                left: false,
                bump: k,
            });
        }
        out
    }

    pub fn transition_points(&self) -> Vec<T> {
        let mut pts: Vec<T> = self
            .orbitals
            .iter()
            .flat_map(|o| [o.lo.clone(), o.hi.clone()])
            .collect();
        pts.dedup();
        pts
    }

    /// Left end of the extended support.
    pub fn lo(&self) -> &T {
        &self.orbitals.first().expect("nonempty support").lo
    }

    /// Right end of the extended support, i.e. the maximum transition point.
    pub fn hi(&self) -> &T {
        &self.orbitals.last().expect("nonempty support").hi
    }

    pub fn is_empty(&self) -> bool {
        self.orbitals.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        let o = &self.orbitals;
        if o.is_empty() || o.windows(2).any(|w| w[0].hi != w[1].lo) {
            return false;
        }
        let neg = o.iter().take_while(|b| !b.positive).count();
        if o[neg..].iter().any(|b| !b.positive) {
            return false;
        }
        let pos = o.len() - neg;
        pos == neg || pos == neg + 1
    }

    /// Keeps the bumps with indices in `range`, with their markers.
    pub fn keep_bumps(&self, range: std::ops::Range<usize>) -> Self {
        let mut map = PlMap::identity();
        for o in &self.orbitals[range.clone()] {
            map = map.then(&self.map.restrict(&o.lo, &o.hi));
        }
        MarkedFn::new(map, self.markers[range].to_vec()).expect("restriction keeps markers valid")
    }

    /// `f⦿`: the middle orbitals when there are more than two, otherwise the
    /// canonical bump on the left foot of the positive orbital.
    pub fn rotate(&self) -> Result<Self, RealizationError> {
        let n = self.orbitals.len();
        if n == 0 {
            return Err(RealizationError::Empty);
        }
        if n > 2 {
            return Ok(self.keep_bumps(1..n - 1));
        }
        let k = self
            .orbitals
            .iter()
            .position(|o| o.positive)
            .ok_or_else(|| RealizationError::Marker("no positive orbital to rotate".into()))?;
        Ok(Self::rotation_bump(
            self.orbitals[k].lo.clone(),
            self.markers[k].clone(),
        ))
    }

    /// `g⁻¹ f g` with markers carried along by `g`.
    pub fn conj(&self, g: &PlMap<T>) -> Self {
        let map = self.map.conj(g);
        let markers = self.markers.iter().map(|s| g.eval(s)).collect();
        MarkedFn::new(map, markers).expect("conjugation transports markers")
    }

    /// `f²`, keeping markers of positive bumps and pushing markers of
    /// negative bumps forward by `f`.
    pub fn square(&self) -> Self {
        let map = self.map.then(&self.map);
        let markers = self
            .orbitals
            .iter()
            .zip(&self.markers)
            .map(|(o, s)| if o.positive { s.clone() } else { self.map.eval(s) })
            .collect();
        MarkedFn::new(map, markers).expect("squaring keeps orbitals")
    }

    /// This function conjugated by the affine map of `[0,1]` onto `[lo, hi]`.
    pub fn scaled(&self, lo: &T, hi: &T) -> Self {
        let w = hi.clone() - lo.clone();
        let markers = self
            .markers
            .iter()
            .map(|s| lo.clone() + w.clone() * s.clone())
            .collect();
        MarkedFn::new(self.map.scaled(lo, hi), markers).expect("scaling transports markers")
    }
}
