//! Rebuilding every bump as two affine pieces with slopes in `σ·2^ℤ`.

use super::genset::{relation, GenSet, Relation};
use super::marked::MarkedFn;
use super::pl::PlMap;
use super::{RealizationError, Scalar};

/// Rebuilds each bump with slopes `σ·2^k` and `σ·2^-k`, where `σ = 3` for
/// the element whose support contains every other and `σ = 1` otherwise,
/// raising `k` until the new feet fit inside the old ones. Transition
/// points do not move, so the dynamical diagram is unchanged.
pub fn retrofit_slopes<T: Scalar>(s: &GenSet<T>) -> Result<GenSet<T>, RealizationError> {
    let n = s.len();
    let top = (0..n).find(|&i| (0..n).all(|j| j == i || matches!(relation(s.get(j), s.get(i)), Relation::Inside)));
    let (fns, names) = s.clone().into_parts();
    let rebuilt = fns
        .iter()
        .enumerate()
        .map(|(i, f)| rebuild(f, if Some(i) == top { 3 } else { 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    GenSet::with_names(rebuilt, names)
}

fn rebuild<T: Scalar>(f: &MarkedFn<T>, sigma: i64) -> Result<MarkedFn<T>, RealizationError> {
    let sigma = T::from_i64(sigma).expect("small");
    let two = T::one() + T::one();
    let feet = f.feet();
    let mut pts = vec![(T::zero(), T::zero())];
    let mut markers = Vec::new();
    for (k, o) in f.orbitals().iter().enumerate() {
        let (lf, rf) = (&feet[2 * k], &feet[2 * k + 1]);
        let (u, v) = (o.lo.clone(), o.hi.clone());
        let mut big = sigma.clone();
        let mut small = sigma.clone();
        let mut found = None;
        for _ in 0..200 {
            big = big * two.clone();
            small = small / two.clone();
            if small >= T::one() {
                continue;
            }
            let (s1, s2) = if o.positive {
                (big.clone(), small.clone())
            } else {
                (small.clone(), big.clone())
            };
            let x = (v.clone() * (T::one() - s2.clone()) - u.clone() * (T::one() - s1.clone())) / (s1.clone() - s2);
            let y = u.clone() + s1 * (x.clone() - u.clone());
            // New feet (u, min) and [max, v) must sit inside the old ones.
            let (m, t) = if o.positive {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            };
            if m <= lf.hi && t >= rf.lo {
                found = Some((x, y, m));
                break;
            }
        }
        let (x, y, m) = found.ok_or_else(|| RealizationError::BadMap("feet too small to retrofit".into()))?;
        pts.push((u.clone(), u));
        pts.push((x, y));
        pts.push((v.clone(), v));
        markers.push(m);
    }
    pts.push((T::one(), T::one()));
    pts.dedup();
    MarkedFn::new(PlMap::new(pts)?, markers)
}
