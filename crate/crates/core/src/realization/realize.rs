//! Constructive realization of a signature by a standard generating set.

use super::genset::{oscillation, standard_pair, GenSet};
use super::marked::MarkedFn;
use super::pl::PlMap;
use super::{frac, half, RealizationError, Scalar};
use crate::signature::Signature;

/// A standard generating set whose signature is `a`. The result is checked
/// against `a` before it is returned.
pub fn realize<T: Scalar>(a: &Signature) -> Result<GenSet<T>, RealizationError> {
    let fns = realize_unit(a)?;
    let his: Vec<&T> = fns.iter().map(|f| f.hi()).collect();
    if his.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RealizationError::Verification(
            "base order is not the transition order".into(),
        ));
    }
    let labels = a.labels().to_vec();
    let set = GenSet::with_names(fns, labels)?;
    let got = set.signature_of()?;
    if got != *a {
        return Err(RealizationError::Verification(format!("realized {got}, wanted {a}")));
    }
    Ok(set)
}

/// Realizes `a` inside `(0, 1)`, listed in base order.
fn realize_unit<T: Scalar>(a: &Signature) -> Result<Vec<MarkedFn<T>>, RealizationError> {
    let n = a.n();
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![MarkedFn::unit_bump(T::zero(), T::one())]),
        _ => {}
    }
    if !a.is_indecomposable() {
        let parts = a.decompose();
        let m = parts.len() as i64;
        let mut out = Vec::with_capacity(n);
        for (k, part) in parts.iter().enumerate() {
            let k = k as i64;
            let lo: T = frac::<T>(k, m) + frac(1, 4 * m);
            let hi: T = frac::<T>(k + 1, m) - frac(1, 4 * m);
            out.extend(realize_unit::<T>(part)?.iter().map(|f| f.scaled(&lo, &hi)));
        }
        return Ok(out);
    }
    let top = n - 1;
    let (lo, hi): (T, T) = (frac(1, 3), frac(2, 3));
    if (0..top).all(|i| a.get(i, top) == 1) {
        let below = a.drop_top().expect("nonempty");
        let mut out: Vec<MarkedFn<T>> = realize_unit::<T>(&below)?.iter().map(|f| f.scaled(&lo, &hi)).collect();
        out.push(MarkedFn::from_bumps(&[(T::zero(), T::one(), frac(1, 6), frac(5, 6))])?);
        return Ok(out);
    }
    let inner: Vec<MarkedFn<T>> = realize_unit::<T>(&a.rotate())?
        .iter()
        .map(|f| f.scaled(&lo, &hi))
        .collect();
    let (b, rest) = inner
        .split_first()
        .expect("rotation of an indecomposable keeps its size");
    let mut candidates = Vec::new();
    if b.bump_count() == 1 && b.orbitals()[0].positive {
        candidates.push(two_orbital_top(b, rest)?);
    }
    candidates.push(wrapped_top(b, rest)?);
    for top_fn in candidates {
        if top_fits(a, rest, &top_fn) {
            let mut out = rest.to_vec();
            out.push(top_fn);
            return Ok(out);
        }
    }
    Err(RealizationError::Verification(format!("no admissible top for {a}")))
}

/// Largest foot endpoint of `fns` strictly below `x`, or 0.
fn gap_below<T: Scalar>(fns: &[MarkedFn<T>], x: &T) -> T {
    fns.iter()
        .flat_map(|f| f.feet())
        .flat_map(|ft| [ft.lo, ft.hi])
        .filter(|e| e < x)
        .max()
        .unwrap_or_else(T::zero)
}

/// Smallest foot endpoint of `fns` strictly above `y`, or 1.
fn gap_above<T: Scalar>(fns: &[MarkedFn<T>], y: &T) -> T {
    fns.iter()
        .flat_map(|f| f.feet())
        .flat_map(|ft| [ft.lo, ft.hi])
        .filter(|e| e > y)
        .min()
        .unwrap_or_else(T::one)
}

/// Breakpoints of a negative bump on `(0, x)` whose right foot sits in the
/// gap left of `x`.
fn left_wing<T: Scalar>(rest: &[MarkedFn<T>], x: &T) -> (T, T) {
    let t = half(gap_below(rest, x) + x.clone());
    let s = half(t.clone().min(frac(1, 3)));
    (t, s)
}

/// A negative bump on `(0, p)` and a positive bump on `(p, 1)` whose left
/// foot is exactly the support `(p, q)` of `b`.
fn two_orbital_top<T: Scalar>(b: &MarkedFn<T>, rest: &[MarkedFn<T>]) -> Result<MarkedFn<T>, RealizationError> {
    let (p, q) = (b.lo().clone(), b.hi().clone());
    let (t_l, s_l) = left_wing(rest, &p);
    let t_r = half(T::one() + q.clone().max(frac(2, 3)));
    let map = PlMap::new(vec![
        (T::zero(), T::zero()),
        (t_l, s_l.clone()),
        (p.clone(), p),
        (q.clone(), t_r),
        (T::one(), T::one()),
    ])?;
    MarkedFn::new(map, vec![s_l, q])
}

/// `b` with a negative bump attached on the left and a positive bump on the
/// right, so that rotating the result gives back `b`.
fn wrapped_top<T: Scalar>(b: &MarkedFn<T>, rest: &[MarkedFn<T>]) -> Result<MarkedFn<T>, RealizationError> {
    let (x, y) = (b.lo().clone(), b.hi().clone());
    let (t_l, s_l) = left_wing(rest, &x);
    let s_r = half(y.clone() + gap_above(rest, &y));
    let t_r = half(T::one() + s_r.clone().max(frac(2, 3)));
    let mut pts = vec![(T::zero(), T::zero()), (t_l, s_l.clone())];
    pts.extend(b.map().breakpoints().iter().filter(|p| p.0 >= x && p.0 <= y).cloned());
    pts.push((s_r.clone(), t_r));
    pts.push((T::one(), T::one()));
    let mut markers = vec![s_l];
    markers.extend(b.markers().iter().cloned());
    markers.push(s_r);
    MarkedFn::new(PlMap::new(pts)?, markers)
}

fn top_fits<T: Scalar>(a: &Signature, rest: &[MarkedFn<T>], top: &MarkedFn<T>) -> bool {
    let n = a.n() - 1;
    top.is_standard()
        && rest
            .iter()
            .enumerate()
            .all(|(i, f)| f.hi() < top.hi() && standard_pair(f, top) && oscillation(f, top) == a.get(i, n))
}
