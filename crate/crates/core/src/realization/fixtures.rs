//! Hand-built generating sets used as references for diagram comparisons.

use super::genset::GenSet;
use super::marked::MarkedFn;
use super::{frac, Scalar};

type Bump = (i64, i64, i64, i64);

fn at<T: Scalar>(pos: i64) -> T {
    frac(pos + 12, 128)
}

fn build<T: Scalar>(fns: &[(&str, &[Bump])]) -> GenSet<T> {
    let (fs, names): (Vec<_>, Vec<_>) = fns
        .iter()
        .map(|(name, bumps)| {
            let b: Vec<(T, T, T, T)> = bumps.iter().map(|&(u, v, x, y)| (at(u), at(v), at(x), at(y))).collect();
            (
                MarkedFn::from_bumps(&b).expect("fixture bumps are valid"),
                name.to_string(),
            )
        })
        .unzip();
    GenSet::with_names(fs, names).expect("fixture is fast")
}

/// Three functions `h < g < f`: `f` has two negative then two positive
/// bumps, `g` a single bump spanning its middle, `h` a small bump around
/// the point where `f` changes sign.
pub fn three_function_set<T: Scalar>() -> GenSet<T> {
    build(&[
        (
            "f",
            &[(-2, 24, 22, 2), (24, 48, 46, 26), (48, 72, 50, 70), (72, 98, 74, 94)],
        ),
        ("g", &[(10, 86, 14, 82)]),
        ("h", &[(34, 62, 38, 58)]),
    ])
}

/// `a` with one negative and one positive bump, `b` around their common
/// endpoint, and a separate bump `c` to the right.
pub fn split_set<T: Scalar>() -> GenSet<T> {
    build(&[
        ("a", &[(22, 48, 46, 26), (48, 74, 50, 70)]),
        ("b", &[(34, 62, 38, 58)]),
        ("c", &[(82, 110, 86, 106)]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    #[test]
    fn three_function_oscillations() {
        let s = three_function_set::<Rat>();
        assert_eq!(s.names(), ["h", "g", "f"]);
        let o = s.oscillation_matrix().unwrap();
        assert_eq!((o.get(0, 1), o.get(0, 2), o.get(1, 2)), (1, 2, 2));
        assert!(s.is_fast());
        assert!(!s.is_sgen());
    }

    #[test]
    fn split_set_shape() {
        let s = split_set::<Rat>();
        assert_eq!(s.names(), ["b", "a", "c"]);
        assert!(s.is_fast());
        let o = s.oscillation_matrix().unwrap();
        assert_eq!((o.get(0, 1), o.get(0, 2), o.get(1, 2)), (2, 0, 0));
    }
}
