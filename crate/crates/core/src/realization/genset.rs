//! Finite sets of marked functions: fastness, standard pairs, oscillation,
//! signatures, and the geometric rotation and inflation.

use std::cmp::Ordering;

use serde_json::{json, Value};

use super::marked::{Foot, MarkedFn};
use super::pl::PlMap;
use super::{RealizationError, Scalar};
use crate::signature::{OscMatrix, Signature};

/// How two extended supports sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `f ≪ g`
    Left,
    /// `f ⊏ g`
    Inside,
    /// `g ⊏ f`
    Contains,
    /// `g ≪ f`
    Right,
    Incomparable,
}

pub fn relation<T: Scalar>(f: &MarkedFn<T>, g: &MarkedFn<T>) -> Relation {
    if f.hi() <= g.lo() {
        Relation::Left
    } else if g.hi() <= f.lo() {
        Relation::Right
    } else if g.lo() < f.lo() && f.hi() < g.hi() {
        Relation::Inside
    } else if f.lo() < g.lo() && g.hi() < f.hi() {
        Relation::Contains
    } else {
        Relation::Incomparable
    }
}

/// Feet of all the given functions pairwise disjoint, own bumps included.
pub fn fast_pair<T: Scalar>(f: &MarkedFn<T>, g: &MarkedFn<T>) -> bool {
    let (ff, gf) = (f.feet(), g.feet());
    own_feet_ok(&ff) && own_feet_ok(&gf) && ff.iter().all(|a| gf.iter().all(|b| !a.meets(b)))
}

fn own_feet_ok<T: Scalar>(feet: &[Foot<T>]) -> bool {
    feet.iter()
        .enumerate()
        .all(|(i, a)| feet[i + 1..].iter().all(|b| a.bump == b.bump || !a.meets(b)))
}

/// Number of orbitals of `g` containing a transition point of `f`.
pub fn oscillation<T: Scalar>(f: &MarkedFn<T>, g: &MarkedFn<T>) -> u32 {
    let tp = f.transition_points();
    g.orbitals().iter().filter(|o| tp.iter().any(|t| o.contains(t))).count() as u32
}

const STANDARD_DEPTH: usize = 256;

/// `(f, g)` is standard: fast, and `f ≪ g` or `f ⊏ g` with `(g⦿, f)` standard.
pub fn standard_pair<T: Scalar>(f: &MarkedFn<T>, g: &MarkedFn<T>) -> bool {
    standard_at(f, g, STANDARD_DEPTH)
}

fn standard_at<T: Scalar>(f: &MarkedFn<T>, g: &MarkedFn<T>, depth: usize) -> bool {
    assert!(depth > 0, "standard-pair recursion did not terminate");
    if !f.is_standard() || !g.is_standard() || !fast_pair(f, g) {
        return false;
    }
    match relation(f, g) {
        Relation::Left => true,
        Relation::Inside => match g.rotate() {
            Ok(gr) => standard_at(&gr, f, depth - 1),
            Err(_) => false,
        },
        _ => false,
    }
}

/// Everything [`GenSet::classify_pair`] reports about an ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInfo {
    pub relation: Relation,
    pub fast: bool,
    pub oscillation: Option<u32>,
    pub standard: bool,
}

/// A finite set of marked functions, ordered by maximum transition point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet<T> {
    fns: Vec<MarkedFn<T>>,
    names: Vec<String>,
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).collect()
}

impl<T: Scalar> GenSet<T> {
    pub fn new(fns: Vec<MarkedFn<T>>) -> Result<Self, RealizationError> {
        let names = default_names(fns.len());
        Self::with_names(fns, names)
    }

    /// Sorts by maximum transition point, carrying names along.
    pub fn with_names(fns: Vec<MarkedFn<T>>, names: Vec<String>) -> Result<Self, RealizationError> {
        assert_eq!(fns.len(), names.len());
        if fns.iter().any(|f| f.is_empty()) {
            return Err(RealizationError::Empty);
        }
        let mut pairs: Vec<(MarkedFn<T>, String)> = fns.into_iter().zip(names).collect();
        pairs.sort_by(|a, b| a.0.hi().cmp(b.0.hi()));
        let (fns, names): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Ok(GenSet { fns, names })
    }

    pub fn empty() -> Self {
        GenSet {
            fns: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.fns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fns.is_empty()
    }

    pub fn fns(&self) -> &[MarkedFn<T>] {
        &self.fns
    }

    pub fn get(&self, i: usize) -> &MarkedFn<T> {
        &self.fns[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn maps(&self) -> Vec<PlMap<T>> {
        self.fns.iter().map(|f| f.map().clone()).collect()
    }

    pub fn into_parts(self) -> (Vec<MarkedFn<T>>, Vec<String>) {
        (self.fns, self.names)
    }

    /// The first pair of functions whose feet meet, if any.
    pub fn fast_violation(&self) -> Option<(usize, usize)> {
        let feet: Vec<Vec<Foot<T>>> = self.fns.iter().map(|f| f.feet()).collect();
        for i in 0..feet.len() {
            if !own_feet_ok(&feet[i]) {
                return Some((i, i));
            }
            for j in i + 1..feet.len() {
                if feet[i].iter().any(|a| feet[j].iter().any(|b| a.meets(b))) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_fast(&self) -> bool {
        self.fast_violation().is_none()
    }

    pub fn classify_pair(&self, i: usize, j: usize) -> PairInfo {
        let (f, g) = (&self.fns[i], &self.fns[j]);
        let rel = relation(f, g);
        let fast = fast_pair(f, g);
        let oscillation = match rel {
            Relation::Left | Relation::Inside if fast => Some(oscillation(f, g)),
            Relation::Right | Relation::Contains if fast => Some(oscillation(g, f)),
            _ => None,
        };
        let standard = match rel {
            Relation::Right | Relation::Contains => standard_pair(g, f),
            _ => standard_pair(f, g),
        };
        PairInfo {
            relation: rel,
            fast,
            oscillation,
            standard,
        }
    }

    pub fn is_sgen(&self) -> bool {
        self.sgen_violation().is_none()
    }

    fn sgen_violation(&self) -> Option<RealizationError> {
        if let Some(i) = self.fns.iter().position(|f| !f.is_standard()) {
            return Some(RealizationError::NotStandardFn(i));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !standard_pair(&self.fns[i], &self.fns[j]) {
                    return Some(RealizationError::NotStandard(i, j));
                }
            }
        }
        None
    }

    /// Pairwise oscillations of a fast set totally ordered by `<`.
    pub fn oscillation_matrix(&self) -> Result<OscMatrix, RealizationError> {
        if let Some((i, j)) = self.fast_violation() {
            return Err(RealizationError::NotFast(i, j));
        }
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !matches!(relation(&self.fns[i], &self.fns[j]), Relation::Left | Relation::Inside) {
                    return Err(RealizationError::NotOrdered(i, j));
                }
            }
        }
        let m = OscMatrix::from_fn(n, |i, j| oscillation(&self.fns[i], &self.fns[j]));
        m.with_labels(self.names.clone())
            .map_err(|e| RealizationError::Verification(e.to_string()))
    }

    pub fn signature_of(&self) -> Result<Signature, RealizationError> {
        if let Some((i, j)) = self.fast_violation() {
            return Err(RealizationError::NotFast(i, j));
        }
        if let Some(e) = self.sgen_violation() {
            return Err(e);
        }
        let m = self.oscillation_matrix()?;
        Signature::new(m).map_err(|e| RealizationError::Verification(e.to_string()))
    }

    /// `A⦿`: the top replaced by its rotation, or dropped when it oscillates
    /// with nothing.
    pub fn set_rotate(&self) -> Result<GenSet<T>, RealizationError> {
        let Some(top) = self.fns.last() else {
            return Ok(self.clone());
        };
        let n = self.len();
        let isolated = self.fns[..n - 1].iter().all(|f| oscillation(f, top) == 0);
        let mut fns = self.fns[..n - 1].to_vec();
        let mut names = self.names[..n - 1].to_vec();
        if !isolated {
            fns.insert(0, top.rotate()?);
            names.insert(0, format!("{}@", self.names[n - 1]));
        }
        GenSet::with_names(fns, names)
    }

    /// Inflation by element `m`: `a` becomes `a²` and every `b < a` that
    /// oscillates with `a` gains a conjugate `b^a`.
    pub fn set_inflate(&self, m: usize) -> Result<GenSet<T>, RealizationError> {
        if m >= self.len() {
            return Err(RealizationError::NoElement(m, self.len()));
        }
        let a = &self.fns[m];
        let mut fns = Vec::new();
        let mut names = Vec::new();
        for (i, (f, name)) in self.fns.iter().zip(&self.names).enumerate() {
            if i == m {
                fns.push(a.square());
                names.push(format!("{name}^2"));
                continue;
            }
            fns.push(f.clone());
            names.push(name.clone());
            // b^a = b when b ≪ a, so only oscillating b gain a conjugate.
            if i < m && oscillation(f, a) > 0 {
                fns.push(f.conj(a.map()));
                let wrap = |s: &str| {
                    if s.contains('^') {
                        format!("({s})")
                    } else {
                        s.to_string()
                    }
                };
                names.push(format!("{}^{}", wrap(name), wrap(&self.names[m])));
            }
        }
        GenSet::with_names(fns, names)
    }

    /// `{"functions": [{"name", "breakpoints", "markers"}, ..]}` with
    /// rationals as strings.
    pub fn to_json_value(&self) -> Value {
        let fns: Vec<Value> = self
            .fns
            .iter()
            .zip(&self.names)
            .map(|(f, name)| {
                let bps: Vec<Value> = f
                    .map()
                    .breakpoints()
                    .iter()
                    .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                    .collect();
                let markers: Vec<String> = f.markers().iter().map(|s| s.to_string()).collect();
                json!({"name": name, "breakpoints": bps, "markers": markers})
            })
            .collect();
        json!({ "functions": fns })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Accepts the object form written by [`GenSet::to_json`] or a bare list
    /// of functions; names are optional.
    pub fn from_json(text: &str) -> Result<Self, RealizationError> {
        let err = |m: String| RealizationError::Json(m);
        let v: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
        let list = match &v {
            Value::Array(a) => a,
            Value::Object(o) => o
                .get("functions")
                .and_then(Value::as_array)
                .ok_or_else(|| err("missing \"functions\" array".into()))?,
            _ => return Err(err("expected an object or array".into())),
        };
        let parse = |v: &Value| -> Result<T, RealizationError> {
            let s = v
                .as_str()
                .ok_or_else(|| err(format!("expected rational string, got {v}")))?;
            s.trim().parse::<T>().map_err(|_| err(format!("bad rational {s:?}")))
        };
        let mut fns = Vec::new();
        let mut names = Vec::new();
        for (k, f) in list.iter().enumerate() {
            let bps = f
                .get("breakpoints")
                .and_then(Value::as_array)
                .ok_or_else(|| err(format!("function {k}: missing breakpoints")))?;
            let pts = bps
                .iter()
                .map(|p| match p.as_array().map(|a| a.as_slice()) {
                    Some([x, y]) => Ok((parse(x)?, parse(y)?)),
                    _ => Err(err(format!("function {k}: breakpoint must be a pair"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let markers = f
                .get("markers")
                .and_then(Value::as_array)
                .ok_or_else(|| err(format!("function {k}: missing markers")))?
                .iter()
                .map(&parse)
                .collect::<Result<Vec<_>, _>>()?;
            fns.push(MarkedFn::new(PlMap::new(pts)?, markers)?);
            names.push(
                f.get("name")
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("a{k}")),
            );
        }
        GenSet::with_names(fns, names)
    }
}

/// Orders functions by maximum transition point.
pub fn by_max_transition<T: Scalar>(a: &MarkedFn<T>, b: &MarkedFn<T>) -> Ordering {
    a.hi().cmp(b.hi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::frac;
    use crate::Rat;

    fn q(n: i64, d: i64) -> Rat {
        frac(n, d)
    }

    fn bump(u: i64, v: i64) -> MarkedFn<Rat> {
        MarkedFn::unit_bump(q(u, 64), q(v, 64))
    }

    #[test]
    fn disjoint_bumps() {
        let s = GenSet::new(vec![bump(32, 48), bump(8, 24)]).unwrap();
        assert_eq!(s.get(0).lo(), &q(8, 64));
        let info = s.classify_pair(0, 1);
        assert_eq!(
            info,
            PairInfo {
                relation: Relation::Left,
                fast: true,
                oscillation: Some(0),
                standard: true
            }
        );
        assert_eq!(s.signature_of().unwrap(), Signature::one().sum(&Signature::one()));
    }

    #[test]
    fn nested_bumps_oscillate_once() {
        let s = GenSet::new(vec![bump(0, 64), bump(16, 48)]).unwrap();
        assert_eq!(s.classify_pair(0, 1).oscillation, Some(1));
        assert_eq!(s.signature_of().unwrap(), Signature::pair(1));
        assert_eq!(
            s.set_rotate().unwrap().signature_of().unwrap(),
            Signature::pair(1).rotate()
        );
    }

    #[test]
    fn overlapping_feet_are_not_fast() {
        let s = GenSet::new(vec![bump(0, 64), bump(1, 48)]).unwrap();
        assert!(!s.is_fast());
        assert_eq!(s.signature_of(), Err(RealizationError::NotFast(0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let s = GenSet::new(vec![bump(0, 64), bump(16, 48)]).unwrap();
        let back = GenSet::<Rat>::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let bare = r#"[{"breakpoints": [["0","0"],["1/4","1/2"],["1","1"]], "markers": ["1/8"]}]"#;
        assert_eq!(GenSet::<Rat>::from_json(bare).unwrap().len(), 1);
        assert!(GenSet::<Rat>::from_json(r#"[{"breakpoints": [["0","0"],["1","1"]], "markers": ["1/8"]}]"#).is_err());
    }

    #[test]
    fn rotate_drops_an_isolated_top() {
        let s = GenSet::new(vec![bump(8, 24), bump(32, 48)]).unwrap();
        assert_eq!(s.set_rotate().unwrap().len(), 1);
        assert!(GenSet::<Rat>::empty().set_rotate().unwrap().is_empty());
    }

    #[test]
    fn inflating_a_minimal_element_squares_it() {
        let s = GenSet::new(vec![bump(0, 64), bump(16, 48)]).unwrap();
        let t = s.set_inflate(0).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.signature_of().unwrap(), s.signature_of().unwrap());
        assert!(s.set_inflate(2).is_err());
    }
}
