//! Dynamical diagrams, their isomorphism, DOT output, and excision of
//! extraneous bumps.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::genset::GenSet;
use super::marked::MarkedFn;
use super::{RealizationError, Scalar};

/// A foot, identified by its function, bump, and side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub func: usize,
    pub bump: usize,
    pub left: bool,
}

/// A bump, from its left foot to its right foot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub positive: bool,
    pub func: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynDiagram {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub names: Vec<String>,
}

pub fn diagram<T: Scalar>(s: &GenSet<T>) -> Result<DynDiagram, RealizationError> {
    if let Some((i, j)) = s.fast_violation() {
        return Err(RealizationError::NotFast(i, j));
    }
    let mut feet = Vec::new();
    for (i, f) in s.fns().iter().enumerate() {
        for ft in f.feet() {
            feet.push((
                ft.lo.clone(),
                ft.hi.clone(),
                Vertex {
                    func: i,
                    bump: ft.bump,
                    left: ft.left,
                },
            ));
        }
    }
    feet.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let vertices: Vec<Vertex> = feet.into_iter().map(|f| f.2).collect();
    let find = |func: usize, bump: usize, left: bool| {
        vertices
            .iter()
            .position(|v| *v == Vertex { func, bump, left })
            .expect("every bump has two feet")
    };
    let mut edges = Vec::new();
    for (i, f) in s.fns().iter().enumerate() {
        for (k, o) in f.orbitals().iter().enumerate() {
            edges.push(Edge {
                from: find(i, k, true),
                to: find(i, k, false),
                positive: o.positive,
                func: i,
            });
        }
    }
    edges.sort_by_key(|e| e.from);
    Ok(DynDiagram {
        vertices,
        edges,
        names: s.names().to_vec(),
    })
}

/// Whether the order-preserving bijection of vertices carries edges to
/// edges, keeps directions, and induces a bijection of labels.
pub fn diagram_iso(d1: &DynDiagram, d2: &DynDiagram) -> bool {
    if d1.vertices.len() != d2.vertices.len() || d1.edges.len() != d2.edges.len() {
        return false;
    }
    let index: HashMap<(usize, usize), &Edge> = d2.edges.iter().map(|e| ((e.from, e.to), e)).collect();
    let mut fwd: HashMap<usize, usize> = HashMap::new();
    let mut back: HashMap<usize, usize> = HashMap::new();
    for e in &d1.edges {
        let Some(e2) = index.get(&(e.from, e.to)) else {
            return false;
        };
        if e2.positive != e.positive {
            return false;
        }
        if *fwd.entry(e.func).or_insert(e2.func) != e2.func || *back.entry(e2.func).or_insert(e.func) != e.func {
            return false;
        }
    }
    true
}

impl DynDiagram {
    /// Groups of vertices after merging each right foot with a directly
    /// following left foot of the same function.
    pub fn contracted(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let merge = i > 0 && {
                let p = self.vertices[i - 1];
                !p.left && v.left && p.func == v.func
            };
            match groups.last_mut() {
                Some(g) if merge => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        groups
    }

    pub fn to_dot(&self) -> String {
        let groups = self.contracted();
        let mut of = vec![0; self.vertices.len()];
        for (g, members) in groups.iter().enumerate() {
            for &m in members {
                of[m] = g;
            }
        }
        let mut out = String::from("digraph diagram {\n  rankdir=LR;\n  node [shape=point];\n");
        let chain: Vec<String> = (0..groups.len()).map(|g| format!("v{g}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", chain.join("; "));
        if chain.len() > 1 {
            let _ = writeln!(out, "  {} [style=invis];", chain.join(" -> "));
        }
        for e in &self.edges {
            let (a, b) = (of[e.from], of[e.to]);
            let name = &self.names[e.func];
            if e.positive {
                let _ = writeln!(out, "  v{a} -> v{b} [label=\"{name}\"];");
            } else {
                let _ = writeln!(out, "  v{b} -> v{a} [label=\"{name}\", constraint=false];");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn isolated<T: Scalar>(s: &GenSet<T>, f: usize, k: usize) -> bool {
    let o = &s.get(f).orbitals()[k];
    s.fns()
        .iter()
        .all(|g| g.transition_points().iter().all(|t| !o.contains(t)))
}

/// The largest removable prefix/suffix of isolated bumps of `s[f]` that
/// leaves a nonempty standard function, preferring removals on the right.
fn best_cut<T: Scalar>(s: &GenSet<T>, f: usize) -> Option<MarkedFn<T>> {
    let func = s.get(f);
    let n = func.bump_count();
    let iso: Vec<bool> = (0..n).map(|k| isolated(s, f, k)).collect();
    let max_pre = iso.iter().take_while(|&&b| b).count();
    let max_suf = iso.iter().rev().take_while(|&&b| b).count();
    let mut best: Option<(usize, usize)> = None;
    for p in 0..=max_pre.min(n - 1) {
        for q in 0..=max_suf.min(n - 1 - p) {
            if p + q == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bp, bq)) => (p + q, q) > (bp + bq, bq),
            };
            if better && func.keep_bumps(p..n - q).is_standard() {
                best = Some((p, q));
            }
        }
    }
    best.map(|(p, q)| func.keep_bumps(p..n - q))
}

/// Repeatedly removes extraneous bumps until none can be removed without
/// breaking standardness.
pub fn excise<T: Scalar>(s: &GenSet<T>) -> GenSet<T> {
    let mut cur = s.clone();
    loop {
        let cut = (0..cur.len()).find_map(|f| best_cut(&cur, f).map(|g| (f, g)));
        let Some((f, g)) = cut else {
            return cur;
        };
        let (mut fns, names) = cur.into_parts();
        fns[f] = g;
        cur = GenSet::with_names(fns, names).expect("excision keeps a bump of every function");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::{frac, realize};
    use crate::signature::Signature;
    use crate::Rat;

    fn q(n: i64, d: i64) -> Rat {
        frac(n, d)
    }

    fn parts(ps: &[(i64, i64, i64, i64)]) -> MarkedFn<Rat> {
        let v: Vec<_> = ps
            .iter()
            .map(|&(u, v, x, y)| (q(u, 64), q(v, 64), q(x, 64), q(y, 64)))
            .collect();
        MarkedFn::from_bumps(&v).unwrap()
    }

    #[test]
    fn self_isomorphic() {
        let s = realize::<Rat>(&Signature::pair(3)).unwrap();
        let d = diagram(&s).unwrap();
        assert!(diagram_iso(&d, &d));
        let other = diagram(&realize::<Rat>(&Signature::pair(2)).unwrap()).unwrap();
        assert!(!diagram_iso(&d, &other));
    }

    #[test]
    fn tower_pair_diagram_shape() {
        // Nine vertices after contraction; the top's three inner ones and the bottom's
        // two inner ones are contracted pairs.
        let s = realize::<Rat>(&Signature::pair(4)).unwrap();
        let d = diagram(&s).unwrap();
        let groups = d.contracted();
        assert_eq!(groups.len(), 9);
        assert_eq!(groups.iter().filter(|g| g.len() == 2).count(), 5);
        let funcs: Vec<usize> = groups.iter().map(|g| d.vertices[g[0]].func).collect();
        assert_eq!(funcs, [1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let signs: Vec<(usize, bool)> = d.edges.iter().map(|e| (e.func, e.positive)).collect();
        assert_eq!(
            signs,
            [
                (1, false),
                (0, false),
                (1, false),
                (0, true),
                (1, true),
                (0, true),
                (1, true)
            ]
        );
    }

    #[test]
    fn remarking_inside_feet_keeps_the_diagram() {
        let s = realize::<Rat>(&Signature::pair(3)).unwrap();
        let (fns, names) = s.clone().into_parts();
        let moved: Vec<MarkedFn<Rat>> = fns
            .iter()
            .map(|f| {
                // Nudge each positive marker slightly to the left.
                let markers = f
                    .orbitals()
                    .iter()
                    .zip(f.markers())
                    .map(|(o, m)| {
                        if o.positive {
                            m.clone() - (m.clone() - o.lo.clone()) / q(64, 1)
                        } else {
                            m.clone()
                        }
                    })
                    .collect();
                MarkedFn::new(f.map().clone(), markers).unwrap()
            })
            .collect();
        let t = GenSet::with_names(moved, names).unwrap();
        assert!(diagram_iso(&diagram(&s).unwrap(), &diagram(&t).unwrap()));
    }

    #[test]
    fn dot_output() {
        let s = realize::<Rat>(&Signature::pair(2)).unwrap();
        let dot = diagram(&s).unwrap().to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("rank=same"));
        assert!(dot.contains("label=\"1\""));
        assert!(dot.contains("constraint=false"));
    }

    #[test]
    fn excision_of_a_lone_function() {
        let f = parts(&[(8, 24, 20, 10), (24, 40, 26, 38), (40, 56, 42, 54)]);
        let s = GenSet::new(vec![f]).unwrap();
        let e = excise(&s);
        assert_eq!(e.get(0).bump_count(), 1);
        // The middle bump survives: the rightmost goes first, then the leftmost.
        assert_eq!(e.get(0).lo(), &q(24, 64));
    }

    #[test]
    fn nothing_to_excise() {
        let s = realize::<Rat>(&Signature::pair(3)).unwrap();
        assert_eq!(excise(&s), s);
    }
}
