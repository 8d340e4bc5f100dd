//! Signed white graphs of closed three-braid diagrams.
//!
//! The closure is drawn with strand 1 innermost and the unbounded region
//! shaded black, so the white regions are the inner disk (the root) and the
//! regions between strands 2 and 3. A `s1` crossing joins the root to the
//! current outer region with sign `+e`, a `s2` crossing joins two consecutive
//! outer regions with sign `-e`, where `e` is the letter's exponent sign.

mod cycle;
mod goeritz;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{BaldwinClass, BraidLetter, BraidWord};

pub use cycle::{cycle_graph_from_params, to_decorated, DecoratedCycleGraph};
pub use goeritz::{bareiss_determinant, goeritz_matrix, GoeritzMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("the braid word has no crossings")]
    EmptyWord,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("graph is not of cycle form: {0}")]
    ShapeMismatch(String),
    #[error("inconsistent rotation system: {0}")]
    BadRotation(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: i8,
}

/// One end of an edge: `end == 0` sits at `u`, `end == 1` at `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn opposite(self) -> Dart {
        Dart {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// Rooted signed plane multigraph given by a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckerboardGraph {
    names: Vec<String>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
    pub root: String,
}

impl CheckerboardGraph {
    /// Checks that the rotations list every dart exactly once, at the right vertex.
    pub fn new(
        names: Vec<String>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<Dart>>,
        root: usize,
    ) -> Result<Self, DiagramError> {
        let nv = names.len();
        if rotation.len() != nv || root >= nv {
            return Err(DiagramError::BadRotation("vertex count mismatch".into()));
        }
        let mut seen = BTreeSet::new();
        for (v, rot) in rotation.iter().enumerate() {
            for &d in rot {
                let e = edges.get(d.edge).ok_or_else(|| {
                    DiagramError::BadRotation(format!("dart on missing edge {}", d.edge))
                })?;
                let at = if d.end == 0 { e.u } else { e.v };
                if d.end > 1 || at != v || !seen.insert(d) {
                    return Err(DiagramError::BadRotation(format!(
                        "dart {d:?} misplaced at vertex {v}"
                    )));
                }
            }
        }
        if seen.len() != 2 * edges.len() {
            return Err(DiagramError::BadRotation(
                "some dart is missing from every rotation".into(),
            ));
        }
        if let Some(e) = edges
            .iter()
            .find(|e| e.sign != 1 && e.sign != -1 || e.u >= nv || e.v >= nv)
        {
            return Err(DiagramError::BadRotation(format!("bad edge {e:?}")));
        }
        Ok(CheckerboardGraph {
            names,
            edges,
            rotation,
            root,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn dart_vertex(&self, d: Dart) -> usize {
        let e = self.edges[d.edge];
        if d.end == 0 {
            e.u
        } else {
            e.v
        }
    }

    /// Vertex across the edge from `d`.
    pub fn dart_target(&self, d: Dart) -> usize {
        self.dart_vertex(d.opposite())
    }

    fn next_in_rotation(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.dart_vertex(d)];
        let i = rot.iter().position(|&x| x == d).unwrap();
        rot[(i + 1) % rot.len()]
    }

    /// Faces as orbits of `d -> next(opposite(d))`.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for rot in &self.rotation {
            for &start in rot {
                if seen.contains(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                while seen.insert(d) {
                    face.push(d);
                    d = self.next_in_rotation(d.opposite());
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected component index of each vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut c = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = c;
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let w = self.dart_target(d);
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    /// A disconnected white graph comes from a split diagram.
    pub fn is_split(&self) -> bool {
        self.components().iter().any(|&c| c != 0)
    }

    /// `V - E + F = 2` on every component (an isolated vertex has one face).
    pub fn euler_check(&self) -> bool {
        let comp = self.components();
        let k = comp.iter().max().map_or(0, |&c| c + 1);
        let mut chi = vec![0i64; k];
        for &c in &comp {
            chi[c] += 1;
        }
        for e in &self.edges {
            chi[comp[e.u]] -= 1;
        }
        for f in self.faces() {
            chi[comp[self.dart_vertex(f[0])]] += 1;
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            if rot.is_empty() {
                chi[comp[v]] += 1;
            }
        }
        chi.iter().all(|&x| x == 2)
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            vertices: self.vertex_count(),
            edges: self.edges.len(),
            faces: self.faces().len(),
            components: self.components().into_iter().collect::<BTreeSet<_>>().len(),
            root: self.names[self.root].clone(),
        }
    }

    /// Same graph with every edge sign flipped.
    pub fn negated(&self) -> CheckerboardGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.sign = -e.sign;
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph white {\n");
        for (i, n) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  {n} [root={}];", i == self.root);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  {} -- {} [sign={}];",
                self.names[e.u], self.names[e.v], e.sign
            );
        }
        s.push_str("}\n");
        s
    }
}

/// White graph of the closure of `w` (full twists expanded, word freely reduced).
///
/// Outer regions are `g0, g1, ...`, with `g_j` lying just after the `j`-th
/// `s2` crossing; letters before the first `s2` belong to the last region.
/// A word without `s2` crossings closes to a split diagram whose third
/// strand bounds a disk of its own, reported as the isolated vertex `c3`.
pub fn closure_white_graph(w: &BraidWord) -> Result<CheckerboardGraph, DiagramError> {
    let w = w.expand_fulltwist();
    let letters = w.letters();
    if letters.is_empty() {
        return Err(DiagramError::EmptyWord);
    }
    let t = letters.iter().filter(|l| l.generator() == 2).count();
    let root = 0;
    let mut names = vec!["r".to_string()];
    let regions = t.max(1);
    names.extend((0..regions).map(|j| format!("g{j}")));
    let g = |j: usize| 1 + j;

    let mut edges = Vec::new();
    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); names.len()];
    // s1 darts per outer region, in position order
    let mut inner: Vec<Vec<Dart>> = vec![Vec::new(); regions];
    let mut s2_edges = Vec::new();
    let mut root_darts = Vec::new();

    // s1 darts ahead of the first s2 close up the last region's sequence
    let mut wrap = Vec::new();
    let mut current = regions - 1;
    let mut seen_s2 = 0;
    for &l in letters {
        let e = l.sign();
        let id = edges.len();
        if l.generator() == 2 {
            let left = current;
            current = seen_s2;
            seen_s2 += 1;
            edges.push(Edge {
                u: g(left),
                v: g(current),
                sign: -e,
            });
            s2_edges.push(id);
        } else {
            edges.push(Edge {
                u: g(current),
                v: root,
                sign: e,
            });
            if seen_s2 == 0 {
                wrap.push(Dart { edge: id, end: 0 });
            } else {
                inner[current].push(Dart { edge: id, end: 0 });
            }
            root_darts.push(Dart { edge: id, end: 1 });
        }
    }
    inner[regions - 1].extend(wrap);
    for j in 0..regions {
        let rot = &mut rotation[g(j)];
        if t > 0 {
            rot.push(Dart {
                edge: s2_edges[j],
                end: 1,
            });
        }
        rot.extend(inner[j].iter().copied());
        if t > 0 {
            rot.push(Dart {
                edge: s2_edges[(j + 1) % t],
                end: 0,
            });
        }
    }
    root_darts.reverse();
    rotation[root] = root_darts;
    if t == 0 {
        names.push("c3".into());
        rotation.push(Vec::new());
    }
    CheckerboardGraph::new(names, edges, rotation, root)
}

/// Closures of Type 1 braids with `d = 0` are alternating.
pub fn is_alternating_closure(c: &BaldwinClass) -> bool {
    matches!(c, BaldwinClass::Type1 { d: 0, .. })
}

/// Whether the expanded word alternates between `s1` and `s2^-1` letters only
/// (or the mirror), the diagram-level reason behind [`is_alternating_closure`].
pub fn is_alternating_word(w: &BraidWord) -> bool {
    let l = w.expand_fulltwist();
    let letters = l.letters();
    let pos = [BraidLetter::S1, BraidLetter::S2_INV];
    let neg = [BraidLetter::S1_INV, BraidLetter::S2];
    letters.iter().all(|x| pos.contains(x)) || letters.iter().all(|x| neg.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use proptest::prelude::*;

    fn graph(s: &str) -> CheckerboardGraph {
        closure_white_graph(&parse_braid(s).unwrap()).unwrap()
    }

    #[test]
    fn single_crossing() {
        let g = graph("s1");
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 1);
        assert!(g.is_split());
        assert!(g.euler_check());
    }

    #[test]
    fn sigma2_power_is_split_cycle() {
        let g = graph("s2^4");
        // four outer regions in a cycle, root isolated
        assert_eq!(g.vertex_count(), 5);
        assert!(g
            .edges()
            .iter()
            .all(|e| e.sign == -1 && e.u != 0 && e.v != 0));
        assert!(g.is_split());
        assert!(g.euler_check());
    }

    #[test]
    fn empty_word_is_degenerate() {
        assert_eq!(
            closure_white_graph(&BraidWord::identity()),
            Err(DiagramError::EmptyWord)
        );
    }

    #[test]
    fn edge_count_and_signs() {
        let g = graph("s2^3 s1 s2^-1 s1 s2^-1 s1");
        assert_eq!(g.edges().len(), 8);
        let neg = g.edges().iter().filter(|e| e.sign == -1).count();
        assert_eq!(neg, 3);
        assert!(!g.is_split());
        assert!(g.euler_check());
    }

    #[test]
    fn dot_export() {
        let dot = graph("s1 s2").to_dot();
        assert!(dot.contains("r [root=true];"));
        assert!(dot.contains("g0 -- r [sign=1];"));
        assert!(dot.contains("g0 -- g0 [sign=-1];"));
    }

    #[test]
    fn alternating() {
        assert!(is_alternating_closure(&BaldwinClass::Type1 {
            d: 0,
            a: vec![1, 2]
        }));
        assert!(!is_alternating_closure(&BaldwinClass::Type1 {
            d: 1,
            a: vec![1]
        }));
        assert!(!is_alternating_closure(&BaldwinClass::Type2 { d: 1, m: 3 }));
        assert!(is_alternating_word(
            &parse_braid("s1 s2^-1 s1 s2^-2").unwrap()
        ));
        assert!(!is_alternating_word(&parse_braid("h s1 s2^-1").unwrap()));
    }

    fn braid_strategy() -> impl Strategy<Value = BraidWord> {
        (
            prop::collection::vec((1u8..=2, prop::bool::ANY), 1..14),
            -1i64..=1,
        )
            .prop_map(|(ls, d)| {
                let letters = ls
                    .into_iter()
                    .map(|(g, p)| BraidLetter::new(g, if p { 1 } else { -1 }).unwrap());
                BraidWord::new(letters, d)
            })
    }

    proptest! {
        #[test]
        fn euler_and_edge_count(w in braid_strategy()) {
            let x = w.expand_fulltwist();
            prop_assume!(!x.is_empty());
            let g = closure_white_graph(&w).unwrap();
            prop_assert!(g.euler_check());
            prop_assert_eq!(g.edges().len(), x.crossing_count());
        }
    }
}
