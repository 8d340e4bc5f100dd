use serde::{Deserialize, Serialize};

use super::{CheckerboardGraph, Dart, DiagramError, Edge};
use crate::braid::BraidWord;

/// Parameters `(m, a0..an, b1..bn)` of a cycle-form white graph.
///
/// The cycle runs `y0 = x0, x1, ..., x_{m-1}, x_m = y_cn` along negative
/// edges and `y0, y1, ..., y_cn` along positive ones; `y_{c_k}` carries `a_k`
/// parallel positive edges to the root, where `c_k = b1 + ... + bk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCycle")]
pub struct DecoratedCycleGraph {
    m: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

#[derive(Deserialize)]
struct RawCycle {
    m: u64,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl TryFrom<RawCycle> for DecoratedCycleGraph {
    type Error = DiagramError;
    fn try_from(r: RawCycle) -> Result<Self, DiagramError> {
        DecoratedCycleGraph::new(r.m, r.a, r.b)
    }
}

impl DecoratedCycleGraph {
    pub fn new(m: u64, a: Vec<u64>, b: Vec<u64>) -> Result<Self, DiagramError> {
        if m == 0 {
            return Err(DiagramError::ParameterOutOfRange(
                "m must be positive".into(),
            ));
        }
        if a.len() != b.len() + 1 {
            return Err(DiagramError::ParameterOutOfRange(format!(
                "need len(a) = len(b) + 1, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|&x| x == 0) {
            return Err(DiagramError::ParameterOutOfRange(
                "a and b entries must be positive".into(),
            ));
        }
        Ok(DecoratedCycleGraph { m, a, b })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `c_k = b1 + ... + bk`, with `c_0 = 0`.
    pub fn c(&self, k: usize) -> u64 {
        self.b[..k].iter().sum()
    }

    pub fn cn(&self) -> u64 {
        self.c(self.n())
    }

    /// Generators of the cycle presentation: `x1..x_{m-1}`, `y0..y_cn`, `z`.
    pub fn generator_count(&self) -> u64 {
        self.cn() + self.m + 1
    }

    /// Index `k` with `c_k = i`, if `y_i` is marked.
    pub fn marked(&self, i: u64) -> Option<usize> {
        (0..=self.n()).find(|&k| self.c(k) == i)
    }

    /// Either `m > 1`, or `m = 1` with `a0, an > 1`; and `n >= 1`.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.n() >= 1 && (self.m > 1 || (self.a[0] > 1 && self.a[self.n()] > 1))
    }

    /// `s2^m s1^a0 s2^-b1 s1^a1 ... s2^-bn s1^an`.
    pub fn braid_word(&self) -> BraidWord {
        let mut syl = vec![(2u8, self.m as i64), (1, self.a[0] as i64)];
        for (bk, ak) in self.b.iter().zip(&self.a[1..]) {
            syl.push((2, -(*bk as i64)));
            syl.push((1, *ak as i64));
        }
        BraidWord::from_syllables(syl, 0)
    }
}

/// Builds the cycle graph with vertices `r, y0..y_cn, x1..x_{m-1}`.
///
/// Rotation at `y_i` is (edge towards `y_{i-1}` or `x1`, root edges, edge
/// towards `y_{i+1}` or `x_{m-1}`); the root sees its edges from `y_cn` back
/// to `y0`, each block reversed.
pub fn cycle_graph_from_params(d: &DecoratedCycleGraph) -> CheckerboardGraph {
    let cn = d.cn() as usize;
    let m = d.m as usize;
    let mut names = vec!["r".to_string()];
    names.extend((0..=cn).map(|i| format!("y{i}")));
    names.extend((1..m).map(|i| format!("x{i}")));
    let y = |i: usize| 1 + i;
    // x0 = y0, x_m = y_cn
    let x = |i: usize| match i {
        0 => y(0),
        i if i == m => y(cn),
        i => cn + 1 + i,
    };

    let mut edges = Vec::new();
    // x-path edges: x_{i+1} -- x_i, i = 0..m-1, so the dart at x_i is end 1
    for i in 0..m {
        edges.push(Edge {
            u: x(i + 1),
            v: x(i),
            sign: -1,
        });
    }
    let xe = |i: usize| i; // edge between x_i and x_{i+1}
                           // y-path edges: y_i -- y_{i+1}
    for i in 0..cn {
        edges.push(Edge {
            u: y(i),
            v: y(i + 1),
            sign: 1,
        });
    }
    let ye = |i: usize| m + i;
    let mut root_blocks = Vec::new();
    for k in 0..=d.n() {
        let v = y(d.c(k) as usize);
        let mut block = Vec::new();
        for _ in 0..d.a[k] {
            block.push(edges.len());
            edges.push(Edge {
                u: v,
                v: 0,
                sign: 1,
            });
        }
        root_blocks.push(block);
    }

    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); names.len()];
    for i in 1..m {
        rotation[x(i)] = vec![
            Dart {
                edge: xe(i),
                end: 1,
            },
            Dart {
                edge: xe(i - 1),
                end: 0,
            },
        ];
    }
    for i in 0..=cn {
        let rot = &mut rotation[y(i)];
        // towards y0 / x1 side
        rot.push(if i == 0 {
            Dart {
                edge: xe(0),
                end: 1,
            }
        } else {
            Dart {
                edge: ye(i - 1),
                end: 1,
            }
        });
        if let Some(k) = d.marked(i as u64) {
            rot.extend(root_blocks[k].iter().map(|&e| Dart { edge: e, end: 0 }));
        }
        rot.push(if i == cn {
            Dart {
                edge: xe(m - 1),
                end: 0,
            }
        } else {
            Dart {
                edge: ye(i),
                end: 0,
            }
        });
    }
    rotation[0] = root_blocks
        .iter()
        .rev()
        .flat_map(|b| b.iter().rev().map(|&e| Dart { edge: e, end: 1 }))
        .collect();
    CheckerboardGraph::new(names, edges, rotation, 0).expect("cycle graph rotation is consistent")
}

/// Per-vertex cyclic neighbourhood `(neighbour label, sign)` under a vertex
/// labelling; two rotation systems agree up to relabelling iff these agree
/// up to rotation at every vertex.
fn signature(g: &CheckerboardGraph, label: &[usize]) -> Vec<Vec<(usize, i8)>> {
    let mut sig = vec![Vec::new(); g.vertex_count()];
    for v in 0..g.vertex_count() {
        let seq: Vec<(usize, i8)> = g
            .rotation(v)
            .iter()
            .map(|&d| (label[g.dart_target(d)], g.edges()[d.edge].sign))
            .collect();
        sig[label[v]] = least_rotation(seq);
    }
    sig
}

fn least_rotation<T: Ord + Clone>(v: Vec<T>) -> Vec<T> {
    (0..v.len().max(1))
        .map(|k| {
            let mut r = v.clone();
            r.rotate_left(k.min(v.len()));
            r
        })
        .min()
        .unwrap_or_default()
}

/// Reads off `(m, a, b)` and checks the graph is isomorphic to the rebuilt
/// cycle graph, preserving signs, root and rotations.
pub fn to_decorated(g: &CheckerboardGraph) -> Result<DecoratedCycleGraph, DiagramError> {
    let mismatch = |s: &str| DiagramError::ShapeMismatch(s.to_string());
    let root = g.root();
    let nv = g.vertex_count();
    let mut cycle_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv]; // (edge, neighbour)
    let mut root_mult = vec![0u64; nv];
    for (id, e) in g.edges().iter().enumerate() {
        if e.u == e.v && e.u != root {
            if nv == 2 && e.sign == -1 {
                cycle_adj[e.u].push((id, e.u));
                continue;
            }
            return Err(mismatch("loop edge"));
        }
        if e.u == root || e.v == root {
            if e.sign != 1 || e.u == e.v {
                return Err(mismatch("root edges must be positive"));
            }
            root_mult[e.u + e.v - root] += 1;
        } else {
            cycle_adj[e.u].push((id, e.v));
            cycle_adj[e.v].push((id, e.u));
        }
    }
    let others: Vec<usize> = (0..nv).filter(|&v| v != root).collect();
    if others.is_empty() {
        return Err(mismatch("no vertices besides the root"));
    }
    // single vertex with a negative loop: (1, [a0], [])
    if others.len() == 1 {
        let v = others[0];
        if cycle_adj[v].len() != 1 || root_mult[v] == 0 {
            return Err(mismatch("single vertex must carry one loop and root edges"));
        }
        let d = DecoratedCycleGraph::new(1, vec![root_mult[v]], vec![])?;
        return confirm(g, d, &[v]);
    }
    if others.iter().any(|&v| cycle_adj[v].len() != 2) {
        return Err(mismatch("root removal does not leave a cycle"));
    }
    // walk the cycle
    let start = others[0];
    let mut order = vec![start];
    let mut signs = Vec::new();
    let mut prev_edge = usize::MAX;
    let mut cur = start;
    loop {
        let &(e, w) = cycle_adj[cur]
            .iter()
            .find(|(e, _)| *e != prev_edge)
            .unwrap();
        signs.push(g.edges()[e].sign);
        prev_edge = e;
        if w == start {
            break;
        }
        order.push(w);
        cur = w;
    }
    if order.len() != others.len() {
        return Err(mismatch("root removal leaves more than one component"));
    }
    let len = order.len();
    let neg = signs.iter().filter(|&&s| s == -1).count();
    if neg == 0 {
        return Err(mismatch("no negative edges on the cycle"));
    }
    // rotate so the negative edges form a prefix: signs[i] joins order[i], order[i+1]
    let shift = if neg == len {
        // all negative: start at the unique marked vertex
        let marked: Vec<usize> = (0..len).filter(|&i| root_mult[order[i]] > 0).collect();
        match marked.as_slice() {
            [i] => *i,
            _ => {
                return Err(mismatch(
                    "an all-negative cycle needs exactly one marked vertex",
                ))
            }
        }
    } else {
        (0..len)
            .find(|&s| (0..len).all(|i| (signs[(s + i) % len] == -1) == (i < neg)))
            .ok_or_else(|| mismatch("negative edges are not contiguous"))?
    };
    let walk: Vec<usize> = (0..=len).map(|i| order[(shift + i) % len]).collect();
    // negative path walk[0..=neg], positive path walk[neg..=len]
    let mut tried = Vec::new();
    for reverse in [false, true] {
        let (ypath, xpath): (Vec<usize>, Vec<usize>) = if !reverse {
            // y0 = walk[neg], y runs forward to walk[len] = walk[0]; x runs from y0 back to walk[0]
            (
                walk[neg..=len].to_vec(),
                walk[..=neg].iter().rev().copied().collect(),
            )
        } else {
            (
                walk[neg..=len].iter().rev().copied().collect(),
                walk[..=neg].to_vec(),
            )
        };
        let m = neg as u64;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut last = 0u64;
        let mut ok = true;
        for (i, &v) in ypath.iter().enumerate() {
            let i = i as u64;
            if root_mult[v] > 0 {
                if i > 0 {
                    b.push(i - last);
                }
                a.push(root_mult[v]);
                last = i;
            }
        }
        let cn = (ypath.len() - 1) as u64;
        if root_mult[ypath[0]] == 0 || root_mult[ypath[cn as usize]] == 0 {
            ok = false;
        }
        if xpath[1..xpath.len() - 1].iter().any(|&v| root_mult[v] > 0) {
            ok = false;
        }
        if !ok {
            continue;
        }
        // cycle of negative edges only: y0 = y_cn
        if neg == len {
            a.truncate(1);
            b.clear();
        }
        let d = DecoratedCycleGraph::new(m, a, b)?;
        let mut labels: Vec<usize> = ypath.clone();
        labels.truncate(if neg == len { 1 } else { ypath.len() });
        labels.extend(&xpath[1..xpath.len() - 1]);
        match confirm(g, d, &labels) {
            Ok(d) => return Ok(d),
            Err(e) => tried.push(e),
        }
    }
    Err(tried
        .pop()
        .unwrap_or_else(|| mismatch("root edges attach outside the marked pattern")))
}

/// `labels` lists the vertices of `g` in the order `y0..y_cn, x1..x_{m-1}`.
fn confirm(
    g: &CheckerboardGraph,
    d: DecoratedCycleGraph,
    labels: &[usize],
) -> Result<DecoratedCycleGraph, DiagramError> {
    let rebuilt = cycle_graph_from_params(&d);
    if rebuilt.vertex_count() != g.vertex_count() || rebuilt.edges().len() != g.edges().len() {
        return Err(DiagramError::ShapeMismatch(
            "size differs from the rebuilt cycle graph".into(),
        ));
    }
    let mut map = vec![usize::MAX; g.vertex_count()];
    map[g.root()] = 0;
    for (i, &v) in labels.iter().enumerate() {
        map[v] = i + 1;
    }
    let identity: Vec<usize> = (0..rebuilt.vertex_count()).collect();
    if signature(g, &map) != signature(&rebuilt, &identity) {
        return Err(DiagramError::ShapeMismatch(
            "rotation system differs from the cycle form".into(),
        ));
    }
    Ok(d)
}
