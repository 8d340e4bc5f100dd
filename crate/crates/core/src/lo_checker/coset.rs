//! Coset enumeration over the trivial subgroup (HLT strategy with
//! coincidence processing). A complete table is the regular action, so it
//! doubles as a word-problem oracle.

use std::fmt::Write as _;

use crate::presentation::GroupPresentation;
use crate::rewriter::FreeWord;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The coset cap was reached; nothing is known about the order.
    Exhausted {
        defined: usize,
    },
}

impl Enumeration {
    pub fn complete(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Exhausted { .. } => None,
        }
    }
}

/// Complete coset table: `table[c][2g]` is `c * g`, `table[c][2g+1]` is
/// `c * g^-1`. Coset 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    table: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn act(&self, coset: u32, gen: usize, inverse: bool) -> u32 {
        self.table[coset as usize][2 * gen + inverse as usize]
    }

    pub fn apply(&self, coset: u32, w: &FreeWord) -> u32 {
        w.letters()
            .iter()
            .fold(coset, |c, l| self.act(c, l.gen(), l.is_inverse()))
    }

    pub fn is_trivial(&self, w: &FreeWord) -> bool {
        self.apply(0, w) == 0
    }

    /// One line per coset: its images under `g1, g1^-1, g2, g2^-1, ...`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (c, row) in self.table.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{c}: {}", cells.join(" "));
        }
        s
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    max: usize,
    live: usize,
}

impl Enumerator {
    fn rep(&mut self, mut k: u32) -> u32 {
        let mut root = k;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> bool {
        if self.table.len() >= self.max {
            return false;
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c as usize][x] = d;
        self.table[d as usize][x ^ 1] = c;
        true
    }

    fn merge(&mut self, k: u32, l: u32, queue: &mut Vec<u32>) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi as usize] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e as usize][x];
                if f == NONE {
                    continue;
                }
                if self.table[f as usize][x ^ 1] == e {
                    self.table[f as usize][x ^ 1] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.table[e1 as usize][x];
                let fx = self.table[f1 as usize][x ^ 1];
                if ex != NONE {
                    self.merge(f1, ex, &mut queue);
                } else if fx != NONE {
                    self.merge(e1, fx, &mut queue);
                } else {
                    self.table[e1 as usize][x] = f1;
                    self.table[f1 as usize][x ^ 1] = e1;
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions, defining cosets as needed.
    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> bool {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize && self.table[b as usize][w[j as usize] ^ 1] != NONE {
                b = self.table[b as usize][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            } else if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][w[i] ^ 1] = f;
                return true;
            } else if !self.define(f, w[i]) {
                return false;
            }
        }
    }
}

/// Enumerates cosets of the trivial subgroup, defining at most `max_cosets`.
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: usize) -> Enumeration {
    let cols = 2 * p.generators().len();
    let rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_identity())
        .map(|r| {
            r.letters()
                .iter()
                .map(|l| 2 * l.gen() + l.is_inverse() as usize)
                .collect()
        })
        .collect();
    let mut e = Enumerator {
        cols,
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        max: max_cosets.max(1),
        live: 1,
    };
    let mut c = 0usize;
    while c < e.table.len() {
        let cu = c as u32;
        if e.alive(cu) {
            for r in &rels {
                if !e.scan_and_fill(cu, r) {
                    return Enumeration::Exhausted {
                        defined: e.table.len(),
                    };
                }
                if !e.alive(cu) {
                    break;
                }
            }
            for x in 0..cols {
                if e.alive(cu) && e.table[c][x] == NONE && !e.define(cu, x) {
                    return Enumeration::Exhausted {
                        defined: e.table.len(),
                    };
                }
            }
        }
        c += 1;
    }
    // renumber live cosets in order
    let mut new_index = vec![NONE; e.table.len()];
    let mut k = 0;
    for (c, slot) in new_index.iter_mut().enumerate() {
        if e.alive(c as u32) {
            *slot = k;
            k += 1;
        }
    }
    debug_assert_eq!(k as usize, e.live);
    let table = (0..e.table.len())
        .filter(|&c| e.alive(c as u32))
        .map(|c| e.table[c].iter().map(|&d| new_index[d as usize]).collect())
        .collect();
    Enumeration::Complete(CosetTable {
        generators: p.generators().to_vec(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], rels: Vec<FreeWord>) -> GroupPresentation {
        GroupPresentation::new(gens.iter().map(|s| s.to_string()).collect(), rels).unwrap()
    }

    fn order(p: &GroupPresentation) -> Option<usize> {
        match todd_coxeter(p, 100_000) {
            Enumeration::Complete(t) => Some(t.order()),
            Enumeration::Exhausted { .. } => None,
        }
    }

    #[test]
    fn small_groups() {
        assert_eq!(order(&pres(&["v"], vec![FreeWord::gen_pow(0, 5)])), Some(5));
        assert_eq!(order(&pres(&["v"], vec![FreeWord::gen(0)])), Some(1));
        // S3 = <a, b | a^2, b^3, (ab)^2>
        let s3 = pres(
            &["a", "b"],
            vec![
                FreeWord::gen_pow(0, 2),
                FreeWord::gen_pow(1, 3),
                FreeWord::from_syllables([(0, 1), (1, 1)]).pow(2),
            ],
        );
        assert_eq!(order(&s3), Some(6));
        // binary icosahedral <s, t | (st)^2 = s^3 = t^5>
        let st = FreeWord::from_syllables([(0, 1), (1, 1)]).pow(2);
        let bi = pres(
            &["s", "t"],
            vec![
                st.mul(&FreeWord::gen_pow(0, -3)),
                FreeWord::gen_pow(0, 3).mul(&FreeWord::gen_pow(1, -5)),
            ],
        );
        assert_eq!(order(&bi), Some(120));
    }

    #[test]
    fn infinite_group_exhausts() {
        let z = pres(&["x"], vec![]);
        assert_eq!(todd_coxeter(&z, 50), Enumeration::Exhausted { defined: 50 });
    }

    #[test]
    fn table_is_regular_action() {
        let s3 = pres(
            &["a", "b"],
            vec![
                FreeWord::gen_pow(0, 2),
                FreeWord::gen_pow(1, 3),
                FreeWord::from_syllables([(0, 1), (1, 1)]).pow(2),
            ],
        );
        let Enumeration::Complete(t) = todd_coxeter(&s3, 1000) else {
            panic!()
        };
        for c in 0..t.order() as u32 {
            for g in 0..2 {
                assert_eq!(t.act(t.act(c, g, false), g, true), c);
            }
            for r in s3.relators() {
                assert_eq!(t.apply(c, r), c);
            }
        }
        assert!(t.is_trivial(&FreeWord::from_syllables([(1, 1), (0, 1), (1, 1), (0, 1)])));
        assert!(!t.is_trivial(&FreeWord::gen(1)));
        assert_eq!(
            t.dump(),
            todd_coxeter(&s3, 1000).clone().complete().unwrap().dump()
        );
    }
}
