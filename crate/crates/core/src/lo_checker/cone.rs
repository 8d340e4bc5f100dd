//! Bounded positive-cone search: for every sign assignment on the
//! nontrivial generators, look for a nonempty product of the signed
//! generators that equals the identity.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coset::CosetTable;
use crate::presentation::GroupPresentation;
use crate::rewriter::{FreeWord, Letter};

/// Something that can multiply group elements by generators.
pub trait WordOracle: Sync {
    type Elem: Clone + Eq + Hash + Send;
    fn identity(&self) -> Self::Elem;
    fn act(&self, e: &Self::Elem, gen: usize, inverse: bool) -> Self::Elem;

    fn eval(&self, w: &FreeWord) -> Self::Elem {
        w.letters().iter().fold(self.identity(), |e, l| {
            self.act(&e, l.gen(), l.is_inverse())
        })
    }
}

impl WordOracle for CosetTable {
    type Elem = u32;
    fn identity(&self) -> u32 {
        0
    }
    fn act(&self, e: &u32, gen: usize, inverse: bool) -> u32 {
        CosetTable::act(self, *e, gen, inverse)
    }
}

/// Free reduction; only valid for presentations without relators.
pub struct FreeGroupOracle;

impl FreeGroupOracle {
    pub fn new(p: &GroupPresentation) -> Option<Self> {
        p.relators()
            .iter()
            .all(FreeWord::is_identity)
            .then_some(FreeGroupOracle)
    }
}

impl WordOracle for FreeGroupOracle {
    type Elem = FreeWord;
    fn identity(&self) -> FreeWord {
        FreeWord::identity()
    }
    fn act(&self, e: &FreeWord, gen: usize, inverse: bool) -> FreeWord {
        let mut w = e.clone();
        w.push(Letter::new(gen, inverse));
        w
    }
}

/// A relation among signed generators for one sign assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCase {
    /// `+1` or `-1` per entry of `PositiveConeWitness::generators`.
    pub signs: Vec<i8>,
    /// Indices into `generators`; the product of their signed powers is 1.
    pub product: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveConeWitness {
    /// Generators that are nontrivial in the group.
    pub generators: Vec<String>,
    pub cases: Vec<SignCase>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ConeResult {
    Witness(PositiveConeWitness),
    NotFound { sign_case: Vec<i8>, depth: usize },
}

fn search<O: WordOracle>(
    oracle: &O,
    gens: &[usize],
    signs: &[i8],
    depth: usize,
) -> Option<Vec<usize>> {
    let id = oracle.identity();
    let mut seen: HashMap<O::Elem, Vec<usize>> = HashMap::new();
    let mut frontier: Vec<(O::Elem, Vec<usize>)> = vec![(id.clone(), Vec::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (e, path) in &frontier {
            for (i, &g) in gens.iter().enumerate() {
                let f = oracle.act(e, g, signs[i] < 0);
                let mut p = path.clone();
                p.push(i);
                if f == id {
                    return Some(p);
                }
                if !seen.contains_key(&f) {
                    seen.insert(f.clone(), p.clone());
                    next.push((f, p));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}

/// Breadth-first search to `depth` letters for every sign assignment.
pub fn positive_cone_search<O: WordOracle>(
    p: &GroupPresentation,
    oracle: &O,
    depth: usize,
) -> ConeResult {
    let id = oracle.identity();
    let gens: Vec<usize> = (0..p.generators().len())
        .filter(|&g| oracle.act(&id, g, false) != id)
        .collect();
    let k = gens.len();
    assert!(k < 31, "too many generators for an exhaustive sign search");
    let results: Vec<(Vec<i8>, Option<Vec<usize>>)> = (0u32..1 << k)
        .into_par_iter()
        .map(|mask| {
            let signs: Vec<i8> = (0..k)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let found = search(oracle, &gens, &signs, depth);
            (signs, found)
        })
        .collect();
    let mut cases = Vec::new();
    for (signs, found) in results {
        match found {
            Some(product) => cases.push(SignCase { signs, product }),
            None => {
                return ConeResult::NotFound {
                    sign_case: signs,
                    depth,
                }
            }
        }
    }
    ConeResult::Witness(PositiveConeWitness {
        generators: gens.iter().map(|&g| p.generators()[g].clone()).collect(),
        cases,
    })
}

impl PositiveConeWitness {
    /// Checks the witness with `oracle`: excluded generators are trivial,
    /// every sign assignment is covered, and each product is the identity.
    pub fn replay<O: WordOracle>(&self, p: &GroupPresentation, oracle: &O) -> bool {
        let id = oracle.identity();
        let Some(idx): Option<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| p.generator_index(g))
            .collect()
        else {
            return false;
        };
        let excluded_trivial = (0..p.generators().len())
            .filter(|g| !idx.contains(g))
            .all(|g| oracle.act(&id, g, false) == id);
        let k = idx.len();
        if !excluded_trivial || self.cases.len() != 1 << k {
            return false;
        }
        let mut covered = vec![false; 1 << k];
        for case in &self.cases {
            if case.signs.len() != k
                || case.product.is_empty()
                || case.product.iter().any(|&i| i >= k)
            {
                return false;
            }
            let mask = case
                .signs
                .iter()
                .enumerate()
                .fold(0usize, |m, (i, &s)| m | ((s < 0) as usize) << i);
            covered[mask] = true;
            let w = FreeWord::from_letters(
                case.product
                    .iter()
                    .map(|&i| Letter::new(idx[i], case.signs[i] < 0)),
            );
            if oracle.eval(&w) != id {
                return false;
            }
        }
        covered.iter().all(|&c| c)
    }
}
