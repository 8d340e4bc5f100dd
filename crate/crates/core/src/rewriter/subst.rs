//! Solving relators for a single generator and chaining the resulting
//! substitutions into an acyclic elimination system.

use serde::{Deserialize, Serialize};

use super::word::FreeWord;
use super::RewriteError;

/// `target := replacement`, with the replacement free of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    pub target: usize,
    pub replacement: FreeWord,
}

impl SubstitutionRule {
    pub fn new(target: usize, replacement: FreeWord) -> Result<Self, RewriteError> {
        if replacement.mentions(target) {
            return Err(RewriteError::SelfReferential { gen: target });
        }
        Ok(SubstitutionRule {
            target,
            replacement,
        })
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|g| (g == self.target).then_some(&self.replacement))
    }
}

/// Solves `r = 1` for `g`, which must occur exactly once in `r`.
///
/// With `r = u g v` this gives `g = u^-1 v^-1`; with `r = u g^-1 v` it gives `g = v u`.
pub fn solve_relation(r: &FreeWord, g: usize) -> Result<FreeWord, RewriteError> {
    let hits: Vec<usize> = r
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.gen() == g)
        .map(|(i, _)| i)
        .collect();
    let pos = match hits.as_slice() {
        [p] => *p,
        [] => return Err(RewriteError::GeneratorAbsent { gen: g }),
        _ => {
            return Err(RewriteError::MultipleOccurrences {
                gen: g,
                count: hits.len(),
            })
        }
    };
    let u = FreeWord::from_letters(r.letters()[..pos].iter().copied());
    let v = FreeWord::from_letters(r.letters()[pos + 1..].iter().copied());
    if r.letters()[pos].is_inverse() {
        Ok(v.mul(&u))
    } else {
        Ok(u.inverse().mul(&v.inverse()))
    }
}

/// One elimination: solve relator number `relator` for generator `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub target: String,
    pub relator: usize,
}

/// Declarative elimination order over a presentation's relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationSystem {
    pub name: String,
    pub base: Vec<String>,
    pub steps: Vec<EliminationStep>,
}

/// An elimination system resolved against concrete relators: every
/// eliminated generator is expanded into a word over the base.
#[derive(Clone, Debug)]
pub struct Eliminator {
    expansions: Vec<Option<FreeWord>>,
    raw: Vec<Option<FreeWord>>,
}

impl Eliminator {
    /// Resolves `system` against `relators`, checking that each target occurs
    /// exactly once in its relator and that every replacement only uses base
    /// generators or generators eliminated earlier.
    pub fn build(
        system: &EliminationSystem,
        names: &[String],
        relators: &[FreeWord],
    ) -> Result<Self, RewriteError> {
        let index = |n: &str| {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| RewriteError::UnknownGenerator(n.to_string()))
        };
        let mut known = vec![false; names.len()];
        for b in &system.base {
            known[index(b)?] = true;
        }
        let mut expansions: Vec<Option<FreeWord>> = vec![None; names.len()];
        let mut raw: Vec<Option<FreeWord>> = vec![None; names.len()];
        for step in &system.steps {
            let g = index(&step.target)?;
            if known[g] {
                return Err(RewriteError::AlreadyEliminated(step.target.clone()));
            }
            let rel = relators
                .get(step.relator)
                .ok_or(RewriteError::NoSuchRelator(step.relator))?;
            let replacement = solve_relation(rel, g)?;
            if let Some(bad) = replacement
                .letters()
                .iter()
                .map(|l| l.gen())
                .find(|&h| !known[h])
            {
                return Err(RewriteError::OrderViolation {
                    target: step.target.clone(),
                    uses: names[bad].clone(),
                });
            }
            let expanded = replacement.substitute(|h| expansions[h].as_ref());
            raw[g] = Some(replacement);
            expansions[g] = Some(expanded);
            known[g] = true;
        }
        Ok(Eliminator { expansions, raw })
    }

    /// Fully expanded form of `g` over the base, if `g` was eliminated.
    pub fn expansion(&self, g: usize) -> Option<&FreeWord> {
        self.expansions[g].as_ref()
    }

    /// The replacement obtained directly from the relator, before expansion.
    pub fn replacement(&self, g: usize) -> Option<&FreeWord> {
        self.raw[g].as_ref()
    }

    pub fn normal_form(&self, w: &FreeWord) -> FreeWord {
        w.substitute(|g| self.expansions[g].as_ref())
    }

    /// `u = v` follows from the relators used by this system.
    pub fn equal(&self, u: &FreeWord, v: &FreeWord) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// `w = 1` follows from the system together with relator `rel` (up to
    /// conjugation and inversion of `rel`).
    pub fn trivial_modulo(&self, w: &FreeWord, rel: &FreeWord) -> bool {
        let a = self.normal_form(w);
        a.is_identity() || a.is_relator_equivalent(&self.normal_form(rel))
    }
}

/// Substitutes `replacement` for `target` in `w`.
pub fn substitute_one(w: &FreeWord, target: usize, replacement: &FreeWord) -> FreeWord {
    w.substitute(|g| (g == target).then_some(replacement))
}

/// `x y^-1` style helper: `a b^-1`.
pub fn quotient(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.mul(&b.inverse())
}
