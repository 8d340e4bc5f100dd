//! Finite group presentations: Greene's presentation of a rooted white
//! graph, the explicit cycle-form relators, abelian invariants, and
//! single-occurrence Tietze elimination.

mod abelian;
mod cycle;
mod greene;
mod tietze;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rewriter::{from_syllable_list, to_syllable_list, FreeWord, SyllableList};

pub use abelian::{abelianize, smith_diagonal, AbelianInvariants};
pub use cycle::{cycle_presentation, cycle_presentation_unaliased};
pub use greene::greene_presentation;
pub use tietze::tietze_simplify;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} mentions undeclared generator index {gen}")]
    UndeclaredGenerator { relator: usize, gen: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("cycle presentation needs n > 0")]
    DegenerateShape,
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// Named generators and relators; relators are kept cyclically reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
    labels: Vec<String>,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<FreeWord>,
    ) -> Result<Self, PresentationError> {
        let labels = (0..relators.len()).map(|i| format!("R{}", i + 1)).collect();
        Self::with_labels(generators, relators, labels)
    }

    pub fn with_labels(
        generators: Vec<String>,
        relators: Vec<FreeWord>,
        labels: Vec<String>,
    ) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        if labels.len() != relators.len() {
            return Err(PresentationError::Malformed("one label per relator".into()));
        }
        for (i, r) in relators.iter().enumerate() {
            if let Some(l) = r.letters().iter().find(|l| l.gen() >= generators.len()) {
                return Err(PresentationError::UndeclaredGenerator {
                    relator: i,
                    gen: l.gen(),
                });
            }
        }
        let relators = relators.iter().map(FreeWord::cyclically_reduced).collect();
        Ok(GroupPresentation {
            generators,
            relators,
            labels,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relator(&self, label: &str) -> Option<&FreeWord> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.relators[i])
    }

    /// Sets `name = 1`, removes it, and drops relators that become trivial.
    pub fn kill(&self, name: &str) -> Result<GroupPresentation, PresentationError> {
        let g = self
            .generator_index(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.into()))?;
        let one = FreeWord::identity();
        let mut relators = Vec::new();
        let mut labels = Vec::new();
        for (r, l) in self.relators.iter().zip(&self.labels) {
            let r = r
                .substitute(|h| (h == g).then_some(&one))
                .cyclically_reduced();
            if !r.is_identity() {
                relators.push(r.relabel(|h| if h > g { h - 1 } else { h }));
                labels.push(l.clone());
            }
        }
        let mut generators = self.generators.clone();
        generators.remove(g);
        Ok(GroupPresentation {
            generators,
            relators,
            labels,
        })
    }

    /// Relator multisets agree up to cyclic rotation and inversion, matching
    /// generators by name.
    pub fn same_relators(&self, other: &GroupPresentation) -> bool {
        let mut names = self.generators.clone();
        names.sort();
        let mut theirs = other.generators.clone();
        theirs.sort();
        if names != theirs || self.relators.len() != other.relators.len() {
            return false;
        }
        let map: Vec<usize> = other
            .generators
            .iter()
            .map(|g| self.generator_index(g).unwrap())
            .collect();
        let mut pool: Vec<FreeWord> = other
            .relators
            .iter()
            .map(|r| r.relabel(|h| map[h]))
            .collect();
        for r in &self.relators {
            match pool.iter().position(|q| q.is_relator_equivalent(r)) {
                Some(i) => {
                    pool.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Drops generator `g`, which no relator may mention.
    pub(crate) fn without_generator(mut self, g: usize) -> GroupPresentation {
        debug_assert!(self.relators.iter().all(|r| !r.mentions(g)));
        self.generators.remove(g);
        self.relators = self
            .relators
            .iter()
            .map(|r| r.relabel(|h| if h > g { h - 1 } else { h }))
            .collect();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<GroupPresentation, PresentationError> {
        serde_json::from_str(s).map_err(|e| PresentationError::Malformed(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    generators: Vec<String>,
    relators: Vec<SyllableList>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| to_syllable_list(r, &self.generators))
                .collect(),
            labels: self.labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(d)?;
        let relators = w
            .relators
            .iter()
            .map(|r| from_syllable_list(r, &w.generators))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let p = if w.labels.is_empty() {
            GroupPresentation::new(w.generators, relators)
        } else {
            GroupPresentation::with_labels(w.generators, relators, w.labels)
        };
        p.map_err(D::Error::custom)
    }
}

/// `< x1, y0, z | r(x1): x1^-1 x2 x1^-1 y0, ... >`, one relator per line.
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "< {} |", self.generators.join(", "))?;
        for (r, l) in self.relators.iter().zip(&self.labels) {
            writeln!(f, "  {l}: {}", r.display(&self.generators))?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn json_round_trip() {
        let p = GroupPresentation::new(
            names(&["a", "b"]),
            vec![FreeWord::from_syllables([(0, 3), (1, -1)])],
        )
        .unwrap();
        let j = p.to_json();
        assert_eq!(
            j,
            r#"{"generators":["a","b"],"relators":[[["a",3],["b",-1]]],"labels":["R1"]}"#
        );
        assert_eq!(GroupPresentation::from_json(&j).unwrap(), p);
        let bare =
            GroupPresentation::from_json(r#"{"generators":["v"],"relators":[[["v",5]]]}"#).unwrap();
        assert_eq!(bare.relators()[0], FreeWord::gen_pow(0, 5));
        assert!(
            GroupPresentation::from_json(r#"{"generators":["v"],"relators":[[["w",1]]]}"#).is_err()
        );
    }

    #[test]
    fn rejects_undeclared() {
        assert!(GroupPresentation::new(names(&["a"]), vec![FreeWord::gen(1)]).is_err());
        assert!(GroupPresentation::new(names(&["a", "a"]), vec![]).is_err());
    }

    #[test]
    fn kill_drops_trivial_relators() {
        let p = GroupPresentation::new(
            names(&["r", "v"]),
            vec![
                FreeWord::gen(0),
                FreeWord::from_syllables([(0, -1), (1, 1), (0, -1), (1, 1)]),
            ],
        )
        .unwrap();
        let q = p.kill("r").unwrap();
        assert_eq!(q.generators(), &names(&["v"])[..]);
        assert_eq!(q.relators(), &[FreeWord::gen_pow(0, 2)]);
    }

    #[test]
    fn pretty_print() {
        let p = GroupPresentation::with_labels(
            names(&["x1", "x0"]),
            vec![FreeWord::from_syllables([(0, 1), (1, -1), (0, 1)])],
            names(&["r(x1)"]),
        )
        .unwrap();
        assert_eq!(p.to_string(), "< x1, x0 |\n  r(x1): x1 x0^-1 x1\n>");
    }
}
