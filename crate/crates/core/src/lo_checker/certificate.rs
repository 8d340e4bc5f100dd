//! Sign-deduction certificates for cycle-form white graphs.
//!
//! A certificate is a list of facts "word w is positive/negative" in a
//! hypothetical left order, each justified by earlier facts, ending with a
//! word shown to be both. Word identities are discharged by elimination
//! systems over the unaliased cycle presentation, which the certificate
//! carries along so it can be rechecked from its JSON alone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{cycle_graph_from_params, DecoratedCycleGraph};
use crate::presentation::{cycle_presentation_unaliased, GroupPresentation};
use crate::rewriter::{
    alias_system, from_syllable_list, left_system, right_system, to_syllable_list,
    verify_lemma_left, verify_lemma_right, EliminationSystem, Eliminator, FreeWord, RewriteError,
    SyllableList,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("hypothesis not met: need n >= 1 and either m > 1 or a0, an > 1")]
    HypothesisNotMet,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("step {step}: {reason}")]
    Unsound { step: usize, reason: String },
    #[error("certificate is malformed: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Justification {
    /// The branch `y0 < 1 < y_cn`; the other branch is the opposite order.
    Assume,
    Inverse {
        of: usize,
    },
    Power {
        of: usize,
        exponent: u64,
    },
    /// Product of earlier facts of one common sign, in order.
    Product {
        factors: Vec<usize>,
    },
    /// Equal, in the named system, to an earlier fact's word.
    EqualTo {
        step: usize,
        system: String,
    },
    /// `pattern(A, B) = 1` modulo the root relator, with `A` the word of the
    /// negative fact `negative`, `B` this step's word, and `pattern` a
    /// positive word mentioning `A`. So `B` cannot be negative or trivial.
    ProductRelation {
        negative: usize,
        pattern: SyllableList,
        system: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub word: SyllableList,
    pub sign: Sign,
    pub by: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub branch: String,
    /// 1 when `m > 1`; 2 when `m = 1` and `a0, an > 1`.
    pub case: u8,
    pub opposite_branch: String,
}

/// Facts `positive` and `negative` name the same element in `system`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub positive: usize,
    pub negative: usize,
    pub system: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonLOCertificate {
    pub params: DecoratedCycleGraph,
    pub hypothesis: Hypothesis,
    pub presentation: GroupPresentation,
    pub systems: Vec<EliminationSystem>,
    pub steps: Vec<Fact>,
    pub contradiction: Contradiction,
}

/// Vertices whose incident edges carry both signs; the extremal generators
/// of an order must be among them.
pub fn mixed_sign_vertices(d: &DecoratedCycleGraph) -> Vec<String> {
    let g = cycle_graph_from_params(d);
    (0..g.vertex_count())
        .filter(|&v| v != g.root())
        .filter(|&v| {
            let signs: Vec<i8> = g
                .rotation(v)
                .iter()
                .map(|dart| g.edges()[dart.edge].sign)
                .collect();
            signs.contains(&1) && signs.contains(&-1)
        })
        .map(|v| g.names()[v].clone())
        .collect()
}

struct Builder {
    names: Vec<String>,
    steps: Vec<Fact>,
    words: Vec<FreeWord>,
}

impl Builder {
    fn push(&mut self, word: FreeWord, sign: Sign, by: Justification) -> usize {
        self.steps.push(Fact {
            word: to_syllable_list(&word, &self.names),
            sign,
            by,
        });
        self.words.push(word);
        self.steps.len() - 1
    }

    fn power(&mut self, of: usize, exponent: u64) -> Option<usize> {
        match exponent {
            0 => None,
            1 => Some(of),
            e => {
                let w = self.words[of].pow(e as i64);
                let s = self.steps[of].sign;
                Some(self.push(w, s, Justification::Power { of, exponent: e }))
            }
        }
    }

    fn product(&mut self, factors: Vec<usize>) -> usize {
        if let [f] = factors[..] {
            return f;
        }
        let w = FreeWord::product(factors.iter().map(|&f| &self.words[f]).collect::<Vec<_>>());
        let s = self.steps[factors[0]].sign;
        self.push(w, s, Justification::Product { factors })
    }
}

/// Builds the certificate for a cycle-form graph satisfying the hypothesis.
pub fn certify_cycle_non_lo(d: &DecoratedCycleGraph) -> Result<NonLOCertificate, CertificateError> {
    if !d.satisfies_hypothesis() {
        return Err(CertificateError::HypothesisNotMet);
    }
    let (m, n, cn) = (d.m(), d.n(), d.cn());
    let (a0, an) = (d.a()[0], d.a()[n]);
    let p = cycle_presentation_unaliased(d).expect("n >= 1");
    let gi = |s: &str| p.generator_index(s).unwrap();
    let (y0, ycn, x1) = (gi("y0"), gi(&format!("y{cn}")), gi("x1"));
    let mut b = Builder {
        names: p.generators().to_vec(),
        steps: Vec::new(),
        words: Vec::new(),
    };

    let neg_y0 = b.push(FreeWord::gen(y0), Sign::Negative, Justification::Assume);
    let pos_ycn = b.push(FreeWord::gen(ycn), Sign::Positive, Justification::Assume);

    // B = x1 y0^(a0-1) is positive: the left words multiply to 1 modulo r(z)
    let left = verify_lemma_left(d)?;
    let pattern = FreeWord::product(
        (0..=n)
            .map(|k| left.word(k).pow(d.a()[k] as i64))
            .collect::<Vec<_>>()
            .iter(),
    );
    let bword = FreeWord::gen(x1).mul(&FreeWord::gen_pow(y0, a0 as i64 - 1));
    let pos_b = b.push(
        bword,
        Sign::Positive,
        Justification::ProductRelation {
            negative: neg_y0,
            pattern: to_syllable_list(&pattern, &left.base),
            system: "left".into(),
        },
    );
    let pos_y0inv = b.push(
        FreeWord::gen_pow(y0, -1),
        Sign::Positive,
        Justification::Inverse { of: neg_y0 },
    );
    let pos_x1 = match b.power(pos_y0inv, a0 - 1) {
        None => pos_b,
        Some(f) => b.product(vec![pos_b, f]),
    };

    // Q = y_cn^(an-1) x_{m-1}, positive in both cases
    let (case, q_expanded, system) = if m > 1 {
        let ratio = b.product(vec![pos_x1, pos_y0inv]);
        let mut f: Vec<usize> = b.power(pos_ycn, an - 1).into_iter().collect();
        f.extend(b.power(ratio, m - 2));
        f.push(pos_x1);
        (1, b.product(f), "left")
    } else {
        // x1 y0 = B y0^-(a0-2)
        let mut f = vec![pos_b];
        f.extend(b.power(pos_y0inv, a0 - 2));
        let x1y0 = b.product(f);
        let mut f: Vec<usize> = b.power(pos_x1, an - 2).into_iter().collect();
        f.push(x1y0);
        (2, b.product(f), "alias")
    };
    let q = FreeWord::gen_pow(ycn, an as i64 - 1).mul(&FreeWord::gen(gi(&format!("x{}", m - 1))));
    let pos_q = b.push(
        q,
        Sign::Positive,
        Justification::EqualTo {
            step: q_expanded,
            system: system.into(),
        },
    );

    // y0 as a positive word in A' = y_cn and B' = Q
    let right = verify_lemma_right(d)?;
    let factors: Vec<usize> = right
        .word(0)
        .letters()
        .iter()
        .map(|l| if l.gen() == 0 { pos_ycn } else { pos_q })
        .collect();
    if right.word(0).letters().iter().any(|l| l.is_inverse()) {
        return Err(CertificateError::Malformed(
            "right word for y0 is not positive".into(),
        ));
    }
    let prod = b.product(factors);
    let pos_y0 = b.push(
        FreeWord::gen(y0),
        Sign::Positive,
        Justification::EqualTo {
            step: prod,
            system: "right".into(),
        },
    );

    let mut systems = vec![left_system(d, &p), right_system(d, &p)];
    if m == 1 {
        systems.push(alias_system(d, &p));
    }
    let cert = NonLOCertificate {
        params: d.clone(),
        hypothesis: Hypothesis {
            branch: format!("y0 < 1 < y{cn}"),
            case,
            opposite_branch: "reverse the order".into(),
        },
        presentation: p,
        systems,
        steps: b.steps,
        contradiction: Contradiction {
            positive: pos_y0,
            negative: neg_y0,
            system: "right".into(),
        },
    };
    cert.recheck()?;
    Ok(cert)
}

impl NonLOCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(s).map_err(|e| CertificateError::Malformed(e.to_string()))
    }

    /// Re-verifies every step using only the data in the certificate.
    pub fn recheck(&self) -> Result<(), CertificateError> {
        let d = &self.params;
        if !d.satisfies_hypothesis() {
            return Err(CertificateError::HypothesisNotMet);
        }
        let p = &self.presentation;
        let expected = cycle_presentation_unaliased(d)
            .map_err(|e| CertificateError::Malformed(e.to_string()))?;
        if p != &expected {
            return Err(CertificateError::Malformed(
                "presentation does not match the parameters".into(),
            ));
        }
        let cn = d.cn();
        let mut mixed = mixed_sign_vertices(d);
        mixed.sort();
        let mut ends = vec!["y0".to_string(), format!("y{cn}")];
        ends.sort();
        if mixed != ends {
            return Err(CertificateError::Malformed(format!(
                "extremal vertices are {mixed:?}"
            )));
        }
        let mut elims = Vec::new();
        for s in &self.systems {
            elims.push((
                s.name.clone(),
                Eliminator::build(s, p.generators(), p.relators())?,
            ));
        }
        let system = |i: usize, name: &str| {
            elims
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, e)| e)
                .ok_or_else(|| CertificateError::Unsound {
                    step: i,
                    reason: format!("no system {name:?}"),
                })
        };
        let root_rel = p
            .relator("r(z)")
            .ok_or_else(|| CertificateError::Malformed("no root relator".into()))?;

        let mut words: Vec<FreeWord> = Vec::new();
        for (i, f) in self.steps.iter().enumerate() {
            let bad = |reason: String| CertificateError::Unsound { step: i, reason };
            let w = from_syllable_list(&f.word, p.generators()).map_err(bad)?;
            let earlier = |j: usize| {
                if j < i {
                    Ok(&self.steps[j])
                } else {
                    Err(CertificateError::Unsound {
                        step: i,
                        reason: format!("refers to later step {j}"),
                    })
                }
            };
            match &f.by {
                Justification::Assume => {
                    let ok = (i == 0
                        && w == FreeWord::gen(p.generator_index("y0").unwrap())
                        && f.sign == Sign::Negative)
                        || (i == 1
                            && w == FreeWord::gen(p.generator_index(&format!("y{cn}")).unwrap())
                            && f.sign == Sign::Positive);
                    if !ok {
                        return Err(bad(
                            "only y0 < 1 and 1 < y_cn may be assumed, as steps 0 and 1".into(),
                        ));
                    }
                }
                Justification::Inverse { of } => {
                    let s = earlier(*of)?;
                    if w != words[*of].inverse() || f.sign != s.sign.flip() {
                        return Err(bad("not the inverse with flipped sign".into()));
                    }
                }
                Justification::Power { of, exponent } => {
                    let s = earlier(*of)?;
                    if *exponent == 0 || w != words[*of].pow(*exponent as i64) || f.sign != s.sign {
                        return Err(bad("not a positive power with the same sign".into()));
                    }
                }
                Justification::Product { factors } => {
                    if factors.is_empty() {
                        return Err(bad("empty product".into()));
                    }
                    for &j in factors {
                        if earlier(j)?.sign != f.sign {
                            return Err(bad(format!("factor {j} has the wrong sign")));
                        }
                    }
                    let prod =
                        FreeWord::product(factors.iter().map(|&j| &words[j]).collect::<Vec<_>>());
                    if prod != w {
                        return Err(bad("product does not reduce to the stated word".into()));
                    }
                }
                Justification::EqualTo { step, system: name } => {
                    let s = earlier(*step)?;
                    if s.sign != f.sign || !system(i, name)?.equal(&w, &words[*step]) {
                        return Err(bad(format!("not equal in system {name}")));
                    }
                }
                Justification::ProductRelation {
                    negative,
                    pattern,
                    system: name,
                } => {
                    if earlier(*negative)?.sign != Sign::Negative || f.sign != Sign::Positive {
                        return Err(bad("needs a negative fact and concludes positivity".into()));
                    }
                    let base = ["A".to_string(), "B".to_string()];
                    let pat = from_syllable_list(pattern, &base).map_err(bad)?;
                    if !pat.is_positive() || !pat.mentions(0) {
                        return Err(bad("pattern must be a positive word containing A".into()));
                    }
                    let subs = [words[*negative].clone(), w.clone()];
                    let value = pat.substitute(|h| subs.get(h));
                    if !system(i, name)?.trivial_modulo(&value, root_rel) {
                        return Err(bad("pattern is not trivial modulo the root relator".into()));
                    }
                }
            }
            words.push(w);
        }
        let c = &self.contradiction;
        let (pos, neg) = (
            self.steps
                .get(c.positive)
                .ok_or_else(|| CertificateError::Malformed("contradiction index".into()))?,
            self.steps
                .get(c.negative)
                .ok_or_else(|| CertificateError::Malformed("contradiction index".into()))?,
        );
        if pos.sign != Sign::Positive || neg.sign != Sign::Negative {
            return Err(CertificateError::Unsound {
                step: self.steps.len(),
                reason: "contradiction signs".into(),
            });
        }
        if !system(self.steps.len(), &c.system)?.equal(&words[c.positive], &words[c.negative]) {
            return Err(CertificateError::Unsound {
                step: self.steps.len(),
                reason: "contradiction words differ".into(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dcg(m: u64, a: &[u64], b: &[u64]) -> DecoratedCycleGraph {
        DecoratedCycleGraph::new(m, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn case_one() {
        let c = certify_cycle_non_lo(&dcg(3, &[1, 1, 1], &[1, 1])).unwrap();
        assert_eq!(c.hypothesis.case, 1);
        NonLOCertificate::from_json(&c.to_json())
            .unwrap()
            .recheck()
            .unwrap();
    }

    #[test]
    fn case_two() {
        let c = certify_cycle_non_lo(&dcg(1, &[3, 4], &[1])).unwrap();
        assert_eq!(c.hypothesis.case, 2);
        c.recheck().unwrap();
    }

    #[test]
    fn hypothesis_not_met() {
        assert_eq!(
            certify_cycle_non_lo(&dcg(1, &[1, 2], &[1])),
            Err(CertificateError::HypothesisNotMet)
        );
        assert_eq!(
            certify_cycle_non_lo(&dcg(3, &[2], &[])),
            Err(CertificateError::HypothesisNotMet)
        );
    }

    #[test]
    fn extremal_vertices() {
        let mut v = mixed_sign_vertices(&dcg(3, &[1, 1, 1], &[1, 1]));
        v.sort();
        assert_eq!(v, vec!["y0", "y2"]);
    }

    #[test]
    fn tampering_is_caught() {
        let c = certify_cycle_non_lo(&dcg(2, &[2, 1], &[2])).unwrap();

        let mut t = c.clone();
        t.steps[0].sign = Sign::Positive;
        assert!(t.recheck().is_err());

        let mut t = c.clone();
        let last = t.contradiction.positive;
        t.steps[last].word = vec![("y1".into(), 1)];
        assert!(t.recheck().is_err());

        let mut t = c.clone();
        if let Justification::ProductRelation { pattern, .. } = &mut t.steps[2].by {
            pattern.push(("A".into(), 1));
        }
        assert!(t.recheck().is_err());

        let mut t = c;
        t.params = dcg(2, &[2, 2], &[2]);
        assert!(t.recheck().is_err());
    }
}
