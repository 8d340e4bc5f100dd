//! Three-strand braid words with symbolic full-twist bookkeeping.
//!
//! A [`BraidWord`] is a freely reduced sequence of Artin letters together
//! with a power of the central full twist `h = (s2 s1)^3` that has not been
//! expanded. Conjugation is modelled by cyclic rotation; because `h` is
//! central its position in the word never matters.

mod classify;
mod moves;
mod normalize;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rewriter::{FreeWord, Letter};

pub use classify::{classify_baldwin, classify_with_moves, BaldwinClass, Classification};
pub use moves::{HForm, Move, Transcript};
pub use normalize::{
    normalize_type1_d1, normalize_type1_dm1, parse_cycle_form, Normalization, NormalizationOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid token {0:?}")]
    MalformedToken(String),
    #[error("exponent in token {0:?} is not an integer")]
    BadExponent(String),
    #[error("move {index} ({kind}) does not apply: {reason}")]
    IllegalMove {
        index: usize,
        kind: String,
        reason: String,
    },
    #[error("normalizer precondition failed: expected {expected}, found {found}")]
    Precondition { expected: String, found: String },
    #[error("transcript replay ended at {got} but the outcome claims {claimed}")]
    ReplayMismatch { got: String, claimed: String },
    #[error("exponent sum changed from {before} to {after} at move {index}")]
    ExponentSumChanged {
        index: usize,
        before: i64,
        after: i64,
    },
}

/// One Artin generator `s1` or `s2` with sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter {
    generator: u8,
    exponent_sign: i8,
}

impl BraidLetter {
    pub const S1: BraidLetter = BraidLetter {
        generator: 1,
        exponent_sign: 1,
    };
    pub const S2: BraidLetter = BraidLetter {
        generator: 2,
        exponent_sign: 1,
    };
    pub const S1_INV: BraidLetter = BraidLetter {
        generator: 1,
        exponent_sign: -1,
    };
    pub const S2_INV: BraidLetter = BraidLetter {
        generator: 2,
        exponent_sign: -1,
    };

    /// `generator` must be 1 or 2 and `sign` must be ±1.
    pub fn new(generator: u8, sign: i8) -> Option<Self> {
        ((generator == 1 || generator == 2) && (sign == 1 || sign == -1)).then_some(BraidLetter {
            generator,
            exponent_sign: sign,
        })
    }

    pub fn generator(self) -> u8 {
        self.generator
    }

    pub fn sign(self) -> i8 {
        self.exponent_sign
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            exponent_sign: -self.exponent_sign,
            ..self
        }
    }

    /// The `s1 <-> s2` swap.
    pub fn exchanged(self) -> Self {
        BraidLetter {
            generator: 3 - self.generator,
            ..self
        }
    }

    fn code(self) -> i8 {
        self.generator as i8 * self.exponent_sign
    }
}

/// A freely reduced three-braid word times `h^twist`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
    twist: i64,
}

impl BraidWord {
    pub fn new<I: IntoIterator<Item = BraidLetter>>(letters: I, twist: i64) -> Self {
        let mut w = BraidWord {
            letters: Vec::new(),
            twist,
        };
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds from `(generator, exponent)` syllables.
    pub fn from_syllables<I: IntoIterator<Item = (u8, i64)>>(syllables: I, twist: i64) -> Self {
        let mut w = BraidWord {
            letters: Vec::new(),
            twist,
        };
        for (g, e) in syllables {
            let l =
                BraidLetter::new(g, if e < 0 { -1 } else { 1 }).expect("generator must be 1 or 2");
            for _ in 0..e.unsigned_abs() {
                w.push(l);
            }
        }
        w
    }

    fn push(&mut self, l: BraidLetter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty() && self.twist == 0
    }

    /// Sum of letter signs plus `6 * twist`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| l.exponent_sign as i64)
            .sum::<i64>()
            + 6 * self.twist
    }

    /// Replaces the symbolic twist by `(s2 s1)^{3 twist}` written in front.
    pub fn expand_fulltwist(&self) -> BraidWord {
        let mut w = BraidWord::identity();
        let h = HForm::SigmaTwoOne.letters(self.twist.signum() as i8);
        for _ in 0..self.twist.unsigned_abs() {
            for &l in &h {
                w.push(l);
            }
        }
        for &l in &self.letters {
            w.push(l);
        }
        w
    }

    /// Rotates the letter sequence left by `k` (conjugation by the first `k` letters).
    pub fn cyclic_conjugate(&self, k: usize) -> BraidWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let rotated = self.letters[k..].iter().chain(&self.letters[..k]).copied();
        BraidWord::new(rotated, self.twist)
    }

    /// Strips inverse pairs that meet across the ends of the cyclic word.
    pub fn cyclically_reduced(&self) -> BraidWord {
        let n = self.letters.len();
        let mut i = 0;
        while i < n / 2 && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        BraidWord {
            letters: self.letters[i..n - i].to_vec(),
            twist: self.twist,
        }
    }

    /// Mirror image: every crossing and the twist are inverted.
    pub fn mirror(&self) -> BraidWord {
        BraidWord::new(self.letters.iter().map(|l| l.inverse()), -self.twist)
    }

    /// `s1 <-> s2`; conjugation by the half twist.
    pub fn exchange(&self) -> BraidWord {
        BraidWord::new(self.letters.iter().map(|l| l.exchanged()), self.twist)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord::new(self.letters.iter().rev().map(|l| l.inverse()), -self.twist)
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        BraidWord::new(
            self.letters.iter().chain(&other.letters).copied(),
            self.twist + other.twist,
        )
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len()
    }

    /// `(generator, exponent)` runs of the letter sequence.
    pub fn syllables(&self) -> Vec<(u8, i64)> {
        let mut out: Vec<(u8, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.generator && e.signum() == l.exponent_sign as i64 => {
                    *e += l.exponent_sign as i64
                }
                _ => out.push((l.generator, l.exponent_sign as i64)),
            }
        }
        out
    }

    /// Same cyclic word and twist, after cyclic reduction.
    pub fn cyclically_equal(&self, other: &BraidWord) -> bool {
        if self.twist != other.twist {
            return false;
        }
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        a.letters.len() == b.letters.len()
            && (a.letters.is_empty()
                || (0..a.letters.len()).any(|k| a.cyclic_conjugate(k).letters == b.letters))
    }

    /// Index of the lexicographically least rotation.
    pub(crate) fn least_rotation(&self) -> usize {
        let codes: Vec<i8> = self.letters.iter().map(|l| l.code()).collect();
        let n = codes.len();
        (0..n.max(1))
            .min_by(|&i, &j| {
                let a = codes[i..].iter().chain(&codes[..i]);
                let b = codes[j..].iter().chain(&codes[..j]);
                a.cmp(b)
            })
            .unwrap_or(0)
    }

    /// Image under the Artin representation `B3 -> Aut(F3)`, as the images of
    /// the free generators `x0, x1, x2`. The representation is faithful, so two
    /// braid words are equal in `B3` exactly when these images agree.
    pub fn artin_images(&self) -> [FreeWord; 3] {
        let mut images = [FreeWord::gen(0), FreeWord::gen(1), FreeWord::gen(2)];
        for &l in self.expand_fulltwist().letters() {
            let i = l.generator as usize - 1;
            let (xi, xj) = (FreeWord::gen(i), FreeWord::gen(i + 1));
            let (img_i, img_j) = if l.exponent_sign > 0 {
                (xi.mul(&xj).mul(&xi.inverse()), xi.clone())
            } else {
                (xj.clone(), xj.inverse().mul(&xi).mul(&xj))
            };
            // images := images ∘ (action of this letter)
            let composed: Vec<FreeWord> = (0..3)
                .map(|g| {
                    let action = if g == i {
                        img_i.clone()
                    } else if g == i + 1 {
                        img_j.clone()
                    } else {
                        FreeWord::gen(g)
                    };
                    action.substitute(|x| Some(&images[x]))
                })
                .collect();
            images = [
                composed[0].clone(),
                composed[1].clone(),
                composed[2].clone(),
            ];
        }
        images
    }

    /// Equality in the braid group, decided through the Artin representation.
    pub fn group_equal(&self, other: &BraidWord) -> bool {
        self.artin_images() == other.artin_images()
    }

    /// Free-group letters over `{s1, s2}` (indices 0 and 1), ignoring the twist.
    pub fn as_free_word(&self) -> FreeWord {
        FreeWord::from_letters(
            self.letters
                .iter()
                .map(|l| Letter::new(l.generator as usize - 1, l.exponent_sign < 0)),
        )
    }
}

/// Parses `s1`, `s2`, `h` tokens with optional `^k` exponents. The result
/// is freely reduced; `h` factors accumulate into the twist.
pub fn parse_braid(text: &str) -> Result<BraidWord, BraidError> {
    let mut w = BraidWord::identity();
    for tok in text.split_whitespace() {
        let (head, exp) = match tok.split_once('^') {
            Some((h, e)) => {
                let k: i64 = e
                    .parse()
                    .map_err(|_| BraidError::BadExponent(tok.to_string()))?;
                (h, k)
            }
            None => (tok, 1),
        };
        match head {
            "h" => w.twist += exp,
            "s1" | "s2" => {
                let g = if head == "s1" { 1 } else { 2 };
                let l = BraidLetter::new(g, if exp < 0 { -1 } else { 1 }).unwrap();
                for _ in 0..exp.unsigned_abs() {
                    w.push(l);
                }
            }
            _ => return Err(BraidError::MalformedToken(tok.to_string())),
        }
    }
    Ok(w)
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

impl fmt::Display for BraidWord {
    /// Canonical text form, e.g. `h^-1 s1 s2^-2`. The identity prints as an
    /// empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.twist {
            0 => {}
            1 => parts.push("h".to_string()),
            d => parts.push(format!("h^{d}")),
        }
        for (g, e) in self.syllables() {
            if e == 1 {
                parts.push(format!("s{g}"));
            } else {
                parts.push(format!("s{g}^{e}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_braid(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn parses_examples() {
        let w = b("h s1 s2^-2");
        assert_eq!(w.twist(), 1);
        assert_eq!(
            w.letters(),
            &[BraidLetter::S1, BraidLetter::S2_INV, BraidLetter::S2_INV]
        );
        assert!(b("s1 s1^-1").is_empty());
        let w = b("h^-1 s2^3");
        assert_eq!(w.twist(), -1);
        assert_eq!(w.letters(), &[BraidLetter::S2; 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_braid("zzz"),
            Err(BraidError::MalformedToken(_))
        ));
        assert!(matches!(
            parse_braid("s1^x"),
            Err(BraidError::BadExponent(_))
        ));
        assert!(matches!(
            parse_braid("s3"),
            Err(BraidError::MalformedToken(_))
        ));
    }

    #[test]
    fn expand_fulltwist_examples() {
        let h = b("h").expand_fulltwist();
        use BraidLetter as L;
        assert_eq!(h.letters(), &[L::S2, L::S1, L::S2, L::S1, L::S2, L::S1]);
        assert_eq!(h.twist(), 0);
        let hi = b("h^-1").expand_fulltwist();
        assert_eq!(
            hi.letters(),
            &[
                L::S1_INV,
                L::S2_INV,
                L::S1_INV,
                L::S2_INV,
                L::S1_INV,
                L::S2_INV
            ]
        );
        let w = b("s1 s2^-1");
        assert_eq!(w.expand_fulltwist(), w);
    }

    #[test]
    fn rotation_examples() {
        let w = b("s1 s2^-1");
        assert_eq!(
            w.cyclic_conjugate(1).letters(),
            &[BraidLetter::S2_INV, BraidLetter::S1]
        );
        assert_eq!(w.cyclic_conjugate(0), w);
        assert_eq!(w.cyclic_conjugate(2), w);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(b("h s1 s2^-2").exponent_sum(), 5);
        assert_eq!(BraidWord::identity().exponent_sum(), 0);
        let w = b("h s1 s2^-2");
        assert_eq!(w.mirror().exponent_sum(), -5);
    }

    #[test]
    fn mirror_and_exchange() {
        let w = b("s1 s2^-1");
        assert_eq!(
            w.mirror().letters(),
            &[BraidLetter::S1_INV, BraidLetter::S2]
        );
        assert_eq!(
            w.exchange().letters(),
            &[BraidLetter::S2, BraidLetter::S1_INV]
        );
        assert_eq!(w.mirror().mirror(), w);
    }

    #[test]
    fn artin_action_sees_braid_relation_and_centrality() {
        assert!(b("s1 s2 s1").group_equal(&b("s2 s1 s2")));
        assert!(!b("s1 s2").group_equal(&b("s2 s1")));
        let h = b("h");
        for form in HForm::ALL {
            let word = BraidWord::new(form.letters(1), 0);
            assert!(word.group_equal(&h), "{form:?}");
        }
        let x = b("s1 s2^-3 s1^2");
        assert!(x.concat(&h).group_equal(&h.concat(&x)));
    }

    fn arb_braid() -> impl Strategy<Value = BraidWord> {
        (
            prop::collection::vec((1u8..=2, prop::bool::ANY), 0..16),
            -2i64..=2,
        )
            .prop_map(|(v, d)| {
                BraidWord::new(
                    v.into_iter()
                        .map(|(g, s)| BraidLetter::new(g, if s { 1 } else { -1 }).unwrap()),
                    d,
                )
            })
    }

    proptest! {
        #[test]
        fn print_parse_identity(w in arb_braid()) {
            prop_assert_eq!(parse_braid(&w.to_string()).unwrap(), w);
        }

        #[test]
        fn exponent_sum_invariants(w in arb_braid(), k in 0usize..20) {
            let s = w.exponent_sum();
            prop_assert_eq!(w.cyclic_conjugate(k).exponent_sum(), s);
            prop_assert_eq!(w.expand_fulltwist().exponent_sum(), s);
            prop_assert_eq!(w.cyclically_reduced().exponent_sum(), s);
        }

        #[test]
        fn word_times_inverse_reduces_to_identity(w in arb_braid()) {
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }

        #[test]
        fn h_position_is_immaterial(w in arb_braid(), p in 0usize..20) {
            let p = p % (w.letters().len() + 1);
            let h = HForm::SigmaTwoOne.letters(1);
            let inserted = BraidWord::new(
                w.letters()[..p].iter().chain(&h).chain(&w.letters()[p..]).copied(),
                w.twist(),
            );
            let front = BraidWord::new(w.letters().iter().copied(), w.twist() + 1);
            prop_assert!(inserted.group_equal(&front));
        }
    }
}
