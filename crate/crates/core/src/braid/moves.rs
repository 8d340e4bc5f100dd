use serde::{Deserialize, Serialize};

use super::{BraidError, BraidLetter, BraidWord};

/// Letter forms of the full twist `h`. All of them are equal in `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HForm {
    /// `(s2 s1)^3`
    SigmaTwoOne,
    /// `(s1 s2)^3`
    SigmaOneTwo,
    /// `(s1 s2 s1)^2`
    HalfTwistSquared,
    /// `s2 s1^2 s2 s1^2`
    SplitTwoOne,
    /// `s1 s2^2 s1 s2^2`
    SplitOneTwo,
}

impl HForm {
    pub const ALL: [HForm; 5] = [
        HForm::SigmaTwoOne,
        HForm::SigmaOneTwo,
        HForm::HalfTwistSquared,
        HForm::SplitTwoOne,
        HForm::SplitOneTwo,
    ];

    /// Letters of `h^sign` for `sign = ±1`.
    pub fn letters(self, sign: i8) -> Vec<BraidLetter> {
        use BraidLetter as L;
        let pos: Vec<BraidLetter> = match self {
            HForm::SigmaTwoOne => [L::S2, L::S1].repeat(3),
            HForm::SigmaOneTwo => [L::S1, L::S2].repeat(3),
            HForm::HalfTwistSquared => [L::S1, L::S2, L::S1].repeat(2),
            HForm::SplitTwoOne => [L::S2, L::S1, L::S1].repeat(2),
            HForm::SplitOneTwo => [L::S1, L::S2, L::S2].repeat(2),
        };
        if sign >= 0 {
            pos
        } else {
            pos.iter().rev().map(|l| l.inverse()).collect()
        }
    }
}

/// A single legal rewriting step on a braid word. Every move either
/// preserves the conjugacy class or (mirror) replaces it by the mirror class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Left rotation of the letters by `k`.
    Rotate {
        k: usize,
    },
    /// Cyclic free reduction.
    Reduce,
    /// `twist += delta` while inserting the letters of `h^-delta` at `at`.
    /// `delta = -1` expands one `h`; `delta = +1` extracts one.
    Twist {
        delta: i8,
        form: HForm,
        at: usize,
    },
    /// `si sj si -> sj si sj` (same signs) on the three letters starting at `at`.
    BraidRelation {
        at: usize,
    },
    Mirror,
    Exchange,
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Rotate { .. } => "rotate",
            Move::Reduce => "reduce",
            Move::Twist { .. } => "twist",
            Move::BraidRelation { .. } => "braid_relation",
            Move::Mirror => "mirror",
            Move::Exchange => "exchange",
        }
    }

    pub fn apply(&self, w: &BraidWord, index: usize) -> Result<BraidWord, BraidError> {
        let illegal = |reason: String| BraidError::IllegalMove {
            index,
            kind: self.kind().to_string(),
            reason,
        };
        match *self {
            Move::Rotate { k } => {
                if k > w.len() {
                    return Err(illegal(format!("rotation {k} exceeds length {}", w.len())));
                }
                Ok(w.cyclic_conjugate(k))
            }
            Move::Reduce => Ok(w.cyclically_reduced()),
            Move::Twist { delta, form, at } => {
                if delta != 1 && delta != -1 {
                    return Err(illegal(format!("delta {delta} is not ±1")));
                }
                if at > w.len() {
                    return Err(illegal(format!("position {at} exceeds length {}", w.len())));
                }
                let h = form.letters(-delta);
                let letters = w.letters()[..at]
                    .iter()
                    .chain(&h)
                    .chain(&w.letters()[at..])
                    .copied();
                Ok(BraidWord::new(letters, w.twist() + delta as i64))
            }
            Move::BraidRelation { at } => {
                let l = w.letters();
                if at + 3 > l.len() {
                    return Err(illegal(format!("no three letters at {at}")));
                }
                let (p, q, r) = (l[at], l[at + 1], l[at + 2]);
                if p != r || p.generator() == q.generator() || p.sign() != q.sign() {
                    return Err(illegal("letters are not of the form si sj si".into()));
                }
                let mut out = l.to_vec();
                out[at] = q;
                out[at + 1] = p;
                out[at + 2] = q;
                Ok(BraidWord::new(out, w.twist()))
            }
            Move::Mirror => Ok(w.mirror()),
            Move::Exchange => Ok(w.exchange()),
        }
    }
}

/// Auditable record of a rewriting chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub start: BraidWord,
    pub moves: Vec<Move>,
    /// Free-form remarks attached to the chain.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Transcript {
    pub fn new(start: BraidWord) -> Self {
        Transcript {
            start,
            moves: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Appends `m`, applying it to `current`.
    pub(crate) fn push(&mut self, current: &mut BraidWord, m: Move) -> Result<(), BraidError> {
        *current = m.apply(current, self.moves.len())?;
        self.moves.push(m);
        Ok(())
    }

    /// Every intermediate word, starting with `start`.
    pub fn replay(&self) -> Result<Vec<BraidWord>, BraidError> {
        let mut words = vec![self.start.clone()];
        for (i, m) in self.moves.iter().enumerate() {
            let next = m.apply(words.last().unwrap(), i)?;
            words.push(next);
        }
        Ok(words)
    }

    pub fn final_word(&self) -> Result<BraidWord, BraidError> {
        Ok(self.replay()?.pop().unwrap())
    }

    /// Replays and checks that the exponent sum is preserved by every move
    /// (negated by mirror moves).
    pub fn check_exponent_sums(&self) -> Result<(), BraidError> {
        let words = self.replay()?;
        for (i, m) in self.moves.iter().enumerate() {
            let before = words[i].exponent_sum();
            let after = words[i + 1].exponent_sum();
            let expected = if *m == Move::Mirror { -before } else { before };
            if after != expected {
                return Err(BraidError::ExponentSumChanged {
                    index: i,
                    before,
                    after,
                });
            }
        }
        Ok(())
    }

    /// Replays and compares the result with `claimed` up to rotation and
    /// cyclic reduction.
    pub fn verify_reaches(&self, claimed: &BraidWord) -> Result<(), BraidError> {
        self.check_exponent_sums()?;
        let got = self.final_word()?;
        if got.cyclically_equal(claimed) {
            Ok(())
        } else {
            Err(BraidError::ReplayMismatch {
                got: got.to_string(),
                claimed: claimed.to_string(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    #[test]
    fn braid_relation_move() {
        let w = parse_braid("s2 s1 s2 s1^-1").unwrap();
        let out = Move::BraidRelation { at: 0 }.apply(&w, 0).unwrap();
        // s1 s2 s1 s1^-1 freely reduces
        assert_eq!(out, parse_braid("s1 s2").unwrap());
        assert!(Move::BraidRelation { at: 1 }.apply(&w, 0).is_err());
    }

    #[test]
    fn twist_move_moves_h_between_symbol_and_letters() {
        let w = parse_braid("h s1").unwrap();
        let expanded = Move::Twist {
            delta: -1,
            form: HForm::SigmaTwoOne,
            at: 1,
        }
        .apply(&w, 0)
        .unwrap();
        assert_eq!(expanded.twist(), 0);
        assert_eq!(expanded.exponent_sum(), w.exponent_sum());
        let back = Move::Twist {
            delta: 1,
            form: HForm::SigmaTwoOne,
            at: 1,
        }
        .apply(&expanded, 1)
        .unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn transcript_detects_bad_move() {
        let mut t = Transcript::new(parse_braid("s1 s2").unwrap());
        t.moves.push(Move::Rotate { k: 5 });
        assert!(t.replay().is_err());
    }
}
