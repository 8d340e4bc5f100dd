//! Conjugation chains taking Type 1 braids with `d = ±1` to the cycle form
//! `s2^m s1^a0 s2^-b1 s1^a1 ... s2^-bn s1^an`.

use serde::Serialize;

use super::{
    classify_with_moves, BaldwinClass, BraidError, BraidLetter, BraidWord, HForm, Move, Transcript,
};
use crate::diagram::DecoratedCycleGraph;

/// What a normalization chain ends in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalizationOutcome {
    /// The closure's white graph has the decorated cycle shape.
    CycleForm { graph: DecoratedCycleGraph },
    /// Branch set `T(2, q)`; negative `q` marks the mirror.
    TorusBranchSet { p: i64, q: i64 },
    /// Branch set `T(2, p) # T(2, q)`, the closure of `s2^q s1^p`.
    ConnectedSumBranchSet { p: i64, q: i64 },
}

/// Outcome plus the word reached and the move-by-move transcript from the input.
#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    #[serde(flatten)]
    pub outcome: NormalizationOutcome,
    pub word: BraidWord,
    pub transcript: Transcript,
}

impl Normalization {
    /// The word the outcome stands for, built from its parameters alone.
    pub fn claimed_word(&self) -> BraidWord {
        match &self.outcome {
            NormalizationOutcome::CycleForm { graph } => graph.braid_word(),
            NormalizationOutcome::ConnectedSumBranchSet { p, q } => {
                BraidWord::from_syllables([(2, *q), (1, *p)], 0)
            }
            NormalizationOutcome::TorusBranchSet { .. } => self.word.clone(),
        }
    }

    /// Replays the transcript and checks it lands on the claimed word, with
    /// exponent sums preserved at every step.
    pub fn verify(&self) -> Result<(), BraidError> {
        if let NormalizationOutcome::TorusBranchSet { q, .. } = self.outcome {
            // a stabilised two-strand torus word: s_i^q s_j^{±1}, i ≠ j
            let syl = self.word.cyclically_reduced().syllables();
            let ok = syl.len() == 2
                && syl[0].0 != syl[1].0
                && ((syl[0].1 == q && syl[1].1.abs() == 1)
                    || (syl[1].1 == q && syl[0].1.abs() == 1));
            if !ok {
                return Err(BraidError::ReplayMismatch {
                    got: self.word.to_string(),
                    claimed: format!("stabilised T(2,{q})"),
                });
            }
        }
        self.transcript.verify_reaches(&self.claimed_word())
    }
}

/// Reads a cyclic word as `s2^m s1^a0 s2^-b1 s1^a1 ... s2^-bn s1^an` with all
/// exponents positive. `n = 0` is allowed (`s2^m s1^a0`).
pub fn parse_cycle_form(w: &BraidWord) -> Option<(u64, Vec<u64>, Vec<u64>)> {
    if w.twist() != 0 {
        return None;
    }
    let mut syl = w.cyclically_reduced().syllables();
    if syl.len() > 1 {
        let (first, last) = (syl[0], *syl.last().unwrap());
        if first.0 == last.0 && first.1.signum() == last.1.signum() {
            syl[0].1 += last.1;
            syl.pop();
        }
    }
    let positive_s2: Vec<usize> = (0..syl.len())
        .filter(|&i| syl[i].0 == 2 && syl[i].1 > 0)
        .collect();
    if positive_s2.len() != 1 || !syl.len().is_multiple_of(2) {
        return None;
    }
    syl.rotate_left(positive_s2[0]);
    let m = syl[0].1 as u64;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, &(g, e)) in syl.iter().enumerate().skip(1) {
        if i % 2 == 1 {
            if g != 1 || e <= 0 {
                return None;
            }
            a.push(e as u64);
        } else {
            if g != 2 || e >= 0 {
                return None;
            }
            b.push((-e) as u64);
        }
    }
    Some((m, a, b))
}

fn precondition(expected: &str, found: &BaldwinClass) -> BraidError {
    BraidError::Precondition {
        expected: expected.to_string(),
        found: serde_json::to_string(found).unwrap_or_default(),
    }
}

/// `h s1^k s2^-a'1 ... s1 s2^-a'n`, rewritten through `h = s2 s1^2 s2 s1^2`
/// and `s1 s2 s1^m = s2^m s1 s2` to `s2^m s1 s2^{1-a'1} ... s1 s2^{1-a'n} s1`
/// with `m = k + 2`.
pub fn normalize_type1_d1(w: &BraidWord) -> Result<Normalization, BraidError> {
    let cls = classify_with_moves(w);
    let BaldwinClass::Type1 { d: 1, .. } = cls.class else {
        return Err(precondition("Type1 with d = 1", &cls.class));
    };
    let mut t = cls.transcript.clone();
    let mut cur = cls.reached();

    // start at a maximal s1 run
    let n = cur.len();
    let l = cur.letters();
    let start = (0..n)
        .find(|&i| l[i] == BraidLetter::S1 && l[(i + n - 1) % n] == BraidLetter::S2_INV)
        .expect("type 1 word has an s1 run after an s2^-1");
    t.push(&mut cur, Move::Rotate { k: start })?;
    let k = cur
        .letters()
        .iter()
        .take_while(|&&x| x == BraidLetter::S1)
        .count();
    let m = k + 2;

    t.push(
        &mut cur,
        Move::Twist {
            delta: -1,
            form: HForm::SplitTwoOne,
            at: 0,
        },
    )?;
    t.push(&mut cur, Move::Rotate { k: 1 })?;
    for j in 1..=m {
        t.push(&mut cur, Move::BraidRelation { at: j })?;
    }
    t.push(&mut cur, Move::Rotate { k: 1 })?;
    t.push(&mut cur, Move::Reduce)?;

    let outcome = match parse_cycle_form(&cur) {
        Some((m, a, b)) if b.is_empty() => NormalizationOutcome::ConnectedSumBranchSet {
            p: a[0] as i64,
            q: m as i64,
        },
        Some((m, a, b)) => NormalizationOutcome::CycleForm {
            graph: DecoratedCycleGraph::new(m, a, b)
                .expect("parsed cycle form has positive parameters"),
        },
        None => {
            // single run with a'1 = 1: s2^m s1 s2 s1
            let expect = BraidWord::from_syllables([(2, m as i64), (1, 1), (2, 1), (1, 1)], 0);
            if cur != expect {
                return Err(BraidError::ReplayMismatch {
                    got: cur.to_string(),
                    claimed: expect.to_string(),
                });
            }
            t.push(&mut cur, Move::BraidRelation { at: m })?;
            let len = cur.len();
            t.push(&mut cur, Move::Rotate { k: len - 1 })?;
            t.push(&mut cur, Move::Exchange)?;
            NormalizationOutcome::TorusBranchSet {
                p: 2,
                q: m as i64 + 2,
            }
        }
    };
    Ok(Normalization {
        outcome,
        word: cur,
        transcript: t,
    })
}

/// `h^-1 s1 s2^-a1 ... s1 s2^-an = s1^-1 s2^{-a1-2} s1 s2^-a2 ... s1 s2^{-an-2}`;
/// for `n > 1` the mirror of the `s1 <-> s2` exchange is in cycle form with `m = 1`.
pub fn normalize_type1_dm1(w: &BraidWord) -> Result<Normalization, BraidError> {
    let cls = classify_with_moves(w);
    let BaldwinClass::Type1 { d: -1, ref a } = cls.class else {
        return Err(precondition("Type1 with d = -1", &cls.class));
    };
    let mut t = cls.transcript.clone();
    let mut cur = cls.reached();

    t.push(
        &mut cur,
        Move::Twist {
            delta: 1,
            form: HForm::SigmaOneTwo,
            at: 0,
        },
    )?;
    t.push(&mut cur, Move::Rotate { k: 1 })?;
    t.push(&mut cur, Move::BraidRelation { at: 0 })?;
    t.push(&mut cur, Move::Rotate { k: 1 })?;
    t.push(&mut cur, Move::Reduce)?;

    if a.len() == 1 {
        let q = -(a[0] as i64 + 4);
        t.notes.push(format!(
            "chain ends in s1^-1 s2^{q}; the closure is the mirror of T(2,{}), not T(2,{})",
            -q, a[0]
        ));
        return Ok(Normalization {
            outcome: NormalizationOutcome::TorusBranchSet { p: 2, q },
            word: cur,
            transcript: t,
        });
    }

    t.push(&mut cur, Move::Mirror)?;
    t.push(&mut cur, Move::Exchange)?;
    let (m, a, b) = parse_cycle_form(&cur).ok_or_else(|| BraidError::ReplayMismatch {
        got: cur.to_string(),
        claimed: "s2 s1^a0 s2^-b1 ... s1^an".into(),
    })?;
    let graph =
        DecoratedCycleGraph::new(m, a, b).expect("parsed cycle form has positive parameters");
    Ok(Normalization {
        outcome: NormalizationOutcome::CycleForm { graph },
        word: cur,
        transcript: t,
    })
}
