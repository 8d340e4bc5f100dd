//! Membership in the three L-space families of three-braids.

use std::collections::HashSet;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{BraidLetter, BraidWord, HForm, Move, Transcript};

/// Family membership of a three-braid word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaldwinClass {
    /// `h^d s1 s2^-a1 ... s1 s2^-an` with `d ∈ {-1,0,1}`, `a_i ≥ 0`, some `a_j > 0`.
    Type1 {
        d: i64,
        a: Vec<u64>,
    },
    /// `h^d s2^m` with `d = ±1`.
    Type2 {
        d: i64,
        m: i64,
    },
    /// `h^d s1^m s2^-1` with `m ∈ {-1,-2,-3}`, `d ∈ {-1,0,1,2}`.
    Type3 {
        d: i64,
        m: i64,
    },
    NotInFamily,
}

impl BaldwinClass {
    /// The family word `h^d ...` this class stands for.
    pub fn family_word(&self) -> Option<BraidWord> {
        use BraidLetter as L;
        match self {
            BaldwinClass::Type1 { d, a } => {
                let mut letters = Vec::new();
                for &ai in a {
                    letters.push(L::S1);
                    letters.extend(std::iter::repeat_n(L::S2_INV, ai as usize));
                }
                Some(BraidWord::new(letters, *d))
            }
            BaldwinClass::Type2 { d, m } => Some(BraidWord::from_syllables([(2, *m)], *d)),
            BaldwinClass::Type3 { d, m } => Some(BraidWord::from_syllables([(1, *m), (2, -1)], *d)),
            BaldwinClass::NotInFamily => None,
        }
    }

    pub fn type_number(&self) -> Option<u8> {
        match self {
            BaldwinClass::Type1 { .. } => Some(1),
            BaldwinClass::Type2 { .. } => Some(2),
            BaldwinClass::Type3 { .. } => Some(3),
            BaldwinClass::NotInFamily => None,
        }
    }
}

impl Serialize for BaldwinClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            BaldwinClass::Type1 { d, a } => {
                map.serialize_entry("type", &1)?;
                map.serialize_entry("d", d)?;
                map.serialize_entry("a", a)?;
            }
            BaldwinClass::Type2 { d, m } | BaldwinClass::Type3 { d, m } => {
                map.serialize_entry("type", &self.type_number())?;
                map.serialize_entry("d", d)?;
                map.serialize_entry("m", m)?;
            }
            BaldwinClass::NotInFamily => map.serialize_entry("type", &Option::<u8>::None)?,
        }
        map.end()
    }
}

/// A classification together with the moves taking the input to the family word.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: BaldwinClass,
    pub transcript: Transcript,
}

impl Classification {
    /// The word reached by the transcript: the family word up to rotation
    /// (for Type 1, starting at the first `s1` of the reported `a`).
    pub fn reached(&self) -> BraidWord {
        self.transcript
            .final_word()
            .expect("classification transcript replays")
    }
}

/// Searches for a family match, allowing free and cyclic reduction,
/// rotation, and extraction of full twists written in any [`HForm`] at any
/// cyclic position, provided each extraction shortens the word.
pub fn classify_with_moves(w: &BraidWord) -> Classification {
    let mut transcript = Transcript::new(w.clone());
    let mut cur = w.clone();
    transcript.push(&mut cur, Move::Reduce).unwrap();
    let k = cur.least_rotation();
    transcript.push(&mut cur, Move::Rotate { k }).unwrap();

    let mut seen: HashSet<BraidWord> = HashSet::new();
    seen.insert(cur.clone());
    let mut level: Vec<(BraidWord, Vec<Move>)> = vec![(cur, Vec::new())];
    while !level.is_empty() {
        for (word, path) in &level {
            if let Some((class, rot)) = match_family(word) {
                transcript.moves.extend(path.iter().cloned());
                transcript.moves.push(Move::Rotate { k: rot });
                return Classification { class, transcript };
            }
        }
        let mut next = Vec::new();
        for (word, path) in &level {
            for (child, moves) in extractions(word) {
                if seen.len() >= STATE_CAP {
                    break;
                }
                if seen.insert(child.clone()) {
                    let mut p = path.clone();
                    p.extend(moves);
                    next.push((child, p));
                }
            }
        }
        level = next;
    }
    Classification {
        class: BaldwinClass::NotInFamily,
        transcript,
    }
}

pub fn classify_baldwin(w: &BraidWord) -> BaldwinClass {
    classify_with_moves(w).class
}

const STATE_CAP: usize = 20_000;

/// Children obtained by extracting one `h^±1`, cyclically reduced and put in
/// least rotation; only strictly shorter words are kept.
fn extractions(w: &BraidWord) -> Vec<(BraidWord, Vec<Move>)> {
    let mut out = Vec::new();
    for at in 0..=w.len() {
        for form in HForm::ALL {
            for delta in [1i8, -1] {
                let m = Move::Twist { delta, form, at };
                let mut x = m.apply(w, 0).unwrap();
                x = x.cyclically_reduced();
                if x.len() >= w.len() {
                    continue;
                }
                let k = x.least_rotation();
                let x = x.cyclic_conjugate(k);
                out.push((x, vec![m, Move::Reduce, Move::Rotate { k }]));
            }
        }
    }
    out
}

/// Matches a cyclically reduced word against the three family shapes,
/// returning the class and the rotation that puts the word in family form.
fn match_family(w: &BraidWord) -> Option<(BaldwinClass, usize)> {
    use BraidLetter as L;
    let d = w.twist();
    let letters = w.letters();

    if (-1..=1).contains(&d)
        && letters.iter().all(|&l| l == L::S1 || l == L::S2_INV)
        && letters.contains(&L::S1)
        && letters.contains(&L::S2_INV)
    {
        let n = letters.len();
        let mut best: Option<(Vec<u64>, usize)> = None;
        for start in (0..n).filter(|&i| letters[i] == L::S1) {
            let mut a = Vec::new();
            for j in 0..n {
                match letters[(start + j) % n] {
                    l if l == L::S1 => a.push(0),
                    _ => *a.last_mut().unwrap() += 1,
                }
            }
            if best.as_ref().is_none_or(|(b, _)| a < *b) {
                best = Some((a, start));
            }
        }
        let (a, start) = best.unwrap();
        return Some((BaldwinClass::Type1 { d, a }, start));
    }

    if d.abs() == 1
        && (letters.iter().all(|&l| l == L::S2) || letters.iter().all(|&l| l == L::S2_INV))
    {
        let m = letters.iter().map(|l| l.sign() as i64).sum();
        return Some((BaldwinClass::Type2 { d, m }, 0));
    }

    if (-1..=2).contains(&d) && (2..=4).contains(&letters.len()) {
        let m = -(letters.len() as i64 - 1);
        let pattern = BraidWord::from_syllables([(1, m), (2, -1)], d);
        for k in 0..letters.len() {
            if w.cyclic_conjugate(k) == pattern {
                return Some((BaldwinClass::Type3 { d, m }, k));
            }
        }
    }
    None
}
