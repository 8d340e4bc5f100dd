//! Freely reduced words in a free group on indexed generators.

use std::fmt;

/// A generator or its inverse. Stored as `±(index + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        let v = gen as i32 + 1;
        Letter(if inverse { -v } else { v })
    }

    pub fn pos(gen: usize) -> Self {
        Self::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Self::new(gen, true)
    }

    #[inline]
    pub fn gen(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// `+1` or `-1`.
    #[inline]
    pub fn exponent(self) -> i32 {
        self.0.signum()
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// `gen^exp`.
    pub fn gen_pow(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        FreeWord {
            letters: vec![l; exp.unsigned_abs() as usize],
        }
    }

    pub fn gen(gen: usize) -> Self {
        Self::gen_pow(gen, 1)
    }

    /// Builds from `(generator, exponent)` syllables.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        let mut w = Self::identity();
        for (g, e) in syllables {
            let l = Letter::new(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                w.push(l);
            }
        }
        w
    }

    /// Appends a letter, cancelling against the last one if inverse.
    #[inline]
    pub fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn extend(&mut self, other: &FreeWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(words: I) -> FreeWord {
        let mut w = FreeWord::identity();
        for x in words {
            w.extend(x);
        }
        w
    }

    /// Number of letters (of either sign) on `gen`.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen() == gen).count()
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen() == gen)
            .map(|l| l.exponent() as i64)
            .sum()
    }

    pub fn mentions(&self, gen: usize) -> bool {
        self.letters.iter().any(|l| l.gen() == gen)
    }

    /// True when no letter is an inverse.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.is_inverse())
    }

    /// Replaces each generator `g` for which `f(g)` is `Some` by that word.
    pub fn substitute<'a, F>(&self, f: F) -> FreeWord
    where
        F: Fn(usize) -> Option<&'a FreeWord>,
    {
        let mut out = FreeWord::identity();
        for &l in &self.letters {
            match f(l.gen()) {
                Some(r) if l.is_inverse() => {
                    for &x in r.letters.iter().rev() {
                        out.push(x.inverse());
                    }
                }
                Some(r) => {
                    for &x in &r.letters {
                        out.push(x);
                    }
                }
                None => out.push(l),
            }
        }
        out
    }

    /// Renumbers generators through `map`.
    pub fn relabel<F: Fn(usize) -> usize>(&self, map: F) -> FreeWord {
        FreeWord::from_letters(
            self.letters
                .iter()
                .map(|l| Letter::new(map(l.gen()), l.is_inverse())),
        )
    }

    /// Strips matching inverse letters from both ends (conjugation).
    pub fn cyclically_reduced(&self) -> FreeWord {
        let n = self.letters.len();
        let mut i = 0;
        while i < n / 2 && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        FreeWord {
            letters: self.letters[i..n - i].to_vec(),
        }
    }

    /// Rotation by `k` letters to the left. Only meaningful on cyclically reduced words.
    pub fn rotated(&self, k: usize) -> FreeWord {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        FreeWord { letters }
    }

    /// Equality as cyclic words after cyclic reduction.
    pub fn is_cyclic_conjugate_of(&self, other: &FreeWord) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_identity() {
            return true;
        }
        let mut doubled = a.letters.clone();
        doubled.extend_from_slice(&a.letters);
        doubled.windows(b.len()).any(|w| w == b.letters.as_slice())
    }

    /// Equal to `other` or its inverse, up to cyclic permutation.
    pub fn is_relator_equivalent(&self, other: &FreeWord) -> bool {
        self.is_cyclic_conjugate_of(other) || self.is_cyclic_conjugate_of(&other.inverse())
    }

    /// Run-length syllables `(generator, exponent)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen() => *e += l.exponent() as i64,
                _ => out.push((l.gen(), l.exponent() as i64)),
            }
        }
        out
    }

    /// Formats with generator names, e.g. `x1 x0^-1 x1`. The identity prints as `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.word.syllables().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.names.get(g) {
                Some(n) => write!(f, "{n}")?,
                None => write!(f, "g{g}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Wire form of a word: `[[name, exponent], ...]`.
pub type SyllableList = Vec<(String, i64)>;

pub fn to_syllable_list(w: &FreeWord, names: &[String]) -> SyllableList {
    w.syllables()
        .into_iter()
        .map(|(g, e)| (names[g].clone(), e))
        .collect()
}

pub fn from_syllable_list(s: &SyllableList, names: &[String]) -> Result<FreeWord, String> {
    let mut syl = Vec::with_capacity(s.len());
    for (n, e) in s {
        let g = names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| format!("unknown generator {n:?}"))?;
        syl.push((g, *e));
    }
    Ok(FreeWord::from_syllables(syl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &[(usize, i64)]) -> FreeWord {
        FreeWord::from_syllables(s.iter().copied())
    }

    #[test]
    fn cancels_inverse_pairs() {
        assert!(w(&[(0, 1), (0, -1)]).is_identity());
        // x y y^-1 x
        assert_eq!(
            w(&[(0, 1), (1, 1), (1, -1), (0, 1)]),
            FreeWord::gen_pow(0, 2)
        );
    }

    #[test]
    fn cyclic_reduction_and_rotation() {
        let a = w(&[(1, 1), (0, 2), (1, -1)]);
        assert_eq!(a.cyclically_reduced(), FreeWord::gen_pow(0, 2));
        let b = w(&[(0, 1), (1, 1), (2, -1)]);
        assert!(b.is_cyclic_conjugate_of(&b.rotated(2)));
        assert!(b.is_relator_equivalent(&b.inverse().rotated(1)));
        assert!(!b.is_cyclic_conjugate_of(&b.inverse()));
    }

    #[test]
    fn display_uses_syllables() {
        let names: Vec<String> = ["x0", "x1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            w(&[(1, 1), (0, -1), (1, 1)]).display(&names).to_string(),
            "x1 x0^-1 x1"
        );
        assert_eq!(FreeWord::identity().display(&names).to_string(), "1");
    }

    fn arb_word() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..24)
            .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn word_times_inverse_is_identity(a in arb_word()) {
            prop_assert!(a.mul(&a.inverse()).is_identity());
        }

        #[test]
        fn reduction_is_idempotent(a in arb_word()) {
            let again = FreeWord::from_letters(a.letters().iter().copied());
            prop_assert_eq!(&again, &a);
            prop_assert!(a.letters().windows(2).all(|p| p[0] != p[1].inverse()));
        }

        #[test]
        fn syllables_round_trip(a in arb_word()) {
            prop_assert_eq!(FreeWord::from_syllables(a.syllables()), a);
        }
    }
}
