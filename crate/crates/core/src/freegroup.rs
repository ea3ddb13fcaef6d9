//! Reduced words and endomorphisms of finitely generated free groups.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intlat::IntMatrix;

/// Ordered generator names. The order fixes matrix row/column indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Domain("alphabet must be non-empty".into()));
        }
        for (i, name) in letters.iter().enumerate() {
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Domain(format!("invalid letter name {name:?}")));
            }
            if letters[..i].contains(name) {
                return Err(Error::Domain(format!("duplicate letter {name:?}")));
            }
        }
        Ok(Self { letters })
    }

    /// Alphabet whose letters are the characters of `s`, e.g. `"abc"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, index: usize) -> &str {
        &self.letters[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// True when every letter is a single lowercase character, the only case
    /// where the compact notation (uppercase for inverses) is unambiguous.
    pub fn is_compact(&self) -> bool {
        self.letters.iter().all(|l| {
            let mut chars = l.chars();
            matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase())
        })
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub letter: usize,
    pub inverse: bool,
}

impl Syllable {
    pub fn pos(letter: usize) -> Self {
        Self { letter, inverse: false }
    }

    pub fn neg(letter: usize) -> Self {
        Self { letter, inverse: true }
    }

    pub fn inv(self) -> Self {
        Self { letter: self.letter, inverse: !self.inverse }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letter(letter: usize) -> Self {
        Self { syllables: vec![Syllable::pos(letter)] }
    }

    /// Free reduction of a raw syllable sequence, checking letters against
    /// the alphabet.
    pub fn reduce(alphabet: &Alphabet, raw: impl IntoIterator<Item = Syllable>) -> Result<Self> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.letter >= alphabet.len() {
                return Err(Error::Domain(format!(
                    "letter index {} outside an alphabet of {} letters",
                    s.letter,
                    alphabet.len()
                )));
            }
            push_reduced(&mut out, s);
        }
        Ok(Self { syllables: out })
    }

    /// Free reduction without an alphabet check.
    pub fn reduce_unchecked(raw: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            push_reduced(&mut out, s);
        }
        Self { syllables: out }
    }

    /// Parses compact notation: each character names a letter and an
    /// uppercase character denotes the inverse of its lowercase letter.
    /// Digits and other single-character names are always positive.
    pub fn parse_compact(alphabet: &Alphabet, s: &str) -> Result<Self> {
        let mut raw = Vec::with_capacity(s.len());
        for c in s.chars() {
            let lower = c.to_ascii_lowercase();
            let inverse = c.is_ascii_uppercase();
            let index = alphabet
                .index_of(&lower.to_string())
                .or_else(|| if inverse { None } else { alphabet.index_of(&c.to_string()) })
                .ok_or_else(|| Error::Domain(format!("unknown letter {c:?}")))?;
            raw.push(Syllable { letter: index, inverse });
        }
        Self::reduce(alphabet, raw)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|s| !s.inverse)
    }

    pub fn inverse(&self) -> Self {
        Self { syllables: self.syllables.iter().rev().map(|s| s.inv()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.syllables.clone();
        for &s in &other.syllables {
            push_reduced(&mut out, s);
        }
        Self { syllables: out }
    }

    /// Signed exponent sum of each letter.
    pub fn exponent_sums(&self, letters: usize) -> Vec<i64> {
        let mut sums = vec![0i64; letters];
        for s in &self.syllables {
            sums[s.letter] += if s.inverse { -1 } else { 1 };
        }
        sums
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

fn push_reduced(out: &mut Vec<Syllable>, s: Syllable) {
    if out.last() == Some(&s.inv()) {
        out.pop();
    } else {
        out.push(s);
    }
}

/// Space-separated letters with `'` marking inverses; `1` for the identity.
pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(s.letter))?;
            if s.inverse {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}

/// An endomorphism of the free group on `alphabet`, given by the image of
/// each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeEndo {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::Domain(format!(
                "{} images for {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        for w in &images {
            if let Some(s) = w.syllables.iter().find(|s| s.letter >= alphabet.len()) {
                return Err(Error::Domain(format!("image uses letter index {}", s.letter)));
            }
        }
        Ok(Self { alphabet, images })
    }

    /// Builds an endomorphism from compact image strings, one per letter of
    /// `letters` in order, e.g. `from_compact("ab", &["ab", "a"])`.
    pub fn from_compact(letters: &str, images: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::from_chars(letters)?;
        let images = images
            .iter()
            .map(|s| Word::parse_compact(&alphabet, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, images)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.len()).map(Word::letter).collect();
        Self { alphabet, images }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: usize) -> &Word {
        &self.images[letter]
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    /// Image of a word: substitute each syllable, inverting for negative
    /// syllables, then reduce.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in &w.syllables {
            let image = self.images.get(s.letter).ok_or_else(|| {
                Error::Domain(format!("letter index {} outside the endomorphism's alphabet", s.letter))
            })?;
            if s.inverse {
                for &t in image.syllables.iter().rev() {
                    push_reduced(&mut out, t.inv());
                }
            } else {
                for &t in &image.syllables {
                    push_reduced(&mut out, t);
                }
            }
        }
        Ok(Word { syllables: out })
    }

    /// `letter ↦ outer(inner(letter))`.
    pub fn compose(outer: &FreeEndo, inner: &FreeEndo) -> Result<FreeEndo> {
        if outer.alphabet != inner.alphabet {
            return Err(Error::Domain("composition across different alphabets".into()));
        }
        let images = inner.images.iter().map(|w| outer.apply(w)).collect::<Result<Vec<_>>>()?;
        Ok(FreeEndo { alphabet: outer.alphabet.clone(), images })
    }

    /// The `n`-fold composite; `n = 0` gives the identity.
    pub fn iterate(&self, n: usize) -> FreeEndo {
        let mut result = FreeEndo::identity(self.alphabet.clone());
        for _ in 0..n {
            result = FreeEndo::compose(self, &result).expect("same alphabet");
        }
        result
    }

    /// Row `i` holds the exponent sums of the image of letter `i`, so that
    /// `ab(compose(s, t)) = ab(t) · ab(s)`.
    pub fn abelianization(&self) -> IntMatrix {
        let r = self.rank();
        let rows: Vec<Vec<BigInt>> = self
            .images
            .iter()
            .map(|w| w.exponent_sums(r).into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_big_rows(rows, r).expect("square by construction")
    }

    /// Rules in `letter -> image` form.
    pub fn rules(&self) -> Vec<String> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{} -> {}", self.alphabet.name(i), w.display(&self.alphabet)))
            .collect()
    }
}

impl fmt::Display for FreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rules().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::from_chars("abc").unwrap()
    }

    fn w(alphabet: &Alphabet, s: &str) -> Word {
        Word::parse_compact(alphabet, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = abc();
        let raw = |s: &str| -> Vec<Syllable> {
            s.chars()
                .map(|c| Syllable {
                    letter: a.index_of(&c.to_ascii_lowercase().to_string()).unwrap(),
                    inverse: c.is_ascii_uppercase(),
                })
                .collect()
        };
        assert_eq!(Word::reduce(&a, raw("abBc")).unwrap(), w(&a, "ac"));
        assert!(Word::reduce(&a, raw("aA")).unwrap().is_identity());
        // a b^-1 b a^-1 a -> a a^-1 a -> a
        assert_eq!(Word::reduce(&a, raw("aBbAa")).unwrap(), w(&a, "a"));
        assert!(matches!(
            Word::reduce(&a, [Syllable::pos(7)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let fib = FreeEndo::from_compact("ab", &["ab", "a"]).unwrap();
        let ab = w(fib.alphabet(), "ab");
        assert_eq!(fib.apply(&ab).unwrap(), w(fib.alphabet(), "aba"));
        assert!(fib.apply(&Word::identity()).unwrap().is_identity());

        let inv = FreeEndo::from_compact("ab", &["b", "Ba"]).unwrap();
        assert_eq!(inv.apply(&ab).unwrap(), w(inv.alphabet(), "a"));
    }

    #[test]
    fn apply_inverse_syllables() {
        let fib = FreeEndo::from_compact("ab", &["ab", "a"]).unwrap();
        let x = w(fib.alphabet(), "aB");
        assert_eq!(fib.apply(&x).unwrap(), w(fib.alphabet(), "abA"));
    }

    #[test]
    fn compose_examples() {
        let fib = FreeEndo::from_compact("ab", &["ab", "a"]).unwrap();
        let id = FreeEndo::identity(fib.alphabet().clone());
        assert_eq!(FreeEndo::compose(&fib, &id).unwrap(), fib);
        assert_eq!(FreeEndo::compose(&fib, &fib).unwrap(), FreeEndo::from_compact("ab", &["aba", "ab"]).unwrap());
        let inv = FreeEndo::from_compact("ab", &["b", "Ba"]).unwrap();
        assert_eq!(FreeEndo::compose(&inv, &fib).unwrap(), id);

        let other = FreeEndo::identity(abc());
        assert!(matches!(FreeEndo::compose(&fib, &other), Err(Error::Domain(_))));
    }

    #[test]
    fn abelianization_examples() {
        let e = FreeEndo::from_compact("ab", &["ababa", "baaab"]).unwrap();
        assert_eq!(e.abelianization(), IntMatrix::from_rows(&[[3, 2], [3, 2]]));
        let fib = FreeEndo::from_compact("ab", &["ab", "a"]).unwrap();
        assert_eq!(fib.abelianization(), IntMatrix::from_rows(&[[1, 1], [1, 0]]));
        assert_eq!(FreeEndo::identity(abc()).abelianization(), IntMatrix::identity(3));
    }

    #[test]
    fn iterate_matches_repeated_compose() {
        let fib = FreeEndo::from_compact("ab", &["ab", "a"]).unwrap();
        assert_eq!(fib.iterate(3), FreeEndo::from_compact("ab", &["abaab", "aba"]).unwrap());
        assert_eq!(fib.iterate(0), FreeEndo::identity(fib.alphabet().clone()));
    }

    #[test]
    fn display_uses_apostrophes() {
        let a = abc();
        assert_eq!(w(&a, "aBc").display(&a).to_string(), "a b' c");
        assert_eq!(Word::identity().display(&a).to_string(), "1");
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::from_chars("abc").unwrap().is_compact());
        assert!(!Alphabet::new(["x1", "x2"]).unwrap().is_compact());
        assert!(!Alphabet::from_chars("123").unwrap().is_compact());
    }
}
