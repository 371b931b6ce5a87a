//! Free-group words over named generators.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use thiserror::Error;

pub use parse::{
    parse_presentation, parse_word, parse_word_in, ParseError, ParsedPresentation, PresRelation,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid generator name {0:?}: want a letter followed by letters, digits, or '_'")]
    BadGeneratorName(String),
    #[error("no image supplied for generator {0}")]
    MissingImage(String),
}

/// A named free-group generator. Clones share the name allocation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(Arc<str>);

impl Generator {
    pub fn new(name: &str) -> Result<Self, WordError> {
        let mut chars = name.chars();
        let head_ok = chars.next().map(|c| c.is_ascii_alphabetic()).unwrap_or(false);
        if !head_ok || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(WordError::BadGeneratorName(name.to_string()));
        }
        Ok(Self(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand constructor; panics on an invalid name, for fixed internal names.
pub fn gen(name: &str) -> Generator {
    Generator::new(name).expect("valid generator name")
}

/// One signed letter of a word; `exp` is +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Generator, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Self { gen, exp }
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.gen.clone(), -self.exp)
    }
}

/// A freely reduced word: no letter is adjacent to its own inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Reduces an arbitrary letter sequence by cancelling adjacent inverses.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(top) if top.gen == l.gen && top.exp == -l.exp => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Self { letters: stack }
    }

    /// The one-letter word g^exp (exp must be +-1).
    pub fn letter(g: Generator, exp: i8) -> Self {
        Self::from_letters([Letter::new(g, exp)])
    }

    pub fn generator(g: Generator) -> Self {
        Self::letter(g, 1)
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

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(self.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        Self::from_letters(letters)
    }

    /// v^-1 * self * v, freely reduced.
    pub fn conjugate(&self, v: &Word) -> Self {
        &(&v.inverse() * self) * v
    }

    /// Cyclically reduces: strips matching inverse letters from the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let mut w = self.letters.clone();
        while w.len() >= 2 {
            let first = &w[0];
            let last = &w[w.len() - 1];
            if first.gen == last.gen && first.exp == -last.exp {
                w.remove(0);
                w.pop();
            } else {
                break;
            }
        }
        Self::from_letters(w)
    }

    /// Net exponent of `g` in the word.
    pub fn exponent_sum(&self, g: &Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.gen == g)
            .map(|l| l.exp as i64)
            .sum()
    }

    /// Total number of occurrences of `g`, ignoring sign.
    pub fn occurrences(&self, g: &Generator) -> usize {
        self.letters.iter().filter(|l| &l.gen == g).count()
    }

    /// Distinct generators appearing, in order of first appearance.
    pub fn support(&self) -> Vec<Generator> {
        let mut seen = Vec::new();
        for l in &self.letters {
            if !seen.contains(&l.gen) {
                seen.push(l.gen.clone());
            }
        }
        seen
    }

    /// Replaces each generator by its image word; a monoid homomorphism on
    /// reduced words. Every generator in the support needs an image.
    pub fn substitute(&self, images: &BTreeMap<Generator, Word>) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = images
                .get(&l.gen)
                .ok_or_else(|| WordError::MissingImage(l.gen.name().to_string()))?;
            let img = if l.exp == 1 { img.clone() } else { img.inverse() };
            letters.extend(img.letters.into_iter());
        }
        Ok(Word::from_letters(letters))
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(rhs.letters.iter()).cloned())
    }
}

impl fmt::Display for Word {
    /// Space-separated letters with runs collapsed into powers; the identity
    /// prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = &self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() {
                let next = &self.letters[i + run];
                if next.gen == l.gen && next.exp == l.exp {
                    run += 1;
                } else {
                    break;
                }
            }
            let e = l.exp as i64 * run as i64;
            if e == 1 {
                parts.push(l.gen.name().to_string());
            } else {
                parts.push(format!("{}^{}", l.gen.name(), e));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A relation written as two words; equivalent to the relator lhs * rhs^-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Self { lhs, rhs }
    }

    pub fn as_relator(&self) -> Word {
        &self.lhs * &self.rhs.inverse()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn reduction_cancels_adjacent_inverses() {
        assert_eq!(w("x x^-1"), Word::identity());
        assert_eq!(w("x y y^-1 x^-1 z"), w("z"));
        assert_eq!(w("x y y^-1 y"), w("x y"));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let u = w("x y^-1 z");
        assert_eq!(u.inverse(), w("z^-1 y x^-1"));
        assert!((&u * &u.inverse()).is_identity());
    }

    #[test]
    fn conjugation() {
        let x = w("x");
        let v = w("y z");
        assert_eq!(x.conjugate(&v), w("z^-1 y^-1 x y z"));
        // conjugating a central-style trivial word stays trivial
        assert_eq!(Word::identity().conjugate(&v), Word::identity());
    }

    #[test]
    fn powers() {
        let u = w("x y");
        assert_eq!(u.pow(2), w("x y x y"));
        assert_eq!(u.pow(-1), u.inverse());
        assert_eq!(u.pow(0), Word::identity());
        assert_eq!(w("x").pow(3), w("x^3"));
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(w("x y x^-1").cyclic_reduce(), w("y"));
        assert_eq!(w("x y").cyclic_reduce(), w("x y"));
        assert_eq!(w("x y y^-1 x^-1").cyclic_reduce(), Word::identity());
    }

    #[test]
    fn exponent_sums() {
        let u = w("x y^-1 x z^2");
        assert_eq!(u.exponent_sum(&gen("x")), 2);
        assert_eq!(u.exponent_sum(&gen("y")), -1);
        assert_eq!(u.exponent_sum(&gen("z")), 2);
        assert_eq!(u.exponent_sum(&gen("w")), 0);
        assert_eq!(u.occurrences(&gen("x")), 2);
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let mut images = BTreeMap::new();
        images.insert(gen("a"), w("x y"));
        images.insert(gen("b"), w("y^-1"));
        let u = w("a b");
        let v = w("b^-1 a");
        let lhs = (&u * &v).substitute(&images).unwrap();
        let rhs = &u.substitute(&images).unwrap() * &v.substitute(&images).unwrap();
        assert_eq!(lhs, rhs);
        assert!(w("a a^-1").substitute(&images).unwrap().is_identity());
    }

    #[test]
    fn substitution_requires_all_images() {
        let images = BTreeMap::new();
        assert!(matches!(
            w("a").substitute(&images),
            Err(WordError::MissingImage(_))
        ));
    }

    #[test]
    fn display_collapses_runs() {
        assert_eq!(w("x x x").to_string(), "x^3");
        assert_eq!(w("x y^-1 y^-1").to_string(), "x y^-2");
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn generator_name_validation() {
        assert!(Generator::new("x_1").is_ok());
        assert!(Generator::new("sig").is_ok());
        assert!(Generator::new("1x").is_err());
        assert!(Generator::new("").is_err());
        assert!(Generator::new("a-b").is_err());
    }
}
