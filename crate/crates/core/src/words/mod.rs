//! Reduced words over a finite alphabet with inverses.
//!
//! Generators are the lowercase ASCII letters `a..=z`; the uppercase letter
//! denotes the inverse, so `"abA"` is `a b a⁻¹`. Letters are ordered
//! `a < A < b < B < …`, which is the tie-breaking order used everywhere a
//! lexically least word is needed (coset labels, spanning trees, enumeration).

mod formal;
mod nielsen;

pub use formal::{substitute, FormalLetter, FormalSymbol, FormalWord};
pub use nielsen::{apply_log, nielsen_reduce, NielsenMove, TransformationLog};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of generators representable in the text format.
pub const MAX_GENERATORS: u8 = 26;

/// A generator or its inverse, encoded as `2 * generator + inverse`.
///
/// The encoding makes the derived ordering coincide with `a < A < b < B < …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Letter {
        assert!(generator < MAX_GENERATORS, "generator index out of range");
        Letter(generator * 2 + inverse as u8)
    }

    pub fn generator(self) -> u8 {
        self.0 / 2
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Dense index in `0..2 * MAX_GENERATORS`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Letter {
        assert!(code < 2 * MAX_GENERATORS as usize);
        Letter(code as u8)
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a'..='z' => Some(Letter::new(ch as u8 - b'a', false)),
            'A'..='Z' => Some(Letter::new(ch as u8 - b'A', true)),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.generator()) as char
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Converts a generator index to its lowercase letter.
pub fn generator_char(generator: u8) -> char {
    (b'a' + generator) as char
}

/// An ordered set of distinct generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Alphabet {
    generators: Vec<u8>,
}

impl Alphabet {
    pub fn new(generators: Vec<u8>) -> Result<Alphabet> {
        let mut seen = [false; MAX_GENERATORS as usize];
        for &g in &generators {
            if g >= MAX_GENERATORS {
                return Err(Error::Parse {
                    input: format!("{generators:?}"),
                    reason: "generator index out of range".into(),
                });
            }
            if std::mem::replace(&mut seen[g as usize], true) {
                return Err(Error::Parse {
                    input: format!("{generators:?}"),
                    reason: format!("duplicate generator '{}'", generator_char(g)),
                });
            }
        }
        Ok(Alphabet { generators })
    }

    /// The first `n` letters `a, b, …` in natural order.
    pub fn standard(n: u8) -> Alphabet {
        Alphabet {
            generators: (0..n.min(MAX_GENERATORS)).collect(),
        }
    }

    /// Parses a whitespace- or comma-separated list of lowercase letters.
    pub fn parse(text: &str) -> Result<Alphabet> {
        let mut generators = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let mut chars = tok.chars();
            match (chars.next(), chars.next()) {
                (Some(c @ 'a'..='z'), None) => generators.push(c as u8 - b'a'),
                _ => {
                    return Err(Error::Parse {
                        input: text.to_string(),
                        reason: format!("\"{tok}\" is not a lowercase letter"),
                    })
                }
            }
        }
        Alphabet::new(generators)
    }

    /// Smallest alphabet containing every generator used by `words`, in natural order.
    pub fn infer<'a>(words: impl IntoIterator<Item = &'a Word>) -> Alphabet {
        let mut seen = [false; MAX_GENERATORS as usize];
        for w in words {
            for l in w.letters() {
                seen[l.generator() as usize] = true;
            }
        }
        Alphabet {
            generators: (0..MAX_GENERATORS).filter(|&g| seen[g as usize]).collect(),
        }
    }

    pub fn generators(&self) -> &[u8] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, generator: u8) -> bool {
        self.generators.contains(&generator)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| self.contains(l.generator()))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if self.contains_word(w) {
            Ok(())
        } else {
            Err(Error::OutsideAlphabet {
                word: w.to_string(),
                alphabet: self.to_string(),
            })
        }
    }

    pub fn prefix(&self, n: usize) -> Alphabet {
        Alphabet {
            generators: self.generators[..n.min(self.len())].to_vec(),
        }
    }

    pub fn is_prefix_of(&self, other: &Alphabet) -> bool {
        other.generators.starts_with(&self.generators)
    }

    /// Union keeping `self`'s order, then `other`'s new letters.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut generators = self.generators.clone();
        for &g in &other.generators {
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Alphabet { generators }
    }

    pub fn common_letter(&self, other: &Alphabet) -> Option<u8> {
        self.generators
            .iter()
            .copied()
            .find(|g| other.contains(*g))
    }

    /// All signed letters over this alphabet in `a < A < b < B` order.
    pub fn signed_letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .generators
            .iter()
            .flat_map(|&g| [Letter::new(g, false), Letter::new(g, true)])
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", generator_char(g))?;
        }
        f.write_str("}")
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letter(l: Letter) -> Word {
        Word(vec![l])
    }

    pub fn generator(g: u8) -> Word {
        Word(vec![Letter::new(g, false)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let cancel = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(x, y)| x.inverse() == **y)
            .count();
        let mut out = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        out.extend_from_slice(&self.0[..self.len() - cancel]);
        out.extend_from_slice(&other.0[cancel..]);
        Word(out)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate(&self, c: &Word) -> Word {
        c.inverse().mul(self).mul(c)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }

    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    /// Shortlex comparison: shorter first, then lexical in letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Renders runs of equal letters with exponents, e.g. `a^2b^-1`.
    pub fn to_power_string(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&m| m == l).count();
            let base = generator_char(l.generator());
            match (run, l.is_inverse()) {
                (1, false) => out.push(base),
                (1, true) => out.push(l.to_char()),
                (n, false) => out.push_str(&format!("{base}^{n}")),
                (n, true) => out.push_str(&format!("{base}^-{n}")),
            }
            i += run;
        }
        out
    }

    /// All reduced words of length exactly `n` over `alphabet`, in lexical order.
    pub fn enumerate_of_length(alphabet: &Alphabet, n: usize) -> Vec<Word> {
        let letters = alphabet.signed_letters();
        let mut layer = vec![Word::identity()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * letters.len());
            for w in &layer {
                for &l in &letters {
                    if w.0.last() != Some(&l.inverse()) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            layer = next;
        }
        layer
    }

    /// All reduced words of length at most `n`, in shortlex order.
    pub fn enumerate_up_to(alphabet: &Alphabet, n: usize) -> Vec<Word> {
        (0..=n)
            .flat_map(|k| Word::enumerate_of_length(alphabet, k))
            .collect()
    }
}

/// Freely reduces a raw sequence of signed letters.
pub fn reduce(letters: &[Letter]) -> Word {
    Word::reduce(letters.iter().copied())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Parses letters with optional integer exponents: `"abA"`, `"a^2 b^-1"`,
/// `"a^10b"`. The identity may be written as `""`, `"1"` or `"ε"`.
/// The result is freely reduced.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "1" || trimmed == "ε" {
            return Ok(Word::identity());
        }
        let chars: Vec<(usize, char)> = trimmed.char_indices().collect();
        let mut raw = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, ch) = chars[i];
            if ch.is_whitespace() {
                i += 1;
                continue;
            }
            let letter = Letter::from_char(ch).ok_or_else(|| Error::BadLetter {
                input: s.to_string(),
                pos,
                ch,
            })?;
            i += 1;
            let mut exponent: i64 = 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i].1 == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|c| c.1).collect();
                exponent = text.parse().map_err(|_| Error::Parse {
                    input: s.to_string(),
                    reason: format!("bad exponent after '{ch}' at position {pos}"),
                })?;
            }
            let l = if exponent < 0 { letter.inverse() } else { letter };
            raw.extend(std::iter::repeat_n(l, exponent.unsigned_abs() as usize));
        }
        Ok(Word::reduce(raw))
    }
}

/// Minimal group interface shared by [`Word`] and [`FormalWord`], used to
/// replay Nielsen moves on either kind of tuple.
pub trait GroupWord: Clone {
    fn one() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl GroupWord for Word {
    fn one() -> Word {
        Word::identity()
    }
    fn times(&self, other: &Word) -> Word {
        self.mul(other)
    }
    fn inv(&self) -> Word {
        self.inverse()
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
}
