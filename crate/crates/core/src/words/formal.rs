//! Words over subgroup-generator symbols `g1, g2, …` and the variable `x`,
//! i.e. elements of `H ∗ ⟨x⟩` written over a chosen basis of `H`.

use std::fmt;
use std::str::FromStr;

use super::{GroupWord, Word};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FormalSymbol {
    /// Zero-based index of a subgroup generator; printed as `g{index+1}`.
    Gen(u32),
    Var,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FormalLetter {
    pub symbol: FormalSymbol,
    pub inverse: bool,
}

impl FormalLetter {
    pub fn gen(index: u32) -> FormalLetter {
        FormalLetter {
            symbol: FormalSymbol::Gen(index),
            inverse: false,
        }
    }

    pub fn var() -> FormalLetter {
        FormalLetter {
            symbol: FormalSymbol::Var,
            inverse: false,
        }
    }

    pub fn inverse(self) -> FormalLetter {
        FormalLetter {
            symbol: self.symbol,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word over the formal alphabet `{g_i} ∪ {x}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FormalWord(Vec<FormalLetter>);

impl FormalWord {
    pub fn identity() -> FormalWord {
        FormalWord(Vec::new())
    }

    pub fn reduce(letters: impl IntoIterator<Item = FormalLetter>) -> FormalWord {
        let mut out: Vec<FormalLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FormalWord(out)
    }

    pub fn gen(index: u32) -> FormalWord {
        FormalWord(vec![FormalLetter::gen(index)])
    }

    pub fn var() -> FormalWord {
        FormalWord(vec![FormalLetter::var()])
    }

    pub fn letters(&self) -> &[FormalLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FormalWord {
        FormalWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &FormalWord) -> FormalWord {
        FormalWord::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Largest generator index used, plus one.
    pub fn arity(&self) -> usize {
        self.0
            .iter()
            .filter_map(|l| match l.symbol {
                FormalSymbol::Gen(i) => Some(i as usize + 1),
                FormalSymbol::Var => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Replaces every symbol by a formal word (`gens[i]` for `g_{i+1}`, `var` for `x`).
    pub fn substitute_formal(&self, gens: &[FormalWord], var: &FormalWord) -> Result<FormalWord> {
        let need = self.arity();
        if need > gens.len() {
            return Err(Error::Arity {
                expected: need,
                got: gens.len(),
            });
        }
        let mut out = FormalWord::identity();
        for l in &self.0 {
            let image = match l.symbol {
                FormalSymbol::Gen(i) => &gens[i as usize],
                FormalSymbol::Var => var,
            };
            out = if l.inverse {
                out.mul(&image.inverse())
            } else {
                out.mul(image)
            };
        }
        Ok(out)
    }
}

/// Evaluates `w` at `x = g` with `g_i ↦ gens[i-1]`, returning the reduced word.
pub fn substitute(w: &FormalWord, gens: &[Word], g: &Word) -> Result<Word> {
    let need = w.arity();
    if need > gens.len() {
        return Err(Error::Arity {
            expected: need,
            got: gens.len(),
        });
    }
    let mut out = Word::identity();
    for l in w.letters() {
        let image = match l.symbol {
            FormalSymbol::Gen(i) => &gens[i as usize],
            FormalSymbol::Var => g,
        };
        if l.inverse {
            for &c in image.letters().iter().rev() {
                out.push(c.inverse());
            }
        } else {
            for &c in image.letters() {
                out.push(c);
            }
        }
    }
    Ok(out)
}

impl GroupWord for FormalWord {
    fn one() -> FormalWord {
        FormalWord::identity()
    }
    fn times(&self, other: &FormalWord) -> FormalWord {
        self.mul(other)
    }
    fn inv(&self) -> FormalWord {
        self.inverse()
    }
    fn is_one(&self) -> bool {
        self.is_empty()
    }
}

impl fmt::Display for FormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&m| m == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match l.symbol {
                FormalSymbol::Gen(k) => write!(f, "g{}", k + 1)?,
                FormalSymbol::Var => f.write_str("x")?,
            }
            match (run, l.inverse) {
                (1, false) => {}
                (n, false) => write!(f, "^{n}")?,
                (n, true) => write!(f, "^-{n}")?,
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalWord({self})")
    }
}

/// Parses whitespace-separated tokens `g<k>`, `G<k>`, `x`, `X`, each with an
/// optional `^<int>` exponent, e.g. `"x g2 x^-1 g1^-1"`.
impl FromStr for FormalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<FormalWord> {
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(FormalWord::identity());
        }
        let mut raw = Vec::new();
        for tok in trimmed.split_whitespace() {
            let (head, exponent) = match tok.split_once('^') {
                Some((h, e)) => (
                    h,
                    e.parse::<i64>()
                        .map_err(|_| bad(format!("bad exponent in \"{tok}\"")))?,
                ),
                None => (tok, 1),
            };
            let mut letter = match head {
                "x" => FormalLetter::var(),
                "X" => FormalLetter::var().inverse(),
                _ => {
                    let (upper, digits) = if let Some(d) = head.strip_prefix('g') {
                        (false, d)
                    } else if let Some(d) = head.strip_prefix('G') {
                        (true, d)
                    } else {
                        return Err(bad(format!("unknown symbol \"{tok}\"")));
                    };
                    let k: u32 = digits
                        .parse()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| bad(format!("bad generator index in \"{tok}\"")))?;
                    let l = FormalLetter::gen(k - 1);
                    if upper {
                        l.inverse()
                    } else {
                        l
                    }
                }
            };
            if exponent < 0 {
                letter = letter.inverse();
            }
            raw.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
        }
        Ok(FormalWord::reduce(raw))
    }
}
