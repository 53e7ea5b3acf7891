//! Univariate equations over a subgroup `H`: elements of `H ∗ ⟨x⟩` written
//! as `h_1 x^{i_1} h_2 ⋯ h_m x^{i_m} h_{m+1}` with nontrivial middle
//! coefficients and nonzero exponents.

mod basis;
mod folding;

pub use basis::{degree_bound, equation_basis, DegreeBound, EquationBasis};
pub use folding::equation_from_folding;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::stallings::CoreGraph;
use crate::words::{FormalSymbol, FormalWord, Word};

/// One factor of an unnormalised product in `F ∗ ⟨x⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Coef(Word),
    Var(i64),
}

/// An equation `w(x) = 1` in coefficient form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// `h_1, …, h_{m+1}`; always one longer than `exponents`.
    coefficients: Vec<Word>,
    /// `i_1, …, i_m`, all nonzero.
    exponents: Vec<i64>,
    /// Formal word over the subgroup basis symbols, when known.
    pub formal: Option<FormalWord>,
}

impl Equation {
    /// Normal form of a product of coefficients and powers of `x`: adjacent
    /// coefficients multiply, adjacent powers add, empty factors vanish.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Equation {
        let mut stack: Vec<Term> = Vec::new();
        for t in terms {
            match t {
                Term::Coef(w) if w.is_identity() => {}
                Term::Var(0) => {}
                Term::Coef(w) => match stack.last_mut() {
                    Some(Term::Coef(u)) => {
                        *u = u.mul(&w);
                        if u.is_identity() {
                            stack.pop();
                            Self::merge_top_vars(&mut stack);
                        }
                    }
                    _ => stack.push(Term::Coef(w)),
                },
                Term::Var(k) => match stack.last_mut() {
                    Some(Term::Var(j)) => {
                        *j += k;
                        if *j == 0 {
                            stack.pop();
                            Self::merge_top_coefs(&mut stack);
                        }
                    }
                    _ => stack.push(Term::Var(k)),
                },
            }
        }
        let mut coefficients = Vec::new();
        let mut exponents = Vec::new();
        let mut pending = Word::identity();
        for t in stack {
            match t {
                Term::Coef(w) => pending = w,
                Term::Var(k) => {
                    coefficients.push(std::mem::take(&mut pending));
                    exponents.push(k);
                }
            }
        }
        coefficients.push(pending);
        Equation {
            coefficients,
            exponents,
            formal: None,
        }
    }

    // After a coefficient cancels, two powers of x may have become adjacent.
    fn merge_top_vars(stack: &mut Vec<Term>) {
        if let [.., Term::Var(_), Term::Var(_)] = stack.as_slice() {
            let Some(Term::Var(k)) = stack.pop() else { unreachable!() };
            if let Some(Term::Var(j)) = stack.last_mut() {
                *j += k;
                if *j == 0 {
                    stack.pop();
                    Self::merge_top_coefs(stack);
                }
            }
        }
    }

    fn merge_top_coefs(stack: &mut Vec<Term>) {
        if let [.., Term::Coef(_), Term::Coef(_)] = stack.as_slice() {
            let Some(Term::Coef(w)) = stack.pop() else { unreachable!() };
            if let Some(Term::Coef(u)) = stack.last_mut() {
                *u = u.mul(&w);
                if u.is_identity() {
                    stack.pop();
                    Self::merge_top_vars(stack);
                }
            }
        }
    }

    pub fn coefficients(&self) -> &[Word] {
        &self.coefficients
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::with_capacity(2 * self.exponents.len() + 1);
        for (h, &i) in self.coefficients.iter().zip(&self.exponents) {
            out.push(Term::Coef(h.clone()));
            out.push(Term::Var(i));
        }
        out.push(Term::Coef(self.coefficients.last().unwrap().clone()));
        out
    }

    /// Sum of the absolute values of the exponents of `x`.
    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|i| i.unsigned_abs()).sum()
    }

    /// `w(g)` reduced in `F`.
    pub fn evaluate(&self, g: &Word) -> Word {
        let mut out = Word::identity();
        for t in self.terms() {
            out = match t {
                Term::Coef(h) => out.mul(&h),
                Term::Var(k) => out.mul(&g.pow(k)),
            };
        }
        out
    }

    /// Every coefficient lies in `H`.
    pub fn coefficients_in(&self, h: &CoreGraph) -> bool {
        self.coefficients.iter().all(|c| h.contains(c))
    }
}

/// Expands the generator symbols of `w` into `gens` and normalises.
pub fn to_coefficient_form(w: &FormalWord, gens: &[Word]) -> Result<Equation> {
    let need = w.arity();
    if need > gens.len() {
        return Err(Error::Arity {
            expected: need,
            got: gens.len(),
        });
    }
    let terms = w.letters().iter().map(|l| match l.symbol {
        FormalSymbol::Gen(i) => {
            let h = &gens[i as usize];
            Term::Coef(if l.inverse { h.inverse() } else { h.clone() })
        }
        FormalSymbol::Var => Term::Var(if l.inverse { -1 } else { 1 }),
    });
    let mut eq = Equation::from_terms(terms);
    eq.formal = Some(w.clone());
    Ok(eq)
}

/// `g` solves `w(x) = 1`.
pub fn verify(eq: &Equation, g: &Word) -> bool {
    eq.evaluate(g).is_identity()
}

/// Substitutes `x ← h1⁻¹ x h2`. The result has the same degree, and
/// `h1 g h2⁻¹` solves it whenever `g` solves `eq`.
pub fn transport(eq: &Equation, h: &CoreGraph, h1: &Word, h2: &Word) -> Result<Equation> {
    for c in [h1, h2] {
        if !h.contains(c) {
            return Err(Error::NotInSubgroup(c.to_string()));
        }
    }
    let (h1_inv, h2_inv) = (h1.inverse(), h2.inverse());
    let mut terms = Vec::new();
    for t in eq.terms() {
        match t {
            Term::Coef(c) => terms.push(Term::Coef(c)),
            Term::Var(k) => {
                for _ in 0..k.unsigned_abs() {
                    if k > 0 {
                        terms.extend([Term::Coef(h1_inv.clone()), Term::Var(1), Term::Coef(h2.clone())]);
                    } else {
                        terms.extend([Term::Coef(h2_inv.clone()), Term::Var(-1), Term::Coef(h1.clone())]);
                    }
                }
            }
        }
    }
    Ok(Equation::from_terms(terms))
}

fn has_x_letter(w: &Word) -> bool {
    const X: u8 = b'x' - b'a';
    w.letters().iter().any(|l| l.generator() == X)
}

/// `a^2 x^-2 = 1`; coefficients containing the letter `x` are bracketed.
impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = Vec::new();
        for t in self.terms() {
            match t {
                Term::Coef(w) if w.is_identity() => {}
                Term::Coef(w) if has_x_letter(&w) => tokens.push(format!("[{}]", w.to_power_string())),
                Term::Coef(w) => tokens.push(w.to_power_string()),
                Term::Var(1) => tokens.push("x".into()),
                Term::Var(k) => tokens.push(format!("x^{k}")),
            }
        }
        if tokens.is_empty() {
            tokens.push("1".into());
        }
        write!(f, "{} = 1", tokens.join(" "))
    }
}

impl FromStr for Equation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Equation> {
        let bad = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let lhs = match s.split_once('=') {
            Some((l, r)) if r.trim() == "1" => l,
            Some(_) => return Err(bad("right-hand side must be 1".into())),
            None => s,
        };
        let mut terms = Vec::new();
        for tok in lhs.split_whitespace() {
            if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                terms.push(Term::Coef(inner.parse()?));
                continue;
            }
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => (h, Some(e)),
                None => (tok, None),
            };
            if head == "x" || head == "X" {
                let mut k: i64 = match exp {
                    Some(e) => e.parse().map_err(|_| bad(format!("bad exponent in \"{tok}\"")))?,
                    None => 1,
                };
                if head == "X" {
                    k = -k;
                }
                terms.push(Term::Var(k));
            } else if tok.contains(['x', 'X']) {
                return Err(bad(format!(
                    "coefficient \"{tok}\" uses the letter x; write it in brackets"
                )));
            } else {
                terms.push(Term::Coef(tok.parse()?));
            }
        }
        Ok(Equation::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::build_core;
    use crate::words::Alphabet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fw(s: &str) -> FormalWord {
        s.parse().unwrap()
    }

    fn eq(s: &str) -> Equation {
        s.parse().unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(eq("a^2 x^-2").degree(), 2);
        assert_eq!(eq("x b x^-1 aB^-1A").degree(), 2);
        assert_eq!(eq("a^3 x^-3").degree(), 3);
    }

    #[test]
    fn coefficient_form_examples() {
        let e = to_coefficient_form(&fw("g1 x^-2"), &[w("aa")]).unwrap();
        assert_eq!(e.coefficients(), &[w("aa"), Word::identity()]);
        assert_eq!(e.exponents(), &[-2]);

        let e = to_coefficient_form(&fw("x g2 x^-1 g1^-1"), &[w("abA"), w("b")]).unwrap();
        assert_eq!(e.coefficients(), &[Word::identity(), w("b"), w("aBA")]);
        assert_eq!(e.exponents(), &[1, -1]);

        // g1 g2 expands to the identity, so the flanking x's merge
        let e = to_coefficient_form(&fw("x g1 g2 x g3"), &[w("ab"), w("BA"), w("b")]).unwrap();
        assert_eq!(e.coefficients(), &[Word::identity(), w("b")]);
        assert_eq!(e.exponents(), &[2]);

        assert!(to_coefficient_form(&fw("g2"), &[w("a")]).is_err());
    }

    #[test]
    fn cancellation_cascades() {
        let e = Equation::from_terms([
            Term::Coef(w("a")),
            Term::Var(1),
            Term::Coef(w("b")),
            Term::Coef(w("B")),
            Term::Var(-1),
            Term::Coef(w("A")),
        ]);
        assert_eq!(e.degree(), 0);
        assert_eq!(e.coefficients(), &[Word::identity()]);
        assert_eq!(e.to_string(), "1 = 1");
    }

    #[test]
    fn verify_examples() {
        assert!(verify(&eq("a^2 x^-2"), &w("a")));
        assert!(!verify(&eq("a^2 x^-2"), &w("b")));
    }

    #[test]
    fn text_round_trip() {
        let e = eq("a^2 x^-1 a^2 x^-1 a^2 = 1");
        assert_eq!(e.to_string(), "a^2 x^-1 a^2 x^-1 a^2 = 1");
        assert_eq!(eq(&e.to_string()), e);
        assert_eq!(eq("x X"), eq("1"));
        let with_x = Equation::from_terms([Term::Coef(w("xa")), Term::Var(1)]);
        assert_eq!(with_x.to_string(), "[xa] x = 1");
        assert_eq!(eq(&with_x.to_string()), with_x);
        assert!("ax x".parse::<Equation>().is_err());
        assert!("x = 2".parse::<Equation>().is_err());
    }

    #[test]
    fn transport_examples() {
        let h = build_core(&[w("aa")], &Alphabet::parse("a").unwrap());
        let base = eq("a^2 x^-2");
        let t = transport(&base, &h, &w("aa"), &Word::identity()).unwrap();
        assert_eq!(t, eq("a^2 x^-1 a^2 x^-1 a^2"));
        assert_eq!(t.degree(), 2);
        assert!(verify(&t, &w("aaa")));

        let same = transport(&base, &h, &Word::identity(), &Word::identity()).unwrap();
        assert_eq!(same, base);

        assert!(matches!(
            transport(&base, &h, &w("a"), &Word::identity()),
            Err(Error::NotInSubgroup(_))
        ));
    }

    #[test]
    fn commuting_equation_has_many_solutions() {
        let e = eq("a^3 x a^-3 x^-1");
        assert_eq!(e.degree(), 2);
        for k in -5..=5 {
            assert!(verify(&e, &w("a").pow(k)));
        }
        assert!(!verify(&e, &w("b")));
    }
}
