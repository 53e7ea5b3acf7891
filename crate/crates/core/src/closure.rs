//! The dependence sequence `H, Dep H, Dep² H, …`, its limit, and bounded
//! oracles for properties every dependence-closed subgroup has.

use std::fmt;

use crate::dependence::{dep_generators, is_dependent, PairReduction};
use crate::error::{Error, Result};
use crate::stallings::{build_core, pullback, CoreGraph};
use crate::words::Word;

/// `C(Dep H)`.
pub fn dep_subgroup(h: &CoreGraph) -> Result<CoreGraph> {
    let gens = dep_generators(h, PairReduction::Neighbor)?;
    Ok(build_core(&gens, h.alphabet()))
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// `chain[i]` is `Dep^i(H)`; the last entry is the closure.
    pub chain: Vec<CoreGraph>,
    /// Least `m` with `Dep^m(H) = Dep^{m+1}(H)`.
    pub length: usize,
}

impl ClosureResult {
    pub fn closure(&self) -> &CoreGraph {
        self.chain.last().expect("chain starts with H")
    }
}

/// Iterates [`dep_subgroup`] until the core graph stops changing.
///
/// Each step identifies vertices of the previous core, so a strict change
/// loses at least one vertex and the loop runs at most `|V(C(H))|` times.
pub fn dependence_closure(h: &CoreGraph) -> Result<ClosureResult> {
    let mut chain = vec![h.clone()];
    loop {
        let cur = chain.last().unwrap();
        let next = dep_subgroup(cur)?;
        if next.is_isomorphic(cur) {
            break;
        }
        if next.num_vertices() >= cur.num_vertices() {
            return Err(Error::Internal(
                "dependent subgroup did not shrink the core graph".into(),
            ));
        }
        chain.push(next);
    }
    let length = chain.len() - 1;
    Ok(ClosureResult { chain, length })
}

/// `H = Dep H`.
pub fn is_dependence_closed(h: &CoreGraph) -> Result<bool> {
    Ok(dep_subgroup(h)?.is_isomorphic(h))
}

/// Verdict of a bounded search. `holds == true` only means no witness was
/// found within the bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub holds: bool,
    pub witness: Option<Word>,
    pub bound: usize,
    pub exponent_bound: Option<usize>,
    pub candidates_checked: usize,
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.holds { "holds" } else { "fails" })?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        write!(f, " bound={}", self.bound)?;
        if let Some(k) = self.exponent_bound {
            write!(f, " exponent_bound={k}")?;
        }
        write!(f, " checked={}", self.candidates_checked)
    }
}

fn search(
    candidates: impl IntoIterator<Item = Word>,
    bound: usize,
    exponent_bound: Option<usize>,
    mut is_witness: impl FnMut(&Word) -> Result<bool>,
) -> Result<OracleReport> {
    let mut checked = 0;
    for g in candidates {
        checked += 1;
        if is_witness(&g)? {
            return Ok(OracleReport {
                holds: false,
                witness: Some(g),
                bound,
                exponent_bound,
                candidates_checked: checked,
            });
        }
    }
    Ok(OracleReport {
        holds: true,
        witness: None,
        bound,
        exponent_bound,
        candidates_checked: checked,
    })
}

/// Relative closedness of `H` in `G`: no element of `G ∖ H` of length at
/// most `bound` depends on `H`.
pub fn is_dependence_closed_in(h: &CoreGraph, g: &CoreGraph, bound: usize) -> Result<OracleReport> {
    if let Some(w) = h.basis().into_iter().find(|w| !g.contains(w)) {
        return Err(Error::NotInSubgroup(w.to_string()));
    }
    let candidates = g.elements_up_to(bound).into_iter().filter(|w| !h.contains(w));
    search(candidates, bound, None, |w| Ok(is_dependent(h, w)?.verdict))
}

fn outside(h: &CoreGraph, bound: usize) -> impl Iterator<Item = Word> + '_ {
    Word::enumerate_up_to(h.alphabet(), bound)
        .into_iter()
        .filter(move |w| !h.contains(w))
}

/// Purity: no `g ∉ H` with `|g| ≤ bound` has `g^k ∈ H` for `2 ≤ k ≤ exponent_bound`.
pub fn is_pure(h: &CoreGraph, bound: usize, exponent_bound: usize) -> Result<OracleReport> {
    search(outside(h, bound), bound, Some(exponent_bound), |g| {
        Ok((2..=exponent_bound as i64).any(|k| h.contains(&g.pow(k))))
    })
}

/// Malnormality: `H^g ∩ H = 1` for every `g ∉ H` with `|g| ≤ bound`.
pub fn is_malnormal(h: &CoreGraph, bound: usize) -> Result<OracleReport> {
    let basis = h.basis();
    search(outside(h, bound), bound, None, |g| {
        let conj: Vec<Word> = basis.iter().map(|b| b.conjugate(g)).collect();
        let hg = build_core(&conj, h.alphabet());
        Ok(!pullback(&hg, h).is_trivial())
    })
}
