//! Equations from Nielsen reduction of `(h_1, …, h_r, g)`.

use crate::dependence::{dep_double_cosets, is_dependent, PairReduction};
use crate::error::{Error, Result};
use crate::stallings::CoreGraph;
use crate::words::{apply_log, nielsen_reduce, substitute, FormalWord, TransformationLog, Word};

use super::{to_coefficient_form, Equation};

/// Formal words `w(g_1, …, g_r, x)` that vanish at `x = g`, obtained by
/// replaying the Nielsen reduction of `(h_1, …, h_r, g)` on the formal tuple.
#[derive(Clone, Debug)]
pub struct EquationBasis {
    /// Basis of `H` the symbols `g_i` stand for.
    pub gens: Vec<Word>,
    pub g: Word,
    /// Reduced tuple; its nontrivial entries form a basis of `⟨H, g⟩`.
    pub reduced: Vec<Word>,
    pub log: TransformationLog,
    pub equations: Vec<FormalWord>,
}

impl EquationBasis {
    pub fn coefficient_forms(&self) -> Result<Vec<Equation>> {
        self.equations
            .iter()
            .map(|w| to_coefficient_form(w, &self.gens))
            .collect()
    }

    /// Coefficient form of least degree, first one on ties.
    pub fn min_degree(&self) -> Result<Equation> {
        let forms = self.coefficient_forms()?;
        forms
            .into_iter()
            .min_by_key(Equation::degree)
            .ok_or_else(|| Error::Internal("empty equation basis".into()))
    }
}

/// Equations over the basis of `H` satisfied by a dependent `g`.
pub fn equation_basis(h: &CoreGraph, g: &Word) -> Result<EquationBasis> {
    let witness = is_dependent(h, g)?;
    if !witness.verdict {
        return Err(Error::NotDependent(g.to_string()));
    }
    let gens = h.basis();
    let r = gens.len();
    let mut tuple = gens.clone();
    tuple.push(g.clone());
    let (reduced, log) = nielsen_reduce(&tuple);
    let s = reduced.iter().filter(|w| !w.is_identity()).count();
    if s != witness.rank_with_g {
        return Err(Error::Internal(format!(
            "Nielsen reduction left {s} generators but the rank of <H, g> is {}",
            witness.rank_with_g
        )));
    }
    let mut formal: Vec<FormalWord> = (0..r as u32).map(FormalWord::gen).collect();
    formal.push(FormalWord::var());
    let images = apply_log(&formal, &log)?;
    let mut equations = Vec::new();
    for (w, image) in reduced.iter().zip(images) {
        if !w.is_identity() {
            continue;
        }
        if !substitute(&image, &gens, g)?.is_identity() {
            return Err(Error::Internal(format!("equation {image} does not vanish at {g}")));
        }
        equations.push(image);
    }
    Ok(EquationBasis {
        gens,
        g: g.clone(),
        reduced,
        log,
        equations,
    })
}

/// Upper bound on the least degree of an equation satisfied by an element of
/// `dep(H)`, taken over the double-coset representatives.
#[derive(Clone, Debug)]
pub struct DegreeBound {
    pub bound: u64,
    /// Least-degree basis equation for each representative.
    pub per_representative: Vec<(Word, Equation)>,
}

pub fn degree_bound(h: &CoreGraph) -> Result<DegreeBound> {
    let decomp = dep_double_cosets(h, PairReduction::Neighbor)?;
    let mut per_representative = Vec::new();
    for w in decomp.representatives {
        let eq = equation_basis(h, &w)?.min_degree()?;
        per_representative.push((w, eq));
    }
    let bound = per_representative.iter().map(|(_, e)| e.degree()).max().unwrap_or(0);
    Ok(DegreeBound {
        bound,
        per_representative,
    })
}
