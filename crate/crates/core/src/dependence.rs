//! Dependence of elements on a subgroup, the pair set of non-rank-increasing
//! vertex identifications, the double-coset decomposition of `dep(H)` and
//! generators of the dependent subgroup `Dep(H)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::stallings::{
    fold_protected, identify, restrict_to_letters, CoreGraph, Edge, FoldOrder, LabeledGraph,
    UnionFind, VertexId,
};
use crate::words::{Alphabet, Word, MAX_GENERATORS};

/// Outcome of a dependence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub verdict: bool,
    /// Longest prefix of `g` readable from the root.
    pub g1: Word,
    /// `g = g1 · g2⁻¹`; meaningful only when both paths stay in the graph.
    pub g2: Word,
    /// Endpoints `(u, v)` of the `g1`- and `g2`-paths, when both exist.
    pub pair: Option<(VertexId, VertexId)>,
    /// Rank of `⟨H, g⟩` from direct construction.
    pub rank_with_g: usize,
}

/// Rank of `⟨H, g⟩`: add a `g`-petal at the root and fold.
pub fn rank_with(h: &CoreGraph, g: &Word) -> usize {
    let mut lg = LabeledGraph::from_core(h);
    lg.add_petal(g);
    crate::stallings::fold(&lg).0.rank()
}

/// Decides whether `g` depends on `H`, i.e. `rk⟨H, g⟩ ≤ rk H`.
///
/// The verdict comes from path reading and identification of the two path
/// endpoints, and is cross-checked against direct folding of `C(H)` with a
/// `g`-petal. A disagreement is reported as [`Error::Internal`].
pub fn is_dependent(h: &CoreGraph, g: &Word) -> Result<DependenceWitness> {
    h.alphabet().check_word(g)?;
    let rank_with_g = rank_with(h, g);
    let direct = rank_with_g <= h.rank();

    let (read, u) = h.read_from(h.root(), g);
    let witness = if read == g.len() && u == h.root() {
        DependenceWitness {
            verdict: true,
            g1: g.clone(),
            g2: Word::identity(),
            pair: Some((h.root(), h.root())),
            rank_with_g,
        }
    } else {
        let g1 = g.prefix(read);
        let g2 = g.suffix_from(read).inverse();
        match h.walk(h.root(), &g2) {
            None => DependenceWitness {
                verdict: false,
                g1,
                g2,
                pair: None,
                rank_with_g,
            },
            Some(v) => {
                let (quotient, _) = identify(h, u, v)?;
                DependenceWitness {
                    verdict: quotient.rank() <= h.rank(),
                    g1,
                    g2,
                    pair: Some((u, v)),
                    rank_with_g,
                }
            }
        }
    };
    if witness.verdict != direct {
        return Err(Error::Internal(format!(
            "path test says {} but rank test says {} for g = {g}",
            witness.verdict, direct
        )));
    }
    Ok(witness)
}

/// Set of vertex pairs whose identification does not raise the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    /// Ordered pairs `(label(u), label(v))`, sorted.
    pub pairs: Vec<(Word, Word)>,
}

impl PairSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: &Word, v: &Word) -> bool {
        self.pairs.iter().any(|(a, b)| a == u && b == v)
    }
}

/// Whether to shrink the pair set by the neighbour rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairReduction {
    /// Keep one pair per orbit of `(u, v) ~ (u·a^ε, v·a^ε)`.
    #[default]
    Neighbor,
    None,
}

fn passing_vertex_pairs(h: &CoreGraph) -> Result<Vec<(VertexId, VertexId)>> {
    let n = h.num_vertices();
    let mut out = Vec::new();
    for u in 0..n {
        out.push((u, u));
        for v in u + 1..n {
            if identify(h, u, v)?.0.rank() <= h.rank() {
                out.push((u, v));
                out.push((v, u));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn representative(labels: &[Word], (u, v): (VertexId, VertexId)) -> Word {
    labels[u].mul(&labels[v].inverse())
}

/// Computes the pair set of `H`.
///
/// With [`PairReduction::Neighbor`], pairs related by stepping both
/// endpoints along the same letter identify the same quotient and give the
/// same double coset; one pair (least representative `uv⁻¹` in shortlex
/// order) is kept per orbit.
pub fn pair_set(h: &CoreGraph, reduction: PairReduction) -> Result<PairSet> {
    let labels = h.coset_labels();
    let all = passing_vertex_pairs(h)?;
    let chosen: Vec<(VertexId, VertexId)> = match reduction {
        PairReduction::None => all,
        PairReduction::Neighbor => {
            let index = |p: (VertexId, VertexId)| all.binary_search(&p).ok();
            let mut uf = UnionFind::new(all.len());
            for (i, &(u, v)) in all.iter().enumerate() {
                for code in 0..2 * MAX_GENERATORS as usize {
                    let l = crate::words::Letter::from_code(code);
                    if let (Some(x), Some(y)) = (h.step(u, l), h.step(v, l)) {
                        if let Some(j) = index((x, y)) {
                            uf.union(i, j);
                        }
                    }
                }
            }
            let mut best: std::collections::BTreeMap<usize, (VertexId, VertexId)> =
                std::collections::BTreeMap::new();
            for (i, &p) in all.iter().enumerate() {
                let r = uf.find(i);
                let better = match best.get(&r) {
                    None => true,
                    Some(&q) => representative(&labels, p)
                        .shortlex_cmp(&representative(&labels, q))
                        .then(p.cmp(&q))
                        .is_lt(),
                };
                if better {
                    best.insert(r, p);
                }
            }
            let mut chosen: Vec<_> = best.into_values().collect();
            chosen.sort();
            chosen
        }
    };
    let mut pairs: Vec<(Word, Word)> = chosen
        .into_iter()
        .map(|(u, v)| (labels[u].clone(), labels[v].clone()))
        .collect();
    pairs.sort_by(|a, b| a.0.shortlex_cmp(&b.0).then(a.1.shortlex_cmp(&b.1)));
    pairs.dedup();
    Ok(pairs_with_root(pairs))
}

fn pairs_with_root(mut pairs: Vec<(Word, Word)>) -> PairSet {
    let root = (Word::identity(), Word::identity());
    if !pairs.contains(&root) {
        pairs.insert(0, root);
    }
    PairSet { pairs }
}

/// `dep(H) = ⋃ H·w·H` over the representatives `w`.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    pub representatives: Vec<Word>,
    pub base: CoreGraph,
}

impl fmt::Display for DoubleCosetDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.representatives {
            writeln!(f, "H {w} H")?;
        }
        Ok(())
    }
}

/// Double-coset representatives `label(u)·label(v)⁻¹` over the pair set,
/// reduced, deduplicated and sorted shortlex.
pub fn dep_double_cosets(h: &CoreGraph, reduction: PairReduction) -> Result<DoubleCosetDecomposition> {
    let pairs = pair_set(h, reduction)?;
    let mut reps: Vec<Word> = pairs.pairs.iter().map(|(u, v)| u.mul(&v.inverse())).collect();
    reps.sort_by(|a, b| a.shortlex_cmp(b));
    reps.dedup();
    Ok(DoubleCosetDecomposition {
        representatives: reps,
        base: h.clone(),
    })
}

/// `g ∈ H·w·H`, i.e. `H ∩ g⁻¹·H·w ≠ ∅`.
///
/// Paths spelling `g` and `w` are hung off the root of `C(H)` and folded;
/// the labels of paths from the end of the `g`-path to the end of the
/// `w`-path are exactly `g⁻¹·H·w`. A search in the product with `C(H)`
/// decides whether one of them is a closed root path of `C(H)`.
pub fn in_double_coset(h: &CoreGraph, w: &Word, g: &Word) -> bool {
    let mut lg = LabeledGraph::from_core(h);
    let mut hang = |x: &Word| {
        if x.is_identity() {
            h.root()
        } else {
            let end = lg.add_vertex();
            lg.add_path(h.root(), x, end);
            end
        }
    };
    let (s, t) = (hang(g), hang(w));
    let (coset, hist) =
        fold_protected::<rand::rngs::ThreadRng>(&lg, None, FoldOrder::Worklist, &[s, t]);
    let (s, t) = match (hist.resolve(s), hist.resolve(t)) {
        (Some(s), Some(t)) => (s, t),
        _ => unreachable!("protected vertices survive folding"),
    };
    let letters = h.alphabet().signed_letters();
    let start = (s, h.root());
    let mut seen = std::collections::HashSet::from([start]);
    let mut stack = vec![start];
    while let Some((p, q)) = stack.pop() {
        if (p, q) == (t, h.root()) {
            return true;
        }
        for &l in &letters {
            if let (Some(p2), Some(q2)) = (coset.step(p, l), h.step(q, l)) {
                if seen.insert((p2, q2)) {
                    stack.push((p2, q2));
                }
            }
        }
    }
    false
}

/// Membership of `g` in `dep(H)` through the double-coset decomposition.
pub fn in_dep(decomp: &DoubleCosetDecomposition, g: &Word) -> bool {
    decomp
        .representatives
        .iter()
        .any(|w| in_double_coset(&decomp.base, w, g))
}

/// Generators of `Dep(H)`: a basis of `H` plus the nontrivial double-coset
/// representatives.
pub fn dep_generators(h: &CoreGraph, reduction: PairReduction) -> Result<Vec<Word>> {
    let mut gens = h.basis();
    let decomp = dep_double_cosets(h, reduction)?;
    gens.extend(decomp.representatives.into_iter().filter(|w| !w.is_identity()));
    Ok(gens)
}

/// Core graph of `H1 ∗ H2` for subgroups over disjoint alphabets: the two
/// cores glued at their roots.
pub fn wedge(h1: &CoreGraph, h2: &CoreGraph) -> Result<CoreGraph> {
    if let Some(g) = h1.alphabet().common_letter(h2.alphabet()) {
        return Err(Error::OverlappingAlphabets(crate::words::generator_char(g)));
    }
    let offset = h1.num_vertices() - 1;
    let shift = |v: VertexId| if v == h2.root() { h1.root() } else { v + offset };
    let mut edges = h1.edges().to_vec();
    edges.extend(h2.edges().iter().map(|e| Edge {
        source: shift(e.source),
        label: e.label,
        target: shift(e.target),
    }));
    Ok(CoreGraph::from_folded(
        h1.alphabet().union(h2.alphabet()),
        h1.num_vertices() + h2.num_vertices() - 1,
        edges,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonReport {
    pub is_echelon: bool,
    /// `rk(H ∩ ⟨a_1, …, a_i⟩)` for `i = 0..=n`.
    pub ranks: Vec<usize>,
}

/// Checks that the ranks of `H ∩ ⟨a_1..a_i⟩` grow by at most one per letter
/// along the given order.
pub fn is_echelon(h: &CoreGraph, order: &Alphabet) -> EchelonReport {
    let ranks: Vec<usize> = (0..=order.len())
        .map(|i| restrict_to_letters(h, &order.prefix(i)).rank())
        .collect();
    let is_echelon = ranks.windows(2).all(|p| p[1] <= p[0] + 1);
    EchelonReport { is_echelon, ranks }
}
