//! An equation read off the folding sequence of `C(H)/(u = v)`.
//!
//! Identifying `u` and `v` is modelled as adding a jump edge `u → v`. Every
//! non-parallel fold is a homotopy equivalence, so each merged class carries
//! paths in the unfolded graph (plus the jump) from its members to its
//! representative. The first parallel fold kills a loop; pulled back along
//! those paths and with the jump replaced by `g1⁻¹ x g2`, the loop becomes a
//! nontrivial element of `H ∗ ⟨x⟩` that vanishes at `x = g`.

use std::collections::HashMap;

use crate::dependence::is_dependent;
use crate::error::{Error, Result};
use crate::stallings::{identify, CoreGraph, FoldStep, VertexId};
use crate::words::{Letter, Word};

use super::{Equation, Term};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Step {
    /// Edge of `C(H)` by index, traversed forwards or backwards.
    Edge(usize, bool),
    /// The jump `u → v` (forwards) or `v → u`.
    Jump(bool),
}

impl Step {
    fn inverse(self) -> Step {
        match self {
            Step::Edge(e, f) => Step::Edge(e, !f),
            Step::Jump(f) => Step::Jump(!f),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Path(Vec<Step>);

impl Path {
    fn inverse(&self) -> Path {
        Path(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    fn then(mut self, other: &Path) -> Path {
        for &s in &other.0 {
            if self.0.last() == Some(&s.inverse()) {
                self.0.pop();
            } else {
                self.0.push(s);
            }
        }
        self
    }

    fn step(s: Step) -> Path {
        Path(vec![s])
    }
}

struct Replay<'a> {
    h: &'a CoreGraph,
    class: Vec<VertexId>,
    members: Vec<Vec<VertexId>>,
    /// Path from each vertex to the representative of its class.
    lift: Vec<Path>,
}

impl Replay<'_> {
    fn between(&self, x: VertexId, y: VertexId) -> Path {
        self.lift[x].clone().then(&self.lift[y].inverse())
    }

    /// Merges the class `absorbed` into `kept` along `link`, a path from
    /// `from` to `to` whose endpoints lie in those two classes.
    fn merge(&mut self, kept: VertexId, absorbed: VertexId, from: VertexId, to: VertexId, link: Path) {
        let (x, y, link) = if self.class[from] == absorbed {
            (from, to, link)
        } else {
            (to, from, link.inverse())
        };
        // path from the absorbed representative to the kept one
        let bridge = self.lift[x].inverse().then(&link).then(&self.lift[y]);
        for p in std::mem::take(&mut self.members[absorbed]) {
            self.lift[p] = self.lift[p].clone().then(&bridge);
            self.class[p] = kept;
            self.members[kept].push(p);
        }
    }

    fn edge_path(&self, w: &Word) -> Result<Path> {
        let mut index = HashMap::new();
        for (i, e) in self.h.edges().iter().enumerate() {
            index.insert((e.source, Letter::new(e.label, false).code()), (i, true, e.target));
            index.insert((e.target, Letter::new(e.label, true).code()), (i, false, e.source));
        }
        let mut v = self.h.root();
        let mut path = Path::default();
        for l in w.letters() {
            let &(i, fwd, next) = index
                .get(&(v, l.code()))
                .ok_or_else(|| Error::Internal(format!("{w} is not readable in the core graph")))?;
            path.0.push(Step::Edge(i, fwd));
            v = next;
        }
        Ok(path)
    }
}

/// A nontrivial equation with coefficients in `H` solved by a dependent `g`,
/// extracted from the folds that identify the endpoints of the two `g`-paths.
pub fn equation_from_folding(h: &CoreGraph, g: &Word) -> Result<Equation> {
    let witness = is_dependent(h, g)?;
    if !witness.verdict {
        return Err(Error::NotDependent(g.to_string()));
    }
    if h.contains(g) {
        return Ok(Equation::from_terms([Term::Var(1), Term::Coef(g.inverse())]));
    }
    let (u, v) = witness
        .pair
        .ok_or_else(|| Error::Internal("dependent element without a vertex pair".into()))?;
    let (_, history) = identify(h, u, v)?;

    let n = h.num_vertices();
    let mut replay = Replay {
        h,
        class: (0..n).collect(),
        members: (0..n).map(|v| vec![v]).collect(),
        lift: vec![Path::default(); n],
    };
    let mut pending = Some((u, v, Path::step(Step::Jump(true))));
    let mut collapsed = None;
    for step in &history.steps {
        match *step {
            FoldStep::VertexMerge { kept, absorbed } => {
                let (from, to, link) = pending
                    .take()
                    .ok_or_else(|| Error::Internal("vertex merge without a fold".into()))?;
                replay.merge(kept, absorbed, from, to, link);
            }
            FoldStep::EdgeMerge { kept, absorbed } => {
                let (k, a) = (h.edges()[kept], h.edges()[absorbed]);
                let c = &replay.class;
                let same_source = c[k.source] == c[a.source];
                let same_target = c[k.target] == c[a.target];
                let fk = Path::step(Step::Edge(kept, true));
                let fa = Path::step(Step::Edge(absorbed, true));
                if same_source && same_target {
                    // loop at k.source: k, back along a, close up
                    collapsed = Some((
                        k.source,
                        fk.then(&replay.between(k.target, a.target))
                            .then(&fa.inverse())
                            .then(&replay.between(a.source, k.source)),
                    ));
                    break;
                } else if same_source {
                    let link = fa
                        .inverse()
                        .then(&replay.between(a.source, k.source))
                        .then(&fk);
                    pending = Some((a.target, k.target, link));
                } else {
                    let link = fa.then(&replay.between(a.target, k.target)).then(&fk.inverse());
                    pending = Some((a.source, k.source, link));
                }
            }
        }
    }
    let (base, lp) =
        collapsed.ok_or_else(|| Error::Internal("identification never collapsed a loop".into()))?;
    let tree = replay.edge_path(&h.coset_label(base))?;
    let closed = tree.clone().then(&lp).then(&tree.inverse());

    let mut terms = Vec::new();
    let mut coef = Word::identity();
    let (g1, g2) = (&witness.g1, &witness.g2);
    for s in closed.0 {
        match s {
            Step::Edge(i, fwd) => {
                let l = Letter::new(h.edges()[i].label, !fwd);
                coef = coef.mul(&Word::letter(l));
            }
            Step::Jump(true) => {
                terms.push(Term::Coef(coef.mul(&g1.inverse())));
                terms.push(Term::Var(1));
                coef = g2.clone();
            }
            Step::Jump(false) => {
                terms.push(Term::Coef(coef.mul(&g2.inverse())));
                terms.push(Term::Var(-1));
                coef = g1.clone();
            }
        }
    }
    terms.push(Term::Coef(coef));
    let eq = Equation::from_terms(terms);
    if eq.degree() == 0 || !eq.evaluate(g).is_identity() || !eq.coefficients_in(h) {
        return Err(Error::Internal(format!("folding produced an invalid equation {eq}")));
    }
    Ok(eq)
}
