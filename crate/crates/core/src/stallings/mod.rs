//! Stallings core graphs of finitely generated subgroups.
//!
//! A [`CoreGraph`] is folded, connected and trimmed: every vertex other than
//! the root has degree at least two. Vertex `0` is always the root. Edges are
//! stored once, oriented along the positive letter; reading an inverse letter
//! walks an edge backwards.

mod fold;
mod ops;

pub use fold::{fold, fold_randomized, FoldHistory, FoldOrder, FoldStep, LabeledGraph};
pub use ops::{identify, pullback, restrict};
pub(crate) use ops::restrict_to_letters;

pub(crate) use fold::{fold_protected, UnionFind};

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::Result;
use crate::words::{generator_char, Alphabet, Letter, Word, MAX_GENERATORS};

pub type VertexId = usize;

const SLOTS: usize = 2 * MAX_GENERATORS as usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub source: VertexId,
    /// Generator index (`0` is `a`).
    pub label: u8,
    pub target: VertexId,
}

/// Folded, trimmed, rooted Stallings graph.
#[derive(Clone, Debug)]
pub struct CoreGraph {
    alphabet: Alphabet,
    edges: Vec<Edge>,
    transitions: Vec<[Option<u32>; SLOTS]>,
}

/// Relabelling-invariant description of a core graph; equal canonical forms
/// mean isomorphic rooted labelled graphs, hence equal subgroups.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalForm {
    pub num_vertices: usize,
    pub edges: Vec<Edge>,
}

impl CoreGraph {
    /// The core graph of the trivial subgroup.
    pub fn trivial(alphabet: Alphabet) -> CoreGraph {
        CoreGraph {
            alphabet,
            edges: Vec::new(),
            transitions: vec![[None; SLOTS]],
        }
    }

    /// Builds the core graph of the subgroup generated by `gens`: one petal
    /// per generator at the root, folded and trimmed. Letters outside
    /// `alphabet` extend it.
    pub fn from_generators(gens: &[Word], alphabet: &Alphabet) -> CoreGraph {
        let alphabet = alphabet.union(&Alphabet::infer(gens));
        let mut g = LabeledGraph::new(alphabet);
        for w in gens {
            g.add_petal(w);
        }
        fold(&g).0
    }

    /// Assumes `edges` is folded over vertices `0..num_vertices` with root `0`.
    pub(crate) fn from_folded(alphabet: Alphabet, num_vertices: usize, mut edges: Vec<Edge>) -> CoreGraph {
        edges.sort();
        let mut transitions = vec![[None; SLOTS]; num_vertices];
        for e in &edges {
            let fwd = Letter::new(e.label, false).code();
            let bwd = Letter::new(e.label, true).code();
            debug_assert!(transitions[e.source][fwd].is_none(), "graph is not folded");
            debug_assert!(transitions[e.target][bwd].is_none(), "graph is not folded");
            transitions[e.source][fwd] = Some(e.target as u32);
            transitions[e.target][bwd] = Some(e.source as u32);
        }
        CoreGraph {
            alphabet,
            edges,
            transitions,
        }
    }

    /// Keeps the component of `root`, trims non-root vertices of degree ≤ 1,
    /// and renumbers survivors (root first, then increasing old id).
    /// Returns the graph and the old→new vertex map.
    pub(crate) fn trim_and_compact(
        alphabet: Alphabet,
        num_vertices: usize,
        root: VertexId,
        edges: Vec<Edge>,
        protected: &[VertexId],
    ) -> (CoreGraph, Vec<Option<VertexId>>) {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); num_vertices];
        for (i, e) in edges.iter().enumerate() {
            adj[e.source].push(i);
            if e.target != e.source {
                adj[e.target].push(i);
            }
        }
        let mut reached = vec![false; num_vertices];
        reached[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &i in &adj[v] {
                let e = edges[i];
                for w in [e.source, e.target] {
                    if !reached[w] {
                        reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }

        let mut edge_alive: Vec<bool> = edges.iter().map(|e| reached[e.source]).collect();
        let mut degree = vec![0usize; num_vertices];
        for (e, _) in edges.iter().zip(&edge_alive).filter(|(_, &a)| a) {
            degree[e.source] += 1;
            degree[e.target] += 1;
        }
        let mut alive = reached;
        let mut queue: Vec<VertexId> = (0..num_vertices)
            .filter(|&v| alive[v] && v != root && !protected.contains(&v) && degree[v] <= 1)
            .collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &i in &adj[v] {
                if !edge_alive[i] {
                    continue;
                }
                edge_alive[i] = false;
                let e = edges[i];
                let other = if e.source == v { e.target } else { e.source };
                degree[other] -= 1;
                if other != root
                    && !protected.contains(&other)
                    && alive[other]
                    && degree[other] <= 1
                {
                    queue.push(other);
                }
            }
        }

        let mut map = vec![None; num_vertices];
        map[root] = Some(0);
        let mut next = 1;
        for v in 0..num_vertices {
            if v != root && alive[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let kept: Vec<Edge> = edges
            .iter()
            .zip(&edge_alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                source: map[e.source].unwrap(),
                label: e.label,
                target: map[e.target].unwrap(),
            })
            .collect();
        (CoreGraph::from_folded(alphabet, next, kept), map)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn root(&self) -> VertexId {
        0
    }

    pub fn num_vertices(&self) -> usize {
        self.transitions.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(source, label, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// Neighbour of `v` along the signed letter `l`, if that edge exists.
    pub fn step(&self, v: VertexId, l: Letter) -> Option<VertexId> {
        self.transitions[v][l.code()].map(|t| t as usize)
    }

    /// Reads `w` from `start` as far as possible; returns the number of
    /// letters read and the vertex reached.
    pub fn read_from(&self, start: VertexId, w: &Word) -> (usize, VertexId) {
        let mut v = start;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.step(v, l) {
                Some(t) => v = t,
                None => return (i, v),
            }
        }
        (w.len(), v)
    }

    /// End vertex of the path spelling `w` from `start`, if it exists.
    pub fn walk(&self, start: VertexId, w: &Word) -> Option<VertexId> {
        let (n, v) = self.read_from(start, w);
        (n == w.len()).then_some(v)
    }

    /// Membership: `w` reads a closed path at the root.
    pub fn contains(&self, w: &Word) -> bool {
        self.walk(self.root(), w) == Some(self.root())
    }

    /// First Betti number `|E| − |V| + 1`, the rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.transitions[v].iter().filter(|t| t.is_some()).count()
    }

    /// Breadth-first traversal from the root exploring letters in
    /// `a < A < b < B` order. Returns the visiting order and, per vertex, the
    /// tree edge `(parent, letter)` it was discovered through.
    fn bfs(&self) -> (Vec<VertexId>, Vec<Option<(VertexId, Letter)>>) {
        let n = self.num_vertices();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.root()]);
        seen[self.root()] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for code in 0..SLOTS {
                if let Some(t) = self.transitions[v][code] {
                    let t = t as usize;
                    if !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((v, Letter::from_code(code)));
                        queue.push_back(t);
                    }
                }
            }
        }
        (order, parent)
    }

    /// Shortlex-least path label from the root to every vertex.
    pub fn coset_labels(&self) -> Vec<Word> {
        let (order, parent) = self.bfs();
        let mut labels = vec![Word::identity(); self.num_vertices()];
        for v in order {
            if let Some((p, l)) = parent[v] {
                let mut w = labels[p].clone();
                w.push(l);
                labels[v] = w;
            }
        }
        labels
    }

    pub fn coset_label(&self, v: VertexId) -> Word {
        self.coset_labels().swap_remove(v)
    }

    /// Vertex reached by a word from the root, i.e. the coset `H·w`, if the
    /// path stays inside the graph.
    pub fn vertex_of(&self, w: &Word) -> Option<VertexId> {
        self.walk(self.root(), w)
    }

    /// Free basis from the BFS spanning tree: one word
    /// `label(source) · a · label(target)⁻¹` per non-tree edge, in edge order.
    pub fn basis(&self) -> Vec<Word> {
        let (_, parent) = self.bfs();
        let labels = self.coset_labels();
        let is_tree = |e: &Edge| {
            parent[e.target] == Some((e.source, Letter::new(e.label, false)))
                || parent[e.source] == Some((e.target, Letter::new(e.label, true)))
        };
        self.edges
            .iter()
            .filter(|e| !is_tree(e))
            .map(|e| {
                labels[e.source]
                    .mul(&Word::generator(e.label))
                    .mul(&labels[e.target].inverse())
            })
            .collect()
    }

    /// Elements of the subgroup of word length at most `max_len`, i.e. labels
    /// of reduced closed paths at the root, in shortlex order.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<(VertexId, Word)> = vec![(self.root(), Word::identity())];
        while let Some((v, w)) = stack.pop() {
            if v == self.root() {
                out.push(w.clone());
            }
            if w.len() == max_len {
                continue;
            }
            let last = w.letters().last().copied();
            for code in 0..SLOTS {
                let l = Letter::from_code(code);
                if Some(l.inverse()) == last {
                    continue;
                }
                if let Some(t) = self.step(v, l) {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push((t, next));
                }
            }
        }
        out.sort_by(|a, b| a.shortlex_cmp(b));
        out
    }

    /// Relabels vertices in BFS order and sorts edges.
    pub fn canonical_form(&self) -> CanonicalForm {
        let (order, _) = self.bfs();
        let mut rename = vec![0; self.num_vertices()];
        for (i, &v) in order.iter().enumerate() {
            rename[v] = i;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                source: rename[e.source],
                label: e.label,
                target: rename[e.target],
            })
            .collect();
        edges.sort();
        CanonicalForm {
            num_vertices: self.num_vertices(),
            edges,
        }
    }

    /// Same subgroup: rooted labelled isomorphism of core graphs.
    pub fn is_isomorphic(&self, other: &CoreGraph) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.num_edges() == other.num_edges()
            && self.canonical_form() == other.canonical_form()
    }

    /// `self ≤ other` as subgroups: every basis word of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &CoreGraph) -> bool {
        self.basis().iter().all(|w| other.contains(w))
    }

    /// Deterministic Graphviz rendering; the root is drawn as a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph core {\n  rankdir=LR;\n");
        for v in 0..self.num_vertices() {
            let shape = if v == self.root() { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  v{v} [shape={shape}];");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.source,
                e.target,
                generator_char(e.label)
            );
        }
        out.push_str("}\n");
        out
    }

    /// Checks the folded/connected/core invariants.
    pub fn check_invariants(&self) -> Result<()> {
        use crate::error::Error;
        let n = self.num_vertices();
        let mut out_seen = std::collections::HashSet::new();
        let mut in_seen = std::collections::HashSet::new();
        for e in &self.edges {
            if e.source >= n || e.target >= n {
                return Err(Error::Internal(format!("edge {e:?} out of range")));
            }
            if !out_seen.insert((e.source, e.label)) || !in_seen.insert((e.target, e.label)) {
                return Err(Error::Internal(format!("not folded at edge {e:?}")));
            }
        }
        let (order, _) = self.bfs();
        if order.len() != n {
            return Err(Error::Internal("graph is disconnected".into()));
        }
        for v in 1..n {
            if self.degree(v) < 2 {
                return Err(Error::Internal(format!("vertex {v} has degree < 2")));
            }
        }
        Ok(())
    }
}

/// Builds `C(⟨gens⟩)` over `alphabet`.
pub fn build_core(gens: &[Word], alphabet: &Alphabet) -> CoreGraph {
    CoreGraph::from_generators(gens, alphabet)
}
