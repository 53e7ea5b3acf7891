//! Folding of arbitrary labelled graphs, recording a replayable history.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{CoreGraph, Edge, VertexId};
use crate::words::{Alphabet, Letter, Word};

/// A rooted, edge-labelled directed graph that need not be folded.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub alphabet: Alphabet,
    pub num_vertices: usize,
    pub root: VertexId,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    /// One root vertex, no edges.
    pub fn new(alphabet: Alphabet) -> LabeledGraph {
        LabeledGraph {
            alphabet,
            num_vertices: 1,
            root: 0,
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.num_vertices += 1;
        self.num_vertices - 1
    }

    /// Adds the edge for a signed letter; inverse letters are stored reversed.
    pub fn add_letter_edge(&mut self, from: VertexId, letter: Letter, to: VertexId) {
        let (source, target) = if letter.is_inverse() { (to, from) } else { (from, to) };
        self.edges.push(Edge {
            source,
            label: letter.generator(),
            target,
        });
    }

    /// Adds a path spelling `w` from `from` to `to` through fresh vertices.
    pub fn add_path(&mut self, from: VertexId, w: &Word, to: VertexId) {
        let letters = w.letters();
        if letters.is_empty() {
            // an empty path between distinct vertices has no edge form
            debug_assert_eq!(from, to, "empty path must be closed");
            return;
        }
        let mut cur = from;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { to } else { self.add_vertex() };
            self.add_letter_edge(cur, l, next);
            cur = next;
        }
    }

    /// Adds a closed path at the root spelling `w`.
    pub fn add_petal(&mut self, w: &Word) {
        let root = self.root;
        self.add_path(root, w, root);
    }

    pub fn from_core(graph: &CoreGraph) -> LabeledGraph {
        LabeledGraph {
            alphabet: graph.alphabet().clone(),
            num_vertices: graph.num_vertices(),
            root: graph.root(),
            edges: graph.edges().to_vec(),
        }
    }
}

/// One identification performed while folding. Ids refer to the pre-fold graph;
/// merged vertices are named by their union-find representatives at that moment.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FoldStep {
    VertexMerge { kept: VertexId, absorbed: VertexId },
    EdgeMerge { kept: usize, absorbed: usize },
}

/// Complete log of a fold plus the map from pre-fold vertices to the result.
#[derive(Clone, Debug, Default)]
pub struct FoldHistory {
    pub steps: Vec<FoldStep>,
    vertex_map: Vec<Option<VertexId>>,
}

impl FoldHistory {
    /// Surviving vertex of the folded graph for a pre-fold vertex, or `None`
    /// when it was trimmed away.
    pub fn resolve(&self, v: VertexId) -> Option<VertexId> {
        self.vertex_map.get(v).copied().flatten()
    }

    pub fn edge_merges(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, FoldStep::EdgeMerge { .. }))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Order in which fold candidates are processed.
pub enum FoldOrder<'a, R: Rng> {
    Worklist,
    Shuffled(&'a mut R),
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; the smaller representative survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (kept, absorbed) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[absorbed] = kept;
        Some((kept, absorbed))
    }
}

struct Folder {
    uf: UnionFind,
    edges: Vec<Edge>,
    alive: Vec<bool>,
    incident: Vec<Vec<usize>>,
    steps: Vec<FoldStep>,
}

impl Folder {
    fn new(graph: &LabeledGraph) -> Folder {
        let mut incident = vec![Vec::new(); graph.num_vertices];
        for (i, e) in graph.edges.iter().enumerate() {
            incident[e.source].push(i);
            if e.target != e.source {
                incident[e.target].push(i);
            }
        }
        Folder {
            uf: UnionFind::new(graph.num_vertices),
            edges: graph.edges.clone(),
            alive: vec![true; graph.edges.len()],
            incident,
            steps: Vec::new(),
        }
    }

    fn merge_vertices(&mut self, a: VertexId, b: VertexId) -> Option<VertexId> {
        let (kept, absorbed) = self.uf.union(a, b)?;
        let mut moved = std::mem::take(&mut self.incident[absorbed]);
        let kept_list = &mut self.incident[kept];
        if moved.len() > kept_list.len() {
            std::mem::swap(&mut moved, kept_list);
        }
        kept_list.extend(moved);
        self.steps.push(FoldStep::VertexMerge { kept, absorbed });
        Some(kept)
    }

    /// Finds two live edges at class `r` sharing a signed label.
    fn find_fold(&mut self, r: VertexId) -> Option<(usize, usize)> {
        let mut slot: [Option<usize>; 2 * crate::words::MAX_GENERATORS as usize] =
            [None; 2 * crate::words::MAX_GENERATORS as usize];
        let list = std::mem::take(&mut self.incident[r]);
        let mut found = None;
        let mut live = Vec::with_capacity(list.len());
        for &e in &list {
            if !self.alive[e] || live.contains(&e) {
                continue;
            }
            live.push(e);
        }
        'scan: for &e in &live {
            let Edge { source, label, target } = self.edges[e];
            let mut keys = Vec::with_capacity(2);
            if self.uf.find(source) == r {
                keys.push(Letter::new(label, false).code());
            }
            if self.uf.find(target) == r {
                keys.push(Letter::new(label, true).code());
            }
            for k in keys {
                match slot[k] {
                    Some(prev) if prev != e => {
                        found = Some((prev, e));
                        break 'scan;
                    }
                    _ => slot[k] = Some(e),
                }
            }
        }
        self.incident[r] = live;
        found
    }

    fn fold_pair(&mut self, kept: usize, absorbed: usize) -> Option<VertexId> {
        self.alive[absorbed] = false;
        self.steps.push(FoldStep::EdgeMerge { kept, absorbed });
        let (k, a) = (self.edges[kept], self.edges[absorbed]);
        let same_source = self.uf.find(k.source) == self.uf.find(a.source);
        let same_target = self.uf.find(k.target) == self.uf.find(a.target);
        if same_source && !same_target {
            self.merge_vertices(k.target, a.target)
        } else if same_target && !same_source {
            self.merge_vertices(k.source, a.source)
        } else {
            None
        }
    }

    fn run<R: Rng>(&mut self, order: &mut FoldOrder<'_, R>, seeds: Vec<VertexId>) {
        let mut work: Vec<VertexId> = seeds;
        work.reverse();
        while !work.is_empty() {
            if let FoldOrder::Shuffled(rng) = order {
                work.shuffle(*rng);
            }
            let v = work.pop().unwrap();
            let r = self.uf.find(v);
            if r != v {
                work.push(r);
                continue;
            }
            if let Some((e1, e2)) = self.find_fold(r) {
                let flip = match order {
                    FoldOrder::Shuffled(rng) => rng.gen_bool(0.5),
                    FoldOrder::Worklist => false,
                };
                let (kept, absorbed) = if flip { (e2, e1) } else { (e1, e2) };
                if let Some(m) = self.fold_pair(kept, absorbed) {
                    work.push(m);
                }
                work.push(self.uf.find(r));
            }
        }
    }
}

pub(crate) fn fold_labeled<R: Rng>(
    graph: &LabeledGraph,
    initial: Option<(VertexId, VertexId)>,
    order: FoldOrder<'_, R>,
) -> (CoreGraph, FoldHistory) {
    fold_protected(graph, initial, order, &[])
}

/// Like [`fold_labeled`] but never trims the vertices in `protected`.
pub(crate) fn fold_protected<R: Rng>(
    graph: &LabeledGraph,
    initial: Option<(VertexId, VertexId)>,
    mut order: FoldOrder<'_, R>,
    protected: &[VertexId],
) -> (CoreGraph, FoldHistory) {
    let mut folder = Folder::new(graph);
    let mut seeds: Vec<VertexId> = (0..graph.num_vertices).collect();
    if let Some((u, v)) = initial {
        if let Some(kept) = folder.merge_vertices(u, v) {
            seeds.insert(0, kept);
        }
    }
    folder.run(&mut order, seeds);

    let Folder {
        mut uf,
        edges,
        alive,
        steps,
        ..
    } = folder;
    let reps: Vec<VertexId> = (0..graph.num_vertices).map(|v| uf.find(v)).collect();
    let folded: Vec<Edge> = edges
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(e, _)| Edge {
            source: reps[e.source],
            label: e.label,
            target: reps[e.target],
        })
        .collect();
    let protected: Vec<VertexId> = protected.iter().map(|&v| reps[v]).collect();
    let (core, map) = CoreGraph::trim_and_compact(
        graph.alphabet.clone(),
        graph.num_vertices,
        reps[graph.root],
        folded,
        &protected,
    );
    let vertex_map = reps.iter().map(|&r| map[r]).collect();
    (core, FoldHistory { steps, vertex_map })
}

/// Folds `graph` with the deterministic worklist order, restricts to the root
/// component and trims hanging trees.
pub fn fold(graph: &LabeledGraph) -> (CoreGraph, FoldHistory) {
    fold_labeled::<rand::rngs::ThreadRng>(graph, None, FoldOrder::Worklist)
}

/// Folds `graph` processing candidates in an order drawn from `rng`.
pub fn fold_randomized<R: Rng>(graph: &LabeledGraph, rng: &mut R) -> (CoreGraph, FoldHistory) {
    fold_labeled(graph, None, FoldOrder::Shuffled(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn two_loops_fold_to_one() {
        let mut g = LabeledGraph::new(Alphabet::standard(1));
        g.add_petal(&w("a"));
        g.add_petal(&w("a"));
        let (core, hist) = fold(&g);
        assert_eq!(core.num_vertices(), 1);
        assert_eq!(core.num_edges(), 1);
        assert_eq!(hist.steps, vec![FoldStep::EdgeMerge { kept: 0, absorbed: 1 }]);
    }

    #[test]
    fn folded_graph_is_unchanged() {
        let mut g = LabeledGraph::new(Alphabet::standard(1));
        g.add_petal(&w("aa"));
        let (core, hist) = fold(&g);
        assert!(hist.is_empty());
        assert_eq!(core.num_vertices(), 2);
        assert_eq!(core.num_edges(), 2);
    }

    #[test]
    fn shared_prefix_folds() {
        let mut g = LabeledGraph::new(Alphabet::standard(3));
        g.add_petal(&w("ab"));
        g.add_petal(&w("ac"));
        let (core, hist) = fold(&g);
        assert_eq!(core.num_vertices(), 2);
        assert_eq!(core.num_edges(), 3);
        assert_eq!(core.rank(), 2);
        assert_eq!(hist.edge_merges(), 1);
        // both middle vertices resolve to the same survivor
        assert_eq!(hist.resolve(1), hist.resolve(2));
        assert_eq!(hist.resolve(0), Some(0));
    }

    #[test]
    fn hanging_tree_is_trimmed_and_resolves_to_none() {
        let mut g = LabeledGraph::new(Alphabet::standard(2));
        let v = g.add_vertex();
        g.add_letter_edge(0, Letter::from_char('a').unwrap(), v);
        let u = g.add_vertex();
        g.add_letter_edge(v, Letter::from_char('b').unwrap(), u);
        g.add_petal(&w("b"));
        let (core, hist) = fold(&g);
        assert_eq!(core.num_vertices(), 1);
        assert_eq!(hist.resolve(u), None);
    }
}
