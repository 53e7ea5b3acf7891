use std::collections::HashMap;

use super::fold::{fold_labeled, FoldOrder};
use super::{CoreGraph, Edge, FoldHistory, LabeledGraph, VertexId};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

/// Quotient `C/(u = v)`, refolded and trimmed. The history starts with the
/// merge of `u` and `v` (absent when `u == v`) followed by all induced folds.
pub fn identify(graph: &CoreGraph, u: VertexId, v: VertexId) -> Result<(CoreGraph, FoldHistory)> {
    for x in [u, v] {
        if x >= graph.num_vertices() {
            return Err(Error::NoSuchVertex(x));
        }
    }
    let labeled = LabeledGraph::from_core(graph);
    Ok(fold_labeled::<rand::rngs::ThreadRng>(
        &labeled,
        Some((u, v)),
        FoldOrder::Worklist,
    ))
}

/// Core of the root component of the product graph; represents `H ∩ G`.
pub fn pullback(g1: &CoreGraph, g2: &CoreGraph) -> CoreGraph {
    let mut index: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    let mut pairs = vec![(g1.root(), g2.root())];
    index.insert(pairs[0], 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for code in 0..2 * crate::words::MAX_GENERATORS as usize {
            let l = Letter::from_code(code);
            let (Some(s), Some(t)) = (g1.step(p, l), g2.step(q, l)) else {
                continue;
            };
            let id = *index.entry((s, t)).or_insert_with(|| {
                pairs.push((s, t));
                pairs.len() - 1
            });
            if !l.is_inverse() {
                edges.push(Edge {
                    source: i,
                    label: l.generator(),
                    target: id,
                });
            }
        }
        i += 1;
    }
    let alphabet = g1.alphabet().union(g2.alphabet());
    CoreGraph::trim_and_compact(alphabet, pairs.len(), 0, edges, &[]).0
}

/// `H ∩ F(sub)` for a prefix `sub` of the graph's ordered alphabet: deletes
/// edges with other labels, keeps the root component and trims.
pub fn restrict(graph: &CoreGraph, sub: &Alphabet) -> Result<CoreGraph> {
    if !sub.is_prefix_of(graph.alphabet()) {
        return Err(Error::NotPrefix {
            sub: sub.to_string(),
            full: graph.alphabet().to_string(),
        });
    }
    Ok(restrict_to_letters(graph, sub))
}

/// `H ∩ F(letters)` for any set of generators, without the prefix check.
pub(crate) fn restrict_to_letters(graph: &CoreGraph, letters: &Alphabet) -> CoreGraph {
    let edges: Vec<Edge> = graph
        .edges()
        .iter()
        .copied()
        .filter(|e| letters.contains(e.label))
        .collect();
    CoreGraph::trim_and_compact(letters.clone(), graph.num_vertices(), graph.root(), edges, &[]).0
}
