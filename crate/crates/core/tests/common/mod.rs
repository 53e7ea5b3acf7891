//! Shared subgroup catalog: hand-picked examples plus seeded random
//! subgroups of rank at most 3 with generators of length at most 8.

#![allow(dead_code)]

use freedep::stallings::LabeledGraph;
use freedep::{build_core, Alphabet, CoreGraph, Letter, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct Entry {
    pub name: String,
    pub gens: Vec<Word>,
    pub core: CoreGraph,
}

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn core(gens: &[&str], alphabet: &str) -> CoreGraph {
    let gens: Vec<Word> = gens.iter().map(|s| w(s)).collect();
    build_core(&gens, &Alphabet::parse(alphabet).unwrap())
}

fn entry(gens: &[&str], alphabet: &str) -> Entry {
    let words: Vec<Word> = gens.iter().map(|s| w(s)).collect();
    let name = format!("<{}>", gens.join(","));
    Entry {
        name,
        core: build_core(&words, &Alphabet::parse(alphabet).unwrap()),
        gens: words,
    }
}

const HAND_PICKED: &[(&[&str], &str)] = &[
    (&["abA", "b"], "a b"),
    (&["acA", "c"], "a c"),
    (&["aaaaaaaaaa", "bbbbbbbbbb"], "a b"),
    (&["aabb"], "a b"),
    (&["abAB"], "a b"),
    (&["aa"], "a b"),
    (&["aaa"], "a b"),
    (&["a"], "a b"),
    (&["a", "b"], "a b"),
    (&[], "a b"),
    (&["ab"], "a b"),
    (&["aab", "bab", "abba"], "a b"),
    (&["aa", "bb", "ab"], "a b"),
];

/// Random reduced word over the first `letters` generators with length in `1..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, letters: u8, max_len: usize) -> Word {
    let alphabet = Alphabet::standard(letters);
    let signed = alphabet.signed_letters();
    loop {
        let len = rng.gen_range(1..=max_len);
        let g = Word::reduce((0..len).map(|_| signed[rng.gen_range(0..signed.len())]));
        if !g.is_identity() {
            return g;
        }
    }
}

pub fn random_gens<R: Rng>(rng: &mut R, letters: u8, max_rank: usize, max_len: usize) -> Vec<Word> {
    let rank = rng.gen_range(1..=max_rank);
    (0..rank).map(|_| random_word(rng, letters, max_len)).collect()
}

pub fn random_entries(count: usize, seed: u64) -> Vec<Entry> {
    let mut rng = StdRng::seed_from_u64(seed);
    let alphabet = Alphabet::standard(2);
    (0..count)
        .map(|_| {
            let gens = random_gens(&mut rng, 2, 3, 8);
            let names: Vec<String> = gens.iter().map(Word::to_string).collect();
            Entry {
                name: format!("<{}>", names.join(",")),
                core: build_core(&gens, &alphabet),
                gens,
            }
        })
        .collect()
}

/// At least 25 subgroups over two letters (one over `a, c`).
pub fn catalog() -> Vec<Entry> {
    let mut out: Vec<Entry> = HAND_PICKED.iter().map(|(g, a)| entry(g, a)).collect();
    out.extend(random_entries(16, 0x5eed));
    out
}

/// Random element of `H` as a product of up to `factors` signed basis elements.
pub fn random_element<R: Rng>(rng: &mut R, h: &CoreGraph, factors: usize) -> Word {
    let basis = h.basis();
    let mut g = Word::identity();
    if basis.is_empty() {
        return g;
    }
    for _ in 0..rng.gen_range(0..=factors) {
        let b = &basis[rng.gen_range(0..basis.len())];
        g = g.mul(&if rng.gen_bool(0.5) { b.clone() } else { b.inverse() });
    }
    g
}

/// Unfolded graph on up to 7 vertices over three letters: random edges plus
/// a few petals at the root.
pub fn random_graph<R: Rng>(rng: &mut R) -> LabeledGraph {
    let mut g = LabeledGraph::new(Alphabet::standard(3));
    let n = rng.gen_range(1..8);
    for _ in 1..n {
        g.add_vertex();
    }
    for _ in 0..rng.gen_range(0..14) {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_letter_edge(s, Letter::new(rng.gen_range(0..3), false), t);
    }
    for petal in random_gens(rng, 3, 2, 6) {
        g.add_petal(&petal);
    }
    g
}
