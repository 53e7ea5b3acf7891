//! Nielsen reduction of a tuple of words, recording every elementary move so
//! the same transformation can be replayed on formal tuples.

use std::fmt;

use super::{GroupWord, Letter, Word};
use crate::error::{Error, Result};

/// Elementary Nielsen move on a tuple `(t_0, …, t_{n-1})` (zero-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NielsenMove {
    Swap(usize, usize),
    Invert(usize),
    /// `t_target ← t_target · t_by^{±1}`
    MulRight { target: usize, by: usize, inverse: bool },
    /// `t_target ← t_by^{±1} · t_target`
    MulLeft { target: usize, by: usize, inverse: bool },
}

impl NielsenMove {
    fn max_index(self) -> usize {
        match self {
            NielsenMove::Swap(i, j) => i.max(j),
            NielsenMove::Invert(i) => i,
            NielsenMove::MulRight { target, by, .. } | NielsenMove::MulLeft { target, by, .. } => {
                target.max(by)
            }
        }
    }

    pub fn apply<W: GroupWord>(self, tuple: &mut [W]) {
        match self {
            NielsenMove::Swap(i, j) => tuple.swap(i, j),
            NielsenMove::Invert(i) => tuple[i] = tuple[i].inv(),
            NielsenMove::MulRight { target, by, inverse } => {
                let f = if inverse { tuple[by].inv() } else { tuple[by].clone() };
                tuple[target] = tuple[target].times(&f);
            }
            NielsenMove::MulLeft { target, by, inverse } => {
                let f = if inverse { tuple[by].inv() } else { tuple[by].clone() };
                tuple[target] = f.times(&tuple[target]);
            }
        }
    }
}

impl fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |inv: bool| if inv { "^-1" } else { "" };
        match *self {
            NielsenMove::Swap(i, j) => write!(f, "swap t{} t{}", i + 1, j + 1),
            NielsenMove::Invert(i) => write!(f, "t{0} <- t{0}^-1", i + 1),
            NielsenMove::MulRight { target, by, inverse } => write!(
                f,
                "t{0} <- t{0} t{1}{2}",
                target + 1,
                by + 1,
                sign(inverse)
            ),
            NielsenMove::MulLeft { target, by, inverse } => write!(
                f,
                "t{0} <- t{1}{2} t{0}",
                target + 1,
                by + 1,
                sign(inverse)
            ),
        }
    }
}

/// Ordered list of Nielsen moves applied to a tuple of fixed length.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TransformationLog {
    pub arity: usize,
    pub steps: Vec<NielsenMove>,
}

impl TransformationLog {
    pub fn new(arity: usize) -> TransformationLog {
        TransformationLog {
            arity,
            steps: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn replay<W: GroupWord>(&self, tuple: &[W]) -> Result<Vec<W>> {
        if tuple.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        let mut out = tuple.to_vec();
        for step in &self.steps {
            debug_assert!(step.max_index() < out.len());
            step.apply(&mut out);
        }
        Ok(out)
    }
}

/// Replays `log` on a formal tuple (or any tuple of group words).
pub fn apply_log<W: GroupWord>(tuple: &[W], log: &TransformationLog) -> Result<Vec<W>> {
    log.replay(tuple)
}

/// Ordering key: length first, then the sorted pair of left halves of the
/// word and its inverse. A Nielsen move never changes the key of a word it
/// does not touch, and the tuple potential (keys sorted descending) lives in
/// a finite set, so strictly decreasing moves always terminate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct ReductionKey {
    len: usize,
    low: Vec<Letter>,
    high: Vec<Letter>,
}

fn key(w: &Word) -> ReductionKey {
    let half = w.len().div_ceil(2);
    let left = w.letters()[..half].to_vec();
    let inv = w.inverse();
    let right = inv.letters()[..half].to_vec();
    let (low, high) = if left <= right { (left, right) } else { (right, left) };
    ReductionKey {
        len: w.len(),
        low,
        high,
    }
}

fn candidate_moves(n: usize) -> impl Iterator<Item = NielsenMove> {
    (0..n).flat_map(move |target| {
        (0..n).filter(move |&by| by != target).flat_map(move |by| {
            [
                NielsenMove::MulRight { target, by, inverse: false },
                NielsenMove::MulRight { target, by, inverse: true },
                NielsenMove::MulLeft { target, by, inverse: false },
                NielsenMove::MulLeft { target, by, inverse: true },
            ]
        })
    })
}

fn moved(tuple: &[Word], mv: NielsenMove) -> (usize, Word) {
    match mv {
        NielsenMove::MulRight { target, by, inverse } => {
            let f = if inverse { tuple[by].inverse() } else { tuple[by].clone() };
            (target, tuple[target].mul(&f))
        }
        NielsenMove::MulLeft { target, by, inverse } => {
            let f = if inverse { tuple[by].inverse() } else { tuple[by].clone() };
            (target, f.mul(&tuple[target]))
        }
        _ => unreachable!("only multiplicative moves are searched"),
    }
}

/// Nielsen-reduces a tuple of words.
///
/// Each round applies the multiplicative move with the largest total-length
/// decrease (ties: lowest `(target, by)` pair, right before left, `+1` before
/// `-1`). When no move shortens the tuple, a length-preserving move that
/// lowers the [`ReductionKey`] of its target is taken instead; this resolves
/// triples `u v w` whose middle factor cancels completely, which pure length
/// reduction cannot detect. Identity entries are finally swapped to the tail,
/// keeping the relative order of the others.
pub fn nielsen_reduce(tuple: &[Word]) -> (Vec<Word>, TransformationLog) {
    let n = tuple.len();
    let mut cur = tuple.to_vec();
    let mut log = TransformationLog::new(n);

    loop {
        let mut best_shorten: Option<(usize, NielsenMove)> = None;
        let mut best_tiebreak: Option<NielsenMove> = None;
        for mv in candidate_moves(n) {
            let (target, by) = match mv {
                NielsenMove::MulRight { target, by, .. } | NielsenMove::MulLeft { target, by, .. } => {
                    (target, by)
                }
                _ => unreachable!(),
            };
            if cur[by].is_identity() || cur[target].is_identity() {
                continue;
            }
            let (_, new) = moved(&cur, mv);
            let old_len = cur[target].len();
            if new.len() < old_len {
                let gain = old_len - new.len();
                if best_shorten.is_none_or(|(g, _)| gain > g) {
                    best_shorten = Some((gain, mv));
                }
            } else if best_tiebreak.is_none()
                && new.len() == old_len
                && key(&new) < key(&cur[target])
            {
                best_tiebreak = Some(mv);
            }
        }
        let Some(mv) = best_shorten.map(|(_, mv)| mv).or(best_tiebreak) else {
            break;
        };
        mv.apply(&mut cur);
        log.steps.push(mv);
    }

    for pos in 0..n {
        if cur[pos].is_identity() {
            if let Some(k) = (pos + 1..n).find(|&k| !cur[k].is_identity()) {
                let mv = NielsenMove::Swap(pos, k);
                mv.apply(&mut cur);
                log.steps.push(mv);
            }
        }
    }
    (cur, log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FormalWord;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fw(s: &str) -> FormalWord {
        s.parse().unwrap()
    }

    #[test]
    fn square_and_root() {
        let (reduced, log) = nielsen_reduce(&[w("aa"), w("a")]);
        assert_eq!(reduced, vec![w("a"), Word::identity()]);
        let t12inv = NielsenMove::MulRight {
            target: 0,
            by: 1,
            inverse: true,
        };
        assert_eq!(log.steps, vec![t12inv, t12inv, NielsenMove::Swap(0, 1)]);
    }

    #[test]
    fn already_reduced_has_empty_log() {
        let (reduced, log) = nielsen_reduce(&[w("a"), w("b")]);
        assert_eq!(reduced, vec![w("a"), w("b")]);
        assert!(log.is_empty());
    }

    #[test]
    fn conjugate_triple() {
        let (reduced, _) = nielsen_reduce(&[w("abA"), w("b"), w("a")]);
        assert_eq!(reduced.iter().filter(|x| !x.is_identity()).count(), 2);
        assert!(reduced[2].is_identity());
        let mut sorted = reduced[..2].to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![w("a"), w("b")]);
    }

    #[test]
    fn middle_cancellation_needs_tiebreak() {
        // ab · b⁻¹c · c⁻¹a⁻¹ = 1 with no length-reducing pair move.
        let (reduced, _) = nielsen_reduce(&[w("ab"), w("Bc"), w("CA")]);
        assert_eq!(reduced.iter().filter(|x| !x.is_identity()).count(), 2);
    }

    #[test]
    fn apply_log_examples() {
        let (_, log) = nielsen_reduce(&[w("aa"), w("a")]);
        let out = apply_log(&[fw("g1"), fw("x")], &log).unwrap();
        assert_eq!(out, vec![fw("x"), fw("g1 x^-2")]);

        let empty = TransformationLog::new(2);
        let tuple = [fw("g1 x"), fw("g2")];
        assert_eq!(apply_log(&tuple, &empty).unwrap(), tuple.to_vec());

        assert!(matches!(
            apply_log(&[fw("g1")], &log),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn apply_log_commutes_with_substitute() {
        let gens = [w("abA"), w("b")];
        let g = w("a");
        let (reduced, log) = nielsen_reduce(&[gens[0].clone(), gens[1].clone(), g.clone()]);
        let formal = apply_log(&[fw("g1"), fw("g2"), fw("x")], &log).unwrap();
        for (f, r) in formal.iter().zip(&reduced) {
            assert_eq!(&crate::words::substitute(f, &gens, &g).unwrap(), r);
        }
    }
}
