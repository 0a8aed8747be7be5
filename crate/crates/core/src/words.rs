//! Word combinatorics: border-style periods, agreeability, primitivity,
//! rotations and eventually periodic (lasso) words.

use crate::graph::{LabelId, LabelWord};

/// `w` has period `p` in the border sense: `w = β·w' = w'·γ` with `|β| = p`
/// and `w'` nonempty.  Requires `p <= |w| - 1`, so a one-letter word has no
/// period at all.
pub fn has_period(w: &LabelWord, p: usize) -> bool {
    let n = w.len();
    if p == 0 || p > n.saturating_sub(1) {
        return false;
    }
    (0..n - p).all(|i| w.0[i] == w.0[i + p])
}

/// Agreeable at level `l`: some period `1 <= p <= min(l, |w|-1)` exists.
pub fn is_agreeable(w: &LabelWord, l: usize) -> bool {
    let max_p = l.min(w.len().saturating_sub(1));
    (1..=max_p).any(|p| has_period(w, p))
}

/// A word is primitive (a "simple" labelled path) when it is not a proper
/// power of a shorter word.
pub fn is_primitive(w: &LabelWord) -> bool {
    let n = w.len();
    assert!(n >= 1, "primitivity is undefined for the empty word");
    for d in 1..n {
        if n % d != 0 {
            continue;
        }
        if (d..n).all(|i| w.0[i] == w.0[i - d]) {
            return false;
        }
    }
    true
}

/// The shortest word whose power equals `w`.
pub fn primitive_root(w: &LabelWord) -> LabelWord {
    let n = w.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| w.0[i] == w.0[i - d]) {
            return LabelWord(w.0[..d].to_vec());
        }
    }
    w.clone()
}

/// Cyclic left rotation `T^k`; `T(β) = β_2 ⋯ β_{|β|} β_1`.
pub fn rotate(w: &LabelWord, k: usize) -> LabelWord {
    let n = w.len();
    assert!(n >= 1, "rotation is undefined for the empty word");
    let k = k % n;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&w.0[k..]);
    out.extend_from_slice(&w.0[..k]);
    LabelWord(out)
}

/// Finite presentation `u·z^∞` of an eventually periodic infinite word, kept
/// in canonical form: the cycle is primitive and the prefix is shortest (its
/// last letter differs from the cycle letter it would roll into).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    prefix: LabelWord,
    cycle: LabelWord,
}

impl Lasso {
    pub fn new(prefix: LabelWord, cycle: LabelWord) -> Lasso {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        let mut cycle = primitive_root(&cycle);
        let mut prefix = prefix;
        while let Some(&last) = prefix.0.last() {
            if last == *cycle.0.last().unwrap() {
                prefix.0.pop();
                cycle.0.rotate_right(1);
            } else {
                break;
            }
        }
        Lasso { prefix, cycle }
    }

    pub fn prefix(&self) -> &LabelWord {
        &self.prefix
    }

    pub fn cycle(&self) -> &LabelWord {
        &self.cycle
    }

    /// Letter at 1-based position `i` of `u·z^∞`.
    pub fn letter(&self, i: usize) -> LabelId {
        assert!(i >= 1);
        let u = self.prefix.len();
        if i <= u {
            self.prefix.0[i - 1]
        } else {
            self.cycle.0[(i - u - 1) % self.cycle.len()]
        }
    }

    /// The first `n` letters of `u·z^∞`.
    pub fn unroll(&self, n: usize) -> LabelWord {
        LabelWord((1..=n).map(|i| self.letter(i)).collect())
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.prefix.is_empty()
    }
}

/// Smallest `p <= bound` such that `u·z^∞` is invariant under shifting by
/// `p`, or `None`.  Positions `1..=|u|+|z|` decide the question: beyond the
/// prefix the word is `|z|`-periodic, so one combined window suffices.
pub fn lasso_least_pure_period(x: &Lasso, bound: usize) -> Option<usize> {
    let window = x.prefix().len() + x.cycle().len();
    (1..=bound).find(|&p| (1..=window).all(|i| x.letter(i) == x.letter(i + p)))
}
