//! Exact symbolic calculus for the generators of the algebra of a labelled
//! space: projections `p_A` for family members `A` and partial isometries
//! `s_a` per label.
//!
//! Every element handled here is a rational combination of monomials
//! `s_α p_A s_β^*`.  The governing relations:
//!
//! * `s_a^* s_b = 0` for `a ≠ b` and `s_a^* s_a = p_{r(a)}`;
//! * `p_A s_a = s_a p_{r(A,a)}`, pushing projections through isometries;
//! * `p_A = Σ_a s_a p_{r(A,a)} s_a^*` over the labels leaving `A`, which
//!   holds because no vertex is a sink.
//!
//! The product of two monomials therefore collapses by comparing the inner
//! words: equal words fuse the projections, one extending the other slides
//! the projection along the overhang, incomparable words annihilate.  The
//! relations require the projection sets to stay inside a fixed family over
//! which the space is weakly left-resolving; a session checks this once and
//! rejects escapes from the family instead of guessing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::accommodating::SetFamily;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{LabelWord, LabelledGraph, VertexSet};
use crate::wlr::check_wlr;

pub type Coeff = BigRational;

/// A monomial `coeff · s_alpha p_set s_beta^*`, kept canonical: the set is
/// trimmed to the ranges of both words and is never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coeff,
    pub alpha: LabelWord,
    pub set: VertexSet,
    pub beta: LabelWord,
}

/// A finite rational combination of monomials in normal form: keys sorted,
/// coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: Vec<Term>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    pub fn from_terms(terms: Vec<Term>) -> LinComb {
        let mut by_key: BTreeMap<(LabelWord, LabelWord, VertexSet), Coeff> = BTreeMap::new();
        for t in terms {
            *by_key
                .entry((t.alpha, t.beta, t.set))
                .or_insert_with(Coeff::zero) += t.coeff;
        }
        let terms = by_key
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((alpha, beta, set), coeff)| Term {
                coeff,
                alpha,
                set,
                beta,
            })
            .collect();
        LinComb { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut all = self.terms.clone();
        all.extend(other.terms.iter().cloned());
        LinComb::from_terms(all)
    }

    pub fn scale(&self, c: &Coeff) -> LinComb {
        LinComb::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scale(&-Coeff::one()))
    }

    /// `(s_α p_A s_β^*)^* = s_β p_A s_α^*`.
    pub fn adjoint(&self) -> LinComb {
        LinComb::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    alpha: t.beta.clone(),
                    set: t.set.clone(),
                    beta: t.alpha.clone(),
                })
                .collect(),
        )
    }
}

/// A fixed graph and projection family over which the relations are valid.
pub struct AlgebraSession<'g> {
    graph: &'g LabelledGraph,
    family: SetFamily,
    caps: Caps,
}

impl<'g> AlgebraSession<'g> {
    /// Fails unless the space is weakly left-resolving over the family.
    pub fn new(graph: &'g LabelledGraph, family: SetFamily, caps: Caps) -> Result<Self> {
        if !check_wlr(graph, &family, &caps)?.holds() {
            return Err(Error::NotWeaklyLeftResolving);
        }
        Ok(AlgebraSession {
            graph,
            family,
            caps,
        })
    }

    pub fn graph(&self) -> &LabelledGraph {
        self.graph
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    fn require_member(&self, set: &VertexSet) -> Result<()> {
        if self.family.contains(set) {
            Ok(())
        } else {
            Err(Error::FamilyClosure {
                set: self.graph.format_set(set),
            })
        }
    }

    /// Builds the canonical monomial, trimming the set by the ranges of both
    /// words; `None` when the result is zero.
    pub fn term(
        &self,
        coeff: Coeff,
        alpha: LabelWord,
        set: VertexSet,
        beta: LabelWord,
    ) -> Result<Option<Term>> {
        self.require_member(&set)?;
        let mut trimmed = set;
        if !alpha.is_empty() {
            trimmed = trimmed.intersect(&self.graph.range_of_word(&alpha));
        }
        if !beta.is_empty() {
            trimmed = trimmed.intersect(&self.graph.range_of_word(&beta));
        }
        self.require_member(&trimmed)?;
        if trimmed.is_empty() || coeff.is_zero() {
            return Ok(None);
        }
        Ok(Some(Term {
            coeff,
            alpha,
            set: trimmed,
            beta,
        }))
    }

    /// The projection `p_A` as a combination.
    pub fn projection(&self, set: VertexSet) -> Result<LinComb> {
        Ok(LinComb::from_terms(
            self.term(Coeff::one(), LabelWord::empty(), set, LabelWord::empty())?
                .into_iter()
                .collect(),
        ))
    }

    /// Product of two monomials; at most one monomial survives.
    pub fn multiply_terms(&self, left: &Term, right: &Term) -> Result<Option<Term>> {
        let coeff = &left.coeff * &right.coeff;
        if let Some(w) = left.beta.strip_prefix(&right.alpha) {
            // right inner word extends the left one by w: slide the left
            // projection along w and fuse
            let slid = self.relative_range_in_family(&left.set, &w)?;
            self.term(
                coeff,
                left.alpha.concat(&w),
                slid.intersect(&right.set),
                right.beta.clone(),
            )
        } else if let Some(w) = right.alpha.strip_prefix(&left.beta) {
            let slid = self.relative_range_in_family(&right.set, &w)?;
            self.term(
                coeff,
                left.alpha.clone(),
                left.set.intersect(&slid),
                right.beta.concat(&w),
            )
        } else {
            // incomparable inner words annihilate
            Ok(None)
        }
    }

    fn relative_range_in_family(&self, set: &VertexSet, word: &LabelWord) -> Result<VertexSet> {
        let out = self.graph.relative_range(set, word);
        self.require_member(&out)?;
        Ok(out)
    }

    pub fn multiply(&self, left: &LinComb, right: &LinComb) -> Result<LinComb> {
        let mut out = Vec::new();
        for l in left.terms() {
            for r in right.terms() {
                if let Some(t) = self.multiply_terms(l, r)? {
                    out.push(t);
                }
            }
        }
        Ok(LinComb::from_terms(out))
    }

    /// One application of `p_A = Σ_a s_a p_{r(A,a)} s_a^*` inside a
    /// monomial: `s_α p_A s_β^* = Σ_a s_{α·a} p_{r(A,a)} s_{β·a}^*`.
    pub fn expand_term(&self, term: &Term) -> Result<LinComb> {
        let mut out = Vec::new();
        for label in self.graph.out_labels(&term.set) {
            let range = self.graph.step_set(&term.set, label);
            self.require_member(&range)?;
            let mut alpha = term.alpha.clone();
            alpha.push(label);
            let mut beta = term.beta.clone();
            beta.push(label);
            if let Some(t) = self.term(term.coeff.clone(), alpha, range, beta)? {
                out.push(t);
            }
        }
        Ok(LinComb::from_terms(out))
    }

    /// Rewrites the combination so that every left word has length exactly
    /// `depth` (which must dominate the current maximum).
    pub fn expand_to_depth(&self, x: &LinComb, depth: usize) -> Result<LinComb> {
        let mut out = Vec::new();
        for t in x.terms() {
            assert!(t.alpha.len() <= depth, "depth must dominate the terms");
            let mut pending = vec![t.clone()];
            while let Some(t) = pending.pop() {
                if out.len() >= self.caps.max_family {
                    return Err(Error::ResourceExceeded {
                        what: "expanded monomials",
                        cap: self.caps.max_family,
                        flag: "--cap-family",
                    });
                }
                if t.alpha.len() == depth {
                    out.push(t);
                } else {
                    pending.extend(self.expand_term(&t)?.terms().iter().cloned());
                }
            }
        }
        Ok(LinComb::from_terms(out))
    }

    /// Decides vanishing by expanding to a uniform left depth and checking
    /// that, within each pair of outer words, the coefficient mass on every
    /// vertex cancels.
    pub fn is_zero(&self, x: &LinComb) -> Result<bool> {
        let depth = x.terms().iter().map(|t| t.alpha.len()).max().unwrap_or(0);
        let uniform = self.expand_to_depth(x, depth)?;
        let mut mass: BTreeMap<(LabelWord, LabelWord, u32), Coeff> = BTreeMap::new();
        for t in uniform.terms() {
            for v in t.set.iter() {
                *mass
                    .entry((t.alpha.clone(), t.beta.clone(), v.0))
                    .or_insert_with(Coeff::zero) += &t.coeff;
            }
        }
        Ok(mass.values().all(|c| c.is_zero()))
    }

    pub fn equivalent(&self, x: &LinComb, y: &LinComb) -> Result<bool> {
        self.is_zero(&x.sub(y))
    }

    /// Renders a monomial in the fixed layout, e.g.
    /// `s[a1.a3] p{v4,v5} s*[a3]`; unit coefficients and empty words are
    /// omitted.
    pub fn format_term(&self, t: &Term) -> String {
        let mut out = String::new();
        if t.coeff != Coeff::one() {
            write!(out, "{} ", t.coeff).unwrap();
        }
        if !t.alpha.is_empty() {
            write!(out, "s[{}] ", self.graph.format_word(&t.alpha)).unwrap();
        }
        write!(out, "p{}", self.graph.format_set(&t.set)).unwrap();
        if !t.beta.is_empty() {
            write!(out, " s*[{}]", self.graph.format_word(&t.beta)).unwrap();
        }
        out
    }

    pub fn format(&self, x: &LinComb) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|t| self.format_term(t))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `s_a` itself, as `s_a p_{r(a)}`.
    pub fn isometry(&self, word: LabelWord) -> Result<LinComb> {
        let range = self.graph.range_of_word(&word);
        self.require_member(&range)?;
        Ok(LinComb::from_terms(
            self.term(Coeff::one(), word, range, LabelWord::empty())?
                .into_iter()
                .collect(),
        ))
    }
}
