//! Multilinear graded polynomials over a fixed set of variable slots.
//!
//! A slot `i` (rendered `x{i+1}`) carries a fixed homogeneous degree taken from
//! the [`DegreeComposition`]. A monomial is a word of distinct slots, so the
//! `S_{n_1} x ... x S_{n_k}` action is a relabeling of keys.

mod parse;
mod proper;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::{Elem, Group};
use crate::rational::{format_q, Q};

pub use parse::parse;
pub use proper::proper_spanning_set;

pub type Word = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{0} is not a slot of the composition")]
    UnknownSlot(usize),
    #[error("slot mismatch: {0}")]
    SlotMismatch(String),
    #[error("non-multilinear: {0}")]
    NonMultilinear(String),
    #[error("not a permutation of the slots: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("operands use overlapping slots")]
    OverlappingSlots,
    #[error("operands live in different compositions")]
    CompositionMismatch,
    #[error("degree mismatch: slot x{slot} has degree {expected} but the substituted word has degree {found}")]
    DegreeMismatch { slot: usize, expected: Elem, found: Elem },
    #[error("slot collision: fresh slot x{0} used twice")]
    SlotCollision(usize),
}

/// Degree assigned to every variable slot, plus the size of the grading group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeComposition {
    order: usize,
    slots: Vec<Elem>,
}

impl DegreeComposition {
    pub fn new(order: usize, slots: Vec<Elem>) -> Self {
        assert!(slots.iter().all(|&g| g < order), "slot degree outside the group");
        DegreeComposition { order, slots }
    }

    /// Canonical representative of an aggregate `(n_1, ..., n_k)`: slots sorted
    /// by degree index.
    pub fn from_aggregate(aggregate: &[usize]) -> Self {
        let slots = aggregate.iter().enumerate().flat_map(|(g, &c)| std::iter::repeat_n(g, c)).collect();
        DegreeComposition { order: aggregate.len(), slots }
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn slots(&self) -> &[Elem] {
        &self.slots
    }

    pub fn degree(&self, slot: usize) -> Elem {
        self.slots[slot]
    }

    pub fn aggregate(&self) -> Vec<usize> {
        let mut counts = vec![0; self.order];
        for &g in &self.slots {
            counts[g] += 1;
        }
        counts
    }

    /// Slots of degree `g`, in increasing order.
    pub fn slots_of_degree(&self, g: Elem) -> Vec<usize> {
        (0..self.n()).filter(|&s| self.slots[s] == g).collect()
    }

    /// Group degree of a word of slots.
    pub fn word_degree(&self, group: &Group, word: &[usize]) -> Elem {
        group.product(word.iter().map(|&s| self.slots[s]))
    }

    /// Renders the aggregate as `(2_1, 1_g)` using the group's element encoding.
    pub fn describe(&self, group: &Group) -> String {
        let parts: Vec<String> = self
            .aggregate()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(g, c)| format!("{c}_[{}]", group.encode(g)))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Every `(n_1, ..., n_k)` with `sum = n`, lexicographically descending.
pub fn aggregates(order: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in (0..=left).rev() {
            cur.push(c);
            rec(k, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(order, n, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Position of a permutation in [`permutations`] order (Lehmer code).
pub fn permutation_rank(word: &[usize]) -> usize {
    let n = word.len();
    let mut rank = 0;
    let mut fact = 1;
    for i in (0..n).rev() {
        let smaller = word[i + 1..].iter().filter(|&&x| x < word[i]).count();
        rank += smaller * fact;
        fact *= n - i;
    }
    rank
}

/// A homogeneous multilinear polynomial: every term is a word over the same
/// set of slots.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    composition: DegreeComposition,
    terms: BTreeMap<Word, Q>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl MultiPoly {
    pub fn zero(composition: &DegreeComposition) -> Self {
        MultiPoly { composition: composition.clone(), terms: BTreeMap::new() }
    }

    /// A single word with coefficient 1; `word` must be a permutation of all slots.
    pub fn monomial(composition: &DegreeComposition, word: &[usize]) -> Result<Self, PolyError> {
        let mut sorted = word.to_vec();
        sorted.sort_unstable();
        if sorted != (0..composition.n()).collect::<Vec<_>>() {
            return Err(PolyError::NotAPermutation(word.to_vec()));
        }
        Ok(Self::word(composition, word))
    }

    /// A word over some of the slots (must be distinct).
    pub fn word(composition: &DegreeComposition, word: &[usize]) -> Self {
        debug_assert!(word.iter().collect::<BTreeSet<_>>().len() == word.len());
        debug_assert!(word.iter().all(|&s| s < composition.n()));
        let mut terms = BTreeMap::new();
        terms.insert(word.to_vec(), Q::one());
        MultiPoly { composition: composition.clone(), terms }
    }

    pub fn var(composition: &DegreeComposition, slot: usize) -> Self {
        Self::word(composition, &[slot])
    }

    /// Builds a polynomial from raw terms, dropping zero coefficients.
    pub fn from_terms(composition: &DegreeComposition, terms: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut p = Self::zero(composition);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn composition(&self) -> &DegreeComposition {
        &self.composition
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[usize]) -> Q {
        self.terms.get(word).cloned().unwrap_or_else(Q::zero)
    }

    /// Slots used by the terms (empty for the zero polynomial).
    pub fn slot_set(&self) -> BTreeSet<usize> {
        self.terms.keys().next().map(|w| w.iter().copied().collect()).unwrap_or_default()
    }

    /// Whether the nonzero polynomial uses every slot of its composition.
    pub fn is_full(&self) -> bool {
        self.terms.keys().next().is_none_or(|w| w.len() == self.composition.n())
    }

    fn same_shape(&self, other: &Self) -> Result<(), PolyError> {
        if self.composition != other.composition {
            return Err(PolyError::CompositionMismatch);
        }
        if !self.is_zero() && !other.is_zero() && self.slot_set() != other.slot_set() {
            return Err(PolyError::NonMultilinear("sum of terms over different variable sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(&self.composition);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect();
        MultiPoly { composition: self.composition.clone(), terms }
    }

    /// Concatenation product; operands must use disjoint slots.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.composition != other.composition {
            return Err(PolyError::CompositionMismatch);
        }
        if !self.slot_set().is_disjoint(&other.slot_set()) {
            return Err(PolyError::OverlappingSlots);
        }
        let mut out = Self::zero(&self.composition);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w: Word = u.iter().chain(v).copied().collect();
                out.add_term(w, a * b);
            }
        }
        Ok(out)
    }

    /// `pq - qp`.
    pub fn commutator(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `pq + qp`.
    pub fn jordan(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// `[p_1, ..., p_m] = [[p_1, ..., p_{m-1}], p_m]`; a single entry is returned as is.
    pub fn left_normed(items: &[Self]) -> Result<Self, PolyError> {
        let (first, rest) = items.split_first().ok_or_else(|| PolyError::SlotMismatch("empty commutator".into()))?;
        rest.iter().try_fold(first.clone(), |acc, p| acc.commutator(p))
    }

    /// Left-normed commutator of single variables.
    pub fn commutator_of_slots(composition: &DegreeComposition, slots: &[usize]) -> Self {
        let vars: Vec<Self> = slots.iter().map(|&s| Self::var(composition, s)).collect();
        Self::left_normed(&vars).expect("distinct slots")
    }

    /// Relabels slot `s` as `perm[s]`. The permutation must preserve slot degrees.
    pub fn act(&self, perm: &[usize]) -> Self {
        debug_assert!((0..perm.len()).all(|s| self.composition.degree(s) == self.composition.degree(perm[s])));
        let terms = self.terms.iter().map(|(w, c)| (w.iter().map(|&s| perm[s]).collect(), c.clone())).collect();
        MultiPoly { composition: self.composition.clone(), terms }
    }

    /// Substitutes slot `i` by the word `assignment[i]` over the slots of
    /// `target`; the word's degree must equal the slot's degree and words must
    /// be pairwise disjoint.
    pub fn substitute(
        &self,
        group: &Group,
        assignment: &[Word],
        target: &DegreeComposition,
    ) -> Result<Self, PolyError> {
        if assignment.len() != self.composition.n() {
            return Err(PolyError::SlotMismatch(format!(
                "assignment covers {} slots, polynomial has {}",
                assignment.len(),
                self.composition.n()
            )));
        }
        let mut used = BTreeSet::new();
        for (slot, word) in assignment.iter().enumerate() {
            for &s in word {
                if s >= target.n() {
                    return Err(PolyError::UnknownSlot(s + 1));
                }
                if !used.insert(s) {
                    return Err(PolyError::SlotCollision(s + 1));
                }
            }
            if word.is_empty() {
                return Err(PolyError::SlotMismatch(format!("empty substitution for x{}", slot + 1)));
            }
            let found = target.word_degree(group, word);
            let expected = self.composition.degree(slot);
            if found != expected {
                return Err(PolyError::DegreeMismatch { slot: slot + 1, expected, found });
            }
        }
        Ok(self.substitute_unchecked(assignment, target))
    }

    pub(crate) fn substitute_unchecked(&self, assignment: &[Word], target: &DegreeComposition) -> Self {
        let mut out = Self::zero(target);
        for (w, c) in &self.terms {
            let img: Word = w.iter().flat_map(|&s| assignment[s].iter().copied()).collect();
            out.add_term(img, c.clone());
        }
        out
    }

    /// Coordinates in the monomial basis of the full component, indexed by
    /// [`permutation_rank`].
    pub fn to_vector(&self) -> Vec<Q> {
        let n = self.composition.n();
        let size: usize = (1..=n).product();
        let mut v = vec![Q::zero(); size];
        for (w, c) in &self.terms {
            assert_eq!(w.len(), n, "to_vector needs a polynomial in all slots");
            v[permutation_rank(w)] = c.clone();
        }
        v
    }

    pub fn from_vector(composition: &DegreeComposition, v: &[Q]) -> Self {
        let perms = permutations(composition.n());
        Self::from_terms(composition, perms.into_iter().zip(v.iter().cloned()))
    }

    /// Canonical text: terms ordered by word, coefficients as `p/q`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word = w.iter().map(|s| format!("*x{}", s + 1)).collect::<String>();
            let mag = format_q(&c.abs());
            match (i, c.is_negative()) {
                (0, false) => out.push_str(&format!("{mag}{word}")),
                (0, true) => out.push_str(&format!("-{mag}{word}")),
                (_, false) => out.push_str(&format!(" + {mag}{word}")),
                (_, true) => out.push_str(&format!(" - {mag}{word}")),
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn comp(slots: &[usize]) -> DegreeComposition {
        DegreeComposition::new(4, slots.to_vec())
    }

    #[test]
    fn monomials() {
        let c = comp(&[1, 2]);
        let id = MultiPoly::monomial(&c, &[0, 1]).unwrap();
        let sw = MultiPoly::monomial(&c, &[1, 0]).unwrap();
        assert_ne!(id, sw);
        assert_eq!(id.render(), "1/1*x1*x2");
        assert_eq!(sw.render(), "1/1*x2*x1");
        assert!(MultiPoly::monomial(&c, &[0, 0]).is_err());
        assert_eq!(permutations(3).len(), 6);
        for (i, p) in permutations(4).iter().enumerate() {
            assert_eq!(permutation_rank(p), i);
        }
    }

    #[test]
    fn commutators() {
        let c = comp(&[0, 0, 0]);
        let (x1, x2, x3) = (MultiPoly::var(&c, 0), MultiPoly::var(&c, 1), MultiPoly::var(&c, 2));
        let b = x1.commutator(&x2).unwrap();
        assert_eq!(b.coefficient(&[0, 1]), q(1));
        assert_eq!(b.coefficient(&[1, 0]), q(-1));
        let j = x1.jordan(&x2).unwrap();
        assert_eq!(j.coefficient(&[1, 0]), q(1));
        let t = MultiPoly::left_normed(&[x1.clone(), x2.clone(), x3.clone()]).unwrap();
        // [[x1,x2],x3] = x1x2x3 - x2x1x3 - x3x1x2 + x3x2x1
        assert_eq!(t.len(), 4);
        assert_eq!(t.coefficient(&[0, 1, 2]), q(1));
        assert_eq!(t.coefficient(&[1, 0, 2]), q(-1));
        assert_eq!(t.coefficient(&[2, 0, 1]), q(-1));
        assert_eq!(t.coefficient(&[2, 1, 0]), q(1));
        assert_eq!(x1.commutator(&x1), Err(PolyError::OverlappingSlots));
    }

    #[test]
    fn substitution() {
        let g = Group::cyclic_product(&[2, 2]).unwrap();
        // [x1 (deg 1), x2 (deg g)], substitute x1 -> x3 x4 with deg h, h^-1 = h
        let c = comp(&[0, 2]);
        let p = MultiPoly::var(&c, 0).commutator(&MultiPoly::var(&c, 1)).unwrap();
        let same = p.substitute(&g, &[vec![0], vec![1]], &c).unwrap();
        assert_eq!(same, p);
        let target = comp(&[2, 1, 1]);
        let r = p.substitute(&g, &[vec![1, 2], vec![0]], &target).unwrap();
        assert_eq!(r.len(), 2);
        assert!(p.substitute(&g, &[vec![1], vec![0]], &target).is_err());
        assert!(matches!(
            p.substitute(&g, &[vec![1, 2], vec![2]], &target),
            Err(PolyError::SlotCollision(_)) | Err(PolyError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn aggregate_enumeration() {
        assert_eq!(aggregates(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(aggregates(4, 4).len(), 35);
        assert_eq!(aggregates(1, 3), vec![vec![3]]);
        let c = DegreeComposition::from_aggregate(&[1, 0, 2]);
        assert_eq!(c.slots(), &[0, 2, 2]);
        assert_eq!(c.aggregate(), vec![1, 0, 2]);
    }
}
