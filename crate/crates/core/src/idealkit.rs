//! Multilinear consequences of graded identities, degree-bounded
//! certification of identity bases, and T_G-equivalence tests.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::codim::{admissible_tuples, component_codim, evaluation_matrix, monomial_matrix};
use crate::freepoly::{aggregates, permutation_rank, permutations, DegreeComposition, MultiPoly, Word};
use crate::galgebra::GradedAlgebra;
use crate::group::Elem;
use crate::linalg::{EchelonBasis, RationalMatrix};
use crate::parallel;
use crate::rational::{format_q, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdealError {
    #[error("generator {generator} is not an identity: {witness}")]
    NotAnIdentity { generator: String, witness: String },
    #[error("algebras are graded by different groups")]
    GroupMismatch,
    #[error("generator composition does not match the algebra's group")]
    CompositionMismatch,
    #[error("max degree {max} is below the generator degree {degree}")]
    DegreeTooSmall { max: usize, degree: usize },
}

/// Multilinear generators of a T_G-ideal. `outside_support` stands for the
/// family `x_{1,r}`, one generator per degree `r` outside the support of the
/// algebra the set is applied to.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GeneratorSet {
    pub generators: Vec<MultiPoly>,
    pub outside_support: bool,
}

impl GeneratorSet {
    pub fn new(generators: Vec<MultiPoly>, outside_support: bool) -> Self {
        GeneratorSet { generators, outside_support }
    }

    /// Number of removable entries: every generator, plus the marker if set.
    pub fn entries(&self) -> usize {
        self.generators.len() + usize::from(self.outside_support)
    }

    /// The set with entry `i` dropped (indices past the generators drop the marker).
    pub fn without(&self, i: usize) -> Self {
        let mut out = self.clone();
        if i < out.generators.len() {
            out.generators.remove(i);
        } else {
            out.outside_support = false;
        }
        out
    }

    pub fn describe_entry(&self, i: usize) -> String {
        self.generators.get(i).map_or_else(|| "x1 of every degree outside the support".to_string(), MultiPoly::render)
    }

    /// Concrete generators for `a`, with the marker expanded.
    pub fn expand(&self, a: &GradedAlgebra) -> Vec<MultiPoly> {
        let mut out = self.generators.clone();
        if self.outside_support {
            let order = a.group().order();
            for r in a.support().complement() {
                out.push(MultiPoly::var(&DegreeComposition::new(order, vec![r]), 0));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.generators.iter().map(|g| g.composition().n()).max().unwrap_or(0).max(usize::from(self.outside_support))
    }
}

/// Ordered tuples of pairwise disjoint nonempty words over `free` slots, the
/// `i`-th word of degree `degrees[i]`.
fn disjoint_words(
    a_group: &crate::group::Group,
    target: &DegreeComposition,
    degrees: &[Elem],
    used: &mut Vec<bool>,
    cur: &mut Vec<Word>,
    out: &mut Vec<Vec<Word>>,
) {
    let Some((&want, rest)) = degrees.split_first() else {
        out.push(cur.clone());
        return;
    };
    let mut word = Vec::new();
    grow_word(a_group, target, want, used, &mut word, &mut |w, used| {
        cur.push(w.to_vec());
        disjoint_words(a_group, target, rest, used, cur, out);
        cur.pop();
    });
}

fn grow_word(
    group: &crate::group::Group,
    target: &DegreeComposition,
    want: Elem,
    used: &mut Vec<bool>,
    word: &mut Word,
    emit: &mut dyn FnMut(&[usize], &mut Vec<bool>),
) {
    if !word.is_empty() && target.word_degree(group, word) == want {
        let w = word.clone();
        emit(&w, used);
    }
    for s in 0..used.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        word.push(s);
        grow_word(group, target, want, used, word, emit);
        word.pop();
        used[s] = false;
    }
}

/// Spanning set (as coefficient vectors) of the multilinear part of the
/// T_G-ideal generated by `gens` in the component `target`.
pub fn consequence_vectors(group: &crate::group::Group, gens: &[MultiPoly], target: &DegreeComposition) -> Vec<Vec<Q>> {
    let n = target.n();
    let size: usize = (1..=n).product();
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    let mut out = Vec::new();
    for f in gens {
        let d = f.composition().n();
        if d > n || d == 0 {
            continue;
        }
        let mut assignments = Vec::new();
        disjoint_words(group, target, f.composition().slots(), &mut vec![false; n], &mut Vec::new(), &mut assignments);
        for assignment in assignments {
            let inner: Vec<(Word, Q)> = f
                .terms()
                .iter()
                .map(|(w, c)| (w.iter().flat_map(|&s| assignment[s].iter().copied()).collect(), c.clone()))
                .collect();
            let covered: HashSet<usize> = assignment.iter().flatten().copied().collect();
            let rest: Vec<usize> = (0..n).filter(|s| !covered.contains(s)).collect();
            for order in permutations(rest.len()) {
                let outer: Vec<usize> = order.iter().map(|&i| rest[i]).collect();
                for split in 0..=outer.len() {
                    let mut v = vec![Q::default(); size];
                    for (w, c) in &inner {
                        let full: Word = outer[..split].iter().chain(w).chain(&outer[split..]).copied().collect();
                        v[permutation_rank(&full)] += c;
                    }
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

pub fn consequences_in_component(
    group: &crate::group::Group,
    gens: &[MultiPoly],
    target: &DegreeComposition,
) -> Vec<MultiPoly> {
    consequence_vectors(group, gens, target).iter().map(|v| MultiPoly::from_vector(target, v)).collect()
}

/// Human-readable first nonzero evaluation of `p` on `a`, if any.
pub fn nonvanishing_evaluation(a: &GradedAlgebra, p: &MultiPoly) -> Option<String> {
    let comp = p.composition();
    let table = evaluation_matrix(a, std::slice::from_ref(p), comp).ok()?;
    let dim = a.dim();
    let row = table.matrix.row(0);
    let block = (0..table.tuples.len()).find(|&t| row[t * dim..(t + 1) * dim].iter().any(|x| *x != Q::default()))?;
    let args: Vec<String> =
        table.tuples[block].iter().enumerate().map(|(i, &b)| format!("x{}={}", i + 1, a.labels()[b])).collect();
    let value: Vec<String> = (0..dim)
        .filter(|&c| row[block * dim + c] != Q::default())
        .map(|c| format!("{}*{}", format_q(&row[block * dim + c]), a.labels()[c]))
        .collect();
    Some(format!("{} gives {}", args.join(", "), value.join(" + ")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub n: usize,
    pub aggregate: Vec<usize>,
    pub consequence_rank: usize,
    pub identity_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_degree: usize,
    pub pass: bool,
    pub components: Vec<ComponentCheck>,
    /// An identity of the algebra outside the consequence span, from the first failing component.
    pub witness: Option<String>,
    pub failing_component: Option<Vec<usize>>,
}

/// Certifies that `gens` generate the identities of `a` in every multilinear
/// component of degree `1..=max_degree`.
pub fn verify_basis(
    a: &GradedAlgebra,
    gens: &GeneratorSet,
    max_degree: usize,
) -> Result<VerificationReport, IdealError> {
    let order = a.group().order();
    let concrete = gens.expand(a);
    if concrete.iter().any(|g| g.composition().group_order() != order) {
        return Err(IdealError::CompositionMismatch);
    }
    if gens.max_degree() > max_degree {
        return Err(IdealError::DegreeTooSmall { max: max_degree, degree: gens.max_degree() });
    }
    for g in &concrete {
        if let Some(witness) = nonvanishing_evaluation(a, g) {
            return Err(IdealError::NotAnIdentity { generator: g.render(), witness });
        }
    }
    let jobs: Vec<(usize, Vec<usize>)> =
        (1..=max_degree).flat_map(|n| aggregates(order, n).into_iter().map(move |agg| (n, agg))).collect();
    let results = parallel::map(&jobs, |(n, agg)| check_component(a, &concrete, *n, agg));
    let mut components = Vec::new();
    let mut witness = None;
    let mut failing_component = None;
    for (check, w) in results {
        if !check.pass && failing_component.is_none() {
            failing_component = Some(check.aggregate.clone());
            witness = w;
        }
        components.push(check);
    }
    Ok(VerificationReport { max_degree, pass: failing_component.is_none(), components, witness, failing_component })
}

fn check_component(a: &GradedAlgebra, gens: &[MultiPoly], n: usize, agg: &[usize]) -> (ComponentCheck, Option<String>) {
    let comp = DegreeComposition::from_aggregate(agg);
    let size: usize = (1..=n).product();
    let identity_dim = size - component_codim(a, &comp);
    let mut span = EchelonBasis::new(size);
    for v in consequence_vectors(a.group(), gens, &comp) {
        span.insert(v);
        if span.rank() == identity_dim {
            break;
        }
    }
    let pass = span.rank() == identity_dim;
    let witness = (!pass).then(|| {
        let (_, m) = monomial_matrix(a, &comp);
        m.left_kernel()
            .into_iter()
            .find(|v| !span.contains(v))
            .map(|v| MultiPoly::from_vector(&comp, &v).render())
            .unwrap_or_default()
    });
    (ComponentCheck { n, aggregate: agg.to_vec(), consequence_rank: span.rank(), identity_dim, pass }, witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub n: usize,
    pub aggregate: Vec<usize>,
    /// A multilinear polynomial that is an identity of exactly one side.
    pub witness: String,
    /// `"A"` or `"B"`: the side the witness is an identity of.
    pub identity_of: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub max_degree: usize,
    pub equivalent: bool,
    pub divergence: Option<Divergence>,
}

/// Compares the identity spaces of `a` and `b` in every component up to `max_degree`.
pub fn tg_equivalent_upto(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    max_degree: usize,
) -> Result<EquivalenceReport, IdealError> {
    if a.group() != b.group() {
        return Err(IdealError::GroupMismatch);
    }
    let order = a.group().order();
    for n in 1..=max_degree {
        let aggs = aggregates(order, n);
        let found = parallel::map(&aggs, |agg| component_divergence(a, b, agg));
        if let Some((agg, (witness, side))) = aggs.into_iter().zip(found).find_map(|(agg, d)| d.map(|d| (agg, d))) {
            let divergence = Divergence { n, aggregate: agg, witness, identity_of: side.to_string() };
            return Ok(EquivalenceReport { max_degree, equivalent: false, divergence: Some(divergence) });
        }
    }
    Ok(EquivalenceReport { max_degree, equivalent: true, divergence: None })
}

fn component_divergence(a: &GradedAlgebra, b: &GradedAlgebra, agg: &[usize]) -> Option<(String, &'static str)> {
    let comp = DegreeComposition::from_aggregate(agg);
    let (_, ma) = monomial_matrix(a, &comp);
    let (_, mb) = monomial_matrix(b, &comp);
    let (ra, rb) = (ma.rank(), mb.rank());
    if ra == rb && ma.hconcat(&mb).rank() == ra {
        return None;
    }
    let escapes = |kernel_of: &RationalMatrix, other: &RationalMatrix| {
        kernel_of.left_kernel().into_iter().find(|v| other.left_mul(v).iter().any(|x| *x != Q::default()))
    };
    if let Some(v) = escapes(&ma, &mb) {
        return Some((MultiPoly::from_vector(&comp, &v).render(), "A"));
    }
    let v = escapes(&mb, &ma).expect("identity spaces differ");
    Some((MultiPoly::from_vector(&comp, &v).render(), "B"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumCheckReport {
    pub max_degree: usize,
    pub holds: bool,
    /// Aggregate of the first component where the law fails.
    pub failing_component: Option<Vec<usize>>,
}

/// Checks that the identities of the direct sum are exactly the common
/// identities of the parts, component by component.
pub fn direct_sum_identity_check(parts: &[GradedAlgebra], max_degree: usize) -> Result<SumCheckReport, IdealError> {
    let Some((first, rest)) = parts.split_first() else {
        return Ok(SumCheckReport { max_degree, holds: true, failing_component: None });
    };
    if rest.iter().any(|p| p.group() != first.group()) {
        return Err(IdealError::GroupMismatch);
    }
    let mut sum = first.clone();
    for p in rest {
        sum = sum.direct_sum(p).map_err(|_| IdealError::GroupMismatch)?;
    }
    let order = first.group().order();
    for n in 1..=max_degree {
        let aggs = aggregates(order, n);
        let ok = parallel::map(&aggs, |agg| {
            let comp = DegreeComposition::from_aggregate(agg);
            let ms = monomial_matrix(&sum, &comp).1;
            let blocks: Vec<RationalMatrix> = parts.iter().map(|p| monomial_matrix(p, &comp).1).collect();
            let joint = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, m| acc.hconcat(m));
            let kernel = ms.left_kernel();
            joint.rank() == ms.rank()
                && kernel.iter().all(|v| blocks.iter().all(|m| m.left_mul(v).iter().all(|x| *x == Q::default())))
        });
        if let Some(agg) = aggs.into_iter().zip(ok).find(|(_, ok)| !ok).map(|(agg, _)| agg) {
            return Ok(SumCheckReport { max_degree, holds: false, failing_component: Some(agg) });
        }
    }
    Ok(SumCheckReport { max_degree, holds: true, failing_component: None })
}

/// Result of evaluating one polynomial on an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub polynomial: String,
    pub is_identity: bool,
    pub witness: Option<String>,
    pub tuples_checked: usize,
}

pub fn check_identity(a: &GradedAlgebra, p: &MultiPoly) -> Result<IdentityCheck, IdealError> {
    if p.composition().group_order() != a.group().order() {
        return Err(IdealError::CompositionMismatch);
    }
    let witness = nonvanishing_evaluation(a, p);
    Ok(IdentityCheck {
        polynomial: p.render(),
        is_identity: witness.is_none(),
        witness,
        tuples_checked: admissible_tuples(a, p.composition()).len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn rank(vs: &[Vec<Q>], cols: usize) -> usize {
        RationalMatrix::from_rows(cols, vs.to_vec()).rank()
    }

    #[test]
    fn commutator_consequences() {
        let g = Group::trivial();
        let c = DegreeComposition::from_aggregate(&[2]);
        let gens = vec![MultiPoly::commutator_of_slots(&c, &[0, 1])];
        let target = DegreeComposition::from_aggregate(&[3]);
        assert_eq!(rank(&consequence_vectors(&g, &gens, &target), 6), 5);
    }

    #[test]
    fn outside_support_consequences() {
        let z3 = Group::cyclic(3).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z3, 2, 1).unwrap();
        let set = GeneratorSet::new(vec![], true);
        let gens = set.expand(&c2);
        assert_eq!(gens.len(), 1);
        let target = DegreeComposition::new(3, vec![1, 2]);
        assert_eq!(rank(&consequence_vectors(&z3, &gens, &target), 2), 2);
    }

    #[test]
    fn nilpotent_consequences() {
        let z2 = Group::cyclic(2).unwrap();
        let c = DegreeComposition::from_aggregate(&[0, 2]);
        let gens = vec![MultiPoly::word(&c, &[0, 1])];
        let target = DegreeComposition::from_aggregate(&[0, 3]);
        let cons = consequence_vectors(&z2, &gens, &target);
        assert_eq!(rank(&cons, 6), 6);
        for p in consequences_in_component(&z2, &gens, &target) {
            assert!(p.is_full());
        }
    }

    #[test]
    fn small_basis_verification() {
        let z2 = Group::cyclic(2).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z2, 2, 1).unwrap();
        let comm = MultiPoly::commutator_of_slots(&DegreeComposition::from_aggregate(&[2, 0]), &[0, 1]);
        let comm_mixed = MultiPoly::commutator_of_slots(&DegreeComposition::from_aggregate(&[1, 1]), &[0, 1]);
        let square = MultiPoly::word(&DegreeComposition::from_aggregate(&[0, 2]), &[0, 1]);
        let set = GeneratorSet::new(vec![comm, comm_mixed, square], true);
        let report = verify_basis(&c2, &set, 3).unwrap();
        assert!(report.pass, "{report:?}");
        let report = verify_basis(&c2, &set.without(2), 3).unwrap();
        assert!(!report.pass);
        assert_eq!(report.failing_component, Some(vec![0, 2]));
        assert!(report.witness.is_some());
        let bogus = GeneratorSet::new(vec![MultiPoly::var(&DegreeComposition::from_aggregate(&[0, 1]), 0)], false);
        assert!(matches!(verify_basis(&c2, &bogus, 2), Err(IdealError::NotAnIdentity { .. })));
    }

    #[test]
    fn equivalence_and_sums() {
        let z2 = Group::cyclic(2).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z2, 2, 1).unwrap();
        let c3 = GradedAlgebra::truncated_polynomial(&z2, 3, 1).unwrap();
        assert!(tg_equivalent_upto(&c2, &c2, 3).unwrap().equivalent);
        let r = tg_equivalent_upto(&c2, &c3, 2).unwrap();
        let d = r.divergence.unwrap();
        assert_eq!(
            (d.n, d.aggregate.as_slice(), d.witness.as_str(), d.identity_of.as_str()),
            (2, &[0, 2][..], "1/1*x1*x2", "A")
        );
        assert!(direct_sum_identity_check(&[c2.clone(), c3.clone()], 3).unwrap().holds);
        let z3 = Group::cyclic(3).unwrap();
        let other = GradedAlgebra::field(&z3);
        assert_eq!(tg_equivalent_upto(&c2, &other, 1), Err(IdealError::GroupMismatch));
        let check =
            check_identity(&c3, &MultiPoly::word(&DegreeComposition::from_aggregate(&[0, 2]), &[0, 1])).unwrap();
        assert!(!check.is_identity);
        assert_eq!(check.witness.as_deref(), Some("x1=E, x2=E gives 1/1*E^2"));
    }
}
