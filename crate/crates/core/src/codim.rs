//! Evaluation of multilinear polynomials on a graded algebra, codimensions
//! and proper codimensions.
//!
//! Everything reduces to one matrix per degree composition: rows are the `n!`
//! monomials of the component (in [`permutations`] order), columns are pairs
//! (basis tuple respecting slot degrees, output coordinate). A polynomial is an
//! identity iff its coefficient vector lies in the left kernel of that matrix.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::freepoly::{aggregates, permutations, proper_spanning_set, DegreeComposition, MultiPoly};
use crate::galgebra::GradedAlgebra;
use crate::linalg::RationalMatrix;
use crate::parallel;
use crate::rational::{binomial, factorial, format_q, multinomial, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodimError {
    #[error("polynomial is not in the requested composition")]
    CompositionMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("growth exceeds n^{t}: proper codimension gamma_{n} = {gamma} is nonzero")]
    GrowthExceedsT { t: usize, n: usize, gamma: usize },
}

/// Evaluations of a list of polynomials on every admissible basis tuple.
#[derive(Clone, Debug)]
pub struct EvaluationTable {
    pub composition: DegreeComposition,
    /// Basis tuples indexing the column blocks; each block has `dim` columns.
    pub tuples: Vec<Vec<usize>>,
    pub matrix: RationalMatrix,
}

impl EvaluationTable {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Indices of rows that vanish identically.
    pub fn identity_rows(&self) -> Vec<usize> {
        (0..self.matrix.rows()).filter(|&i| self.matrix.row_is_zero(i)).collect()
    }
}

/// Basis tuples `(b_{s_1}, ..., b_{s_n})` with `deg b_{s_i}` equal to the
/// degree of slot `i`, in lexicographic order.
pub fn admissible_tuples(a: &GradedAlgebra, composition: &DegreeComposition) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = composition.slots().iter().map(|&g| a.basis_of_degree(g)).collect();
    let mut out = vec![Vec::new()];
    for c in &choices {
        out = out.iter().flat_map(|t: &Vec<usize>| c.iter().map(move |&b| [t.as_slice(), &[b]].concat())).collect();
    }
    out
}

/// The `n! x (tuples * dim)` matrix of all monomial evaluations.
pub fn monomial_matrix(a: &GradedAlgebra, composition: &DegreeComposition) -> (Vec<Vec<usize>>, RationalMatrix) {
    let n = composition.n();
    let dim = a.dim();
    let tuples = admissible_tuples(a, composition);
    let rows: usize = (1..=n).product();
    let mut m = RationalMatrix::zeros(rows, tuples.len() * dim);
    for (t, tuple) in tuples.iter().enumerate() {
        let mut row = 0;
        // Depth-first over words in lexicographic order, reusing prefix products.
        let mut used = vec![false; n];
        fill_words(a, tuple, &mut used, None, &mut |value| {
            for (c, x) in value.iter().enumerate() {
                if !x.is_zero() {
                    m.set(row, t * dim + c, x.clone());
                }
            }
            row += 1;
        });
    }
    (tuples, m)
}

fn fill_words(a: &GradedAlgebra, tuple: &[usize], used: &mut [bool], prefix: Option<&[Q]>, emit: &mut dyn FnMut(&[Q])) {
    if used.iter().all(|&u| u) {
        emit(prefix.expect("n >= 1"));
        return;
    }
    for s in 0..used.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        let next = match prefix {
            None => a.basis_vector(tuple[s]),
            Some(v) => a.mul_vec_basis(v, tuple[s]),
        };
        if next.iter().all(Zero::is_zero) {
            // every completion of this prefix is zero as well
            let remaining = used.iter().filter(|&&u| !u).count();
            let skip: usize = (1..=remaining).product();
            let zero = vec![Q::zero(); a.dim()];
            for _ in 0..skip {
                emit(&zero);
            }
        } else {
            fill_words(a, tuple, used, Some(&next), emit);
        }
        used[s] = false;
    }
}

fn outside_support(a: &GradedAlgebra, composition: &DegreeComposition) -> bool {
    let support = a.support();
    composition.slots().iter().any(|&g| !support.contains(g))
}

/// Coefficient vectors of `polys` times the monomial matrix.
pub fn evaluation_matrix(
    a: &GradedAlgebra,
    polys: &[MultiPoly],
    composition: &DegreeComposition,
) -> Result<EvaluationTable, CodimError> {
    if polys.iter().any(|p| p.composition() != composition || !p.is_full()) {
        return Err(CodimError::CompositionMismatch);
    }
    if composition.n() == 0 {
        return Err(CodimError::Precondition("evaluation needs at least one variable".into()));
    }
    let (tuples, m) = monomial_matrix(a, composition);
    let coeffs: Vec<Vec<Q>> = polys.iter().map(|p| p.to_vector()).collect();
    Ok(EvaluationTable { composition: composition.clone(), tuples, matrix: m.left_mul_all(&coeffs) })
}

/// `dim P_{n_1,...,n_k}(A)` for the slots of `composition`.
pub fn component_codim(a: &GradedAlgebra, composition: &DegreeComposition) -> usize {
    if composition.n() == 0 {
        return usize::from(a.dim() > 0);
    }
    if outside_support(a, composition) {
        return 0;
    }
    monomial_matrix(a, composition).1.rank()
}

/// `gamma_{n_1,...,n_k}(A)`.
pub fn proper_component_codim(a: &GradedAlgebra, composition: &DegreeComposition) -> usize {
    if composition.n() == 0 {
        return usize::from(a.is_unital());
    }
    if outside_support(a, composition) {
        return 0;
    }
    let spanning: Vec<Vec<Q>> = proper_spanning_set(composition).iter().map(|p| p.to_vector()).collect();
    if spanning.is_empty() {
        return 0;
    }
    monomial_matrix(a, composition).1.left_mul_all(&spanning).rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRank {
    pub aggregate: Vec<usize>,
    pub rank: usize,
    pub weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    pub n: usize,
    pub codim: usize,
    pub per_component: Vec<ComponentRank>,
}

fn to_usize(x: BigInt) -> usize {
    x.to_usize().expect("count fits in usize")
}

fn weighted_report(a: &GradedAlgebra, n: usize, rank: fn(&GradedAlgebra, &DegreeComposition) -> usize) -> CodimReport {
    let aggs = aggregates(a.group().order(), n);
    let ranks = parallel::map(&aggs, |agg| rank(a, &DegreeComposition::from_aggregate(agg)));
    let per_component: Vec<ComponentRank> = aggs
        .into_iter()
        .zip(ranks)
        .map(|(aggregate, rank)| {
            let weight = to_usize(multinomial(&aggregate));
            ComponentRank { aggregate, rank, weight }
        })
        .collect();
    let codim = per_component.iter().map(|c| c.rank * c.weight).sum();
    CodimReport { n, codim, per_component }
}

/// `c_n^G(A)` with its per-aggregate breakdown.
pub fn codim_report(a: &GradedAlgebra, n: usize) -> CodimReport {
    weighted_report(a, n, component_codim)
}

/// `gamma_n^G(A)` with its per-aggregate breakdown.
pub fn proper_codim_report(a: &GradedAlgebra, n: usize) -> CodimReport {
    weighted_report(a, n, proper_component_codim)
}

pub fn codim(a: &GradedAlgebra, n: usize) -> usize {
    codim_report(a, n).codim
}

pub fn proper_codim(a: &GradedAlgebra, n: usize) -> usize {
    proper_codim_report(a, n).codim
}

/// `sum_i C(n, i) gamma_i(A)`; only meaningful for unital algebras.
pub fn codim_via_proper(a: &GradedAlgebra, n: usize) -> Result<usize, CodimError> {
    if !a.is_unital() {
        return Err(CodimError::Precondition("codimension via proper codimensions needs a unital algebra".into()));
    }
    Ok((0..=n).map(|i| to_usize(binomial(n, i)) * proper_codim(a, i)).sum())
}

/// `c_n^G` as an explicit polynomial in `n`, with the leading-coefficient bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub t: usize,
    pub n_max: usize,
    pub gammas: Vec<usize>,
    /// Coefficients of `c_n` as a polynomial in `n`, constant term first, as `p/q`.
    pub coefficients: Vec<String>,
    pub leading: String,
    pub lower_bound: String,
    pub upper_bound: String,
    pub within_bounds: bool,
    /// `c_n` computed directly from evaluations for `n = 0..=n_max`.
    pub codims: Vec<usize>,
    pub reproduces_codims: bool,
    #[serde(skip)]
    pub exact: GrowthExact,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GrowthExact {
    pub coefficients: Vec<Q>,
    pub leading: Q,
    pub lower_bound: Q,
    pub upper_bound: Q,
}

/// Coefficients of `C(n, i)` as a polynomial in `n`.
pub fn binomial_polynomial(i: usize) -> Vec<Q> {
    // n (n-1) ... (n-i+1) / i!
    let mut p = vec![Q::one()];
    for k in 0..i {
        let mut next = vec![Q::zero(); p.len() + 1];
        for (d, c) in p.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * Q::from_integer(BigInt::from(k));
        }
        p = next;
    }
    let fact = Q::from_integer(factorial(i));
    p.into_iter().map(|c| c / &fact).collect()
}

pub fn evaluate_polynomial(coeffs: &[Q], n: usize) -> Q {
    let x = Q::from_integer(BigInt::from(n));
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * &x + c)
}

/// `sum_{i=0}^t |G|^{t-i} (-1)^i / i!`.
pub fn leading_upper_bound(group_order: usize, t: usize) -> Q {
    (0..=t)
        .map(|i| {
            let term = Q::from_integer(BigInt::from(group_order).pow((t - i) as u32)) / Q::from_integer(factorial(i));
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

pub fn growth_report(a: &GradedAlgebra, t: usize, n_max: usize) -> Result<GrowthReport, CodimError> {
    if !a.is_unital() {
        return Err(CodimError::Precondition("growth report needs a unital algebra".into()));
    }
    let n_max = n_max.max(t);
    let gammas: Vec<usize> = (0..=n_max).map(|i| proper_codim(a, i)).collect();
    if let Some(n) = (t + 1..=n_max).find(|&i| gammas[i] != 0) {
        return Err(CodimError::GrowthExceedsT { t, n, gamma: gammas[n] });
    }
    let mut coeffs = vec![Q::zero(); t + 1];
    for (i, &g) in gammas.iter().enumerate().take(t + 1) {
        for (d, c) in binomial_polynomial(i).into_iter().enumerate() {
            coeffs[d] += c * Q::from_integer(BigInt::from(g));
        }
    }
    let leading = Q::from_integer(BigInt::from(gammas[t])) / Q::from_integer(factorial(t));
    let lower = Q::one() / Q::from_integer(factorial(t));
    let upper = leading_upper_bound(a.group().order(), t);
    let codims: Vec<usize> = (0..=n_max).map(|n| codim(a, n)).collect();
    let reproduces =
        codims.iter().enumerate().all(|(n, &c)| evaluate_polynomial(&coeffs, n) == Q::from_integer(BigInt::from(c)));
    Ok(GrowthReport {
        t,
        n_max,
        gammas,
        coefficients: coeffs.iter().map(format_q).collect(),
        leading: format_q(&leading),
        lower_bound: format_q(&lower),
        upper_bound: format_q(&upper),
        within_bounds: lower <= leading && leading <= upper,
        codims,
        reproduces_codims: reproduces,
        exact: GrowthExact { coefficients: coeffs, leading, lower_bound: lower, upper_bound: upper },
    })
}

/// The `n!` monomials of a component, as polynomials.
pub fn monomial_basis(composition: &DegreeComposition) -> Vec<MultiPoly> {
    permutations(composition.n()).iter().map(|w| MultiPoly::word(composition, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::rational::{frac, q};

    fn klein() -> Group {
        Group::cyclic_product(&[2, 2]).unwrap()
    }

    #[test]
    fn nilpotent_square_vanishes() {
        let z2 = Group::cyclic(2).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z2, 2, 1).unwrap();
        let comp = DegreeComposition::from_aggregate(&[0, 2]);
        let p = MultiPoly::word(&comp, &[0, 1]);
        let table = evaluation_matrix(&c2, &[p], &comp).unwrap();
        assert_eq!(table.identity_rows(), vec![0]);
    }

    #[test]
    fn k7_mixed_component() {
        let g = klein();
        let k7 = GradedAlgebra::k7(&g, 2, 1).unwrap();
        // slots: x1 of degree h = index 1, x2 of degree g = index 2
        let comp = DegreeComposition::new(4, vec![2, 1]);
        let polys = vec![MultiPoly::word(&comp, &[0, 1]), MultiPoly::word(&comp, &[1, 0])];
        let table = evaluation_matrix(&k7, &polys, &comp).unwrap();
        assert_eq!(table.rank(), 1);
        assert_eq!(component_codim(&k7, &comp), 1);
        assert_eq!(component_codim(&k7, &DegreeComposition::from_aggregate(&[0, 1, 1, 0])), 1);
    }

    #[test]
    fn commutative_algebra_kills_commutator() {
        let g = Group::trivial();
        let f = GradedAlgebra::field(&g);
        let comp = DegreeComposition::from_aggregate(&[2]);
        let c = MultiPoly::commutator_of_slots(&comp, &[0, 1]);
        assert_eq!(evaluation_matrix(&f, &[c], &comp).unwrap().identity_rows(), vec![0]);
        for n in 1..5 {
            assert_eq!(codim(&f, n), 1);
        }
        assert_eq!(codim(&f, 0), 1);
    }

    #[test]
    fn outside_support_is_zero() {
        let z3 = Group::cyclic(3).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z3, 2, 1).unwrap();
        assert_eq!(component_codim(&c2, &DegreeComposition::from_aggregate(&[0, 1, 1])), 0);
        assert_eq!(proper_component_codim(&c2, &DegreeComposition::from_aggregate(&[0, 0, 1])), 0);
    }

    #[test]
    fn small_codims() {
        let z2 = Group::cyclic(2).unwrap();
        let c2 = GradedAlgebra::truncated_polynomial(&z2, 2, 1).unwrap();
        assert_eq!(codim(&c2, 2), 3);
        let k7 = GradedAlgebra::k7(&klein(), 2, 1).unwrap();
        assert_eq!(codim(&k7, 3), 16);
        assert_eq!(proper_codim(&k7, 2), 2);
        assert_eq!(proper_codim(&k7, 0), 1);
        for n in 0..=4 {
            assert_eq!(codim_via_proper(&k7, n).unwrap(), codim(&k7, n));
        }
        let g11 = GradedAlgebra::grassmann2(&z2, 0, 0).unwrap();
        assert_eq!(proper_codim(&g11, 3), 0);
        let radical = GradedAlgebra::build(z2.clone(), vec!["E".into()], vec![], vec![1], None).unwrap();
        assert!(codim_via_proper(&radical, 2).is_err());
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(binomial_polynomial(0), vec![q(1)]);
        assert_eq!(binomial_polynomial(2), vec![q(0), frac(-1, 2), frac(1, 2)]);
        for n in 0..7 {
            for i in 0..4 {
                assert_eq!(evaluate_polynomial(&binomial_polynomial(i), n), Q::from_integer(binomial(n, i)));
            }
        }
    }

    #[test]
    fn growth_reports() {
        let k7 = GradedAlgebra::k7(&klein(), 2, 1).unwrap();
        let r = growth_report(&k7, 2, 4).unwrap();
        assert_eq!(r.exact.leading, q(1));
        assert_eq!(r.exact.lower_bound, frac(1, 2));
        assert_eq!(r.exact.upper_bound, frac(25, 2));
        assert!(r.within_bounds && r.reproduces_codims);
        let f = GradedAlgebra::field(&klein());
        let r = growth_report(&f, 0, 3).unwrap();
        assert_eq!(r.exact.leading, q(1));
        assert_eq!(r.exact.coefficients, vec![q(1)]);
        let z2 = Group::cyclic(2).unwrap();
        let g11 = GradedAlgebra::grassmann2(&z2, 0, 0).unwrap();
        assert_eq!(growth_report(&g11, 2, 4).unwrap().exact.leading, frac(1, 2));
        assert!(matches!(growth_report(&k7, 1, 3), Err(CodimError::GrowthExceedsT { t: 1, n: 2, .. })));
    }
}
