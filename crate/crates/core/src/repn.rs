//! Symmetric-group characters and cocharacter multiplicities of the proper
//! modules `Gamma_{n_1,...,n_k}(A)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::codim::{monomial_matrix, proper_component_codim};
use crate::freepoly::{proper_spanning_set, DegreeComposition, MultiPoly};
use crate::galgebra::GradedAlgebra;
use crate::linalg::{CoordinateSolver, RationalMatrix};
use crate::parallel;
use crate::rational::{factorial, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReprError {
    #[error("partition totals differ: {0} vs {1}")]
    TotalMismatch(usize, usize),
    #[error("highest weight vectors are only tabulated up to degree 2, got {0}")]
    DegreeTooLarge(usize),
    #[error("internal consistency failure: multiplicity of {multipartition} is {value}, not a nonnegative integer")]
    NonIntegral { multipartition: String, value: String },
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// One partition per group element, in element order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiPartition(pub Vec<Partition>);

impl MultiPartition {
    pub fn aggregate(&self) -> Vec<usize> {
        self.0.iter().map(Partition::total).collect()
    }

    /// Product of the hook dimensions of the components.
    pub fn degree(&self) -> usize {
        self.0.iter().map(hook_dimension).product()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n`, reverse lexicographic: `(n)` first, `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn multipartitions(aggregate: &[usize]) -> Vec<MultiPartition> {
    let mut out = vec![Vec::new()];
    for &n in aggregate {
        let ps = partitions(n);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                ps.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(MultiPartition).collect()
}

pub fn hook_dimension(p: &Partition) -> usize {
    let parts = p.parts();
    let conj: Vec<usize> =
        (0..parts.first().copied().unwrap_or(0)).map(|j| parts.iter().filter(|&&r| r > j).count()).collect();
    let mut hooks = BigInt::from(1);
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row) {
            hooks *= (row - j) + (col - i) - 1;
        }
    }
    (factorial(p.total()) / hooks).to_usize().expect("dimension fits in usize")
}

/// Order of the conjugacy class of `S_n` with the given cycle type.
pub fn class_size(cycle_type: &Partition) -> BigInt {
    let mut z = BigInt::from(1);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in cycle_type.parts() {
        *counts.entry(c).or_default() += 1;
    }
    for (c, m) in counts {
        z *= BigInt::from(c).pow(m as u32) * factorial(m);
    }
    factorial(cycle_type.total()) / z
}

type Memo = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `chi_lambda` at a permutation of the given cycle type (Murnaghan-Nakayama).
pub fn character_value(lambda: &Partition, cycle_type: &Partition) -> Result<i64, ReprError> {
    if lambda.total() != cycle_type.total() {
        return Err(ReprError::TotalMismatch(lambda.total(), cycle_type.total()));
    }
    // beta-set of lambda: first-column hook lengths
    let l = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    Ok(mn(beta, cycle_type.parts()))
}

fn mn(beta: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.clone(), mu.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * mn(normalize(next), rest);
    }
    memo().lock().unwrap().insert(key, total);
    total
}

/// Drops trailing beads at positions `0, 1, ...` (empty rows) so equal
/// partitions share memo entries.
fn normalize(mut beta: Vec<usize>) -> Vec<usize> {
    while let Some(&last) = beta.last() {
        if last == 0 {
            beta.pop();
            beta.iter_mut().for_each(|b| *b -= 1);
        } else {
            break;
        }
    }
    beta
}

/// Permutation of the slots of `composition` realizing one cycle type per
/// degree block, cycles laid out on consecutive slots of the block.
pub fn representative(composition: &DegreeComposition, cycle_types: &[Partition]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..composition.n()).collect();
    for (g, ct) in cycle_types.iter().enumerate() {
        let block = composition.slots_of_degree(g);
        let mut start = 0;
        for &len in ct.parts() {
            for k in 0..len {
                perm[block[start + k]] = block[start + (k + 1) % len];
            }
            start += len;
        }
    }
    perm
}

/// Traces of the slot-permutation action on a module, keyed by cycle-type tuple.
pub type ModuleCharacter = BTreeMap<MultiPartition, Q>;

type Evaluator = dyn Fn(&[Vec<Q>]) -> RationalMatrix + Sync;

enum Target<'a> {
    Algebra(&'a GradedAlgebra),
    Free,
}

fn character_of(target: Target<'_>, composition: &DegreeComposition) -> ModuleCharacter {
    let classes = multipartitions(&composition.aggregate());
    let n = composition.n();
    let dim = match target {
        Target::Algebra(a) => proper_component_codim(a, composition),
        Target::Free => {
            let rows: Vec<Vec<Q>> = proper_spanning_set(composition).iter().map(MultiPoly::to_vector).collect();
            if n == 0 {
                1
            } else {
                RationalMatrix::from_rows((1..=n).product(), rows).rank()
            }
        }
    };
    if n == 0 || dim == 0 {
        return classes.into_iter().map(|c| (c, Q::from_integer(BigInt::from(dim)))).collect();
    }
    let evaluate: Box<Evaluator> = match target {
        Target::Algebra(a) => {
            let m = monomial_matrix(a, composition).1;
            Box::new(move |rows| m.left_mul_all(rows))
        }
        Target::Free => Box::new(move |rows| RationalMatrix::from_rows((1..=n).product(), rows.to_vec())),
    };
    let spanning = proper_spanning_set(composition);
    let evaluated = evaluate(&spanning.iter().map(MultiPoly::to_vector).collect::<Vec<_>>());
    let pivots = evaluated.independent_rows();
    let basis: Vec<&MultiPoly> = pivots.iter().map(|&i| &spanning[i]).collect();
    let solver = CoordinateSolver::new(&RationalMatrix::from_rows(
        evaluated.cols(),
        pivots.iter().map(|&i| evaluated.row(i).to_vec()).collect(),
    ));
    let traces = parallel::map(&classes, |class| {
        let perm = representative(composition, &class.0);
        let images: Vec<Vec<Q>> = basis.iter().map(|p| p.act(&perm).to_vector()).collect();
        let images = evaluate(&images);
        (0..basis.len()).map(|j| solver.coordinates(images.row(j))[j].clone()).sum::<Q>()
    });
    classes.into_iter().zip(traces).collect()
}

/// Character of `Gamma_{n_1,...,n_k}(A)` under `S_{n_1} x ... x S_{n_k}`.
pub fn module_character(a: &GradedAlgebra, composition: &DegreeComposition) -> ModuleCharacter {
    character_of(Target::Algebra(a), composition)
}

/// Character of the free module `Gamma_{n_1,...,n_k}`.
pub fn free_module_character(composition: &DegreeComposition) -> ModuleCharacter {
    character_of(Target::Free, composition)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharacterTerm {
    pub multipartition: MultiPartition,
    pub multiplicity: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocharacterDecomposition {
    pub aggregate: Vec<usize>,
    /// Nonzero multiplicities only.
    pub terms: Vec<CocharacterTerm>,
}

impl CocharacterDecomposition {
    pub fn multiplicity(&self, lambda: &MultiPartition) -> usize {
        self.terms.iter().find(|t| &t.multipartition == lambda).map_or(0, |t| t.multiplicity)
    }

    /// `sum m_lambda * deg(lambda)`, the dimension of the module.
    pub fn dimension(&self) -> usize {
        self.terms.iter().map(|t| t.multiplicity * t.degree).sum()
    }

    fn from_counts(aggregate: Vec<usize>, counts: Vec<(MultiPartition, usize)>) -> Self {
        let terms = counts
            .into_iter()
            .filter(|(_, m)| *m > 0)
            .map(|(multipartition, multiplicity)| {
                let degree = multipartition.degree();
                CocharacterTerm { multipartition, multiplicity, degree }
            })
            .collect();
        CocharacterDecomposition { aggregate, terms }
    }
}

/// Multiplicities by the inner product of the module character with each
/// irreducible `chi_{lambda_1} x ... x chi_{lambda_k}`.
pub fn decompose(aggregate: &[usize], character: &ModuleCharacter) -> Result<CocharacterDecomposition, ReprError> {
    let order: BigInt = aggregate.iter().map(|&n| factorial(n)).product();
    let mut counts = Vec::new();
    for lambda in multipartitions(aggregate) {
        let mut sum = Q::zero();
        for (class, trace) in character {
            let mut weight = BigInt::from(1);
            for (l, mu) in lambda.0.iter().zip(&class.0) {
                weight *= class_size(mu) * character_value(l, mu)?;
            }
            sum += trace * Q::from_integer(weight);
        }
        let m = sum / Q::from_integer(order.clone());
        match (m.is_integer(), m.to_integer().to_usize()) {
            (true, Some(v)) => counts.push((lambda, v)),
            _ => {
                return Err(ReprError::NonIntegral { multipartition: lambda.to_string(), value: m.to_string() });
            }
        }
    }
    Ok(CocharacterDecomposition::from_counts(aggregate.to_vec(), counts))
}

pub fn cocharacter_multiplicities(
    a: &GradedAlgebra,
    composition: &DegreeComposition,
) -> Result<CocharacterDecomposition, ReprError> {
    decompose(&composition.aggregate(), &module_character(a, composition))
}

pub fn free_cocharacter_multiplicities(composition: &DegreeComposition) -> Result<CocharacterDecomposition, ReprError> {
    decompose(&composition.aggregate(), &free_module_character(composition))
}

/// Linearized proper highest weight vectors of degree at most 2, grouped by
/// the multipartition they generate.
pub fn highest_weight_vectors(
    composition: &DegreeComposition,
) -> Result<Vec<(MultiPartition, Vec<MultiPoly>)>, ReprError> {
    let n = composition.n();
    if n > 2 {
        return Err(ReprError::DegreeTooLarge(n));
    }
    let aggregate = composition.aggregate();
    let shape = |parts: &[(usize, Vec<usize>)]| {
        let mut mp = vec![Partition::empty(); aggregate.len()];
        for (g, p) in parts {
            mp[*g] = Partition::new(p.clone());
        }
        MultiPartition(mp)
    };
    let var = |s| MultiPoly::var(composition, s);
    let comm = || MultiPoly::commutator_of_slots(composition, &[0, 1]);
    let slots = composition.slots();
    Ok(match *slots {
        [] => vec![(shape(&[]), vec![MultiPoly::word(composition, &[])])],
        [0] => vec![],
        [g] => vec![(shape(&[(g, vec![1])]), vec![var(0)])],
        [0, 0] => vec![(shape(&[(0, vec![1, 1])]), vec![comm()])],
        [g, h] if g == h => vec![
            (shape(&[(g, vec![2])]), vec![var(0).jordan(&var(1)).unwrap()]),
            (shape(&[(g, vec![1, 1])]), vec![comm()]),
        ],
        [g, h] if g == 0 || h == 0 => vec![(shape(&[(g, vec![1]), (h, vec![1])]), vec![comm()])],
        [g, h] => vec![(shape(&[(g, vec![1]), (h, vec![1])]), vec![comm(), MultiPoly::word(composition, &[0, 1])])],
        _ => unreachable!(),
    })
}

/// Multiplicities at degree <= 2 by counting highest weight vectors that stay
/// independent modulo the identities of `a`.
pub fn hwv_multiplicity_check(
    a: &GradedAlgebra,
    composition: &DegreeComposition,
) -> Result<CocharacterDecomposition, ReprError> {
    let groups = highest_weight_vectors(composition)?;
    let counts = if composition.n() == 0 {
        groups.into_iter().map(|(mp, _)| (mp, usize::from(a.is_unital()))).collect()
    } else {
        let m = monomial_matrix(a, composition).1;
        groups
            .into_iter()
            .map(|(mp, vs)| {
                let rows: Vec<Vec<Q>> = vs.iter().map(MultiPoly::to_vector).collect();
                (mp, m.left_mul_all(&rows).rank())
            })
            .collect()
    };
    Ok(CocharacterDecomposition::from_counts(composition.aggregate(), counts))
}

/// The same count in the free algebra: nothing is an identity.
pub fn free_hwv_multiplicities(composition: &DegreeComposition) -> Result<CocharacterDecomposition, ReprError> {
    let n = composition.n();
    let counts = highest_weight_vectors(composition)?
        .into_iter()
        .map(|(mp, vs)| {
            let rows: Vec<Vec<Q>> = vs.iter().map(MultiPoly::to_vector).collect();
            let rank = if n == 0 { 1 } else { RationalMatrix::from_rows((1..=n).product(), rows).rank() };
            (mp, rank)
        })
        .collect();
    Ok(CocharacterDecomposition::from_counts(composition.aggregate(), counts))
}

/// `n! / |class|`: used by tests; exposed for callers that need centralizer orders.
pub fn centralizer_order(cycle_type: &Partition) -> BigInt {
    let (q, r) = factorial(cycle_type.total()).div_rem(&class_size(cycle_type));
    debug_assert!(r.is_zero());
    q
}
