//! Finite-dimensional G-graded algebras given by structure constants.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{Elem, Group, GroupError};
use crate::rational::{format_q, Q};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error(
        "grading violation: {left}*{right} has a component on {target}, which is not of degree deg({left})deg({right})"
    )]
    GradingViolation { left: String, right: String, target: String },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: String, b: String, c: String },
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("algebras are graded by different groups")]
    GroupMismatch,
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

type Sparse = Vec<(usize, Q)>;

/// `A = (+)_g A_g`, with a homogeneous basis. `structure[i][j]` is the product
/// `b_i b_j` as a sparse coordinate vector; omitted products are zero.
#[derive(Clone, PartialEq)]
pub struct GradedAlgebra {
    group: Group,
    labels: Vec<String>,
    structure: Vec<Vec<Sparse>>,
    grading: Vec<Elem>,
    unit: Option<Vec<Q>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("group", &self.group)
            .field("basis", &self.labels)
            .field("grading", &self.grading)
            .field("unital", &self.unit.is_some())
            .finish()
    }
}

/// One nonzero structure constant: `b_left * b_right` has coefficient `coeff` on `b_target`.
#[derive(Clone, Debug, PartialEq)]
pub struct Product {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub coeff: Q,
}

impl Product {
    pub fn new(left: usize, right: usize, target: usize, coeff: Q) -> Self {
        Product { left, right, target, coeff }
    }
}

/// Parameters for the named constructions.
#[derive(Clone, Debug, Default)]
pub struct NamedParams {
    pub m: Option<usize>,
    pub g: Option<Elem>,
    pub h: Option<Elem>,
    pub alpha: Option<Q>,
}

/// `{g in G : A_g != 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    order: usize,
    elems: BTreeSet<Elem>,
}

impl Support {
    pub fn contains(&self, g: Elem) -> bool {
        self.elems.contains(&g)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `G - supp(A)`, in index order.
    pub fn complement(&self) -> Vec<Elem> {
        (0..self.order).filter(|g| !self.elems.contains(g)).collect()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.elems.iter().copied().collect()
    }
}

fn add_into(acc: &mut [Q], v: &[(usize, Q)], scale: &Q) {
    for (t, c) in v {
        acc[*t] += scale * c;
    }
}

impl GradedAlgebra {
    /// Validates grading compatibility, associativity and the unit eagerly.
    pub fn build(
        group: Group,
        labels: Vec<String>,
        products: Vec<Product>,
        grading: Vec<Elem>,
        unit: Option<Vec<Q>>,
    ) -> Result<GradedAlgebra, AlgebraError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(AlgebraError::InvalidArgument("an algebra needs at least one basis element".into()));
        }
        if grading.len() != dim {
            return Err(AlgebraError::InvalidArgument(format!(
                "grading has {} entries for {} basis elements",
                grading.len(),
                dim
            )));
        }
        for &g in &grading {
            group.check(g)?;
        }
        let mut dense = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for p in &products {
            if p.left >= dim || p.right >= dim || p.target >= dim {
                return Err(AlgebraError::InvalidArgument(format!("product index out of range: {:?}", p)));
            }
            dense[p.left][p.right][p.target] += &p.coeff;
        }
        let structure: Vec<Vec<Sparse>> = dense
            .into_iter()
            .map(|row| {
                row.into_iter().map(|v| v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect()
            })
            .collect();
        let algebra = GradedAlgebra { group, labels, structure, grading, unit };
        algebra.check_grading()?;
        algebra.check_associative()?;
        algebra.check_unit()?;
        Ok(algebra)
    }

    fn check_grading(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let expected = self.group.mul(self.grading[i], self.grading[j]);
                if let Some((t, _)) = self.structure[i][j].iter().find(|(t, _)| self.grading[*t] != expected) {
                    return Err(AlgebraError::GradingViolation {
                        left: self.labels[i].clone(),
                        right: self.labels[j].clone(),
                        target: self.labels[*t].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul_vec_basis(&self.basis_vector(a), b);
                    let left = self.mul_vec_basis(&left, c);
                    let bc = self.mul_vec_basis(&self.basis_vector(b), c);
                    let right = self.mul(&self.basis_vector(a), &bc);
                    if left != right {
                        return Err(AlgebraError::NonAssociative {
                            a: self.labels[a].clone(),
                            b: self.labels[b].clone(),
                            c: self.labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let Some(unit) = &self.unit else { return Ok(()) };
        if unit.len() != self.dim() {
            return Err(AlgebraError::BadUnit(format!("unit has {} coordinates, expected {}", unit.len(), self.dim())));
        }
        if let Some(i) = (0..self.dim()).find(|&i| !unit[i].is_zero() && self.grading[i] != 0) {
            return Err(AlgebraError::BadUnit(format!(
                "unit has a component on {} which is not of degree 1",
                self.labels[i]
            )));
        }
        for b in 0..self.dim() {
            let e = self.basis_vector(b);
            if self.mul(unit, &e) != e || self.mul(&e, unit) != e {
                return Err(AlgebraError::BadUnit(format!("1*{0} != {0} or {0}*1 != {0}", self.labels[b])));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> &[Elem] {
        &self.grading
    }

    pub fn unit(&self) -> Option<&[Q]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    /// Sparse structure constants of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.structure[i][j]
    }

    /// All nonzero structure constants in `(left, right, target)` order.
    pub fn products(&self) -> Vec<Product> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (t, c) in &self.structure[i][j] {
                    out.push(Product::new(i, j, *t, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    /// `v * b_j`.
    pub fn mul_vec_basis(&self, v: &[Q], j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                add_into(&mut out, &self.structure[i][j], c);
            }
        }
        out
    }

    pub fn mul(&self, v: &[Q], w: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (j, d) in w.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    add_into(&mut out, &self.structure[i][j], &(c * d));
                }
            }
        }
        out
    }

    /// Basis indices of homogeneous degree `g`.
    pub fn basis_of_degree(&self, g: Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grading[i] == g).collect()
    }

    pub fn support(&self) -> Support {
        Support { order: self.group.order(), elems: self.grading.iter().copied().collect() }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// The same algebra graded by the trivial group.
    pub fn forget_grading(&self) -> GradedAlgebra {
        GradedAlgebra {
            group: Group::trivial(),
            labels: self.labels.clone(),
            structure: self.structure.clone(),
            grading: vec![0; self.dim()],
            unit: self.unit.clone(),
        }
    }

    /// The same structure constants and grading viewed over another group via
    /// an injective map of degrees.
    pub fn regrade(&self, group: &Group, degree_map: impl Fn(Elem) -> Elem) -> Result<GradedAlgebra, AlgebraError> {
        let grading = self.grading.iter().map(|&g| degree_map(g)).collect();
        GradedAlgebra::build(group.clone(), self.labels.clone(), self.products(), grading, self.unit.clone())
    }

    /// Componentwise product with no cross terms. The unit is `(1, 1)` when
    /// both summands are unital.
    pub fn direct_sum(&self, other: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch);
        }
        let shift = self.dim();
        let labels =
            self.labels.iter().map(|l| format!("L.{l}")).chain(other.labels.iter().map(|l| format!("R.{l}"))).collect();
        let products = self
            .products()
            .into_iter()
            .chain(
                other
                    .products()
                    .into_iter()
                    .map(|p| Product::new(p.left + shift, p.right + shift, p.target + shift, p.coeff)),
            )
            .collect();
        let grading = self.grading.iter().chain(&other.grading).copied().collect();
        let unit = match (&self.unit, &other.unit) {
            (Some(u), Some(v)) => Some(u.iter().chain(v).cloned().collect()),
            _ => None,
        };
        GradedAlgebra::build(self.group.clone(), labels, products, grading, unit)
    }

    /// `A x F` with `(a, s)(b, t) = (ab + sb + ta, st)`; the new unit has degree 1.
    pub fn adjoin_unit(&self) -> GradedAlgebra {
        let e = self.dim();
        let mut products = self.products();
        for i in 0..e {
            products.push(Product::new(e, i, i, Q::one()));
            products.push(Product::new(i, e, i, Q::one()));
        }
        products.push(Product::new(e, e, e, Q::one()));
        let mut labels = self.labels.clone();
        labels.push("1~".into());
        let mut grading = self.grading.clone();
        grading.push(self.group.identity());
        let mut unit = vec![Q::zero(); e + 1];
        unit[e] = Q::one();
        GradedAlgebra::build(self.group.clone(), labels, products, grading, Some(unit))
            .expect("unit adjunction preserves the algebra axioms")
    }

    /// The base field with trivial grading.
    pub fn field(group: &Group) -> GradedAlgebra {
        GradedAlgebra::build(
            group.clone(),
            vec!["1".into()],
            vec![Product::new(0, 0, 0, Q::one())],
            vec![0],
            Some(vec![Q::one()]),
        )
        .expect("field is valid")
    }

    /// `C_m^g`: basis `I, E, ..., E^{m-1}` with `E^i E^j = E^{i+j}` (zero once
    /// `i + j >= m`) and `deg E^i = g^i`.
    pub fn truncated_polynomial(group: &Group, m: usize, g: Elem) -> Result<GradedAlgebra, AlgebraError> {
        if m < 2 {
            return Err(AlgebraError::InvalidArgument("C_m needs m >= 2".into()));
        }
        group.check(g)?;
        let labels = (0..m)
            .map(|i| match i {
                0 => "I".to_string(),
                1 => "E".to_string(),
                _ => format!("E^{i}"),
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..m {
            for j in 0..m - i {
                products.push(Product::new(i, j, i + j, Q::one()));
            }
        }
        let grading = (0..m).map(|i| group.pow(g, i)).collect();
        let mut unit = vec![Q::zero(); m];
        unit[0] = Q::one();
        GradedAlgebra::build(group.clone(), labels, products, grading, Some(unit))
    }

    /// `K_7^{g,h}`: basis `u, a, b, c` (`u = e11+e22+e33`, `a = e12`, `b = e23`,
    /// `c = e13`) with `ab = c` the only nonzero radical product.
    pub fn k7(group: &Group, g: Elem, h: Elem) -> Result<GradedAlgebra, AlgebraError> {
        group.check(g)?;
        group.check(h)?;
        if g == h || g == 0 || h == 0 {
            return Err(AlgebraError::InvalidArgument("K7 needs distinct g, h different from 1".into()));
        }
        let mut products = unit_products(4);
        products.push(Product::new(1, 2, 3, Q::one()));
        let grading = vec![0, g, h, group.mul(g, h)];
        GradedAlgebra::build(group.clone(), labels(&["u", "a", "b", "c"]), products, grading, Some(unit_vector(4)))
    }

    /// `G_2^{g,h}`: basis `1, e1, e2, e1e2` with `e2 e1 = -e1 e2` and `e1^2 = e2^2 = 0`.
    pub fn grassmann2(group: &Group, g: Elem, h: Elem) -> Result<GradedAlgebra, AlgebraError> {
        group.check(g)?;
        group.check(h)?;
        if !group.commute(g, h) {
            return Err(AlgebraError::InvalidArgument("G2 needs gh = hg".into()));
        }
        let mut products = unit_products(4);
        products.push(Product::new(1, 2, 3, Q::one()));
        products.push(Product::new(2, 1, 3, -Q::one()));
        let grading = vec![0, g, h, group.mul(g, h)];
        GradedAlgebra::build(group.clone(), labels(&["1", "e1", "e2", "e1e2"]), products, grading, Some(unit_vector(4)))
    }

    /// `W_alpha^{g,h}`: basis `u, a, b, c` (`a = e12+e34`, `b = alpha e13 + e24`,
    /// `c = e14`) with `ab = c`, `ba = alpha c`, `a^2 = b^2 = 0`.
    pub fn w_alpha(group: &Group, alpha: Q, g: Elem, h: Elem) -> Result<GradedAlgebra, AlgebraError> {
        group.check(g)?;
        group.check(h)?;
        if alpha.is_zero() {
            return Err(AlgebraError::InvalidArgument("W_alpha needs alpha != 0".into()));
        }
        if g == h || g == 0 || h == 0 {
            return Err(AlgebraError::InvalidArgument("W_alpha needs distinct g, h different from 1".into()));
        }
        if !group.commute(g, h) {
            return Err(AlgebraError::InvalidArgument("W_alpha needs gh = hg".into()));
        }
        let mut products = unit_products(4);
        products.push(Product::new(1, 2, 3, Q::one()));
        products.push(Product::new(2, 1, 3, alpha));
        let grading = vec![0, g, h, group.mul(g, h)];
        GradedAlgebra::build(group.clone(), labels(&["u", "a", "b", "c"]), products, grading, Some(unit_vector(4)))
    }

    /// Dispatches on `F`, `C_m` (or `C2`, `C3`, ...), `K7`, `G2`, `W_alpha`.
    pub fn build_named(name: &str, group: &Group, params: &NamedParams) -> Result<GradedAlgebra, AlgebraError> {
        let need = |x: Option<Elem>, what: &str| {
            x.ok_or_else(|| AlgebraError::InvalidArgument(format!("{name} needs parameter {what}")))
        };
        match name {
            "F" => Ok(GradedAlgebra::field(group)),
            "K7" => GradedAlgebra::k7(group, need(params.g, "g")?, need(params.h, "h")?),
            "G2" => GradedAlgebra::grassmann2(group, need(params.g, "g")?, need(params.h, "h")?),
            "W_alpha" | "Walpha" | "W" => {
                let alpha =
                    params.alpha.clone().ok_or_else(|| AlgebraError::InvalidArgument("W_alpha needs alpha".into()))?;
                GradedAlgebra::w_alpha(group, alpha, need(params.g, "g")?, need(params.h, "h")?)
            }
            _ => {
                let m = match name {
                    "C_m" | "C" => params.m.ok_or_else(|| AlgebraError::InvalidArgument("C_m needs m".into()))?,
                    _ => name
                        .strip_prefix('C')
                        .and_then(|m| m.parse::<usize>().ok())
                        .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown algebra name `{name}`")))?,
                };
                GradedAlgebra::truncated_polynomial(group, m, need(params.g, "g")?)
            }
        }
    }

    /// Human-readable multiplication table of the nonzero basis products.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("{l}: degree {}\n", self.group.encode(self.grading[i])));
        }
        for p in self.products() {
            out.push_str(&format!(
                "{} * {} -> {} {}\n",
                self.labels[p.left],
                self.labels[p.right],
                format_q(&p.coeff),
                self.labels[p.target]
            ));
        }
        out
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn unit_vector(dim: usize) -> Vec<Q> {
    let mut u = vec![Q::zero(); dim];
    u[0] = Q::one();
    u
}

/// Products making basis element 0 a two-sided unit.
fn unit_products(dim: usize) -> Vec<Product> {
    let mut out = vec![Product::new(0, 0, 0, Q::one())];
    for i in 1..dim {
        out.push(Product::new(0, i, i, Q::one()));
        out.push(Product::new(i, 0, i, Q::one()));
    }
    out
}
