//! JSON formats for algebras and generator sets.
//!
//! Algebra:
//! ```json
//! {"group": {"type": "cyclic_product", "orders": [2, 2]},
//!  "basis": ["u", "a"], "grading": {"u": "0,0", "a": "1,0"},
//!  "products": [["u", "u", "u", "1/1"], ["u", "a", "a", "1/1"], ["a", "u", "a", "1/1"]],
//!  "unit": ["1/1", "0/1"]}
//! ```
//! Generator set: `{"generators": [{"composition": ["1,0", "0,1"], "expr": "x1*x2"}]}`.
//! A generator with composition `["r"]` stands for `x1` in every degree outside
//! the support of the algebra it is checked against.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freepoly::{parse, DegreeComposition, PolyError};
use crate::galgebra::{AlgebraError, GradedAlgebra, Product};
use crate::group::{Group, GroupError};
use crate::idealkit::GeneratorSet;
use crate::rational::{format_q, parse_q, Q};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {msg}")]
    Read { path: String, msg: String },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid group: {0}")]
    Group(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` has no degree")]
    MissingDegree(String),
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error("bad element encoding: {0}")]
    BadEncoding(#[from] GroupError),
    #[error("generator {index}: {source}")]
    Generator { index: usize, source: PolyError },
    #[error("generator {0}: the symbolic degree `r` is only allowed as the single slot of `x1`")]
    SymbolicDegree(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    CyclicProduct { orders: Vec<usize> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, IoError> {
        match self {
            GroupSpec::CyclicProduct { orders } => {
                Group::cyclic_product(orders).map_err(|e| IoError::Group(e.to_string()))
            }
            GroupSpec::Table { table } => Group::from_table(table.clone())
                .map_err(|errs| IoError::Group(errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))),
        }
    }

    pub fn of(group: &Group) -> Self {
        match group.cyclic_orders() {
            Some(orders) => GroupSpec::CyclicProduct { orders: orders.to_vec() },
            None => GroupSpec::Table { table: group.table().to_vec() },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub group: GroupSpec,
    pub basis: Vec<String>,
    pub grading: BTreeMap<String, String>,
    pub products: Vec<(String, String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
}

fn rational(text: &str) -> Result<Q, IoError> {
    parse_q(text).ok_or_else(|| IoError::BadRational(text.to_string()))
}

impl AlgebraFile {
    pub fn build(&self) -> Result<GradedAlgebra, IoError> {
        let group = self.group.build()?;
        let index =
            |l: &str| self.basis.iter().position(|b| b == l).ok_or_else(|| IoError::UnknownLabel(l.to_string()));
        if let Some(extra) = self.grading.keys().find(|k| !self.basis.contains(k)) {
            return Err(IoError::UnknownLabel(extra.clone()));
        }
        let grading = self
            .basis
            .iter()
            .map(|l| {
                let enc = self.grading.get(l).ok_or_else(|| IoError::MissingDegree(l.clone()))?;
                Ok(group.decode(enc)?)
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        let products = self
            .products
            .iter()
            .map(|(l, r, t, c)| Ok(Product::new(index(l)?, index(r)?, index(t)?, rational(c)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        let unit =
            self.unit.as_ref().map(|u| u.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()).transpose()?;
        Ok(GradedAlgebra::build(group, self.basis.clone(), products, grading, unit)?)
    }

    pub fn of(a: &GradedAlgebra) -> Self {
        let group = a.group();
        let labels = a.labels();
        AlgebraFile {
            group: GroupSpec::of(group),
            basis: labels.to_vec(),
            grading: labels.iter().zip(a.grading()).map(|(l, &g)| (l.clone(), group.encode(g))).collect(),
            products: a
                .products()
                .into_iter()
                .map(|p| {
                    (labels[p.left].clone(), labels[p.right].clone(), labels[p.target].clone(), format_q(&p.coeff))
                })
                .collect(),
            unit: a.unit().map(|u| u.iter().map(format_q).collect()),
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<GradedAlgebra, IoError> {
    serde_json::from_str::<AlgebraFile>(text)?.build()
}

pub fn algebra_to_json(a: &GradedAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::of(a)).expect("serializable")
}

pub fn load_algebra(path: &Path) -> Result<GradedAlgebra, IoError> {
    parse_algebra(&read(path)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub composition: Vec<String>,
    pub expr: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub generators: Vec<GeneratorEntry>,
}

impl GeneratorFile {
    pub fn build(&self, group: &Group) -> Result<GeneratorSet, IoError> {
        let mut set = GeneratorSet::default();
        for (index, entry) in self.generators.iter().enumerate() {
            if entry.composition.iter().any(|c| c.trim() == "r") {
                if entry.composition.len() != 1 || entry.expr.trim() != "x1" {
                    return Err(IoError::SymbolicDegree(index + 1));
                }
                set.outside_support = true;
                continue;
            }
            let slots = entry.composition.iter().map(|c| group.decode(c)).collect::<Result<Vec<_>, _>>()?;
            let comp = DegreeComposition::new(group.order(), slots);
            let poly = parse(&entry.expr, &comp).map_err(|source| IoError::Generator { index: index + 1, source })?;
            set.generators.push(poly);
        }
        Ok(set)
    }

    pub fn of(group: &Group, set: &GeneratorSet) -> Self {
        let mut generators: Vec<GeneratorEntry> = set
            .generators
            .iter()
            .map(|p| GeneratorEntry {
                composition: p.composition().slots().iter().map(|&g| group.encode(g)).collect(),
                expr: p.render(),
            })
            .collect();
        if set.outside_support {
            generators.push(GeneratorEntry { composition: vec!["r".into()], expr: "x1".into() });
        }
        GeneratorFile { generators }
    }
}

pub fn parse_generators(text: &str, group: &Group) -> Result<GeneratorSet, IoError> {
    serde_json::from_str::<GeneratorFile>(text)?.build(group)
}

pub fn load_generators(path: &Path, group: &Group) -> Result<GeneratorSet, IoError> {
    parse_generators(&read(path)?, group)
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read { path: path.display().to_string(), msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_round_trip() {
        for e in catalog::catalog() {
            let text = algebra_to_json(&e.algebra);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back.products(), e.algebra.products(), "{}", e.name);
            assert_eq!(back.grading(), e.algebra.grading());
            assert_eq!(back.unit(), e.algebra.unit());
        }
    }

    #[test]
    fn table_groups_and_errors() {
        let text = r#"{"group": {"type": "table", "table": [[0, 1], [1, 0]]},
            "basis": ["1", "e"], "grading": {"1": "0", "e": "1"},
            "products": [["1", "1", "1", "1"], ["1", "e", "e", "1/1"], ["e", "1", "e", "1"]], "unit": ["1", "0"]}"#;
        let a = parse_algebra(text).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_unital());
        let bad = text.replace(r#"["e", "1", "e", "1"]"#, r#"["e", "1", "e", "1/0"]"#);
        assert!(matches!(parse_algebra(&bad), Err(IoError::BadRational(_))));
        let bad = text.replace(r#""e": "1""#, r#""e": "2""#);
        assert!(matches!(parse_algebra(&bad), Err(IoError::BadEncoding(_))));
        let bad = text.replace(r#"["e", "1", "e", "1"]"#, r#"["e", "1", "z", "1"]"#);
        assert!(matches!(parse_algebra(&bad), Err(IoError::UnknownLabel(_))));
        let bad = text.replace(r#"[[0, 1], [1, 0]]"#, r#"[[0, 1], [1, 1]]"#);
        assert!(matches!(parse_algebra(&bad), Err(IoError::Group(_))));
        let ungraded = text.replace(r#"["1", "e", "e", "1/1"]"#, r#"["1", "e", "1", "1/1"]"#);
        assert!(matches!(parse_algebra(&ungraded), Err(IoError::Algebra(_))));
        assert!(matches!(parse_algebra("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn generator_files() {
        let e = catalog::find("K7^{g,h} over Z2xZ2").unwrap();
        let group = e.algebra.group();
        let file = GeneratorFile::of(group, &e.basis);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_generators(&text, group).unwrap(), e.basis);
        let bad = r#"{"generators": [{"composition": ["r", "1,0"], "expr": "x1*x2"}]}"#;
        assert!(matches!(parse_generators(bad, group), Err(IoError::SymbolicDegree(1))));
        let bad = r#"{"generators": [{"composition": ["1,0"], "expr": "x1*x2"}]}"#;
        assert!(matches!(parse_generators(bad, group), Err(IoError::Generator { index: 1, .. })));
    }
}
