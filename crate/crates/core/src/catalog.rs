//! The minimal-variety algebras of quadratic growth, with their known identity
//! bases, codimension polynomials and low-degree proper cocharacters.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::freepoly::{parse, DegreeComposition, MultiPoly};
use crate::galgebra::GradedAlgebra;
use crate::group::{Elem, Group};
use crate::idealkit::GeneratorSet;
use crate::rational::{binomial, q};
use crate::repn::{MultiPartition, Partition};

/// `constant + linear * n + quadratic * C(n, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub constant: usize,
    pub linear: usize,
    pub quadratic: usize,
}

impl QuadraticForm {
    pub const fn new(constant: usize, linear: usize, quadratic: usize) -> Self {
        QuadraticForm { constant, linear, quadratic }
    }

    pub fn eval(&self, n: usize) -> usize {
        let c2: BigInt = binomial(n, 2);
        self.constant + self.linear * n + self.quadratic * c2.to_usize().expect("small")
    }

    pub fn describe(&self) -> String {
        format!("{}+{}n+{}C(n,2)", self.constant, self.linear, self.quadratic)
    }
}

/// Nonzero proper cocharacter terms over all aggregates of one degree.
pub type CocharacterRow = Vec<(MultiPartition, usize)>;

pub struct CatalogEntry {
    pub name: String,
    pub algebra: GradedAlgebra,
    pub codim: QuadraticForm,
    pub basis: GeneratorSet,
    /// Expected proper cocharacters at `n = 1` and `n = 2`.
    pub cocharacters: [CocharacterRow; 2],
}

/// A generator in the given slot degrees, written in the expression syntax.
pub fn generator(order: usize, slots: &[Elem], expr: &str) -> MultiPoly {
    parse(expr, &DegreeComposition::new(order, slots.to_vec())).expect("catalog expression parses")
}

/// `chi_{(lambda_1)_{g_1}} x ...` as a multipartition over a group of `order` elements.
pub fn shape(order: usize, parts: &[(Elem, &[usize])]) -> MultiPartition {
    let mut mp = vec![Partition::empty(); order];
    for (g, p) in parts {
        mp[*g] = Partition::new(p.to_vec());
    }
    MultiPartition(mp)
}

fn single(order: usize, gs: &[Elem]) -> CocharacterRow {
    gs.iter().map(|&g| (shape(order, &[(g, &[1])]), 1)).collect()
}

fn mixed(order: usize, g: Elem, h: Elem, m: usize) -> CocharacterRow {
    vec![(shape(order, &[(g, &[1]), (h, &[1])]), m)]
}

fn comm(order: usize, a: Elem, b: Elem) -> MultiPoly {
    generator(order, &[a, b], "comm(x1,x2)")
}

fn word(order: usize, slots: &[Elem]) -> MultiPoly {
    let expr: Vec<String> = (1..=slots.len()).map(|i| format!("x{i}")).collect();
    generator(order, slots, &expr.join("*"))
}

fn jordan(order: usize, a: Elem, b: Elem) -> MultiPoly {
    generator(order, &[a, b], "jord(x1,x2)")
}

fn dedup(gens: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

pub fn z2() -> Group {
    Group::cyclic(2).expect("valid")
}

pub fn z3() -> Group {
    Group::cyclic(3).expect("valid")
}

/// `Z2 x Z2` with `g = (1,0)`, `h = (0,1)`, `gh = (1,1)`.
pub fn klein() -> (Group, Elem, Elem) {
    let group = Group::cyclic_product(&[2, 2]).expect("valid");
    let g = group.decode("1,0").expect("valid");
    let h = group.decode("0,1").expect("valid");
    (group, g, h)
}

/// Identities of `C_m^g` for `|g| = 2`.
pub fn truncated_basis_order_two(order: usize, g: Elem, m: usize) -> GeneratorSet {
    GeneratorSet::new(vec![comm(order, 0, 0), comm(order, 0, g), comm(order, g, g), word(order, &vec![g; m])], true)
}

/// Identities of `C_3^h` for `|h| = 3`.
pub fn truncated_basis_order_three(group: &Group, h: Elem) -> GeneratorSet {
    let o = group.order();
    let h2 = group.mul(h, h);
    let uv = [0, h, h2];
    let mut gens: Vec<MultiPoly> = uv.iter().flat_map(|&u| uv.iter().map(move |&v| comm(o, u, v))).collect();
    gens.extend([word(o, &[h, h, h]), word(o, &[h, h2]), word(o, &[h2, h]), word(o, &[h2, h2])]);
    GeneratorSet::new(dedup(gens), true)
}

/// Identities of `K_7^{g,h}`, with the ordered pair `(g, h)` excluded from the
/// products `x_{1,t} x_{2,v}` over `t, v` in `degrees`.
pub fn k7_basis(group: &Group, g: Elem, h: Elem, degrees: &[Elem]) -> GeneratorSet {
    let o = group.order();
    let mut gens = vec![comm(o, 0, 0)];
    gens.extend(degrees.iter().map(|&t| comm(o, 0, t)));
    for &t in degrees {
        for &v in degrees {
            if (t, v) != (g, h) {
                gens.push(word(o, &[t, v]));
            }
        }
    }
    GeneratorSet::new(dedup(gens), true)
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let zz2 = z2();
    let zz3 = z3();
    let (kl, g, h) = klein();
    let gh = kl.mul(g, h);

    // truncated polynomial algebras
    out.push(CatalogEntry {
        name: "C2^g over Z2".into(),
        algebra: GradedAlgebra::truncated_polynomial(&zz2, 2, 1).unwrap(),
        codim: QuadraticForm::new(1, 1, 0),
        basis: truncated_basis_order_two(2, 1, 2),
        cocharacters: [single(2, &[1]), vec![]],
    });
    out.push(CatalogEntry {
        name: "C3^g over Z2".into(),
        algebra: GradedAlgebra::truncated_polynomial(&zz2, 3, 1).unwrap(),
        codim: QuadraticForm::new(1, 1, 1),
        basis: truncated_basis_order_two(2, 1, 3),
        cocharacters: [single(2, &[1]), vec![(shape(2, &[(1, &[2])]), 1)]],
    });
    out.push(CatalogEntry {
        name: "C3^h over Z3".into(),
        algebra: GradedAlgebra::truncated_polynomial(&zz3, 3, 1).unwrap(),
        codim: QuadraticForm::new(1, 2, 1),
        basis: truncated_basis_order_three(&zz3, 1),
        cocharacters: [single(3, &[1, 2]), vec![(shape(3, &[(1, &[2])]), 1)]],
    });

    // K7
    out.push(CatalogEntry {
        name: "K7^{g,h} over Z2xZ2".into(),
        algebra: GradedAlgebra::k7(&kl, g, h).unwrap(),
        codim: QuadraticForm::new(1, 3, 2),
        basis: k7_basis(&kl, g, h, &[g, h, gh]),
        cocharacters: [single(4, &[h, g, gh]), mixed(4, g, h, 1)],
    });
    out.push(CatalogEntry {
        name: "K7^{q,q^-1} over Z3".into(),
        algebra: GradedAlgebra::k7(&zz3, 1, 2).unwrap(),
        codim: QuadraticForm::new(1, 2, 2),
        basis: k7_basis(&zz3, 1, 2, &[1, 2]),
        cocharacters: [single(3, &[1, 2]), mixed(3, 1, 2, 1)],
    });

    // G2
    out.push(CatalogEntry {
        name: "G2^{1,1} over Z2".into(),
        algebra: GradedAlgebra::grassmann2(&zz2, 0, 0).unwrap(),
        codim: QuadraticForm::new(1, 0, 1),
        basis: GeneratorSet::new(
            vec![generator(2, &[0, 0, 0], "comm(x1,x2,x3)"), generator(2, &[0, 0, 0, 0], "comm(x1,x2)*comm(x3,x4)")],
            true,
        ),
        cocharacters: [vec![], vec![(shape(2, &[(0, &[1, 1])]), 1)]],
    });
    out.push(CatalogEntry {
        name: "G2^{1,g} over Z2".into(),
        algebra: GradedAlgebra::grassmann2(&zz2, 0, 1).unwrap(),
        codim: QuadraticForm::new(1, 1, 2),
        basis: GeneratorSet::new(
            vec![comm(2, 0, 0), generator(2, &[0, 1, 0], "comm(x1,x2,x3)"), word(2, &[1, 1])],
            true,
        ),
        cocharacters: [single(2, &[1]), mixed(2, 0, 1, 1)],
    });
    out.push(CatalogEntry {
        name: "G2^{u,u} over Z2".into(),
        algebra: GradedAlgebra::grassmann2(&zz2, 1, 1).unwrap(),
        codim: QuadraticForm::new(1, 1, 1),
        basis: GeneratorSet::new(vec![comm(2, 0, 0), comm(2, 0, 1), word(2, &[1, 1, 1]), jordan(2, 1, 1)], true),
        cocharacters: [single(2, &[1]), vec![(shape(2, &[(1, &[1, 1])]), 1)]],
    });
    out.push(CatalogEntry {
        name: "G2^{h,h} over Z3".into(),
        algebra: GradedAlgebra::grassmann2(&zz3, 1, 1).unwrap(),
        codim: QuadraticForm::new(1, 2, 1),
        basis: {
            let mut gens = vec![comm(3, 0, 0), comm(3, 0, 1), comm(3, 0, 2), jordan(3, 1, 1)];
            for q in [1, 2] {
                gens.push(word(3, &[2, q]));
                gens.push(word(3, &[q, 2]));
            }
            GeneratorSet::new(dedup(gens), true)
        },
        cocharacters: [single(3, &[1, 2]), vec![(shape(3, &[(1, &[1, 1])]), 1)]],
    });
    out.push(CatalogEntry {
        name: "G2^{g,h} over Z2xZ2".into(),
        algebra: GradedAlgebra::grassmann2(&kl, g, h).unwrap(),
        codim: QuadraticForm::new(1, 3, 2),
        basis: {
            let s = [g, h, gh];
            let mut gens = vec![comm(4, 0, 0)];
            gens.extend(s.iter().map(|&t| comm(4, 0, t)));
            gens.extend(s.iter().map(|&t| word(4, &[t, t])));
            gens.push(jordan(4, g, h));
            gens.extend(s.iter().map(|&t| word(4, &[gh, t])));
            gens.extend(s.iter().map(|&t| word(4, &[t, gh])));
            GeneratorSet::new(dedup(gens), true)
        },
        cocharacters: [single(4, &[h, g, gh]), mixed(4, g, h, 1)],
    });
    out.push(CatalogEntry {
        name: "G2^{u,u^-1} over Z3".into(),
        algebra: GradedAlgebra::grassmann2(&zz3, 1, 2).unwrap(),
        codim: QuadraticForm::new(1, 2, 2),
        basis: GeneratorSet::new(
            vec![comm(3, 0, 0), comm(3, 0, 1), comm(3, 0, 2), jordan(3, 1, 2), word(3, &[1, 1]), word(3, &[2, 2])],
            true,
        ),
        cocharacters: [single(3, &[1, 2]), mixed(3, 1, 2, 1)],
    });

    // W_alpha with alpha = 2
    let alpha = q(2);
    out.push(CatalogEntry {
        name: "W_2^{g,g^-1} over Z3".into(),
        algebra: GradedAlgebra::w_alpha(&zz3, alpha.clone(), 1, 2).unwrap(),
        codim: QuadraticForm::new(1, 2, 2),
        basis: GeneratorSet::new(
            vec![
                comm(3, 0, 0),
                comm(3, 0, 1),
                comm(3, 0, 2),
                word(3, &[1, 1]),
                word(3, &[2, 2]),
                generator(3, &[1, 2], "2*x1*x2 - x2*x1"),
            ],
            true,
        ),
        cocharacters: [single(3, &[1, 2]), mixed(3, 1, 2, 1)],
    });
    out.push(CatalogEntry {
        name: "W_2^{g,h} over Z2xZ2".into(),
        algebra: GradedAlgebra::w_alpha(&kl, alpha, g, h).unwrap(),
        codim: QuadraticForm::new(1, 3, 2),
        basis: {
            let s = [g, h, gh];
            let mut gens: Vec<MultiPoly> = [0, g, h, gh].iter().map(|&v| comm(4, 0, v)).collect();
            gens.extend(s.iter().map(|&t| word(4, &[t, t])));
            gens.extend(s.iter().map(|&t| word(4, &[gh, t])));
            gens.extend(s.iter().map(|&t| word(4, &[t, gh])));
            gens.push(generator(4, &[g, h], "2*x1*x2 - x2*x1"));
            GeneratorSet::new(dedup(gens), true)
        },
        cocharacters: [single(4, &[h, g, gh]), mixed(4, g, h, 1)],
    });

    // sums
    let sum = |a: GradedAlgebra, b: GradedAlgebra| a.direct_sum(&b).unwrap();
    out.push(CatalogEntry {
        name: "K7^{g,h}+G2^{g,h} over Z2xZ2".into(),
        algebra: sum(GradedAlgebra::k7(&kl, g, h).unwrap(), GradedAlgebra::grassmann2(&kl, g, h).unwrap()),
        codim: QuadraticForm::new(1, 3, 4),
        basis: {
            let s = [g, h, gh];
            let mut gens = vec![comm(4, 0, 0)];
            gens.extend(s.iter().map(|&t| comm(4, 0, t)));
            gens.extend(s.iter().map(|&t| word(4, &[t, t])));
            gens.extend(s.iter().map(|&t| word(4, &[gh, t])));
            gens.extend(s.iter().map(|&t| word(4, &[t, gh])));
            GeneratorSet::new(dedup(gens), true)
        },
        cocharacters: [single(4, &[h, g, gh]), mixed(4, g, h, 2)],
    });
    out.push(CatalogEntry {
        name: "K7^{u,u^-1}+G2^{u,u^-1} over Z3".into(),
        algebra: sum(GradedAlgebra::k7(&zz3, 1, 2).unwrap(), GradedAlgebra::grassmann2(&zz3, 1, 2).unwrap()),
        codim: QuadraticForm::new(1, 2, 4),
        basis: GeneratorSet::new(
            vec![comm(3, 0, 0), comm(3, 0, 1), comm(3, 0, 2), word(3, &[1, 1]), word(3, &[2, 2])],
            true,
        ),
        cocharacters: [single(3, &[1, 2]), mixed(3, 1, 2, 2)],
    });
    out
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// The catalog entry with the same group, grading, structure constants and
/// unit as `a`, ignoring basis labels.
pub fn lookup(a: &GradedAlgebra) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| {
        let b = &e.algebra;
        b.group() == a.group() && b.grading() == a.grading() && b.products() == a.products() && b.unit() == a.unit()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(QuadraticForm::new(1, 3, 2).eval(3), 16);
        assert_eq!(QuadraticForm::new(1, 0, 1).eval(0), 1);
        assert_eq!(QuadraticForm::new(1, 3, 2).describe(), "1+3n+2C(n,2)");
    }

    #[test]
    fn entries_build() {
        let entries = catalog();
        assert_eq!(entries.len(), 15);
        for e in &entries {
            assert!(e.algebra.is_unital(), "{}", e.name);
            for g in &e.basis.generators {
                assert_eq!(g.composition().group_order(), e.algebra.group().order(), "{}", e.name);
            }
        }
        assert_eq!(find("C3^h over Z3").unwrap().basis.generators.len(), 13);
        assert_eq!(find("K7^{q,q^-1} over Z3").unwrap().basis.generators.len(), 6);
        let c3 = GradedAlgebra::truncated_polynomial(&z2(), 3, 1).unwrap();
        assert_eq!(lookup(&c3).unwrap().name, "C3^g over Z2");
        assert!(lookup(&GradedAlgebra::field(&z2())).is_none());
    }
}
