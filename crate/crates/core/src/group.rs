//! Finite groups given by Cayley tables.
//!
//! Elements are opaque indices `0..order` and the identity is always index 0,
//! so that degree compositions can be listed in a fixed order `1 = g_0, g_1, ...`.

use std::fmt;

use thiserror::Error;

/// Index of a group element inside its Cayley table.
pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element {elem} out of range for a group of order {order}")]
    OutOfRange { elem: usize, order: usize },
    #[error("table is not square or is empty")]
    NotSquare,
    #[error("row {0} is not a permutation of the elements")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation of the elements")]
    ColumnNotPermutation(usize),
    #[error("element 0 is not the identity (row/column 0 must be the identity permutation)")]
    IdentityNotAtZero,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("cannot parse element `{0}`")]
    BadEncoding(String),
}

/// A finite group stored as its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<Elem>>,
    /// Present when the group was built as `Z_{o_1} x ... x Z_{o_m}`; used for
    /// the residue encoding `"a_1,...,a_m"` of elements.
    cyclic_orders: Option<Vec<usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cyclic_orders {
            Some(orders) => write!(f, "Group(cyclic_product {:?})", orders),
            None => write!(f, "Group(table, order {})", self.order()),
        }
    }
}

impl Group {
    /// `Z_m` with `i*j = (i+j) mod m`.
    pub fn cyclic(m: usize) -> Result<Group, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidArgument("cyclic group order must be >= 1".into()));
        }
        let table = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        Ok(Group { table, cyclic_orders: Some(vec![m]) })
    }

    pub fn trivial() -> Group {
        Group { table: vec![vec![0]], cyclic_orders: Some(vec![1]) }
    }

    /// `Z_{o_1} x ... x Z_{o_m}`; the empty product is the trivial group.
    pub fn cyclic_product(orders: &[usize]) -> Result<Group, GroupError> {
        let mut group = Group::trivial();
        for (pos, &o) in orders.iter().enumerate() {
            let factor = Group::cyclic(o)?;
            group = if pos == 0 { factor } else { group.direct_product(&factor) };
        }
        group.cyclic_orders = Some(if orders.is_empty() { vec![1] } else { orders.to_vec() });
        Ok(group)
    }

    /// Componentwise product; the pair `(i, j)` is encoded as `i*|h| + j`.
    pub fn direct_product(&self, other: &Group) -> Group {
        let (m, n) = (self.order(), other.order());
        let mut table = vec![vec![0; m * n]; m * n];
        for (x, row) in table.iter_mut().enumerate() {
            let (i1, j1) = (x / n, x % n);
            for (y, cell) in row.iter_mut().enumerate() {
                let (i2, j2) = (y / n, y % n);
                *cell = self.mul(i1, i2) * n + other.mul(j1, j2);
            }
        }
        let cyclic_orders = match (&self.cyclic_orders, &other.cyclic_orders) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Group { table, cyclic_orders }
    }

    /// Checks the group axioms on a raw table and collects every violated axiom.
    pub fn from_table(table: Vec<Vec<Elem>>) -> Result<Group, Vec<GroupError>> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(vec![GroupError::NotSquare]);
        }
        let mut errors = Vec::new();
        if table.iter().flatten().any(|&e| e >= n) {
            let bad = *table.iter().flatten().find(|&&e| e >= n).unwrap();
            errors.push(GroupError::OutOfRange { elem: bad, order: n });
            return Err(errors);
        }
        let is_perm = |it: &mut dyn Iterator<Item = Elem>| {
            let mut seen = vec![false; n];
            for e in it {
                if std::mem::replace(&mut seen[e], true) {
                    return false;
                }
            }
            true
        };
        for (i, row) in table.iter().enumerate() {
            if !is_perm(&mut row.iter().copied()) {
                errors.push(GroupError::RowNotPermutation(i));
            }
        }
        for j in 0..n {
            if !is_perm(&mut table.iter().map(|row| row[j])) {
                errors.push(GroupError::ColumnNotPermutation(j));
            }
        }
        if (0..n).any(|i| table[0][i] != i || table[i][0] != i) {
            errors.push(GroupError::IdentityNotAtZero);
        }
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        errors.push(GroupError::NonAssociative { a, b, c });
                        break 'outer;
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(Group { table, cyclic_orders: None })
        } else {
            Err(errors)
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn table(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn cyclic_orders(&self) -> Option<&[usize]> {
        self.cyclic_orders.as_deref()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    /// Product of a sequence of elements, left to right; the empty product is 1.
    pub fn product<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Elem {
        elems.into_iter().fold(0, |acc, e| self.mul(acc, e))
    }

    pub fn inverse(&self, a: Elem) -> Elem {
        self.table[a].iter().position(|&e| e == 0).expect("Latin square row contains identity")
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn check(&self, e: Elem) -> Result<Elem, GroupError> {
        if e < self.order() {
            Ok(e)
        } else {
            Err(GroupError::OutOfRange { elem: e, order: self.order() })
        }
    }

    pub fn element_order(&self, e: Elem) -> Result<usize, GroupError> {
        self.check(e)?;
        let mut x = e;
        let mut t = 1;
        while x != 0 {
            x = self.mul(x, e);
            t += 1;
        }
        Ok(t)
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Residues of `e` in `Z_{o_1} x ... x Z_{o_m}` (most significant factor first).
    pub fn residues(&self, e: Elem) -> Option<Vec<usize>> {
        let orders = self.cyclic_orders.as_ref()?;
        let mut rest = e;
        let mut out = vec![0; orders.len()];
        for (slot, &o) in out.iter_mut().zip(orders).rev() {
            *slot = rest % o;
            rest /= o;
        }
        Some(out)
    }

    /// Canonical text encoding: comma-separated residues for cyclic products,
    /// the raw index otherwise.
    pub fn encode(&self, e: Elem) -> String {
        match self.residues(e) {
            Some(r) => r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            None => e.to_string(),
        }
    }

    /// Parses `"a_1,...,a_m"` against the cyclic factors, or a plain index.
    pub fn decode(&self, text: &str) -> Result<Elem, GroupError> {
        let bad = || GroupError::BadEncoding(text.to_string());
        let parts: Vec<usize> =
            text.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        match &self.cyclic_orders {
            Some(orders) if parts.len() == orders.len() => {
                let mut e = 0;
                for (&r, &o) in parts.iter().zip(orders) {
                    if r >= o {
                        return Err(bad());
                    }
                    e = e * o + r;
                }
                Ok(e)
            }
            _ if parts.len() == 1 => self.check(parts[0]).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive_ok(g: &Group) {
        let n = g.order();
        assert!(Group::from_table(g.table().to_vec()).is_ok());
        for a in 0..n {
            let o = g.element_order(a).unwrap();
            assert_eq!(n % o, 0, "Lagrange fails for {a}");
            let inv: Vec<_> = (0..n).filter(|&b| g.mul(a, b) == 0).collect();
            assert_eq!(inv.len(), 1);
            assert_eq!(g.mul(inv[0], a), 0);
            assert_eq!(g.inverse(a), inv[0]);
        }
    }

    #[test]
    fn cyclic_tables() {
        assert_eq!(Group::cyclic(2).unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(Group::cyclic(1).unwrap().order(), 1);
        assert_eq!(Group::cyclic(3).unwrap().element_order(1).unwrap(), 3);
        assert!(matches!(Group::cyclic(0), Err(GroupError::InvalidArgument(_))));
    }

    #[test]
    fn products() {
        let z2 = Group::cyclic(2).unwrap();
        let klein = z2.direct_product(&z2);
        assert_eq!(klein.order(), 4);
        for e in 1..4 {
            assert_eq!(klein.element_order(e).unwrap(), 2);
        }
        let with_trivial = z2.direct_product(&Group::trivial());
        assert_eq!(with_trivial.table(), z2.table());
        let z6 = z2.direct_product(&Group::cyclic(3).unwrap());
        assert!(z6.elements().any(|e| z6.element_order(e).unwrap() == 6));
    }

    #[test]
    fn element_orders() {
        let klein = Group::cyclic_product(&[2, 2]).unwrap();
        assert_eq!(klein.element_order(klein.decode("1,1").unwrap()).unwrap(), 2);
        for g in [Group::cyclic(5).unwrap(), klein.clone()] {
            assert_eq!(g.element_order(0).unwrap(), 1);
        }
        assert!(klein.element_order(4).is_err());
    }

    #[test]
    fn exhaustive_axioms_small_groups() {
        for orders in [vec![1], vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3], vec![3, 4], vec![2, 2, 3]] {
            exhaustive_ok(&Group::cyclic_product(&orders).unwrap());
        }
    }

    #[test]
    fn validate_reports_axioms() {
        assert!(Group::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        let errs = Group::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(errs.contains(&GroupError::ColumnNotPermutation(1)));
        // Latin square with identity 0 that is not associative: order 5 loop.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let errs = Group::from_table(loop5.clone()).unwrap_err();
        let witness = errs
            .iter()
            .find_map(|e| match e {
                GroupError::NonAssociative { a, b, c } => Some((*a, *b, *c)),
                _ => None,
            })
            .expect("witness triple");
        let (a, b, c) = witness;
        assert_ne!(loop5[loop5[a][b]][c], loop5[a][loop5[b][c]]);
        // x*y = -x-y mod 3: a quasigroup without associativity.
        let errs = Group::from_table(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, GroupError::NonAssociative { .. })));
        let errs = Group::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(errs.contains(&GroupError::IdentityNotAtZero));
    }

    #[test]
    fn encoding_roundtrip() {
        let g = Group::cyclic_product(&[2, 3]).unwrap();
        for e in g.elements() {
            assert_eq!(g.decode(&g.encode(e)).unwrap(), e);
        }
        assert_eq!(g.decode("1,2").unwrap(), 5);
        assert!(g.decode("2,0").is_err());
    }
}
