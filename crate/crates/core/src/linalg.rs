//! Dense matrices over the rationals: rank, kernels, row-space membership.
//!
//! Rank is computed fraction-free: rows are scaled to primitive integer vectors
//! and eliminated with integer cross-multiplication, dividing out row contents
//! as we go so entries stay small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        RationalMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows).map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect()).collect();
        Self::from_rows(self.cols + other.cols, rows)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Q::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Product `vs * self` for a list of row vectors.
    pub fn left_mul_all(&self, vs: &[Vec<Q>]) -> Self {
        Self::from_rows(self.cols, vs.iter().map(|v| self.left_mul(v)).collect())
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        Self::from_rows(cols.len(), rows)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| primitive_integer_row(self.row(i)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        fraction_free_rank(&mut rows, self.cols)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn right_kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Q>> {
        self.transpose().right_kernel()
    }

    /// Indices of a maximal set of linearly independent rows, chosen greedily
    /// in row order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = EchelonBasis::new(self.cols);
        (0..self.rows).filter(|&i| basis.insert(self.row(i).to_vec())).collect()
    }
}

fn primitive_integer_row(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

fn fraction_free_rank(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        // Smallest nonzero pivot keeps the cross-multiplied entries small.
        let Some(p) = (rank..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].abs()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let (mp, mr) = (pivot / &g, &row[c] / &g);
            for j in c..cols {
                row[j] = &row[j] * &mp - &pivot_row[j] * &mr;
            }
            *row = make_primitive(std::mem::take(row));
        }
        rank += 1;
    }
    rank
}

/// Incrementally maintained reduced echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    /// `(pivot column, row)`, each row normalized to 1 at its pivot and zero
    /// at every other stored pivot.
    rows: Vec<(usize, Vec<Q>)>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<Q>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

/// Expresses vectors in coordinates of a fixed linearly independent row set.
pub struct CoordinateSolver {
    columns: Vec<usize>,
    inverse: RationalMatrix,
}

impl CoordinateSolver {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &RationalMatrix) -> Self {
        let (_, columns) = basis.rref();
        assert_eq!(columns.len(), basis.rows(), "basis rows are dependent");
        let square = basis.select_columns(&columns);
        let inverse = invert(&square);
        CoordinateSolver { columns, inverse }
    }

    /// Coordinates `c` with `c * basis = v`, assuming `v` lies in the row space.
    pub fn coordinates(&self, v: &[Q]) -> Vec<Q> {
        let restricted: Vec<Q> = self.columns.iter().map(|&j| v[j].clone()).collect();
        self.inverse.left_mul(&restricted)
    }
}

fn invert(m: &RationalMatrix) -> RationalMatrix {
    let n = m.rows();
    let (r, pivots) = m.hconcat(&RationalMatrix::identity(n)).rref();
    assert_eq!(&pivots[..n], &(0..n).collect::<Vec<_>>()[..], "singular matrix");
    let cols: Vec<usize> = (n..2 * n).collect();
    r.select_columns(&cols)
}
