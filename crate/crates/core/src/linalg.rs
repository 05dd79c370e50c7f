//! Exact linear algebra over [`Scalar`]: dense matrices with fraction-free
//! determinants and reduced echelon forms, plus an incremental sparse echelon
//! builder for large homogeneous systems.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{Scalar, Q};

/// Evaluation point used to certify generic ranks: the rank at a rational
/// specialisation never exceeds the rank over `Q(q)`.
fn probe_point() -> Q {
    Q::new(7.into(), 3.into())
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    fn has_generic_entries(&self) -> bool {
        self.data.iter().any(|s| matches!(s, Scalar::Gen(_)))
    }

    /// Specialise generic entries at `q = q0`; `None` if some entry has a pole.
    pub fn eval_at(&self, q0: &Q) -> Option<Matrix> {
        let data = self
            .data
            .iter()
            .map(|s| s.eval_at(q0).map(Scalar::Rat))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = Scalar::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Scalar::zero();
            };
            if piv != k {
                a.swap_rows(piv, k);
                sign = !sign;
            }
            let akk = a[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(i, j)] * &akk) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = &v / &prev;
                }
                a[(i, k)] = Scalar::zero();
            }
            prev = akk;
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns (first nonzero pivot).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(piv) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(piv, r);
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..a.cols {
                if !a[(r, j)].is_zero() {
                    a[(r, j)] = &a[(r, j)] * &inv;
                }
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if !a[(r, j)].is_zero() {
                        let t = &f * &a[(r, j)];
                        a[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if self.has_generic_entries() {
            if let Some(m) = self.eval_at(&probe_point()) {
                if m.rref().1.len() == full {
                    return full;
                }
            }
        }
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}` in reduced form: one vector per free column,
    /// with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        if self.has_generic_entries() && self.rows >= self.cols {
            if let Some(m) = self.eval_at(&probe_point()) {
                if m.rref().1.len() == self.cols {
                    return Vec::new();
                }
            }
        }
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Rank of a family of vectors of common length.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// Do two families span the same subspace?
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    let ra = rank_of(a);
    let rb = rank_of(b);
    if ra != rb {
        return false;
    }
    let joined: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    rank_of(&joined) == ra
}

/// Is `v` in the span of `family`?
pub fn in_span(family: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut joined = family.to_vec();
    let r = rank_of(&joined);
    joined.push(v.to_vec());
    rank_of(&joined) == r
}

/// Column-space basis (as the pivot columns of the matrix).
pub fn column_space(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|c| m.column(c)).collect()
}

pub type SparseRow = Vec<(usize, Scalar)>;

/// `a + f·b` for sorted sparse rows.
fn axpy(a: &SparseRow, f: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|t| t.0);
        let cb = b.get(j).map(|t| t.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 + &(f * &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, f * &b[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental echelon form for a homogeneous sparse system in `ncols`
/// unknowns. Rows are kept with a unit leading coefficient, keyed by the
/// leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> SparseEchelon {
        SparseEchelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Build from a row list; entries need not be sorted or merged.
    pub fn from_rows<I: IntoIterator<Item = SparseRow>>(ncols: usize, rows: I) -> SparseEchelon {
        let mut e = SparseEchelon::new(ncols);
        for r in rows {
            e.push(r);
        }
        e
    }

    /// Add an equation; returns `true` if it was independent of the rest.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let mut row = normalize_row(row);
        while let Some((lead, coef)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = -coef;
                    row = axpy(&row, &f, p);
                }
                None => {
                    let inv = coef.inv().expect("nonzero");
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Nullspace basis, one vector per free column (with a 1 there).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.ncols];
                x[f] = Scalar::one();
                for (&pc, row) in self.pivots.iter().rev() {
                    let s: Scalar = row[1..]
                        .iter()
                        .filter(|(c, _)| !x[*c].is_zero())
                        .map(|(c, v)| v * &x[*c])
                        .sum();
                    x[pc] = -s;
                }
                x
            })
            .collect()
    }
}

fn normalize_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|t| t.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Specialise a sparse row at a rational `q`; `None` on a pole.
pub fn eval_row(row: &SparseRow, q0: &Q) -> Option<SparseRow> {
    row.iter()
        .map(|(c, v)| v.eval_at(q0).map(|x| (*c, Scalar::Rat(x))))
        .collect()
}

/// Nullity of a homogeneous system. Generic systems are first tried at a
/// rational point: if the nullity there equals `known_lower`, it is exact.
pub fn system_nullity(ncols: usize, rows: &[SparseRow], known_lower: usize) -> usize {
    let generic = rows.iter().flatten().any(|(_, v)| matches!(v, Scalar::Gen(_)));
    if generic {
        if let Some(spec) = rows.iter().map(|r| eval_row(r, &probe_point())).collect::<Option<Vec<_>>>() {
            let e = SparseEchelon::from_rows(ncols, spec);
            if e.nullity() <= known_lower {
                return known_lower.max(e.nullity());
            }
        }
    }
    SparseEchelon::from_rows(ncols, rows.iter().cloned()).nullity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QMode;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).det(), Scalar::int(5));
        assert_eq!(m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), Scalar::int(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), Scalar::zero());
    }

    #[test]
    fn symbolic_determinant() {
        let mode = QMode::Generic;
        let d = mode.delta();
        let g = Matrix::from_rows(vec![vec![d.clone(), Scalar::one()], vec![Scalar::one(), d.clone()]]);
        assert_eq!(g.det(), &(&d * &d) - &Scalar::one());
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn nullspace_basis() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![Scalar::int(-1), Scalar::one(), Scalar::zero()]]);
        assert!(a.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn sparse_matches_dense() {
        let a = m(&[&[1, 2, 0, -1], &[2, 4, 1, 0], &[3, 6, 1, -1]]);
        let rows: Vec<SparseRow> = (0..3)
            .map(|r| (0..4).filter(|&c| !a[(r, c)].is_zero()).map(|c| (c, a[(r, c)].clone())).collect())
            .collect();
        let e = SparseEchelon::from_rows(4, rows);
        assert_eq!(e.rank(), a.rank());
        for v in e.nullspace() {
            assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
        }
        assert!(same_span(&e.nullspace(), &a.nullspace()));
    }
}
