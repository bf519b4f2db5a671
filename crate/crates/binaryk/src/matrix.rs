//! Dense matrices over a single [`Ring`], with the exact linear algebra the
//! rest of the crate is built on: multiplication, rank/kernel over fields,
//! fraction-free determinants, and Smith normal form over the integers.
//!
//! Matrices act on column vectors; `a.mul(&b)` applies `b` first. Zero rows
//! or columns are legal, and an empty square matrix is the identity of the
//! zero module.

use crate::ring::{Elem, Ring};
use num::{BigInt, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatError {
    DimMismatch { left: (usize, usize), right: (usize, usize) },
    RingMismatch,
    NotSquare { rows: usize, cols: usize },
    NeedField,
    NeedZ,
    Singular,
    BadEntry { row: usize, col: usize },
    WrongLength { expected: usize, found: usize },
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {}x{} against {}x{}", left.0, left.1, right.0, right.1)
            }
            MatError::RingMismatch => write!(f, "matrices live over different rings"),
            MatError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            MatError::NeedField => write!(f, "operation requires field coefficients"),
            MatError::NeedZ => write!(f, "operation requires integer coefficients"),
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::BadEntry { row, col } => write!(f, "entry ({row},{col}) not in the ring"),
            MatError::WrongLength { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
        }
    }
}

impl std::error::Error for MatError {}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self, MatError> {
        if entries.len() != rows * cols {
            return Err(MatError::WrongLength { expected: rows * cols, found: entries.len() });
        }
        for (k, e) in entries.iter().enumerate() {
            if !ring.contains(e) {
                return Err(MatError::BadEntry { row: k / cols.max(1), col: k % cols.max(1) });
            }
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, entries }
    }

    pub fn from_rows(ring: Ring, data: Vec<Vec<Elem>>) -> Result<Self, MatError> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        for r in &data {
            if r.len() != cols {
                return Err(MatError::WrongLength { expected: cols, found: r.len() });
            }
        }
        Matrix::new(ring, rows, cols, data.into_iter().flatten().collect())
    }

    pub fn from_i64(ring: &Ring, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        Matrix::from_fn(ring.clone(), rows, cols, |i, j| ring.from_i64(data[i][j]))
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix { rows, cols, entries: vec![z; rows * cols], ring }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        Matrix::from_fn(ring.clone(), n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Product `self * other`: apply `other` first.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != other.ring {
            return Err(MatError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(MatError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let r = &self.ring;
        Ok(Matrix::from_fn(r.clone(), self.rows, other.cols, |i, j| {
            let mut acc = r.zero();
            for k in 0..self.cols {
                acc = r.add(&acc, &r.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        }))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != other.ring {
            return Err(MatError::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let r = self.ring.clone();
        Ok(Matrix::from_fn(r.clone(), self.rows, self.cols, |i, j| r.add(self.at(i, j), other.at(i, j))))
    }

    pub fn neg(&self) -> Matrix {
        let r = self.ring.clone();
        Matrix::from_fn(r.clone(), self.rows, self.cols, |i, j| r.neg(self.at(i, j)))
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let r = self.ring.clone();
        Matrix::from_fn(r.clone(), self.rows, self.cols, |i, j| r.mul(c, self.at(i, j)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Map entries into another ring, e.g. along a field embedding.
    pub fn map_entries(&self, ring: Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix::from_fn(ring, self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != other.ring {
            return Err(MatError::RingMismatch);
        }
        if self.rows != other.rows {
            return Err(MatError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != other.ring {
            return Err(MatError::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(MatError::DimMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(Matrix::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self.at(i, j).clone() } else { other.at(i - self.rows, j).clone() }
        }))
    }

    /// Block matrix [[a, b], [c, d]]; shapes must be consistent.
    pub fn block2x2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix, MatError> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let zt = Matrix::zero(a.ring.clone(), a.rows, b.cols);
        let zb = Matrix::zero(a.ring.clone(), b.rows, a.cols);
        Matrix::block2x2(a, &zt, &zb, b).expect("consistent block shapes")
    }

    /// Kronecker product; entry ((i,k),(j,l)) = a[i][j] * b[k][l].
    pub fn kron(&self, other: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != other.ring {
            return Err(MatError::RingMismatch);
        }
        let r = self.ring.clone();
        Ok(Matrix::from_fn(r.clone(), self.rows * other.rows, self.cols * other.cols, |i, j| {
            let (ia, ib) = (i / other.rows, i % other.rows);
            let (ja, jb) = (j / other.cols, j % other.cols);
            r.mul(self.at(ia, ja), other.at(ib, jb))
        }))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_cols(&[j])
    }

    // -- elimination over fields ---------------------------------------------

    /// Row-echelon rank; field coefficients only.
    pub fn rank(&self) -> Result<usize, MatError> {
        Ok(self.rank_and_kernel()?.0)
    }

    /// Rank together with a basis of the null space (one column per basis
    /// vector). Fields only; use [`Matrix::snf`] over the integers.
    pub fn rank_and_kernel(&self) -> Result<(usize, Matrix), MatError> {
        if !self.ring.is_field() {
            return Err(MatError::NeedField);
        }
        let r = &self.ring;
        let mut work: Vec<Vec<Elem>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&i| !r.is_zero(&work[i][col])) else {
                continue;
            };
            work.swap(row, pr);
            let inv = r.inv(&work[row][col]).expect("nonzero pivot");
            for j in col..self.cols {
                work[row][j] = r.mul(&work[row][j], &inv);
            }
            for i in 0..self.rows {
                if i != row && !r.is_zero(&work[i][col]) {
                    let factor = work[i][col].clone();
                    for j in col..self.cols {
                        let sub = r.mul(&factor, &work[row][j]);
                        work[i][j] = r.sub(&work[i][j], &sub);
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> =
            (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let kernel = Matrix::from_fn(r.clone(), self.cols, free_cols.len(), |i, j| {
            let fc = free_cols[j];
            if i == fc {
                r.one()
            } else if let Some(k) = pivot_cols.iter().position(|&c| c == i) {
                r.neg(&work[pivots[k].0][fc])
            } else {
                r.zero()
            }
        });
        Ok((rank, kernel))
    }

    /// Inverse of a square matrix over a field.
    pub fn inverse(&self) -> Result<Matrix, MatError> {
        if !self.ring.is_field() {
            return Err(MatError::NeedField);
        }
        if self.rows != self.cols {
            return Err(MatError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let r = &self.ring;
        let mut work: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            self.at(i, j).clone()
                        } else if j - n == i {
                            r.one()
                        } else {
                            r.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&i| !r.is_zero(&work[i][col])) else {
                return Err(MatError::Singular);
            };
            work.swap(col, pr);
            let inv = r.inv(&work[col][col]).expect("nonzero pivot");
            for j in 0..2 * n {
                work[col][j] = r.mul(&work[col][j], &inv);
            }
            for i in 0..n {
                if i != col && !r.is_zero(&work[i][col]) {
                    let factor = work[i][col].clone();
                    for j in 0..2 * n {
                        let sub = r.mul(&factor, &work[col][j]);
                        work[i][j] = r.sub(&work[i][j], &sub);
                    }
                }
            }
        }
        Ok(Matrix::from_fn(r.clone(), n, n, |i, j| work[i][n + j].clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination. Works over
    /// every supported ring; divisions are exact by construction.
    pub fn det(&self) -> Result<Elem, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let r = &self.ring;
        if n == 0 {
            return Ok(r.one()); // empty product convention
        }
        let mut work: Vec<Vec<Elem>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = r.one();
        for k in 0..n - 1 {
            if r.is_zero(&work[k][k]) {
                let Some(pr) = (k + 1..n).find(|&i| !r.is_zero(&work[i][k])) else {
                    return Ok(r.zero());
                };
                work.swap(k, pr);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = r.mul(&work[k][k], &work[i][j]);
                    let b = r.mul(&work[i][k], &work[k][j]);
                    work[i][j] = r.exact_div(&r.sub(&a, &b), &prev);
                }
                work[i][k] = r.zero();
            }
            prev = work[k][k].clone();
        }
        let d = work[n - 1][n - 1].clone();
        Ok(if negate { r.neg(&d) } else { d })
    }

    /// Smith normal form of an integer matrix: `u * self * v = s` with `u`,
    /// `v` unimodular and `s` diagonal, nonnegative, each entry dividing the
    /// next.
    pub fn snf(&self) -> Result<SmithNormalForm, MatError> {
        if self.ring != Ring::Z {
            return Err(MatError::NeedZ);
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut s: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| match self.at(i, j) {
                        Elem::Z(z) => z.clone(),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        let mut u: Vec<Vec<BigInt>> = big_identity(rows);
        let mut v: Vec<Vec<BigInt>> = big_identity(cols);

        let mut t = 0usize;
        while t < rows.min(cols) {
            // smallest nonzero entry of the trailing block moves to the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !s[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            swap_rows(&mut s, &mut u, t, bi);
            swap_cols(&mut s, &mut v, t, bj);

            'reduce: loop {
                // clear the pivot column
                for i in t + 1..rows {
                    if s[i][t].is_zero() {
                        continue;
                    }
                    let q = &s[i][t] / &s[t][t];
                    row_submul(&mut s, &mut u, i, t, &q);
                    if !s[i][t].is_zero() {
                        swap_rows(&mut s, &mut u, t, i);
                        continue 'reduce;
                    }
                }
                // clear the pivot row
                for j in t + 1..cols {
                    if s[t][j].is_zero() {
                        continue;
                    }
                    let q = &s[t][j] / &s[t][t];
                    col_submul(&mut s, &mut v, j, t, &q);
                    if !s[t][j].is_zero() {
                        swap_cols(&mut s, &mut v, t, j);
                        continue 'reduce;
                    }
                }
                // pivot must divide the whole trailing block
                for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&s[i][j] % &s[t][t]).is_zero() {
                            row_addinto(&mut s, &mut u, t, i);
                            continue 'reduce;
                        }
                    }
                }
                break;
            }
            t += 1;
        }
        for k in 0..rows.min(cols) {
            if s[k][k].is_negative() {
                for j in 0..cols {
                    s[k][j] = -s[k][j].clone();
                }
                for j in 0..rows {
                    u[k][j] = -u[k][j].clone();
                }
            }
        }
        let to_matrix = |grid: &Vec<Vec<BigInt>>, r: usize, c: usize| {
            Matrix::from_fn(Ring::Z, r, c, |i, j| Elem::Z(grid[i][j].clone()))
        };
        Ok(SmithNormalForm {
            u: to_matrix(&u, rows, rows),
            s: to_matrix(&s, rows, cols),
            v: to_matrix(&v, cols, cols),
        })
    }

    /// Diagonal of the Smith form that are different from one, in order.
    pub fn invariant_factors(&self) -> Result<Vec<BigInt>, MatError> {
        let snf = self.snf()?;
        let mut out = Vec::new();
        for k in 0..snf.s.rows().min(snf.s.cols()) {
            if let Elem::Z(d) = snf.s.at(k, k) {
                if !d.is_zero() && !d.is_one() {
                    out.push(d.clone());
                }
            }
        }
        Ok(out)
    }

    /// Rank over the fraction field (for `Z`, rank over `Q`).
    pub fn rank_any(&self) -> usize {
        if self.ring.is_field() {
            return self.rank().expect("field rank");
        }
        // lift to Q
        let q = Ring::Q;
        let lifted = self.map_entries(q, |e| match e {
            Elem::Z(z) => Elem::Q(num::BigRational::from_integer(z.clone())),
            _ => unreachable!(),
        });
        lifted.rank().expect("rank over Q")
    }

    /// Injective with free cokernel: the admissible monomorphism condition on
    /// free modules. Over a field this is plain injectivity.
    pub fn is_admissible_mono(&self) -> bool {
        if self.ring.is_field() {
            return self.rank().expect("field rank") == self.cols;
        }
        let snf = self.snf().expect("snf over Z");
        let mut ones = 0;
        for k in 0..snf.s.rows().min(snf.s.cols()) {
            match snf.s.at(k, k) {
                Elem::Z(d) if d.is_one() => ones += 1,
                Elem::Z(d) if d.is_zero() => {}
                _ => return false, // nontrivial invariant factor: cokernel has torsion
            }
        }
        ones == self.cols
    }

    /// Surjective as a map of free modules.
    pub fn is_admissible_epi(&self) -> bool {
        if self.ring.is_field() {
            return self.rank().expect("field rank") == self.rows;
        }
        let snf = self.snf().expect("snf over Z");
        let mut ones = 0;
        for k in 0..snf.s.rows().min(snf.s.cols()) {
            match snf.s.at(k, k) {
                Elem::Z(d) if d.is_one() => ones += 1,
                Elem::Z(d) if d.is_zero() => {}
                _ => return false,
            }
        }
        ones == self.rows
    }

    /// Solve `self * x = rhs` where `self` is unimodular over `Z`; the result
    /// is integral. Used for coordinates in a Smith basis.
    pub fn solve_unimodular(&self, rhs: &Matrix) -> Result<Matrix, MatError> {
        if self.ring != Ring::Z || rhs.ring != Ring::Z {
            return Err(MatError::NeedZ);
        }
        let lift = |m: &Matrix| {
            m.map_entries(Ring::Q, |e| match e {
                Elem::Z(z) => Elem::Q(num::BigRational::from_integer(z.clone())),
                _ => unreachable!(),
            })
        };
        let inv = lift(self).inverse()?;
        let sol = inv.mul(&lift(rhs))?;
        let mut out = Vec::with_capacity(sol.rows * sol.cols);
        for i in 0..sol.rows {
            for j in 0..sol.cols {
                match sol.at(i, j) {
                    Elem::Q(r) if r.denom().is_one() => out.push(Elem::Z(r.numer().clone())),
                    _ => return Err(MatError::Singular),
                }
            }
        }
        Matrix::new(Ring::Z, sol.rows, sol.cols, out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.ring.format(self.at(i, j)))?;
            }
            write!(f, "]")?;
            if i + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: Matrix,
    pub s: Matrix,
    pub v: Matrix,
}

impl SmithNormalForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|k| match self.s.at(k, k) {
                Elem::Z(d) => d.clone(),
                _ => unreachable!(),
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn big_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_rows(s: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        s.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_cols(s: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in s.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t, on both the work matrix and the row transform.
fn row_submul(s: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    for j in 0..s[i].len() {
        let d = q * &s[t][j];
        s[i][j] -= d;
    }
    for j in 0..u[i].len() {
        let d = q * &u[t][j];
        u[i][j] -= d;
    }
}

/// col_j -= q * col_t, on both the work matrix and the column transform.
fn col_submul(s: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    for row in s.iter_mut() {
        let d = q * &row[t];
        row[j] -= d;
    }
    for row in v.iter_mut() {
        let d = q * &row[t];
        row[j] -= d;
    }
}

/// row_t += row_i.
fn row_addinto(s: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize, i: usize) {
    for j in 0..s[t].len() {
        let d = s[i][j].clone();
        s[t][j] += d;
    }
    for j in 0..u[t].len() {
        let d = u[i][j].clone();
        u[t][j] += d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Ring {
        Ring::fp(2).unwrap()
    }

    fn f5() -> Ring {
        Ring::fp(5).unwrap()
    }

    #[test]
    fn identity_multiplication() {
        let a = Matrix::from_i64(&f5(), &[&[1, 2], &[3, 4]]);
        let i2 = Matrix::identity(f5(), 2);
        assert_eq!(i2.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i2).unwrap(), a);
    }

    #[test]
    fn schoolbook_product_over_f2() {
        let a = Matrix::from_i64(&f2(), &[&[1, 1], &[0, 1]]);
        let b = Matrix::from_i64(&f2(), &[&[1, 0], &[1, 1]]);
        let expected = Matrix::from_i64(&f2(), &[&[0, 1], &[1, 1]]);
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn empty_matrix_product() {
        let a = Matrix::zero(f5(), 0, 3);
        let b = Matrix::zero(f5(), 3, 2);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows(), c.cols()), (0, 2));
    }

    #[test]
    fn mul_errors() {
        let a = Matrix::zero(f5(), 2, 3);
        let b = Matrix::zero(f5(), 2, 3);
        assert!(matches!(a.mul(&b), Err(MatError::DimMismatch { .. })));
        let c = Matrix::zero(f2(), 3, 1);
        assert!(matches!(a.mul(&c), Err(MatError::RingMismatch)));
    }

    #[test]
    fn rank_and_kernel_examples() {
        let zero = Matrix::zero(f5(), 3, 3);
        let (rk, ker) = zero.rank_and_kernel().unwrap();
        assert_eq!(rk, 0);
        assert_eq!(ker, Matrix::identity(f5(), 3));

        let id4 = Matrix::identity(f5(), 4);
        let (rk, ker) = id4.rank_and_kernel().unwrap();
        assert_eq!(rk, 4);
        assert_eq!(ker.cols(), 0);

        // row reduction by hand: [[1,2],[2,4]] over Q has rank 1, kernel (-2, 1)
        let q = Ring::Q;
        let a = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        let (rk, ker) = a.rank_and_kernel().unwrap();
        assert_eq!(rk, 1);
        assert_eq!(ker, Matrix::from_i64(&q, &[&[-2], &[1]]));

        assert!(matches!(Matrix::zero(Ring::Z, 1, 1).rank_and_kernel(), Err(MatError::NeedField)));
    }

    #[test]
    fn determinant_examples() {
        let q = Ring::Q;
        assert_eq!(Matrix::identity(q.clone(), 3).det().unwrap(), q.one());
        // cofactor expansion oracle: det [[1,1],[0,2]] = 1*2 - 1*0 = 2
        let a = Matrix::from_i64(&q, &[&[1, 1], &[0, 2]]);
        assert_eq!(a.det().unwrap(), q.from_i64(2));
        assert_eq!(Matrix::zero(q.clone(), 0, 0).det().unwrap(), q.one());
        assert!(matches!(
            Matrix::zero(q, 2, 3).det(),
            Err(MatError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn determinant_with_zero_pivot() {
        let q = Ring::Q;
        let a = Matrix::from_i64(&q, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.det().unwrap(), q.from_i64(-1));
        let b = Matrix::from_i64(&q, &[&[0, 0], &[1, 1]]);
        assert_eq!(b.det().unwrap(), q.zero());
    }

    fn check_snf(a: &Matrix) {
        let snf = a.snf().unwrap();
        let lhs = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.s, "u*a*v reconstructs s");
        let z = Ring::Z;
        let du = snf.u.det().unwrap();
        let dv = snf.v.det().unwrap();
        assert!(du == z.one() || du == z.from_i64(-1), "u unimodular");
        assert!(dv == z.one() || dv == z.from_i64(-1), "v unimodular");
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain {diag:?}");
            } else {
                assert!(w[1].is_zero(), "zeros trail the chain");
            }
        }
        for d in diag {
            assert!(!d.is_negative());
        }
    }

    #[test]
    fn snf_examples() {
        let z = Ring::Z;
        let i2 = Matrix::identity(z.clone(), 2);
        let snf = i2.snf().unwrap();
        assert_eq!(snf.s, i2);

        // gcd/lcm oracle on 2x2: diag(2,3) has smith form diag(1,6)
        let a = Matrix::from_i64(&z, &[&[2, 0], &[0, 3]]);
        check_snf(&a);
        assert_eq!(a.snf().unwrap().s, Matrix::from_i64(&z, &[&[1, 0], &[0, 6]]));

        let zero1 = Matrix::from_i64(&z, &[&[0]]);
        assert_eq!(zero1.snf().unwrap().s, zero1);

        let b = Matrix::from_i64(&z, &[&[4, 6, 2], &[6, 12, 6], &[2, 6, 4]]);
        check_snf(&b);

        assert!(matches!(Matrix::zero(f5(), 1, 1).snf(), Err(MatError::NeedZ)));
    }

    #[test]
    fn admissibility_over_z() {
        let z = Ring::Z;
        // injective with free cokernel
        let m = Matrix::from_i64(&z, &[&[1, 0], &[0, 1], &[3, 4]]);
        assert!(m.is_admissible_mono());
        // injective but cokernel Z/2
        let m2 = Matrix::from_i64(&z, &[&[2], &[0]]);
        assert!(!m2.is_admissible_mono());
        // surjective over Z
        let e = Matrix::from_i64(&z, &[&[1, 0, 2]]);
        assert!(e.is_admissible_epi());
        // surjective over Q but not over Z
        let e2 = Matrix::from_i64(&z, &[&[2, 4]]);
        assert!(!e2.is_admissible_epi());
    }

    #[test]
    fn inverse_round_trip() {
        let f = f5();
        let a = Matrix::from_i64(&f, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(f.clone(), 2));
        let sing = Matrix::from_i64(&f, &[&[1, 2], &[2, 4]]);
        assert!(matches!(sing.inverse(), Err(MatError::Singular)));
    }

    #[test]
    fn kron_block_shapes() {
        let f = f5();
        let a = Matrix::from_i64(&f, &[&[2]]);
        let b = Matrix::from_i64(&f, &[&[1, 0], &[1, 1]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k, Matrix::from_i64(&f, &[&[2, 0], &[2, 2]]));
    }
}
