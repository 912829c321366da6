//! Integer linear algebra for finite abelian groups.
//!
//! Entries are `i128` and every arithmetic step is checked; overflow is an
//! error, never a wraparound.

mod abelian;
mod snf;
mod solve;

pub use abelian::{abelian_invariants, AbelianPresentation};
pub use snf::{smith_normal_form, SnfResult};
pub use solve::{kernel_mod, solve_linear_mod, LinearSolution, ModSystem};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_diagonal(rows: usize, cols: usize, diag: &[i128]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.checked_mul(other[(k, j)]).ok_or(Error::Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add(p).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i128, |acc, (&a, &b)| {
                    acc.checked_add(a.checked_mul(b).ok_or(Error::Overflow)?).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// Whether `S` is in Smith form: diagonal, non-negative, each nonzero
    /// entry dividing the next, zeros last.
    pub fn is_smith_form(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && self[(i, j)] != 0 {
                    return false;
                }
            }
        }
        let d = self.diagonal();
        if d.iter().any(|&x| x < 0) {
            return false;
        }
        d.windows(2).all(|w| match (w[0], w[1]) {
            (0, b) => b == 0,
            (a, b) => b % a == 0,
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m = self.to_rows();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = m[i][j].checked_mul(m[k][k]).ok_or(Error::Overflow)?;
                    let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::Overflow)?;
                    m[i][j] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
                }
            }
            prev = m[k][k];
        }
        Ok(sign * m[n - 1][n - 1])
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// `dst += q * src`, checked.
pub(crate) fn add_multiple(dst: &mut [i128], src: &[i128], q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = d.checked_add(s.checked_mul(q).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        }
    }
    Ok(())
}

/// Row-style Hermite normal form of the lattice spanned by `gens`.
///
/// Returns the nonzero rows: pivots strictly move right, are positive, and
/// entries above each pivot lie in `[0, pivot)`. The result depends only on
/// the lattice, so it doubles as a canonical basis.
pub fn hermite_basis(gens: &[Vec<i128>], width: usize) -> Result<Vec<Vec<i128>>> {
    let mut rows: Vec<Vec<i128>> =
        gens.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    for r in &rows {
        if r.len() != width {
            return Err(Error::DimensionMismatch { expected: width, found: r.len() });
        }
    }
    let mut top = 0;
    for col in 0..width {
        if top >= rows.len() {
            break;
        }
        loop {
            let pivot = (top..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| (rows[i][col].unsigned_abs(), i));
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[top][col]);
                    let (head, tail) = rows.split_at_mut(i);
                    add_multiple(&mut tail[0], &head[top], -q)?;
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col] == 0 {
            continue;
        }
        if rows[top][col] < 0 {
            for x in rows[top].iter_mut() {
                *x = -*x;
            }
        }
        let pivot = rows[top][col];
        for i in 0..top {
            let q = rows[i][col].div_euclid(pivot);
            let (head, tail) = rows.split_at_mut(top);
            add_multiple(&mut head[i], &tail[0], -q)?;
        }
        top += 1;
    }
    rows.truncate(top);
    rows.retain(|r| r.iter().any(|&x| x != 0));
    Ok(rows)
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
