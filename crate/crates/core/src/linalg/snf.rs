use crate::error::{Error, Result};

use super::IntMatrix;

/// `U * A * V = S` with `U`, `V` unimodular and `S` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, kept alongside since cokernel generators need it.
    pub v_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.s.diagonal().iter().take_while(|&&d| d != 0).count()
    }

    /// Nonzero diagonal entries of `S`.
    pub fn factors(&self) -> Vec<i128> {
        self.s.diagonal().into_iter().filter(|&d| d != 0).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult> {
    let calc = Snf::run(a.clone(), true)?;
    Ok(SnfResult { u: calc.u.expect("tracked"), s: calc.s, v: calc.v, v_inv: calc.v_inv })
}

/// Smith form without the left transform, for tall systems where only the
/// column space matters.
pub(crate) fn smith_normal_form_right(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let calc = Snf::run(a.clone(), false)?;
    Ok((calc.s, calc.v, calc.v_inv))
}

struct Snf {
    s: IntMatrix,
    u: Option<IntMatrix>,
    v: IntMatrix,
    v_inv: IntMatrix,
}

fn checked_sub_mul(a: i128, q: i128, b: i128) -> Result<i128> {
    if b == 0 || q == 0 {
        return Ok(a);
    }
    a.checked_sub(q.checked_mul(b).ok_or(Error::Overflow)?).ok_or(Error::Overflow)
}

impl Snf {
    fn run(a: IntMatrix, track_left: bool) -> Result<Snf> {
        let (m, n) = (a.rows(), a.cols());
        let mut calc = Snf {
            s: a,
            u: track_left.then(|| IntMatrix::identity(m)),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        };
        for t in 0..m.min(n) {
            if !calc.diagonalize_at(t)? {
                break;
            }
        }
        Ok(calc)
    }

    /// Smallest nonzero |entry| in the trailing block, ties row-major.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u128, usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = self.s[(i, j)];
                if x != 0 && best.is_none_or(|(b, _, _)| x.unsigned_abs() < b) {
                    best = Some((x.unsigned_abs(), i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn diagonalize_at(&mut self, t: usize) -> Result<bool> {
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return Ok(false);
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.s[(t, t)];
            let mut clean = true;
            for i in t + 1..self.s.rows() {
                let q = self.s[(i, t)] / p;
                self.row_sub(i, t, q)?;
                clean &= self.s[(i, t)] == 0;
            }
            for j in t + 1..self.s.cols() {
                let q = self.s[(t, j)] / p;
                self.col_sub(j, t, q)?;
                clean &= self.s[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let bad = (t + 1..self.s.rows())
                .find(|&i| (t + 1..self.s.cols()).any(|j| self.s[(i, j)] % p != 0));
            if let Some(i) = bad {
                self.row_sub(t, i, -1)?;
                continue;
            }
            if p < 0 {
                self.negate_row(t);
            }
            return Ok(true);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_rows(&mut self.s, a, b);
        if let Some(u) = &mut self.u {
            swap_rows(u, a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        swap_cols(&mut self.s, a, b);
        swap_cols(&mut self.v, a, b);
        swap_rows(&mut self.v_inv, a, b);
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        row_sub(&mut self.s, i, t, q)?;
        if let Some(u) = &mut self.u {
            row_sub(u, i, t, q)?;
        }
        Ok(())
    }

    /// col_j -= q * col_t; the inverse picks up row_t += q * row_j.
    fn col_sub(&mut self, j: usize, t: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        col_sub(&mut self.s, j, t, q)?;
        col_sub(&mut self.v, j, t, q)?;
        row_sub(&mut self.v_inv, t, j, -q)
    }

    fn negate_row(&mut self, t: usize) {
        for j in 0..self.s.cols() {
            self.s[(t, j)] = -self.s[(t, j)];
        }
        if let Some(u) = &mut self.u {
            for j in 0..u.cols() {
                u[(t, j)] = -u[(t, j)];
            }
        }
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..m.cols() {
        let tmp = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = tmp;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..m.rows() {
        let tmp = m[(i, a)];
        m[(i, a)] = m[(i, b)];
        m[(i, b)] = tmp;
    }
}

fn row_sub(m: &mut IntMatrix, i: usize, t: usize, q: i128) -> Result<()> {
    for j in 0..m.cols() {
        let x = checked_sub_mul(m[(i, j)], q, m[(t, j)])?;
        m[(i, j)] = x;
    }
    Ok(())
}

fn col_sub(m: &mut IntMatrix, j: usize, t: usize, q: i128) -> Result<()> {
    for i in 0..m.rows() {
        let x = checked_sub_mul(m[(i, j)], q, m[(i, t)])?;
        m[(i, j)] = x;
    }
    Ok(())
}
