use crate::error::{Error, Result};

use super::snf::smith_normal_form_right;
use super::{add_multiple, gcd, hermite_basis, smith_normal_form, IntMatrix};

/// Solutions of `A x ≡ b` where row `i` is read modulo `moduli[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// A particular solution, reduced against the kernel basis.
    pub particular: Option<Vec<i128>>,
    /// Hermite basis of `{x : A x ≡ 0}`.
    pub kernel: Vec<Vec<i128>>,
}

/// A system `A x ≡ b (mod moduli)` factored once and solved for many `b`.
///
/// The congruences are lifted to the integer system `[A | D] (x, k) = b`
/// with `D = diag(moduli)` and diagonalized by a Smith form.
#[derive(Clone, Debug)]
pub struct ModSystem {
    cols: usize,
    rank: usize,
    u: IntMatrix,
    diag: Vec<i128>,
    v: IntMatrix,
    kernel: Vec<Vec<i128>>,
}

impl ModSystem {
    pub fn new(a: &IntMatrix, moduli: &[i128]) -> Result<Self> {
        if moduli.len() != a.rows() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: moduli.len() });
        }
        let (rows, cols) = (a.rows(), a.cols());
        let mut lifted = IntMatrix::zeros(rows, cols + rows);
        for i in 0..rows {
            for j in 0..cols {
                lifted[(i, j)] = a[(i, j)];
            }
            lifted[(i, cols + i)] = moduli[i].abs();
        }
        let snf = smith_normal_form(&lifted)?;
        let rank = snf.rank();
        let diag = snf.s.diagonal();
        let gens: Vec<Vec<i128>> = (rank..cols + rows)
            .map(|j| snf.v.column(j)[..cols].to_vec())
            .collect();
        let kernel = hermite_basis(&gens, cols)?;
        Ok(ModSystem { cols, rank, u: snf.u, diag, v: snf.v, kernel })
    }

    pub fn kernel(&self) -> &[Vec<i128>] {
        &self.kernel
    }

    pub fn unknowns(&self) -> usize {
        self.cols
    }

    pub fn solve(&self, b: &[i128]) -> Result<Option<Vec<i128>>> {
        if b.len() != self.u.cols() {
            return Err(Error::DimensionMismatch { expected: self.u.cols(), found: b.len() });
        }
        let c = self.u.mul_vec(b)?;
        let mut w = vec![0i128; self.v.cols()];
        for (i, &ci) in c.iter().enumerate() {
            if i < self.rank {
                if ci % self.diag[i] != 0 {
                    return Ok(None);
                }
                w[i] = ci / self.diag[i];
            } else if ci != 0 {
                return Ok(None);
            }
        }
        let z = self.v.mul_vec(&w)?;
        let mut x = z[..self.cols].to_vec();
        reduce_against(&mut x, &self.kernel)?;
        Ok(Some(x))
    }
}

/// Canonical coset representative of `x` modulo a Hermite basis.
pub(crate) fn reduce_against(x: &mut [i128], basis: &[Vec<i128>]) -> Result<()> {
    for row in basis {
        let Some(c) = row.iter().position(|&v| v != 0) else { continue };
        let q = x[c].div_euclid(row[c]);
        add_multiple(x, row, -q)?;
    }
    Ok(())
}

pub fn solve_linear_mod(a: &IntMatrix, moduli: &[i128], b: &[i128]) -> Result<LinearSolution> {
    let sys = ModSystem::new(a, moduli)?;
    let particular = sys.solve(b)?;
    Ok(LinearSolution { particular, kernel: sys.kernel })
}

/// Hermite basis of `{x : A x ≡ 0 (mod m)}` for a single modulus.
///
/// With one modulus the left transform never matters, so this skips it;
/// that keeps tall systems (many more equations than unknowns) cheap.
pub fn kernel_mod(a: &IntMatrix, modulus: i128) -> Result<Vec<Vec<i128>>> {
    let cols = a.cols();
    let (s, v, _) = smith_normal_form_right(a)?;
    let diag = s.diagonal();
    let m = modulus.abs();
    let gens: Vec<Vec<i128>> = (0..cols)
        .map(|j| {
            let scale = match diag.get(j) {
                Some(&d) if d != 0 => {
                    if m == 0 {
                        0
                    } else {
                        m / gcd(d, m)
                    }
                }
                _ => 1,
            };
            v.column(j).into_iter().map(|x| x * scale).collect()
        })
        .collect();
    hermite_basis(&gens, cols)
}
