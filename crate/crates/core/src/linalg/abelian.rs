use std::collections::HashMap;

use crate::error::Result;
use crate::group::{cyclic, direct_product, generators, FiniteGroup, GroupMap};

use super::{smith_normal_form, IntMatrix};

/// A finite abelian group written as `Z/d1 + ... + Z/dk` with `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    factors: Vec<i128>,
    coordinate_group: FiniteGroup,
    /// coordinate-group index -> group element
    to_table: GroupMap,
    /// group element -> coordinate-group index
    from_table: GroupMap,
}

impl AbelianPresentation {
    pub fn invariant_factors(&self) -> &[i128] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `⊕ Z/d_i` with mixed-radix indexing, first factor most significant.
    pub fn coordinate_group(&self) -> &FiniteGroup {
        &self.coordinate_group
    }

    pub fn to_table(&self) -> &GroupMap {
        &self.to_table
    }

    pub fn from_table(&self) -> &GroupMap {
        &self.from_table
    }

    pub fn coords(&self, element: usize) -> Vec<i128> {
        let mut idx = self.from_table.apply(element) as i128;
        let mut out = vec![0; self.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    }

    /// Element with the given coordinates, each reduced modulo its factor.
    pub fn element(&self, coords: &[i128]) -> usize {
        let idx = coords
            .iter()
            .zip(&self.factors)
            .fold(0i128, |acc, (&c, &d)| acc * d + c.rem_euclid(d));
        self.to_table.apply(idx as usize)
    }

    /// Element with coordinate vector `e_j`.
    pub fn generator(&self, j: usize) -> usize {
        let mut c = vec![0; self.factors.len()];
        c[j] = 1;
        self.element(&c)
    }
}

/// Invariant-factor decomposition of an abelian group.
///
/// Generators are taken greedily (largest order first); each one
/// contributes the relation expressing its least multiple inside the
/// subgroup generated so far. The Smith form of that relation matrix gives
/// the factors and a change of generators.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<AbelianPresentation> {
    g.require_abelian()?;
    let gens = generators(g);
    let k = gens.len();

    // Coefficients (w.r.t. gens) of every element reached so far.
    let mut coeff: HashMap<usize, Vec<i128>> = HashMap::new();
    coeff.insert(0, vec![0; k]);
    let mut relations: Vec<Vec<i128>> = Vec::with_capacity(k);
    for (i, &gi) in gens.iter().enumerate() {
        let mut m = 1;
        let mut x = gi;
        while !coeff.contains_key(&x) {
            x = g.mul(x, gi);
            m += 1;
        }
        let mut rel: Vec<i128> = coeff[&x].iter().map(|&c| -c).collect();
        rel[i] = m;
        relations.push(rel);
        // Extend coefficients to <g_1..g_i> = H + {j*g_i : 0 <= j < m}.
        let known: Vec<(usize, Vec<i128>)> = coeff.iter().map(|(&e, c)| (e, c.clone())).collect();
        let mut step = 0;
        let mut shift = 0usize;
        while step < m {
            for (e, c) in &known {
                let mut c = c.clone();
                c[i] += step;
                coeff.entry(g.mul(*e, shift)).or_insert(c);
            }
            shift = g.mul(shift, gi);
            step += 1;
        }
    }

    let rel = IntMatrix::from_rows(&relations)?;
    let snf = if k == 0 { None } else { Some(smith_normal_form(&rel)?) };
    let diag = snf.as_ref().map(|s| s.s.diagonal()).unwrap_or_default();
    let keep: Vec<usize> = (0..diag.len()).filter(|&j| diag[j] > 1).collect();
    let factors: Vec<i128> = keep.iter().map(|&j| diag[j]).collect();

    let coordinate_group = factors
        .iter()
        .rev()
        .fold(cyclic(1), |acc, &d| direct_product(&cyclic(d as usize), &acc));
    let mut from_table = vec![0usize; g.order()];
    let mut to_table = vec![0usize; g.order()];
    if let Some(snf) = &snf {
        for (&e, a) in &coeff {
            // new coordinates: (a V)_j mod s_j
            let idx = keep.iter().fold(0i128, |acc, &j| {
                let y: i128 = (0..k).map(|i| a[i] * snf.v[(i, j)]).sum();
                acc * diag[j] + y.rem_euclid(diag[j])
            });
            from_table[e] = idx as usize;
            to_table[idx as usize] = e;
        }
    }
    Ok(AbelianPresentation {
        factors,
        coordinate_group,
        to_table: GroupMap::new(to_table),
        from_table: GroupMap::new(from_table),
    })
}
