//! Normalized 2-cocycles `G2 x G2 -> G1` for a trivial action, and the
//! groups Z², B² and H² they form when `G1` is abelian.
//!
//! Cocycles are kept as full tables of `G1` element indices. The linear
//! algebra view (one unknown per pair of non-identity elements and per
//! cyclic factor of `G1`) only exists inside [`compute_cocycle_space`] and
//! [`Coboundaries`].

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::is_epsilon_endomorphism;
use crate::group::{FiniteGroup, GroupMap, Limits};
use crate::linalg::{abelian_invariants, kernel_mod, AbelianPresentation, IntMatrix, ModSystem};

/// A normalized 2-cocycle stored as a `|G2| x |G2|` table of `G1` indices.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    g1: Arc<FiniteGroup>,
    g2: Arc<FiniteGroup>,
    table: Vec<usize>,
}

impl PartialEq for Cocycle2 {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.g1 == other.g1 && self.g2 == other.g2
    }
}

impl Eq for Cocycle2 {}

/// Outcome of checking a table against the cocycle axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleCheck {
    Valid,
    /// `e(y, 1)` or `e(1, y)` is not the identity.
    NotNormalized { y: usize },
    /// `e(h,g) e(hg,k) != e(g,k) e(h,gk)`.
    IdentityFails { h: usize, g: usize, k: usize },
}

impl CocycleCheck {
    pub fn is_valid(self) -> bool {
        self == CocycleCheck::Valid
    }
}

/// Checks normalization and the cocycle identity on a flat table, with
/// products in `coeff` evaluated left to right.
pub(crate) fn check_flat(coeff: &FiniteGroup, g2: &FiniteGroup, table: &[usize]) -> CocycleCheck {
    let n = g2.order();
    let e = |a: usize, b: usize| table[a * n + b];
    for y in 0..n {
        if e(y, 0) != 0 || e(0, y) != 0 {
            return CocycleCheck::NotNormalized { y };
        }
    }
    for h in 1..n {
        for g in 1..n {
            let hg = g2.mul(h, g);
            for k in 1..n {
                let lhs = coeff.mul(e(h, g), e(hg, k));
                let rhs = coeff.mul(e(g, k), e(h, g2.mul(g, k)));
                if lhs != rhs {
                    return CocycleCheck::IdentityFails { h, g, k };
                }
            }
        }
    }
    CocycleCheck::Valid
}

fn flatten(g1: &FiniteGroup, g2: &FiniteGroup, rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = g2.order();
    if rows.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: rows.len() });
    }
    let mut flat = Vec::with_capacity(n * n);
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        if let Some(&bad) = r.iter().find(|&&v| v >= g1.order()) {
            return Err(Error::DimensionMismatch { expected: g1.order(), found: bad });
        }
        flat.extend_from_slice(r);
    }
    Ok(flat)
}

/// Checks a candidate table; shape or range problems are errors, axiom
/// failures come back as a [`CocycleCheck`] with the first witness.
pub fn is_cocycle(g1: &FiniteGroup, g2: &FiniteGroup, rows: &[Vec<usize>]) -> Result<CocycleCheck> {
    let flat = flatten(g1, g2, rows)?;
    Ok(check_flat(g1, g2, &flat))
}

impl Cocycle2 {
    pub fn new(g1: Arc<FiniteGroup>, g2: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<Self> {
        let flat = flatten(&g1, &g2, rows)?;
        Self::from_flat(g1, g2, flat)
    }

    pub(crate) fn from_flat(g1: Arc<FiniteGroup>, g2: Arc<FiniteGroup>, table: Vec<usize>) -> Result<Self> {
        match check_flat(&g1, &g2, &table) {
            CocycleCheck::Valid => Ok(Cocycle2 { g1, g2, table }),
            CocycleCheck::NotNormalized { y } => {
                Err(Error::NotACocycle(format!("not normalized at element {y}")))
            }
            CocycleCheck::IdentityFails { h, g, k } => {
                Err(Error::NotACocycle(format!("cocycle identity fails at (h,g,k) = ({h},{g},{k})")))
            }
        }
    }

    /// Skips the axiom check; for tables that are cocycles by construction.
    pub(crate) fn from_flat_unchecked(g1: Arc<FiniteGroup>, g2: Arc<FiniteGroup>, table: Vec<usize>) -> Self {
        debug_assert!(check_flat(&g1, &g2, &table).is_valid());
        Cocycle2 { g1, g2, table }
    }

    pub fn trivial(g1: Arc<FiniteGroup>, g2: Arc<FiniteGroup>) -> Self {
        let n = g2.order();
        Cocycle2 { g1, g2, table: vec![0; n * n] }
    }

    /// The cocycle of a central extension read off a section.
    ///
    /// `embed` identifies `g1` with a central subgroup of `big` and `proj`
    /// is a surjection `big -> g2` with kernel `embed(g1)`. The section picks
    /// the least element of each fibre, so `e(y, y') = s(y) s(y') s(yy')^-1`.
    pub fn from_central_extension(
        g1: Arc<FiniteGroup>,
        g2: Arc<FiniteGroup>,
        big: &FiniteGroup,
        embed: &GroupMap,
        proj: &GroupMap,
    ) -> Result<Self> {
        if !embed.is_homomorphism(&g1, big) || !embed.is_injective() {
            return Err(Error::PreconditionViolated("embedding is not an injective homomorphism".into()));
        }
        if !proj.is_homomorphism(big, &g2) || !proj.is_surjective(g2.order()) {
            return Err(Error::PreconditionViolated("projection is not a surjective homomorphism".into()));
        }
        let kernel_size = proj.kernel().len();
        if kernel_size != g1.order() || embed.images().iter().any(|&x| proj.apply(x) != 0) {
            return Err(Error::PreconditionViolated("kernel of projection is not the embedded group".into()));
        }
        let n = g2.order();
        let mut section = vec![usize::MAX; n];
        for a in big.elements() {
            let y = proj.apply(a);
            if section[y] == usize::MAX {
                section[y] = a;
            }
        }
        let back = {
            let mut b = vec![usize::MAX; big.order()];
            for x in g1.elements() {
                b[embed.apply(x)] = x;
            }
            b
        };
        let mut table = Vec::with_capacity(n * n);
        for y in 0..n {
            for z in 0..n {
                let v = big.div(big.mul(section[y], section[z]), section[g2.mul(y, z)]);
                table.push(back[v]);
            }
        }
        Self::from_flat(g1, g2, table)
    }

    pub fn g1(&self) -> &Arc<FiniteGroup> {
        &self.g1
    }

    pub fn g2(&self) -> &Arc<FiniteGroup> {
        &self.g2
    }

    #[inline]
    pub fn value(&self, y: usize, z: usize) -> usize {
        self.table[y * self.g2.order() + z]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.g2.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.g2.order();
        (0..n).all(|y| (0..y).all(|z| self.value(y, z) == self.value(z, y)))
    }

    /// Set of values taken, i.e. `Im(e)`.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.table.iter().copied().collect();
        set.into_iter().collect()
    }

    fn same_groups(&self, other: &Cocycle2) -> Result<()> {
        if self.g1 != other.g1 || self.g2 != other.g2 {
            return Err(Error::GroupMismatch("cocycles over different groups"));
        }
        Ok(())
    }

    /// Pointwise product; a cocycle again when `G1` is abelian.
    pub fn mul(&self, other: &Cocycle2) -> Result<Cocycle2> {
        self.same_groups(other)?;
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| self.g1.mul(a, b)).collect();
        Cocycle2::from_flat(self.g1.clone(), self.g2.clone(), table)
    }

    pub fn inverse(&self) -> Result<Cocycle2> {
        let table = self.table.iter().map(|&a| self.g1.inv(a)).collect();
        Cocycle2::from_flat(self.g1.clone(), self.g2.clone(), table)
    }

    /// Table of `chi ∘ e` (values pushed through a map of `G1`).
    pub fn map_values(&self, chi: &GroupMap) -> Vec<usize> {
        self.table.iter().map(|&v| chi.apply(v)).collect()
    }

    /// Table of `e ∘ (rho x rho)` for a map `rho` from some group into `G2`.
    pub fn precompose(&self, rho: &GroupMap) -> Vec<usize> {
        let m = rho.len();
        let mut out = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                out.push(self.value(rho.apply(a), rho.apply(b)));
            }
        }
        out
    }
}

/// `psi(h, g) = delta(g) delta(hg)^-1 delta(h)` for a normalized set map
/// `delta: G2 -> G1`.
pub fn coboundary_table(g1: &FiniteGroup, g2: &FiniteGroup, delta: &GroupMap) -> Vec<usize> {
    let n = g2.order();
    let mut out = Vec::with_capacity(n * n);
    for h in 0..n {
        for g in 0..n {
            let v = g1.mul(g1.div(delta.apply(g), delta.apply(g2.mul(h, g))), delta.apply(h));
            out.push(v);
        }
    }
    out
}

pub fn coboundary_from(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>, delta: &GroupMap) -> Result<Cocycle2> {
    if delta.len() != g2.order() || delta.images().iter().any(|&v| v >= g1.order()) {
        return Err(Error::DimensionMismatch { expected: g2.order(), found: delta.len() });
    }
    if !delta.is_normalized() {
        return Err(Error::NotNormalized { image: delta.apply(0) });
    }
    g1.require_abelian().map_err(|_| Error::NotAbelianCoefficients)?;
    let table = coboundary_table(g1, g2, delta);
    Ok(Cocycle2::from_flat_unchecked(g1.clone(), g2.clone(), table))
}

/// Solver for `table = psi_t`: decides whether a table is a coboundary and
/// produces a normalized `t` when it is.
#[derive(Clone, Debug)]
pub struct Coboundaries {
    g1: Arc<FiniteGroup>,
    g2: Arc<FiniteGroup>,
    pres: AbelianPresentation,
    system: Option<ModSystem>,
}

impl Coboundaries {
    pub fn new(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>, limits: &Limits) -> Result<Self> {
        g1.require_abelian().map_err(|_| Error::NotAbelianCoefficients)?;
        let pres = abelian_invariants(g1)?;
        let n = g2.order();
        let k = pres.rank();
        if n <= 1 || k == 0 {
            return Ok(Coboundaries { g1: g1.clone(), g2: g2.clone(), pres, system: None });
        }
        let equations = (n - 1) * (n - 1) * k;
        if equations > limits.max_unknowns {
            return Err(Error::SizeLimitExceeded {
                what: "coboundary system",
                size: equations as u128,
                bound: limits.max_unknowns as u128,
            });
        }
        // unknown t(g)_j at (g-1)*k + j; equation (h,g)_j at ((h-1)(n-1)+(g-1))*k + j
        let mut a = IntMatrix::zeros(equations, (n - 1) * k);
        let mut moduli = Vec::with_capacity(equations);
        for h in 1..n {
            for g in 1..n {
                let hg = g2.mul(h, g);
                for j in 0..k {
                    let row = ((h - 1) * (n - 1) + (g - 1)) * k + j;
                    a[(row, (g - 1) * k + j)] += 1;
                    a[(row, (h - 1) * k + j)] += 1;
                    if hg != 0 {
                        a[(row, (hg - 1) * k + j)] -= 1;
                    }
                }
            }
        }
        for _ in 0..(n - 1) * (n - 1) {
            moduli.extend_from_slice(pres.invariant_factors());
        }
        let system = ModSystem::new(&a, &moduli)?;
        Ok(Coboundaries { g1: g1.clone(), g2: g2.clone(), pres, system: Some(system) })
    }

    /// A normalized `t` with `table(g, h) = t(g) t(h) t(gh)^-1`, if any.
    pub fn witness(&self, table: &[usize]) -> Result<Option<GroupMap>> {
        let n = self.g2.order();
        if table.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: table.len() });
        }
        let Some(system) = &self.system else {
            let trivial = table.iter().all(|&v| v == 0);
            return Ok(trivial.then(|| GroupMap::trivial(n)));
        };
        let k = self.pres.rank();
        let mut rhs = Vec::with_capacity((n - 1) * (n - 1) * k);
        for h in 1..n {
            for g in 1..n {
                rhs.extend(self.pres.coords(table[h * n + g]));
            }
        }
        // normalization rows are not in the system; check them directly
        if (0..n).any(|y| table[y * n] != 0 || table[y] != 0) {
            return Ok(None);
        }
        let Some(x) = system.solve(&rhs)? else { return Ok(None) };
        let mut images = vec![0; n];
        for (g, slot) in images.iter_mut().enumerate().skip(1) {
            *slot = self.pres.element(&x[(g - 1) * k..g * k]);
        }
        let t = GroupMap::new(images);
        debug_assert_eq!(coboundary_table(&self.g1, &self.g2, &t), table);
        Ok(Some(t))
    }

    pub fn is_coboundary(&self, table: &[usize]) -> Result<bool> {
        Ok(self.witness(table)?.is_some())
    }
}

/// A witness `t` with `e2(g,h) = t(g) t(h) e1(g,h) t(gh)^-1`, if the two
/// cocycles are cohomologous.
pub fn are_cohomologous(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<GroupMap>> {
    e1.same_groups(e2)?;
    let diff: Vec<usize> = e1.table.iter().zip(&e2.table).map(|(&a, &b)| e1.g1.div(b, a)).collect();
    Coboundaries::new(&e1.g1, &e1.g2, limits)?.witness(&diff)
}

/// A coboundary together with the set map it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coboundary {
    pub delta: GroupMap,
    pub cocycle: Cocycle2,
}

/// Z², B² and H² for a pair `(G1, G2)` with `G1` abelian.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub g1: Arc<FiniteGroup>,
    pub g2: Arc<FiniteGroup>,
    pub z2_order: u128,
    pub b2_order: u128,
    pub z2_generators: Vec<Cocycle2>,
    pub b2_generators: Vec<Coboundary>,
    pub h2_invariant_factors: Vec<u64>,
    /// Lexicographically least table of each class, sorted.
    pub class_representatives: Vec<Cocycle2>,
}

impl CocycleSpace {
    pub fn h2_order(&self) -> u128 {
        self.h2_invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Index of the class of `e` in `class_representatives`.
    pub fn class_index(&self, e: &Cocycle2, limits: &Limits) -> Result<usize> {
        let solver = Coboundaries::new(&self.g1, &self.g2, limits)?;
        for (i, r) in self.class_representatives.iter().enumerate() {
            r.same_groups(e)?;
            let diff: Vec<usize> = r.table.iter().zip(&e.table).map(|(&a, &b)| self.g1.div(b, a)).collect();
            if solver.is_coboundary(&diff)? {
                return Ok(i);
            }
        }
        Err(Error::NotACocycle("no class representative matches".into()))
    }
}

const MAX_ENUMERATED: u128 = 1 << 20;

pub fn compute_cocycle_space(g1: &Arc<FiniteGroup>, g2: &Arc<FiniteGroup>, limits: &Limits) -> Result<CocycleSpace> {
    g1.require_abelian().map_err(|_| Error::NotAbelianCoefficients)?;
    let pres = abelian_invariants(g1)?;
    let n = g2.order();
    let k = pres.rank();
    let trivial_space = || CocycleSpace {
        g1: g1.clone(),
        g2: g2.clone(),
        z2_order: 1,
        b2_order: 1,
        z2_generators: Vec::new(),
        b2_generators: Vec::new(),
        h2_invariant_factors: Vec::new(),
        class_representatives: vec![Cocycle2::trivial(g1.clone(), g2.clone())],
    };
    if n <= 1 || k == 0 {
        return Ok(trivial_space());
    }
    let m = (n - 1) * (n - 1);
    if m * k > limits.max_unknowns {
        return Err(Error::SizeLimitExceeded {
            what: "cocycle unknowns",
            size: (m * k) as u128,
            bound: limits.max_unknowns as u128,
        });
    }
    let var = |a: usize, b: usize| (a - 1) * (n - 1) + (b - 1);

    // Cocycle identity over the (n-1)^2 free values of one cyclic coordinate.
    let mut eqs: BTreeSet<Vec<i128>> = BTreeSet::new();
    for h in 1..n {
        for g in 1..n {
            let hg = g2.mul(h, g);
            for kk in 1..n {
                let gk = g2.mul(g, kk);
                let mut row = vec![0i128; m];
                row[var(h, g)] += 1;
                if hg != 0 {
                    row[var(hg, kk)] += 1;
                }
                row[var(g, kk)] -= 1;
                if gk != 0 {
                    row[var(h, gk)] -= 1;
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.insert(row);
                }
            }
        }
    }
    let eqs: Vec<Vec<i128>> = eqs.into_iter().collect();
    let c = if eqs.is_empty() { IntMatrix::zeros(0, m) } else { IntMatrix::from_rows(&eqs)? };

    // Coboundary of the indicator of g, as a vector over the free values.
    let boundary: Vec<Vec<i128>> = (1..n)
        .map(|g| {
            let mut col = vec![0i128; m];
            for a in 1..n {
                for b in 1..n {
                    let ab = g2.mul(a, b);
                    let v = i128::from(b == g) + i128::from(a == g) - i128::from(ab == g);
                    col[var(a, b)] = v;
                }
            }
            col
        })
        .collect();

    let factors = pres.invariant_factors().to_vec();
    let dim = m * k;
    // Hermite basis of Z² as a block-diagonal lattice, one block per factor.
    let mut basis = vec![vec![0i128; dim]; dim];
    let mut z2_order: u128 = 1;
    let mut z2_vectors: Vec<Vec<i128>> = Vec::new();
    for (j, &d) in factors.iter().enumerate() {
        let kern = kernel_mod(&c, d)?;
        debug_assert_eq!(kern.len(), m);
        for (r, row) in kern.iter().enumerate() {
            basis[j * m + r][j * m..(j + 1) * m].copy_from_slice(row);
            let pivot = row[r];
            z2_order = z2_order.checked_mul((d / pivot) as u128).ok_or(Error::Overflow)?;
            if row.iter().any(|&x| x % d != 0) {
                let mut v = vec![0i128; dim];
                v[j * m..(j + 1) * m].copy_from_slice(row);
                z2_vectors.push(v);
            }
        }
    }

    // Generators of B² + dZ^m, expressed in the Z² basis.
    let mut sub_gens: Vec<Vec<i128>> = Vec::new();
    for (j, &d) in factors.iter().enumerate() {
        for col in &boundary {
            let mut v = vec![0i128; dim];
            v[j * m..(j + 1) * m].copy_from_slice(col);
            sub_gens.push(v);
        }
        for i in 0..m {
            let mut v = vec![0i128; dim];
            v[j * m + i] = d;
            sub_gens.push(v);
        }
    }
    let coords: Vec<Vec<i128>> = sub_gens
        .iter()
        .map(|v| coordinates_in_basis(v, &basis))
        .collect::<Result<_>>()?;
    let x = IntMatrix::from_rows(&coords)?;
    let snf = crate::linalg::smith_normal_form(&x)?;
    let diag = snf.s.diagonal();
    debug_assert!(diag.iter().all(|&s| s != 0));
    let mut h2_factors = Vec::new();
    let mut h2_gens: Vec<Vec<i128>> = Vec::new();
    for (i, &s) in diag.iter().enumerate() {
        if s > 1 {
            h2_factors.push(s as u64);
            let row: Vec<i128> = (0..dim).map(|c| snf.v_inv[(i, c)]).collect();
            h2_gens.push(combine(&row, &basis, &factors, m)?);
        }
    }
    let h2_order: u128 = h2_factors.iter().map(|&d| d as u128).product();
    let b2_order = z2_order / h2_order;

    let to_table = |v: &[i128]| -> Vec<usize> {
        let mut t = vec![0usize; n * n];
        for a in 1..n {
            for b in 1..n {
                let cs: Vec<i128> = (0..k).map(|j| v[j * m + var(a, b)]).collect();
                t[a * n + b] = pres.element(&cs);
            }
        }
        t
    };

    let z2_generators: Vec<Cocycle2> = z2_vectors
        .iter()
        .map(|v| Cocycle2::from_flat_unchecked(g1.clone(), g2.clone(), to_table(v)))
        .collect();

    let mut b2_generators: Vec<Coboundary> = Vec::new();
    let mut b2_vectors: Vec<Vec<i128>> = Vec::new();
    let mut seen_tables: HashSet<Vec<usize>> = HashSet::new();
    for (j, &d) in factors.iter().enumerate() {
        for (gi, col) in boundary.iter().enumerate() {
            let mut images = vec![0; n];
            images[gi + 1] = pres.generator(j);
            let delta = GroupMap::new(images);
            let cocycle = coboundary_from(g1, g2, &delta)?;
            if cocycle.is_trivial() || !seen_tables.insert(cocycle.table.clone()) {
                continue;
            }
            let mut v = vec![0i128; dim];
            for (i, &x) in col.iter().enumerate() {
                v[j * m + i] = x.rem_euclid(d);
            }
            b2_vectors.push(v);
            b2_generators.push(Coboundary { delta, cocycle });
        }
    }

    if b2_order > MAX_ENUMERATED || h2_order > MAX_ENUMERATED {
        return Err(Error::SizeLimitExceeded {
            what: "class representative enumeration",
            size: b2_order.max(h2_order),
            bound: MAX_ENUMERATED,
        });
    }
    let reduce = |v: &mut Vec<i128>| {
        for (j, &d) in factors.iter().enumerate() {
            for x in &mut v[j * m..(j + 1) * m] {
                *x = x.rem_euclid(d);
            }
        }
    };
    // All of B² as reduced coordinate vectors.
    let mut b2_all: Vec<Vec<i128>> = vec![vec![0; dim]];
    let mut b2_set: HashSet<Vec<i128>> = b2_all.iter().cloned().collect();
    let mut i = 0;
    while i < b2_all.len() {
        for g in &b2_vectors {
            let mut s: Vec<i128> = b2_all[i].iter().zip(g).map(|(a, b)| a + b).collect();
            reduce(&mut s);
            if b2_set.insert(s.clone()) {
                b2_all.push(s);
            }
        }
        i += 1;
    }
    debug_assert_eq!(b2_all.len() as u128, b2_order);

    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(h2_order as usize);
    let mut digits = vec![0u64; h2_factors.len()];
    loop {
        let mut v = vec![0i128; dim];
        for (gen, &a) in h2_gens.iter().zip(&digits) {
            for (x, &y) in v.iter_mut().zip(gen) {
                *x += y * a as i128;
            }
        }
        let best = b2_all
            .iter()
            .map(|b| {
                let mut s: Vec<i128> = v.iter().zip(b).map(|(x, y)| x + y).collect();
                reduce(&mut s);
                to_table(&s)
            })
            .min()
            .expect("B² contains 0");
        reps.push(best);
        // odometer over the H² digits
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < h2_factors[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == digits.len() {
            break;
        }
    }
    reps.sort();
    let class_representatives = reps
        .into_iter()
        .map(|t| Cocycle2::from_flat_unchecked(g1.clone(), g2.clone(), t))
        .collect();

    Ok(CocycleSpace {
        g1: g1.clone(),
        g2: g2.clone(),
        z2_order,
        b2_order,
        z2_generators,
        b2_generators,
        h2_invariant_factors: h2_factors,
        class_representatives,
    })
}

/// Solves `x * basis = v` for an upper-triangular square basis.
fn coordinates_in_basis(v: &[i128], basis: &[Vec<i128>]) -> Result<Vec<i128>> {
    let dim = v.len();
    let mut x = vec![0i128; dim];
    for c in 0..dim {
        let mut acc = v[c];
        for r in 0..c {
            if x[r] != 0 && basis[r][c] != 0 {
                acc = acc.checked_sub(x[r].checked_mul(basis[r][c]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
        }
        let p = basis[c][c];
        debug_assert!(p != 0 && acc % p == 0);
        x[c] = acc / p;
    }
    Ok(x)
}

/// `coeffs * basis`, reduced per factor block.
fn combine(coeffs: &[i128], basis: &[Vec<i128>], factors: &[i128], m: usize) -> Result<Vec<i128>> {
    let dim = coeffs.len();
    let mut v = vec![0i128; dim];
    for (r, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        crate::linalg::add_multiple(&mut v, &basis[r], a)?;
    }
    for (j, &d) in factors.iter().enumerate() {
        for x in &mut v[j * m..(j + 1) * m] {
            *x = x.rem_euclid(d);
        }
    }
    Ok(v)
}

/// Whether the relation (∼) is trivial on Z²(G2, G2): no nontrivial
/// cocycle is cohomologous to the trivial one.
///
/// For abelian `G2` this is `B²(G2, G2) = 1`, read off the coboundaries of
/// the generating indicator maps. Non-abelian `G2` is only handled by the
/// exhaustive check, and only up to order 5.
pub fn sim_is_trivial(g2: &FiniteGroup, limits: &Limits) -> Result<bool> {
    if g2.is_abelian() {
        let g = Arc::new(g2.clone());
        let pres = abelian_invariants(g2)?;
        for y in 1..g2.order() {
            for j in 0..pres.rank() {
                let mut images = vec![0; g2.order()];
                images[y] = pres.generator(j);
                if !coboundary_from(&g, &g, &GroupMap::new(images))?.is_trivial() {
                    return Ok(false);
                }
            }
        }
        let _ = limits;
        return Ok(true);
    }
    if g2.order() > 5 {
        return Err(Error::NonAbelianUnsupported { order: g2.order() });
    }
    sim_is_trivial_exhaustive(g2)
}

/// Runs over every normalized set map `t: G2 -> G2` and looks for one whose
/// `t(g) t(h) t(gh)^-1` (left to right) is a nontrivial cocycle.
pub fn sim_is_trivial_exhaustive(g2: &FiniteGroup) -> Result<bool> {
    let n = g2.order();
    if n > 5 {
        return Err(Error::SizeLimitExceeded { what: "exhaustive (~) check", size: n as u128, bound: 5 });
    }
    let total = n.pow(n.saturating_sub(1) as u32);
    for code in 0..total {
        let mut t = vec![0usize; n];
        let mut c = code;
        for slot in t.iter_mut().skip(1) {
            *slot = c % n;
            c /= n;
        }
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                table.push(g2.div(g2.mul(t[g], t[h]), t[g2.mul(g, h)]));
            }
        }
        if table.iter().any(|&v| v != 0) && check_flat(g2, g2, &table).is_valid() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three cocycles `sigma ∘ e`, `delta ∘ e` and `e ∘ (delta x delta)`.
#[derive(Clone, Debug)]
pub struct ComposedCocycles {
    /// In Z²(G2, G1).
    pub sigma_e: Cocycle2,
    /// In Z²(G2, G2).
    pub delta_e: Cocycle2,
    /// In Z²(G1, G1).
    pub e_delta: Cocycle2,
}

/// Builds the three composites for an `e`-endomorphism `sigma` of `G1` and
/// a homomorphism `delta: G1 -> G2`, checking each is a cocycle.
pub fn cocycle_compose_checks(sigma: &GroupMap, delta: &GroupMap, e: &Cocycle2) -> Result<ComposedCocycles> {
    let (g1, g2) = (e.g1(), e.g2());
    if !sigma.fits(g1, g1) || !sigma.is_normalized() {
        return Err(Error::PreconditionViolated("sigma is not a normalized map G1 -> G1".into()));
    }
    if !is_epsilon_endomorphism(sigma, e) {
        return Err(Error::PreconditionViolated("sigma is not an e-endomorphism".into()));
    }
    if !delta.is_homomorphism(g1, g2) {
        return Err(Error::PreconditionViolated("delta is not a homomorphism G1 -> G2".into()));
    }
    let wrap = |what: &str, r: Result<Cocycle2>| {
        r.map_err(|err| Error::TheoremViolated(format!("{what} is not a cocycle: {err}")))
    };
    let sigma_e = wrap("sigma∘e", Cocycle2::from_flat(g1.clone(), g2.clone(), e.map_values(sigma)))?;
    let delta_table: Vec<usize> = e.table().iter().map(|&v| delta.apply(v)).collect();
    let delta_e = wrap("delta∘e", Cocycle2::from_flat(g2.clone(), g2.clone(), delta_table))?;
    let e_delta = wrap("e∘(delta×delta)", Cocycle2::from_flat(g1.clone(), g1.clone(), e.precompose(delta)))?;
    Ok(ComposedCocycles { sigma_e, delta_e, e_delta })
}
