//! Twisted products `G1 x_e G2` and maps between them.
//!
//! A carrier element `(x, y)` lives at index `x * |G2| + y`, so the copy of
//! `G1` is the stride-`|G2|` subset and `(1, y)` is just `y`.

use std::sync::Arc;

use crate::cocycle::{sim_is_trivial, Cocycle2};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap, Limits, Subgroup};

/// The central extension of `G1` by `G2` defined by a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGroup {
    epsilon: Cocycle2,
    group: Arc<FiniteGroup>,
}

/// Builds `(x, y)(x', y') = (x x' e(y, y'), y y')` as a Cayley table.
pub fn build_extension(e: &Cocycle2) -> Result<ExtensionGroup> {
    let (g1, g2) = (e.g1(), e.g2());
    g1.require_abelian().map_err(|_| Error::NotAbelianCoefficients)?;
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        let (x, y) = (a / n2, a % n2);
        for b in 0..n {
            let (x2, y2) = (b / n2, b % n2);
            let xx = g1.mul(g1.mul(x, x2), e.value(y, y2));
            table.push(xx * n2 + g2.mul(y, y2));
        }
    }
    let group = FiniteGroup::from_flat(table, n).map_err(|err| {
        Error::TheoremViolated(format!("twisted product of a valid cocycle failed validation: {err}"))
    })?;
    let ext = ExtensionGroup { epsilon: e.clone(), group: Arc::new(group) };
    debug_assert!(ext.kernel_is_central());
    Ok(ext)
}

impl ExtensionGroup {
    pub fn g1(&self) -> &Arc<FiniteGroup> {
        self.epsilon.g1()
    }

    pub fn g2(&self) -> &Arc<FiniteGroup> {
        self.epsilon.g2()
    }

    pub fn epsilon(&self) -> &Cocycle2 {
        &self.epsilon
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn index_of(&self, x: usize, y: usize) -> usize {
        x * self.g2().order() + y
    }

    #[inline]
    pub fn pair_of(&self, i: usize) -> (usize, usize) {
        let n2 = self.g2().order();
        (i / n2, i % n2)
    }

    /// `G1 x {1}` as a subgroup of the carrier.
    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_members(self.g1().elements().map(|x| self.index_of(x, 0)).collect())
    }

    /// The set `{1} x G2`; a subgroup only when the cocycle is trivial.
    pub fn complement(&self) -> Vec<usize> {
        self.g2().elements().collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// `(x, 1)` commutes with every element of the carrier.
    pub fn kernel_is_central(&self) -> bool {
        let k = self.kernel();
        k.members().iter().all(|&a| self.group.elements().all(|b| self.group.commute(a, b)))
    }

    /// The projection `(x, y) -> y`.
    pub fn projection(&self) -> GroupMap {
        GroupMap::new((0..self.order()).map(|i| self.pair_of(i).1).collect())
    }

    /// The embedding `x -> (x, 1)`.
    pub fn embedding(&self) -> GroupMap {
        GroupMap::new(self.g1().elements().map(|x| self.index_of(x, 0)).collect())
    }

    fn same_factors(&self, other: &ExtensionGroup) -> Result<()> {
        if self.g1() != other.g1() || self.g2() != other.g2() {
            return Err(Error::GroupMismatch("extensions over different factor groups"));
        }
        Ok(())
    }
}

/// Table-level abelianness of the carrier.
pub fn is_abelian_extension(ext: &ExtensionGroup) -> bool {
    ext.is_abelian()
}

/// The isomorphism `(x, y) -> (x t(y)^-1, y)` between the extensions of two
/// cohomologous cocycles, where `target = source * psi_t`.
pub fn equivalence_map(source: &ExtensionGroup, target: &ExtensionGroup, t: &GroupMap) -> Result<GroupMap> {
    source.same_factors(target)?;
    let g1 = source.g1();
    Ok(GroupMap::new(
        (0..source.order())
            .map(|i| {
                let (x, y) = source.pair_of(i);
                target.index_of(g1.div(x, t.apply(y)), y)
            })
            .collect(),
    ))
}

/// The four components `phi_ij = pr_i ∘ phi ∘ t_j` of a map between twisted
/// products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix<'a> {
    pub source: &'a ExtensionGroup,
    pub target: &'a ExtensionGroup,
    /// `G1 -> G1`
    pub phi11: GroupMap,
    /// `G2 -> G1`
    pub phi12: GroupMap,
    /// `G1 -> G2`
    pub phi21: GroupMap,
    /// `G2 -> G2`
    pub phi22: GroupMap,
}

impl<'a> HomMatrix<'a> {
    /// Assembles a matrix from components; every component must be a
    /// normalized map between the right groups. `None` means trivial.
    pub fn new(
        source: &'a ExtensionGroup,
        target: &'a ExtensionGroup,
        phi11: Option<GroupMap>,
        phi12: Option<GroupMap>,
        phi21: Option<GroupMap>,
        phi22: Option<GroupMap>,
    ) -> Result<Self> {
        source.same_factors(target)?;
        let (g1, g2) = (source.g1(), source.g2());
        let or_trivial = |m: Option<GroupMap>, n: usize| m.unwrap_or_else(|| GroupMap::trivial(n));
        let m = HomMatrix {
            source,
            target,
            phi11: or_trivial(phi11, g1.order()),
            phi12: or_trivial(phi12, g2.order()),
            phi21: or_trivial(phi21, g1.order()),
            phi22: or_trivial(phi22, g2.order()),
        };
        let shapes = [(&m.phi11, g1, g1), (&m.phi12, g2, g1), (&m.phi21, g1, g2), (&m.phi22, g2, g2)];
        for (map, dom, cod) in shapes {
            if !map.fits(dom, cod) {
                return Err(Error::DimensionMismatch { expected: dom.order(), found: map.len() });
            }
            if !map.is_normalized() {
                return Err(Error::NotNormalized { image: map.apply(0) });
            }
        }
        Ok(m)
    }

    /// Reads the components off an arbitrary set map between the carriers.
    pub fn decompose(source: &'a ExtensionGroup, target: &'a ExtensionGroup, phi: &GroupMap) -> Result<Self> {
        source.same_factors(target)?;
        if !phi.fits(source.group(), target.group()) {
            return Err(Error::DimensionMismatch { expected: source.order(), found: phi.len() });
        }
        let (g1, g2) = (source.g1(), source.g2());
        let pr = |i: usize| target.pair_of(phi.apply(i));
        let on_g1: Vec<(usize, usize)> = g1.elements().map(|x| pr(source.index_of(x, 0))).collect();
        let on_g2: Vec<(usize, usize)> = g2.elements().map(|y| pr(source.index_of(0, y))).collect();
        Ok(HomMatrix {
            source,
            target,
            phi11: GroupMap::new(on_g1.iter().map(|p| p.0).collect()),
            phi12: GroupMap::new(on_g2.iter().map(|p| p.0).collect()),
            phi21: GroupMap::new(on_g1.iter().map(|p| p.1).collect()),
            phi22: GroupMap::new(on_g2.iter().map(|p| p.1).collect()),
        })
    }

    pub fn is_normalized(&self) -> bool {
        [&self.phi11, &self.phi12, &self.phi21, &self.phi22].iter().all(|m| m.is_normalized())
    }

    /// `phi(x, y) = (phi11(x) phi12(y) e2(phi21(x), phi22(y)), phi21(x) phi22(y))`.
    pub fn reconstruct(&self) -> GroupMap {
        let (g1, g2) = (self.source.g1(), self.source.g2());
        let e2 = self.target.epsilon();
        GroupMap::new(
            (0..self.source.order())
                .map(|i| {
                    let (x, y) = self.source.pair_of(i);
                    let (a, b) = (self.phi21.apply(x), self.phi22.apply(y));
                    let first = g1.mul(g1.mul(self.phi11.apply(x), self.phi12.apply(y)), e2.value(a, b));
                    self.target.index_of(first, g2.mul(a, b))
                })
                .collect(),
        )
    }
}

/// Which of the two equation families broke first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectFailure {
    /// `phi(x,y) phi(x',1) != phi(xx',y)`
    Kernel { x: usize, y: usize, x2: usize },
    /// `phi(x,y) phi(1,y') != phi(x e1(y,y'), yy')`
    Quotient { x: usize, y: usize, y2: usize },
}

/// The two equation families on a raw image array; `None` means `phi` is a
/// homomorphism.
pub fn direct_failure(source: &ExtensionGroup, target: &ExtensionGroup, images: &[usize]) -> Option<DirectFailure> {
    let (g1, g2) = (source.g1(), source.g2());
    let (n1, n2) = (g1.order(), g2.order());
    let e1 = source.epsilon();
    let tg = target.group();
    for x in 0..n1 {
        for y in 0..n2 {
            let lhs = images[x * n2 + y];
            for x2 in 0..n1 {
                if tg.mul(lhs, images[x2 * n2]) != images[g1.mul(x, x2) * n2 + y] {
                    return Some(DirectFailure::Kernel { x, y, x2 });
                }
            }
            for y2 in 0..n2 {
                let rhs = images[g1.mul(x, e1.value(y, y2)) * n2 + g2.mul(y, y2)];
                if tg.mul(lhs, images[y2]) != rhs {
                    return Some(DirectFailure::Quotient { x, y, y2 });
                }
            }
        }
    }
    None
}

pub fn is_homomorphism_direct(source: &ExtensionGroup, target: &ExtensionGroup, phi: &GroupMap) -> bool {
    phi.fits(source.group(), target.group()) && direct_failure(source, target, phi.images()).is_none()
}

/// First `(x, v)` with `chi(x v) != chi(x) chi(v)` for `v` a value of `e`.
pub fn epsilon_endomorphism_failure(chi: &GroupMap, e: &Cocycle2) -> Option<(usize, usize)> {
    let g1 = e.g1();
    let values = e.image();
    for x in g1.elements() {
        for &v in &values {
            if chi.apply(g1.mul(x, v)) != g1.mul(chi.apply(x), chi.apply(v)) {
                return Some((x, v));
            }
        }
    }
    None
}

/// `chi(x e(y, y')) = chi(x) chi(e(y, y'))` for all arguments.
pub fn is_epsilon_endomorphism(chi: &GroupMap, e: &Cocycle2) -> bool {
    chi.len() == e.g1().order() && epsilon_endomorphism_failure(chi, e).is_none()
}

/// How the (∼)-triviality of `Z²(G2, G2)` is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SimHypothesis {
    /// Decide it; fails with [`Error::HypothesisNotVerified`] when the
    /// checker cannot.
    #[default]
    Verify,
    /// Take it as given.
    Assume,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    Verified,
    Assumed,
    /// The checker decided the relation is not trivial.
    Refuted,
}

/// Resolves the hypothesis for `g2`; only an undecidable, unasserted case
/// is an error.
pub fn resolve_hypothesis(g2: &FiniteGroup, mode: SimHypothesis, limits: &Limits) -> Result<HypothesisStatus> {
    match sim_is_trivial(g2, limits) {
        Ok(true) => Ok(HypothesisStatus::Verified),
        Ok(false) if mode == SimHypothesis::Assume => Ok(HypothesisStatus::Assumed),
        Ok(false) => Ok(HypothesisStatus::Refuted),
        Err(_) if mode == SimHypothesis::Assume => Ok(HypothesisStatus::Assumed),
        Err(Error::NonAbelianUnsupported { .. } | Error::SizeLimitExceeded { .. }) => {
            Err(Error::HypothesisNotVerified)
        }
        Err(err) => Err(err),
    }
}

/// One clause of the homomorphism characterization.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn from_failure(failure: Option<String>) -> Self {
        Condition { holds: failure.is_none(), witness: failure }
    }
}

/// The four conditions for a matrix to define a homomorphism, each
/// evaluated in full.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomConditionReport {
    pub hypothesis: HypothesisStatus,
    /// `phi21` a hom into the centralizer of `phi22(G2)`, `phi22` an
    /// endomorphism, `phi11` an `e1`-endomorphism.
    pub cond1: Condition,
    /// `(1, phi22(y))` and `(1, phi21(x))` commute in the target.
    pub cond2: Condition,
    /// `Im(e1) <= Ker(phi21)` and `e2^-1 ∘ (phi21 x phi21) = psi_phi11`.
    pub cond3: Condition,
    /// `(phi11 ∘ e1)(e2^-1 ∘ (phi22 x phi22)) = psi_phi12`.
    pub cond4: Condition,
    /// `psi_phi11(x, x') = phi11(x) phi11(x') phi11(xx')^-1`, row-major.
    pub psi_phi11: Vec<usize>,
    pub psi_phi12: Vec<usize>,
}

impl HomConditionReport {
    pub fn all_hold(&self) -> bool {
        self.cond1.holds && self.cond2.holds && self.cond3.holds && self.cond4.holds
    }
}

/// `psi_f(a, b) = f(a) f(b) f(ab)^-1` for a map `f: dom -> cod`, row-major.
pub fn psi_table(f: &GroupMap, dom: &FiniteGroup, cod: &FiniteGroup) -> Vec<usize> {
    let n = dom.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(cod.div(cod.mul(f.apply(a), f.apply(b)), f.apply(dom.mul(a, b))));
        }
    }
    out
}

fn first_mismatch(lhs: &[usize], rhs: &[usize], n: usize) -> Option<(usize, usize)> {
    lhs.iter().zip(rhs).position(|(a, b)| a != b).map(|i| (i / n, i % n))
}

pub fn check_hom_conditions(m: &HomMatrix<'_>, hypothesis: SimHypothesis, limits: &Limits) -> Result<HomConditionReport> {
    let status = resolve_hypothesis(m.source.g2(), hypothesis, limits)?;
    Ok(hom_conditions(m, status))
}

/// The report without deciding the hypothesis; `status` is recorded as is.
pub fn hom_conditions(m: &HomMatrix<'_>, status: HypothesisStatus) -> HomConditionReport {
    let (g1, g2) = (m.source.g1().as_ref(), m.source.g2().as_ref());
    let (n1, n2) = (g1.order(), g2.order());
    let (e1, e2) = (m.source.epsilon(), m.target.epsilon());

    let cond1 = {
        let image22 = m.phi22.image_set();
        let centralizer = g2.centralizer(&image22);
        let failure = if let Some((a, b)) = m.phi21.hom_failure(g1, g2) {
            Some(format!("phi21 not a homomorphism at ({a},{b})"))
        } else if let Some(x) = g1.elements().find(|&x| !centralizer.contains(m.phi21.apply(x))) {
            Some(format!("phi21({x}) outside the centralizer of phi22(G2)"))
        } else if let Some((a, b)) = m.phi22.hom_failure(g2, g2) {
            Some(format!("phi22 not an endomorphism at ({a},{b})"))
        } else {
            epsilon_endomorphism_failure(&m.phi11, e1)
                .map(|(x, v)| format!("phi11 not an e1-endomorphism at x={x}, value {v}"))
        };
        Condition::from_failure(failure)
    };

    let cond2 = {
        let tg = m.target.group();
        let mut failure = None;
        'outer: for y in 0..n2 {
            for x in 0..n1 {
                let (a, b) = (m.target.index_of(0, m.phi22.apply(y)), m.target.index_of(0, m.phi21.apply(x)));
                if !tg.commute(a, b) {
                    failure = Some(format!("(1,phi22({y})) and (1,phi21({x})) do not commute"));
                    break 'outer;
                }
            }
        }
        Condition::from_failure(failure)
    };

    let psi_phi11 = psi_table(&m.phi11, g1, g1);
    let cond3 = {
        let failure = if let Some(v) = e1.image().into_iter().find(|&v| m.phi21.apply(v) != 0) {
            Some(format!("e1 value {v} not in Ker(phi21)"))
        } else {
            let lhs: Vec<usize> = (0..n1 * n1)
                .map(|i| g1.inv(e2.value(m.phi21.apply(i / n1), m.phi21.apply(i % n1))))
                .collect();
            first_mismatch(&lhs, &psi_phi11, n1)
                .map(|(x, x2)| format!("e2^-1(phi21 x, phi21 x') != psi_phi11 at ({x},{x2})"))
        };
        Condition::from_failure(failure)
    };

    let psi_phi12 = psi_table(&m.phi12, g2, g1);
    let cond4 = {
        let lhs: Vec<usize> = (0..n2 * n2)
            .map(|i| {
                let (y, y2) = (i / n2, i % n2);
                let a = m.phi11.apply(e1.value(y, y2));
                g1.div(a, e2.value(m.phi22.apply(y), m.phi22.apply(y2)))
            })
            .collect();
        Condition::from_failure(
            first_mismatch(&lhs, &psi_phi12, n2)
                .map(|(y, y2)| format!("(phi11∘e1)(e2^-1∘(phi22×phi22)) != psi_phi12 at ({y},{y2})")),
        )
    };

    HomConditionReport { hypothesis: status, cond1, cond2, cond3, cond4, psi_phi11, psi_phi12 }
}
