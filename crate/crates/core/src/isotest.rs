//! Structured isomorphisms between twisted products, with certificates.
//!
//! Every decision procedure returns an [`IsoCertificate`]: the component
//! maps of a matrix `[[sigma, eta], [delta, rho]]` (absent means trivial).
//! [`IsoCertificate::verify`] materializes the map through the matrix
//! formula and checks it against the tables, so a certificate never has to
//! be trusted.

use serde::{Deserialize, Serialize};

use crate::cocycle::{compute_cocycle_space, Coboundaries, Cocycle2};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension, is_epsilon_endomorphism, psi_table, resolve_hypothesis, ExtensionGroup, HomMatrix,
    HypothesisStatus, SimHypothesis,
};
use crate::group::{enumerate_automorphisms, enumerate_homs, enumerate_isomorphisms, FiniteGroup, GroupMap, Limits};

mod harness;

pub use harness::{
    default_pairs, slow_tier_classes, verify_cocycles, verify_theorems, ClassPairRecord, CriterionVerdicts,
    PairReport, Report,
};

/// Which notion of isomorphism a certificate witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    /// Leaves `G1 x {1}` invariant (`phi21 = 1`).
    Upper,
    /// Leaves `{1} x G2` invariant (`phi12 = 1`).
    Lower,
    /// `phi11 = 1`.
    G1Iso,
    /// `phi22 = 1`.
    G2Iso,
    /// `phi11 = phi22 = 1`.
    G1G2Iso,
    /// Built from a tuple over a purely non-abelian quotient; no shape
    /// constraint beyond being an isomorphism.
    PurelyNonabelianBuilt,
}

impl IsoKind {
    /// Whether `phi` has the component shape this kind asks for.
    pub fn admits(self, source: &ExtensionGroup, target: &ExtensionGroup, phi: &GroupMap) -> bool {
        let (n1, n2) = (source.g1().order(), source.g2().order());
        let pr = |i: usize| target.pair_of(phi.apply(i));
        let upper = || (0..n1).all(|x| pr(source.index_of(x, 0)).1 == 0);
        let lower = || (0..n2).all(|y| pr(source.index_of(0, y)).0 == 0);
        let g1 = || (0..n1).all(|x| pr(source.index_of(x, 0)).0 == 0);
        let g2 = || (0..n2).all(|y| pr(source.index_of(0, y)).1 == 0);
        match self {
            IsoKind::Upper => upper(),
            IsoKind::Lower => lower(),
            IsoKind::G1Iso => g1(),
            IsoKind::G2Iso => g2(),
            IsoKind::G1G2Iso => g1() && g2(),
            IsoKind::PurelyNonabelianBuilt => true,
        }
    }
}

/// Component maps of a structured isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub kind: IsoKind,
    /// `G1 -> G1`
    pub sigma: Option<GroupMap>,
    /// `G2 -> G2`
    pub rho: Option<GroupMap>,
    /// `G1 -> G2`
    pub delta: Option<GroupMap>,
    /// `G2 -> G1`
    pub eta: Option<GroupMap>,
    /// The coboundary witness the search solved for, when there was one.
    pub t_witness: Option<GroupMap>,
    pub source: ExtensionGroup,
    pub target: ExtensionGroup,
}

impl IsoCertificate {
    fn new(kind: IsoKind, source: &ExtensionGroup, target: &ExtensionGroup) -> Self {
        IsoCertificate {
            kind,
            sigma: None,
            rho: None,
            delta: None,
            eta: None,
            t_witness: None,
            source: source.clone(),
            target: target.clone(),
        }
    }

    pub fn matrix(&self) -> Result<HomMatrix<'_>> {
        HomMatrix::new(
            &self.source,
            &self.target,
            self.sigma.clone(),
            self.eta.clone(),
            self.delta.clone(),
            self.rho.clone(),
        )
    }

    /// The map defined by the matrix formula.
    pub fn materialize(&self) -> Result<GroupMap> {
        Ok(self.matrix()?.reconstruct())
    }

    /// Materializes and checks: an isomorphism of the carriers with the
    /// component shape of `kind`.
    pub fn verify(&self) -> Result<GroupMap> {
        let phi = self.materialize()?;
        if !phi.is_isomorphism(self.source.group(), self.target.group()) {
            return Err(Error::TheoremViolated(format!("{:?} certificate does not give an isomorphism", self.kind)));
        }
        if !self.kind.admits(&self.source, &self.target, &phi) {
            return Err(Error::TheoremViolated(format!("{:?} certificate has the wrong shape", self.kind)));
        }
        Ok(phi)
    }

    pub fn to_json(&self) -> Result<CertificateJson> {
        Ok(CertificateJson {
            kind: self.kind,
            sigma: self.sigma.clone(),
            rho: self.rho.clone(),
            delta: self.delta.clone(),
            eta: self.eta.clone(),
            t_witness: self.t_witness.clone(),
            map: self.materialize()?,
        })
    }
}

/// Serialized certificate; maps are image arrays, absent maps are trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: IsoKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<GroupMap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<GroupMap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<GroupMap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<GroupMap>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_witness: Option<GroupMap>,
    pub map: GroupMap,
}

fn same_factors(e1: &Cocycle2, e2: &Cocycle2) -> Result<()> {
    if e1.g1() != e2.g1() || e1.g2() != e2.g2() {
        return Err(Error::GroupMismatch("cocycles over different groups"));
    }
    Ok(())
}

fn extensions(e1: &Cocycle2, e2: &Cocycle2) -> Result<(ExtensionGroup, ExtensionGroup)> {
    same_factors(e1, e2)?;
    Ok((build_extension(e1)?, build_extension(e2)?))
}

/// Pointwise `a * b^-1` of two tables with values in `g`.
fn quotient_table(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(&x, &y)| g.div(x, y)).collect()
}

/// `[{1} x G2, {1} x delta(G1)] = 1` inside the target carrier.
fn delta_image_commutes(target: &ExtensionGroup, delta: &GroupMap) -> bool {
    let tg = target.group();
    let image = delta.image_set();
    target.g2().elements().all(|y| image.iter().all(|&d| tg.commute(target.index_of(0, y), target.index_of(0, d))))
}

fn kernel_contains_values(delta: &GroupMap, e: &Cocycle2) -> bool {
    e.image().into_iter().all(|v| delta.apply(v) == 0)
}

/// Maps of `G1 -> G2` as a table over `G1 x G1`: `e ∘ (delta x delta)`.
fn pullback(e: &Cocycle2, delta: &GroupMap) -> Vec<usize> {
    e.precompose(delta)
}

/// Whether `G1 x_e1 G2` and `G1 x_e2 G2` are isomorphic through a map that
/// leaves `G1` invariant.
///
/// Runs over `sigma` in `Aut(G1)` and `rho` in `Aut(G2)` (both in
/// lexicographic order) and asks whether `(sigma ∘ e1)(e2^-1 ∘ (rho x rho))`
/// is a coboundary `psi_eta`; the certificate is `[[sigma, eta], [1, rho]]`.
pub fn upper_isomorphic(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (source, target) = extensions(e1, e2)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    let solver = Coboundaries::new(g1, g2, limits)?;
    let aut1 = enumerate_automorphisms(g1, limits)?;
    let aut2 = enumerate_automorphisms(g2, limits)?;
    for sigma in &aut1 {
        let left = e1.map_values(sigma);
        for rho in &aut2 {
            let table = quotient_table(g1, &left, &e2.precompose(rho));
            if let Some(eta) = solver.witness(&table)? {
                let mut cert = IsoCertificate::new(IsoKind::Upper, &source, &target);
                cert.sigma = Some(sigma.clone());
                cert.rho = Some(rho.clone());
                cert.eta = Some(eta.clone());
                cert.t_witness = Some(eta);
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// `G1 x_e G2` against the direct product: upper isomorphic iff some
/// `sigma ∘ e` is a coboundary.
pub fn upper_to_direct(e: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (g1, g2) = (e.g1(), e.g2());
    let trivial = Cocycle2::trivial(g1.clone(), g2.clone());
    let (source, target) = extensions(e, &trivial)?;
    let solver = Coboundaries::new(g1, g2, limits)?;
    for sigma in enumerate_automorphisms(g1, limits)? {
        if let Some(eta) = solver.witness(&e.map_values(&sigma))? {
            let mut cert = IsoCertificate::new(IsoKind::Upper, &source, &target);
            cert.sigma = Some(sigma);
            cert.rho = Some(GroupMap::identity(g2.order()));
            cert.eta = Some(eta.clone());
            cert.t_witness = Some(eta);
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// The direct product against `G1 x_e G2`: upper isomorphic iff some
/// `e^-1 ∘ (rho x rho)` is a coboundary.
pub fn direct_to_upper(e: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (g1, g2) = (e.g1(), e.g2());
    let trivial = Cocycle2::trivial(g1.clone(), g2.clone());
    let (source, target) = extensions(&trivial, e)?;
    let solver = Coboundaries::new(g1, g2, limits)?;
    for rho in enumerate_automorphisms(g2, limits)? {
        let table: Vec<usize> = e.precompose(&rho).into_iter().map(|v| g1.inv(v)).collect();
        if let Some(eta) = solver.witness(&table)? {
            let mut cert = IsoCertificate::new(IsoKind::Upper, &source, &target);
            cert.sigma = Some(GroupMap::identity(g1.order()));
            cert.rho = Some(rho);
            cert.eta = Some(eta.clone());
            cert.t_witness = Some(eta);
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// First failing condition of a lower tuple `(sigma, rho, delta)`:
/// `rho` an automorphism, `delta` a hom into `Z(G2)`, `sigma` an
/// `e1`-automorphism, then the three displayed conditions.
fn lower_failure(
    target: &ExtensionGroup,
    e1: &Cocycle2,
    e2: &Cocycle2,
    sigma: &GroupMap,
    rho: &GroupMap,
    delta: &GroupMap,
) -> Option<&'static str> {
    let (g1, g2) = (e1.g1(), e1.g2());
    if !rho.is_isomorphism(g2, g2) {
        return Some("rho is not an automorphism of G2");
    }
    let center = g2.center();
    if !delta.is_homomorphism(g1, g2) || !delta.maps_into(&g1.elements().collect::<Vec<_>>(), &center) {
        return Some("delta is not a homomorphism into Z(G2)");
    }
    if !sigma.is_bijective(g1.order()) || !is_epsilon_endomorphism(sigma, e1) {
        return Some("sigma is not an e1-automorphism");
    }
    if !delta_image_commutes(target, delta) || !kernel_contains_values(delta, e1) {
        return Some("condition 1: [{1}xG2, {1}xdelta(G1)] = 1 and Im(e1) <= Ker(delta)");
    }
    let lhs: Vec<usize> = pullback(e2, delta).into_iter().map(|v| g1.inv(v)).collect();
    if lhs != psi_table(sigma, g1, g1) {
        return Some("condition 2: e2^-1 ∘ (delta x delta) = psi_sigma");
    }
    if e2.precompose(rho) != e1.map_values(sigma) {
        return Some("condition 3: e2 ∘ (rho x rho) = sigma ∘ e1");
    }
    None
}

/// Reads `(sigma, rho, delta)` off a lower isomorphism and checks the
/// necessary conditions; a failure means the implication is false.
pub fn lower_necessary(
    e1: &Cocycle2,
    e2: &Cocycle2,
    phi: &GroupMap,
    hypothesis: SimHypothesis,
    limits: &Limits,
) -> Result<IsoCertificate> {
    let (source, target) = extensions(e1, e2)?;
    if !phi.is_isomorphism(source.group(), target.group()) {
        return Err(Error::NotLowerIso("not an isomorphism of the carriers".into()));
    }
    if !IsoKind::Lower.admits(&source, &target, phi) {
        return Err(Error::NotLowerIso("{1} x G2 is not mapped into {1} x G2".into()));
    }
    require_hypothesis(e1.g2(), hypothesis, limits)?;
    let m = HomMatrix::decompose(&source, &target, phi)?;
    if let Some(reason) = lower_failure(&target, e1, e2, &m.phi11, &m.phi22, &m.phi21) {
        return Err(Error::TheoremViolated(format!("lower isomorphism violates {reason}")));
    }
    let mut cert = IsoCertificate::new(IsoKind::Lower, &source, &target);
    cert.sigma = Some(m.phi11.clone());
    cert.rho = Some(m.phi22.clone());
    cert.delta = Some(m.phi21.clone());
    Ok(cert)
}

fn require_hypothesis(g2: &FiniteGroup, mode: SimHypothesis, limits: &Limits) -> Result<HypothesisStatus> {
    match resolve_hypothesis(g2, mode, limits)? {
        HypothesisStatus::Refuted => Err(Error::HypothesisNotVerified),
        status => Ok(status),
    }
}

/// Materializes a lower certificate after checking its conditions; this is
/// the converse direction, valid for finite groups without any hypothesis.
pub fn lower_sufficient(cert: &IsoCertificate) -> Result<GroupMap> {
    if cert.kind != IsoKind::Lower || cert.eta.as_ref().is_some_and(|m| !m.is_trivial()) {
        return Err(Error::ConditionsFailed("not a lower certificate".into()));
    }
    let (g1, g2) = (cert.source.g1(), cert.source.g2());
    let sigma = cert.sigma.clone().unwrap_or_else(|| GroupMap::trivial(g1.order()));
    let rho = cert.rho.clone().unwrap_or_else(|| GroupMap::trivial(g2.order()));
    let delta = cert.delta.clone().unwrap_or_else(|| GroupMap::trivial(g1.order()));
    if let Some(reason) =
        lower_failure(&cert.target, cert.source.epsilon(), cert.target.epsilon(), &sigma, &rho, &delta)
    {
        return Err(Error::ConditionsFailed(reason.into()));
    }
    cert.verify()
}

/// Decides lower isomorphism: the necessary conditions, searched
/// exhaustively, together with their converse for finite groups.
///
/// For each `delta` in `Hom(G1, Z(G2))` passing condition 1, one solution
/// `sigma0` of `psi_sigma = e2^-1 ∘ (delta x delta)` is found by linear
/// algebra; all others are `sigma0 * h` for `h` in `End(G1)`. Complete only
/// when (∼) is trivial on `Z²(G2, G2)`, so the hypothesis is required.
pub fn lower_isomorphic(
    e1: &Cocycle2,
    e2: &Cocycle2,
    hypothesis: SimHypothesis,
    limits: &Limits,
) -> Result<Option<IsoCertificate>> {
    let (source, target) = extensions(e1, e2)?;
    require_hypothesis(e1.g2(), hypothesis, limits)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    let center = g2.center();
    let all1: Vec<usize> = g1.elements().collect();
    let deltas: Vec<GroupMap> = enumerate_homs(g1, g2, limits)?
        .into_iter()
        .filter(|d| d.maps_into(&all1, &center) && kernel_contains_values(d, e1) && delta_image_commutes(&target, d))
        .collect();
    if deltas.is_empty() {
        return Ok(None);
    }
    let solver = Coboundaries::new(g1, g1, limits)?;
    let end1 = enumerate_homs(g1, g1, limits)?;
    let aut2 = enumerate_automorphisms(g2, limits)?;
    for delta in deltas {
        let table: Vec<usize> = pullback(e2, &delta).into_iter().map(|v| g1.inv(v)).collect();
        let Some(sigma0) = solver.witness(&table)? else { continue };
        let mut sigmas: Vec<GroupMap> = end1
            .iter()
            .map(|h| sigma0.pointwise(h, g1))
            .filter(|s| s.is_bijective(g1.order()) && is_epsilon_endomorphism(s, e1))
            .collect();
        sigmas.sort();
        for sigma in sigmas {
            let want = e1.map_values(&sigma);
            if let Some(rho) = aut2.iter().find(|rho| e2.precompose(rho) == want) {
                let mut cert = IsoCertificate::new(IsoKind::Lower, &source, &target);
                cert.sigma = Some(sigma);
                cert.rho = Some(rho.clone());
                cert.delta = Some(delta);
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// `G1 x_e G2` is lower isomorphic to the direct product iff `e = 1`.
pub fn lower_to_direct(e: &Cocycle2) -> bool {
    e.is_trivial()
}

/// A `rho` in `Aut(G2)` with `e ∘ (rho x rho) = 1`; `(x, y) -> (x, rho(y))`
/// is then a lower isomorphism from the direct product.
///
/// Since `rho` is a bijection, `e ∘ (rho x rho)` is trivial exactly when
/// `e` is, so this only ever succeeds for the trivial cocycle.
pub fn direct_to_lower(e: &Cocycle2, limits: &Limits) -> Result<Option<GroupMap>> {
    for rho in enumerate_automorphisms(e.g2(), limits)? {
        if e.precompose(&rho).iter().all(|&v| v == 0) {
            return Ok(Some(rho));
        }
    }
    Ok(None)
}

/// With `B²(G1, G1) = 1`: lower isomorphic iff `e2 ∘ (rho x rho) = sigma ∘ e1`
/// for some automorphisms; the certificate is `(x, y) -> (sigma(x), rho(y))`.
pub fn lower_b2trivial(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (source, target) = extensions(e1, e2)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    let space = compute_cocycle_space(g1, g1, limits)?;
    if space.b2_order != 1 {
        return Err(Error::PreconditionViolated(format!("B²(G1, G1) has order {}", space.b2_order)));
    }
    let aut2 = enumerate_automorphisms(g2, limits)?;
    for sigma in enumerate_automorphisms(g1, limits)? {
        let want = e1.map_values(&sigma);
        if let Some(rho) = aut2.iter().find(|rho| e2.precompose(rho) == want) {
            let mut cert = IsoCertificate::new(IsoKind::Lower, &source, &target);
            cert.sigma = Some(sigma);
            cert.rho = Some(rho.clone());
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleQuotientReport {
    pub isomorphisms: usize,
    /// Isomorphisms mapping `G1 x {1}` onto itself.
    pub preserving: usize,
}

/// For a simple non-abelian `G2`: every isomorphism between the two
/// carriers preserves `G1 x {1}`.
pub fn simple_quotient_check(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<SimpleQuotientReport> {
    let g2 = e1.g2();
    if g2.is_abelian() || !g2.is_simple() {
        return Err(Error::PreconditionViolated("G2 is not simple non-abelian".into()));
    }
    let (source, target) = extensions(e1, e2)?;
    let isos = enumerate_isomorphisms(source.group(), target.group(), limits)?;
    let preserving = isos.iter().filter(|phi| IsoKind::Upper.admits(&source, &target, phi)).count();
    if preserving != isos.len() {
        return Err(Error::TheoremViolated(format!(
            "{} of {} isomorphisms move G1 x {{1}}",
            isos.len() - preserving,
            isos.len()
        )));
    }
    Ok(SimpleQuotientReport { isomorphisms: isos.len(), preserving })
}

/// Builds `[[sigma, eta], [delta, rho]]` for a purely non-abelian `G2` and
/// checks it is an isomorphism.
#[allow(clippy::too_many_arguments)]
pub fn build_purely_nonabelian_iso(
    sigma: &GroupMap,
    eta: &GroupMap,
    delta: &GroupMap,
    rho: &GroupMap,
    e1: &Cocycle2,
    e2: &Cocycle2,
) -> Result<IsoCertificate> {
    let (source, target) = extensions(e1, e2)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    let fail = |what: &str| Err(Error::PreconditionViolated(what.into()));
    if !g2.is_purely_nonabelian() {
        return fail("G2 is not purely non-abelian");
    }
    if !sigma.is_isomorphism(g1, g1) {
        return fail("sigma is not in Aut(G1)");
    }
    if !eta.is_homomorphism(g2, g1) {
        return fail("eta is not in Hom(G2, G1)");
    }
    if !delta.is_homomorphism(g1, g2) {
        return fail("delta is not in Hom(G1, G2)");
    }
    if !rho.is_isomorphism(g2, g2) {
        return fail("rho is not in Aut(G2)");
    }
    if !delta_image_commutes(&target, delta) {
        return fail("condition 1: [{1}xG2, {1}xdelta(G1)] = 1");
    }
    if pullback(e2, delta).iter().any(|&v| v != 0) || !kernel_contains_values(delta, e1) {
        return fail("condition 2: e2 ∘ (delta x delta) = 1 and delta ∘ e1 = 1");
    }
    if e1.map_values(sigma) != e2.precompose(rho) {
        return fail("condition 3: sigma ∘ e1 = e2 ∘ (rho x rho)");
    }
    let mut cert = IsoCertificate::new(IsoKind::PurelyNonabelianBuilt, &source, &target);
    cert.sigma = Some(sigma.clone());
    cert.eta = Some(eta.clone());
    cert.delta = Some(delta.clone());
    cert.rho = Some(rho.clone());
    cert.verify()?;
    Ok(cert)
}

/// Reads `(sigma, eta, delta)` off an isomorphism with `phi22 = 1` and
/// checks what a (G2)-isomorphism forces.
pub fn g2_isomorphic_necessary(e1: &Cocycle2, e2: &Cocycle2, phi: &GroupMap) -> Result<IsoCertificate> {
    let (source, target) = extensions(e1, e2)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    if !phi.is_isomorphism(source.group(), target.group()) {
        return Err(Error::NotG2Iso("not an isomorphism of the carriers".into()));
    }
    if !IsoKind::G2Iso.admits(&source, &target, phi) {
        return Err(Error::NotG2Iso("phi22 is not trivial".into()));
    }
    let m = HomMatrix::decompose(&source, &target, phi)?;
    let (sigma, eta, delta) = (&m.phi11, &m.phi12, &m.phi21);
    let violated = |what: &str| Err(Error::TheoremViolated(format!("(G2)-isomorphism violates {what}")));
    if !is_epsilon_endomorphism(sigma, e1) {
        return violated("sigma an e1-endomorphism");
    }
    if !eta.is_injective() {
        return violated("eta injective");
    }
    if !delta.is_homomorphism(g1, g2) || !delta.is_surjective(g2.order()) {
        return violated("delta an epimorphism");
    }
    let lhs: Vec<usize> = pullback(e2, delta).into_iter().map(|v| g1.inv(v)).collect();
    if lhs != psi_table(sigma, g1, g1) || !kernel_contains_values(delta, e1) {
        return violated("condition 1: e2^-1 ∘ (delta x delta) = psi_sigma, Im(e1) <= Ker(delta)");
    }
    if e1.map_values(sigma) != psi_table(eta, g2, g1) {
        return violated("condition 2: sigma ∘ e1 = psi_eta");
    }
    let mut cert = IsoCertificate::new(IsoKind::G2Iso, &source, &target);
    cert.sigma = Some(sigma.clone());
    cert.eta = Some(eta.clone());
    cert.delta = Some(delta.clone());
    Ok(cert)
}

fn require_equal_order_abelian(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<()> {
    if !g1.is_abelian() || !g2.is_abelian() || g1.order() != g2.order() {
        return Err(Error::PreconditionViolated("G1 and G2 must be abelian of the same order".into()));
    }
    Ok(())
}

/// Equal-order abelian factors: (G2)-isomorphic iff `e1 = 1` and some
/// isomorphism `delta: G1 -> G2` makes `e2^-1 ∘ (delta x delta)` a
/// coboundary `psi_sigma`. The certificate is `(x, y) -> (sigma(x) delta'(y), delta(x))`.
pub fn g2_isomorphic_equal_order(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (g1, g2) = (e1.g1(), e1.g2());
    require_equal_order_abelian(g1, g2)?;
    let (source, target) = extensions(e1, e2)?;
    if !e1.is_trivial() {
        return Ok(None);
    }
    let solver = Coboundaries::new(g1, g1, limits)?;
    for delta in enumerate_isomorphisms(g1, g2, limits)? {
        let table: Vec<usize> = pullback(e2, &delta).into_iter().map(|v| g1.inv(v)).collect();
        if let Some(sigma) = solver.witness(&table)? {
            let mut cert = IsoCertificate::new(IsoKind::G2Iso, &source, &target);
            cert.eta = delta.inverse();
            cert.sigma = Some(sigma.clone());
            cert.delta = Some(delta);
            cert.t_witness = Some(sigma);
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Reads `(rho, eta, delta)` off an isomorphism with `phi11 = 1` and checks
/// what a (G1)-isomorphism forces when (∼) is trivial on `Z²(G2, G2)`.
pub fn g1_isomorphic_necessary(
    e1: &Cocycle2,
    e2: &Cocycle2,
    phi: &GroupMap,
    hypothesis: SimHypothesis,
    limits: &Limits,
) -> Result<IsoCertificate> {
    let (source, target) = extensions(e1, e2)?;
    let (g1, g2) = (e1.g1(), e1.g2());
    if !phi.is_isomorphism(source.group(), target.group()) {
        return Err(Error::NotG1Iso("not an isomorphism of the carriers".into()));
    }
    if !IsoKind::G1Iso.admits(&source, &target, phi) {
        return Err(Error::NotG1Iso("phi11 is not trivial".into()));
    }
    require_hypothesis(g2, hypothesis, limits)?;
    let m = HomMatrix::decompose(&source, &target, phi)?;
    let (rho, eta, delta) = (&m.phi22, &m.phi12, &m.phi21);
    let violated = |what: &str| Err(Error::TheoremViolated(format!("(G1)-isomorphism violates {what}")));
    if !rho.is_homomorphism(g2, g2) {
        return violated("rho an endomorphism");
    }
    if !eta.is_surjective(g1.order()) {
        return violated("eta surjective");
    }
    if !delta.is_homomorphism(g1, g2) || !delta.is_injective() {
        return violated("delta a monomorphism");
    }
    if !e1.is_trivial() {
        return violated("condition 1: e1 = 1");
    }
    if pullback(e2, delta).iter().any(|&v| v != 0) {
        return violated("condition 2: e2 ∘ (delta x delta) = 1");
    }
    let lhs: Vec<usize> = e2.precompose(rho).into_iter().map(|v| g1.inv(v)).collect();
    if lhs != psi_table(eta, g2, g1) {
        return violated("condition 3: e2^-1 ∘ (rho x rho) = psi_eta");
    }
    let mut cert = IsoCertificate::new(IsoKind::G1Iso, &source, &target);
    cert.rho = Some(rho.clone());
    cert.eta = Some(eta.clone());
    cert.delta = Some(delta.clone());
    Ok(cert)
}

fn swap_certificate(kind: IsoKind, e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    let (source, target) = extensions(e1, e2)?;
    if !e1.is_trivial() {
        return Ok(None);
    }
    for delta in enumerate_isomorphisms(e1.g1(), e1.g2(), limits)? {
        if pullback(e2, &delta).iter().all(|&v| v == 0) {
            let mut cert = IsoCertificate::new(kind, &source, &target);
            cert.eta = delta.inverse();
            cert.delta = Some(delta);
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Equal-order abelian factors with (∼) trivial on `Z²(G2, G2)`:
/// (G1)-isomorphic iff `e1 = 1` and some isomorphism `delta` has
/// `e2 ∘ (delta x delta) = 1`.
pub fn g1_isomorphic_equal_order(
    e1: &Cocycle2,
    e2: &Cocycle2,
    hypothesis: SimHypothesis,
    limits: &Limits,
) -> Result<Option<IsoCertificate>> {
    require_equal_order_abelian(e1.g1(), e1.g2())?;
    require_hypothesis(e1.g2(), hypothesis, limits)?;
    swap_certificate(IsoKind::G1Iso, e1, e2, limits)
}

/// (G1, G2)-isomorphic iff `e1 = 1` and some isomorphism `delta: G1 -> G2`
/// has `e2 ∘ (delta x delta) = 1`; the certificate is
/// `(x, y) -> (delta'(y), delta(x))`.
pub fn g1g2_isomorphic(e1: &Cocycle2, e2: &Cocycle2, limits: &Limits) -> Result<Option<IsoCertificate>> {
    swap_certificate(IsoKind::G1G2Iso, e1, e2, limits)
}

/// All isomorphisms between the carriers (the oracle).
pub fn oracle_isomorphisms(a: &ExtensionGroup, b: &ExtensionGroup, limits: &Limits) -> Result<Vec<GroupMap>> {
    enumerate_isomorphisms(a.group(), b.group(), limits)
}

/// What the oracle says for each notion, given all isomorphisms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleVerdicts {
    pub isomorphic: bool,
    pub upper: bool,
    pub lower: bool,
    pub g1: bool,
    pub g2: bool,
    pub g1g2: bool,
}

impl OracleVerdicts {
    pub fn from_isomorphisms(a: &ExtensionGroup, b: &ExtensionGroup, isos: &[GroupMap]) -> Self {
        let any = |k: IsoKind| isos.iter().any(|phi| k.admits(a, b, phi));
        OracleVerdicts {
            isomorphic: !isos.is_empty(),
            upper: any(IsoKind::Upper),
            lower: any(IsoKind::Lower),
            g1: any(IsoKind::G1Iso),
            g2: any(IsoKind::G2Iso),
            g1g2: any(IsoKind::G1G2Iso),
        }
    }
}

/// `sigma ∘ e1 = e2 ∘ (rho x rho)` over automorphisms, first hit.
pub fn matching_automorphisms(
    e1: &Cocycle2,
    e2: &Cocycle2,
    limits: &Limits,
) -> Result<Option<(GroupMap, GroupMap)>> {
    same_factors(e1, e2)?;
    let aut2 = enumerate_automorphisms(e1.g2(), limits)?;
    for sigma in enumerate_automorphisms(e1.g1(), limits)? {
        let want = e1.map_values(&sigma);
        if let Some(rho) = aut2.iter().find(|rho| e2.precompose(rho) == want) {
            return Ok(Some((sigma, rho.clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog;
    use crate::cocycle::coboundary_from;
    use crate::group::brute_force_isomorphism;

    fn g(name: &str) -> Arc<FiniteGroup> {
        Arc::new(catalog::group(name).unwrap())
    }

    fn reps(g1: &str, g2: &str) -> Vec<Cocycle2> {
        compute_cocycle_space(&g(g1), &g(g2), &Limits::default()).unwrap().class_representatives
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn upper_examples() {
        let r = reps("Z2", "Z2");
        let cert = upper_isomorphic(&r[1], &r[1], &l()).unwrap().unwrap();
        assert!(cert.sigma.as_ref().unwrap().is_identity() && cert.rho.as_ref().unwrap().is_identity());
        assert!(cert.t_witness.as_ref().unwrap().is_trivial());
        assert_eq!(cert.verify().unwrap(), GroupMap::identity(4));
        assert!(upper_isomorphic(&r[1], &r[0], &l()).unwrap().is_none());

        let (z2, k4) = (g("Z2"), g("K4"));
        let e = reps("Z2", "K4")[3].clone();
        let shifted = e.mul(&coboundary_from(&z2, &k4, &GroupMap::new(vec![0, 1, 0, 0])).unwrap()).unwrap();
        let cert = upper_isomorphic(&e, &shifted, &l()).unwrap().unwrap();
        assert!(cert.sigma.as_ref().unwrap().is_identity() && cert.rho.as_ref().unwrap().is_identity());
        cert.verify().unwrap();
    }

    #[test]
    fn direct_corollaries() {
        let r = reps("Z2", "Z2");
        let cert = upper_to_direct(&r[0], &l()).unwrap().unwrap();
        assert_eq!(cert.verify().unwrap(), GroupMap::identity(4));
        assert!(upper_to_direct(&r[1], &l()).unwrap().is_none());
        assert!(direct_to_upper(&r[1], &l()).unwrap().is_none());

        let (z2, k4) = (g("Z2"), g("K4"));
        let psi = coboundary_from(&z2, &k4, &GroupMap::new(vec![0, 0, 1, 0])).unwrap();
        let cert = upper_to_direct(&psi, &l()).unwrap().unwrap();
        assert!(cert.sigma.as_ref().unwrap().is_identity());
        cert.verify().unwrap();
        direct_to_upper(&psi, &l()).unwrap().unwrap().verify().unwrap();
    }

    #[test]
    fn lower_identity_certificate() {
        let e = reps("Z2", "Z2").remove(1);
        let cert = lower_necessary(&e, &e, &GroupMap::identity(4), SimHypothesis::Verify, &l()).unwrap();
        assert!(cert.sigma.as_ref().unwrap().is_identity());
        assert!(cert.rho.as_ref().unwrap().is_identity());
        assert!(cert.delta.as_ref().unwrap().is_trivial());
        assert_eq!(lower_sufficient(&cert).unwrap(), GroupMap::identity(4));
        assert!(lower_isomorphic(&e, &e, SimHypothesis::Verify, &l()).unwrap().is_some());
    }

    #[test]
    fn lower_rejects_non_lower_maps() {
        let e = Cocycle2::trivial(g("Z2"), g("Z2"));
        // swap of the two coordinates of Z2 x Z2
        let swap = GroupMap::new(vec![0, 2, 1, 3]);
        assert!(matches!(
            lower_necessary(&e, &e, &swap, SimHypothesis::Verify, &l()),
            Err(Error::NotLowerIso(_))
        ));
        let z4 = Cocycle2::trivial(g("Z2"), g("Z4"));
        assert_eq!(
            lower_necessary(&z4, &z4, &GroupMap::identity(8), SimHypothesis::Verify, &l()),
            Err(Error::HypothesisNotVerified)
        );
    }

    #[test]
    fn direct3_and_direct4() {
        let r = reps("Z2", "Z2");
        assert!(lower_to_direct(&r[0]) && !lower_to_direct(&r[1]));
        assert_eq!(direct_to_lower(&r[0], &l()).unwrap(), Some(GroupMap::identity(2)));
        assert_eq!(direct_to_lower(&r[1], &l()).unwrap(), None);
        for e in reps("Z2", "K4").into_iter().skip(1) {
            assert_eq!(direct_to_lower(&e, &l()).unwrap(), None);
        }
    }

    #[test]
    fn lower_b2trivial_relates_classes() {
        let r = reps("Z2", "K4");
        let mut related = 0;
        for a in &r {
            for b in &r {
                if let Some(cert) = lower_b2trivial(a, b, &l()).unwrap() {
                    cert.verify().unwrap();
                    if a != b {
                        related += 1;
                    }
                }
            }
        }
        assert!(related > 0);
        assert!(matches!(
            lower_b2trivial(&Cocycle2::trivial(g("Z4"), g("Z2")), &Cocycle2::trivial(g("Z4"), g("Z2")), &l()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn purely_nonabelian_identity() {
        let e = reps("Z2", "Q8").remove(1);
        let cert = build_purely_nonabelian_iso(
            &GroupMap::identity(2),
            &GroupMap::trivial(8),
            &GroupMap::trivial(2),
            &GroupMap::identity(8),
            &e,
            &e,
        )
        .unwrap();
        assert_eq!(cert.verify().unwrap(), GroupMap::identity(16));
    }

    #[test]
    fn remark_configuration_is_rejected_and_collapses() {
        // G1 = Z2 as the first factor of G2 = Z2 x Z2, trivial cocycle.
        let (z2, k4) = (g("Z2"), g("K4"));
        let e = Cocycle2::trivial(z2.clone(), k4.clone());
        let inv = GroupMap::new(vec![0, 2]); // x -> x^-1 = x, embedded as (x, 0)
        let proj = GroupMap::new(vec![0, 0, 1, 1]); // (a, b) -> a
        let err = build_purely_nonabelian_iso(&GroupMap::identity(2), &proj, &inv, &GroupMap::identity(4), &e, &e);
        assert!(matches!(err, Err(Error::PreconditionViolated(_))));
        let ext = build_extension(&e).unwrap();
        let m = HomMatrix::new(&ext, &ext, Some(GroupMap::identity(2)), Some(proj), Some(inv), Some(GroupMap::identity(4)))
            .unwrap();
        let phi = m.reconstruct();
        assert!(crate::extension::is_homomorphism_direct(&ext, &ext, &phi));
        assert!(!phi.is_injective());
        // (x, x) with x the generator of G1 sits at x*4 + 2
        assert_eq!(phi.apply(ext.index_of(1, 2)), 0);
    }

    #[test]
    fn g2_equal_order_examples() {
        let (z2, z4) = (g("Z2"), g("Z4"));
        let t = Cocycle2::trivial(z2.clone(), z2.clone());
        let cert = g2_isomorphic_equal_order(&t, &t, &l()).unwrap().unwrap();
        assert!(cert.delta.as_ref().unwrap().is_identity());
        cert.verify().unwrap();
        let r = reps("Z2", "Z2");
        assert!(g2_isomorphic_equal_order(&r[1], &r[0], &l()).unwrap().is_none());
        assert!(g2_isomorphic_equal_order(&r[1], &r[1], &l()).unwrap().is_none());

        let t4 = Cocycle2::trivial(z4.clone(), z4.clone());
        let psi = coboundary_from(&z4, &z4, &GroupMap::new(vec![0, 1, 0, 0])).unwrap();
        let cert = g2_isomorphic_equal_order(&t4, &psi, &l()).unwrap().unwrap();
        let phi = cert.verify().unwrap();
        g2_isomorphic_necessary(&t4, &psi, &phi).unwrap();
    }

    #[test]
    fn g2_necessary_needs_room_in_g1() {
        // Over (Z4, Z2) no isomorphism has phi22 = 1: the image of (0, 1)
        // would be a square, and (0, 1) is not one.
        let (z2, k4) = (g("Z2"), g("K4"));
        for e in reps("Z4", "Z2") {
            let ext = build_extension(&e).unwrap();
            let filter = |phi: &GroupMap| IsoKind::G2Iso.admits(&ext, &ext, phi);
            assert_eq!(brute_force_isomorphism(ext.group(), ext.group(), Some(&filter), &l()).unwrap(), None);
        }
        let t = Cocycle2::trivial(k4, z2);
        let ext = build_extension(&t).unwrap();
        let filter = |phi: &GroupMap| IsoKind::G2Iso.admits(&ext, &ext, phi);
        let phi = brute_force_isomorphism(ext.group(), ext.group(), Some(&filter), &l()).unwrap().unwrap();
        let cert = g2_isomorphic_necessary(&t, &t, &phi).unwrap();
        assert!(cert.delta.as_ref().unwrap().is_surjective(2));
        assert!(cert.eta.as_ref().unwrap().is_injective());
        assert_eq!(cert.verify().unwrap(), phi);
    }

    #[test]
    fn g1_and_g1g2_examples() {
        let z2 = g("Z2");
        let t = Cocycle2::trivial(z2.clone(), z2.clone());
        let swap = GroupMap::new(vec![0, 2, 1, 3]);
        let cert = g1_isomorphic_necessary(&t, &t, &swap, SimHypothesis::Verify, &l()).unwrap();
        assert!(cert.delta.as_ref().unwrap().is_identity() && cert.eta.as_ref().unwrap().is_identity());
        assert!(cert.rho.as_ref().unwrap().is_trivial());
        let cert = g1g2_isomorphic(&t, &t, &l()).unwrap().unwrap();
        assert_eq!(cert.verify().unwrap(), swap);
        let r = reps("Z2", "Z2");
        assert!(g1g2_isomorphic(&r[1], &r[0], &l()).unwrap().is_none());
        assert!(g1_isomorphic_equal_order(&r[0], &r[1], SimHypothesis::Verify, &l()).unwrap().is_none());
    }

    #[test]
    fn g1g2_over_k4() {
        // e2 vanishing on delta(G1) x delta(G1) for delta = id.
        let r = reps("K4", "K4");
        let t = Cocycle2::trivial(g("K4"), g("K4"));
        let found = r.iter().filter(|e| g1g2_isomorphic(&t, e, &l()).unwrap().is_some()).count();
        assert_eq!(found, 1);
    }

    #[test]
    fn simple_quotient_precondition() {
        let r = reps("Z2", "S3");
        assert!(matches!(simple_quotient_check(&r[0], &r[0], &l()), Err(Error::PreconditionViolated(_))));
    }
}
