//! Runs every decision procedure against the oracle over a catalog of
//! `(G1, G2)` pairs and collects disagreements.
//!
//! Where an implication is claimed outright a disagreement is a
//! discrepancy. Where the claim rests on the (∼)-triviality of
//! `Z²(G2, G2)` and the checker could not establish it, a disagreement is
//! only a note: the procedure is run anyway with the hypothesis assumed.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::*;
use crate::catalog;
use crate::cocycle::are_cohomologous;
use crate::extension::hom_conditions;
use crate::group::{brute_force_isomorphism, quotient};

/// Catalog pairs with carrier order at most `max_order`.
///
/// `(Z2, Z2xZ2xZ2)` is left out: 64 classes over carriers with large
/// automorphism groups make it several times slower than everything else
/// together. It can still be passed explicitly.
pub fn default_pairs(max_order: usize) -> Vec<(&'static str, &'static str)> {
    const PAIRS: &[(&str, &str)] = &[
        ("Z2", "Z1"),
        ("Z2", "Z2"),
        ("Z2", "Z3"),
        ("Z2", "Z4"),
        ("Z2", "Z2xZ2"),
        ("Z2", "Z5"),
        ("Z2", "Z6"),
        ("Z2", "S3"),
        ("Z2", "Z7"),
        ("Z2", "Z8"),
        ("Z2", "Z2xZ4"),
        ("Z2", "D4"),
        ("Z2", "Q8"),
        ("Z3", "Z2"),
        ("Z3", "Z3"),
        ("Z3", "Z4"),
        ("Z3", "Z2xZ2"),
        ("Z3", "Z5"),
        ("Z4", "Z2"),
        ("Z4", "Z3"),
        ("Z4", "Z4"),
        ("Z4", "Z2xZ2"),
        ("Z2xZ2", "Z2"),
        ("Z2xZ2", "Z3"),
        ("Z2xZ2", "Z4"),
        ("Z2xZ2", "Z2xZ2"),
    ];
    PAIRS
        .iter()
        .copied()
        .filter(|(a, b)| {
            let order = |n: &str| catalog::entry(n).map_or(usize::MAX, |e| e.group().order());
            order(a).saturating_mul(order(b)) <= max_order
        })
        .collect()
}

/// Per-criterion outcome for one ordered class pair; `None` where the
/// criterion does not apply or was out of bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriterionVerdicts {
    pub cohomologous: Option<bool>,
    pub upper: Option<bool>,
    pub upper_to_direct: Option<bool>,
    pub direct_to_upper: Option<bool>,
    pub lower: Option<bool>,
    pub lower_to_direct: Option<bool>,
    pub direct_to_lower: Option<bool>,
    pub lower_b2trivial: Option<bool>,
    pub simple_quotient: Option<bool>,
    pub purely_nonabelian_built: Option<bool>,
    pub g2_equal_order: Option<bool>,
    pub g1_equal_order: Option<bool>,
    pub g1g2: Option<bool>,
    /// Oracle isomorphisms with `phi22 = 1` whose certificate verified.
    pub g2_necessary_checked: usize,
    /// Oracle isomorphisms with `phi11 = 1` whose certificate verified.
    pub g1_necessary_checked: usize,
    /// Oracle isomorphisms with `phi12 = 1` whose certificate verified.
    pub lower_necessary_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPairRecord {
    pub source_class: usize,
    pub target_class: usize,
    pub oracle: Option<OracleVerdicts>,
    pub criteria: CriterionVerdicts,
    pub certificates: Vec<CertificateJson>,
    pub discrepancy: bool,
    pub discrepancies: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub g1: String,
    pub g2: String,
    /// Catalog name of each class's carrier, when it has one.
    pub carriers: Vec<Option<String>>,
    /// `None` when the checker could not decide it.
    pub hypothesis: Option<HypothesisStatus>,
    pub records: Vec<ClassPairRecord>,
    /// Why the pair was not swept, if it was not.
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pairs: Vec<PairReport>,
    pub discrepancies: usize,
    pub notes: usize,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.discrepancies == 0
    }

    fn push(&mut self, pair: PairReport) {
        for r in &pair.records {
            self.discrepancies += r.discrepancies.len();
            self.notes += r.notes.len();
        }
        self.pairs.push(pair);
    }

    pub fn discrepancy_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.pairs {
            for r in &p.records {
                for d in &r.discrepancies {
                    out.push(format!("[{}, {}] ({}, {}): {d}", p.g1, p.g2, r.source_class, r.target_class));
                }
            }
        }
        out
    }
}

fn label(g: &FiniteGroup) -> String {
    g.name().map_or_else(|| format!("<order {}>", g.order()), str::to_string)
}

/// Sweeps every pair whose carrier order is at most `bound`, over all
/// ordered pairs of `H²` class representatives.
pub fn verify_theorems(pairs: &[(FiniteGroup, FiniteGroup)], bound: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::default();
    for (g1, g2) in pairs {
        if g1.order().saturating_mul(g2.order()) > bound {
            continue;
        }
        let (g1, g2) = (Arc::new(g1.clone()), Arc::new(g2.clone()));
        let space = compute_cocycle_space(&g1, &g2, limits)?;
        report.push(verify_cocycles(&space.class_representatives, limits)?);
    }
    Ok(report)
}

/// The two classes over `(Z2, A5)`: the trivial one and the one read off
/// `SL(2,5) -> SL(2,5)/Z = A5`, transported onto the catalog `A5`.
pub fn slow_tier_classes(limits: &Limits) -> Result<Vec<Cocycle2>> {
    let z2 = Arc::new(catalog::group("Z2")?);
    let a5 = Arc::new(catalog::group("A5")?);
    let sl = catalog::group("SL(2,5)")?;
    let center = sl.center();
    let (q, proj) = quotient(&sl, &center);
    let iso = brute_force_isomorphism(&q, &a5, None, limits)?
        .ok_or_else(|| Error::TheoremViolated("SL(2,5)/Z is not A5".into()))?;
    let proj = iso.after(&proj);
    let embed = GroupMap::new(center.members().to_vec());
    let nontrivial = Cocycle2::from_central_extension(z2.clone(), a5.clone(), &sl, &embed, &proj)?;
    Ok(vec![Cocycle2::trivial(z2, a5), nontrivial])
}

/// Per-pair context shared by every class pair.
struct PairContext {
    exts: Vec<ExtensionGroup>,
    classes: Vec<Cocycle2>,
    hypothesis: Option<HypothesisStatus>,
    b2_trivial: bool,
    equal_order_abelian: bool,
    simple_nonabelian: bool,
    purely_nonabelian: bool,
    center_is_kernel: Vec<bool>,
}

/// Sweeps all ordered pairs of the given cocycles, which must share their
/// factors and lie in distinct classes.
pub fn verify_cocycles(classes: &[Cocycle2], limits: &Limits) -> Result<PairReport> {
    let Some(first) = classes.first() else {
        return Ok(PairReport {
            g1: String::new(),
            g2: String::new(),
            carriers: Vec::new(),
            hypothesis: None,
            records: Vec::new(),
            skipped: Some("no classes".into()),
        });
    };
    let (g1, g2) = (first.g1().clone(), first.g2().clone());
    let exts = classes.iter().map(build_extension).collect::<Result<Vec<_>>>()?;
    let hypothesis = match resolve_hypothesis(&g2, SimHypothesis::Verify, limits) {
        Ok(s) => Some(s),
        Err(Error::HypothesisNotVerified) => None,
        Err(e) => return Err(e),
    };
    let b2_trivial = match compute_cocycle_space(&g1, &g1, limits) {
        Ok(s) => s.b2_order == 1,
        Err(Error::SizeLimitExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    let carriers = exts
        .iter()
        .map(|e| match catalog::identify(e.group(), limits) {
            Ok(name) => Ok(name.map(str::to_string)),
            Err(Error::SizeLimitExceeded { .. }) => Ok(None),
            Err(err) => Err(err),
        })
        .collect::<Result<Vec<_>>>()?;
    let center_is_kernel = exts.iter().map(|e| e.group().center() == e.kernel()).collect();
    let ctx = PairContext {
        classes: classes.to_vec(),
        hypothesis,
        b2_trivial,
        equal_order_abelian: g1.is_abelian() && g2.is_abelian() && g1.order() == g2.order(),
        simple_nonabelian: !g2.is_abelian() && g2.is_simple(),
        purely_nonabelian: g2.is_purely_nonabelian(),
        center_is_kernel,
        exts,
    };
    let n = classes.len();
    let work: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let records = work.into_par_iter().map(|(i, j)| check_class_pair(&ctx, i, j, limits)).collect::<Result<Vec<_>>>()?;
    Ok(PairReport { g1: label(&g1), g2: label(&g2), carriers, hypothesis, records, skipped: None })
}

struct Recorder {
    verified: bool,
    discrepancies: Vec<String>,
    notes: Vec<String>,
    certificates: Vec<CertificateJson>,
}

impl Recorder {
    fn fail(&mut self, msg: String) {
        self.discrepancies.push(msg);
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.discrepancies.push(msg());
        }
    }

    /// A discrepancy when the hypothesis is verified, a note otherwise.
    fn gated(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            let m = msg();
            if self.verified {
                self.discrepancies.push(m);
            } else {
                self.notes.push(format!("without the hypothesis: {m}"));
            }
        }
    }

    fn certificate(&mut self, cert: &IsoCertificate, expect: IsoKind) {
        if cert.kind != expect {
            self.fail(format!("expected a {expect:?} certificate, got {:?}", cert.kind));
        }
        match cert.verify().and_then(|_| cert.to_json()) {
            Ok(json) => self.certificates.push(json),
            Err(e) => self.fail(format!("{:?} certificate does not verify: {e}", cert.kind)),
        }
    }

    /// Turns a size-limit error into a note and `None`.
    fn bounded<T>(&mut self, what: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::SizeLimitExceeded { .. }) => {
                self.notes.push(format!("{what} skipped: {e}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

fn check_class_pair(ctx: &PairContext, i: usize, j: usize, limits: &Limits) -> Result<ClassPairRecord> {
    let (a, b) = (&ctx.exts[i], &ctx.exts[j]);
    let (e1, e2) = (&ctx.classes[i], &ctx.classes[j]);
    let mut r = Recorder {
        verified: ctx.hypothesis == Some(HypothesisStatus::Verified),
        discrepancies: Vec::new(),
        notes: Vec::new(),
        certificates: Vec::new(),
    };
    let mut v = CriterionVerdicts::default();

    let isos = r.bounded("oracle", oracle_isomorphisms(a, b, limits))?;
    let oracle = isos.as_ref().map(|isos| OracleVerdicts::from_isomorphisms(a, b, isos));

    if let Some(t) = r.bounded("cohomologous test", are_cohomologous(e1, e2, limits))? {
        v.cohomologous = Some(t.is_some());
        r.require(t.is_some() == (i == j), || "class representatives are cohomologous".into());
    }
    if let Some(o) = &oracle {
        if i == j {
            r.require(o.upper, || "equivalent extensions are not upper isomorphic".into());
        }
    }

    // upper criterion and the two direct-product corollaries
    if let Some(cert) = r.bounded("upper", upper_isomorphic(e1, e2, limits))? {
        v.upper = Some(cert.is_some());
        if let Some(c) = &cert {
            r.certificate(c, IsoKind::Upper);
        }
        if let Some(o) = &oracle {
            r.require(cert.is_some() == o.upper, || format!("upper criterion says {}, oracle {}", cert.is_some(), o.upper));
        }
    }
    if e2.is_trivial() {
        if let Some(cert) = r.bounded("upper_to_direct", upper_to_direct(e1, limits))? {
            v.upper_to_direct = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::Upper);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_some() == o.upper, || "upper_to_direct disagrees with the oracle".into());
            }
        }
    }
    if e1.is_trivial() {
        if let Some(cert) = r.bounded("direct_to_upper", direct_to_upper(e2, limits))? {
            v.direct_to_upper = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::Upper);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_some() == o.upper, || "direct_to_upper disagrees with the oracle".into());
            }
        }
    }

    // lower theorem with its finite converse
    if let Some(cert) = r.bounded("lower", lower_isomorphic(e1, e2, SimHypothesis::Assume, limits))? {
        v.lower = Some(cert.is_some());
        if let Some(c) = &cert {
            r.certificate(c, IsoKind::Lower);
            if let Err(e) = lower_sufficient(c) {
                r.fail(format!("lower certificate rejected by the converse: {e}"));
            }
        }
        if let Some(o) = &oracle {
            r.require(cert.is_none() || o.lower, || "lower certificate but no oracle lower isomorphism".into());
            r.gated(cert.is_some() == o.lower, || "lower criterion misses an oracle lower isomorphism".into());
        }
    }
    if e2.is_trivial() {
        v.lower_to_direct = Some(lower_to_direct(e1));
        if let Some(o) = &oracle {
            r.require(lower_to_direct(e1) == o.lower, || "lower_to_direct disagrees with the oracle".into());
        }
    }
    if e1.is_trivial() {
        if let Some(rho) = r.bounded("direct_to_lower", direct_to_lower(e2, limits))? {
            v.direct_to_lower = Some(rho.is_some());
            if let Some(o) = &oracle {
                r.require(rho.is_some() == o.lower, || "direct_to_lower disagrees with the oracle".into());
            }
        }
    }
    if ctx.b2_trivial {
        if let Some(cert) = r.bounded("lower_b2trivial", lower_b2trivial(e1, e2, limits))? {
            v.lower_b2trivial = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::Lower);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_none() || o.lower, || "lower_b2trivial certificate without oracle support".into());
                r.gated(cert.is_some() == o.lower, || "lower_b2trivial misses an oracle lower isomorphism".into());
            }
        }
    }

    // per-isomorphism checks
    if let Some(isos) = &isos {
        for phi in isos {
            let m = HomMatrix::decompose(a, b, phi)?;
            let report = hom_conditions(&m, ctx.hypothesis.unwrap_or(HypothesisStatus::Assumed));
            r.gated(report.all_hold(), || format!("isomorphism {:?} fails the homomorphism conditions", phi.images()));
            if IsoKind::Lower.admits(a, b, phi) {
                match lower_necessary(e1, e2, phi, SimHypothesis::Assume, limits) {
                    Ok(_) => v.lower_necessary_checked += 1,
                    Err(e) => r.gated(false, || format!("lower isomorphism {:?}: {e}", phi.images())),
                }
            }
            if IsoKind::G2Iso.admits(a, b, phi) {
                match g2_isomorphic_necessary(e1, e2, phi) {
                    Ok(_) => v.g2_necessary_checked += 1,
                    Err(e) => r.fail(format!("(G2)-isomorphism {:?}: {e}", phi.images())),
                }
            }
            if IsoKind::G1Iso.admits(a, b, phi) {
                match g1_isomorphic_necessary(e1, e2, phi, SimHypothesis::Assume, limits) {
                    Ok(_) => v.g1_necessary_checked += 1,
                    Err(e) => r.gated(false, || format!("(G1)-isomorphism {:?}: {e}", phi.images())),
                }
            }
            if ctx.center_is_kernel[i] && ctx.center_is_kernel[j] && !IsoKind::Upper.admits(a, b, phi) {
                r.fail("center equals G1 x {1} on both sides but an isomorphism moves it".into());
            }
        }
    }

    if ctx.simple_nonabelian {
        match r.bounded("simple quotient", simple_quotient_check(e1, e2, limits)) {
            Ok(Some(rep)) => v.simple_quotient = Some(rep.isomorphisms > 0),
            Ok(None) => {}
            Err(e) => r.fail(format!("simple quotient: {e}")),
        }
    }

    if ctx.purely_nonabelian {
        if let Some(found) = r.bounded("matching automorphisms", matching_automorphisms(e1, e2, limits))? {
            v.purely_nonabelian_built = Some(found.is_some());
            if let Some((sigma, rho)) = found {
                let (n1, n2) = (e1.g1().order(), e1.g2().order());
                match build_purely_nonabelian_iso(
                    &sigma,
                    &GroupMap::trivial(n2),
                    &GroupMap::trivial(n1),
                    &rho,
                    e1,
                    e2,
                ) {
                    Ok(c) => r.certificate(&c, IsoKind::PurelyNonabelianBuilt),
                    Err(e) => r.fail(format!("purely non-abelian builder: {e}")),
                }
                if let Some(o) = &oracle {
                    r.require(o.upper, || "built isomorphism but oracle finds no upper isomorphism".into());
                }
            }
        }
    }

    if ctx.equal_order_abelian {
        if let Some(cert) = r.bounded("g2_equal_order", g2_isomorphic_equal_order(e1, e2, limits))? {
            v.g2_equal_order = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::G2Iso);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_some() == o.g2, || format!("(G2) criterion says {}, oracle {}", cert.is_some(), o.g2));
            }
        }
        if let Some(cert) = r.bounded("g1g2", g1g2_isomorphic(e1, e2, limits))? {
            v.g1g2 = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::G1G2Iso);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_some() == o.g1g2, || format!("(G1,G2) criterion says {}, oracle {}", cert.is_some(), o.g1g2));
            }
        }
        if let Some(cert) = r.bounded("g1_equal_order", g1_isomorphic_equal_order(e1, e2, SimHypothesis::Assume, limits))? {
            v.g1_equal_order = Some(cert.is_some());
            if let Some(c) = &cert {
                r.certificate(c, IsoKind::G1Iso);
            }
            if let Some(o) = &oracle {
                r.require(cert.is_none() || o.g1, || "(G1) certificate without oracle support".into());
                r.gated(cert.is_some() == o.g1, || "(G1) criterion misses an oracle (G1)-isomorphism".into());
            }
        }
    }

    Ok(ClassPairRecord {
        source_class: i,
        target_class: j,
        oracle,
        criteria: v,
        certificates: r.certificates,
        discrepancy: !r.discrepancies.is_empty(),
        discrepancies: r.discrepancies,
        notes: r.notes,
    })
}
