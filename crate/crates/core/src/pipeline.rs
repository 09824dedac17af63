//! End-to-end analysis of an instance and the bundled example catalog.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::ideal::{derivatives, smoothness_test, NotSmoothReason, Verdict};
use crate::parse::{self, Document, Instance, Line};
use crate::poly::{format_rational, Poly2, Rational};
use crate::report::{Check, Report};
use crate::tor::witness_chain;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateText {
    pub alpha: String,
    pub beta1: String,
    pub beta2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaImages {
    pub x: String,
    pub y: String,
    pub z1: String,
    pub z2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub sigma: String,
    pub phi: String,
    pub phi_regular: bool,
    pub smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_smooth_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub common_zero: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Report>,
    pub infinite_global_dimension: bool,
    pub jacobian: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nakayama: Option<NakayamaImages>,
    pub calabi_yau: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted_cy_dimension: Option<u32>,
    pub bv_applicable: bool,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn verdict(&self) -> &'static str {
        if self.smooth {
            "SMOOTH"
        } else {
            "NOT_SMOOTH"
        }
    }
}

fn nakayama_images(w: &GwaAlgebra) -> NakayamaImages {
    let img = |e: GwaElem| w.nakayama_apply(&e).to_string();
    NakayamaImages {
        x: img(GwaElem::x()),
        y: img(GwaElem::y()),
        z1: img(GwaElem::from_poly(Poly2::z1())),
        z2: img(GwaElem::from_poly(Poly2::z2())),
    }
}

pub fn analyze(w: &GwaAlgebra) -> AnalysisReport {
    analyze_with(w, None)
}

/// Full analysis; `lambda` overrides the rational common-zero search.
pub fn analyze_with(w: &GwaAlgebra, lambda: Option<&[Rational; 2]>) -> AnalysisReport {
    let j = w.jacobian();
    let mut r = AnalysisReport {
        sigma: w.sigma().to_string(),
        phi: w.phi().to_string(),
        phi_regular: !w.phi().is_zero(),
        smooth: false,
        certificate: None,
        not_smooth_reason: None,
        common_zero: None,
        witness: None,
        infinite_global_dimension: false,
        jacobian: format_rational(&j),
        nakayama: None,
        calabi_yau: false,
        twisted_cy_dimension: None,
        bv_applicable: false,
        notes: Vec::new(),
    };
    match smoothness_test(w) {
        Verdict::Smooth(cert) => {
            r.smooth = true;
            r.certificate = Some(CertificateText {
                alpha: cert.alpha.to_string(),
                beta1: cert.beta1.to_string(),
                beta2: cert.beta2.to_string(),
            });
            r.nakayama = Some(nakayama_images(w));
            r.calabi_yau = j.is_one();
            r.twisted_cy_dimension = Some(3);
            // ν scales each graded piece, so it is diagonalizable.
            r.bv_applicable = true;
            r.notes.push(if r.calabi_yau {
                "Jacobian 1: Calabi-Yau of dimension 3".into()
            } else {
                format!("twisted Calabi-Yau of dimension 3 with Nakayama automorphism scaling x by {}", r.jacobian)
            });
        }
        Verdict::NotSmooth { reason: NotSmoothReason::ZeroPhi, .. } => {
            r.not_smooth_reason = Some("phi = 0".into());
            r.infinite_global_dimension = true;
            r.notes.push("phi = 0: W has infinite global dimension".into());
        }
        Verdict::NotSmooth { reason: NotSmoothReason::ProperIdeal, common_zero } => {
            r.not_smooth_reason = Some("(phi, phi_1, phi_2) is a proper ideal".into());
            let lam = match lambda {
                Some(l) => {
                    let [p1, p2] = derivatives(w.phi());
                    if [w.phi(), &p1, &p2].iter().all(|g| g.eval(l).is_zero()) {
                        Some(l.clone())
                    } else {
                        r.notes.push("supplied lambda is not a common zero; searching instead".into());
                        common_zero
                    }
                }
                None => common_zero,
            };
            match lam {
                Some(l) => {
                    r.common_zero = Some([format_rational(&l[0]), format_rational(&l[1])]);
                    let chain = witness_chain(w, &l).expect("common zero and phi != 0");
                    r.infinite_global_dimension = chain.all_passed();
                    if r.infinite_global_dimension {
                        r.notes.push("Tor_4(M, N) != 0 at the common zero, so W has infinite global dimension".into());
                    }
                    r.witness = Some(chain);
                }
                None => r.notes.push(
                    "criterion says NOT_SMOOTH; witness unavailable over Q (no rational common zero found)".into(),
                ),
            }
        }
    }
    r
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sigma: {}", self.sigma)?;
        writeln!(f, "phi: {}", self.phi)?;
        writeln!(f, "verdict: {}", self.verdict())?;
        if let Some(c) = &self.certificate {
            writeln!(f, "certificate: alpha = {}, beta1 = {}, beta2 = {}", c.alpha, c.beta1, c.beta2)?;
        }
        if let Some(reason) = &self.not_smooth_reason {
            writeln!(f, "reason: {reason}")?;
        }
        if let Some([a, b]) = &self.common_zero {
            writeln!(f, "common zero: ({a}, {b})")?;
        }
        writeln!(f, "jacobian: {}", self.jacobian)?;
        if let Some(n) = &self.nakayama {
            writeln!(f, "nakayama: x -> {}, y -> {}, z1 -> {}, z2 -> {}", n.x, n.y, n.z1, n.z2)?;
        }
        writeln!(f, "calabi-yau: {}", self.calabi_yau)?;
        if let Some(d) = self.twisted_cy_dimension {
            writeln!(f, "twisted calabi-yau dimension: {d}")?;
        }
        writeln!(f, "bv applicable: {}", self.bv_applicable)?;
        writeln!(f, "infinite global dimension: {}", self.infinite_global_dimension)?;
        if let Some(w) = &self.witness {
            write!(f, "{w}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

const CATALOG: &[(&str, &str)] = &[
    ("npq", include_str!("../catalog/npq.gwa")),
    ("circle", include_str!("../catalog/circle.gwa")),
    ("diagonal", include_str!("../catalog/diagonal.gwa")),
    ("cusp", include_str!("../catalog/cusp.gwa")),
    ("node", include_str!("../catalog/node.gwa")),
    ("zero-phi", include_str!("../catalog/zero-phi.gwa")),
    ("quantum-sl2", include_str!("../catalog/quantum-sl2.gwa")),
    ("usl2", include_str!("../catalog/usl2.gwa")),
    ("down-up", include_str!("../catalog/down-up.gwa")),
    ("quantum-lens", include_str!("../catalog/quantum-lens.gwa")),
];

/// A source algebra given by generators and relations, with candidate GWA
/// data and the map sending its generators into W.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub parameters: Vec<String>,
    pub specializations: Vec<BTreeMap<String, Rational>>,
    doc: Document,
}

impl CatalogEntry {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let doc = Document::parse(text)?;
        let parameters = doc.section("parameters").unwrap_or(&[]).iter().map(|l| l.text.clone()).collect();
        let specializations = doc
            .section("specializations")
            .unwrap_or(&[])
            .iter()
            .map(|l| parse::parse_bindings_at(&l.text, l.pos))
            .collect::<Result<_>>()?;
        Ok(CatalogEntry {
            name: name.to_string(),
            description: doc.comments.first().cloned().unwrap_or_default(),
            parameters,
            specializations,
            doc,
        })
    }

    fn lines(&self, section: &str) -> &[Line] {
        self.doc.section(section).unwrap_or(&[])
    }

    pub fn is_template(&self) -> bool {
        self.lines("map").is_empty()
            || !["phi", "sigma"]
                .iter()
                .all(|k| self.lines("instance").iter().any(|l| l.text.split('=').next().map(str::trim) == Some(k)))
    }

    pub fn relation_count(&self) -> usize {
        self.lines("relations").len()
    }

    fn check_parameters(&self, params: &BTreeMap<String, Rational>) -> Result<()> {
        match self.parameters.iter().find(|p| !params.contains_key(*p)) {
            Some(p) => Err(Error::UnboundParameter(p.clone())),
            None => Ok(()),
        }
    }

    pub fn instance(&self, params: &BTreeMap<String, Rational>) -> Result<Instance> {
        if self.is_template() {
            return Err(Error::IncompleteTemplate(self.name.clone()));
        }
        self.check_parameters(params)?;
        parse::instance_section(self.lines("instance"), params)?
            .ok_or_else(|| Error::IncompleteTemplate(self.name.clone()))
    }

    /// The specializations to run when none are requested.
    pub fn default_specializations(&self) -> Vec<BTreeMap<String, Rational>> {
        if self.specializations.is_empty() {
            vec![BTreeMap::new()]
        } else {
            self.specializations.clone()
        }
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG.iter().map(|(n, t)| CatalogEntry::parse(n, t).expect("bundled catalog entries parse")).collect()
}

pub fn find_entry(name: &str) -> Result<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Pushes every relation through the identification map and reduces it in W.
pub fn validate_presentation(e: &CatalogEntry, params: &BTreeMap<String, Rational>) -> Result<Report> {
    let inst = e.instance(params)?;
    let w = &inst.algebra;
    let map = parse::map_at(w, e.lines("map"), &inst.parameters)?;
    let mut checks = Vec::new();
    for (i, line) in e.lines("relations").iter().enumerate() {
        let residual = parse::relation_at(w, line, &map, &inst.parameters)?;
        if !residual.is_zero() {
            return Err(Error::RelationFails(i + 1));
        }
        checks.push(Check::pass("relation ↦ 0 in normal form", format!("relation {}: {}", i + 1, line.text)));
    }
    Ok(Report::new(format!("presentation of {}", e.name), checks))
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRun {
    pub entry: String,
    pub parameters: BTreeMap<String, String>,
    pub validation: Report,
    pub analysis: AnalysisReport,
}

impl fmt::Display for CatalogRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        writeln!(f, "== {} [{}]", self.entry, params.join(", "))?;
        write!(f, "{}", self.validation)?;
        write!(f, "{}", self.analysis)
    }
}

/// Validates and analyzes an entry at each specialization (the entry's own
/// list when `specializations` is empty). Results keep the input order.
pub fn run_catalog(name: &str, specializations: &[BTreeMap<String, Rational>]) -> Result<Vec<CatalogRun>> {
    let e = find_entry(name)?;
    if e.is_template() {
        return Err(Error::IncompleteTemplate(e.name));
    }
    let specs = if specializations.is_empty() { e.default_specializations() } else { specializations.to_vec() };
    specs
        .par_iter()
        .map(|s| {
            let validation = validate_presentation(&e, s)?;
            let inst = e.instance(s)?;
            Ok(CatalogRun {
                entry: e.name.clone(),
                parameters: s.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
                validation,
                analysis: analyze_with(&inst.algebra, inst.lambda.as_ref()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{AutGenerator, AutWord};
    use crate::poly::{rat, ratio};

    fn params(p: Rational, q: Rational) -> BTreeMap<String, Rational> {
        BTreeMap::from([("p".to_string(), p), ("q".to_string(), q)])
    }

    #[test]
    fn analyze_examples() {
        let circle = &(&Poly2::z1().pow(2) + &Poly2::z2().pow(2)) - &Poly2::one();
        let r = analyze(&GwaAlgebra::new(AutWord::identity(), circle));
        assert!(r.smooth && r.calabi_yau && r.bv_applicable);
        assert_eq!(r.nakayama.unwrap().x, "x");

        let diag = AutWord::new(vec![AutGenerator::affine_int([[2, 0], [0, 3]], [0, 0])]);
        let r = analyze(&GwaAlgebra::new(diag.clone(), &Poly2::z1() + &Poly2::constant(rat(5))));
        assert!(r.smooth && !r.calabi_yau);
        assert_eq!(r.jacobian, "6");
        assert_eq!(r.twisted_cy_dimension, Some(3));
        let n = r.nakayama.unwrap();
        assert_eq!((n.x.as_str(), n.y.as_str()), ("(6)*x", "(1/6)*y"));

        let r = analyze(&GwaAlgebra::new(diag, Poly2::zero()));
        assert!(!r.smooth && r.infinite_global_dimension && r.witness.is_none());
    }

    #[test]
    fn npq_reproduction() {
        let runs = run_catalog("npq", &[]).unwrap();
        let verdicts: Vec<bool> = runs.iter().map(|r| r.analysis.smooth).collect();
        assert_eq!(verdicts, [true, true, false]);
        assert!(runs.iter().all(|r| r.validation.all_passed() && r.validation.checks.len() == 7));
        let runs = run_catalog("npq", &[params(rat(2), rat(3)), params(rat(-1), ratio(1, 2)), params(rat(3), rat(-2))])
            .unwrap();
        assert!(runs.iter().all(|r| r.analysis.smooth));
    }

    #[test]
    fn corrupted_phi_fails_validation() {
        let text = include_str!("../catalog/npq.gwa").replace("p/(1 - q) + ", "2*p/(1 - q) + ");
        let e = CatalogEntry::parse("npq", &text).unwrap();
        assert_eq!(validate_presentation(&e, &params(rat(1), rat(2))), Err(Error::RelationFails(6)));
    }

    #[test]
    fn synthetic_entries() {
        for name in ["circle", "diagonal", "cusp", "node", "zero-phi"] {
            let runs = run_catalog(name, &[]).unwrap();
            assert!(runs[0].validation.all_passed(), "{name}");
        }
        let cusp = &run_catalog("cusp", &[]).unwrap()[0].analysis;
        assert!(!cusp.smooth && cusp.infinite_global_dimension && cusp.witness.as_ref().unwrap().all_passed());
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(run_catalog("nope", &[]), Err(Error::UnknownEntry(_))));
        for t in ["quantum-sl2", "usl2", "down-up", "quantum-lens"] {
            assert_eq!(run_catalog(t, &[]).unwrap_err(), Error::IncompleteTemplate(t.into()));
        }
        let partial = BTreeMap::from([("p".to_string(), rat(1))]);
        assert_eq!(run_catalog("npq", &[partial]).unwrap_err(), Error::UnboundParameter("q".into()));
    }
}
