use std::path::Path;

use relpres_core::curvature::{interior_curvature_audit, isoperimetric_check_k3, CurvatureFinding, IsoperimetricVerdict};
use relpres_core::diagram::{DiagramReport, ReducednessReport};
use relpres_core::fuzz::{fuzz_britton, fuzz_gauss_bonnet, fuzz_rewrite};
use relpres_core::io::{self, IoError, PresentationFile};
use relpres_core::motion::{
    car_crash_audit, combined_audit, detect_collisions, lemma5_audit, standard_motion, validate_motion, CarCrashVerdict,
    CombinedError, Lemma5Finding, MotionFinding, Section8Report,
};
use relpres_core::rewrite::{lemma1_rewrite, verify_lemma1_conditions, ConditionReport, PresentationError, RewriteError};
use relpres_core::RewriteOutcome;
use serde_json::{json, Value};

use crate::FuzzKind;

pub const PASS: u8 = 0;
pub const PARSE: u8 = 1;
pub const FINDINGS: u8 = 2;
pub const PRECONDITION: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn k_required(k: u32) -> Failure {
    Failure::new(PRECONDITION, format!("k ≥ 2 required (got k = {k})"))
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Presentation(PresentationError::PowerTooSmall(k)) => k_required(k),
            other => Failure::new(PARSE, other.to_string()),
        }
    }
}

fn emit(report: &Value, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => io::write_json(path, report).map_err(|e| Failure::new(PARSE, e.to_string())),
        None => {
            print_json(report);
            Ok(())
        }
    }
}

fn print_json(value: &Value) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(value).expect("json"));
}

const INVOLUTION_GAP: &str =
    "InvolutionHypothesisGap: k = 2 and G has an involution; the hyperbolicity argument assumes G is involution-free";

pub fn rewrite(group: &Path, word: &Path, power: u32, out: Option<&Path>) -> Result<u8, Failure> {
    let g = io::load_group(group)?;
    let w = io::load_word(word)?;
    if power < 2 {
        return Err(k_required(power));
    }
    let outcome = lemma1_rewrite(&g, &w, power).map_err(|e| match e {
        RewriteError::PowerTooSmall(k) => k_required(k),
        RewriteError::NotUnimodular(_) => Failure::new(PRECONDITION, e.to_string()),
        RewriteError::NonMinimal { .. } => Failure::new(FINDINGS, e.to_string()),
    })?;
    let (presentation, trace) = match outcome {
        RewriteOutcome::FreeProduct { coeff } => {
            let message = format!("FreeProductCase: w is conjugate to g t with g = {coeff}; the group is G ∗ ℤk with k = {power}");
            print_json(&json!({ "outcome": "FreeProductCase", "message": message }));
            return Err(Failure::new(PRECONDITION, message));
        }
        RewriteOutcome::Presentation { presentation, trace } => (presentation, trace),
    };
    let conditions: ConditionReport = verify_lemma1_conditions(&presentation);
    let mut warnings = Vec::new();
    if power == 2 && g.has_involution() {
        warnings.push(INVOLUTION_GAP.to_string());
        eprintln!("warning: {INVOLUTION_GAP}");
    }
    let file = PresentationFile::from_presentation(&presentation);
    let mut report = json!({
        "outcome": "Presentation",
        "s": presentation.s,
        "m": presentation.m(),
        "k": presentation.k,
        "relator": presentation.to_string(),
        "conditions": conditions,
        "moves": trace.moves.len(),
        "warnings": warnings,
    });
    match out {
        Some(path) => {
            io::write_json(path, &file).map_err(|e| Failure::new(PARSE, e.to_string()))?;
            report["out"] = json!(path.display().to_string());
        }
        None => report["presentation"] = json!(file),
    }
    emit(&report, None)?;
    Ok(if conditions.all_pass() { PASS } else { FINDINGS })
}

#[derive(Debug, serde::Serialize)]
#[serde(rename_all = "camelCase")]
struct MotionSection {
    findings: Vec<MotionFinding>,
    lemma5: Vec<Lemma5Finding>,
    car_crash: CarCrashVerdict,
}

pub fn audit(diagram: &Path, presentation: &Path, out: Option<&Path>) -> Result<u8, Failure> {
    let p = io::load_presentation(presentation)?;
    let d = io::load_diagram(diagram, Some(p))?;
    let k = d.k();
    let validation: DiagramReport = d.validate_diagram();
    let reducedness: ReducednessReport = d.reducedness_check();
    let mut passed = validation.passed() && reducedness.phi_reduced;
    let mut errors: Vec<String> = Vec::new();

    let curvature: Option<Vec<CurvatureFinding>> = match interior_curvature_audit(&d) {
        Ok(f) => Some(f),
        Err(e) => {
            errors.push(format!("curvature: {e}"));
            None
        }
    };
    passed &= curvature.as_ref().is_some_and(|f| f.is_empty());

    let motion = standard_motion(&d).ok().map(|mm| {
        let rep = detect_collisions(&d, &mm);
        MotionSection { findings: validate_motion(&d, &mm), lemma5: lemma5_audit(&d, &mm, &rep), car_crash: car_crash_audit(&rep) }
    });
    if let Some(m) = &motion {
        passed &= m.findings.is_empty() && m.lemma5.is_empty() && m.car_crash.holds;
    }

    let mut isoperimetric: Option<IsoperimetricVerdict> = None;
    let mut section8: Option<Section8Report> = None;
    if k >= 3 {
        match isoperimetric_check_k3(&d) {
            Ok(v) => {
                passed &= v.holds;
                isoperimetric = Some(v);
            }
            Err(e) => {
                errors.push(format!("isoperimetric: {e}"));
                passed = false;
            }
        }
    } else {
        match combined_audit(&d) {
            Ok(r) => {
                passed &= r.passed();
                section8 = Some(r);
            }
            Err(CombinedError::SmallK(k)) => return Err(k_required(k)),
            Err(e) => {
                errors.push(format!("combined: {e}"));
                passed = false;
            }
        }
    }

    let report = json!({
        "k": k,
        "m": d.presentation.m(),
        "passed": passed,
        "diagram": validation,
        "reducedness": reducedness,
        "curvature": curvature,
        "motion": motion,
        "isoperimetric": isoperimetric,
        "section8": section8,
        "errors": errors,
    });
    emit(&report, out)?;
    Ok(if passed { PASS } else { FINDINGS })
}

pub fn fuzz(kind: FuzzKind, count: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    let stats = match kind {
        FuzzKind::GaussBonnet => fuzz_gauss_bonnet(count, seed),
        FuzzKind::Britton => fuzz_britton(count, seed),
        FuzzKind::Rewrite => fuzz_rewrite(count, seed),
    };
    emit(&json!(stats), out)?;
    Ok(if stats.passed() { PASS } else { FINDINGS })
}
