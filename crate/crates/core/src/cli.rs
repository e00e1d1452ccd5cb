//! JSON front end shared by the `skcl` binary and the C ABI.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::homogenize::{
    an_eliminated, asreg_matrices, centrality_from_quadratic, hilbert_prefix, homogenize_multi, homogenize_single,
    koszul_dual_presentation, lambda_presentation, partition, single_centrality_candidates,
};
use crate::presentation::{linear_consequences, Presentation};
use crate::rewrite::{Element, SkewClifford};
use crate::scalar::{Matrix, Scalar};
use crate::structure::{pbw_check, q_element, reduce_presentation, tfae, z2_dimensions};
use crate::{fixtures, structure};

/// On-disk presentation: `mu` and `b` are arrays of rows of rationals
/// written as `"p/q"` strings (integers are accepted too).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub mu: Matrix,
    pub b: Matrix,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation, name: Option<String>) -> Self {
        PresentationFile { name, n: p.n(), mu: p.mu().matrix().clone(), b: p.b().matrix().clone() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("presentation JSON: {e}")))
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        if self.mu.rows() != self.n {
            return Err(Error::Input(format!("n = {} but mu has {} rows", self.n, self.mu.rows())));
        }
        Ok(Presentation::new(self.mu.clone(), self.b.clone())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HilbertTarget {
    Lambda,
    KoszulDual,
    #[serde(rename = "A")]
    A,
    #[serde(rename = "An-eliminated")]
    AnEliminated,
}

impl std::str::FromStr for HilbertTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(HilbertTarget::Lambda),
            "koszul-dual" => Ok(HilbertTarget::KoszulDual),
            "A" => Ok(HilbertTarget::A),
            "An-eliminated" => Ok(HilbertTarget::AnEliminated),
            _ => Err(Error::Input(format!("unknown hilbert target {s:?}; use lambda, koszul-dual, A or An-eliminated"))),
        }
    }
}

/// A subcommand that operates on one presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Dim,
    Basis,
    Nf { element: Element },
    Mul { a: Element, b: Element },
    Tfae,
    Reduce,
    Pbw { degree: usize },
    Qcentral,
    Z2,
    HomogenizeSingle,
    HomogenizeMulti { matrices: Option<Vec<Matrix>> },
    Partition,
    Asreg,
    Hilbert { target: HilbertTarget, degree: usize },
    CentralCheck { degree: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Dim => "dim",
            Command::Basis => "basis",
            Command::Nf { .. } => "nf",
            Command::Mul { .. } => "mul",
            Command::Tfae => "tfae",
            Command::Reduce => "reduce",
            Command::Pbw { .. } => "pbw",
            Command::Qcentral => "qcentral",
            Command::Z2 => "z2",
            Command::HomogenizeSingle => "homogenize --single",
            Command::HomogenizeMulti { .. } => "homogenize --multi",
            Command::Partition => "partition",
            Command::Asreg => "asreg",
            Command::Hilbert { .. } => "hilbert",
            Command::CentralCheck { .. } => "central-check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Error payload printed instead of a report.
pub fn error_json(command: &str, e: &Error) -> String {
    let mut err = json!({ "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
    if let Error::Validation(v) = e {
        err["violations"] = serde_json::to_value(&v.violations).expect("serializable");
    }
    serde_json::to_string_pretty(&json!({ "command": command, "error": err })).expect("serializable")
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

fn check_elements(p: &Presentation, es: &[&Element]) -> Result<()> {
    for e in es {
        if let Some(g) = e.terms().flat_map(|(w, _)| w.letters().to_vec()).find(|&g| g >= p.n()) {
            return Err(Error::Input(format!("generator x{} out of range 1..={}", g + 1, p.n())));
        }
    }
    Ok(())
}

/// Runs `command` on the presentation given as JSON text.
pub fn execute(command: &Command, presentation_json: &str) -> Result<RunReport> {
    let file = PresentationFile::parse(presentation_json)?;
    let p = file.to_presentation()?;
    let (result, trace) = run(command, &p)?;
    Ok(RunReport {
        command: command.name().to_string(),
        input_digest: digest(presentation_json.as_bytes()),
        result,
        trace,
    })
}

fn completion_trace(alg: &SkewClifford) -> Option<Value> {
    Some(to_value(&alg.system().trace()))
}

fn run(command: &Command, p: &Presentation) -> Result<(Value, Option<Value>)> {
    Ok(match command {
        Command::Validate => {
            let star = p.star_condition();
            (json!({ "valid": true, "n": p.n(), "star": star, "linear_consequences": linear_consequences(p) }), None)
        }
        Command::Dim => {
            let alg = SkewClifford::new(p)?;
            let status = alg.system().status();
            let linear: Vec<_> = alg.system().linear_rules();
            (json!({ "dimension": alg.dimension(), "status": status, "linear_rules": linear }), completion_trace(&alg))
        }
        Command::Basis => {
            let alg = SkewClifford::new(p)?;
            let basis = alg.basis()?;
            (json!({ "dimension": basis.len(), "basis": basis }), completion_trace(&alg))
        }
        Command::Nf { element } => {
            check_elements(p, &[element])?;
            let alg = SkewClifford::new(p)?;
            let nf = alg.normal_form(element)?;
            (json!({ "normal_form": nf, "display": nf.to_string() }), completion_trace(&alg))
        }
        Command::Mul { a, b } => {
            check_elements(p, &[a, b])?;
            let alg = SkewClifford::new(p)?;
            let prod = alg.multiply(a, b)?;
            (json!({ "product": prod, "display": prod.to_string() }), completion_trace(&alg))
        }
        Command::Tfae => (to_value(&tfae(p)?), None),
        Command::Reduce => {
            let r = reduce_presentation(p)?;
            let trace = to_value(&r.trace);
            let mut v = to_value(&r);
            v.as_object_mut().expect("object").remove("trace");
            (v, Some(trace))
        }
        Command::Pbw { degree } => (to_value(&pbw_check(p, *degree)?), None),
        Command::Qcentral => {
            let star = p.star_condition();
            (json!({ "q_central": structure::q_central(p), "q": q_element(p), "star": star }), None)
        }
        Command::Z2 => {
            let (even, odd) = z2_dimensions(p)?;
            (json!({ "even": even, "odd": odd }), None)
        }
        Command::HomogenizeSingle => {
            let g = homogenize_single(p)?;
            (json!({ "presentation": g, "display": g.display_relations() }), None)
        }
        Command::HomogenizeMulti { matrices } => {
            let (ms, source) = match matrices {
                Some(ms) => (ms.clone(), "given"),
                None => (partition(p)?.matrices, "partition"),
            };
            let g = homogenize_multi(p, &ms)?;
            (json!({ "matrices": ms, "matrices_source": source, "presentation": g, "display": g.display_relations() }), None)
        }
        Command::Partition => {
            let r = partition(p)?;
            (json!({ "matrices": r.matrices }), Some(to_value(&r.trace)))
        }
        Command::Asreg => {
            let r = asreg_matrices(p)?;
            (json!({ "case": r.case, "matrices": r.matrices }), Some(json!({ "normalization": r.normalization })))
        }
        Command::Hilbert { target, degree } => {
            let g = match target {
                HilbertTarget::Lambda => lambda_presentation(p)?,
                HilbertTarget::KoszulDual => koszul_dual_presentation(p)?,
                HilbertTarget::A => homogenize_single(p)?,
                HilbertTarget::AnEliminated => an_eliminated(p)?.1.presentation,
            };
            let h = hilbert_prefix(&g, *degree)?;
            (json!({ "target": target, "coefficients": h.coefficients }), None)
        }
        Command::CentralCheck { degree } => {
            let g = homogenize_single(p)?;
            let cands = single_centrality_candidates(p);
            let a = centrality_from_quadratic(&g, &cands, *degree)?;
            let an = match an_eliminated(p) {
                Ok((_, elim)) => {
                    let r = centrality_from_quadratic(&elim.presentation, &elim.y_expressions, *degree)?;
                    json!({ "report": r, "y_expressions": elim.y_expressions })
                }
                Err(Error::Precondition(m)) => json!({ "skipped": m }),
                Err(e) => return Err(e),
            };
            let holds = a.holds && an.get("report").is_none_or(|r| r["holds"] == json!(true));
            (json!({ "holds": holds, "A": { "candidates": cands, "report": a }, "An_eliminated": an }), None)
        }
    })
}

/// Parses `k=v` pairs for fixture parameters.
pub fn parse_params(raw: &[String]) -> Result<BTreeMap<String, Scalar>> {
    let mut out = BTreeMap::new();
    for kv in raw {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("parameter {kv:?} is not of the form key=value")))?;
        let v: Scalar = v.trim().parse().map_err(|e| Error::Input(format!("parameter {k}: {e}")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// Emits a named fixture presentation.
pub fn examples(which: &str, params: &BTreeMap<String, Scalar>) -> Result<RunReport> {
    let p = fixtures::by_id(which, params)?;
    let file = PresentationFile::from_presentation(&p, Some(which.to_string()));
    let key = serde_json::to_string(&json!({ "which": which, "params": params })).expect("serializable");
    Ok(RunReport {
        command: "examples".into(),
        input_digest: digest(key.as_bytes()),
        result: to_value(&file),
        trace: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(id: &str) -> String {
        let p = fixtures::by_id(id, &BTreeMap::new()).unwrap();
        serde_json::to_string(&PresentationFile::from_presentation(&p, None)).unwrap()
    }

    #[test]
    fn dim_reports() {
        assert_eq!(execute(&Command::Dim, &file("zerodim")).unwrap().result["dimension"], json!(0));
        assert_eq!(execute(&Command::Dim, &file("fdex1")).unwrap().result["dimension"], json!(8));
    }

    #[test]
    fn tfae_report_between_ex2() {
        let r = execute(&Command::Tfae, &file("betweenex2")).unwrap().result;
        for k in ["g_injective", "full_dimension", "coefficients_vanish", "q_central"] {
            assert_eq!(r[k], json!(false), "{k}");
        }
        assert_eq!(r["dimension"], json!(2));
    }

    #[test]
    fn validation_error_is_structured() {
        let bad = r#"{"n": 2, "mu": [["1","2"],["2","1"]], "b": [["0","0"],["0","0"]]}"#;
        let e = execute(&Command::Validate, bad).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let v: Value = serde_json::from_str(&error_json("validate", &e)).unwrap();
        assert_eq!(v["error"]["kind"], json!("validation"));
        assert!(!v["error"]["violations"].as_array().unwrap().is_empty());
    }

    #[test]
    fn floats_rejected() {
        let bad = r#"{"n": 1, "mu": [[1]], "b": [[0.5]]}"#;
        assert!(matches!(execute(&Command::Dim, bad), Err(Error::Input(_))));
    }

    #[test]
    fn deterministic_output() {
        let f = file("inbetweenex1");
        let a = execute(&Command::Reduce, &f).unwrap().to_json();
        let b = execute(&Command::Reduce, &f).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn examples_round_trip() {
        let params = parse_params(&["a=3".into(), "b=0".into()]).unwrap();
        let r = examples("fdex1", &params).unwrap();
        let f: PresentationFile = serde_json::from_value(r.result).unwrap();
        assert_eq!(f.mu.get(0, 1), &Scalar::from_int(3));
        assert!(examples("nope", &BTreeMap::new()).is_err());
        assert!(parse_params(&["a".into()]).is_err());
    }

    #[test]
    fn hilbert_target_names() {
        for (s, t) in [
            ("lambda", HilbertTarget::Lambda),
            ("koszul-dual", HilbertTarget::KoszulDual),
            ("A", HilbertTarget::A),
            ("An-eliminated", HilbertTarget::AnEliminated),
        ] {
            assert_eq!(s.parse::<HilbertTarget>().unwrap(), t);
            assert_eq!(to_value(&t), json!(s));
        }
    }
}
