//! Request dispatch for the `schur` binary.
//!
//! A request is a subcommand name plus a JSON payload. [`run`] returns one JSON
//! document for standard output, diagnostics for standard error and the
//! process exit code:
//!
//! | code | meaning                                        |
//! |------|------------------------------------------------|
//! | 0    | success                                        |
//! | 1    | malformed payload                              |
//! | 2    | domain error (precondition, size cap)          |
//! | 3    | internal invariant breach                      |
//! | 4    | `--suite` finished with at least one failure   |

pub mod payload;
pub mod suite;

use std::collections::BTreeSet;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use schur_core::format::format_rational;
use schur_core::oracle::schur_oracle_capped;
use schur_core::slope::factorial;
use schur_core::{
    admissible_permutations, det_twist_check, enumerate_tableaux, hook_content_rank, induced_parameters,
    kdiff_holds, product_decompose, rank, retriangulate_slopes, schur_matrix, schur_matrix_row_convention,
    slopes, swtsl_check, sym_tensor_std_decompose, torus_kernel, weight_image, content, Error, FamilySpec,
    Partition, Permutation, Rational, RationalPoint,
};

use payload::*;

pub const MAX_SIZE: usize = 8;
pub const MAX_DIMENSION: usize = 6;
pub const ORACLE_MAX_SIZE: usize = 4;
pub const ORACLE_MAX_DIMENSION: usize = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_SUITE_FAILED: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Rank,
    Tableaux,
    SchurMatrix,
    OracleCheck,
    DetTwist,
    Lr,
    SymTensor,
    Params,
    WeightMap,
    Swtsl,
    TorusKernel,
    Slopes,
    Retriangulate,
    Appearances,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobRequest {
    pub command: Command,
    pub payload: Value,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub diagnostics: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(document: Value) -> Self {
        Outcome { document, diagnostics: Vec::new(), code: EXIT_OK }
    }

    /// Document as written to standard output.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document).expect("values always serialize");
        s.push('\n');
        s
    }
}

/// Failure of a single request.
#[derive(Debug)]
pub enum Failure {
    Malformed(String),
    Domain(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantBreach(_) => Failure::Invariant(e.to_string()),
            Error::Parse(_) => Failure::Malformed(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Domain(_) => EXIT_DOMAIN,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn into_outcome(self) -> Outcome {
        let (kind, msg) = match &self {
            Failure::Malformed(m) => ("malformed", m),
            Failure::Domain(m) => ("domain", m),
            Failure::Invariant(m) => ("invariant", m),
        };
        Outcome {
            document: json!({ "error": { "kind": kind, "message": msg } }),
            diagnostics: vec![format!("error: {msg}")],
            code: self.code(),
        }
    }
}

/// Exit code for a library error.
pub fn exit_code_for(e: &Error) -> i32 {
    Failure::from(e.clone()).code()
}

type Step = Result<Outcome, Failure>;

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Failure::Malformed(format!("payload: {inner}"))
        } else {
            Failure::Malformed(format!("field `{path}`: {inner}"))
        }
    })
}

fn check_caps(p: &Partition, n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Domain("n must be at least 1".into()));
    }
    if p.size() > MAX_SIZE || n > MAX_DIMENSION {
        return Err(Failure::Domain(format!(
            "size cap: q <= {MAX_SIZE} and n <= {MAX_DIMENSION} (got q = {}, n = {n})",
            p.size()
        )));
    }
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output records always serialize")
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn point(doc: &PointDoc) -> Result<RationalPoint, Failure> {
    Ok(RationalPoint::new(
        unwrap_qs(&doc.phi_val),
        doc.ht_weights.clone(),
        doc.norm_const.as_deref().map(unwrap_qs),
    )?)
}

pub fn run(req: &JobRequest) -> Outcome {
    let step = match req.command {
        Command::Rank => cmd_rank(&req.payload),
        Command::Tableaux => cmd_tableaux(&req.payload),
        Command::SchurMatrix => cmd_schur_matrix(&req.payload),
        Command::OracleCheck => cmd_oracle(&req.payload),
        Command::DetTwist => cmd_det_twist(&req.payload),
        Command::Lr => cmd_lr(&req.payload),
        Command::SymTensor => cmd_sym_tensor(&req.payload),
        Command::Params => cmd_params(&req.payload),
        Command::WeightMap => cmd_weight_map(&req.payload),
        Command::Swtsl => cmd_swtsl(&req.payload),
        Command::TorusKernel => cmd_torus_kernel(&req.payload),
        Command::Slopes => cmd_slopes(&req.payload),
        Command::Retriangulate => cmd_retriangulate(&req.payload),
        Command::Appearances => cmd_appearances(&req.payload),
    };
    step.unwrap_or_else(Failure::into_outcome)
}

fn cmd_rank(v: &Value) -> Step {
    let ShapeN { partition, n } = parse(v)?;
    check_caps(&partition, n)?;
    let r = rank(&partition, n);
    if hook_content_rank(&partition, n) != r.into() {
        return Err(Failure::Invariant(format!("enumeration and hook-content disagree for {partition}")));
    }
    Ok(Outcome::ok(json!({ "rank": r })))
}

fn cmd_tableaux(v: &Value) -> Step {
    let ShapeN { partition, n } = parse(v)?;
    check_caps(&partition, n)?;
    let tabs = enumerate_tableaux(&partition, n);
    let contents: Vec<Vec<usize>> = tabs.iter().map(|t| content(t, n).0).collect();
    Ok(Outcome::ok(json!({
        "rank": tabs.len(),
        "tableaux": to_value(&tabs),
        "contents": contents,
    })))
}

fn cmd_schur_matrix(v: &Value) -> Step {
    let p: SchurMatrixPayload = parse(v)?;
    let a = p.matrix.resolve(p.n).map_err(Failure::Malformed)?;
    check_caps(&p.partition, a.rows())?;
    if rank(&p.partition, a.rows()) == 0 {
        return Err(Failure::Domain(format!("{} has rank 0 for n = {}", p.partition, a.rows())));
    }
    let s = match p.convention {
        Convention::Column => schur_matrix(&p.partition, &a)?,
        Convention::Row => schur_matrix_row_convention(&p.partition, &a)?,
    };
    Ok(Outcome::ok(json!({ "rank": s.rows(), "matrix": to_value(&matrix_doc(&s)) })))
}

fn cmd_oracle(v: &Value) -> Step {
    let p: OraclePayload = parse(v)?;
    let a = p.matrix.resolve(p.n).map_err(Failure::Malformed)?;
    let n = a.rows();
    if p.partition.size() > ORACLE_MAX_SIZE || n > ORACLE_MAX_DIMENSION || n == 0 {
        return Err(Failure::Domain(format!(
            "oracle size cap: q <= {ORACLE_MAX_SIZE} and 1 <= n <= {ORACLE_MAX_DIMENSION} (got q = {}, n = {n})",
            p.partition.size()
        )));
    }
    let s = schur_matrix(&p.partition, &a)?;
    let o = schur_oracle_capped(&p.partition, &a, ORACLE_MAX_SIZE, ORACLE_MAX_DIMENSION)?;
    let agrees = o.agrees_with(&s)?;
    let mut out = Outcome::ok(json!({ "rank": s.rows(), "agrees": agrees }));
    if !agrees {
        out.code = EXIT_INVARIANT;
        out.diagnostics.push("straightening and the symmetrizer model disagree".into());
    }
    Ok(out)
}

fn cmd_det_twist(v: &Value) -> Step {
    let p: DetTwistPayload = parse(v)?;
    let a = p.matrix.resolve(p.n).map_err(Failure::Malformed)?;
    let n = a.rows();
    check_caps(&p.partition, n)?;
    let twisted = p.partition.det_twist(n, p.k)?;
    check_caps(&twisted, n)?;
    let holds = det_twist_check(&p.partition, p.k, &a)?;
    let mut out = Outcome::ok(json!({ "twisted": to_value(&twisted), "holds": holds }));
    if !holds {
        out.code = EXIT_INVARIANT;
        out.diagnostics.push("determinant twist identity failed".into());
    }
    Ok(out)
}

fn decomposition_doc(d: &schur_core::SchurDecomposition, expected: u64) -> Value {
    let mut doc = to_value(d);
    doc["dimension"] = json!(d.dimension());
    doc["expected_dimension"] = json!(expected);
    doc
}

fn cmd_lr(v: &Value) -> Step {
    let LrPayload { left, right, n } = parse(v)?;
    check_caps(&left, n)?;
    check_caps(&right, n)?;
    let d = product_decompose(&left, &right, n)?;
    let expected = rank(&left, n) as u64 * rank(&right, n) as u64;
    Ok(Outcome::ok(decomposition_doc(&d, expected)))
}

fn cmd_sym_tensor(v: &Value) -> Step {
    let SymTensorPayload { q, n } = parse(v)?;
    if q > MAX_SIZE || n > MAX_DIMENSION {
        return Err(Failure::Domain(format!("size cap: q <= {MAX_SIZE} and n <= {MAX_DIMENSION}")));
    }
    let d = sym_tensor_std_decompose(q, n)?;
    let expected = rank(&Partition::single_row(q - 1)?, n) as u64 * n as u64;
    Ok(Outcome::ok(decomposition_doc(&d, expected)))
}

fn cmd_params(v: &Value) -> Step {
    let ShapeN { partition, n } = parse(v)?;
    check_caps(&partition, n)?;
    let params = induced_parameters(&partition, n)?;
    Ok(Outcome::ok(json!({ "parameters": to_value(&params) })))
}

fn weight_input(v: &Value) -> Result<WeightPayload, Failure> {
    let p: WeightPayload = parse(v)?;
    let n = p.weights.len_common()?;
    check_caps(&p.partition, n)?;
    Ok(p)
}

fn cmd_weight_map(v: &Value) -> Step {
    let p = weight_input(v)?;
    Ok(Outcome::ok(to_value(&weight_image(&p.partition, &p.weights)?)))
}

fn cmd_swtsl(v: &Value) -> Step {
    let p = weight_input(v)?;
    let report = swtsl_check(&p.partition, &p.weights)?;
    let mut doc = to_value(&report);
    doc["bound_i"] = json!(report.bound_i());
    doc["gap_ii"] = json!(report.gap_ii());
    doc["gap_iii"] = json!(report.gap_iii());
    Ok(Outcome::ok(doc))
}

fn cmd_torus_kernel(v: &Value) -> Step {
    let ShapeN { partition, n } = parse(v)?;
    check_caps(&partition, n)?;
    let k = torus_kernel(&partition, n)?;
    let mut out = Outcome::ok(to_value(&k));
    if k.ast_violated {
        out.diagnostics.push(format!(
            "warning: {partition} fails the genericity hypothesis for n = {n}; the kernel need not be the diagonal mu_q"
        ));
    }
    Ok(out)
}

fn cmd_slopes(v: &Value) -> Step {
    let SlopesPayload { point: doc } = parse(v)?;
    let pt = point(&doc)?;
    Ok(Outcome::ok(json!({ "slopes": strings(&slopes(&pt)) })))
}

fn cmd_retriangulate(v: &Value) -> Step {
    let RetriangulatePayload { point: doc, sigma } = parse(v)?;
    let pt = point(&doc)?;
    let sigma = Permutation::from_one_based(&sigma)?;
    let r = retriangulate_slopes(&pt, &sigma)?;
    let permuted = slopes(&pt.permute_phi(&sigma)?);
    if r != permuted {
        return Err(Failure::Invariant("retriangulated slopes differ from the permuted point".into()));
    }
    Ok(Outcome::ok(json!({
        "slopes": strings(&slopes(&pt)),
        "retriangulated": strings(&r),
    })))
}

fn cmd_appearances(v: &Value) -> Step {
    let p: AppearancesPayload = parse(v)?;
    if p.const_indices.iter().any(|&i| i == 0 || i > p.n) {
        return Err(Failure::Domain(format!("const_indices must lie in 1..{}", p.n)));
    }
    let set: BTreeSet<usize> = p.const_indices.iter().map(|&i| i - 1).collect();
    let points = p.points.iter().map(point).collect::<Result<Vec<_>, _>>()?;
    let fam = FamilySpec::new(p.n, set.clone(), points)?;
    let kdiff = kdiff_holds(&fam.points()[0], &fam.points()[1], &set)?;
    if !kdiff {
        return Err(Failure::Domain(
            "the first two points fail the weight-difference condition; the count is not certified".into(),
        ));
    }
    let perms = admissible_permutations(&fam)?;
    let r = set.len();
    let complement_fixed = perms
        .iter()
        .all(|s| (0..p.n).filter(|i| !set.contains(i)).all(|i| s.fixes(i)));
    let bound = factorial(r);
    let doc = json!({
        "r": r,
        "bound": bound,
        "count": perms.len(),
        "permutations": to_value(&perms),
        "within_bound": (perms.len() as u64) <= bound,
        "complement_fixed": complement_fixed,
    });
    let mut out = Outcome::ok(doc);
    if perms.len() as u64 > bound || !complement_fixed {
        out.code = EXIT_INVARIANT;
        out.diagnostics.push("admissible permutations exceed the r! bound".into());
    }
    Ok(out)
}
