//! Command-line surface: structural validation, operator checks and
//! search, candidate construction, certification, cobrackets, classical
//! doubles, and constant checks. Reports are deterministic text or JSON;
//! exit codes are 0 (pass), 1 (failed checks), 2 (bad input).

use clap::{Args, Parser, Subcommand};
use cybe::algebra::{tensor_as_map, Cobracket, LieAlgebra, Representation};
use cybe::constant_ops;
use cybe::constructors;
use cybe::error::{Error, Result};
use cybe::format::{
    load_algebra, load_json, load_matrix, load_rmatrix, save_json, AlgebraFile, CobracketFile,
    OperatorFile, PatternFile, RMatrixFile, RepresentationFile,
};
use cybe::loop_alg::parse_element;
use cybe::matrix::Mat;
use cybe::ooperator::{
    check_adjoint_ooperator, check_coadjoint_ooperator, check_operator_unitarity,
    check_reduced_coadjoint_ooperator, check_rep_ooperator, search_ooperators, CheckContext,
    OOperator, OpCheckReport, OperatorKind, PositiveRule,
};
use cybe::rmatrix::RMatrix;
use cybe::scalar::Scalar;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cybe",
    version,
    about = "Exact verification and construction of rational Yang-Baxter data"
)]
struct Cli {
    /// Emit a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks for an algebra file and optional companions.
    Validate {
        algebra: PathBuf,
        /// Representation file to validate against the algebra.
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Cobracket file to test for antisymmetry, Jacobi, and the
        /// cocycle condition.
        #[arg(long)]
        cobracket: Option<PathBuf>,
    },
    /// Validate a representation file against an algebra.
    Rep { algebra: PathBuf, rep: PathBuf },
    /// Operator identity checks and exhaustive pattern search.
    #[command(subcommand)]
    Op(OpCommand),
    /// Assemble a candidate tensor and write it as JSON.
    Build(BuildArgs),
    /// Expand the triple bracket of a candidate and certify it.
    Verify {
        rmatrix: PathBuf,
        /// Cross-check the symbolic numerator against direct evaluation
        /// at N random distinct rational triples.
        #[arg(long, default_value_t = 0)]
        numeric_samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply the induced cobracket of a candidate to a loop element.
    Cobracket {
        rmatrix: PathBuf,
        /// Element syntax: "coeff*name*u^m + ...", e.g. "2*e*u^-1 - h".
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Classical double of an algebra along a cobracket.
    Double {
        algebra: PathBuf,
        /// Cobracket file (zero cobracket when omitted).
        #[arg(long)]
        cobracket: Option<PathBuf>,
        /// Write the double, with its pairing form, as an algebra file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Constant (parameter-free) operator and tensor checks.
    #[command(subcommand)]
    Constant(ConstantCommand),
}

#[derive(Subcommand)]
enum OpCommand {
    /// Run the kind's defining identity over a degree window.
    Check {
        algebra: PathBuf,
        operator: PathBuf,
        /// Confirm the operator kind, or "reduced" for the dropped-term
        /// variant on a coadjoint-kind file.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        window: Option<u32>,
        /// Representation file (rep-kind operators).
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Named form from the algebra file for the adjoint-kind
        /// unitarity sum (the Killing form when omitted).
        #[arg(long)]
        form: Option<String>,
    },
    /// Enumerate coefficient assignments over a slot pattern, keeping
    /// the operators that pass every applicable check.
    Search {
        algebra: PathBuf,
        /// adjoint | coadjoint | rep
        #[arg(long)]
        kind: String,
        #[arg(long)]
        pattern: PathBuf,
        /// Comma-separated coefficient palette, e.g. "-1,0,1"; falls
        /// back to the pattern file's palette.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// Named form from the algebra file: the invariant tensor for
        /// the coadjoint kind, the pairing form for the adjoint kind.
        #[arg(long)]
        tensor: Option<String>,
        /// Bare-matrix JSON file as the tensor (alternative to --tensor).
        #[arg(long)]
        tensor_file: Option<PathBuf>,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        window: Option<u32>,
        /// Candidate cap; defaults to CYBE_MAX_CANDIDATES or 1000000.
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Subcommand)]
enum ConstantCommand {
    /// Check one constant identity; the operator or tensor is a bare
    /// JSON matrix.
    Check {
        /// 1.5 | 1.6 | 1.7 | 5.2 | 5.3 | 5.4 | 5.5
        #[arg(long)]
        eq: String,
        algebra: PathBuf,
        matrix: PathBuf,
        /// Representation file (equation 1.7 only).
        #[arg(long)]
        rep: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// 2 | 3 | 4 | double | pole-only | eq422
    #[arg(long)]
    theorem: Option<String>,
    /// Algebra file (omitted when --example is used).
    algebra: Option<PathBuf>,
    /// Operator file (the zero operator when omitted).
    operator: Option<PathBuf>,
    /// Named form from the algebra file for theorem 2 (Killing when
    /// omitted).
    #[arg(long)]
    form: Option<String>,
    /// Named form used as the invariant tensor (pole-only, or theorems
    /// 3/4/eq422 without an operator file).
    #[arg(long)]
    tensor: Option<String>,
    /// Representation file (theorem 4).
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Cobracket file (theorem double; zero cobracket when omitted).
    #[arg(long)]
    cobracket: Option<PathBuf>,
    /// Built-in example family ("heisenberg").
    #[arg(long)]
    example: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda2: Option<String>,
    #[arg(short, long, default_value = "r.json")]
    output: PathBuf,
    /// Emit the artifact even when its checks fail.
    #[arg(long)]
    force: bool,
}

struct CmdOut {
    pass: bool,
    json: Value,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut body = out.json;
                if let Value::Object(map) = &mut body {
                    map.insert("pass".into(), Value::Bool(out.pass));
                }
                println!("{}", serde_json::to_string_pretty(&body).unwrap());
            } else {
                print!("{}", out.text);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> Result<CmdOut> {
    match &cli.command {
        Command::Validate {
            algebra,
            rep,
            cobracket,
        } => cmd_validate(algebra, rep.as_deref(), cobracket.as_deref()),
        Command::Rep { algebra, rep } => cmd_rep(algebra, rep),
        Command::Op(op) => match op {
            OpCommand::Check {
                algebra,
                operator,
                kind,
                window,
                rep,
                form,
            } => cmd_op_check(
                algebra,
                operator,
                kind.as_deref(),
                *window,
                rep.as_deref(),
                form.as_deref(),
            ),
            OpCommand::Search {
                algebra,
                kind,
                pattern,
                coeffs,
                tensor,
                tensor_file,
                rep,
                window,
                budget,
            } => cmd_op_search(
                algebra,
                kind,
                pattern,
                coeffs.as_deref(),
                tensor.as_deref(),
                tensor_file.as_deref(),
                rep.as_deref(),
                *window,
                *budget,
            ),
        },
        Command::Build(args) => cmd_build(args),
        Command::Verify {
            rmatrix,
            numeric_samples,
            seed,
        } => cmd_verify(rmatrix, *numeric_samples, *seed),
        Command::Cobracket { rmatrix, element } => cmd_cobracket(rmatrix, element),
        Command::Double {
            algebra,
            cobracket,
            output,
        } => cmd_double(algebra, cobracket.as_deref(), output.as_deref()),
        Command::Constant(ConstantCommand::Check {
            eq,
            algebra,
            matrix,
            rep,
        }) => cmd_constant(eq, algebra, matrix, rep.as_deref()),
    }
}

fn load_rep_file(path: &Path) -> Result<Representation> {
    load_json::<RepresentationFile>(path)?.into_representation()
}

fn load_cobracket_file(path: &Path) -> Result<Cobracket> {
    load_json::<CobracketFile>(path)?.into_cobracket()
}

fn named_form(forms: &BTreeMap<String, Mat>, name: &str) -> Result<Mat> {
    forms.get(name).cloned().ok_or_else(|| {
        Error::Input(format!(
            "no form named {name:?} in the algebra file (available: {})",
            if forms.is_empty() {
                "none".to_string()
            } else {
                forms.keys().cloned().collect::<Vec<_>>().join(", ")
            }
        ))
    })
}

fn parse_scalar(text: &str, what: &str) -> Result<Scalar> {
    text.trim()
        .parse()
        .map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn cmd_validate(
    algebra_path: &Path,
    rep_path: Option<&Path>,
    cobracket_path: Option<&Path>,
) -> Result<CmdOut> {
    let (a, forms) = load_algebra(algebra_path)?;
    let report = a.validate();
    let mut pass = report.pass();
    let mut text = format!(
        "algebra: dim {}, basis {}\nantisymmetry: {}\njacobi: {}\n",
        a.dim(),
        a.basis_names().join(", "),
        report.antisymmetry,
        report.jacobi
    );
    let mut body = json!({
        "dim": a.dim(),
        "basis": a.basis_names(),
        "algebra": serde_json::to_value(&report)?,
    });

    // Form properties are reported, not judged: a theorem-2 pairing wants
    // invariance and nondegeneracy, a theorem-3 tensor wants ad-invariance
    // in the tensor sense and may be degenerate. The file does not say
    // which role a form plays, so none of these lines affect the verdict.
    let mut form_reports = serde_json::Map::new();
    for (name, m) in &forms {
        let symmetric = m.is_symmetric();
        let invariant_form = a.is_invariant_form(m)?;
        let invariant_tensor = a.is_ad_invariant_tensor(m)?;
        let nondegenerate = m.inverse().is_some();
        let _ = writeln!(
            text,
            "form {name:?}: symmetric {symmetric}, invariant as form {}, ad-invariant as tensor {}, nondegenerate {nondegenerate}",
            invariant_form.pass, invariant_tensor.pass
        );
        form_reports.insert(
            name.clone(),
            json!({
                "symmetric": symmetric,
                "invariant_form": serde_json::to_value(&invariant_form)?,
                "invariant_tensor": serde_json::to_value(&invariant_tensor)?,
                "nondegenerate": nondegenerate,
            }),
        );
    }
    if !form_reports.is_empty() {
        body["forms"] = Value::Object(form_reports);
    }

    if let Some(path) = rep_path {
        let rho = load_rep_file(path)?;
        let verdict = rho.validate(&a)?;
        pass = pass && verdict.pass;
        let _ = writeln!(text, "representation: {verdict}");
        body["representation"] = serde_json::to_value(&verdict)?;
    }

    if let Some(path) = cobracket_path {
        let gamma = load_cobracket_file(path)?;
        if gamma.dim() != a.dim() {
            return Err(Error::Dimension(format!(
                "cobracket dimension {} does not match algebra dimension {}",
                gamma.dim(),
                a.dim()
            )));
        }
        let dual = gamma.dual_algebra(a.basis_names())?;
        let dual_report = dual.validate();
        let cocycle = a.check_cocycle(&gamma)?;
        pass = pass && dual_report.pass() && cocycle.pass;
        let _ = writeln!(
            text,
            "cobracket: dual antisymmetry: {}; dual jacobi: {}; cocycle: {}",
            dual_report.antisymmetry, dual_report.jacobi, cocycle
        );
        body["cobracket"] = json!({
            "dual": serde_json::to_value(&dual_report)?,
            "cocycle": serde_json::to_value(&cocycle)?,
        });
    }

    let _ = writeln!(text, "verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(CmdOut {
        pass,
        json: body,
        text,
    })
}

fn cmd_rep(algebra_path: &Path, rep_path: &Path) -> Result<CmdOut> {
    let (a, _) = load_algebra(algebra_path)?;
    let rho = load_rep_file(rep_path)?;
    let verdict = rho.validate(&a)?;
    let text = format!(
        "representation: {verdict}\nverdict: {}\n",
        if verdict.pass { "PASS" } else { "FAIL" }
    );
    Ok(CmdOut {
        pass: verdict.pass,
        json: json!({ "representation": serde_json::to_value(&verdict)? }),
        text,
    })
}

/// Unitarity-sum pairing for a checked operator: identity for the
/// coadjoint kinds, inverse form matrix for the adjoint kind, none for
/// rectangular rep-kind operators.
fn unitarity_pairing(
    kind: &str,
    a: &LieAlgebra,
    forms: &BTreeMap<String, Mat>,
    form_name: Option<&str>,
) -> Result<Option<(Mat, Option<String>)>> {
    match kind {
        "coadjoint" | "reduced" => Ok(Some((Mat::identity(a.dim()), None))),
        "adjoint" => match form_name {
            Some(name) => Ok(Some((a.casimir_of_form(&named_form(forms, name)?)?, None))),
            None => match a.casimir_of_form(&a.killing_form()) {
                Ok(pairing) => Ok(Some((pairing, None))),
                Err(_) => Ok(Some((
                    Mat::zeros(0, 0),
                    Some("skipped (Killing form is degenerate; pass --form)".to_string()),
                ))),
            },
        },
        _ => Ok(None),
    }
}

fn cmd_op_check(
    algebra_path: &Path,
    operator_path: &Path,
    kind_flag: Option<&str>,
    window: Option<u32>,
    rep_path: Option<&Path>,
    form_name: Option<&str>,
) -> Result<CmdOut> {
    let (a, forms) = load_algebra(algebra_path)?;
    let file: OperatorFile = load_json(operator_path)?;
    let rho = rep_path.map(load_rep_file).transpose()?;
    let kind = match kind_flag {
        None => file.kind.clone(),
        Some("reduced") => {
            if file.kind != "coadjoint" {
                return Err(Error::Input(format!(
                    "the reduced check needs a coadjoint-kind operator file, found kind {:?}",
                    file.kind
                )));
            }
            "reduced".to_string()
        }
        Some(flag) => {
            if flag != file.kind {
                return Err(Error::Input(format!(
                    "operator file declares kind {:?} but --kind {flag:?} was requested",
                    file.kind
                )));
            }
            flag.to_string()
        }
    };
    let (op, t) = file.into_operator(&a, rho.as_ref())?;

    let report: OpCheckReport = match kind.as_str() {
        "adjoint" => check_adjoint_ooperator(&a, &op, window)?,
        "coadjoint" => check_coadjoint_ooperator(&a, t.as_ref().unwrap(), &op, window)?,
        "reduced" => check_reduced_coadjoint_ooperator(&a, t.as_ref().unwrap(), &op, window)?,
        "rep" => {
            let rho = rho.as_ref().ok_or_else(|| {
                Error::Input("rep-kind operator check needs --rep".into())
            })?;
            check_rep_ooperator(&a, rho, t.as_ref().unwrap(), &op, window)?
        }
        other => return Err(Error::Input(format!("unknown operator kind {other:?}"))),
    };

    let mut pass = report.pass();
    let mut text = format!("kind: {}, window: {}\nmain identity: {}\n", kind, report.window, report.main);
    if let Some(side) = &report.side {
        let _ = writeln!(text, "side condition: {side}");
    }
    let mut body = json!({ "report": serde_json::to_value(&report)? });

    match unitarity_pairing(&kind, &a, &forms, form_name)? {
        Some((_, Some(note))) => {
            let _ = writeln!(text, "unitarity sum: {note}");
            body["unitarity"] = Value::Null;
            body["unitarity_note"] = Value::String(note);
        }
        Some((pairing, None)) => {
            let verdict = check_operator_unitarity(&op, &pairing)?;
            pass = pass && verdict.pass;
            let _ = writeln!(text, "unitarity sum: {verdict}");
            body["unitarity"] = serde_json::to_value(&verdict)?;
        }
        None => {
            let _ = writeln!(text, "unitarity sum: not applicable (rectangular operator)");
            body["unitarity"] = Value::Null;
        }
    }

    let _ = writeln!(text, "verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(CmdOut {
        pass,
        json: body,
        text,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_op_search(
    algebra_path: &Path,
    kind: &str,
    pattern_path: &Path,
    coeffs_flag: Option<&str>,
    tensor_name: Option<&str>,
    tensor_file: Option<&Path>,
    rep_path: Option<&Path>,
    window: Option<u32>,
    budget_flag: Option<u128>,
) -> Result<CmdOut> {
    let (a, forms) = load_algebra(algebra_path)?;
    let pattern: PatternFile = load_json(pattern_path)?;
    let rho = rep_path.map(load_rep_file).transpose()?;
    let tensor = match (tensor_name, tensor_file) {
        (Some(_), Some(_)) => {
            return Err(Error::Input(
                "pass either --tensor or --tensor-file, not both".into(),
            ));
        }
        (Some(name), None) => Some(named_form(&forms, name)?),
        (None, Some(path)) => Some(load_matrix(path)?),
        (None, None) => None,
    };

    let k = a.dim();
    let (ctx, domain_dim, codomain_dim) = match kind {
        "adjoint" => (
            CheckContext::Adjoint {
                algebra: &a,
                pairing: tensor.as_ref(),
            },
            k,
            k,
        ),
        "coadjoint" => {
            let t = tensor.as_ref().ok_or_else(|| {
                Error::Input("coadjoint-kind search needs --tensor or --tensor-file".into())
            })?;
            (CheckContext::Coadjoint { algebra: &a, t }, k, k)
        }
        "rep" => {
            let rho = rho.as_ref().ok_or_else(|| {
                Error::Input("rep-kind search needs --rep".into())
            })?;
            let t = tensor.as_ref().ok_or_else(|| {
                Error::Input("rep-kind search needs --tensor or --tensor-file".into())
            })?;
            let n = rho.module_dim();
            (CheckContext::Rep { algebra: &a, rho, t }, n, k + n)
        }
        other => {
            return Err(Error::Input(format!(
                "unknown search kind {other:?} (expected adjoint, coadjoint, or rep)"
            )));
        }
    };

    let slots = pattern.into_slots(domain_dim, codomain_dim)?;
    let palette: Vec<Scalar> = match coeffs_flag {
        Some(list) => list
            .split(',')
            .map(|tok| parse_scalar(tok, "coefficient palette"))
            .collect::<Result<_>>()?,
        None => pattern.coeffs.clone().ok_or_else(|| {
            Error::Input("no coefficient palette: pass --coeffs or put one in the pattern file".into())
        })?,
    };
    // The environment variable is a hard cap: it bounds the requested
    // budget (flag or default) rather than being overridden by it.
    let mut budget = budget_flag.unwrap_or(1_000_000);
    if let Ok(text) = std::env::var("CYBE_MAX_CANDIDATES") {
        let cap = text.parse::<u128>().map_err(|_| {
            Error::Input("CYBE_MAX_CANDIDATES must be a non-negative integer".into())
        })?;
        budget = budget.min(cap);
    }

    let found = search_ooperators(&ctx, &slots, &palette, window, budget)?;
    let files: Vec<OperatorFile> = found
        .iter()
        .map(|op| OperatorFile::from_operator(op, tensor.as_ref().filter(|_| kind != "adjoint").map(|t| t as &Mat)))
        .collect();

    let mut text = format!("found {} operator(s)\n", found.len());
    for file in &files {
        let _ = writeln!(text, "{}", serde_json::to_string(file)?);
    }
    Ok(CmdOut {
        pass: true,
        json: json!({ "count": found.len(), "operators": serde_json::to_value(&files)? }),
        text,
    })
}

/// Resolves the operator for a build: the file when given (kind-checked),
/// otherwise the zero operator of the expected shape.
fn build_operator(
    args: &BuildArgs,
    expected_kind: OperatorKind,
    a: &LieAlgebra,
    rho: Option<&Representation>,
    fallback_rule: impl FnOnce() -> Result<(usize, usize, PositiveRule)>,
) -> Result<(OOperator, Option<Mat>)> {
    match &args.operator {
        Some(path) => {
            let file: OperatorFile = load_json(path)?;
            if file.kind != expected_kind.as_str() {
                return Err(Error::Input(format!(
                    "this construction needs a {}-kind operator, found kind {:?}",
                    expected_kind.as_str(),
                    file.kind
                )));
            }
            file.into_operator(a, rho)
        }
        None => {
            let (domain, codomain, rule) = fallback_rule()?;
            Ok((
                OOperator::zero_extension(expected_kind, domain, codomain, rule)?,
                None,
            ))
        }
    }
}

fn cmd_build(args: &BuildArgs) -> Result<CmdOut> {
    if let Some(example) = &args.example {
        if example != "heisenberg" {
            return Err(Error::Input(format!(
                "unknown example {example:?} (available: heisenberg)"
            )));
        }
        let l1 = parse_scalar(
            args.lambda1.as_deref().ok_or_else(|| {
                Error::Input("--example heisenberg needs --lambda1 and --lambda2".into())
            })?,
            "--lambda1",
        )?;
        let l2 = parse_scalar(
            args.lambda2.as_deref().ok_or_else(|| {
                Error::Input("--example heisenberg needs --lambda1 and --lambda2".into())
            })?,
            "--lambda2",
        )?;
        let (_, _, _, r) = constructors::heisenberg_family(&l1, &l2);
        return finish_build(args, r, false);
    }

    let theorem = args.theorem.as_deref().ok_or_else(|| {
        Error::Input("pass --theorem (2 | 3 | 4 | double | pole-only | eq422) or --example".into())
    })?;
    let algebra_path = args
        .algebra
        .as_deref()
        .ok_or_else(|| Error::Input("an algebra file is required".into()))?;
    let (a, forms) = load_algebra(algebra_path)?;
    let k = a.dim();

    // The invariant tensor for kinds that carry one: the operator file's
    // tensor when present, a named form otherwise.
    let file_tensor = |op_t: &Option<Mat>| -> Result<Mat> {
        match (op_t, args.tensor.as_deref()) {
            (Some(t), None) => Ok(t.clone()),
            (None, Some(name)) => named_form(&forms, name),
            (Some(_), Some(_)) => Err(Error::Input(
                "the operator file already carries a tensor; drop --tensor".into(),
            )),
            (None, None) => Err(Error::Input(
                "this construction needs a tensor: operator file t or --tensor NAME".into(),
            )),
        }
    };

    match theorem {
        "pole-only" => {
            let name = args.tensor.as_deref().ok_or_else(|| {
                Error::Input("--theorem pole-only needs --tensor NAME".into())
            })?;
            let t = named_form(&forms, name)?;
            let r = constructors::r_from_invariant_tensor(&a, &t)?;
            finish_build(args, r, false)
        }
        "2" => {
            let b = match args.form.as_deref() {
                Some(name) => named_form(&forms, name)?,
                None => a.killing_form(),
            };
            let (mu, _) = build_operator(args, OperatorKind::Adjoint, &a, None, || {
                Ok((k, k, PositiveRule::NegId))
            })?;
            let r = constructors::r_theorem2(&a, &b, &mu, args.force)?;
            finish_build(args, r, args.force)
        }
        "3" | "eq422" => {
            let (op, op_t) = build_operator(args, OperatorKind::Coadjoint, &a, None, || {
                let name = args.tensor.as_deref().ok_or_else(|| {
                    Error::Input(
                        "without an operator file this construction needs --tensor NAME".into(),
                    )
                })?;
                let t = named_form(&forms, name)?;
                Ok((k, k, PositiveRule::NegMap(tensor_as_map(&t))))
            })?;
            let t = file_tensor(&op_t)?;
            let r = if theorem == "3" {
                constructors::r_theorem3(&a, &t, &op, args.force)?
            } else {
                constructors::r_eq422(&a, &t, &op, args.force)?
            };
            finish_build(args, r, args.force)
        }
        "4" => {
            let rho = args
                .rep
                .as_deref()
                .ok_or_else(|| Error::Input("--theorem 4 needs --rep".into()))
                .and_then(load_rep_file)?;
            let n = rho.module_dim();
            let (op, op_t) = build_operator(args, OperatorKind::Rep, &a, Some(&rho), || {
                let name = args.tensor.as_deref().ok_or_else(|| {
                    Error::Input(
                        "without an operator file this construction needs --tensor NAME".into(),
                    )
                })?;
                let t = named_form(&forms, name)?;
                if t.rows() != n || t.cols() != n {
                    return Err(Error::Dimension(format!("tensor must be {n}x{n}")));
                }
                Ok((n, k + n, PositiveRule::NegMap(cybe::ooperator::rep_extension_map(k, &t))))
            })?;
            let t = file_tensor(&op_t)?;
            let (_, r) = constructors::r_theorem4(&a, &rho, &t, &op, args.force)?;
            finish_build(args, r, args.force)
        }
        "double" => {
            let gamma = match args.cobracket.as_deref() {
                Some(path) => load_cobracket_file(path)?,
                None => Cobracket::zero(k),
            };
            if gamma.dim() != k {
                return Err(Error::Dimension(format!(
                    "cobracket dimension {} does not match algebra dimension {k}",
                    gamma.dim()
                )));
            }
            let (mu, _) = build_operator(args, OperatorKind::Adjoint, &a, None, || {
                Ok((2 * k, 2 * k, PositiveRule::NegId))
            })?;
            let (_, r) = constructors::r_double(&a, &gamma, &mu, args.force)?;
            finish_build(args, r, args.force)
        }
        other => Err(Error::Input(format!(
            "unknown theorem {other:?} (expected 2, 3, 4, double, pole-only, or eq422)"
        ))),
    }
}

fn finish_build(args: &BuildArgs, r: RMatrix, forced: bool) -> Result<CmdOut> {
    let file = RMatrixFile::from_rmatrix(&r);
    save_json(&args.output, &file)?;
    let pole_cells = file.pole.iter().flatten().filter(|v| !v.is_zero()).count();
    let text = format!(
        "built candidate on algebra of dim {} (pole cells {}, polynomial blocks {}){}\nwrote {}\n",
        r.dim(),
        pole_cells,
        r.poly().len(),
        if forced {
            "\nchecks: skipped (--force)"
        } else {
            "\nchecks: certified against the symbolic verifier"
        },
        args.output.display()
    );
    Ok(CmdOut {
        pass: true,
        json: json!({
            "dim": r.dim(),
            "pole_cells": pole_cells,
            "poly_blocks": r.poly().len(),
            "forced": forced,
            "output": args.output.display().to_string(),
        }),
        text,
    })
}

fn cmd_verify(rmatrix_path: &Path, numeric_samples: u32, seed: u64) -> Result<CmdOut> {
    let r = load_rmatrix(rmatrix_path)?;
    let q = r.cybe_numerator();
    let support = q.support();
    let unitary = r.check_unitarity();
    let nondegenerate = r.is_nondegenerate();
    let mut pass = support.is_empty();

    let mut text = String::new();
    if support.is_empty() {
        text.push_str("numerator support: empty\n");
    } else {
        let witness = q.first_witness().expect("nonzero numerator has a witness");
        let _ = writeln!(
            text,
            "numerator support: {} degree triple(s); first violation at {}",
            support.len(),
            witness
        );
    }
    let _ = writeln!(text, "unitarity: {}", if unitary { "pass" } else { "FAIL" });
    let _ = writeln!(text, "nondegenerate: {nondegenerate}");

    let mut sample_values = Vec::new();
    if numeric_samples > 0 {
        let samples = r.numeric_cross_check(numeric_samples, seed)?;
        for (idx, sample) in samples.iter().enumerate() {
            let (u1, u2, u3) = &sample.points;
            let _ = writeln!(
                text,
                "numeric sample {} at ({u1}, {u2}, {u3}): {}",
                idx + 1,
                if sample.agree { "agree" } else { "DISAGREE" }
            );
            pass = pass && sample.agree;
            sample_values.push(json!({
                "points": [u1.to_string(), u2.to_string(), u3.to_string()],
                "agree": sample.agree,
            }));
        }
    }

    let _ = writeln!(text, "verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(CmdOut {
        pass,
        json: json!({
            "numerator_cells": support.len(),
            "first_violation": q.first_witness().map(|w| serde_json::to_value(&w)).transpose()?,
            "unitarity": unitary,
            "nondegenerate": nondegenerate,
            "numeric_samples": sample_values,
        }),
        text,
    })
}

fn cmd_cobracket(rmatrix_path: &Path, element: &str) -> Result<CmdOut> {
    let r = load_rmatrix(rmatrix_path)?;
    let f = parse_element(element, r.algebra())?;
    let delta = r.cobracket(&f)?;
    let names = r.algebra().basis_names();

    let mut text = format!("cobracket of {}:\n", element.trim());
    let mut cells = Vec::new();
    if delta.is_zero() {
        text.push_str("  0\n");
    }
    for ((p, q), block) in delta.iter() {
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                let v = block.at(i, j);
                if !v.is_zero() {
                    let _ = writeln!(
                        text,
                        "  u1^{p} u2^{q}  {} (x) {}: {v}",
                        names[i], names[j]
                    );
                    cells.push(json!({
                        "p": p,
                        "q": q,
                        "i": i + 1,
                        "j": j + 1,
                        "value": v.to_string(),
                    }));
                }
            }
        }
    }
    Ok(CmdOut {
        pass: true,
        json: json!({ "cells": cells }),
        text,
    })
}

fn cmd_double(
    algebra_path: &Path,
    cobracket_path: Option<&Path>,
    output: Option<&Path>,
) -> Result<CmdOut> {
    let (a, _) = load_algebra(algebra_path)?;
    let gamma = match cobracket_path {
        Some(path) => load_cobracket_file(path)?,
        None => Cobracket::zero(a.dim()),
    };
    if gamma.dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "cobracket dimension {} does not match algebra dimension {}",
            gamma.dim(),
            a.dim()
        )));
    }
    let (double, pairing) = a.classical_double(&gamma)?;
    let report = double.validate();
    let invariant = double.is_invariant_form(&pairing)?;
    let pass = report.pass() && invariant.pass;

    let mut text = format!(
        "double: dim {}, basis {}\nantisymmetry: {}\njacobi: {}\npairing invariant: {}\n",
        double.dim(),
        double.basis_names().join(", "),
        report.antisymmetry,
        report.jacobi,
        invariant
    );
    if let Some(path) = output {
        let mut forms = BTreeMap::new();
        forms.insert("pairing".to_string(), pairing.clone());
        save_json(path, &AlgebraFile::from_algebra(&double, &forms))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let _ = writeln!(text, "verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(CmdOut {
        pass,
        json: json!({
            "dim": double.dim(),
            "basis": double.basis_names(),
            "algebra": serde_json::to_value(&report)?,
            "pairing_invariant": serde_json::to_value(&invariant)?,
        }),
        text,
    })
}

fn cmd_constant(
    eq: &str,
    algebra_path: &Path,
    matrix_path: &Path,
    rep_path: Option<&Path>,
) -> Result<CmdOut> {
    let (a, _) = load_algebra(algebra_path)?;
    let m = load_matrix(matrix_path)?;

    let simple = |label: &str, verdict: cybe::report::Verdict<cybe::report::IndexPair>| -> Result<CmdOut> {
        let text = format!(
            "{label}: {verdict}\nverdict: {}\n",
            if verdict.pass { "PASS" } else { "FAIL" }
        );
        Ok(CmdOut {
            pass: verdict.pass,
            json: json!({ "identity": label, "verdict": serde_json::to_value(&verdict)? }),
            text,
        })
    };

    match eq {
        "1.5" => simple("weight-zero operator equation", constant_ops::check_eq15(&a, &m)?),
        "1.6" => simple("dual-space operator equation", constant_ops::check_eq16(&a, &m)?),
        "1.7" => {
            let rho = rep_path
                .ok_or_else(|| Error::Input("--eq 1.7 needs --rep".into()))
                .and_then(load_rep_file)?;
            simple(
                "module operator equation",
                constant_ops::check_eq17(&a, &rho, &m)?,
            )
        }
        "5.2" => {
            let main = constant_ops::check_eq52(&a, &m)?;
            let transformed = constant_ops::check_eq53(&a, &constant_ops::r_from_rp(&m))?;
            let text = format!(
                "weight \"-1\" relation: {main}\nmodified form on (1 - R')/2 (reported side by side, no equivalence asserted): {transformed}\nverdict: {}\n",
                if main.pass { "PASS" } else { "FAIL" }
            );
            Ok(CmdOut {
                pass: main.pass,
                json: json!({
                    "identity": "weight \"-1\" relation",
                    "verdict": serde_json::to_value(&main)?,
                    "transformed_modified_form": serde_json::to_value(&transformed)?,
                }),
                text,
            })
        }
        "5.3" => {
            let main = constant_ops::check_eq53(&a, &m)?;
            let transformed = constant_ops::check_eq52(&a, &constant_ops::rp_from_r(&m))?;
            let text = format!(
                "modified operator equation: {main}\nweight \"-1\" relation on 1 - 2R (reported side by side, no equivalence asserted): {transformed}\nverdict: {}\n",
                if main.pass { "PASS" } else { "FAIL" }
            );
            Ok(CmdOut {
                pass: main.pass,
                json: json!({
                    "identity": "modified operator equation",
                    "verdict": serde_json::to_value(&main)?,
                    "transformed_weight_minus_one": serde_json::to_value(&transformed)?,
                }),
                text,
            })
        }
        "5.4" => {
            let report = constant_ops::constant_cybe_and_mcybe(&a, &m)?;
            let pass = report.cybe || report.mcybe;
            let text = format!(
                "{report}\nverdict: {}\n",
                if pass { "PASS" } else { "FAIL" }
            );
            Ok(CmdOut {
                pass,
                json: serde_json::to_value(&report)?,
                text,
            })
        }
        "5.5" => {
            let report = constant_ops::derived_bracket_checks(&a, &m)?;
            let pass = report.pass();
            let text = format!(
                "{report}\nverdict: {}\n",
                if pass { "PASS" } else { "FAIL" }
            );
            Ok(CmdOut {
                pass,
                json: serde_json::to_value(&report)?,
                text,
            })
        }
        other => Err(Error::Input(format!(
            "unknown equation {other:?} (expected 1.5, 1.6, 1.7, 5.2, 5.3, 5.4, or 5.5)"
        ))),
    }
}
