//! `dore`: validate, multiply in, and analyze double extension specs.
//!
//! Exit codes: 0 success, 1 invalid spec or failed transform, 2 malformed
//! input or bad arguments. Reports go to stdout, diagnostics to stderr.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dore::analysis::{
    associated_graded, change_basis, classify_double, detect_y1_first, detect_y2_first,
    diag_directions, render_basis, search_presentations, swap_generators, transform_newp_a,
    transform_newp_b, BasisChange, IteratedOrePresentation, NotPresentable, TransformError,
};
use dore::engine::validate_spec;
use dore::examples::{example_b2, jordan, qplane_over_kx, scalar_base};
use dore::maps::det_sigma_apply;
use dore::{
    emit_report, emit_spec, parse_scalar, parse_spec, DoubleExtSpec, DoubleExtension, FieldElement,
    FieldSpec, Polynomial, ValidationReport,
};

#[derive(Debug, Parser)]
#[command(name = "dore", version, about = "Exact workbench for double Ore extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check structure maps, the six relations and the overlap.
    Validate {
        /// Spec document, or a built-in name (b2, b2-gf2, qplane, jordan).
        spec: String,
    },
    /// Print the normal form of a word in the base generators and y1, y2.
    Nf {
        spec: String,
        #[arg(long)]
        expr: String,
        /// Emit the terms as JSON in ascending (i, j) order.
        #[arg(long)]
        json: bool,
    },
    /// Detections, classification, normalizing directions and search.
    Analyze { spec: String },
    /// Apply a transform and print the resulting spec document.
    Transform {
        spec: String,
        /// One of newp-a, newp-b, swap, gr, or `basis "[[a,b],[c,d]]"`.
        #[arg(long, num_args = 1..=2, value_names = ["OP", "MATRIX"])]
        op: Vec<String>,
    },
    /// Print a ready-made spec document.
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleName {
    B2,
    Qplane,
    Jordan,
    Scalar,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    name: ExampleName,
    #[arg(long, default_value = "Q")]
    field: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    c: String,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    p12: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    p11: String,
    /// τ₀,τ₁,τ₂ as comma-separated scalars.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    tau: String,
}

/// A failed command: exit code plus a diagnostic for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn builtin(name: &str) -> Option<DoubleExtSpec> {
    let q = FieldSpec::Rationals;
    let gf2 = FieldSpec::prime(2).expect("prime");
    match name {
        "b2" => example_b2(&q.from_i64(1), &q.from_i64(2), &q.from_i64(3), q).ok(),
        "b2-gf2" => example_b2(&gf2.one(), &gf2.one(), &gf2.one(), gf2).ok(),
        "qplane" => Some(qplane_over_kx(&q.from_i64(3))),
        "jordan" => Some(jordan(q)),
        _ => None,
    }
}

fn load(source: &str) -> Result<DoubleExtSpec, Failure> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(s) = builtin(source) {
            return Ok(s);
        }
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("cannot read {source}: {e}")))?;
    parse_spec(&text).map_err(|e| Failure::malformed(format!("{source}: {e}")))
}

fn load_valid(source: &str) -> Result<DoubleExtension, Failure> {
    let spec = load(source)?;
    let report = validate_spec(&spec);
    if !report.is_valid() {
        return Err(Failure::invalid(format!(
            "{source} is not a valid double extension:\n{}",
            emit_report(&report).trim_end()
        )));
    }
    Ok(DoubleExtension::new(spec).expect("validated above"))
}

fn cmd_validate(source: &str) -> (String, u8) {
    let report = match load(source) {
        Ok(spec) => validate_spec(&spec),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ValidationReport::malformed(f.message)
        }
    };
    let code = match report.status {
        dore::Status::Valid => 0,
        dore::Status::Invalid => 1,
        dore::Status::Malformed => 2,
    };
    (emit_report(&report), code)
}

fn cmd_nf(source: &str, expr: &str, as_json: bool) -> Outcome {
    let ext = load_valid(source)?;
    let e = ext
        .reduce_word(expr)
        .map_err(|err| Failure::malformed(format!("expression: {err}")))?;
    if !as_json {
        return Ok(format!("{e}\n"));
    }
    let terms: Vec<Value> = e
        .terms()
        .map(|(&(i, j), c)| json!({"i": i, "j": j, "coefficient": c.to_string()}))
        .collect();
    Ok(pretty(&json!({"normal_form": e.to_string(), "terms": terms})))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

fn detection(r: Result<IteratedOrePresentation, NotPresentable>) -> Value {
    match r {
        Ok(p) => json!({"presentable": true, "presentation": p.to_json()}),
        Err(e) => json!({"presentable": false, "reasons": e.reasons}),
    }
}

fn cmd_analyze(source: &str) -> Outcome {
    let ext = load_valid(source)?;
    let ring = ext.ring();
    let mut det = Map::new();
    for (m, g) in ring.vars().iter().enumerate() {
        let v = det_sigma_apply(ext.spec(), &Polynomial::var(ring, m)).expect("same ring");
        det.insert(g.clone(), Value::String(v.to_string()));
    }
    let search: Vec<Value> = search_presentations(&ext).iter().map(|f| f.to_json()).collect();
    Ok(pretty(&json!({
        "detect_y1_first": detection(detect_y1_first(&ext)),
        "detect_y2_first": detection(detect_y2_first(&ext)),
        "classification": classify_double(&ext),
        "det_sigma": det,
        "directions": diag_directions(&ext),
        "search": search,
    })))
}

fn parse_matrix(text: &str, field: FieldSpec) -> Result<BasisChange, Failure> {
    let bad = |m: String| Failure::malformed(format!("basis matrix: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected [[a,b],[c,d]]".into()))?;
    let mut out: Vec<[FieldElement; 2]> = Vec::new();
    for row in rows {
        let r = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("expected [[a,b],[c,d]]".into()))?;
        let mut entries = Vec::new();
        for e in r {
            let s = match e {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(bad(format!("entry {other} is not a scalar"))),
            };
            entries.push(parse_scalar(&s, field).map_err(|e| bad(e.to_string()))?);
        }
        out.push([entries[0].clone(), entries[1].clone()]);
    }
    Ok([out[0].clone(), out[1].clone()])
}

fn transform_failure(e: TransformError) -> Failure {
    match &e {
        TransformError::Invalid(r) => Failure::invalid(format!("{e}\n{}", emit_report(r).trim_end())),
        _ => Failure::invalid(e.to_string()),
    }
}

fn cmd_transform(source: &str, op: &[String]) -> Outcome {
    let ext = load_valid(source)?;
    let name = op.first().map(String::as_str).unwrap_or("");
    if name != "basis" && op.len() > 1 {
        return Err(Failure::malformed(format!("--op {name} takes no matrix")));
    }
    let out = match name {
        "newp-a" => transform_newp_a(&ext),
        "newp-b" => transform_newp_b(&ext).map(|r| r.0),
        "swap" => swap_generators(&ext),
        "gr" => associated_graded(&ext),
        "basis" => {
            let text = op.get(1).ok_or_else(|| Failure::malformed("--op basis needs a matrix"))?;
            let m = parse_matrix(text, ext.spec().field())?;
            return change_basis(&ext, &m)
                .map(|out| emit_spec(out.spec()))
                .map_err(|e| match e {
                    TransformError::SingularBasis => {
                        Failure::invalid(format!("{e}: {}", render_basis(&m)))
                    }
                    other => transform_failure(other),
                });
        }
        other => {
            return Err(Failure::malformed(format!(
                "unknown --op `{other}` (expected newp-a, newp-b, swap, gr, basis)"
            )))
        }
    };
    let out = out.map_err(transform_failure)?;
    Ok(emit_spec(out.spec()))
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = text
        .strip_prefix("GF:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Failure::malformed(format!("field `{text}`: expected Q or GF:<p>")))?;
    FieldSpec::prime(p).map_err(|e| Failure::malformed(e.to_string()))
}

fn cmd_example(args: &ExampleArgs) -> Outcome {
    let field = parse_field(&args.field)?;
    let scalar = |what: &str, s: &str| {
        parse_scalar(s, field).map_err(|e| Failure::malformed(format!("--{what}: {e}")))
    };
    let spec = match args.name {
        ExampleName::B2 => example_b2(
            &scalar("a", &args.a)?,
            &scalar("b", &args.b)?,
            &scalar("c", &args.c)?,
            field,
        )
        .map_err(|e| Failure::malformed(e.to_string()))?,
        ExampleName::Qplane => qplane_over_kx(&scalar("q", &args.q)?),
        ExampleName::Jordan => jordan(field),
        ExampleName::Scalar => {
            let parts: Vec<&str> = args.tau.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Failure::malformed("--tau needs three comma-separated scalars"));
            }
            let tau = [scalar("tau", parts[0])?, scalar("tau", parts[1])?, scalar("tau", parts[2])?];
            scalar_base(field, &scalar("p12", &args.p12)?, &scalar("p11", &args.p11)?, &tau)
                .map_err(|e| Failure::malformed(e.to_string()))?
        }
    };
    Ok(emit_spec(&spec))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { spec } => {
            let (text, code) = cmd_validate(spec);
            print!("{text}");
            return ExitCode::from(code);
        }
        Command::Nf { spec, expr, json } => cmd_nf(spec, expr, *json),
        Command::Analyze { spec } => cmd_analyze(spec),
        Command::Transform { spec, op } => cmd_transform(spec, op),
        Command::Example(args) => cmd_example(args),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
