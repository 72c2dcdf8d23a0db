//! `cqg`: batch front end for the compact-quantum-group workbench.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on bad input or usage.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cqg_core::finite::{
    self, bundled, bundled_names, characters, convolution_table, corep_decompose, gns, reduce, tensor_product,
    verify_corepresentation, CorepDecomposition, Corepresentation, FiniteQuantumGroup,
};
use cqg_core::functional::{convolution_inverse, is_star_preserving};
use cqg_core::group::{
    condition5_check, kesten_estimate, Builtin, DiscreteGroup, FiniteGroup, KestenOptions, Method,
};
use cqg_core::linalg::Matrix;
use cqg_core::report::{sig17, tsv_lines};
use cqg_core::scalar::{format_rational, parse_rational};
use cqg_core::suq2::{haar_monomial, normal_form, spectral_witness, Mono};
use cqg_core::{with_builtin, Error, ExactScalar};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cqg", version, about = "Compact quantum groups at desk scale")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

/// Finite quantum group input: a JSON path, `-` for stdin, or `bundled:NAME`.
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms, density spans and Haar state of a finite datum.
    CheckAxioms(Input),
    /// Kesten-type spectral estimate for a discrete group.
    Kesten(KestenArgs),
    /// Test |Σλ_i| ≤ ‖λ₀ + Σ λ_i λ(s_i)‖ on a Cayley ball.
    Condition5(Condition5Args),
    /// Exact Haar state of a SU_q(2) monomial a_kmn.
    HaarSuq2 {
        #[arg(long)]
        q: String,
        /// `k,m,n`
        #[arg(long, allow_hyphen_values = true)]
        monomial: String,
    },
    /// Norm of the truncated Re χ_U for SU_q(2), a lower bound for 2.
    Suq2Witness {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 500)]
        n_max: usize,
    },
    /// Normal form of a word in α, α*, γ, γ* such as "2 g a* - a g".
    NormalForm {
        #[arg(long)]
        q: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Quotient by the left kernel of the Haar state.
    Reduce(Input),
    /// GNS construction for the Haar state or the counit.
    Gns {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = State::Haar)]
        state: State,
    },
    /// Characters with their convolution table.
    Characters(Input),
    /// Decompose an element into corepresentation coefficients, or re-check a saved one.
    Corep(CorepArgs),
    /// Tensor product of two finite quantum groups.
    Tensor { left: String, right: String },
    /// List bundled examples, or print one as JSON.
    Bundled { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum State {
    Haar,
    Counit,
}

#[derive(Args)]
struct KestenArgs {
    /// Built-in name (`Z^2`, `F_2`, `S_3`, `Z x F_2`, …) or a label for `--table`.
    group: String,
    #[arg(long)]
    radius: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Certified upper bound for the reduced norm of Σ_s λ(s).
    #[arg(long)]
    oracle_norm: Option<f64>,
    /// Use the closed-form norm of a built-in group as the oracle.
    #[arg(long, conflicts_with = "oracle_norm")]
    builtin_oracle: bool,
    #[arg(long, default_value_t = 5e-2)]
    tol: f64,
    /// Walk length 2n; defaults to 8R.
    #[arg(long)]
    walk_length: Option<usize>,
    #[arg(long, default_value_t = 20_000_000)]
    ball_cap: usize,
    /// Group table JSON `{"order": n, "table": [[...]], "generators": [...]}`.
    #[arg(long)]
    table: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lanczos,
    Walks,
    Both,
}

#[derive(Args)]
struct Condition5Args {
    group: String,
    #[arg(long)]
    radius: usize,
    /// Comma-separated complex weights λ₀,…,λ_N such as `0,1,1,1,1` or `1+2i,-i`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Certified upper bound for ‖λ₀ + Σ λ_i λ(s_i)‖.
    #[arg(long)]
    oracle_upper: Option<f64>,
    /// Use the closed form when λ₀ = 0 and the other weights agree.
    #[arg(long, conflicts_with = "oracle_upper")]
    builtin_oracle: bool,
    #[arg(long, default_value_t = 5e-2)]
    tol: f64,
    #[arg(long, default_value_t = 20_000_000)]
    ball_cap: usize,
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct CorepArgs {
    #[command(flatten)]
    input: Input,
    /// Basis index of the element to decompose.
    #[arg(long, conflicts_with_all = ["label", "all", "verify"])]
    basis: Option<usize>,
    /// Basis label of the element to decompose.
    #[arg(long, conflicts_with_all = ["all", "verify"])]
    label: Option<String>,
    /// Decompose every basis element.
    #[arg(long, conflicts_with = "verify")]
    all: bool,
    /// Re-check the corepresentations in a saved report.
    #[arg(long)]
    verify: Option<String>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotQuantumGroup(_) | Error::NotMultiplicative(..) | Error::NotPositive => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// A report and whether every check in it passed.
struct Outcome {
    report: Value,
    /// Pre-rendered JSON that keeps 17 significant digits.
    json: Option<String>,
    passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report, json: None, passed: true }
    }

    fn of<T: Serialize>(x: &T) -> Self {
        let json = serde_json::to_string_pretty(x).expect("report serializes") + "\n";
        Self { report: to_value(x), json: Some(json), passed: true }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn load(input: &str) -> Result<FiniteQuantumGroup, Failure> {
    match input.strip_prefix("bundled:") {
        Some(name) => Ok(bundled(name)?),
        None => Ok(FiniteQuantumGroup::from_json_str(&read_text(input)?)?),
    }
}

fn fqg_value(a: &FiniteQuantumGroup) -> Value {
    serde_json::from_str(&a.to_json_string()).expect("own JSON parses")
}

fn scalar_strings(v: &[ExactScalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| scalar_strings(r)).collect()
}

fn parse_q(text: &str) -> Result<num_rational::BigRational, Failure> {
    let q = parse_rational(text).map_err(|e| Failure::Usage(format!("--q: {e}")))?;
    cqg_core::suq2::check_q(&q).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(q)
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
fn parse_complex(text: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Usage(format!("cannot read {text:?} as a complex number"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .unwrap_or(0);
    let (re, im) = body.split_at(split);
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn resolve_group(name: &str, table: Option<&str>) -> Result<Builtin, Failure> {
    match table {
        Some(path) => Ok(Builtin::Finite(FiniteGroup::from_json(name, &read_text(path)?)?)),
        None => Ok(Builtin::parse(name)?),
    }
}

fn cmd_check_axioms(input: &Input) -> Result<Outcome, Failure> {
    let a = load(&input.input)?;
    let report = a.axiom_report();
    let passed = report.passed();
    let mut v = to_value(&report);
    v["passed"] = json!(passed);
    v["failing"] = json!(report.failing_axioms());
    Ok(Outcome { report: v, json: None, passed })
}

fn cmd_kesten(args: &KestenArgs) -> Result<Outcome, Failure> {
    let group = resolve_group(&args.group, args.table.as_deref())?;
    let method = match args.method {
        MethodArg::Lanczos => Method::Lanczos,
        MethodArg::Walks => Method::Walks,
        MethodArg::Both => Method::Both,
    };
    let oracle = if args.builtin_oracle {
        Some(group.reduced_norm().ok_or_else(|| Failure::Usage(format!("no closed form for {}", group.name())))?)
    } else {
        args.oracle_norm
    };
    let mut opts = KestenOptions::new(args.radius, method).with_tol(args.tol).with_oracle(oracle);
    opts.walk_length = args.walk_length;
    opts.ball_cap = args.ball_cap;
    let report = with_builtin!(&group, |g| kesten_estimate(g, &opts))?;
    Ok(Outcome::of(&report))
}

fn cmd_condition5(args: &Condition5Args) -> Result<Outcome, Failure> {
    let group = resolve_group(&args.group, args.table.as_deref())?;
    let lambda: Vec<Complex64> = args.lambda.split(',').map(parse_complex).collect::<Result<_, _>>()?;
    let oracle = if args.builtin_oracle {
        Some(group.uniform_weight_norm(&lambda).ok_or_else(|| {
            Failure::Usage("the built-in oracle needs λ₀ = 0, equal remaining weights and a known closed form".into())
        })?)
    } else {
        args.oracle_upper
    };
    let mut opts = KestenOptions::new(args.radius, Method::Lanczos).with_tol(args.tol);
    opts.ball_cap = args.ball_cap;
    let report = with_builtin!(&group, |g| condition5_check(g, &lambda, oracle, &opts))?;
    Ok(Outcome::of(&report))
}

fn cmd_haar_suq2(q: &str, monomial: &str) -> Result<Outcome, Failure> {
    let q = parse_q(q)?;
    let parts: Vec<&str> = monomial.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("--monomial expects k,m,n with m, n ≥ 0; got {monomial:?}"));
    let [k, m, n] = parts.as_slice() else { return Err(bad()) };
    let mono = Mono::new(k.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?);
    let h = haar_monomial(&q, mono)?;
    Ok(Outcome::ok(json!({
        "q": format_rational(&q),
        "monomial": [mono.k, mono.m, mono.n],
        "haar": h.to_string(),
    })))
}

#[derive(Serialize)]
struct WitnessReport {
    q: String,
    n_max: usize,
    #[serde(serialize_with = "sig17")]
    witness: f64,
    #[serde(serialize_with = "sig17")]
    bound: f64,
    #[serde(serialize_with = "sig17")]
    gap: f64,
}

fn cmd_suq2_witness(q: &str, n_max: usize) -> Result<Outcome, Failure> {
    let q_exact = parse_q(q)?;
    let qf = cqg_core::scalar::rational_to_f64(&q_exact);
    let w = spectral_witness(qf, n_max)?;
    let report = WitnessReport { q: format_rational(&q_exact), n_max, witness: w, bound: 2.0, gap: 2.0 - w };
    Ok(Outcome::of(&report))
}

fn cmd_normal_form(q: &str, word: &str) -> Result<Outcome, Failure> {
    let q = parse_q(q)?;
    let x = normal_form(word, &q)?;
    let terms: Vec<Value> = x
        .terms
        .iter()
        .map(|(m, c)| {
            let (re, im) = c.to_strings();
            json!({"k": m.k, "m": m.m, "n": m.n, "re": re, "im": im})
        })
        .collect();
    Ok(Outcome::ok(json!({"q": format_rational(&q), "input": word, "terms": terms})))
}

fn cmd_reduce(input: &Input) -> Result<Outcome, Failure> {
    let a = load(&input.input)?;
    let r = reduce(&a)?;
    let passed = r.reduced_haar_faithful && r.theta_intertwines && r.haar_factors;
    Ok(Outcome {
        json: None,
        report: json!({
            "input": a.name,
            "dim": a.dim,
            "reduced_dim": r.quotient.algebra.dim,
            "left_kernel_dim": a.dim - r.quotient.algebra.dim,
            "haar": scalar_strings(&r.haar.coeffs),
            "reduced_haar": scalar_strings(&r.reduced_haar.coeffs),
            "reduced_haar_faithful": r.reduced_haar_faithful,
            "theta_bijective": r.theta_bijective,
            "theta_intertwines": r.theta_intertwines,
            "haar_factors": r.haar_factors,
            "representatives": r.quotient.representatives,
            "theta": matrix_strings(&r.quotient.theta),
            "reduced": fqg_value(&r.quotient.algebra),
        }),
        passed,
    })
}

fn cmd_gns(input: &Input, state: State) -> Result<Outcome, Failure> {
    let a = load(&input.input)?;
    let (name, phi) = match state {
        State::Haar => ("haar", finite::haar_solve(&a)?),
        State::Counit => (
            "counit",
            a.counit_functional().ok_or_else(|| Failure::Check(format!("{} has no counit", a.name)))?,
        ),
    };
    let data = gns(&a, &phi)?;
    let verified = data.verify(&a, &phi);
    Ok(Outcome {
        json: None,
        report: json!({
            "input": a.name,
            "state": name,
            "dim": a.dim,
            "gns_dim": data.gns_dim,
            "representatives": data.representatives,
            "cyclic_vector": scalar_strings(&data.cyclic_vector),
            "inner_product": matrix_strings(&data.inner_product),
            "rep": data.rep.iter().map(matrix_strings).collect::<Vec<_>>(),
            "verified": verified,
        }),
        passed: verified,
    })
}

fn cmd_characters(input: &Input) -> Result<Outcome, Failure> {
    let a = load(&input.input)?;
    let set = characters(&a)?;
    let chars = &set.characters;
    let table = convolution_table(&a, chars)?;
    let eps = a.counit_functional();
    let unit = eps.as_ref().and_then(|e| chars.iter().position(|c| c == e));
    let mut inverses = Vec::with_capacity(chars.len());
    let mut star = true;
    for tau in chars {
        let inv = convolution_inverse(tau, &a)?;
        inverses.push(chars.iter().position(|c| *c == inv));
        star &= is_star_preserving(tau, &a)?;
    }
    let passed = unit.is_some() && inverses.iter().all(Option::is_some) && star;
    Ok(Outcome {
        json: None,
        report: json!({
            "input": a.name,
            "count": chars.len(),
            "total_count": set.total_count,
            "non_rational": set.non_rational,
            "labels": a.labels,
            "characters": chars.iter().map(|c| scalar_strings(&c.coeffs)).collect::<Vec<_>>(),
            "unit": unit,
            "inverses": inverses,
            "convolution_table": table,
        }),
        passed,
    })
}

fn corep_record(a: &FiniteQuantumGroup, i: usize, d: &CorepDecomposition) -> (Value, bool) {
    let eps = a.counit_functional();
    let normalized = (0..d.v.size).all(|r| {
        (0..d.v.size).all(|c| {
            let want = if r == c { ExactScalar::one() } else { ExactScalar::zero() };
            eps.as_ref().is_some_and(|e| e.eval(a, d.v.entry(r, c)).ok() == Some(want))
        })
    });
    let reconstructs = d.reconstruct() == d.x;
    let w_ok = verify_corepresentation(a, &d.w);
    let v_ok = verify_corepresentation(a, &d.v);
    let passed = reconstructs && w_ok && v_ok && normalized;
    let coefficients: Vec<Vec<String>> = d.coefficients.iter().map(|r| scalar_strings(r)).collect();
    (
        json!({
            "x": a.labels[i],
            "index": i,
            "size": d.w.size,
            "coefficients": coefficients,
            "w": to_value(&d.w.to_json()),
            "v": to_value(&d.v.to_json()),
            "reconstructs": reconstructs,
            "w_is_corepresentation": w_ok,
            "v_is_corepresentation": v_ok,
            "counit_normalized": normalized,
        }),
        passed,
    )
}

/// Every corepresentation object (`{"size", "entries"}`) inside a report.
fn collect_coreps(v: &Value, out: &mut Vec<finite::CorepJson>) -> Result<(), Failure> {
    match v {
        Value::Object(map) if map.contains_key("size") && map.contains_key("entries") => {
            out.push(serde_json::from_value(v.clone()).map_err(|e| Failure::Usage(format!("corepresentation: {e}")))?);
        }
        Value::Object(map) => {
            for key in ["w", "v", "records"] {
                if let Some(x) = map.get(key) {
                    collect_coreps(x, out)?;
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                collect_coreps(x, out)?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn cmd_corep(args: &CorepArgs) -> Result<Outcome, Failure> {
    let a = load(&args.input.input)?;
    if let Some(path) = &args.verify {
        let v: Value = serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        let mut found = Vec::new();
        collect_coreps(&v, &mut found)?;
        if found.is_empty() {
            return Err(Failure::Usage(format!("{path} contains no corepresentation")));
        }
        let results: Vec<bool> = found
            .iter()
            .map(|j| Corepresentation::from_json(j, a.dim).map(|w| verify_corepresentation(&a, &w)))
            .collect::<Result<_, _>>()?;
        let passed = results.iter().all(|&b| b);
        return Ok(Outcome {
            report: json!({"input": a.name, "checked": results.len(), "verified": results}),
            json: None,
            passed,
        });
    }
    let indices: Vec<usize> = if args.all {
        (0..a.dim).collect()
    } else if let Some(i) = args.basis {
        if i >= a.dim {
            return Err(Failure::Usage(format!("basis index {i} out of range for dimension {}", a.dim)));
        }
        vec![i]
    } else if let Some(l) = &args.label {
        let i = a.labels.iter().position(|x| x == l).ok_or_else(|| {
            Failure::Usage(format!("no basis element labelled {l:?}; labels are {}", a.labels.join(", ")))
        })?;
        vec![i]
    } else {
        return Err(Failure::Usage("give --basis, --label, --all or --verify".into()));
    };
    let mut records = Vec::new();
    let mut passed = true;
    for i in indices {
        let d = corep_decompose(&a, &a.basis_element(i))?;
        let (rec, ok) = corep_record(&a, i, &d);
        passed &= ok;
        records.push(rec);
    }
    let report = if records.len() == 1 && !args.all {
        let mut r = records.pop().unwrap();
        r["input"] = json!(a.name);
        r
    } else {
        json!({"input": a.name, "records": records})
    };
    Ok(Outcome { report, json: None, passed })
}

fn cmd_tensor(left: &str, right: &str) -> Result<Outcome, Failure> {
    let t = tensor_product(&load(left)?, &load(right)?);
    Ok(Outcome::ok(fqg_value(&t)))
}

fn cmd_bundled(name: Option<&str>) -> Result<Outcome, Failure> {
    match name {
        None => Ok(Outcome::ok(json!({"bundled": bundled_names()}))),
        Some(n) => Ok(Outcome::ok(fqg_value(&bundled(n)?))),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::CheckAxioms(input) => cmd_check_axioms(input),
        Command::Kesten(args) => cmd_kesten(args),
        Command::Condition5(args) => cmd_condition5(args),
        Command::HaarSuq2 { q, monomial } => cmd_haar_suq2(q, monomial),
        Command::Suq2Witness { q, n_max } => cmd_suq2_witness(q, *n_max),
        Command::NormalForm { q, word } => cmd_normal_form(q, word),
        Command::Reduce(input) => cmd_reduce(input),
        Command::Gns { input, state } => cmd_gns(input, *state),
        Command::Characters(input) => cmd_characters(input),
        Command::Corep(args) => cmd_corep(args),
        Command::Tensor { left, right } => cmd_tensor(left, right),
        Command::Bundled { name } => cmd_bundled(name.as_deref()),
    }
}

fn render(outcome: &Outcome, format: Format) -> String {
    match (format, &outcome.json) {
        (Format::Json, Some(text)) => text.clone(),
        (Format::Json, None) => serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n",
        (Format::Tsv, _) => tsv_lines(&outcome.report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = render(&outcome, cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
