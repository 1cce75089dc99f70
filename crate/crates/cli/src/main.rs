use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hodge_core::arith::rational::{fmt_rational, int, is_positive};
use hodge_core::certificates::{
    maximal_ideal_membership, nontriviality_symbolic_power, singular_multiplicity_bound, triviality_certificate,
    Decision,
};
use hodge_core::parser::{parse_divisor, parse_rational, parse_task, ParseError, TaskDocument};
use hodge_core::verifier::{run_suites, DEFAULT_SEED, SUITES};
use hodge_core::{
    compute_hodge_ideal, ComputeOptions, HodgeError, HodgeIdealResult, MonomialOrder, QDivisor, Rational,
};

#[derive(Parser)]
#[command(name = "hodge", version, about = "Hodge ideals of Q-divisors: compute, certify, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for all randomness (generic hyperplanes).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monomial order used to print ideals.
    #[arg(long, global = true, value_parser = ["grevlex", "lex", "grlex"])]
    order: Option<String>,
    /// Coefficients to substitute into a single-component divisor, e.g. 4/5,9/10.
    #[arg(long = "alpha-samples", global = true, value_delimiter = ',')]
    alpha_samples: Vec<String>,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute I_k(D), or I_0..I_{k_max}, from a task file ("-" for stdin).
    Compute { task: String },
    /// Evaluate the triviality and non-triviality criteria for a task file.
    Certify { task: String },
    /// Run property suites ("all" or names).
    Verify { suites: Vec<String> },
    /// Echo a divisor or task document in canonical form.
    Parse { file: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Input(String),
    Unavailable(String),
    Claims(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Claims(_) => 1,
            Failure::Input(_) => 2,
            Failure::Unavailable(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unavailable(m) | Failure::Claims(m) => m,
        }
    }
}

impl From<HodgeError> for Failure {
    fn from(e: HodgeError) -> Self {
        match e {
            HodgeError::MethodUnavailable(_) | HodgeError::NoClosedForm(_) => Failure::Unavailable(e.to_string()),
            HodgeError::Parse(p) => parse_failure(&p),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn parse_failure(e: &ParseError) -> Failure {
    Failure::Input(format!(
        "{} at bytes {}..{} (expected {})",
        e.message, e.span.start, e.span.end, e.expected
    ))
}

struct Output {
    json: Value,
    text: String,
    warnings: Vec<String>,
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load_task(path: &str) -> Result<TaskDocument, Failure> {
    parse_task(&read_input(path)?).map_err(|e| parse_failure(&e))
}

fn order_of(cli: &Cli, task: Option<&TaskDocument>) -> MonomialOrder {
    match &cli.order {
        Some(o) => MonomialOrder::from_str(o).expect("validated by clap"),
        None => task.and_then(|t| t.order).unwrap_or_default(),
    }
}

fn alpha_samples(cli: &Cli, task: &TaskDocument) -> Result<Vec<Rational>, Failure> {
    if cli.alpha_samples.is_empty() {
        return Ok(task.alpha_samples.clone());
    }
    cli.alpha_samples
        .iter()
        .map(|s| {
            let q = parse_rational(s.trim()).map_err(|e| parse_failure(&e))?;
            if !is_positive(&q) {
                return Err(Failure::Input(format!("alpha sample {s} must be positive")));
            }
            Ok(q)
        })
        .collect()
}

/// The task's divisor, or one divisor per alpha sample.
fn divisors(cli: &Cli, task: &TaskDocument) -> Result<Vec<QDivisor>, Failure> {
    let d = task.divisor.clone().ok_or_else(|| Failure::Input("the task has no divisor".into()))?;
    let samples = alpha_samples(cli, task)?;
    if samples.is_empty() {
        return Ok(vec![d]);
    }
    if d.components().len() != 1 {
        return Err(Failure::Input("alpha samples need a single-component divisor".into()));
    }
    let f = d.components()[0].f.clone();
    samples.into_iter().map(|a| Ok(QDivisor::single(&f, a)?)).collect()
}

fn divisor_json(d: &QDivisor) -> Value {
    json!({
        "vars": d.ring().vars(),
        "components": d.components().iter().map(|c| json!({
            "f": c.f.to_string(),
            "alpha": fmt_rational(&c.alpha),
        })).collect::<Vec<_>>(),
    })
}

fn generators(r: &HodgeIdealResult, order: MonomialOrder) -> Vec<String> {
    r.ideal.groebner_with(order).basis().iter().map(|g| g.to_string_with(order)).collect()
}

fn result_json(d: &QDivisor, r: &HodgeIdealResult, order: MonomialOrder) -> Value {
    json!({
        "divisor": d.to_string(),
        "k": r.k,
        "primed": r.primed,
        "method": r.method.name(),
        "exact": r.exact,
        "order": order.name(),
        "generators": generators(r, order),
        "notes": r.notes,
    })
}

fn result_text(d: &QDivisor, r: &HodgeIdealResult, order: MonomialOrder) -> String {
    let name = if r.primed { "I'" } else { "I" };
    let mut s = format!(
        "{name}_{}({d})\n  method  {}\n  exact   {}\n  order   {}\n  generators\n",
        r.k,
        r.method.name(),
        r.exact,
        order.name()
    );
    let gens = generators(r, order);
    if gens.is_empty() {
        s.push_str("    0\n");
    }
    for g in gens {
        s.push_str(&format!("    {g}\n"));
    }
    for n in &r.notes {
        s.push_str(&format!("  note    {n}\n"));
    }
    s
}

fn cmd_compute(cli: &Cli, path: &str) -> Result<Output, Failure> {
    let task = load_task(path)?;
    let order = order_of(cli, Some(&task));
    let ks: Vec<i64> = match (task.k, task.k_max) {
        (Some(k), None) => vec![k],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => return Err(Failure::Input("the task needs `k` or `k_max`".into())),
        (Some(_), Some(_)) => return Err(Failure::Input("give either `k` or `k_max`, not both".into())),
    };
    let opts = ComputeOptions { certificate: task.certificate, seed: task.i0.clone() };
    let mut items = Vec::new();
    let mut text = String::new();
    let mut warnings = Vec::new();
    for d in divisors(cli, &task)? {
        for &k in &ks {
            let r = compute_hodge_ideal(&d, k, task.method, &opts)?;
            if !r.exact {
                warnings.push(format!(
                    "I_{k}({d}) is a lower bound only: no generation-level certificate covers this step"
                ));
            }
            items.push(result_json(&d, &r, order));
            text.push_str(&result_text(&d, &r, order));
        }
    }
    Ok(Output { json: json!({ "results": items }), text, warnings })
}

fn decision_json(name: &str, d: &Decision) -> Value {
    json!({ "criterion": name, "status": d.status.name(), "lines": d.lines })
}

fn decision_text(name: &str, d: &Decision) -> String {
    let mut s = format!("{name}: {}\n", d.status.name());
    for l in &d.lines {
        s.push_str(&format!("    {l}\n"));
    }
    s
}

fn cmd_certify(cli: &Cli, path: &str) -> Result<Output, Failure> {
    let task = load_task(path)?;
    let k = task.k.unwrap_or(0);
    if k < 0 {
        return Err(Failure::Input("k must be non-negative".into()));
    }
    let mut items = Vec::new();
    let mut text = String::new();
    for d in divisors(cli, &task)? {
        let mut decisions = Vec::new();
        let (b, _) = d.periodic_reduce()?;
        if let Some(res) = &task.resolution {
            let dec = triviality_certificate(res, &b.alphas(), k)?;
            decisions.push(("triviality", dec));
        }
        let g = d.support().g;
        let mult_z = g.order_at_origin().unwrap_or(0) as u64;
        if mult_z >= 1 {
            let mult_d: Rational =
                d.components().iter().map(|c| &c.alpha * int(c.f.order_at_origin().unwrap_or(0) as i64)).sum();
            let first = &d.components()[0].alpha;
            let alpha_multiple = d.components().iter().all(|c| &c.alpha == first);
            let dec = maximal_ideal_membership(d.n() as u64, mult_z, &mult_d, k as u64, alpha_multiple);
            decisions.push(("maximal-ideal-membership", dec));
            if mult_z >= 2 {
                let n = d.n() as u64;
                let bound = singular_multiplicity_bound(n, mult_z, k as u64);
                let line = if (k as u64) >= n {
                    format!("({k}-{n}+1)({mult_z}-1) = {bound}")
                } else {
                    format!("k = {k} < n = {n}: no bound")
                };
                let status = if bound > 0 {
                    hodge_core::certificates::Status::Contained
                } else {
                    hodge_core::certificates::Status::Inconclusive
                };
                decisions.push(("singular-multiplicity", Decision { status, lines: vec![line] }));
            }
        }
        let mut entry = json!({
            "divisor": divisor_json(&d),
            "k": k,
            "decisions": decisions.iter().map(|(n, dec)| decision_json(n, dec)).collect::<Vec<_>>(),
        });
        text.push_str(&format!("{d}, k = {k}\n"));
        for (n, dec) in &decisions {
            text.push_str(&format!("  {}", decision_text(n, dec)));
        }
        if let Some(md) = &task.multiplicity {
            let sp = nontriviality_symbolic_power(md, k as u64);
            entry["symbolic_power"] = json!({ "q": sp.q, "verified": sp.verified, "lines": sp.lines });
            text.push_str(&format!("  symbolic-power: q = {} (verified {})\n", sp.q, sp.verified));
            for l in &sp.lines {
                text.push_str(&format!("    {l}\n"));
            }
        }
        items.push(entry);
    }
    Ok(Output { json: json!({ "certificates": items }), text, warnings: Vec::new() })
}

fn cmd_verify(cli: &Cli, suites: &[String]) -> Result<Output, Failure> {
    let names: Vec<&str> = if suites.is_empty() || suites.iter().any(|s| s == "all") {
        SUITES.to_vec()
    } else {
        suites.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(Failure::Input(format!("unknown suite `{bad}`; expected all or one of {}", SUITES.join(", "))));
    }
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let report = run_suites(&names, seed)?.sorted();
    let mut text = String::new();
    for v in &report.verdicts {
        let status = serde_json::to_value(v.status).expect("status serializes");
        text.push_str(&format!(
            "{:<9} {:<26} {} | {}\n",
            status.as_str().unwrap_or(""),
            v.claim,
            v.instance,
            v.detail
        ));
    }
    let json = json!({
        "seed": seed,
        "suites": names,
        "passed": report.passed(),
        "verdicts": report.verdicts,
    });
    if !report.passed() {
        let failed = report.failures().count();
        return Err(Failure::Claims(format!("{failed} required claims failed\n{}", text)));
    }
    Ok(Output { json, text, warnings: Vec::new() })
}

fn cmd_parse(path: &str) -> Result<Output, Failure> {
    let input = read_input(path)?;
    let d = match parse_task(&input) {
        Ok(t) if t.divisor.is_some() => t.divisor.expect("checked"),
        _ => parse_divisor(&input).map_err(|e| parse_failure(&e))?,
    };
    let warnings = d.validate();
    let mut json = divisor_json(&d);
    json["support"] = json!(d.support().g.to_string());
    json["warnings"] = json!(warnings);
    let text = format!("{d}\n  vars     {}\n  support  {}\n", d.ring(), d.support().g);
    Ok(Output { json, text, warnings })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Compute { task } => cmd_compute(cli, task),
        Command::Certify { task } => cmd_certify(cli, task),
        Command::Verify { suites } => cmd_verify(cli, suites),
        Command::Parse { file } => cmd_parse(file),
    }
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let body = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json serializes")),
        Format::Text => out.text.clone(),
    };
    match &cli.output {
        Some(p) => fs::write(p, body),
        None => io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
