use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use aterm::algebra::{clear_denominators, Polynomial};
use aterm::term::{parse, Assignment};
use aterm::{
    fixture, fixtures, gf_shift, synthesize, verify_fixture, verify_term, BigInt, BigUint, Error, Recurrence,
    SynthOptions, Term, TermFormat, VerificationReport,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aterm", version, about = "Arithmetic terms for C-recursive integer sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize a term for a recurrence given as a JSON spec (file, `-` for stdin, or inline)
    Synth {
        spec: String,
        #[arg(long, default_value_t = 40)]
        horizon: usize,
        #[arg(long)]
        force_b: Option<BigInt>,
        #[arg(long)]
        force_c: Option<BigInt>,
        #[arg(long, default_value = "text")]
        format: TermFormat,
    },
    /// Evaluate a term
    Eval {
        term: String,
        #[arg(long)]
        n: Option<u64>,
        /// Extra variable bindings, `name=value`
        #[arg(long = "env", value_parser = parse_binding)]
        env: Vec<(String, BigUint)>,
    },
    /// Check a term against a recurrence over an index range
    Verify {
        #[arg(long, conflicts_with_all = ["synth", "spec"])]
        fixture: Option<String>,
        /// JSON written by `synth --format json`
        #[arg(long, conflicts_with = "spec")]
        synth: Option<String>,
        #[arg(long, requires = "term")]
        spec: Option<String>,
        #[arg(long)]
        term: Option<String>,
        #[arg(long, default_value_t = BigInt::from(0))]
        c: BigInt,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long, default_value_t = 40)]
        to: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the generating function with integer coefficients
    Gf {
        spec: String,
        #[arg(long)]
        shift: Option<BigInt>,
    },
    /// Print s(0), .., s(N)
    Expand {
        spec: String,
        #[arg(long)]
        n: usize,
    },
    /// Built-in examples
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { id: String },
    /// All fixtures as a JSON array
    Export,
}

fn parse_binding(s: &str) -> Result<(String, BigUint), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v = v.trim().parse::<BigUint>().map_err(|e| format!("bad value `{v}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Usage(String),
    Lib(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mismatch { .. } => {
                eprintln!("error: {e}");
                Failure::Mismatch
            }
            e => Failure::Lib(e),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read_source(src: &str) -> Result<String, Failure> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else if src.trim_start().starts_with('{') {
        Ok(src.to_string())
    } else {
        fs::read_to_string(src).map_err(|e| Failure::Usage(format!("{src}: {e}")))
    }
}

fn load_spec(src: &str) -> Result<Recurrence, Failure> {
    Ok(Recurrence::from_spec_str(&read_source(src)?)?)
}

fn wrap(p: &Polynomial<BigInt>, terms: usize) -> String {
    if terms > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

fn gf(spec: &str, shift: Option<BigInt>) -> CliResult {
    let rec = load_spec(spec)?;
    let mut f = rec.generating_function();
    if let Some(c) = shift {
        f = gf_shift(&f, &c);
    }
    let (a, b) = clear_denominators(&f);
    let count = |p: &Polynomial<BigInt>| p.coeffs().iter().filter(|c| **c != BigInt::from(0)).count();
    println!("{} / {}", wrap(&a, count(&a)), wrap(&b, count(&b)));
    Ok(())
}

fn synth(spec: &str, horizon: usize, force_b: Option<BigInt>, force_c: Option<BigInt>, format: TermFormat) -> CliResult {
    let rec = load_spec(spec)?;
    let opts = SynthOptions { horizon, force_b, force_c, ..SynthOptions::default() };
    let r = synthesize(&rec, &opts)?;
    match format {
        TermFormat::Json => println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json")),
        fmt => {
            println!("{}", r.term.render(fmt));
            println!("b={} c={}", r.b, r.c);
            let from = if r.valid_at_zero { 0 } else { r.valid_from };
            println!("valid from n={from}");
            println!("certificate: {}", r.certificate.to_json());
            println!("base certificate: {}", r.base_certificate.to_json());
        }
    }
    Ok(())
}

fn eval(src: &str, n: Option<u64>, env: Vec<(String, BigUint)>) -> CliResult {
    let term = parse(src)?;
    let mut a = match n {
        Some(n) => Assignment::n(n),
        None => Assignment::new(),
    };
    for (k, v) in env {
        a.set(&k, v);
    }
    println!("{}", term.evaluate(&a)?);
    Ok(())
}

fn report(r: &VerificationReport, as_json: bool) -> CliResult {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("json"));
    } else if let Some(f) = &r.first_failure {
        match (&f.got, &f.error) {
            (Some(got), _) => println!("FAIL at n={}: expected {}, got {}", f.n, f.expected, got),
            (None, e) => println!("FAIL at n={}: {}", f.n, e.as_deref().unwrap_or("evaluation error")),
        }
    } else {
        println!(
            "ok: {} indices in [{}, {}], peak {} bits, {} ms",
            r.checked,
            r.range.0,
            r.range.1,
            r.peak_bits,
            r.elapsed.as_millis()
        );
    }
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::Usage(format!("synthesis JSON lacks `{key}`")))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    fixture_id: Option<String>,
    synth_file: Option<String>,
    spec: Option<String>,
    term: Option<String>,
    c: BigInt,
    from: Option<usize>,
    to: usize,
    as_json: bool,
) -> CliResult {
    let (rec, term, c, default_from) = if let Some(id) = fixture_id {
        let f = fixture(&id)?;
        if from.is_none() {
            return report(&verify_fixture(&f, to.max(f.valid_from))?, as_json);
        }
        (f.recurrence, f.term, f.c, f.valid_from)
    } else if let Some(path) = synth_file {
        let v: Value = serde_json::from_str(&read_source(&path)?).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        let rec = Recurrence::from_spec_str(&field(&v, "recurrence")?.to_string())?;
        let term = match v.get("term_ast") {
            Some(ast) => Term::from_json(ast)?,
            None => parse(field(&v, "term")?.as_str().unwrap_or_default())?,
        };
        let c = field(&v, "c")?
            .as_str()
            .and_then(|s| s.parse::<BigInt>().ok())
            .ok_or_else(|| Failure::Usage("`c` must be an integer string".into()))?;
        let from = if v.get("valid_at_zero").and_then(Value::as_bool) == Some(true) { 0 } else { 1 };
        (rec, term, c, from)
    } else if let (Some(spec), Some(src)) = (spec, term) {
        (load_spec(&spec)?, parse(&src)?, c, 1)
    } else {
        return Err(Failure::Usage("give --fixture, --synth, or --spec with --term".into()));
    };
    let lo = from.unwrap_or(default_from);
    if lo > to {
        return Err(Failure::Usage(format!("empty range [{lo}, {to}]")));
    }
    let oracle = rec.eval_oracle(to)?;
    report(&verify_term(&oracle, &term, &c, (lo, to))?, as_json)
}

fn expand(spec: &str, n: usize) -> CliResult {
    let s = load_spec(spec)?.eval_oracle(n)?;
    let items: Vec<String> = s.values().iter().map(ToString::to_string).collect();
    println!("{}", items.join(", "));
    Ok(())
}

fn catalog(cmd: CatalogCmd) -> CliResult {
    match cmd {
        CatalogCmd::List => {
            for f in fixtures() {
                println!("{:<11} b={:<4} c={} {}", f.id, f.b, f.c, f.name);
            }
        }
        CatalogCmd::Show { id } => {
            let f = fixture(&id)?;
            println!("{}", serde_json::to_string_pretty(&f.to_json()).expect("json"));
        }
        CatalogCmd::Export => {
            let all: Vec<Value> = fixtures().iter().map(|f| f.to_json()).collect();
            println!("{}", serde_json::to_string_pretty(&json!(all)).expect("json"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Synth { spec, horizon, force_b, force_c, format } => synth(&spec, horizon, force_b, force_c, format),
        Cmd::Eval { term, n, env } => eval(&term, n, env),
        Cmd::Verify { fixture, synth, spec, term, c, from, to, json } => {
            verify(fixture, synth, spec, term, c, from, to, json)
        }
        Cmd::Gf { spec, shift } => gf(&spec, shift),
        Cmd::Expand { spec, n } => expand(&spec, n),
        Cmd::Catalog { cmd } => catalog(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(3),
        Err(Failure::Lib(Error::AllZero)) => {
            eprintln!("error: {}", Error::AllZero);
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
