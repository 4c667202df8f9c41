mod checks;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kops::complexes::{ComplexData, Multicomplex};
use kops::derived::{binary_functor, induced_fn};
use kops::functor::FunctorSpec;
use kops::symfunc::{lambda_universal_check, universal_prs};
use kops::witness::{product_vanishing_witness, shift_witness, WitnessChain};
use serde_json::{json, Value};

use report::RunReport;

#[derive(Parser)]
#[command(name = "kops", version, about = "Exterior powers of binary complexes, Dold–Kan transport and λ-ring checks")]
struct Cli {
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Rerun a worked example: ex-invertible, ex-counterexample, ex-shift, ex-axiom2, ex-axiom3 or all.
    Reproduce {
        target: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        x: Option<i64>,
    },
    /// Apply a functor (e.g. L2, S2, L2@L2) to a complex file.
    Derive {
        input: PathBuf,
        #[arg(long)]
        spec: String,
        /// Expected dimension of the input (the level n of F_n).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Homology of a one-dimensional complex, and acyclicity of every choice.
    Homology { input: PathBuf },
    /// P_{r,s} in the elementary basis.
    Plethysm { r: usize, s: usize },
    /// λ-ring axioms on the universal ring up to a weighted degree.
    LambdaCheck {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Seeded property sweep over all modules.
    Selftest {
        #[arg(long, default_value_t = 10)]
        rounds: usize,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Build a relation chain for a binary complex (shift) or a pair of them (product).
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        input: PathBuf,
        second: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// 1-based direction for shifts.
        #[arg(long, default_value_t = 1)]
        direction: usize,
    },
    /// Replay a serialized chain.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Shift,
    Product,
}

/// Input problems (exit 2) versus failed checks (exit 1).
enum Failure {
    Input(String),
    Check(String),
}

impl From<kops::Error> for Failure {
    fn from(e: kops::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Output {
    text: String,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<ComplexData, Failure> {
    ComplexData::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn emit_report(report: RunReport, start: Instant, format: Format) -> Output {
    let report = report.finish(start.elapsed());
    let ok = report.passed();
    let text = match format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
        Format::Text => report.to_text(),
    };
    Output { text, ok }
}

fn lengths(m: &Multicomplex) -> usize {
    m.length().into_iter().max().unwrap_or(0)
}

fn derive(input: &Path, spec: &str, level: Option<usize>, format: Format) -> Result<Output, Failure> {
    let data = read_complex(input)?;
    let f: FunctorSpec = spec.parse()?;
    if let Some(n) = level {
        if n != data.dim() {
            return Err(Failure::Input(format!("--level {n} but the input has dimension {}", data.dim())));
        }
    }
    let (out, in_len, acyclic) = match &data {
        ComplexData::Plain(m) => {
            let v = m.validate();
            if let Some(x) = v.first() {
                return Err(Failure::Input(format!("invalid input: {x}")));
            }
            let o = induced_fn(&f, m, None)?;
            let a = o.is_acyclic();
            (ComplexData::Plain(o), lengths(m), a)
        }
        ComplexData::Binary(b) => {
            if let Some(x) = b.validate().first() {
                return Err(Failure::Input(format!("invalid input: {x}")));
            }
            let o = binary_functor(&f, b, None)?;
            let a = o.is_acyclic();
            let len = lengths(&b.choice(&vec![false; b.dim()]));
            (ComplexData::Binary(o), len, a)
        }
    };
    let out_len = match &out {
        ComplexData::Plain(m) => lengths(m),
        ComplexData::Binary(b) => lengths(&b.choice(&vec![false; b.dim()])),
    };
    let bound = f.degree() as usize * in_len;
    let verification = json!({"acyclic": acyclic, "length": out_len, "bound": bound});
    let ok = out_len <= bound;
    let text = match format {
        Format::Json => pretty(&json!({"complex": out.to_json(), "verification": verification})),
        Format::Text => format!(
            "{}\nacyclic: {acyclic}\nlength: {out_len} (bound {bound})\n",
            serde_json::to_string(&out.to_json()).expect("values serialize")
        ),
    };
    Ok(Output { text, ok })
}

fn homology(input: &Path, format: Format) -> Result<Output, Failure> {
    let b = read_complex(input)?.into_binary();
    if let Some(x) = b.validate().first() {
        return Err(Failure::Input(format!("invalid input: {x}")));
    }
    let choices: Vec<Value> = kops::complexes::BinaryMulticomplex::all_choices(b.dim())
        .iter()
        .map(|sel| {
            let m = b.choice(sel);
            let groups: Vec<String> = if b.dim() == 1 { m.to_chain().homology_all().iter().map(ToString::to_string).collect() } else { vec![] };
            json!({"choice": sel.iter().map(|&t| if t { "d_tilde" } else { "d" }).collect::<Vec<_>>(), "acyclic": m.is_acyclic(), "homology": groups})
        })
        .collect();
    let text = match format {
        Format::Json => pretty(&json!({"dimension": b.dim(), "choices": choices})),
        Format::Text => {
            let mut s = String::new();
            for c in &choices {
                let sel: Vec<&str> = c["choice"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                s.push_str(&format!("{}: acyclic {}", sel.join(","), c["acyclic"]));
                if let Some(h) = c["homology"].as_array().filter(|h| !h.is_empty()) {
                    let parts: Vec<String> = h.iter().enumerate().map(|(i, g)| format!("H_{i} = {}", g.as_str().unwrap_or(""))).collect();
                    s.push_str(&format!("; {}", parts.join(", ")));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Output { text, ok: true })
}

fn plethysm(r: usize, s: usize, format: Format) -> Result<Output, Failure> {
    if r == 0 || s == 0 || r * s > 9 {
        return Err(Failure::Input(format!("need r, s ≥ 1 and rs ≤ 9, got r = {r}, s = {s}")));
    }
    let p = universal_prs(r, s);
    let name = |i: usize| format!("X{}", i + 1);
    let text = p.display_with(&name);
    let out = match format {
        Format::Json => {
            let terms: Vec<Value> = p
                .terms()
                .iter()
                .rev()
                .map(|(m, c)| json!({"coefficient": kops::json::bigint_to_value(c), "exponents": m}))
                .collect();
            pretty(&json!({"r": r, "s": s, "variables": r * s, "terms": terms, "text": text}))
        }
        Format::Text => format!("P_{{{r},{s}}} = {text}\n"),
    };
    Ok(Output { text: out, ok: true })
}

fn lambda_check(max_degree: usize, format: Format) -> Result<Output, Failure> {
    if max_degree == 0 || max_degree > 8 {
        return Err(Failure::Input(format!("--max-degree must be in 1..=8, got {max_degree}")));
    }
    let report = lambda_universal_check(max_degree);
    let ok = report.all_passed();
    let text = match format {
        Format::Json => {
            let summary: Vec<Value> = (0..=3u8)
                .map(|a| {
                    let (p, n) = report.passed_for(a);
                    json!({"axiom": a, "passed": p, "total": n})
                })
                .collect();
            pretty(&json!({"max_degree": max_degree, "passed": ok, "axioms": summary, "checks": report.checks}))
        }
        Format::Text => {
            let mut s = String::new();
            for a in 0..=3u8 {
                let (p, n) = report.passed_for(a);
                let label = if a == 0 { "λ^1 = id".to_string() } else { format!("axiom ({a})") };
                s.push_str(&format!("{} {label}: {p}/{n}\n", if p == n { "PASS" } else { "FAIL" }));
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                s.push_str(&format!("  failed: {}\n", c.label));
            }
            s
        }
    };
    Ok(Output { text, ok })
}

fn witness(cmd: &WitnessCommand, format: Format) -> Result<Output, Failure> {
    match cmd {
        WitnessCommand::Gen { kind, input, second, k, direction } => {
            let n = read_complex(input)?.into_binary();
            let chain = match kind {
                Kind::Shift => {
                    if *direction == 0 || *direction > n.dim() {
                        return Err(Failure::Input(format!("direction {direction} out of range 1..={}", n.dim())));
                    }
                    shift_witness(&n, *k, direction - 1)?
                }
                Kind::Product => {
                    let path = second.as_ref().ok_or_else(|| Failure::Input("product needs a second complex".into()))?;
                    let q = read_complex(path)?.into_binary();
                    product_vanishing_witness(&n, &q)?
                }
            };
            Ok(Output { text: pretty(&chain.to_json()), ok: true })
        }
        WitnessCommand::Check { file } => {
            let chain = WitnessChain::parse(&read(file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let report = chain.check();
            let ok = report.is_valid();
            let messages = report.messages();
            let text = match format {
                Format::Json => pretty(&json!({
                    "valid": ok,
                    "objects": chain.objects.len(),
                    "sequences": chain.ses_count(),
                    "diagonal": chain.diagonal_count(),
                    "claim": chain.claim.to_string(),
                    "failures": messages,
                })),
                Format::Text => {
                    let mut s = format!(
                        "{}: {} objects, {} sequences, {} diagonal witnesses, claim {}\n",
                        if ok { "valid" } else { "INVALID" },
                        chain.objects.len(),
                        chain.ses_count(),
                        chain.diagonal_count(),
                        chain.claim
                    );
                    for m in &messages {
                        s.push_str(&format!("  {m}\n"));
                    }
                    s
                }
            };
            Ok(Output { text, ok })
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let start = Instant::now();
    match &cli.command {
        Command::Reproduce { target, r, x } => {
            let mut report = RunReport::new(format!("reproduce {target}"), cli.seed);
            checks::reproduce(&mut report, target, cli.seed, *r, *x)?;
            Ok(emit_report(report, start, cli.format))
        }
        Command::Derive { input, spec, level } => derive(input, spec, *level, cli.format),
        Command::Homology { input } => homology(input, cli.format),
        Command::Plethysm { r, s } => plethysm(*r, *s, cli.format),
        Command::LambdaCheck { max_degree } => lambda_check(*max_degree, cli.format),
        Command::Witness(w) => witness(w, cli.format),
        Command::Selftest { rounds } => {
            let mut report = RunReport::new(format!("selftest --rounds {rounds}"), cli.seed);
            checks::selftest(&mut report, cli.seed, *rounds)?;
            Ok(emit_report(report, start, cli.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        if out.ok {
            Ok(())
        } else {
            Err(Failure::Check("checks failed".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("kops: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("kops: {m}");
            ExitCode::from(2)
        }
    }
}
