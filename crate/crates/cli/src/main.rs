use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use complicial::axioms::SampleSpec;
use complicial::complex_core::{pushout_along_inflation, tensor, ChainMap, Complex};
use complicial::exec::Execution;
use complicial::format::{
    from_text, parse_chain_map, parse_complex, parse_conflation, parse_matrix, parse_periodic, parse_tower,
    to_canonical,
};
use complicial::frobenius::{cone, cylinder, split_idempotent, truncate, TruncationKind};
use complicial::homotopy::{contraction, find_homotopy, homology, is_homotopy_equivalence, is_quasi_iso, QisMode};
use complicial::qw::{ep_homology, euler_char, totalize};
use complicial::suite::{run_suite_with, Suite, SuiteReport};
use complicial::zlinalg::{smith_normal_form, IntMatrix};
use complicial::Error;

#[derive(Parser)]
#[command(
    name = "complicial",
    version,
    about = "Exact computations with bounded chain complexes over the integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output style: human-readable text or canonical JSON documents.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    BrutalGe,
    BrutalLt,
    SmartGe,
    SmartLt,
}

impl From<Kind> for TruncationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::BrutalGe => TruncationKind::BrutalGe,
            Kind::BrutalLt => TruncationKind::BrutalLt,
            Kind::SmartGe => TruncationKind::SmartGe,
            Kind::SmartLt => TruncationKind::SmartLt,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Homological,
    Cone,
    Both,
}

/// Files are JSON documents; `-` or a missing path reads standard input.
#[derive(Subcommand)]
enum Command {
    /// Parse and validate any document.
    Validate { file: Option<PathBuf> },
    /// Homology of a complex, or of an eventually periodic complex up to a degree.
    Homology {
        file: Option<PathBuf>,
        /// Last degree to report for eventually periodic input.
        #[arg(long)]
        upto: Option<i64>,
    },
    /// Smith normal form of a matrix.
    Snf { file: Option<PathBuf> },
    /// Tensor product of two complexes.
    Tensor { a: PathBuf, b: PathBuf },
    /// Translation `T^k x`.
    Shift {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        by: i64,
    },
    /// Mapping cone of a chain map.
    Cone { file: Option<PathBuf> },
    /// Mapping cylinder of a chain map with its factorization.
    Cyl { file: Option<PathBuf> },
    /// Brutal or smart truncation at degree `k`.
    Truncate {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Kind::SmartGe)]
        kind: Kind,
    },
    /// Whether a chain map is a quasi-isomorphism.
    Qis {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Whether a complex is contractible, with a contraction.
    Contractible { file: Option<PathBuf> },
    /// Whether a map is a homotopy equivalence, or whether two maps are homotopic.
    Hoeq { f: PathBuf, g: Option<PathBuf> },
    /// Pushout of `f` along a degreewise split inflation `i` with the same source.
    Pushout { i: PathBuf, f: PathBuf },
    /// Splitting `x ≅ im(e) ⊕ ker(e)` of a strict idempotent.
    IdemSplit { file: Option<PathBuf> },
    /// Run a named batch of seeded checks.
    Suite {
        /// Suite name, or `all`.
        name: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 3)]
        max_degree_span: usize,
        #[arg(long, default_value_t = 3)]
        max_entry: u64,
        /// Evaluate instances on one thread.
        #[arg(long)]
        sequential: bool,
        /// List the suite names.
        #[arg(long)]
        list: bool,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn doc_kind(text: &str) -> Result<String, Failure> {
    let v: Value = from_text(text)?;
    v.get("format")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| Failure("document has no `format` field".into()))
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn complex_text(x: &Complex) -> String {
    let mut s = String::new();
    match x.support() {
        None => s.push_str("zero complex\n"),
        Some((lo, hi)) => {
            let _ = writeln!(s, "complex on degrees {lo}..{hi}");
            for n in lo..=hi {
                let _ = writeln!(s, "  rank {n}: {}", x.rank(n));
            }
            for n in lo..hi {
                let d = x.d(n);
                if !d.is_zero() {
                    let _ = writeln!(s, "  d^{n} = {}", matrix_text(&d));
                }
            }
        }
    }
    s
}

fn map_text(name: &str, f: &ChainMap) -> String {
    let mut s = format!("{name}:\n");
    for (n, m) in f.components() {
        let _ = writeln!(s, "  {name}^{n} = {}", matrix_text(m));
    }
    if f.components().is_empty() {
        s.push_str("  zero\n");
    }
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn components(m: &BTreeMap<i64, IntMatrix>) -> Value {
    Value::Array(
        m.iter()
            .map(|(n, a)| json!({"degree": n, "matrix": serde_json::to_value(a).expect("matrices serialize")}))
            .collect(),
    )
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

/// Output in both styles; `machine` is rendered canonically.
struct Output {
    text: String,
    machine: Value,
}

fn execute(cli: &Cli) -> Result<(Output, bool), Failure> {
    let out = |text: String, machine: Value| Ok((Output { text, machine }, true));
    match &cli.command {
        Command::Validate { file } => {
            let text = read(file.as_ref())?;
            let kind = doc_kind(&text)?;
            match kind.as_str() {
                "complex" => drop(parse_complex(&text)?),
                "chain_map" => drop(parse_chain_map(&text)?),
                "conflation" => drop(parse_conflation(&text)?),
                "matrix" => drop(parse_matrix(&text)?),
                "tower" => drop(parse_tower(&text)?),
                "eventually_periodic" => drop(parse_periodic(&text)?),
                other => return Err(Failure(format!("unknown document format `{other}`"))),
            }
            out(format!("valid {kind}\n"), json!({"valid": true, "format": kind}))
        }
        Command::Homology { file, upto } => {
            let text = read(file.as_ref())?;
            let groups: Vec<(i64, String, Value)> = if doc_kind(&text)? == "eventually_periodic" {
                let x = parse_periodic(&text)?;
                let hi = upto.unwrap_or(x.threshold() + 2 * x.period() as i64);
                (x.lo()..=hi)
                    .map(|n| {
                        let g = ep_homology(&x, n);
                        (n, g.to_string(), value(g.normal_form()))
                    })
                    .collect()
            } else {
                let x = match doc_kind(&text)?.as_str() {
                    "tower" => totalize(&parse_tower(&text)?),
                    _ => parse_complex(&text)?,
                };
                let h = homology(&x);
                h.degrees()
                    .map(|n| {
                        let g = h.normal_form(n);
                        (n, g.to_string(), value(&g))
                    })
                    .collect()
            };
            let mut s = String::new();
            for (n, g, _) in &groups {
                let _ = writeln!(s, "H^{n} = {g}");
            }
            if groups.is_empty() {
                s.push_str("all homology vanishes\n");
            }
            let machine = Value::Array(
                groups
                    .into_iter()
                    .map(|(n, _, v)| json!({"degree": n, "group": v}))
                    .collect(),
            );
            out(s, json!({"homology": machine}))
        }
        Command::Snf { file } => {
            let a = parse_matrix(&read(file.as_ref())?)?;
            let snf = smith_normal_form(&a);
            let factors: Vec<String> = snf.invariant_factors().iter().map(|t| t.to_string()).collect();
            out(
                format!("rank {}\ninvariant factors: [{}]\n", snf.rank, factors.join(", ")),
                json!({
                    "rank": snf.rank,
                    "invariant_factors": factors,
                    "u": value(&snf.u),
                    "s": value(&snf.s),
                    "v": value(&snf.v),
                }),
            )
        }
        Command::Tensor { a, b } => {
            let x = parse_complex(&read(Some(a))?)?;
            let y = parse_complex(&read(Some(b))?)?;
            let t = tensor(&x, &y);
            out(complex_text(&t), value(&t))
        }
        Command::Shift { file, by } => {
            let x = parse_complex(&read(file.as_ref())?)?.shift_by(*by);
            out(complex_text(&x), value(&x))
        }
        Command::Cone { file } => {
            let f = parse_chain_map(&read(file.as_ref())?)?;
            let c = cone(&f);
            out(complex_text(c.cone()), value(c.cone()))
        }
        Command::Cyl { file } => {
            let f = parse_chain_map(&read(file.as_ref())?)?;
            let c = cylinder(&f);
            let fac = &c.factorization;
            let text = format!(
                "{}{}{}",
                complex_text(&fac.middle),
                map_text("alpha", &fac.first),
                map_text("beta", &fac.second)
            );
            out(
                text,
                json!({"cylinder": value(&*fac.middle), "alpha": value(&fac.first), "beta": value(&fac.second),
                       "conflation": value(&c.conflation)}),
            )
        }
        Command::Truncate { file, k, kind } => {
            let x = parse_complex(&read(file.as_ref())?)?;
            let t = truncate(&x, *k, (*kind).into());
            out(
                complex_text(&t.complex),
                json!({"complex": value(&*t.complex), "map": value(&t.map)}),
            )
        }
        Command::Qis { file, mode } => {
            let f = parse_chain_map(&read(file.as_ref())?)?;
            let h = || is_quasi_iso(&f, QisMode::Homological);
            let c = || is_quasi_iso(&f, QisMode::Cone);
            let (answer, detail) = match mode {
                Mode::Homological => (h(), json!({"homological": h()})),
                Mode::Cone => (c(), json!({"cone": c()})),
                Mode::Both => {
                    let (a, b) = (h(), c());
                    if a != b {
                        return Err(Failure("the two deciders disagree".into()));
                    }
                    (a, json!({"homological": a, "cone": b}))
                }
            };
            out(
                format!("quasi-isomorphism: {}\n", yes(answer)),
                json!({"quasi_iso": answer, "deciders": detail}),
            )
        }
        Command::Contractible { file } => {
            let x = parse_complex(&read(file.as_ref())?)?;
            let s = contraction(&x);
            let text = format!("contractible: {}\n", yes(s.is_some()));
            let machine = json!({
                "contractible": s.is_some(),
                "euler_characteristic": euler_char(&x).value,
                "contraction": s.map(|h| components(h.components())),
            });
            out(text, machine)
        }
        Command::Hoeq { f, g } => {
            let f = parse_chain_map(&read(Some(f))?)?;
            match g {
                None => {
                    let b = is_homotopy_equivalence(&f);
                    out(
                        format!("homotopy equivalence: {}\n", yes(b)),
                        json!({"homotopy_equivalence": b}),
                    )
                }
                Some(g) => {
                    let g = parse_chain_map(&read(Some(g))?)?;
                    let s = find_homotopy(&f, &g)?;
                    out(
                        format!("homotopic: {}\n", yes(s.is_some())),
                        json!({"homotopic": s.is_some(), "homotopy": s.map(|h| components(h.components()))}),
                    )
                }
            }
        }
        Command::Pushout { i, f } => {
            let i = parse_chain_map(&read(Some(i))?)?;
            let f = parse_chain_map(&read(Some(f))?)?;
            let po = pushout_along_inflation(&i, &f)?;
            let text = format!(
                "{}{}{}",
                complex_text(po.object()),
                map_text("from_y", po.from_y()),
                map_text("from_z", po.from_z())
            );
            out(
                text,
                json!({"pushout": value(po.object()), "from_y": value(po.from_y()), "from_z": value(po.from_z())}),
            )
        }
        Command::IdemSplit { file } => {
            let e = parse_chain_map(&read(file.as_ref())?)?;
            let s = split_idempotent(&e)?;
            let text = format!(
                "image:\n{}kernel:\n{}verified: {}\n",
                complex_text(&s.image),
                complex_text(&s.kernel),
                yes(s.verify())
            );
            out(
                text,
                json!({"image": value(&s.image), "kernel": value(&s.kernel), "iso": value(&s.iso),
                       "inverse": value(&s.inverse), "verified": s.verify()}),
            )
        }
        Command::Suite {
            name,
            seed,
            count,
            max_rank,
            max_degree_span,
            max_entry,
            sequential,
            list,
        } => {
            if *list {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return out(names.join("\n") + "\n", json!(names));
            }
            let name = name
                .as_deref()
                .ok_or_else(|| Failure("a suite name is required (see --list)".into()))?;
            let suites: Vec<Suite> = if name == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![name.parse()?]
            };
            let spec = SampleSpec::new(*seed, *count).with_sizes(*max_degree_span, *max_rank, *max_entry);
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let reports: Vec<SuiteReport> = suites
                .into_iter()
                .map(|s| run_suite_with(s, &spec, exec))
                .collect::<Result<_, _>>()?;
            let pass = reports.iter().all(|r| r.pass);
            let text = reports.iter().map(SuiteReport::text).collect::<String>();
            let machine = if reports.len() == 1 {
                value(&reports[0])
            } else {
                json!({"pass": pass, "suites": value(&reports)})
            };
            Ok((Output { text, machine }, pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, pass) = match execute(&cli) {
        Ok(r) => r,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Text => output.text,
        Format::Machine => to_canonical(&output.machine),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
