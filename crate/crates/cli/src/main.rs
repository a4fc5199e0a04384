use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crtour::cr::CR_CAP;
use crtour::enumerate::Limits;
use crtour::format::{parse_tournament, to_trn, to_trn_inline};
use crtour::verify::{run_suite, SuiteReport};
use crtour::zmatrix::{delta_total, diagonal_vector, row_sums, run_boundaries};
use crtour::{
    blowup, classify_d5, decompose_over_ln, decompose_transitive_blowup, enumerate_tournaments,
    extend, gen_ln, gen_ln_minus, is_basic, is_cr_tournament, is_strong_cr, max_subtournament_det,
    tournament_det, transitive_blowup, z_matrix, BlowupSpec, DominatingRelation, Error, Tournament,
    VertexSet, SUITES,
};

/// Version tag carried by every JSON document.
const SCHEMA_VERSION: u32 = 1;
const USAGE_HINT: &str = "For usage, run `crtour --help` or `crtour <COMMAND> --help`.";

#[derive(Parser)]
#[command(
    name = "crtour",
    version,
    about = "Tournament determinants, switching classes and CR tournaments"
)]
struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant, maximal minor, D_k class, basic and CR flags.
    Analyze { input: String },
    /// Print a named tournament in .trn form.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Switch with respect to a vertex set (1-based).
    Switch {
        input: String,
        #[arg(long, value_delimiter = ',')]
        w: Vec<usize>,
    },
    /// Blow up a base tournament.
    Blowup {
        base: String,
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "parts",
            required_unless_present = "parts"
        )]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        parts: Vec<String>,
    },
    /// Add a vertex with the given dominating relation.
    Extend {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Run one predicate.
    Check(CheckArgs),
    /// Decompose as a switched transitive blowup.
    Decompose {
        input: String,
        /// `ln:K` or a tournament; omitted, the D_5 classifier picks the base.
        #[arg(long)]
        base: Option<String>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List labeled tournaments or isomorphism classes of order N.
    Enumerate {
        n: usize,
        #[arg(long)]
        classes: bool,
    },
    /// Print the Z-matrix Z(M, r).
    Zmat {
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        diagonals: bool,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// L_N, or L_N^- with --minus.
    Ln {
        n: usize,
        #[arg(long)]
        minus: bool,
    },
    Transitive {
        n: usize,
    },
    /// The six-vertex tournament in D_7\D_5 that is not an L_8 blowup.
    D7,
}

#[derive(Args)]
struct CheckArgs {
    input: String,
    #[command(flatten)]
    predicate: Predicate,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Predicate {
    #[arg(long)]
    cr: bool,
    #[arg(long)]
    basic: bool,
    #[arg(long)]
    strong_cr: bool,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n{USAGE_HINT}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::InvalidArgument(_) => {
                    eprintln!("{USAGE_HINT}");
                    2
                }
                Error::ResourceLimit { .. } => 3,
                Error::TheoremViolation(_) | Error::ArithmeticOverflow => 1,
            })
        }
    }
}

/// `-` reads stdin, `ln:K` / `ln-:K` build `L_K` / `L_K^-`, anything else is a file.
fn load(spec: &str) -> Result<Tournament, Failure> {
    if let Some(k) = spec.strip_prefix("ln:") {
        return Ok(gen_ln(parse_num(k)?)?);
    }
    if let Some(k) = spec.strip_prefix("ln-:") {
        return Ok(gen_ln_minus(parse_num(k)?)?);
    }
    let text = if spec == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("reading {spec}: {e}")))?
    };
    Ok(parse_tournament(&text)?)
}

fn parse_num(s: &str) -> Result<usize, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{s:?} is not a non-negative integer")))
}

fn emit(json_mode: bool, doc: Value, text: impl FnOnce() -> String) {
    if json_mode {
        let mut doc = doc;
        if let Value::Object(m) = &mut doc {
            m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        }
        let body = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
        write_stdout(&(body + "\n"));
    } else {
        write_stdout(&text());
    }
}

fn write_stdout(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(1);
    }
}

fn emit_tournament(json_mode: bool, t: &Tournament) {
    emit(
        json_mode,
        json!({ "order": t.order(), "trn": to_trn_inline(t) }),
        || to_trn(t),
    );
}

fn run(cli: &Cli) -> Outcome {
    let j = cli.json;
    match &cli.command {
        Command::Analyze { input } => analyze(j, &load(input)?),
        Command::Gen { family } => {
            let t = match family {
                Family::Ln { n, minus: false } => gen_ln(*n)?,
                Family::Ln { n, minus: true } => gen_ln_minus(*n)?,
                Family::Transitive { n } => Tournament::transitive(*n)?,
                Family::D7 => crtour::verify::d7_example(),
            };
            emit_tournament(j, &t);
            Ok(())
        }
        Command::Switch { input, w } => {
            let t = load(input)?;
            let mut set = VertexSet::EMPTY;
            for &v in w {
                if v == 0 || v > t.order() {
                    return Err(Failure::Usage(format!(
                        "vertex {v} outside 1..={}",
                        t.order()
                    )));
                }
                set.insert(v - 1);
            }
            emit_tournament(j, &t.switch(set)?);
            Ok(())
        }
        Command::Blowup { base, sizes, parts } => {
            let b = load(base)?;
            let t = if parts.is_empty() {
                transitive_blowup(&b, sizes)?
            } else {
                let parts = parts
                    .iter()
                    .map(|p| load(p))
                    .collect::<Result<Vec<_>, _>>()?;
                blowup(&BlowupSpec { base: b, parts })?
            };
            emit_tournament(j, &t);
            Ok(())
        }
        Command::Extend { input, sigma } => {
            let t = load(input)?;
            let s: DominatingRelation = sigma.parse()?;
            emit_tournament(j, &extend(&t, &s)?);
            Ok(())
        }
        Command::Check(args) => check(j, args),
        Command::Decompose { input, base } => decompose(j, &load(input)?, base.as_deref()),
        Command::Verify { suite, max_n, seed } => verify(j, suite, *max_n, *seed),
        Command::Enumerate { n, classes } => {
            let limits = Limits::from_env();
            let list: Vec<Tournament> = enumerate_tournaments(*n, *classes, &limits)?.collect();
            let lines: Vec<String> = list.iter().map(to_trn_inline).collect();
            emit(
                j,
                json!({
                    "order": n,
                    "classes": classes,
                    "count": list.len(),
                    "enumeration_cap": limits.max_enumeration_order,
                    "tournaments": lines,
                }),
                || lines.iter().map(|l| format!("{l}\n")).collect(),
            );
            Ok(())
        }
        Command::Zmat {
            m,
            r,
            diagonals,
            csv,
        } => zmat(j, *m, r, *diagonals, *csv),
    }
}

fn analyze(j: bool, t: &Tournament) -> Outcome {
    let dk = max_subtournament_det(t)?;
    let det = tournament_det(t);
    let basic = is_basic(t);
    let cr = if t.order() <= CR_CAP {
        Some(is_cr_tournament(t)?.is_cr)
    } else {
        None
    };
    let doc = json!({
        "order": t.order(),
        "det": det,
        "max_minor": dk.max_minor,
        "witness": dk.witness.to_one_based(),
        "k": dk.k,
        "class": dk.class_label(),
        "basic": basic,
        "cr": cr,
        "cr_cap": CR_CAP,
    });
    emit(j, doc, || {
        let cr_text = match cr {
            Some(b) => b.to_string(),
            None => format!("skipped (order above {CR_CAP})"),
        };
        format!(
            "order: {}\ndet: {det}\nmax minor: {} on {:?}\nk: {}\nclass: {}\nbasic: {basic}\ncr: {cr_text}\n",
            t.order(),
            dk.max_minor,
            dk.witness.to_one_based(),
            dk.k,
            dk.class_label()
        )
    });
    Ok(())
}

fn check(j: bool, args: &CheckArgs) -> Outcome {
    let t = load(&args.input)?;
    if args.predicate.basic {
        let b = is_basic(&t);
        emit(j, json!({ "predicate": "basic", "value": b }), || {
            format!("basic: {b}\n")
        });
    } else if args.predicate.cr {
        let rep = is_cr_tournament(&t)?;
        let text = format!(
            "cr: {}\nk: {}\ntrivial: {}\nnon-CR σ: {}\nfailing σ: {}\n",
            rep.is_cr,
            rep.k,
            rep.trivial,
            rep.non_cr_count,
            rep.failures
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        let doc = json!({ "predicate": "cr", "value": rep.is_cr, "report": rep });
        emit(j, doc, || text);
    } else {
        let rep = is_strong_cr(&t)?;
        let failing: Vec<usize> = rep
            .blowups
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_cr)
            .map(|(i, _)| i + 1)
            .collect();
        let text = format!(
            "strong cr: {}\ncr: {}\nnon-CR 1-transitive blowups (duplicated vertex): {failing:?}\n",
            rep.strong, rep.base.is_cr
        );
        let doc = json!({ "predicate": "strong-cr", "value": rep.strong, "report": rep });
        emit(j, doc, || text);
    }
    Ok(())
}

fn decompose(j: bool, t: &Tournament, base: Option<&str>) -> Outcome {
    let d = match base {
        None => {
            let c = classify_d5(t)?;
            let doc = json!({ "class": c.class.label(), "k": c.report.k, "decomposition": c.decomposition });
            let text = match &c.decomposition {
                Some(d) => format!("class: {}\n{}", c.class.label(), describe(d)),
                None => format!("class: {}\nno decomposition\n", c.class.label()),
            };
            emit(j, doc, || text);
            return Ok(());
        }
        Some(spec) => match spec.strip_prefix("ln:") {
            Some(k) => decompose_over_ln(t, parse_num(k)?)?,
            None => decompose_transitive_blowup(t, &load(spec)?)?,
        },
    };
    let text = match &d {
        Some(d) => describe(d),
        None => "no decomposition\n".to_string(),
    };
    emit(j, json!({ "decomposition": d }), || text);
    Ok(())
}

fn describe(d: &crtour::Decomposition) -> String {
    let mut s = format!(
        "base: {}\nW: {:?}\n",
        d.base_name(),
        d.switch_set.to_one_based()
    );
    for (b, v) in d.blocks.iter().zip(&d.base_vertex_of_block) {
        let chain: Vec<String> = b.iter().map(|x| (x + 1).to_string()).collect();
        s.push_str(&format!("v_{} <- {}\n", v + 1, chain.join(" -> ")));
    }
    s
}

fn verify(j: bool, suite: &str, max_n: Option<usize>, seed: u64) -> Outcome {
    if suite == "all" && max_n.is_some() {
        return Err(Failure::Usage(
            "--max-n needs a single suite, not `all`".into(),
        ));
    }
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|s| s.name).collect()
    } else {
        vec![suite]
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        reports.push(run_suite(name, max_n, seed)?);
    }
    let all_passed = reports.iter().all(|r| r.passed);
    let doc = json!({ "passed": all_passed, "reports": reports });
    emit(j, doc, || {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!(
                "{} {} checked={} failures={} time={}ms\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite,
                r.checked,
                r.failures.len(),
                r.wall_time_ms
            ));
            for f in r.failures.iter().take(20) {
                s.push_str(&format!("  {f}\n"));
            }
        }
        s
    });
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn zmat(j: bool, m: usize, r: &str, diagonals: bool, csv: bool) -> Outcome {
    let sigma: DominatingRelation = r.parse()?;
    let signs = sigma.signs();
    let zm = z_matrix(m, &signs)?;
    let b = row_sums(&zm);
    let delta = delta_total(&signs)?;
    let gammas = (1..=m)
        .map(|l| diagonal_vector(&zm, l))
        .collect::<Result<Vec<_>, _>>()?;
    let doc = json!({
        "m": m,
        "r": r,
        "z": zm.rows(),
        "b": b,
        "delta": delta,
        "run_boundaries": run_boundaries(&signs),
        "diagonals": if diagonals { json!(gammas) } else { Value::Null },
    });
    emit(j, doc, || {
        let mut s = if csv {
            zm.to_csv()
        } else {
            zm.to_bracket_string()
        };
        if !csv {
            s.push_str(&format!("b: {b:?}\nΔ: {delta}\n"));
            if diagonals {
                for g in &gammas {
                    s.push_str(&format!("Γ_{}: {:?} step {}\n", g.ell, g.gamma, g.step));
                }
            }
        }
        s
    });
    Ok(())
}
