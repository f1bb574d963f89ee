//! `ffk`: complete-intersection, Koszul and freeness certificates from the command line.
//!
//! Exit status: 0 on success, 1 on input errors, 2 when a step budget runs
//! out, 3 when `--expect` disagrees with the computed verdict.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ffk_core::algebra::{AlgebraJson, AlgebraPresentation, SequenceJson};
use ffk_core::battery;
use ffk_core::ciproof::{ci_check, koszul_oracle_check, CIReport, Verdict};
use ffk_core::current::{build_current_presentation, verify_center_ci_current, xi_generators, CurrentSpec};
use ffk_core::freecert::{commutative_certificate, filtered_freeness_certificate, FreenessCertificate};
use ffk_core::groebner::Budget;
use ffk_core::koszul::{default_cutoff, homology_table};
use ffk_core::poly::{Polynomial, VariableContext};
use ffk_core::yangian::{
    build_presentation, center_family, center_json, verify_center_ci, YangianSpec, DEFAULT_MAX_NP,
};
use ffk_core::{Error, SCHEMA};

#[derive(Parser)]
#[command(
    name = "ffk",
    version,
    about = "Exact complete-intersection and freeness certificates"
)]
struct Cli {
    /// Reduction-step budget per computation [default: 1000000]
    #[arg(long, global = true, env = "FFK_BUDGET")]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sequence is a complete intersection
    CiCheck {
        #[command(flatten)]
        input: SequenceArgs,
        /// Treat the quotient algebra as Cohen-Macaulay
        #[arg(long)]
        cm: bool,
        /// Also compute Koszul homology up to this degree and compare
        #[arg(long, value_name = "D")]
        koszul_oracle: Option<u32>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Koszul homology table of a homogeneous sequence
    Koszul {
        #[command(flatten)]
        input: SequenceArgs,
        /// Internal-degree cutoff [default: 2·maxdeg + 2]
        #[arg(long)]
        cutoff: Option<u32>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Commutative freeness certificate of a homogeneous sequence
    Freeness {
        #[command(flatten)]
        input: SequenceArgs,
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Center of the truncated Yangian Y_p(gl_n)
    Yangian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        center: CenterArgs,
    },
    /// Center of the truncated current algebra gl_n ⊗ k[x]/(x^m)
    Current {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        center: CenterArgs,
    },
    /// Run the acceptance battery
    Suite {
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Args)]
struct SequenceArgs {
    /// Algebra JSON (variables, relations, cohen_macaulay)
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Sequence JSON, either term lists or polynomial strings
    #[arg(long, conflicts_with = "seq")]
    sequence: Option<PathBuf>,
    /// Builtin sequence: elem-sym, sl2-casimir or a suite name
    #[arg(long)]
    seq: Option<String>,
    /// Number of variables for elem-sym
    #[arg(long, default_value_t = 3)]
    vars: usize,
}

#[derive(Args)]
struct CenterArgs {
    /// Write the central elements and their graded images to this file
    #[arg(long, value_name = "PATH")]
    emit_center: Option<PathBuf>,
    /// Check the complete-intersection property of the graded center
    #[arg(long)]
    verify_ci: bool,
    /// Filtered freeness certificate up to this filtration degree
    #[arg(long, value_name = "D")]
    freeness: Option<u32>,
    /// Allow sizes beyond the default cap n·level ≤ 6
    #[arg(long)]
    allow_large: bool,
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Ci,
    NotCi,
}

/// Text form of a sequence file.
#[derive(Deserialize)]
struct SequenceText {
    vars: Vec<String>,
    polynomials: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SequenceFile {
    Terms(SequenceJson),
    Text(SequenceText),
}

struct Outcome {
    report: Value,
    text: String,
    /// `Some(false)` when an `--expect` was given and not met.
    expectation: Option<bool>,
    budget_exhausted: bool,
}

enum Failure {
    Input(anyhow::Error),
    Budget(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded { .. } | Error::NonTerminating { .. }) => Failure::Budget(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    match run(&cli.command, budget) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.report).expect("report serializes") + "\n",
                Format::Text => out.text.clone(),
            };
            if let Err(e) = emit(cli.output.as_deref(), &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if out.budget_exhausted {
                ExitCode::from(2)
            } else if out.expectation == Some(false) {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cmd: &Command, budget: Budget) -> Result<Outcome, Failure> {
    match cmd {
        Command::CiCheck {
            input,
            cm,
            koszul_oracle,
            expect,
        } => {
            let (alg, seq) = load_sequence(input)?;
            let alg = if *cm { alg.with_cohen_macaulay(true) } else { alg };
            let r = match koszul_oracle {
                Some(d) => koszul_oracle_check(&seq, &alg, *d, budget)?,
                None => ci_check(&seq, &alg, budget)?,
            };
            Ok(verdict_outcome("ci-check", &r, *expect))
        }
        Command::Koszul { input, cutoff, expect } => {
            let (alg, seq) = load_sequence(input)?;
            let d = match cutoff {
                Some(d) => *d,
                None => default_cutoff(&seq),
            };
            let table = homology_table(&seq, &alg, d, budget)?;
            let ci = table.verdict() == ffk_core::koszul::KoszulVerdict::CiConsistent;
            let mut text = format!("Koszul homology up to degree {d}: {:?}\n", table.verdict());
            for ((i, deg), dim) in &table.entries {
                if *dim > 0 {
                    text.push_str(&format!("  H_{i} degree {deg}: {dim}\n"));
                }
            }
            Ok(Outcome {
                report: serde_json::to_value(table.to_json()).map_err(anyhow::Error::from)?,
                text,
                expectation: expect.map(|e| (e == Expect::Ci) == ci),
                budget_exhausted: false,
            })
        }
        Command::Freeness { input, cutoff, expect } => {
            let (alg, seq) = load_sequence(input)?;
            let cert = commutative_certificate(&seq, &alg, *cutoff, budget)?;
            Ok(certificate_outcome(&cert, *expect))
        }
        Command::Yangian { n, p, center } => yangian(*n, *p, center, budget),
        Command::Current { n, m, center } => current(*n, *m, center, budget),
        Command::Suite { only } => {
            let ids: Vec<u32> = if only.is_empty() {
                (1..=battery::CRITERION_COUNT).collect()
            } else {
                only.clone()
            };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > battery::CRITERION_COUNT) {
                return Err(Failure::Input(anyhow!("no criterion {bad}")));
            }
            let outcomes: Vec<_> = ids.iter().map(|&i| battery::run(i, budget)).collect();
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let mut text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            text.push_str(&format!("{passed}/{} criteria passed\n", outcomes.len()));
            // elapsed times are omitted so that reports are reproducible
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail, "limit_ms": o.limit_ms}))
                .collect();
            Ok(Outcome {
                report: json!({"schema": SCHEMA, "command": "suite", "criteria": rows, "passed": passed, "total": outcomes.len()}),
                text,
                expectation: Some(passed == outcomes.len()),
                budget_exhausted: false,
            })
        }
    }
}

fn with_schema(command: &str, v: impl Serialize) -> Value {
    let mut v = serde_json::to_value(v).expect("report serializes");
    if let Value::Object(map) = &mut v {
        map.entry("schema").or_insert_with(|| json!(SCHEMA));
        map.insert("command".into(), json!(command));
    }
    v
}

fn verdict_outcome(command: &str, r: &CIReport, expect: Option<Expect>) -> Outcome {
    let text = format!(
        "verdict {:?}: {} generators in {} variables, dim {}\n",
        r.verdict,
        r.t,
        r.n,
        r.dim_found.map(|d| d.to_string()).unwrap_or_else(|| "unknown".into())
    );
    Outcome {
        report: with_schema(command, r),
        text,
        expectation: expect.map(|e| (e == Expect::Ci) == (r.verdict == Verdict::CI)),
        budget_exhausted: r.verdict == Verdict::Indefinite,
    }
}

fn certificate_outcome(cert: &FreenessCertificate, expect: Option<Expect>) -> Outcome {
    let free = cert.is_free_up_to_cutoff();
    let text = format!(
        "free up to degree {}: {free} (hilbert {}, π bijective up to {}), complement dims {:?}\n",
        cert.cutoff, cert.hilbert_ok, cert.pi_bijective_up_to, cert.complement_dims
    );
    Outcome {
        report: with_schema("freeness", cert),
        text,
        expectation: expect.map(|e| (e == Expect::Ci) == free),
        budget_exhausted: false,
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&src).with_context(|| format!("{}: malformed JSON", path.display()))
}

fn load_sequence(args: &SequenceArgs) -> anyhow::Result<(AlgebraPresentation, Vec<Polynomial>)> {
    let algebra = match &args.algebra {
        Some(path) => {
            let a: AlgebraJson = serde_json::from_value(read_json(path)?)
                .with_context(|| format!("{}: not an algebra description", path.display()))?;
            Some(a.to_presentation()?)
        }
        None => None,
    };
    let (ctx, seq) = match (&args.sequence, &args.seq) {
        (Some(path), _) => {
            let file: SequenceFile = serde_json::from_value(read_json(path)?)
                .with_context(|| format!("{}: not a sequence description", path.display()))?;
            match file {
                SequenceFile::Terms(s) => {
                    let ctx = match &algebra {
                        Some(a) => a.context().clone(),
                        None => ffk_core::poly::context_from_json(&s.vars)?,
                    };
                    let seq = s.to_polys(&ctx)?;
                    (ctx, seq)
                }
                SequenceFile::Text(s) => {
                    let own = VariableContext::standard(&s.vars)?;
                    let ctx = algebra
                        .as_ref()
                        .map(|a| a.context().clone())
                        .unwrap_or_else(|| own.clone());
                    let seq = s
                        .polynomials
                        .iter()
                        .map(|p| Polynomial::parse(&own, p).and_then(|q| q.embed_into(&ctx)))
                        .collect::<ffk_core::Result<Vec<_>>>()?;
                    (ctx, seq)
                }
            }
        }
        (None, Some(name)) => builtin(name, args.vars)?,
        (None, None) => bail!("one of --sequence or --seq is required"),
    };
    let alg = match algebra {
        Some(a) => {
            if a.context() != &ctx {
                bail!("sequence variables differ from the algebra's");
            }
            a
        }
        None => AlgebraPresentation::polynomial_ring(&ctx),
    };
    Ok((alg, seq))
}

fn builtin(name: &str, vars: usize) -> anyhow::Result<(VariableContext, Vec<Polynomial>)> {
    match name {
        "elem-sym" => {
            if vars == 0 {
                bail!("--vars must be positive");
            }
            Ok(battery::elementary_symmetric_sequence(vars))
        }
        "sl2-casimir" => {
            let ctx = VariableContext::standard(&["e", "h", "f"])?;
            let g = Polynomial::parse(&ctx, "h^2 + 4*e*f")?;
            Ok((ctx, vec![g]))
        }
        _ => {
            let s = battery::sequence_suite()
                .into_iter()
                .find(|s| s.name == name)
                .ok_or_else(|| anyhow!("unknown builtin sequence `{name}`"))?;
            let (alg, seq) = s.build()?;
            Ok((alg.context().clone(), seq))
        }
    }
}

fn check_size(n: usize, level: usize, args: &CenterArgs) -> anyhow::Result<()> {
    if n * level > DEFAULT_MAX_NP && !args.allow_large {
        bail!(
            "n·level = {} exceeds {DEFAULT_MAX_NP}; pass --allow-large to proceed",
            n * level
        );
    }
    Ok(())
}

fn yangian(n: usize, p: usize, args: &CenterArgs, budget: Budget) -> Result<Outcome, Failure> {
    check_size(n, p, args)?;
    let spec = YangianSpec::new(n, p)?;
    let pres = build_presentation(&spec, budget)?;
    let fam = center_family(&pres, &spec, budget)?;
    let cj = center_json("yangian", n, p, &pres, &fam.elements, &fam.graded_images);
    let ci = if args.verify_ci {
        Some(verify_center_ci(&fam, &pres, budget)?)
    } else {
        None
    };
    let cert = match args.freeness {
        Some(d) => Some(filtered_freeness_certificate(&pres, &fam.elements, d, budget)?),
        None => None,
    };
    finish_center(
        "yangian",
        n,
        p,
        cj,
        ci.as_ref().map(|r| serde_json::to_value(r).expect("serializes")),
        ci.as_ref(),
        cert,
        args,
    )
}

fn current(n: usize, m: usize, args: &CenterArgs, budget: Budget) -> Result<Outcome, Failure> {
    check_size(n, m, args)?;
    let spec = CurrentSpec::new(n, m)?;
    let pres = build_current_presentation(&spec)?;
    let fam = xi_generators(&pres, &spec, budget)?;
    let cj = center_json("current", n, m, &pres, &fam.elements, &fam.graded_images);
    let ci = if args.verify_ci {
        Some(verify_center_ci_current(&fam, &pres, budget)?)
    } else {
        None
    };
    let cert = match args.freeness {
        Some(d) => Some(filtered_freeness_certificate(&pres, &fam.elements, d, budget)?),
        None => None,
    };
    let mut text_extra = String::new();
    if let Some(r) = &ci {
        for t in &r.induction {
            text_extra.push_str(&format!(
                "induction m={}: top elementary {}, top in radical {}, replay {}\n",
                t.m, t.top_are_elementary, t.top_vanish_on_variety, t.replay_matches
            ));
        }
    }
    let mut out = finish_center(
        "current",
        n,
        m,
        cj,
        ci.as_ref().map(|r| serde_json::to_value(r).expect("serializes")),
        ci.as_ref().map(|r| &r.center),
        cert,
        args,
    )?;
    out.text.push_str(&text_extra);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn finish_center(
    family: &str,
    n: usize,
    level: usize,
    cj: ffk_core::yangian::CenterJson,
    ci_value: Option<Value>,
    ci: Option<&ffk_core::yangian::CenterCiReport>,
    cert: Option<FreenessCertificate>,
    args: &CenterArgs,
) -> Result<Outcome, Failure> {
    if let Some(path) = &args.emit_center {
        let body = serde_json::to_string_pretty(&cj).map_err(anyhow::Error::from)? + "\n";
        emit(Some(path), &body)?;
    }
    let mut text = format!(
        "{family} n={n} level={level}: {} central elements verified\n",
        cj.center.len()
    );
    for c in &cj.center {
        text.push_str(&format!("  z{} = {}\n", c.index, c.text));
    }
    let mut budget_exhausted = false;
    let mut all_ci = true;
    if let Some(r) = ci {
        let show = |d: Option<i64>| d.map(|d| d.to_string()).unwrap_or_else(|| "unknown".into());
        text.push_str(&format!(
            "diagonal dim {} in {} vars, graded dim {} in {} vars, substitution coherent {}\n",
            show(r.diagonal.dim_found),
            r.diagonal.n,
            show(r.graded.dim_found),
            r.graded.n,
            r.substitution_coherent
        ));
        budget_exhausted = [&r.diagonal, &r.graded, &r.augmented, &r.reduced]
            .iter()
            .any(|x| x.verdict == Verdict::Indefinite);
        all_ci = r.diagonal.is_ci() && r.graded.is_ci();
    }
    if let Some(c) = &cert {
        text.push_str(&format!(
            "filtered freeness up to {}: {} (π bijective up to {})\n",
            c.cutoff,
            c.is_free_up_to_cutoff(),
            c.pi_bijective_up_to
        ));
        all_ci &= c.is_free_up_to_cutoff();
    }
    let report = json!({
        "schema": SCHEMA,
        "command": family,
        "n": n,
        "level": level,
        "center": cj.center.iter().map(|c| json!({"index": c.index, "filtration_degree": c.filtration_degree, "text": c.text})).collect::<Vec<_>>(),
        "ci": ci_value,
        "freeness": cert,
    });
    Ok(Outcome {
        report,
        text,
        expectation: args.expect.map(|e| (e == Expect::Ci) == all_ci),
        budget_exhausted,
    })
}
