//! `coill`: batch front end for the kernel.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coill_core::context::{validate, ComputationalContext};
use coill_core::equations::{canonical_equal, canonicalize, canonicalize_context, verify_builtin_laws};
use coill_core::prob::{check_assignment, decompose, random_assignment, verify_decomposition, Assignment, Universe};
use coill_core::reduce::{find_redexes, normalize, reduce_once, show_redex, Strategy, TraceStep, DEFAULT_FUEL};
use coill_core::typing::{check, elaborate_text, translate_text, Derivation};

const CHURCH_TWO: &str = include_str!("../../core/fixtures/church-two.drv");

#[derive(Parser)]
#[command(name = "coill", version, about = "Co-intuitionistic linear logic kernel")]
struct Cli {
    /// JSON output where the command supports it
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    InteractiveScript,
}

#[derive(clap::Args)]
struct Reduction {
    #[arg(long, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    #[arg(long, value_enum, default_value = "leftmost")]
    strategy: StrategyArg,
    /// Redex indices, comma separated, for `--strategy interactive-script`
    #[arg(long, value_delimiter = ',')]
    script: Vec<usize>,
}

impl Reduction {
    fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyArg::Leftmost => Strategy::Leftmost,
            StrategyArg::InteractiveScript => Strategy::Script(self.script.clone()),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a .ctx or .drv file and echo its canonical form
    Parse { file: PathBuf },
    /// Check the context axioms
    Validate { file: PathBuf },
    /// Elaborate and check a derivation script
    Typecheck { file: PathBuf },
    /// Perform one reduction step
    Reduce {
        file: PathBuf,
        /// Print the step as a JSON trace record
        #[arg(long)]
        step: bool,
        #[command(flatten)]
        opts: Reduction,
    },
    /// Reduce to normal form
    Normalize {
        file: PathBuf,
        /// Print one JSON trace record per step
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        opts: Reduction,
    },
    /// Decide equality modulo the equations in context (sound, incomplete)
    Eq { a: PathBuf, b: PathBuf },
    /// Check the built-in equational laws
    Laws,
    /// Randomized check of the decomposition property, or one .evt assignment
    Probcheck {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        universe: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Girard translation of a co-intuitionistic formula or sequent `E |- C1, C2`
    Translate { formula: String },
    /// Replay a worked example
    Demo { name: DemoName },
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    ChurchTwo,
}

/// A command outcome: printed text and whether it succeeded.
type Outcome = Result<(String, bool), Failure>;

enum Failure {
    Usage(String),
    Kernel(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Kernel(e.to_string())
    }
}

enum Input {
    Context(ComputationalContext),
    Script(Derivation),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Kernel(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Input, Failure> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ctx") => Ok(Input::Context(ComputationalContext::parse(&read(path)?)?)),
        Some("drv") => Ok(Input::Script(elaborate_text(&read(path)?)?)),
        _ => Err(Failure::Usage(format!("{}: expected a .ctx or .drv file", path.display()))),
    }
}

fn load_context(path: &Path) -> Result<ComputationalContext, Failure> {
    Ok(match load(path)? {
        Input::Context(c) => c,
        Input::Script(d) => d.conclusion.context(),
    })
}

fn load_script(path: &Path) -> Result<Derivation, Failure> {
    match load(path)? {
        Input::Script(d) => Ok(d),
        Input::Context(_) => Err(Failure::Usage(format!("{}: expected a .drv script", path.display()))),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn step_line(s: &TraceStep) -> String {
    format!("step {}: {} at {}\n  {}", s.step, s.kind, s.site, s.after)
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.cmd {
        Cmd::Parse { file } => Ok((
            match load(&file)? {
                Input::Context(c) => c.to_string(),
                Input::Script(d) => d.script().to_string(),
            },
            true,
        )),
        Cmd::Validate { file } => {
            let r = validate(&load_context(&file)?);
            Ok((if as_json { json(&r) } else { r.to_string() }, r.ok))
        }
        Cmd::Typecheck { file } => {
            let d = load_script(&file)?;
            let r = check(&d);
            let text = if as_json { json(&d.conclusion) } else { d.conclusion.to_string() };
            Ok((if r.ok { text } else { format!("{text}\n{r}") }, r.ok))
        }
        Cmd::Reduce { file, step, opts } => {
            let c = load_context(&file)?;
            let rs = find_redexes(&c);
            if rs.is_empty() {
                return Ok(("normal form".into(), true));
            }
            let pick = match opts.strategy() {
                Strategy::Leftmost => 0,
                Strategy::Script(s) => s.first().copied().unwrap_or(0),
            };
            let r = rs.get(pick).ok_or_else(|| Failure::Usage(format!("redex {pick} out of range ({} redexes)", rs.len())))?;
            let after = reduce_once(&c, r)?;
            let step_rec = TraceStep { step: 0, kind: r.kind, site: r.site.clone(), before: c.clone(), after };
            let text = if step || as_json {
                json(&step_rec)
            } else {
                format!("{}\n  redex: {}", step_line(&step_rec), show_redex(&c, r).unwrap_or_default())
            };
            Ok((text, true))
        }
        Cmd::Normalize { file, trace, opts } => {
            let c = load_context(&file)?;
            let (nf, t) = normalize(&c, &opts.strategy(), opts.fuel)?;
            let text = if trace || as_json {
                t.to_json_lines()
            } else {
                let mut lines: Vec<String> = t.steps.iter().map(step_line).collect();
                lines.push(format!("{} steps\n{nf}", t.len()));
                lines.join("\n")
            };
            Ok((text, true))
        }
        Cmd::Eq { a, b } => eq(&a, &b, as_json),
        Cmd::Laws => {
            let report = verify_builtin_laws();
            let text = if as_json {
                json(&report)
            } else {
                let mut lines: Vec<String> = report
                    .results
                    .iter()
                    .map(|r| {
                        let mut l = format!("{:<22} {}", r.name, if r.pass { "pass" } else { "FAIL" });
                        if let Some(c) = &r.counterexample {
                            l.push_str(&format!("\n    {c}"));
                        }
                        l
                    })
                    .collect();
                let passed = report.results.iter().filter(|r| r.pass).count();
                lines.push(format!("{passed}/{} laws hold", report.results.len()));
                lines.join("\n")
            };
            Ok((text, report.all_pass()))
        }
        Cmd::Probcheck { file, universe, seed, trials, assignment } => {
            let d = load_script(&file)?;
            match assignment {
                Some(p) => {
                    let a = Assignment::from_json(&read(&p)?)?;
                    let r = check_assignment(&d, &a);
                    if !r.ok {
                        return Ok((r.to_string(), false));
                    }
                    let parts = decompose(&d, &a)?;
                    let ok = verify_decomposition(&d, &a);
                    let shown: Vec<String> = parts.iter().map(|e| e.to_string()).collect();
                    Ok((format!("decomposition [{}]\n{}", shown.join(", "), if ok { "verified" } else { "NOT verified" }), ok))
                }
                None => {
                    let u = Universe::new(universe).map_err(|e| Failure::Usage(e.to_string()))?;
                    let mut failed = Vec::new();
                    for s in seed..seed + trials {
                        let a = random_assignment(&d, u, s)?;
                        if !verify_decomposition(&d, &a) {
                            failed.push(s);
                        }
                    }
                    let text = if as_json {
                        json(&serde_json::json!({"trials": trials, "universe": universe, "failed_seeds": failed}))
                    } else {
                        format!("{}/{trials} trials pass over {universe} points", trials - failed.len() as u64)
                    };
                    Ok((text, failed.is_empty()))
                }
            }
        }
        Cmd::Translate { formula } => Ok((translate_text(&formula)?, true)),
        Cmd::Demo { name: DemoName::ChurchTwo } => church_two(),
    }
}

fn eq(a: &Path, b: &Path, as_json: bool) -> Outcome {
    let (equal, prov) = match (load(a)?, load(b)?) {
        (Input::Script(x), Input::Script(y)) => {
            let (fx, fy) = (&x.conclusion, &y.conclusion);
            let mut sx = fx.succ_formulas();
            let mut sy = fy.succ_formulas();
            sx.sort();
            sy.sort();
            if fx.ante != fy.ante || sx != sy {
                return Ok((format!("unequal: different sequents\n  {fx}\n  {fy}"), false));
            }
            let (cx, cy) = (canonicalize(&x)?, canonicalize(&y)?);
            let prov: Vec<String> = cx.provenance.iter().chain(&cy.provenance).cloned().collect();
            (canonical_equal(&cx, &cy), prov)
        }
        (Input::Context(x), Input::Context(y)) => {
            let (cx, cy) = (canonicalize_context(&x)?, canonicalize_context(&y)?);
            (coill_core::context::alpha_equal_ac(&cx, &cy), vec![])
        }
        _ => return Err(Failure::Usage("eq needs two .drv or two .ctx files".into())),
    };
    let mut prov_dedup = Vec::new();
    for p in prov {
        if !prov_dedup.contains(&p) {
            prov_dedup.push(p);
        }
    }
    let text = if as_json {
        json(&serde_json::json!({"equal": equal, "provenance": prov_dedup}))
    } else {
        format!("{}\nprovenance: {}", if equal { "equal" } else { "unequal" }, prov_dedup.join(", "))
    };
    Ok((text, equal))
}

fn church_two() -> Outcome {
    let d = elaborate_text(CHURCH_TWO)?;
    let c = d.conclusion.context();
    let mut out = vec![format!("derivation: {}", d.conclusion)];
    let redexes = find_redexes(&c);
    out.push(format!("{} redex(es) at the start", redexes.len()));
    let (two, t) = normalize(&c, &Strategy::Leftmost, 2).or_else(|e| match e {
        coill_core::reduce::ReduceError::FuelExhausted { trace } => {
            let after = trace.steps.last().map(|s| s.after.clone()).unwrap_or_else(|| c.clone());
            Ok((after, *trace))
        }
        other => Err(other),
    })?;
    let kinds: Vec<String> = t.kinds().iter().map(|k| k.to_string()).collect();
    out.push(format!("two steps: [{}]", kinds.join(", ")));
    out.push(format!("  {two}"));
    let (nf, full) = normalize(&c, &Strategy::Leftmost, 500)?;
    let all: Vec<String> = full.kinds().iter().map(|k| k.to_string()).collect();
    out.push(format!("full normalization: {} steps [{}]", full.len(), all.join(", ")));
    out.push(format!("  {nf}"));
    out.push("normal form reached".into());
    Ok((out.join("\n"), true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            println!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Kernel(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
