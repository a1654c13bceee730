use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use linkgroup::corpus::{CORPUS, PAIRS};
use linkgroup::gem::{is_gem, FourGraph};
use linkgroup::homology::first_homology;
use linkgroup::presentation::{
    fundamental_group, parse_presentation, serialize, tietze::eliminate_aliases, tietze_simplify, Dialect,
    GroupPresentation, DEFAULT_TIETZE_BUDGET,
};
use linkgroup::parse_diagram;
use linkgroup::quotients::{
    distinguish_profiles, profile, verify_witness, Catalog, Outcome, ProfileConfig, Verdict, WitnessError,
    DEFAULT_BUDGET, DEFAULT_K, MAX_INDEX, SCHEMA_VERSION,
};

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 10;

#[derive(Parser)]
#[command(name = "linkgroup", version, about = "Fundamental groups of surgered links and finite-quotient invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the closed-manifold fundamental group of a PD-JSON diagram.
    Derive {
        diagram: PathBuf,
        #[command(flatten)]
        text: TextOutput,
    },
    /// Simplify a presentation (or a diagram's group) by Tietze moves.
    Simplify {
        input: PathBuf,
        /// Only eliminate generators defined by a single letter.
        #[arg(long)]
        aliases_only: bool,
        #[command(flatten)]
        text: TextOutput,
    },
    /// First homology as invariant factors.
    Homology {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full invariant profile as JSON.
    Profile {
        input: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two profiles; exit 0 if distinguished, 10 if not.
    Distinguish {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the gem condition on a 4-colored graph.
    GemCheck {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a verdict's witnessed entry on both inputs.
    VerifyWitness {
        verdict: PathBuf,
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the bundled corpus, optionally writing its profiles and verdicts.
    Corpus {
        /// Directory to write `<stem>.profile.json` and pair verdicts into.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Args)]
struct TextOutput {
    #[arg(long, default_value = "native")]
    dialect: Dialect,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConfigArgs {
    /// Largest subgroup index.
    #[arg(long = "K")]
    k: Option<usize>,
    /// Catalog JSON file; the built-in catalog otherwise.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Search nodes per profile entry.
    #[arg(long)]
    budget: Option<u64>,
    /// JSON file with any of `K`, `catalog`, `budget`; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(rename = "K")]
    k: Option<usize>,
    catalog: Option<PathBuf>,
    budget: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type RunResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Files ending in `.json` are diagrams; anything else is presentation text.
fn load_group(path: &Path) -> Result<GroupPresentation, Failure> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let d = parse_diagram(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(fundamental_group(&d))
    } else {
        parse_presentation(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    match path {
        None => Ok(Catalog::builtin()),
        Some(p) => Catalog::from_json(&read(p)?).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
    }
}

struct Settings {
    catalog: Catalog,
    k: usize,
    budget: u64,
}

impl Settings {
    fn resolve(args: &ConfigArgs) -> Result<Settings, Failure> {
        let file = match &args.config {
            Some(p) => serde_json::from_str::<ConfigFile>(&read(p)?)
                .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
            None => ConfigFile::default(),
        };
        let k = args.k.or(file.k).unwrap_or(DEFAULT_K);
        if !(2..=MAX_INDEX).contains(&k) {
            return Err(Failure::input(format!("--K must be between 2 and {MAX_INDEX}")));
        }
        let catalog = load_catalog(args.catalog.as_deref().or(file.catalog.as_deref()))?;
        Ok(Settings {
            catalog,
            k,
            budget: args.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
        })
    }

    fn config(&self) -> ProfileConfig<'_> {
        ProfileConfig {
            catalog: &self.catalog,
            k: self.k,
            budget: self.budget,
        }
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v.outcome {
        Outcome::Distinguished => 0,
        Outcome::Inconclusive if v.skipped.is_empty() => EXIT_INCONCLUSIVE,
        Outcome::Inconclusive => EXIT_BUDGET,
    }
}

fn run(cli: Cli) -> RunResult {
    match cli.command {
        Command::Derive { diagram, text } => {
            let raw = read(&diagram)?;
            let d = parse_diagram(&raw).map_err(|e| Failure::input(format!("{}: {e}", diagram.display())))?;
            emit(text.out.as_deref(), &serialize(&fundamental_group(&d), text.dialect))?;
            Ok(0)
        }
        Command::Simplify {
            input,
            aliases_only,
            text,
        } => {
            let p = load_group(&input)?;
            let s = if aliases_only {
                eliminate_aliases(&p)
            } else {
                tietze_simplify(&p, DEFAULT_TIETZE_BUDGET)
            };
            emit(text.out.as_deref(), &serialize(&s, text.dialect))?;
            Ok(0)
        }
        Command::Homology { input, out } => {
            let p = load_group(&input)?;
            let h = first_homology(&p);
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "homology": h.iter().map(|x| x.to_u64().map_or_else(|| Value::from(x.to_string()), Value::from)).collect::<Vec<_>>(),
                "perfect": h.is_empty(),
            });
            emit(out.as_deref(), &json_text(&v))?;
            Ok(0)
        }
        Command::Profile { input, config, out } => {
            let settings = Settings::resolve(&config)?;
            let p = load_group(&input)?;
            let pr = profile(&p, &settings.config());
            emit(out.as_deref(), &pr.to_json())?;
            Ok(if pr.has_budget_flags() { EXIT_BUDGET } else { 0 })
        }
        Command::Distinguish {
            left,
            right,
            config,
            out,
        } => {
            let settings = Settings::resolve(&config)?;
            let (p, q) = (load_group(&left)?, load_group(&right)?);
            let cfg = settings.config();
            let (a, b) = rayon::join(|| profile(&p, &cfg), || profile(&q, &cfg));
            let v = distinguish_profiles(&a, &b);
            emit(out.as_deref(), &v.to_json())?;
            Ok(verdict_code(&v))
        }
        Command::GemCheck { graph, out } => {
            let g = FourGraph::from_json(&read(&graph)?)
                .map_err(|e| Failure::input(format!("{}: {e}", graph.display())))?;
            emit(out.as_deref(), &is_gem(&g).to_json())?;
            Ok(0)
        }
        Command::VerifyWitness {
            verdict,
            left,
            right,
            catalog,
            out,
        } => {
            let v = Verdict::from_json(&read(&verdict)?)
                .map_err(|e| Failure::input(format!("{}: {e}", verdict.display())))?;
            let catalog = load_catalog(catalog.as_deref())?;
            let (p, q) = (load_group(&left)?, load_group(&right)?);
            let check = verify_witness(&v, &p, &q, &catalog).map_err(|e| Failure {
                code: if matches!(e, WitnessError::Budget(_)) {
                    EXIT_BUDGET
                } else {
                    EXIT_INPUT
                },
                message: e.to_string(),
            })?;
            let mut report = serde_json::to_value(&check).expect("check serializes");
            report["schema_version"] = Value::from(SCHEMA_VERSION);
            emit(out.as_deref(), &json_text(&report))?;
            if check.passed {
                Ok(0)
            } else {
                Err(Failure::input(format!(
                    "witness {} does not replay: recomputed {} vs {}",
                    check.invariant, check.left, check.right
                )))
            }
        }
        Command::Corpus { report, config } => {
            let entries: Vec<Value> = CORPUS
                .iter()
                .map(|e| {
                    let p = e.presentation();
                    json!({
                        "id": e.id,
                        "stem": e.stem,
                        "class": e.class,
                        "generators": p.generators().len(),
                        "relators": p.relators().len(),
                    })
                })
                .collect();
            let listing = json!({ "schema_version": SCHEMA_VERSION, "entries": entries });
            print!("{}", json_text(&listing));
            match report {
                None => Ok(0),
                Some(dir) => write_report(&dir, &Settings::resolve(&config)?),
            }
        }
    }
}

fn write_report(dir: &Path, settings: &Settings) -> RunResult {
    fs::create_dir_all(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    let cfg = settings.config();
    let profiles: Vec<_> = CORPUS.iter().map(|e| profile(&e.presentation(), &cfg)).collect();
    let mut code = 0;
    for (e, pr) in CORPUS.iter().zip(&profiles) {
        fs::write(dir.join(format!("{}.profile.json", e.stem)), pr.to_json())
            .map_err(|err| Failure::input(err.to_string()))?;
        if pr.has_budget_flags() {
            code = EXIT_BUDGET;
        }
    }
    for (a, b) in PAIRS {
        let i = CORPUS.iter().position(|e| e.id == a).expect("pair member");
        let j = CORPUS.iter().position(|e| e.id == b).expect("pair member");
        let v = distinguish_profiles(&profiles[i], &profiles[j]);
        let name = format!("{}_{}.verdict.json", CORPUS[i].stem, CORPUS[j].stem);
        fs::write(dir.join(name), v.to_json()).map_err(|err| Failure::input(err.to_string()))?;
    }
    Ok(code)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(raw) = std::env::var("LINKGROUP_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("LINKGROUP_THREADS must be a positive integer, got `{raw}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::input(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
