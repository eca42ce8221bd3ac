//! The `confsec` command line: argument parsing, report envelopes, run manifests
//! and the exit-code contract (0 verified, 1 verification failed or certificate
//! rejected, 2 invalid input).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::Knowledge;
use crate::certificates::{self, CertifiedFact, Verdict};
use crate::error::{Error, Result};
use crate::finite::{self, FinitePoset, PosetMap, SecValue};
use crate::geometry::{Configuration, Space};
use crate::planner::{self, PlanQuery};
use crate::sections::{self, SectionCover};
use crate::selfmaps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const REPORT_VERSION: u32 = 1;

#[derive(Parser, Debug, Clone)]
#[command(name = "confsec", version, about = "Sections, fixed points, bounds and planners for configuration spaces")]
pub struct Cli {
    /// Write the machine-readable report here.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, env = "CONFSEC_THREADS")]
    pub threads: Option<usize>,
    /// Write a run manifest (arguments, input digests, report digest) here.
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Built-in self-map recipes.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Fixed point property and sec(F(X,2) -> X) for a model space.
    Fpp {
        #[arg(long)]
        space: Space,
    },
    /// Exhaustive computations on finite posets.
    Finite {
        #[command(subcommand)]
        action: FiniteAction,
    },
    /// Local sections and section covers.
    Section {
        #[command(subcommand)]
        action: SectionAction,
    },
    /// Check a lower-bound certificate.
    Certify {
        kind: CertificateKind,
        #[arg(long)]
        file: PathBuf,
    },
    /// Interval bounds on cat, TC, sec and secat.
    Bounds {
        #[command(subcommand)]
        action: BoundsAction,
    },
    /// Motion planning for the (k, 1) problem.
    Plan(PlanArgs),
    /// Rerun a manifest and compare the report digest.
    Replay {
        #[arg(long = "from", value_name = "MANIFEST")]
        from: PathBuf,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CatalogAction {
    List,
}

#[derive(Subcommand, Debug, Clone)]
pub enum FiniteAction {
    Fpp {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value_t = finite::DEFAULT_BUDGET)]
        budget: u64,
    },
    Sec {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value_t = finite::DEFAULT_MAX_COVER)]
        max_cover: usize,
    },
    /// Minimal number of roots over the homotopy class of a self-map.
    Mr {
        #[arg(long)]
        poset: PathBuf,
        /// Values of the map, comma separated (e.g. `1,0,3,2`).
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: usize,
    },
    /// Both sides of the characterization on one poset.
    Check {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value_t = finite::DEFAULT_MAX_COVER)]
        max_cover: usize,
    },
    /// Cross-check over every poset up to isomorphism.
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recipe {
    KeyLemma,
    Binomial,
    SphereSigma,
    Fpf,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SectionAction {
    Verify {
        #[arg(long)]
        recipe: Recipe,
        #[arg(long)]
        space: Space,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    Cup,
    Induced,
}

#[derive(Subcommand, Debug, Clone)]
pub enum BoundsAction {
    Query {
        #[arg(long)]
        facts: Option<PathBuf>,
        /// Model-space presets to merge in (repeatable).
        #[arg(long)]
        preset: Vec<String>,
        #[arg(long)]
        quantity: String,
        /// Print derivation trees.
        #[arg(long)]
        explain: bool,
    },
    /// Propagate and list every bound; contradictions fail.
    Check {
        #[arg(long)]
        facts: Option<PathBuf>,
        #[arg(long)]
        preset: Vec<String>,
    },
}

#[derive(Args, Debug, Clone)]
#[command(args_conflicts_with_subcommands = true)]
pub struct PlanArgs {
    #[command(subcommand)]
    pub batch: Option<PlanBatch>,
    #[arg(long)]
    pub space: Option<Space>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long)]
    pub start: Option<PathBuf>,
    #[arg(long)]
    pub goal: Option<PathBuf>,
    /// Write the full plan (samples included) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Trajectory export format.
    #[arg(long)]
    pub plot: Option<PlotFormat>,
    #[arg(long, default_value_t = planner::DEFAULT_DENSITY)]
    pub density: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PlanBatch {
    Batch {
        #[arg(long)]
        scenarios: PathBuf,
    },
}

/// Result of one command before anything is written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub report: Value,
    pub inputs: Vec<PathBuf>,
    /// Extra files requested by the command (plan output, trajectory CSV).
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new(kind: &str, passed: bool, text: String, result: Value) -> Self {
        Outcome {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            text,
            report: json!({ "kind": kind, "version": REPORT_VERSION, "passed": passed, "result": result }),
            inputs: Vec::new(),
            files: Vec::new(),
        }
    }

    fn with_inputs(mut self, inputs: &[&Path]) -> Self {
        self.inputs = inputs.iter().map(|p| p.to_path_buf()).collect();
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub arguments: Vec<String>,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub exit_code: i32,
    pub summary: String,
    pub report_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Canonical text of a report (what `--json` writes).
pub fn render_report(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<FinitePoset> {
    FinitePoset::from_json_str(&read(path)?)
}

fn load_knowledge(facts: Option<&Path>, presets: &[String]) -> Result<Knowledge> {
    let mut k = match facts {
        Some(p) => Knowledge::from_json_str(&read(p)?)?,
        None => Knowledge::new(),
    };
    for name in presets {
        k.extend(&crate::bounds::presets::preset(name)?);
    }
    Ok(k)
}

fn sec_text(v: SecValue) -> String {
    v.to_string()
}

/// Runs a parsed command without touching the filesystem except to read inputs.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            let rows = selfmaps::catalog();
            let mut text = String::new();
            for r in &rows {
                text.push_str(&format!(
                    "{:<18} {:<32} fixed-point-free={} {}\n",
                    r.recipe,
                    r.spaces,
                    r.fixed_point_free,
                    if r.implemented { "" } else { "(listed only)" }
                ));
            }
            Ok(Outcome::new("catalog", true, text, serde_json::to_value(rows)?))
        }
        Command::Fpp { space } => {
            let v = sections::fpp_verdict(*space, seed)?;
            let witness = selfmaps::fixed_point_free_map(*space).filter(|_| v.section.is_some());
            let fpp = serde_json::to_value(v.fpp)?;
            let mut text = format!("{}: FPP={} sec(pi(2,1))={}\n{}\n", v.space, fpp.as_str().unwrap_or("?"), v.sec21, v.reason);
            if let Some(w) = &witness {
                text.push_str(&format!("witness: {}\n", serde_json::to_string(w)?));
            }
            let result = json!({
                "space": v.space,
                "fpp": v.fpp,
                "sec21": v.sec21,
                "theorem_applies": v.theorem_applies,
                "reason": v.reason,
                "gap": v.gap,
                "witness": witness,
            });
            Ok(Outcome::new("fpp_verdict", true, text, result))
        }
        Command::Finite { action } => execute_finite(action),
        Command::Section {
            action: SectionAction::Verify { recipe, space, k, r, samples },
        } => {
            let cover = build_cover(*recipe, *space, *k, *r, seed, *samples)?;
            let report = sections::verify_cover(&cover, seed, *samples)?;
            let text = format!(
                "{} pieces on F({},{}) -> F({},{}): coverage={} identity_error={:e} min_separation={:e} continuity_ratio={:.3} -> {}\n",
                report.pieces,
                report.space,
                report.k,
                report.space,
                report.r,
                report.coverage,
                report.identity_error,
                report.min_separation,
                report.continuity_ratio,
                if report.passed { "PASS" } else { "FAIL" }
            );
            Ok(Outcome::new("section_verification", report.passed, text, serde_json::to_value(&report)?))
        }
        Command::Certify { kind, file } => {
            let text = read(file)?;
            let (verdict, extra): (Verdict, Value) = match kind {
                CertificateKind::Cup => {
                    let cert = certificates::CupLengthCertificate::from_json_str(&text)?;
                    (certificates::verify_cup_certificate(&cert)?, Value::Null)
                }
                CertificateKind::Induced => {
                    let cert = certificates::InducedMapCertificate::from_json_str(&text)?;
                    let props = certificates::induced_properties(&cert)?;
                    (certificates::verify_induced_certificate(&cert)?, serde_json::to_value(props)?)
                }
            };
            let kind_name = match kind {
                CertificateKind::Cup => "cup",
                CertificateKind::Induced => "induced",
            };
            let (passed, text, facts, rejection) = match &verdict {
                Ok(facts) => {
                    let lines: Vec<String> = facts.iter().map(CertifiedFact::to_string).collect();
                    (true, format!("accepted\n{}\n", lines.join("\n")), serde_json::to_value(facts)?, Value::Null)
                }
                Err(r) => (false, format!("rejected: {r}\n"), json!([]), serde_json::to_value(r)?),
            };
            let result = json!({
                "certificate": kind_name,
                "accepted": passed,
                "facts": facts,
                "rejection": rejection,
                "matrices": extra,
            });
            Ok(Outcome::new("certificate", passed, text, result).with_inputs(&[file]))
        }
        Command::Bounds { action } => execute_bounds(action),
        Command::Plan(args) => execute_plan(args, seed),
        Command::Replay { from } => replay(from),
    }
}

fn build_cover(recipe: Recipe, space: Space, k: usize, r: usize, seed: u64, samples: usize) -> Result<SectionCover> {
    match recipe {
        Recipe::KeyLemma => sections::key_lemma_cover(space, k, &sections::default_basepoints(space, k)?),
        Recipe::Binomial => sections::binomial_cover(space, k, r, &sections::default_basepoints(space, k)?),
        Recipe::SphereSigma => match space {
            Space::Sphere(d) => Ok(SectionCover::single(sections::sphere_sigma(d)?)),
            s => Err(Error::InvalidArgument(format!("sphere-sigma needs a sphere, got {s}"))),
        },
        Recipe::Fpf => {
            let f = selfmaps::fixed_point_free_map(space)
                .ok_or_else(|| Error::Unsupported(format!("no fixed-point-free catalog map on {space}")))?;
            Ok(SectionCover::single(sections::from_fpf_family(&[f], seed, samples.min(2000))?))
        }
    }
}

fn execute_finite(action: &FiniteAction) -> Result<Outcome> {
    match action {
        FiniteAction::Fpp { poset, budget } => {
            let p = load_poset(poset)?;
            let r = finite::has_fpp_with_budget(&p, *budget)?;
            let mut text = format!("FPP={}\n", r.has_fpp);
            if let Some(w) = &r.witness {
                text.push_str(&format!("fixed-point-free map: {w:?}\n"));
            }
            Ok(Outcome::new("finite_fpp", true, text, serde_json::to_value(&r)?).with_inputs(&[poset]))
        }
        FiniteAction::Sec { poset, max_cover } => {
            let p = load_poset(poset)?;
            let r = finite::sec_pi21(&p, *max_cover)?;
            let mut text = format!("sec={}\n", sec_text(r.value));
            for s in &r.cover {
                text.push_str(&format!("  on {:?}: x -> (x, g(x)) with g = {:?}\n", s.domain, s.values));
            }
            if !r.uncoverable.is_empty() {
                text.push_str(&format!("  no local section near {:?}\n", r.uncoverable));
            }
            Ok(Outcome::new("finite_sec", true, text, serde_json::to_value(&r)?).with_inputs(&[poset]))
        }
        FiniteAction::Mr { poset, map, point } => {
            let p = load_poset(poset)?;
            let values = map
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad map `{map}`")))?;
            let f = PosetMap::self_map(&p, values)?;
            let r = finite::mr_bruteforce(&f, *point)?;
            let text = format!("MR={} (realized by {:?}, class of {} maps)\n", r.value, r.realized_by, r.class_size);
            Ok(Outcome::new("finite_mr", true, text, serde_json::to_value(&r)?).with_inputs(&[poset]))
        }
        FiniteAction::Check { poset, max_cover } => {
            let p = load_poset(poset)?;
            let c = finite::main_theorem_check(&p, *max_cover)?;
            let text = format!(
                "hausdorff={} FPP={} sec={} characterization_holds={} section_correspondence={}\n",
                c.hausdorff,
                c.has_fpp,
                sec_text(c.sec),
                c.characterization_holds,
                c.section_correspondence
            );
            let passed = c.section_correspondence && (!c.hausdorff || !c.applicable || c.characterization_holds);
            Ok(Outcome::new("finite_check", passed, text, serde_json::to_value(&c)?).with_inputs(&[poset]))
        }
        FiniteAction::Sweep { max_n } => {
            let sweep = finite_sweep(*max_n)?;
            let text = format!(
                "{} posets, {} with sec=1 iff no FPP failing, {} Hausdorff with the characterization failing, {} non-Hausdorff exceptions\n",
                sweep.posets, sweep.correspondence_failures.len(), sweep.hausdorff_failures.len(), sweep.non_hausdorff_exceptions
            );
            let passed = sweep.correspondence_failures.is_empty() && sweep.hausdorff_failures.is_empty();
            Ok(Outcome::new("finite_sweep", passed, text, serde_json::to_value(&sweep)?))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sweep {
    pub max_n: usize,
    pub posets: usize,
    pub per_size: Vec<usize>,
    pub correspondence_failures: Vec<FinitePoset>,
    pub hausdorff_failures: Vec<FinitePoset>,
    /// Non-Hausdorff posets where FPP and `sec = 2` disagree.
    pub non_hausdorff_exceptions: usize,
}

/// Runs the characterization check on every poset with at most `max_n` points.
pub fn finite_sweep(max_n: usize) -> Result<Sweep> {
    use rayon::prelude::*;
    let mut per_size = Vec::new();
    let mut all = Vec::new();
    for n in 1..=max_n {
        let ps = finite::posets_up_to_iso(n)?;
        per_size.push(ps.len());
        all.extend(ps);
    }
    let checks = all
        .par_iter()
        .map(|p| finite::main_theorem_check(p, finite::DEFAULT_MAX_COVER))
        .collect::<Result<Vec<_>>>()?;
    let mut sweep = Sweep {
        max_n,
        posets: all.len(),
        per_size,
        correspondence_failures: Vec::new(),
        hausdorff_failures: Vec::new(),
        non_hausdorff_exceptions: 0,
    };
    for (p, c) in all.iter().zip(&checks) {
        if !c.section_correspondence {
            sweep.correspondence_failures.push(p.clone());
        }
        if c.applicable && !c.characterization_holds {
            if c.hausdorff {
                sweep.hausdorff_failures.push(p.clone());
            } else {
                sweep.non_hausdorff_exceptions += 1;
            }
        }
    }
    Ok(sweep)
}

fn execute_bounds(action: &BoundsAction) -> Result<Outcome> {
    match action {
        BoundsAction::Query {
            facts,
            preset,
            quantity,
            explain,
        } => {
            let k = load_knowledge(facts.as_deref(), preset)?;
            let q = k.parse_quantity(quantity)?;
            let inputs: Vec<&Path> = facts.as_deref().into_iter().collect();
            match k.query(&q) {
                Ok(fact) => {
                    let text = if *explain {
                        fact.explain()
                    } else {
                        format!("{}\n", fact.interval)
                    };
                    Ok(Outcome::new("bounds_query", true, text, fact.to_json()).with_inputs(&inputs))
                }
                Err(Error::Contradiction(c)) => Ok(contradiction_outcome(&c).with_inputs(&inputs)),
                Err(e) => Err(e),
            }
        }
        BoundsAction::Check { facts, preset } => {
            let k = load_knowledge(facts.as_deref(), preset)?;
            let inputs: Vec<&Path> = facts.as_deref().into_iter().collect();
            match k.propagate() {
                Ok(store) => {
                    let facts_out: Vec<Value> = store.facts().iter().map(|f| f.to_json()).collect();
                    let mut text = String::new();
                    for f in store.facts() {
                        text.push_str(&format!("{} in {}\n", f.quantity, f.interval));
                    }
                    let result = json!({ "rounds": store.rounds(), "facts": facts_out });
                    Ok(Outcome::new("bounds_check", true, text, result).with_inputs(&inputs))
                }
                Err(Error::Contradiction(c)) => Ok(contradiction_outcome(&c).with_inputs(&inputs)),
                Err(e) => Err(e),
            }
        }
    }
}

fn contradiction_outcome(c: &crate::bounds::Contradiction) -> Outcome {
    let text = format!("contradiction: {}\n{}{}", c.description, c.left.render(), c.right.render());
    let result = json!({
        "contradiction": c.description,
        "left": c.left.to_json(),
        "right": c.right.to_json(),
    });
    Outcome::new("bounds_contradiction", false, text, result)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenario {
    #[serde(default)]
    name: String,
    start: Configuration,
    goal: Configuration,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenarios {
    scenarios: Vec<Scenario>,
    #[serde(default)]
    density: Option<f64>,
}

fn plan_summary(plan: &planner::MotionPlan, report: &planner::PlanReport) -> Value {
    json!({
        "planner": plan.planner,
        "region_id": plan.region_id,
        "regions": plan.regions,
        "samples": plan.samples.len(),
        "length": plan.motion.length(),
        "verification": report,
    })
}

fn execute_plan(args: &PlanArgs, seed: u64) -> Result<Outcome> {
    if let Some(PlanBatch::Batch { scenarios }) = &args.batch {
        let parsed: Scenarios = serde_json::from_str(&read(scenarios)?)?;
        let density = parsed.density.unwrap_or(args.density);
        let queries = parsed
            .scenarios
            .iter()
            .map(|s| PlanQuery::new(s.start.clone(), s.goal.clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        let mut text = String::new();
        let mut passed = true;
        for ((s, q), i) in parsed.scenarios.iter().zip(&queries).zip(0u64..) {
            let plan = planner::plan_with_density(q, density)?;
            let report = planner::verify_plan(&plan, q, seed.wrapping_add(i))?;
            passed &= report.passed;
            text.push_str(&format!(
                "{:<12} region {} of {} -> {}\n",
                s.name,
                plan.region_id,
                plan.regions,
                if report.passed { "PASS" } else { "FAIL" }
            ));
            let mut row = plan_summary(&plan, &report);
            row["name"] = json!(s.name);
            rows.push(row);
        }
        return Ok(Outcome::new("plan_batch", passed, text, json!(rows)).with_inputs(&[scenarios]));
    }
    let missing = |what: &str| Error::InvalidArgument(format!("plan needs --{what} (or `plan batch --scenarios`)"));
    let start_path = args.start.as_deref().ok_or_else(|| missing("start"))?;
    let goal_path = args.goal.as_deref().ok_or_else(|| missing("goal"))?;
    let start: Configuration = serde_json::from_str(&read(start_path)?)?;
    let goal: Configuration = serde_json::from_str(&read(goal_path)?)?;
    let q = PlanQuery::new(start, goal)?;
    if args.space.is_some_and(|s| s != q.space) || args.k.is_some_and(|k| k != q.k) || args.r != q.r {
        return Err(Error::InvalidArgument(format!(
            "--space/--k/--r disagree with the files (F({},{}) -> F({},{}))",
            q.space, q.k, q.space, q.r
        )));
    }
    let plan = planner::plan_with_density(&q, args.density)?;
    let report = planner::verify_plan(&plan, &q, seed)?;
    let optimality = planner::optimality(q.space, q.k).ok();
    let text = format!(
        "{} planner, region {} of {}, {} samples: endpoint error {:e}, rigidity error {:e}, probe ratio {:.3} -> {}\n",
        plan.planner.name(),
        plan.region_id,
        plan.regions,
        plan.samples.len(),
        report.goal_error,
        report.rigidity_error,
        report.probe_ratio,
        if report.passed { "PASS" } else { "FAIL" }
    );
    let mut summary = plan_summary(&plan, &report);
    summary["optimality"] = serde_json::to_value(&optimality)?;
    let mut out = Outcome::new("plan", report.passed, text, summary).with_inputs(&[start_path, goal_path]);
    if let Some(path) = &args.out {
        let full = json!({ "plan": plan, "verification": report });
        out.files.push((path.clone(), render_report(&full)));
    }
    if let Some(PlotFormat::Csv) = args.plot {
        let path = args
            .out
            .as_ref()
            .map(|p| p.with_extension("csv"))
            .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
        out.files.push((path, plan.to_csv()));
    }
    Ok(out)
}

fn digest_inputs(inputs: &[PathBuf]) -> Result<Vec<InputDigest>> {
    inputs
        .iter()
        .map(|p| {
            Ok(InputDigest {
                path: p.display().to_string(),
                sha256: sha256_hex(&fs::read(p)?),
            })
        })
        .collect()
}

fn replay(path: &Path) -> Result<Outcome> {
    let m: RunManifest = serde_json::from_str(&read(path)?)?;
    let mut changed = Vec::new();
    for input in &m.inputs {
        let now = sha256_hex(&fs::read(&input.path)?);
        if now != input.sha256 {
            changed.push(input.path.clone());
        }
    }
    let argv = std::iter::once("confsec".to_string()).chain(m.arguments.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::InvalidArgument(format!("manifest arguments: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(Error::InvalidArgument("a manifest cannot replay another replay".into()));
    }
    let rerun = execute(&cli)?;
    let digest = sha256_hex(render_report(&rerun.report).as_bytes());
    let identical = digest == m.report_sha256 && rerun.code == m.exit_code;
    let text = format!(
        "report digest {} ({}), inputs {}\n",
        digest,
        if identical { "identical" } else { "differs" },
        if changed.is_empty() { "unchanged".to_string() } else { format!("changed: {}", changed.join(", ")) }
    );
    let result = json!({
        "manifest": path.display().to_string(),
        "expected_sha256": m.report_sha256,
        "actual_sha256": digest,
        "identical": identical,
        "changed_inputs": changed,
    });
    Ok(Outcome::new("replay", identical && changed.is_empty(), text, result).with_inputs(&[path]))
}

/// Schema describing the input a command reads.
fn schema_hint(command: &Command) -> Option<&'static str> {
    match command {
        Command::Finite { .. } => Some("schemas/v1/poset.schema.json"),
        Command::Certify { kind: CertificateKind::Cup, .. } => Some("schemas/v1/cup-certificate.schema.json"),
        Command::Certify { kind: CertificateKind::Induced, .. } => Some("schemas/v1/induced-certificate.schema.json"),
        Command::Bounds { .. } => Some("schemas/v1/facts.schema.json"),
        Command::Plan(PlanArgs { batch: Some(_), .. }) => Some("schemas/v1/scenarios.schema.json"),
        Command::Plan(_) => Some("schemas/v1/space.schema.json"),
        Command::Replay { .. } => Some("schemas/v1/manifest.schema.json"),
        _ => None,
    }
}

/// Parses `args` (including the program name), runs the command, writes the
/// requested artifacts and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(h) = schema_hint(&cli.command) {
                eprintln!("hint: expected input format is described in {h}");
            }
            return EXIT_INVALID;
        }
    };
    print!("{}", outcome.text);
    let rendered = render_report(&outcome.report);
    let mut writes: Vec<(PathBuf, String)> = outcome.files.clone();
    if let Some(path) = &cli.json {
        writes.push((path.clone(), rendered.clone()));
    }
    if let Some(path) = &cli.manifest {
        let manifest = match digest_inputs(&outcome.inputs) {
            Ok(inputs) => RunManifest {
                tool: "confsec".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: outcome.report["kind"].as_str().unwrap_or_default().to_string(),
                arguments: manifest_arguments(&args),
                seed: cli.seed,
                inputs,
                exit_code: outcome.code,
                summary: outcome.text.lines().next().unwrap_or_default().to_string(),
                report_sha256: sha256_hex(rendered.as_bytes()),
            },
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INVALID;
            }
        };
        writes.push((path.clone(), render_report(&serde_json::to_value(&manifest).expect("manifest serializes"))));
    }
    for (path, contents) in writes {
        if let Err(e) = fs::write(&path, contents) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INVALID;
        }
    }
    outcome.code
}

/// Arguments without the program name and without output-only flags.
fn manifest_arguments(args: &[OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        let s = a.to_string_lossy().to_string();
        if skip {
            skip = false;
            continue;
        }
        if s == "--json" || s == "--manifest" || s == "--threads" {
            skip = true;
            continue;
        }
        if s.starts_with("--json=") || s.starts_with("--manifest=") || s.starts_with("--threads=") {
            continue;
        }
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("confsec").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn fpp_on_rp3() {
        let o = execute(&parse(&["fpp", "--space", "RP3"])).unwrap();
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.report["result"]["fpp"], "no");
        assert_eq!(o.report["result"]["witness"]["recipe"], "rp_odd_rotation");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["confsec", "fpp"]), EXIT_INVALID);
        assert_eq!(run(["confsec", "fpp", "--space", "K3"]), EXIT_INVALID);
        assert_eq!(run(["confsec", "--help"]), EXIT_OK);
    }

    #[test]
    fn manifest_arguments_drop_outputs() {
        let args: Vec<OsString> = ["confsec", "--json", "a.json", "fpp", "--space", "S2", "--manifest=m.json"]
            .iter()
            .map(OsString::from)
            .collect();
        assert_eq!(manifest_arguments(&args), vec!["fpp", "--space", "S2"]);
    }

    #[test]
    fn sweep_small() {
        let s = finite_sweep(3).unwrap();
        assert_eq!(s.per_size, vec![1, 2, 5]);
        assert!(s.correspondence_failures.is_empty() && s.hausdorff_failures.is_empty());
        assert!(s.non_hausdorff_exceptions > 0);
    }
}
