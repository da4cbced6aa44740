use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use khoval_core::invariants::diagram_report;
use khoval_core::{
    build_complex, kh_with_raw, report, Budget, Check, Diagram, Error, Verdict, DEFAULT_MAX_CROSSINGS,
    DEFAULT_ORACLE_MAX,
};

use crate::document::{to_json, FixtureOutcome, FixtureSummary, Meta, ReportDocument, SCHEMA_VERSION};
use crate::fixtures::{catalog, recompute_expected, Fixture};
use crate::input::{InputArgs, InputEcho};
use crate::pretty;

/// Crossing count up to which `verify` multiplies out `d∘d` and checks gradings.
pub const EXHAUSTIVE_CHECK_MAX: usize = 10;

pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const NOT_APPLICABLE: u8 = 3;
    pub const BUDGET: u8 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "khoval", version, about = "Exact rational Khovanov homology and the Rasmussen invariant of almost positive knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Human-readable output instead of JSON.
    #[arg(long)]
    pub pretty: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    pub max_crossings: usize,
    /// Crossing cap for the Kauffman bracket state sum.
    #[arg(long, default_value_t = DEFAULT_ORACLE_MAX)]
    pub oracle_max: usize,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self { pretty: false, max_crossings: DEFAULT_MAX_CROSSINGS, oracle_max: DEFAULT_ORACLE_MAX, threads: None }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positivity class, Seifert circles and canonical genus.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Normalized Khovanov homology table.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        /// Also emit the unnormalized table.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        opts: Options,
    },
    /// Jones polynomial from homology and from the state sum.
    Jones {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Rasmussen invariant, 3-genus and 4-genus from the diagram.
    Rasmussen {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: Options,
    },
    /// Run every applicable check; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Check the embedded fixture catalog instead of one input.
        #[arg(long, conflicts_with_all = ["pd", "braid", "file"])]
        fixtures: bool,
        #[command(flatten)]
        opts: Options,
    },
    /// List the embedded fixture catalog.
    Fixtures {
        /// Recompute the frozen values of the named fixtures.
        #[arg(long)]
        recompute: bool,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn fail(code: u8, message: impl Into<String>) -> Self {
        Self { stdout: String::new(), stderr: message.into(), code }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::EmptyInput
        | Error::MalformedToken(_)
        | Error::InconsistentArcs(_)
        | Error::OrientationConflict(_)
        | Error::GeneratorOutOfRange { .. }
        | Error::EmptyWord(_) => exit::PARSE,
        Error::NotApplicable(_) | Error::DisconnectedDiagram => exit::NOT_APPLICABLE,
        Error::ComplexityBudgetExceeded(_) => exit::BUDGET,
        Error::DoubleNormalization | Error::NondivisibleEulerCharacteristic(_) => exit::CHECK_FAILED,
    }
}

struct Ctx {
    start: Instant,
    opts: Options,
}

impl Ctx {
    fn budget(&self) -> Budget {
        Budget { max_crossings: self.opts.max_crossings, oracle_max: self.opts.oracle_max }
    }

    fn meta(&self) -> Meta {
        Meta {
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            max_crossings: self.opts.max_crossings,
            oracle_max: self.opts.oracle_max,
            threads: rayon::current_num_threads(),
        }
    }

    fn emit(&self, doc: &ReportDocument, code: u8) -> Outcome {
        let stdout = if self.opts.pretty { pretty::report(doc) } else { to_json(doc) };
        Outcome { stdout, stderr: String::new(), code }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let opts = match &cli.command {
        Command::Classify { opts, .. }
        | Command::Homology { opts, .. }
        | Command::Jones { opts, .. }
        | Command::Rasmussen { opts, .. }
        | Command::Verify { opts, .. }
        | Command::Fixtures { opts, .. } => opts.clone(),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Outcome::fail(exit::PARSE, format!("cannot start {:?} threads: {e}", opts.threads)),
    };
    let ctx = Ctx { start: Instant::now(), opts };
    pool.install(|| dispatch(cli.command, &ctx))
}

fn load(input: &InputArgs) -> Result<(Diagram, InputEcho), Outcome> {
    input.load().map_err(|e| Outcome::fail(exit::PARSE, format!("parse error: {e}")))
}

fn dispatch(command: Command, ctx: &Ctx) -> Outcome {
    match command {
        Command::Classify { input, .. } => classify(&input, ctx),
        Command::Homology { input, raw, .. } => homology(&input, raw, ctx),
        Command::Jones { input, .. } => jones(&input, ctx),
        Command::Rasmussen { input, .. } => rasmussen(&input, ctx),
        Command::Verify { fixtures: true, .. } => verify_fixtures(ctx),
        Command::Verify { input, .. } => verify(&input, ctx),
        Command::Fixtures { recompute, .. } => list_fixtures(recompute, ctx),
    }
}

fn classify(input: &InputArgs, ctx: &Ctx) -> Outcome {
    let (d, echo) = match load(input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let doc = ReportDocument::classify(echo, &d, ctx.meta());
    // The canonical genus needs a connected diagram.
    let code = if doc.g3_d.is_some() { exit::OK } else { exit::NOT_APPLICABLE };
    ctx.emit(&doc, code)
}

fn homology(input: &InputArgs, raw: bool, ctx: &Ctx) -> Outcome {
    let (d, echo) = match load(input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    match kh_with_raw(&d, ctx.opts.max_crossings) {
        Ok((unnormalized, kh)) => {
            let mut r = diagram_report(&d);
            r.kh = Some(kh);
            r.kh_raw = raw.then_some(unnormalized);
            ctx.emit(&ReportDocument::new("homology", echo, &d, &r, ctx.meta()), exit::OK)
        }
        Err(e) => Outcome::fail(exit_code(&e), e.to_string()),
    }
}

fn jones(input: &InputArgs, ctx: &Ctx) -> Outcome {
    let (d, echo) = match load(input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let r = report(&d, &ctx.budget());
    if r.jones_kh.is_none() && r.jones_oracle.is_none() {
        return Outcome::fail(exit::BUDGET, r.notes.join("; "));
    }
    let mut r = r;
    r.checks.retain(|c| c.name == "jones_match");
    let code = if r.all_pass() { exit::OK } else { exit::CHECK_FAILED };
    ctx.emit(&ReportDocument::new("jones", echo, &d, &r, ctx.meta()), code)
}

fn rasmussen(input: &InputArgs, ctx: &Ctx) -> Outcome {
    let (d, echo) = match load(input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    if let Err(e) = khoval_core::rasmussen_from_diagram(&d) {
        return Outcome::fail(exit_code(&e), e.to_string());
    }
    ctx.emit(&ReportDocument::new("rasmussen", echo, &d, &diagram_report(&d), ctx.meta()), exit::OK)
}

/// `d∘d = 0` and grading checks, exhaustive for small diagrams.
pub fn complex_checks(d: &Diagram, max_crossings: usize) -> Vec<Check> {
    if d.crossing_count() > EXHAUSTIVE_CHECK_MAX {
        let why = format!("only run up to {EXHAUSTIVE_CHECK_MAX} crossings");
        return vec![
            Check::new("d_squared", Verdict::NotApplicable, why.clone()),
            Check::new("grading", Verdict::NotApplicable, why),
        ];
    }
    match build_complex(d, max_crossings) {
        Ok(c) => vec![
            Check::new("d_squared", Verdict::from_bool(c.check_d_squared()), "every block product vanishes"),
            Check::new("grading", Verdict::from_bool(c.check_grading()), "every edge image keeps the q-degree"),
        ],
        Err(e) => vec![Check::new("d_squared", Verdict::NotApplicable, e.to_string())],
    }
}

/// Full report plus the complex checks for one diagram.
pub fn verify_diagram(d: &Diagram, budget: &Budget) -> khoval_core::InvariantReport {
    let mut r = report(d, budget);
    let mut checks = complex_checks(d, budget.max_crossings);
    checks.append(&mut r.checks);
    r.checks = checks;
    r
}

fn verify(input: &InputArgs, ctx: &Ctx) -> Outcome {
    let (d, echo) = match load(input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    if d.crossing_count() > ctx.opts.max_crossings {
        let e = Error::ComplexityBudgetExceeded(format!(
            "{} crossings exceed the cap of {}",
            d.crossing_count(),
            ctx.opts.max_crossings
        ));
        return Outcome::fail(exit_code(&e), e.to_string());
    }
    let r = verify_diagram(&d, &ctx.budget());
    let code = if r.all_pass() { exit::OK } else { exit::CHECK_FAILED };
    ctx.emit(&ReportDocument::new("verify", echo, &d, &r, ctx.meta()), code)
}

/// Failed check names for one fixture, including frozen-value mismatches.
pub fn check_fixture(f: &Fixture, budget: &Budget) -> FixtureOutcome {
    let d = f.diagram();
    let r = verify_diagram(&d, budget);
    let mut failed: Vec<String> = r.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.name.clone()).collect();
    if let Some(e) = &f.expected {
        failed.extend(e.mismatches(&r));
    }
    FixtureOutcome { id: f.id.clone(), crossings: d.crossing_count(), pass: failed.is_empty(), failed }
}

fn verify_fixtures(ctx: &Ctx) -> Outcome {
    let budget = ctx.budget();
    let fixtures: Vec<FixtureOutcome> = catalog().par_iter().map(|f| check_fixture(f, &budget)).collect();
    let passed = fixtures.iter().filter(|f| f.pass).count();
    let summary = FixtureSummary {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        total: fixtures.len(),
        passed,
        fixtures,
        meta: ctx.meta(),
    };
    let code = if passed == summary.total { exit::OK } else { exit::CHECK_FAILED };
    let stdout = if ctx.opts.pretty { pretty::summary(&summary) } else { to_json(&summary) };
    Outcome { stdout, stderr: String::new(), code }
}

fn list_fixtures(recompute: bool, ctx: &Ctx) -> Outcome {
    if recompute {
        return Outcome { stdout: to_json(&recompute_expected(&ctx.budget())), ..Outcome::default() };
    }
    let rows: Vec<serde_json::Value> = catalog()
        .iter()
        .map(|f| {
            serde_json::json!({
                "id": f.id,
                "pd": f.pd,
                "braid": f.braid.as_ref().map(|(w, k)| serde_json::json!({"word": w, "strands": k})),
                "crossings": f.crossings(),
                "frozen": f.expected.is_some(),
            })
        })
        .collect();
    let stdout = if ctx.opts.pretty {
        rows.iter()
            .map(|r| format!("{:<22} {:>2}  {}", r["id"].as_str().unwrap_or(""), r["crossings"], r["pd"].as_str().unwrap_or("")))
            .collect::<Vec<_>>()
            .join("\n")
    } else {
        to_json(&rows)
    };
    Outcome { stdout, ..Outcome::default() }
}
