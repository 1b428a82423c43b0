use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use denniston::arcs::{
    denniston_arc, AdditiveSubgroup, Arc, ArcDocument, ArcOptions, QuadraticForm,
};
use denniston::cubic_search::arc_distance;
use denniston::funcode::{
    build_code, macwilliams_dual, min_weight_codeword, weight_distribution, Budget,
    GeneratorMatrix, MonomialSpace,
};
use denniston::gf::{parse_hex, Elem, FieldContext, FieldSpec};
use denniston::report::{self, RunConfig, RunReport};

#[derive(Parser)]
#[command(
    name = "denniston",
    version,
    about = "Codes from Denniston maximal arcs"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest number of projective messages an enumeration may visit.
    #[arg(long, global = true, default_value_t = 1u128 << 32)]
    budget: u128,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Finite field checks.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Build or verify an arc document.
    #[command(subcommand)]
    Arc(ArcCmd),
    /// Evaluation codes on an arc.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Conic intersection bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Cubic curves through an arc.
    #[command(subcommand)]
    Cubic(CubicCmd),
    /// Rerun a table or theorem and compare with the printed values.
    Reproduce {
        #[arg(value_parser = ["table1", "table2", "theorem31", "dim10"])]
        target: String,
        /// Candidate budget of the cubic hill-climb.
        #[arg(long, default_value_t = 1_000_000)]
        search_budget: u64,
        /// Random draws for the sampled checks.
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
    },
    /// Weight distributions over every additive subgroup of one size.
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        size: u64,
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        with_origin: bool,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Validate a modulus and check the field axioms.
    Check {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum ArcCmd {
    /// Construct an arc and print its document.
    Build(ArcArgs),
    /// Rebuild an arc document and check its line incidences.
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Print the generator matrix.
    Build(CodeArgs),
    /// Exact weight distribution.
    Wdist(CodeArgs),
    /// Minimum distance with a witness message.
    Mindist(CodeArgs),
    /// Distinct nonzero weights.
    Twoweight(CodeArgs),
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Exhaustive conic maximum and the sampled elimination checks.
    Theorem31 {
        #[arg(long, default_value_t = 6)]
        m: u32,
        #[arg(long, default_value_t = 10_000)]
        draws: usize,
    },
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Largest cubic intersection with an arc.
    Search {
        #[command(flatten)]
        source: ArcSource,
        /// Candidate budget of the hill-climb.
        #[arg(long, default_value_t = 1_000_000)]
        search_budget: u64,
    },
}

#[derive(Args, Clone)]
struct FieldArgs {
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Defining polynomial in hex, bit i for T^i.
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn context(&self) -> Result<FieldContext> {
        let spec = match &self.modulus {
            Some(h) => FieldSpec::new(self.m, parse_hex(h)?),
            None => FieldSpec::default_for(self.m)?,
        };
        Ok(FieldContext::new(spec)?)
    }
}

#[derive(Args, Clone)]
struct FormArgs {
    /// Coefficients `a,b,c` of ax^2 + bxy + cy^2 in hex.
    #[arg(long)]
    form: Option<String>,
}

impl FormArgs {
    fn form(&self, f: &FieldContext) -> Result<QuadraticForm> {
        match &self.form {
            None => Ok(QuadraticForm::standard(f)),
            Some(s) => {
                let e = parse_elems(f, s)?;
                if e.len() != 3 {
                    bail!("--form needs three coefficients, got {}", e.len());
                }
                Ok(QuadraticForm::new(e[0], e[1], e[2]))
            }
        }
    }
}

#[derive(Args, Clone)]
struct ArcArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    form: FormArgs,
    /// Basis of H in hex, comma separated.
    #[arg(long, conflicts_with = "subgroup_size")]
    subgroup: Option<String>,
    /// Size of H; the first subgroup of that size in enumeration order.
    #[arg(long)]
    subgroup_size: Option<u64>,
    /// Leave out the origin.
    #[arg(long)]
    no_origin: bool,
}

impl ArcArgs {
    fn build(&self) -> Result<Arc> {
        let f = self.field.context()?;
        let form = self.form.form(&f)?;
        let h = match (&self.subgroup, self.subgroup_size) {
            (Some(b), _) => AdditiveSubgroup::from_basis(&f, &parse_elems(&f, b)?)?,
            (None, Some(size)) => {
                if !size.is_power_of_two() || size > f.q() as u64 {
                    bail!(
                        "subgroup size {size} is not a power of two up to q = {}",
                        f.q()
                    );
                }
                AdditiveSubgroup::enumerate(&f, size.trailing_zeros())
                    .into_iter()
                    .next()
                    .context("no subgroup of that size")?
            }
            (None, None) => AdditiveSubgroup::trace_kernel(&f),
        };
        let opts = if self.no_origin {
            ArcOptions::without_origin()
        } else {
            ArcOptions::with_origin()
        };
        Ok(denniston_arc(&f, form, h, opts)?)
    }
}

#[derive(Args, Clone)]
struct ArcSource {
    /// Arc document to read instead of building one.
    #[arg(long, conflicts_with_all = ["subgroup", "subgroup_size", "form"])]
    arc: Option<PathBuf>,
    #[command(flatten)]
    build: ArcArgs,
}

impl ArcSource {
    fn load(&self) -> Result<Arc> {
        match &self.arc {
            Some(p) => read_arc(p),
            None => self.build.build(),
        }
    }
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[command(flatten)]
    source: ArcSource,
    /// `conic5`, `cubic10`, `linear3` or `i:j,i:j,...`.
    #[arg(long, default_value = "conic5")]
    space: String,
    /// Generator matrix text (one hex row per line) instead of an arc.
    #[arg(long, conflicts_with = "arc")]
    generator: Option<PathBuf>,
}

impl CodeArgs {
    fn generator(&self) -> Result<(GeneratorMatrix, Value)> {
        if let Some(p) = &self.generator {
            let f = self.source.build.field.context()?;
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let g = GeneratorMatrix::from_text(&f, &text)?;
            return Ok((g, json!({ "generator_file": p.display().to_string() })));
        }
        let arc = self.source.load()?;
        let space: MonomialSpace = self.space.parse()?;
        let code = build_code(&arc, &space)?;
        let provenance = serde_json::to_value(report::ArcProvenance::of(&arc))?;
        Ok((
            code.generator().clone(),
            json!({ "space": space.to_string(), "arc": provenance }),
        ))
    }
}

fn parse_elems(f: &FieldContext, s: &str) -> Result<Vec<Elem>> {
    s.split(',').map(|t| Ok(f.parse_elem(t.trim())?)).collect()
}

fn read_arc(p: &Path) -> Result<Arc> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(ArcDocument::from_json(&text)?.into_arc()?)
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn config(g: &Global, extra: Value) -> Value {
    let mut v = json!({ "seed": g.seed, "budget": g.budget.to_string() });
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

fn run_config(g: &Global, search_budget: u64, draws: usize) -> RunConfig {
    RunConfig {
        workers: g.workers,
        seed: g.seed,
        budget: g.budget,
        search_budget,
        draws,
    }
}

/// What a command hands back for printing.
enum Output {
    Report(RunReport),
    /// Raw text written as is, e.g. an arc document.
    Text(String, Option<Vec<Vec<String>>>),
}

fn field_check(field: &FieldArgs, g: &Global) -> Result<RunReport> {
    let f = field.context()?;
    let t = Instant::now();
    let q = f.q();
    let mut failures = Vec::new();
    for a in f.elements() {
        if !a.is_zero() {
            if f.mul(a, f.inv(a)?) != Elem::ONE {
                failures.push(format!("inverse of {a}"));
            }
            let l = f.log(a).context("log of a nonzero element")?;
            if f.exp(l as u64) != a {
                failures.push(format!("exp(log({a}))"));
            }
        }
    }
    let exhaustive = f.m() <= 6;
    if exhaustive {
        for a in f.elements() {
            for b in f.elements() {
                if f.mul(a, b) != f.mul(b, a) {
                    failures.push(format!("{a}*{b} not commutative"));
                }
                for c in f.elements() {
                    if f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c)) {
                        failures.push(format!("({a}*{b})*{c} not associative"));
                    }
                    if f.mul(a, b + c) != f.mul(a, b) + f.mul(a, c) {
                        failures.push(format!("{a}*({b}+{c}) not distributive"));
                    }
                }
            }
        }
    }
    failures.truncate(20);
    let mut r = RunReport::new(
        "field check",
        config(g, json!({ "field": f.spec() })),
        Some(f.spec()),
    );
    r.passed = failures.is_empty();
    r.results = json!({
        "q": q,
        "generator": f.generator(),
        "xi": f.xi(),
        "axioms_exhaustive": exhaustive,
        "failures": failures,
    });
    r.timings_ms.insert("check".into(), millis(t));
    Ok(r)
}

fn arc_verify(file: &Path, g: &Global) -> Result<RunReport> {
    let t = Instant::now();
    let arc = read_arc(file)?;
    let mut r = RunReport::new(
        "arc verify",
        config(g, json!({ "file": file.display().to_string() })),
        Some(arc.field().spec()),
    );
    let lines = if arc.includes_origin() {
        arc.verify_maximal().map_err(|e| e.to_string())
    } else {
        arc.with_origin()
            .verify_maximal()
            .map_err(|e| e.to_string())
    };
    let l = arc.subgroup().subspace_polynomial(arc.field());
    let identity = arc.curve_identity(&l);
    r.passed = lines.is_ok() && identity && arc.len() == arc.expected_len();
    r.results = json!({
        "arc": report::ArcProvenance::of(&arc),
        "expected_points": arc.expected_len(),
        "degree": arc.degree(),
        "line_incidence": match &lines { Ok(d) => json!({"ok": true, "degree": d}), Err(e) => json!({"ok": false, "error": e}) },
        "subspace_polynomial_identity": identity,
    });
    r.timings_ms.insert("verify".into(), millis(t));
    Ok(r)
}

fn code_cmd(cmd: &CodeCmd, g: &Global) -> Result<Output> {
    let (name, args) = match cmd {
        CodeCmd::Build(a) => ("code build", a),
        CodeCmd::Wdist(a) => ("code wdist", a),
        CodeCmd::Mindist(a) => ("code mindist", a),
        CodeCmd::Twoweight(a) => ("code twoweight", a),
    };
    let (gen, source) = args.generator()?;
    let budget = Budget::messages(g.budget);
    if let CodeCmd::Build(_) = cmd {
        let rows: Vec<Vec<String>> = gen
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        if g.format == Format::Csv {
            return Ok(Output::Text(String::new(), Some(rows)));
        }
        return Ok(Output::Text(gen.to_text(), None));
    }
    let t = Instant::now();
    let mut r = RunReport::new(name, config(g, source.clone()), Some(gen.field().spec()));
    let base = json!({ "length": gen.n(), "dimension": gen.k() });
    r.results = match cmd {
        CodeCmd::Wdist(_) => {
            let d = weight_distribution(&gen, g.workers, budget)?;
            let inv = d.check_invariants(gen.k());
            let mw = macwilliams_dual(&d, gen.k());
            r.passed = inv.is_ok() && mw.is_ok();
            json!({
                "length": gen.n(),
                "dimension": gen.k(),
                "min_distance": d.min_distance(),
                "weight_distribution": d.as_pairs(),
                "invariants": inv.err(),
                "macwilliams": mw.as_ref().err().map(|e| e.to_string()),
                "dual_distribution": mw.ok().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            })
        }
        CodeCmd::Mindist(_) => {
            let (d, w) = min_weight_codeword(&gen, g.workers, budget)?;
            json!({
                "length": gen.n(),
                "dimension": gen.k(),
                "min_distance": d.min_distance(),
                "witness": w,
            })
        }
        CodeCmd::Twoweight(_) => {
            let d = weight_distribution(&gen, g.workers, budget)?;
            let w = d.nonzero_weights();
            json!({
                "length": gen.n(),
                "dimension": gen.k(),
                "weights": w,
                "two_weight": w.len() == 2,
            })
        }
        CodeCmd::Build(_) => base,
    };
    r.timings_ms.insert("enumerate".into(), millis(t));
    Ok(Output::Report(r))
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Field(FieldCmd::Check { field }) => Output::Report(field_check(field, g)?),
        Command::Arc(ArcCmd::Build(a)) => {
            let arc = a.build()?;
            let doc = arc.to_document();
            let rows = doc
                .points
                .iter()
                .map(|[x, y]| vec![x.to_string(), y.to_string()])
                .collect();
            Output::Text(doc.to_json() + "\n", Some(rows))
        }
        Command::Arc(ArcCmd::Verify { file }) => Output::Report(arc_verify(file, g)?),
        Command::Code(c) => code_cmd(c, g)?,
        Command::Bound(BoundCmd::Theorem31 { m, draws }) => {
            let cfg = run_config(g, 0, *draws);
            let f = FieldContext::with_degree(*m)?;
            let mut r = RunReport::new(
                "bound theorem31",
                config(g, json!({ "m": m, "draws": draws })),
                Some(f.spec()),
            );
            let (res, timings) = report::theorem31(*m, &cfg)?;
            r.passed = res.bound.satisfied && res.elimination.passed() && res.proof_chain.passed();
            r.results = serde_json::to_value(&res)?;
            r.timings_ms = timings;
            Output::Report(r)
        }
        Command::Cubic(CubicCmd::Search {
            source,
            search_budget,
        }) => {
            let arc = source.load()?;
            let t = Instant::now();
            let d = arc_distance(&arc, *search_budget, g.seed, g.workers)?;
            let mut r = RunReport::new(
                "cubic search",
                config(
                    g,
                    json!({ "arc": report::ArcProvenance::of(&arc), "search_budget": search_budget }),
                ),
                Some(arc.field().spec()),
            );
            r.results = serde_json::to_value(&d)?;
            r.timings_ms.insert("search".into(), millis(t));
            Output::Report(r)
        }
        Command::Reproduce {
            target,
            search_budget,
            draws,
        } => Output::Report(report::reproduce(
            target,
            &run_config(g, *search_budget, *draws),
        )?),
        Command::Sweep {
            field,
            size,
            form,
            with_origin,
        } => {
            let f = field.context()?;
            let qf = form.form(&f)?;
            let t = Instant::now();
            let s = report::sweep_subgroups(&f, *size, qf, *with_origin, &run_config(g, 0, 0))?;
            let mut r = RunReport::new(
                "sweep",
                config(
                    g,
                    json!({ "field": f.spec(), "size": size, "form": [qf.a, qf.b, qf.c], "with_origin": with_origin }),
                ),
                Some(f.spec()),
            );
            r.results = serde_json::to_value(&s)?;
            r.timings_ms.insert("sweep".into(), millis(t));
            Output::Report(r)
        }
    })
}

/// Flattens a JSON value into `path,value` rows.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<[String; 2]>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push([prefix.to_string(), s.clone()]),
        other => out.push([prefix.to_string(), other.to_string()]),
    }
}

fn csv_rows<I, R>(rows: I, header: Option<&[&str]>) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!(e.to_string()))
}

fn render(out: &Output, format: Format) -> Result<Vec<u8>> {
    Ok(match (out, format) {
        (Output::Report(r), Format::Json) => (r.to_json() + "\n").into_bytes(),
        (Output::Report(r), Format::Csv) => {
            let mut rows = Vec::new();
            flatten("", &serde_json::to_value(r)?, &mut rows);
            csv_rows(rows, Some(&["path", "value"]))?
        }
        (Output::Text(t, _), Format::Json) => t.clone().into_bytes(),
        (Output::Text(_, Some(rows)), Format::Csv) => csv_rows(rows.clone(), None)?,
        (Output::Text(t, None), Format::Csv) => t.clone().into_bytes(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let bytes = render(&out, cli.global.format)?;
        match &cli.global.out {
            Some(p) => fs::write(p, &bytes).with_context(|| format!("writing {}", p.display()))?,
            None => io::stdout().lock().write_all(&bytes)?,
        }
        Ok(out)
    });
    match result {
        Ok(Output::Report(r)) if !r.passed => {
            eprintln!("{}: hard check failed", r.command);
            ExitCode::from(3)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}");
            eprintln!("error: {msg}");
            if msg.contains("exceeds the budget") {
                eprintln!("hint: raise --budget; codes with k*m > 48 are refused at any budget");
            }
            ExitCode::FAILURE
        }
    }
}
