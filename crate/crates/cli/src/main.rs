use std::path::PathBuf;
use std::process::ExitCode;

use bracelab::brace::{BraceIdeal, LiftMode, SkewBrace};
use bracelab::constructions;
use bracelab::fp::{self, FpMatrix, MatrixGroup, SearchConfig, SearchStrategy};
use bracelab::group::{self, catalog, GroupTable};
use bracelab::grun;
use bracelab::io;
use bracelab::scan::{Coverage, DEFAULT_SEED};
use bracelab::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bracelab", version, about = "Finite skew braces and their annihilator series")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a brace file describes a skew brace.
    Validate { file: PathBuf },
    /// Orders of the derived ideal, socle, annihilator and second annihilator.
    Info(#[command(flatten)] Source),
    /// The quotient by an ideal, written as a brace file.
    Quotient {
        #[command(flatten)]
        source: Source,
        /// Comma-separated element indices, or one of derived, socle, ann, ann2.
        #[arg(long)]
        ideal: String,
    },
    /// Build a brace and write it as a brace file.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Derived ideal, annihilators and the defect (A*A)*Ann2(A).
    Grun(#[command(flatten)] Source),
    /// Check the standard identities over all triples or a sample.
    Identities {
        #[command(flatten)]
        source: Source,
        /// Check a seeded sample instead of all triples.
        #[arg(long)]
        sampled: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check the two recipe conditions for a list of matrices.
    RecipeCheck {
        #[arg(long)]
        matrices: PathBuf,
    },
    /// Search GL_n(F_p) for generator sets satisfying both recipe conditions.
    RecipeSearch {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum)]
        strategy: Option<Strategy>,
        /// Largest generator set tried.
        #[arg(long)]
        max_generators: Option<usize>,
    },
    /// Look for an isomorphism between two groups.
    Iso {
        /// A group name (S4, Z6, SL2_5, Q8, ...) or a group file.
        first: String,
        second: String,
    },
}

#[derive(Args)]
struct Source {
    /// Brace file.
    file: Option<PathBuf>,
    /// Use a built-in brace instead of a file.
    #[arg(long, value_enum, conflicts_with = "file")]
    construct: Option<Named>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    Example1,
    Prop1,
    Prop3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Construct {
    /// The trivial brace a∘b = a·b.
    Trivial(GroupArg),
    /// The almost trivial brace a∘b = b·a.
    AlmostTrivial(GroupArg),
    /// F_p^n ⋊ C with C acting through the group generated by the matrices.
    Semidirect {
        /// Matrix file with the generators of the image of the action.
        #[arg(long)]
        matrices: PathBuf,
        /// Brace file for C; defaults to the order-24 perfect brace.
        #[arg(long)]
        acting: Option<PathBuf>,
    },
    /// The perfect brace of order 24 with (C,∘) ≅ S4.
    Example1,
    /// F_p^2 ⋊ C acting through ⟨[[1,1],[0,1]]⟩.
    Prop1 {
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// The perfect F_2^4 ⋊ C with Ann(A/Ann(A)) ≠ 1.
    Prop3,
}

#[derive(Args)]
struct GroupArg {
    /// A group name (S4, Z6, SL2_5, Q8, ...) or a group file.
    #[arg(long)]
    group: String,
}

/// Failure modes, mapped to exit codes 1 and 2.
enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::NonPrimeModulus(_)
            | Error::DimensionMismatch(_)
            | Error::SizeExceeded(..)
            | Error::OrderTooLarge(_) => Failure::Usage(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    data: Value,
    passed: bool,
}

impl Output {
    fn pass(text: String, data: Value) -> Self {
        Output { text, data, passed: true }
    }
}

fn seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("BRACELAB_SEED").ok()?.parse().ok()).unwrap_or(DEFAULT_SEED)
}

fn load_group(spec: &str) -> Result<GroupTable, Failure> {
    if let Some(g) = catalog::by_name(spec) {
        return Ok(g);
    }
    let path = PathBuf::from(spec);
    if path.exists() {
        return Ok(io::read_group_file(path)?);
    }
    Err(Failure::Usage(format!("unknown group {spec:?}")))
}

fn named(which: Named) -> Result<(String, SkewBrace), Failure> {
    Ok(match which {
        Named::Example1 => ("example1".into(), constructions::example1_brace()?),
        Named::Prop1 => ("prop1".into(), constructions::shear_counterexample(2)?),
        Named::Prop3 => ("prop3".into(), constructions::perfect_counterexample()?),
    })
}

fn load(source: &Source) -> Result<(String, SkewBrace), Failure> {
    match (&source.file, source.construct) {
        (_, Some(which)) => named(which),
        (Some(path), None) => {
            let doc = io::read_brace_file(path)?;
            let id = doc.name.unwrap_or_else(|| path.display().to_string());
            Ok((id, doc.brace))
        }
        (None, None) => Err(Failure::Usage("give a brace file or --construct".into())),
    }
}

fn members(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn vector(v: &[u8]) -> String {
    let parts: Vec<String> = v.iter().map(u8::to_string).collect();
    format!("({})", parts.join(","))
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn validate(file: &PathBuf) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    match io::parse_brace(&text) {
        Ok(doc) => {
            let b = &doc.brace;
            let mut text = format!("valid skew brace of order {}\n", b.order());
            if let Some(e) = doc.relabeled_identity {
                text += &format!("identity relabeled from index {e} to 0\n");
            }
            if b.sampled() {
                text += "brace relation checked on a sample\n";
            }
            let data = json!({
                "valid": true,
                "order": b.order(),
                "relabeled_identity": doc.relabeled_identity,
                "sampled": b.sampled(),
            });
            Ok(Output::pass(text, data))
        }
        Err(Error::Validation(inner)) => {
            let data = json!({ "valid": false, "error": inner.to_string(), "detail": error_detail(&inner) });
            Ok(Output { text: format!("invalid: {inner}\n"), data, passed: false })
        }
        Err(e) => Err(e.into()),
    }
}

fn error_detail(e: &Error) -> Value {
    match e {
        Error::NotAGroup(r) => to_value(r),
        Error::LeftBraceViolation(a, b, c) => json!({ "rule": "left-brace-relation", "elements": [a, b, c] }),
        Error::IdentityMismatch { dot, circ } => json!({ "rule": "identity-mismatch", "elements": [dot, circ] }),
        Error::OrderMismatch { dot, circ } => json!({ "rule": "order-mismatch", "elements": [dot, circ] }),
        _ => Value::Null,
    }
}

fn info(source: &Source) -> Result<Output, Failure> {
    let (id, b) = load(source)?;
    let derived = b.derived_ideal()?;
    let socle = b.socle()?;
    let ann = b.annihilator()?;
    let ann2 = b.second_annihilator()?;
    let two_sided = b.is_two_sided();
    let text = format!(
        "brace {id}\norder {}\n|A*A| {}\n|Soc| {}\n|Ann| {}\n|Ann2| {}\nperfect {}\ntwo-sided {}\n\
         (A,·) abelian {}\nAnn {}\n",
        b.order(),
        derived.order(),
        socle.order(),
        ann.order(),
        ann2.order(),
        derived.order() == b.order(),
        two_sided,
        b.dot().is_abelian(),
        members(ann.members()),
    );
    let data = json!({
        "brace_id": id,
        "order": b.order(),
        "derived_order": derived.order(),
        "socle_order": socle.order(),
        "ann_order": ann.order(),
        "ann2_order": ann2.order(),
        "is_perfect": derived.order() == b.order(),
        "is_two_sided": two_sided,
        "dot_abelian": b.dot().is_abelian(),
        "ann": ann.members(),
        "ann2": ann2.members(),
    });
    Ok(Output::pass(text, data))
}

fn resolve_ideal(b: &SkewBrace, spec: &str) -> Result<BraceIdeal, Failure> {
    let ideal = match spec {
        "derived" => b.derived_ideal()?,
        "socle" => b.socle()?,
        "ann" => b.annihilator()?,
        "ann2" => b.second_annihilator()?,
        list => {
            let xs = list
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad ideal {list:?}")))?;
            if let Some(&x) = xs.iter().find(|&&x| x >= b.order()) {
                return Err(Failure::Usage(format!("element {x} out of range")));
            }
            b.ideal(&xs)?
        }
    };
    Ok(ideal)
}

fn quotient(source: &Source, spec: &str) -> Result<Output, Failure> {
    let (id, b) = load(source)?;
    let ideal = resolve_ideal(&b, spec)?;
    let (q, proj) = b.quotient_brace(&ideal)?;
    let name = format!("{id} / {spec}");
    let text = io::serialize_brace(&q, Some(&name));
    let data = json!({ "order": q.order(), "projection": proj, "brace": text });
    Ok(Output::pass(text, data))
}

fn construct(what: &Construct) -> Result<Output, Failure> {
    let (name, b) = match what {
        Construct::Trivial(g) => (format!("trivial {}", g.group), SkewBrace::lift(&load_group(&g.group)?, LiftMode::Trivial)),
        Construct::AlmostTrivial(g) => (
            format!("almost trivial {}", g.group),
            SkewBrace::lift(&load_group(&g.group)?, LiftMode::AlmostTrivial),
        ),
        Construct::Semidirect { matrices, acting } => {
            let gens = io::read_matrix_file(matrices)?;
            let c = match acting {
                Some(path) => io::read_brace_file(path)?.brace,
                None => constructions::example1_brace()?,
            };
            let target = MatrixGroup::closure(&gens)?;
            ("semidirect".into(), constructions::counterexample_brace(&c, &target)?)
        }
        Construct::Example1 => ("example1".into(), constructions::example1_brace()?),
        Construct::Prop1 { p } => (format!("prop1 p={p}"), constructions::shear_counterexample(*p)?),
        Construct::Prop3 => ("prop3".into(), constructions::perfect_counterexample()?),
    };
    let text = io::serialize_brace(&b, Some(&name));
    let data = json!({ "name": name, "order": b.order(), "brace": text });
    Ok(Output::pass(text, data))
}

fn grun_report(source: &Source) -> Result<Output, Failure> {
    let (id, b) = load(source)?;
    let r = grun::grun_defect(&b, &id)?;
    let text = format!(
        "brace {}\norder {}\nperfect {}\ntwo-sided {}\n|Ann| {}\n|Ann2| {}\ndefect {}\n\
         annihilator products {}\ndefect criterion {}\ngrun holds {}\n",
        r.brace_id,
        r.order,
        r.is_perfect,
        r.is_two_sided,
        r.ann_order,
        r.ann2_order,
        members(&r.defect_set),
        r.thm1_status,
        r.cor_equivalence_status,
        r.grun_holds,
    );
    Ok(Output::pass(text, to_value(&r)))
}

fn identities(source: &Source, sampled: bool, seed_flag: Option<u64>) -> Result<Output, Failure> {
    let (_, b) = load(source)?;
    let coverage = if sampled { Coverage::Sampled { seed: seed(seed_flag) } } else { Coverage::Auto };
    let report = grun::identity_report(&b, coverage);
    Ok(Output { text: format!("{report}\n"), data: to_value(&report), passed: report.passed() })
}

fn recipe_check(path: &PathBuf) -> Result<Output, Failure> {
    let gens = io::read_matrix_file(path)?;
    let r = fp::recipe_check(&gens)?;
    let group = MatrixGroup::closure(&gens)?;
    let witnesses: Vec<String> = r.witnesses.iter().map(|v| vector(v)).collect();
    let text = format!(
        "cond1 {}\ncond2 {}\nU {}\nW {}\nwitnesses {}\ngroup order {}\n",
        r.cond1,
        r.cond2,
        r.fixed,
        r.lifted,
        witnesses.join(" "),
        group.order()
    );
    let mut data = to_value(&r);
    data["group_order"] = json!(group.order());
    Ok(Output { text, data, passed: r.qualifies() })
}

fn recipe_search(
    n: usize,
    p: u32,
    seed_flag: Option<u64>,
    budget: Option<u64>,
    strategy: Option<Strategy>,
    max_generators: Option<usize>,
) -> Result<Output, Failure> {
    let strategy = strategy.unwrap_or(if seed_flag.is_some() { Strategy::Random } else { Strategy::Exhaustive });
    let mut config = match strategy {
        Strategy::Exhaustive => SearchConfig::exhaustive(n, p),
        Strategy::Random => SearchConfig::random(n, p, seed(seed_flag)),
    };
    if let Some(b) = budget {
        config.budget = b;
    }
    if let Some(m) = max_generators {
        config.max_generators = m;
    }
    let search = fp::search_recipe(&config)?;
    let mut text = format!(
        "strategy {}\nnodes {}\nqualifying sets {}\nbudget exceeded {}\ncandidates {}\n",
        match config.strategy {
            SearchStrategy::Exhaustive => "exhaustive".to_string(),
            SearchStrategy::Random { seed } => format!("random (seed {seed})"),
        },
        search.nodes,
        search.qualifying,
        search.budget_exceeded,
        search.candidates.len()
    );
    for c in &search.candidates {
        text += &format!(
            "- order {} fixed dimension {} generators {}\n",
            c.signature.group_order,
            c.signature.fixed_dimension,
            c.generators.len()
        );
        for g in &c.generators {
            text += &format!("{}\n", matrix_line(g));
        }
    }
    Ok(Output::pass(text, to_value(&search)))
}

fn matrix_line(m: &FpMatrix) -> String {
    let rows: Vec<String> = m.row_vecs().iter().map(|r| vector(r)).collect();
    format!("  [{}]", rows.join(" "))
}

fn iso(first: &str, second: &str) -> Result<Output, Failure> {
    let (g, h) = (load_group(first)?, load_group(second)?);
    let found = group::find_isomorphism(&g, &h)?;
    let text = match &found {
        Some(f) => format!("isomorphic\nimages {}\n", members(f.images())),
        None => "not isomorphic\n".to_string(),
    };
    let data = json!({ "isomorphic": found.is_some(), "images": found.as_ref().map(|f| f.images().to_vec()) });
    Ok(Output { text, data, passed: found.is_some() })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Info(source) => info(source),
        Command::Quotient { source, ideal } => quotient(source, ideal),
        Command::Construct { what } => construct(what),
        Command::Grun(source) => grun_report(source),
        Command::Identities { source, sampled, seed } => identities(source, *sampled, *seed),
        Command::RecipeCheck { matrices } => recipe_check(matrices),
        Command::RecipeSearch { n, p, seed, budget, strategy, max_generators } => {
            recipe_search(*n, *p, *seed, *budget, *strategy, *max_generators)
        }
        Command::Iso { first, second } => iso(first, second),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => {
                    let mut data = out.data;
                    if let Value::Object(map) = &mut data {
                        map.insert("passed".into(), Value::Bool(out.passed));
                    }
                    serde_json::to_string_pretty(&data).expect("json") + "\n"
                }
            };
            (body, if out.passed { 0 } else { 1 })
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(code)
}
