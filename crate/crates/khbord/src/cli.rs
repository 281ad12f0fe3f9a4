//! Command-line front end.
//!
//! `run` returns the process exit code: 0 on success, 1 when a check fails,
//! 2 on usage or parse errors.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::Homology;
use crate::bordered::{box_a_d, BorderedError, BoxOptions, ModuleDefinition, MorphismDefinition};
use crate::khovanov::{
    braid_to_diagram, build_complex_with, determinant, mirror_complex, parse_braid_word, parse_pd, BuildOptions,
    Closure, KhError, LinkDiagram, Ring, DEFAULT_MAX_CROSSINGS,
};
use crate::paperdata::catalog::{Built, Catalog};
use crate::paperdata::{default_max_arity, run_all, run_check, PaperDataError, Report, Status, CHECKS};
use crate::specseq::{bn_lee_ss_with, SpectralSequence};

#[derive(Parser, Debug)]
#[command(name = "khbord", version, about = "Khovanov and Bar-Natan homology, and bordered-module checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bigraded Khovanov or Bar-Natan homology.
    KhHomology(KhArgs),
    /// Pages of the Bar-Natan-Lee spectral sequence.
    KhSs(KhArgs),
    /// Determinant of a knot.
    KhDet(KhArgs),
    /// Replays the bordered verifications.
    BorderedCheck(CheckArgs),
    /// Box tensor product of catalog entries, e.g. `azbar*az`.
    BorderedBox(BoxArgs),
    /// Loads a definition file and checks its structure equations.
    BorderedValidate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RingArg {
    F2,
    F2q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClosureArg {
    Plat,
    Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["pd", "braid"])))]
struct KhArgs {
    /// PD code file, one `X(a,b,c,d)` per crossing.
    #[arg(long, value_name = "FILE")]
    pd: Option<String>,
    /// Braid word, `i` for σ_i and `-i` for its inverse.
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Number of strands; defaults to one more than the largest generator.
    #[arg(long, requires = "braid")]
    strands: Option<usize>,
    #[arg(long, value_enum, default_value = "trace", requires = "braid")]
    closure: ClosureArg,
    #[arg(long)]
    reduced: bool,
    #[arg(long, value_enum)]
    ring: Option<RingArg>,
    /// Compute for the mirror image.
    #[arg(long)]
    as_mirror: bool,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// `all` or one of omega, az-pairing, gprime-K, gprime-U, basis-change, catalog.
    check: String,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
    /// Largest arity at which morphism differentials are evaluated.
    #[arg(long, default_value_t = default_max_arity())]
    max_arity: usize,
}

#[derive(Args, Debug)]
struct BoxArgs {
    expr: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    file: String,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<KhError> for Failure {
    fn from(e: KhError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PaperDataError> for Failure {
    fn from(e: PaperDataError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<BorderedError> for Failure {
    fn from(e: BorderedError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs the command line `argv` (including the program name) against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // Unlocked handles: worker threads print progress to stderr while a command runs.
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let result = match &cli.command {
        Command::KhHomology(a) => kh_homology(a, out),
        Command::KhSs(a) => kh_ss(a, out),
        Command::KhDet(a) => kh_det(a, out),
        Command::BorderedCheck(a) => bordered_check(a, out),
        Command::BorderedBox(a) => bordered_box(a, out),
        Command::BorderedValidate(a) => bordered_validate(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn diagram(a: &KhArgs) -> Result<LinkDiagram, Failure> {
    if let Some(path) = &a.pd {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        return Ok(parse_pd(&text)?);
    }
    let word = parse_braid_word(a.braid.as_deref().unwrap_or_default())?;
    let strands = a.strands.unwrap_or_else(|| word.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0) + 1);
    let closure = match a.closure {
        ClosureArg::Plat => Closure::Plat,
        ClosureArg::Trace => Closure::Trace,
    };
    Ok(braid_to_diagram(&word, strands, closure)?)
}

fn options(a: &KhArgs, ring: Ring) -> BuildOptions {
    BuildOptions { reduced: a.reduced, ring, max_crossings: a.max_crossings }
}

/// Progress goes to the process stderr; the build calls it from worker threads.
fn progress_line(done: usize, total: usize) {
    eprintln!("progress: {done}/{total} vertices");
}

#[derive(Serialize)]
struct Entry {
    h: i32,
    q: i32,
    dim: usize,
}

#[derive(Serialize)]
struct REntry {
    h: i32,
    q: i32,
    a: usize,
    b: usize,
}

#[derive(Serialize)]
struct HomologyReport {
    ring: &'static str,
    reduced: bool,
    mirror: bool,
    crossings: usize,
    total: usize,
    delta_thin: bool,
    dims: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_structure: Option<Vec<REntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion_rank: Option<usize>,
}

fn entries(h: &Homology) -> Vec<Entry> {
    h.dims.iter().filter(|(_, &d)| d > 0).map(|(g, &dim)| Entry { h: g.h, q: g.q, dim }).collect()
}

/// Rows are homological degrees, columns quantum degrees.
fn table(cells: &BTreeMap<(i32, i32), String>) -> String {
    if cells.is_empty() {
        return "(zero)\n".into();
    }
    let hs: BTreeSet<i32> = cells.keys().map(|k| k.0).collect();
    let qs: BTreeSet<i32> = cells.keys().map(|k| k.1).collect();
    let width = cells.values().map(String::len).chain(qs.iter().map(|q| q.to_string().len())).max().unwrap_or(1);
    let hw = hs.iter().map(|h| h.to_string().len()).max().unwrap_or(1).max(3);
    let mut s = format!("{:>hw$} |", "h\\q");
    for q in &qs {
        s += &format!(" {q:>width$}");
    }
    s.push('\n');
    s += &format!("{}-+{}\n", "-".repeat(hw), "-".repeat((width + 1) * qs.len()));
    for h in &hs {
        s += &format!("{h:>hw$} |");
        for q in &qs {
            let c = cells.get(&(*h, *q)).map_or(".", String::as_str);
            s += &format!(" {c:>width$}");
        }
        s.push('\n');
    }
    s
}

fn dim_table(h: &Homology) -> String {
    table(&h.dims.iter().filter(|(_, &d)| d > 0).map(|(g, d)| ((g.h, g.q), d.to_string())).collect())
}

fn kh_homology(a: &KhArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let d = diagram(a)?;
    let ring = match a.ring.unwrap_or(RingArg::F2) {
        RingArg::F2 => Ring::F2,
        RingArg::F2q => Ring::R,
    };
    let mut c = build_complex_with(&d, &options(a, ring), Some(&progress_line))?;
    if a.as_mirror {
        c = mirror_complex(&c);
    }
    let h = c.homology();
    let over_r = c.homology_over_r();
    let report = HomologyReport {
        ring: if ring == Ring::F2 { "f2" } else { "f2q" },
        reduced: a.reduced,
        mirror: a.as_mirror,
        crossings: d.len(),
        total: h.total(),
        delta_thin: crate::khovanov::is_delta_thin(&h),
        dims: entries(&h),
        r_structure: over_r.as_ref().map(|r| {
            r.ranks.iter().filter(|(_, v)| v.0 + v.1 > 0).map(|(g, &(a, b))| REntry { h: g.h, q: g.q, a, b }).collect()
        }),
        free_rank: over_r.as_ref().map(|r| r.free_rank()),
        torsion_rank: over_r.as_ref().map(|r| r.torsion_rank()),
    };
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes")).map_err(io)?;
        return Ok(());
    }
    let mut s = format!(
        "ring {}, {}{}, {} crossings\n",
        report.ring,
        if a.reduced { "reduced" } else { "unreduced" },
        if a.as_mirror { ", mirror" } else { "" },
        report.crossings
    );
    s += &dim_table(&h);
    s += &format!("total dim {}\n", report.total);
    s += &format!("delta-thin {}\n", report.delta_thin);
    if let Some(r) = &over_r {
        let cells = r.ranks.iter().filter(|(_, v)| v.0 + v.1 > 0).map(|(g, (a, b))| ((g.h, g.q), format!("{a},{b}"))).collect();
        s += "R-structure (a,b): R^a + (R/Q)^b\n";
        s += &table(&cells);
        s += &format!("free rank {}, torsion rank {}\n", r.free_rank(), r.torsion_rank());
    }
    write!(out, "{s}").map_err(io)
}

#[derive(Serialize)]
struct PageReport {
    page: usize,
    /// Filtration jump of this page's differential.
    arrow_length: usize,
    total: usize,
    dims: Vec<Entry>,
    d_rank: usize,
    collapsed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_structure: Option<Vec<REntry>>,
}

fn page_reports(ss: &SpectralSequence) -> Vec<PageReport> {
    ss.pages
        .iter()
        .map(|p| PageReport {
            page: p.r,
            arrow_length: p.r,
            total: p.total(),
            dims: entries(&p.homology()),
            d_rank: p.d_rank,
            collapsed: p.r >= ss.collapse_page,
            r_structure: p.r_structure.as_ref().map(|v| {
                v.iter().filter(|t| t.2 + t.3 > 0).map(|&(h, q, a, b)| REntry { h, q, a, b }).collect()
            }),
        })
        .collect()
}

fn kh_ss(a: &KhArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.ring == Some(RingArg::F2) {
        return Err(Failure::Usage("the Bar-Natan-Lee spectral sequence is defined over f2q".into()));
    }
    let mut d = diagram(a)?;
    if a.as_mirror {
        d = d.mirror();
    }
    let ss = bn_lee_ss_with(&d, &options(a, Ring::R), Some(&progress_line)).map_err(|e| Failure::Usage(e.to_string()))?;
    let pages = page_reports(&ss);
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&pages).expect("report serializes")).map_err(io)?;
        return Ok(());
    }
    let mut s = String::new();
    for (p, page) in pages.iter().zip(&ss.pages) {
        s += &format!(
            "E_{} (d_{} raises the Q-filtration by {}): total dim {}, rank d_{} = {}{}\n",
            p.page,
            p.page,
            p.arrow_length,
            p.total,
            p.page,
            p.d_rank,
            if p.collapsed { ", collapsed" } else { "" }
        );
        s += &dim_table(&page.homology());
        if let (Some(a), Some(b)) = (page.free_rank(), page.torsion_rank()) {
            s += &format!("R-structure: free rank {a}, torsion rank {b}\n");
        }
    }
    s += &format!("collapses at E_{}; abutment dim {}\n", ss.collapse_page, ss.abutment().total());
    write!(out, "{s}").map_err(io)
}

fn kh_det(a: &KhArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut d = diagram(a)?;
    if a.as_mirror {
        d = d.mirror();
    }
    let det = determinant(&d)?;
    if a.json {
        writeln!(out, "{}", serde_json::json!({ "determinant": det, "crossings": d.len() })).map_err(io)
    } else {
        writeln!(out, "determinant {det}").map_err(io)
    }
}

fn print_reports(reports: &[Report], format: Option<ReportFormat>, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Some(ReportFormat::Json) => {
            writeln!(out, "{}", serde_json::to_string_pretty(reports).expect("report serializes")).map_err(io)?
        }
        None => {
            for r in reports {
                writeln!(out, "{r}").map_err(io)?;
            }
        }
    }
    if reports.iter().all(Report::passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn bordered_check(a: &CheckArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let cat = Catalog::builtin();
    let reports = if a.check == "all" {
        run_all(&cat, a.max_arity)?
    } else if CHECKS.contains(&a.check.as_str()) {
        vec![run_check(&cat, &a.check, a.max_arity)?]
    } else {
        return Err(Failure::Usage(format!("unknown check {:?}; expected all or one of {}", a.check, CHECKS.join(", "))));
    };
    print_reports(&reports, a.report, out)
}

fn bordered_box(a: &BoxArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let cat = Catalog::builtin();
    let built = match cat.resolve(&a.expr) {
        Ok(b) => b,
        Err(first) => {
            // An A-module boxed with a D-module gives a chain complex.
            let Some((left, right)) = a.expr.rsplit_once('*') else { return Err(first.into()) };
            let (Ok(m), Ok(n)) = (cat.type_a(left), cat.type_d(right)) else { return Err(first.into()) };
            let c = box_a_d(&m, &n, BoxOptions::default())?;
            let arrows: Vec<(String, String)> =
                c.differential().entries().map(|(x, y)| (c.names()[x].clone(), c.names()[y].clone())).collect();
            if a.json {
                let v = serde_json::json!({
                    "kind": "complex",
                    "name": a.expr,
                    "generators": c.names(),
                    "differential": arrows,
                    "homology_dim": c.homology_dim(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io)?;
            } else {
                let mut s = format!("{}: chain complex with {} generators\n", a.expr, c.len());
                for (x, y) in &arrows {
                    s += &format!("  d {x} -> {y}\n");
                }
                s += &format!("homology dim {}\n", c.homology_dim());
                write!(out, "{s}").map_err(io)?;
            }
            return Ok(());
        }
    };
    let def = built.to_definition(&a.expr);
    if a.json {
        writeln!(out, "{}", def.to_json()).map_err(io)
    } else {
        let mut s = format!("{}: type {} with {} generators\n", a.expr, built.kind(), built.len());
        for g in &def.generators {
            s += &format!("  {}\n", g.name);
        }
        for op in &def.ops {
            let inputs: String = op.alg_in.iter().map(|x| format!(", {x}")).collect();
            let coeff = op.alg_out.as_deref().map(|c| format!("{c} ⊗ ")).unwrap_or_default();
            s += &format!("  m({}{inputs}) = {coeff}{}\n", op.in_gen, op.out_gen);
        }
        write!(out, "{s}").map_err(io)
    }
}

fn validate_report(cat: &Catalog, text: &str) -> Result<Report, Failure> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Failure::Usage(e.to_string()))?;
    let kind = value.get("kind").and_then(|k| k.as_str()).unwrap_or_default().to_string();
    let alg = cat.algebra();
    let failures = if kind.ends_with("-morphism") {
        let def = MorphismDefinition::from_json(text)?;
        let check = format!("{} {}", def.kind, def.name);
        let failures = match kind.as_str() {
            "D-morphism" => def.to_d_morphism(&cat.type_d(&def.source)?, &cat.type_d(&def.target)?)?.chain_map_failures(),
            "DA-morphism" => def
                .to_da_morphism(&cat.type_da(&def.source)?, &cat.type_da(&def.target)?)?
                .chain_map_failures(default_max_arity())?,
            "A-morphism" => def.to_a_morphism(&cat.type_a(&def.source)?, &cat.type_a(&def.target)?)?.chain_map_failures(),
            other => return Err(Failure::Usage(format!("unknown kind {other}"))),
        };
        (check, "is a chain map", failures)
    } else {
        let def = ModuleDefinition::from_json(text)?;
        let check = format!("{} {}", def.kind, def.name);
        let built = match kind.as_str() {
            "D" => Built::D(def.to_type_d(alg)?),
            "A" => Built::A(def.to_type_a(alg)?),
            "DA" => Built::DA(def.to_type_da(alg)?),
            other => return Err(Failure::Usage(format!("unknown kind {other:?}"))),
        };
        (check, "satisfies the structure equations", built.check_structure())
    };
    let (check, ok, failures) = failures;
    Ok(if failures.is_empty() {
        Report::new(check, Status::Pass, ok.to_string())
    } else {
        let shown: Vec<String> = failures.iter().take(5).map(ToString::to_string).collect();
        Report::new(check, Status::Fail, format!("{} failures: {}", failures.len(), shown.join("; ")))
    })
}

fn bordered_validate(a: &ValidateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&a.file).map_err(|e| Failure::Usage(format!("{}: {e}", a.file)))?;
    let report = validate_report(&Catalog::builtin(), &text)?;
    print_reports(&[report], a.report, out)
}
