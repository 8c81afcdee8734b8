//! Subcommand drivers and the command-line entry point.
//!
//! Exit codes: 0 success (and all requested checks passed), 1 a checked
//! property was falsified, 2 usage or parse errors. All configuration comes
//! from flags; no environment variables are consulted.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use wsdec_core::approx::verify_a_approximation;
use wsdec_core::scalarize::{check_lex_is_esn, classify, lex_argmin, Permutation, SupportClass};
use wsdec_core::weightset::{
    check_coverage, check_necessity, common_face, decompose, recover_supported,
};
use wsdec_core::{Classification, Decomposition, OutcomeSet};

use crate::gen::generate;
use crate::instance::{parse_instance, serialize_instance};
use crate::report::{self, Report};

const EXIT_OK: i32 = 0;
const EXIT_FALSIFIED: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "wsdec",
    version,
    about = "Exact support classification, weight set decomposition, and approximation certificates for finite multi-objective instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every distinct outcome vector by support status
    Classify(ClassifyArgs),
    /// Compute the weight set decomposition and optional checks
    Wsd(WsdArgs),
    /// Certify that a candidate set approximates the whole instance
    Approx(ApproxArgs),
    /// Lexicographic optima and their support classes
    Lex(LexArgs),
    /// Generate a random instance document
    Gen(GenArgs),
    /// Run every check on one instance
    CheckAll(CheckAllArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Instance file (JSON)
    instance: PathBuf,
    /// Human-readable table instead of the JSON report
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct WsdArgs {
    instance: PathBuf,
    /// Include cell vertex lists in the report
    #[arg(long)]
    vertices: bool,
    /// Sample N random weights and check cell coverage
    #[arg(long, value_name = "N")]
    check_coverage: Option<usize>,
    /// Seed for sampled weights
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check that every cell owner has a private strictly positive weight
    #[arg(long)]
    check_necessity: bool,
    /// Check that the extreme weights recover the supported vectors
    #[arg(long)]
    recover_supported: bool,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct ApproxArgs {
    instance: PathBuf,
    /// "supported", "esn", "all", or a comma-separated id list
    #[arg(long)]
    candidates: String,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct LexArgs {
    instance: PathBuf,
    /// 1-based permutation of the objectives, e.g. 2,1,3
    #[arg(long, value_name = "PERM", conflicts_with = "all_perms")]
    perm: Option<String>,
    /// Enumerate every permutation (p ≤ 6)
    #[arg(long)]
    all_perms: bool,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    /// Number of points
    #[arg(long)]
    n: usize,
    /// Number of objectives
    #[arg(long)]
    p: usize,
    /// Largest coordinate magnitude
    #[arg(long)]
    max: i64,
    /// Draw from [1, max] instead of [−max, max]
    #[arg(long)]
    positive: bool,
}

#[derive(Args)]
struct CheckAllArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coverage samples
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    pretty: bool,
}

/// Run the CLI against explicit argument and output streams. Returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<(String, OutcomeSet), String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let set = parse_instance(&text).map_err(|e| e.to_string())?;
    Ok((text, set))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, String> {
    match cli.command {
        Command::Classify(args) => {
            let (text, set) = read_instance(&args.instance)?;
            let classification = classify(&set);
            let result = report::classify_result(set.p(), set.len(), &classification);
            if args.pretty {
                emit(out, &pretty_classify(&result));
            } else {
                emit(out, &Report::new("classify", &text, result).to_json());
            }
            Ok(EXIT_OK)
        }
        Command::Wsd(args) => {
            let (text, set) = read_instance(&args.instance)?;
            let (result, pass) = wsd_result(&set, &args)?;
            if args.pretty {
                emit(out, &pretty_wsd(&result));
            } else {
                emit(out, &Report::new("wsd", &text, result).to_json());
            }
            Ok(if pass { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::Approx(args) => {
            let (text, set) = read_instance(&args.instance)?;
            let candidates = resolve_candidates(&args.candidates, &set)?;
            let outcome = verify_a_approximation(&candidates, &set).map_err(|e| e.to_string())?;
            let result = report::approx_result(set.p(), candidates, &outcome);
            let pass = result.pass;
            if args.pretty {
                emit(out, &pretty_approx(&result));
            } else {
                emit(out, &Report::new("approx", &text, result).to_json());
            }
            Ok(if pass { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::Lex(args) => {
            let (text, set) = read_instance(&args.instance)?;
            let result = lex_command(&set, &args)?;
            let pass = result.pass;
            if args.pretty {
                emit(out, &pretty_lex(&result));
            } else {
                emit(out, &Report::new("lex", &text, result).to_json());
            }
            Ok(if pass { EXIT_OK } else { EXIT_FALSIFIED })
        }
        Command::Gen(args) => {
            let set = generate(args.seed, args.n, args.p, args.max, args.positive)
                .map_err(|e| e.to_string())?;
            emit(out, &serialize_instance(&set));
            Ok(EXIT_OK)
        }
        Command::CheckAll(args) => {
            if args.samples == 0 {
                return Err("--samples must be at least 1".to_string());
            }
            let (text, set) = read_instance(&args.instance)?;
            let result = check_all(&set, args.samples, args.seed);
            let pass = result.pass;
            if args.pretty {
                emit(out, &pretty_check_all(&result));
            } else {
                emit(out, &Report::new("check-all", &text, result).to_json());
            }
            Ok(if pass { EXIT_OK } else { EXIT_FALSIFIED })
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = out.write_all(text.as_bytes());
}

#[derive(Serialize)]
struct WsdResult {
    p: usize,
    decomposition: report::DecompositionDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<report::CoverageDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    necessity: Option<report::NecessityDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recovery: Option<report::RecoveryDto>,
}

fn wsd_result(set: &OutcomeSet, args: &WsdArgs) -> Result<(WsdResult, bool), String> {
    let d = decompose(set);
    let decomposition = report::decomposition_dto(&d, args.vertices);
    let mut pass = decomposition.full_dimensional;
    let coverage = match args.check_coverage {
        Some(samples) => {
            let report = check_coverage(&d, samples, args.seed).map_err(|e| e.to_string())?;
            pass &= report.passed();
            Some(report::coverage_dto(&report))
        }
        None => None,
    };
    let necessity = args.check_necessity.then(|| {
        let report = check_necessity(&d);
        pass &= report.passed();
        report::necessity_dto(&report)
    });
    let recovery = args.recover_supported.then(|| {
        let report = recover_supported(&d);
        pass &= report.passed();
        report::recovery_dto(&report)
    });
    Ok((
        WsdResult {
            p: set.p(),
            decomposition,
            coverage,
            necessity,
            recovery,
        },
        pass,
    ))
}

/// Resolve "--candidates": keyword sets come from the classification, an
/// explicit comma list is validated against the instance ids.
fn resolve_candidates(spec: &str, set: &OutcomeSet) -> Result<Vec<String>, String> {
    let by_class = |keep: fn(SupportClass) -> bool| -> Vec<String> {
        let classification = classify(set);
        let vectors: Vec<_> = classification
            .outcomes
            .iter()
            .filter(|o| keep(o.class))
            .map(|o| o.vector.clone())
            .collect();
        let mut ids: Vec<String> = set
            .points()
            .iter()
            .filter(|pt| vectors.contains(pt.vector()))
            .map(|pt| pt.id().to_string())
            .collect();
        ids.sort();
        ids
    };
    match spec {
        "supported" => Ok(by_class(SupportClass::is_supported)),
        "esn" => Ok(by_class(|c| c == SupportClass::ExtremeSupported)),
        "all" => {
            let mut ids: Vec<String> = set.points().iter().map(|pt| pt.id().to_string()).collect();
            ids.sort();
            Ok(ids)
        }
        explicit => {
            let ids: Vec<String> = explicit
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if ids.is_empty() {
                return Err("empty candidate list".to_string());
            }
            for id in &ids {
                if set.find(id).is_none() {
                    return Err(format!("unknown candidate id: {id}"));
                }
            }
            Ok(ids)
        }
    }
}

fn parse_perm(text: &str, p: usize) -> Result<Permutation, String> {
    let indices: Vec<usize> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad permutation entry {s:?}"))
        })
        .collect::<Result<_, _>>()?;
    if indices.len() != p {
        return Err(format!(
            "permutation has {} entries, instance has {p} objectives",
            indices.len()
        ));
    }
    if indices.contains(&0) {
        return Err("permutation entries are 1-based".to_string());
    }
    Permutation::new(indices.iter().map(|&i| i - 1).collect()).map_err(|e| e.to_string())
}

fn lex_command(set: &OutcomeSet, args: &LexArgs) -> Result<report::LexResult, String> {
    match (&args.perm, args.all_perms) {
        (Some(text), false) => {
            let sigma = parse_perm(text, set.p())?;
            let classification = classify(set);
            let optimum = lex_argmin(set, &sigma);
            let class = classification
                .class_of(optimum.representative.vector())
                .expect("lex optimum is in the set");
            let record = wsdec_core::scalarize::LexEsnRecord {
                permutation: sigma,
                optimum,
                class,
            };
            Ok(report::lex_result(&[record]))
        }
        (None, true) => {
            let records = check_lex_is_esn(set).map_err(|e| e.to_string())?;
            Ok(report::lex_result(&records))
        }
        (None, false) => Err("pass --perm i,j,… or --all-perms".to_string()),
        (Some(_), true) => unreachable!("clap rejects conflicting flags"),
    }
}

#[derive(Serialize)]
struct LexSection {
    enabled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    records: Option<Vec<report::LexRecordDto>>,
    pass: bool,
}

#[derive(Serialize)]
struct DimensionRecordDto {
    vector: Vec<String>,
    class: String,
    dim: i64,
    ok: bool,
}

#[derive(Serialize)]
struct DimensionSection {
    records: Vec<DimensionRecordDto>,
    pass: bool,
}

#[derive(Serialize)]
struct FacesSection {
    pairs: Vec<report::FaceDto>,
    pass: bool,
}

#[derive(Serialize)]
struct ApproxSection {
    applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    supported_candidates: Option<report::ApproxResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    esn_candidates: Option<report::ApproxResult>,
    pass: bool,
}

#[derive(Serialize)]
pub struct CheckAllResult {
    p: usize,
    n: usize,
    classification: report::ClassifyResult,
    lex: LexSection,
    decomposition: report::DecompositionDto,
    dimensions: DimensionSection,
    faces: FacesSection,
    coverage: report::CoverageDto,
    necessity: report::NecessityDto,
    recovery: report::RecoveryDto,
    approx: ApproxSection,
    pub pass: bool,
}

fn dimension_section(set: &OutcomeSet, classification: &Classification) -> DimensionSection {
    let p = set.p() as i64;
    let records: Vec<DimensionRecordDto> = classification
        .outcomes
        .iter()
        .map(|o| {
            let c = wsdec_core::weightset::component_for(&o.vector, classification);
            let dim = wsdec_core::weightset::dimension(&c);
            let is_esn = o.class == SupportClass::ExtremeSupported;
            DimensionRecordDto {
                vector: report::vector_strings(&o.vector),
                class: report::class_name(o.class).to_string(),
                dim,
                ok: (dim == p - 1) == is_esn,
            }
        })
        .collect();
    let pass = records.iter().all(|r| r.ok);
    DimensionSection { records, pass }
}

fn faces_section(d: &Decomposition) -> FacesSection {
    let p = d.set().p();
    let mut pairs = Vec::new();
    for i in 0..d.cells().len() {
        for j in (i + 1)..d.cells().len() {
            let a = &d.cells()[i];
            let b = &d.cells()[j];
            let face = common_face(a, b).expect("cells share the instance");
            pairs.push(report::face_dto(a.owner(), b.owner(), &face, p));
        }
    }
    let pass = pairs.iter().all(|f| f.ok);
    FacesSection { pairs, pass }
}

fn approx_section(set: &OutcomeSet) -> ApproxSection {
    let positive = set
        .points()
        .iter()
        .all(|pt| pt.vector().iter().all(|e| e > &wsdec_core::int(0)));
    if !positive {
        return ApproxSection {
            applicable: false,
            supported_candidates: None,
            esn_candidates: None,
            pass: true,
        };
    }
    let run = |spec: &str| -> report::ApproxResult {
        let candidates = resolve_candidates(spec, set).expect("keyword candidates resolve");
        let outcome = verify_a_approximation(&candidates, set).expect("positive instance");
        report::approx_result(set.p(), candidates, &outcome)
    };
    let supported = run("supported");
    let esn = run("esn");
    let pass = supported.pass && esn.pass;
    ApproxSection {
        applicable: true,
        supported_candidates: Some(supported),
        esn_candidates: Some(esn),
        pass,
    }
}

/// Every check on one instance, in a fixed order.
pub fn check_all(set: &OutcomeSet, samples: usize, seed: u64) -> CheckAllResult {
    let classification = classify(set);
    let classification_dto = report::classify_result(set.p(), set.len(), &classification);

    let lex = if set.p() <= 6 {
        let records = check_lex_is_esn(set).expect("p within cap");
        let result = report::lex_result(&records);
        LexSection {
            enabled: true,
            pass: result.pass,
            records: Some(result.records),
        }
    } else {
        LexSection {
            enabled: false,
            records: None,
            pass: true,
        }
    };

    let d = decompose(set);
    let decomposition = report::decomposition_dto(&d, true);
    let dimensions = dimension_section(set, &classification);
    let faces = faces_section(&d);
    let coverage =
        report::coverage_dto(&check_coverage(&d, samples, seed).expect("samples validated"));
    let necessity = report::necessity_dto(&check_necessity(&d));
    let recovery = report::recovery_dto(&recover_supported(&d));
    let approx = approx_section(set);

    let pass = lex.pass
        && decomposition.full_dimensional
        && dimensions.pass
        && faces.pass
        && coverage.pass
        && necessity.pass
        && recovery.pass
        && approx.pass;
    CheckAllResult {
        p: set.p(),
        n: set.len(),
        classification: classification_dto,
        lex,
        decomposition,
        dimensions,
        faces,
        coverage,
        necessity,
        recovery,
        approx,
        pass,
    }
}

fn tuple(entries: &[String]) -> String {
    format!("({})", entries.join(", "))
}

fn pretty_classify(result: &report::ClassifyResult) -> String {
    let mut text = format!(
        "p={}  points={}  distinct={}\n",
        result.p,
        result.n,
        result.outcomes.len()
    );
    for o in &result.outcomes {
        let witness = o
            .witness
            .as_ref()
            .map(|w| tuple(w))
            .unwrap_or_else(|| "-".to_string());
        text.push_str(&format!(
            "{:<16} {:<24} {:<12} {}\n",
            tuple(&o.vector),
            o.class,
            o.ids.join(","),
            witness
        ));
    }
    text
}

fn pretty_wsd(result: &WsdResult) -> String {
    let mut text = format!(
        "p={}  cells={}\n",
        result.p,
        result.decomposition.cells.len()
    );
    for cell in &result.decomposition.cells {
        text.push_str(&format!(
            "cell owner={} ids={} dim={}\n",
            tuple(&cell.owner),
            cell.owner_ids.join(","),
            cell.dim
        ));
        if let Some(vertices) = &cell.vertices {
            for v in vertices {
                text.push_str(&format!("  vertex {}\n", tuple(v)));
            }
        }
    }
    text.push_str("extreme weights:\n");
    for w in &result.decomposition.extreme_weights {
        text.push_str(&format!("  {}\n", tuple(w)));
    }
    text.push_str(&format!(
        "full-dimensional cells: {}\n",
        verdict(result.decomposition.full_dimensional)
    ));
    if let Some(c) = &result.coverage {
        text.push_str(&format!(
            "coverage: {} samples, {} failures: {}\n",
            c.samples,
            c.failures,
            verdict(c.pass)
        ));
    }
    if let Some(n) = &result.necessity {
        text.push_str(&format!("necessity: {}\n", verdict(n.pass)));
    }
    if let Some(r) = &result.recovery {
        text.push_str(&format!("recovery: {}\n", verdict(r.pass)));
    }
    text
}

fn pretty_approx(result: &report::ApproxResult) -> String {
    let mut text = format!("candidates: {}\n", result.candidates.join(","));
    match (&result.certificate, &result.counterexample) {
        (Some(cert), _) => {
            text.push_str(&format!("certificate (p={}):\n", cert.bound_p));
            for (target, entry) in &cert.entries {
                text.push_str(&format!(
                    "  {:<10} <- {:<10} alpha={} weight={}\n",
                    target,
                    entry.witness,
                    tuple(&entry.alpha),
                    tuple(&entry.weight)
                ));
            }
        }
        (None, Some(target)) => {
            text.push_str(&format!(
                "counterexample: no qualifying candidate for {target}\n"
            ));
        }
        (None, None) => unreachable!("approx result carries one of the two"),
    }
    text
}

fn pretty_lex(result: &report::LexResult) -> String {
    let mut text = String::new();
    for r in &result.records {
        text.push_str(&format!(
            "perm ({}) -> {} [{}] {}\n",
            r.perm
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(","),
            tuple(&r.vector),
            r.ids.join(","),
            r.class
        ));
    }
    text.push_str(&format!(
        "lex optima extreme supported: {}\n",
        verdict(result.pass)
    ));
    text
}

fn pretty_check_all(result: &CheckAllResult) -> String {
    let mut text = format!("p={}  points={}\n", result.p, result.n);
    text.push_str(&pretty_classify(&result.classification));
    text.push_str(&format!(
        "lex: {}\n",
        if result.lex.enabled {
            verdict(result.lex.pass)
        } else {
            "skipped (p > 6)"
        }
    ));
    text.push_str(&format!(
        "full-dimensional cells: {}\n",
        verdict(result.decomposition.full_dimensional)
    ));
    text.push_str(&format!(
        "dimension biconditional: {}\n",
        verdict(result.dimensions.pass)
    ));
    text.push_str(&format!("common faces: {}\n", verdict(result.faces.pass)));
    text.push_str(&format!(
        "coverage ({} samples): {}\n",
        result.coverage.samples,
        verdict(result.coverage.pass)
    ));
    text.push_str(&format!("necessity: {}\n", verdict(result.necessity.pass)));
    text.push_str(&format!("recovery: {}\n", verdict(result.recovery.pass)));
    text.push_str(&format!(
        "approximation: {}\n",
        if result.approx.applicable {
            verdict(result.approx.pass)
        } else {
            "skipped (nonpositive coordinates)"
        }
    ));
    text.push_str(&format!("overall: {}\n", verdict(result.pass)));
    text
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}
