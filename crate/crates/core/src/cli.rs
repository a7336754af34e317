//! Command-line front end. `run` does all the work and returns what should be
//! printed, so the binary is a thin wrapper and tests can call it directly.

use std::io::Read;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::cone::{dual_cone, face_lattice, semigroup_generators, triangulate, triangulate_with_order, Cone, Fan};
use crate::error::Error;
use crate::format::{
    faces_text, hilbert_text, laurent_text, local_class_text, open_orbit_text, report_text, sum_text,
    triangulation_text, ChiYRecord, ConeDocument, ConeSumRecord, FacesRecord, HilbertRecord, LaurentRecord,
    LocalClassRecord, OpenOrbitRecord, ReportRecord, TriangulationRecord,
};
use crate::genfun::{closed_sum_with, interior_sum_with, CertifiedConeSum};
use crate::hirzebruch::{chi_y, laurent_expand, local_class, open_orbit_class};
use crate::oracle::{check_cone, check_sum, random_cones, verify_random, CheckOutcome, Report, SuiteOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Dual cone.
    Dual,
    /// Face lattice.
    Faces,
    /// Hilbert basis (or the validated generator override).
    Hilbert,
    /// Placing triangulation.
    Triangulate,
    /// Closed lattice-point sum with its certificate.
    ClosedSum,
    /// Interior lattice-point sum with its certificate.
    InteriorSum,
    /// Local Hirzebruch class of a full-dimensional cone.
    LocalClass,
    /// Open-orbit term of the local class.
    OpenOrbit,
    /// χ_y polynomial of the fan in the document.
    ChiY,
    /// Laurent expansion of the closed sum.
    Laurent,
    /// Oracle checks on the input, or on seeded random cones without input.
    Verify,
    /// Seeded random cones.
    GenRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "conesum", version, about = "Exact lattice-point generating functions of rational cones")]
pub struct Args {
    pub command: Command,
    /// JSON cone document; `-` reads standard input.
    pub input: Option<String>,
    #[arg(long, env = "CONESUM_FORMAT", value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Grading bound for oracle checks.
    #[arg(long, default_value_t = 12)]
    pub truncate: u64,
    /// Laurent truncation order.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Ray order for the placing triangulation, as 0-based indices `2,0,1`.
    #[arg(long, value_delimiter = ',')]
    pub triangulation_order: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
}

impl Args {
    pub fn new(command: Command) -> Self {
        Args {
            command,
            input: None,
            format: OutputFormat::Text,
            truncate: 12,
            order: 4,
            triangulation_order: None,
            seed: 0,
            dim: 3,
            count: 10,
        }
    }
}

/// What the process should print and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

enum Failure {
    Parse(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

pub fn run(args: &Args, stdin: &mut dyn Read) -> Output {
    match execute(args, stdin) {
        Ok((stdout, true)) => Output { code: EXIT_OK, stdout, stderr: String::new() },
        Ok((stdout, false)) => Output { code: EXIT_FAILURE, stdout, stderr: String::new() },
        Err(Failure::Parse(msg)) => {
            Output { code: EXIT_PARSE, stdout: String::new(), stderr: format!("parse error: {msg}\n") }
        }
        Err(Failure::Compute(msg)) => {
            Output { code: EXIT_FAILURE, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

pub fn parse_document(text: &str) -> std::result::Result<ConeDocument, String> {
    let doc: ConeDocument = serde_json::from_str(text).map_err(|e| e.to_string())?;
    doc.validate().map_err(|e| e.to_string())?;
    Ok(doc)
}

fn read_document(args: &Args, stdin: &mut dyn Read) -> std::result::Result<ConeDocument, Failure> {
    let path = args
        .input
        .as_deref()
        .ok_or_else(|| Failure::Parse(format!("{:?} needs an input document", args.command)))?;
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Parse(format!("standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    }
    parse_document(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn emit<T: Serialize>(args: &Args, text: String, record: &T) -> String {
    match args.format {
        OutputFormat::Text => text,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("records serialize");
            s.push('\n');
            s
        }
    }
}

fn triangulation(args: &Args, c: &Cone) -> crate::Result<crate::cone::Triangulation> {
    match &args.triangulation_order {
        Some(order) => triangulate_with_order(c, order),
        None => Ok(triangulate(c)),
    }
}

fn sums(args: &Args, doc: &ConeDocument, c: &Cone, closed: bool) -> crate::Result<CertifiedConeSum> {
    let gens = match doc.generator_set(c)? {
        Some(g) => g,
        None => semigroup_generators(c),
    };
    let t = triangulation(args, c)?;
    if closed {
        closed_sum_with(c, &gens, &t)
    } else {
        interior_sum_with(c, &gens, &t)
    }
}

fn execute(args: &Args, stdin: &mut dyn Read) -> Outcome {
    match args.command {
        Command::Verify if args.input.is_none() => {
            let report = verify_random(&SuiteOptions {
                seed: args.seed,
                dim: args.dim,
                count: args.count,
                bound: BigInt::from(args.truncate),
                ..Default::default()
            });
            Ok((emit(args, report_text(&report), &ReportRecord::of(&report)), report.passed()))
        }
        Command::GenRandom => {
            let opts = SuiteOptions::default();
            let cones = random_cones(
                args.seed,
                args.dim..=args.dim,
                args.count,
                opts.max_rays,
                opts.entry_bound,
                opts.max_dual_volume,
            );
            let text: String = cones.iter().map(|c| format!("{c}\n")).collect();
            let docs: Vec<ConeDocument> = cones.iter().map(ConeDocument::of_cone).collect();
            Ok((emit(args, text, &docs), true))
        }
        _ => {
            let doc = read_document(args, stdin)?;
            execute_on(args, &doc)
        }
    }
}

fn execute_on(args: &Args, doc: &ConeDocument) -> Outcome {
    if args.command == Command::ChiY {
        let fan = document_fan(doc)?;
        let p = chi_y(&fan)?;
        return Ok((emit(args, format!("{p}\n"), &ChiYRecord::of(&p)), true));
    }
    if args.command == Command::Verify {
        let report = verify_document(args, doc)?;
        return Ok((emit(args, report_text(&report), &ReportRecord::of(&report)), report.passed()));
    }
    let c = doc.cone()?;
    let out = match args.command {
        Command::Dual => {
            let d = dual_cone(&c)?;
            emit(args, format!("{d}\n"), &ConeDocument::of_cone(&d))
        }
        Command::Faces => {
            let l = face_lattice(&c);
            emit(args, faces_text(&l), &FacesRecord::of(&l))
        }
        Command::Hilbert => {
            let g = match doc.generator_set(&c)? {
                Some(g) => g,
                None => semigroup_generators(&c),
            };
            emit(args, hilbert_text(&g), &HilbertRecord::of(&g))
        }
        Command::Triangulate => {
            let t = triangulation(args, &c)?;
            emit(args, triangulation_text(&t), &TriangulationRecord::of(&t))
        }
        Command::ClosedSum | Command::InteriorSum => {
            let s = sums(args, doc, &c, args.command == Command::ClosedSum)?;
            emit(args, sum_text(&s), &ConeSumRecord::of(&s))
        }
        Command::LocalClass => {
            let h = local_class(&c)?;
            emit(args, local_class_text(&h)?, &LocalClassRecord::of(&h)?)
        }
        Command::OpenOrbit => {
            let (power, s) = open_orbit_class(&c)?;
            emit(args, open_orbit_text(power, &s), &OpenOrbitRecord { delta_power: power, sum: ConeSumRecord::of(&s) })
        }
        Command::Laurent => {
            let s = sums(args, doc, &c, true)?;
            let l = laurent_expand(&s.value, args.order)?;
            emit(args, laurent_text(&l), &LaurentRecord::of(&l))
        }
        Command::ChiY | Command::Verify | Command::GenRandom => unreachable!("handled above"),
    };
    Ok((out, true))
}

fn document_fan(doc: &ConeDocument) -> std::result::Result<Fan, Failure> {
    let cones = doc.fan.clone().ok_or_else(|| Failure::Compute("document has no fan".into()))?;
    Ok(Fan::generated_by(doc.rank, doc.ray_vectors()?, cones)?)
}

/// Checks every maximal cone of the fan (or the single cone), the generator
/// override if present, and the χ_y specializations of a fan.
fn verify_document(args: &Args, doc: &ConeDocument) -> std::result::Result<Report, Failure> {
    let bound = BigInt::from(args.truncate);
    let mut report = Report::default();
    if doc.fan.is_some() {
        let fan = document_fan(doc)?;
        for cone in fan.maximal_cones() {
            check_cone(&fan.cone(&cone), &bound, &mut report);
        }
        let p = chi_y(&fan)?;
        let full = fan.cones().iter().filter(|c| fan.dim_of(c) == fan.rank()).count();
        let name = format!("chi_y(-1) counts the {full} maximal cones");
        report.push(if p.evaluate(&BigInt::from(-1)) == BigInt::from(full) {
            CheckOutcome::pass(name)
        } else {
            CheckOutcome::fail(name, format!("chi_y = {p}"))
        });
        if fan.is_complete() {
            let name = "chi_y(0) = 1 on a complete fan";
            report.push(if p.evaluate(&BigInt::from(0)) == BigInt::from(1) {
                CheckOutcome::pass(name)
            } else {
                CheckOutcome::fail(name, format!("chi_y = {p}"))
            });
        }
        return Ok(report);
    }
    let c = doc.cone()?;
    check_cone(&c, &bound, &mut report);
    if doc.generators.is_some() || args.triangulation_order.is_some() {
        report.push(check_sum(&c, &sums(args, doc, &c, true)?, &bound));
        report.push(check_sum(&c, &sums(args, doc, &c, false)?, &bound));
    }
    Ok(report)
}
