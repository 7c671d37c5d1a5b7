//! Command-line front end. [`run`] returns the exit status and both output
//! streams so the whole surface is testable in-process.
//!
//! Exit statuses:
//! 0 success; 1 a reproduced table has mismatches; 2 usage, parse, IO or
//! unknown table; 3 non-homogeneous bracket operand; 4 zero or
//! non-square-zero structure; 5 classification of a non-homogeneous structure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use linfty_core::calculus::SquareZero;
use linfty_core::cohomology::default_range;
use linfty_core::extension::{standard_form_to, Normalization};
use linfty_core::rational::{format_rational, parse_rational};
use linfty_core::{
    bracket, canonical_form, cohomology, families, format_cochain, is_codifferential, parse_cochain, Error,
    GradedSpace, LInfinityStructure, Rational,
};
use serde_json::json;

use crate::files::{cohomology_table, transcript_json, ClassificationJson, CohomologyJson, StructureFile};
use crate::golden::{self, TableReport};

pub const OK: i32 = 0;
pub const MISMATCH: i32 = 1;
pub const USAGE: i32 = 2;
pub const NOT_HOMOGENEOUS: i32 = 3;
pub const NOT_CODIFFERENTIAL: i32 = 4;
pub const CLASSIFY_NOT_HOMOGENEOUS: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "linfty", version, about = "Exact computations with L-infinity structures on small graded spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A structure named on the command line: a JSON structure file, a single
/// homogeneous expression, or a named family.
#[derive(Debug, clap::Args)]
pub struct StructureArgs {
    /// Structure file (JSON) or a cochain expression on the 1|2 space.
    pub structure: Option<String>,
    /// Named family instead: d0, deg1_d_star, d_infinity, d_lambda, d_star,
    /// d_sharp, d_lambda_e, d_infinity_e.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Coefficient of the correction term of d_infinity_e.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket of two homogeneous cochains; the self-bracket when B is omitted.
    Bracket {
        a: String,
        b: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Checks [d,d] = 0.
    Check {
        #[command(flatten)]
        input: StructureArgs,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology dimensions and representatives per degree.
    Cohomology {
        #[command(flatten)]
        input: StructureArgs,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Equivalence class of a homogeneous codifferential on the 1|2 space.
    Classify {
        #[command(flatten)]
        input: StructureArgs,
        #[arg(long)]
        json: bool,
    },
    /// Reduces an extension to standard form and prints the move transcript.
    Extend {
        #[command(flatten)]
        input: StructureArgs,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Regenerates golden tables and diffs them cell by cell.
    Reproduce {
        /// Table id, or `all`.
        table: String,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn fail(code: i32, message: impl std::fmt::Display) -> Output {
        Output { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }

    fn ok(stdout: String) -> Output {
        Output { code: OK, stdout, stderr: String::new() }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: USAGE, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) | Err(out) => out,
    }
}

type Cmd = Result<Output, Output>;

fn space() -> GradedSpace {
    GradedSpace::one_two()
}

fn rational_arg(name: &str, v: &Option<String>) -> Result<Option<Rational>, Output> {
    v.as_deref()
        .map(|s| parse_rational(s).map_err(|e| Output::fail(USAGE, format!("--{name}: {e}"))))
        .transpose()
}

fn need<T: Copy>(name: &str, v: Option<T>) -> Result<T, Output> {
    v.ok_or_else(|| Output::fail(USAGE, format!("this family needs --{name}")))
}

fn engine(e: Error) -> Output {
    match e {
        Error::NotSquareZero { .. } | Error::ZeroStructure => Output::fail(NOT_CODIFFERENTIAL, e),
        _ => Output::fail(USAGE, e),
    }
}

fn load_structure(args: &StructureArgs, truncation: Option<usize>) -> Result<LInfinityStructure, Output> {
    let truncation = truncation.unwrap_or(0);
    match (&args.structure, &args.family) {
        (Some(_), Some(_)) => Err(Output::fail(USAGE, "give either a structure or --family, not both")),
        (None, None) => Err(Output::fail(USAGE, "no structure given")),
        (Some(s), None) => {
            let d = if Path::new(s).is_file() {
                let text = std::fs::read_to_string(s).map_err(|e| Output::fail(USAGE, format!("{s}: {e}")))?;
                StructureFile::parse(&text).map_err(|e| Output::fail(USAGE, format!("{s}: {e}")))?
            } else {
                let c = parse_cochain(&space(), s).map_err(|e| Output::fail(USAGE, e))?;
                let k = c.degree().unwrap_or(1);
                LInfinityStructure::from_cochains(space(), [c], k).map_err(|e| Output::fail(USAGE, e))?
            };
            let top = d.truncation();
            Ok(d.truncated(top.max(truncation)))
        }
        (None, Some(name)) => {
            let lambda = rational_arg("lambda", &args.lambda)?;
            let a = rational_arg("a", &args.a)?.unwrap_or_else(|| linfty_core::rational::int(0));
            let m = || need("m", args.m);
            let n = || need("n", args.n);
            let t = |k: usize| k.max(truncation);
            Ok(match name.as_str() {
                "d0" => families::d0(t(1)),
                "deg1_d_star" => families::deg1_star(t(1)),
                "d_infinity" => families::d_infinity(m()?, t(m()? + 2)),
                "d_lambda" => {
                    let l = lambda.ok_or_else(|| Output::fail(USAGE, "d_lambda needs --lambda"))?;
                    families::d_lambda(m()?, &l, t(m()? + 2))
                }
                "d_star" => families::d_star(m()?, t(m()? + 2)),
                "d_sharp" => families::d_sharp(m()?, t(m()? + 2)),
                "d_lambda_e" => families::build_d_lambda_e(m()?, n()?, truncation).map_err(engine)?,
                "d_infinity_e" => families::build_d_infty_ext(m()?, n()?, &a, truncation).map_err(engine)?,
                other => return Err(Output::fail(USAGE, format!("unknown family {other:?}"))),
            })
        }
    }
}

fn require_codifferential(d: &LInfinityStructure) -> Result<(), Output> {
    if d.is_zero() {
        return Err(engine(Error::ZeroStructure));
    }
    match is_codifferential(d).map_err(engine)? {
        SquareZero::Yes => Ok(()),
        SquareZero::No { degree, witness } => Err(Output::fail(
            NOT_CODIFFERENTIAL,
            format!("not square-zero: [d,d] in degree {degree} is {}", format_cochain(&witness)),
        )),
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn execute(command: Command) -> Cmd {
    match command {
        Command::Bracket { a, b, json } => {
            let operand = |s: &str| {
                parse_cochain(&space(), s).map_err(|e| match e {
                    Error::MixedDegree(..) | Error::MixedParity(..) => Output::fail(NOT_HOMOGENEOUS, e),
                    e => Output::fail(USAGE, e),
                })
            };
            let x = operand(&a)?;
            let y = match &b {
                Some(b) => operand(b)?,
                None => x.clone(),
            };
            let r = format_cochain(&bracket(&x, &y).map_err(engine)?);
            Ok(Output::ok(if json { json_text(&json!({ "bracket": r })) } else { format!("{r}\n") }))
        }
        Command::Check { input, json } => {
            let d = load_structure(&input, None)?;
            let verdict = is_codifferential(&d).map_err(engine)?;
            let (code, text) = match &verdict {
                SquareZero::Yes => (OK, "square-zero".to_string()),
                SquareZero::No { degree, witness } => (
                    NOT_CODIFFERENTIAL,
                    format!("not square-zero: [d,d] in degree {degree} is {}", format_cochain(witness)),
                ),
            };
            let stdout = if json {
                let witness = match &verdict {
                    SquareZero::Yes => json!(null),
                    SquareZero::No { degree, witness } => json!({ "degree": degree, "component": format_cochain(witness) }),
                };
                json_text(&json!({
                    "square_zero": verdict.holds(),
                    "checked_through": d.truncation() + d.leading_degree().unwrap_or(1) - 1,
                    "witness": witness,
                    "structure": StructureFile::from_structure(&d),
                }))
            } else {
                format!("{text}\n")
            };
            Ok(Output { code, stdout, stderr: String::new() })
        }
        Command::Cohomology { input, max_degree, json } => {
            let d = load_structure(&input, max_degree)?;
            require_codifferential(&d)?;
            let range = match max_degree {
                Some(k) => 1..=k,
                None => default_range(&d),
            };
            let report = cohomology(&d, range).map_err(engine)?;
            Ok(Output::ok(if json { json_text(&CohomologyJson::from(&report)) } else { cohomology_table(&report) }))
        }
        Command::Classify { input, json } => {
            let d = load_structure(&input, None)?;
            if !d.is_homogeneous() {
                return Err(Output::fail(CLASSIFY_NOT_HOMOGENEOUS, Error::NotHomogeneous));
            }
            require_codifferential(&d)?;
            let form = canonical_form(&d).map_err(engine)?;
            let c = ClassificationJson::from(&form);
            let stdout = if json {
                json_text(&c)
            } else {
                let mut s = format!("family: {}\n", c.tag.family);
                if let Some(k) = c.tag.degree {
                    let _ = writeln!(s, "degree: {k}");
                }
                if let Some(l) = &c.tag.lambda {
                    let _ = writeln!(s, "lambda: {l}");
                }
                let rows: Vec<String> = c.witness.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                let _ = writeln!(s, "witness: [{}]", rows.join(", "));
                let _ = writeln!(s, "representative: {}", c.representative);
                s
            };
            Ok(Output::ok(stdout))
        }
        Command::Extend { input, max_degree, json } => {
            let d = load_structure(&input, max_degree)?;
            require_codifferential(&d)?;
            let top = max_degree.unwrap_or(d.truncation()).max(d.max_degree().unwrap_or(1));
            let form = standard_form_to(&d, top).map_err(engine)?;
            let normalization = match &form.normalization {
                Normalization::AlreadyNormal => "already normal".to_string(),
                Normalization::Rescaled => "rescaled".to_string(),
                Normalization::Fixed => "fixed by every diagonal automorphism".to_string(),
                Normalization::AlgebraicClosureOnly { exponent, value } => {
                    format!("needs t^{exponent} = {}, solvable only over the algebraic closure", format_rational(value))
                }
            };
            let stdout = if json {
                json_text(&json!({
                    "structure": StructureFile::from_structure(&form.structure),
                    "transcript": transcript_json(&form.transcript),
                    "secondary": form.secondary.as_ref().map(|(k, c)| json!({ "degree": k, "term": format_cochain(c) })),
                    "normalization": normalization,
                    "irremovable": form.irremovable.iter().map(|(k, c)| json!({ "degree": k, "term": format_cochain(c) })).collect::<Vec<_>>(),
                    "truncation": form.truncation,
                }))
            } else {
                let mut s = String::from("standard form:\n");
                for (k, c) in form.structure.components() {
                    let _ = writeln!(s, "  degree {k}: {}", format_cochain(c));
                }
                let _ = writeln!(s, "moves:");
                for m in transcript_json(&form.transcript) {
                    let _ = writeln!(s, "  {} {}", m.kind, m.data);
                }
                match &form.secondary {
                    Some((k, c)) => {
                        let _ = writeln!(s, "secondary term: degree {k}: {}", format_cochain(c));
                    }
                    None => s.push_str("secondary term: none\n"),
                }
                let _ = writeln!(s, "normalization: {normalization}");
                for (k, c) in &form.irremovable {
                    let _ = writeln!(s, "irremovable: degree {k}: {}", format_cochain(c));
                }
                let _ = writeln!(s, "valid through degree {}", form.truncation);
                s
            };
            Ok(Output::ok(stdout))
        }
        Command::Reproduce { table, golden_dir, json } => {
            let ids: Vec<String> = if table == "all" {
                golden::table_ids().into_iter().map(String::from).collect()
            } else {
                vec![table]
            };
            let mut reports: Vec<TableReport> = Vec::new();
            for id in &ids {
                let t = golden::load(id, golden_dir.as_deref()).map_err(|e| Output::fail(USAGE, e))?;
                reports.push(golden::reproduce(&t));
            }
            let code = if reports.iter().all(TableReport::passed) { OK } else { MISMATCH };
            let stdout = if json {
                json_text(&reports)
            } else {
                reports.iter().map(|r| format!("== {} ({})\n{}", r.table, r.title, r.render())).collect::<Vec<_>>().join("\n")
            };
            Ok(Output { code, stdout, stderr: String::new() })
        }
    }
}
