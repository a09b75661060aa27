//! The `ssq` command line.
//!
//! Exit codes: 0 success, 1 the checked property is false, 2 usage error,
//! 3 data error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{basis_fan, complete_set_to_squares, example_set_d4, type_i, type_ii, CompleteSet};
use crate::document::{documents_to_json, parse_documents, SquareDocument};
use crate::enumeration::{
    enumerate, verify_extraordinary_through, verify_line_in_every_set, verify_max_orthogonal,
    verify_prime_order_lines, verify_type_dichotomy, Target, VerificationReport,
};
use crate::error::Error;
use crate::field::{prime_power, FieldSpec};
use crate::squares::{first_repeated_pair, Origin, Square};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ssq", version, about = "Supersquares over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the tables of GF(p^n), its trace and the trace-zero set K.
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
    /// Build a complete set of mutually orthogonal supersquares.
    Construct {
        #[arg(long = "type", value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        d: usize,
        /// First vector, e.g. `1,m^2`.
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long, value_enum, default_value_t = OriginArg::Bottom)]
        origin: OriginArg,
    },
    /// Check that the squares in the given documents are mutually orthogonal.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Report the Latin / supersquare / extraordinary flags of each square.
    Classify { file: PathBuf },
    /// Enumerate subgroups or complete sets and print a JSON report.
    Enumerate {
        #[arg(value_enum)]
        target: TargetArg,
        #[arg(long)]
        d: usize,
        /// Restrict to extraordinary subgroups.
        #[arg(long)]
        extraordinary: bool,
        /// Include the full listing.
        #[arg(long, conflicts_with = "count_only")]
        list: bool,
        /// Counts and digest only (the default).
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Run an exhaustive verifier.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Draw the squares of a document as text grids.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OriginArg::Bottom)]
        origin: OriginArg,
        /// Renumber blocks by their minimal cell first.
        #[arg(long)]
        canonical: bool,
    },
}

#[derive(Args, Debug)]
struct Jobs {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, env = "SSQ_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

impl Jobs {
    fn get(&self) -> usize {
        self.jobs
            .map(usize::from)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructKind {
    Fan,
    Example,
    #[value(name = "typeI")]
    TypeI,
    #[value(name = "typeII")]
    TypeII,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OriginArg {
    Bottom,
    Top,
}

impl From<OriginArg> for Origin {
    fn from(o: OriginArg) -> Origin {
        match o {
            OriginArg::Bottom => Origin::Bottom,
            OriginArg::Top => Origin::Top,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Subgroups,
    Extraordinary,
    CompleteSets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theorem {
    /// Order-p subgroups of F_p x F_p are extraordinary lines.
    #[value(name = "4.3", alias = "prime-lines")]
    PrimeLines,
    /// The three extraordinary subgroups through a point.
    #[value(name = "4.7", alias = "through-point")]
    ThroughPoint,
    /// Every extraordinary complete set contains a line.
    #[value(name = "4.8", alias = "contains-line")]
    ContainsLine,
    /// Type I / Type II dichotomy.
    #[value(name = "4.13", alias = "types")]
    Types,
    /// At most d+1 mutually orthogonal supersquares.
    #[value(name = "3.5b", alias = "max-orthogonal")]
    MaxOrthogonal,
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome = std::result::Result<i32, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn data(e: impl ToString) -> Failure {
    Failure::Data(e.to_string())
}

/// Construction errors on valid input are data errors; bad parameters are usage errors.
fn classify_error(e: Error) -> Failure {
    match e {
        Error::InvalidArgument(_) | Error::UnsupportedOrder { .. } => usage(e),
        _ => data(e),
    }
}

/// Parses `args` (including the program name), writes to `out`/`err` and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Field { p, n } => cmd_field(p, n, out),
        Command::Construct { kind, d, v1, v2, format, origin } => {
            cmd_construct(kind, d, &v1, &v2, format, origin.into(), out)
        }
        Command::Check { files } => cmd_check(&files, out),
        Command::Classify { file } => cmd_classify(&file, out),
        Command::Enumerate { target, d, extraordinary, list, count_only: _, jobs } => {
            cmd_enumerate(target, d, extraordinary, list, jobs.get(), out)
        }
        Command::Verify { theorem, d, jobs } => cmd_verify(theorem, d, jobs.get(), out),
        Command::Render { file, origin, canonical } => cmd_render(&file, origin.into(), canonical, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Data(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DATA
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    data(e)
}

fn field_of_order(d: usize) -> Result<FieldSpec, Failure> {
    if prime_power(d).is_none() {
        return Err(usage(format!("d must be a prime power (got {d})")));
    }
    FieldSpec::with_order(d).map_err(usage)
}

fn table(
    f: &FieldSpec,
    op: &str,
    apply: impl Fn(crate::FieldElement, crate::FieldElement) -> crate::FieldElement,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let elems: Vec<_> = f.canonical_elements().collect();
    let names: Vec<String> = elems.iter().map(|&a| f.format_element(a)).collect();
    let w = names.iter().map(|s| s.len()).max().unwrap_or(1).max(op.len());
    write!(out, "{op:>w$} |")?;
    for s in &names {
        write!(out, " {s:>w$}")?;
    }
    writeln!(out)?;
    writeln!(out, "{}", "-".repeat((w + 1) * (names.len() + 1) + 1))?;
    for (&a, sa) in elems.iter().zip(&names) {
        write!(out, "{sa:>w$} |")?;
        for &b in &elems {
            write!(out, " {:>w$}", f.format_element(apply(a, b)))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn cmd_field(p: u32, n: u32, out: &mut dyn Write) -> Outcome {
    let f = FieldSpec::new(p, n).map_err(usage)?;
    let prim = f.primitive();
    let mut w = || -> std::io::Result<()> {
        writeln!(out, "GF({}) = Z_{p}[x] / ({})", f.order(), f.format_modulus())?;
        writeln!(out, "modulus coefficients (constant first): {:?}", f.modulus())?;
        writeln!(out, "primitive element m: index {}, coefficients {:?}", prim.index(), f.coeffs(prim))?;
        let elems: Vec<String> = f
            .canonical_elements()
            .map(|a| format!("{} = {:?}", f.format_element(a), f.coeffs(a)))
            .collect();
        writeln!(out, "elements: {}", elems.join(", "))?;
        writeln!(out, "\naddition")?;
        table(&f, "+", |a, b| f.add(a, b), out)?;
        writeln!(out, "\nmultiplication")?;
        table(&f, "*", |a, b| f.mul(a, b), out)?;
        writeln!(out, "\ntrace")?;
        for a in f.canonical_elements() {
            writeln!(out, "tr({}) = {}", f.format_element(a), f.format_element(f.trace(a)))?;
        }
        let k: Vec<String> = f.trace_zero_set().iter().map(|&a| f.format_element(a)).collect();
        writeln!(out, "\nK = {{{}}}", k.join(", "))?;
        writeln!(out, "|K| = {}", k.len())
    };
    w().map_err(io)?;
    Ok(EXIT_OK)
}

fn panel_name(i: usize, total: usize) -> String {
    if total <= 26 {
        format!("{})", (b'a' + i as u8) as char)
    } else {
        format!("{})", i + 1)
    }
}

fn cmd_construct(
    kind: ConstructKind,
    d: usize,
    v1: &str,
    v2: &str,
    format: Format,
    origin: Origin,
    out: &mut dyn Write,
) -> Outcome {
    let f = field_of_order(d)?;
    let v1 = f.parse_point(v1).map_err(usage)?;
    let v2 = f.parse_point(v2).map_err(usage)?;
    let built: crate::Result<CompleteSet> = match kind {
        ConstructKind::Fan => basis_fan(&f, v1, v2),
        ConstructKind::Example => example_set_d4(&f, v1, v2),
        ConstructKind::TypeI => type_i(&f, v1, v2),
        ConstructKind::TypeII => type_ii(&f, v1, v2),
    };
    let cs = built.map_err(classify_error)?;
    let squares = complete_set_to_squares(&cs).map_err(data)?;
    match format {
        Format::Json => {
            let docs: Vec<SquareDocument> = squares.iter().map(SquareDocument::from_square).collect();
            writeln!(out, "{}", documents_to_json(&docs)).map_err(io)?;
        }
        Format::Ascii => {
            for (i, (s, g)) in squares.iter().zip(&cs.subgroups).enumerate() {
                if i > 0 {
                    writeln!(out).map_err(io)?;
                }
                writeln!(out, "{} {}; A1 = {g}", panel_name(i, squares.len()), s.classify().summary()).map_err(io)?;
                write!(out, "{}", s.render(origin)).map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn load_squares(file: &PathBuf) -> Result<Vec<Square>, Failure> {
    let text = fs::read_to_string(file).map_err(|e| data(format!("{}: {e}", file.display())))?;
    let docs = parse_documents(&text).map_err(|e| data(format!("{}: {e}", file.display())))?;
    docs.iter()
        .map(|d| d.to_square().map_err(|e| data(format!("{}: {e}", file.display()))))
        .collect()
}

fn cmd_check(files: &[PathBuf], out: &mut dyn Write) -> Outcome {
    let mut squares = Vec::new();
    for file in files {
        for (i, s) in load_squares(file)?.into_iter().enumerate() {
            squares.push((format!("{}#{}", file.display(), i + 1), s));
        }
    }
    if squares.len() < 2 {
        return Err(usage("check needs at least two squares"));
    }
    for (i, (na, a)) in squares.iter().enumerate() {
        for (nb, b) in &squares[i + 1..] {
            if let Some((c1, c2, (l1, l2))) = first_repeated_pair(a, b).map_err(data)? {
                let g = a.group();
                writeln!(
                    out,
                    "not orthogonal: {na} and {nb}; cells {} and {} both carry the label pair ({l1},{l2})",
                    g.format_cell(c1),
                    g.format_cell(c2)
                )
                .map_err(io)?;
                return Ok(EXIT_FALSE);
            }
        }
    }
    let pairs = squares.len() * (squares.len() - 1) / 2;
    writeln!(out, "mutually orthogonal: {} squares, {pairs} pairs", squares.len()).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_classify(file: &PathBuf, out: &mut dyn Write) -> Outcome {
    let squares = load_squares(file)?;
    for (i, s) in squares.iter().enumerate() {
        let t = s.classify();
        let prefix = if squares.len() > 1 { format!("{}: ", i + 1) } else { String::new() };
        writeln!(out, "{prefix}{}", t.summary()).map_err(io)?;
        if let Some(g) = &t.generating_subgroup {
            writeln!(out, "{prefix}generating subgroup {g}").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(target: TargetArg, d: usize, extraordinary: bool, list: bool, jobs: usize, out: &mut dyn Write) -> Outcome {
    let f = field_of_order(d)?;
    let target = match target {
        TargetArg::Subgroups => Target::Subgroups,
        TargetArg::Extraordinary => Target::Extraordinary,
        TargetArg::CompleteSets => Target::CompleteSets,
    };
    let report = enumerate(&f, target, extraordinary, list, jobs).map_err(usage)?;
    let text = serde_json::to_string_pretty(&report).map_err(data)?;
    writeln!(out, "{text}").map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(theorem: Theorem, d: usize, jobs: usize, out: &mut dyn Write) -> Outcome {
    let f = field_of_order(d)?;
    let report: VerificationReport = match theorem {
        Theorem::PrimeLines => {
            if f.degree() != 1 {
                return Err(usage(format!("this check needs a prime order (got {d})")));
            }
            verify_prime_order_lines(f.characteristic())
        }
        Theorem::ThroughPoint => verify_extraordinary_through(&f),
        Theorem::ContainsLine => verify_line_in_every_set(&f),
        Theorem::Types => verify_type_dichotomy(&f, jobs),
        Theorem::MaxOrthogonal => verify_max_orthogonal(&f),
    }
    .map_err(usage)?;
    write!(out, "{report}").map_err(io)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_render(file: &PathBuf, origin: Origin, canonical: bool, out: &mut dyn Write) -> Outcome {
    let squares = load_squares(file)?;
    for (i, s) in squares.iter().enumerate() {
        if i > 0 {
            writeln!(out).map_err(io)?;
        }
        let s = if canonical { s.canonical_relabel() } else { s.clone() };
        write!(out, "{}", s.render(origin)).map_err(io)?;
    }
    Ok(EXIT_OK)
}
