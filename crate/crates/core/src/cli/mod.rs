//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain error (zero
//! polynomial, unit, non-reduced germ, unsupported characteristic), 3
//! internal error or theorem violation.

mod parse;
mod render;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::algebra::{Characteristic, FieldTower};
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::newton::{ExtNat, NewtonDiagram};
use crate::nondeg::{classify, FaceKind, NonDegReport};
use crate::report::{invariant_bundle, verify_random, InvariantBundle, Status, VerifySummary};
use crate::resolve::{resolution_tree, BlowUpNode, Direction};

pub use parse::{parse_expr, parse_poly, PolyExpr};
pub use render::{ascii_diagram, describe_diagram, svg_diagram};

/// Header of `batch --format csv`.
pub const CSV_HEADER: [&str; 17] = [
    "poly", "char", "mu", "mu_N", "delta", "delta_N", "nu", "r", "r_N", "s_N", "wvc", "nnd", "innd", "wnnd", "whnnd", "nnd1",
    "superisolated",
];

#[derive(Parser, Debug)]
#[command(name = "curvegerm", version, about = "Invariants of plane curve germs over F_p and Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyInput {
    /// Characteristic: a prime below 2^31, or 0 for the rationals
    #[arg(long = "char")]
    characteristic: u64,
    /// Polynomial in x and y, e.g. "x*(x-y)^2+y^7"
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    poly: Option<String>,
    /// File holding one polynomial expression
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BatchFormat {
    Jsonl,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All invariants and theorem verdicts of one germ
    Invariants {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        json: bool,
    },
    /// Face-wise and global non-degeneracy
    Classify {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        json: bool,
    },
    /// Newton diagram as text, optionally also as SVG
    Diagram {
        #[command(flatten)]
        input: PolyInput,
        /// Write an SVG plot to this path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Blow-up tree of a reduced germ over a finite field
    Resolve {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        json: bool,
    },
    /// Randomized check of every verdict
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        chars: Vec<u64>,
        #[arg(long, default_value_t = 300)]
        samples: u64,
        #[arg(long, default_value_t = 7)]
        max_exp: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Invariants of every line of a file
    Batch {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "jsonl")]
        format: BatchFormat,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Usage(_) | Error::NotPrime(_) | Error::CharacteristicTooLarge(_) => 1,
        Error::Internal(_) | Error::TheoremViolation { .. } => 3,
        _ => 2,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut text = String::new();
    match dispatch(cli.command, &mut text, err) {
        Ok(code) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = out.write_all(text.as_bytes());
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn tower(p: u64) -> Result<FieldTower> {
    Ok(FieldTower::base(Characteristic::new(p)?))
}

fn read_input(input: &PolyInput) -> Result<BivarPoly> {
    let t = tower(input.characteristic)?;
    let text = match (&input.poly, &input.input) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Error::Usage("--poly or --input is required".into())),
    };
    let f = parse_poly(&text, &t)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f)
}

fn json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::internal(e.to_string()))
}

fn dispatch(cmd: Command, out: &mut String, err: &mut impl Write) -> Result<i32> {
    match cmd {
        Command::Invariants { input, json: as_json } => {
            let f = read_input(&input)?;
            let b = invariant_bundle(&f)?;
            if as_json {
                writeln!(out, "{}", json(&b)?).unwrap();
            } else {
                out.push_str(&bundle_table(&f, &b));
            }
        }
        Command::Classify { input, json: as_json } => {
            let f = read_input(&input)?;
            let r = classify(&f)?;
            if as_json {
                writeln!(out, "{}", json(&r)?).unwrap();
            } else {
                out.push_str(&classify_table(&f, &r)?);
            }
        }
        Command::Diagram { input, svg } => {
            let f = read_input(&input)?;
            let d = NewtonDiagram::of(&f)?;
            out.push_str(&describe_diagram(&d));
            out.push_str(&ascii_diagram(&f, &d));
            if let Some(path) = svg {
                std::fs::write(&path, svg_diagram(&f, &d)).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            }
        }
        Command::Resolve { input, json: as_json } => {
            let f = read_input(&input)?;
            let tree = resolution_tree(&f)?;
            if as_json {
                writeln!(out, "{}", json(&tree.to_json())?).unwrap();
            } else {
                out.push_str(&tree_text(&tree));
                let s = tree.summary();
                writeln!(out, "delta {} nu {} r {} superisolated {}", s.delta, s.nu, s.r, s.superisolated).unwrap();
            }
        }
        Command::Verify { chars, samples, max_exp, seed, json: as_json } => {
            let s = verify_random(&chars, samples, max_exp, seed)?;
            if as_json {
                writeln!(out, "{}", json(&s)?).unwrap();
            } else {
                out.push_str(&verify_text(&s));
            }
            if !s.all_pass() {
                for f in &s.failures {
                    let _ = writeln!(err, "failure: char {} sample {}: {} {:?} {}", f.characteristic, f.index, f.poly, f.failed, f.error.as_deref().unwrap_or(""));
                }
                return Err(Error::internal("randomized verification failed"));
            }
        }
        Command::Batch { characteristic, input, format } => return batch(characteristic, &input, format, out, err),
    }
    Ok(0)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}

fn bundle_table(f: &BivarPoly, b: &InvariantBundle) -> String {
    let mut s = String::new();
    let fl = &b.flags;
    let rows: [(&str, String); 17] = [
        ("poly", f.to_string()),
        ("char", b.characteristic.to_string()),
        ("mu", b.mu.to_string()),
        ("mu_N", b.mu_n.to_string()),
        ("delta", opt(&b.delta)),
        ("delta_N", b.delta_n.to_string()),
        ("nu", opt(&b.nu)),
        ("r", opt(&b.r)),
        ("r_N", b.r_n.to_string()),
        ("s_N", b.s_n.to_string()),
        ("wvc", opt(&b.wvc)),
        ("nnd", fl.nnd.to_string()),
        ("innd", fl.innd.to_string()),
        ("wnnd", if fl.wnnd_vacuous { "true (no edges)".into() } else { fl.wnnd.to_string() }),
        ("whnnd", fl.whnnd.to_string()),
        ("nnd1", fl.nnd1.to_string()),
        ("superisolated", opt(&fl.superisolated)),
    ];
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<14}{v}");
    }
    let _ = writeln!(s, "verdicts:");
    for v in &b.verdicts {
        let status = match v.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a",
        };
        let _ = writeln!(s, "  {:<34}{status}", v.id);
    }
    s
}

fn classify_table(f: &BivarPoly, r: &NonDegReport) -> Result<String> {
    let d = NewtonDiagram::of(f)?;
    let mut s = String::new();
    let name = |k: FaceKind| match k {
        FaceKind::Vertex(i) => {
            let v = d.vertices[i];
            format!("vertex ({},{})", v.0, v.1)
        }
        FaceKind::Edge(i) => {
            let e = &d.edges[i];
            format!("edge ({},{})-({},{})", e.start.0, e.start.1, e.end.0, e.end.1)
        }
    };
    let b = |v: Option<bool>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(s, "{:<24}{:<7}{:<7}{:<7}whnd", "face", "inner", "nd", "wnd");
    for fv in &r.faces {
        let _ = writeln!(s, "{:<24}{:<7}{:<7}{:<7}{}", name(fv.face.face), fv.face.inner, fv.nd, b(fv.wnd), b(fv.whnd));
    }
    let _ = writeln!(s, "nnd    {}", r.nnd);
    let _ = writeln!(s, "innd   {} (polytope of f + x^{m} + y^{m})", r.innd, m = r.innd_m);
    let _ = writeln!(s, "wnnd   {}{}", r.wnnd, if r.wnnd_vacuous { " (no edges)" } else { "" });
    let _ = writeln!(s, "whnnd  {}", r.whnnd);
    let _ = writeln!(s, "nnd1   {} (x-axis vertex {}, y-axis vertex {})", r.nnd1, b(r.nd1_x_vertex), b(r.nd1_y_vertex));
    Ok(s)
}

fn tree_text(node: &BlowUpNode) -> String {
    let mut s = String::new();
    let dir = match &node.direction {
        Direction::Root => "root".to_string(),
        Direction::XChartOrigin => "x-chart origin".to_string(),
        Direction::YChartOrigin => "y-chart origin".to_string(),
        Direction::Tangent { degree } => format!("tangent of degree {degree}"),
    };
    let _ = writeln!(
        s,
        "{}mult {} special {} degree {} [{dir}, {} point{}]",
        "  ".repeat(node.depth as usize),
        node.mult,
        node.special,
        node.tower.total_degree(),
        node.points,
        if node.points == 1 { "" } else { "s" }
    );
    for c in &node.children {
        s.push_str(&tree_text(c));
    }
    s
}

fn verify_text(s: &VerifySummary) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "seed {} samples {} max_exp {}", s.seed, s.samples, s.max_exp);
    for c in &s.per_char {
        let _ = writeln!(t, "char {}: {} samples, {} reduced, {} finite mu, {} innd", c.characteristic, c.samples, c.reduced, c.finite_mu, c.innd);
        for (id, n) in &c.verdicts {
            let _ = writeln!(t, "  {id:<34}pass {:>4}  fail {:>4}  n/a {:>4}", n.pass, n.fail, n.not_applicable);
        }
    }
    let p = &s.pair;
    let _ = writeln!(t, "pair f = {} and g = {}", p.f, p.g);
    let _ = writeln!(t, "  same diagram {}, wvc {} vs {}, innd(f) {}", p.same_diagram, opt(&p.wvc_f), opt(&p.wvc_g), p.innd_f);
    let _ = writeln!(t, "  innd not necessary for wvc = 0: {}", p.innd_not_necessary);
    let _ = writeln!(t, "  diagram blind to wvc: {}", p.diagram_blind_to_wvc);
    let _ = writeln!(t, "failures {}", s.failures.len());
    t
}

fn csv_ext(v: &ExtNat) -> String {
    v.to_string()
}

fn csv_row(poly: &str, b: &InvariantBundle) -> Vec<String> {
    let o = |v: &Option<u64>| v.map_or(String::new(), |v| v.to_string());
    let fl = &b.flags;
    vec![
        poly.to_string(),
        b.characteristic.to_string(),
        csv_ext(&b.mu),
        csv_ext(&b.mu_n),
        o(&b.delta),
        csv_ext(&b.delta_n),
        o(&b.nu),
        o(&b.r),
        b.r_n.to_string(),
        b.s_n.to_string(),
        b.wvc.as_ref().map_or(String::new(), csv_ext),
        fl.nnd.to_string(),
        fl.innd.to_string(),
        fl.wnnd.to_string(),
        fl.whnnd.to_string(),
        fl.nnd1.to_string(),
        fl.superisolated.map_or(String::new(), |v| v.to_string()),
    ]
}

/// One row per input line, in input order. Failing lines are reported on
/// `err` with their line number; the exit code is the largest per-line code.
fn batch(p: u64, path: &PathBuf, format: BatchFormat, out: &mut String, err: &mut impl Write) -> Result<i32> {
    let t = tower(p)?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let lines: Vec<&str> = text.lines().collect();
    let results: Vec<Result<InvariantBundle>> = lines
        .par_iter()
        .map(|line| {
            let f = parse_poly(line, &t)?;
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            invariant_bundle(&f)
        })
        .collect();
    let mut code = 0;
    let mut csv = csv::Writer::from_writer(Vec::new());
    if let BatchFormat::Csv = format {
        csv.write_record(CSV_HEADER).map_err(|e| Error::internal(e.to_string()))?;
    }
    for (n, (line, r)) in lines.iter().zip(&results).enumerate() {
        let lineno = n + 1;
        if let Err(e) = r {
            let _ = writeln!(err, "line {lineno}: {e}");
            code = code.max(exit_code(e));
        }
        match format {
            BatchFormat::Jsonl => {
                let v = match r {
                    Ok(b) => serde_json::json!({ "line": lineno, "poly": line, "bundle": b }),
                    Err(e) => serde_json::json!({ "line": lineno, "poly": line, "error": e.to_string() }),
                };
                writeln!(out, "{v}").unwrap();
            }
            BatchFormat::Csv => {
                let row = match r {
                    Ok(b) => csv_row(line, b),
                    Err(_) => {
                        let mut row = vec![String::new(); CSV_HEADER.len()];
                        row[0] = line.to_string();
                        row[1] = p.to_string();
                        row
                    }
                };
                csv.write_record(&row).map_err(|e| Error::internal(e.to_string()))?;
            }
        }
    }
    if let BatchFormat::Csv = format {
        let bytes = csv.into_inner().map_err(|e| Error::internal(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::internal(e.to_string()))?);
    }
    Ok(code)
}
