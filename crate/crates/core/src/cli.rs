//! Command-line front end. `run` returns the exit code and both output
//! streams so the binary and the tests share one code path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclic::{cyclic_census, det_check};
use crate::document::LatticeDocument;
use crate::error::{Error, Result};
use crate::heights::{count_wr_classes, enumerate_s_k_with_heights, weil_height, FieldDescriptor};
use crate::numberfield::{lambda_k_report, FieldSpec, NF_HEADER};
use crate::planar::canonical_x;
use crate::roots::root_report_csv;
use crate::scalar::Scalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SCALE: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "cyclat", version, about = "Exact computations on well-rounded and cyclic lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Emit {
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical parameter x and its height for a planar WR lattice.
    Canon {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Number of planar WR similarity classes of height at most T', for T' = 1..T.
    Count {
        /// `rational` or `quad:D`
        #[arg(long)]
        field: FieldDescriptor,
        #[arg(long = "max-height")]
        max_height: u64,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
    },
    /// Cyclicity of the root lattices and their duals up to rank N.
    RootReport {
        #[arg(long = "max-n")]
        max_n: usize,
    },
    /// All cyclic sublattices of Z^n of index at most T.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-index")]
        max_index: u64,
    },
    /// Trace-form lattice of a cyclotomic or quadratic field.
    #[command(group(ArgGroup::new("spec").required(true).args(["cyclotomic", "quad"])))]
    Nf {
        #[arg(long)]
        cyclotomic: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        quad: Option<i64>,
    },
    /// det P(c) through the roots of unity, checked against the exact determinant.
    Detcheck {
        /// comma-separated integers
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Elements x of K with |x| <= alpha and h(x) <= T, with height enclosures.
    Enumerate {
        #[arg(long)]
        field: FieldDescriptor,
        /// rational bound T
        #[arg(long = "max-height")]
        max_height: String,
        /// exact entry; defaults to 2-1*sqrt(3)
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long = "positive-only")]
        positive_only: bool,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidParameter(_) => EXIT_USAGE,
        Error::ScaleLimit(_) => EXIT_SCALE,
        Error::Inconsistent(_) | Error::Overflow(_) | Error::EnclosureTooWide(_) => EXIT_INTERNAL,
        _ => EXIT_DOMAIN,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Canon { lattice } => canon(lattice),
        Command::Count { field, max_height, emit: Emit::Csv } => count(*field, *max_height),
        Command::RootReport { max_n } => root_report_csv(*max_n),
        Command::Census { n, max_index } => census(*n, *max_index),
        Command::Nf { cyclotomic, quad } => {
            let spec = match (cyclotomic, quad) {
                (Some(n), _) => FieldSpec::cyclotomic(*n)?,
                (None, Some(d)) => FieldSpec::quadratic(*d)?,
                (None, None) => return Err(Error::param("need --cyclotomic or --quad")),
            };
            Ok(format!("{NF_HEADER}\n{}\n", lambda_k_report(spec)?.csv_line()))
        }
        Command::Detcheck { c } => detcheck(c),
        Command::Enumerate { field, max_height, alpha, positive_only } => {
            enumerate(*field, max_height, alpha.as_deref(), *positive_only)
        }
    }
}

#[derive(Serialize)]
struct CanonOutput {
    x: String,
    field: String,
    height_lo: f64,
    height_hi: f64,
    wr: bool,
}

fn canon(path: &PathBuf) -> Result<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { location: path.display().to_string(), message: e.to_string() })?;
    let doc = LatticeDocument::parse(&text)?;
    let l = doc.lattice()?;
    let class = canonical_x(&l)?;
    let h = weil_height(&class.x);
    let out = CanonOutput { x: class.x.to_string(), field: doc.field.to_string(), height_lo: h.lo(), height_hi: h.hi(), wr: true };
    Ok(serde_json::to_string(&out).expect("serializable") + "\n")
}

/// Decimal string of `r` rounded up to two places.
fn ceil_2dp(r: &BigRational) -> String {
    let c = (r * BigRational::from_integer(BigInt::from(100))).ceil().to_integer();
    let (q, m) = c.div_mod_floor(&BigInt::from(100));
    format!("{q}.{m:02}")
}

fn count(field: FieldDescriptor, t: u64) -> Result<String> {
    if t < 1 {
        return Err(Error::param("--max-height must be at least 1"));
    }
    let mut out = String::from("T,count,bound_hi\n");
    for tt in 1..=t {
        let c = count_wr_classes(field, &BigRational::from_integer(BigInt::from(tt)))?;
        writeln!(out, "{tt},{},{}", c.count, ceil_2dp(&c.bound.hi)).expect("string write");
    }
    Ok(out)
}

fn census(n: usize, t: u64) -> Result<String> {
    let mut out = String::from("n,index,hnf_columns,is_cyclic,is_simple,generator\n");
    for e in cyclic_census(n, t)? {
        let cols: Vec<String> =
            e.hnf_columns.iter().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        let simple = match e.is_simple() {
            Some(b) => b.to_string(),
            None => e.status.label().to_string(),
        };
        let gen = e
            .status
            .certificate()
            .map(|c| c.generator.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_else(|| "-".into());
        writeln!(out, "{n},{},{},true,{simple},{gen}", e.index, cols.join(";")).expect("string write");
    }
    Ok(out)
}

fn parse_ints(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse { location: format!("--c entry {i}"), message: format!("not an integer: {s:?}") })
        })
        .collect()
}

fn detcheck(text: &str) -> Result<String> {
    let c = parse_ints(text)?;
    let d = det_check(&c)?;
    let status = if d.agrees() { "ok" } else { "mismatch" };
    Ok(format!("det_interval,det_exact,status\n{},{},{status}\n", d.via_roots, d.exact))
}

fn enumerate(field: FieldDescriptor, t: &str, alpha: Option<&str>, positive_only: bool) -> Result<String> {
    let t: Scalar = t.parse()?;
    let t = t.as_rational().cloned().ok_or_else(|| Error::param("--max-height must be rational"))?;
    let alpha: Scalar = match alpha {
        Some(a) => a.parse()?,
        None => crate::heights::alpha_max(),
    };
    let mut out = String::from("x,h_lo,h_hi\n");
    for (x, _) in enumerate_s_k_with_heights(field, &alpha, &t, positive_only)? {
        let h = weil_height(&x);
        writeln!(out, "{x},{},{}", h.lo(), h.hi()).expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_decimal_ceiling() {
        assert_eq!(ceil_2dp(&BigRational::new(43368.into(), 100.into())), "433.68");
        assert_eq!(ceil_2dp(&BigRational::new(433681.into(), 1000.into())), "433.69");
        assert_eq!(ceil_2dp(&BigRational::new(1.into(), 200.into())), "0.01");
    }

    #[test]
    fn detcheck_row() {
        let o = run(["cyclat", "detcheck", "--c", "1,1,0"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "det_interval,det_exact,status\n2,2,ok\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["cyclat", "detcheck", "--c", "1,x"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclat", "frobnicate"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclat", "count", "--field", "quad:4", "--max-height", "1"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclat", "root-report", "--max-n", "9"]).code, EXIT_SCALE);
    }

    #[test]
    fn count_rows() {
        let o = run(["cyclat", "count", "--field", "rational", "--max-height", "4"]);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines[0], "T,count,bound_hi");
        assert!(lines[1].starts_with("1,1,"));
        assert!(lines[4].starts_with("4,2,"));
    }
}
