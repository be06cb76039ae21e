//! The `nullforest` command line.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::forest::{parse_forest, Forest};
use crate::format::{read_basis, write_matrix_market, write_text};
use crate::generators::{generate, Family, GenSpec};
use crate::matching::maximum_matching;
use crate::oracle::verify_vectors;
use crate::sparsest::SparsestPlan;
use crate::support::{alternating_basis, support_set, NullBasis};

/// Exit code for malformed input or arguments.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for a basis that fails verification.
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nullforest", version, about = "Sparse null bases of forests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the null-space support, one vertex per line.
    Support(Input),
    /// Print a {-1,0,1} null basis derived from a maximum matching.
    Basis(BasisArgs),
    /// Print a sparsest {-1,0,1} null basis.
    Sparsest(BasisArgs),
    /// Print the number of nonzeros of a sparsest null basis.
    Nnz(Input),
    /// Print summary counts as key=value lines.
    Stats(Input),
    /// Check a basis file against a forest; exit 2 on any failed check.
    Verify { forest: String, basis: String },
    /// Emit a generated forest in edge-list format.
    Gen(GenArgs),
    /// Time sparsest-basis construction over a range of sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Edge-list file, or `-` for stdin.
    pub input: String,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    /// Edge-list file, or `-` for stdin.
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Txt)]
    pub format: Format,
    /// Order vectors by nonzero count instead of by anchor.
    #[arg(long)]
    pub sort_by_nnz: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Txt,
    Mm,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub components: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_parser = parse_family, default_value = "path")]
    pub family: Family,
    /// Comma-separated vertex counts; may be empty.
    #[arg(long, default_value = "10000,100000,1000000")]
    pub sizes: String,
    #[arg(long, default_value_t = 1)]
    pub components: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Repetitions per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    /// Emit CSV instead of an aligned table.
    #[arg(long)]
    pub csv: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// One timed measurement from [`bench`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub nnz: usize,
    pub millis: f64,
}

/// Times `sparsest_basis` on one generated forest per size, keeping the
/// fastest of `reps` runs. Generation is not timed.
pub fn bench(
    family: Family,
    sizes: &[usize],
    components: usize,
    seed: u64,
    reps: usize,
) -> crate::Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| {
            let f = generate(&GenSpec {
                family,
                n,
                components,
                seed,
            })?;
            let mut best = f64::INFINITY;
            let mut nnz = 0;
            for _ in 0..reps.max(1) {
                let start = Instant::now();
                let b = crate::sparsest::sparsest_basis(&f);
                best = best.min(start.elapsed().as_secs_f64() * 1e3);
                nnz = b.total_nnz();
            }
            Ok(BenchRow {
                n,
                nnz,
                millis: best,
            })
        })
        .collect()
}

/// Formats with three significant digits.
pub fn three_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if magnitude >= 2 {
        let scale = 10f64.powi(magnitude - 2);
        format!("{}", (x / scale).round() * scale)
    } else {
        format!("{:.*}", (2 - magnitude) as usize, x)
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, String> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    }
    Ok(text)
}

fn load_forest(path: &str, stdin: &mut dyn Read) -> Result<Forest, String> {
    let text = read_input(path, stdin)?;
    parse_forest(&text).map_err(|e| format!("{path}: {e}"))
}

fn render_basis(mut b: NullBasis, n: usize, args: &BasisArgs) -> String {
    if args.sort_by_nnz {
        b.sort_by_nnz();
    }
    match args.format {
        Format::Txt => write_text(&b),
        Format::Mm => write_matrix_market(&b, n),
    }
}

fn plan(f: &Forest) -> Result<SparsestPlan, String> {
    SparsestPlan::new(f).map_err(|e| e.to_string())
}

/// Executes one command; returns stdout text and exit code.
fn execute(command: Command, stdin: &mut dyn Read) -> Result<(String, i32), String> {
    let mut out = String::new();
    let code = match command {
        Command::Support(Input { input }) => {
            let f = load_forest(&input, stdin)?;
            for v in support_set(&f, &maximum_matching(&f)) {
                writeln!(out, "{v}").unwrap();
            }
            0
        }
        Command::Basis(args) => {
            let f = load_forest(&args.input, stdin)?;
            let b = alternating_basis(&f, &maximum_matching(&f));
            out = render_basis(b, f.vertex_count(), &args);
            0
        }
        Command::Sparsest(args) => {
            let f = load_forest(&args.input, stdin)?;
            out = render_basis(plan(&f)?.basis(), f.vertex_count(), &args);
            0
        }
        Command::Nnz(Input { input }) => {
            let f = load_forest(&input, stdin)?;
            writeln!(out, "{}", plan(&f)?.nnz()).unwrap();
            0
        }
        Command::Stats(Input { input }) => {
            let f = load_forest(&input, stdin)?;
            let p = plan(&f)?;
            writeln!(out, "n={}", f.vertex_count()).unwrap();
            writeln!(out, "m={}", f.edge_count()).unwrap();
            writeln!(out, "matching={}", p.matching_size).unwrap();
            writeln!(out, "nullity={}", p.nullity()).unwrap();
            writeln!(out, "support={}", p.support.len()).unwrap();
            writeln!(out, "core={}", p.support_forest.core_count()).unwrap();
            writeln!(out, "nnz={}", p.nnz()).unwrap();
            0
        }
        Command::Verify { forest, basis } => {
            if forest == "-" && basis == "-" {
                return Err("at most one of the inputs may be stdin".into());
            }
            let f = load_forest(&forest, stdin)?;
            let text = read_input(&basis, stdin)?;
            let raw = read_basis(&text).map_err(|e| format!("{basis}: {e}"))?;
            let report = verify_vectors(&f, &raw.vectors);
            write!(out, "{report}").unwrap();
            if report.all_passed() {
                0
            } else {
                EXIT_VERIFY
            }
        }
        Command::Gen(args) => {
            let f = generate(&GenSpec {
                family: args.family,
                n: args.n,
                components: args.components,
                seed: args.seed,
            })
            .map_err(|e| e.to_string())?;
            out = f.to_edge_list();
            0
        }
        Command::Bench(args) => {
            let sizes = args
                .sizes
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| format!("bad size `{s}`")))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = bench(args.family, &sizes, args.components, args.seed, args.reps)
                .map_err(|e| e.to_string())?;
            if args.csv {
                writeln!(out, "n,nnz,ms").unwrap();
                for r in rows {
                    writeln!(out, "{},{},{}", r.n, r.nnz, three_sig(r.millis)).unwrap();
                }
            } else {
                writeln!(out, "{:>10} {:>10} {:>10}", "n", "nnz", "ms").unwrap();
                for r in rows {
                    writeln!(out, "{:>10} {:>10} {:>10}", r.n, r.nnz, three_sig(r.millis)).unwrap();
                }
            }
            0
        }
    };
    Ok((out, code))
}

/// Parses `argv` (including the program name), runs the command, and
/// writes results to `stdout` and diagnostics to `stderr`. Returns the exit
/// code: 0 on success, 1 on bad input, 2 on failed verification.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdin) {
        Ok((text, code)) => {
            if let Err(e) = stdout.write_all(text.as_bytes()) {
                let _ = writeln!(stderr, "nullforest: {e}");
                return EXIT_INPUT;
            }
            code
        }
        Err(msg) => {
            let _ = writeln!(stderr, "nullforest: {msg}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("nullforest").chain(args.iter().copied()),
            &mut stdin,
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const P5: &str = "p forest 5 4\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n";

    #[test]
    fn three_significant_digits() {
        assert_eq!(three_sig(1234.5), "1230");
        assert_eq!(three_sig(123.45), "123");
        assert_eq!(three_sig(12.345), "12.3");
        assert_eq!(three_sig(0.012345), "0.0123");
        assert_eq!(three_sig(0.0), "0");
    }

    #[test]
    fn nnz_and_support() {
        assert_eq!(
            run_with(&["nnz", "-"], P5),
            (0, "3\n".into(), String::new())
        );
        assert_eq!(run_with(&["support", "-"], P5).1, "0\n2\n4\n");
    }

    #[test]
    fn basis_formats() {
        assert_eq!(run_with(&["basis", "-"], P5).1, "2: -0 +2 -4\n");
        assert_eq!(run_with(&["sparsest", "-"], P5).1, "2: -0 +2 -4\n");
        let mm = run_with(&["sparsest", "--format", "mm", "-"], P5).1;
        assert_eq!(
            mm,
            "%%MatrixMarket matrix coordinate integer general\n5 1 3\n1 1 -1\n3 1 1\n5 1 -1\n"
        );
    }

    #[test]
    fn bad_input_exits_one() {
        let (code, out, err) = run_with(&["nnz", "-"], "p forest 3 3\ne 0 1\ne 1 2\ne 0 2\n");
        assert_eq!(code, EXIT_INPUT);
        assert!(out.is_empty());
        assert!(err.contains("cycle"), "{err}");
        assert_eq!(run_with(&["nnz", "--bogus", "-"], P5).0, EXIT_INPUT);
        assert_eq!(run_with(&[], "").0, EXIT_INPUT);
        assert_eq!(run_with(&["nnz", "/nonexistent/file"], "").0, EXIT_INPUT);
        assert_eq!(
            run_with(&["gen", "--family", "tree", "--n", "3"], "").0,
            EXIT_INPUT
        );
        assert_eq!(
            run_with(&["gen", "--family", "path", "--n", "0"], "").0,
            EXIT_INPUT
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_with(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("sparsest"));
    }

    #[test]
    fn bench_empty_range_prints_header_only() {
        let (code, out, _) = run_with(&["bench", "--sizes", "", "--csv"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "n,nnz,ms\n");
    }

    #[test]
    fn bench_rows() {
        let rows = bench(Family::Star, &[1_000, 10_000], 1, 0, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].nnz, 2 * (1_000 - 2));
        assert_eq!(rows[1].nnz, 2 * (10_000 - 2));
    }
}
