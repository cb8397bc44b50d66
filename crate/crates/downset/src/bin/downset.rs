use std::io::{self, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use downset::campaign::{self, Params, Reading, Theorem};
use downset::cert::{optimize, parse_lengths};
use downset::core::oracle::Poset;
use downset::core::{GridShape, TriangleShape};
use downset::error::{AppResult, EXIT_MISMATCH, EXIT_OK};
use downset::tables;
use downset::weights::WeightSpec;

/// Maximum-weight downsets of grids and right triangles, checked against
/// exhaustive search.
#[derive(Parser)]
#[command(name = "downset", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find every optimal downset of one size and print a JSON certificate.
    Optimize(OptimizeArgs),
    /// Run a verification campaign and print one row per cell.
    Verify(VerifyArgs),
    /// Print a CSV table.
    Table(TableArgs),
}

#[derive(Clone, Debug)]
struct Lengths(Vec<usize>);

fn lengths(arg: &str) -> Result<Lengths, String> {
    parse_lengths(arg).map(Lengths)
}

#[derive(Args)]
#[command(group(ArgGroup::new("poset").required(true).args(["shape", "triangle", "grid_box"])))]
struct OptimizeArgs {
    /// Rectangle side lengths, e.g. 3,5.
    #[arg(long, value_parser = lengths, value_name = "L1,L2")]
    shape: Option<Lengths>,
    /// Right triangle of side ell.
    #[arg(long, value_name = "ELL")]
    triangle: Option<usize>,
    /// Three-dimensional box, e.g. 3,3,3.
    #[arg(long = "box", value_parser = lengths, value_name = "L1,L2,L3")]
    grid_box: Option<Lengths>,
    /// Number of points in the downset.
    #[arg(long, value_name = "M")]
    size: usize,
    /// standard, squares, powers-of-two, or a file with one weight per rank.
    #[arg(long, default_value = "standard")]
    weight: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    /// Smallest side length.
    #[arg(long)]
    lmin: Option<usize>,
    /// Largest side length.
    #[arg(long)]
    lmax: Option<usize>,
    /// Single vertex count (ak) or side (local-global).
    #[arg(long, conflicts_with_all = ["nmin", "nmax"])]
    n: Option<usize>,
    #[arg(long)]
    nmin: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Clique sizes of a product, e.g. 3,4 (lindsay).
    #[arg(long, value_parser = lengths)]
    dims: Option<Lengths>,
    /// Dimension (local-global).
    #[arg(long)]
    d: Option<usize>,
    /// Box arithmetic for box-formulas.
    #[arg(long, value_enum)]
    reading: Option<Reading>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("table").required(true).args(["ak", "delta", "triangle_catalogue"])))]
struct TableArgs {
    /// Optimal adjacent edge pairs of m-edge graphs on n vertices.
    #[arg(long, value_name = "N")]
    ak: Option<usize>,
    /// δ-sequence of a graph such as K4, C4, P3 or K3xK4.
    #[arg(long, value_name = "GRAPH")]
    delta: Option<String>,
    /// Packed boxes carrying optimal symmetrized segments of a triangle.
    #[arg(long, value_name = "ELL")]
    triangle_catalogue: Option<usize>,
}

fn grid(lengths: Vec<usize>, dim: usize, flag: &str) -> AppResult<Poset> {
    if lengths.len() != dim {
        return Err(downset::AppError::Usage(format!(
            "--{flag} takes {dim} side lengths"
        )));
    }
    Ok(Poset::Grid(GridShape::new(lengths)?))
}

fn run_optimize(args: OptimizeArgs) -> AppResult<i32> {
    let poset = match (args.shape, args.triangle, args.grid_box) {
        (Some(Lengths(l)), _, _) => grid(l, 2, "shape")?,
        (_, Some(ell), _) => Poset::Triangle(TriangleShape::new(ell)?),
        (_, _, Some(Lengths(l))) => grid(l, 3, "box")?,
        _ => unreachable!("clap requires one poset flag"),
    };
    let weight = WeightSpec::parse(&args.weight)?;
    let cert = optimize(&poset, &weight, args.size)?;
    io::stdout().write_all(cert.to_json()?.as_bytes())?;
    Ok(EXIT_OK)
}

fn paint(text: &str, pass: bool) -> String {
    if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        text.to_string()
    } else {
        let code = if pass { 32 } else { 31 };
        format!("\x1b[{code}m{text}\x1b[0m")
    }
}

fn run_verify(args: VerifyArgs) -> AppResult<i32> {
    let params = Params {
        lmin: args.lmin,
        lmax: args.lmax,
        nmin: args.n.or(args.nmin),
        nmax: args.n.or(args.nmax),
        dims: args.dims.map(|Lengths(d)| d),
        d: args.d,
        reading: args.reading,
    };
    let jobs = args.jobs.unwrap_or_else(campaign::default_jobs);
    let report = campaign::run(args.theorem, &params, jobs)?;
    let stdout = io::stdout();
    match args.format {
        Format::Csv => report.write_csv(stdout.lock())?,
        Format::Json => stdout.lock().write_all(report.to_json()?.as_bytes())?,
    }
    let pass = report.all_pass();
    eprintln!(
        "{}: {} cells, {} failed: {}",
        args.theorem.name(),
        report.rows.len(),
        report.failed(),
        paint(if pass { "PASS" } else { "FAIL" }, pass)
    );
    Ok(if pass { EXIT_OK } else { EXIT_MISMATCH })
}

fn run_table(args: TableArgs) -> AppResult<i32> {
    let out = io::stdout().lock();
    match (args.ak, args.delta, args.triangle_catalogue) {
        (Some(n), _, _) => tables::ak_table(n, out)?,
        (_, Some(spec), _) => tables::delta_table(&spec, out)?,
        (_, _, Some(ell)) => tables::catalogue_table(ell, out)?,
        _ => unreachable!("clap requires one table flag"),
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Optimize(a) => run_optimize(a),
        Command::Verify(a) => run_verify(a),
        Command::Table(a) => run_table(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
