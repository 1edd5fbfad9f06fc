use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quatgraph_core::families::write_families_csv;
use quatgraph_core::graph::export::{write_dot, write_edge_csv};
use quatgraph_core::graph::invariants::degree_sequence;
use quatgraph_core::snf::{annihilator_count, degree_histogram};
use quatgraph_core::verify::{self, RunConfig, Suite};
use quatgraph_core::{
    adjacent_fast, build_graph_with, classify, degree_formula, is_vertex, left_mul_matrix, smith_diagonal,
    BuildOptions, Modulus, Quat,
};

/// Largest `n` accepted without `--force`.
const DEFAULT_CAP: u32 = 8;

#[derive(Parser)]
#[command(
    name = "quatgraph",
    version,
    about = "Quaternions over Z/2^n and their non-zero divisor graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Modulus exponent; the ring is Z/2^n.
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Also write machine-readable output to this file.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Lift the default size caps.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Clone, Debug)]
struct QuatArg {
    /// Components a1 a2 a3 a4 (reduced modulo 2^n).
    #[arg(num_args = 4, value_names = ["A1", "A2", "A3", "A4"], allow_negative_numbers = true, required = true)]
    components: Vec<i64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Csv,
    Families,
}

#[derive(Subcommand)]
enum Command {
    /// Unit, zero-divisor or zero.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quat: QuatArg,
    },
    /// Lists the vertices b with ab != 0, in lexicographic order.
    Neighbors {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quat: QuatArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Degree from the invariant factors of left multiplication.
    Degree {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        quat: QuatArg,
    },
    /// Degree histogram over every vertex, from the formula alone.
    Stats {
        #[command(flatten)]
        common: Common,
    },
    /// Builds the explicit graph and prints a summary.
    Build {
        #[command(flatten)]
        common: Common,
    },
    /// Writes the graph as DOT or an edge list, or the vertex families as CSV.
    Export {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recomputes every claim and reports expected against computed values.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLE_PAIRS)]
        sample_pairs: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLE_VERTICES)]
        sample_vertices: usize,
    },
}

/// Bad input rather than a failed computation; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl Common {
    fn modulus(&self) -> Result<Modulus> {
        let m = Modulus::new(self.n)?;
        if !self.force {
            m.ensure_at_most(DEFAULT_CAP, "the command line without --force")?;
        }
        Ok(m)
    }

    fn init_threads(&self) -> Result<()> {
        if let Some(t) = self.threads {
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
        }
        Ok(())
    }

    fn write_json(&self, value: &Value) -> Result<()> {
        if let Some(path) = &self.json {
            write_json_file(path, value)?;
        }
        Ok(())
    }
}

fn write_json_file(path: &Path, value: &Value) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn parse_quat(q: &QuatArg, m: Modulus) -> Quat {
    let c = &q.components;
    Quat::from_ints([c[0], c[1], c[2], c[3]], m)
}

fn require_vertex(a: &Quat) -> Result<()> {
    if !is_vertex(a) {
        return Err(UsageError(format!("({a}) is not a vertex: it is classified as {}", classify(a))).into());
    }
    Ok(())
}

fn cmd_classify(common: &Common, q: &QuatArg) -> Result<bool> {
    let m = common.modulus()?;
    let a = parse_quat(q, m);
    let class = classify(&a);
    println!("{a}: {class}{}", if is_vertex(&a) { "" } else { " (not a vertex)" });
    common.write_json(
        &json!({ "n": m.exponent(), "quaternion": a.to_string(), "class": class, "vertex": is_vertex(&a) }),
    )?;
    Ok(true)
}

fn cmd_neighbors(common: &Common, q: &QuatArg, count_only: bool) -> Result<bool> {
    let m = common.modulus()?;
    m.ensure_at_most(quatgraph_core::ring::ENUMERATION_CAP, "neighbour listing")?;
    let a = parse_quat(q, m);
    require_vertex(&a)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut count = 0u64;
    let mut listed = Vec::new();
    for b in Quat::all(m).filter(|b| *b != a && is_vertex(b)) {
        if adjacent_fast(&a, &b)? {
            count += 1;
            if !count_only {
                writeln!(out, "{b}")?;
                if common.json.is_some() {
                    listed.push(b.to_string());
                }
            }
        }
    }
    if count_only {
        writeln!(out, "{count}")?;
    }
    out.flush()?;
    let mut report = json!({ "n": m.exponent(), "quaternion": a.to_string(), "count": count });
    if !count_only {
        report["neighbors"] = json!(listed);
    }
    common.write_json(&report)?;
    Ok(true)
}

fn cmd_degree(common: &Common, q: &QuatArg) -> Result<bool> {
    let m = common.modulus()?;
    let a = parse_quat(q, m);
    require_vertex(&a)?;
    let factors = smith_diagonal(&left_mul_matrix(&a)).0;
    let annihilators = annihilator_count(&a);
    let degree = degree_formula(&a)?;
    println!("quaternion:        {a} ({})", classify(&a));
    println!(
        "invariant factors: {} {} {} {}",
        factors[0], factors[1], factors[2], factors[3]
    );
    println!("left annihilator:  {annihilators}");
    println!("square is zero:    {}", a.product(&a).is_zero());
    println!("degree:            {degree}");
    common.write_json(&json!({
        "n": m.exponent(),
        "quaternion": a.to_string(),
        "invariant_factors": factors.map(|d| u64::try_from(d).expect("factors divide the squared norm")),
        "annihilators": annihilators,
        "degree": degree,
    }))?;
    Ok(true)
}

fn extremes(m: Modulus) -> (u64, u64) {
    let n = m.exponent();
    let min = (1u64 << (4 * n - 1)) - if n == 1 { 1 } else { 2 };
    let max = m.ring_size() - if n == 1 { 3 } else { 4 };
    (min, max)
}

fn cmd_stats(common: &Common) -> Result<bool> {
    let m = common.modulus()?;
    let hist = degree_histogram(m)?;
    let min = *hist.keys().next().expect("vertices exist");
    let max = *hist.keys().last().expect("vertices exist");
    let (want_min, want_max) = extremes(m);
    println!("{:>12} {:>12}", "degree", "vertices");
    for (d, c) in &hist {
        println!("{d:>12} {c:>12}");
    }
    let ok = min == want_min && max == want_max;
    println!(
        "min {min} (expected {want_min}), max {max} (expected {want_max}): {}",
        if ok { "ok" } else { "MISMATCH" }
    );
    common.write_json(&json!({
        "n": m.exponent(),
        "histogram": hist.iter().map(|(d, c)| json!({ "degree": d, "vertices": c })).collect::<Vec<_>>(),
        "min": min,
        "max": max,
        "expected_min": want_min,
        "expected_max": want_max,
    }))?;
    Ok(ok)
}

fn cmd_build(common: &Common) -> Result<bool> {
    let m = common.modulus()?;
    let start = Instant::now();
    let g = build_graph_with(
        m,
        BuildOptions {
            allow_large: common.force,
        },
    )?;
    let millis = start.elapsed().as_millis();
    let seq = degree_sequence(&g);
    println!("vertices:   {}", g.len());
    println!("edges:      {}", g.edge_count());
    println!("min degree: {}", seq.min);
    println!("max degree: {}", seq.max);
    println!("built in {millis} ms (sampled audit against multiplication passed)");
    common.write_json(&json!({
        "n": m.exponent(),
        "vertices": g.len(),
        "edges": g.edge_count(),
        "min_degree": seq.min,
        "max_degree": seq.max,
    }))?;
    Ok(true)
}

fn cmd_export(common: &Common, format: ExportFormat, out: Option<&Path>) -> Result<bool> {
    let m = common.modulus()?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match format {
        ExportFormat::Families => write_families_csv(m, &mut w)?,
        ExportFormat::Dot | ExportFormat::Csv => {
            let g = build_graph_with(
                m,
                BuildOptions {
                    allow_large: common.force,
                },
            )?;
            if format == ExportFormat::Dot {
                write_dot(&g, &mut w)?;
            } else {
                write_edge_csv(&g, &mut w)?;
            }
        }
    }
    w.flush()?;
    Ok(true)
}

fn cmd_verify(common: &Common, suite: Suite, sample_pairs: usize, sample_vertices: usize) -> Result<bool> {
    let config = RunConfig {
        modulus: common.modulus()?,
        suite,
        seed: common.seed,
        sample_pairs,
        sample_vertices,
        force: common.force,
    };
    let report = verify::run(&config);
    println!("{report}");
    if let Some(path) = &common.json {
        write_json_file(path, &serde_json::to_value(&report)?)?;
    }
    Ok(!report.has_failures())
}

fn run(cli: Cli) -> Result<bool> {
    let common = match &cli.command {
        Command::Classify { common, .. }
        | Command::Neighbors { common, .. }
        | Command::Degree { common, .. }
        | Command::Stats { common }
        | Command::Build { common }
        | Command::Export { common, .. }
        | Command::Verify { common, .. } => common,
    };
    common.init_threads()?;
    match &cli.command {
        Command::Classify { common, quat } => cmd_classify(common, quat),
        Command::Neighbors {
            common,
            quat,
            count_only,
        } => cmd_neighbors(common, quat, *count_only),
        Command::Degree { common, quat } => cmd_degree(common, quat),
        Command::Stats { common } => cmd_stats(common),
        Command::Build { common } => cmd_build(common),
        Command::Export { common, format, out } => cmd_export(common, *format, out.as_deref()),
        Command::Verify {
            common,
            suite,
            sample_pairs,
            sample_vertices,
        } => {
            if *sample_pairs == 0 {
                bail!("--sample-pairs must be positive");
            }
            cmd_verify(common, *suite, *sample_pairs, *sample_vertices)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
