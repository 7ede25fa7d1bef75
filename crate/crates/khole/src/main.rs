use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use khole::bench::{bench, format_table};
use khole::error::{CliError, CliResult};
use khole::io::{format_points, read_points, write_text};
use khole::parallel::{build_catalog, count_holes_up_to, pipeline_report, run_assignment, with_threads};
use khole::report::{AssignmentSummary, CountEntry, InputSummary, LayerSummary, ReportDocument};
use khole::verify::{replay, run_suites, SuiteResult};
use khole_core::generators::{gen_convex, gen_horton, gen_random};
use khole_core::holes::enumerate_brute;
use khole_core::layers::decompose;
use khole_core::PointSet;

#[derive(Parser)]
#[command(
    name = "khole",
    version,
    about = "Count and analyse empty convex polygons in planar point sets"
)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Convex,
    Horton,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Brute,
    Dp,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        /// Horton order; the set has 2^m points.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        range: i64,
        /// Output file; the set goes to stdout without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count k-holes.
    Count {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "5")]
        k: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Algorithm::Dp)]
        algorithm: Algorithm,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Assign 5-holes to the blocks of every center.
    Assign {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Full analysis: layers, assignment, convex runs and visibility.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run property suites.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Directory receiving one point-set file per failing trial.
        #[arg(long)]
        artifacts: Option<PathBuf>,
        /// Run the suite's check on this point set instead of generating trials.
        #[arg(long, conflicts_with_all = ["trials", "n", "seed"])]
        replay: Option<PathBuf>,
    },
    /// Time brute-force against dynamic-programming counting.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10,15,20,25,30,60,120")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n counted by brute force.
        #[arg(long, default_value_t = 30)]
        brute_limit: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn write_report(path: Option<&Path>, doc: &ReportDocument) -> CliResult<()> {
    match path {
        Some(path) => write_text(path, &doc.to_json()),
        None => Ok(()),
    }
}

fn input_summary(file: &Path, ps: &PointSet) -> Option<InputSummary> {
    Some(InputSummary {
        source: file.display().to_string(),
        n: ps.len(),
    })
}

fn cmd_gen(kind: Kind, n: Option<usize>, m: Option<u32>, seed: u64, range: i64, out: Option<&Path>) -> CliResult<()> {
    let need_n = || n.ok_or_else(|| CliError::Usage("--n is required for this kind".into()));
    let (ps, header) = match kind {
        Kind::Random => (
            gen_random(need_n()?, seed, range)?,
            format!("random n={} seed={seed} range={range}", need_n()?),
        ),
        Kind::Convex => (
            gen_convex(need_n()?, seed, range)?,
            format!("convex n={} seed={seed} range={range}", need_n()?),
        ),
        Kind::Horton => {
            let m = match (m, n) {
                (Some(m), _) => m,
                (None, Some(n)) if n.is_power_of_two() => n.trailing_zeros(),
                _ => return Err(CliError::Usage("Horton sets need --m or a power-of-two --n".into())),
            };
            (gen_horton(m)?, format!("horton m={m}"))
        }
    };
    let text = format_points(&ps, &[header]);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            println!("{} {}", path.display(), ps.len());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_count(file: &Path, ks: &[usize], algorithm: Algorithm, json: Option<&Path>) -> CliResult<()> {
    let ps = read_points(file)?;
    let (counts, name) = match algorithm {
        Algorithm::Brute => (
            ks.iter()
                .map(|&k| Ok(enumerate_brute(&ps, k)?.len() as u64))
                .collect::<CliResult<Vec<_>>>()?,
            "brute",
        ),
        Algorithm::Dp => {
            let kmax = ks.iter().copied().max().unwrap_or(5);
            let all = count_holes_up_to(&ps, kmax)?;
            (ks.iter().map(|&k| all[k]).collect(), "dp")
        }
    };
    let mut entries = Vec::new();
    for (&k, &count) in ks.iter().zip(&counts) {
        println!("{k}-holes: {count}");
        entries.push(CountEntry {
            k,
            count,
            algorithm: name.to_string(),
        });
    }
    let mut doc = ReportDocument::new("count");
    doc.input = input_summary(file, &ps);
    doc.counts = Some(entries);
    write_report(json, &doc)
}

fn cmd_assign(file: &Path, json: Option<&Path>) -> CliResult<()> {
    let ps = read_points(file)?;
    let dec = decompose(&ps);
    let catalog = build_catalog(&ps, &[5])?;
    let ledger = run_assignment(&ps, &dec, &catalog)?;
    let summary = AssignmentSummary::new(&ledger, catalog.count_of_size(5));
    println!("n: {}", ps.len());
    println!("layers: {} (k_mid {})", dec.len(), dec.k_mid());
    println!("5-holes: {}", summary.five_holes);
    println!("centers: {}", summary.centers);
    println!(
        "blocks: {} (good {}, bad {})",
        summary.blocks, summary.good, summary.bad
    );
    println!("assigned holes: {} distinct", summary.distinct_holes);
    println!("max multiplicity per center: {}", summary.max_multiplicity_per_center);
    println!(
        "max non-vertex centers per hole and layer: {}",
        summary.max_nonvertex_per_layer
    );
    let mut doc = ReportDocument::new("assign");
    doc.input = input_summary(file, &ps);
    doc.layers = Some(LayerSummary::new(&dec));
    doc.assignment = Some(summary);
    write_report(json, &doc)
}

fn cmd_pipeline(file: &Path, json: Option<&Path>) -> CliResult<()> {
    let ps = read_points(file)?;
    let report = pipeline_report(&ps)?;
    println!("n: {}", report.n);
    println!("layers: {} (k_mid {})", report.layers, report.k_mid);
    println!("5-holes: {}", report.five_holes);
    println!("centers: {}", report.centers.len());
    println!("blocks: {} (good {})", report.total_blocks, report.total_good);
    println!("visible-long pairs: {}", report.visible_long_pairs);
    println!(
        "sign classes per visible-long hole: at most {}",
        report.lemma41_max_classes
    );
    let holds = report.verdicts.all_hold();
    println!("verdicts: {}", if holds { "all hold" } else { "VIOLATED" });
    let mut doc = ReportDocument::new("pipeline");
    doc.input = input_summary(file, &ps);
    doc.layers = Some(LayerSummary::new(&decompose(&ps)));
    doc.pipeline = Some(report);
    write_report(json, &doc)?;
    if holds {
        Ok(())
    } else {
        Err(CliError::Failure("pipeline inequalities violated".into()))
    }
}

fn suite_line(r: &SuiteResult) -> String {
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    let mut line = format!(
        "{verdict} {} trials={} failures={}",
        r.suite,
        r.trials,
        r.failures.len()
    );
    for (k, v) in &r.metrics {
        line.push_str(&format!(" {k}={v}"));
    }
    line
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    trials: usize,
    n: usize,
    seed: u64,
    json: Option<&Path>,
    artifacts: Option<&Path>,
    replay_file: Option<&Path>,
) -> CliResult<()> {
    if let Some(file) = replay_file {
        let ps = read_points(file)?;
        return match replay(suite, &ps)? {
            Ok(_) => {
                println!("PASS {suite} replay");
                Ok(())
            }
            Err(msg) => Err(CliError::Failure(format!("{suite} replay: {msg}"))),
        };
    }
    let results = run_suites(suite, trials, n, seed)?;
    for r in &results {
        println!("{}", suite_line(r));
        for f in &r.failures {
            println!("  trial {} seed {}: {}", f.trial, f.seed, f.message);
        }
    }
    if let Some(dir) = artifacts {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        for r in &results {
            for f in &r.failures {
                let ps = PointSet::new(f.points.clone())?;
                let header = [
                    format!("{} trial={} seed={}", r.suite, f.trial, f.seed),
                    f.message.clone(),
                ];
                write_text(
                    &dir.join(format!("{}-{}.pts", r.suite, f.trial)),
                    &format_points(&ps, &header),
                )?;
            }
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut doc = ReportDocument::new("verify");
    doc.suites = Some(results);
    write_report(json, &doc)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{failed} suite(s) failed")))
    }
}

fn cmd_bench(sizes: &[usize], k: usize, seed: u64, brute_limit: usize, json: Option<&Path>) -> CliResult<()> {
    let rows = bench(sizes, k, seed, brute_limit)?;
    print!("{}", format_table(&rows));
    let mut doc = ReportDocument::new("bench");
    doc.bench = Some(rows);
    write_report(json, &doc)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            m,
            seed,
            range,
            out,
        } => cmd_gen(kind, n, m, seed, range, out.as_deref()),
        Command::Count {
            file,
            k,
            algorithm,
            json,
        } => cmd_count(&file, &k, algorithm, json.as_deref()),
        Command::Assign { file, json } => cmd_assign(&file, json.as_deref()),
        Command::Pipeline { file, json } => cmd_pipeline(&file, json.as_deref()),
        Command::Verify {
            suite,
            trials,
            n,
            seed,
            json,
            artifacts,
            replay,
        } => cmd_verify(
            &suite,
            trials,
            n,
            seed,
            json.as_deref(),
            artifacts.as_deref(),
            replay.as_deref(),
        ),
        Command::Bench {
            sizes,
            k,
            seed,
            brute_limit,
            json,
        } => cmd_bench(&sizes, k, seed, brute_limit, json.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match with_threads(threads, || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
