//! Command-line interface for circulant stability analysis.

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use circulant_stability::harness::verify::{verify_theorem, TheoremId, VerificationReport};
use circulant_stability::harness::{
    classify, enumerate, ClassificationRecord, ClassifyOptions, ScanOptions,
};
use circulant_stability::{CirculantGraph, Error};

#[derive(Parser)]
#[command(
    name = "circstab",
    about = "Stability of circulant graphs via exact automorphism groups of their canonical double covers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Modulus n of Z_n (optional when --set uses the Zn:{...} form).
    #[arg(long)]
    n: Option<u64>,
    /// Connection set: comma-separated integers ("2,3,6") or "Z12:{2,3,6}".
    /// Inverse closure is applied automatically.
    #[arg(long)]
    set: String,
}

impl GraphArgs {
    fn parse_graph(&self) -> Result<CirculantGraph, Error> {
        let trimmed = self.set.trim();
        if trimmed.starts_with('Z') || trimmed.starts_with('z') {
            let graph: CirculantGraph = trimmed.parse()?;
            if let Some(n) = self.n {
                if n != graph.n() {
                    return Err(Error::Parse(format!(
                        "--n {n} disagrees with modulus {} in --set",
                        graph.n()
                    )));
                }
            }
            Ok(graph)
        } else {
            let n = self
                .n
                .ok_or_else(|| Error::Parse("--n is required with a bare element list".into()))?;
            let raw = circulant_stability::circulant::parse_element_list(trimmed)?;
            CirculantGraph::new(n, &raw)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single graph and print its record.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        /// Emit JSON (the default).
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Emit a CSV header plus one row.
        #[arg(long)]
        csv: bool,
        /// Per-graph automorphism search time cap in seconds.
        #[arg(long, default_value_t = 30)]
        time_cap: u64,
    },
    /// Classify every circulant graph in a range, one record per line.
    Enumerate {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        valency: u32,
        /// Collapse sets equivalent under multiplication by a unit
        /// (a quotient of the full enumeration).
        #[arg(long)]
        dedup_multiplier: bool,
        /// Emit CSV instead of JSON lines.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 30)]
        time_cap: u64,
    },
    /// Re-verify a classification theorem over a range.
    ///
    /// Exit codes: 0 confirmed, 1 discrepancy found, 2 invalid input,
    /// 3 inconclusive (timeouts).
    Verify {
        /// One of: val3 val4 val5 val6 val7 lessthan8 odd_order val5orbits
        /// val4_cover_normal odd_valency_nonnormal small cycwr.
        #[arg(long)]
        theorem: String,
        /// Largest order to scan (for cycwr: largest k).
        #[arg(long)]
        n_max: u64,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 30)]
        time_cap: u64,
    },
    /// Human-readable witness dump for one graph.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 30)]
        time_cap: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze {
            graph,
            csv,
            time_cap,
            ..
        } => {
            let x = graph.parse_graph()?;
            let record = classify(&x, &exact_opts(time_cap));
            if csv {
                println!("{}", ClassificationRecord::CSV_HEADER);
                println!("{}", record.to_csv_row());
            } else {
                println!("{}", record.to_json_string());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n_min,
            n_max,
            valency,
            dedup_multiplier,
            csv,
            time_cap,
        } => {
            if n_min > n_max {
                return Err(Error::InvalidParameter("--n-min exceeds --n-max".into()));
            }
            if csv {
                println!("{}", ClassificationRecord::CSV_HEADER);
            }
            let opts = exact_opts(time_cap);
            for n in n_min..=n_max {
                let mut graphs = enumerate(n, valency);
                if dedup_multiplier {
                    graphs.retain(circulant_stability::harness::is_multiplier_minimal);
                }
                for x in graphs {
                    let record = classify(&x, &opts);
                    if csv {
                        println!("{}", record.to_csv_row());
                    } else {
                        println!("{}", record.to_json_string());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            theorem,
            n_max,
            jobs,
            time_cap,
        } => {
            let id: TheoremId = theorem.parse()?;
            let opts = ScanOptions {
                jobs,
                time_cap: Some(Duration::from_secs(time_cap)),
                dedup_multiplier: false,
                exact_trivial: false,
            };
            let report = verify_theorem(id, n_max, &opts);
            print_report(&report);
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        Command::Certify { graph, time_cap } => {
            let x = graph.parse_graph()?;
            certify(&x, time_cap);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exact_opts(time_cap: u64) -> ClassifyOptions {
    ClassifyOptions {
        exact_trivial: true,
        time_cap: Some(Duration::from_secs(time_cap)),
    }
}

fn print_report(report: &VerificationReport) {
    println!("{}", report.to_json());
    eprintln!(
        "theorem {}: {} graphs, {} discrepancies, {} timeouts, {} ms",
        report.theorem,
        report.graphs_examined,
        report.discrepancies.len(),
        report.timeouts,
        report.elapsed_ms
    );
}

fn certify(x: &CirculantGraph, time_cap: u64) {
    let record = classify(x, &exact_opts(time_cap));
    let n = x.n();
    println!("graph: {x}");
    println!("valency: {}", x.valency());
    println!(
        "connected: {}, bipartite: {}, twin-free: {}",
        record.connected, record.bipartite, record.twin_free
    );
    if record.timed_out {
        println!("stability: timed out after {time_cap} s");
        return;
    }
    let stable = record.stable.unwrap();
    println!(
        "|Aut X| = {}, |Aut BX| = {} -> {}{}",
        record.aut_x_order.as_ref().unwrap(),
        record.aut_bx_order.as_ref().unwrap(),
        if stable { "stable" } else { "unstable" },
        if record.nontrivially_unstable() == Some(true) {
            " (nontrivially)"
        } else if !stable {
            " (trivially)"
        } else {
            ""
        }
    );
    if let Some(w) = &record.witness {
        println!("instability witness on BX, cycle notation over vertices");
        println!("  (v,0) = v and (v,1) = v+{n}; it fixes 0 and moves {n}:");
        println!("  {w}");
    } else if !stable {
        println!(
            "instability is structural (disconnected graph); no stabilizer witness moves (0,1)"
        );
    }
    if record.wilson.is_empty() {
        println!("wilson witnesses: none");
    } else {
        println!("wilson witnesses:");
        for w in &record.wilson {
            println!("  {}", w.describe(n));
        }
    }
    match &record.all_families {
        fams if fams.is_empty() => println!("family: none"),
        fams => {
            for (i, f) in fams.iter().enumerate() {
                let tag = if i == 0 { "family" } else { "also in" };
                println!("{tag}: {}", f.describe());
            }
        }
    }
    if let Some(orbits) = record.edge_orbits_bx {
        println!("edge orbits of Aut BX: {orbits}");
    }
    if let Some(normal) = record.bx_normal {
        println!("BX normal Cayley graph: {normal}");
    }
}
