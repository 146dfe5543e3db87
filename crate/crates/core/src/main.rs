use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use colorex::budget::SearchBudget;
use colorex::census::trend_report;
use colorex::error::{Error, Result};
use colorex::extremal::{erdos_stone_value, ex_exact, monotone_ex};
use colorex::io;
use colorex::property::{
    expand_bi_family, is_good, member, member_all_selections_oracle, DEFAULT_SELECTION_CAP,
};
use colorex::regdiag::{
    build_goodified, check_regularity, detect_exceptional, fit_delta, BoundGraph, DeltaFunction,
    ProbMode, RegularityReport, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP,
};
use colorex::verify::run_suite;

/// Exact extremal, counting and regularity diagnostics for k-uniform
/// colored hypergraphs.
#[derive(Parser)]
#[command(name = "colorex", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Exact extremal product ex(n, P) over choice hypergraphs.
    Ex {
        /// Forbidden family (JSON).
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        n: usize,
        /// Disable symmetry pruning (slower, same result).
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Specialized solver for monotone (BI) families.
    MonotoneEx {
        /// BI family (JSON).
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// The limiting value min over members of 1 - 1/(chi(F) - 1).
    ErdosStone {
        #[arg(long)]
        family: PathBuf,
    },
    /// Exact number of labeled graphs on [n] avoiding the family.
    Count {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Count vs extremal product, row by row over a range of n.
    Trend {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Does a colored hypergraph avoid every family member?
    Member {
        #[arg(long)]
        family: PathBuf,
        /// Colored hypergraph (JSON).
        #[arg(long)]
        graph: PathBuf,
    },
    /// Is every selection of a choice hypergraph in the property?
    Good {
        #[arg(long)]
        family: PathBuf,
        /// Choice hypergraph (JSON).
        #[arg(long)]
        graph: PathBuf,
        /// Double-check against full selection enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Expand a BI family into the equivalent black/white family.
    ExpandBi {
        #[arg(long)]
        family: PathBuf,
    },
    /// Verify (eps, h)-regularity of a bound graph under a slack function.
    Regcheck {
        /// Bound graph (JSON).
        #[arg(long)]
        graph: PathBuf,
        /// Slack function (JSON); omit for the zero function.
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Sample count per complex (sampled mode).
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// RNG seed; required with --mode sampled.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Fit the smallest workable uniform slack per total color.
    FitDelta {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1)]
        h: usize,
    },
    /// Classify exceptional total colors and their edge probabilities.
    Exceptional {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long)]
        eps: f64,
    },
    /// The goodified recoloring of size-k edges.
    Goodify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        delta: Option<PathBuf>,
        #[arg(long)]
        eps: f64,
    },
    /// Run one of the cross-check suites.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("{}: invalid JSON: {e}", path.display())))
}

fn read_delta(g: &BoundGraph, path: &Option<PathBuf>) -> Result<DeltaFunction> {
    match path {
        None => Ok(DeltaFunction::zero()),
        Some(p) => io::delta_from_json(g, &read_json(p)?),
    }
}

fn print_regularity(report: &RegularityReport) {
    println!("eps={} h={}", report.eps, report.h);
    for c in &report.index_checks {
        println!(
            "index {{{}}}: avgDelta={:.9} bound={:.9} {}",
            c.index.label(),
            c.average_delta,
            c.bound,
            if c.pass { "ok" } else { "VIOLATED" }
        );
    }
    for c in &report.complex_checks {
        let p = &c.probability;
        let exact = p
            .exact
            .map(|q| format!(" ={}/{}", q.numer(), q.denom()))
            .unwrap_or_default();
        println!(
            "complex [{}]: p={:.9}{exact} radius={:.9} interval=[{:.9},{:.9}]{} {}",
            c.description,
            p.value,
            p.radius,
            c.lower,
            c.upper,
            if c.undefined_density { " (undefined density)" } else { "" },
            if c.pass { "ok" } else { "VIOLATED" }
        );
    }
    if !report.complete {
        println!("note: complex family truncated by budget; partial report");
    }
    println!("verdict {}", if report.verdict { "PASS" } else { "FAIL" });
}

fn run(cli: Cli) -> Result<i32> {
    let budget = SearchBudget::from_env()?;
    match cli.command {
        Command::Ex { family, n, no_symmetry } => {
            let fam = io::family_from_json(&read_json(&family)?)?;
            let b = if no_symmetry { budget.without_symmetry() } else { budget };
            let res = ex_exact(n, &fam, &b)?;
            println!("n={} k={} binom={}", res.n, res.k, res.binom);
            println!("bestProduct={}", res.best_product);
            match res.ex_fraction() {
                Some((num, den)) => println!("ex={num}/{den}"),
                None => println!("ex=log2({})/{}", res.best_product, res.binom),
            }
            println!("exDecimal~{:.9}", res.ex_decimal());
            println!("exact={} nodes={}", res.exact, res.nodes);
            println!("witness={}", io::choice_to_json(&res.witness));
        }
        Command::MonotoneEx { family, n } => {
            let fam = io::bi_family_from_json(&read_json(&family)?)?;
            let res = monotone_ex(n, &fam, &budget)?;
            println!("n={} k={} binom={} ell={}", res.n, res.k, res.binom, res.ell);
            println!("maxBlack={}", res.max_black);
            println!("bestProduct={}", res.best_product);
            println!("exValue~{:.9}", res.ex_decimal());
            println!("exact={} nodes={}", res.exact, res.nodes);
            println!("bwWitness={}", io::colored_to_json(&res.bw_witness));
            println!("choiceWitness={}", io::choice_to_json(&res.choice_witness));
        }
        Command::ErdosStone { family } => {
            let fam = io::bi_family_from_json(&read_json(&family)?)?;
            let v = erdos_stone_value(&fam)?;
            println!("erdosStone={}/{}", v.numer(), v.denom());
            println!("decimal~{:.9}", *v.numer() as f64 / *v.denom() as f64);
        }
        Command::Count { family, n } => {
            let fam = io::family_from_json(&read_json(&family)?)?;
            let count = colorex::census::count_property(n, &fam, &budget)?;
            println!("n={n} count={count}");
        }
        Command::Trend { family, from, to } => {
            let fam = io::family_from_json(&read_json(&family)?)?;
            let rows = trend_report(&fam, from, to, &budget)?;
            println!("n binom count bestProduct logDensity exDecimal gap");
            for row in rows {
                println!(
                    "{} {} {} {} {:.9} {:.9} {:.9}",
                    row.n,
                    row.binom,
                    row.count,
                    row.extremal.best_product,
                    row.log_density(),
                    row.ex_decimal(),
                    row.gap()
                );
            }
        }
        Command::Member { family, graph } => {
            let fam = io::family_from_json(&read_json(&family)?)?;
            let g = io::colored_from_json(&read_json(&graph)?)?;
            println!("member={}", member(&g, &fam)?);
        }
        Command::Good { family, graph, oracle } => {
            let fam = io::family_from_json(&read_json(&family)?)?;
            let g = io::choice_from_json(&read_json(&graph)?)?;
            let (good, witness) = is_good(&g, &fam)?;
            println!("good={good}");
            if let Some(w) = witness {
                println!(
                    "badSelectionMember={} embedding={:?}",
                    w.member_index,
                    w.embedding.images()
                );
            }
            if oracle {
                let check = member_all_selections_oracle(&g, &fam, DEFAULT_SELECTION_CAP)?;
                if check != good {
                    return Err(Error::Inconsistency(
                        "goodness disagrees with selection enumeration".to_string(),
                    ));
                }
                println!("oracle=agree");
            }
        }
        Command::ExpandBi { family } => {
            let fam = io::bi_family_from_json(&read_json(&family)?)?;
            let expanded = expand_bi_family(&fam)?;
            println!("{}", io::family_to_json(&expanded));
        }
        Command::Regcheck { graph, delta, eps, h, mode, samples, seed } => {
            let g = io::bound_graph_from_json(&read_json(&graph)?)?;
            let d = read_delta(&g, &delta)?;
            let mode = match mode {
                Mode::Exact => ProbMode::Exact,
                Mode::Sampled => ProbMode::Sampled {
                    count: samples,
                    seed: seed.ok_or_else(|| {
                        Error::input("--seed is required with --mode sampled")
                    })?,
                },
            };
            let report = check_regularity(
                &g,
                &d,
                eps,
                h,
                mode,
                None,
                DEFAULT_COMPLEX_CAP,
                DEFAULT_EXACT_MAP_CAP,
            )?;
            print_regularity(&report);
            if !report.verdict {
                return Ok(1);
            }
        }
        Command::FitDelta { graph, eps, h } => {
            let g = io::bound_graph_from_json(&read_json(&graph)?)?;
            let (delta, report) =
                fit_delta(&g, eps, h, DEFAULT_COMPLEX_CAP, DEFAULT_EXACT_MAP_CAP)?;
            println!("delta={}", io::delta_to_json(&g, &delta));
            print_regularity(&report);
            if !report.verdict {
                return Ok(1);
            }
        }
        Command::Exceptional { graph, delta, eps } => {
            let g = io::bound_graph_from_json(&read_json(&graph)?)?;
            let d = read_delta(&g, &delta)?;
            let report = detect_exceptional(&g, &d, eps)?;
            println!("eps={} k={} bound={:.9}", report.eps, report.k, report.bound);
            for ip in &report.per_index {
                println!(
                    "index {{{}}}: exceptional={}/{} probability={:.9}",
                    ip.index.label(),
                    ip.exceptional_edges,
                    ip.total_edges,
                    ip.exceptional_edges as f64 / ip.total_edges as f64
                );
            }
            for tc in &report.exceptional {
                println!("exceptionalTotal={}", io::total_color_to_json(&g, tc));
            }
        }
        Command::Goodify { graph, delta, eps } => {
            let g = io::bound_graph_from_json(&read_json(&graph)?)?;
            let d = read_delta(&g, &delta)?;
            let report = detect_exceptional(&g, &d, eps)?;
            let map = build_goodified(&g, &report)?;
            for ((index, coords), set) in &map.entries {
                let key: Vec<String> = coords.iter().map(|c| (c + 1).to_string()).collect();
                let labels: Vec<&str> =
                    set.iter().map(|&c| g.color_set(*index)[c as usize].as_str()).collect();
                println!("{{{}}} {}: {:?}", index.label(), key.join("|"), labels);
            }
        }
        Command::Verify { suite } => {
            let lines = run_suite(&suite, &budget)?;
            for line in &lines {
                println!("{line}");
            }
            println!("suite {suite}: {} checks passed", lines.len());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
