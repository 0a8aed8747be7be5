use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use labelspace::accommodating::{omega, singleton_condition};
use labelspace::{simplicity_verdict, Analysis, Caps, LabelledGraph};
use labelspace_cli::oracle::{self, OracleConfig};
use labelspace_cli::report::{build_report, render_family, render_text, replay_witness, Report, Witness};

#[derive(Parser)]
#[command(name = "labelspace", about = "Exact simplicity analysis of labelled graphs")]
struct Cli {
    /// Cap on search and automaton states.
    #[arg(long, global = true)]
    cap_states: Option<usize>,
    /// Cap on materialized family members.
    #[arg(long, global = true)]
    cap_family: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    /// Weak left-resolving over the chosen family.
    Wlr,
    Cofinal,
    StrongCofinal,
    Disagreeable,
    /// Print the smallest accommodating family.
    Accommodating,
    /// Print the class partition at a level (default: the stable one).
    Classes,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyChoice {
    /// Unions of stable generalized vertices.
    Classes,
    /// The smallest accommodating family.
    Smallest,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis with a simplicity verdict.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Verify a previously emitted witness file instead of reporting.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Decide a single property.
    Check {
        #[arg(value_enum)]
        property: Property,
        file: PathBuf,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, value_enum, default_value_t = FamilyChoice::Classes)]
        family: FamilyChoice,
    },
    /// Cross-check the deciders against independent references on random
    /// graphs.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: u32,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_labels: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

fn caps_from(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(n) = cli.cap_states {
        caps.max_states = n;
        caps.max_pairs = n;
    }
    if let Some(n) = cli.cap_family {
        caps.max_family = n;
    }
    caps
}

fn load_analysis(file: &Path, caps: Caps) -> anyhow::Result<Analysis> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let graph = LabelledGraph::parse(&text)?;
    Ok(Analysis::new(graph, caps)?)
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    let caps = caps_from(&cli);
    match &cli.cmd {
        Cmd::Analyze {
            file,
            format,
            replay,
        } => {
            let analysis = load_analysis(file, caps)?;
            if let Some(witness_file) = replay {
                let text = std::fs::read_to_string(witness_file)
                    .with_context(|| format!("reading {}", witness_file.display()))?;
                let witnesses: Vec<Witness> =
                    if let Ok(single) = serde_json::from_str::<Witness>(&text) {
                        vec![single]
                    } else {
                        serde_json::from_str::<Report>(&text)
                            .context("witness file holds neither a witness nor a report")?
                            .witnesses
                    };
                anyhow::ensure!(!witnesses.is_empty(), "no witnesses to replay");
                for w in &witnesses {
                    replay_witness(&analysis, w)?;
                }
                println!("replayed {} witness(es): all verified", witnesses.len());
                return Ok(0);
            }
            let simplicity = simplicity_verdict(&analysis)?;
            let report = build_report(&analysis, &simplicity);
            match format {
                Format::Text => print!("{}", render_text(&report)),
                Format::Structured => {
                    println!("{}", serde_json::to_string_pretty(&report)?)
                }
            }
            Ok(simplicity.verdict.exit_code() as u8)
        }
        Cmd::Check {
            property,
            file,
            level,
            family,
        } => {
            let analysis = load_analysis(file, caps)?;
            let g = analysis.graph();
            let holds = match property {
                Property::Wlr => {
                    let verdict = match family {
                        FamilyChoice::Classes => analysis.wlr_class_family()?,
                        FamilyChoice::Smallest => analysis.wlr_smallest_family()?,
                    };
                    match &verdict {
                        labelspace::wlr::WlrVerdict::Holds => {
                            println!("weakly left-resolving: yes");
                            true
                        }
                        labelspace::wlr::WlrVerdict::Fails { a, b, word } => {
                            println!(
                                "weakly left-resolving: no ({} and {} merge along {})",
                                g.format_set(a),
                                g.format_set(b),
                                g.format_word(word)
                            );
                            false
                        }
                    }
                }
                Property::Cofinal => {
                    let v = analysis.cofinality()?;
                    println!("cofinal: {}", if v.holds() { "yes" } else { "no" });
                    v.holds()
                }
                Property::StrongCofinal => {
                    let v = analysis.strong_cofinality()?;
                    println!("strongly cofinal: {}", if v.holds() { "yes" } else { "no" });
                    v.holds()
                }
                Property::Disagreeable => {
                    let v = analysis.disagreeable()?;
                    println!("disagreeable: {}", if v.holds() { "yes" } else { "no" });
                    v.holds()
                }
                Property::Accommodating => {
                    let family = analysis.smallest_family()?;
                    print!("{}", render_family(g, &family));
                    println!(
                        "all singletons present: {}",
                        if singleton_condition(g, &family) {
                            "yes"
                        } else {
                            "no"
                        }
                    );
                    true
                }
                Property::Classes => {
                    let (partition, shown_level) = match level {
                        Some(l) => (omega(g, *l, analysis.caps())?, *l),
                        None => (analysis.stable_partition().clone(), analysis.stable_level()),
                    };
                    let blocks: Vec<String> = partition
                        .blocks()
                        .iter()
                        .map(|b| g.format_set(b))
                        .collect();
                    println!("level {shown_level}: {}", blocks.join(" "));
                    if level.is_none() {
                        println!("stabilizes at level {}", analysis.stable_level());
                    }
                    true
                }
            };
            Ok(if holds { 0 } else { 2 })
        }
        Cmd::Oracle {
            seed,
            cases,
            max_vertices,
            max_labels,
            depth,
        } => {
            let outcome = oracle::run(&OracleConfig {
                seed: *seed,
                cases: *cases,
                max_vertices: *max_vertices,
                max_labels: *max_labels,
                depth: *depth,
            });
            print!("{}", oracle::render(&outcome));
            Ok(if outcome.all_matched() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
