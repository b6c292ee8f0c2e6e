//! Command-line driver for the coherent configuration toolkit.
//!
//! Exit codes: 0 positive outcome, 1 negative but valid outcome, 2 error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use cartan_core::analysis::{
    base_number, criterion_report_with, lie_bound_check, BaseNumber, ReportOptions, DEFAULT_BASE_CAP,
};
use cartan_core::cartan::{cartan_scheme, Family, Variant};
use cartan_core::graph::GraphJson;
use cartan_core::perm::FiniteGroup;
use cartan_core::recognition::{aut_group, iso_graphs, recognize_cartan, IsoBudget, IsoOutcome};
use cartan_core::wl::{m_extension, point_extension, wl_closure, DEFAULT_EXTENSION_BUDGET};
use cartan_core::{verify_coherence, ColoredGraph, CoherentConfiguration};

#[derive(Parser)]
#[command(name = "cartan", version, about = "Coherent configurations, Weisfeiler-Leman closure and Cartan schemes")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SearchBudget {
    /// Points individualized along one branch of the isomorphism search.
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
    /// Largest number of points accepted by the isomorphism search.
    #[arg(long, default_value_t = 120)]
    max_points: usize,
}

impl From<SearchBudget> for IsoBudget {
    fn from(b: SearchBudget) -> Self {
        IsoBudget { max_depth: b.max_depth, max_points: b.max_points }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the Cartan scheme of a rank-one group over F_q.
    BuildCartan {
        #[arg(long)]
        q: u32,
        /// sl2, psl2 or pgl2.
        #[arg(long, default_value = "pgl2")]
        variant: Variant,
    },
    /// Coherent closure of a colored graph.
    WlClose {
        input: PathBuf,
        /// Include the refinement trace.
        #[arg(long)]
        trace: bool,
    },
    /// Closure with the given points individualized.
    Extend {
        input: PathBuf,
        /// Comma-separated point list.
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
    },
    /// Structural report: indistinguishing number, S_max, connectivity, base number.
    Analyze {
        input: PathBuf,
        /// Cap for the base number search; 0 skips it.
        #[arg(long, default_value_t = 3)]
        base_cap: usize,
        /// Skip the 1-regularity test of every one-point extension.
        #[arg(long)]
        no_extensions: bool,
        /// Also test that the pairs in 0 s_max are bases.
        #[arg(long)]
        pair_bases: bool,
    },
    /// Base number, searched up to a cap. Exit 1 when it exceeds the cap.
    BaseNumber {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BASE_CAP)]
        cap: usize,
    },
    /// Decide whether a colored graph is a Cartan scheme. Exit 1 on rejection.
    Recognize {
        input: PathBuf,
        #[command(flatten)]
        budget: SearchBudget,
    },
    /// Isomorphisms between two colored graphs matching colors by index. Exit 1 when none exist.
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// List every isomorphism instead of the first.
        #[arg(long)]
        all: bool,
        /// Color map from the first palette to the second, comma-separated (default: identity).
        #[arg(long, value_delimiter = ',')]
        psi: Option<Vec<u32>>,
        #[command(flatten)]
        budget: SearchBudget,
    },
    /// Automorphism group of the closure.
    Aut {
        input: PathBuf,
        /// List every element.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        budget: SearchBudget,
    },
    /// Evaluate the Lie-type inequality. Exit 1 when it fails.
    LieBound {
        /// Family name such as A, 2A, B, D, 3D4, E8, 2F4.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        q: u64,
    },
    /// The m-dimensional extension (m = 2 only).
    MExtend {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Largest number of points allowed.
        #[arg(long, default_value_t = DEFAULT_EXTENSION_BUDGET)]
        budget: usize,
    },
}

/// Reads a graph, a configuration, or a `build-cartan` bundle.
fn read_graph(path: &Path) -> Result<ColoredGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(s) = v.get_mut("scheme") {
        v = s.take();
    }
    let j: GraphJson = serde_json::from_value(v).with_context(|| format!("{} is not a colored graph", path.display()))?;
    Ok(ColoredGraph::try_from(j)?)
}

fn read_config(path: &Path) -> Result<CoherentConfiguration> {
    let g = read_graph(path)?;
    verify_coherence(&g).map_err(|v| anyhow::anyhow!("{} is not coherent: {v}", path.display()))
}

struct Output {
    value: Value,
    code: u8,
}

fn out<T: Serialize>(value: &T, code: u8) -> Result<Output> {
    // Value keeps object keys sorted
    Ok(Output { value: serde_json::to_value(value)?, code })
}

fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::BuildCartan { q, variant } => out(&cartan_scheme(q, variant)?.to_json(), 0),
        Command::WlClose { input, trace } => {
            let (x, t) = wl_closure(&read_graph(&input)?);
            let mut v = serde_json::to_value(x.to_json())?;
            if trace {
                v["trace"] = serde_json::to_value(t)?;
            }
            out(&v, 0)
        }
        Command::Extend { input, points } => {
            let x = read_config(&input)?;
            out(&point_extension(&x, &points)?.to_json(), 0)
        }
        Command::Analyze { input, base_cap, no_extensions, pair_bases } => {
            let x = read_config(&input)?;
            let opts = ReportOptions {
                base_cap: (base_cap > 0).then_some(base_cap),
                extensions: !no_extensions,
                pair_bases,
            };
            out(&criterion_report_with(&x, &opts)?, 0)
        }
        Command::BaseNumber { input, cap } => {
            let b = base_number(&read_config(&input)?, cap)?;
            let code = u8::from(matches!(b, BaseNumber::ExceedsCap { .. }));
            out(&b, code)
        }
        Command::Recognize { input, budget } => {
            let report = recognize_cartan(&read_graph(&input)?, &budget.into());
            let code = u8::from(!report.accepted);
            out(&report, code)
        }
        Command::Iso { first, second, all, psi, budget } => {
            let d = read_graph(&first)?;
            let d2 = read_graph(&second)?;
            let psi = psi.unwrap_or_else(|| (0..d.palette_size() as u32).collect());
            match iso_graphs(&d, &d2, &psi, &budget.into())? {
                IsoOutcome::NoAlgebraicIsomorphism { round } => out(
                    &serde_json::json!({"isomorphic": false, "reason": "no algebraic isomorphism", "round": round}),
                    1,
                ),
                IsoOutcome::Isomorphisms(found) if found.is_empty() => {
                    out(&serde_json::json!({"isomorphic": false, "reason": "no isomorphism", "count": 0}), 1)
                }
                IsoOutcome::Isomorphisms(found) => {
                    let listed = if all { &found[..] } else { &found[..1] };
                    out(&serde_json::json!({"isomorphic": true, "count": found.len(), "isomorphisms": listed}), 0)
                }
            }
        }
        Command::Aut { input, all, budget } => {
            let x = read_config(&input)?;
            let g = aut_group(&x, &budget.into())?;
            let mut v = serde_json::to_value(g.to_json())?;
            v["order"] = g.order().into();
            v["transitive"] = g.is_transitive().into();
            if all {
                v["elements"] = serde_json::to_value(g.elements())?;
            }
            out(&v, 0)
        }
        Command::LieBound { family, l, q } => {
            let r = lie_bound_check(family, l, q)?;
            let code = u8::from(!r.holds);
            out(&r, code)
        }
        Command::MExtend { input, m, budget } => {
            let x = read_config(&input)?;
            out(&m_extension(&x, m, budget)?.to_json(), 0)
        }
    }
}

fn emit(result: &Output, path: Option<&Path>, pretty: bool) -> Result<()> {
    let mut text = if pretty { serde_json::to_string_pretty(&result.value)? } else { serde_json::to_string(&result.value)? };
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<u8> {
        if let Some(t) = cli.threads {
            if t == 0 {
                bail!("--threads must be positive");
            }
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
        }
        let res = run(cli.command)?;
        emit(&res, cli.out.as_deref(), cli.pretty)?;
        Ok(res.code)
    })();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
