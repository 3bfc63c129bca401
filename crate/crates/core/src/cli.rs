//! Command-line front end.
//!
//! Exit status: 0 when everything passed, 1 when a verification failed, 2 on
//! bad flags or input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::metrics::{count_table, depth_stats, emit_csv, figure_series, format_comparison, format_depths};
use crate::render::{render_ascii, render_svg, RenderOptions};
use crate::routing::{route, PairList, RoutingPlan};
use crate::topology::{build_network, check_ports, reverse_network, DesignKind, Network, SwitchStates};
use crate::verification::{
    verify_design_capped, verify_minimality, Mode, VerificationReport, DEFAULT_EXHAUSTIVE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pegress", version, about = "Planar paired-egress switching networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a network and write it as JSON.
    Generate {
        #[arg(long)]
        design: DesignKind,
        #[arg(long)]
        ports: usize,
        /// Mirror the network for entangled-pair distribution.
        #[arg(long)]
        reverse: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route a pair list and print the switch states.
    Route {
        #[arg(long)]
        design: DesignKind,
        #[arg(long)]
        ports: usize,
        /// Pairs such as `0-3,1-2`.
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the routed network.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Route every demand (or a random sample) and check the outputs pair up.
    Verify(VerifyArgs),
    /// Check that removing any single switch breaks the worst-case demand.
    Minimality {
        #[arg(long)]
        design: DesignKind,
        #[arg(long)]
        ports: usize,
    },
    /// Print resource and depth tables.
    Metrics {
        /// A port count or an even range `A..B`.
        #[arg(long)]
        ports: String,
        /// Write the figure series as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Add depth extremes measured over every demand (N up to 12).
        #[arg(long)]
        empirical: bool,
    },
    /// Draw a network from its JSON.
    Render {
        #[arg(long)]
        net: PathBuf,
        /// Routing plan or bare state map.
        #[arg(long)]
        states: Option<PathBuf>,
        #[arg(long, conflicts_with = "ascii", required_unless_present = "ascii")]
        svg: Option<PathBuf>,
        #[arg(long)]
        ascii: bool,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// A design name or `all`.
    #[arg(long)]
    design: String,
    /// A port count or an even range `A..B`.
    #[arg(long)]
    ports: String,
    /// Check every pair list (the default).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Check this many random pair lists instead.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "samples")]
    seed: u64,
    /// Largest port count allowed in exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    exhaustive_cap: usize,
}

/// Failure with its exit status.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

/// `N` or `A..B` (both even, inclusive).
pub fn parse_ports(text: &str) -> Result<Vec<usize>, Error> {
    let num = |s: &str| {
        s.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("`{s}` is not a port count")))
    };
    let list = match text.split_once("..") {
        None => vec![num(text)?],
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b)?);
            check_ports(a)?;
            check_ports(b)?;
            if a > b {
                return Err(Error::InvalidInput(format!("empty range {a}..{b}")));
            }
            (a..=b).step_by(2).collect()
        }
    };
    for &n in &list {
        check_ports(n)?;
    }
    Ok(list)
}

fn parse_designs(text: &str) -> Result<Vec<DesignKind>, Error> {
    if text.trim().eq_ignore_ascii_case("all") {
        Ok(DesignKind::ALL.to_vec())
    } else {
        Ok(vec![text.parse()?])
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            say(&format!("{text}\n"));
            Ok(())
        }
    }
}

/// Writes to stdout. A closed pipe (`pegress ... | head`) ends the process
/// quietly instead of panicking.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(EXIT_OK);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(EXIT_USAGE);
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn load_states(path: &Path, net: &Network) -> Result<SwitchStates, Fail> {
    let text = read_file(path)?;
    // untagged enums cannot parse the integer map keys, so try each shape
    let states = match RoutingPlan::from_json(&text) {
        Ok(plan) => plan.states,
        Err(_) => serde_json::from_str::<SwitchStates>(&text)
            .map_err(|e| usage(format!("{}: not a routing plan or state map: {e}", path.display())))?,
    };
    if states.len() != net.len() {
        return Err(Fail(
            EXIT_USAGE,
            Error::IncompleteStates(format!("{} states for {} switches", states.len(), net.len())).to_string(),
        ));
    }
    Ok(states)
}

fn execute(cmd: Command) -> Result<i32, Fail> {
    match cmd {
        Command::Generate { design, ports, reverse, out } => {
            let mut net = build_network(design, ports)?;
            if reverse {
                net = reverse_network(&net);
            }
            emit(&out, &net.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Route { design, ports, pairs, out, svg } => {
            check_ports(ports)?;
            let demand = PairList::parse(&pairs, ports)?;
            let plan = route(design, ports, &demand)?;
            emit(&out, &plan.to_json())?;
            if let Some(path) = svg {
                let net = build_network(design, ports)?;
                write_file(&path, &render_svg(&net, Some(&plan.states), &RenderOptions::default()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let designs = parse_designs(&args.design)?;
            let ports = parse_ports(&args.ports)?;
            let mode = match args.samples {
                Some(samples) => Mode::Random { samples, seed: args.seed },
                None => Mode::Exhaustive,
            };
            let mut reports: Vec<VerificationReport> = Vec::new();
            for &design in &designs {
                for &n in &ports {
                    let r = verify_design_capped(design, n, &mode, args.exhaustive_cap)?;
                    eprintln!(
                        "{design} N={n}: {} demands, {} failures",
                        r.demands_checked,
                        r.failures.len()
                    );
                    reports.push(r);
                }
            }
            say(&format!("{}\n", to_json(&reports)));
            Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Minimality { design, ports } => {
            let report = verify_minimality(design, ports)?;
            say(&format!("{}\n", to_json(&report)));
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Metrics { ports, csv, empirical } => {
            let ports = parse_ports(&ports)?;
            let table = count_table(&ports)?;
            let deep: Vec<usize> = ports.iter().copied().filter(|&n| n >= 4).collect();
            let mut stats = Vec::new();
            for &n in &deep {
                for design in DesignKind::ALL {
                    let report = if empirical && n <= DEFAULT_EXHAUSTIVE_CAP {
                        Some(verify_design_capped(design, n, &Mode::Exhaustive, DEFAULT_EXHAUSTIVE_CAP)?)
                    } else {
                        None
                    };
                    stats.push(depth_stats(design, n, report.as_ref())?);
                }
            }
            say(&format!("{}\n{}", format_comparison(&table), format_depths(&stats)));
            if let Some(path) = csv {
                write_file(&path, &emit_csv(&figure_series(&deep)?))?;
            }
            Ok(EXIT_OK)
        }
        Command::Render { net, states, svg, ascii } => {
            let network = Network::from_json(&read_file(&net)?)?;
            let states = match states {
                Some(path) => Some(load_states(&path, &network)?),
                None => None,
            };
            if ascii {
                say(&render_ascii(&network, states.as_ref()));
            }
            if let Some(path) = svg {
                write_file(&path, &render_svg(&network, states.as_ref(), &RenderOptions::default()))?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
