//! Command-line front end for `fmsched`.
//!
//! Every subcommand prints a `key=value` report on standard output and
//! diagnostics on standard error. Exit codes: 0 success, 1 infeasible or no
//! result, 2 usage or input errors, 3 internal consistency failure.

mod dot;
mod gantt;

pub use dot::{graph_dot, net_dot};
pub use gantt::emit_gantt;

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use fmsched::brg::{build_brg, BasisPartition};
use fmsched::petri::{reachability_graph, DEFAULT_STATE_CAP};
use fmsched::search::{check_schedule, oracle_optimal, BeamParams, Planner};
use fmsched::timing::{parse_schedule_csv, write_schedule_csv, ScheduleRow};
use fmsched::{parse_instance, PlaceTimedNet};

#[derive(Debug, Parser)]
#[command(
    name = "fmsched",
    version,
    about = "Petri-net scheduling for flexible manufacturing systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate an instance.
    Validate(InstanceArg),
    /// Report the place-timed net, optionally as DOT.
    Net {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Enumerate the full reachability graph.
    Rg {
        #[command(flatten)]
        instance: InstanceArg,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Build the basis reachability graph.
    Brg {
        #[command(flatten)]
        instance: InstanceArg,
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Run the generation-filtered beam search.
    Schedule {
        #[command(flatten)]
        instance: InstanceArg,
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long = "beta-g", value_name = "N", default_value_t = 50)]
        beta_g: usize,
        #[arg(long = "beta-l", value_name = "N", default_value_t = 5)]
        beta_l: usize,
        /// Schedule CSV path; defaults to `<instance>.schedule.csv`.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        gantt: Option<PathBuf>,
    },
    /// Compute the exact optimum by exhaustive best-first search.
    Oracle {
        #[command(flatten)]
        instance: InstanceArg,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check a schedule CSV against an instance.
    Check {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long, value_name = "FILE")]
        schedule: PathBuf,
        #[arg(long, value_name = "PATH")]
        gantt: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct InstanceArg {
    #[arg(long, value_name = "FILE")]
    instance: PathBuf,
}

#[derive(Debug, Args)]
struct PartitionArg {
    /// Partition file listing explicit transitions, or `auto`.
    #[arg(long, value_name = "FILE|auto", default_value = "auto")]
    partition: String,
}

#[derive(Debug, Args)]
struct CapArg {
    #[arg(long = "max-states", value_name = "N", default_value_t = DEFAULT_STATE_CAP)]
    max_states: usize,
}

struct Failure {
    code: i32,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn no_result(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

type Outcome = Result<i32, Failure>;

/// Ordered `key=value` lines.
#[derive(Default)]
struct Report(Vec<(String, String)>);

impl Report {
    fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    fn path(&mut self, key: &str, path: Option<&Path>) -> &mut Self {
        match path {
            Some(p) => self.put(key, p.display()),
            None => self.put(key, "none"),
        }
    }

    fn emit(&self, out: &mut dyn Write) {
        for (k, v) in &self.0 {
            let _ = writeln!(out, "{k}={v}");
        }
    }
}

fn load(arg: &InstanceArg) -> Result<PlaceTimedNet, Failure> {
    let text = fs::read_to_string(&arg.instance)
        .with_context(|| format!("cannot read {}", arg.instance.display()))
        .map_err(usage)?;
    let inst =
        parse_instance(&text).map_err(|e| usage(anyhow!("{}: {e}", arg.instance.display())))?;
    Ok(PlaceTimedNet::build(&inst))
}

fn partition(net: &PlaceTimedNet, arg: &PartitionArg) -> Result<BasisPartition, Failure> {
    let text = if arg.partition == "auto" {
        "auto".to_string()
    } else {
        fs::read_to_string(&arg.partition)
            .with_context(|| format!("cannot read partition {}", arg.partition))
            .map_err(usage)?
    };
    BasisPartition::parse(net, &text)
        .map_err(|e| usage(anyhow!("partition {}: {e}", arg.partition)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(usage)
}

fn default_schedule_path(instance: &Path) -> PathBuf {
    instance.with_extension("schedule.csv")
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn validate(arg: &InstanceArg, out: &mut dyn Write) -> Outcome {
    let net = load(arg)?;
    let inst = net.instance();
    Report::default()
        .put("instance", instance_name(&arg.instance))
        .put("resources", inst.resources().len())
        .put("jobs", inst.jobs().len())
        .put("parts", inst.total_jobs())
        .put("places", net.net().place_count())
        .put("transitions", net.net().transition_count())
        .put("status", "ok")
        .emit(out);
    Ok(0)
}

fn net_cmd(arg: &InstanceArg, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let net = load(arg)?;
    if let Some(path) = dot {
        write_file(path, &net_dot(&net))?;
    }
    Report::default()
        .put("places", net.net().place_count())
        .put("transitions", net.net().transition_count())
        .put("m0", net.m0())
        .put("mf", net.mf())
        .path("dot", dot)
        .emit(out);
    Ok(0)
}

fn rg_cmd(arg: &InstanceArg, cap: usize, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let net = load(arg)?;
    let rg = reachability_graph(net.net(), net.m0(), cap).map_err(no_result)?;
    if let Some(path) = dot {
        let edges: Vec<(usize, String, usize)> = rg
            .edges
            .iter()
            .map(|&(s, t, d)| (s, net.net().transition_name(t).to_string(), d))
            .collect();
        write_file(path, &graph_dot("rg", &rg.nodes, &edges))?;
    }
    let dead = (0..rg.nodes.len())
        .filter(|&i| &rg.nodes[i] != net.mf() && !rg.edges.iter().any(|e| e.0 == i))
        .count();
    Report::default()
        .put("markings", rg.nodes.len())
        .put("edges", rg.edges.len())
        .put("deadlocks", dead)
        .path("dot", dot)
        .emit(out);
    Ok(0)
}

fn brg_cmd(
    arg: &InstanceArg,
    part_arg: &PartitionArg,
    cap: usize,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let net = load(arg)?;
    let part = partition(&net, part_arg)?;
    let brg = build_brg(&net, &part, cap).map_err(no_result)?;
    if let Some(path) = dot {
        let edges: Vec<(usize, String, usize)> = brg
            .edges
            .iter()
            .map(|e| {
                let label = format!(
                    "{} {}",
                    net.net().transition_name(e.transition),
                    e.explanation
                );
                (e.source, label, e.target)
            })
            .collect();
        write_file(path, &graph_dot("brg", &brg.nodes, &edges))?;
    }
    Report::default()
        .put("explicit", part.explicit().len())
        .put("implicit", part.implicit().len())
        .put("basis_markings", brg.nodes.len())
        .put("edges", brg.edges.len())
        .path("dot", dot)
        .emit(out);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn schedule_cmd(
    arg: &InstanceArg,
    part_arg: &PartitionArg,
    beta_g: usize,
    beta_l: usize,
    out_path: Option<&Path>,
    gantt: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let net = load(arg)?;
    let part = partition(&net, part_arg)?;
    let params = BeamParams::new(beta_g, beta_l).map_err(usage)?;
    let started = Instant::now();
    let outcome = Planner::new(&net, &part).gfbs(params);
    let elapsed = started.elapsed();

    let mut report = Report::default();
    report
        .put("instance", instance_name(&arg.instance))
        .put("explicit", part.explicit().len())
        .put("implicit", part.implicit().len())
        .put("beta_g", beta_g)
        .put("beta_l", beta_l);

    let (Some(f_max), Some(schedule)) = (outcome.f_max, outcome.schedule) else {
        report
            .put("F_max", "inf")
            .put("expanded", outcome.expanded)
            .put("elapsed_ms", elapsed.as_millis())
            .path("schedule", None)
            .path("gantt", None)
            .emit(out);
        let _ = writeln!(
            err,
            "no schedule found; retry with wider beams (--beta-g, --beta-l)"
        );
        return Ok(1);
    };

    let records = schedule.records();
    let csv = write_schedule_csv(&net, &records);
    // Re-validate exactly what is written.
    let rows = parse_schedule_csv(&csv).map_err(|e| Failure {
        code: 3,
        error: anyhow!("emitted schedule does not parse: {e}"),
    })?;
    let check = check_schedule(net.instance(), &rows);
    if !check.feasible || check.makespan != f_max {
        return Err(Failure {
            code: 3,
            error: anyhow!(
                "emitted schedule failed re-validation (makespan {}, F_max {f_max}): {}",
                check.makespan,
                check.violations.join("; ")
            ),
        });
    }

    let csv_path = out_path.map_or_else(|| default_schedule_path(&arg.instance), Path::to_path_buf);
    write_file(&csv_path, &csv)?;
    if let Some(path) = gantt {
        write_file(path, &emit_gantt(net.instance(), &rows))?;
    }
    report
        .put("F_max", f_max)
        .put("expanded", outcome.expanded)
        .put("events", outcome.events.len())
        .put("elapsed_ms", elapsed.as_millis())
        .path("schedule", Some(&csv_path))
        .path("gantt", gantt)
        .emit(out);
    Ok(0)
}

fn oracle_cmd(
    arg: &InstanceArg,
    cap: usize,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let net = load(arg)?;
    let started = Instant::now();
    let solution = oracle_optimal(&net, cap).map_err(no_result)?;
    let elapsed = started.elapsed();
    let mut report = Report::default();
    report.put("instance", instance_name(&arg.instance));
    match solution {
        Some(sol) => {
            if let Some(path) = out_path {
                write_file(path, &write_schedule_csv(&net, &sol.schedule.records()))?;
            }
            report
                .put("F_opt", sol.makespan)
                .put("states", sol.states)
                .put("elapsed_ms", elapsed.as_millis())
                .path("schedule", out_path)
                .emit(out);
            Ok(0)
        }
        None => {
            report
                .put("F_opt", "inf")
                .put("elapsed_ms", elapsed.as_millis())
                .path("schedule", None)
                .emit(out);
            Ok(1)
        }
    }
}

fn check_cmd(
    arg: &InstanceArg,
    schedule: &Path,
    gantt: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let net = load(arg)?;
    let text = fs::read_to_string(schedule)
        .with_context(|| format!("cannot read {}", schedule.display()))
        .map_err(usage)?;
    let rows: Vec<ScheduleRow> =
        parse_schedule_csv(&text).map_err(|e| usage(anyhow!("{}: {e}", schedule.display())))?;
    let check = check_schedule(net.instance(), &rows);
    if let Some(path) = gantt {
        write_file(path, &emit_gantt(net.instance(), &rows))?;
    }
    for v in &check.violations {
        let _ = writeln!(err, "violation: {v}");
    }
    Report::default()
        .put("feasible", check.feasible)
        .put("makespan", check.makespan)
        .put("violations", check.violations.len())
        .path("gantt", gantt)
        .emit(out);
    Ok(if check.feasible { 0 } else { 1 })
}

/// Runs one command line (program name first) against the given streams and
/// returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate(i) => validate(i, out),
        Command::Net { instance, dot } => net_cmd(instance, dot.as_deref(), out),
        Command::Rg { instance, cap, dot } => rg_cmd(instance, cap.max_states, dot.as_deref(), out),
        Command::Brg {
            instance,
            partition,
            cap,
            dot,
        } => brg_cmd(instance, partition, cap.max_states, dot.as_deref(), out),
        Command::Schedule {
            instance,
            partition,
            beta_g,
            beta_l,
            out: path,
            gantt,
        } => schedule_cmd(
            instance,
            partition,
            *beta_g,
            *beta_l,
            path.as_deref(),
            gantt.as_deref(),
            out,
            err,
        ),
        Command::Oracle {
            instance,
            cap,
            out: path,
        } => oracle_cmd(instance, cap.max_states, path.as_deref(), out),
        Command::Check {
            instance,
            schedule,
            gantt,
        } => check_cmd(instance, schedule, gantt.as_deref(), out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {:#}", f.error);
            f.code
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
