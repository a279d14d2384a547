use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use gridgather::classify::{condition_of, half_plane_plus_of, quadrant_plus_plus_of};
use gridgather::gen::{generate, GenSpec};
use gridgather::oracle::{brute_force_weber, explore_schedules, optimal_cost, ExploreBounds, ExploreOutcome};
use gridgather::sim::{run, Caps, Outcome, SchedulerKind, SchedulerPolicy, DEFAULT_FAIRNESS, DEFAULT_MAX_STEPS};
use gridgather::{scenario, Analysis, ClassLabel, Configuration, Error, MIN_ROBOTS};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_FAULT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gridgather",
    version,
    about = "Optimal gathering of oblivious robots on the grid"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheduler {
    Fsync,
    Ssync,
    Async,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one or more scenarios to the end.
    Run {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "fsync")]
        scheduler: Scheduler,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: u64,
        #[arg(long, default_value_t = DEFAULT_FAIRNESS)]
        fairness: u32,
        /// Trace file, or a directory when several scenarios are given.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long = "assert", value_enum, default_value = "on")]
        assertions: Toggle,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Report the class and the geometry the algorithm works from.
    Classify { scenario: PathBuf },
    /// Enumerate every ASYNC interleaving of a small instance.
    Explore {
        scenario: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
    },
    /// Write a random scenario.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        meetings: u32,
        #[arg(long, default_value_t = 20)]
        extent: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        attempts: u32,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit status.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidConfig(_) => EXIT_PARSE,
            Error::InvariantViolation { .. } | Error::ResourceExhausted { .. } => EXIT_FAULT,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

fn load(path: &Path, initial: bool) -> Result<Configuration, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let c = scenario::parse(&text).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let check = if initial {
        c.validate_initial()
    } else if c.robot_count() < MIN_ROBOTS {
        Err(Error::InvalidConfig(format!(
            "at least {MIN_ROBOTS} robots are required, got {}",
            c.robot_count()
        )))
    } else {
        Ok(())
    };
    check.map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok(c)
}

fn nodes(ns: impl IntoIterator<Item = gridgather::Node>) -> String {
    let v: Vec<String> = ns.into_iter().map(|n| n.to_string()).collect();
    format!("[{}]", v.join(","))
}

struct RunArgs {
    policy: SchedulerPolicy,
    caps: Caps,
    trace: Option<PathBuf>,
    batch: bool,
}

/// The summary of one scenario and the exit status it calls for.
#[derive(Clone)]
struct Summary {
    line: String,
    code: u8,
    /// Errors go to standard error, outcomes to standard output.
    error: bool,
}

fn summary(line: String, code: u8) -> Summary {
    Summary {
        line,
        code,
        error: false,
    }
}

fn failure(line: String, code: u8) -> Summary {
    Summary {
        line,
        code,
        error: true,
    }
}

fn run_one(path: &Path, args: &RunArgs) -> Summary {
    let prefix = if args.batch {
        format!("scenario={} ", path.display())
    } else {
        String::new()
    };
    let c = match load(path, true) {
        Ok(c) => c,
        Err(Failure(code, msg)) => return failure(format!("{prefix}error={msg}"), code),
    };
    let (outcome, trace) = match run(&c, args.policy, args.caps) {
        Ok(r) => r,
        Err(Error::InvariantViolation {
            invariant,
            step,
            detail,
        }) => {
            return summary(
                format!("{prefix}outcome=Fault invariant={invariant} step={step} detail={detail:?}"),
                EXIT_FAULT,
            )
        }
        Err(e) => return failure(format!("{prefix}error={e}"), EXIT_FAULT),
    };
    if let Some(t) = &args.trace {
        let file = if args.batch {
            let stem = path
                .file_stem()
                .map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
            t.join(format!("{stem}.trace"))
        } else {
            t.clone()
        };
        if let Err(e) = std::fs::write(&file, trace.render()) {
            return failure(
                format!("{prefix}error=cannot write {}: {e}", file.display()),
                EXIT_USAGE,
            );
        }
    }
    match outcome {
        Outcome::Gathered {
            node,
            total_moves,
            steps,
        } => {
            let best = optimal_cost(&c);
            let optimal = total_moves == best && brute_force_weber(&c).contains(&node);
            summary(
                format!("{prefix}outcome=Gathered node={node} moves={total_moves} optimal_cost={best} optimal={optimal} steps={steps}"),
                0,
            )
        }
        Outcome::Ungatherable(reason) => summary(format!("{prefix}outcome=Ungatherable reason={reason:?}"), 0),
        Outcome::CapExceeded { total_moves, steps } => summary(
            format!("{prefix}outcome=CapExceeded moves={total_moves} steps={steps}"),
            EXIT_FAULT,
        ),
    }
}

fn cmd_run(scenarios: Vec<PathBuf>, args: RunArgs, jobs: usize) -> Result<(), Failure> {
    if args.batch {
        if let Some(dir) = &args.trace {
            std::fs::create_dir_all(dir).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", dir.display())))?;
        }
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Summary>>> = Mutex::new(vec![None; scenarios.len()]);
    let printed = Mutex::new(0usize);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        let Some(path) = scenarios.get(i) else { break };
        let r = run_one(path, &args);
        let mut res = results.lock().expect("no worker panics");
        res[i] = Some(r);
        // Summaries come out in input order, one writer at a time.
        let mut p = printed.lock().expect("no worker panics");
        while let Some(Some(r)) = res.get(*p) {
            if r.error {
                eprintln!("{}", r.line);
            } else {
                println!("{}", r.line);
            }
            *p += 1;
        }
    };
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            s.spawn(worker);
        }
    });
    let worst = results
        .into_inner()
        .expect("no worker panics")
        .into_iter()
        .flatten()
        .map(|r| r.code)
        .max();
    match worst {
        Some(0) | None => Ok(()),
        Some(code) => Err(Failure(code, String::new())),
    }
}

fn cmd_classify(path: &Path) -> Result<(), Failure> {
    let c = load(path, false)?;
    let a = Analysis::new(&c);
    let l = a.label;
    println!("class={l} gatherable={} u_prime={}", l.gatherable, l.in_u_prime);
    if let Some(reason) = &a.reason {
        println!("reason={reason:?}");
    }
    let axes: Vec<String> = a.meeting.axes.iter().map(|x| x.to_string()).collect();
    println!("symmetry={} axes=[{}]", a.meeting.kind, axes.join(","));
    println!("weber={}", nodes(a.weber.iter().copied()));
    println!("potential_weber={}", nodes(a.potential.iter().copied()));
    let pairs = |ps: &[gridgather::frame::Pair]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    println!("leading=[{}]", pairs(&a.frame.leading));
    println!("key=[{}]", pairs(&a.frame.key_pairs(&c)));
    if let Ok(cond) = condition_of(&c, &a) {
        println!("condition={cond}");
    }
    if let Ok(h) = half_plane_plus_of(&c, &a) {
        println!("{}={}", h.id, h.region);
    }
    if let Ok(q) = quadrant_plus_plus_of(&c, &a) {
        println!("{}={}", q.id, q.region);
    }
    Ok(())
}

fn cmd_explore(path: &Path, depth: u64, max_states: usize) -> Result<(), Failure> {
    let c = load(path, true)?;
    let rep = explore_schedules(
        &c,
        ExploreBounds {
            max_depth: depth,
            max_states,
        },
    )
    .map_err(|e| match e {
        Error::ResourceExhausted { explored } => {
            Failure(EXIT_FAULT, format!("error=resource_exhausted states={explored}"))
        }
        e => Failure::from(e),
    })?;
    let kinds: std::collections::BTreeSet<&str> = rep
        .outcomes
        .iter()
        .map(|o| match o {
            ExploreOutcome::Gathered { .. } => "Gathered",
            ExploreOutcome::Ungatherable(_) => "Ungatherable",
            ExploreOutcome::DepthCapped => "DepthCapped",
            ExploreOutcome::Stuck => "Stuck",
        })
        .collect();
    let mut line = format!(
        "outcomes={} kind={}",
        rep.outcomes.len(),
        kinds.into_iter().collect::<Vec<_>>().join(",")
    );
    if let (Some(lo), Some(hi)) = (rep.min_moves, rep.max_moves) {
        line.push_str(&format!(" moves_min={lo} moves_max={hi}"));
    }
    line.push_str(&format!(" optimal_cost={} states={}", optimal_cost(&c), rep.states));
    println!("{line}");
    for o in &rep.outcomes {
        match o {
            ExploreOutcome::Gathered { node, total_moves } => {
                println!("outcome=Gathered node={node} moves={total_moves}")
            }
            ExploreOutcome::Ungatherable(r) => println!("outcome=Ungatherable reason={r:?}"),
            ExploreOutcome::DepthCapped => println!("outcome=DepthCapped"),
            ExploreOutcome::Stuck => println!("outcome=Stuck"),
        }
    }
    Ok(())
}

fn cmd_gen(spec: GenSpec, out: Option<PathBuf>) -> Result<(), Failure> {
    if spec.robots < MIN_ROBOTS {
        return Err(Failure(
            EXIT_USAGE,
            format!("gathering needs at least {MIN_ROBOTS} robots, got {}", spec.robots),
        ));
    }
    let c = generate(&spec).map_err(|e| Failure(EXIT_FAULT, e.to_string()))?;
    let text = scenario::render(&c);
    match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Run {
            scenarios,
            scheduler,
            seed,
            max_steps,
            fairness,
            trace,
            assertions,
            jobs,
        } => {
            let kind = match scheduler {
                Scheduler::Fsync => SchedulerKind::Fsync,
                Scheduler::Ssync => SchedulerKind::Ssync,
                Scheduler::Async => SchedulerKind::Async,
            };
            if fairness < 2 {
                return Err(Failure(EXIT_USAGE, "--fairness must be at least 2".into()));
            }
            let args = RunArgs {
                policy: SchedulerPolicy { kind, fairness, seed },
                caps: Caps {
                    max_steps,
                    assertions: assertions == Toggle::On,
                },
                trace,
                batch: scenarios.len() > 1,
            };
            cmd_run(scenarios, args, jobs)
        }
        Command::Classify { scenario } => cmd_classify(&scenario),
        Command::Explore {
            scenario,
            depth,
            max_states,
        } => cmd_explore(&scenario, depth, max_states),
        Command::Gen {
            n,
            meetings,
            extent,
            seed,
            class,
            attempts,
            out,
        } => {
            let class = match class {
                Some(s) => Some(
                    s.parse::<ClassLabel>()
                        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?,
                ),
                None => None,
            };
            let spec = GenSpec {
                class,
                attempts,
                ..GenSpec::new(n, meetings, extent, seed)
            };
            cmd_gen(spec, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
