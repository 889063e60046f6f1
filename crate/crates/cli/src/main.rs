use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubeplan::arms::{self, cube_counts, snake_system, Flavor};
use cubeplan::complex::CubeComplex;
use cubeplan::pip::{self, InconsistencyMode, PipFile, DEFAULT_IDEAL_CAP};
use cubeplan::planner::{Metric, Plan, Planner};
use cubeplan::reconfig::{ReconfigSystem, DEFAULT_STATE_CAP};
use cubeplan::{Error, Pip};

#[derive(Parser)]
#[command(name = "cubeplan", version, about = "Optimal motion plans through CAT(0) cube complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Posets with inconsistent pairs.
    #[command(subcommand)]
    Pip(PipCommand),
    /// Plan and verify arm motions.
    #[command(subcommand)]
    Robot(RobotCommand),
    /// Count cubes or states of the arm state complexes.
    #[command(subcommand)]
    Count(CountCommand),
    /// Build and test state complexes of systems.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Write system descriptions.
    #[command(subcommand)]
    System(SystemCommand),
}

#[derive(Subcommand)]
enum PipCommand {
    /// Print a PIP as a Hasse diagram, or as normalized JSON.
    Show {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check acyclicity and both axioms.
    Validate {
        file: PathBuf,
        /// Require the listed pairs to be upward closed already.
        #[arg(long)]
        literal: bool,
    },
    /// Reroot at a consistent order ideal given as comma-separated ids.
    Reroot {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Write the PIP of an arm.
    Export {
        #[arg(long = "type", value_enum)]
        kind: ArmKind,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ArmKind {
    Quadrant,
    Strip,
}

impl From<ArmKind> for Flavor {
    fn from(k: ArmKind) -> Flavor {
        match k {
            ArmKind::Quadrant => Flavor::Quadrant,
            ArmKind::Strip => Flavor::Strip,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Moves,
    Steps,
    Time,
    Euclidean,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Moves => Metric::Moves,
            MetricArg::Steps => Metric::Steps,
            MetricArg::Time => Metric::Time,
            MetricArg::Euclidean => Metric::Euclidean,
        }
    }
}

#[derive(Subcommand)]
enum RobotCommand {
    /// Optimal plan between two arm states.
    Plan(PlanArgs),
    /// Replay a plan file and check that it is optimal.
    Verify { plan: PathBuf },
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long = "type", value_enum)]
    kind: ArmKind,
    #[arg(long)]
    n: usize,
    /// Start state: vertical link positions, e.g. `3568` or `3,5,11`.
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long, value_enum, default_value = "steps")]
    metric: MetricArg,
    /// List every shortest single-move plan.
    #[arg(long)]
    enumerate: bool,
    /// Replay the plan before printing it.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
    /// Follow the normal cube path from the goal, reversed.
    #[arg(long)]
    reverse: bool,
    /// Most plans listed by --enumerate.
    #[arg(long, default_value_t = 10_000)]
    plan_cap: usize,
}

#[derive(Subcommand)]
enum CountCommand {
    /// CSV of cube counts by dimension, by partial paths and by series.
    Cubes {
        #[arg(long = "type", value_enum)]
        kind: ArmKind,
        #[arg(long)]
        n: usize,
    },
    /// CSV of the number of states, by exploration.
    States {
        #[arg(long = "type", value_enum)]
        kind: ArmKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Decide whether the state complex is CAT(0) by recovering its PIP.
    CheckCat0 {
        #[arg(long)]
        system: PathBuf,
        /// Root state; defaults to the seed.
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
        #[arg(long, default_value_t = DEFAULT_IDEAL_CAP)]
        ideal_cap: usize,
    },
    /// CSV of cube counts of the state complex.
    FVector {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
    /// Write the state complex as JSON.
    Export {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
}

#[derive(Subcommand)]
enum SystemCommand {
    /// Write a built-in system as JSON.
    Export {
        #[arg(long = "type", value_enum)]
        kind: SystemKind,
        /// Arm length (quadrant, strip).
        #[arg(long)]
        n: Option<usize>,
        /// Snake length.
        #[arg(long)]
        length: Option<usize>,
        /// Snake grid rows.
        #[arg(long)]
        rows: Option<usize>,
        /// Snake grid columns.
        #[arg(long)]
        cols: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemKind {
    Quadrant,
    Strip,
    Snake,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok(String),
    NotCat0(String),
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_pip(path: &Path) -> anyhow::Result<Pip> {
    Ok(Pip::from_json(&read(path)?)?)
}

fn load_system(path: &Path) -> anyhow::Result<ReconfigSystem> {
    Ok(ReconfigSystem::from_json(&read(path)?)?)
}

fn parse_ids(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Pip(cmd) => pip_command(cmd).map(Outcome::Ok),
        Command::Robot(RobotCommand::Plan(args)) => robot_plan(args).map(Outcome::Ok),
        Command::Robot(RobotCommand::Verify { plan }) => robot_verify(&plan).map(Outcome::Ok),
        Command::Count(cmd) => count_command(cmd).map(Outcome::Ok),
        Command::Complex(cmd) => complex_command(cmd),
        Command::System(cmd) => system_command(cmd).map(Outcome::Ok),
    }
}

fn pip_command(cmd: PipCommand) -> anyhow::Result<String> {
    match cmd {
        PipCommand::Show { file, json } => {
            let p = load_pip(&file)?;
            Ok(if json { p.to_json() } else { p.hasse_text() })
        }
        PipCommand::Validate { file, literal } => {
            let raw: PipFile = serde_json::from_str(&read(&file)?)?;
            let mode = if literal { InconsistencyMode::Literal } else { InconsistencyMode::UpwardClosure };
            pip::validate(&raw.elements, &raw.relations(), &raw.inconsistent_pairs(), mode).map_err(Error::InvalidPip)?;
            Ok("ok\n".into())
        }
        PipCommand::Reroot { file, at, json } => {
            let p = load_pip(&file)?;
            let ideal = p.ideal_from_ids(&parse_ids(&at))?;
            let r = p.reroot(&ideal)?;
            Ok(if json { r.to_json() } else { r.hasse_text() })
        }
        PipCommand::Export { kind, n } => Ok(arms::arm_pip(kind.into(), n)?.to_json()),
    }
}

fn robot_plan(args: PlanArgs) -> anyhow::Result<String> {
    let flavor: Flavor = args.kind.into();
    let metric: Metric = args.metric.into();
    let planner = Planner::for_arm(flavor, args.n)?;
    let from = planner.parse_state(&args.from)?;
    let to = planner.parse_state(&args.to)?;
    let plans = if args.enumerate {
        if metric != Metric::Moves {
            bail!(Error::InvalidArgument("--enumerate lists single-move plans; use --metric moves".into()));
        }
        planner.move_plans(&from, &to, args.plan_cap)?
    } else {
        vec![planner.plan(&from, &to, metric, args.reverse)?]
    };
    if args.verify {
        for plan in &plans {
            planner.verify(plan)?;
        }
        eprintln!("verified {} plan(s)", plans.len());
    }
    if args.json {
        return Ok(if args.enumerate {
            let mut s = serde_json::to_string_pretty(&plans)?;
            s.push('\n');
            s
        } else {
            plans[0].to_json()
        });
    }
    let mut out = String::new();
    for (k, plan) in plans.iter().enumerate() {
        if args.enumerate {
            let _ = writeln!(out, "plan {}", k + 1);
        }
        out.push_str(&describe(&planner, plan)?);
    }
    if args.enumerate {
        let _ = writeln!(out, "{} shortest move plans", plans.len());
    }
    Ok(out)
}

/// Human trace: one line per stage with the state reached.
fn describe(planner: &Planner, plan: &Plan) -> anyhow::Result<String> {
    let trace = planner.replay(plan)?;
    let word = |u| arms::rstate_to_arm(u).ne_word();
    let show = |s: &str| if s.is_empty() { "(horizontal)".to_string() } else { s.to_string() };
    let mut out = String::new();
    let _ = writeln!(out, "start {}  {}", show(&plan.start), word(&trace[0]));
    for (k, (step, state)) in plan.steps.iter().zip(&trace[1..]).enumerate() {
        let _ = writeln!(
            out,
            "step {}: {}  -> {}  {}",
            k + 1,
            step.join(" + "),
            show(&planner.format_state(state)),
            word(state)
        );
    }
    let _ = writeln!(out, "length {} ({})", plan.length, plan.metric);
    Ok(out)
}

fn robot_verify(path: &Path) -> anyhow::Result<String> {
    let plan = Plan::from_json(&read(path)?)?;
    let Some(robot) = plan.robot.clone() else {
        bail!(Error::PlanRejected("plan file does not name its robot".into()));
    };
    let flavor: Flavor = robot.kind.parse()?;
    let planner = Planner::for_arm(flavor, robot.n)?;
    planner.verify(&plan)?;
    Ok(format!("ok: {} stage(s), {} move(s), optimal for {}\n", plan.steps.len(), plan.move_count(), plan.metric))
}

fn count_command(cmd: CountCommand) -> anyhow::Result<String> {
    match cmd {
        CountCommand::Cubes { kind, n } => {
            let counts = cube_counts(kind.into(), n)?;
            let mut out = String::from("n,d,count\n");
            for (d, c) in counts.iter().enumerate() {
                let _ = writeln!(out, "{n},{d},{c}");
            }
            Ok(out)
        }
        CountCommand::States { kind, n, state_cap } => {
            let explored = arms::arm_system(kind.into(), n)?.explore(state_cap)?.len();
            Ok(format!("n,states\n{n},{explored}\n"))
        }
    }
}

fn complex_command(cmd: ComplexCommand) -> anyhow::Result<Outcome> {
    match cmd {
        ComplexCommand::CheckCat0 { system, root, json, state_cap, ideal_cap } => {
            let sys = load_system(&system)?;
            let exploration = sys.explore(state_cap)?;
            let mut complex = sys.state_complex(&exploration)?;
            if let Some(root) = root {
                let u = sys.parse_state(&root)?;
                let v = exploration
                    .index_of(&u)
                    .ok_or_else(|| Error::InvalidState(format!("{root} is not reachable from the seed")))?;
                complex = complex.with_root(v)?;
            }
            match complex.reconstruct_pip(ideal_cap)? {
                Ok(rec) => Ok(Outcome::Ok(if json {
                    rec.pip.to_json()
                } else {
                    format!("CAT(0): yes\n{}", rec.pip.hasse_text())
                })),
                Err(report) => Ok(Outcome::NotCat0(format!("CAT(0): no\n{report}\n"))),
            }
        }
        ComplexCommand::FVector { system, state_cap } => Ok(Outcome::Ok(build_complex(&system, state_cap)?.f_vector_csv())),
        ComplexCommand::Export { system, state_cap } => Ok(Outcome::Ok(build_complex(&system, state_cap)?.to_json())),
    }
}

fn build_complex(path: &Path, state_cap: usize) -> anyhow::Result<CubeComplex> {
    let sys = load_system(path)?;
    let exploration = sys.explore(state_cap)?;
    Ok(sys.state_complex(&exploration)?)
}

fn system_command(cmd: SystemCommand) -> anyhow::Result<String> {
    let SystemCommand::Export { kind, n, length, rows, cols } = cmd;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")));
    let sys = match kind {
        SystemKind::Quadrant => arms::quadrant_system(need(n, "n")?)?,
        SystemKind::Strip => arms::strip_system(need(n, "n")?)?,
        SystemKind::Snake => snake_system(need(length, "length")?, need(rows, "rows")?, need(cols, "cols")?)?,
    };
    Ok(sys.to_json())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::NotCat0(_)) => 4,
        Some(_) => 2,
        None if err.downcast_ref::<serde_json::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::NotCat0(text)) => {
            print!("{text}");
            ExitCode::from(4)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
