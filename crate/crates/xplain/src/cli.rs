//! `xplain validate|explain|dialogue|serve|export-af`.

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xplain_core::dialogue::{ArgId, CqSubject, NodeId, Session, DEFAULT_GOAL_BOUND};
use xplain_core::dung::Label;
use xplain_core::planning::{run_plan, Goal, Plan, PlanningProblem, Trace};
use xplain_core::schemes::{
    build_action_argument, build_concurrent_argument, build_goal_argument, build_plan_summary_argument,
    build_state_argument, render_explanation, Explanation, SchemeError,
};

use crate::config::{Config, DEFAULT_PORT, DEFAULT_TTL_SECS};
use crate::load::{load, LoadError, Source};
use crate::pddl::GroundOptions;
use crate::wire;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SOLUTION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "xplain", version, about = "Validate STRIPS plans and explain them with argument schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Files {
    /// PDDL domain file
    #[arg(short = 'd', long)]
    domain: PathBuf,
    /// PDDL problem file
    #[arg(short = 'p', long)]
    problem: PathBuf,
    /// Plan file, one step per line
    #[arg(short = 's', long = "plan-file")]
    plan_file: PathBuf,
    /// Step bound for the goal feasibility search
    #[arg(long, default_value_t = DEFAULT_GOAL_BOUND, value_parser = positive)]
    bound: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Explain the whole plan
    #[arg(long)]
    plan: bool,
    /// Explain the single action at step IDX
    #[arg(long, value_name = "IDX")]
    action: Option<usize>,
    /// Explain how state IDX comes about
    #[arg(long, value_name = "IDX")]
    state: Option<usize>,
    /// Explain how the goal ATOM is achieved, e.g. "ontable(a)" or "(ontable a)"
    #[arg(long, value_name = "ATOM")]
    goal: Option<String>,
    /// Explain the concurrent step IDX
    #[arg(long, value_name = "IDX")]
    step: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AfFormat {
    Dot,
    Structured,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check whether the plan solves the problem
    Validate(Files),
    /// Print the argument for one part of the plan
    Explain {
        #[command(flatten)]
        files: Files,
        #[command(flatten)]
        target: Target,
    },
    /// Question the plan interactively
    Dialogue(Files),
    /// Run the HTTP session service
    Serve {
        #[arg(long, env = "XPLAIN_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        /// Session lifetime in seconds
        #[arg(long, default_value_t = DEFAULT_TTL_SECS, value_parser = clap::value_parser!(u64).range(1..))]
        ttl: u64,
        #[arg(long, default_value_t = DEFAULT_GOAL_BOUND, value_parser = positive)]
        bound: usize,
        #[arg(long, default_value_t = GroundOptions::default().max_objects)]
        max_objects: usize,
        #[arg(long, default_value_t = GroundOptions::default().max_actions)]
        max_actions: usize,
    },
    /// Print the argumentation framework of a session
    ExportAf {
        #[command(flatten)]
        files: Files,
        #[arg(long, value_enum, default_value_t = AfFormat::Dot)]
        format: AfFormat,
        /// Ask and answer every question first
        #[arg(long)]
        all: bool,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A failure that ends the command with exit code 2.
struct Fatal(String);

impl From<io::Error> for Fatal {
    fn from(e: io::Error) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load_files(f: &Files) -> Result<(PlanningProblem, Plan), Fatal> {
    let (d, p, s) = (read(&f.domain)?, read(&f.problem)?, read(&f.plan_file)?);
    load(&d, &p, &s, &GroundOptions::default()).map_err(|e| match e {
        LoadError::Parse { file, error } => {
            let path = match file {
                Source::Domain => &f.domain,
                Source::Problem => &f.problem,
                Source::Plan => &f.plan_file,
            };
            Fatal(format!("{}:{error}", path.display()))
        }
        LoadError::Ground(g) => Fatal(g.to_string()),
    })
}

/// Runs the command line with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, input, out) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Fatal> {
    match cmd {
        Command::Validate(files) => {
            let (problem, plan) = load_files(&files)?;
            let verdict = xplain_core::planning::check_solution(&problem, &plan);
            out.write_all(wire::verdict_text(&verdict).as_bytes())?;
            Ok(if verdict.is_solution { EXIT_OK } else { EXIT_NOT_SOLUTION })
        }
        Command::Explain { files, target } => {
            let (problem, plan) = load_files(&files)?;
            match explain(&problem, &plan, &target, files.bound)? {
                Ok(e) => {
                    out.write_all(render_explanation(&e).as_bytes())?;
                    Ok(EXIT_OK)
                }
                Err(verdict_text) => {
                    out.write_all(verdict_text.as_bytes())?;
                    Ok(EXIT_NOT_SOLUTION)
                }
            }
        }
        Command::Dialogue(files) => {
            let (problem, plan) = load_files(&files)?;
            let mut session = Session::new(problem, plan).with_goal_bound(files.bound);
            if session.summary().is_none() {
                out.write_all(wire::verdict_text(session.verdict()).as_bytes())?;
                return Ok(EXIT_NOT_SOLUTION);
            }
            dialogue(&mut session, input, out)?;
            Ok(EXIT_OK)
        }
        Command::Serve { port, ttl, bound, max_objects, max_actions } => {
            let config = Config {
                port,
                ttl: Duration::from_secs(ttl),
                goal_bound: bound,
                ground: GroundOptions { max_objects, max_actions, ..GroundOptions::default() },
                ..Config::default()
            };
            config.validate().map_err(Fatal)?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::http::serve(config))?;
            Ok(EXIT_OK)
        }
        Command::ExportAf { files, format, all } => {
            let (problem, plan) = load_files(&files)?;
            let mut session = Session::new(problem, plan).with_goal_bound(files.bound);
            if session.summary().is_none() {
                out.write_all(wire::verdict_text(session.verdict()).as_bytes())?;
                return Ok(EXIT_NOT_SOLUTION);
            }
            if all {
                session.explore_all();
            }
            let text = match format {
                AfFormat::Dot => xplain_core::dialogue::to_dot(&session),
                AfFormat::Structured => {
                    serde_json::to_string_pretty(&wire::af_doc(&session)).expect("documents serialize") + "\n"
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn usage(msg: String) -> Fatal {
    Fatal(msg)
}

fn need_trace(trace: &Option<Trace>) -> Result<&Trace, ()> {
    trace.as_ref().ok_or(())
}

/// Builds the requested explanation. The inner `Err` is a verdict report for
/// plans that cannot be explained because they fail.
fn explain(problem: &PlanningProblem, plan: &Plan, t: &Target, bound: usize) -> Result<Result<Explanation, String>, Fatal> {
    let verdict = xplain_core::planning::check_solution(problem, plan);
    let trace = run_plan(problem, plan).ok();
    let not_executable = || Ok(Err(wire::verdict_text(&verdict)));
    let steps = plan.len();
    let valid_steps = |concurrent: bool| -> String {
        let idx: Vec<String> = plan
            .steps
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_concurrent() == concurrent)
            .map(|(i, _)| i.to_string())
            .collect();
        if idx.is_empty() { "none".into() } else { idx.join(", ") }
    };

    if t.plan {
        return Ok(match build_plan_summary_argument(problem, plan) {
            Ok(a) => Ok(a.into()),
            Err(_) => Err(wire::verdict_text(&verdict)),
        });
    }
    if let Some(i) = t.action {
        let Ok(trace) = need_trace(&trace) else { return not_executable() };
        return match build_action_argument(problem, trace, i, None) {
            Ok(a) => Ok(Ok(a.into())),
            Err(SchemeError::StepOutOfRange { .. } | SchemeError::WrongScheme { .. }) => Err(usage(format!(
                "--action={i} is not a single-action step; valid values: {} (the plan has {steps} steps)",
                valid_steps(false)
            ))),
            Err(e) => Err(Fatal(e.to_string())),
        };
    }
    if let Some(i) = t.step {
        let Ok(trace) = need_trace(&trace) else { return not_executable() };
        return match build_concurrent_argument(problem, trace, i) {
            Ok(a) => Ok(Ok(a.into())),
            Err(SchemeError::StepOutOfRange { .. } | SchemeError::WrongScheme { .. }) => Err(usage(format!(
                "--step={i} is not a concurrent step; valid values: {}",
                valid_steps(true)
            ))),
            Err(e) => Err(Fatal(e.to_string())),
        };
    }
    if let Some(i) = t.state {
        let Ok(trace) = need_trace(&trace) else { return not_executable() };
        return build_state_argument(trace, i).map(Ok).map_err(|_| {
            usage(format!("--state={i} is out of range; valid values: 0 to {}", trace.states.len() - 1))
        });
    }
    if let Some(text) = &t.goal {
        let Ok(trace) = need_trace(&trace) else { return not_executable() };
        let goal = parse_goal(text).and_then(|g| problem.goals.contains(&g).then_some(g));
        let Some(goal) = goal else {
            let goals: Vec<String> = problem.goals.iter().map(|g| g.to_string()).collect();
            return Err(usage(format!("--goal={text} is not a goal; valid values: {}", goals.join(", "))));
        };
        return build_goal_argument(problem, trace, &goal, bound).map(Ok).map_err(|e| Fatal(e.to_string()));
    }
    unreachable!("clap requires one target")
}

/// Accepts `ontable(a)`, `ONTABLE(A)` or `(ontable a)`.
pub fn parse_goal(text: &str) -> Option<Goal> {
    let t = text.trim();
    let (pred, args): (&str, Vec<&str>) = if let Some(inner) = t.strip_prefix('(') {
        let inner = inner.strip_suffix(')')?;
        let mut words = inner.split_whitespace();
        (words.next()?, words.collect())
    } else if let Some((p, rest)) = t.split_once('(') {
        let rest = rest.strip_suffix(')')?;
        (p, rest.split(',').map(str::trim).filter(|a| !a.is_empty()).collect())
    } else {
        (t, Vec::new())
    };
    if pred.is_empty() || pred.contains(char::is_whitespace) {
        return None;
    }
    Some(Goal::atom(xplain_core::planning::Atom::new(pred, args)))
}

/// The interactive loop. Reads commands until `quit` or end of input and
/// prints the property report before returning.
pub fn dialogue(session: &mut Session, input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<()> {
    let summary = session.summary().expect("dialogues start from a solution");
    let mut focus = summary;
    writeln!(out, "{}", session.argument(summary).expect("summary").text())?;
    let mut line = String::new();
    loop {
        let menu = menu(session, focus);
        print_menu(session, focus, &menu, out)?;
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            break;
        }
        let cmd = line.trim();
        match cmd {
            "" => continue,
            "quit" | "q" | "exit" => break,
            "af" => print_labels(session, out)?,
            "accept" => {
                session.mark_accepted();
                writeln!(out, "Marked as accepted.")?;
            }
            "all" => {
                let failures = session.explore_all();
                writeln!(
                    out,
                    "Explored: {} arguments, {} questions.",
                    session.arguments().len(),
                    session.questions().len()
                )?;
                for (q, e) in failures {
                    writeln!(out, "  {q} could not be answered: {e}")?;
                }
            }
            _ => {
                if let Ok(a) = cmd.to_uppercase().parse::<ArgId>() {
                    if session.argument(a).is_ok() {
                        focus = a;
                        writeln!(out, "{}", session.argument(a).expect("checked").text())?;
                        continue;
                    }
                }
                let Some(choice) = cmd.parse::<usize>().ok().and_then(|n| n.checked_sub(1)).and_then(|i| menu.get(i))
                else {
                    writeln!(out, "Unknown choice '{cmd}'. Enter a question number, an argument id, af, accept, all or quit.")?;
                    continue;
                };
                let asked = match choice {
                    None => Ok(session.ask_plan()),
                    Some(subject) => session.ask(focus, subject),
                };
                match asked.and_then(|q| session.answer(q).map(|a| (q, a))) {
                    Ok((q, a)) => {
                        let node = session.question(q).expect("asked");
                        writeln!(out, "{}", node.text())?;
                        writeln!(out, "{}", session.argument(a).expect("answered").text())?;
                        focus = a;
                    }
                    Err(e) => writeln!(out, "{e}")?,
                }
            }
        }
    }
    let report = session.clone().check_properties(false).expect("a summary exists");
    out.write_all(wire::properties_text(&report).as_bytes())?;
    Ok(())
}

/// Menu entries for `focus`: `None` stands for CQ1, listed first for the summary.
fn menu(session: &Session, focus: ArgId) -> Vec<Option<CqSubject>> {
    let mut items = Vec::new();
    if Some(focus) == session.summary() {
        items.push(None);
    }
    if let Ok(list) = session.available(focus) {
        items.extend(list.into_iter().map(|(c, _)| Some(c.subject)));
    }
    items
}

fn print_menu(session: &Session, focus: ArgId, menu: &[Option<CqSubject>], out: &mut dyn Write) -> io::Result<()> {
    if menu.is_empty() {
        writeln!(out, "No questions can be asked of {focus}. Enter an argument id to move, or af, accept, all, quit.")?;
        return Ok(());
    }
    writeln!(out, "Questions for {focus}:")?;
    let available = session.available(focus).unwrap_or_default();
    for (n, item) in menu.iter().enumerate() {
        let (kind, premise, question, asked) = match item {
            None => {
                let q = session.questions().iter().find(|q| q.target.is_none());
                ("CQ1".to_string(), None, CqSubject::Plan(session.plan().clone()).question(), q.and_then(|q| q.answer))
            }
            Some(subject) => {
                let (c, q) = available.iter().find(|(c, _)| &c.subject == subject).expect("listed");
                let answer = q.and_then(|q| session.question(q).ok()).and_then(|q| q.answer);
                (c.kind.to_string(), Some(c.premise), subject.question(), answer)
            }
        };
        let premise = premise.map(|p| format!(" (premise {p})")).unwrap_or_default();
        let status = asked.map(|a| format!(" [answered by {a}]")).unwrap_or_default();
        writeln!(out, "  {}. {kind}{premise}: {question}{status}", n + 1)?;
    }
    Ok(())
}

fn print_labels(session: &Session, out: &mut dyn Write) -> io::Result<()> {
    let gr = session.grounded();
    for &id in session.nodes() {
        let label = match session.label(&gr, id) {
            Label::In => "in",
            Label::Out => "out",
            Label::Undec => "undec",
        };
        let kind = if matches!(id, NodeId::Arg(_)) { "argument" } else { "question" };
        writeln!(out, "{id} {kind} {label}")?;
    }
    Ok(())
}
