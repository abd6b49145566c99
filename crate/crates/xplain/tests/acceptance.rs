//! One PASS/FAIL line per acceptance criterion. Blocks-world states are
//! written out by hand; the randomized checks use oracles written here
//! independently of the library.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use xplain::load::load;
use xplain::pddl::{
    domain_to_pddl, ground, parse_domain, parse_plan, parse_problem, plan_to_text, problem_to_pddl, GroundOptions,
};
use xplain_core::dialogue::{NodeId, Session};
use xplain_core::dung::Framework;
use xplain_core::planning::{
    check_solution, concurrent_consistent, run_plan, transition_step, Atom, Condition, Goal, GroundAction, Plan,
    PlanStep, PlanningProblem, Site, State, StepFailure, Trace, Violation,
};
use xplain_core::schemes::{
    build_action_argument, build_concurrent_argument, build_goal_argument, build_plan_summary_argument,
    build_state_argument, Achiever, Argument, Claim, Conclusion, Explanation, Outcome, SchemeKind,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/blocksworld/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn blocks() -> (PlanningProblem, Plan) {
    load(&fixture("domain.pddl"), &fixture("problem.pddl"), &fixture("plan.txt"), &GroundOptions::default()).unwrap()
}

/// Reads a hand-written conjunction such as `P(A,B) ∧ Q(C)`.
fn written_atoms(text: &str) -> BTreeSet<Atom> {
    text.split('∧')
        .map(|c| {
            let c = c.trim();
            let (pred, rest) = c.split_once('(').unwrap();
            let args = rest.strip_suffix(')').unwrap();
            Atom::new(pred, args.split(','))
        })
        .collect()
}

fn written_state(text: &str) -> State {
    written_atoms(text).into_iter().collect()
}

fn written_goals(text: &str) -> BTreeSet<Goal> {
    written_atoms(text).into_iter().map(Goal::atom).collect()
}

fn action(problem: &PlanningProblem, name: &str, args: &[&str]) -> GroundAction {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    problem.actions.iter().find(|a| a.is_named(name, &args)).unwrap().clone()
}

const S0: &str = "ONTABLE(D) ∧ ON(C,D) ∧ ON(B,C) ∧ ON(A,B) ∧ CLEAR(A)";
const S1: &str = "ONTABLE(D) ∧ ON(C,D) ∧ ON(B,C) ∧ CLEAR(A) ∧ CLEAR(B) ∧ ONTABLE(A)";
const S2: &str = "ONTABLE(D) ∧ ON(C,D) ∧ CLEAR(A) ∧ CLEAR(B) ∧ CLEAR(C) ∧ ONTABLE(A) ∧ ONTABLE(B)";
const S3: &str = "ONTABLE(D) ∧ CLEAR(A) ∧ CLEAR(B) ∧ CLEAR(C) ∧ CLEAR(D) ∧ ONTABLE(A) ∧ ONTABLE(B) ∧ ONTABLE(C)";
const S4: &str = "ON(C,A) ∧ ON(D,B) ∧ ONTABLE(A) ∧ ONTABLE(B) ∧ CLEAR(C) ∧ CLEAR(D)";
/// The state between the two stacking actions.
const S3_MID: &str = "ONTABLE(D) ∧ CLEAR(B) ∧ CLEAR(C) ∧ CLEAR(D) ∧ ON(C,A) ∧ ONTABLE(A) ∧ ONTABLE(B)";
const GOALS: &str = "ON(C,A) ∧ ON(D,B) ∧ ONTABLE(A) ∧ ONTABLE(B) ∧ CLEAR(C) ∧ CLEAR(D)";

fn blocks_trace() -> Check {
    let start = Instant::now();
    let (problem, plan) = blocks();
    let trace = run_plan(&problem, &plan).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected: Vec<State> = [S0, S1, S2, S3, S4].into_iter().map(written_state).collect();
    ensure!(trace.states == expected, "states differ: {:?}", trace.states);
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

fn claim(arg: &Argument, index: usize) -> &Claim {
    &arg.premise(index).unwrap().claim
}

fn outcome_goals(o: &Outcome) -> Option<&BTreeSet<Goal>> {
    o.goals()
}

fn scheme_goldens() -> Check {
    let (problem, plan) = blocks();
    let trace: Trace = run_plan(&problem, &plan).unwrap();
    let unstack_ab = action(&problem, "UNSTACK", &["A", "B"]);
    let (stack_ca, stack_db) = (action(&problem, "STACK", &["C", "A"]), action(&problem, "STACK", &["D", "B"]));
    let g_ontable_a = written_goals("ONTABLE(A)");

    // Action argument for the first step.
    let a = build_action_argument(&problem, &trace, 0, None).map_err(|e| e.to_string())?;
    ensure!(a.scheme == SchemeKind::Action && a.premises.len() == 4, "action shape");
    ensure!(unstack_ab.pre == written_atoms("CLEAR(A) ∧ ON(A,B)"), "pre(UNSTACK(A,B))");
    match claim(&a, 1) {
        Claim::Preconditions { actions, state } => {
            ensure!(actions == &vec![unstack_ab.clone()] && state.state == written_state(S0), "action premise 1")
        }
        c => return Err(format!("action premise 1: {c:?}")),
    }
    match claim(&a, 2) {
        Claim::Transition(t) => ensure!(
            t.from.state == written_state(S0) && t.step == PlanStep::Single(unstack_ab.clone()) && t.to.state == written_state(S1),
            "action premise 2"
        ),
        c => return Err(format!("action premise 2: {c:?}")),
    }
    match claim(&a, 3) {
        Claim::Holds { outcome, state } => {
            ensure!(outcome_goals(outcome) == Some(&g_ontable_a) && state.state == written_state(S1), "action premise 3")
        }
        c => return Err(format!("action premise 3: {c:?}")),
    }
    match claim(&a, 4) {
        Claim::Achieves { achiever: Achiever::Step { step, .. }, outcome } => ensure!(
            step == &PlanStep::Single(unstack_ab.clone()) && outcome_goals(outcome) == Some(&g_ontable_a),
            "action premise 4"
        ),
        c => return Err(format!("action premise 4: {c:?}")),
    }
    ensure!(
        a.conclusion == Conclusion::Execute { action: unstack_ab.clone(), state: xplain_core::schemes::StateRef::at(0, written_state(S0)) },
        "action conclusion"
    );

    // Concurrent action argument for the last step.
    let c = build_concurrent_argument(&problem, &trace, 3).map_err(|e| e.to_string())?;
    ensure!(c.scheme == SchemeKind::ConcurrentAction && c.premises.len() == 5, "concurrent shape");
    ensure!(stack_ca.pre == written_atoms("ONTABLE(C) ∧ CLEAR(C) ∧ CLEAR(A)"), "pre(STACK(C,A))");
    ensure!(stack_db.pre == written_atoms("ONTABLE(D) ∧ CLEAR(D) ∧ CLEAR(B)"), "pre(STACK(D,B))");
    let both: BTreeSet<GroundAction> = [stack_ca.clone(), stack_db.clone()].into();
    match claim(&c, 1) {
        Claim::Preconditions { actions, state } => ensure!(
            actions.iter().cloned().collect::<BTreeSet<_>>() == both && state.state == written_state(S3),
            "concurrent premise 1"
        ),
        x => return Err(format!("concurrent premise 1: {x:?}")),
    }
    match claim(&c, 2) {
        Claim::Interleaved { state, pairs } => {
            ensure!(state.state == written_state(S3), "concurrent premise 2 state");
            let shown = pairs.iter().find(|p| p.first == stack_ca && p.other == stack_db);
            ensure!(shown.is_some_and(|p| p.after == written_state(S3_MID)), "concurrent premise 2 pair");
            ensure!(pairs.iter().all(|p| p.other.pre.iter().all(|x| p.after.contains(x))), "the other precondition holds after each first action");
        }
        x => return Err(format!("concurrent premise 2: {x:?}")),
    }
    match claim(&c, 3) {
        Claim::Transition(t) => ensure!(
            t.from.state == written_state(S3_MID) && t.step == PlanStep::Single(stack_db.clone()) && t.to.state == written_state(S4),
            "concurrent premise 3: {t:?}"
        ),
        x => return Err(format!("concurrent premise 3: {x:?}")),
    }
    let g_set = written_goals("ON(C,A) ∧ ON(D,B)");
    match claim(&c, 4) {
        Claim::Holds { outcome, state } => {
            ensure!(outcome_goals(outcome) == Some(&g_set) && state.state == written_state(S4), "concurrent premise 4")
        }
        x => return Err(format!("concurrent premise 4: {x:?}")),
    }
    match claim(&c, 5) {
        Claim::Achieves { achiever: Achiever::Step { step, .. }, outcome } => ensure!(
            step.actions().iter().cloned().collect::<BTreeSet<_>>() == both && outcome_goals(outcome) == Some(&g_set),
            "concurrent premise 5"
        ),
        x => return Err(format!("concurrent premise 5: {x:?}")),
    }
    match &c.conclusion {
        Conclusion::ExecuteConcurrent { actions, state } => ensure!(
            actions.iter().cloned().collect::<BTreeSet<_>>() == both && state.state == written_state(S3),
            "concurrent conclusion"
        ),
        x => return Err(format!("concurrent conclusion: {x:?}")),
    }

    // State transition argument for the state after the first step.
    let s = build_state_argument(&trace, 1).map_err(|e| e.to_string())?;
    let s = s.argument().ok_or("state 1 has no argument")?;
    match claim(s, 1) {
        Claim::Expansion { transition, deleted, added } => {
            ensure!(transition.from.state == written_state(S0), "state premise from");
            ensure!(transition.step == PlanStep::Single(unstack_ab.clone()), "state premise action");
            ensure!(deleted == &written_atoms("ON(A,B)"), "post(a)- = {deleted:?}");
            ensure!(added == &written_atoms("ONTABLE(A) ∧ CLEAR(B)"), "post(a)+ = {added:?}");
            ensure!(transition.to.state == written_state(S1), "state premise result");
        }
        x => return Err(format!("state premise: {x:?}")),
    }
    ensure!(matches!(&s.conclusion, Conclusion::StateTrue { state } if state.state == written_state(S1)), "state conclusion");

    // Goal argument for ONTABLE(A).
    let goal = Goal::atom(written_atoms("ONTABLE(A)").into_iter().next().unwrap());
    let g = match build_goal_argument(&problem, &trace, &goal, 10).map_err(|e| e.to_string())? {
        Explanation::Argument(g) => g,
        other => return Err(format!("goal explanation: {other:?}")),
    };
    ensure!(g.scheme == SchemeKind::Goal && g.premises.len() == 2, "goal shape");
    match claim(&g, 1) {
        Claim::Transition(t) => ensure!(
            t.from.state == written_state(S0) && t.step == PlanStep::Single(unstack_ab.clone()) && t.to.state == written_state(S1),
            "goal premise 1"
        ),
        x => return Err(format!("goal premise 1: {x:?}")),
    }
    match claim(&g, 2) {
        Claim::Holds { outcome, state } => {
            ensure!(outcome_goals(outcome) == Some(&g_ontable_a) && state.state == written_state(S1), "goal premise 2")
        }
        x => return Err(format!("goal premise 2: {x:?}")),
    }
    ensure!(
        matches!(&g.conclusion, Conclusion::Achieve { step, goal: cg, .. } if step == &PlanStep::Single(unstack_ab.clone()) && cg == &goal),
        "goal conclusion"
    );

    // Plan summary argument.
    let p = build_plan_summary_argument(&problem, &plan).map_err(|e| e.to_string())?;
    ensure!(p.scheme == SchemeKind::PlanSummary && p.premises.len() == 3, "summary shape");
    let expected_plan = [
        vec![unstack_ab.clone()],
        vec![action(&problem, "UNSTACK", &["B", "C"])],
        vec![action(&problem, "UNSTACK", &["C", "D"])],
        vec![stack_ca.clone(), stack_db.clone()],
    ];
    match claim(&p, 1) {
        Claim::Chain { initial, transitions } => {
            ensure!(initial.state == written_state(S0), "summary initial");
            let states = [S0, S1, S2, S3, S4].map(written_state);
            ensure!(transitions.len() == 4, "summary transitions");
            for (i, t) in transitions.iter().enumerate() {
                ensure!(t.from.state == states[i] && t.to.state == states[i + 1], "summary transition {i}");
                let acts: BTreeSet<GroundAction> = t.step.actions().iter().cloned().collect();
                ensure!(acts == expected_plan[i].iter().cloned().collect(), "summary step {i}");
            }
        }
        x => return Err(format!("summary premise 1: {x:?}")),
    }
    let all = written_goals(GOALS);
    match claim(&p, 2) {
        Claim::Holds { outcome, state } => {
            ensure!(outcome_goals(outcome) == Some(&all) && state.state == written_state(S4), "summary premise 2")
        }
        x => return Err(format!("summary premise 2: {x:?}")),
    }
    match claim(&p, 3) {
        Claim::Achieves { achiever: Achiever::Plan(pl), outcome } => {
            ensure!(pl == &plan && outcome_goals(outcome) == Some(&all), "summary premise 3")
        }
        x => return Err(format!("summary premise 3: {x:?}")),
    }
    ensure!(matches!(&p.conclusion, Conclusion::Solution { plan: pl, .. } if pl == &plan), "summary conclusion");
    Ok(())
}

fn solution_check() -> Check {
    let (problem, plan) = blocks();
    let v = check_solution(&problem, &plan);
    ensure!(v.is_solution && v.failures.is_empty(), "example plan rejected: {:?}", v.failures);
    ensure!(v.satisfied_goals == written_goals(GOALS), "G_pi = {:?}", v.satisfied_goals);

    let mut swapped = plan.clone();
    swapped.steps.swap(0, 1);
    let v = check_solution(&problem, &swapped);
    ensure!(!v.is_solution, "swapped plan accepted");
    let f = v.failures_for(Condition::Applicability).next().ok_or("no condition 2 failure")?;
    match &f.site {
        Site::Step { index: 0, failure, .. } => {
            ensure!(failure.missing() == written_atoms("CLEAR(B)"), "missing {:?}", failure.missing())
        }
        other => return Err(format!("site {other:?}")),
    }
    Ok(())
}

/// Iterates F(S) = {a : every attacker of a is attacked by S} from the empty set.
fn naive_grounded(af: &Framework) -> BTreeSet<usize> {
    let n = af.len();
    let mut s = BTreeSet::new();
    loop {
        let next: BTreeSet<usize> = (0..n)
            .filter(|&a| af.attackers(a).iter().all(|&b| af.attackers(b).iter().any(|c| s.contains(c))))
            .collect();
        if next == s {
            return s;
        }
        s = next;
    }
}

fn properties_suite() -> Check {
    let (problem, plan) = blocks();
    let mut session = Session::new(problem, plan);
    let failures = session.explore_all();
    ensure!(failures.is_empty(), "unanswerable questions: {failures:?}");
    ensure!(!session.questions().is_empty(), "nothing was asked");
    let ext = naive_grounded(session.framework());
    for (i, node) in session.nodes().iter().enumerate() {
        match node {
            NodeId::Arg(_) => ensure!(ext.contains(&i), "argument {node:?} not in the extension"),
            NodeId::Cq(_) => ensure!(!ext.contains(&i), "question {node:?} in the extension"),
        }
    }
    let r = session.check_properties(false).map_err(|e| e.to_string())?;
    ensure!(r.complete && r.summary_accepted && r.goals_consistent, "{r:?}");
    Ok(())
}

fn random_af(rng: &mut StdRng) -> Framework {
    let n = rng.random_range(0..=12);
    let mut af = Framework::new(n);
    if n > 0 {
        for _ in 0..rng.random_range(0..=3 * n) {
            af.add_attack(rng.random_range(0..n), rng.random_range(0..n));
        }
    }
    af
}

fn grounded_oracle() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    let compare = |af: &Framework, what: &str| -> Check {
        let ours = af.grounded().in_set();
        let oracle = naive_grounded(af);
        ensure!(ours == oracle, "{what}: {ours:?} != {oracle:?}");
        Ok(())
    };
    for i in 0..500 {
        compare(&random_af(&mut rng), &format!("random AF {i}"))?;
    }
    // Every framework a blocks session passes through, one question at a time.
    let (problem, plan) = blocks();
    let mut session = Session::new(problem, plan);
    let mut sessions = 1;
    compare(session.framework(), "fresh session")?;
    loop {
        let pending = session.unanswered().into_iter().next();
        if let Some(q) = pending {
            session.answer(q).map_err(|e| e.to_string())?;
        } else {
            let next = session.arguments().iter().find_map(|a| {
                session.available(a.id).ok()?.into_iter().find(|(_, asked)| asked.is_none()).map(|(c, _)| (a.id, c))
            });
            let Some((target, cand)) = next else { break };
            session.ask(target, &cand.subject).map_err(|e| e.to_string())?;
        }
        sessions += 1;
        compare(session.framework(), &format!("session step {sessions}"))?;
    }
    ensure!(sessions > 20, "only {sessions} session frameworks");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    Ok(())
}

const UNIVERSE: [&str; 6] = ["P(A)", "P(B)", "Q(A)", "Q(B)", "R(A,B)", "R(B,A)"];

fn atoms_of(mask: u8) -> BTreeSet<Atom> {
    (0..UNIVERSE.len()).filter(|i| mask & (1 << i) != 0).flat_map(|i| written_atoms(UNIVERSE[i])).collect()
}

fn random_action(rng: &mut StdRng, name: &str) -> GroundAction {
    let sparse = |rng: &mut StdRng| rng.random::<u8>() & rng.random::<u8>() & 0x3f;
    let (pre, add, del) = (sparse(rng), sparse(rng), sparse(rng));
    GroundAction::new(name, [""; 0], atoms_of(pre), atoms_of(add & !del), atoms_of(del)).unwrap()
}

fn apply(s: &BTreeSet<Atom>, a: &GroundAction) -> BTreeSet<Atom> {
    s.difference(&a.del).chain(a.add.iter()).cloned().collect()
}

fn orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    orders(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..=p.len()).map(move |i| {
                let mut q = p.clone();
                q.insert(i, n - 1);
                q
            })
        })
        .collect()
}

/// Preconditions hold, no action adds what another deletes, and no action
/// deletes another's preconditions.
fn oracle_consistent(s: &BTreeSet<Atom>, acts: &[GroundAction]) -> bool {
    acts.iter().all(|a| a.pre.is_subset(s))
        && acts.iter().enumerate().all(|(i, a)| {
            acts.iter().enumerate().filter(|(j, _)| *j != i).all(|(_, b)| a.add.is_disjoint(&b.del) && a.del.is_disjoint(&b.pre))
        })
}

fn clause_holds(s: &BTreeSet<Atom>, v: &Violation) -> bool {
    match v {
        Violation::NotApplicable { action, missing } => {
            !missing.is_empty() && missing.iter().all(|x| action.pre.contains(x) && !s.contains(x))
        }
        Violation::ConflictingEffects { adder, deleter, atoms } => {
            adder != deleter && !atoms.is_empty() && atoms.iter().all(|x| adder.add.contains(x) && deleter.del.contains(x))
        }
        Violation::ClobbersPrecondition { deleter, needer, atoms } => {
            deleter != needer && !atoms.is_empty() && atoms.iter().all(|x| deleter.del.contains(x) && needer.pre.contains(x))
        }
    }
}

fn concurrency_algebra() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let (mut consistent, mut inconsistent) = (0, 0);
    let mut clauses = BTreeSet::new();
    for case in 0..20_000 {
        if consistent >= 250 && inconsistent >= 250 {
            break;
        }
        let s = atoms_of(rng.random());
        let size = rng.random_range(2..=4);
        let acts: Vec<GroundAction> = (0..size).map(|i| random_action(&mut rng, &format!("a{i}"))).collect();
        let step = PlanStep::concurrent(acts.clone()).map_err(|e| e.to_string())?;
        let state: State = s.iter().cloned().collect();
        let report = concurrent_consistent(&state, &acts);
        let expected = oracle_consistent(&s, &acts);
        ensure!(report.is_consistent() == expected, "case {case}: consistency {report} but oracle says {expected}");
        if expected {
            consistent += 1;
            let finals: BTreeSet<BTreeSet<Atom>> =
                orders(acts.len()).into_iter().map(|o| o.into_iter().fold(s.clone(), |cur, i| apply(&cur, &acts[i]))).collect();
            ensure!(finals.len() == 1, "case {case}: orders disagree");
            let ours: BTreeSet<Atom> = transition_step(&state, &step).map_err(|e| e.to_string())?.iter().cloned().collect();
            ensure!(finals.contains(&ours), "case {case}: executed state differs");
        } else {
            inconsistent += 1;
            match transition_step(&state, &step) {
                Err(StepFailure::Inconsistent(c)) => {
                    ensure!(!c.violations.is_empty(), "case {case}: empty diagnosis");
                    for v in &c.violations {
                        ensure!(clause_holds(&s, v), "case {case}: bogus clause {v}");
                        clauses.insert(v.clause());
                    }
                }
                other => return Err(format!("case {case}: inconsistent set not rejected: {other:?}")),
            }
        }
    }
    ensure!(consistent >= 200 && inconsistent >= 200, "{consistent} consistent, {inconsistent} inconsistent");
    ensure!(clauses.len() == 3, "clauses seen: {clauses:?}");
    Ok(())
}

fn parser_round_trips() -> Check {
    let dom = parse_domain(&fixture("domain.pddl")).map_err(|e| e.to_string())?;
    let prob = parse_problem(&fixture("problem.pddl"), &dom).map_err(|e| e.to_string())?;
    ensure!(parse_domain(&domain_to_pddl(&dom)).as_ref() == Ok(&dom), "domain fixture");
    ensure!(parse_problem(&problem_to_pddl(&prob), &dom).as_ref() == Ok(&prob), "problem fixture");
    let grounded = ground(&dom, &prob, &GroundOptions::default()).map_err(|e| e.to_string())?;
    let plan = parse_plan(&fixture("plan.txt"), &grounded).map_err(|e| e.to_string())?;
    ensure!(plan_to_text(&plan) == fixture("plan.txt"), "plan fixture text");
    ensure!(parse_plan(&plan_to_text(&plan), &grounded).as_ref() == Ok(&plan), "plan fixture");

    for seed in 0..150u64 {
        let g = common::generate(seed);
        let dom = parse_domain(&g.domain).map_err(|e| format!("seed {seed}: {e}"))?;
        let dtext = domain_to_pddl(&dom);
        ensure!(parse_domain(&dtext).as_ref() == Ok(&dom), "seed {seed}: domain");
        let prob = parse_problem(&g.problem, &dom).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure!(parse_problem(&problem_to_pddl(&prob), &dom).as_ref() == Ok(&prob), "seed {seed}: problem");
        let grounded = ground(&dom, &prob, &GroundOptions::default()).map_err(|e| e.to_string())?;
        let plan = common::random_plan(&grounded, seed);
        ensure!(parse_plan(&plan_to_text(&plan), &grounded).as_ref() == Ok(&plan), "seed {seed}: plan");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("blocks-world trace", blocks_trace),
        ("scheme goldens", scheme_goldens),
        ("solution check", solution_check),
        ("properties suite", properties_suite),
        ("grounded oracle equivalence", grounded_oracle),
        ("concurrency algebra", concurrency_algebra),
        ("parser round-trips", parser_round_trips),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match std::panic::catch_unwind(check) {
            Ok(Ok(())) => println!("PASS {name}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {name}: panicked");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
