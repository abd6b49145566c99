use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::argument::*;
use crate::planning::{
    achieved_goals, check_solution_with_trace, concurrent_consistent, goal_feasible, transition, Consistency,
    Goal, GoalChoice, Literal, Plan, PlanStep, PlanningProblem, SolutionVerdict, Trace, DEFAULT_SEARCH_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StepShape {
    Single,
    Concurrent,
}

impl fmt::Display for StepShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepShape::Single => "a single action",
            StepShape::Concurrent => "a concurrent action set",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeError {
    StepOutOfRange { index: usize, steps: usize },
    StateOutOfRange { index: usize, states: usize },
    /// The step has the wrong shape for the requested scheme.
    WrongScheme { index: usize, expected: StepShape },
    /// The step neither achieves a goal nor enables a later step.
    NoJustification { index: usize },
    /// The requested goal choice is not among the step's achievements.
    InvalidChoice { index: usize, choice: GoalChoice },
    Inconsistent { index: usize, report: Consistency },
    /// No state of the trace is reached in which the goal holds.
    NoAchiever { goal: Goal, nearest_missing: BTreeSet<Literal>, feasible: Option<bool> },
    NotASolution(SolutionVerdict),
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeError::StepOutOfRange { index, steps } => {
                write!(f, "step {index} does not exist (the plan has {steps} step(s))")
            }
            SchemeError::StateOutOfRange { index, states } => {
                write!(f, "state {index} does not exist (the trace has {states} state(s))")
            }
            SchemeError::WrongScheme { index, expected } => {
                write!(f, "step {index} is not {expected}")
            }
            SchemeError::NoJustification { index } => {
                write!(f, "step {index} achieves no goal and enables no later step")
            }
            SchemeError::InvalidChoice { index, choice } => {
                write!(f, "step {index} does not achieve {choice:?}")
            }
            SchemeError::Inconsistent { index, report } => {
                write!(f, "concurrent step {index} is inconsistent: {report}")
            }
            SchemeError::NoAchiever { goal, nearest_missing, feasible } => {
                write!(f, "no step of the plan achieves {goal}; closest state misses ")?;
                crate::planning::write_conjunction(f, nearest_missing.iter())?;
                match feasible {
                    Some(true) => f.write_str(" (the goal is feasible)"),
                    Some(false) => f.write_str(" (the goal is not feasible within the search bound)"),
                    None => f.write_str(" (feasibility unknown: search budget exceeded)"),
                }
            }
            SchemeError::NotASolution(v) => {
                f.write_str("the plan is not a solution")?;
                for failure in &v.failures {
                    write!(f, "; {failure}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SchemeError {}

fn record_step(trace: &Trace, index: usize) -> Result<&PlanStep, SchemeError> {
    trace
        .records
        .get(index)
        .map(|r| &r.step)
        .ok_or(SchemeError::StepOutOfRange { index, steps: trace.steps() })
}

fn transition_at(trace: &Trace, index: usize) -> Transition {
    Transition {
        from: StateRef::at(index, trace.states[index].clone()),
        step: trace.records[index].step.clone(),
        to: StateRef::at(index + 1, trace.states[index + 1].clone()),
    }
}

/// Explains why the single action at step `index` should be executed.
///
/// `choice` selects the goal cited in premises 3 and 4; `None` picks the
/// first directly achieved goal, falling back to an enabling justification.
pub fn build_action_argument(
    problem: &PlanningProblem,
    trace: &Trace,
    index: usize,
    choice: Option<&GoalChoice>,
) -> Result<Argument, SchemeError> {
    let action = match record_step(trace, index)? {
        PlanStep::Single(a) => a.clone(),
        PlanStep::Concurrent(_) => {
            return Err(SchemeError::WrongScheme { index, expected: StepShape::Single })
        }
    };
    let achievements = achieved_goals(problem, trace, index).expect("index checked");
    let choice = match choice {
        Some(c) if achievements.contains(c) => c.clone(),
        Some(c) => return Err(SchemeError::InvalidChoice { index, choice: c.clone() }),
        None => achievements.default_choice().ok_or(SchemeError::NoJustification { index })?,
    };
    let outcome = match choice {
        GoalChoice::Direct(g) => Outcome::Goals([g].into_iter().collect()),
        GoalChoice::Enabling(e) => Outcome::Enabling(alloc::vec![e]),
    };
    let t = transition_at(trace, index);
    let claims = alloc::vec![
        Claim::Preconditions { actions: alloc::vec![action.clone()], state: t.from.clone() },
        Claim::Transition(t.clone()),
        Claim::Holds { outcome: outcome.clone(), state: t.to.clone() },
        Claim::Achieves { achiever: Achiever::Step { index, step: t.step.clone() }, outcome },
    ];
    Ok(Argument::new(
        SchemeKind::Action,
        Subject::Step(index),
        claims,
        Conclusion::Execute { action, state: t.from },
    ))
}

/// Explains why the concurrent set at step `index` should be executed.
pub fn build_concurrent_argument(
    problem: &PlanningProblem,
    trace: &Trace,
    index: usize,
) -> Result<Argument, SchemeError> {
    let actions = match record_step(trace, index)? {
        PlanStep::Concurrent(v) => v.clone(),
        PlanStep::Single(_) => {
            return Err(SchemeError::WrongScheme { index, expected: StepShape::Concurrent })
        }
    };
    let t = transition_at(trace, index);
    let start = &t.from.state;
    let report = concurrent_consistent(start, &actions);
    if !report.is_consistent() {
        return Err(SchemeError::Inconsistent { index, report });
    }

    let mut pairs = Vec::new();
    for first in &actions {
        let after = transition(start, first).expect("consistent sets are applicable");
        for other in actions.iter().filter(|o| *o != first) {
            pairs.push(Interleaving { first: first.clone(), other: other.clone(), after: after.clone() });
        }
    }
    pairs.sort();

    // The lexicographically last action closes the set; the others run first.
    let (last, rest) = actions.split_last().expect("concurrent sets have at least two actions");
    let penultimate = rest.iter().fold(start.clone(), |s, a| transition(&s, a).expect("consistent"));

    let goals: BTreeSet<Goal> = problem
        .goals
        .iter()
        .filter(|g| g.holds_in(&t.to.state) && !g.holds_in(start))
        .cloned()
        .collect();
    let outcome = if goals.is_empty() {
        let achievements = achieved_goals(problem, trace, index).expect("index checked");
        if achievements.enabling.is_empty() {
            return Err(SchemeError::NoJustification { index });
        }
        Outcome::Enabling(achievements.enabling)
    } else {
        Outcome::Goals(goals)
    };

    let claims = alloc::vec![
        Claim::Preconditions { actions: actions.clone(), state: t.from.clone() },
        Claim::Interleaved { state: t.from.clone(), pairs },
        Claim::Transition(Transition {
            from: StateRef::intermediate(penultimate),
            step: PlanStep::Single(last.clone()),
            to: t.to.clone(),
        }),
        Claim::Holds { outcome: outcome.clone(), state: t.to.clone() },
        Claim::Achieves { achiever: Achiever::Step { index, step: t.step.clone() }, outcome },
    ];
    Ok(Argument::new(
        SchemeKind::ConcurrentAction,
        Subject::Step(index),
        claims,
        Conclusion::ExecuteConcurrent { actions, state: t.from },
    ))
}

/// Explains how state `index` comes about. State 0 yields
/// [`Explanation::InitialState`].
pub fn build_state_argument(trace: &Trace, index: usize) -> Result<Explanation, SchemeError> {
    if index >= trace.states.len() {
        return Err(SchemeError::StateOutOfRange { index, states: trace.states.len() });
    }
    if index == 0 {
        return Ok(Explanation::InitialState { state: trace.states[0].clone() });
    }
    let t = transition_at(trace, index - 1);
    let record = &trace.records[index - 1];
    let claims = alloc::vec![Claim::Expansion {
        transition: t.clone(),
        deleted: record.deleted.clone(),
        added: record.added.clone(),
    }];
    Ok(Argument::new(SchemeKind::StateTransition, Subject::State(index), claims, Conclusion::StateTrue { state: t.to })
        .into())
}

/// Explains which step achieves `goal`, citing the earliest step after which
/// it holds. A goal that holds initially and is never lost yields
/// [`Explanation::HoldsInitially`].
///
/// When no step achieves the goal, a bounded search (`bound` steps) reports
/// whether the goal is feasible at all.
pub fn build_goal_argument(
    problem: &PlanningProblem,
    trace: &Trace,
    goal: &Goal,
    bound: usize,
) -> Result<Explanation, SchemeError> {
    let holds: Vec<bool> = trace.states.iter().map(|s| goal.holds_in(s)).collect();
    if holds.iter().all(|h| *h) {
        return Ok(Explanation::HoldsInitially { goal: goal.clone(), state: trace.states[0].clone() });
    }
    let Some(index) = (0..trace.steps()).find(|&i| !holds[i] && holds[i + 1]) else {
        let nearest_missing = trace
            .states
            .iter()
            .map(|s| goal.unmet(s).cloned().collect::<BTreeSet<Literal>>())
            .min_by_key(|m| m.len())
            .unwrap_or_default();
        let feasible = goal_feasible(problem, goal, bound, DEFAULT_SEARCH_BUDGET).ok();
        return Err(SchemeError::NoAchiever { goal: goal.clone(), nearest_missing, feasible });
    };
    let t = transition_at(trace, index);
    let claims = alloc::vec![
        Claim::Transition(t.clone()),
        Claim::Holds { outcome: Outcome::Goals([goal.clone()].into_iter().collect()), state: t.to },
    ];
    Ok(Argument::new(
        SchemeKind::Goal,
        Subject::Goal(goal.clone()),
        claims,
        Conclusion::Achieve { index, step: t.step, goal: goal.clone() },
    )
    .into())
}

/// Explains why `plan` solves `problem`. Fails with the verdict when it does not.
pub fn build_plan_summary_argument(problem: &PlanningProblem, plan: &Plan) -> Result<Argument, SchemeError> {
    let (verdict, trace) = check_solution_with_trace(problem, plan);
    let trace = match trace {
        Some(t) if verdict.is_solution => t,
        _ => return Err(SchemeError::NotASolution(verdict)),
    };
    Ok(summary_from_trace(problem, &trace, verdict.satisfied_goals))
}

pub(crate) fn summary_from_trace(problem: &PlanningProblem, trace: &Trace, goals: BTreeSet<Goal>) -> Argument {
    let last = trace.states.len() - 1;
    let final_state = StateRef::at(last, trace.last().clone());
    let transitions = (0..trace.steps()).map(|i| transition_at(trace, i)).collect();
    let outcome = Outcome::Goals(goals);
    let plan = trace.plan();
    let claims = alloc::vec![
        Claim::Chain { initial: StateRef::at(0, trace.states[0].clone()), transitions },
        Claim::Holds { outcome: outcome.clone(), state: final_state },
        Claim::Achieves { achiever: Achiever::Plan(plan.clone()), outcome },
    ];
    Argument::new(
        SchemeKind::PlanSummary,
        Subject::Plan,
        claims,
        Conclusion::Solution { plan, problem: String::from(problem.name.as_str()) },
    )
}
