use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::argument::*;
use crate::planning::{write_conjunction, GoalSet, GroundAction, PlanStep};

/// Displays items joined with `∧`, or `∅` when there are none.
struct Conj<I>(I);

impl<I, T> fmt::Display for Conj<I>
where
    I: Iterator<Item = T> + Clone,
    T: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_conjunction(f, self.0.clone())
    }
}

fn pre(a: &GroundAction) -> Conj<alloc::collections::btree_set::Iter<'_, crate::planning::Atom>> {
    Conj(a.pre.iter())
}

fn outcome_formal(o: &Outcome) -> String {
    match o {
        Outcome::Goals(gs) if gs.len() == 1 => format!("{}", gs.iter().next().unwrap()),
        Outcome::Goals(gs) => format!("{}", GoalSet(gs)),
        Outcome::Enabling(_) => format!("{}", Conj(o.literals().iter())),
    }
}

fn enabling_list(o: &Outcome) -> String {
    match o {
        Outcome::Enabling(es) => es.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join(", "),
        Outcome::Goals(_) => String::new(),
    }
}

/// "action UNSTACK(A,B)" or "all the concurrent actions in the set {…}".
fn step_phrase(step: &PlanStep) -> String {
    match step {
        PlanStep::Single(a) => format!("the action {a}"),
        PlanStep::Concurrent(_) => format!("all the concurrent actions in the set {step}"),
    }
}

fn results(step: &PlanStep) -> &'static str {
    if step.is_concurrent() {
        "that result in"
    } else {
        "that results in"
    }
}

/// Formal notation of a premise, e.g. `Hold(CLEAR(A) ∧ ON(A,B), …)`.
pub fn premise_formal(premise: &Premise) -> String {
    match &premise.claim {
        Claim::Preconditions { actions, state } => actions
            .iter()
            .map(|a| format!("Hold({}, {})", pre(a), state.state))
            .collect::<Vec<_>>()
            .join(" ∧ "),
        Claim::Transition(t) => format!("γ({}, {}) = {}", t.from.state, t.step, t.to.state),
        Claim::Expansion { transition: t, deleted, added } => format!(
            "γ({}, {}) = ({} \\ {{{}}}) ∪ {{{}}} = {}",
            t.from.state,
            t.step,
            t.from.state,
            list(deleted.iter()),
            list(added.iter()),
            t.to.state
        ),
        Claim::Interleaved { state, pairs } => pairs
            .iter()
            .map(|p| format!("γ({}, {}) = {} ∧ Hold({}, {})", state.state, p.first, p.after, pre(&p.other), p.after))
            .collect::<Vec<_>>()
            .join(" ∧ "),
        Claim::Chain { initial, transitions } => {
            if transitions.is_empty() {
                format!("S = {}", initial.state)
            } else {
                transitions
                    .iter()
                    .map(|t| format!("γ({}, {}) = {}", t.from.state, t.step, t.to.state))
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        }
        Claim::Holds { outcome, state } => format!("Hold({}, {})", outcome_formal(outcome), state.state),
        Claim::Achieves { achiever, outcome } => {
            let who = match achiever {
                Achiever::Step { step, .. } => format!("{step}"),
                Achiever::Plan(p) => format!("{p}"),
            };
            format!("Achieve({who}, {})", outcome_formal(outcome))
        }
    }
}

fn list<T: fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|i| format!("{i}")).collect::<Vec<_>>().join(", ")
}

/// The English sentence for one premise of an argument of kind `scheme`.
pub fn premise_text(scheme: SchemeKind, premise: &Premise) -> String {
    match &premise.claim {
        Claim::Preconditions { actions, state } => {
            let parts: Vec<String> =
                actions.iter().map(|a| format!("the pre-condition {} of action {a} holds", pre(a))).collect();
            format!("In the current state {}, {}.", state.state, parts.join(" and "))
        }
        Claim::Transition(t) => match scheme {
            SchemeKind::Action => format!(
                "When we execute action {} in the current state {}, it results in the next state {}.",
                t.step, t.from.state, t.to.state
            ),
            SchemeKind::ConcurrentAction => format!(
                "When we execute the last concurrent action {} in the state {}, it results in the next state {}.",
                t.step, t.from.state, t.to.state
            ),
            _ => format!(
                "In the current state {}, we should execute {}, {} the next state {}.",
                t.from.state,
                step_phrase(&t.step),
                results(&t.step),
                t.to.state
            ),
        },
        Claim::Expansion { transition: t, deleted, added } => format!(
            "In the current state {}, we should execute {} by deleting the negative postconditions {} and adding \
             the positive postconditions {} to the current state {}, that results in the state {}.",
            t.from.state,
            step_phrase(&t.step),
            Conj(deleted.iter()),
            Conj(added.iter()),
            t.from.state,
            t.to.state
        ),
        Claim::Interleaved { state, pairs } => {
            if pairs.is_empty() {
                return String::from("There is no pair of distinct concurrent actions to interleave.");
            }
            pairs
                .iter()
                .map(|p| {
                    format!(
                        "When we execute the concurrent action {} in the state {}, it results in the next state {}, \
                         and the precondition {} of the other concurrent action {} holds in the next state {}.",
                        p.first,
                        state.state,
                        p.after,
                        pre(&p.other),
                        p.other,
                        p.after
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
        Claim::Chain { initial, transitions } => {
            if transitions.is_empty() {
                return format!(
                    "The initial state {} is already the goal state, so no action needs to be executed.",
                    initial.state
                );
            }
            let last = transitions.len() - 1;
            transitions
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let from = if i == 0 { "In the initial state" } else { "In the state" };
                    let to = if i == last { "the goal state" } else { "the next state" };
                    format!("{from} {}, we should execute {} {} {to} {}.", t.from.state, step_phrase(&t.step), results(&t.step), t.to.state)
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
        Claim::Holds { outcome, state } => {
            match outcome {
                Outcome::Goals(gs) if scheme == SchemeKind::PlanSummary => {
                    format!("In the goal state {}, all the goals in the set of goals {} hold.", state.state, GoalSet(gs))
                }
                Outcome::Goals(gs) if gs.len() == 1 => {
                    format!("In the next state {}, the goal {} holds.", state.state, gs.iter().next().unwrap())
                }
                Outcome::Goals(gs) => {
                    format!("In the next state {}, the set of goals {} holds.", state.state, GoalSet(gs))
                }
                Outcome::Enabling(_) => format!(
                    "In the next state {}, {} holds.",
                    state.state,
                    Conj(outcome.literals().iter())
                ),
            }
        }
        Claim::Achieves { achiever, outcome } => {
            let who = match achiever {
                Achiever::Step { step: PlanStep::Single(a), .. } => format!("Action {a}"),
                Achiever::Step { step, .. } => format!("The set of concurrent actions {step}"),
                Achiever::Plan(p) => format!("The sequence of actions {p}"),
            };
            match outcome {
                Outcome::Goals(gs) if matches!(achiever, Achiever::Plan(_)) => {
                    format!("{who} achieves the set of all goals {}.", GoalSet(gs))
                }
                Outcome::Goals(gs) if gs.len() == 1 && !matches!(achiever, Achiever::Step { step: PlanStep::Concurrent(_), .. }) => {
                    format!("{who} achieves goal {}.", gs.iter().next().unwrap())
                }
                Outcome::Goals(gs) => format!("{who} achieves the set of goals {}.", GoalSet(gs)),
                Outcome::Enabling(_) => format!(
                    "{who} achieves no goal by itself; it is justified because it enables {}.",
                    enabling_list(outcome)
                ),
            }
        }
    }
}

pub fn conclusion_formal(c: &Conclusion) -> String {
    match c {
        Conclusion::Execute { action, state } => format!("Execute({action}, {})", state.state),
        Conclusion::ExecuteConcurrent { actions, state } => {
            format!("ExecuteC({{{}}}, {})", list(actions.iter()), state.state)
        }
        Conclusion::StateTrue { state } => format!("True({})", state.state),
        Conclusion::Achieve { step, goal, .. } => format!("Achieve({step}, {goal})"),
        Conclusion::Solution { plan, problem } => format!("Solution({plan}, {problem})"),
    }
}

pub fn conclusion_text(c: &Conclusion) -> String {
    match c {
        Conclusion::Execute { action, state } => {
            format!("Therefore, we should execute action {action} in the current state {}.", state.state)
        }
        Conclusion::ExecuteConcurrent { actions, state } => format!(
            "Therefore, we should execute all the concurrent actions in the set {{{}}} in the current state {}.",
            list(actions.iter()),
            state.state
        ),
        Conclusion::StateTrue { state } => format!("Therefore, the state {} is true.", state.state),
        Conclusion::Achieve { step: PlanStep::Single(a), goal, .. } => {
            format!("Therefore, the action {a} achieves the goal {goal}.")
        }
        Conclusion::Achieve { step, goal, .. } => {
            format!("Therefore, the set of concurrent actions {step} achieves the goal {goal}.")
        }
        Conclusion::Solution { plan, problem } => {
            format!("Therefore, {plan} is a solution to the planning problem {problem}.")
        }
    }
}

/// Both notations of one premise: `Premise n: <formal>` then the sentence.
pub fn render_premise(scheme: SchemeKind, premise: &Premise) -> String {
    format!("Premise {}: {}\n  {}", premise.index, premise_formal(premise), premise_text(scheme, premise))
}

/// Multi-line rendering of an argument, premise by premise.
pub fn render_argument(arg: &Argument) -> String {
    let mut out = format!("{} for {}\n", arg.scheme.title(), arg.subject);
    for p in &arg.premises {
        out.push_str(&render_premise(arg.scheme, p));
        out.push('\n');
    }
    out.push_str(&format!("Conclusion: {}\n  {}\n", conclusion_formal(&arg.conclusion), conclusion_text(&arg.conclusion)));
    out
}

pub fn render_explanation(e: &Explanation) -> String {
    match e {
        Explanation::Argument(a) => render_argument(a),
        Explanation::InitialState { state } => {
            format!("State {state} is true by the initial state; no action is needed to reach it.\n")
        }
        Explanation::HoldsInitially { goal, state } => format!(
            "The goal {goal} is true by the initial state {state} and no step of the plan deletes it.\n"
        ),
    }
}

/// [`render_explanation`] prefixed by `[id]`, so texts of distinct session
/// nodes always differ.
pub fn render_with_id(id: &str, e: &Explanation) -> String {
    format!("[{id}] {}", render_explanation(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planning::{run_plan, Goal, GoalChoice};
    use crate::sample::{self, atom};
    use crate::schemes::{build_action_argument, build_goal_argument, build_plan_summary_argument, build_state_argument};

    #[test]
    fn action_text() {
        let p = sample::blocks_world();
        let t = run_plan(&p, &sample::solution_plan()).unwrap();
        let arg = build_action_argument(&p, &t, 0, None).unwrap();
        let text = render_argument(&arg);
        assert!(text.contains("we should execute action UNSTACK(A,B) in the current state"), "{text}");
        assert!(text.contains("the pre-condition CLEAR(A) ∧ ON(A,B) of action UNSTACK(A,B) holds"));
        assert!(text.contains("Action UNSTACK(A,B) achieves goal ONTABLE(A)."));
        assert_eq!(text, render_argument(&arg));
    }

    #[test]
    fn enabling_is_labelled() {
        let p = sample::blocks_world();
        let t = run_plan(&p, &sample::solution_plan()).unwrap();
        let choice = GoalChoice::Enabling(
            crate::planning::achieved_goals(&p, &t, 2).unwrap().enabling[0].clone(),
        );
        let arg = build_action_argument(&p, &t, 2, Some(&choice)).unwrap();
        assert!(render_argument(&arg).contains("achieves no goal by itself"));
    }

    #[test]
    fn degenerate_texts() {
        let p = sample::blocks_world();
        let t = run_plan(&p, &sample::solution_plan()).unwrap();
        let e = build_state_argument(&t, 0).unwrap();
        assert!(render_explanation(&e).contains("true by the initial state"));
        let g = build_goal_argument(&p, &t, &Goal::atom(atom("on d b")), 4).unwrap();
        assert!(render_explanation(&g).contains("the set of concurrent actions {STACK(C,A), STACK(D,B)} achieves the goal ON(D,B)"));
    }

    #[test]
    fn summary_text() {
        let p = sample::blocks_world();
        let arg = build_plan_summary_argument(&p, &sample::solution_plan()).unwrap();
        let text = render_argument(&arg);
        assert!(text.contains(
            "⟨UNSTACK(A,B), UNSTACK(B,C), UNSTACK(C,D), (STACK(C,A), STACK(D,B))⟩ is a solution to the planning problem"
        ));
        assert!(text.contains("that result in the goal state"));
        assert!(render_with_id("A1", &arg.clone().into()).starts_with("[A1] Plan summary argument"));
    }
}
