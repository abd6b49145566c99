use alloc::format;
use alloc::string::String;
use core::fmt;

use super::argument::*;
use crate::planning::{transition, transition_step, Enabling, Literal, PlanStep, PlanningProblem, State, Trace};

/// A premise (or the conclusion, `premise == 0`) that does not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unsound {
    pub premise: usize,
    pub reason: String,
}

impl fmt::Display for Unsound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.premise == 0 {
            write!(f, "conclusion: {}", self.reason)
        } else {
            write!(f, "premise {}: {}", self.premise, self.reason)
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Unsound {}

type Check = Result<(), String>;

fn ensure(ok: bool, reason: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(reason())
    }
}

fn in_trace(trace: &Trace, r: &StateRef) -> Check {
    match r.index {
        None => Ok(()),
        Some(i) => ensure(trace.states.get(i) == Some(&r.state), || format!("{} is not state {i} of the trace", r.state)),
    }
}

fn holds_literals<'a>(state: &State, lits: impl IntoIterator<Item = &'a Literal>) -> Check {
    for l in lits {
        ensure(state.satisfies(l), || format!("{l} does not hold in {state}"))?;
    }
    Ok(())
}

fn check_transition(trace: &Trace, t: &Transition) -> Check {
    in_trace(trace, &t.from)?;
    in_trace(trace, &t.to)?;
    let next = transition_step(&t.from.state, &t.step).map_err(|e| format!("{e}"))?;
    ensure(next == t.to.state, || format!("γ({}, {}) is {next}, not {}", t.from.state, t.step, t.to.state))?;
    if let (Some(i), Some(j)) = (t.from.index, t.to.index) {
        ensure(j == i + 1 && trace.records.get(i).map(|r| &r.step) == Some(&t.step), || {
            format!("{} is not step {i} of the trace", t.step)
        })?;
    }
    Ok(())
}

fn check_enabling(trace: &Trace, index: usize, e: &Enabling) -> Check {
    let record = &trace.records[index];
    match e {
        Enabling::Link(l) => {
            ensure(l.producer == index && record.added.contains(&l.atom), || format!("step {index} does not add {}", l.atom))?;
            let consumer = trace.records.get(l.consumer).filter(|_| l.consumer > index);
            ensure(
                consumer.is_some_and(|c| c.step.actions().contains(&l.consumer_action) && l.consumer_action.pre.contains(&l.atom)),
                || format!("{} is not required by a later step", l.atom),
            )
        }
        Enabling::Partial { produced, .. } => {
            for lit in produced {
                let made = if lit.negated { record.deleted.contains(&lit.atom) } else { record.added.contains(&lit.atom) };
                ensure(made, || format!("step {index} does not make {lit} true"))?;
            }
            Ok(())
        }
        Enabling::Preserved { goal } => {
            ensure(goal.holds_in(&trace.states[index + 1]), || format!("{goal} does not hold after step {index}"))
        }
    }
}

fn check_claim(problem: &PlanningProblem, trace: &Trace, claim: &Claim) -> Check {
    match claim {
        Claim::Preconditions { actions, state } => {
            in_trace(trace, state)?;
            for a in actions {
                ensure(state.state.contains_all(&a.pre), || format!("pre({a}) does not hold in {}", state.state))?;
            }
            Ok(())
        }
        Claim::Transition(t) => check_transition(trace, t),
        Claim::Expansion { transition: t, deleted, added } => {
            check_transition(trace, t)?;
            ensure(*deleted == t.step.del() && *added == t.step.add(), || format!("effects of {} misreported", t.step))?;
            ensure(t.from.state.apply(deleted, added) == t.to.state, || String::from("expansion does not match"))
        }
        Claim::Interleaved { state, pairs } => {
            in_trace(trace, state)?;
            for p in pairs {
                let after = transition(&state.state, &p.first).map_err(|e| format!("{e}"))?;
                ensure(after == p.after, || format!("γ(S, {}) is {after}", p.first))?;
                ensure(after.contains_all(&p.other.pre), || format!("pre({}) is lost after {}", p.other, p.first))?;
            }
            Ok(())
        }
        Claim::Chain { initial, transitions } => {
            ensure(initial.index == Some(0) && initial.state == problem.initial, || {
                String::from("the chain does not start in the initial state")
            })?;
            in_trace(trace, initial)?;
            let mut at = &initial.state;
            for t in transitions {
                ensure(&t.from.state == at, || format!("the chain breaks at {}", t.step))?;
                check_transition(trace, t)?;
                at = &t.to.state;
            }
            ensure(transitions.len() == trace.steps(), || String::from("the chain skips steps"))
        }
        Claim::Holds { outcome, state } => {
            in_trace(trace, state)?;
            holds_literals(&state.state, outcome.literals().iter())
        }
        Claim::Achieves { achiever: Achiever::Step { index, step }, outcome } => {
            let record = trace.records.get(*index).ok_or_else(|| format!("no step {index}"))?;
            ensure(&record.step == step, || format!("{step} is not step {index}"))?;
            match outcome {
                Outcome::Goals(gs) => {
                    for g in gs {
                        ensure(problem.goals.contains(g), || format!("{g} is not a goal"))?;
                        holds_literals(&trace.states[index + 1], g.requirements())?;
                    }
                    Ok(())
                }
                Outcome::Enabling(es) => es.iter().try_for_each(|e| check_enabling(trace, *index, e)),
            }
        }
        Claim::Achieves { achiever: Achiever::Plan(plan), outcome } => {
            ensure(*plan == trace.plan(), || String::from("the plan differs from the trace"))?;
            holds_literals(trace.last(), outcome.literals().iter())
        }
    }
}

fn check_conclusion(trace: &Trace, arg: &Argument) -> Check {
    match &arg.conclusion {
        Conclusion::Execute { action, state } => {
            in_trace(trace, state)?;
            let i = state.index.ok_or("the state is not in the trace")?;
            ensure(trace.records.get(i).map(|r| &r.step) == Some(&PlanStep::Single(action.clone())), || {
                format!("{action} is not executed in state {i}")
            })
        }
        Conclusion::ExecuteConcurrent { actions, state } => {
            in_trace(trace, state)?;
            let i = state.index.ok_or("the state is not in the trace")?;
            ensure(trace.records.get(i).map(|r| r.step.actions()) == Some(actions.as_slice()), || {
                format!("the set is not executed in state {i}")
            })
        }
        Conclusion::StateTrue { state } => in_trace(trace, state),
        Conclusion::Achieve { index, step, goal } => {
            ensure(trace.records.get(*index).map(|r| &r.step) == Some(step), || format!("{step} is not step {index}"))?;
            ensure(goal.holds_in(&trace.states[index + 1]), || format!("{goal} does not hold after step {index}"))
        }
        Conclusion::Solution { plan, .. } => ensure(*plan == trace.plan(), || String::from("plan differs")),
    }
}

/// Re-evaluates every premise and the conclusion of `arg` against `trace`.
///
/// Also checks the premise kinds against the scheme's signature.
pub fn verify_argument(problem: &PlanningProblem, trace: &Trace, arg: &Argument) -> Result<(), Unsound> {
    let kinds: alloc::vec::Vec<PremiseKind> = arg.premises.iter().map(|p| p.claim.kind()).collect();
    if kinds != arg.scheme.signature() {
        return Err(Unsound { premise: 0, reason: format!("premise kinds {kinds:?} do not fit {:?}", arg.scheme) });
    }
    for p in &arg.premises {
        check_claim(problem, trace, &p.claim).map_err(|reason| Unsound { premise: p.index, reason })?;
    }
    check_conclusion(trace, arg).map_err(|reason| Unsound { premise: 0, reason })
}
