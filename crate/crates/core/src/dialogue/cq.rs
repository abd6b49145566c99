use alloc::vec::Vec;
use core::fmt;

use crate::planning::{Goal, GroundAction, Plan, PlanStep, State};
use crate::schemes::{Achiever, Argument, Claim, Explanation, SchemeKind, Subject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CqKind {
    Cq1,
    Cq2,
    Cq3,
    Cq4,
    Cq5,
}

impl CqKind {
    pub const ALL: [CqKind; 5] = [CqKind::Cq1, CqKind::Cq2, CqKind::Cq3, CqKind::Cq4, CqKind::Cq5];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// The scheme whose arguments answer this question.
    pub fn answered_by(self) -> SchemeKind {
        match self {
            CqKind::Cq1 => SchemeKind::PlanSummary,
            CqKind::Cq2 => SchemeKind::Action,
            CqKind::Cq3 => SchemeKind::ConcurrentAction,
            CqKind::Cq4 => SchemeKind::StateTransition,
            CqKind::Cq5 => SchemeKind::Goal,
        }
    }

    /// Schemes whose arguments this question may be asked of.
    pub fn asked_of(self) -> &'static [SchemeKind] {
        use SchemeKind::*;
        match self {
            CqKind::Cq1 => &[],
            CqKind::Cq2 => &[PlanSummary, StateTransition, Goal],
            CqKind::Cq3 => &[PlanSummary],
            CqKind::Cq4 => &[PlanSummary, Action, ConcurrentAction, Goal],
            CqKind::Cq5 => &[PlanSummary],
        }
    }
}

impl fmt::Display for CqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CQ{}", self.number())
    }
}

/// The plan element a question is about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CqSubject {
    Plan(Plan),
    Action { step: usize, action: GroundAction },
    ConcurrentSet { step: usize, actions: Vec<GroundAction> },
    State { index: usize, state: State },
    Goal(Goal),
}

impl CqSubject {
    pub fn kind(&self) -> CqKind {
        match self {
            CqSubject::Plan(_) => CqKind::Cq1,
            CqSubject::Action { .. } => CqKind::Cq2,
            CqSubject::ConcurrentSet { .. } => CqKind::Cq3,
            CqSubject::State { .. } => CqKind::Cq4,
            CqSubject::Goal(_) => CqKind::Cq5,
        }
    }

    /// The subject of the argument that answers a question about this element.
    pub fn answer_subject(&self) -> Subject {
        match self {
            CqSubject::Plan(_) => Subject::Plan,
            CqSubject::Action { step, .. } | CqSubject::ConcurrentSet { step, .. } => Subject::Step(*step),
            CqSubject::State { index, .. } => Subject::State(*index),
            CqSubject::Goal(g) => Subject::Goal(g.clone()),
        }
    }

    /// The question in words.
    pub fn question(&self) -> alloc::string::String {
        match self {
            CqSubject::Plan(p) => alloc::format!("Is the plan {p} possible?"),
            CqSubject::Action { action, .. } => alloc::format!("Is the action {action} possible to execute?"),
            CqSubject::ConcurrentSet { actions, .. } => {
                let names: Vec<alloc::string::String> = actions.iter().map(|a| alloc::format!("{a}")).collect();
                alloc::format!("Is the set of concurrent actions {{{}}} possible to execute?", names.join(", "))
            }
            CqSubject::State { state, .. } => alloc::format!("Is the state {state} possible?"),
            CqSubject::Goal(g) => alloc::format!("Is the goal {g} possible to achieve?"),
        }
    }
}

/// A question that may be asked of an argument, and the premise it questions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CqCandidate {
    pub kind: CqKind,
    pub premise: usize,
    pub subject: CqSubject,
}

fn step_subject(index: usize, step: &PlanStep) -> CqSubject {
    match step {
        PlanStep::Single(a) => CqSubject::Action { step: index, action: a.clone() },
        PlanStep::Concurrent(v) => CqSubject::ConcurrentSet { step: index, actions: v.clone() },
    }
}

fn push(out: &mut Vec<CqCandidate>, premise: usize, subject: CqSubject) {
    if !out.iter().any(|c| c.subject == subject) {
        out.push(CqCandidate { kind: subject.kind(), premise, subject });
    }
}

/// Questions that can be asked of `arg`, one per plan element it relies on.
///
/// Only the plan summary is questioned about every element it mentions; the
/// narrower arguments are questioned only about what they take as given (the
/// state they start from and, for state and goal arguments, the single action
/// they cite). States an argument derives itself are not questioned, which
/// keeps every chain of questions heading back towards the initial state.
pub fn available_cqs(arg: &Argument) -> Vec<CqCandidate> {
    let mut out = Vec::new();
    match arg.scheme {
        SchemeKind::PlanSummary => {
            for p in &arg.premises {
                match &p.claim {
                    Claim::Chain { initial, transitions } => {
                        push(&mut out, p.index, CqSubject::State { index: 0, state: initial.state.clone() });
                        for (i, t) in transitions.iter().enumerate() {
                            push(&mut out, p.index, step_subject(i, &t.step));
                            push(&mut out, p.index, CqSubject::State { index: i + 1, state: t.to.state.clone() });
                        }
                    }
                    Claim::Holds { outcome, .. } => {
                        for g in outcome.goals().into_iter().flatten() {
                            push(&mut out, p.index, CqSubject::Goal(g.clone()));
                        }
                    }
                    _ => {}
                }
            }
        }
        SchemeKind::StateTransition | SchemeKind::Goal => {
            let p = &arg.premises[0];
            let t = match &p.claim {
                Claim::Expansion { transition, .. } => transition,
                Claim::Transition(t) => t,
                _ => return out,
            };
            if let (PlanStep::Single(_), Some(i)) = (&t.step, t.from.index) {
                push(&mut out, p.index, step_subject(i, &t.step));
            }
            if let Some(i) = t.from.index {
                push(&mut out, p.index, CqSubject::State { index: i, state: t.from.state.clone() });
            }
        }
        SchemeKind::Action | SchemeKind::ConcurrentAction => {
            if let Claim::Preconditions { state, .. } = &arg.premises[0].claim {
                if let Some(i) = state.index {
                    push(&mut out, 1, CqSubject::State { index: i, state: state.state.clone() });
                }
            }
        }
    }
    out.sort_by(|a, b| (a.kind, a.premise).cmp(&(b.kind, b.premise)).then_with(|| subject_order(a, b)));
    out
}

fn subject_order(a: &CqCandidate, b: &CqCandidate) -> core::cmp::Ordering {
    a.subject.answer_subject().cmp(&b.subject.answer_subject())
}

/// Questions for an explanation; the degenerate answers raise none.
pub fn explanation_cqs(e: &Explanation) -> Vec<CqCandidate> {
    e.argument().map(available_cqs).unwrap_or_default()
}

/// Whether premise `premise` of `arg` mentions `subject`.
pub fn premise_mentions(arg: &Argument, premise: usize, subject: &CqSubject) -> bool {
    let Some(p) = arg.premise(premise) else { return false };
    let mentions_state = |index: usize, state: &State| -> bool {
        let hit = |r: &crate::schemes::StateRef| r.index == Some(index) && &r.state == state;
        match &p.claim {
            Claim::Preconditions { state: r, .. } | Claim::Holds { state: r, .. } => hit(r),
            Claim::Transition(t) | Claim::Expansion { transition: t, .. } => hit(&t.from) || hit(&t.to),
            Claim::Interleaved { state: r, .. } => hit(r),
            Claim::Chain { initial, transitions } => {
                hit(initial) || transitions.iter().any(|t| hit(&t.from) || hit(&t.to))
            }
            Claim::Achieves { .. } => false,
        }
    };
    let mentions_step = |index: usize, step: &PlanStep| -> bool {
        match &p.claim {
            Claim::Transition(t) | Claim::Expansion { transition: t, .. } => {
                t.from.index == Some(index) && &t.step == step
            }
            Claim::Chain { transitions, .. } => transitions.get(index).is_some_and(|t| &t.step == step),
            Claim::Achieves { achiever: Achiever::Step { index: i, step: s }, .. } => *i == index && s == step,
            Claim::Achieves { achiever: Achiever::Plan(plan), .. } => plan.steps.get(index) == Some(step),
            _ => false,
        }
    };
    match subject {
        CqSubject::Plan(_) => false,
        CqSubject::Action { step, action } => mentions_step(*step, &PlanStep::Single(action.clone())),
        CqSubject::ConcurrentSet { step, actions } => mentions_step(*step, &PlanStep::Concurrent(actions.clone())),
        CqSubject::State { index, state } => mentions_state(*index, state),
        CqSubject::Goal(g) => match &p.claim {
            Claim::Holds { outcome, .. } | Claim::Achieves { outcome, .. } => {
                outcome.goals().is_some_and(|gs| gs.contains(g))
            }
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planning::run_plan;
    use crate::sample;
    use crate::schemes::{build_plan_summary_argument, build_state_argument};

    fn count(cqs: &[CqCandidate], kind: CqKind) -> usize {
        cqs.iter().filter(|c| c.kind == kind).count()
    }

    #[test]
    fn summary_questions() {
        let arg = build_plan_summary_argument(&sample::blocks_world(), &sample::solution_plan()).unwrap();
        let cqs = available_cqs(&arg);
        assert_eq!(
            [CqKind::Cq1, CqKind::Cq2, CqKind::Cq3, CqKind::Cq4, CqKind::Cq5].map(|k| count(&cqs, k)),
            [0, 3, 1, 5, 6]
        );
        for c in &cqs {
            assert!(premise_mentions(&arg, c.premise, &c.subject), "{c:?}");
            assert!(c.kind.asked_of().contains(&arg.scheme));
        }
    }

    #[test]
    fn state_one_questions() {
        let p = sample::blocks_world();
        let t = run_plan(&p, &sample::solution_plan()).unwrap();
        let e = build_state_argument(&t, 1).unwrap();
        let cqs = explanation_cqs(&e);
        assert_eq!(cqs.len(), 2);
        assert!(matches!(&cqs[0].subject, CqSubject::Action { step: 0, action } if *action == sample::unstack("a", "b")));
        assert!(matches!(&cqs[1].subject, CqSubject::State { index: 0, .. }));
        assert!(explanation_cqs(&build_state_argument(&t, 0).unwrap()).is_empty());
    }
}
