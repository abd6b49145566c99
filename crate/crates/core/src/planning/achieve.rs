use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::action::GroundAction;
use super::atom::{Atom, Literal};
use super::exec::{StepRecord, Trace};
use super::plan::Goal;
use super::problem::PlanningProblem;

/// An atom added by one step and required by a later one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CausalLink {
    pub atom: Atom,
    pub producer: usize,
    pub consumer: usize,
    pub consumer_action: GroundAction,
}

impl fmt::Display for CausalLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.atom, self.consumer_action)
    }
}

/// A justification for a step that does not fully achieve a goal by itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Enabling {
    /// The step establishes a precondition of a later step.
    Link(CausalLink),
    /// The step produces some, but not all, requirements of a goal.
    Partial { goal: Goal, produced: BTreeSet<Literal> },
    /// The step leaves an already satisfied goal intact. Only offered when
    /// nothing stronger applies.
    Preserved { goal: Goal },
}

impl Enabling {
    /// The literals the step makes true for this justification.
    pub fn produced(&self) -> BTreeSet<Literal> {
        match self {
            Enabling::Link(l) => [Literal::pos(l.atom.clone())].into_iter().collect(),
            Enabling::Partial { produced, .. } => produced.clone(),
            Enabling::Preserved { goal } => goal.requirements().clone(),
        }
    }
}

impl fmt::Display for Enabling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Enabling::Link(l) => l.fmt(f),
            Enabling::Partial { goal, produced } => {
                super::state::write_conjunction(f, produced.iter())?;
                write!(f, " (part of goal {goal})")
            }
            Enabling::Preserved { goal } => write!(f, "{goal} (kept true)"),
        }
    }
}

/// What a step accomplishes, split into goals it achieves outright and
/// weaker "enabling" justifications.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Achievements {
    pub direct: BTreeSet<Goal>,
    pub enabling: Vec<Enabling>,
}

/// The goal an action argument cites.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GoalChoice {
    Direct(Goal),
    Enabling(Enabling),
}

impl Achievements {
    /// First direct goal, falling back to the first enabling justification.
    pub fn default_choice(&self) -> Option<GoalChoice> {
        self.direct
            .iter()
            .next()
            .cloned()
            .map(GoalChoice::Direct)
            .or_else(|| self.enabling.first().cloned().map(GoalChoice::Enabling))
    }

    pub fn contains(&self, choice: &GoalChoice) -> bool {
        match choice {
            GoalChoice::Direct(g) => self.direct.contains(g),
            GoalChoice::Enabling(e) => self.enabling.contains(e),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.direct.is_empty() && self.enabling.is_empty()
    }
}

fn produces(record: &StepRecord, lit: &Literal) -> bool {
    if lit.negated {
        record.deleted.contains(&lit.atom)
    } else {
        record.added.contains(&lit.atom)
    }
}

/// Goals achieved by step `index` of `trace`, plus its enabling justifications.
///
/// A goal is achieved directly when the step produces every requirement.
/// Enabling justifications are the partially produced goals and the causal
/// links from atoms the step adds to later steps that require them, up to the
/// point where some step deletes or re-adds the atom. If neither kind exists,
/// goals that hold after the step are reported as preserved.
pub fn achieved_goals(problem: &PlanningProblem, trace: &Trace, index: usize) -> Option<Achievements> {
    let record = trace.records.get(index)?;
    let mut out = Achievements::default();
    for goal in &problem.goals {
        let produced: BTreeSet<Literal> =
            goal.requirements().iter().filter(|r| produces(record, r)).cloned().collect();
        if produced.len() == goal.requirements().len() {
            out.direct.insert(goal.clone());
        } else if !produced.is_empty() {
            out.enabling.push(Enabling::Partial { goal: goal.clone(), produced });
        }
    }
    for atom in &record.added {
        for (consumer, later) in trace.records.iter().enumerate().skip(index + 1) {
            for action in later.step.actions().iter().filter(|a| a.pre.contains(atom)) {
                out.enabling.push(Enabling::Link(CausalLink {
                    atom: atom.clone(),
                    producer: index,
                    consumer,
                    consumer_action: action.clone(),
                }));
            }
            if later.deleted.contains(atom) || later.added.contains(atom) {
                break;
            }
        }
    }
    if out.is_empty() {
        let after = &trace.states[index + 1];
        out.enabling.extend(
            problem.goals.iter().filter(|g| g.holds_in(after)).map(|g| Enabling::Preserved { goal: g.clone() }),
        );
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planning::run_plan;
    use crate::sample::{self, atom, stack};

    fn blocks() -> (PlanningProblem, Trace) {
        let p = sample::blocks_world();
        let t = run_plan(&p, &sample::solution_plan()).unwrap();
        (p, t)
    }

    fn goals(texts: &[&str]) -> BTreeSet<Goal> {
        texts.iter().map(|t| Goal::atom(atom(t))).collect()
    }

    #[test]
    fn first_unstack_achieves_ontable_a() {
        let (p, t) = blocks();
        let a = achieved_goals(&p, &t, 0).unwrap();
        assert_eq!(a.direct, goals(&["ontable a"]));
        assert_eq!(a.default_choice(), Some(GoalChoice::Direct(Goal::atom(atom("ontable a")))));
    }

    #[test]
    fn concurrent_step_achieves_both_ons() {
        let (p, t) = blocks();
        assert_eq!(achieved_goals(&p, &t, 3).unwrap().direct, goals(&["on c a", "on d b"]));
    }

    #[test]
    fn third_step_links() {
        let (p, t) = blocks();
        let a = achieved_goals(&p, &t, 2).unwrap();
        assert_eq!(a.direct, goals(&["clear d"]));
        let links: Vec<(Atom, GroundAction)> = a
            .enabling
            .iter()
            .filter_map(|e| match e {
                Enabling::Link(l) => Some((l.atom.clone(), l.consumer_action.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(
            links,
            alloc::vec![(atom("clear d"), stack("d", "b")), (atom("ontable c"), stack("c", "a"))]
        );
    }

    #[test]
    fn out_of_range_step() {
        let (p, t) = blocks();
        assert!(achieved_goals(&p, &t, 4).is_none());
    }

    #[test]
    fn partial_goal_is_enabling() {
        let (mut p, t) = blocks();
        let g = Goal::new([Literal::pos(atom("ontable a")), Literal::pos(atom("on c a"))]).unwrap();
        p.goals = [g.clone()].into_iter().collect();
        let a = achieved_goals(&p, &t, 0).unwrap();
        assert!(a.direct.is_empty());
        assert!(a.enabling.contains(&Enabling::Partial {
            goal: g,
            produced: [Literal::pos(atom("ontable a"))].into_iter().collect()
        }));
    }
}
