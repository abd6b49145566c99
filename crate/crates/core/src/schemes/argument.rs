use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::planning::{Atom, Enabling, Goal, GroundAction, Literal, Plan, PlanStep, State};

/// The five argument schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SchemeKind {
    Action,
    ConcurrentAction,
    StateTransition,
    Goal,
    PlanSummary,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::Action,
        SchemeKind::ConcurrentAction,
        SchemeKind::StateTransition,
        SchemeKind::Goal,
        SchemeKind::PlanSummary,
    ];

    pub fn premise_count(self) -> usize {
        match self {
            SchemeKind::Action => 4,
            SchemeKind::ConcurrentAction => 5,
            SchemeKind::StateTransition => 1,
            SchemeKind::Goal => 2,
            SchemeKind::PlanSummary => 3,
        }
    }

    /// Kind of each premise, in order.
    pub fn signature(self) -> &'static [PremiseKind] {
        use PremiseKind::*;
        match self {
            SchemeKind::Action => &[Hold, Transition, Hold, Achieve],
            SchemeKind::ConcurrentAction => &[Hold, Transition, Transition, Hold, AchieveSet],
            SchemeKind::StateTransition => &[Transition],
            SchemeKind::Goal => &[Transition, Hold],
            SchemeKind::PlanSummary => &[Transition, Hold, AchieveSet],
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            SchemeKind::Action => "Action argument",
            SchemeKind::ConcurrentAction => "Concurrent action argument",
            SchemeKind::StateTransition => "State transition argument",
            SchemeKind::Goal => "Goal argument",
            SchemeKind::PlanSummary => "Plan summary argument",
        }
    }
}

/// What an argument explains. Step and state indices are 0-based; state 0 is
/// the initial state and step `i` leads from state `i` to state `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Subject {
    Plan,
    Step(usize),
    State(usize),
    Goal(Goal),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Plan => f.write_str("the plan"),
            Subject::Step(i) => write!(f, "step {i}"),
            Subject::State(i) => write!(f, "state {i}"),
            Subject::Goal(g) => write!(f, "goal {g}"),
        }
    }
}

/// A state mentioned by a premise; `index` is set when it is a trace state.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StateRef {
    pub index: Option<usize>,
    pub state: State,
}

impl StateRef {
    pub fn at(index: usize, state: State) -> Self {
        StateRef { index: Some(index), state }
    }

    pub fn intermediate(state: State) -> Self {
        StateRef { index: None, state }
    }
}

/// `γ(from, step) = to`
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Transition {
    pub from: StateRef,
    pub step: PlanStep,
    pub to: StateRef,
}

/// One ordered pair of a concurrent set: executing `first` alone leads to
/// `after`, where the preconditions of `other` still hold.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interleaving {
    pub first: GroundAction,
    pub other: GroundAction,
    pub after: State,
}

/// What a step or plan is claimed to accomplish.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Outcome {
    Goals(BTreeSet<Goal>),
    /// Used when no goal is achieved outright.
    Enabling(Vec<Enabling>),
}

impl Outcome {
    /// Every literal the outcome requires to hold.
    pub fn literals(&self) -> BTreeSet<Literal> {
        match self {
            Outcome::Goals(gs) => gs.iter().flat_map(|g| g.requirements().iter().cloned()).collect(),
            Outcome::Enabling(es) => es.iter().flat_map(|e| e.produced()).collect(),
        }
    }

    pub fn goals(&self) -> Option<&BTreeSet<Goal>> {
        match self {
            Outcome::Goals(gs) => Some(gs),
            Outcome::Enabling(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Achiever {
    Step { index: usize, step: PlanStep },
    Plan(Plan),
}

/// The content of a premise. Each variant can be re-evaluated on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Claim {
    /// `Hold(pre(a), S)` for every listed action.
    Preconditions { actions: Vec<GroundAction>, state: StateRef },
    Transition(Transition),
    /// `γ(S, a) = (S \ deleted) ∪ added = S'`
    Expansion { transition: Transition, deleted: BTreeSet<Atom>, added: BTreeSet<Atom> },
    /// Every ordered pair of a concurrent set, sorted by `(first, other)`.
    Interleaved { state: StateRef, pairs: Vec<Interleaving> },
    /// `γ(S_0, a_1) = S_1, …, γ(S_{n-1}, a_n) = S_n`
    Chain { initial: StateRef, transitions: Vec<Transition> },
    /// `Hold(G, S)`
    Holds { outcome: Outcome, state: StateRef },
    /// `Achieve(a, G)`
    Achieves { achiever: Achiever, outcome: Outcome },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PremiseKind {
    Hold,
    Transition,
    Achieve,
    AchieveSet,
}

impl Claim {
    pub fn kind(&self) -> PremiseKind {
        match self {
            Claim::Preconditions { .. } | Claim::Holds { .. } => PremiseKind::Hold,
            Claim::Transition(_) | Claim::Expansion { .. } | Claim::Interleaved { .. } | Claim::Chain { .. } => {
                PremiseKind::Transition
            }
            Claim::Achieves { achiever: Achiever::Step { step: PlanStep::Single(_), .. }, .. } => {
                PremiseKind::Achieve
            }
            Claim::Achieves { .. } => PremiseKind::AchieveSet,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Premise {
    /// 1-based position within the argument.
    pub index: usize,
    pub claim: Claim,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Conclusion {
    Execute { action: GroundAction, state: StateRef },
    ExecuteConcurrent { actions: Vec<GroundAction>, state: StateRef },
    StateTrue { state: StateRef },
    Achieve { index: usize, step: PlanStep, goal: Goal },
    Solution { plan: Plan, problem: String },
}

/// An instance of one of the five schemes.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Argument {
    pub scheme: SchemeKind,
    pub subject: Subject,
    pub premises: Vec<Premise>,
    pub conclusion: Conclusion,
}

impl Argument {
    pub(crate) fn new(scheme: SchemeKind, subject: Subject, claims: Vec<Claim>, conclusion: Conclusion) -> Self {
        debug_assert_eq!(claims.len(), scheme.premise_count());
        let premises = claims.into_iter().enumerate().map(|(i, claim)| Premise { index: i + 1, claim }).collect();
        Argument { scheme, subject, premises, conclusion }
    }

    pub fn premise(&self, index: usize) -> Option<&Premise> {
        self.premises.get(index.checked_sub(1)?)
    }
}

/// The answer to "why is this so?". Besides full arguments, two degenerate
/// answers exist for facts that need no action to explain them.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Explanation {
    Argument(Argument),
    /// State 0 holds because it is the initial state.
    InitialState { state: State },
    /// The goal holds in the initial state and no step deletes it.
    HoldsInitially { goal: Goal, state: State },
}

impl Explanation {
    pub fn subject(&self) -> Subject {
        match self {
            Explanation::Argument(a) => a.subject.clone(),
            Explanation::InitialState { .. } => Subject::State(0),
            Explanation::HoldsInitially { goal, .. } => Subject::Goal(goal.clone()),
        }
    }

    pub fn argument(&self) -> Option<&Argument> {
        match self {
            Explanation::Argument(a) => Some(a),
            _ => None,
        }
    }

    pub fn scheme(&self) -> Option<SchemeKind> {
        self.argument().map(|a| a.scheme)
    }
}

impl From<Argument> for Explanation {
    fn from(a: Argument) -> Self {
        Explanation::Argument(a)
    }
}
