use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::action::GroundAction;
use super::atom::{Atom, Literal};
use super::state::{write_conjunction, State};

/// One step of a plan: a single action or a set of at least two actions
/// executed together.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PlanStep {
    Single(GroundAction),
    /// Sorted and pairwise distinct, length ≥ 2. Build with [`PlanStep::concurrent`].
    Concurrent(Vec<GroundAction>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepShapeError {
    TooFewActions(usize),
    Duplicate(GroundAction),
}

impl fmt::Display for StepShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepShapeError::TooFewActions(n) => {
                write!(f, "a concurrent group requires at least 2 actions, found {n}")
            }
            StepShapeError::Duplicate(a) => write!(f, "action {a} appears twice in a concurrent group"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StepShapeError {}

impl PlanStep {
    pub fn concurrent(actions: impl IntoIterator<Item = GroundAction>) -> Result<Self, StepShapeError> {
        let mut actions: Vec<GroundAction> = actions.into_iter().collect();
        if actions.len() < 2 {
            return Err(StepShapeError::TooFewActions(actions.len()));
        }
        actions.sort();
        if let Some(w) = actions.windows(2).find(|w| w[0] == w[1]) {
            return Err(StepShapeError::Duplicate(w[0].clone()));
        }
        Ok(PlanStep::Concurrent(actions))
    }

    pub fn actions(&self) -> &[GroundAction] {
        match self {
            PlanStep::Single(a) => core::slice::from_ref(a),
            PlanStep::Concurrent(v) => v,
        }
    }

    pub fn is_concurrent(&self) -> bool {
        matches!(self, PlanStep::Concurrent(_))
    }

    /// Union of the preconditions of every action in the step.
    pub fn pre(&self) -> BTreeSet<Atom> {
        self.actions().iter().flat_map(|a| a.pre.iter().cloned()).collect()
    }

    pub fn add(&self) -> BTreeSet<Atom> {
        self.actions().iter().flat_map(|a| a.add.iter().cloned()).collect()
    }

    pub fn del(&self) -> BTreeSet<Atom> {
        self.actions().iter().flat_map(|a| a.del.iter().cloned()).collect()
    }
}

/// `UNSTACK(A,B)` or `{STACK(C,A), STACK(D,B)}`.
impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanStep::Single(a) => a.fmt(f),
            PlanStep::Concurrent(v) => {
                f.write_str("{")?;
                write_list(f, v.iter())?;
                f.write_str("}")
            }
        }
    }
}

pub(crate) fn write_list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A sequence of steps. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn new(steps: Vec<PlanStep>) -> Self {
        Plan { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl FromIterator<PlanStep> for Plan {
    fn from_iter<T: IntoIterator<Item = PlanStep>>(iter: T) -> Self {
        Plan { steps: iter.into_iter().collect() }
    }
}

/// `⟨UNSTACK(A,B), (STACK(C,A), STACK(D,B))⟩`
impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match step {
                PlanStep::Single(a) => write!(f, "{a}")?,
                PlanStep::Concurrent(v) => {
                    f.write_str("(")?;
                    write_list(f, v.iter())?;
                    f.write_str(")")?;
                }
            }
        }
        f.write_str("⟩")
    }
}

/// A goal: a nonempty set of requirements that must all hold.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Goal {
    requirements: BTreeSet<Literal>,
}

impl Goal {
    /// `None` when `requirements` is empty.
    pub fn new(requirements: impl IntoIterator<Item = Literal>) -> Option<Self> {
        let requirements: BTreeSet<Literal> = requirements.into_iter().collect();
        (!requirements.is_empty()).then_some(Goal { requirements })
    }

    pub fn atom(atom: Atom) -> Self {
        Goal { requirements: [Literal::pos(atom)].into_iter().collect() }
    }

    pub fn requirements(&self) -> &BTreeSet<Literal> {
        &self.requirements
    }

    pub fn holds_in(&self, state: &State) -> bool {
        state.satisfies_all(&self.requirements)
    }

    /// Requirements not met by `state`.
    pub fn unmet<'a>(&'a self, state: &'a State) -> impl Iterator<Item = &'a Literal> + 'a {
        self.requirements.iter().filter(move |r| !state.satisfies(r))
    }

    /// The atom of a single positive requirement, if that is the whole goal.
    pub fn as_atom(&self) -> Option<&Atom> {
        match self.requirements.iter().next() {
            Some(l) if self.requirements.len() == 1 && !l.negated => Some(&l.atom),
            _ => None,
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.requirements.len() == 1 {
            return write!(f, "{}", self.requirements.iter().next().unwrap());
        }
        f.write_str("[")?;
        write_conjunction(f, self.requirements.iter())?;
        f.write_str("]")
    }
}

/// Displays a set of goals as `{g1, g2}`.
pub struct GoalSet<'a>(pub &'a BTreeSet<Goal>);

impl fmt::Display for GoalSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_list(f, self.0.iter())?;
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{stack, unstack};
    use alloc::string::ToString;

    #[test]
    fn concurrent_requires_two_distinct_actions() {
        assert_eq!(
            PlanStep::concurrent([stack("c", "a")]),
            Err(StepShapeError::TooFewActions(1))
        );
        assert!(matches!(
            PlanStep::concurrent([stack("c", "a"), stack("c", "a")]),
            Err(StepShapeError::Duplicate(_))
        ));
        let step = PlanStep::concurrent([stack("d", "b"), stack("c", "a")]).unwrap();
        assert_eq!(step.to_string(), "{STACK(C,A), STACK(D,B)}");
    }

    #[test]
    fn plan_display_notation() {
        let plan = Plan::new(alloc::vec![
            PlanStep::Single(unstack("a", "b")),
            PlanStep::concurrent([stack("c", "a"), stack("d", "b")]).unwrap(),
        ]);
        assert_eq!(plan.to_string(), "⟨UNSTACK(A,B), (STACK(C,A), STACK(D,B))⟩");
        assert_eq!(Plan::default().to_string(), "⟨⟩");
    }

    #[test]
    fn goal_shapes() {
        assert!(Goal::new(core::iter::empty()).is_none());
        let g = Goal::atom(Atom::new("ontable", ["a"]));
        assert_eq!(g.to_string(), "ONTABLE(A)");
        assert!(g.as_atom().is_some());
        let multi = Goal::new([
            Literal::pos(Atom::new("on", ["a", "b"])),
            Literal::neg(Atom::new("clear", ["b"])),
        ])
        .unwrap();
        assert_eq!(multi.to_string(), "[¬CLEAR(B) ∧ ON(A,B)]");
        assert!(multi.as_atom().is_none());
    }
}
