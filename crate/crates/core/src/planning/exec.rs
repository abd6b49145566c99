use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::action::GroundAction;
use super::atom::Atom;
use super::plan::{Plan, PlanStep};
use super::problem::PlanningProblem;
use super::state::{write_conjunction, State};

pub fn applicable(s: &State, a: &GroundAction) -> bool {
    s.contains_all(&a.pre)
}

/// `a` is not applicable: `missing` are the precondition atoms absent from the state.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NotApplicable {
    pub action: GroundAction,
    pub missing: BTreeSet<Atom>,
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not applicable: missing ", self.action)?;
        write_conjunction(f, self.missing.iter())
    }
}

/// The partial transition function: `(s \ del(a)) ∪ add(a)` when `a` is applicable.
pub fn transition(s: &State, a: &GroundAction) -> Result<State, NotApplicable> {
    let missing = s.missing(&a.pre);
    if !missing.is_empty() {
        return Err(NotApplicable { action: a.clone(), missing });
    }
    Ok(s.apply(&a.del, &a.add))
}

/// One violated clause of the concurrent-execution conditions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Violation {
    /// Clause (i): an action's preconditions do not hold.
    NotApplicable { action: GroundAction, missing: BTreeSet<Atom> },
    /// Clause (ii): `adder` adds atoms that `deleter` deletes.
    ConflictingEffects { adder: GroundAction, deleter: GroundAction, atoms: BTreeSet<Atom> },
    /// Clause (iii): `deleter` deletes preconditions of `needer`.
    ClobbersPrecondition { deleter: GroundAction, needer: GroundAction, atoms: BTreeSet<Atom> },
}

impl Violation {
    pub fn clause(&self) -> u8 {
        match self {
            Violation::NotApplicable { .. } => 1,
            Violation::ConflictingEffects { .. } => 2,
            Violation::ClobbersPrecondition { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotApplicable { action, missing } => {
                write!(f, "(i) {action} is not applicable: missing ")?;
                write_conjunction(f, missing.iter())
            }
            Violation::ConflictingEffects { adder, deleter, atoms } => {
                write!(f, "(ii) {adder} adds what {deleter} deletes: ")?;
                write_conjunction(f, atoms.iter())
            }
            Violation::ClobbersPrecondition { deleter, needer, atoms } => {
                write!(f, "(iii) {deleter} deletes preconditions of {needer}: ")?;
                write_conjunction(f, atoms.iter())
            }
        }
    }
}

/// Diagnosis of a concurrent set; consistent when no clause is violated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Consistency {
    pub violations: Vec<Violation>,
}

impl Consistency {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Consistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("consistent");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the three concurrent-execution clauses over every ordered pair.
pub fn concurrent_consistent(s: &State, actions: &[GroundAction]) -> Consistency {
    let mut violations = Vec::new();
    for a in actions {
        let missing = s.missing(&a.pre);
        if !missing.is_empty() {
            violations.push(Violation::NotApplicable { action: a.clone(), missing });
        }
    }
    for (i, a) in actions.iter().enumerate() {
        for (j, b) in actions.iter().enumerate() {
            if i == j {
                continue;
            }
            let clash: BTreeSet<Atom> = a.add.intersection(&b.del).cloned().collect();
            if !clash.is_empty() {
                violations.push(Violation::ConflictingEffects {
                    adder: a.clone(),
                    deleter: b.clone(),
                    atoms: clash,
                });
            }
            let clobbered: BTreeSet<Atom> = a.del.intersection(&b.pre).cloned().collect();
            if !clobbered.is_empty() {
                violations.push(Violation::ClobbersPrecondition {
                    deleter: a.clone(),
                    needer: b.clone(),
                    atoms: clobbered,
                });
            }
        }
    }
    Consistency { violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StepFailure {
    NotApplicable(NotApplicable),
    Inconsistent(Consistency),
}

impl StepFailure {
    /// Precondition atoms the step was missing, if that is why it failed.
    pub fn missing(&self) -> BTreeSet<Atom> {
        match self {
            StepFailure::NotApplicable(e) => e.missing.clone(),
            StepFailure::Inconsistent(c) => c
                .violations
                .iter()
                .filter_map(|v| match v {
                    Violation::NotApplicable { missing, .. } => Some(missing.iter().cloned()),
                    _ => None,
                })
                .flatten()
                .collect(),
        }
    }
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepFailure::NotApplicable(e) => e.fmt(f),
            StepFailure::Inconsistent(c) => write!(f, "inconsistent concurrent set: {c}"),
        }
    }
}

/// Applies one plan step. Concurrent steps are checked for consistency and
/// then applied in sorted order; the result is checked against the reverse
/// order, which must agree.
pub fn transition_step(s: &State, step: &PlanStep) -> Result<State, StepFailure> {
    match step {
        PlanStep::Single(a) => transition(s, a).map_err(StepFailure::NotApplicable),
        PlanStep::Concurrent(actions) => {
            let report = concurrent_consistent(s, actions);
            if !report.is_consistent() {
                return Err(StepFailure::Inconsistent(report));
            }
            let forward = apply_in_order(s, actions.iter());
            let backward = apply_in_order(s, actions.iter().rev());
            assert_eq!(forward, backward, "consistent concurrent set must be order independent");
            Ok(forward)
        }
    }
}

fn apply_in_order<'a>(s: &State, actions: impl Iterator<Item = &'a GroundAction>) -> State {
    // Consistency guarantees every action stays applicable along the way.
    actions.fold(s.clone(), |acc, a| acc.apply(&a.del, &a.add))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepRecord {
    pub step: PlanStep,
    pub added: BTreeSet<Atom>,
    pub deleted: BTreeSet<Atom>,
}

/// The state chain `S_0 … S_n` visited by a plan, with one record per step.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trace {
    pub states: Vec<State>,
    pub records: Vec<StepRecord>,
}

impl Trace {
    pub fn initial(&self) -> &State {
        &self.states[0]
    }

    pub fn last(&self) -> &State {
        self.states.last().expect("a trace always holds the initial state")
    }

    pub fn steps(&self) -> usize {
        self.records.len()
    }

    pub fn plan(&self) -> Plan {
        self.records.iter().map(|r| r.step.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunFailure {
    /// States reached before the failing step.
    pub trace: Trace,
    pub index: usize,
    pub step: PlanStep,
    pub failure: StepFailure,
}

impl fmt::Display for RunFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} ({}): {}", self.index, self.step, self.failure)
    }
}

/// Executes `plan` from the initial state, stopping at the first failing step.
pub fn run_plan(problem: &PlanningProblem, plan: &Plan) -> Result<Trace, RunFailure> {
    let mut trace = Trace { states: alloc::vec![problem.initial.clone()], records: Vec::new() };
    for (index, step) in plan.steps.iter().enumerate() {
        match transition_step(trace.last(), step) {
            Ok(next) => {
                trace.records.push(StepRecord { step: step.clone(), added: step.add(), deleted: step.del() });
                trace.states.push(next);
            }
            Err(failure) => {
                return Err(RunFailure { trace, index, step: step.clone(), failure });
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{self, atoms, stack, state, unstack};

    #[test]
    fn applicability_in_initial_state() {
        let s1 = sample::blocks_world().initial;
        assert!(applicable(&s1, &unstack("a", "b")));
        assert!(!applicable(&s1, &unstack("b", "c")));
        let noop = GroundAction::new("noop", [""; 0], BTreeSet::new(), BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(applicable(&State::new(), &noop));
        assert_eq!(transition(&s1, &noop).unwrap(), s1);
    }

    #[test]
    fn transition_reports_missing_preconditions() {
        let s1 = sample::blocks_world().initial;
        let err = transition(&s1, &unstack("b", "c")).unwrap_err();
        assert_eq!(err.missing, atoms(&["clear b"]));
    }

    #[test]
    fn unstack_a_b_from_initial_state() {
        let s1 = sample::blocks_world().initial;
        assert_eq!(
            transition(&s1, &unstack("a", "b")).unwrap(),
            state(&["ontable d", "on c d", "on b c", "clear a", "ontable a", "clear b"])
        );
    }

    #[test]
    fn concurrent_clause_one_violation() {
        let s1 = sample::blocks_world().initial;
        let report = concurrent_consistent(&s1, &[unstack("a", "b"), stack("a", "b")]);
        assert!(!report.is_consistent());
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::NotApplicable { action, missing }
                if *action == stack("a", "b") && missing.contains(&sample::atom("ontable a"))
        )));
    }

    #[test]
    fn concurrent_stacks_are_consistent() {
        let s4 = state(&[
            "ontable d", "clear a", "clear b", "clear c", "clear d", "ontable a", "ontable b", "ontable c",
        ]);
        let step = PlanStep::concurrent([stack("c", "a"), stack("d", "b")]).unwrap();
        assert!(concurrent_consistent(&s4, step.actions()).is_consistent());
        assert_eq!(
            transition_step(&s4, &step).unwrap(),
            state(&["clear c", "clear d", "on c a", "on d b", "ontable a", "ontable b"])
        );
    }

    #[test]
    fn stacking_onto_the_same_block_clobbers() {
        let s = state(&["ontable a", "ontable b", "ontable c", "clear a", "clear b", "clear c"]);
        let report = concurrent_consistent(&s, &[stack("a", "c"), stack("b", "c")]);
        assert!(report.violations.iter().all(|v| v.clause() == 3));
        assert_eq!(report.violations.len(), 2);
    }

    #[test]
    fn empty_plan_is_identity() {
        let p = sample::blocks_world();
        let trace = run_plan(&p, &Plan::default()).unwrap();
        assert_eq!(trace.states, alloc::vec![p.initial.clone()]);
    }

    #[test]
    fn failing_plan_keeps_partial_trace() {
        let p = sample::blocks_world();
        let plan = Plan::new(alloc::vec![PlanStep::Single(unstack("b", "c"))]);
        let err = run_plan(&p, &plan).unwrap_err();
        assert_eq!(err.index, 0);
        assert_eq!(err.trace.states.len(), 1);
        assert_eq!(err.failure.missing(), atoms(&["clear b"]));
    }
}
