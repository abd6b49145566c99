use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::cq::{explanation_cqs, premise_mentions, CqCandidate, CqKind, CqSubject};
use crate::dung::{Framework, Grounded, Label};
use crate::planning::{check_solution_with_trace, Plan, PlanStep, PlanningProblem, SolutionVerdict, Trace};
use crate::schemes::{
    build_action_argument, build_concurrent_argument, build_goal_argument, build_state_argument, render_with_id,
    summary_from_trace, Explanation, SchemeError, Subject,
};

/// Default step bound for the feasibility search behind goal questions.
pub const DEFAULT_GOAL_BOUND: usize = 10;

macro_rules! node_id {
    ($name:ident, $prefix:literal) => {
        /// Displayed with a letter prefix and a 1-based number.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0 + 1)
            }
        }

        impl FromStr for $name {
            type Err = ();

            fn from_str(s: &str) -> Result<Self, ()> {
                let n: usize = s.strip_prefix($prefix).ok_or(())?.parse().map_err(|_| ())?;
                n.checked_sub(1).map($name).ok_or(())
            }
        }
    };
}

node_id!(ArgId, "A");
node_id!(CqId, "Q");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Arg(ArgId),
    Cq(CqId),
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Arg(a) => a.fmt(f),
            NodeId::Cq(q) => q.fmt(f),
        }
    }
}

impl FromStr for NodeId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        s.parse().map(NodeId::Arg).or_else(|_| s.parse().map(NodeId::Cq))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgNode {
    pub id: ArgId,
    pub explanation: Explanation,
    node: usize,
}

impl ArgNode {
    pub fn text(&self) -> String {
        render_with_id(&format!("{}", self.id), &self.explanation)
    }
}

/// An asked critical question. `target` is `None` only for CQ1, which is
/// put to the session rather than to an argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CqNode {
    pub id: CqId,
    pub kind: CqKind,
    pub target: Option<ArgId>,
    pub premise: Option<usize>,
    pub subject: CqSubject,
    pub answer: Option<ArgId>,
    node: usize,
}

impl CqNode {
    pub fn text(&self) -> String {
        format!("[{}] {}: {}", self.id, self.kind, self.subject.question())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DialogueError {
    UnknownArgument(ArgId),
    UnknownCq(CqId),
    /// The question cannot be asked of that argument.
    NotAvailable { target: ArgId, subject: CqSubject },
    /// Building the answering argument failed.
    Unanswerable { cq: CqId, error: SchemeError },
    /// The plan could not be executed, so nothing but the plan can be discussed.
    NoTrace,
    /// No plan summary argument exists because the plan is not a solution.
    NoSummary(SolutionVerdict),
}

impl fmt::Display for DialogueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DialogueError::UnknownArgument(a) => write!(f, "unknown argument {a}"),
            DialogueError::UnknownCq(q) => write!(f, "unknown question {q}"),
            DialogueError::NotAvailable { target, subject } => {
                write!(f, "\"{}\" cannot be asked of {target}", subject.question())
            }
            DialogueError::Unanswerable { cq, error } => write!(f, "{cq} cannot be answered: {error}"),
            DialogueError::NoTrace => f.write_str("the plan cannot be executed"),
            DialogueError::NoSummary(v) => {
                f.write_str("the plan is not a solution, so it has no summary argument")?;
                for failure in &v.failures {
                    write!(f, "; {failure}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DialogueError {}

/// Questions that could not be answered, with the reason.
pub type Failures = Vec<(CqId, DialogueError)>;

/// A dialogue about one plan: presented arguments, asked questions and the
/// argumentation framework they form. Questions attack the argument they are
/// asked of; answers attack the question they answer.
#[derive(Debug, Clone)]
pub struct Session {
    problem: PlanningProblem,
    plan: Plan,
    verdict: SolutionVerdict,
    trace: Option<Trace>,
    goal_bound: usize,
    args: Vec<ArgNode>,
    cqs: Vec<CqNode>,
    nodes: Vec<NodeId>,
    by_subject: BTreeMap<Subject, ArgId>,
    af: Framework,
    accepted: bool,
}

impl Session {
    /// Opens a session. When the plan is a solution its summary argument is
    /// presented straight away.
    pub fn new(problem: PlanningProblem, plan: Plan) -> Self {
        let (verdict, trace) = check_solution_with_trace(&problem, &plan);
        let mut session = Session {
            problem,
            plan,
            verdict,
            trace,
            goal_bound: DEFAULT_GOAL_BOUND,
            args: Vec::new(),
            cqs: Vec::new(),
            nodes: Vec::new(),
            by_subject: BTreeMap::new(),
            af: Framework::default(),
            accepted: false,
        };
        if let Ok(summary) = session.build(&Subject::Plan) {
            session.offer(summary);
        }
        session
    }

    pub fn with_goal_bound(mut self, bound: usize) -> Self {
        self.goal_bound = bound;
        self
    }

    pub fn problem(&self) -> &PlanningProblem {
        &self.problem
    }

    pub fn plan(&self) -> &Plan {
        &self.plan
    }

    pub fn verdict(&self) -> &SolutionVerdict {
        &self.verdict
    }

    pub fn trace(&self) -> Option<&Trace> {
        self.trace.as_ref()
    }

    pub fn arguments(&self) -> &[ArgNode] {
        &self.args
    }

    pub fn questions(&self) -> &[CqNode] {
        &self.cqs
    }

    pub fn argument(&self, id: ArgId) -> Result<&ArgNode, DialogueError> {
        self.args.get(id.0).ok_or(DialogueError::UnknownArgument(id))
    }

    pub fn question(&self, id: CqId) -> Result<&CqNode, DialogueError> {
        self.cqs.get(id.0).ok_or(DialogueError::UnknownCq(id))
    }

    pub fn summary(&self) -> Option<ArgId> {
        self.by_subject.get(&Subject::Plan).copied()
    }

    pub fn argument_for(&self, subject: &Subject) -> Option<ArgId> {
        self.by_subject.get(subject).copied()
    }

    /// Node ids in the order they were added; positions match [`Self::framework`].
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn framework(&self) -> &Framework {
        &self.af
    }

    pub fn grounded(&self) -> Grounded {
        self.af.grounded()
    }

    /// `(attacker, attacked)` pairs.
    pub fn attacks(&self) -> Vec<(NodeId, NodeId)> {
        let mut out: Vec<(NodeId, NodeId)> = self.af.attacks().map(|(a, b)| (self.nodes[a], self.nodes[b])).collect();
        out.sort();
        out
    }

    pub fn label(&self, grounded: &Grounded, id: NodeId) -> Label {
        let node = match id {
            NodeId::Arg(a) => self.args[a.0].node,
            NodeId::Cq(q) => self.cqs[q.0].node,
        };
        grounded.labels[node]
    }

    pub fn is_accepted(&self) -> bool {
        self.accepted
    }

    /// Records that the user is satisfied with the explanation so far.
    pub fn mark_accepted(&mut self) {
        self.accepted = true;
    }

    fn build(&self, subject: &Subject) -> Result<Explanation, SchemeError> {
        let trace = match (&self.trace, subject) {
            (Some(t), Subject::Plan) if self.verdict.is_solution => {
                return Ok(summary_from_trace(&self.problem, t, self.verdict.satisfied_goals.clone()).into())
            }
            (_, Subject::Plan) => return Err(SchemeError::NotASolution(self.verdict.clone())),
            (Some(t), _) => t,
            (None, _) => return Err(SchemeError::NotASolution(self.verdict.clone())),
        };
        match subject {
            Subject::Plan => unreachable!(),
            Subject::Step(i) => match trace.records.get(*i).map(|r| &r.step) {
                Some(PlanStep::Concurrent(_)) => build_concurrent_argument(&self.problem, trace, *i).map(Into::into),
                _ => build_action_argument(&self.problem, trace, *i, None).map(Into::into),
            },
            Subject::State(i) => build_state_argument(trace, *i),
            Subject::Goal(g) => build_goal_argument(&self.problem, trace, g, self.goal_bound),
        }
    }

    fn offer(&mut self, explanation: Explanation) -> ArgId {
        let subject = explanation.subject();
        if let Some(&id) = self.by_subject.get(&subject) {
            return id;
        }
        let id = ArgId(self.args.len());
        let node = self.af.add_node();
        self.nodes.push(NodeId::Arg(id));
        self.args.push(ArgNode { id, explanation, node });
        self.by_subject.insert(subject, id);
        id
    }

    /// Questions that may be asked of `target`, each paired with the id it
    /// already has if it was asked before.
    pub fn available(&self, target: ArgId) -> Result<Vec<(CqCandidate, Option<CqId>)>, DialogueError> {
        let arg = self.argument(target)?;
        Ok(explanation_cqs(&arg.explanation)
            .into_iter()
            .map(|c| {
                let asked = self.find_cq(Some(target), &c.subject);
                (c, asked)
            })
            .collect())
    }

    fn find_cq(&self, target: Option<ArgId>, subject: &CqSubject) -> Option<CqId> {
        self.cqs.iter().find(|q| q.target == target && &q.subject == subject).map(|q| q.id)
    }

    fn add_cq(&mut self, kind: CqKind, target: Option<ArgId>, premise: Option<usize>, subject: CqSubject) -> CqId {
        if let Some(id) = self.find_cq(target, &subject) {
            return id;
        }
        let id = CqId(self.cqs.len());
        let node = self.af.add_node();
        self.nodes.push(NodeId::Cq(id));
        if let Some(t) = target {
            self.af.add_attack(node, self.args[t.0].node);
        }
        self.cqs.push(CqNode { id, kind, target, premise, subject, answer: None, node });
        self.assert_bipartite();
        id
    }

    /// Asks CQ1 ("is the plan possible?"). Asking again returns the same id.
    pub fn ask_plan(&mut self) -> CqId {
        self.add_cq(CqKind::Cq1, None, None, CqSubject::Plan(self.plan.clone()))
    }

    /// Asks a question about `subject` of argument `target`. Idempotent.
    pub fn ask(&mut self, target: ArgId, subject: &CqSubject) -> Result<CqId, DialogueError> {
        let candidate = self
            .available(target)?
            .into_iter()
            .map(|(c, _)| c)
            .find(|c| &c.subject == subject)
            .ok_or_else(|| DialogueError::NotAvailable { target, subject: subject.clone() })?;
        debug_assert!(self.argument(target)?.explanation.argument().is_some_and(|a| premise_mentions(
            a,
            candidate.premise,
            &candidate.subject
        )));
        Ok(self.add_cq(candidate.kind, Some(target), Some(candidate.premise), candidate.subject))
    }

    /// Answers `cq` with the argument for its subject, reusing one already
    /// presented. Answering twice returns the same argument.
    pub fn answer(&mut self, cq: CqId) -> Result<ArgId, DialogueError> {
        let q = self.question(cq)?.clone();
        if let Some(a) = q.answer {
            return Ok(a);
        }
        let subject = q.subject.answer_subject();
        let arg = match self.by_subject.get(&subject) {
            Some(&a) => a,
            None => {
                if self.trace.is_none() && subject != Subject::Plan {
                    return Err(DialogueError::NoTrace);
                }
                let e = self.build(&subject).map_err(|error| DialogueError::Unanswerable { cq, error })?;
                self.offer(e)
            }
        };
        self.af.add_attack(self.args[arg.0].node, q.node);
        self.cqs[cq.0].answer = Some(arg);
        self.assert_bipartite();
        Ok(arg)
    }

    /// Asks and answers every available question until nothing new appears.
    /// Returns the questions that could not be answered.
    pub fn explore_all(&mut self) -> Failures {
        let mut failures = Vec::new();
        let cq1 = self.ask_plan();
        if let Err(e) = self.answer(cq1) {
            failures.push((cq1, e));
        }
        let mut seen = 0;
        while seen < self.args.len() {
            let target = ArgId(seen);
            seen += 1;
            let subjects: Vec<CqSubject> =
                self.available(target).expect("known argument").into_iter().map(|(c, _)| c.subject).collect();
            for s in subjects {
                let q = self.ask(target, &s).expect("offered by available");
                if let Err(e) = self.answer(q) {
                    failures.push((q, e));
                }
            }
        }
        failures
    }

    /// Answers every asked question that has no answer yet.
    pub fn answer_pending(&mut self) -> (Vec<(CqId, ArgId)>, Failures) {
        let pending: Vec<CqId> = self.cqs.iter().filter(|q| q.answer.is_none()).map(|q| q.id).collect();
        let mut done = Vec::new();
        let mut failed = Vec::new();
        for q in pending {
            match self.answer(q) {
                Ok(a) => done.push((q, a)),
                Err(e) => failed.push((q, e)),
            }
        }
        (done, failed)
    }

    /// Attacks only run between questions and arguments, and every question
    /// attacks its target and is attacked by its answer.
    fn assert_bipartite(&self) {
        for (from, to) in self.af.attacks() {
            let pair = (self.nodes[from], self.nodes[to]);
            assert!(
                matches!(pair, (NodeId::Arg(_), NodeId::Cq(_)) | (NodeId::Cq(_), NodeId::Arg(_))),
                "attack {} -> {} is not between a question and an argument",
                pair.0,
                pair.1
            );
        }
        for q in &self.cqs {
            if let Some(t) = q.target {
                assert!(self.af.attackers(self.args[t.0].node).contains(&q.node));
            }
            if let Some(a) = q.answer {
                assert!(self.af.attackers(q.node).contains(&self.args[a.0].node));
            }
        }
    }

    /// Questions with no attacking argument.
    pub fn unanswered(&self) -> BTreeSet<CqId> {
        self.cqs
            .iter()
            .filter(|q| !self.af.attackers(q.node).iter().any(|&n| matches!(self.nodes[n], NodeId::Arg(_))))
            .map(|q| q.id)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planning::Goal;
    use crate::sample::{self, atom, unstack};
    use crate::schemes::SchemeKind;

    fn blocks() -> Session {
        Session::new(sample::blocks_world(), sample::solution_plan())
    }

    #[test]
    fn ids_round_trip() {
        assert_eq!(format!("{}", ArgId(0)), "A1");
        assert_eq!("Q12".parse::<CqId>(), Ok(CqId(11)));
        assert_eq!("A3".parse::<NodeId>(), Ok(NodeId::Arg(ArgId(2))));
        assert!("A0".parse::<ArgId>().is_err());
        assert!("X1".parse::<NodeId>().is_err());
    }

    #[test]
    fn session_starts_with_summary() {
        let s = blocks();
        assert_eq!(s.summary(), Some(ArgId(0)));
        assert_eq!(s.framework().len(), 1);
        assert!(s.questions().is_empty());
    }

    #[test]
    fn cq1_reuses_summary() {
        let mut s = blocks();
        let q = s.ask_plan();
        assert_eq!(s.answer(q), Ok(ArgId(0)));
        assert_eq!(s.ask_plan(), q);
        assert_eq!(s.attacks(), alloc::vec![(NodeId::Arg(ArgId(0)), NodeId::Cq(q))]);
    }

    #[test]
    fn cq2_is_idempotent() {
        let mut s = blocks();
        let subject = CqSubject::Action { step: 0, action: unstack("a", "b") };
        let q = s.ask(ArgId(0), &subject).unwrap();
        assert_eq!(s.ask(ArgId(0), &subject).unwrap(), q);
        let a = s.answer(q).unwrap();
        assert_eq!(s.answer(q).unwrap(), a);
        assert_eq!(s.argument(a).unwrap().explanation.scheme(), Some(SchemeKind::Action));
        assert_eq!(s.arguments().len(), 2);
    }

    #[test]
    fn unavailable_question() {
        let mut s = blocks();
        let subject = CqSubject::Goal(Goal::atom(atom("on a c")));
        assert!(matches!(s.ask(ArgId(0), &subject), Err(DialogueError::NotAvailable { .. })));
        assert!(matches!(s.answer(CqId(4)), Err(DialogueError::UnknownCq(_))));
    }

    #[test]
    fn initial_state_answer_is_degenerate() {
        let mut s = blocks();
        let subject = CqSubject::State { index: 0, state: sample::initial_state() };
        let q = s.ask(ArgId(0), &subject).unwrap();
        let a = s.answer(q).unwrap();
        assert!(matches!(s.argument(a).unwrap().explanation, Explanation::InitialState { .. }));
        let g = s.grounded();
        assert_eq!(s.label(&g, NodeId::Cq(q)), Label::Out);
        assert_eq!(s.label(&g, NodeId::Arg(ArgId(0))), Label::In);
    }

    #[test]
    fn full_exploration_is_grounded_cleanly() {
        let mut s = blocks();
        assert!(s.explore_all().is_empty());
        let g = s.grounded();
        for a in s.arguments() {
            assert_eq!(s.label(&g, NodeId::Arg(a.id)), Label::In, "{}", a.id);
        }
        for q in s.questions() {
            assert_eq!(s.label(&g, NodeId::Cq(q.id)), Label::Out, "{}", q.id);
        }
        assert!(s.unanswered().is_empty());
        // Summary + 4 steps + 5 states + 6 goals.
        assert_eq!(s.arguments().len(), 16);
    }

    #[test]
    fn invalid_plan_has_no_summary() {
        let mut plan = sample::solution_plan();
        plan.steps.swap(0, 1);
        let mut s = Session::new(sample::blocks_world(), plan);
        assert_eq!(s.summary(), None);
        let q = s.ask_plan();
        assert!(matches!(s.answer(q), Err(DialogueError::Unanswerable { .. })));
        assert_eq!(s.unanswered().len(), 1);
    }
}
