//! JSON documents shared by the HTTP service and the `export-af` command.
//!
//! Field names are camelCase. Every argument document carries both the
//! rendered text (the same string the command line prints) and the
//! structured payload it was rendered from.

use serde::{Deserialize, Serialize};
use xplain_core::dialogue::{ArgId, CqCandidate, CqId, CqNode, NodeId, PropertyReport, Session};
use xplain_core::dung::{Framework, Label};
use xplain_core::planning::{Failure, Site, SolutionVerdict};
use xplain_core::schemes::{
    conclusion_formal, conclusion_text, premise_formal, premise_text, render_explanation, Claim, Conclusion,
    Explanation, PremiseKind, SchemeKind,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PremiseDoc {
    pub index: usize,
    pub kind: PremiseKind,
    pub formal: String,
    pub text: String,
    pub payload: Claim,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConclusionDoc {
    /// Variant name: `Execute`, `ExecuteConcurrent`, `StateTrue`, `Achieve` or `Solution`.
    pub kind: String,
    pub formal: String,
    pub text: String,
    pub payload: Conclusion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArgumentDoc {
    pub id: String,
    /// `argument`, `initialState` or `holdsInitially`.
    pub kind: String,
    pub scheme: Option<SchemeKind>,
    pub title: String,
    pub subject: String,
    pub premises: Vec<PremiseDoc>,
    pub conclusion: Option<ConclusionDoc>,
    /// Identical to `xplain explain` output for the same target.
    pub text: String,
    pub label: Label,
}

fn conclusion_kind(c: &Conclusion) -> &'static str {
    match c {
        Conclusion::Execute { .. } => "Execute",
        Conclusion::ExecuteConcurrent { .. } => "ExecuteConcurrent",
        Conclusion::StateTrue { .. } => "StateTrue",
        Conclusion::Achieve { .. } => "Achieve",
        Conclusion::Solution { .. } => "Solution",
    }
}

pub fn argument_doc(id: ArgId, e: &Explanation, label: Label) -> ArgumentDoc {
    let text = render_explanation(e);
    let subject = e.subject().to_string();
    match e {
        Explanation::Argument(a) => ArgumentDoc {
            id: id.to_string(),
            kind: "argument".into(),
            scheme: Some(a.scheme),
            title: a.scheme.title().into(),
            subject,
            premises: a
                .premises
                .iter()
                .map(|p| PremiseDoc {
                    index: p.index,
                    kind: p.claim.kind(),
                    formal: premise_formal(p),
                    text: premise_text(a.scheme, p),
                    payload: p.claim.clone(),
                })
                .collect(),
            conclusion: Some(ConclusionDoc {
                kind: conclusion_kind(&a.conclusion).into(),
                formal: conclusion_formal(&a.conclusion),
                text: conclusion_text(&a.conclusion),
                payload: a.conclusion.clone(),
            }),
            text,
            label,
        },
        Explanation::InitialState { .. } | Explanation::HoldsInitially { .. } => ArgumentDoc {
            id: id.to_string(),
            kind: if matches!(e, Explanation::InitialState { .. }) { "initialState" } else { "holdsInitially" }.into(),
            scheme: None,
            title: if matches!(e, Explanation::InitialState { .. }) { "Initial state" } else { "Holds initially" }
                .into(),
            subject,
            premises: Vec::new(),
            conclusion: None,
            text,
            label,
        },
    }
}

pub fn session_argument_doc(session: &Session, id: ArgId) -> Option<ArgumentDoc> {
    let node = session.argument(id).ok()?;
    let gr = session.grounded();
    Some(argument_doc(id, &node.explanation, session.label(&gr, NodeId::Arg(id))))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FailureDoc {
    pub condition: u8,
    pub explanation: String,
    pub step: Option<usize>,
    /// Atoms the failing step needed but did not find.
    pub missing: Vec<String>,
    pub goal: Option<String>,
    pub site: Site,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictDoc {
    pub is_solution: bool,
    pub satisfied_goals: Vec<String>,
    pub failures: Vec<FailureDoc>,
    pub text: String,
}

fn failure_doc(f: &Failure) -> FailureDoc {
    let (step, missing, goal) = match &f.site {
        Site::Step { index, failure, .. } => {
            (Some(*index), failure.missing().iter().map(ToString::to_string).collect(), None)
        }
        Site::Goal(g) => (None, Vec::new(), Some(g.to_string())),
        Site::Initial | Site::GoalSet => (None, Vec::new(), None),
    };
    FailureDoc {
        condition: f.condition.number(),
        explanation: f.explanation.clone(),
        step,
        missing,
        goal,
        site: f.site.clone(),
    }
}

/// The report `xplain validate` prints.
pub fn verdict_text(v: &SolutionVerdict) -> String {
    let mut out = String::new();
    if v.is_solution {
        out.push_str("The plan is a solution.\n");
        for c in 1..=4 {
            out.push_str(&format!("  condition {c}: ok\n"));
        }
        out.push_str(&format!("Satisfied goals ({}):\n", v.satisfied_goals.len()));
        for g in &v.satisfied_goals {
            out.push_str(&format!("  {g}\n"));
        }
    } else {
        out.push_str("The plan is not a solution.\n");
        for f in &v.failures {
            out.push_str(&format!("  {f}\n"));
        }
    }
    out
}

pub fn verdict_doc(v: &SolutionVerdict) -> VerdictDoc {
    VerdictDoc {
        is_solution: v.is_solution,
        satisfied_goals: v.satisfied_goals.iter().map(ToString::to_string).collect(),
        failures: v.failures.iter().map(failure_doc).collect(),
        text: verdict_text(v),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CqDoc {
    /// `A1.3` for the third question available on `A1`; `plan` for CQ1.
    pub key: String,
    /// Set once the question has been asked.
    pub id: Option<String>,
    pub kind: String,
    pub target: Option<String>,
    pub premise: Option<usize>,
    pub question: String,
    pub subject: xplain_core::dialogue::CqSubject,
    pub answer: Option<String>,
    pub label: Option<Label>,
}

pub fn candidate_doc(session: &Session, target: ArgId, n: usize, c: &CqCandidate, asked: Option<CqId>) -> CqDoc {
    let node = asked.and_then(|q| session.question(q).ok());
    let gr = session.grounded();
    CqDoc {
        key: format!("{target}.{}", n + 1),
        id: asked.map(|q| q.to_string()),
        kind: c.kind.to_string(),
        target: Some(target.to_string()),
        premise: Some(c.premise),
        question: c.subject.question(),
        subject: c.subject.clone(),
        answer: node.and_then(|q| q.answer).map(|a| a.to_string()),
        label: asked.map(|q| session.label(&gr, NodeId::Cq(q))),
    }
}

/// The key a question is addressed by before it is asked.
fn cq_key(session: &Session, q: &CqNode) -> String {
    let Some(target) = q.target else { return "plan".into() };
    session
        .available(target)
        .ok()
        .and_then(|list| list.iter().position(|(c, _)| c.subject == q.subject))
        .map_or_else(|| q.id.to_string(), |n| format!("{target}.{}", n + 1))
}

pub fn question_doc(session: &Session, q: &CqNode) -> CqDoc {
    let gr = session.grounded();
    CqDoc {
        key: cq_key(session, q),
        id: Some(q.id.to_string()),
        kind: q.kind.to_string(),
        target: q.target.map(|a| a.to_string()),
        premise: q.premise,
        question: q.subject.question(),
        subject: q.subject.clone(),
        answer: q.answer.map(|a| a.to_string()),
        label: Some(session.label(&gr, NodeId::Cq(q.id))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AfNodeDoc {
    pub id: String,
    /// `argument` or `question`.
    pub kind: String,
    pub label: Label,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroundedDoc {
    #[serde(rename = "in")]
    pub in_set: Vec<String>,
    #[serde(rename = "out")]
    pub out_set: Vec<String>,
    #[serde(rename = "undec")]
    pub undec_set: Vec<String>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AfDoc {
    pub nodes: Vec<AfNodeDoc>,
    pub attacks: Vec<EdgeDoc>,
    /// Question id to the argument answering it.
    pub answered: Vec<EdgeDoc>,
    pub grounded: GroundedDoc,
}

pub fn af_doc(session: &Session) -> AfDoc {
    let gr = session.grounded();
    let name = |i: usize| session.nodes()[i].to_string();
    let nodes = session
        .nodes()
        .iter()
        .map(|&id| {
            let (kind, text) = match id {
                NodeId::Arg(a) => ("argument", session.argument(a).map(|n| n.text()).unwrap_or_default()),
                NodeId::Cq(q) => ("question", session.question(q).map(|n| n.text()).unwrap_or_default()),
            };
            AfNodeDoc { id: id.to_string(), kind: kind.into(), label: session.label(&gr, id), text }
        })
        .collect();
    let attacks = session.attacks().into_iter().map(|(f, t)| EdgeDoc { from: f.to_string(), to: t.to_string() }).collect();
    let answered = session
        .questions()
        .iter()
        .filter_map(|q| q.answer.map(|a| EdgeDoc { from: q.id.to_string(), to: a.to_string() }))
        .collect();
    let set = |s: std::collections::BTreeSet<usize>| s.into_iter().map(name).collect();
    AfDoc {
        nodes,
        attacks,
        answered,
        grounded: GroundedDoc {
            in_set: set(gr.in_set()),
            out_set: set(gr.out_set()),
            undec_set: set(gr.undec_set()),
            iterations: gr.iterations,
        },
    }
}

impl AfDoc {
    /// Rebuilds the bare framework, with node `i` being `nodes[i]`.
    pub fn to_framework(&self) -> Result<Framework, String> {
        let mut af = Framework::new(self.nodes.len());
        let index = |id: &str| {
            self.nodes.iter().position(|n| n.id == id).ok_or_else(|| format!("attack names unknown node {id}"))
        };
        for e in &self.attacks {
            af.add_attack(index(&e.from)?, index(&e.to)?);
        }
        Ok(af)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertiesDoc {
    /// Every asked question is answered by some argument.
    pub property1: bool,
    /// The summary argument is in the grounded extension and no question attacking it is.
    pub property2: bool,
    /// The summary argument is in exactly when all goal arguments are.
    pub property3: bool,
    /// A proxy for the subjective fourth property: 1 to 3 hold and the user accepted.
    pub property4_proxy: bool,
    pub user_accepted: bool,
    pub unanswered: Vec<String>,
    pub materialized: Vec<EdgeDoc>,
    pub goals_missing: Vec<String>,
}

pub fn properties_doc(r: &PropertyReport) -> PropertiesDoc {
    PropertiesDoc {
        property1: r.complete,
        property2: r.summary_accepted,
        property3: r.goals_consistent,
        property4_proxy: r.acceptable_proxy,
        user_accepted: r.user_accepted,
        unanswered: r.unanswered.iter().map(ToString::to_string).collect(),
        materialized: r.materialized.iter().map(|(q, a)| EdgeDoc { from: q.to_string(), to: a.to_string() }).collect(),
        goals_missing: r.goals_missing.iter().map(ToString::to_string).collect(),
    }
}

/// Human-readable property report, as printed when a dialogue ends.
pub fn properties_text(r: &PropertyReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    out.push_str(&format!("Property 1 (every question answered): {}\n", yn(r.complete)));
    out.push_str(&format!("Property 2 (summary argument accepted): {}\n", yn(r.summary_accepted)));
    out.push_str(&format!("Property 3 (summary accepted iff all goal arguments are): {}\n", yn(r.goals_consistent)));
    out.push_str(&format!(
        "Property 4 (proxy: properties 1-3 and marked accepted by the user): {}\n",
        yn(r.acceptable_proxy)
    ));
    if !r.unanswered.is_empty() {
        let ids: Vec<String> = r.unanswered.iter().map(ToString::to_string).collect();
        out.push_str(&format!("Unanswered: {}\n", ids.join(", ")));
    }
    if !r.materialized.is_empty() {
        let ids: Vec<String> = r.materialized.iter().map(|(q, a)| format!("{q}->{a}")).collect();
        out.push_str(&format!("Answered during the check: {}\n", ids.join(", ")));
    }
    if !r.goals_missing.is_empty() {
        let gs: Vec<String> = r.goals_missing.iter().map(ToString::to_string).collect();
        out.push_str(&format!("Goals without an accepted argument: {}\n", gs.join(", ")));
    }
    out
}
