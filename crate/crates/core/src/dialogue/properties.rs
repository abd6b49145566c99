use alloc::vec::Vec;

use super::cq::CqSubject;
use super::session::{ArgId, CqId, DialogueError, NodeId, Session};
use crate::dung::Label;
use crate::planning::Goal;

/// The four plan-argument properties, with the data that explains each value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    /// Every asked question is attacked by some argument.
    pub complete: bool,
    /// The summary argument is in the grounded extension and no question
    /// against it is.
    pub summary_accepted: bool,
    /// The summary argument is in the grounded extension exactly when every
    /// goal argument is.
    pub goals_consistent: bool,
    /// Stand-in for "acceptable to the user": the three properties above
    /// plus the user's own acceptance of the session. This is a proxy, not
    /// a measurement of user satisfaction.
    pub acceptable_proxy: bool,
    pub user_accepted: bool,
    pub unanswered: Vec<CqId>,
    /// Answers created by this check, question first.
    pub materialized: Vec<(CqId, ArgId)>,
    /// Goals whose argument is absent or not in the grounded extension.
    pub goals_missing: Vec<Goal>,
}

impl Session {
    /// Evaluates the four properties on the session's framework.
    ///
    /// Goal arguments are always added (by asking the goal question of the
    /// summary argument), since the third property is about them. When
    /// `materialize` is set, every other unanswered question is answered
    /// first. Anything added this way is listed in `materialized` and stays
    /// in the session.
    pub fn check_properties(&mut self, materialize: bool) -> Result<PropertyReport, DialogueError> {
        let summary = self.summary().ok_or_else(|| DialogueError::NoSummary(self.verdict().clone()))?;
        let mut materialized = Vec::new();

        let goals: Vec<Goal> = self.problem().goals.iter().cloned().collect();
        for g in &goals {
            let q = self.ask(summary, &CqSubject::Goal(g.clone()))?;
            if self.question(q)?.answer.is_none() {
                if let Ok(a) = self.answer(q) {
                    materialized.push((q, a));
                }
            }
        }
        if materialize {
            let (done, _) = self.answer_pending();
            materialized.extend(done);
        }

        let gr = self.grounded();
        let unanswered: Vec<CqId> = self.unanswered().into_iter().collect();
        let complete = unanswered.is_empty();

        let summary_node = self.framework_index(NodeId::Arg(summary));
        let summary_in = gr.labels[summary_node] == Label::In;
        let attacker_in = self
            .framework()
            .attackers(summary_node)
            .iter()
            .any(|&n| matches!(self.nodes()[n], NodeId::Cq(_)) && gr.labels[n] == Label::In);
        let summary_accepted = summary_in && !attacker_in;

        let goals_missing: Vec<Goal> = goals
            .into_iter()
            .filter(|g| {
                let arg = self.argument_for(&crate::schemes::Subject::Goal(g.clone()));
                !arg.is_some_and(|a| self.label(&gr, NodeId::Arg(a)) == Label::In)
            })
            .collect();
        let goals_consistent = summary_in == goals_missing.is_empty();

        let user_accepted = self.is_accepted();
        Ok(PropertyReport {
            complete,
            summary_accepted,
            goals_consistent,
            acceptable_proxy: complete && summary_accepted && goals_consistent && user_accepted,
            user_accepted,
            unanswered,
            materialized,
            goals_missing,
        })
    }

    fn framework_index(&self, id: NodeId) -> usize {
        self.nodes().iter().position(|n| *n == id).expect("known node")
    }
}
