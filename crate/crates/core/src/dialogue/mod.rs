//! Critical-question dialogues over a plan and the argumentation framework
//! they build up.

mod cq;
mod export;
mod properties;
mod session;

pub use cq::{available_cqs, explanation_cqs, premise_mentions, CqCandidate, CqKind, CqSubject};
pub use export::to_dot;
pub use properties::PropertyReport;
pub use session::{ArgId, ArgNode, CqId, CqNode, DialogueError, Failures, NodeId, Session, DEFAULT_GOAL_BOUND};
