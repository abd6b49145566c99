//! The five explanation schemes, instantiated over a validated trace.

mod argument;
mod build;
mod render;
mod verify;

pub use argument::{
    Achiever, Argument, Claim, Conclusion, Explanation, Interleaving, Outcome, Premise, PremiseKind, SchemeKind,
    StateRef, Subject, Transition,
};
pub use build::{
    build_action_argument, build_concurrent_argument, build_goal_argument, build_plan_summary_argument,
    build_state_argument, SchemeError, StepShape,
};
pub(crate) use build::summary_from_trace;
pub use render::{
    conclusion_formal, conclusion_text, premise_formal, premise_text, render_argument, render_explanation,
    render_premise, render_with_id,
};
pub use verify::{verify_argument, Unsound};
