//! A STRIPS subset of PDDL (`:strips`, `:typing`) plus a line-based plan format.

mod domain;
mod error;
mod ground;
mod lexer;
mod plan;
mod problem;
mod serialize;

pub use domain::{parse_domain, DomainAst, PredicateDecl, Requirement, Typed, OBJECT};
pub use error::{ErrorKind, PddlError, Pos};
pub use ground::{ground, GroundError, GroundOptions};
pub use plan::parse_plan;
pub use problem::{parse_problem, ProblemAst};
pub use serialize::{domain_to_pddl, plan_to_text, problem_to_pddl, step_to_text, trace_to_text};
