use std::fmt;

use xplain_core::planning::{Plan, PlanningProblem};

use crate::pddl::{self, GroundError, GroundOptions, PddlError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Domain,
    Problem,
    Plan,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Domain => "domain",
            Source::Problem => "problem",
            Source::Plan => "plan",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{file}:{error}")]
    Parse { file: Source, error: PddlError },
    #[error("{0}")]
    Ground(#[from] GroundError),
}

/// Parses and grounds a domain and problem, then resolves the plan against them.
pub fn load(domain: &str, problem: &str, plan: &str, opts: &GroundOptions) -> Result<(PlanningProblem, Plan), LoadError> {
    let parse = |source| move |error| LoadError::Parse { file: source, error };
    let dom = pddl::parse_domain(domain).map_err(parse(Source::Domain))?;
    let prob = pddl::parse_problem(problem, &dom).map_err(parse(Source::Problem))?;
    let grounded = pddl::ground(&dom, &prob, opts)?;
    let plan = pddl::parse_plan(plan, &grounded).map_err(parse(Source::Plan))?;
    Ok((grounded, plan))
}
