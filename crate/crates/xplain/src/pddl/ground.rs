use std::collections::BTreeSet;

use xplain_core::planning::{ActionError, PlanningProblem, ProblemError, State, Vocabulary};

use super::domain::{DomainAst, Typed};
use super::problem::ProblemAst;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundOptions {
    /// Skip substitutions that bind two parameters to the same object.
    pub distinct: bool,
    pub max_objects: usize,
    pub max_actions: usize,
}

impl Default for GroundOptions {
    fn default() -> Self {
        GroundOptions { distinct: true, max_objects: 1_000, max_actions: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroundError {
    #[error("{count} objects exceed the limit of {limit}")]
    TooManyObjects { count: usize, limit: usize },
    #[error("grounding {action} would produce more than {limit} actions")]
    TooManyActions { action: String, limit: usize },
    #[error("{0}")]
    Problem(ProblemError),
}

/// Instantiates every template over all type-respecting object tuples.
///
/// Objects are taken in declaration order (problem objects, then domain
/// constants), so the action list is deterministic. Instances that would
/// add and delete the same atom are dropped.
pub fn ground(dom: &DomainAst, prob: &ProblemAst, opts: &GroundOptions) -> Result<PlanningProblem, GroundError> {
    let objects: Vec<&Typed> = prob.all_objects(dom).collect();
    if objects.len() > opts.max_objects {
        return Err(GroundError::TooManyObjects { count: objects.len(), limit: opts.max_objects });
    }
    let mut vocabulary = Vocabulary::new();
    for o in &objects {
        vocabulary.objects.insert(o.name.clone());
    }
    for p in &dom.predicates {
        vocabulary.predicates.insert(p.name.clone(), p.params.len());
    }

    let mut actions = Vec::new();
    for t in &dom.actions {
        let candidates: Vec<Vec<&str>> = t
            .params
            .iter()
            .map(|p| {
                objects
                    .iter()
                    .filter(|o| dom.is_subtype(o.ty.as_deref(), p.ty.as_deref()))
                    .map(|o| o.name.as_str())
                    .collect()
            })
            .collect();
        for tuple in Product::new(&candidates) {
            if opts.distinct && tuple.iter().collect::<BTreeSet<_>>().len() != tuple.len() {
                continue;
            }
            match t.instantiate(&tuple) {
                Ok(a) => actions.push(a),
                Err(ActionError::ConflictingEffects { .. }) => {}
                Err(e) => unreachable!("templates are checked when parsed: {e}"),
            }
            if actions.len() > opts.max_actions {
                return Err(GroundError::TooManyActions { action: t.name.clone(), limit: opts.max_actions });
            }
        }
    }
    let initial: State = prob.init.iter().cloned().collect();
    PlanningProblem::new(&prob.name, vocabulary, initial, prob.goal.clone(), dom.actions.clone(), actions)
        .map_err(GroundError::Problem)
}

/// Cartesian product in lexicographic order of the candidate lists,
/// produced lazily.
struct Product<'a, 'b> {
    lists: &'b [Vec<&'a str>],
    idx: Vec<usize>,
    done: bool,
}

impl<'a, 'b> Product<'a, 'b> {
    fn new(lists: &'b [Vec<&'a str>]) -> Self {
        let done = lists.iter().any(|l| l.is_empty());
        Product { lists, idx: vec![0; lists.len()], done }
    }
}

impl<'a> Iterator for Product<'a, '_> {
    type Item = Vec<&'a str>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.idx.iter().zip(self.lists).map(|(&i, l)| l[i]).collect();
        self.done = true;
        for k in (0..self.idx.len()).rev() {
            self.idx[k] += 1;
            if self.idx[k] < self.lists[k].len() {
                self.done = false;
                break;
            }
            self.idx[k] = 0;
        }
        Some(item)
    }
}
