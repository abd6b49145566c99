//! The four-block world used throughout the documentation and tests.
//!
//! Three predicates (`ON`, `ONTABLE`, `CLEAR`), two action templates
//! (`UNSTACK`, `STACK`) and the tower `A/B/C/D` that is rearranged into the
//! towers `C/A` and `D/B`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::planning::{
    ActionSchema, Atom, GroundAction, LiftedAtom, Parameter, Plan, PlanStep, PlanningProblem, State, Term,
    Vocabulary,
};

/// Parses `"on a b"` into `ON(A,B)`.
pub fn atom(text: &str) -> Atom {
    let mut words = text.split_whitespace();
    let predicate = words.next().expect("atom text needs a predicate");
    Atom::new(predicate, words)
}

pub fn atoms(texts: &[&str]) -> BTreeSet<Atom> {
    texts.iter().map(|t| atom(t)).collect()
}

pub fn state(texts: &[&str]) -> State {
    texts.iter().map(|t| atom(t)).collect()
}

fn lifted(text: &str) -> LiftedAtom {
    let mut words = text.split_whitespace();
    let predicate = crate::planning::symbol(words.next().unwrap());
    let terms = words
        .map(|w| match w.strip_prefix('?') {
            Some(v) => Term::Var(crate::planning::symbol(v)),
            None => Term::Const(crate::planning::symbol(w)),
        })
        .collect();
    LiftedAtom { predicate, terms }
}

fn schema(name: &str, pre: &[&str], add: &[&str], del: &[&str]) -> ActionSchema {
    ActionSchema {
        name: crate::planning::symbol(name),
        params: ["X", "Y"].iter().map(|p| Parameter { name: String::from(*p), ty: None }).collect(),
        pre: pre.iter().map(|t| lifted(t)).collect(),
        add: add.iter().map(|t| lifted(t)).collect(),
        del: del.iter().map(|t| lifted(t)).collect(),
    }
}

pub fn unstack_schema() -> ActionSchema {
    schema("unstack", &["clear ?x", "on ?x ?y"], &["ontable ?x", "clear ?y"], &["on ?x ?y"])
}

pub fn stack_schema() -> ActionSchema {
    schema(
        "stack",
        &["ontable ?x", "clear ?x", "clear ?y"],
        &["on ?x ?y"],
        &["ontable ?x", "clear ?y"],
    )
}

/// `UNSTACK(x,y)`: pick up the clear block `x` from `y` and put it on the table.
pub fn unstack(x: &str, y: &str) -> GroundAction {
    unstack_schema().instantiate(&[x.to_uppercase(), y.to_uppercase()]).unwrap()
}

/// `STACK(x,y)`: place the clear block `x` from the table onto the clear block `y`.
pub fn stack(x: &str, y: &str) -> GroundAction {
    stack_schema().instantiate(&[x.to_uppercase(), y.to_uppercase()]).unwrap()
}

pub const BLOCKS: [&str; 4] = ["A", "B", "C", "D"];

pub fn initial_state() -> State {
    state(&["ontable d", "on c d", "on b c", "on a b", "clear a"])
}

pub fn goal_state() -> BTreeSet<Atom> {
    atoms(&["on c a", "on d b", "ontable a", "ontable b", "clear c", "clear d"])
}

/// The problem with both templates grounded over ordered pairs of distinct blocks.
pub fn blocks_world() -> PlanningProblem {
    let vocabulary = BLOCKS
        .iter()
        .fold(Vocabulary::new(), |v, b| v.with_object(b))
        .with_predicate("on", 2)
        .with_predicate("ontable", 1)
        .with_predicate("clear", 1);
    let templates = alloc::vec![unstack_schema(), stack_schema()];
    let mut actions = Vec::new();
    for t in &templates {
        for x in BLOCKS {
            for y in BLOCKS {
                if x != y {
                    actions.push(t.instantiate(&[x, y]).unwrap());
                }
            }
        }
    }
    PlanningProblem::new("blocks", vocabulary, initial_state(), goal_state(), templates, actions)
        .expect("the sample problem is well formed")
}

/// `⟨UNSTACK(A,B), UNSTACK(B,C), UNSTACK(C,D), (STACK(C,A), STACK(D,B))⟩`
pub fn solution_plan() -> Plan {
    Plan::new(alloc::vec![
        PlanStep::Single(unstack("a", "b")),
        PlanStep::Single(unstack("b", "c")),
        PlanStep::Single(unstack("c", "d")),
        PlanStep::concurrent([stack("c", "a"), stack("d", "b")]).unwrap(),
    ])
}

/// The five states visited by [`solution_plan`].
pub fn solution_states() -> [State; 5] {
    [
        initial_state(),
        state(&["ontable d", "on c d", "on b c", "clear a", "clear b", "ontable a"]),
        state(&["ontable d", "on c d", "clear a", "clear b", "clear c", "ontable a", "ontable b"]),
        state(&[
            "ontable d", "clear a", "clear b", "clear c", "clear d", "ontable a", "ontable b", "ontable c",
        ]),
        state(&["on c a", "on d b", "ontable a", "ontable b", "clear c", "clear d"]),
    ]
}
