use std::fmt::Write;

use xplain_core::planning::{Atom, GroundAction, LiftedAtom, Parameter, Plan, PlanStep, Term, Trace};

use super::domain::{DomainAst, Typed};
use super::problem::ProblemAst;

fn lower(s: &str) -> String {
    s.to_lowercase()
}

fn lifted(a: &LiftedAtom) -> String {
    let mut out = format!("({}", lower(&a.predicate));
    for t in &a.terms {
        match t {
            Term::Var(v) => write!(out, " ?{}", lower(v)).unwrap(),
            Term::Const(c) => write!(out, " {}", lower(c)).unwrap(),
        }
    }
    out.push(')');
    out
}

fn atom(a: &Atom) -> String {
    let mut out = format!("({}", lower(&a.predicate));
    for x in &a.args {
        write!(out, " {}", lower(x)).unwrap();
    }
    out.push(')');
    out
}

fn action_call(a: &GroundAction) -> String {
    let mut out = format!("({}", lower(&a.name));
    for x in &a.args {
        write!(out, " {}", lower(x)).unwrap();
    }
    out.push(')');
    out
}

/// Writes `a b - t c - u`, spelling out `- object` where a later type
/// would otherwise be read as applying to untyped names.
fn typed(items: &[(String, Option<String>)], var: bool) -> String {
    let mut words: Vec<String> = Vec::new();
    for (i, (name, ty)) in items.iter().enumerate() {
        words.push(if var { format!("?{}", lower(name)) } else { lower(name) });
        let next = items.get(i + 1).map(|n| &n.1);
        if next != Some(ty) {
            match ty {
                Some(t) => words.push(format!("- {}", lower(t))),
                None if next.is_some() => words.push("- object".into()),
                None => {}
            }
        }
    }
    words.join(" ")
}

fn names(list: &[Typed]) -> Vec<(String, Option<String>)> {
    list.iter().map(|t| (t.name.clone(), t.ty.clone())).collect()
}

fn params(list: &[Parameter]) -> Vec<(String, Option<String>)> {
    list.iter().map(|p| (p.name.clone(), p.ty.clone())).collect()
}

fn and<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> String) -> String {
    let parts: Vec<String> = items.into_iter().map(f).collect();
    format!("(and{}{})", if parts.is_empty() { "" } else { " " }, parts.join(" "))
}

pub fn domain_to_pddl(d: &DomainAst) -> String {
    let mut out = format!("(define (domain {})\n", d.name);
    if !d.requirements.is_empty() {
        let reqs: Vec<&str> = d.requirements.iter().map(|r| r.keyword()).collect();
        writeln!(out, "  (:requirements {})", reqs.join(" ")).unwrap();
    }
    if !d.types.is_empty() {
        writeln!(out, "  (:types {})", typed(&names(&d.types), false)).unwrap();
    }
    if !d.constants.is_empty() {
        writeln!(out, "  (:constants {})", typed(&names(&d.constants), false)).unwrap();
    }
    if !d.predicates.is_empty() {
        out.push_str("  (:predicates");
        for p in &d.predicates {
            let args = typed(&params(&p.params), true);
            let sep = if args.is_empty() { "" } else { " " };
            write!(out, "\n    ({}{sep}{args})", lower(&p.name)).unwrap();
        }
        out.push_str(")\n");
    }
    for a in &d.actions {
        writeln!(out, "  (:action {}", lower(&a.name)).unwrap();
        write!(out, "    :parameters ({})", typed(&params(&a.params), true)).unwrap();
        if !a.pre.is_empty() {
            write!(out, "\n    :precondition {}", and(&a.pre, lifted)).unwrap();
        }
        if !a.add.is_empty() || !a.del.is_empty() {
            let effects = a.add.iter().map(lifted).chain(a.del.iter().map(|x| format!("(not {})", lifted(x))));
            write!(out, "\n    :effect {}", and(effects, |e| e)).unwrap();
        }
        out.push_str(")\n");
    }
    out.push_str(")\n");
    out
}

pub fn problem_to_pddl(p: &ProblemAst) -> String {
    let mut out = format!("(define (problem {})\n  (:domain {})\n", p.name, p.domain);
    writeln!(out, "  (:objects {})", typed(&names(&p.objects), false)).unwrap();
    let init: Vec<String> = p.init.iter().map(atom).collect();
    writeln!(out, "  (:init{}{})", if init.is_empty() { "" } else { " " }, init.join(" ")).unwrap();
    writeln!(out, "  (:goal {}))", and(&p.goal, atom)).unwrap();
    out
}

pub fn step_to_text(step: &PlanStep) -> String {
    match step {
        PlanStep::Single(a) => action_call(a),
        PlanStep::Concurrent(v) => {
            let calls: Vec<String> = v.iter().map(action_call).collect();
            format!("{{{}}}", calls.join(" "))
        }
    }
}

pub fn plan_to_text(plan: &Plan) -> String {
    plan.steps.iter().map(|s| step_to_text(s) + "\n").collect()
}

/// One line per state, atoms in lexicographic order.
pub fn trace_to_text(trace: &Trace) -> String {
    trace.states.iter().enumerate().map(|(i, s)| format!("S{i}: {s}\n")).collect()
}
