use std::collections::BTreeSet;

use xplain_core::planning::{symbol, Atom};

use super::domain::{conjunction, define, expect_list, expect_name, typed_list, DomainAst, Typed};
use super::error::{ErrorKind, PddlError, Pos};
use super::lexer::{read_one, Sexp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemAst {
    pub name: String,
    pub domain: String,
    pub objects: Vec<Typed>,
    pub init: BTreeSet<Atom>,
    pub goal: BTreeSet<Atom>,
}

impl ProblemAst {
    /// Problem objects followed by the domain's constants.
    pub fn all_objects<'a>(&'a self, dom: &'a DomainAst) -> impl Iterator<Item = &'a Typed> + 'a {
        self.objects.iter().chain(dom.constants.iter().filter(|c| !self.objects.iter().any(|o| o.name == c.name)))
    }
}

pub fn parse_problem(text: &str, dom: &DomainAst) -> Result<ProblemAst, PddlError> {
    let root = read_one(text)?;
    let (name, sections) = define(&root, "problem")?;
    let mut prob = ProblemAst { name, domain: String::new(), objects: Vec::new(), init: BTreeSet::new(), goal: BTreeSet::new() };
    let mut seen = BTreeSet::new();
    for section in sections {
        let items = expect_list(section, "a problem section")?;
        let key = section.head().ok_or_else(|| PddlError::syntax(section.pos(), "expected a section keyword"))?;
        if !seen.insert(key.clone()) {
            return Err(PddlError::new(section.pos(), ErrorKind::Duplicate(format!("section {key}"))));
        }
        let body = &items[1..];
        match key.as_str() {
            ":domain" => {
                let [d] = body else {
                    return Err(PddlError::syntax(section.pos(), "expected (:domain NAME)"));
                };
                let found = expect_name(d, "a domain name")?.to_lowercase();
                if found != dom.name {
                    return Err(PddlError::new(d.pos(), ErrorKind::DomainMismatch { expected: dom.name.clone(), found }));
                }
                prob.domain = found;
            }
            ":objects" => {
                if !prob.init.is_empty() || !prob.goal.is_empty() {
                    return Err(PddlError::syntax(section.pos(), ":objects must come before :init and :goal"));
                }
                for (t, pos) in typed_list(body, false)? {
                    if prob.objects.iter().any(|o| o.name == t.name) {
                        return Err(PddlError::new(pos, ErrorKind::Duplicate(format!("object {}", t.name))));
                    }
                    if let Some(ty) = &t.ty {
                        if ty != super::domain::OBJECT && !dom.types.iter().any(|d| &d.name == ty) {
                            return Err(PddlError::new(pos, ErrorKind::UndeclaredType(ty.clone())));
                        }
                    }
                    prob.objects.push(t);
                }
            }
            ":init" => {
                for a in body {
                    let atom = ground_atom(dom, &prob, a)?;
                    prob.init.insert(atom);
                }
            }
            ":goal" => {
                let [g] = body else {
                    return Err(PddlError::syntax(section.pos(), "expected (:goal FORMULA)"));
                };
                for lit in conjunction(g)? {
                    if lit.head().as_deref() == Some("not") {
                        return Err(PddlError::new(lit.pos(), ErrorKind::Unsupported("negative goal".into())));
                    }
                    let atom = ground_atom(dom, &prob, lit)?;
                    prob.goal.insert(atom);
                }
            }
            ":requirements" | ":metric" | ":constraints" => {
                return Err(PddlError::new(section.pos(), ErrorKind::Unsupported(key)));
            }
            _ => return Err(PddlError::syntax(section.pos(), format!("unknown problem section {key}"))),
        }
    }
    if prob.domain.is_empty() {
        return Err(PddlError::syntax(root.pos(), "missing (:domain NAME)"));
    }
    Ok(prob)
}

fn ground_atom(dom: &DomainAst, prob: &ProblemAst, s: &Sexp) -> Result<Atom, PddlError> {
    let items = expect_list(s, "an atom")?;
    let head = items.first().ok_or_else(|| PddlError::syntax(s.pos(), "empty atom"))?;
    if let Some(h @ ("and" | "or" | "not" | "=" | "forall" | "exists")) = s.head().as_deref() {
        return Err(PddlError::new(s.pos(), ErrorKind::Unsupported(format!("{h} here"))));
    }
    let predicate = expect_name(head, "a predicate name")?;
    let decl = dom
        .predicate(&predicate)
        .ok_or_else(|| PddlError::new(head.pos(), ErrorKind::UndeclaredPredicate(predicate.clone())))?;
    if decl.params.len() != items.len() - 1 {
        return Err(PddlError::new(
            s.pos(),
            ErrorKind::Arity { name: predicate, expected: decl.params.len(), found: items.len() - 1 },
        ));
    }
    let mut args = Vec::new();
    for (arg, slot) in items[1..].iter().zip(&decl.params) {
        let w = arg.word().unwrap_or("");
        if w.starts_with('?') {
            return Err(PddlError::syntax(arg.pos(), format!("variable {w} in a ground atom")));
        }
        let name = expect_name(arg, "an object")?;
        let obj = lookup(dom, prob, &name, arg.pos())?;
        if !dom.is_subtype(obj.ty.as_deref(), slot.ty.as_deref()) {
            return Err(PddlError::new(
                arg.pos(),
                ErrorKind::IllTyped { object: name, expected: slot.ty.clone().unwrap_or_default() },
            ));
        }
        args.push(name);
    }
    Ok(Atom { predicate: symbol(&predicate), args })
}

fn lookup<'a>(dom: &'a DomainAst, prob: &'a ProblemAst, name: &str, pos: Pos) -> Result<&'a Typed, PddlError> {
    prob.all_objects(dom)
        .find(|o| o.name == name)
        .ok_or_else(|| PddlError::new(pos, ErrorKind::UndeclaredObject(name.to_string())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pddl::parse_domain;

    fn blocks() -> DomainAst {
        parse_domain(include_str!("../../fixtures/blocksworld/domain.pddl")).unwrap()
    }

    #[test]
    fn blocks_problem() {
        let p = parse_problem(include_str!("../../fixtures/blocksworld/problem.pddl"), &blocks()).unwrap();
        assert_eq!(p.objects.len(), 4);
        assert_eq!(p.init.len(), 5);
        assert_eq!(p.goal.len(), 6);
        assert_eq!(p.goal, xplain_core::sample::goal_state());
    }

    #[test]
    fn undeclared_object() {
        let text = "(define (problem p) (:domain blocks) (:objects a b)\n (:init (on e a)) (:goal (clear a)))";
        let e = parse_problem(text, &blocks()).unwrap_err();
        assert_eq!(e.kind, ErrorKind::UndeclaredObject("E".into()));
        assert_eq!(e.pos, Pos::new(2, 13));
    }

    #[test]
    fn goal_arity() {
        let text = "(define (problem p) (:domain blocks) (:objects a) (:goal (on a)))";
        assert!(matches!(parse_problem(text, &blocks()).unwrap_err().kind, ErrorKind::Arity { expected: 2, found: 1, .. }));
    }

    #[test]
    fn wrong_domain() {
        let text = "(define (problem p) (:domain logistics) (:objects a))";
        assert!(matches!(parse_problem(text, &blocks()).unwrap_err().kind, ErrorKind::DomainMismatch { .. }));
    }

    #[test]
    fn ill_typed() {
        let dom = parse_domain(
            "(define (domain t) (:requirements :typing) (:types block table) (:predicates (on ?x - block ?y - block)))",
        )
        .unwrap();
        let text = "(define (problem p) (:domain t) (:objects a - block t - table) (:init (on a t)))";
        let e = parse_problem(text, &dom).unwrap_err();
        assert_eq!(e.kind, ErrorKind::IllTyped { object: "T".into(), expected: "BLOCK".into() });
    }
}
