use std::collections::{BTreeMap, BTreeSet};

use xplain_core::planning::{symbol, ActionSchema, LiftedAtom, Parameter, Term};

use super::error::{ErrorKind, PddlError, Pos};
use super::lexer::{read_one, Sexp};

/// The root of every type hierarchy.
pub const OBJECT: &str = "OBJECT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Requirement {
    Strips,
    Typing,
}

impl Requirement {
    pub fn keyword(self) -> &'static str {
        match self {
            Requirement::Strips => ":strips",
            Requirement::Typing => ":typing",
        }
    }
}

/// A name with an optional declared type (`None` is `object`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Typed {
    pub name: String,
    pub ty: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateDecl {
    pub name: String,
    pub params: Vec<Parameter>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainAst {
    pub name: String,
    pub requirements: BTreeSet<Requirement>,
    /// Declared types with their parent.
    pub types: Vec<Typed>,
    pub constants: Vec<Typed>,
    pub predicates: Vec<PredicateDecl>,
    pub actions: Vec<ActionSchema>,
}

impl DomainAst {
    pub fn predicate(&self, name: &str) -> Option<&PredicateDecl> {
        self.predicates.iter().find(|p| p.name == name)
    }

    pub fn action(&self, name: &str) -> Option<&ActionSchema> {
        self.actions.iter().find(|a| a.name == name)
    }

    /// `ty` and all its ancestors, nearest first.
    pub fn ancestors(&self, ty: &str) -> Vec<String> {
        let parents: BTreeMap<&str, &str> =
            self.types.iter().map(|t| (t.name.as_str(), t.ty.as_deref().unwrap_or(OBJECT))).collect();
        let mut out = vec![ty.to_string()];
        let mut cur = ty;
        while let Some(&p) = parents.get(cur) {
            if out.iter().any(|t| t == p) {
                break;
            }
            out.push(p.to_string());
            cur = p;
        }
        if !out.iter().any(|t| t == OBJECT) {
            out.push(OBJECT.to_string());
        }
        out
    }

    /// Whether something declared as `ty` may fill a slot of type `slot`.
    pub fn is_subtype(&self, ty: Option<&str>, slot: Option<&str>) -> bool {
        match slot {
            None => true,
            Some(s) if s == OBJECT => true,
            Some(s) => self.ancestors(ty.unwrap_or(OBJECT)).iter().any(|t| t == s),
        }
    }
}

pub(crate) fn expect_list<'a>(s: &'a Sexp, what: &str) -> Result<&'a [Sexp], PddlError> {
    s.list().ok_or_else(|| PddlError::syntax(s.pos(), format!("expected {what}")))
}

pub(crate) fn expect_word<'a>(s: &'a Sexp, what: &str) -> Result<&'a str, PddlError> {
    s.word().ok_or_else(|| PddlError::syntax(s.pos(), format!("expected {what}")))
}

pub(crate) fn expect_name(s: &Sexp, what: &str) -> Result<String, PddlError> {
    let w = expect_word(s, what)?;
    if w.starts_with('?') || w.starts_with(':') || w == "-" {
        return Err(PddlError::syntax(s.pos(), format!("expected {what}, found {w}")));
    }
    Ok(symbol(w))
}

/// Checks for `(define (<kind> NAME) ...)` and returns the name and the sections.
pub(crate) fn define<'a>(root: &'a Sexp, kind: &str) -> Result<(String, &'a [Sexp]), PddlError> {
    let items = expect_list(root, "(define ...)")?;
    match items.first().and_then(Sexp::word) {
        Some(w) if w.eq_ignore_ascii_case("define") => {}
        _ => return Err(PddlError::syntax(root.pos(), "expected (define ...)")),
    }
    let header = items.get(1).ok_or_else(|| PddlError::syntax(root.pos(), format!("expected ({kind} NAME)")))?;
    let h = expect_list(header, &format!("({kind} NAME)"))?;
    if h.len() != 2 || !h[0].word().is_some_and(|w| w.eq_ignore_ascii_case(kind)) {
        return Err(PddlError::syntax(header.pos(), format!("expected ({kind} NAME)")));
    }
    // Names keep PDDL's case-insensitivity by being stored lower-case.
    Ok((expect_name(&h[1], "a name")?.to_lowercase(), &items[2..]))
}

/// Reads `a b - t c` style lists. Variables keep no `?` and names are upper-cased.
pub(crate) fn typed_list(items: &[Sexp], variables: bool) -> Result<Vec<(Typed, Pos)>, PddlError> {
    let mut out: Vec<(Typed, Pos)> = Vec::new();
    let mut pending = 0;
    let mut i = 0;
    while i < items.len() {
        let w = expect_word(&items[i], "a name")?;
        if w == "-" {
            let ty = items
                .get(i + 1)
                .ok_or_else(|| PddlError::syntax(items[i].pos(), "expected a type after '-'"))?;
            if pending == 0 {
                return Err(PddlError::syntax(items[i].pos(), "'-' without names before it"));
            }
            let ty = expect_name(ty, "a type name")?;
            // `- object` is the same as no type at all.
            let ty = (ty != OBJECT).then_some(ty);
            let n = out.len();
            for (t, _) in &mut out[n - pending..] {
                t.ty = ty.clone();
            }
            pending = 0;
            i += 2;
            continue;
        }
        let name = if variables {
            match w.strip_prefix('?') {
                Some(v) if !v.is_empty() => symbol(v),
                _ => return Err(PddlError::syntax(items[i].pos(), format!("expected a ?variable, found {w}"))),
            }
        } else {
            expect_name(&items[i], "a name")?
        };
        out.push((Typed { name, ty: None }, items[i].pos()));
        pending += 1;
        i += 1;
    }
    Ok(out)
}

fn no_duplicates(list: &[(Typed, Pos)], what: &str) -> Result<(), PddlError> {
    let mut seen = BTreeSet::new();
    for (t, pos) in list {
        if !seen.insert(&t.name) {
            return Err(PddlError::new(*pos, ErrorKind::Duplicate(format!("{what} {}", t.name))));
        }
    }
    Ok(())
}

pub fn parse_domain(text: &str) -> Result<DomainAst, PddlError> {
    let root = read_one(text)?;
    let (name, sections) = define(&root, "domain")?;
    let mut dom = DomainAst {
        name,
        requirements: BTreeSet::new(),
        types: Vec::new(),
        constants: Vec::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for section in sections {
        let items = expect_list(section, "a domain section")?;
        let key = section.head().ok_or_else(|| PddlError::syntax(section.pos(), "expected a section keyword"))?;
        if key != ":action" && !seen.insert(key.clone()) {
            return Err(PddlError::new(section.pos(), ErrorKind::Duplicate(format!("section {key}"))));
        }
        let body = &items[1..];
        match key.as_str() {
            ":requirements" => {
                for r in body {
                    let w = expect_word(r, "a requirement")?.to_lowercase();
                    let req = match w.as_str() {
                        ":strips" => Requirement::Strips,
                        ":typing" => Requirement::Typing,
                        _ => return Err(PddlError::new(r.pos(), ErrorKind::UnsupportedRequirement(w))),
                    };
                    dom.requirements.insert(req);
                }
            }
            ":types" => {
                if !dom.actions.is_empty() || !dom.predicates.is_empty() || !dom.constants.is_empty() {
                    return Err(PddlError::syntax(section.pos(), ":types must come before its uses"));
                }
                let list = typed_list(body, false)?;
                no_duplicates(&list, "type")?;
                dom.types = list.into_iter().map(|(t, _)| t).collect();
                for t in &dom.types {
                    if let Some(p) = &t.ty {
                        if p != OBJECT && !dom.types.iter().any(|d| &d.name == p) {
                            return Err(PddlError::new(section.pos(), ErrorKind::UndeclaredType(p.clone())));
                        }
                    }
                }
            }
            ":constants" => {
                let list = typed_list(body, false)?;
                no_duplicates(&list, "constant")?;
                for (t, pos) in &list {
                    check_type(&dom, t.ty.as_deref(), *pos)?;
                }
                dom.constants = list.into_iter().map(|(t, _)| t).collect();
            }
            ":predicates" => {
                for p in body {
                    let decl = expect_list(p, "a predicate declaration")?;
                    let name = expect_name(
                        decl.first().ok_or_else(|| PddlError::syntax(p.pos(), "empty predicate declaration"))?,
                        "a predicate name",
                    )?;
                    if dom.predicate(&name).is_some() {
                        return Err(PddlError::new(p.pos(), ErrorKind::Duplicate(format!("predicate {name}"))));
                    }
                    let params = typed_list(&decl[1..], true)?;
                    no_duplicates(&params, "parameter")?;
                    for (t, pos) in &params {
                        check_type(&dom, t.ty.as_deref(), *pos)?;
                    }
                    let params = params.into_iter().map(|(t, _)| Parameter { name: t.name, ty: t.ty }).collect();
                    dom.predicates.push(PredicateDecl { name, params });
                }
            }
            ":action" => {
                let a = parse_action(&dom, section, body)?;
                if dom.action(&a.name).is_some() {
                    return Err(PddlError::new(section.pos(), ErrorKind::Duplicate(format!("action {}", a.name))));
                }
                dom.actions.push(a);
            }
            ":functions" | ":derived" | ":durative-action" | ":constraints" => {
                return Err(PddlError::new(section.pos(), ErrorKind::Unsupported(key)));
            }
            _ => return Err(PddlError::syntax(section.pos(), format!("unknown domain section {key}"))),
        }
    }
    Ok(dom)
}

fn check_type(dom: &DomainAst, ty: Option<&str>, pos: Pos) -> Result<(), PddlError> {
    match ty {
        None => Ok(()),
        Some(t) if t == OBJECT || dom.types.iter().any(|d| d.name == t) => Ok(()),
        Some(t) => Err(PddlError::new(pos, ErrorKind::UndeclaredType(t.to_string()))),
    }
}

fn parse_action(dom: &DomainAst, section: &Sexp, body: &[Sexp]) -> Result<ActionSchema, PddlError> {
    let name = expect_name(body.first().ok_or_else(|| PddlError::syntax(section.pos(), "expected an action name"))?, "an action name")?;
    let mut params = None;
    let mut pre = None;
    let mut effect = None;
    let mut i = 1;
    while i < body.len() {
        let key = expect_word(&body[i], "an action keyword")?.to_lowercase();
        let value = body
            .get(i + 1)
            .ok_or_else(|| PddlError::syntax(body[i].pos(), format!("{key} needs a value")))?;
        let slot = match key.as_str() {
            ":parameters" => &mut params,
            ":precondition" => &mut pre,
            ":effect" => &mut effect,
            _ => return Err(PddlError::syntax(body[i].pos(), format!("unknown action keyword {key}"))),
        };
        if slot.is_some() {
            return Err(PddlError::new(body[i].pos(), ErrorKind::Duplicate(format!("{key} of action {name}"))));
        }
        *slot = Some(value);
        i += 2;
    }

    let mut schema = ActionSchema {
        name: name.clone(),
        params: Vec::new(),
        pre: BTreeSet::new(),
        add: BTreeSet::new(),
        del: BTreeSet::new(),
    };
    if let Some(p) = params {
        let list = typed_list(expect_list(p, "a parameter list")?, true)?;
        no_duplicates(&list, "parameter")?;
        for (t, pos) in &list {
            check_type(dom, t.ty.as_deref(), *pos)?;
        }
        schema.params = list.into_iter().map(|(t, _)| Parameter { name: t.name, ty: t.ty }).collect();
    }
    if let Some(p) = pre {
        for lit in conjunction(p)? {
            if lit.head().as_deref() == Some("not") {
                return Err(PddlError::new(lit.pos(), ErrorKind::Unsupported("negative precondition".into())));
            }
            schema.pre.insert(lifted(dom, &schema, lit)?);
        }
    }
    if let Some(e) = effect {
        for lit in conjunction(e)? {
            let (negated, atom) = match lit.head().as_deref() {
                Some("not") => {
                    let inner = expect_list(lit, "(not ATOM)")?;
                    if inner.len() != 2 {
                        return Err(PddlError::syntax(lit.pos(), "expected (not ATOM)"));
                    }
                    (true, lifted(dom, &schema, &inner[1])?)
                }
                _ => (false, lifted(dom, &schema, lit)?),
            };
            let set = if negated { &mut schema.del } else { &mut schema.add };
            if !set.insert(atom.clone()) {
                let shown = if negated { format!("(not {atom})") } else { atom.to_string() };
                return Err(PddlError::new(lit.pos(), ErrorKind::DuplicateEffect(shown)));
            }
        }
    }
    Ok(schema)
}

/// Flattens `()`, a single literal or `(and ...)` into its literals.
pub(crate) fn conjunction(s: &Sexp) -> Result<Vec<&Sexp>, PddlError> {
    let items = expect_list(s, "a literal or (and ...)")?;
    if items.is_empty() {
        return Ok(Vec::new());
    }
    match s.head().as_deref() {
        Some("and") => {
            for it in &items[1..] {
                if it.head().as_deref() == Some("and") {
                    return Err(PddlError::syntax(it.pos(), "nested (and ...)"));
                }
            }
            Ok(items[1..].iter().collect())
        }
        Some("or" | "imply" | "exists" | "forall" | "when" | "=") => {
            Err(PddlError::new(s.pos(), ErrorKind::Unsupported(s.head().unwrap())))
        }
        _ => Ok(vec![s]),
    }
}

fn lifted(dom: &DomainAst, schema: &ActionSchema, s: &Sexp) -> Result<LiftedAtom, PddlError> {
    let items = expect_list(s, "an atom")?;
    let head = items.first().ok_or_else(|| PddlError::syntax(s.pos(), "empty atom"))?;
    if matches!(s.head().as_deref(), Some("and" | "or" | "not" | "imply" | "exists" | "forall" | "when" | "=")) {
        return Err(PddlError::new(s.pos(), ErrorKind::Unsupported(format!("{} here", s.head().unwrap()))));
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
    let mut terms = Vec::new();
    for (arg, slot) in items[1..].iter().zip(&decl.params) {
        let w = expect_word(arg, "a term")?;
        let (term, ty) = match w.strip_prefix('?') {
            Some(v) => {
                let v = symbol(v);
                let p = schema.params.iter().find(|p| p.name == v).ok_or_else(|| {
                    PddlError::new(
                        arg.pos(),
                        ErrorKind::UnboundVariable { action: schema.name.clone(), variable: v.clone() },
                    )
                })?;
                (Term::Var(v), p.ty.clone())
            }
            None => {
                let c = expect_name(arg, "a term")?;
                let decl = dom
                    .constants
                    .iter()
                    .find(|k| k.name == c)
                    .ok_or_else(|| PddlError::new(arg.pos(), ErrorKind::UndeclaredObject(c.clone())))?;
                (Term::Const(c), decl.ty.clone())
            }
        };
        if !dom.is_subtype(ty.as_deref(), slot.ty.as_deref()) {
            return Err(PddlError::new(
                arg.pos(),
                ErrorKind::IllTyped { object: term.to_string(), expected: slot.ty.clone().unwrap_or_default() },
            ));
        }
        terms.push(term);
    }
    Ok(LiftedAtom { predicate, terms })
}
