use xplain_core::planning::{symbol, GroundAction, Plan, PlanStep, PlanningProblem};

use super::error::{ErrorKind, PddlError, Pos};
use super::lexer::{tokenize, Tok, Token};

/// An action call as written, before resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Call {
    name: String,
    args: Vec<String>,
    pos: Pos,
}

/// Reads one step per line: `(name arg ...)`, or `{(a ...) (b ...)}` for
/// actions executed together. Blank lines and `;` comments are skipped.
pub fn parse_plan(text: &str, problem: &PlanningProblem) -> Result<Plan, PddlError> {
    let tokens = tokenize(text)?;
    let mut steps = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let line = tokens[i].pos.line;
        let end = tokens[i..].iter().position(|t| t.pos.line != line).map_or(tokens.len(), |n| i + n);
        steps.push(parse_step(&tokens[i..end], problem)?);
        i = end;
    }
    Ok(Plan::new(steps))
}

fn parse_step(line: &[Token], problem: &PlanningProblem) -> Result<PlanStep, PddlError> {
    let first = &line[0];
    let (step, used) = match first.tok {
        Tok::Open => {
            let (call, used) = read_call(line)?;
            (PlanStep::Single(resolve(&call, problem)?), used)
        }
        Tok::OpenBrace => {
            let mut calls = Vec::new();
            let mut i = 1;
            loop {
                match line.get(i).map(|t| &t.tok) {
                    Some(Tok::CloseBrace) => break,
                    Some(Tok::Open) => {
                        let (call, used) = read_call(&line[i..])?;
                        calls.push(call);
                        i += used;
                    }
                    Some(_) => return Err(PddlError::syntax(line[i].pos, "expected '(' or '}'")),
                    None => return Err(PddlError::syntax(first.pos, "unclosed '{' (a group must fit on one line)")),
                }
            }
            let actions = calls.iter().map(|c| resolve(c, problem)).collect::<Result<Vec<_>, _>>()?;
            let step = PlanStep::concurrent(actions).map_err(|e| PddlError::new(first.pos, ErrorKind::Group(e)))?;
            (step, i + 1)
        }
        _ => return Err(PddlError::syntax(first.pos, "expected '(' or '{' to start a step")),
    };
    if let Some(extra) = line.get(used) {
        return Err(PddlError::syntax(extra.pos, "only one step per line"));
    }
    Ok(step)
}

/// Reads `(name arg ...)` from the front of `toks`, returning the token count used.
fn read_call(toks: &[Token]) -> Result<(Call, usize), PddlError> {
    let open = toks[0].pos;
    let mut words = Vec::new();
    for (i, t) in toks.iter().enumerate().skip(1) {
        match &t.tok {
            Tok::Word(w) => words.push((w, t.pos)),
            Tok::Close => {
                let Some(((name, _), args)) = words.split_first() else {
                    return Err(PddlError::syntax(open, "empty action call"));
                };
                for (w, pos) in &words {
                    if w.starts_with('?') || w.starts_with(':') {
                        return Err(PddlError::syntax(*pos, format!("unexpected {w} in a plan")));
                    }
                }
                let call = Call { name: symbol(name), args: args.iter().map(|(a, _)| symbol(a)).collect(), pos: open };
                return Ok((call, i + 1));
            }
            _ => return Err(PddlError::syntax(t.pos, "expected an action name, an object or ')'")),
        }
    }
    Err(PddlError::syntax(open, "unclosed '(' (a step must fit on one line)"))
}

fn resolve(call: &Call, problem: &PlanningProblem) -> Result<GroundAction, PddlError> {
    if let Some(a) = problem.find_action(&call.name, &call.args) {
        return Ok(a.clone());
    }
    let err = |kind| Err(PddlError::new(call.pos, kind));
    let Some(template) = problem.templates.iter().find(|t| t.name == call.name) else {
        return err(ErrorKind::UnknownAction(call.name.clone()));
    };
    if template.params.len() != call.args.len() {
        return err(ErrorKind::Arity { name: call.name.clone(), expected: template.params.len(), found: call.args.len() });
    }
    if let Some(o) = call.args.iter().find(|o| !problem.vocabulary.objects.contains(*o)) {
        return err(ErrorKind::UndeclaredObject(o.clone()));
    }
    err(ErrorKind::NoGroundAction(format!("{}({})", call.name, call.args.join(","))))
}
