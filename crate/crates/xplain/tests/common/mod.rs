//! Random well-formed PDDL inputs for round-trip tests.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use xplain_core::planning::{Plan, PlanStep, PlanningProblem};

pub struct Generated {
    pub domain: String,
    pub problem: String,
}

struct Ty {
    name: String,
    parent: Option<usize>,
}

fn is_sub(types: &[Ty], t: Option<usize>, slot: Option<usize>) -> bool {
    let Some(slot) = slot else { return true };
    let mut cur = t;
    while let Some(i) = cur {
        if i == slot {
            return true;
        }
        cur = types[i].parent;
    }
    false
}

fn typed_words(items: &[(String, Option<usize>)], types: &[Ty]) -> String {
    // Always spell out the type, including `- object`, so grouping is never ambiguous.
    items
        .iter()
        .map(|(n, t)| match t {
            Some(i) => format!("{n} - {}", types[*i].name),
            None => format!("{n} - object"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn untyped_words(items: &[(String, Option<usize>)]) -> String {
    items.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>().join(" ")
}

/// Picks a term for each predicate slot from `pool`, or `None` when some
/// slot has no candidate of a fitting type.
fn fill(rng: &mut StdRng, types: &[Ty], slots: &[Option<usize>], pool: &[(String, Option<usize>)]) -> Option<Vec<String>> {
    slots
        .iter()
        .map(|&slot| {
            let fits: Vec<&(String, Option<usize>)> = pool.iter().filter(|(_, t)| is_sub(types, *t, slot)).collect();
            fits.choose(rng).map(|(n, _)| n.clone())
        })
        .collect()
}

fn atom(pred: &str, args: &[String]) -> String {
    if args.is_empty() {
        format!("({pred})")
    } else {
        format!("({pred} {})", args.join(" "))
    }
}

pub fn generate(seed: u64) -> Generated {
    let mut rng = StdRng::seed_from_u64(seed);
    let typing = rng.random_bool(0.5);
    let mut types: Vec<Ty> = Vec::new();
    if typing {
        for i in 0..rng.random_range(1..=3) {
            let parent = if i > 0 && rng.random_bool(0.5) { Some(rng.random_range(0..i)) } else { None };
            types.push(Ty { name: format!("t{i}"), parent });
        }
    }
    let pick_ty = |rng: &mut StdRng, types: &[Ty]| -> Option<usize> {
        if types.is_empty() || rng.random_bool(0.3) {
            None
        } else {
            Some(rng.random_range(0..types.len()))
        }
    };

    let constants: Vec<(String, Option<usize>)> =
        (0..rng.random_range(0..=2)).map(|i| (format!("k{i}"), pick_ty(&mut rng, &types))).collect();
    let preds: Vec<(String, Vec<Option<usize>>)> = (0..rng.random_range(1..=4))
        .map(|i| (format!("p{i}"), (0..rng.random_range(0..=3)).map(|_| pick_ty(&mut rng, &types)).collect()))
        .collect();

    let mut d = String::from("(define (domain gen)\n");
    d += if typing { "  (:requirements :strips :typing)\n" } else { "  (:requirements :strips)\n" };
    if typing {
        let words: Vec<String> = types
            .iter()
            .map(|t| match t.parent {
                Some(p) => format!("{} - {}", t.name, types[p].name),
                None => format!("{} - object", t.name),
            })
            .collect();
        d += &format!("  (:types {})\n", words.join(" "));
    }
    let list = |items: &[(String, Option<usize>)]| if typing { typed_words(items, &types) } else { untyped_words(items) };
    if !constants.is_empty() {
        d += &format!("  (:constants {})\n", list(&constants));
    }
    d += "  (:predicates";
    for (name, slots) in &preds {
        let vars: Vec<(String, Option<usize>)> = slots.iter().enumerate().map(|(i, t)| (format!("?v{i}"), *t)).collect();
        d += &format!(" ({name}{}{})", if vars.is_empty() { "" } else { " " }, list(&vars));
    }
    d += ")\n";

    for ai in 0..rng.random_range(1..=3) {
        let params: Vec<(String, Option<usize>)> =
            (0..rng.random_range(0..=3)).map(|i| (format!("?x{i}"), pick_ty(&mut rng, &types))).collect();
        let mut pool = params.clone();
        pool.extend(constants.iter().cloned());
        let lifted = |rng: &mut StdRng, most: usize| -> std::collections::BTreeSet<String> {
            let n = rng.random_range(0..=most);
            (0..n)
                .filter_map(|_| {
                    let (p, slots) = preds.choose(rng).unwrap();
                    fill(rng, &types, slots, &pool).map(|args| atom(p, &args))
                })
                .collect()
        };
        let pre = lifted(&mut rng, 3);
        let add = lifted(&mut rng, 2);
        let del: Vec<String> = lifted(&mut rng, 2).into_iter().filter(|x| !add.contains(x)).collect();
        d += &format!("  (:action a{ai}\n    :parameters ({})\n", list(&params));
        if !pre.is_empty() {
            d += &format!("    :precondition (and {})\n", pre.into_iter().collect::<Vec<_>>().join(" "));
        }
        let effects: Vec<String> = add.into_iter().chain(del.into_iter().map(|x| format!("(not {x})"))).collect();
        if !effects.is_empty() {
            d += &format!("    :effect (and {})", effects.join(" "));
        }
        d += ")\n";
    }
    d += ")\n";

    let objects: Vec<(String, Option<usize>)> =
        (0..rng.random_range(1..=4)).map(|i| (format!("o{i}"), pick_ty(&mut rng, &types))).collect();
    let mut universe = objects.clone();
    universe.extend(constants.iter().cloned());
    let ground_atoms = |rng: &mut StdRng, least: usize, most: usize| -> Vec<String> {
        let n = rng.random_range(least..=most);
        let set: std::collections::BTreeSet<String> = (0..n)
            .filter_map(|_| {
                let (p, slots) = preds.choose(rng).unwrap();
                fill(rng, &types, slots, &universe).map(|args| atom(p, &args))
            })
            .collect();
        set.into_iter().collect()
    };
    let init = ground_atoms(&mut rng, 0, 5);
    let mut goal = ground_atoms(&mut rng, 1, 4);
    if goal.is_empty() {
        // Every predicate slot accepts some object once untyped, but a typed
        // slot may not; fall back to any nullary-or-fillable atom.
        goal = ground_atoms(&mut rng, 32, 32).into_iter().take(1).collect();
    }
    let mut p = String::from("(define (problem gen-p)\n  (:domain gen)\n");
    p += &format!("  (:objects {})\n", list(&objects));
    p += &format!("  (:init {})\n", init.join(" "));
    p += &format!("  (:goal (and {})))\n", goal.join(" "));
    Generated { domain: d, problem: p }
}

/// Adds noise to `text` that the parser must ignore.
pub fn disguise(text: &str, seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = String::new();
    for line in text.lines() {
        let line = if rng.random_bool(0.3) { line.to_uppercase() } else { line.to_string() };
        out += &line.replace(' ', if rng.random_bool(0.3) { "\t  " } else { " " });
        if rng.random_bool(0.3) {
            out += " ; remark (with parens)";
        }
        out += if rng.random_bool(0.2) { "\r\n\n" } else { "\n" };
    }
    out
}

/// A random plan over the problem's ground actions, executable or not.
pub fn random_plan(problem: &PlanningProblem, seed: u64) -> Plan {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut steps = Vec::new();
    if problem.actions.is_empty() {
        return Plan::new(steps);
    }
    for _ in 0..rng.random_range(0..=5) {
        let k = if problem.actions.len() >= 2 && rng.random_bool(0.3) { rng.random_range(2..=problem.actions.len().min(3)) } else { 1 };
        let chosen: Vec<_> = problem.actions.choose_multiple(&mut rng, k).cloned().collect();
        steps.push(if k == 1 { PlanStep::Single(chosen[0].clone()) } else { PlanStep::concurrent(chosen).unwrap() });
    }
    Plan::new(steps)
}
