use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::atom::{symbol, Atom};

/// A fully instantiated STRIPS action.
///
/// `add` and `del` are disjoint; [`GroundAction::new`] enforces it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroundAction {
    pub name: String,
    pub args: Vec<String>,
    pub pre: BTreeSet<Atom>,
    pub add: BTreeSet<Atom>,
    pub del: BTreeSet<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionError {
    /// The same atom is both added and deleted.
    ConflictingEffects { action: String, atoms: BTreeSet<Atom> },
    Arity { action: String, expected: usize, found: usize },
    UnboundVariable { action: String, variable: String },
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::ConflictingEffects { action, atoms } => {
                write!(f, "action {action} both adds and deletes ")?;
                super::state::write_conjunction(f, atoms.iter())
            }
            ActionError::Arity { action, expected, found } => {
                write!(f, "action {action} takes {expected} argument(s), found {found}")
            }
            ActionError::UnboundVariable { action, variable } => {
                write!(f, "variable {variable} of action {action} is not a parameter")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ActionError {}

impl GroundAction {
    pub fn new<I, S>(
        name: &str,
        args: I,
        pre: BTreeSet<Atom>,
        add: BTreeSet<Atom>,
        del: BTreeSet<Atom>,
    ) -> Result<Self, ActionError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let name = symbol(name);
        let clash: BTreeSet<Atom> = add.intersection(&del).cloned().collect();
        if !clash.is_empty() {
            return Err(ActionError::ConflictingEffects { action: name, atoms: clash });
        }
        Ok(GroundAction {
            name,
            args: args.into_iter().map(|a| symbol(a.as_ref())).collect(),
            pre,
            add,
            del,
        })
    }

    /// True when `name(args)` designate the same action, ignoring effects.
    pub fn is_named(&self, name: &str, args: &[String]) -> bool {
        self.name == name && self.args == args
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.args.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Term {
    /// Stored without the leading `?`.
    Var(String),
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "?{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

/// An atom whose arguments may be schema variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LiftedAtom {
    pub predicate: String,
    pub terms: Vec<Term>,
}

impl LiftedAtom {
    pub fn variables(&self) -> impl Iterator<Item = &str> + '_ {
        self.terms.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    fn bind(&self, binding: &BTreeMap<&str, &str>) -> Result<Atom, String> {
        let mut args = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            match term {
                Term::Const(c) => args.push(c.clone()),
                Term::Var(v) => match binding.get(v.as_str()) {
                    Some(obj) => args.push(String::from(*obj)),
                    None => return Err(v.clone()),
                },
            }
        }
        Ok(Atom { predicate: self.predicate.clone(), args })
    }
}

impl fmt::Display for LiftedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.terms.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.terms.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Parameter {
    pub name: String,
    /// `None` means the implicit root type `OBJECT`.
    pub ty: Option<String>,
}

/// A lifted STRIPS action template (`UNSTACK(?x, ?y)`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<Parameter>,
    pub pre: BTreeSet<LiftedAtom>,
    pub add: BTreeSet<LiftedAtom>,
    pub del: BTreeSet<LiftedAtom>,
}

impl ActionSchema {
    /// Substitutes `objects` for the parameters, in order.
    pub fn instantiate<S: AsRef<str>>(&self, objects: &[S]) -> Result<GroundAction, ActionError> {
        if objects.len() != self.params.len() {
            return Err(ActionError::Arity {
                action: self.name.clone(),
                expected: self.params.len(),
                found: objects.len(),
            });
        }
        let binding: BTreeMap<&str, &str> = self
            .params
            .iter()
            .zip(objects)
            .map(|(p, o)| (p.name.as_str(), o.as_ref()))
            .collect();
        let bind_all = |set: &BTreeSet<LiftedAtom>| -> Result<BTreeSet<Atom>, ActionError> {
            set.iter()
                .map(|a| {
                    a.bind(&binding).map_err(|variable| ActionError::UnboundVariable {
                        action: self.name.clone(),
                        variable,
                    })
                })
                .collect()
        };
        GroundAction::new(
            &self.name,
            objects.iter().map(|o| o.as_ref()),
            bind_all(&self.pre)?,
            bind_all(&self.add)?,
            bind_all(&self.del)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use alloc::string::ToString;

    #[test]
    fn instantiate_unstack() {
        let unstack = &sample::blocks_world().templates[0];
        let a = unstack.instantiate(&["A", "B"]).unwrap();
        assert_eq!(a.to_string(), "UNSTACK(A,B)");
        assert_eq!(a, sample::unstack("a", "b"));
        assert!(matches!(unstack.instantiate(&["A"]), Err(ActionError::Arity { .. })));
    }

    #[test]
    fn conflicting_effects_rejected() {
        let p: BTreeSet<Atom> = [Atom::new("p", [""; 0])].into_iter().collect();
        let err = GroundAction::new("flip", [""; 0], BTreeSet::new(), p.clone(), p).unwrap_err();
        assert!(matches!(err, ActionError::ConflictingEffects { .. }));
    }
}
