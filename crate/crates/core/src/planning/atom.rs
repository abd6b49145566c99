use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Normalizes a symbol to its canonical (upper case) spelling.
pub fn symbol(name: &str) -> String {
    name.to_uppercase()
}

/// A predicate applied to object constants, e.g. `ON(A,B)`.
///
/// Field order matters: the derived `Ord` sorts by predicate name first and
/// then by the argument list, which is the iteration order used for every
/// rendered state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn new<I, S>(predicate: &str, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Atom {
            predicate: symbol(predicate),
            args: args.into_iter().map(|a| symbol(a.as_ref())).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// A possibly negated ground atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal { atom, negated: false }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal { atom, negated: true }
    }

    pub fn negate(&self) -> Self {
        Literal { atom: self.atom.clone(), negated: !self.negated }
    }
}

impl From<Atom> for Literal {
    fn from(atom: Atom) -> Self {
        Literal::pos(atom)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("¬")?;
        }
        self.atom.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum VocabularyError {
    UnknownPredicate(String),
    UnknownObject { atom: Atom, object: String },
    Arity { predicate: String, expected: usize, found: usize },
}

impl fmt::Display for VocabularyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VocabularyError::UnknownPredicate(p) => write!(f, "undeclared predicate {p}"),
            VocabularyError::UnknownObject { atom, object } => {
                write!(f, "undeclared object {object} in {atom}")
            }
            VocabularyError::Arity { predicate, expected, found } => write!(
                f,
                "predicate {predicate} takes {expected} argument(s), found {found}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for VocabularyError {}

/// Declared objects and predicate arities of a planning problem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vocabulary {
    pub objects: BTreeSet<String>,
    pub predicates: BTreeMap<String, usize>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_object(mut self, name: &str) -> Self {
        self.objects.insert(symbol(name));
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.predicates.insert(symbol(name), arity);
        self
    }

    pub fn check(&self, atom: &Atom) -> Result<(), VocabularyError> {
        let expected = *self
            .predicates
            .get(&atom.predicate)
            .ok_or_else(|| VocabularyError::UnknownPredicate(atom.predicate.clone()))?;
        if expected != atom.arity() {
            return Err(VocabularyError::Arity {
                predicate: atom.predicate.clone(),
                expected,
                found: atom.arity(),
            });
        }
        if let Some(object) = atom.args.iter().find(|o| !self.objects.contains(*o)) {
            return Err(VocabularyError::UnknownObject { atom: atom.clone(), object: object.clone() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn atoms_are_case_normalized() {
        assert_eq!(Atom::new("on", ["a", "b"]), Atom::new("ON", ["A", "B"]));
        assert_eq!(Atom::new("on", ["a", "b"]).to_string(), "ON(A,B)");
        assert_eq!(Atom::new("handempty", [""; 0]).to_string(), "HANDEMPTY");
    }

    #[test]
    fn ordering_is_predicate_then_args() {
        let mut atoms = alloc::vec![
            Atom::new("ontable", ["a"]),
            Atom::new("on", ["b", "a"]),
            Atom::new("clear", ["b"]),
            Atom::new("on", ["a", "c"]),
        ];
        atoms.sort();
        let shown: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["CLEAR(B)", "ON(A,C)", "ON(B,A)", "ONTABLE(A)"]);
    }

    #[test]
    fn vocabulary_errors() {
        let v = Vocabulary::new().with_object("a").with_predicate("on", 2);
        assert!(v.check(&Atom::new("on", ["a", "a"])).is_ok());
        assert_eq!(
            v.check(&Atom::new("clear", ["a"])),
            Err(VocabularyError::UnknownPredicate("CLEAR".into()))
        );
        assert!(matches!(v.check(&Atom::new("on", ["a"])), Err(VocabularyError::Arity { .. })));
        assert!(matches!(
            v.check(&Atom::new("on", ["a", "e"])),
            Err(VocabularyError::UnknownObject { ref object, .. }) if object == "E"
        ));
    }
}
