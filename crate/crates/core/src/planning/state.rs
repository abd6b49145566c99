use alloc::collections::BTreeSet;
use core::fmt;

use super::atom::{Atom, Literal};

/// The set of atoms true in a world state. Everything else is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct State(BTreeSet<Atom>);

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn into_atoms(self) -> BTreeSet<Atom> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn satisfies(&self, lit: &Literal) -> bool {
        self.contains(&lit.atom) != lit.negated
    }

    pub fn satisfies_all<'a, I>(&self, lits: I) -> bool
    where
        I: IntoIterator<Item = &'a Literal>,
    {
        lits.into_iter().all(|l| self.satisfies(l))
    }

    pub fn contains_all<'a, I>(&self, atoms: I) -> bool
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        atoms.into_iter().all(|a| self.contains(a))
    }

    /// Atoms of `required` that are absent from this state.
    pub fn missing(&self, required: &BTreeSet<Atom>) -> BTreeSet<Atom> {
        required.difference(&self.0).cloned().collect()
    }

    /// `(self \ deleted) ∪ added`.
    pub fn apply(&self, deleted: &BTreeSet<Atom>, added: &BTreeSet<Atom>) -> State {
        let mut next: BTreeSet<Atom> = self.0.difference(deleted).cloned().collect();
        next.extend(added.iter().cloned());
        State(next)
    }
}

impl FromIterator<Atom> for State {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        State(iter.into_iter().collect())
    }
}

impl From<BTreeSet<Atom>> for State {
    fn from(atoms: BTreeSet<Atom>) -> Self {
        State(atoms)
    }
}

impl<'a> IntoIterator for &'a State {
    type Item = &'a Atom;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Renders as a `∧`-joined conjunction in atom order; `∅` when empty.
impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_conjunction(f, self.0.iter())
    }
}

pub(crate) fn write_conjunction<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    let mut first = true;
    for item in items {
        if !first {
            f.write_str(" ∧ ")?;
        }
        first = false;
        write!(f, "{item}")?;
    }
    if first {
        f.write_str("∅")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn on(a: &str, b: &str) -> Atom {
        Atom::new("on", [a, b])
    }

    #[test]
    fn closed_world_negation() {
        let empty = State::new();
        assert!(empty.satisfies(&Literal::neg(on("a", "b"))));
        assert!(!empty.satisfies(&Literal::pos(on("a", "b"))));
        let s: State = [on("a", "b")].into_iter().collect();
        assert!(s.satisfies(&Literal::pos(on("a", "b"))));
        assert!(!s.satisfies(&Literal::neg(on("a", "b"))));
    }

    #[test]
    fn apply_deletes_then_adds() {
        let s: State = [on("a", "b"), Atom::new("clear", ["a"])].into_iter().collect();
        let del = [on("a", "b")].into_iter().collect();
        let add = [Atom::new("ontable", ["a"])].into_iter().collect();
        assert_eq!(s.apply(&del, &add).to_string(), "CLEAR(A) ∧ ONTABLE(A)");
        assert_eq!(State::new().to_string(), "∅");
    }
}
