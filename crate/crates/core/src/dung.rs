//! Abstract argumentation frameworks over index-numbered nodes.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

/// A finite set of nodes `0..len` and a directed attack relation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Framework {
    attackers: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Label {
    In,
    Out,
    Undec,
}

/// Grounded labelling: `iterations` counts the rounds that labelled
/// something `in`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grounded {
    pub labels: Vec<Label>,
    pub iterations: usize,
}

impl Grounded {
    fn with(&self, label: Label) -> BTreeSet<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == label).collect()
    }

    pub fn in_set(&self) -> BTreeSet<usize> {
        self.with(Label::In)
    }

    pub fn out_set(&self) -> BTreeSet<usize> {
        self.with(Label::Out)
    }

    pub fn undec_set(&self) -> BTreeSet<usize> {
        self.with(Label::Undec)
    }
}

impl Framework {
    pub fn new(len: usize) -> Self {
        Framework { attackers: vec![BTreeSet::new(); len] }
    }

    pub fn len(&self) -> usize {
        self.attackers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attackers.is_empty()
    }

    pub fn add_node(&mut self) -> usize {
        self.attackers.push(BTreeSet::new());
        self.attackers.len() - 1
    }

    /// Records that `from` attacks `to`. Panics on unknown nodes.
    pub fn add_attack(&mut self, from: usize, to: usize) {
        assert!(from < self.len() && to < self.len(), "attack between unknown nodes");
        self.attackers[to].insert(from);
    }

    pub fn attackers(&self, node: usize) -> &BTreeSet<usize> {
        &self.attackers[node]
    }

    pub fn attacks(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.attackers.iter().enumerate().flat_map(|(to, from)| from.iter().map(move |&f| (f, to)))
    }

    pub fn is_conflict_free(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&a| self.attackers[a].is_disjoint(set))
    }

    /// Every attacker of `node` is attacked by some member of `set`.
    pub fn defends(&self, set: &BTreeSet<usize>, node: usize) -> bool {
        self.attackers[node].iter().all(|&b| !self.attackers[b].is_disjoint(set))
    }

    pub fn is_admissible(&self, set: &BTreeSet<usize>) -> bool {
        self.is_conflict_free(set) && set.iter().all(|&a| self.defends(set, a))
    }

    /// Least fixpoint by labelling: a node goes `in` once all its attackers
    /// are `out`, and `out` once some attacker is `in`. Anything left is `undec`.
    pub fn grounded(&self) -> Grounded {
        let mut labels = vec![Label::Undec; self.len()];
        let mut iterations = 0;
        loop {
            let newly_in: Vec<usize> = (0..self.len())
                .filter(|&a| labels[a] == Label::Undec && self.attackers[a].iter().all(|&b| labels[b] == Label::Out))
                .collect();
            if newly_in.is_empty() {
                break;
            }
            iterations += 1;
            for &a in &newly_in {
                labels[a] = Label::In;
            }
            for a in 0..self.len() {
                if labels[a] == Label::Undec && self.attackers[a].iter().any(|&b| labels[b] == Label::In) {
                    labels[a] = Label::Out;
                }
            }
        }
        Grounded { labels, iterations }
    }
}
