//! Small-`n` sweep: does every edge label sequence of a constant function
//! show up among the relabelings of every functional tree?
//!
//! Two trees are in the same class when they are conjugate, `g = σfσ⁻¹`.

use std::collections::{BTreeSet, HashSet};

use crate::digraph::{
    conjugate, for_each_function, is_functional_tree, EdgeLabelSequence, FunctionalDigraph,
    Permutation,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeClass {
    /// Lexicographically least value table in the class.
    pub representative: FunctionalDigraph,
    pub size: usize,
}

fn sorted_labels(f: &[usize]) -> EdgeLabelSequence {
    let labels = f.iter().enumerate().map(|(i, &v)| i.abs_diff(v)).collect();
    EdgeLabelSequence::from_unsorted(labels).expect("labels of a function on Z_n")
}

pub fn star_sequences(n: usize) -> BTreeSet<EdgeLabelSequence> {
    (0..n).map(|c| sorted_labels(&vec![c; n])).collect()
}

/// Least conjugate of `f`.
pub fn canonical_form(f: &FunctionalDigraph) -> FunctionalDigraph {
    let least = Permutation::all(f.n())
        .map(|s| conjugate(f.values(), s.values()))
        .min()
        .expect("S_n is nonempty");
    FunctionalDigraph::new(least).expect("conjugate stays in Z_n")
}

/// One class per conjugation orbit of functional trees, ordered by
/// representative.
///
/// Trees are visited in lexicographic order and each unseen tree's whole
/// orbit is marked, so every orbit is generated once.
pub fn tree_classes(n: usize) -> Vec<TreeClass> {
    let mut trees = Vec::new();
    for_each_function(n, |f| {
        if is_functional_tree(f) {
            trees.push(f.to_vec());
        }
    });
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut classes = Vec::new();
    for t in trees {
        if seen.contains(&t) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = perms.iter().map(|s| conjugate(&t, s.values())).collect();
        let representative = orbit.first().expect("orbit contains t").clone();
        classes.push(TreeClass {
            representative: FunctionalDigraph::new(representative).expect("conjugate stays in Z_n"),
            size: orbit.len(),
        });
        seen.extend(orbit);
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

pub fn class_sequences(t: &TreeClass) -> BTreeSet<EdgeLabelSequence> {
    let f = t.representative.values();
    Permutation::all(f.len())
        .map(|s| sorted_labels(&conjugate(f, s.values())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassResult {
    pub class: TreeClass,
    pub sequence_count: usize,
    pub graceful: bool,
    /// Star sequences not realized by any relabeling of the class.
    pub missing: Vec<EdgeLabelSequence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub star_sequences: BTreeSet<EdgeLabelSequence>,
    pub classes: Vec<ClassResult>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.classes.iter().all(|c| c.missing.is_empty())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&TreeClass, &EdgeLabelSequence)> {
        self.classes
            .iter()
            .flat_map(|c| c.missing.iter().map(move |s| (&c.class, s)))
    }
}

pub fn check_star_sequences(n: usize) -> ConjectureReport {
    let stars = star_sequences(n);
    let graceful = EdgeLabelSequence::graceful(n);
    let classes = tree_classes(n)
        .into_iter()
        .map(|class| {
            let seqs = class_sequences(&class);
            ClassResult {
                sequence_count: seqs.len(),
                graceful: seqs.contains(&graceful),
                missing: stars.difference(&seqs).cloned().collect(),
                class,
            }
        })
        .collect();
    ConjectureReport {
        n,
        star_sequences: stars,
        classes,
    }
}
