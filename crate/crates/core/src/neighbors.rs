//! Gracefully labeled digraphs at edge edit distance at most one.
//!
//! `G` and `H` are within distance `k` when `H` agrees with some conjugate
//! `σGσ⁻¹` outside at most `k` vertices. The generator flips one sign bit at
//! a time in each graceful expansion of the input; the brute-force oracle
//! scans conjugates, positions and replacement values.

use std::collections::BTreeSet;

use crate::digraph::{conjugate, is_gracefully_labeled, FunctionalDigraph, Permutation};
use crate::error::Result;
use crate::expansion::GracefulExpansion;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub sigma: Permutation,
    pub gamma: Permutation,
    pub signs: Vec<bool>,
}

impl FamilyMember {
    pub fn expansion(&self) -> GracefulExpansion {
        GracefulExpansion {
            sigma: self.sigma.clone(),
            gamma: self.gamma.clone(),
            signs: self.signs.clone(),
        }
    }

    /// The same `γ` and `p` with `σ = id`: the gracefully labeled conjugate.
    pub fn unrelabeled(&self) -> GracefulExpansion {
        GracefulExpansion {
            sigma: Permutation::identity(self.gamma.n()),
            gamma: self.gamma.clone(),
            signs: self.signs.clone(),
        }
    }
}

/// Every graceful expansion of `base`, one per member of its GrL set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionFamily {
    pub base: FunctionalDigraph,
    pub members: Vec<FamilyMember>,
}

impl ExpansionFamily {
    /// Decomposes each gracefully labeled conjugate `H = τ·base·τ⁻¹` and
    /// records `σ = τ⁻¹`, so that each member expands back to `base`.
    pub fn from_base(base: &FunctionalDigraph) -> Result<Self> {
        let mut members = Vec::new();
        for (h, tau) in base.grl_with_relabelings() {
            let e = GracefulExpansion::decompose(&h)?;
            members.push(FamilyMember {
                sigma: tau.inverse(),
                gamma: e.gamma,
                signs: e.signs,
            });
        }
        Ok(Self {
            base: base.clone(),
            members,
        })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }
}

/// Flips bit `j` of `p`; `None` if the result leaves `Z_n`.
pub fn single_sign_flip(e: &GracefulExpansion, j: usize) -> Option<GracefulExpansion> {
    if j >= e.n() {
        return None;
    }
    let mut flipped = e.clone();
    flipped.signs[j] = !flipped.signs[j];
    flipped.is_range_valid().then_some(flipped)
}

/// Unrelabeled tables `id + (-1)^p′ γ` over every member and every valid
/// single flip. Flips with `γ(j) = 0` reproduce the member itself, so the
/// gracefully labeled conjugates of the base are always included.
pub fn neighbors_via_expansion(fam: &ExpansionFamily) -> BTreeSet<FunctionalDigraph> {
    let mut out = BTreeSet::new();
    for m in &fam.members {
        let e = m.unrelabeled();
        for j in 0..fam.n() {
            if let Some(flipped) = single_sign_flip(&e, j) {
                let table = flipped
                    .unrelabeled_table()
                    .expect("range-valid flip has an in-range table");
                out.insert(FunctionalDigraph::new(table).expect("table values lie in Z_n"));
            }
        }
    }
    out
}

/// Number of flips per member that change the table.
pub fn nontrivial_flip_count(m: &FamilyMember) -> usize {
    let e = m.unrelabeled();
    (0..e.n())
        .filter(|&j| e.gamma.apply(j) != 0 && single_sign_flip(&e, j).is_some())
        .count()
}

fn mismatches(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Whether `h` agrees with some conjugate of `g` off at most `k` vertices.
pub fn edit_distance_at_most(g: &FunctionalDigraph, h: &FunctionalDigraph, k: usize) -> bool {
    if g.n() != h.n() {
        return false;
    }
    Permutation::all(g.n()).any(|s| mismatches(&conjugate(g.values(), s.values()), h.values()) <= k)
}

/// Distinct conjugates of `g`.
fn conjugates(g: &FunctionalDigraph) -> BTreeSet<Vec<usize>> {
    Permutation::all(g.n())
        .map(|s| conjugate(g.values(), s.values()))
        .collect()
}

/// All gracefully labeled `H` within edit distance one of `g`.
pub fn neighbors_bruteforce(g: &FunctionalDigraph) -> BTreeSet<FunctionalDigraph> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for mut c in conjugates(g) {
        for j in 0..n {
            let keep = c[j];
            for v in 0..n {
                c[j] = v;
                if is_gracefully_labeled(&c) {
                    out.insert(FunctionalDigraph::new(c.clone()).expect("values lie in Z_n"));
                }
            }
            c[j] = keep;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborReport {
    pub inputs: ExpansionFamily,
    pub generated: BTreeSet<FunctionalDigraph>,
    pub oracle: BTreeSet<FunctionalDigraph>,
    /// In the oracle but not generated.
    pub missing: BTreeSet<FunctionalDigraph>,
    /// Generated but not in the oracle.
    pub extra: BTreeSet<FunctionalDigraph>,
}

impl NeighborReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn completeness_check(fam: &ExpansionFamily) -> NeighborReport {
    let generated = neighbors_via_expansion(fam);
    let oracle = neighbors_bruteforce(&fam.base);
    NeighborReport {
        missing: oracle.difference(&generated).cloned().collect(),
        extra: generated.difference(&oracle).cloned().collect(),
        inputs: fam.clone(),
        generated,
        oracle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FunctionalDigraph {
        s.parse().unwrap()
    }

    fn star(n: usize) -> FunctionalDigraph {
        FunctionalDigraph::constant(n, 0).unwrap()
    }

    #[test]
    fn flip_examples() {
        let gamma = Permutation::identity(5);
        let e = GracefulExpansion::unrelabeled(gamma, vec![false, true, true, true, true]).unwrap();
        let f1 = single_sign_flip(&e, 1).unwrap();
        assert_eq!(f1.signs, vec![false, false, true, true, true]);
        assert_eq!(f1.unrelabeled_table().unwrap()[1], 2);
        assert!(single_sign_flip(&e, 4).is_none());
        assert!(single_sign_flip(&e, 5).is_none());
        assert_eq!(single_sign_flip(&f1, 1).unwrap(), e);
    }

    #[test]
    fn family_members_expand_to_base() {
        for base in [
            star(5),
            g("6:0,0,0,0,3,3"),
            g("5:1,2,3,4,4"),
            g("4:2,2,2,3"),
        ] {
            let fam = ExpansionFamily::from_base(&base).unwrap();
            assert_eq!(fam.members.len(), base.grl_set().len());
            for m in &fam.members {
                assert_eq!(m.expansion().expand().unwrap(), base);
            }
        }
    }

    #[test]
    fn star_five_worked_example() {
        let n = 5;
        let fam = ExpansionFamily::from_base(&star(n)).unwrap();
        let mut gammas: Vec<_> = fam.members.iter().map(|m| m.gamma.clone()).collect();
        gammas.sort();
        assert_eq!(
            gammas,
            vec![Permutation::identity(n), Permutation::reversal(n)]
        );
        for m in &fam.members {
            let down = m.gamma.is_identity();
            assert!(m.signs[1..].iter().all(|&b| b == down));
        }

        let mut expected = BTreeSet::new();
        expected.insert(FunctionalDigraph::constant(n, 0).unwrap());
        expected.insert(FunctionalDigraph::constant(n, n - 1).unwrap());
        for j in [1, 2] {
            let f: Vec<usize> = (0..n).map(|i| if i == j { 2 * i } else { 0 }).collect();
            expected.insert(FunctionalDigraph::new(f).unwrap());
        }
        for j in [2, 3, 4] {
            let f: Vec<usize> = (0..n)
                .map(|i| if i == j { 2 * i + 1 - n } else { n - 1 })
                .collect();
            expected.insert(FunctionalDigraph::new(f).unwrap());
        }
        assert_eq!(neighbors_via_expansion(&fam), expected);
    }

    #[test]
    fn flip_count_bound() {
        for n in 2..=6 {
            for f in FunctionalDigraph::all(n).filter(FunctionalDigraph::is_gracefully_labeled) {
                let fam = ExpansionFamily::from_base(&f).unwrap();
                for m in &fam.members {
                    assert!(nontrivial_flip_count(m) <= n / 2, "{f}");
                }
            }
        }
    }

    #[test]
    fn edit_distance_basics() {
        let s = star(3);
        assert!(edit_distance_at_most(&s, &s, 0));
        assert!(edit_distance_at_most(&s, &g("3:0,0,1"), 1));
        assert!(!edit_distance_at_most(&s, &g("3:0,0,1"), 0));
        assert!(!edit_distance_at_most(&s, &g("3:1,2,0"), 1));
        let all: Vec<_> = FunctionalDigraph::all(3).collect();
        for a in &all {
            for b in &all {
                for k in 0..=2 {
                    assert_eq!(
                        edit_distance_at_most(a, b, k),
                        edit_distance_at_most(b, a, k)
                    );
                }
            }
        }
    }

    #[test]
    fn bruteforce_small_star() {
        let out = neighbors_bruteforce(&star(3));
        assert!(out.contains(&g("3:0,0,0")));
        assert!(out.contains(&g("3:2,2,2")));
        assert!(out.iter().all(FunctionalDigraph::is_gracefully_labeled));
        // every graceful table on Z_3 differs from a constant in one place
        let graceful: BTreeSet<_> = FunctionalDigraph::all(3)
            .filter(FunctionalDigraph::is_gracefully_labeled)
            .collect();
        assert_eq!(out, graceful);
    }

    #[test]
    fn bruteforce_closed_under_complement() {
        for base in [star(4), g("4:1,1,1,3"), g("5:0,0,1,1,2")] {
            let out = neighbors_bruteforce(&base);
            let comp = neighbors_bruteforce(&base.complement());
            for h in &out {
                assert!(comp.contains(&h.complement()), "{h}");
            }
        }
    }

    #[test]
    fn generated_within_distance_one() {
        for n in 2..=5 {
            for base in FunctionalDigraph::all(n).filter(FunctionalDigraph::is_functional_tree) {
                let fam = ExpansionFamily::from_base(&base).unwrap();
                for h in neighbors_via_expansion(&fam) {
                    assert!(h.is_gracefully_labeled());
                    assert!(edit_distance_at_most(&base, &h, 1), "{base} -> {h}");
                }
            }
        }
    }

    #[test]
    fn star_completeness_is_measured() {
        let report = completeness_check(&ExpansionFamily::from_base(&star(4)).unwrap());
        assert!(report.extra.is_empty());
        // (3,1,1,1) is one edit away from the constant 1 but no flip reaches it
        assert!(report.missing.contains(&g("4:3,1,1,1")));
        assert!(!report.complete());
    }
}
