//! Functional digraphs on `Z_n`, their induced subtractive edge labels and
//! the graceful predicates built on them.
//!
//! A function `f: Z_n -> Z_n` is stored as its value table. The edge set of
//! its digraph is `{(i, f(i))}`, so every vertex has out-degree one and loops
//! are allowed. The label of edge `(i, f(i))` is `|f(i) - i|`.

mod permutation;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub(crate) use permutation::{parse_list, sign_of, write_list};
pub use permutation::{Permutation, Permutations};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionalDigraph {
    f: Vec<usize>,
}

/// Sorted multiset of induced subtractive edge labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabelSequence(Vec<usize>);

impl FunctionalDigraph {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let n = f.len();
        if n == 0 {
            return Err(Error::EmptyDigraph);
        }
        if let Some((index, &value)) = f.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::ImageOutOfRange { index, value, n });
        }
        Ok(Self { f })
    }

    /// `f ≡ c` on `Z_n`, the star centred at `c`.
    pub fn constant(n: usize, c: usize) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new((0..n).collect())
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    pub fn image(&self, i: usize) -> usize {
        self.f[i]
    }

    pub fn into_values(self) -> Vec<usize> {
        self.f
    }

    pub fn edge_labels(&self) -> EdgeLabelSequence {
        let mut labels: Vec<usize> = self
            .f
            .iter()
            .enumerate()
            .map(|(i, &v)| i.abs_diff(v))
            .collect();
        labels.sort_unstable();
        EdgeLabelSequence(labels)
    }

    pub fn is_gracefully_labeled(&self) -> bool {
        is_gracefully_labeled(&self.f)
    }

    pub fn is_functional_tree(&self) -> bool {
        is_functional_tree(&self.f)
    }

    /// `i ↦ s(f(s⁻¹(i)))`.
    pub fn relabel(&self, s: &Permutation) -> Result<Self> {
        if s.n() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                actual: s.n(),
            });
        }
        Ok(Self {
            f: conjugate(&self.f, s.values()),
        })
    }

    /// `i ↦ n-1-f(n-1-i)`.
    pub fn complement(&self) -> Self {
        let top = self.n() - 1;
        Self {
            f: (0..self.n()).map(|i| top - self.f[top - i]).collect(),
        }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.f[i] == i).collect()
    }

    /// A vertex is isolated when it carries a loop and no other vertex maps to it.
    pub fn has_isolated_vertex(&self) -> bool {
        has_isolated_vertex(&self.f)
    }

    /// True iff some relabeling `σfσ⁻¹` is gracefully labeled.
    ///
    /// Backtracking over vertex labelings; a partial labeling is abandoned as
    /// soon as two completed edges share a label, which never discards a
    /// complete graceful labeling.
    pub fn is_graceful(&self) -> bool {
        let mut found = false;
        search_graceful_labelings(&self.f, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// The distinct gracefully labeled conjugates of this digraph, in
    /// lexicographic order of their value tables.
    pub fn grl_set(&self) -> BTreeSet<FunctionalDigraph> {
        let mut out = BTreeSet::new();
        search_graceful_labelings(&self.f, &mut |sigma| {
            out.insert(Self {
                f: conjugate(&self.f, sigma),
            });
            true
        });
        out
    }

    /// Like [`grl_set`](Self::grl_set) but keeps, for every member, the
    /// lexicographically least `σ` realizing it.
    pub fn grl_with_relabelings(&self) -> Vec<(FunctionalDigraph, Permutation)> {
        let mut out: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
        search_graceful_labelings(&self.f, &mut |sigma| {
            let g = conjugate(&self.f, sigma);
            out.entry(g)
                .and_modify(|s| {
                    if sigma < s.as_slice() {
                        *s = sigma.to_vec();
                    }
                })
                .or_insert_with(|| sigma.to_vec());
            true
        });
        out.into_iter()
            .map(|(g, s)| {
                (
                    Self { f: g },
                    Permutation::new(s).expect("labeling is a bijection"),
                )
            })
            .collect()
    }

    /// All `n^n` functions on `Z_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = FunctionalDigraph> {
        let mut current = if n == 0 { None } else { Some(vec![0; n]) };
        std::iter::from_fn(move || {
            let out = current.take()?;
            let mut succ = out.clone();
            if advance_function(&mut succ) {
                current = Some(succ);
            }
            Some(Self { f: out })
        })
    }
}

/// Visits every function on `Z_n` as a value table, lexicographically.
pub fn for_each_function(n: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    let mut f = vec![0; n];
    loop {
        visit(&f);
        if !advance_function(&mut f) {
            break;
        }
    }
}

fn advance_function(f: &mut [usize]) -> bool {
    let n = f.len();
    for k in (0..n).rev() {
        if f[k] + 1 < n {
            f[k] += 1;
            return true;
        }
        f[k] = 0;
    }
    false
}

pub fn is_gracefully_labeled(f: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().enumerate().all(|(i, &v)| {
        let label = i.abs_diff(v);
        label < seen.len() && !std::mem::replace(&mut seen[label], true)
    })
}

/// `|f^(n-1)(Z_n)| = 1`: exactly one fixed point and every vertex drains into it.
pub fn is_functional_tree(f: &[usize]) -> bool {
    let n = f.len();
    let mut roots = (0..n).filter(|&i| f[i] == i);
    let root = match (roots.next(), roots.next()) {
        (Some(r), None) => r,
        _ => return false,
    };
    let mut reaches = vec![false; n];
    reaches[root] = true;
    let mut path = Vec::with_capacity(n);
    for start in 0..n {
        let mut v = start;
        path.clear();
        while !reaches[v] {
            if path.len() > n {
                return false;
            }
            path.push(v);
            v = f[v];
        }
        for &u in &path {
            reaches[u] = true;
        }
    }
    true
}

pub fn has_isolated_vertex(f: &[usize]) -> bool {
    let mut indegree_from_others = vec![0usize; f.len()];
    for (u, &v) in f.iter().enumerate() {
        if u != v {
            indegree_from_others[v] += 1;
        }
    }
    (0..f.len()).any(|v| f[v] == v && indegree_from_others[v] == 0)
}

/// `i ↦ s(f(s⁻¹(i)))` on raw tables.
pub(crate) fn conjugate(f: &[usize], s: &[usize]) -> Vec<usize> {
    let mut g = vec![0; f.len()];
    for (j, &fj) in f.iter().enumerate() {
        g[s[j]] = s[fj];
    }
    g
}

/// Enumerates every labeling `σ` for which `σfσ⁻¹` is gracefully labeled.
/// The visitor returns `false` to stop the search.
fn search_graceful_labelings(f: &[usize], visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = f.len();
    // completes[v]: vertices u whose edge (u, f(u)) gets both endpoints labeled once v is.
    let mut completes = vec![Vec::new(); n];
    for (u, &fu) in f.iter().enumerate() {
        completes[u.max(fu)].push(u);
    }
    let mut state = Search {
        f,
        completes,
        sigma: vec![usize::MAX; n],
        label_used: vec![false; n],
        edge_label_used: vec![false; n],
    };
    state.extend(0, visit);
}

struct Search<'a> {
    f: &'a [usize],
    completes: Vec<Vec<usize>>,
    sigma: Vec<usize>,
    label_used: Vec<bool>,
    edge_label_used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.f.len();
        if v == n {
            return visit(&self.sigma);
        }
        for label in 0..n {
            if self.label_used[label] {
                continue;
            }
            self.label_used[label] = true;
            self.sigma[v] = label;
            let mut marked = Vec::new();
            let mut ok = true;
            for &u in &self.completes[v] {
                let d = self.sigma[u].abs_diff(self.sigma[self.f[u]]);
                if self.edge_label_used[d] {
                    ok = false;
                    break;
                }
                self.edge_label_used[d] = true;
                marked.push(d);
            }
            let keep_going = !ok || self.extend(v + 1, visit);
            for d in marked {
                self.edge_label_used[d] = false;
            }
            self.label_used[label] = false;
            self.sigma[v] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for FunctionalDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n())?;
        write_list(f, &self.f)
    }
}

/// Parses `n:f0,f1,...,f(n-1)`.
impl FromStr for FunctionalDigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let (n, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| parse_err("expected `n:f0,...,f(n-1)`".into()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|e| parse_err(format!("vertex count: {e}")))?;
        let f = parse_list(rest)?;
        if f.len() != n {
            return Err(parse_err(format!(
                "declared {n} vertices but listed {}",
                f.len()
            )));
        }
        Self::new(f)
    }
}

impl EdgeLabelSequence {
    /// Validates a sequence of `n` labels: non-decreasing, each in `[0, n)`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if let Some(&label) = labels.iter().find(|&&l| l >= n) {
            return Err(Error::LabelOutOfRange { label, n });
        }
        if labels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse {
                input: format!("{labels:?}"),
                reason: "labels must be non-decreasing".into(),
            });
        }
        Ok(Self(labels))
    }

    /// Sorts arbitrary labels first.
    pub fn from_unsorted(mut labels: Vec<usize>) -> Result<Self> {
        labels.sort_unstable();
        Self::new(labels)
    }

    /// `(0, 1, ..., n-1)`.
    pub fn graceful(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `b[i]` = number of edges carrying label `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut b = vec![0; self.len()];
        for &l in &self.0 {
            b[l] += 1;
        }
        b
    }
}

impl fmt::Display for EdgeLabelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for EdgeLabelSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s)?)
    }
}
