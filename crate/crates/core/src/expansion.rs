//! Graceful expansions `f(i) = σ(k + (-1)^p(k) γ(k))`, `k = σ⁻¹(i)`, and the
//! counting results that follow from them.
//!
//! With `σ = id` an expansion is just an "addition setup": row `0..n` plus a
//! row of signed magnitudes `±γ(i)` gives the value table of a gracefully
//! labeled digraph. A magnitude `m` can sit at position `i` iff one of
//! `i - m`, `i + m` stays in `Z_n`, i.e. `m ≤ max(i, n-1-i)`.

use std::fmt;

use num_bigint::BigUint;

use crate::digraph::{for_each_function, is_gracefully_labeled, FunctionalDigraph, Permutation};
use crate::error::{Error, Result};
use crate::factorial;
use crate::matrix::{Ring, SquareMatrix};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GracefulExpansion {
    pub sigma: Permutation,
    pub gamma: Permutation,
    /// `signs[k]` is the bit `p(k)`; `true` means the magnitude is subtracted.
    pub signs: Vec<bool>,
}

impl GracefulExpansion {
    pub fn new(sigma: Permutation, gamma: Permutation, signs: Vec<bool>) -> Result<Self> {
        let n = sigma.n();
        for actual in [gamma.n(), signs.len()] {
            if actual != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    actual,
                });
            }
        }
        Ok(Self {
            sigma,
            gamma,
            signs,
        })
    }

    /// Expansion with `σ = id`.
    pub fn unrelabeled(gamma: Permutation, signs: Vec<bool>) -> Result<Self> {
        Self::new(Permutation::identity(gamma.n()), gamma, signs)
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    /// `k + (-1)^p(k) γ(k)`, before relabeling by `σ`.
    pub fn step(&self, k: usize) -> i64 {
        let m = self.gamma.apply(k) as i64;
        if self.signs[k] {
            k as i64 - m
        } else {
            k as i64 + m
        }
    }

    pub fn is_range_valid(&self) -> bool {
        (0..self.n()).all(|k| (0..self.n() as i64).contains(&self.step(k)))
    }

    /// Table of `id + (-1)^p γ` without applying `σ`; always gracefully
    /// labeled when range-valid.
    pub fn unrelabeled_table(&self) -> Result<Vec<usize>> {
        (0..self.n())
            .map(|k| {
                let s = self.step(k);
                if (0..self.n() as i64).contains(&s) {
                    Ok(s as usize)
                } else {
                    Err(Error::ExpansionRange { index: k, image: s })
                }
            })
            .collect()
    }

    pub fn expand(&self) -> Result<FunctionalDigraph> {
        let n = self.n();
        let inv = self.sigma.inverse();
        let mut f = vec![0; n];
        for (i, slot) in f.iter_mut().enumerate() {
            let k = inv.apply(i);
            let s = self.step(k);
            if !(0..n as i64).contains(&s) {
                return Err(Error::ExpansionRange { index: i, image: s });
            }
            *slot = self.sigma.apply(s as usize);
        }
        FunctionalDigraph::new(f)
    }

    /// `(id, |f - id|, [f(i) < i])` for a gracefully labeled `f`. The fixed
    /// point gets `p = 0`.
    pub fn decompose(g: &FunctionalDigraph) -> Result<Self> {
        if !g.is_gracefully_labeled() {
            return Err(Error::NotGracefullyLabeled(g.to_string()));
        }
        let f = g.values();
        let gamma: Vec<usize> = f.iter().enumerate().map(|(i, &v)| i.abs_diff(v)).collect();
        let signs = f.iter().enumerate().map(|(i, &v)| v < i).collect();
        Self::unrelabeled(Permutation::new(gamma)?, signs)
    }
}

impl fmt::Display for GracefulExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma={} gamma={} p=", self.sigma, self.gamma)?;
        for &b in &self.signs {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `γ(0) = 0` and, for `i ≥ 1`, `γ(i) ≤ i` or `γ(i) < n - i`.
pub fn is_valid_gamma(gamma: &Permutation) -> bool {
    let n = gamma.n();
    gamma.apply(0) == 0 && (1..n).all(|i| gamma.apply(i) <= i || gamma.apply(i) < n - i)
}

/// All valid `γ` on `Z_n`, sorted.
///
/// Magnitudes are placed from `n-1` downwards. Magnitude `m > (n-1)/2` fits
/// only at the positions `1..=n-1-m` and `m..n`, of which `n-1-m` are already
/// taken by larger magnitudes, leaving `n-m` choices; once `m ≤ (n-1)/2`
/// every remaining position accepts it. Every branch completes, so the
/// search visits exactly `⌈(n-1)/2⌉!·⌊(n-1)/2⌋!` leaves.
pub fn enumerate_valid_gammas(n: usize) -> Vec<Permutation> {
    assert!(n >= 1);
    let mut gamma = vec![usize::MAX; n];
    gamma[0] = 0;
    let mut out = Vec::new();
    place_magnitude(n, n - 1, &mut gamma, &mut out);
    out.sort();
    out
}

fn place_magnitude(n: usize, m: usize, gamma: &mut [usize], out: &mut Vec<Permutation>) {
    if m == 0 {
        out.push(Permutation::new(gamma.to_vec()).expect("every magnitude placed once"));
        return;
    }
    for i in 1..n {
        if gamma[i] == usize::MAX && m <= i.max(n - 1 - i) {
            gamma[i] = m;
            place_magnitude(n, m - 1, gamma, out);
            gamma[i] = usize::MAX;
        }
    }
}

/// Reference enumeration: filter `S_n` through [`is_valid_gamma`].
pub fn valid_gammas_by_filter(n: usize) -> Vec<Permutation> {
    Permutation::all(n).filter(is_valid_gamma).collect()
}

/// `⌊(n-1)/2⌋!·⌈(n-1)/2⌉!`; gives 1 at `n = 1, 2`.
pub fn count_valid_gammas(n: usize) -> BigUint {
    assert!(n >= 1);
    let half = (n - 1) / 2;
    factorial(half) * factorial(n - 1 - half)
}

/// An odd bijection `g` of `(-n, n) ∩ Z` with `i + g(i)` in range.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    n: usize,
    /// `images[i + n - 1] = g(i)`.
    images: Vec<i64>,
}

impl SignedPermutation {
    /// `images` lists `g(-n+1), ..., g(n-1)`.
    pub fn new(n: usize, images: Vec<i64>) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidSignedPermutation(why));
        if n == 0 || images.len() != 2 * n - 1 {
            return bad(format!("expected {} images", 2 * n.max(1) - 1));
        }
        let r = n as i64;
        let mut seen = vec![false; 2 * n - 1];
        for (k, &v) in images.iter().enumerate() {
            let i = k as i64 - (r - 1);
            if v <= -r || v >= r {
                return bad(format!("g({i}) = {v} out of range"));
            }
            if std::mem::replace(&mut seen[(v + r - 1) as usize], true) {
                return bad(format!("value {v} repeated"));
            }
            if images[(-i + r - 1) as usize] != -v {
                return bad(format!("g(-{i}) != -g({i})"));
            }
            if i + v <= -r || i + v >= r {
                return bad(format!("{i} + g({i}) = {} out of range", i + v));
            }
        }
        Ok(Self { n, images })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: i64) -> i64 {
        self.images[(i + self.n as i64 - 1) as usize]
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    /// `i ↦ i + g(i)` on `[0, n)`, provided it stays in `[0, n)`.
    pub fn to_digraph(&self) -> Result<FunctionalDigraph> {
        let f = (0..self.n as i64)
            .map(|i| {
                let v = i + self.get(i);
                if v < 0 {
                    Err(Error::ExpansionRange {
                        index: i as usize,
                        image: v,
                    })
                } else {
                    Ok(v as usize)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FunctionalDigraph::new(f)
    }

    /// The signed permutation `g(i) = f(i) - i` of a gracefully labeled `f`
    /// with `f(0) = 0`.
    pub fn from_digraph(g: &FunctionalDigraph) -> Result<Self> {
        if !g.is_gracefully_labeled() || g.image(0) != 0 {
            return Err(Error::NotGracefullyLabeled(g.to_string()));
        }
        let n = g.n() as i64;
        let images = (-(n - 1)..n)
            .map(|i| {
                let d = g.image(i.unsigned_abs() as usize) as i64 - i.abs();
                if i < 0 {
                    -d
                } else {
                    d
                }
            })
            .collect();
        Self::new(g.n(), images)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Every `g ∈ SP_n` whose positive half keeps `i + g(i)` inside `[0, n)`,
/// sorted by image list.
pub fn enumerate_sp(n: usize) -> Vec<SignedPermutation> {
    assert!(n >= 1);
    let mut positive = vec![0i64; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    assign_signed(n, 1, &mut positive, &mut used, &mut out);
    out.sort();
    out
}

fn assign_signed(
    n: usize,
    i: usize,
    positive: &mut [i64],
    used: &mut [bool],
    out: &mut Vec<SignedPermutation>,
) {
    if i == n {
        let r = n as i64;
        let images = (-(r - 1)..r)
            .map(|k| {
                if k < 0 {
                    -positive[(-k) as usize]
                } else {
                    positive[k as usize]
                }
            })
            .collect();
        out.push(SignedPermutation::new(n, images).expect("construction respects invariants"));
        return;
    }
    for m in 1..n {
        if used[m] {
            continue;
        }
        for value in [m as i64, -(m as i64)] {
            let target = i as i64 + value;
            if (0..n as i64).contains(&target) {
                used[m] = true;
                positive[i] = value;
                assign_signed(n, i + 1, positive, used, out);
                used[m] = false;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck<T> {
    pub left: T,
    pub right: T,
    pub equal: bool,
}

impl<T: PartialEq> IdentityCheck<T> {
    pub fn new(left: T, right: T) -> Self {
        let equal = left == right;
        Self { left, right, equal }
    }
}

/// `Σ_{g ∈ SP_n} Π A[i, i+g(i)]` against the scan over gracefully labeled
/// `f` with `f(0) = 0` of `Π A[i, f(i)]`.
pub fn sp_sum_identity_check<T: Ring>(a: &SquareMatrix<T>) -> IdentityCheck<T> {
    let n = a.n();
    let product = |f: &[usize]| {
        f.iter()
            .enumerate()
            .fold(T::one(), |acc, (i, &v)| acc.mul_ref(&a[(i, v)]))
    };
    let left = enumerate_sp(n).iter().fold(T::zero(), |acc, g| {
        let f: Vec<usize> = (0..n)
            .map(|i| (i as i64 + g.get(i as i64)) as usize)
            .collect();
        acc.add_ref(&product(&f))
    });
    let mut right = T::zero();
    for_each_function(n, |f| {
        if f[0] == 0 && is_gracefully_labeled(f) {
            right = right.add_ref(&product(f));
        }
    });
    IdentityCheck::new(left, right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauBounds {
    pub lower: BigUint,
    pub upper: BigUint,
}

/// `2·c_n ≤ τ_n ≤ n·2^⌈(n-1)/2⌉·c_n` with `c_n` = [`count_valid_gammas`].
pub fn tau_bounds(n: usize) -> TauBounds {
    let c = count_valid_gammas(n);
    let ceil_half = n / 2; // ⌈(n-1)/2⌉
    TauBounds {
        lower: &c * 2u32,
        upper: c * n * (BigUint::from(1u32) << ceil_half),
    }
}

/// Gracefully labeled functions on `Z_n` with no isolated vertex, by scan.
pub fn tau_bruteforce(n: usize) -> BigUint {
    let mut count = 0u64;
    for_each_function(n, |f| {
        if is_gracefully_labeled(f) && !crate::digraph::has_isolated_vertex(f) {
            count += 1;
        }
    });
    BigUint::from(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    use crate::matrix::IntMatrix;

    fn g(s: &str) -> FunctionalDigraph {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn expand_examples() {
        let e = GracefulExpansion::unrelabeled(perm("0,1,2"), bits("011")).unwrap();
        assert_eq!(e.expand().unwrap(), g("3:0,0,0"));
        let e = GracefulExpansion::unrelabeled(perm("0,1,2"), bits("001")).unwrap();
        assert_eq!(e.expand().unwrap(), g("3:0,2,0"));
        let bad = GracefulExpansion::unrelabeled(perm("0,1,2"), bits("000")).unwrap();
        assert_eq!(
            bad.expand().unwrap_err(),
            Error::ExpansionRange { index: 2, image: 4 }
        );
    }

    #[test]
    fn relabeled_expansion_undoes_to_graceful() {
        let gamma = perm("0,3,1,2");
        for sigma in Permutation::all(4) {
            for mask in 0..16u32 {
                let signs = (0..4).map(|k| mask >> k & 1 == 1).collect();
                let e = GracefulExpansion::new(sigma.clone(), gamma.clone(), signs).unwrap();
                if let Ok(f) = e.expand() {
                    assert!(e.is_range_valid());
                    let back = f.relabel(&sigma.inverse()).unwrap();
                    assert!(back.is_gracefully_labeled());
                    assert!(f.is_graceful());
                } else {
                    assert!(!e.is_range_valid());
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let e = GracefulExpansion::decompose(&g("3:0,0,0")).unwrap();
        assert_eq!(
            (e.gamma.to_string(), e.signs.clone()),
            ("0,1,2".into(), bits("011"))
        );
        let e = GracefulExpansion::decompose(&g("3:0,2,0")).unwrap();
        assert_eq!(
            (e.gamma.to_string(), e.signs.clone()),
            ("0,1,2".into(), bits("001"))
        );
        assert!(GracefulExpansion::decompose(&g("3:0,0,1")).is_err());
    }

    #[test]
    fn round_trip_and_gamma_validity() {
        for n in 1..=5 {
            for f in FunctionalDigraph::all(n).filter(FunctionalDigraph::is_gracefully_labeled) {
                let e = GracefulExpansion::decompose(&f).unwrap();
                assert_eq!(e.expand().unwrap(), f);
                // validity is about γ up to the placement of 0
                if f.image(0) == 0 {
                    assert!(is_valid_gamma(&e.gamma), "{f}");
                }
            }
        }
    }

    #[test]
    fn valid_gamma_examples() {
        assert!(is_valid_gamma(&perm("0,1,2")));
        assert!(!is_valid_gamma(&perm("0,2,1")));
        assert!(is_valid_gamma(&perm("0,1")));
        assert!(!is_valid_gamma(&perm("1,0")));
    }

    #[test]
    fn gamma_enumeration_matches_filter_and_formula() {
        assert_eq!(enumerate_valid_gammas(3), vec![perm("0,1,2")]);
        for n in 2..=8 {
            let branched = enumerate_valid_gammas(n);
            assert_eq!(branched, valid_gammas_by_filter(n), "n={n}");
            assert_eq!(
                BigUint::from(branched.len()),
                count_valid_gammas(n),
                "n={n}"
            );
        }
        let expected = [1u32, 1, 1, 2, 4, 12, 36, 144, 576];
        for (n, &c) in (1..).zip(&expected) {
            assert_eq!(count_valid_gammas(n), BigUint::from(c), "n={n}");
        }
    }

    #[test]
    fn valid_gamma_with_any_range_valid_signs_is_gracefully_labeled() {
        for n in 2..=6 {
            for gamma in enumerate_valid_gammas(n) {
                for mask in 0..(1u32 << n) {
                    let signs = (0..n).map(|k| mask >> k & 1 == 1).collect();
                    let e = GracefulExpansion::unrelabeled(gamma.clone(), signs).unwrap();
                    if let Ok(f) = e.expand() {
                        assert!(f.is_gracefully_labeled());
                    }
                }
            }
        }
    }

    #[test]
    fn sp_examples() {
        let sp2 = enumerate_sp(2);
        assert_eq!(sp2.len(), 1);
        assert_eq!(sp2[0].get(1), -1);
        assert_eq!(sp2[0].to_string(), "1,0,-1");
        assert_eq!(enumerate_sp(3).len(), 2);
    }

    #[test]
    fn sp_is_graceful_family_with_root_zero() {
        for n in 1..=6 {
            let from_sp: BTreeSet<_> = enumerate_sp(n)
                .iter()
                .map(|g| g.to_digraph().unwrap())
                .collect();
            let scanned: BTreeSet<_> = FunctionalDigraph::all(n)
                .filter(|f| f.image(0) == 0 && f.is_gracefully_labeled())
                .collect();
            assert_eq!(from_sp, scanned, "n={n}");
            for f in &scanned {
                let c = f.complement();
                assert!(c.is_gracefully_labeled());
                assert_eq!(c.fixed_points(), vec![n - 1]);
                assert!(SignedPermutation::from_digraph(f).is_ok());
            }
        }
    }

    #[test]
    fn signed_permutation_validation() {
        assert!(SignedPermutation::new(2, vec![1, 0, -1]).is_ok());
        assert!(SignedPermutation::new(2, vec![-1, 0, 1]).is_err()); // 1 + 1 out of range
        assert!(SignedPermutation::new(3, vec![2, 1, 0, 1, 2]).is_err()); // not odd
        assert!(SignedPermutation::new(2, vec![0, 0]).is_err());
    }

    #[test]
    fn sp_identity_examples() {
        let ones3 = sp_sum_identity_check(&IntMatrix::all_ones(3));
        assert_eq!((ones3.left.clone(), ones3.equal), (BigInt::from(2), true));
        let ones4 = sp_sum_identity_check(&IntMatrix::all_ones(4));
        assert_eq!((ones4.right.clone(), ones4.equal), (BigInt::from(4), true));
        let primes = IntMatrix::from_i64_rows(&[&[2, 3], &[5, 7]]).unwrap();
        let check = sp_sum_identity_check(&primes);
        assert_eq!(check.left, BigInt::from(2 * 5));
        assert!(check.equal);
    }

    #[test]
    fn tau_examples() {
        let b = |n| {
            let t = tau_bounds(n);
            (t.lower, t.upper)
        };
        assert_eq!(b(3), (BigUint::from(2u32), BigUint::from(6u32)));
        assert_eq!(b(4), (BigUint::from(4u32), BigUint::from(32u32)));
        assert_eq!(b(5), (BigUint::from(8u32), BigUint::from(80u32)));
        assert_eq!(tau_bruteforce(2), BigUint::from(2u32));
        assert_eq!(tau_bruteforce(3), BigUint::from(6u32));
        for n in 2..=6 {
            let t = tau_bruteforce(n);
            let bounds = tau_bounds(n);
            assert!(bounds.lower <= t && t <= bounds.upper, "n={n}");
            assert_eq!(&t % 2u32, BigUint::from(0u32), "n={n}");
        }
    }
}
