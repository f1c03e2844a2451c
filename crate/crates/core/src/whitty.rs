//! Signed determinantal sum over gracefully labeled functional trees rooted
//! at 0.
//!
//! For an `n×n` matrix `A` (only `A[min, max]` entries are read) build
//!
//! ```text
//! Λ[i, j] = A[min(a, i), max(a, i)],  a = j - (n-1) + i - 1
//! Υ[i, j] = A[min(i, b), max(i, b)],  b = (n-1) - j + i + 1
//! ```
//!
//! with entries whose computed index leaves `[0, n)` set to zero. Then
//! `A[0,0] · det((Υ - Λ)[1:, 1:])` is compared with the sum over graceful
//! trees rooted at 0 of `sign(f) · Π A[min(i, f(i)), max(i, f(i))]`.
//!
//! Row `i` of `Υ - Λ` is vertex `i`; column `j` is label `n - j`; `Υ` holds
//! the edge going up by that label and `-Λ` the edge going down. Expanding
//! the determinant therefore yields, per gracefully labeled `f` with
//! `f(0) = 0`, the signature of the vertex-to-column bijection times
//! `(-1)^(number of descending edges)`. Non-tree terms cancel in pairs by
//! reversing a cycle. Two knobs describe how that is matched against the
//! tree sum:
//!
//! - [`ColumnOrder`]: keep the columns as built (label `n - j`), or reverse
//!   the trailing minor so column `c` carries label `c`. The two differ by
//!   `(-1)^⌊(n-1)/2⌋`.
//! - [`SignFactor`]: `sgn(|f - id|)` alone, or multiplied by the orientation
//!   sign `(-1)^#{i : f(i) < i}`.
//!
//! [`calibrate`] picks the first combination that holds with one global
//! sign `ε` across sizes; the result is recorded, not assumed.

use std::fmt;

use serde::Serialize;

use crate::digraph::{
    for_each_function, is_functional_tree, is_gracefully_labeled, sign_of, FunctionalDigraph,
};
use crate::error::{Error, Result};
use crate::matrix::{PolyMatrix, Ring, SquareMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittyMatrices<T> {
    pub lambda: SquareMatrix<T>,
    pub upsilon: SquareMatrix<T>,
}

fn upper_entry<T: Ring>(a: &SquareMatrix<T>, r: i64, c: i64) -> T {
    let n = a.n() as i64;
    let (lo, hi) = (r.min(c), r.max(c));
    if lo < 0 || hi >= n {
        T::zero()
    } else {
        a[(lo as usize, hi as usize)].clone()
    }
}

pub fn build_whitty<T: Ring>(a: &SquareMatrix<T>) -> WhittyMatrices<T> {
    let n = a.n() as i64;
    let lambda = SquareMatrix::from_fn(a.n(), |i, j| {
        let (i, j) = (i as i64, j as i64);
        upper_entry(a, j - (n - 1) + i - 1, i)
    });
    let upsilon = SquareMatrix::from_fn(a.n(), |i, j| {
        let (i, j) = (i as i64, j as i64);
        upper_entry(a, i, (n - 1) - j + i + 1)
    });
    WhittyMatrices { lambda, upsilon }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnOrder {
    AsPrinted,
    ByLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignFactor {
    /// `sgn(|f - id|)`.
    Printed,
    /// `sgn(|f - id|) · (-1)^#{i : f(i) < i}`.
    Oriented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub column_order: ColumnOrder,
    pub sign_factor: SignFactor,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = match self.column_order {
            ColumnOrder::AsPrinted => "as_printed",
            ColumnOrder::ByLabel => "by_label",
        };
        let sign = match self.sign_factor {
            SignFactor::Printed => "printed",
            SignFactor::Oriented => "oriented",
        };
        write!(f, "columns={cols} sign={sign}")
    }
}

/// Signature of `i ↦ |f(i) - i|`.
pub fn sign_factor(g: &FunctionalDigraph) -> Result<i32> {
    if !g.is_gracefully_labeled() {
        return Err(Error::NotGracefullyLabeled(g.to_string()));
    }
    Ok(label_signature(g.values()))
}

fn label_signature(f: &[usize]) -> i32 {
    let gamma: Vec<usize> = f.iter().enumerate().map(|(i, &v)| i.abs_diff(v)).collect();
    sign_of(&gamma)
}

/// `(-1)^#{i : f(i) < i}`.
pub fn orientation_sign(f: &[usize]) -> i32 {
    let down = f.iter().enumerate().filter(|&(i, &v)| v < i).count();
    if down % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `A[0,0] · det((Υ - Λ)[1:, 1:])`, columns of the minor in the given order.
pub fn whitty_lhs<T: Ring>(a: &SquareMatrix<T>, order: ColumnOrder) -> T {
    let n = a.n();
    let w = build_whitty(a);
    let diff = w.upsilon.sub_matrix(&w.lambda);
    let m = n - 1;
    let minor = SquareMatrix::from_fn(m, |r, c| {
        let col = match order {
            ColumnOrder::AsPrinted => c + 1,
            ColumnOrder::ByLabel => n - 1 - c,
        };
        diff[(r + 1, col)].clone()
    });
    a[(0, 0)].mul_ref(&minor.determinant())
}

/// Sum over gracefully labeled functional trees rooted at 0 of
/// `sign(f) · Π A[min(i, f(i)), max(i, f(i))]`.
pub fn whitty_rhs<T: Ring>(a: &SquareMatrix<T>, sign: SignFactor) -> T {
    let n = a.n();
    let mut acc = T::zero();
    for_each_function(n, |f| {
        if f[0] != 0 || !is_gracefully_labeled(f) || !is_functional_tree(f) {
            return;
        }
        let mut s = label_signature(f);
        if sign == SignFactor::Oriented {
            s *= orientation_sign(f);
        }
        let term = (0..n).fold(T::one(), |t, i| t.mul_ref(&a[(i.min(f[i]), i.max(f[i]))]));
        acc = if s > 0 {
            acc.add_ref(&term)
        } else {
            acc.sub_ref(&term)
        };
    });
    acc
}

/// `+1` if `lhs = rhs`, `-1` if `lhs = -rhs`, `None` otherwise.
fn relative_sign<T: Ring>(lhs: &T, rhs: &T) -> Option<i32> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == rhs.neg_ref() {
        Some(-1)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trial {
    pub convention: Convention,
    /// Sign forced at `n = 2`, if any.
    pub epsilon: Option<i32>,
    /// Smallest size at which `lhs = ε·rhs` failed symbolically.
    pub first_failure: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub convention: Convention,
    pub epsilon: i32,
    /// Whether the chosen convention held with one `ε` for every size tried.
    pub consistent: bool,
    pub checked_up_to: usize,
    pub trials: Vec<Trial>,
}

/// Fixes `ε` at `n = 2` for each column order and keeps the first order
/// for which the same `ε` also holds symbolically for `3..=up_to`. When
/// none does, the as-printed order is returned with `consistent = false`.
pub fn calibrate(sign: SignFactor, up_to: usize) -> Calibration {
    let mut trials = Vec::new();
    for column_order in [ColumnOrder::AsPrinted, ColumnOrder::ByLabel] {
        let convention = Convention {
            column_order,
            sign_factor: sign,
        };
        let holds_with = |n: usize| {
            let a = PolyMatrix::symbolic_symmetric(n);
            relative_sign(&whitty_lhs(&a, column_order), &whitty_rhs(&a, sign))
        };
        let epsilon = holds_with(2);
        let first_failure = match epsilon {
            None => Some(2),
            Some(e) => (3..=up_to).find(|&n| holds_with(n) != Some(e)),
        };
        trials.push(Trial {
            convention,
            epsilon,
            first_failure,
        });
    }
    let chosen = trials
        .iter()
        .find(|t| t.first_failure.is_none())
        .unwrap_or(&trials[0]);
    Calibration {
        convention: chosen.convention,
        epsilon: chosen.epsilon.unwrap_or(1),
        consistent: chosen.first_failure.is_none(),
        checked_up_to: up_to,
        trials,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittyReport<T> {
    pub n: usize,
    pub lhs: T,
    pub rhs: T,
    pub epsilon: i32,
    pub convention: Convention,
    pub equal_up_to_calibrated_sign: bool,
}

/// Evaluates both sides under the calibrated convention and tests `lhs = ε·rhs`.
pub fn whitty_check<T: Ring>(a: &SquareMatrix<T>, calibration: &Calibration) -> WhittyReport<T> {
    let lhs = whitty_lhs(a, calibration.convention.column_order);
    let rhs = whitty_rhs(a, calibration.convention.sign_factor);
    let scaled = if calibration.epsilon > 0 {
        rhs.clone()
    } else {
        rhs.neg_ref()
    };
    WhittyReport {
        n: a.n(),
        equal_up_to_calibrated_sign: lhs == scaled,
        lhs,
        rhs,
        epsilon: calibration.epsilon,
        convention: calibration.convention,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::FunctionalDigraph;
    use crate::matrix::IntMatrix;
    use crate::polyring::SparsePoly;
    use num_bigint::{BigInt, BigUint};
    use num_traits::{One, Zero};

    fn g(s: &str) -> FunctionalDigraph {
        s.parse().unwrap()
    }

    fn graceful_trees_rooted_at_zero(n: usize) -> Vec<FunctionalDigraph> {
        FunctionalDigraph::all(n)
            .filter(|f| f.image(0) == 0 && f.is_gracefully_labeled() && f.is_functional_tree())
            .collect()
    }

    #[test]
    fn matrix_entries_small() {
        let a = IntMatrix::from_i64_rows(&[&[2, 3], &[5, 7]]).unwrap();
        let w = build_whitty(&a);
        assert_eq!(w.lambda[(1, 1)], BigInt::from(3));
        assert!(w.upsilon[(1, 1)].is_zero());

        let a3 = PolyMatrix::symbolic_symmetric(3);
        let w3 = build_whitty(&a3);
        assert_eq!(w3.upsilon[(0, 1)], a3[(0, 2)]);
        // b = (n-1) - j + i + 1 = 2 at (1, 2): in range
        assert_eq!(w3.upsilon[(1, 2)], a3[(1, 2)]);
    }

    #[test]
    fn band_structure() {
        for n in 2..=6 {
            let a = IntMatrix::all_ones(n);
            let w = build_whitty(&a);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(!w.lambda[(i, j)].is_zero(), i + j >= n, "Λ n={n} ({i},{j})");
                    assert_eq!(!w.upsilon[(i, j)].is_zero(), j > i, "Υ n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn sign_factor_examples() {
        assert_eq!(sign_factor(&g("2:0,0")).unwrap(), 1);
        // |f - id| = (0,1,2)
        assert_eq!(sign_factor(&g("3:0,2,0")).unwrap(), 1);
        // |f - id| = (0,2,1,3)
        assert_eq!(sign_factor(&g("4:0,3,1,0")).unwrap(), -1);
        assert!(sign_factor(&g("3:0,0,1")).is_err());
        for f in FunctionalDigraph::all(4).filter(FunctionalDigraph::is_gracefully_labeled) {
            assert!([-1, 1].contains(&sign_factor(&f).unwrap()));
        }
    }

    #[test]
    fn rhs_examples() {
        let a = IntMatrix::from_i64_rows(&[&[2, 3], &[5, 7]]).unwrap();
        assert_eq!(whitty_rhs(&a, SignFactor::Printed), BigInt::from(6));
        let one = IntMatrix::from_i64_rows(&[&[11]]).unwrap();
        assert_eq!(whitty_rhs(&one, SignFactor::Printed), BigInt::from(11));
        assert_eq!(whitty_lhs(&one, ColumnOrder::AsPrinted), BigInt::from(11));
        // n = 3: (0,0,0) and (0,2,0), both with |f - id| = id
        assert_eq!(
            whitty_rhs(&IntMatrix::all_ones(3), SignFactor::Printed),
            BigInt::from(2)
        );
    }

    #[test]
    fn two_by_two_differs_by_sign() {
        let a = PolyMatrix::symbolic_symmetric(2);
        let lhs = whitty_lhs(&a, ColumnOrder::AsPrinted);
        let rhs = whitty_rhs(&a, SignFactor::Printed);
        assert_eq!(lhs, -&rhs);
        assert_eq!(lhs.term_count(), 1);
    }

    #[test]
    fn printed_sign_factor_has_no_consistent_convention() {
        let cal = calibrate(SignFactor::Printed, 4);
        assert!(!cal.consistent);
        assert_eq!(cal.epsilon, -1);
        for t in &cal.trials {
            assert_eq!(t.first_failure, Some(3), "{}", t.convention);
        }
    }

    #[test]
    fn oriented_sign_factor_calibrates_by_label() {
        let cal = calibrate(SignFactor::Oriented, 6);
        assert!(cal.consistent);
        assert_eq!(cal.convention.column_order, ColumnOrder::ByLabel);
        assert_eq!(cal.epsilon, 1);
        // columns as built flip sign with ⌊(n-1)/2⌋
        assert_eq!(cal.trials[0].first_failure, Some(3));
    }

    #[test]
    fn oriented_identity_numeric_and_symbolic() {
        let cal = calibrate(SignFactor::Oriented, 4);
        for n in 2..=6 {
            for seed in 0..3 {
                let r = whitty_check(&IntMatrix::random(n, seed, 1, 50), &cal);
                assert!(r.equal_up_to_calibrated_sign, "n={n} seed={seed}");
            }
        }
        let counts = [1, 2, 4, 12, 40];
        for (n, &count) in (2..=6).zip(&counts) {
            let a = PolyMatrix::symbolic_symmetric(n);
            let r = whitty_check(&a, &cal);
            assert!(r.equal_up_to_calibrated_sign, "symbolic n={n}");
            assert_eq!(r.lhs.term_count(), count);
            assert_eq!(graceful_trees_rooted_at_zero(n).len(), count);
            assert!(r.lhs.terms().all(|(_, c)| c.magnitude().is_one()));
        }
    }

    #[test]
    fn lhs_monomials_are_graceful_trees() {
        let n = 5;
        let a = PolyMatrix::symbolic_symmetric(n);
        let base = BigUint::from(n + 1);
        let trees: std::collections::BTreeSet<BigUint> = graceful_trees_rooted_at_zero(n)
            .iter()
            .map(|f| {
                let term = (0..n).fold(SparsePoly::one(), |t, i| {
                    let (r, c) = (i.min(f.image(i)), i.max(f.image(i)));
                    &t * &a[(r, c)]
                });
                term.max_degree().unwrap().clone()
            })
            .collect();
        let lhs = whitty_lhs(&a, ColumnOrder::ByLabel);
        let monomials: std::collections::BTreeSet<BigUint> =
            lhs.terms().map(|(e, _)| e.clone()).collect();
        assert_eq!(monomials, trees);
        // every exponent has n base-(n+1) digits in total: n edges
        for e in &monomials {
            let digits: u32 = e
                .to_radix_le(base.to_u32_digits()[0])
                .iter()
                .map(|&d| d as u32)
                .sum();
            assert_eq!(digits as usize, n);
        }
    }
}
