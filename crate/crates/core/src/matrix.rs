//! Small dense square matrices over an exact commutative ring, with a
//! division-free determinant.

use std::fmt::Debug;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::polyring::SparsePoly;

/// The exact commutative rings the determinant engine runs over.
pub trait Ring: Clone + Debug + PartialEq + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for BigInt {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Ring for SparsePoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type IntMatrix = SquareMatrix<BigInt>;
pub type PolyMatrix = SquareMatrix<SparsePoly>;

impl<T: Clone> SquareMatrix<T> {
    pub fn from_fn(n: usize, mut entry: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n).map(|k| entry(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Principal submatrix on the given (ascending) index set.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), |i, j| self[(keep[i], keep[j])].clone())
    }

    /// Drops row and column `k`.
    pub fn without(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        self.principal_submatrix(&keep)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }
}

impl<T: Ring> SquareMatrix<T> {
    pub fn row_sum(&self, i: usize) -> T {
        (0..self.n).fold(T::zero(), |acc, j| acc.add_ref(&self[(i, j)]))
    }

    /// `diag(M·1) - M`, the out-degree Laplacian.
    pub fn laplacian(&self) -> Self {
        let sums: Vec<T> = (0..self.n).map(|i| self.row_sum(i)).collect();
        Self::from_fn(self.n, |i, j| {
            let off = self[(i, j)].neg_ref();
            if i == j {
                sums[i].add_ref(&off)
            } else {
                off
            }
        })
    }

    pub fn sub_matrix(&self, rhs: &Self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)].sub_ref(&rhs[(i, j)]))
    }

    /// Exact determinant by Laplace expansion with memoized minors.
    ///
    /// `minor[S]` is the determinant of rows `0..|S|` restricted to the
    /// column set `S`; each is obtained from `|S|` smaller ones by expanding
    /// along the last row, so the whole computation is `2^n · n` ring
    /// multiplications and never divides.
    pub fn determinant(&self) -> T {
        let n = self.n;
        if n == 0 {
            return T::one();
        }
        assert!(
            n < usize::BITS as usize,
            "matrix too large for subset expansion"
        );
        let full = (1usize << n) - 1;
        let mut minor: Vec<T> = vec![T::zero(); full + 1];
        minor[0] = T::one();
        for mask in 1..=full {
            let row = mask.count_ones() as usize - 1;
            let mut acc = T::zero();
            let mut position = 0;
            for col in 0..n {
                let bit = 1 << col;
                if mask & bit == 0 {
                    continue;
                }
                let entry = &self[(row, col)];
                let rest = &minor[mask ^ bit];
                if !entry.is_zero() && !rest.is_zero() {
                    let term = entry.mul_ref(rest);
                    acc = if (row + position).is_multiple_of(2) {
                        acc.add_ref(&term)
                    } else {
                        acc.sub_ref(&term)
                    };
                }
                position += 1;
            }
            minor[mask] = acc;
        }
        minor.swap_remove(full)
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| BigInt::one())
    }

    /// Seeded integer matrix with entries in `[lo, hi]`.
    ///
    /// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`;
    /// entries are drawn in row-major order, each as
    /// `lo + (next_u64() mod (hi - lo + 1))`.
    pub fn random(n: usize, seed: u64, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = (hi - lo) as u64 + 1;
        Self::from_fn(n, |_, _| BigInt::from(lo + (rng.next_u64() % span) as i64))
    }
}

impl PolyMatrix {
    /// Every entry `(i, j)` is the indeterminate `x^(b^(i·n+j))` with
    /// `b = n + 1`, so any product of at most `n` entries is a distinct
    /// monomial identified by its base-`b` digits.
    pub fn symbolic(n: usize) -> Self {
        let base = BigUint::from(n + 1);
        Self::from_fn(n, |i, j| SparsePoly::monomial(base.pow((i * n + j) as u32)))
    }

    /// Symmetric symbolic matrix: `(i, j)` and `(j, i)` share the
    /// indeterminate `x^(b^k)`, `k` the row-major rank of `(min, max)` in
    /// the upper triangle, `b = n + 1`.
    pub fn symbolic_symmetric(n: usize) -> Self {
        let base = BigUint::from(n + 1);
        Self::from_fn(n, |i, j| {
            let rank = upper_rank(n, i.min(j), i.max(j));
            SparsePoly::monomial(base.pow(rank as u32))
        })
    }
}

/// Row-major rank of `(r, c)`, `r ≤ c`, among upper-triangle positions.
fn upper_rank(n: usize, r: usize, c: usize) -> usize {
    // rows 0..r contribute n + (n-1) + ... + (n-r+1) positions
    r * n - r * r.saturating_sub(1) / 2 + (c - r)
}
