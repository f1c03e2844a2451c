//! Enumeration, counting and verification of gracefully labeled functional
//! digraphs and functional trees.
//!
//! - [`digraph`]: functional digraphs on `Z_n`, edge labels, graceful predicates.
//! - [`expansion`]: the `(σ, γ, p)` graceful expansion, valid `γ`, signed permutations.
//! - [`polyring`]: sparse polynomials with big-integer exponents.
//! - [`matrix`]: dense matrices over exact rings and a division-free determinant.
//! - [`genfun`]: the label-sequence generating functions for digraphs and trees.
//! - [`whitty`]: the signed determinantal sum over graceful trees rooted at 0.
//! - [`neighbors`]: graceful neighbors at edge edit distance one.
//! - [`conjecture`]: exhaustive small-`n` sweep over tree classes.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod conjecture;
pub mod digraph;
pub mod error;
pub mod expansion;
pub mod genfun;
pub mod matrix;
pub mod neighbors;
pub mod polyring;
pub mod whitty;

pub use digraph::{EdgeLabelSequence, FunctionalDigraph, Permutation};
pub use error::{Error, Result};
pub use expansion::{GracefulExpansion, SignedPermutation};
pub use matrix::{IntMatrix, PolyMatrix, Ring, SquareMatrix};
pub use polyring::SparsePoly;

use num_bigint::BigUint;
use num_traits::One;

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
