//! Exact verification of Nambu-Poisson, Nambu-Jacobi and Filippov n-bracket
//! structures.
//!
//! Everything is computed over exact rationals with polynomial
//! coefficients, so every check is a polynomial identity test whose residual
//! is either exactly zero or a concrete nonzero witness.
//!
//! * [`poly`]: sparse multivariate polynomials over the rationals.
//! * [`multivector`]: multivector fields, contractions, induced brackets,
//!   the Schouten-Nijenhuis bracket and the `s(G)` operator.
//! * [`verify`]: decision procedures returning a [`verify::Verdict`].
//! * [`filippov`]: finite-dimensional n-Lie algebras and the search harness.
//! * [`parse`]: the textual syntax shared by the command-line tool.
//! * [`report`]: machine-readable and text reports for the CLI.

pub mod cli;
pub mod error;
pub mod filippov;
pub mod identity;
pub mod multivector;
pub mod parse;
pub mod poly;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use multivector::{nj_bracket_eval, IndexSet, Multivector};
pub use poly::{Monomial, Polynomial, Rational};

/// All strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // rightmost slot that can still advance
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
}
