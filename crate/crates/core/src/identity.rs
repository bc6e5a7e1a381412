//! The fundamental (generalized Jacobi) identity for an arbitrary n-bracket:
//!
//! `{f1,..,f(n-1),{g1,..,gn}} = sum_i {g1,..,{f1,..,f(n-1),gi},..,gn}`.
//!
//! The same evaluator serves brackets of functions and brackets on
//! finite-dimensional vector spaces.

use std::ops::Sub;

use crate::error::{Error, Result};

/// Left-hand side minus right-hand side of the fundamental identity.
pub fn fundamental_identity_residual<V, F>(bracket: F, fs: &[V], gs: &[V]) -> Result<V>
where
    V: Clone,
    for<'a> &'a V: Sub<&'a V, Output = V>,
    F: Fn(&[V]) -> Result<V>,
{
    let n = gs.len();
    if fs.len() + 1 != n {
        return Err(Error::ArityMismatch {
            expected: n.saturating_sub(1),
            found: fs.len(),
        });
    }
    let with_last = |v: V| -> Vec<V> {
        let mut args = fs.to_vec();
        args.push(v);
        args
    };
    let inner = bracket(gs)?;
    let mut residual = bracket(&with_last(inner))?;
    for i in 0..n {
        let mut args = gs.to_vec();
        args[i] = bracket(&with_last(gs[i].clone()))?;
        residual = &residual - &bracket(&args)?;
    }
    Ok(residual)
}
