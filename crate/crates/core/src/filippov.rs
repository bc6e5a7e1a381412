//! Finite-dimensional n-Lie (Filippov) algebras given by structure constants.
//!
//! A skew n-bracket on `V = Q^m` is stored through its values on sorted
//! basis tuples, `[e_{i1}, ..., e_{in}] = sum_k c^k_{i1..in} e_k`. The same
//! data defines the linear n-vector field
//! `sum_I (sum_k c^k_I x_k) d_{i1} ^ ... ^ d_{in}` on the dual space.
//!
//! [`search`] hunts for brackets all of whose contractions
//! `[y1, ..., y(n-1)]_x = [x, y1, ..., y(n-1)]` are Filippov while the bracket
//! itself is not. Finding one and finding none are both reported as data.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinations;
use crate::error::{Error, Result};
use crate::identity::fundamental_identity_residual;
use crate::multivector::{IndexSet, Multivector};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::verify::check_fi_direct;

/// An element of `Q^m` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    /// The basis vector `e_index` (1-based).
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut v = Vector::zeros(dim);
        v.0[index - 1] = Rational::one();
        Ok(v)
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    fn axpy(&mut self, c: &Rational, other: &Vector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += c * b;
        }
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Determinant by fraction-exact Gaussian elimination.
fn determinant(mut rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        let p = rows[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &p;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] -= delta;
            }
        }
    }
    det
}

/// A skew n-bracket on `Q^dim` stored on sorted basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    arity: usize,
    constants: BTreeMap<Vec<usize>, Vector>,
}

impl StructureConstants {
    /// The zero bracket.
    pub fn new(dim: usize, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Config("bracket arity must be positive".into()));
        }
        Ok(StructureConstants {
            dim,
            arity,
            constants: BTreeMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.constants.is_empty()
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: indices.len(),
            });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Adds `value` to `c^k_{indices}`; unsorted indices pick up the sign of
    /// the sorting permutation. Entries on repeated indices must be zero.
    pub fn add_constant(&mut self, k: usize, indices: &[usize], value: Rational) -> Result<()> {
        self.check_indices(indices)?;
        if k == 0 || k > self.dim {
            return Err(Error::IndexOutOfRange {
                index: k,
                dim: self.dim,
            });
        }
        if value.is_zero() {
            return Ok(());
        }
        let Some((set, odd)) = IndexSet::canonicalize(indices.to_vec()) else {
            return Err(Error::Config(format!(
                "bracket with repeated indices {indices:?} must vanish"
            )));
        };
        let value = if odd { -value } else { value };
        let key = set.indices().to_vec();
        let entry = self
            .constants
            .entry(key.clone())
            .or_insert_with(|| Vector::zeros(self.dim));
        entry.0[k - 1] += value;
        if entry.is_zero() {
            self.constants.remove(&key);
        }
        Ok(())
    }

    /// `c^k_{indices}` with the permutation sign applied.
    pub fn constant(&self, k: usize, indices: &[usize]) -> Rational {
        self.basis_bracket(indices)
            .ok()
            .and_then(|v| v.0.get(k.wrapping_sub(1)).cloned())
            .unwrap_or_else(Rational::zero)
    }

    /// `[e_{i1}, ..., e_{in}]` for indices in any order.
    pub fn basis_bracket(&self, indices: &[usize]) -> Result<Vector> {
        self.check_indices(indices)?;
        let Some((set, odd)) = IndexSet::canonicalize(indices.to_vec()) else {
            return Ok(Vector::zeros(self.dim));
        };
        Ok(match self.constants.get(set.indices()) {
            Some(v) if odd => v.scale(&-Rational::one()),
            Some(v) => v.clone(),
            None => Vector::zeros(self.dim),
        })
    }

    /// Nonzero entries as `(k, sorted tuple, value)`, ordered by tuple then `k`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &[usize], &Rational)> {
        self.constants.iter().flat_map(|(tuple, v)| {
            v.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (k + 1, tuple.as_slice(), c))
        })
    }

    /// The multilinear skew extension of the basis brackets.
    pub fn bracket(&self, vs: &[Vector]) -> Result<Vector> {
        if vs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: vs.len(),
            });
        }
        if let Some(v) = vs.iter().find(|v| v.dim() != self.dim) {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let mut out = Vector::zeros(self.dim);
        for (tuple, value) in &self.constants {
            // coefficient of e_I in v1 ^ ... ^ vn
            let minor: Vec<Vec<Rational>> = vs
                .iter()
                .map(|v| tuple.iter().map(|&i| v.0[i - 1].clone()).collect())
                .collect();
            let det = determinant(minor);
            if !det.is_zero() {
                out.axpy(&det, value);
            }
        }
        Ok(out)
    }

    /// The linear n-vector field `sum_I (sum_k c^k_I x_k) d_I` on `Q^dim`.
    pub fn to_linear_multivector(&self) -> Multivector {
        let terms = self.constants.iter().map(|(tuple, v)| {
            let coeff = Polynomial::from_terms(
                self.dim,
                v.0.iter()
                    .enumerate()
                    .map(|(k, c)| (c.clone(), Monomial::var(k + 1))),
            )
            .expect("indices within dimension");
            (tuple.clone(), coeff)
        });
        Multivector::from_terms(self.dim, self.arity, terms)
            .expect("structure constants are well formed")
    }

    /// Reads structure constants back from a linear multivector field.
    pub fn from_linear_multivector(l: &Multivector) -> Result<Self> {
        let mut s = StructureConstants::new(l.dim(), l.degree())?;
        for (set, coeff) in l.terms() {
            for (m, c) in coeff.terms() {
                let exps = m.exponents();
                if exps.len() != 1 || exps[0].1 != 1 {
                    return Err(Error::Config(format!(
                        "coefficient {coeff} is not a linear form"
                    )));
                }
                s.add_constant(exps[0].0, set.indices(), c.clone())?;
            }
        }
        Ok(s)
    }
}

impl fmt::Display for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, tuple, c) in self.entries() {
            let idx: Vec<String> = tuple.iter().map(ToString::to_string).collect();
            writeln!(f, "c[{k}; {}] = {c}", idx.join(","))?;
        }
        Ok(())
    }
}

/// A basis tuple violating the fundamental identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisWitness {
    pub fs: Vec<usize>,
    pub gs: Vec<usize>,
    #[serde(serialize_with = "serialize_display")]
    pub residual: Vector,
}

fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraVerdict {
    pub passed: bool,
    pub witness: Option<BasisWitness>,
    pub cases: usize,
}

fn basis_vectors(dim: usize, indices: &[usize]) -> Vec<Vector> {
    indices
        .iter()
        .map(|&i| Vector::basis(dim, i).expect("index within dimension"))
        .collect()
}

/// Fundamental identity on all basis tuples `(i1<..<i(n-1)) x (j1<..<jn)`,
/// which decides it on all of `V` by multilinearity.
pub fn check_filippov(s: &StructureConstants) -> AlgebraVerdict {
    let n = s.arity();
    let m = s.dim();
    let f_tuples = combinations(m, n - 1);
    let g_tuples = combinations(m, n);
    let mut cases = 0;
    for ft in &f_tuples {
        let fs_idx: Vec<usize> = ft.iter().map(|i| i + 1).collect();
        let fs = basis_vectors(m, &fs_idx);
        for gt in &g_tuples {
            cases += 1;
            let gs_idx: Vec<usize> = gt.iter().map(|i| i + 1).collect();
            let gs = basis_vectors(m, &gs_idx);
            let residual = fundamental_identity_residual(|a| s.bracket(a), &fs, &gs)
                .expect("arity fixed by construction");
            if !residual.is_zero() {
                return AlgebraVerdict {
                    passed: false,
                    witness: Some(BasisWitness {
                        fs: fs_idx,
                        gs: gs_idx,
                        residual,
                    }),
                    cases,
                };
            }
        }
    }
    AlgebraVerdict {
        passed: true,
        witness: None,
        cases,
    }
}

/// The same decision made through the linear multivector field: the
/// fundamental identity of its bracket on the coordinate functions.
pub fn check_filippov_via_tensor(s: &StructureConstants) -> Result<AlgebraVerdict> {
    let l = s.to_linear_multivector();
    let n = s.arity();
    let m = s.dim();
    let coords = |idx: &[usize]| -> Vec<Polynomial> {
        idx.iter()
            .map(|&i| Polynomial::var(m, i).expect("index within dimension"))
            .collect()
    };
    let mut cases = 0;
    for ft in combinations(m, n - 1) {
        let fs_idx: Vec<usize> = ft.iter().map(|i| i + 1).collect();
        for gt in combinations(m, n) {
            cases += 1;
            let gs_idx: Vec<usize> = gt.iter().map(|i| i + 1).collect();
            let v = check_fi_direct(&l, None, &coords(&fs_idx), &coords(&gs_idx))?;
            if let Some(w) = v.witness {
                let crate::verify::Residual::Scalar(p) = w.residual else {
                    unreachable!("fundamental identity residuals are scalar")
                };
                // a linear form sum_k a_k x_k is the vector (a_1, ..., a_m)
                let mut residual = Vector::zeros(m);
                for (mono, c) in p.terms() {
                    residual.0[mono.exponents()[0].0 - 1] = c.clone();
                }
                return Ok(AlgebraVerdict {
                    passed: false,
                    witness: Some(BasisWitness {
                        fs: fs_idx,
                        gs: gs_idx,
                        residual,
                    }),
                    cases,
                });
            }
        }
    }
    Ok(AlgebraVerdict {
        passed: true,
        witness: None,
        cases,
    })
}

/// Structure constants of `[v1, ..., v(n-1)]_x = [x, v1, ..., v(n-1)]`.
pub fn contract_algebra(s: &StructureConstants, x: &Vector) -> Result<StructureConstants> {
    let n = s.arity();
    if n < 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: n,
        });
    }
    if x.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: x.dim(),
        });
    }
    let m = s.dim();
    let mut out = StructureConstants::new(m, n - 1)?;
    for tuple in combinations(m, n - 1) {
        let idx: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
        let mut args = vec![x.clone()];
        args.extend(basis_vectors(m, &idx));
        let value = s.bracket(&args)?;
        for (k, c) in value.0.into_iter().enumerate() {
            out.add_constant(k + 1, &idx, c)?;
        }
    }
    Ok(out)
}

/// The finite set `{e_i} U {e_i + e_j : i < j}`. The fundamental-identity
/// residual of a contraction is quadratic in `x`, so it vanishes for every
/// `x` once it vanishes on this set.
pub fn polarization_set(dim: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = (1..=dim)
        .map(|i| Vector::basis(dim, i).expect("index within dimension"))
        .collect();
    for pair in combinations(dim, 2) {
        out.push(&out[pair[0]] + &out[pair[1]]);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub passed: bool,
    /// First contraction vector (in polarization-set order) whose algebra
    /// is not Filippov, with that algebra's witness.
    pub failure: Option<(Vector, BasisWitness)>,
}

/// Whether every contraction `[.., ..]_x` is a Filippov (n-1)-bracket.
pub fn check_problem_hypothesis(s: &StructureConstants) -> Result<HypothesisVerdict> {
    if s.arity() < 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: s.arity(),
        });
    }
    for x in polarization_set(s.dim()) {
        let v = check_filippov(&contract_algebra(s, &x)?);
        if let Some(w) = v.witness {
            return Ok(HypothesisVerdict {
                passed: false,
                failure: Some((x, w)),
            });
        }
    }
    Ok(HypothesisVerdict {
        passed: true,
        failure: None,
    })
}

/// Which assignments of coefficients to explore.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Assignment indices `start .. start + limit` (to the end when `limit`
    /// is `None`).
    Exhaustive { start: u128, limit: Option<u128> },
    /// `count` assignments drawn uniformly from a seeded generator.
    Random { seed: u64, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub dim: usize,
    pub arity: usize,
    pub coefficients: Vec<Rational>,
}

impl SearchSpace {
    pub fn new(dim: usize, arity: usize, coefficients: Vec<Rational>) -> Result<Self> {
        if arity < 3 || dim < arity {
            return Err(Error::Config(format!(
                "search needs dim >= arity >= 3 (got dim {dim}, arity {arity})"
            )));
        }
        let mut coefficients = coefficients;
        coefficients.sort();
        coefficients.dedup();
        if coefficients.is_empty() {
            return Err(Error::Config("coefficient set is empty".into()));
        }
        Ok(SearchSpace {
            dim,
            arity,
            coefficients,
        })
    }

    /// `(output index k, sorted input tuple)` for every free constant, in
    /// digit order (slot 0 is the least significant digit).
    pub fn slots(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for tuple in combinations(self.dim, self.arity) {
            let idx: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
            for k in 1..=self.dim {
                out.push((k, idx.clone()));
            }
        }
        out
    }

    /// `|C|^slots`, exactly.
    pub fn size(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.coefficients.len()), self.slots().len())
    }

    /// The algebra at a mixed-radix assignment index.
    pub fn assignment(&self, index: u128) -> StructureConstants {
        let base = self.coefficients.len() as u128;
        let mut rest = index;
        let digits: Vec<usize> = self
            .slots()
            .iter()
            .map(|_| {
                let d = (rest % base) as usize;
                rest /= base;
                d
            })
            .collect();
        self.with_digits(&digits)
    }

    fn with_digits(&self, digits: &[usize]) -> StructureConstants {
        let mut s = StructureConstants::new(self.dim, self.arity).expect("arity >= 3");
        for ((k, tuple), &d) in self.slots().iter().zip(digits) {
            s.add_constant(*k, tuple, self.coefficients[d].clone())
                .expect("slot within range");
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Largest number of assignments an exhaustive run may visit.
    pub exhaustive_bound: u64,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive {
                start: 0,
                limit: None,
            },
            exhaustive_bound: 1 << 24,
            workers: 0,
        }
    }
}

/// A bracket whose contractions are all Filippov but which is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Assignment index (exhaustive) or sample number (random).
    pub index: u128,
    /// The constants in `c[k; i1,...,in] = value` lines.
    pub constants: String,
    pub witness: BasisWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub dim: usize,
    pub arity: usize,
    pub coefficients: Vec<String>,
    pub mode: String,
    pub seed: Option<u64>,
    pub start: Option<String>,
    pub space_size: String,
    pub examined: u64,
    /// Assignments whose every contraction is Filippov.
    pub hypothesis_holds: u64,
    /// Of those, how many are Filippov themselves.
    pub filippov: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Default)]
struct Tally {
    examined: u64,
    hypothesis: u64,
    filippov: u64,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        self.hypothesis += other.hypothesis;
        self.filippov += other.filippov;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

fn examine(index: u128, s: &StructureConstants) -> Result<Tally> {
    let mut t = Tally {
        examined: 1,
        ..Tally::default()
    };
    if !check_problem_hypothesis(s)?.passed {
        return Ok(t);
    }
    t.hypothesis = 1;
    match check_filippov(s).witness {
        None => t.filippov = 1,
        Some(witness) => t.counterexamples.push(Counterexample {
            index,
            constants: s.to_string(),
            witness,
        }),
    }
    Ok(t)
}

const CHUNK: u128 = 1024;

/// Enumerates or samples brackets in `space` and tallies the open-problem
/// hypothesis against the Filippov identity.
pub fn search(space: &SearchSpace, opts: &SearchOptions) -> Result<SearchReport> {
    let size = space.size();
    let run = |job: &(dyn Fn() -> Result<Tally> + Sync)| -> Result<Tally> {
        if opts.workers == 0 {
            return job();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(job)
    };
    let (mode, seed, start, tally) = match &opts.mode {
        SearchMode::Exhaustive { start, limit } => {
            let total = size.to_u128().unwrap_or(u128::MAX);
            let start = (*start).min(total);
            let end = match limit {
                Some(l) => start.saturating_add(*l).min(total),
                None => total,
            };
            if end - start > opts.exhaustive_bound as u128 {
                return Err(Error::SearchTooLarge {
                    size: (end - start).to_string(),
                    bound: opts.exhaustive_bound,
                });
            }
            let chunks: Vec<(u128, u128)> = (0..(end - start).div_ceil(CHUNK))
                .map(|c| {
                    let lo = start + c * CHUNK;
                    (lo, (lo + CHUNK).min(end))
                })
                .collect();
            let tally = run(&|| {
                let parts: Vec<Result<Tally>> = chunks
                    .par_iter()
                    .map(|&(lo, hi)| {
                        let mut t = Tally::default();
                        for i in lo..hi {
                            t = t.merge(examine(i, &space.assignment(i))?);
                        }
                        Ok(t)
                    })
                    .collect();
                parts
                    .into_iter()
                    .try_fold(Tally::default(), |acc, p| Ok(acc.merge(p?)))
            })?;
            (
                "exhaustive".to_string(),
                None,
                Some(start.to_string()),
                tally,
            )
        }
        SearchMode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let slots = space.slots().len();
            let samples: Vec<Vec<usize>> = (0..*count)
                .map(|_| {
                    (0..slots)
                        .map(|_| rng.random_range(0..space.coefficients.len()))
                        .collect()
                })
                .collect();
            let tally = run(&|| {
                let parts: Vec<Result<Tally>> = samples
                    .par_iter()
                    .enumerate()
                    .map(|(i, digits)| examine(i as u128, &space.with_digits(digits)))
                    .collect();
                parts
                    .into_iter()
                    .try_fold(Tally::default(), |acc, p| Ok(acc.merge(p?)))
            })?;
            ("random".to_string(), Some(*seed), None, tally)
        }
    };
    Ok(SearchReport {
        dim: space.dim,
        arity: space.arity,
        coefficients: space.coefficients.iter().map(ToString::to_string).collect(),
        mode,
        seed,
        start,
        space_size: size.to_string(),
        examined: tally.examined,
        hypothesis_holds: tally.hypothesis,
        filippov: tally.filippov,
        counterexamples: tally.counterexamples,
    })
}

/// The 4-dimensional ternary algebra `[e_i, e_j, e_k] = sign * e_l` where
/// `l` is the missing index and the sign is that of the permutation
/// `(i, j, k, l)` of `(1, 2, 3, 4)`.
pub fn four_dim_ternary() -> StructureConstants {
    let mut s = StructureConstants::new(4, 3).expect("arity 3");
    for tuple in combinations(4, 3) {
        let idx: Vec<usize> = tuple.iter().map(|i| i + 1).collect();
        let missing = (1..=4)
            .find(|i| !idx.contains(i))
            .expect("one index missing");
        let mut perm = idx.clone();
        perm.push(missing);
        let (_, odd) = IndexSet::canonicalize(perm).expect("a permutation");
        let sign = if odd {
            -Rational::one()
        } else {
            Rational::one()
        };
        s.add_constant(missing, &idx, sign).expect("valid entry");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::integer;

    fn e(m: usize, i: usize) -> Vector {
        Vector::basis(m, i).unwrap()
    }

    #[test]
    fn ternary_basis_brackets() {
        let s = four_dim_ternary();
        assert_eq!(s.bracket(&[e(4, 1), e(4, 2), e(4, 3)]).unwrap(), e(4, 4));
        assert_eq!(
            s.bracket(&[e(4, 2), e(4, 1), e(4, 3)]).unwrap(),
            e(4, 4).scale(&integer(-1))
        );
        assert!(s.bracket(&[e(4, 1), e(4, 1), e(4, 3)]).unwrap().is_zero());
        assert_eq!(s.constant(4, &[1, 2, 3]), integer(1));
        assert_eq!(s.constant(3, &[1, 2, 4]), integer(-1));
    }

    #[test]
    fn sparse_default_is_zero() {
        let mut s = StructureConstants::new(4, 3).unwrap();
        s.add_constant(1, &[1, 2, 3], integer(1)).unwrap();
        assert!(s.bracket(&[e(4, 1), e(4, 2), e(4, 4)]).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_multilinear() {
        let s = four_dim_ternary();
        let v = &e(4, 1) + &e(4, 4).scale(&integer(3));
        let lhs = s.bracket(&[v, e(4, 2), e(4, 3)]).unwrap();
        let rhs = &s.bracket(&[e(4, 1), e(4, 2), e(4, 3)]).unwrap()
            + &s.bracket(&[e(4, 4), e(4, 2), e(4, 3)])
                .unwrap()
                .scale(&integer(3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ternary_algebra_is_filippov() {
        let v = check_filippov(&four_dim_ternary());
        assert!(v.passed);
        assert_eq!(v.cases, 6 * 4);
    }

    #[test]
    fn top_arity_brackets_are_filippov() {
        for k in 1..=3 {
            let mut s = StructureConstants::new(3, 3).unwrap();
            s.add_constant(k, &[1, 2, 3], integer(1)).unwrap();
            assert!(check_filippov(&s).passed, "[e1,e2,e3] = e{k}");
        }
    }

    #[test]
    fn contraction_by_e4_is_so3_type() {
        let c = contract_algebra(&four_dim_ternary(), &e(4, 4)).unwrap();
        assert_eq!(c.arity(), 2);
        // [e4, e_i, e_j] = [e_i, e_j, e4]
        assert_eq!(c.constant(3, &[1, 2]), integer(-1));
        assert_eq!(c.constant(1, &[2, 3]), integer(-1));
        assert_eq!(c.constant(2, &[1, 3]), integer(1));
        assert_eq!(c.entries().count(), 3);
        assert!(check_filippov(&c).passed);
    }

    #[test]
    fn contraction_by_zero_is_zero() {
        let c = contract_algebra(&four_dim_ternary(), &Vector::zeros(4)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn linear_multivector_round_trip() {
        let mut so3 = StructureConstants::new(3, 2).unwrap();
        so3.add_constant(3, &[1, 2], integer(1)).unwrap();
        so3.add_constant(1, &[2, 3], integer(1)).unwrap();
        so3.add_constant(2, &[3, 1], integer(1)).unwrap();
        let l = so3.to_linear_multivector();
        assert_eq!(l.to_string(), "(x3)*d1^d2 + (-x2)*d1^d3 + (x1)*d2^d3");
        assert_eq!(
            StructureConstants::from_linear_multivector(&l).unwrap(),
            so3
        );
        assert!(StructureConstants::new(3, 2)
            .unwrap()
            .to_linear_multivector()
            .is_zero());
    }

    #[test]
    fn repeated_index_constant_is_rejected() {
        let mut s = StructureConstants::new(3, 2).unwrap();
        assert!(s.add_constant(1, &[2, 2], integer(1)).is_err());
        assert!(s.add_constant(4, &[1, 2], integer(1)).is_err());
        assert!(s.add_constant(1, &[1, 2, 3], integer(1)).is_err());
    }

    #[test]
    fn hypothesis_on_ternary_and_zero() {
        assert!(
            check_problem_hypothesis(&four_dim_ternary())
                .unwrap()
                .passed
        );
        assert!(
            check_problem_hypothesis(&StructureConstants::new(3, 3).unwrap())
                .unwrap()
                .passed
        );
        assert!(check_problem_hypothesis(&StructureConstants::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn determinant_small_cases() {
        let m = vec![vec![integer(2), integer(1)], vec![integer(1), integer(3)]];
        assert_eq!(determinant(m), integer(5));
        let singular = vec![vec![integer(1), integer(2)], vec![integer(2), integer(4)]];
        assert!(determinant(singular).is_zero());
    }

    #[test]
    fn search_bound_is_enforced() {
        let space = SearchSpace::new(4, 3, vec![integer(-1), integer(0), integer(1)]).unwrap();
        let opts = SearchOptions {
            exhaustive_bound: 1000,
            ..SearchOptions::default()
        };
        assert!(matches!(
            search(&space, &opts),
            Err(Error::SearchTooLarge { .. })
        ));
        assert!(SearchSpace::new(2, 3, vec![integer(1)]).is_err());
    }

    #[test]
    fn assignment_decoding_covers_slots() {
        let space = SearchSpace::new(3, 3, vec![integer(-1), integer(0), integer(1)]).unwrap();
        assert_eq!(space.slots().len(), 3);
        assert_eq!(space.size(), BigInt::from(27));
        assert!(space.assignment(1 + 3 + 9).is_zero());
        let s = space.assignment(0);
        assert_eq!(s.constant(1, &[1, 2, 3]), integer(-1));
        assert_eq!(s.constant(3, &[1, 2, 3]), integer(-1));
    }
}
