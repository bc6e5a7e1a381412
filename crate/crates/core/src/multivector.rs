//! Multivector fields with polynomial coefficients.
//!
//! A degree-`k` field is stored as a sparse map from strictly increasing
//! index tuples `i1 < ... < ik` (the basis `d_{i1} ^ ... ^ d_{ik}`) to
//! nonzero polynomial coefficients. Degree 0 is an ordinary function.
//!
//! Sign conventions:
//!
//! * `contract(L, f)` is the left interior product `i_{df} L`: removing the
//!   index at (1-based) position `s` of a basis tuple contributes the sign
//!   `(-1)^(s-1)`.
//! * Iterated contraction `L_{f1,...,fk}` applies `f1` first, i.e.
//!   `i_{df_k} ... i_{df_1} L`.
//! * The Schouten bracket satisfies `[X, f] = X(f)` for vector fields,
//!   agrees with the Lie bracket on vector fields, and on wedges of vector
//!   fields reproduces
//!   `[X1^..^Xk, Y1^..^Yl] = sum (-1)^(i+j) [Xi,Yj] ^ X1..^Xi^..Xk ^ Y1..^Yj^..Yl`.
//!   For a bivector `G` this gives `[G, f] = -G_f`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{ensure_dim, Error, Result};
use crate::poly::{Polynomial, Rational};

/// Strictly increasing tuple of 1-based coordinate indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts `indices`, returning the canonical set and whether the sorting
    /// permutation was odd. `None` if an index repeats.
    pub fn canonicalize(mut indices: Vec<usize>) -> Option<(IndexSet, bool)> {
        let mut odd = false;
        // insertion sort; tuples are short
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((IndexSet(indices), odd))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All strictly increasing `k`-tuples drawn from `1..=dim`, in
    /// lexicographic order.
    pub fn all(dim: usize, k: usize) -> Vec<IndexSet> {
        crate::combinations(dim, k)
            .into_iter()
            .map(|c| IndexSet(c.into_iter().map(|i| i + 1).collect()))
            .collect()
    }
}

/// Joins two sorted tuples; `None` if they share an index, otherwise the
/// merged tuple and the parity of the shuffle.
fn merge(a: &[usize], b: &[usize]) -> Option<(IndexSet, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut odd = false;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if a[i] > b[j] {
            // b[j] jumps over the remaining elements of a
            if (a.len() - i) % 2 == 1 {
                odd = !odd;
            }
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((IndexSet(out), odd))
}

/// A homogeneous multivector field of degree `degree` on `dim` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Multivector {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A function viewed as a degree-0 field.
    pub fn scalar(p: Polynomial) -> Self {
        let mut mv = Multivector::zero(p.dim(), 0);
        mv.add_term(IndexSet::default(), p);
        mv
    }

    /// `d_{i1} ^ ... ^ d_{ik}` with the indices in any order (the sign of
    /// the sorting permutation is applied).
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        Self::monomial_term(Polynomial::one(dim), indices)
    }

    /// `coeff * d_{i1} ^ ... ^ d_{ik}`.
    pub fn monomial_term(coeff: Polynomial, indices: &[usize]) -> Result<Self> {
        let dim = coeff.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        let mut mv = Multivector::zero(dim, indices.len());
        if let Some((set, odd)) = IndexSet::canonicalize(indices.to_vec()) {
            mv.add_term(set, if odd { -coeff } else { coeff });
        }
        Ok(mv)
    }

    /// The vector field `sum_i components[i-1] * d_i`.
    pub fn vector_field(components: &[Polynomial]) -> Result<Self> {
        let dim = components.len();
        let mut mv = Multivector::zero(dim, 1);
        for (i, c) in components.iter().enumerate() {
            ensure_dim(dim, c.dim())?;
            mv.add_term(IndexSet(vec![i + 1]), c.clone());
        }
        Ok(mv)
    }

    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut mv = Multivector::zero(dim, degree);
        for (indices, coeff) in terms {
            ensure_dim(dim, coeff.dim())?;
            if indices.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: indices.len(),
                });
            }
            mv = mv.checked_add(&Self::monomial_term(coeff, &indices)?)?;
        }
        Ok(mv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient on the basis element `indices` (any order; sign applied).
    pub fn component(&self, indices: &[usize]) -> Polynomial {
        match IndexSet::canonicalize(indices.to_vec()) {
            Some((set, odd)) if set.len() == self.degree => {
                let c = self
                    .terms
                    .get(&set)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.dim));
                if odd {
                    -c
                } else {
                    c
                }
            }
            _ => Polynomial::zero(self.dim),
        }
    }

    /// The function carried by a degree-0 field.
    pub fn as_polynomial(&self) -> Result<Polynomial> {
        if self.degree != 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                found: self.degree,
            });
        }
        Ok(self.component(&[]))
    }

    fn add_term(&mut self, set: IndexSet, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(set) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn ensure_compatible(&self, other: &Multivector) -> Result<()> {
        ensure_dim(self.dim, other.dim)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Multivector) -> Result<Multivector> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (set, c) in &other.terms {
            out.add_term(set.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Multivector {
        Multivector {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect(),
        }
    }

    /// Multiplies every coefficient by the function `f`.
    pub fn scale(&self, f: &Polynomial) -> Result<Multivector> {
        ensure_dim(self.dim, f.dim())?;
        let mut out = Multivector::zero(self.dim, self.degree);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * f);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, c: &Rational) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a.scale(c));
        }
        out
    }

    /// Exterior product. Degrees add; the result vanishes once the degree
    /// exceeds the dimension.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = Multivector::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((set, odd)) = merge(&a.0, &b.0) {
                    let c = ca * cb;
                    out.add_term(set, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the differential of `f`.
    pub fn contract(&self, f: &Polynomial) -> Result<Multivector> {
        ensure_dim(self.dim, f.dim())?;
        if self.degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let grads: Vec<Polynomial> = (1..=self.dim).map(|i| f.d(i)).collect();
        let mut out = Multivector::zero(self.dim, self.degree - 1);
        for (set, c) in &self.terms {
            for (pos, &i) in set.0.iter().enumerate() {
                let g = &grads[i - 1];
                if g.is_zero() {
                    continue;
                }
                let mut rest = set.0.clone();
                rest.remove(pos);
                let term = c * g;
                out.add_term(IndexSet(rest), if pos % 2 == 1 { -term } else { term });
            }
        }
        Ok(out)
    }

    /// `L_{f1,...,fk}`: contracts with `fs[0]` first.
    pub fn contract_all(&self, fs: &[Polynomial]) -> Result<Multivector> {
        if fs.len() > self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: fs.len(),
            });
        }
        let mut acc = self.clone();
        for f in fs {
            acc = acc.contract(f)?;
        }
        Ok(acc)
    }

    /// The n-bracket `{f1,...,fn} = L_{f1,...,fn}` induced by an n-vector.
    pub fn bracket_eval(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.len() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: fs.len(),
            });
        }
        self.contract_all(fs)?.as_polynomial()
    }

    /// The hamiltonian vector field `L_{f1,...,f(n-1)}`.
    pub fn hamiltonian(&self, fs: &[Polynomial]) -> Result<Multivector> {
        if self.degree == 0 || fs.len() + 1 != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree.saturating_sub(1),
                found: fs.len(),
            });
        }
        self.contract_all(fs)
    }

    /// Coefficient-wise partial derivative.
    fn partial_coefficients(&self, index: usize) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c.d(index));
        }
        out
    }

    /// Schouten-Nijenhuis bracket of fields of degrees `p` and `q`, a field
    /// of degree `p + q - 1`. Computed as
    /// `sum_i R_i(P) ^ d_i(Q) - (-1)^((p-1)(q-1)) R_i(Q) ^ d_i(P)` where
    /// `R_i` strips `d_i` from the right end of each basis tuple and `d_i`
    /// differentiates coefficients by `x_i`.
    pub fn schouten(&self, other: &Multivector) -> Result<Multivector> {
        ensure_dim(self.dim, other.dim)?;
        let (p, q) = (self.degree, other.degree);
        if p + q == 0 {
            return Ok(Multivector::zero(self.dim, 0));
        }
        let mut out = Multivector::zero(self.dim, p + q - 1);
        // (-1)^((p-1)(q-1)) is -1 exactly when p and q are both even
        let swapped_negative = p % 2 == 0 && q % 2 == 0;
        let first = self.right_strip_wedge_derivative(other)?;
        let second = other.right_strip_wedge_derivative(self)?;
        for (s, c) in first.terms {
            out.add_term(s, c);
        }
        for (s, c) in second.terms {
            out.add_term(s, if swapped_negative { c } else { -c });
        }
        Ok(out)
    }

    /// `sum_i R_i(self) ^ d_i(other)`; zero when `self` has degree 0.
    fn right_strip_wedge_derivative(&self, other: &Multivector) -> Result<Multivector> {
        let p = self.degree;
        let out_degree = (p + other.degree).saturating_sub(1);
        let mut out = Multivector::zero(self.dim, out_degree);
        if p == 0 {
            return Ok(out);
        }
        let derivs: Vec<Multivector> = (1..=self.dim)
            .map(|i| other.partial_coefficients(i))
            .collect();
        for (set, c) in &self.terms {
            for (pos, &i) in set.0.iter().enumerate() {
                let dq = &derivs[i - 1];
                if dq.is_zero() {
                    continue;
                }
                let mut rest = set.0.clone();
                rest.remove(pos);
                let coeff = if (p - 1 - pos) % 2 == 1 {
                    -c
                } else {
                    c.clone()
                };
                let mut stripped = Multivector::zero(self.dim, p - 1);
                stripped.add_term(IndexSet(rest), coeff);
                for (s, v) in stripped.wedge(dq)?.terms {
                    out.add_term(s, v);
                }
            }
        }
        Ok(out)
    }

    /// `s(G)(f1,...,fn) = sum_i (-1)^(i+1) f_i G_{f1,..,^fi,..,fn}` for an
    /// (n-1)-vector `G`.
    pub fn s_operator(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.len() != self.degree + 1 {
            return Err(Error::ArityMismatch {
                expected: self.degree + 1,
                found: fs.len(),
            });
        }
        let mut total = Polynomial::zero(self.dim);
        for (i, fi) in fs.iter().enumerate() {
            ensure_dim(self.dim, fi.dim())?;
            if fi.is_zero() {
                continue;
            }
            let rest: Vec<Polynomial> = fs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, f)| f.clone())
                .collect();
            let term = fi * &self.bracket_eval(&rest)?;
            total = if i % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        Ok(total)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Evaluates `(D + s(G))(f1,...,fn)`; `gamma = None` is the pure
/// Nambu-Poisson bracket of `delta`.
pub fn nj_bracket_eval(
    delta: &Multivector,
    gamma: Option<&Multivector>,
    fs: &[Polynomial],
) -> Result<Polynomial> {
    let base = delta.bracket_eval(fs)?;
    match gamma {
        None => Ok(base),
        Some(g) => {
            ensure_dim(delta.dim(), g.dim())?;
            if g.degree() + 1 != delta.degree() {
                return Err(Error::DegreeMismatch {
                    expected: delta.degree().saturating_sub(1),
                    found: g.degree(),
                });
            }
            Ok(&base + &g.s_operator(fs)?)
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.component(&[]));
        }
        for (n, (set, c)) in self.terms.iter().enumerate() {
            let basis = set
                .0
                .iter()
                .map(|i| format!("d{i}"))
                .collect::<Vec<_>>()
                .join("^");
            match c.as_constant() {
                Some(k) => {
                    let sep = match (n, k.is_negative()) {
                        (0, true) => "-",
                        (0, false) => "",
                        (_, true) => " - ",
                        (_, false) => " + ",
                    };
                    let abs = k.abs();
                    if abs.is_one() {
                        write!(f, "{sep}1*{basis}")?;
                    } else {
                        write!(f, "{sep}{abs}*{basis}")?;
                    }
                }
                None => {
                    let sep = if n == 0 { "" } else { " + " };
                    write!(f, "{sep}({c})*{basis}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::integer;

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i).unwrap()
    }

    fn e(dim: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(dim, idx).unwrap()
    }

    fn c(dim: usize, n: i64) -> Polynomial {
        Polynomial::constant(dim, integer(n))
    }

    #[test]
    fn basis_wedge_and_antisymmetry() {
        let d1 = e(2, &[1]);
        let d2 = e(2, &[2]);
        assert_eq!(d1.wedge(&d2).unwrap(), e(2, &[1, 2]));
        assert_eq!(d2.wedge(&d1).unwrap(), e(2, &[1, 2]).neg());
        assert_eq!(e(2, &[2, 1]), e(2, &[1, 2]).neg());
    }

    #[test]
    fn repeated_index_wedge_vanishes() {
        let a = e(2, &[1]).scale(&x(2, 1)).unwrap();
        let w = a.wedge(&e(2, &[1, 2])).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 3);
    }

    #[test]
    fn contraction_signs() {
        let l = e(3, &[1, 2, 3]);
        assert_eq!(l.contract(&x(3, 1)).unwrap(), e(3, &[2, 3]));
        assert_eq!(l.contract(&x(3, 2)).unwrap(), e(3, &[1, 3]).neg());
        assert_eq!(l.contract(&x(3, 3)).unwrap(), e(3, &[1, 2]));
        let k = l.contract(&c(3, 5)).unwrap();
        assert!(k.is_zero());
        assert_eq!(k.degree(), 2);
    }

    #[test]
    fn contraction_of_function_is_an_error() {
        let f = Multivector::scalar(x(2, 1));
        assert!(matches!(
            f.contract(&x(2, 2)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn canonical_bracket_is_jacobian_determinant() {
        let l = e(3, &[1, 2, 3]);
        let (x1, x2, x3) = (x(3, 1), x(3, 2), x(3, 3));
        assert!(l
            .bracket_eval(&[x1.clone(), x2.clone(), x3.clone()])
            .unwrap()
            .is_one());
        assert_eq!(
            l.bracket_eval(&[x2.clone(), x1.clone(), x3.clone()])
                .unwrap(),
            -c(3, 1)
        );
        assert_eq!(
            l.bracket_eval(&[x1.pow(2), x2.clone(), x3.clone()])
                .unwrap(),
            x1.scale(&integer(2))
        );
        assert!(matches!(
            l.bracket_eval(&[x1, x2]),
            Err(Error::ArityMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn hamiltonian_fields() {
        assert_eq!(
            e(3, &[1, 2, 3]).hamiltonian(&[x(3, 1), x(3, 2)]).unwrap(),
            e(3, &[3])
        );
        assert_eq!(
            e(2, &[1, 2]).hamiltonian(&[x(2, 2)]).unwrap(),
            e(2, &[1]).neg()
        );
        assert!(e(3, &[1, 2, 3])
            .hamiltonian(&[c(3, 2), x(3, 1)])
            .unwrap()
            .is_zero());
        assert!(e(3, &[1, 2, 3]).hamiltonian(&[x(3, 1)]).is_err());
    }

    #[test]
    fn schouten_examples() {
        let p = e(4, &[1, 2]);
        let q = e(4, &[3, 4]).scale(&x(4, 1)).unwrap();
        assert_eq!(p.schouten(&q).unwrap(), e(4, &[2, 3, 4]).neg());

        let d1 = e(1, &[1]);
        let f = Multivector::scalar(x(1, 1));
        assert!(d1.schouten(&f).unwrap().as_polynomial().unwrap().is_one());

        assert!(e(4, &[1, 2]).schouten(&e(4, &[3, 4])).unwrap().is_zero());
    }

    #[test]
    fn schouten_of_functions_is_zero() {
        let f = Multivector::scalar(x(2, 1));
        let g = Multivector::scalar(x(2, 2));
        let r = f.schouten(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.degree(), 0);
    }

    #[test]
    fn lie_bracket_of_vector_fields() {
        // [d1 + x2 d3, d2] = -d3
        let x1f = e(3, &[1])
            .checked_add(&e(3, &[3]).scale(&x(3, 2)).unwrap())
            .unwrap();
        let x2f = e(3, &[2]);
        assert_eq!(x1f.schouten(&x2f).unwrap(), e(3, &[3]).neg());
    }

    #[test]
    fn bivector_sign_pin() {
        let g = e(3, &[1, 2]).scale(&x(3, 3)).unwrap();
        let f = &x(3, 1) * &x(3, 2);
        let lhs = g.schouten(&Multivector::scalar(f.clone())).unwrap();
        assert_eq!(lhs, g.contract(&f).unwrap().neg());
    }

    #[test]
    fn s_operator_examples() {
        let g = e(3, &[1, 2]);
        let (x1, x2, x3) = (x(3, 1), x(3, 2), x(3, 3));
        assert_eq!(
            g.s_operator(&[x1.clone(), x2.clone(), x3.clone()]).unwrap(),
            x3
        );
        assert!(g
            .s_operator(&[x1.clone(), x2.clone(), x2.clone()])
            .unwrap()
            .is_zero());
        let g1 = e(1, &[1]);
        let y = x(1, 1);
        assert_eq!(g1.s_operator(&[y.clone(), y.pow(2)]).unwrap(), y.pow(2));
        assert!(g.s_operator(&[x1, x2]).is_err());
    }

    #[test]
    fn nambu_jacobi_bracket_examples() {
        let d = e(3, &[1, 2, 3]);
        let g = e(3, &[1, 2]);
        let fs = [x(3, 1), x(3, 2), x(3, 3)];
        assert_eq!(
            nj_bracket_eval(&d, Some(&g), &fs).unwrap(),
            &c(3, 1) + &x(3, 3)
        );
        assert_eq!(
            nj_bracket_eval(&d, Some(&Multivector::zero(3, 2)), &fs).unwrap(),
            d.bracket_eval(&fs).unwrap()
        );
        let d0 = Multivector::zero(1, 2);
        let g0 = e(1, &[1]);
        assert!(nj_bracket_eval(&d0, Some(&g0), &[c(1, 1), x(1, 1)])
            .unwrap()
            .is_one());
        assert!(nj_bracket_eval(&d, Some(&e(3, &[1])), &fs).is_err());
    }

    #[test]
    fn component_lookup_applies_sign() {
        let l = e(3, &[1, 2, 3]);
        assert_eq!(l.component(&[2, 1, 3]), -c(3, 1));
        assert!(l.component(&[1, 1, 3]).is_zero());
    }

    #[test]
    fn display_format() {
        let l = e(4, &[1, 2, 3])
            .checked_add(&e(4, &[2, 3, 4]).scale(&(&x(4, 1) * &x(4, 2))).unwrap())
            .unwrap();
        assert_eq!(l.to_string(), "1*d1^d2^d3 + (x1*x2)*d2^d3^d4");
        assert_eq!(e(2, &[2, 1]).to_string(), "-1*d1^d2");
        assert_eq!(Multivector::zero(2, 1).to_string(), "0");
    }

    #[test]
    fn basis_index_validation() {
        assert!(matches!(
            Multivector::basis(3, &[1, 4]),
            Err(Error::IndexOutOfRange { index: 4, dim: 3 })
        ));
    }
}
