//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! Coordinates are 1-based: `x1, ..., xd`. A [`Polynomial`] carries its
//! ambient dimension `d` so that mixing polynomials from different
//! coordinate spaces is caught instead of silently padded.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ensure_dim, Error, Result};

/// Exact rational coefficient (always reduced, positive denominator).
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// A power product `x_{i1}^{e1} ... x_{ik}^{ek}` stored sparsely.
///
/// Pairs are sorted by coordinate index and no exponent is zero, so the
/// empty list is the constant monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize) -> Self {
        Monomial {
            exps: vec![(index, 1)],
        }
    }

    /// Builds a monomial from `(index, exponent)` pairs in any order;
    /// repeated indices accumulate and zero exponents are dropped.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for &(i, e) in pairs {
            *acc.entry(i).or_default() += e;
        }
        Monomial {
            exps: acc.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.exps.last().map_or(0, |&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        out.push((i, e));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((j, f));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((i, e + f));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { exps: out }
    }

    /// Derivative with respect to `x_index`: the multiplier and the
    /// lowered monomial, or `None` when the variable does not occur.
    fn differentiate(&self, index: usize) -> Option<(u32, Monomial)> {
        let pos = self.exps.iter().position(|&(i, _)| i == index)?;
        let e = self.exps[pos].1;
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(pos);
        } else {
            exps[pos].1 = e - 1;
        }
        Some((e, Monomial { exps }))
    }
}

/// Graded lexicographic order with `x1 > x2 > ... > xd`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.total_degree().cmp(&other.total_degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            let (ea, eb) = match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(&&(i, e)), Some(&&(j, f))) => match i.cmp(&j) {
                    Ordering::Less => {
                        a.next();
                        (e, 0)
                    }
                    Ordering::Greater => {
                        b.next();
                        (0, f)
                    }
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        (e, f)
                    }
                },
                (Some(&&(_, e)), None) => (e, 0),
                (None, Some(&&(_, f))) => (0, f),
            };
            match ea.cmp(&eb) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (n, &(i, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Every monomial in `dim` variables with total degree in
/// `min_degree..=max_degree`, in the canonical enumeration order: by
/// degree, then lexicographically with `x1` first (`x1^2, x1*x2, ...`).
pub fn monomials_up_to(dim: usize, min_degree: u32, max_degree: u32) -> Vec<Monomial> {
    fn fill(
        dim: usize,
        start: usize,
        remaining: u32,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial {
                exps: current.clone(),
            });
            return;
        }
        for i in start..=dim {
            for e in (1..=remaining).rev() {
                current.push((i, e));
                fill(dim, i + 1, remaining - e, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    for degree in min_degree..=max_degree {
        fill(dim, 1, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// A polynomial in `x1..x_dim` kept in canonical form: no zero
/// coefficients are stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::term(dim, c, Monomial::one())
    }

    /// The coordinate function `x_index`.
    pub fn var(dim: usize, index: usize) -> Result<Self> {
        if index == 0 || index > dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Ok(Self::term(dim, Rational::one(), Monomial::var(index)))
    }

    pub fn monomial(dim: usize, m: Monomial) -> Result<Self> {
        if m.max_index() > dim {
            return Err(Error::IndexOutOfRange {
                index: m.max_index(),
                dim,
            });
        }
        Ok(Self::term(dim, Rational::one(), m))
    }

    fn term(dim: usize, c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { dim, terms }
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, merging
    /// like terms.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let mut p = Polynomial::zero(dim);
        for (c, m) in terms {
            if m.max_index() > dim {
                return Err(Error::IndexOutOfRange {
                    index: m.max_index(),
                    dim,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::total_degree)
    }

    /// The same polynomial viewed in a larger (or equal) coordinate space.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        let used = self
            .terms
            .keys()
            .map(Monomial::max_index)
            .max()
            .unwrap_or(0);
        if used > dim {
            return Err(Error::IndexOutOfRange { index: used, dim });
        }
        Ok(Polynomial {
            dim,
            terms: self.terms.clone(),
        })
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        ensure_dim(self.dim, other.dim)?;
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative `d/dx_index`.
    pub fn partial(&self, index: usize) -> Result<Polynomial> {
        if index == 0 || index > self.dim {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.dim,
            });
        }
        Ok(self.d(index))
    }

    /// Unchecked partial derivative for indices already validated.
    pub(crate) fn d(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.differentiate(index) {
                out.add_term(lowered, c * BigInt::from(e));
            }
        }
        out
    }

    /// Evaluates at a rational point (`point[i-1]` is the value of `x_i`).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        ensure_dim(self.dim, point.len())?;
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(i, e) in m.exponents() {
                v *= num_traits::pow(point[i - 1].clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a dimension mismatch; use the `checked_*`
// methods where inputs have not been validated.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
