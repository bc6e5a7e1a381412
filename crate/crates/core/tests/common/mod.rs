#![allow(dead_code)]

use nambu::poly::integer;
use nambu::{Monomial, Multivector, Polynomial};
use rand::Rng;

pub fn x(dim: usize, i: usize) -> Polynomial {
    Polynomial::var(dim, i).unwrap()
}

pub fn e(dim: usize, idx: &[usize]) -> Multivector {
    Multivector::basis(dim, idx).unwrap()
}

pub fn canonical(dim: usize, n: usize) -> Multivector {
    let idx: Vec<usize> = (1..=n).collect();
    e(dim, &idx)
}

pub fn poly_from(dim: usize, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for (exps, c) in terms {
        let pairs: Vec<(usize, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
            .collect();
        let m = Polynomial::monomial(dim, Monomial::from_pairs(&pairs)).unwrap();
        p = &p + &m.scale(&integer(*c));
    }
    p
}

pub fn random_poly<R: Rng>(rng: &mut R, dim: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    let n = rng.random_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, i64)> = (0..n)
        .map(|_| {
            let exps = (0..dim).map(|_| rng.random_range(0..=max_exp)).collect();
            (exps, rng.random_range(-3..=3))
        })
        .collect();
    poly_from(dim, &terms)
}

pub fn random_vector_field<R: Rng>(rng: &mut R, dim: usize) -> Multivector {
    let comps: Vec<Polynomial> = (0..dim).map(|_| random_poly(rng, dim, 2, 2)).collect();
    Multivector::vector_field(&comps).unwrap()
}

pub fn random_multivector<R: Rng>(rng: &mut R, dim: usize, degree: usize) -> Multivector {
    let mut out = Multivector::zero(dim, degree);
    for _ in 0..rng.random_range(1..=3) {
        let mut idx: Vec<usize> = (1..=dim).collect();
        while idx.len() > degree {
            idx.remove(rng.random_range(0..idx.len()));
        }
        let term = e(dim, &idx).scale(&random_poly(rng, dim, 2, 2)).unwrap();
        out = out.checked_add(&term).unwrap();
    }
    out
}

/// Components of a vector field, 1-based.
pub fn components(v: &Multivector) -> Vec<Polynomial> {
    (1..=v.dim()).map(|i| v.component(&[i])).collect()
}

/// [X, Y]^k = X(Y^k) - Y(X^k), straight from the components.
pub fn lie_bracket(a: &Multivector, b: &Multivector) -> Multivector {
    let dim = a.dim();
    let (xa, xb) = (components(a), components(b));
    let apply = |v: &[Polynomial], f: &Polynomial| {
        (1..=dim).fold(Polynomial::zero(dim), |acc, i| {
            &acc + &(&v[i - 1] * &f.partial(i).unwrap())
        })
    };
    let comps: Vec<Polynomial> = (0..dim)
        .map(|k| &apply(&xa, &xb[k]) - &apply(&xb, &xa[k]))
        .collect();
    Multivector::vector_field(&comps).unwrap()
}

pub fn wedge_all(dim: usize, fields: &[&Multivector]) -> Multivector {
    fields
        .iter()
        .fold(Multivector::scalar(Polynomial::one(dim)), |acc, f| {
            acc.wedge(f).unwrap()
        })
}

/// Schouten bracket of X1^...^Xk and Y1^...^Yl by the sum over
/// pairs (i, j) of (-1)^(i+j) [Xi, Yj] ^ (X without i) ^ (Y without j).
pub fn decomposable_schouten(xs: &[Multivector], ys: &[Multivector]) -> Multivector {
    let dim = xs[0].dim();
    let mut out = Multivector::zero(dim, xs.len() + ys.len() - 1);
    for (i, xi) in xs.iter().enumerate() {
        for (j, yj) in ys.iter().enumerate() {
            let lie = lie_bracket(xi, yj);
            let mut rest: Vec<&Multivector> = vec![&lie];
            rest.extend(
                xs.iter()
                    .enumerate()
                    .filter(|(a, _)| *a != i)
                    .map(|(_, v)| v),
            );
            rest.extend(
                ys.iter()
                    .enumerate()
                    .filter(|(b, _)| *b != j)
                    .map(|(_, v)| v),
            );
            let term = wedge_all(dim, &rest);
            // 1-based i + j has the same parity as 0-based i + j
            out = if (i + j) % 2 == 0 {
                out.checked_add(&term).unwrap()
            } else {
                out.checked_sub(&term).unwrap()
            };
        }
    }
    out
}

/// Determinant bracket of the canonical tensor on `n` functions, by
/// cofactor expansion of the Jacobian matrix.
pub fn jacobian_det(fs: &[Polynomial]) -> Polynomial {
    let n = fs.len();
    let rows: Vec<Vec<Polynomial>> = fs
        .iter()
        .map(|f| (1..=n).map(|i| f.partial(i).unwrap()).collect())
        .collect();
    fn det(m: &[Vec<Polynomial>], dim: usize) -> Polynomial {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = Polynomial::zero(dim);
        for col in 0..m.len() {
            let minor: Vec<Vec<Polynomial>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let t = &m[0][col] * &det(&minor, dim);
            acc = if col % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    det(&rows, fs[0].dim())
}
