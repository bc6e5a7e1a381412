mod common;

use common::*;
use nambu::filippov::{
    check_filippov, check_problem_hypothesis, contract_algebra, StructureConstants, Vector,
};
use nambu::parse::{parse_multivector, parse_polynomial, parse_structure_constants};
use nambu::poly::{integer, monomials_up_to};
use nambu::verify::{
    check_jacobi_pair, check_nambu_jacobi, check_nambu_poisson, check_poisson, contraction_pair,
    jacobi_residual, ternary_pair_residuals, CheckConfig, Residual,
};
use nambu::{Multivector, Polynomial};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn poly(dim: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, dim), -3i64..=3), 0..=3)
        .prop_map(move |t| poly_from(dim, &t))
}

fn vfield(dim: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(poly(dim), dim).prop_map(|c| Multivector::vector_field(&c).unwrap())
}

fn mv(dim: usize, degree: usize) -> impl Strategy<Value = Multivector> {
    let idx: Vec<usize> = (1..=dim).collect();
    prop::collection::vec((subsequence(idx, degree), poly(dim)), 1..=3).prop_map(move |ts| {
        ts.into_iter()
            .fold(Multivector::zero(dim, degree), |acc, (i, p)| {
                acc.checked_add(&e(dim, &i).scale(&p).unwrap()).unwrap()
            })
    })
}

fn algebra(dim: usize, arity: usize) -> impl Strategy<Value = StructureConstants> {
    let tuples = nambu_combinations(dim, arity);
    let n = tuples.len() * dim;
    prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -2i64..=2], n).prop_map(move |cs| {
        let mut s = StructureConstants::new(dim, arity).unwrap();
        for (slot, c) in cs.iter().enumerate() {
            let t = &tuples[slot / dim];
            s.add_constant(slot % dim + 1, t, integer(*c)).unwrap();
        }
        s
    })
}

fn nambu_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn rational_vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..=3, dim)
        .prop_map(|c| Vector::from_coords(c.into_iter().map(integer).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partials_obey_leibniz_and_commute(a in poly(3), b in poly(3), i in 1usize..=3, j in 1usize..=3) {
        let lhs = (&a * &b).partial(i).unwrap();
        let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            a.partial(i).unwrap().partial(j).unwrap(),
            a.partial(j).unwrap().partial(i).unwrap()
        );
    }

    #[test]
    fn canonical_bracket_is_jacobian(fs in prop::collection::vec(poly(3), 3)) {
        prop_assert_eq!(canonical(3, 3).bracket_eval(&fs).unwrap(), jacobian_det(&fs));
    }

    #[test]
    fn bracket_is_antisymmetric(l in mv(4, 3), fs in prop::collection::vec(poly(4), 3)) {
        let v = l.bracket_eval(&fs).unwrap();
        let swapped = [fs[1].clone(), fs[0].clone(), fs[2].clone()];
        prop_assert_eq!(l.bracket_eval(&swapped).unwrap(), -&v);
        let repeated = [fs[0].clone(), fs[0].clone(), fs[2].clone()];
        prop_assert!(l.bracket_eval(&repeated).unwrap().is_zero());
    }

    #[test]
    fn bracket_obeys_leibniz(l in mv(4, 3), f in poly(4), g in poly(4), rest in prop::collection::vec(poly(4), 2)) {
        let args = |h: Polynomial| vec![h, rest[0].clone(), rest[1].clone()];
        let lhs = l.bracket_eval(&args(&f * &g)).unwrap();
        let rhs = &(&f * &l.bracket_eval(&args(g.clone())).unwrap())
            + &(&l.bracket_eval(&args(f.clone())).unwrap() * &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schouten_graded_antisymmetry(p in 1usize..=3, q in 1usize..=2, seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let a = random_multivector(&mut rng, 4, p);
        let b = random_multivector(&mut rng, 4, q);
        let ab = a.schouten(&b).unwrap();
        let ba = b.schouten(&a).unwrap();
        let expected = if (p - 1) * (q - 1) % 2 == 0 { ba.neg() } else { ba };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket(a in vfield(3), b in vfield(3)) {
        prop_assert_eq!(a.schouten(&b).unwrap(), lie_bracket(&a, &b));
    }

    #[test]
    fn schouten_matches_decomposable_formula(
        xs in prop::collection::vec(vfield(4), 1..=2),
        ys in prop::collection::vec(vfield(4), 1..=2),
    ) {
        let dim = 4;
        let xr: Vec<&Multivector> = xs.iter().collect();
        let yr: Vec<&Multivector> = ys.iter().collect();
        let lhs = wedge_all(dim, &xr).schouten(&wedge_all(dim, &yr)).unwrap();
        prop_assert_eq!(lhs, decomposable_schouten(&xs, &ys));
    }

    #[test]
    fn schouten_with_function_is_signed_contraction(p in 1usize..=4, seed in any::<u64>(), f in poly(4)) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let g = random_multivector(&mut rng, 4, p);
        let lhs = g.schouten(&Multivector::scalar(f.clone())).unwrap();
        let c = g.contract(&f).unwrap();
        let expected = if p % 2 == 1 { c } else { c.neg() };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn bivector_pin(g in mv(4, 2), f in poly(4)) {
        prop_assert_eq!(
            g.schouten(&Multivector::scalar(f.clone())).unwrap(),
            g.contract(&f).unwrap().neg()
        );
    }

    #[test]
    fn contracting_twice_with_one_function_vanishes(l in mv(4, 3), f in poly(4)) {
        prop_assert!(l.contract(&f).unwrap().contract(&f).unwrap().is_zero());
    }

    #[test]
    fn contraction_order(l in mv(4, 3), f in poly(4), g in poly(4)) {
        let fg = l.contract_all(&[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(&fg, &l.contract(&f).unwrap().contract(&g).unwrap());
        prop_assert_eq!(fg.neg(), l.contract_all(&[g, f]).unwrap());
    }

    #[test]
    fn fundamental_identity_residual_is_lie_derivative(l in mv(4, 3), fs in prop::collection::vec(poly(4), 2), gs in prop::collection::vec(poly(4), 3)) {
        let lhs = jacobi_residual(&l, None, &fs, &gs).unwrap();
        let x = l.contract_all(&fs).unwrap();
        let rhs = x.schouten(&l).unwrap().bracket_eval(&gs).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_print_round_trip(p in poly(4), l in mv(4, 2), s in algebra(4, 3)) {
        prop_assert_eq!(parse_polynomial(&p.to_string(), 4).unwrap(), p);
        prop_assert_eq!(parse_multivector(&l.to_string(), 4, Some(2)).unwrap(), l);
        prop_assert_eq!(parse_structure_constants(&s.to_string(), 4, Some(3)).unwrap(), s);
    }

    #[test]
    fn structure_constants_skew_access(s in algebra(4, 3), k in 1usize..=4) {
        for t in nambu_combinations(4, 3) {
            let c = s.constant(k, &t);
            prop_assert_eq!(s.constant(k, &[t[1], t[0], t[2]]), -c.clone());
            prop_assert_eq!(s.constant(k, &[t[1], t[2], t[0]]), c);
        }
        prop_assert!(s.constant(k, &[1, 1, 2]) == integer(0));
    }

    #[test]
    fn double_contraction_vanishes(s in algebra(4, 3), x in rational_vector(4)) {
        let once = contract_algebra(&s, &x).unwrap();
        prop_assert!(contract_algebra(&once, &x).unwrap().is_zero());
    }

    #[test]
    fn linear_multivector_round_trip(s in algebra(4, 3), vs in prop::collection::vec(rational_vector(4), 3)) {
        let l = s.to_linear_multivector();
        prop_assert_eq!(&StructureConstants::from_linear_multivector(&l).unwrap(), &s);
        // brackets of linear forms are linear forms
        let forms: Vec<Polynomial> = vs
            .iter()
            .map(|v| {
                (1..=4).fold(Polynomial::zero(4), |acc, i| {
                    &acc + &x(4, i).scale(&v.coords()[i - 1])
                })
            })
            .collect();
        let value = l.bracket_eval(&forms).unwrap();
        let vector = s.bracket(&vs).unwrap();
        for i in 1..=4 {
            prop_assert_eq!(value.partial(i).unwrap().as_constant().unwrap(), vector.coords()[i - 1].clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn np_at_order_two_is_poisson(l in mv(4, 2)) {
        let np = check_nambu_poisson(&l, &CheckConfig::default()).unwrap();
        prop_assert_eq!(np.passed, check_poisson(&l).unwrap().passed);
        if let Some(w) = np.witness {
            prop_assert_eq!(w.residual, Residual::Tensor(l.schouten(&l).unwrap()));
        }
    }

    #[test]
    fn np_witnesses_replay(l in mv(4, 3)) {
        let v = check_nambu_poisson(&l, &CheckConfig::default()).unwrap();
        if let Some(w) = v.witness {
            let replay = jacobi_residual(&l, None, &w.fs, &w.gs).unwrap();
            prop_assert!(!replay.is_zero());
            prop_assert_eq!(Residual::Scalar(replay), w.residual);
        }
    }

    #[test]
    fn filippov_implies_hypothesis(s in algebra(4, 3)) {
        if check_filippov(&s).passed {
            prop_assert!(check_problem_hypothesis(&s).unwrap().passed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn failure_persists_at_higher_degree(l in mv(4, 3)) {
        let low = check_nambu_poisson(&l, &CheckConfig::default()).unwrap();
        if let Some(w) = low.witness {
            let cfg = CheckConfig { max_degree: 3, ..CheckConfig::default() };
            prop_assert!(!check_nambu_poisson(&l, &cfg).unwrap().passed);
            // the degree-2 witness is still admissible at degree 3
            prop_assert!(!jacobi_residual(&l, None, &w.fs, &w.gs).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    // (c D, c D_{x_k}) with D = d1^d2^d3 is a rescaled normal form
    #[test]
    fn nambu_jacobi_pairs_contract_to_jacobi_pairs(k in 1usize..=3, c in prop_oneof![Just(-2i64), Just(-1), Just(1), Just(3)]) {
        let c = Polynomial::constant(3, integer(c));
        let d = canonical(3, 3).scale(&c).unwrap();
        let g = d.contract(&x(3, k)).unwrap();
        prop_assert!(check_nambu_jacobi(&d, &g, &CheckConfig::default()).unwrap().passed);
        for m in monomials_up_to(3, 0, 2) {
            let f = Polynomial::monomial(3, m).unwrap();
            let (d2, g2) = contraction_pair(&d, &g, &f).unwrap();
            prop_assert!(check_jacobi_pair(&d2, &g2).unwrap().passed, "f = {}", f);
            for r in ternary_pair_residuals(&d, &g, &f).unwrap() {
                prop_assert!(r.is_zero(), "f = {}: {}", f, r);
            }
        }
    }
}

#[test]
fn graded_jacobi_identity() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
    for _ in 0..40 {
        let dim = 4;
        let (p, q, r) = (
            rand::Rng::random_range(&mut rng, 1..=2usize),
            rand::Rng::random_range(&mut rng, 1..=2usize),
            rand::Rng::random_range(&mut rng, 0..=2usize),
        );
        let a = random_multivector(&mut rng, dim, p);
        let b = random_multivector(&mut rng, dim, q);
        let c = random_multivector(&mut rng, dim, r);
        let lhs = a.schouten(&b.schouten(&c).unwrap()).unwrap();
        let t1 = a.schouten(&b).unwrap().schouten(&c).unwrap();
        let t2 = b.schouten(&a.schouten(&c).unwrap()).unwrap();
        let sign = if (p - 1) * (q - 1) % 2 == 0 {
            t2
        } else {
            t2.neg()
        };
        assert_eq!(lhs, t1.checked_add(&sign).unwrap(), "degrees {p} {q} {r}");
    }
}
