use proptest::prelude::*;

use c2core::counting::{count_affine, count_naive, count_parallel, FiniteField};
use c2core::graphs::{connected_multigraphs, is_isomorphic, Graph};
use c2core::kirchhoff::{graph_polynomial, GraphPolyBackend};
use c2core::polyring::{find_factorization, gcd, split_quadratic, var, Monomial, Polynomial, VarSet};
use c2core::reduction::{slr_reduce, ReductionTree, SlrOptions, Target, Trace};

fn poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), -5i128..=5), 0..=max_terms).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(e, c)| {
            let m = (0..4).fold(Monomial::ONE, |m, i| m.with_exp(var(i as u32 + 1), e[i]));
            (m, c)
        }))
    })
}

/// Homogeneous multilinear polynomial of degree `d` in a1..a5.
fn homogeneous(d: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::sample::subsequence((1..=5u32).collect::<Vec<_>>(), d), -2i128..=2), 1..=4)
        .prop_map(|terms| {
            Polynomial::from_terms(terms.into_iter().map(|(vs, c)| {
                (vs.into_iter().fold(Monomial::ONE, |m, v| m.with_exp(var(v), 1)), c)
            }))
        })
}

fn space(n: u32) -> VarSet {
    (1..=n).map(var).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(p in poly(3, 6)) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<Polynomial>().unwrap(), p);
    }

    #[test]
    fn ring_laws(a in poly(2, 4), b in poly(2, 4), c in poly(2, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b), Some(a));
        }
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(a in poly(2, 3), b in poly(2, 3), h in poly(1, 3)) {
        prop_assume!(!h.is_zero() && !a.is_zero() && !b.is_zero());
        let (f, g) = (&a * &h, &b * &h);
        let d = gcd(&f, &g);
        prop_assert!(d.divides(&f) && d.divides(&g));
        prop_assert!(h.primitive().divides(&d));
    }

    #[test]
    fn factorization_reconstructs(a in poly(1, 3), b in poly(1, 3)) {
        let f = &a * &b;
        if let Some((x, y)) = find_factorization(&f) {
            prop_assert_eq!(&x * &y, f);
            prop_assert!(!x.is_constant() && !y.is_constant());
        }
    }

    #[test]
    fn quadratic_split_reconstructs(a in poly(1, 3), b in poly(1, 3)) {
        let f = &a * &b;
        prop_assume!(f.degree_in(var(1)) <= 2);
        if let Ok(Some((x, y))) = split_quadratic(&f, var(1)) {
            prop_assert_eq!(&x * &y, f);
        }
    }

    #[test]
    fn counts_agree_with_naive(ps in prop::collection::vec(poly(2, 4), 1..=2), q in prop::sample::select(vec![2u64, 3, 4, 5])) {
        let f = FiniteField::new(q).unwrap();
        let a = space(4);
        let fast = count_affine(&ps, a, &f).unwrap().count;
        prop_assert_eq!(fast, count_naive(&ps, a, &f).unwrap().count);
        prop_assert_eq!(fast, count_parallel(&ps, a, &f, 3).unwrap().count);
    }

    #[test]
    fn slr_trees_replay_and_count(f in homogeneous(2), g in homogeneous(2), pair in any::<bool>()) {
        let t = if pair { Target::pair(f.clone(), g) } else { Target::single(f) };
        let a = space(5);
        if let Ok(tree) = slr_reduce(t.clone(), a, SlrOptions::default()).unwrap() {
            prop_assert!(tree.replay().is_ok());
            let json = serde_json::to_string(&tree.to_trace()).unwrap();
            let back = ReductionTree::from_trace(&serde_json::from_str::<Trace>(&json).unwrap()).unwrap();
            prop_assert!(back.replay().is_ok());
            let polys: Vec<Polynomial> = t.polys().into_iter().cloned().collect();
            for q in [2u64, 3] {
                let field = FiniteField::new(q).unwrap();
                let direct = count_affine(&polys, a, &field).unwrap().count % q as u128;
                prop_assert_eq!(tree.evaluate(&field).unwrap() as u128, direct);
            }
        }
    }

    #[test]
    fn psi_is_invariant_under_relabeling(i in 0usize..470, seed in any::<u64>()) {
        let corpus = connected_multigraphs(6);
        let g = &corpus[i % corpus.len()];
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        // deterministic shuffle from the seed
        for k in (1..n).rev() {
            perm.swap(k, (seed as usize >> (k % 16)) % (k + 1));
        }
        let h: Graph = g.permute_vertices(&perm);
        prop_assert!(is_isomorphic(g, &h));
        prop_assert_eq!(
            graph_polynomial(g, GraphPolyBackend::Trees).unwrap(),
            graph_polynomial(&h, GraphPolyBackend::Trees).unwrap()
        );
    }
}
