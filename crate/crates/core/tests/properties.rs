use proptest::prelude::*;

use quadlat::classify::{half_rescale, two_elementary_invariants};
use quadlat::hassett::{four_squares, ramanujan_rep};
use quadlat::lattice::signature_of;
use quadlat::matrix::smith_normal_form;
use quadlat::shortvec::for_each_short_vector;
use quadlat::{IntMatrix, IntegralLattice, Parity, RatVector};

/// Unimodular matrix from row operations `row_i += c * row_j` on the identity.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let src = m.row(j).to_vec();
        for (a, b) in m.row_mut(i).iter_mut().zip(src) {
            *a += c * b;
        }
    }
    m
}

fn symmetric(n: usize, entries: &[i64]) -> IntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            rows[i][j] = entries[k];
            rows[j][i] = entries[k];
            k += 1;
        }
    }
    IntMatrix::from_rows(&rows)
}

fn nondegenerate_gram() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-4i64..=4, n * (n + 1) / 2)))
        .prop_map(|(n, e)| symmetric(n, &e))
        .prop_filter("nondegenerate", |g| g.determinant() != 0)
}

/// Positive definite: `A^T A + I`.
fn definite_gram() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * n)))
        .prop_map(|(n, e)| {
            let a = IntMatrix::from_rows(&e.chunks(n).collect::<Vec<_>>());
            let mut g = a.transpose().mul(&a);
            for i in 0..n {
                g[(i, i)] += 1;
            }
            g
        })
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..8)
}

proptest! {
    #[test]
    fn signature_is_congruence_invariant(g in nondegenerate_gram(), ops in ops()) {
        let b = unimodular(g.rows(), &ops);
        let s = signature_of(&g);
        prop_assert_eq!(s, signature_of(&g.congruence(&b)));
        prop_assert_eq!(s.rank(), g.rows());
        prop_assert_eq!(g.determinant() < 0, s.negative % 2 == 1);
    }

    #[test]
    fn signature_negates(g in nondegenerate_gram()) {
        prop_assert_eq!(signature_of(&g.negated()), signature_of(&g).flipped());
    }

    #[test]
    fn smith_form_factors(g in nondegenerate_gram()) {
        let s = smith_normal_form(&g);
        prop_assert_eq!(s.u.mul(&g).mul(&s.v), s.d());
        prop_assert!(s.diagonal.windows(2).all(|w| w[1] % w[0] == 0));
        let prod: i128 = s.diagonal.iter().map(|&d| d as i128).product();
        prop_assert_eq!(prod.abs(), g.determinant().abs());
    }

    #[test]
    fn discriminant_order_and_lifts(g in nondegenerate_gram(), seed in prop::collection::vec(0i64..1000, 5)) {
        let l = IntegralLattice::from_gram(None, g.clone()).unwrap();
        let group = l.discriminant_group();
        prop_assert_eq!(group.order() as i128, g.determinant().abs());
        let x: Vec<i64> = group.invariant_factors().iter().zip(seed.iter().cycle()).map(|(d, s)| s % d).collect();
        let lift = group.lift(&x);
        prop_assert!(l.in_dual(&lift));
        prop_assert_eq!(group.element_of(&lift).unwrap(), x.clone());
        let shifted = lift.add(&RatVector::integral(&seed[..l.rank()]));
        prop_assert_eq!(group.element_of(&shifted).unwrap(), x);
    }

    #[test]
    fn bilinear_form_is_biadditive(g in nondegenerate_gram(), s in prop::collection::vec(0i64..1000, 15)) {
        let l = IntegralLattice::from_gram(None, g).unwrap();
        let form = l.discriminant_bilinear_form();
        let group = form.group();
        let pick = |k: usize| -> Vec<i64> {
            group.invariant_factors().iter().enumerate().map(|(i, d)| s[(k * 5 + i) % 15] % d).collect()
        };
        let (x, y, z) = (pick(0), pick(1), pick(2));
        prop_assert_eq!(form.b(&x, &y), form.b(&y, &x));
        let lhs = form.b(&group.add(&x, &y), &z);
        let rhs = form.b(&x, &z) + form.b(&y, &z);
        prop_assert!((lhs - rhs).is_integer());
    }

    #[test]
    fn direct_sum_invariants(a in nondegenerate_gram(), b in nondegenerate_gram()) {
        let la = IntegralLattice::from_gram(None, a).unwrap();
        let lb = IntegralLattice::from_gram(None, b).unwrap();
        let s = la.direct_sum(&lb);
        prop_assert_eq!(s.determinant(), la.determinant() * lb.determinant());
        let (sa, sb, ss) = (la.signature(), lb.signature(), s.signature());
        prop_assert_eq!((ss.positive, ss.negative), (sa.positive + sb.positive, sa.negative + sb.negative));
        prop_assert_eq!(s.parity() == Parity::Even, la.is_even() && lb.is_even());
    }

    #[test]
    fn rescale_round_trip(g in nondegenerate_gram(), k in 2i64..5) {
        let l = IntegralLattice::from_gram(None, g).unwrap();
        let back = l.scaled(k).rescale(1, k).unwrap();
        prop_assert_eq!(back.gram(), l.gram());
    }

    #[test]
    fn short_vectors_symmetric_and_bounded(g in definite_gram(), bound in 1i64..12) {
        let mut found = Vec::new();
        for_each_short_vector(&g, bound, |v| found.push(v.to_vec())).unwrap();
        for v in &found {
            let gv = g.mul_vec(v);
            let norm: i64 = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
            prop_assert!(norm > 0 && norm <= bound);
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(found.contains(&neg));
        }
        let mut sorted = found.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), found.len());
    }

    #[test]
    fn short_vectors_require_definite(g in nondegenerate_gram()) {
        let has_negative = signature_of(&g).negative > 0;
        prop_assert_eq!(for_each_short_vector(&g, 4, |_| {}).is_err(), has_negative);
    }

    #[test]
    fn four_squares_valid(n in 0u64..20_000) {
        let (x, y, z, u) = four_squares(n);
        prop_assert_eq!(x * x + y * y + z * z + u * u, n);
        prop_assert!(x >= y && y >= z && z >= u);
    }

    #[test]
    fn ramanujan_valid(n in 1u64..20_000) {
        match ramanujan_rep(n) {
            Some((x, y, z, u)) => {
                prop_assert_eq!(2 * (x * x + y * y + z * z) + 3 * u * u, n);
                prop_assert!(x >= y && y >= z);
            }
            None => prop_assert!(n == 1 || n == 17),
        }
    }

    #[test]
    fn halving_delta_one_two_elementary_is_odd(pos in 1usize..4, neg in 1usize..8) {
        let mut d = vec![2i64; pos];
        d.extend(std::iter::repeat_n(-2, neg));
        let l = IntegralLattice::from_gram(None, IntMatrix::diagonal(&d)).unwrap();
        let inv = two_elementary_invariants(&l).unwrap();
        prop_assert_eq!(inv.a, l.rank());
        prop_assert_eq!(inv.delta, 1);
        prop_assert_eq!(half_rescale(&l).unwrap().parity(), Parity::Odd);
    }
}
