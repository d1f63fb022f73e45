use corner_core::linalg::det_rational as det;
use corner_core::mixed::repeat_pair;
use corner_core::random::{random_assembly_with, trial_rng};
use corner_core::rational::{frac, int};
use corner_core::{
    ab_hull, convex_hull, corollary_mixed_volume, lab_volume, lemma_mixed_volume, mixed_volume_pair,
    mixed_volume_tuple, validate_ab, AlignedSimplex, CoordSubspace, Point, Rational, SignVector, Style, VPolytope,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn point(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(lo..=hi, n).prop_map(|c| Point::from_ints(&c))
}

fn points(n: usize, lo: i64, hi: i64, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(n, lo, hi), count)
}

fn polytope(n: usize) -> impl Strategy<Value = VPolytope> {
    points(n, -3, 3, 1..=n + 4).prop_map(move |p| VPolytope::new(n, &p).unwrap())
}

/// `(n, K, T)` with `n` in `1..=3`.
fn pair() -> impl Strategy<Value = (usize, VPolytope, VPolytope)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), polytope(n), polytope(n)))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(int), n), n)
}

fn alphas(n: usize, max: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0..=max).prop_map(int), n)
}

fn pow(r: &Rational, k: usize) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_is_idempotent(p in polytope(3)) {
        let again = convex_hull(p.vertices()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(again.volume(), p.volume());
    }

    #[test]
    fn volume_invariances(p in polytope(3), t in point(3, -5, 5), mask in 0u32..8, num in 1i64..=4, den in 1i64..=3) {
        let v = p.volume();
        prop_assert_eq!(p.translate(&t).unwrap().volume(), v.clone());
        prop_assert_eq!(p.reflect(&SignVector::from_mask(3, mask)).volume(), v.clone());
        let lambda = frac(num, den);
        prop_assert_eq!(p.scale(&lambda).unwrap().volume(), pow(&lambda, 3) * v);
    }

    #[test]
    fn linear_maps_scale_volume_by_the_determinant(p in polytope(3), a in matrix(3)) {
        let image = p.linear_map(&a).unwrap();
        prop_assert_eq!(image.volume(), det(&a).abs() * p.volume());
    }

    #[test]
    fn lp_membership_matches_facets(p in polytope(3), xs in points(3, -3, 3, 1..=6)) {
        for x in &xs {
            prop_assert_eq!(p.member(x).unwrap(), p.contains(x), "{}", x);
        }
        for v in p.vertices() {
            prop_assert!(p.member(v).unwrap());
        }
    }

    #[test]
    fn pair_and_tuple_mixed_volumes_agree((n, k, t) in pair()) {
        for j in 0..=n {
            prop_assert_eq!(
                mixed_volume_pair(&k, &t, j).unwrap(),
                mixed_volume_tuple(&repeat_pair(&k, &t, j)).unwrap()
            );
        }
    }

    #[test]
    fn mixed_volume_symmetry_and_endpoints((n, k, t) in pair()) {
        for j in 0..=n {
            prop_assert_eq!(mixed_volume_pair(&k, &t, j).unwrap(), mixed_volume_pair(&t, &k, n - j).unwrap());
        }
        prop_assert_eq!(mixed_volume_pair(&k, &t, n).unwrap(), k.volume());
        prop_assert_eq!(mixed_volume_pair(&k, &t, 0).unwrap(), t.volume());
    }

    #[test]
    fn mixed_volume_is_additive_in_each_argument(k in polytope(2), l in polytope(2), t in polytope(2)) {
        let sum = k.minkowski_sum(&l).unwrap();
        prop_assert_eq!(
            mixed_volume_pair(&sum, &t, 1).unwrap(),
            mixed_volume_pair(&k, &t, 1).unwrap() + mixed_volume_pair(&l, &t, 1).unwrap()
        );
        let m = mixed_volume_tuple(&[sum, t.clone(), t.clone()]);
        prop_assert!(m.is_err(), "tuple length must match the dimension");
    }

    #[test]
    fn mixed_volume_is_gl_equivariant((n, k, t, a) in pair().prop_flat_map(|(n, k, t)| (Just(n), Just(k), Just(t), matrix(n)))) {
        let (ak, at) = (k.linear_map(&a).unwrap(), t.linear_map(&a).unwrap());
        let d = det(&a).abs();
        for j in 0..=n {
            prop_assert_eq!(mixed_volume_pair(&ak, &at, j).unwrap(), &d * mixed_volume_pair(&k, &t, j).unwrap());
        }
    }

    #[test]
    fn lemma_is_monotone_and_homogeneous(a in alphas(3, 3), i in 0usize..3, lambda in 1i64..=3) {
        let s = AlignedSimplex::new(a.clone()).unwrap();
        let mut bigger = a.clone();
        bigger[i] += int(1);
        let b = AlignedSimplex::new(bigger).unwrap();
        let scaled = AlignedSimplex::new(a.iter().map(|x| x * int(lambda)).collect()).unwrap();
        for j in 0..=3 {
            let v = lemma_mixed_volume(&s, j).unwrap();
            prop_assert!(lemma_mixed_volume(&b, j).unwrap() >= v);
            prop_assert_eq!(lemma_mixed_volume(&scaled, j).unwrap(), pow(&int(lambda), j) * v);
        }
    }

    #[test]
    fn corollary_is_permutation_covariant(a in alphas(4, 3), b in alphas(4, 3), perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        let (s, t) = (AlignedSimplex::new(a.clone()).unwrap(), AlignedSimplex::new(b.clone()).unwrap());
        let ps = AlignedSimplex::new(perm.iter().map(|&i| a[i].clone()).collect()).unwrap();
        let pt = AlignedSimplex::new(perm.iter().map(|&i| b[i].clone()).collect()).unwrap();
        for j in 0..=4 {
            prop_assert_eq!(corollary_mixed_volume(&s, &t, j).unwrap(), corollary_mixed_volume(&ps, &pt, j).unwrap());
        }
    }

    #[test]
    fn ab_hull_is_sound_and_monotone(gens in points(3, 0, 4, 1..=4), extra in point(3, 0, 4)) {
        let k = ab_hull(&gens).unwrap();
        prop_assert!(validate_ab(k.body()));
        for g in &gens {
            prop_assert!(k.body().contains(g));
            // The box below each generator.
            let corner = Point::new(g.coords().iter().map(|c| c / int(2)).collect());
            prop_assert!(k.body().contains(&corner));
        }
        let mut more = gens.clone();
        more.push(extra);
        let bigger = ab_hull(&more).unwrap();
        prop_assert!(bigger.body().contains_polytope(k.body()));
        prop_assert!(bigger.volume() >= k.volume());
        prop_assert_eq!(ab_hull(k.body().vertices()).unwrap(), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Pieces of orthants that share signs on `E` have the same projection onto `E`.
    #[test]
    fn assembly_pieces_are_consistent(seed in any::<u64>(), n in 1usize..=3, glued in any::<bool>()) {
        let style = if glued { Style::Glued } else { Style::Unconditional };
        let a = random_assembly_with(&mut trial_rng(seed, 0), n, style).unwrap();
        let signs: Vec<SignVector> = SignVector::all(n).collect();
        for s in &signs {
            for t in &signs {
                for e in CoordSubspace::all(n) {
                    if s.agrees_on(t, e.mask()) {
                        prop_assert_eq!(a.piece(s).project(&e).unwrap(), a.piece(t).project(&e).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn negation_is_an_involution(seed in any::<u64>(), n in 1usize..=3) {
        let a = random_assembly_with(&mut trial_rng(seed, 0), n, Style::Glued).unwrap();
        let neg = a.negate();
        prop_assert_eq!(&neg.negate(), &a);
        prop_assert_eq!(lab_volume(&neg), lab_volume(&a));
        prop_assert_eq!(neg.global_hull(), a.global_hull().negate());
        for s in SignVector::all(n) {
            prop_assert_eq!(neg.piece(&s), a.piece(&s.negated()));
        }
        prop_assert!(!lab_volume(&a).is_zero());
    }
}
