use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wdforge_core::modl::{close_group, cohomology_ad0, h0_h1_ad0, is_enormous, MatGroup, DEFAULT_CAP, DEFAULT_H1_CAP};
use wdforge_core::random;
use wdforge_core::{Field, Matrix};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Companion matrix of x² + c₁x + c₀ whose multiplicative order is l² − 1.
fn singer(f: &Field, l: u64) -> Matrix {
    for c0 in 1..l as i64 {
        for c1 in 0..l as i64 {
            let c = Matrix::from_i64(f, &[&[0, -c0], &[1, -c1]]);
            let g = MatGroup::new(f, vec![c.clone()], DEFAULT_CAP).unwrap();
            if close_group(&g).unwrap().order() as u64 == l * l - 1 {
                return c;
            }
        }
    }
    unreachable!("F_{{l²}} has primitive elements")
}

/// A subgroup of a torus normaliser, so its order divides 2(l² − 1) or 2(l − 1)².
fn coprime_group<R: Rng>(f: &Field, l: u64, rng: &mut R) -> MatGroup {
    let gens = match rng.gen_range(0..4) {
        0 => {
            let (a, b) = (rng.gen_range(1..l as i64), rng.gen_range(1..l as i64));
            vec![Matrix::from_i64(f, &[&[a, 0], &[0, b]])]
        }
        1 => {
            let (a, b) = (rng.gen_range(1..l as i64), rng.gen_range(1..l as i64));
            vec![Matrix::from_i64(f, &[&[a, 0], &[0, b]]), Matrix::from_i64(f, &[&[0, 1], &[1, 0]])]
        }
        2 => {
            let c = singer(f, l);
            vec![c.pow(rng.gen_range(1..l * l - 1))]
        }
        _ => {
            let c = singer(f, l);
            // Frobenius of F_{l²} in the basis 1, x: 1 ↦ 1, x ↦ x^l
            let e1 = vec![f.one(), f.zero()];
            let sigma = Matrix::from_columns(f, 2, &[e1.clone(), c.pow(l).mul_vec(&e1)]);
            vec![c.pow(rng.gen_range(1..l * l - 1)), sigma]
        }
    };
    let p = random::invertible(f, 2, rng);
    MatGroup::new(f, gens, DEFAULT_CAP).unwrap().conjugate_by(&p).unwrap()
}

#[test]
fn coprime_order_groups_have_no_h1() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for l in [5u64, 7, 11, 13] {
        let f = Field::prime_field(l as u32).unwrap();
        for _ in 0..8 {
            let g = close_group(&coprime_group(&f, l, &mut rng)).unwrap();
            assert_eq!(gcd(g.order(), l as usize), 1);
            let c = cohomology_ad0(&g, DEFAULT_H1_CAP).unwrap();
            assert_eq!(c.h1(), 0, "order {} over F_{l}", g.order());
            assert!(c.methods_agree());
            assert_eq!(c.h0, c.h0_all_elements);
            checked += 1;
        }
    }
    assert!(checked >= 20);
}

#[test]
fn scalar_groups_are_never_irreducible() {
    for l in [5u32, 7, 11] {
        let f = Field::prime_field(l).unwrap();
        for c in 1..l as i64 {
            let g = MatGroup::new(&f, vec![Matrix::from_i64(&f, &[&[c, 0], &[0, c]])], DEFAULT_CAP).unwrap();
            let r = is_enormous(&g).unwrap();
            assert!(!r.absolutely_irreducible && !r.enormous);
            // scalars act trivially on ad⁰
            assert_eq!(h0_h1_ad0(&close_group(&g).unwrap()).unwrap().0, 3);
        }
    }
}

fn small_groups(f5: &Field, f7: &Field) -> Vec<MatGroup> {
    let m = |f: &Field, a: &[&[i64]]| Matrix::from_i64(f, a);
    vec![
        MatGroup::new(f5, vec![m(f5, &[&[1, 1], &[0, 1]]), m(f5, &[&[1, 0], &[1, 1]])], DEFAULT_CAP).unwrap(),
        MatGroup::new(f5, vec![m(f5, &[&[2, 0], &[0, 1]]), m(f5, &[&[1, 1], &[0, 1]])], DEFAULT_CAP).unwrap(),
        MatGroup::new(f7, vec![m(f7, &[&[3, 0], &[0, 1]]), m(f7, &[&[0, 1], &[1, 0]])], DEFAULT_CAP).unwrap(),
        MatGroup::new(f7, vec![m(f7, &[&[0, 1], &[1, 3]])], DEFAULT_CAP).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, .. ProptestConfig::default() })]

    #[test]
    fn enormous_verdict_is_conjugation_invariant(seed in any::<u64>(), which in 0usize..4) {
        let (f5, f7) = (Field::prime_field(5).unwrap(), Field::prime_field(7).unwrap());
        let g = small_groups(&f5, &f7).swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random::invertible(g.field(), 2, &mut rng);
        let a = is_enormous(&g).unwrap();
        let b = is_enormous(&g.conjugate_by(&p).unwrap()).unwrap();
        prop_assert_eq!(a.order, b.order);
        prop_assert_eq!(a.absolutely_irreducible, b.absolutely_irreducible);
        prop_assert_eq!(a.cohomology.h0, b.cohomology.h0);
        prop_assert_eq!(a.cohomology.h1(), b.cohomology.h1());
        prop_assert_eq!(a.enormous, b.enormous);
    }

    #[test]
    fn coboundaries_inside_cocycles(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::prime_field(7).unwrap();
        let gens = (0..2).map(|_| random::invertible(&f, 2, &mut rng)).collect();
        let g = MatGroup::new(&f, gens, DEFAULT_CAP).unwrap();
        let closed = close_group(&g).unwrap();
        if closed.order() <= DEFAULT_H1_CAP {
            let c = cohomology_ad0(&closed, DEFAULT_H1_CAP).unwrap();
            prop_assert!(c.b1 <= c.z1_all_pairs);
            prop_assert!(c.methods_agree());
            prop_assert_eq!(c.h0, c.h0_all_elements);
            prop_assert_eq!(c.b1, 3 - c.h0);
        }
    }
}
