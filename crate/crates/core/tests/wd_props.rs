use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wdforge_core::decomp::is_semisimple;
use wdforge_core::field::adjoin_root;
use wdforge_core::random;
use wdforge_core::wd::{
    direct_sum, frobenius_semisimplify, from_segments, is_generic_parameter, is_isomorphic, monodromy_dominates, segment_order,
    segments, semisimplify, sp, twist_unramified, Segment, WdRep,
};
use wdforge_core::{Error, Field, Matrix, Poly};

fn sqrt2() -> Field {
    let q = Field::rationals();
    let p = Poly::from_coeffs(&q, vec![q.from_i64(-2), q.zero(), q.one()]);
    adjoin_root(&q, &p).unwrap().field
}

fn field(which: usize) -> Field {
    if which == 0 {
        Field::rationals()
    } else {
        sqrt2()
    }
}

fn sorted(f: &Field, mut segs: Vec<Segment>) -> Vec<Segment> {
    segs.sort_by(|a, b| segment_order(f, a, b));
    segs
}

/// Commutation and nilpotency checked directly on the matrices.
fn satisfies_wd_relations(w: &WdRep) -> bool {
    let f = w.field();
    let q = f.from_i64(w.q() as i64);
    let nd = w.n().pow(w.dim() as u64);
    !f.is_zero(&w.frob().det()) && nd.is_zero() && w.n().mul(w.frob()) == w.frob().mul(w.n()).scale(&q)
}

#[test]
fn sp_matches_its_definition() {
    let f = Field::rationals();
    let w = sp(3, &f.from_i64(4), 2, &f).unwrap();
    let mut n = Matrix::zeros(&f, 3, 3);
    n.set(1, 0, f.one());
    n.set(2, 1, f.one());
    assert_eq!(w.frob(), &Matrix::diag(&f, &[f.from_i64(4), f.from_i64(2), f.from_i64(1)]));
    assert_eq!(w.n(), &n);
    assert!(satisfies_wd_relations(&w));
}

#[test]
fn wrong_commutation_is_rejected() {
    let f = Field::rationals();
    let mut n = Matrix::zeros(&f, 2, 2);
    n.set(0, 1, f.one());
    // N e₂ = e₁ runs against the convention N e₁ = e₂
    let frob = Matrix::diag(&f, &[f.from_i64(2), f.div(&f.from_i64(2), &f.from_i64(5)).unwrap()]);
    assert!(matches!(WdRep::new(5, &f, frob, n), Err(Error::ValidationFailed(_))));
}

#[test]
fn segments_need_frobenius_semisimple_input() {
    let f = Field::rationals();
    let frob = Matrix::from_i64(&f, &[&[2, 1], &[0, 2]]);
    let w = WdRep::new(5, &f, frob, Matrix::zeros(&f, 2, 2)).unwrap();
    assert_eq!(segments(&w), Err(Error::NotFrobeniusSemisimple));
    let s = segments(&frobenius_semisimplify(&w).unwrap()).unwrap();
    assert_eq!(s, vec![Segment { value: f.from_i64(2), length: 1 }; 2]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn segment_round_trip(seed in any::<u64>(), which in 0usize..2, d in 1usize..=4) {
        let f = field(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = [3u64, 5, 9][rng.gen_range(0..3)];
        let segs = random::segments(&f, q, d, &mut rng);
        let w = from_segments(&segs, q, &f).unwrap().conjugate_by(&random::unimodular(&f, d, &mut rng)).unwrap();
        prop_assert!(satisfies_wd_relations(&w));
        prop_assert_eq!(segments(&w).unwrap(), sorted(&f, segs.clone()));
        let rebuilt = from_segments(&segments(&w).unwrap(), q, &f).unwrap();
        prop_assert!(is_isomorphic(&rebuilt, &w, false).unwrap());
    }

    #[test]
    fn semisimplifications_are_idempotent(seed in any::<u64>(), which in 0usize..2, d in 1usize..=4) {
        let f = field(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random::wd_rep(&f, 5, d, &mut rng);
        let fss = frobenius_semisimplify(&w).unwrap();
        prop_assert!(is_semisimple(fss.frob()));
        prop_assert!(satisfies_wd_relations(&fss));
        prop_assert_eq!(&frobenius_semisimplify(&fss).unwrap(), &fss);
        let ss = semisimplify(&w).unwrap();
        prop_assert!(ss.n().is_zero());
        prop_assert_eq!(&semisimplify(&ss).unwrap(), &ss);
        prop_assert_eq!(fss.n(), w.n());
    }

    #[test]
    fn isomorphism_is_an_equivalence(seed in any::<u64>(), d in 1usize..=4) {
        let f = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::wd_rep(&f, 5, d, &mut rng);
        let b = a.conjugate_by(&random::invertible(&f, d, &mut rng)).unwrap();
        let c = b.conjugate_by(&random::invertible(&f, d, &mut rng)).unwrap();
        let other = random::wd_rep(&f, 5, d, &mut rng);
        prop_assert!(is_isomorphic(&a, &a, false).unwrap());
        prop_assert!(is_isomorphic(&a, &b, true).unwrap() && is_isomorphic(&b, &a, true).unwrap());
        prop_assert!(is_isomorphic(&a, &c, true).unwrap());
        prop_assert_eq!(is_isomorphic(&a, &other, false).unwrap(), is_isomorphic(&other, &a, false).unwrap());
        prop_assert_eq!(is_isomorphic(&a, &other, false).unwrap(), is_isomorphic(&c, &other, false).unwrap());
    }

    #[test]
    fn direct_sum_concatenates_segments(seed in any::<u64>(), d1 in 1usize..=2, d2 in 1usize..=2) {
        let f = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = random::segments(&f, 7, d1, &mut rng);
        let s2 = random::segments(&f, 7, d2, &mut rng);
        let w = direct_sum(&from_segments(&s1, 7, &f).unwrap(), &from_segments(&s2, 7, &f).unwrap()).unwrap();
        let all: Vec<Segment> = s1.into_iter().chain(s2).collect();
        prop_assert_eq!(segments(&w).unwrap(), sorted(&f, all));
    }

    #[test]
    fn twisting_scales_segment_values(seed in any::<u64>(), d in 1usize..=4) {
        let f = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let segs = random::segments(&f, 5, d, &mut rng);
        let c = random::nonzero_integral(&f, 4, &mut rng);
        let w = from_segments(&segs, 5, &f).unwrap();
        let scaled: Vec<Segment> = segs.iter().map(|s| Segment { value: f.mul(&s.value, &c), length: s.length }).collect();
        prop_assert_eq!(segments(&twist_unramified(&w, &c).unwrap()).unwrap(), sorted(&f, scaled));
    }

    #[test]
    fn monodromy_dominance_is_a_preorder(seed in any::<u64>(), d in 1usize..=4) {
        let f = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::wd_rep(&f, 5, d, &mut rng);
        prop_assert!(monodromy_dominates(&a, &a).unwrap());
        prop_assert!(monodromy_dominates(&semisimplify(&a).unwrap(), &a).unwrap());
    }

    #[test]
    fn genericity_in_rank_two(seed in any::<u64>()) {
        let f = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::nonzero_integral(&f, 5, &mut rng);
        prop_assert!(is_generic_parameter(&sp(2, &c, 5, &f).unwrap()).unwrap());
        let special = from_segments(&[Segment { value: c.clone(), length: 1 }, Segment { value: f.div(&c, &f.from_i64(5)).unwrap(), length: 1 }], 5, &f).unwrap();
        prop_assert!(!is_generic_parameter(&special).unwrap());
        let other = random::nonzero_integral(&f, 5, &mut rng);
        let ratio = f.div(&c, &other).unwrap();
        let expected = ratio != f.from_i64(5) && ratio != f.div(&f.one(), &f.from_i64(5)).unwrap();
        let w = from_segments(&[Segment { value: c, length: 1 }, Segment { value: other, length: 1 }], 5, &f).unwrap();
        prop_assert_eq!(is_generic_parameter(&w).unwrap(), expected);
    }
}
