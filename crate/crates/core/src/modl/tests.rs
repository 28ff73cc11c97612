use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn f5() -> Field {
    Field::prime_field(5).unwrap()
}

fn m(f: &Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(f, rows)
}

fn group(f: &Field, gens: &[&[&[i64]]]) -> MatGroup {
    MatGroup::new(f, gens.iter().map(|g| m(f, g)).collect(), DEFAULT_CAP).unwrap()
}

/// Singer cycle (companion matrix of the primitive x² + x + 2) and a transvection.
fn gl2_f5() -> MatGroup {
    group(&f5(), &[&[&[0, -2], &[1, -1]], &[&[1, 1], &[0, 1]]])
}

#[test]
fn closure_examples() {
    let f = f5();
    let minus = close_group(&group(&f, &[&[&[-1, 0], &[0, -1]]])).unwrap();
    assert_eq!(minus.elements(), vec![Matrix::identity(&f, 2), m(&f, &[&[-1, 0], &[0, -1]])]);
    assert_eq!(close_group(&group(&f, &[&[&[1, 1], &[0, 1]]])).unwrap().order(), 5);
    assert_eq!(close_group(&gl2_f5()).unwrap().order(), 480);
    assert_eq!(close_group(&group(&f, &[])).unwrap().order(), 1);
}

#[test]
fn closure_respects_cap() {
    let g = MatGroup::new(&f5(), gl2_f5().generators().to_vec(), 100).unwrap();
    assert_eq!(close_group(&g).unwrap_err(), Error::GroupTooLarge(100));
}

#[test]
fn closure_order_is_independent_of_generator_order() {
    let g = gl2_f5();
    let mut rev = g.generators().to_vec();
    rev.reverse();
    let h = MatGroup::new(g.field(), rev, DEFAULT_CAP).unwrap();
    assert_eq!(close_group(&g).unwrap().elements(), close_group(&h).unwrap().elements());
}

#[test]
fn rejects_small_characteristic_and_singular_generators() {
    let f3 = Field::prime_field(3).unwrap();
    assert!(matches!(MatGroup::new(&f3, vec![], 10), Err(Error::InvalidField(_))));
    assert!(matches!(MatGroup::new(&f5(), vec![m(&f5(), &[&[1, 1], &[1, 1]])], 10), Err(Error::ValidationFailed(_))));
}

#[test]
fn ad0_examples() {
    let f = f5();
    assert!(ad0_action(&m(&f, &[&[3, 0], &[0, 3]])).unwrap().is_identity());
    assert_eq!(ad0_action(&m(&f, &[&[1, 0], &[0, -1]])).unwrap(), Matrix::diag(&f, &[f.from_i64(-1), f.one(), f.from_i64(-1)]));
    assert_eq!(ad0_action(&m(&f, &[&[1, 1], &[1, 1]])), Err(Error::SingularMatrix));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [f, Field::finite_default(7, 2).unwrap()] {
        for _ in 0..50 {
            let a = crate::random::invertible(&field, 2, &mut rng);
            let b = crate::random::invertible(&field, 2, &mut rng);
            let lhs = ad0_action(&a.mul(&b)).unwrap();
            assert_eq!(lhs, ad0_action(&a).unwrap().mul(&ad0_action(&b).unwrap()));
        }
    }
}

#[test]
fn coded_ad0_matches_matrix_ad0() {
    let g = close_group(&gl2_f5()).unwrap();
    for (c, x) in g.elements.iter().zip(g.elements()) {
        let coded = ad0_code(&g.fq, c);
        let a = ad0_action(&x).unwrap();
        let entries: Vec<u64> = a.entries().iter().map(|e| g.fq.code(e)).collect();
        assert_eq!(entries, coded.to_vec());
    }
}

#[test]
fn cohomology_examples() {
    let f = f5();
    let trivial = close_group(&group(&f, &[])).unwrap();
    assert_eq!(h0_h1_ad0(&trivial).unwrap(), (3, 0));

    // diag(2, 3) has order 4 and ... a cube root of unity is absent in F_5, so use an order-3 element of SL₂
    let c3 = close_group(&group(&f, &[&[&[0, -1], &[1, -1]]])).unwrap();
    assert_eq!(c3.order(), 3);
    let c = cohomology_ad0(&c3, DEFAULT_H1_CAP).unwrap();
    assert!(c.methods_agree());
    assert_eq!(c.h1(), 0);

    let unipotent = close_group(&group(&f, &[&[&[1, 1], &[0, 1]]])).unwrap();
    let c = cohomology_ad0(&unipotent, DEFAULT_H1_CAP).unwrap();
    assert!(c.methods_agree(), "{c:?}");
    assert_eq!(c.h0, 1);
}

#[test]
fn cocycle_count_for_unipotent_group_by_hand() {
    // cyclic of order 5 generated by u: Z¹ ≅ {v : (1 + u + … + u⁴)v = 0}
    let f = f5();
    let u = m(&f, &[&[1, 1], &[0, 1]]);
    let a = ad0_action(&u).unwrap();
    let mut norm = Matrix::zeros(&f, 3, 3);
    let mut p = Matrix::identity(&f, 3);
    for _ in 0..5 {
        norm = norm.add(&p);
        p = p.mul(&a);
    }
    let expected = norm.kernel().len();
    let g = close_group(&group(&f, &[&[&[1, 1], &[0, 1]]])).unwrap();
    let c = cohomology_ad0(&g, DEFAULT_H1_CAP).unwrap();
    assert_eq!(c.z1_all_pairs, expected);
    assert_eq!(c.z1_relations, expected);
}

#[test]
fn cohomology_cap() {
    let g = close_group(&gl2_f5()).unwrap();
    assert_eq!(cohomology_ad0(&g, 100), Err(Error::GroupTooLarge(100)));
}

#[test]
fn enormous_examples() {
    let f = f5();
    let r = is_enormous(&group(&f, &[&[&[-1, 0], &[0, -1]]])).unwrap();
    assert!(!r.absolutely_irreducible && !r.enormous);
    assert_eq!(r.cohomology.h0, 3);

    let r = is_enormous(&group(&f, &[&[&[1, 1], &[0, 1]]])).unwrap();
    assert!(!r.no_l_power_quotient && !r.enormous);
    assert_eq!(r.l_power_quotient_order, 5);
}

#[test]
fn gl2_f5_report() {
    let r = is_enormous(&gl2_f5()).unwrap();
    assert_eq!(r.order, 480);
    assert!(r.cohomology.methods_agree(), "{:?}", r.cohomology);
    assert!(r.absolutely_irreducible);
    assert!(r.no_l_power_quotient);
    assert!(r.h0_zero && r.h1_zero && r.simple_submodule_condition && r.enormous);
    assert_eq!(r, is_enormous(&gl2_f5()).unwrap());
}

#[test]
fn split_torus_is_reducible_but_normaliser_is_not() {
    let f = Field::prime_field(7).unwrap();
    let torus = is_enormous(&group(&f, &[&[&[3, 0], &[0, 1]], &[&[1, 0], &[0, 3]]])).unwrap();
    assert!(!torus.absolutely_irreducible);
    assert_eq!(torus.invariant_line.as_ref().map(|v| v.len()), Some(2));
    let normaliser = is_enormous(&group(&f, &[&[&[3, 0], &[0, 1]], &[&[0, 1], &[1, 0]]])).unwrap();
    assert!(normaliser.absolutely_irreducible);
    assert!(normaliser.h1_zero);
}

#[test]
fn decomposed_generic_examples() {
    let f = Field::prime_field(11).unwrap();
    let e = |a: i64, b: i64| (f.from_i64(a), f.from_i64(b));
    let r = is_decomposed_generic_at(7, &f, &[e(2, 3)], true).unwrap();
    assert!(!r.decomposed_generic);
    assert_eq!(r.failures, vec![PlaceFailure { index: 0, reason: RATIO_P_INV }]);
    let r = is_decomposed_generic_at(7, &f, &[e(2, 2)], true).unwrap();
    assert_eq!(r.failures[0].reason, RATIO_ONE);
    let r = is_decomposed_generic_at(7, &f, &[e(3, 4)], true).unwrap();
    assert!(r.failures.is_empty() && r.decomposed_generic);
    let r = is_decomposed_generic_at(2, &f, &[e(4, 2)], true).unwrap();
    assert_eq!(r.failures[0].reason, RATIO_P);
    assert!(is_decomposed_generic_at(2, &f, &[e(1, 5)], true).unwrap().decomposed_generic);
    assert!(!is_decomposed_generic_at(2, &f, &[e(1, 5)], false).unwrap().decomposed_generic);
    assert_eq!(is_decomposed_generic_at(11, &f, &[], true), Err(Error::EqualCharacteristic(11)));
    assert_eq!(is_decomposed_generic_at(2, &f, &[e(0, 5)], true), Err(Error::ZeroEigenvalue));
}

#[test]
fn scalar_certificate_examples() {
    let f = f5();
    let minus = m(&f, &[&[-1, 0], &[0, -1]]);
    assert!(exists_scalar_outside_cyclotomic(&f, &[(minus.clone(), f.from_i64(-1))]).unwrap());
    assert!(!exists_scalar_outside_cyclotomic(&f, &[(minus, f.one())]).unwrap());
    assert!(!exists_scalar_outside_cyclotomic(&f, &[]).unwrap());
    let t = m(&f, &[&[1, 1], &[0, 1]]);
    assert!(!exists_scalar_outside_cyclotomic(&f, &[(t, f.from_i64(2))]).unwrap());
}

#[test]
fn sl2_f5_has_the_exceptional_cocycle() {
    // H¹(SL₂(F₅), ad⁰) is one-dimensional, the classical exception at l = 5
    let sl2 = group(&f5(), &[&[&[1, 1], &[0, 1]], &[&[1, 0], &[1, 1]]]);
    let r = is_enormous(&sl2).unwrap();
    assert_eq!(r.order, 120);
    assert!(r.cohomology.methods_agree());
    assert_eq!(r.cohomology.h1(), 1);
    assert!(r.absolutely_irreducible && r.no_l_power_quotient && r.h0_zero && !r.h1_zero && !r.enormous);
}
