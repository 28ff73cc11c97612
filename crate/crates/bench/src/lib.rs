//! Deterministic inputs for the benchmark kernels.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wdforge_core::modl::{MatGroup, DEFAULT_CAP};
use wdforge_core::phin::PhiNModule;
use wdforge_core::random;
use wdforge_core::wd::WdRep;
use wdforge_core::{Field, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random invertible matrices of size `n` over `f`.
pub fn matrices(f: &Field, n: usize, count: usize, seed: u64) -> Vec<Matrix> {
    let mut r = rng(seed);
    (0..count).map(|i| if i % 2 == 0 { random::jordan_type_invertible(f, n, &mut r) } else { random::invertible(f, n, &mut r) }).collect()
}

pub fn wd_reps(d: usize, count: usize, seed: u64) -> Vec<WdRep> {
    let f = Field::rationals();
    let mut r = rng(seed);
    (0..count).map(|_| random::wd_rep(&f, 5, d, &mut r)).collect()
}

pub fn phin_modules(fdeg: usize, d: usize, count: usize, seed: u64) -> Vec<PhiNModule> {
    let f = Field::rationals();
    let mut r = rng(seed);
    (0..count).map(|_| random::phin_module(&f, 3, fdeg, d, &mut r)).collect()
}

/// GL₂(F₅), generated by a Singer cycle and an elementary unipotent.
pub fn gl2_f5() -> MatGroup {
    let f = Field::prime_field(5).unwrap();
    let gens = vec![Matrix::from_i64(&f, &[&[0, -2], &[1, -1]]), Matrix::from_i64(&f, &[&[1, 1], &[0, 1]])];
    MatGroup::new(&f, gens, DEFAULT_CAP).unwrap()
}

/// SL₂(F₅), order 120.
pub fn sl2_f5() -> MatGroup {
    let f = Field::prime_field(5).unwrap();
    let gens = vec![Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]), Matrix::from_i64(&f, &[&[1, 0], &[1, 1]])];
    MatGroup::new(&f, gens, DEFAULT_CAP).unwrap()
}
