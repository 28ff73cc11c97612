//! From a (φ,N)-module to the Weil–Deligne representation on one τ-component.

use crate::error::{Error, Result};
use crate::phin::PhiNModule;
use crate::wd::{is_isomorphic, WdRep};

/// Geometric Frobenius acts on D_τ by the f-fold composite of φ; N is N[τ]; q = l^f.
pub fn wd_of(d: &PhiNModule, tau: usize) -> Result<WdRep> {
    let q = (d.l())
        .checked_pow(d.f() as u32)
        .filter(|q| *q <= i64::MAX as u64)
        .ok_or_else(|| Error::InvalidInput(format!("q = {}^{} overflows", d.l(), d.f())))?;
    WdRep::new(q, d.field(), d.frobenius_at(tau)?, d.n()[tau].clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauIndependenceReport {
    pub pairs: Vec<PairResult>,
    pub independent: bool,
}

/// Compare wd_of(D, i) and wd_of(D, j) for every i < j, in lexicographic order.
pub fn tau_independence_check(d: &PhiNModule) -> Result<TauIndependenceReport> {
    let reps: Vec<WdRep> = (0..d.f()).map(|t| wd_of(d, t)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            pairs.push(PairResult { i, j, isomorphic: is_isomorphic(&reps[i], &reps[j], false)? });
        }
    }
    let independent = pairs.iter().all(|p| p.isomorphic);
    Ok(TauIndependenceReport { pairs, independent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::matrix::Matrix;

    #[test]
    fn f_equals_one_is_the_identity_on_data() {
        let q = Field::rationals();
        let phi = Matrix::from_i64(&q, &[&[5, 0], &[0, 1]]);
        let n = Matrix::from_i64(&q, &[&[0, 0], &[1, 0]]);
        let d = PhiNModule::new(5, &q, vec![phi.clone()], vec![n.clone()]).unwrap();
        let w = wd_of(&d, 0).unwrap();
        assert_eq!((w.q(), w.frob(), w.n()), (5, &phi, &n));
        assert!(matches!(wd_of(&d, 1), Err(Error::IndexOutOfRange { index: 1, len: 1 })));
        assert!(tau_independence_check(&d).unwrap().independent);
    }

    #[test]
    fn composition_order_for_f_two() {
        let q = Field::rationals();
        let (a, b) = (Matrix::from_i64(&q, &[&[2]]), Matrix::from_i64(&q, &[&[3]]));
        let zero = Matrix::zeros(&q, 1, 1);
        let d = PhiNModule::new(7, &q, vec![a, b], vec![zero.clone(), zero]).unwrap();
        let w0 = wd_of(&d, 0).unwrap();
        assert_eq!(w0.q(), 49);
        assert_eq!(*w0.frob(), Matrix::from_i64(&q, &[&[6]]));
        assert_eq!(*wd_of(&d, 1).unwrap().frob(), Matrix::from_i64(&q, &[&[6]]));
        let report = tau_independence_check(&d).unwrap();
        assert_eq!(report.pairs, vec![PairResult { i: 0, j: 1, isomorphic: true }]);
    }

    #[test]
    fn composite_for_f_two_rank_two() {
        let q = Field::rationals();
        let l = 3;
        let phi0 = Matrix::from_i64(&q, &[&[9, 0], &[0, 3]]);
        let zero = Matrix::zeros(&q, 2, 2);
        let d = PhiNModule::new(l, &q, vec![phi0.clone(), Matrix::identity(&q, 2)], vec![zero.clone(), zero]).unwrap();
        assert_eq!(*wd_of(&d, 0).unwrap().frob(), phi0);
    }
}
