//! Weil–Deligne representations with unramified inertia, recorded as a pair
//! (F, N) with F the geometric Frobenius and N·F = q·F·N.

use std::cmp::Ordering;

use crate::decomp::{eigen_split, is_semisimple, jordan_chevalley, nilpotent_jordan_type};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdRep {
    q: u64,
    field: Field,
    frob: Matrix,
    n: Matrix,
}

impl WdRep {
    /// Validate and build; every violated invariant is reported.
    pub fn new(q: u64, field: &Field, frob: Matrix, n: Matrix) -> Result<WdRep> {
        let mut problems = Vec::new();
        if q < 2 {
            problems.push(format!("q = {q} is not a prime power"));
        }
        if field.characteristic() != 0 {
            problems.push("coefficient field must have characteristic 0".into());
        }
        let d = frob.rows();
        if !frob.is_square() || n.rows() != d || n.cols() != d {
            problems.push(format!(
                "Frobenius is {}×{} and N is {}×{}",
                frob.rows(),
                frob.cols(),
                n.rows(),
                n.cols()
            ));
        }
        if frob.field() != field || n.field() != field {
            problems.push("matrix entries lie outside the coefficient field".into());
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        if !frob.is_invertible() {
            problems.push("Frobenius is not invertible".into());
        }
        if !n.is_nilpotent() {
            problems.push("N is not nilpotent".into());
        }
        if n.mul(&frob) != frob.mul(&n).scale(&field.from_i64(q as i64)) {
            problems.push("commutation N·F = q·F·N fails".into());
        }
        if !problems.is_empty() {
            return Err(Error::ValidationFailed(problems));
        }
        Ok(WdRep { q, field: field.clone(), frob, n })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.frob.rows()
    }

    pub fn frob(&self) -> &Matrix {
        &self.frob
    }

    pub fn n(&self) -> &Matrix {
        &self.n
    }

    /// Conjugate both operators by P.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<WdRep> {
        let inv = p.inverse()?;
        WdRep::new(self.q, &self.field, p.mul(&self.frob).mul(&inv), p.mul(&self.n).mul(&inv))
    }

    fn q_elem(&self) -> Elem {
        self.field.from_i64(self.q as i64)
    }
}

/// An indecomposable summand sp(length) ⊗ χ, with `value` the Frobenius eigenvalue at the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub value: Elem,
    pub length: usize,
}

/// sp(n, c, q): F = diag(c, c/q, …, c/q^{n−1}) and N e_i = e_{i+1}.
pub fn sp(n: usize, c: &Elem, q: u64, field: &Field) -> Result<WdRep> {
    if n == 0 {
        return Err(Error::InvalidInput("segment length must be positive".into()));
    }
    if field.is_zero(c) {
        return Err(Error::ZeroParameter);
    }
    let qinv = field.inv(&field.from_i64(q as i64))?;
    let mut diag = Vec::with_capacity(n);
    let mut v = c.clone();
    for _ in 0..n {
        diag.push(v.clone());
        v = field.mul(&v, &qinv);
    }
    let mut nm = Matrix::zeros(field, n, n);
    for i in 0..n - 1 {
        nm.set(i + 1, i, field.one());
    }
    WdRep::new(q, field, Matrix::diag(field, &diag), nm)
}

fn check_same(a: &WdRep, b: &WdRep) -> Result<()> {
    if a.q != b.q {
        return Err(Error::MixedParameters(format!("q = {} and q = {}", a.q, b.q)));
    }
    if a.field != b.field {
        return Err(Error::MixedParameters(format!("coefficient fields {} and {}", a.field, b.field)));
    }
    Ok(())
}

pub fn direct_sum(a: &WdRep, b: &WdRep) -> Result<WdRep> {
    check_same(a, b)?;
    let f = &a.field;
    WdRep::new(
        a.q,
        f,
        Matrix::block_diag(f, &[&a.frob, &b.frob]),
        Matrix::block_diag(f, &[&a.n, &b.n]),
    )
}

/// Twist by the unramified character sending geometric Frobenius to c.
pub fn twist_unramified(a: &WdRep, c: &Elem) -> Result<WdRep> {
    if a.field.is_zero(c) {
        return Err(Error::ZeroParameter);
    }
    WdRep::new(a.q, &a.field, a.frob.scale(c), a.n.clone())
}

/// Replace F by its semisimple part; N is kept.
pub fn frobenius_semisimplify(w: &WdRep) -> Result<WdRep> {
    let (s, _) = jordan_chevalley(&w.frob)?;
    if w.n.mul(&s) != s.mul(&w.n).scale(&w.q_elem()) {
        return Err(Error::Invariant("semisimple part of Frobenius breaks N·F = q·F·N".into()));
    }
    WdRep::new(w.q, &w.field, s, w.n.clone())
}

/// (F^ss, 0).
pub fn semisimplify(w: &WdRep) -> Result<WdRep> {
    let (s, _) = jordan_chevalley(&w.frob)?;
    WdRep::new(w.q, &w.field, s, Matrix::zeros(&w.field, w.dim(), w.dim()))
}

/// Deterministic order: longer segments first, then by rendered value.
pub fn segment_order(field: &Field, a: &Segment, b: &Segment) -> Ordering {
    b.length
        .cmp(&a.length)
        .then_with(|| field.fmt_elem(&a.value).cmp(&field.fmt_elem(&b.value)))
        .then_with(|| a.value.cmp(&b.value))
}

/// Decomposition of a Frobenius-semisimple representation into segments.
///
/// With V_α the α-eigenspace of F and r_k(α) = rank(N^k|V_α), the number of
/// segments topped at α of length exactly n is
/// [r_{n−1}(α) − r_n(α)] − [r_n(qα) − r_{n+1}(qα)]:
/// the first bracket counts every chain through V_α with exactly n − 1 further
/// steps, the second removes those that entered V_α from V_{qα}.
pub fn segments(w: &WdRep) -> Result<Vec<Segment>> {
    if !is_semisimple(&w.frob) {
        return Err(Error::NotFrobeniusSemisimple);
    }
    let f = &w.field;
    let d = w.dim();
    let q = w.q_elem();
    let qinv = f.inv(&q)?;
    let spaces: Vec<(Elem, Subspace)> = eigen_split(&w.frob)?
        .into_iter()
        .map(|e| {
            let eig = Subspace::kernel_of(&w.frob.sub(&Matrix::scalar(f, d, &e.value)));
            (e.value, eig)
        })
        .collect();
    for (alpha, v) in &spaces {
        let target = f.mul(alpha, &qinv);
        let image = v.image(&w.n);
        let ok = match spaces.iter().find(|(b, _)| *b == target) {
            Some((_, vt)) => image.is_subspace_of(vt),
            None => image.is_zero(),
        };
        if !ok {
            return Err(Error::Invariant(format!(
                "N does not map the {}-eigenspace into the {}-eigenspace",
                f.fmt_elem(alpha),
                f.fmt_elem(&target)
            )));
        }
    }
    let rank_on = |alpha: &Elem, k: usize| -> usize {
        spaces.iter().find(|(b, _)| b == alpha).map_or(0, |(_, v)| {
            let mut s = v.clone();
            for _ in 0..k {
                s = s.image(&w.n);
            }
            s.dim()
        })
    };
    let mut out = Vec::new();
    for (alpha, _) in &spaces {
        let up = f.mul(alpha, &q);
        for n in 1..=d {
            let through = rank_on(alpha, n - 1) - rank_on(alpha, n);
            let entering = rank_on(&up, n) - rank_on(&up, n + 1);
            let count = through.checked_sub(entering).ok_or_else(|| {
                Error::Invariant("negative segment count".into())
            })?;
            out.extend(std::iter::repeat(Segment { value: alpha.clone(), length: n }).take(count));
        }
    }
    let total: usize = out.iter().map(|s| s.length).sum();
    if total != d {
        return Err(Error::Invariant(format!("segment lengths sum to {total}, dimension is {d}")));
    }
    out.sort_by(|a, b| segment_order(f, a, b));
    Ok(out)
}

/// Rebuild ⊕ sp(n_i, c_i, q) from a list of segments.
pub fn from_segments(segs: &[Segment], q: u64, field: &Field) -> Result<WdRep> {
    let mut parts = Vec::with_capacity(segs.len());
    for s in segs {
        parts.push(sp(s.length, &s.value, q, field)?);
    }
    let frobs: Vec<&Matrix> = parts.iter().map(|p| &p.frob).collect();
    let ns: Vec<&Matrix> = parts.iter().map(|p| &p.n).collect();
    WdRep::new(q, field, Matrix::block_diag(field, &frobs), Matrix::block_diag(field, &ns))
}

/// Jordan type of F: for each eigenvalue, its Jordan block sizes.
pub fn frobenius_jordan_type(w: &WdRep) -> Result<Vec<(Elem, Vec<usize>)>> {
    let f = &w.field;
    let d = w.dim();
    let mut out = Vec::new();
    for e in eigen_split(&w.frob)? {
        let shifted = w.frob.sub(&Matrix::scalar(f, d, &e.value));
        // restrict F − λ to its generalized eigenspace
        let images: Vec<Vec<Elem>> = e
            .space
            .basis()
            .iter()
            .map(|v| e.space.coordinates(&shifted.mul_vec(v)).expect("generalized eigenspace is invariant"))
            .collect();
        let restricted = Matrix::from_columns(f, e.multiplicity, &images);
        out.push((e.value, nilpotent_jordan_type(&restricted)));
    }
    out.sort();
    Ok(out)
}

/// Isomorphism of Frobenius-semisimplifications; in strict mode the Jordan
/// types of F must also agree.
pub fn is_isomorphic(a: &WdRep, b: &WdRep, strict: bool) -> Result<bool> {
    check_same(a, b)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let sa = segments(&frobenius_semisimplify(a)?)?;
    let sb = segments(&frobenius_semisimplify(b)?)?;
    if sa != sb {
        return Ok(false);
    }
    if strict {
        return Ok(frobenius_jordan_type(a)? == frobenius_jordan_type(b)?);
    }
    Ok(true)
}

/// Two-dimensional parameters: generic unless N = 0 and the Frobenius
/// eigenvalues have ratio q or q⁻¹.
pub fn is_generic_parameter(w: &WdRep) -> Result<bool> {
    if w.dim() != 2 {
        return Err(Error::WrongRank { expected: 2, got: w.dim() });
    }
    let es = eigen_split(&w.frob)?;
    if !w.n.is_zero() {
        return Ok(true);
    }
    let f = &w.field;
    let (alpha, beta) = match es.as_slice() {
        [one] => (one.value.clone(), one.value.clone()),
        [a, b] => (a.value.clone(), b.value.clone()),
        _ => unreachable!("two-dimensional Frobenius"),
    };
    let ratio = f.div(&alpha, &beta)?;
    let q = w.q_elem();
    Ok(ratio != q && ratio != f.inv(&q)?)
}

/// rank(N_a^i) ≤ rank(N_b^i) for all i ≥ 1.
pub fn monodromy_dominates(a: &WdRep, b: &WdRep) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::MixedParameters(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    if a.field != b.field {
        return Err(Error::MixedParameters(format!("coefficient fields {} and {}", a.field, b.field)));
    }
    let (mut pa, mut pb) = (a.n.clone(), b.n.clone());
    for _ in 1..=a.dim() {
        if pa.rank() > pb.rank() {
            return Ok(false);
        }
        pa = pa.mul(&a.n);
        pb = pb.mul(&b.n);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn frac(f: &Field, a: i64, b: i64) -> Elem {
        f.div(&f.from_i64(a), &f.from_i64(b)).unwrap()
    }

    #[test]
    fn validation_examples() {
        let f = q();
        let frob = Matrix::diag(&f, &[f.one(), frac(&f, 1, 5)]);
        let n = Matrix::from_i64(&f, &[&[0, 0], &[1, 0]]);
        assert!(WdRep::new(5, &f, frob, n.clone()).is_ok());
        assert!(matches!(WdRep::new(5, &f, Matrix::identity(&f, 2), n.clone()), Err(Error::ValidationFailed(_))));
        let singular = Matrix::from_i64(&f, &[&[1, 0], &[0, 0]]);
        assert!(matches!(WdRep::new(5, &f, singular, Matrix::zeros(&f, 2, 2)), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn sp_examples() {
        let f = q();
        let w = sp(2, &f.one(), 5, &f).unwrap();
        assert_eq!(*w.frob(), Matrix::diag(&f, &[f.one(), frac(&f, 1, 5)]));
        assert_eq!(*w.n(), Matrix::from_i64(&f, &[&[0, 0], &[1, 0]]));
        let c = f.from_i64(7);
        let w1 = sp(1, &c, 5, &f).unwrap();
        assert_eq!(*w1.frob(), Matrix::diag(&f, &[c]));
        assert!(w1.n().is_zero());
        let w3 = sp(3, &f.from_i64(2), 4, &f).unwrap();
        assert_eq!(*w3.frob(), Matrix::diag(&f, &[f.from_i64(2), frac(&f, 1, 2), frac(&f, 1, 8)]));
        assert_eq!(w3.n().rank(), 2);
    }

    #[test]
    fn sums_and_twists() {
        let f = q();
        let s = direct_sum(&sp(1, &f.from_i64(2), 5, &f).unwrap(), &sp(1, &f.from_i64(3), 5, &f).unwrap()).unwrap();
        assert_eq!(*s.frob(), Matrix::diag(&f, &[f.from_i64(2), f.from_i64(3)]));
        let t = twist_unramified(&sp(2, &f.one(), 5, &f).unwrap(), &f.from_i64(7)).unwrap();
        assert_eq!(t, sp(2, &f.from_i64(7), 5, &f).unwrap());
        let mixed = direct_sum(&sp(1, &f.one(), 5, &f).unwrap(), &sp(1, &f.one(), 25, &f).unwrap());
        assert!(matches!(mixed, Err(Error::MixedParameters(_))));
    }

    #[test]
    fn semisimplification_examples() {
        let f = q();
        let unip = WdRep::new(5, &f, Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]), Matrix::zeros(&f, 2, 2)).unwrap();
        assert!(frobenius_semisimplify(&unip).unwrap().frob().is_identity());
        let st = sp(2, &f.one(), 5, &f).unwrap();
        assert_eq!(frobenius_semisimplify(&st).unwrap(), st);
        let ss = semisimplify(&st).unwrap();
        assert_eq!(*ss.frob(), *st.frob());
        assert!(ss.n().is_zero());
        assert_eq!(semisimplify(&ss).unwrap(), ss);
    }

    #[test]
    fn segment_examples() {
        let f = q();
        let st = sp(2, &f.one(), 5, &f).unwrap();
        assert_eq!(segments(&st).unwrap(), vec![Segment { value: f.one(), length: 2 }]);
        let d = WdRep::new(5, &f, Matrix::diag(&f, &[f.from_i64(2), f.from_i64(3)]), Matrix::zeros(&f, 2, 2)).unwrap();
        assert_eq!(
            segments(&d).unwrap(),
            vec![Segment { value: f.from_i64(2), length: 1 }, Segment { value: f.from_i64(3), length: 1 }]
        );
        let mut n = Matrix::zeros(&f, 3, 3);
        n.set(1, 0, f.one());
        let w = WdRep::new(5, &f, Matrix::diag(&f, &[f.one(), frac(&f, 1, 5), f.from_i64(3)]), n).unwrap();
        assert_eq!(
            segments(&w).unwrap(),
            vec![Segment { value: f.one(), length: 2 }, Segment { value: f.from_i64(3), length: 1 }]
        );
    }

    #[test]
    fn segments_of_overlapping_chains() {
        // sp(2, 1) ⊕ sp(1, 1/5): the 1/5-eigenspace is two-dimensional and only
        // one of its vectors is reached from above
        let f = q();
        let w = direct_sum(&sp(2, &f.one(), 5, &f).unwrap(), &sp(1, &frac(&f, 1, 5), 5, &f).unwrap()).unwrap();
        assert_eq!(
            segments(&w).unwrap(),
            vec![Segment { value: f.one(), length: 2 }, Segment { value: frac(&f, 1, 5), length: 1 }]
        );
        let w = direct_sum(&sp(3, &f.one(), 5, &f).unwrap(), &sp(2, &frac(&f, 1, 5), 5, &f).unwrap()).unwrap();
        assert_eq!(
            segments(&w).unwrap(),
            vec![Segment { value: f.one(), length: 3 }, Segment { value: frac(&f, 1, 5), length: 2 }]
        );
    }

    #[test]
    fn isomorphism_examples() {
        let f = q();
        let st = sp(2, &f.one(), 5, &f).unwrap();
        let scaled = WdRep::new(5, &f, st.frob().clone(), st.n().scale(&f.from_i64(2))).unwrap();
        assert!(is_isomorphic(&st, &scaled, false).unwrap());
        let split = WdRep::new(5, &f, st.frob().clone(), Matrix::zeros(&f, 2, 2)).unwrap();
        assert!(!is_isomorphic(&st, &split, false).unwrap());
    }

    #[test]
    fn strict_mode_sees_unipotent_frobenius() {
        let f = q();
        let unip = WdRep::new(5, &f, Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]), Matrix::zeros(&f, 2, 2)).unwrap();
        let id = WdRep::new(5, &f, Matrix::identity(&f, 2), Matrix::zeros(&f, 2, 2)).unwrap();
        assert!(is_isomorphic(&unip, &id, false).unwrap());
        assert!(!is_isomorphic(&unip, &id, true).unwrap());
    }

    #[test]
    fn genericity_examples() {
        let f = q();
        let zero = Matrix::zeros(&f, 2, 2);
        let pair = WdRep::new(5, &f, Matrix::diag(&f, &[f.one(), f.from_i64(5)]), zero.clone()).unwrap();
        assert!(!is_generic_parameter(&pair).unwrap());
        assert!(is_generic_parameter(&sp(2, &f.one(), 5, &f).unwrap()).unwrap());
        let other = WdRep::new(5, &f, Matrix::diag(&f, &[f.one(), f.from_i64(2)]), zero).unwrap();
        assert!(is_generic_parameter(&other).unwrap());
    }

    #[test]
    fn dominance_examples() {
        let f = q();
        let st = sp(2, &f.one(), 5, &f).unwrap();
        let unr = WdRep::new(5, &f, st.frob().clone(), Matrix::zeros(&f, 2, 2)).unwrap();
        assert!(monodromy_dominates(&unr, &st).unwrap());
        assert!(!monodromy_dominates(&st, &unr).unwrap());
        assert!(monodromy_dominates(&st, &st).unwrap());
    }
}
