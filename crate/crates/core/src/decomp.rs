//! Eigenspace splitting and the multiplicative Jordan–Chevalley decomposition.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::{Matrix, Subspace};
use crate::roots;

/// A generalized eigenspace ker (M − λI)^m of algebraic multiplicity m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub value: Elem,
    pub multiplicity: usize,
    pub space: Subspace,
}

/// Generalized eigenspaces of `m`, ordered by the first pivot of their echelon
/// basis and then by eigenvalue.
pub fn eigen_split(m: &Matrix) -> Result<Vec<Eigenspace>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("eigen_split needs a square matrix".into()));
    }
    let f = m.field();
    let n = m.rows();
    let (rs, rest) = roots::split_linear(&m.char_poly(), f)?;
    if rest.degree() != Some(0) {
        return Err(roots::non_split_error(&rest, f));
    }
    let mut out: Vec<Eigenspace> = rs
        .into_iter()
        .map(|(value, multiplicity)| {
            let shifted = m.sub(&Matrix::scalar(f, n, &value));
            let space = Subspace::kernel_of(&shifted.pow(multiplicity as u64));
            Eigenspace { value, multiplicity, space }
        })
        .collect();
    for e in &out {
        if e.space.dim() != e.multiplicity {
            return Err(Error::Invariant(format!(
                "generalized eigenspace for {} has dimension {} but multiplicity {}",
                f.fmt_elem(&e.value),
                e.space.dim(),
                e.multiplicity
            )));
        }
    }
    out.sort_by(|a, b| first_pivot(&a.space).cmp(&first_pivot(&b.space)).then_with(|| a.value.cmp(&b.value)));
    Ok(out)
}

fn first_pivot(s: &Subspace) -> usize {
    let f = s.field();
    s.basis()
        .first()
        .and_then(|v| v.iter().position(|x| !f.is_zero(x)))
        .unwrap_or(usize::MAX)
}

/// Semisimple part of `m`: the unique semisimple S, polynomial in `m`, with m − S nilpotent.
///
/// Newton iteration S ← S − g(S)·g′(S)⁻¹ on the squarefree part g of the
/// characteristic polynomial; it never needs the eigenvalues themselves.
pub fn semisimple_part(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("semisimple_part needs a square matrix".into()));
    }
    let f = m.field();
    let g = m.char_poly().radical(f);
    let dg = g.derivative(f);
    let mut s = m.clone();
    // quadratic convergence: the nilpotency index doubles each step
    for _ in 0..=usize::BITS - m.rows().leading_zeros() {
        let gs = s.eval_poly(&g);
        if gs.is_zero() {
            return Ok(s);
        }
        let step = gs.mul(&s.eval_poly(&dg).inverse()?);
        s = s.sub(&step);
    }
    if s.eval_poly(&g).is_zero() {
        Ok(s)
    } else {
        Err(Error::Invariant("Newton iteration for the semisimple part did not converge".into()))
    }
}

/// Multiplicative Jordan–Chevalley decomposition M = S·U = U·S of an invertible matrix.
pub fn jordan_chevalley(m: &Matrix) -> Result<(Matrix, Matrix)> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let s = semisimple_part(m)?;
    let u = s.inverse()?.mul(m);
    Ok((s, u))
}

/// Minimal polynomial is squarefree.
pub fn is_semisimple(m: &Matrix) -> bool {
    let p = m.min_poly();
    p.is_squarefree(m.field())
}

/// U − I is nilpotent.
pub fn is_unipotent(u: &Matrix) -> bool {
    u.is_square() && u.sub(&Matrix::identity(u.field(), u.rows())).is_nilpotent()
}

/// Block sizes of the nilpotent matrix, largest first, read off from the ranks of its powers.
pub fn nilpotent_jordan_type(n: &Matrix) -> Vec<usize> {
    let d = n.rows();
    let mut ranks = vec![d];
    let mut p = Matrix::identity(n.field(), d);
    while *ranks.last().unwrap() > 0 {
        p = p.mul(n);
        ranks.push(p.rank());
        if ranks.len() > d + 1 {
            break;
        }
    }
    // #blocks of size ≥ k is rank(N^{k−1}) − rank(N^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat(k).take(exact));
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn eigen_split_examples() {
        let q = Field::rationals();
        let es = eigen_split(&Matrix::from_i64(&q, &[&[5, 0], &[0, 1]])).unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].value, q.from_i64(5));
        assert_eq!(es[0].space, Subspace::span(&q, 2, &[vec![q.one(), q.zero()]]));
        assert_eq!(es[1].value, q.one());

        let es = eigen_split(&Matrix::from_i64(&q, &[&[2, 1], &[0, 2]])).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].space.dim(), 2);

        let f5 = Field::prime_field(5).unwrap();
        let es = eigen_split(&Matrix::from_i64(&f5, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(es[0].value, f5.one());
        assert_eq!(es[0].space, Subspace::span(&f5, 2, &[vec![f5.one(), f5.one()]]));
        assert_eq!(es[1].value, f5.from_i64(4));
        assert_eq!(es[1].space, Subspace::span(&f5, 2, &[vec![f5.one(), f5.from_i64(-1)]]));
    }

    #[test]
    fn eigen_split_reports_irreducible_factor() {
        let q = Field::rationals();
        let r = eigen_split(&Matrix::from_i64(&q, &[&[0, -2], &[1, 0]]));
        match r {
            Err(Error::NonSplitCharPoly { display, .. }) => assert_eq!(display, "x^2 + 2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jordan_chevalley_examples() {
        let q = Field::rationals();
        let m = Matrix::from_i64(&q, &[&[2, 1], &[0, 2]]);
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, Matrix::from_i64(&q, &[&[2, 0], &[0, 2]]));
        let half = q.div(&q.one(), &q.from_i64(2)).unwrap();
        let expected_u = Matrix::from_rows(&q, vec![vec![q.one(), half], vec![q.zero(), q.one()]]).unwrap();
        assert_eq!(u, expected_u);

        let d = Matrix::from_i64(&q, &[&[2, 0], &[0, 3]]);
        let (s, u) = jordan_chevalley(&d).unwrap();
        assert_eq!(s, d);
        assert!(u.is_identity());

        let id = Matrix::identity(&q, 3);
        assert_eq!(jordan_chevalley(&id).unwrap(), (id.clone(), id));
        assert_eq!(jordan_chevalley(&Matrix::zeros(&q, 2, 2)), Err(Error::SingularMatrix));
    }

    #[test]
    fn jordan_chevalley_in_characteristic_two_with_inseparable_looking_charpoly() {
        // char poly (x+1)^2 = x^2 + 1 over F_2 has zero derivative
        let f2 = Field::prime_field(2).unwrap();
        let m = Matrix::from_i64(&f2, &[&[1, 1], &[0, 1]]);
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert!(s.is_identity());
        assert_eq!(u, m);
    }

    #[test]
    fn jordan_type_of_nilpotents() {
        let q = Field::rationals();
        let n = Matrix::from_i64(&q, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(nilpotent_jordan_type(&n), vec![3, 1]);
        assert_eq!(nilpotent_jordan_type(&Matrix::zeros(&q, 2, 2)), vec![1, 1]);
    }
}
