//! Seeded generators of small random fields elements and matrices, shared by
//! the property suites, the acceptance runner and the benchmarks.

use num_bigint::BigInt;
use rand::Rng;

use crate::field::{Elem, Field, FieldKind, Rational};
use crate::matrix::{Matrix, Subspace};
use crate::phin::{FilStep, FilteredPhiNModule, Filtration, PhiNModule};
use crate::wd::{direct_sum, from_segments, Segment, WdRep};

/// An element of small height: numerators in [−h, h] and denominators in [1, 3]
/// in characteristic 0, uniform in finite fields.
pub fn elem<R: Rng>(f: &Field, h: i64, rng: &mut R) -> Elem {
    match f.kind() {
        FieldKind::Finite { l, k, .. } => {
            let coords: Vec<Rational> =
                (0..*k).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(0..*l)))).collect();
            f.from_coords(&coords).unwrap()
        }
        _ => {
            let coords: Vec<Rational> = (0..f.degree())
                .map(|_| Rational::new(BigInt::from(rng.gen_range(-h..=h)), BigInt::from(rng.gen_range(1..=3))))
                .collect();
            f.from_coords(&coords).unwrap()
        }
    }
}

pub fn nonzero_elem<R: Rng>(f: &Field, h: i64, rng: &mut R) -> Elem {
    loop {
        let e = elem(f, h, rng);
        if !f.is_zero(&e) {
            return e;
        }
    }
}

/// Small nonzero integer-like element (coordinates in [−h, h]).
pub fn nonzero_integral<R: Rng>(f: &Field, h: i64, rng: &mut R) -> Elem {
    loop {
        let coords: Vec<Rational> =
            (0..f.degree()).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-h..=h)))).collect();
        let e = f.from_coords(&coords).unwrap();
        if !f.is_zero(&e) {
            return e;
        }
    }
}

pub fn matrix<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data = (0..rows * cols).map(|_| elem(f, 3, rng)).collect();
    Matrix::new(f, rows, cols, data).unwrap()
}

pub fn invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = matrix(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Unit upper-triangular times unit lower-triangular with integral entries:
/// invertible with determinant 1 and modest entry growth under inversion.
pub fn unimodular<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let mut up = Matrix::identity(f, n);
    let mut lo = Matrix::identity(f, n);
    for i in 0..n {
        for j in i + 1..n {
            up.set(i, j, f.from_i64(rng.gen_range(-2..=2)));
            lo.set(j, i, f.from_i64(rng.gen_range(-2..=2)));
        }
    }
    up.mul(&lo)
}

/// Invertible matrix with repeated eigenvalues and nontrivial Jordan blocks,
/// written in a random basis.
pub fn jordan_type_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let mut blocks = Vec::new();
    let values: Vec<Elem> = (0..2).map(|_| nonzero_integral(f, 3, rng)).collect();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        let lambda = values[rng.gen_range(0..values.len())].clone();
        let mut b = Matrix::scalar(f, size, &lambda);
        for i in 0..size.saturating_sub(1) {
            b.set(i, i + 1, f.one());
        }
        blocks.push(b);
        left -= size;
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let j = Matrix::block_diag(f, &refs);
    j.conjugate_by(&unimodular(f, n, rng)).unwrap()
}

/// Segments of total length `d`. Values are drawn from {c, c/q, c·q} for a
/// couple of base values, so that linked and overlapping chains are common.
pub fn segments<R: Rng>(f: &Field, q: u64, d: usize, rng: &mut R) -> Vec<Segment> {
    let qe = f.from_i64(q as i64);
    let bases: Vec<Elem> = (0..2).map(|_| nonzero_integral(f, 3, rng)).collect();
    let mut out = Vec::new();
    let mut left = d;
    while left > 0 {
        let length = rng.gen_range(1..=left);
        let base = &bases[rng.gen_range(0..bases.len())];
        let value = match rng.gen_range(0..3) {
            0 => base.clone(),
            1 => f.div(base, &qe).unwrap(),
            _ => f.mul(base, &qe),
        };
        out.push(Segment { value, length });
        left -= length;
    }
    out
}

/// A Weil–Deligne representation of dimension `d` in a random basis. When a
/// segment is repeated, Frobenius is sometimes given a unipotent coupling
/// between the two copies, so the result need not be Frobenius-semisimple.
pub fn wd_rep<R: Rng>(f: &Field, q: u64, d: usize, rng: &mut R) -> WdRep {
    let mut segs = segments(f, q, d, rng);
    if d >= 2 && rng.gen_bool(0.3) {
        let n = rng.gen_range(1..=d / 2);
        segs.clear();
        let value = nonzero_integral(f, 3, rng);
        segs.push(Segment { value: value.clone(), length: n });
        segs.push(Segment { value, length: n });
        let rest = d - 2 * n;
        if rest > 0 {
            segs.extend(segments(f, q, rest, rng));
        }
        let base = from_segments(&segs, q, f).unwrap();
        let mut frob = base.frob().clone();
        // F ↦ F·(I + T) with T the identity map from copy one to copy two
        let mut u = Matrix::identity(f, d);
        for i in 0..n {
            u.set(n + i, i, f.one());
        }
        frob = frob.mul(&u);
        let w = WdRep::new(q, f, frob, base.n().clone()).unwrap();
        return w.conjugate_by(&unimodular(f, d, rng)).unwrap();
    }
    let w = from_segments(&segs, q, f).unwrap();
    w.conjugate_by(&unimodular(f, d, rng)).unwrap()
}

/// Direct sum of two random representations, for tests that need explicit sums.
pub fn wd_sum<R: Rng>(f: &Field, q: u64, d1: usize, d2: usize, rng: &mut R) -> WdRep {
    direct_sum(&wd_rep(f, q, d1, rng), &wd_rep(f, q, d2, rng)).unwrap()
}

/// A (φ,N)-module built by propagation: (F₀, N₀) is a random Weil–Deligne
/// representation with q = l^f, φ₀ … φ_{f−2} are random, φ_{f−1} closes the
/// cycle so that the f-fold composite is F₀, and N_{i+1} = l·φ_i N_i φ_i⁻¹.
pub fn phin_module<R: Rng>(f: &Field, l: u64, fdeg: usize, d: usize, rng: &mut R) -> PhiNModule {
    let q = l.pow(fdeg as u32);
    let w = wd_rep(f, q, d, rng);
    let mut phi: Vec<Matrix> = (0..fdeg - 1).map(|_| unimodular(f, d, rng)).collect();
    let mut composite = Matrix::identity(f, d);
    for p in &phi {
        composite = p.mul(&composite);
    }
    phi.push(w.frob().mul(&composite.inverse().unwrap()));
    let lq = f.from_i64(l as i64);
    let mut n = vec![w.n().clone()];
    for i in 0..fdeg - 1 {
        let next = phi[i].mul(&n[i]).mul(&phi[i].inverse().unwrap()).scale(&lq);
        assert!(next.is_nilpotent(), "propagated monodromy must stay nilpotent");
        n.push(next);
    }
    PhiNModule::new(l, f, phi, n).unwrap()
}

/// A random filtration on a d-dimensional space with increasing jumps in [−2, 4].
pub fn filtration<R: Rng>(f: &Field, d: usize, rng: &mut R) -> Filtration {
    let mut dims: Vec<usize> = (1..d).filter(|_| rng.gen_bool(0.5)).collect();
    dims.push(d);
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims.dedup();
    dims.push(0);
    let start = rng.gen_range(-2..=1);
    let mut jump = start;
    let full = invertible(f, d, rng).columns();
    let steps = dims
        .into_iter()
        .map(|k| {
            let step = FilStep { jump, space: Subspace::span(f, d, &full[..k]) };
            jump += rng.gen_range(1..=2);
            step
        })
        .collect();
    Filtration::new(d, steps).unwrap()
}

/// A monodromy module (l, d = 2, f = 1) in a random basis, with its L-invariant
/// read off from the standard form: in the basis x = e₁, Nx = e₂ the filtration
/// line is spanned by (1, −L).
pub fn monodromy_module<R: Rng>(f: &Field, l: u64, rng: &mut R) -> (FilteredPhiNModule, Elem) {
    let beta = nonzero_integral(f, 3, rng);
    let alpha = f.mul(&beta, &f.from_i64(l as i64));
    let phi = Matrix::diag(f, &[alpha, beta]);
    let mut n = Matrix::zeros(f, 2, 2);
    n.set(1, 0, f.one());
    let ell = elem(f, 4, rng);
    let j0 = rng.gen_range(1..=3);
    let line = Subspace::span(f, 2, &[vec![f.one(), f.neg(&ell)]]);
    let fil = Filtration::new(
        2,
        vec![
            FilStep { jump: 0, space: Subspace::whole(f, 2) },
            FilStep { jump: j0, space: line },
            FilStep { jump: j0 + 1, space: Subspace::zero(f, 2) },
        ],
    )
    .unwrap();
    let m = PhiNModule::new(l, f, vec![phi], vec![n]).unwrap();
    let d = FilteredPhiNModule::new(m, vec![fil], None).unwrap();
    let p = invertible(f, 2, rng);
    (d.change_basis(&[p]).unwrap(), ell)
}
