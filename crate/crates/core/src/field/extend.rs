use num_bigint::BigUint;

use super::{gfpoly, Elem, Field, FieldKind, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots;

/// A field homomorphism determined by the image of the source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEmbedding {
    pub from: Field,
    pub to: Field,
    generator_image: Elem,
}

impl FieldEmbedding {
    pub fn identity(f: &Field) -> FieldEmbedding {
        FieldEmbedding { from: f.clone(), to: f.clone(), generator_image: f.generator() }
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to
    }

    pub fn map(&self, a: &Elem) -> Elem {
        if self.is_identity() {
            return a.clone();
        }
        let to = &self.to;
        match a {
            Elem::Rat(q) => to.from_rational(q).expect("characteristic-zero embedding"),
            Elem::Num(v) => v.iter().rev().fold(to.zero(), |acc, c| {
                to.add(&to.mul(&acc, &self.generator_image), &to.from_rational(c).unwrap())
            }),
            Elem::Gf(v) => v
                .iter()
                .rev()
                .fold(to.zero(), |acc, &c| to.add(&to.mul(&acc, &self.generator_image), &to.from_i64(c as i64))),
        }
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &FieldEmbedding) -> FieldEmbedding {
        assert_eq!(self.to, other.from);
        FieldEmbedding {
            from: self.from.clone(),
            to: other.to.clone(),
            generator_image: other.map(&self.generator_image),
        }
    }
}

/// Result of adjoining a root: the new field, the embedding of the base,
/// and the adjoined root inside the new field.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Field,
    pub embedding: FieldEmbedding,
    pub root: Elem,
}

/// base[x]/(poly) for a monic irreducible `poly` of degree ≥ 2.
pub fn adjoin_root(base: &Field, poly: &Poly) -> Result<Extension> {
    adjoin_root_impl(base, poly, false)
}

/// As [`adjoin_root`], but over Q a polynomial of degree > 3 is accepted on the
/// caller's word; the resulting field reports [`Field::is_trusted`].
pub fn adjoin_root_trusted(base: &Field, poly: &Poly) -> Result<Extension> {
    adjoin_root_impl(base, poly, true)
}

fn check_monic(base: &Field, poly: &Poly) -> Result<usize> {
    let d = poly.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::InvalidInput("adjoined polynomial must have degree ≥ 2".into()));
    }
    if !base.is_one(poly.lead().unwrap()) {
        return Err(Error::InvalidInput("adjoined polynomial must be monic".into()));
    }
    Ok(d)
}

fn adjoin_root_impl(base: &Field, poly: &Poly, trusted: bool) -> Result<Extension> {
    let d = check_monic(base, poly)?;
    match base.kind() {
        FieldKind::Rationals => {
            if d <= 3 {
                if !roots::roots(poly, base)?.is_empty() {
                    return Err(Error::ReduciblePolynomial(poly.display(base)));
                }
            } else if !trusted {
                return Err(Error::UnverifiedIrreducibility(d));
            }
            let minpoly: Vec<Rational> = poly.coeffs().iter().map(|c| base.as_rational(c).unwrap()).collect();
            let field = Field::number_field_unchecked(minpoly, d > 3);
            let root = field.generator();
            Ok(Extension { embedding: embed_q(&field), field, root })
        }
        FieldKind::NumberField { .. } => Err(Error::UnsupportedTower(
            "adjoining to a number field; pass the composite field's minimal polynomial over Q instead".into(),
        )),
        FieldKind::Finite { l, k, .. } => {
            if !is_irreducible_finite(poly, base)? {
                return Err(Error::ReduciblePolynomial(poly.display(base)));
            }
            if *k == 1 {
                let m: Vec<u32> = poly.coeffs().iter().map(|c| base.as_prime_residue(c).unwrap()).collect();
                let field = Field::finite_unchecked(*l, m);
                let root = field.generator();
                let embedding = FieldEmbedding { from: base.clone(), to: field.clone(), generator_image: field.zero() };
                // base generator of F_l (minpoly x) is 0
                return Ok(Extension { field, embedding, root });
            }
            let ext = finite_extension(base, d)?;
            let mapped = poly.map(&ext.field, |c| ext.embedding.map(c));
            let rs = roots::roots(&mapped, &ext.field)?;
            let root = rs.into_iter().next().ok_or_else(|| Error::Invariant("irreducible factor has no root in its splitting field".into()))?;
            Ok(Extension { field: ext.field, embedding: ext.embedding, root })
        }
    }
}

fn embed_q(to: &Field) -> FieldEmbedding {
    FieldEmbedding { from: Field::rationals(), to: to.clone(), generator_image: to.one() }
}

/// F_{q^e} ⊇ F_q, using the default (lexicographically first) defining polynomial.
/// The returned `root` is the generator of the new field.
pub fn finite_extension(base: &Field, e: usize) -> Result<Extension> {
    let FieldKind::Finite { l, k, minpoly } = base.kind() else {
        return Err(Error::InvalidField("finite_extension needs a finite field".into()));
    };
    if e == 1 {
        return Ok(Extension { field: base.clone(), embedding: FieldEmbedding::identity(base), root: base.generator() });
    }
    let big = Field::finite_unchecked(*l, gfpoly::first_irreducible(k * e, *l));
    let generator_image = if *k == 1 {
        big.zero()
    } else {
        let m = Poly::from_coeffs(&big, minpoly.iter().map(|&c| big.from_i64(c as i64)).collect());
        roots::roots(&m, &big)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Invariant("subfield generator has no image".into()))?
    };
    let root = big.generator();
    Ok(Extension { embedding: FieldEmbedding { from: base.clone(), to: big.clone(), generator_image }, field: big, root })
}

/// Rabin's test over F_q for a monic polynomial.
pub(crate) fn is_irreducible_finite(p: &Poly, f: &Field) -> Result<bool> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let q: BigUint = f.order().unwrap();
    let x = Poly::x(f);
    let mut frob = vec![x.rem(p, f)?];
    for _ in 0..n {
        let next = frob.last().unwrap().powmod(&q, p, f)?;
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return Ok(false);
    }
    for r in gfpoly::prime_divisors(n) {
        let g = p.gcd(&frob[n / r].sub(&x, f), f);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
