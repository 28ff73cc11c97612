//! Exact computable fields: Q, simple extensions Q(θ), and finite fields F_{l^k}.
//!
//! A [`Field`] is a cheap, reference-counted descriptor that performs the
//! arithmetic; an [`Elem`] is a bare canonical representative. Containers
//! such as matrices carry the field once and store bare elements, so
//! structural equality of `Elem` is field equality.

mod extend;
pub(crate) mod gfpoly;
pub(crate) mod qpoly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use extend::{adjoin_root, adjoin_root_trusted, finite_extension, Extension, FieldEmbedding};

pub type Rational = BigRational;

/// Coefficients of a finite-field element over F_l (length = k).
pub type GfVec = SmallVec<[u32; 4]>;

/// A canonical field element. Which variant is valid is decided by the field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(Rational),
    /// Coordinates in the power basis 1, θ, …, θ^{n−1}.
    Num(Vec<Rational>),
    /// Coordinates in the power basis over F_l.
    Gf(GfVec),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    /// Q[x]/(minpoly); minpoly monic, low-to-high, degree ≥ 2.
    NumberField { minpoly: Vec<Rational> },
    /// F_l[x]/(minpoly); minpoly monic of degree k (the polynomial `x` when k = 1).
    Finite { l: u32, k: usize, minpoly: Vec<u32> },
}

#[derive(Debug)]
struct FieldData {
    kind: FieldKind,
    /// Irreducibility was asserted by the caller rather than certified.
    trusted: bool,
}

/// Descriptor of an exact field. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldData { kind: FieldKind::Rationals, trusted: false }))
    }

    pub fn prime_field(l: u32) -> Result<Field> {
        if !is_prime_u64(l as u64) {
            return Err(Error::InvalidField(format!("{l} is not prime")));
        }
        Ok(Self::finite_unchecked(l, vec![0, 1]))
    }

    /// F_l[x]/(minpoly); the polynomial is checked for irreducibility.
    pub fn finite(l: u32, minpoly: Vec<u32>) -> Result<Field> {
        if !is_prime_u64(l as u64) {
            return Err(Error::InvalidField(format!("{l} is not prime")));
        }
        if l >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {l} too large")));
        }
        let mut m: Vec<u32> = minpoly.into_iter().map(|c| c % l).collect();
        gfpoly::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidField("finite-field minimal polynomial must be monic of degree ≥ 1".into()));
        }
        if !gfpoly::is_irreducible(&m, l) {
            return Err(Error::ReduciblePolynomial(fmt_u32_poly(&m)));
        }
        Ok(Self::finite_unchecked(l, m))
    }

    /// F_{l^k} with the lexicographically first monic irreducible of degree k.
    pub fn finite_default(l: u32, k: usize) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if k == 1 {
            return Self::prime_field(l);
        }
        if !is_prime_u64(l as u64) {
            return Err(Error::InvalidField(format!("{l} is not prime")));
        }
        Ok(Self::finite_unchecked(l, gfpoly::first_irreducible(k, l)))
    }

    pub(crate) fn finite_unchecked(l: u32, minpoly: Vec<u32>) -> Field {
        let k = minpoly.len() - 1;
        Field(Arc::new(FieldData { kind: FieldKind::Finite { l, k, minpoly }, trusted: false }))
    }

    pub(crate) fn number_field_unchecked(minpoly: Vec<Rational>, trusted: bool) -> Field {
        Field(Arc::new(FieldData { kind: FieldKind::NumberField { minpoly }, trusted }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    /// Irreducibility of the defining polynomial was asserted, not certified.
    pub fn is_trusted(&self) -> bool {
        self.0.trusted
    }

    /// 0 for Q and number fields, l for F_{l^k}.
    pub fn characteristic(&self) -> u32 {
        match &self.0.kind {
            FieldKind::Finite { l, .. } => *l,
            _ => 0,
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Rationals => 1,
            FieldKind::NumberField { minpoly } => minpoly.len() - 1,
            FieldKind::Finite { k, .. } => *k,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0.kind, FieldKind::Finite { .. })
    }

    /// Number of elements of a finite field.
    pub fn order(&self) -> Option<BigUint> {
        match &self.0.kind {
            FieldKind::Finite { l, k, .. } => Some(BigUint::from(*l).pow(*k as u32)),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => Elem::Rat(Rational::zero()),
            FieldKind::NumberField { minpoly } => Elem::Num(vec![Rational::zero(); minpoly.len() - 1]),
            FieldKind::Finite { k, .. } => Elem::Gf(SmallVec::from_elem(0, *k)),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_rational(&rat(n)).expect("integers embed in every field")
    }

    /// Image of a rational number; fails in characteristic l when l divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<Elem> {
        match &self.0.kind {
            FieldKind::Rationals => Ok(Elem::Rat(q.clone())),
            FieldKind::NumberField { minpoly } => {
                let mut v = vec![Rational::zero(); minpoly.len() - 1];
                v[0] = q.clone();
                Ok(Elem::Num(v))
            }
            FieldKind::Finite { l, k, .. } => {
                let lb = BigInt::from(*l);
                let num = q.numer().mod_floor(&lb).to_u32().unwrap();
                let den = q.denom().mod_floor(&lb).to_u32().unwrap();
                let inv = gfpoly::inv_mod(den, *l).ok_or(Error::DivisionByZero)?;
                let mut v: GfVec = SmallVec::from_elem(0, *k);
                v[0] = gfpoly::mul_mod(num, inv, *l);
                Ok(Elem::Gf(v))
            }
        }
    }

    /// The class of x in the defining quotient (θ for number fields).
    pub fn generator(&self) -> Elem {
        match &self.0.kind {
            FieldKind::Rationals => self.one(),
            FieldKind::NumberField { minpoly } => {
                let n = minpoly.len() - 1;
                let mut v = vec![Rational::zero(); n];
                if n > 1 {
                    v[1] = Rational::one();
                    Elem::Num(v)
                } else {
                    v[0] = -minpoly[0].clone();
                    Elem::Num(v)
                }
            }
            FieldKind::Finite { l, k, minpoly } => {
                let mut v: GfVec = SmallVec::from_elem(0, *k);
                if *k > 1 {
                    v[1] = 1;
                } else {
                    v[0] = gfpoly::sub_mod(0, minpoly[0], *l);
                }
                Elem::Gf(v)
            }
        }
    }

    /// Build an element from power-basis coordinates (rationals for number fields).
    pub fn from_coords(&self, coords: &[Rational]) -> Result<Elem> {
        match &self.0.kind {
            FieldKind::Rationals => {
                if coords.len() > 1 && coords[1..].iter().any(|c| !c.is_zero()) {
                    return Err(Error::Parse("too many coordinates for Q".into()));
                }
                Ok(Elem::Rat(coords.first().cloned().unwrap_or_else(Rational::zero)))
            }
            FieldKind::NumberField { minpoly } => {
                let n = minpoly.len() - 1;
                let mut v = coords.to_vec();
                qpoly::trim(&mut v);
                let mut r = qpoly::rem_monic(&v, minpoly);
                r.resize(n, Rational::zero());
                Ok(Elem::Num(r))
            }
            FieldKind::Finite { l, k, minpoly } => {
                let mut v = Vec::with_capacity(coords.len());
                for c in coords {
                    match self.from_rational(c)? {
                        Elem::Gf(x) => v.push(x[0]),
                        _ => unreachable!(),
                    }
                }
                gfpoly::trim(&mut v);
                let mut r = gfpoly::rem_monic(&v, minpoly, *l);
                r.resize(*k, 0);
                Ok(Elem::Gf(SmallVec::from_vec(r)))
            }
        }
    }

    /// Enumerate finite-field elements by base-l digits of `index`.
    pub fn elem_from_index(&self, mut index: u64) -> Elem {
        match &self.0.kind {
            FieldKind::Finite { l, k, .. } => {
                let mut v: GfVec = SmallVec::from_elem(0, *k);
                for c in v.iter_mut() {
                    *c = (index % *l as u64) as u32;
                    index /= *l as u64;
                }
                Elem::Gf(v)
            }
            _ => self.from_i64(index as i64),
        }
    }

    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (FieldKind::Rationals, Elem::Rat(_)) => true,
            (FieldKind::NumberField { minpoly }, Elem::Num(v)) => v.len() == minpoly.len() - 1,
            (FieldKind::Finite { l, k, .. }, Elem::Gf(v)) => v.len() == *k && v.iter().all(|c| c < l),
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(q) => q.is_zero(),
            Elem::Num(v) => v.iter().all(|c| c.is_zero()),
            Elem::Gf(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Num(x), Elem::Num(y)) => Elem::Num(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            (Elem::Gf(x), Elem::Gf(y)) => {
                let l = self.characteristic();
                Elem::Gf(x.iter().zip(y).map(|(&p, &q)| gfpoly::add_mod(p, q, l)).collect())
            }
            _ => panic!("field element variant mismatch"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Elem::Num(x), Elem::Num(y)) => Elem::Num(x.iter().zip(y).map(|(p, q)| p - q).collect()),
            (Elem::Gf(x), Elem::Gf(y)) => {
                let l = self.characteristic();
                Elem::Gf(x.iter().zip(y).map(|(&p, &q)| gfpoly::sub_mod(p, q, l)).collect())
            }
            _ => panic!("field element variant mismatch"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::NumberField { minpoly }, Elem::Num(x), Elem::Num(y)) => {
                let n = minpoly.len() - 1;
                let mut r = qpoly::rem_monic(&qpoly::mul(x, y), minpoly);
                r.resize(n, Rational::zero());
                Elem::Num(r)
            }
            (FieldKind::Finite { l, k, minpoly }, Elem::Gf(x), Elem::Gf(y)) => {
                if *k == 1 {
                    let mut v = GfVec::new();
                    v.push(gfpoly::mul_mod(x[0], y[0], *l));
                    return Elem::Gf(v);
                }
                let mut r = gfpoly::rem_monic(&gfpoly::mul(x, y, *l), minpoly, *l);
                r.resize(*k, 0);
                Elem::Gf(SmallVec::from_vec(r))
            }
            _ => panic!("field element variant mismatch"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&self.0.kind, a) {
            (_, Elem::Rat(x)) => Ok(Elem::Rat(x.recip())),
            (FieldKind::NumberField { minpoly }, Elem::Num(x)) => {
                let n = minpoly.len() - 1;
                let mut r = qpoly::inverse_mod(x, minpoly).ok_or(Error::DivisionByZero)?;
                r.resize(n, Rational::zero());
                Ok(Elem::Num(r))
            }
            (FieldKind::Finite { l, k, minpoly }, Elem::Gf(x)) => {
                if *k == 1 {
                    let mut v = GfVec::new();
                    v.push(gfpoly::inv_mod(x[0], *l).ok_or(Error::DivisionByZero)?);
                    return Ok(Elem::Gf(v));
                }
                let (g, mut s) = gfpoly::gcdex_inverse(x, minpoly, *l);
                if g.len() != 1 {
                    return Err(Error::DivisionByZero);
                }
                s = gfpoly::rem_monic(&s, minpoly, *l);
                s.resize(*k, 0);
                Ok(Elem::Gf(SmallVec::from_vec(s)))
            }
            _ => panic!("field element variant mismatch"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element of a finite field.
    pub fn multiplicative_order(&self, a: &Elem) -> Option<BigUint> {
        let q = self.order()?;
        if self.is_zero(a) {
            return None;
        }
        let mut n = q - 1u32;
        for p in factor_biguint(&n) {
            while (&n % &p).is_zero() && self.is_one(&self.pow_big(a, &(&n / &p))) {
                n /= &p;
            }
        }
        Some(n)
    }

    /// a^l in characteristic l (identity in characteristic 0).
    pub fn frobenius(&self, a: &Elem) -> Elem {
        match self.characteristic() {
            0 => a.clone(),
            l => self.pow(a, l as u64),
        }
    }

    /// Unique l-th root in a finite field of characteristic l.
    pub fn lth_root(&self, a: &Elem) -> Elem {
        match &self.0.kind {
            FieldKind::Finite { l, k, .. } => {
                // a^(l^(k-1))
                let mut r = a.clone();
                for _ in 1..*k {
                    r = self.pow(&r, *l as u64);
                }
                r
            }
            _ => a.clone(),
        }
    }

    /// Rational value of an element that lies in the prime field Q.
    pub fn as_rational(&self, a: &Elem) -> Option<Rational> {
        match a {
            Elem::Rat(q) => Some(q.clone()),
            Elem::Num(v) => {
                if v[1..].iter().all(|c| c.is_zero()) {
                    Some(v[0].clone())
                } else {
                    None
                }
            }
            Elem::Gf(_) => None,
        }
    }

    /// Residue in F_l of an element lying in the prime field.
    pub fn as_prime_residue(&self, a: &Elem) -> Option<u32> {
        match a {
            Elem::Gf(v) if v[1..].iter().all(|&c| c == 0) => Some(v[0]),
            _ => None,
        }
    }

    /// Norm to Q of a number-field element (identity on Q).
    pub fn norm_to_q(&self, a: &Elem) -> Option<Rational> {
        match (&self.0.kind, a) {
            (FieldKind::Rationals, Elem::Rat(q)) => Some(q.clone()),
            (FieldKind::NumberField { minpoly }, Elem::Num(_)) => {
                let n = minpoly.len() - 1;
                // multiplication-by-a matrix in the power basis, columns = a·θ^j
                let mut cols = Vec::with_capacity(n);
                let mut basis = self.one();
                let theta = self.generator();
                for _ in 0..n {
                    match self.mul(a, &basis) {
                        Elem::Num(v) => cols.push(v),
                        _ => unreachable!(),
                    }
                    basis = self.mul(&basis, &theta);
                }
                Some(rational_det(cols))
            }
            _ => None,
        }
    }

    /// Human-readable canonical rendering, used for sorting keys and messages.
    pub fn fmt_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(q) => fmt_rational(q),
            Elem::Num(v) => {
                let parts: Vec<String> = v.iter().map(fmt_rational).collect();
                format!("({})", parts.join(","))
            }
            Elem::Gf(v) => {
                if v.len() == 1 {
                    v[0].to_string()
                } else {
                    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    format!("({})", parts.join(","))
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::NumberField { minpoly } => {
                let parts: Vec<String> = minpoly.iter().map(fmt_rational).collect();
                write!(f, "Q[x]/({})", parts.join(","))
            }
            FieldKind::Finite { l, k, .. } if *k == 1 => write!(f, "F_{l}"),
            FieldKind::Finite { l, k, minpoly } => write!(f, "F_{l}^{k}[{}]", fmt_u32_poly(minpoly)),
        }
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn fmt_u32_poly(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// l-adic valuation of a nonzero rational.
pub fn rational_valuation(q: &Rational, l: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let lb = BigInt::from(l);
    let count = |mut n: BigInt| {
        let mut c = 0i64;
        n = n.abs();
        while (&n % &lb).is_zero() {
            n /= &lb;
            c += 1;
        }
        c
    };
    Some(count(q.numer().clone()) - count(q.denom().clone()))
}

fn rational_det(mut cols: Vec<Vec<Rational>>) -> Rational {
    let n = cols.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !cols[c][r].is_zero()) else {
            return Rational::zero();
        };
        // operate on rows of the transposed matrix: treat cols[j][i] as entry (i, j)
        if p != c {
            for col in cols.iter_mut() {
                col.swap(p, c);
            }
            det = -det;
        }
        let pivot = cols[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let factor = &cols[c][r] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for col in cols.iter_mut().skip(c) {
                let v = &col[c] * &factor;
                col[r] -= v;
            }
        }
    }
    det
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn factor_biguint(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}
