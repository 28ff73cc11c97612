//! Univariate polynomials over a [`Field`].

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Dense polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(f: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim(f);
        p
    }

    pub fn constant(f: &Field, c: Elem) -> Poly {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one(f: &Field) -> Poly {
        Self::constant(f, f.one())
    }

    pub fn x(f: &Field) -> Poly {
        Poly { coeffs: vec![f.zero(), f.one()] }
    }

    /// x − r
    pub fn linear(f: &Field, r: &Elem) -> Poly {
        Poly { coeffs: vec![f.neg(r), f.one()] }
    }

    pub fn from_roots(f: &Field, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::one(f), |acc, r| acc.mul(&Poly::linear(f, r), f))
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize, f: &Field) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    fn trim(&mut self, f: &Field) {
        while self.coeffs.last().is_some_and(|c| f.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i, f), &o.coeff(i, f))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i, f), &o.coeff(i, f))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn scale(&self, s: &Elem, f: &Field) -> Poly {
        Self::from_coeffs(f, self.coeffs.iter().map(|c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn divrem(&self, d: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv(d.lead().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = f.mul(&r[top], &inv_lead);
            let shift = top - dd;
            if !f.is_zero(&c) {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, di));
                }
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(|c| f.is_zero(c)) && r.len() > dd {
                r.pop();
            }
        }
        Ok((Self::from_coeffs(f, q), Self::from_coeffs(f, r)))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Result<Poly> {
        Ok(self.divrem(d, f)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly, f: &Field) -> Result<Poly> {
        let (q, r) = self.divrem(d, f)?;
        if !r.is_zero() {
            return Err(Error::Invariant("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(c) => {
                let inv = f.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv, f)
            }
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(f, c)
    }

    pub fn eval(&self, x: &Elem, f: &Field) -> Elem {
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// self^e mod m
    pub fn powmod(&self, e: &BigUint, m: &Poly, f: &Field) -> Result<Poly> {
        let base = self.rem(m, f)?;
        let mut r = Poly::one(f).rem(m, f)?;
        for i in (0..e.bits()).rev() {
            r = r.mul(&r, f).rem(m, f)?;
            if e.bit(i) {
                r = r.mul(&base, f).rem(m, f)?;
            }
        }
        Ok(r)
    }

    /// Monic product of the distinct irreducible factors (valid over perfect fields).
    pub fn radical(&self, f: &Field) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one(f);
        }
        let d = self.derivative(f);
        if d.is_zero() {
            // p(x) = h(x^l) = (h^{1/l}(x))^l in characteristic l
            return self.lth_root(f).radical(f);
        }
        let g = self.gcd(&d, f);
        let w = self.div_exact(&g, f).expect("gcd divides").monic(f);
        if f.characteristic() == 0 {
            return w;
        }
        let mut rest = g;
        loop {
            let c = rest.gcd(&w, f);
            if c.degree() == Some(0) {
                break;
            }
            rest = rest.div_exact(&c, f).expect("gcd divides");
        }
        if rest.degree().unwrap_or(0) == 0 {
            w
        } else {
            w.mul(&rest.lth_root(f).radical(f), f).monic(f)
        }
    }

    /// For p(x) = h(x^l) over F_{l^k}, returns the polynomial whose l-th power is p.
    fn lth_root(&self, f: &Field) -> Poly {
        let l = f.characteristic() as usize;
        debug_assert!(l > 0);
        let c = self.coeffs.iter().step_by(l).map(|c| f.lth_root(c)).collect();
        Self::from_coeffs(f, c)
    }

    pub fn is_squarefree(&self, f: &Field) -> bool {
        self.radical(f).degree() == self.degree()
    }

    /// Map coefficients through a function (e.g. a field embedding).
    pub fn map(&self, to: &Field, g: impl Fn(&Elem) -> Elem) -> Poly {
        Self::from_coeffs(to, self.coeffs.iter().map(g).collect())
    }

    pub fn display(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fmt_elem(c);
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(if i == 0 {
                cs
            } else if f.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        terms.join(" + ")
    }
}
