//! Compact arithmetic on F_{l^k} for the group engine.
//!
//! Elements are coded as integers Σ cᵢ lⁱ from their power-basis coordinates.
//! Small fields use Zech-logarithm tables; larger ones fall back to the
//! generic field arithmetic.

use num_bigint::BigUint;
use smallvec::SmallVec;

use crate::field::{Elem, Field, FieldKind};

/// Largest field order for which tables are built.
const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Debug)]
pub(crate) struct Fq {
    field: Field,
    l: u64,
    k: usize,
    q: u64,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    /// log[code] for nonzero codes.
    log: Vec<u32>,
    /// exp[i] = code of gⁱ, i < q − 1.
    exp: Vec<u32>,
    /// zech[n] = log(1 + gⁿ), or u32::MAX when 1 + gⁿ = 0.
    zech: Vec<u32>,
}

impl Fq {
    pub(crate) fn new(field: &Field) -> Fq {
        let FieldKind::Finite { l, k, .. } = field.kind() else {
            panic!("Fq needs a finite field");
        };
        let (l, k) = (*l as u64, *k);
        let q = l.checked_pow(k as u32).unwrap_or(u64::MAX);
        let mut fq = Fq { field: field.clone(), l, k, q, tables: None };
        if k > 1 && q <= TABLE_LIMIT {
            fq.tables = Some(fq.build_tables());
        }
        fq
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let target = BigUint::from(self.q - 1);
        let g = (1..self.q)
            .map(|c| self.to_elem(c))
            .find(|e| self.field.multiplicative_order(e).as_ref() == Some(&target))
            .expect("finite fields have primitive elements");
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![0u32; q];
        let mut x = self.field.one();
        for i in 0..q - 1 {
            let c = self.code(&x);
            exp.push(c as u32);
            log[c as usize] = i as u32;
            x = self.field.mul(&x, &g);
        }
        let mut zech = vec![u32::MAX; q - 1];
        for (n, z) in zech.iter_mut().enumerate() {
            let s = self.add_coords(1, exp[n] as u64);
            if s != 0 {
                *z = log[s as usize];
            }
        }
        Tables { log, exp, zech }
    }

    #[cfg(test)]
    pub(crate) fn order(&self) -> u64 {
        self.q
    }

    pub(crate) fn code(&self, e: &Elem) -> u64 {
        match e {
            Elem::Gf(v) => v.iter().rev().fold(0u64, |acc, &c| acc * self.l + c as u64),
            _ => panic!("expected a finite-field element"),
        }
    }

    pub(crate) fn to_elem(&self, mut c: u64) -> Elem {
        let mut v: SmallVec<[u32; 4]> = SmallVec::with_capacity(self.k);
        for _ in 0..self.k {
            v.push((c % self.l) as u32);
            c /= self.l;
        }
        Elem::Gf(v)
    }

    fn add_coords(&self, mut a: u64, mut b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.l;
        }
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.k {
            out += ((a % self.l + b % self.l) % self.l) * place;
            a /= self.l;
            b /= self.l;
            place *= self.l;
        }
        out
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.l;
        }
        match &self.tables {
            Some(t) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let (la, lb) = (t.log[a as usize] as u64, t.log[b as usize] as u64);
                let m = self.q - 1;
                let z = t.zech[((lb + m - la) % m) as usize];
                if z == u32::MAX {
                    0
                } else {
                    t.exp[((la + z as u64) % m) as usize] as u64
                }
            }
            None => self.add_coords(a, b),
        }
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.l - a) % self.l;
        }
        let (mut out, mut place, mut a) = (0u64, 1u64, a);
        for _ in 0..self.k {
            out += ((self.l - a % self.l) % self.l) * place;
            a /= self.l;
            place *= self.l;
        }
        out
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return a * b % self.l;
        }
        match &self.tables {
            Some(t) => {
                let m = self.q - 1;
                t.exp[((t.log[a as usize] as u64 + t.log[b as usize] as u64) % m) as usize] as u64
            }
            None => self.code(&self.field.mul(&self.to_elem(a), &self.to_elem(b))),
        }
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(t) => {
                let m = self.q - 1;
                t.exp[((m - t.log[a as usize] as u64) % m) as usize] as u64
            }
            None => self.code(&self.field.inv(&self.to_elem(a)).unwrap()),
        }
    }
}
