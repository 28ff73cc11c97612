//! Dense polynomials over Q, low-to-high, used for number-field arithmetic.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rem_monic(a: &[Q], m: &[Q]) -> Vec<Q> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top].clone();
        if !c.is_zero() {
            let shift = top - dm;
            for (i, mi) in m.iter().enumerate() {
                r[shift + i] -= &c * mi;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut bb = b.to_vec();
    trim(&mut bb);
    assert!(!bb.is_empty(), "polynomial division by zero");
    let db = bb.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead = bb[db].clone();
    let mut q = vec![Q::zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] / &lead;
        let shift = top - db;
        for (i, bi) in bb.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo `m` (m irreducible), via extended Euclid.
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let mut old_r = a.to_vec();
    trim(&mut old_r);
    if old_r.is_empty() {
        return None;
    }
    let mut r = m.to_vec();
    let mut old_s = vec![Q::one()];
    let mut s: Vec<Q> = Vec::new();
    while !r.is_empty() {
        let (q, rem) = divrem(&old_r, &r);
        let qs = mul(&q, &s);
        let n = old_s.len().max(qs.len());
        let mut new_s = Vec::with_capacity(n);
        for i in 0..n {
            let a = old_s.get(i).cloned().unwrap_or_else(Q::zero);
            let b = qs.get(i).cloned().unwrap_or_else(Q::zero);
            new_s.push(a - b);
        }
        trim(&mut new_s);
        old_r = std::mem::replace(&mut r, rem);
        old_s = std::mem::replace(&mut s, new_s);
    }
    if old_r.len() != 1 {
        return None;
    }
    let inv = Q::one() / &old_r[0];
    Some(old_s.into_iter().map(|c| c * &inv).collect())
}
