//! Dense polynomials over a prime field F_l, stored low-to-high as `u32` residues.

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, l: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= l as u64 { s - l as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, l: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + l as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, l: u32) -> u32 {
    ((a as u64 * b as u64) % l as u64) as u32
}

pub(crate) fn inv_mod(a: u32, l: u32) -> Option<u32> {
    if a % l == 0 {
        return None;
    }
    let (mut old_r, mut r) = (a as i64, l as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    Some(old_s.rem_euclid(l as i64) as u32)
}

pub(crate) fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[u32], b: &[u32], l: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    let lm = l as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % lm;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut v);
    v
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], l: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, l), l);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn divrem(a: &[u32], b: &[u32], l: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut bb = b.to_vec();
    trim(&mut bb);
    assert!(!bb.is_empty(), "polynomial division by zero");
    let db = bb.len() - 1;
    let inv_lead = inv_mod(bb[db], l).expect("nonzero leading coefficient");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv_lead, l);
        let shift = top - db;
        q[shift] = c;
        for (i, &bi) in bb.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bi, l), l);
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Extended Euclid: returns (g, s) with s*a ≡ g (mod b), g monic.
pub(crate) fn gcdex_inverse(a: &[u32], b: &[u32], l: u32) -> (Vec<u32>, Vec<u32>) {
    let mut old_r = a.to_vec();
    trim(&mut old_r);
    let mut r = b.to_vec();
    trim(&mut r);
    let mut old_s = vec![1u32];
    let mut s: Vec<u32> = Vec::new();
    while !r.is_empty() {
        let (q, rem) = divrem(&old_r, &r, l);
        let qs = mul(&q, &s, l);
        let mut new_s = vec![0u32; old_s.len().max(qs.len())];
        for (i, v) in new_s.iter_mut().enumerate() {
            let a = old_s.get(i).copied().unwrap_or(0);
            let b = qs.get(i).copied().unwrap_or(0);
            *v = sub_mod(a, b, l);
        }
        trim(&mut new_s);
        old_r = std::mem::replace(&mut r, rem);
        old_s = std::mem::replace(&mut s, new_s);
    }
    if let Some(&lead) = old_r.last() {
        let inv = inv_mod(lead, l).unwrap();
        for c in old_r.iter_mut() {
            *c = mul_mod(*c, inv, l);
        }
        for c in old_s.iter_mut() {
            *c = mul_mod(*c, inv, l);
        }
    }
    (old_r, old_s)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], l: u32) -> Vec<u32> {
    gcdex_inverse(a, b, l).0
}

/// `base^e mod m` with `m` monic.
pub(crate) fn powmod(base: &[u32], e: &num_bigint::BigUint, m: &[u32], l: u32) -> Vec<u32> {
    let mut result = rem_monic(&[1], m, l);
    let b = rem_monic(base, m, l);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = rem_monic(&mul(&result, &result, l), m, l);
        if e.bit(i) {
            result = rem_monic(&mul(&result, &b, l), m, l);
        }
    }
    result
}

/// Rabin's irreducibility test for a monic polynomial over F_l.
pub(crate) fn is_irreducible(m: &[u32], l: u32) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let lb = num_bigint::BigUint::from(l);
    let x = vec![0u32, 1];
    // x^(l^i) mod m for i = 1..=n
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(rem_monic(&x, m, l));
    for _ in 0..n {
        let prev = powers.last().unwrap();
        powers.push(powmod(prev, &lb, m, l));
    }
    // x^(l^n) == x
    if powers[n] != powers[0] {
        return false;
    }
    for p in prime_divisors(n) {
        let t = &powers[n / p];
        let mut diff = t.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = sub_mod(diff[1], 1, l);
        trim(&mut diff);
        let g = gcd(m, &diff, l);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lexicographically first monic irreducible polynomial of degree `n` over F_l.
pub(crate) fn first_irreducible(n: usize, l: u32) -> Vec<u32> {
    let mut coeffs = vec![0u32; n];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, l) {
            return m;
        }
        // increment little-endian counter
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < l {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < n, "no irreducible polynomial found");
        }
    }
}
