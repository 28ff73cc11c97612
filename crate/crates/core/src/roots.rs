//! Root finding in the supported fields.
//!
//! * F_{l^k}: distinct-root extraction `gcd(p, x^q − x)` followed by
//!   Cantor–Zassenhaus equal-degree splitting with a fixed-seed RNG, so the
//!   output is deterministic.
//! * Q and Q(θ): reduce modulo a prime P at which the defining polynomial
//!   stays irreducible, find roots in F_{P^n} and Hensel-lift them P-adically
//!   past an a priori bound on the coordinates of any true root. Every
//!   candidate is verified exactly before it is returned.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{gfpoly, is_prime_u64, Elem, Field, FieldKind, Rational};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Distinct roots of `p` in its coefficient field, sorted.
pub fn roots(p: &Poly, f: &Field) -> Result<Vec<Elem>> {
    let Some(deg) = p.degree() else {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    let sf = p.radical(f);
    let mut out = if sf.degree() == Some(1) {
        let c = sf.coeffs();
        vec![f.neg(&f.div(&c[0], &c[1])?)]
    } else {
        match f.kind() {
            FieldKind::Finite { .. } => finite_roots(&sf, f)?,
            FieldKind::Rationals | FieldKind::NumberField { .. } => padic_roots(&sf, f)?,
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Split off every linear factor: returns roots with multiplicity and the cofactor
/// that has no roots in the field.
pub fn split_linear(p: &Poly, f: &Field) -> Result<(Vec<(Elem, usize)>, Poly)> {
    let rs = roots(p, f)?;
    let mut rest = p.clone();
    let mut out = Vec::with_capacity(rs.len());
    for r in rs {
        let lin = Poly::linear(f, &r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.divrem(&lin, f)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push((r, mult));
    }
    Ok((out, rest))
}

/// NonSplitCharPoly error carrying the given factor.
pub fn non_split_error(rest: &Poly, f: &Field) -> Error {
    let m = rest.monic(f);
    Error::NonSplitCharPoly { display: m.display(f), factor: m.into_coeffs() }
}

fn finite_roots(p: &Poly, f: &Field) -> Result<Vec<Elem>> {
    let q = f.order().expect("finite field");
    let p = p.monic(f);
    let x = Poly::x(f);
    let xq = x.powmod(&q, &p, f)?;
    let g = p.gcd(&xq.sub(&x, f), f);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7764_666f_7267_65);
    equal_degree_split(&g, f, &q, &mut rng, &mut out)?;
    Ok(out)
}

/// Split a monic product of distinct linear factors into its roots.
fn equal_degree_split(g: &Poly, f: &Field, q: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let c = g.coeffs();
            out.push(f.neg(&f.div(&c[0], &c[1])?));
            return Ok(());
        }
        _ => {}
    }
    let deg = g.degree().unwrap();
    let l = f.characteristic();
    let k = f.degree();
    let size = q.to_u64().unwrap_or(u64::MAX);
    for _ in 0..256 {
        let a: Vec<Elem> = (0..deg).map(|_| f.elem_from_index(rng.gen_range(0..size))).collect();
        let a = Poly::from_coeffs(f, a);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let h = if l == 2 {
            // absolute trace a + a^2 + … + a^(2^(k-1))
            let mut t = a.rem(g, f)?;
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul(&t, f).rem(g, f)?;
                acc = acc.add(&t, f);
            }
            acc
        } else {
            let e = (q - 1u32) / 2u32;
            a.powmod(&e, g, f)?.sub(&Poly::one(f), f)
        };
        let d = g.gcd(&h, f);
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < deg {
                let other = g.div_exact(&d, f)?.monic(f);
                equal_degree_split(&d, f, q, rng, out)?;
                equal_degree_split(&other, f, q, rng, out)?;
                return Ok(());
            }
        }
    }
    Err(Error::Invariant("equal-degree splitting did not converge".into()))
}

// ---------------------------------------------------------------------------
// Characteristic zero: P-adic lifting

/// Arithmetic in (Z/MZ)[θ]/(m) with m monic and P-integral.
struct LiftRing {
    modulus: BigInt,
    minpoly: Vec<BigInt>,
    n: usize,
}

impl LiftRing {
    fn new(m: &[Rational], modulus: BigInt) -> Option<LiftRing> {
        let minpoly = m.iter().map(|c| reduce_rational(c, &modulus)).collect::<Option<Vec<_>>>()?;
        Some(LiftRing { n: m.len() - 1, minpoly, modulus })
    }

    fn reduce(&self, v: &mut [BigInt]) {
        for c in v.iter_mut() {
            *c = c.mod_floor(&self.modulus);
        }
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&mut v);
        v
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&mut v);
        v
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for top in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]).mod_floor(&self.modulus);
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let t = &c * &self.minpoly[i];
                prod[top - n + i] -= t;
            }
        }
        prod.truncate(n);
        self.reduce(&mut prod);
        prod
    }

    fn constant(&self, c: &BigInt) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        v[0] = c.mod_floor(&self.modulus);
        v
    }

    fn eval(&self, coeffs: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.n];
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }
}

fn reduce_rational(q: &Rational, modulus: &BigInt) -> Option<BigInt> {
    let den = q.denom().mod_floor(modulus);
    let inv = mod_inverse(&den, modulus)?;
    Some((q.numer() * inv).mod_floor(modulus))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

fn minpoly_of(f: &Field) -> Vec<Rational> {
    match f.kind() {
        FieldKind::Rationals => vec![Rational::zero(), Rational::one()],
        FieldKind::NumberField { minpoly } => minpoly.clone(),
        FieldKind::Finite { .. } => unreachable!(),
    }
}

fn coords(e: &Elem) -> Vec<Rational> {
    match e {
        Elem::Rat(q) => vec![q.clone()],
        Elem::Num(v) => v.clone(),
        Elem::Gf(_) => unreachable!(),
    }
}

/// Reduction of `p` modulo a prime P at which the defining polynomial stays
/// irreducible, P divides no denominator and `p` stays squarefree of the same degree.
fn reduce_at(pc: &[Vec<Rational>], m: &[Rational], prime: u32) -> Option<(Field, Poly)> {
    let n = m.len() - 1;
    let pb = BigInt::from(prime);
    let mbar = m.iter().map(|c| reduce_rational(c, &pb)).collect::<Option<Vec<BigInt>>>()?;
    let mbar: Vec<u32> = mbar.iter().map(|c| c.to_u32().unwrap()).collect();
    if n > 1 && !gfpoly::is_irreducible(&mbar, prime) {
        return None;
    }
    let red_field = Field::finite_unchecked(prime, if n == 1 { vec![0, 1] } else { mbar });
    let mut red_coeffs = Vec::with_capacity(pc.len());
    for c in pc {
        let mut v = c.iter().map(|q| reduce_rational(q, &pb).map(|r| r.to_u32().unwrap())).collect::<Option<Vec<u32>>>()?;
        v.resize(n, 0);
        red_coeffs.push(Elem::Gf(v.into_iter().collect()));
    }
    let pbar = Poly::from_coeffs(&red_field, red_coeffs);
    if pbar.degree() != Some(pc.len() - 1) || !pbar.is_squarefree(&red_field) {
        return None;
    }
    Some((red_field, pbar))
}

/// Number of admissible primes consulted; the fewest roots seen bounds the
/// number of roots in characteristic zero.
const COUNTING_PRIMES: usize = 3;

fn padic_roots(p: &Poly, f: &Field) -> Result<Vec<Elem>> {
    let p = p.monic(f);
    let m = minpoly_of(f);
    let pc: Vec<Vec<Rational>> = p.coeffs().iter().map(coords).collect();

    let mut reductions = Vec::new();
    let mut prime = 101u32;
    let mut attempts = 0;
    while reductions.len() < COUNTING_PRIMES && attempts < 3000 {
        prime += 2;
        if !is_prime_u64(prime as u64) {
            continue;
        }
        attempts += 1;
        if let Some((red_field, pbar)) = reduce_at(&pc, &m, prime) {
            let approx = finite_roots(&pbar, &red_field)?;
            if approx.is_empty() {
                return Ok(Vec::new());
            }
            reductions.push((prime, red_field, pbar, approx));
        }
    }
    if reductions.is_empty() {
        return Err(Error::RootFindingUnsupported(format!(
            "no prime keeps the defining polynomial of {f} irreducible"
        )));
    }
    let most = reductions.iter().map(|r| r.3.len()).min().unwrap();
    let (prime, red_field, pbar, approx) = reductions.swap_remove(0);
    let pb = BigInt::from(prime);
    let dpbar = pbar.derivative(&red_field);
    let bound = coordinate_bound(&pc, &m);
    let mut out = Vec::new();
    for rho in approx {
        if out.len() == most {
            break;
        }
        let w0 = red_field.inv(&dpbar.eval(&rho, &red_field))?;
        if let Some(root) = lift_root(&pc, &m, &pb, &rho, &w0, f, &p, &bound)? {
            out.push(root);
        }
    }
    Ok(out)
}

fn gf_to_ints(e: &Elem, n: usize) -> Vec<BigInt> {
    match e {
        Elem::Gf(v) => {
            let mut out: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
            out.resize(n, BigInt::zero());
            out
        }
        _ => unreachable!(),
    }
}

/// Denominator L and modulus M such that every root of `p` in the field has
/// coordinates a_i with L·a_i an integer of absolute value below M/2.
///
/// Write θ' = Dθ (an algebraic integer) and β = Eα (integral for a root α).
/// Traces Tr(β·θ'^j) are integers bounded through Cauchy's root bound, and the
/// coordinates are recovered from the traces Tr(α·θ^j) by the inverse trace form.
fn coordinate_bound(pc: &[Vec<Rational>], m: &[Rational]) -> (BigInt, BigInt) {
    let n = m.len() - 1;
    let d = pc.len() - 1;
    let dd = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dr = Rational::from_integer(dd.clone());
    let mut e = BigInt::one();
    for c in &pc[..d] {
        let mut scale = Rational::one();
        for ck in c {
            e = e.lcm((ck / &scale).denom());
            scale *= &dr;
        }
    }
    let b_theta = Rational::one() + m[..n].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    let b_alpha = Rational::one()
        + pc[..d]
            .iter()
            .map(|c| {
                let mut pow = Rational::one();
                let mut acc = Rational::zero();
                for ck in c {
                    acc += ck.abs() * &pow;
                    pow *= &b_theta;
                }
                acc
            })
            .max()
            .unwrap_or_else(Rational::zero);
    let er = Rational::from_integer(e.clone());
    let nr = Rational::from_integer(BigInt::from(n));
    let z: Vec<Rational> = (0..n)
        .map(|j| &nr * &er * &b_alpha * (&dr * &b_theta).pow(j as i32))
        .collect();

    // trace form T_ij = Tr(θ^{i+j}) from powers of the companion matrix
    let q = Field::rationals();
    let mut comp = Matrix::zeros(&q, n, n);
    for i in 1..n {
        comp.set(i, i - 1, q.one());
    }
    for i in 0..n {
        comp.set(i, n - 1, Elem::Rat(-m[i].clone()));
    }
    let mut traces = Vec::with_capacity(2 * n - 1);
    let mut pw = Matrix::identity(&q, n);
    for _ in 0..2 * n - 1 {
        traces.push(pw.trace());
        pw = pw.mul(&comp);
    }
    let mut t = Matrix::zeros(&q, n, n);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, traces[i + j].clone());
        }
    }
    let tinv = t.inverse().expect("trace form of a separable algebra is nondegenerate");
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let scale = &er * dr.pow(j as i32);
                    q.as_rational(tinv.get(i, j)).unwrap() / scale
                })
                .collect()
        })
        .collect();
    let l = a.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lr = Rational::from_integer(l.clone());
    let bound = a
        .iter()
        .map(|row| row.iter().zip(&z).map(|(x, zj)| (x * &lr).abs() * zj).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let modulus = BigInt::from(2) * bound.ceil().to_integer() + 1;
    (l, modulus)
}

/// Hensel-lift the simple root `rho` of p mod P until the precision reaches
/// `needed`, then read off the candidate root and verify it exactly.
#[allow(clippy::too_many_arguments)]
fn lift_root(
    pc: &[Vec<Rational>],
    m: &[Rational],
    prime: &BigInt,
    rho: &Elem,
    w0: &Elem,
    f: &Field,
    p: &Poly,
    (denom, needed): &(BigInt, BigInt),
) -> Result<Option<Elem>> {
    let n = m.len() - 1;
    let mut modulus = prime.clone();
    let mut r = gf_to_ints(rho, n);
    let mut w = gf_to_ints(w0, n);
    let dp: Vec<Vec<Rational>> = pc
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.iter().map(|q| q * Rational::from_integer(BigInt::from(i))).collect())
        .collect();
    while modulus < *needed {
        let next = &modulus * &modulus;
        let ring = LiftRing::new(m, next.clone()).expect("prime does not divide denominators");
        let red = |c: &Vec<Rational>| {
            let mut v: Vec<BigInt> = c.iter().map(|q| reduce_rational(q, &next).unwrap()).collect();
            v.resize(n, BigInt::zero());
            v
        };
        let pcoeffs: Vec<Vec<BigInt>> = pc.iter().map(red).collect();
        let dcoeffs: Vec<Vec<BigInt>> = dp.iter().map(red).collect();
        let val = ring.eval(&pcoeffs, &r);
        r = ring.sub(&r, &ring.mul(&val, &w));
        let dv = ring.eval(&dcoeffs, &r);
        let two = ring.constant(&BigInt::from(2));
        w = ring.mul(&w, &ring.sub(&two, &ring.mul(&dv, &w)));
        modulus = next;
    }
    let half = &modulus / 2;
    let cand: Vec<Rational> = r
        .iter()
        .map(|c| {
            let mut s = (c * denom).mod_floor(&modulus);
            if s > half {
                s -= &modulus;
            }
            Rational::new(s, denom.clone())
        })
        .collect();
    let e = f.from_coords(&cand)?;
    Ok(f.is_zero(&p.eval(&e, f)).then_some(e))
}
