//! Dense univariate polynomial arithmetic over any [`Field`].
//!
//! Polynomials are coefficient vectors `c_0..c_d` with no trailing zeros.
//! These helpers back the extension-field tower, the simple-extension
//! coefficient field and the minimal-polynomial machinery.

use crate::error::{domain, Result};
use crate::field::Field;

pub fn trim<F: Field>(f: &F, v: &mut Vec<F::El>) {
    while v.last().map(|c| f.is_zero(c)).unwrap_or(false) {
        v.pop();
    }
}

pub fn deg<F: Field>(_f: &F, v: &[F::El]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    trim(f, &mut out);
    out
}

pub fn neg<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &[F::El], c: &F::El) -> Vec<F::El> {
    if f.is_zero(c) {
        return vec![];
    }
    a.iter().map(|x| f.mul(x, c)).collect()
}

const KARATSUBA_CUTOFF: usize = 64;

pub fn mul<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trim(f, &mut out);
        return out;
    }
    karatsuba(f, a, b)
}

fn karatsuba<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = mul(f, a0, b0);
    let z2 = mul(f, a1, b1);
    let sa = add(f, a0, a1);
    let sb = add(f, b0, b1);
    let z1 = sub(f, &sub(f, &mul(f, &sa, &sb), &z0), &z2);
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, c) in z0.iter().enumerate() {
        out[i] = f.add(&out[i], c);
    }
    for (i, c) in z1.iter().enumerate() {
        out[i + m] = f.add(&out[i + m], c);
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + 2 * m] = f.add(&out[i + 2 * m], c);
    }
    trim(f, &mut out);
    out
}

/// Division with remainder; requires the divisor's leading coefficient to be
/// invertible (always true over a field for nonzero divisors).
pub fn divmod<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Result<(Vec<F::El>, Vec<F::El>)> {
    if b.is_empty() {
        return domain("polynomial division by zero");
    }
    let db = b.len() - 1;
    let lead_inv = f.inv(b.last().unwrap())?;
    let mut r: Vec<F::El> = a.to_vec();
    trim(f, &mut r);
    if r.len() <= db {
        return Ok((vec![], r));
    }
    let mut qv = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let c = f.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - 1 - db;
        qv[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul(&c, bc);
            r[i + shift] = f.sub(&r[i + shift], &t);
        }
        trim(f, &mut r);
        if r.is_empty() {
            break;
        }
    }
    trim(f, &mut qv);
    Ok((qv, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Result<Vec<F::El>> {
    Ok(divmod(f, a, b)?.1)
}

/// Make monic; returns None for the zero polynomial.
pub fn monic<F: Field>(f: &F, a: &[F::El]) -> Option<Vec<F::El>> {
    let lead = a.last()?;
    let inv = f.inv(lead).ok()?;
    Some(scale(f, a, &inv))
}

pub fn gcd<F: Field>(f: &F, a: &[F::El], b: &[F::El]) -> Result<Vec<F::El>> {
    let mut x: Vec<F::El> = a.to_vec();
    let mut y: Vec<F::El> = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y)?;
        x = y;
        y = r;
    }
    Ok(monic(f, &x).unwrap_or_default())
}

/// `x^n mod m` with `n` given in binary.
pub fn pow_x_mod<F: Field>(f: &F, mut n: u128, m: &[F::El]) -> Result<Vec<F::El>> {
    let x = vec![f.zero(), f.one()];
    let mut base = rem(f, &x, m)?;
    let mut acc = rem(f, &[f.one()], m)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m)?;
        }
        base = rem(f, &mul(f, &base, &base), m)?;
        n >>= 1;
    }
    Ok(acc)
}

pub fn pow_mod<F: Field>(f: &F, a: &[F::El], mut n: u128, m: &[F::El]) -> Result<Vec<F::El>> {
    let mut base = rem(f, a, m)?;
    let mut acc = rem(f, &[f.one()], m)?;
    while n > 0 {
        if n & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m)?;
        }
        base = rem(f, &mul(f, &base, &base), m)?;
        n >>= 1;
    }
    Ok(acc)
}

/// Extended gcd: `(g, s, t)` with `g = s*a + t*b`, `g` monic (or empty).
#[allow(clippy::type_complexity)]
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::El],
    b: &[F::El],
) -> Result<(Vec<F::El>, Vec<F::El>, Vec<F::El>)> {
    let (mut r0, mut r1): (Vec<F::El>, Vec<F::El>) = (a.to_vec(), b.to_vec());
    trim(f, &mut r0);
    trim(f, &mut r1);
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(f, &r0, &r1)?;
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_empty() {
        return Ok((r0, s0, t0));
    }
    let linv = f.inv(r0.last().unwrap())?;
    Ok((
        scale(f, &r0, &linv),
        scale(f, &s0, &linv),
        scale(f, &t0, &linv),
    ))
}

pub fn eval<F: Field>(f: &F, a: &[F::El], x: &F::El) -> F::El {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Formal derivative.
pub fn derivative<F: Field>(f: &F, a: &[F::El]) -> Vec<F::El> {
    let p = f.fq().p();
    let mut out = Vec::new();
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = (i as u64) % p;
        let mut term = f.zero();
        for _ in 0..k {
            term = f.add(&term, c);
        }
        out.push(term);
    }
    trim(f, &mut out);
    out
}
