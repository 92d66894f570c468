//! The exact field of constants `F_q`, `q = p^e`.
//!
//! Elements are stored as canonical indices `0..q`: the index encodes the
//! coefficient vector of the element with respect to the power basis of the
//! canonical modulus, in base `p`. For prime `q` the index is the residue
//! itself. All arithmetic is table-driven, so `q` is capped at 256.

use std::sync::Arc;

use crate::error::{domain, Result};

/// An element of `F_q`, as a canonical index `0..q`.
pub type FqEl = u64;

#[derive(Debug)]
struct FqInner {
    p: u64,
    e: usize,
    q: u64,
    /// canonical modulus, coefficients over `F_p`, degree `e`, monic
    modulus: Vec<u64>,
    add_t: Vec<FqEl>,
    mul_t: Vec<FqEl>,
    neg_t: Vec<FqEl>,
    inv_t: Vec<FqEl>, // inv_t[0] unused
}

/// Context for `F_q` arithmetic. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Fq(Arc<FqInner>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}
impl Eq for Fq {}

const Q_CAP: u64 = 256;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// dense poly helpers over F_p, coefficients 0..p
fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // m monic
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = i + shift;
            let sub = (lead * c) % p;
            r[idx] = (r[idx] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_divides(d: &[u64], a: &[u64], p: u64) -> bool {
    fp_rem(a, d, p).is_empty()
}

/// Irreducibility over F_p by trial division (degrees here are tiny).
fn fp_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let half = deg / 2;
    // iterate monic polys of degree 1..=half
    for d in 1..=half {
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut cand = vec![0u64; d + 1];
            cand[d] = 1;
            let mut kk = k;
            for c in cand.iter_mut().take(d) {
                *c = kk % p;
                kk /= p;
            }
            if fp_divides(&cand, m, p) {
                return false;
            }
        }
    }
    true
}

/// The canonical modulus for `F_{p^e}`: the monic irreducible of degree `e`
/// with least coefficient index `sum c_i p^i`.
pub fn canonical_modulus(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1]; // x
    }
    let count = p.pow(e as u32);
    for k in 0..count {
        let mut cand = vec![0u64; e + 1];
        cand[e] = 1;
        let mut kk = k;
        for c in cand.iter_mut().take(e) {
            *c = kk % p;
            kk /= p;
        }
        if fp_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn idx_to_poly(idx: u64, p: u64, e: usize) -> Vec<u64> {
    let mut v = vec![0u64; e];
    let mut k = idx;
    for c in v.iter_mut() {
        *c = k % p;
        k /= p;
    }
    v
}

fn poly_to_idx(v: &[u64], p: u64) -> u64 {
    let mut idx = 0u64;
    for &c in v.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

impl Fq {
    /// Build `F_q` for `q = p^e`, `q <= 256`, with the canonical modulus.
    pub fn new(q: u64) -> Result<Fq> {
        if q < 2 || q > Q_CAP {
            return domain(format!("q = {q} out of supported range 2..={Q_CAP}"));
        }
        // find p, e with q = p^e: p is the least prime factor
        let mut p = q;
        for cand in 2..q {
            if q % cand == 0 {
                p = cand;
                break;
            }
        }
        debug_assert!(is_prime(p));
        let mut t = q;
        let mut e = 0usize;
        while t % p == 0 {
            t /= p;
            e += 1;
        }
        if t != 1 {
            return domain(format!("q = {q} is not a prime power"));
        }
        let modulus = canonical_modulus(p, e);
        let qs = q as usize;
        let mut add_t = vec![0u64; qs * qs];
        let mut mul_t = vec![0u64; qs * qs];
        let mut neg_t = vec![0u64; qs];
        let mut inv_t = vec![0u64; qs];
        for a in 0..q {
            let pa = idx_to_poly(a, p, e);
            let mut npa = pa.clone();
            for c in npa.iter_mut() {
                *c = (p - *c) % p;
            }
            neg_t[a as usize] = poly_to_idx(&npa, p);
            for b in 0..q {
                let pb = idx_to_poly(b, p, e);
                let mut sum = vec![0u64; e];
                for i in 0..e {
                    sum[i] = (pa[i] + pb[i]) % p;
                }
                add_t[(a * q + b) as usize] = poly_to_idx(&sum, p);
                let mut prod = fp_rem(&fp_mul(&pa, &pb, p), &modulus, p);
                prod.resize(e, 0);
                mul_t[(a * q + b) as usize] = poly_to_idx(&prod, p);
            }
        }
        // inverses by scanning the multiplication table
        for a in 1..q {
            for b in 1..q {
                if mul_t[(a * q + b) as usize] == 1 {
                    inv_t[a as usize] = b;
                    break;
                }
            }
        }
        Ok(Fq(Arc::new(FqInner {
            p,
            e,
            q,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn e(&self) -> usize {
        self.0.e
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn add(&self, a: FqEl, b: FqEl) -> FqEl {
        self.0.add_t[(a * self.0.q + b) as usize]
    }
    pub fn sub(&self, a: FqEl, b: FqEl) -> FqEl {
        self.add(a, self.neg(b))
    }
    pub fn neg(&self, a: FqEl) -> FqEl {
        self.0.neg_t[a as usize]
    }
    pub fn mul(&self, a: FqEl, b: FqEl) -> FqEl {
        self.0.mul_t[(a * self.0.q + b) as usize]
    }
    pub fn inv(&self, a: FqEl) -> Result<FqEl> {
        if a == 0 {
            return domain("division by zero in F_q");
        }
        Ok(self.0.inv_t[a as usize])
    }
    pub fn div(&self, a: FqEl, b: FqEl) -> Result<FqEl> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: FqEl, mut n: u64) -> FqEl {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Embed an integer (reduced mod p) as a constant of `F_q`.
    pub fn from_int(&self, n: i64) -> FqEl {
        let p = self.0.p as i64;
        (n.rem_euclid(p)) as u64
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqEl> {
        0..self.0.q
    }
}

impl std::fmt::Display for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arith() {
        let f = Fq::new(7).unwrap();
        assert_eq!(f.add(3, 5), 1);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3).unwrap(), 5);
        assert_eq!(f.neg(2), 5);
    }

    #[test]
    fn f9_is_field() {
        let f = Fq::new(9).unwrap();
        assert_eq!(f.p(), 3);
        assert_eq!(f.e(), 2);
        for a in f.elements() {
            if a != 0 {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1);
            }
            for b in f.elements() {
                // commutativity
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(a, b), f.add(b, a));
            }
        }
    }

    #[test]
    fn f4_canonical_modulus() {
        let f = Fq::new(4).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(Fq::new(6).is_err());
        assert!(Fq::new(1).is_err());
        assert!(Fq::new(512).is_err());
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Fq::new(9).unwrap();
        for a in 0..3u64 {
            assert_eq!(f.pow(a, 3), a);
        }
        // Frobenius x -> x^3 is additive on F_9
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.pow(f.add(a, b), 3), f.add(f.pow(a, 3), f.pow(b, 3)));
            }
        }
    }
}
