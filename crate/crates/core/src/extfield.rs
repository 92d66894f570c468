//! Quotient fields `B[x]/(m(x))`.
//!
//! This single type covers the finite extension towers (finite A-fields and
//! the extensions where torsion points live) and the simple extensions
//! `K[y]/(m(y))` of the generic coefficient field.

use std::sync::Arc;

use crate::error::{domain, Result};
use crate::field::{Field, FiniteField};
use crate::fq::{Fq, FqEl};
use crate::polyops as po;

#[derive(Debug)]
struct ExtInner<B: Field> {
    base: B,
    /// monic irreducible modulus over the base, degree >= 1
    modulus: Vec<B::El>,
    deg: usize,
    var: String,
}

/// `B[x]/(m)`. Cheap to clone.
#[derive(Debug)]
pub struct ExtField<B: Field>(Arc<ExtInner<B>>);

impl<B: Field> Clone for ExtField<B> {
    fn clone(&self) -> Self {
        ExtField(Arc::clone(&self.0))
    }
}

impl<B: Field> PartialEq for ExtField<B> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

/// An element: coefficient vector over the base, degree < deg, trimmed.
pub type ExtEl<B> = Vec<<B as Field>::El>;

impl<B: Field> ExtField<B> {
    pub fn new(base: B, modulus: Vec<B::El>, var: &str) -> Result<ExtField<B>> {
        if modulus.len() < 2 {
            return domain("extension modulus must be nonconstant");
        }
        if !base.is_zero(&base.sub(modulus.last().unwrap(), &base.one())) {
            return domain("extension modulus must be monic");
        }
        let deg = modulus.len() - 1;
        Ok(ExtField(Arc::new(ExtInner {
            base,
            modulus,
            deg,
            var: var.into(),
        })))
    }

    pub fn base(&self) -> &B {
        &self.0.base
    }

    pub fn modulus(&self) -> &[B::El] {
        &self.0.modulus
    }

    pub fn ext_deg(&self) -> usize {
        self.0.deg
    }

    pub fn var(&self) -> &str {
        &self.0.var
    }

    /// The class of `x`.
    pub fn gen(&self) -> ExtEl<B> {
        if self.0.deg == 1 {
            // x = -c_0 mod m
            vec![self.0.base.neg(&self.0.modulus[0])]
        } else {
            vec![self.0.base.zero(), self.0.base.one()]
        }
    }

    /// Embed a base element as a constant.
    pub fn embed(&self, a: &B::El) -> ExtEl<B> {
        if self.0.base.is_zero(a) {
            vec![]
        } else {
            vec![a.clone()]
        }
    }

    /// Project back into the base field when the element is a constant.
    pub fn try_to_base(&self, a: &ExtEl<B>) -> Option<B::El> {
        match a.len() {
            0 => Some(self.0.base.zero()),
            1 => Some(a[0].clone()),
            _ => None,
        }
    }

    fn reduce(&self, mut v: Vec<B::El>) -> ExtEl<B> {
        let b = &self.0.base;
        po::trim(b, &mut v);
        if v.len() > self.0.deg {
            v = po::rem(b, &v, &self.0.modulus).expect("monic modulus");
        }
        v
    }
}

impl<B: FiniteField> ExtField<B> {
    /// The degree-`d` extension of `base` with the canonical modulus: the
    /// first monic irreducible of degree `d` in the graded coefficient-index
    /// order of `least_irreducible`.
    pub fn canonical(base: &B, d: usize, var: &str) -> Result<ExtField<B>> {
        if d == 0 {
            return domain("extension degree must be >= 1");
        }
        let m = least_irreducible(base, d)?;
        ExtField::new(base.clone(), m, var)
    }
}

/// Irreducibility of a monic polynomial over a finite field `B`, via the
/// Frobenius criterion. Powers of `x` by `|B|` are iterated to keep
/// exponents within `u128`.
pub fn irreducible_over<B: FiniteField>(base: &B, m: &[B::El]) -> Result<bool> {
    let d = m.len() - 1;
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let order = base.order();
    let x = vec![base.zero(), base.one()];
    // h_k = x^(|B|^k) mod m
    let mut h = po::rem(base, &x, m)?;
    let mut checkpoints = Vec::new();
    for l in prime_divisors(d) {
        checkpoints.push(d / l);
    }
    for k in 1..=d {
        h = po::pow_mod(base, &h, order, m)?;
        if checkpoints.contains(&k) {
            let diff = po::sub(base, &h, &x);
            let g = po::gcd(base, &diff, m)?;
            if g.len() != 1 {
                return Ok(false);
            }
        }
    }
    let diff = po::sub(base, &h, &x);
    Ok(diff.is_empty())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// The canonical monic irreducible of degree `d`: coefficient-index tuples
/// are searched in graded order (all tuples with indices `< b` before any
/// with an index `b`), so families like `x^d + c` — which can contain no
/// irreducible at all — cannot stall the scan.
fn least_irreducible<B: FiniteField>(base: &B, d: usize) -> Result<Vec<B::El>> {
    if d == 1 {
        // x itself
        return Ok(vec![base.zero(), base.one()]);
    }
    let order = base.order();
    let mut b: u128 = 2;
    loop {
        let total = b.checked_pow(d as u32).ok_or_else(|| {
            crate::error::ForgeError::Budget("irreducible search space overflow".into())
        })?;
        for k in 0..total {
            let mut digits = Vec::with_capacity(d);
            let mut kk = k;
            for _ in 0..d {
                digits.push(kk % b);
                kk /= b;
            }
            if !digits.contains(&(b - 1)) {
                continue; // already covered at a smaller bound
            }
            let mut m: Vec<B::El> = digits.iter().map(|&i| base.el_from_index(i)).collect();
            m.push(base.one());
            if irreducible_over(base, &m)? {
                return Ok(m);
            }
        }
        if b >= order {
            return domain("no irreducible found (impossible)");
        }
        b = (b + 1).min(order);
    }
}

impl<B: Field> Field for ExtField<B> {
    type El = ExtEl<B>;

    fn fq(&self) -> &Fq {
        self.0.base.fq()
    }
    fn zero(&self) -> Self::El {
        vec![]
    }
    fn one(&self) -> Self::El {
        vec![self.0.base.one()]
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.iter().all(|c| self.0.base.is_zero(c))
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        po::add(&self.0.base, a, b)
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        po::neg(&self.0.base, a)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.reduce(po::mul(&self.0.base, a, b))
    }
    fn inv(&self, a: &Self::El) -> Result<Self::El> {
        if self.is_zero(a) {
            return domain("division by zero in extension field");
        }
        let (g, s, _) = po::xgcd(&self.0.base, a, &self.0.modulus)?;
        if g.len() != 1 {
            return domain("element not invertible: modulus not irreducible?");
        }
        let ginv = self.0.base.inv(&g[0])?;
        Ok(self.reduce(po::scale(&self.0.base, &s, &ginv)))
    }
    fn scalar(&self, c: FqEl) -> Self::El {
        self.embed(&self.0.base.scalar(c))
    }
    fn frobenius(&self, a: &Self::El) -> Self::El {
        self.pow(a, self.q() as u128)
    }
    fn format_el(&self, a: &Self::El) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let b = &self.0.base;
        let var = &self.0.var;
        let mut terms = Vec::new();
        for (i, c) in a.iter().enumerate().rev() {
            if b.is_zero(c) {
                continue;
            }
            let cs = b.format_el(c);
            let needs_parens = cs.contains('+') || cs.contains('*') || cs.contains('^');
            let cs = if needs_parens && i > 0 {
                format!("({cs})")
            } else {
                cs
            };
            let t = match i {
                0 => cs,
                1 if cs == "1" => var.clone(),
                1 => format!("{cs}*{var}"),
                _ if cs == "1" => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

impl<B: FiniteField> FiniteField for ExtField<B> {
    fn dim(&self) -> usize {
        self.0.base.dim() * self.0.deg
    }
    fn to_vec(&self, a: &Self::El) -> Vec<FqEl> {
        let b = &self.0.base;
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.0.deg {
            let c = a.get(i).cloned().unwrap_or_else(|| b.zero());
            out.extend(b.to_vec(&c));
        }
        out
    }
    fn from_vec(&self, v: &[FqEl]) -> Self::El {
        let b = &self.0.base;
        let bd = b.dim();
        let mut out = Vec::with_capacity(self.0.deg);
        for i in 0..self.0.deg {
            out.push(b.from_vec(&v[i * bd..(i + 1) * bd]));
        }
        po::trim(b, &mut out);
        out
    }
}
