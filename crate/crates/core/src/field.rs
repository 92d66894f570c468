//! Field abstractions.
//!
//! A [`Field`] is a coefficient field for twisted polynomials: it knows its
//! constant field `F_q` and carries the `q`-power Frobenius (the `tau`
//! action). Contexts are cheap to clone; elements carry no back-reference,
//! so all operations go through the context.
//!
//! [`FiniteField`] adds an `F_q`-basis, which powers the linear algebra in
//! kernel and torsion computations. The `A`-field structure (the value
//! `gamma(T)` and the `A`-characteristic) lives in the wrapper [`AExt`].

use crate::error::{domain, Result};
use crate::fq::{Fq, FqEl};
use crate::poly::PolyA;

pub trait Field: Clone + PartialEq {
    type El: Clone + PartialEq + std::fmt::Debug;

    fn fq(&self) -> &Fq;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Result<Self::El>;
    /// Embed a constant of `F_q`.
    fn scalar(&self, c: FqEl) -> Self::El;
    /// The q-power Frobenius `a -> a^q` (the action of `tau` on coefficients).
    fn frobenius(&self, a: &Self::El) -> Self::El;
    fn format_el(&self, a: &Self::El) -> String;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::El, b: &Self::El) -> Result<Self::El> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn q(&self) -> u64 {
        self.fq().q()
    }
    fn pow(&self, a: &Self::El, mut n: u128) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
    /// `a^(q^k)`.
    fn frobenius_iter(&self, a: &Self::El, k: usize) -> Self::El {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frobenius(&x);
        }
        x
    }
}

/// A finite field, seen as an `F_q`-vector space with a canonical basis.
pub trait FiniteField: Field {
    /// `[F : F_q]`.
    fn dim(&self) -> usize;
    fn to_vec(&self, a: &Self::El) -> Vec<FqEl>;
    fn from_vec(&self, v: &[FqEl]) -> Self::El;

    fn order(&self) -> u128 {
        (self.q() as u128).pow(self.dim() as u32)
    }
    /// Canonical index of an element (mixed radix over the `F_q`-basis).
    fn index_of(&self, a: &Self::El) -> u128 {
        let q = self.q() as u128;
        let mut idx = 0u128;
        for c in self.to_vec(a).iter().rev() {
            idx = idx * q + *c as u128;
        }
        idx
    }
    fn el_from_index(&self, mut idx: u128) -> Self::El {
        let q = self.q() as u128;
        let mut v = vec![0u64; self.dim()];
        for c in v.iter_mut() {
            *c = (idx % q) as u64;
            idx /= q;
        }
        self.from_vec(&v)
    }
    /// Inverse Frobenius: the unique q-th root.
    fn frobenius_inv(&self, a: &Self::El) -> Self::El {
        // Frobenius has order dim on F, so its inverse is frobenius^(dim-1)
        self.frobenius_iter(a, self.dim() - 1)
    }
}

impl Field for Fq {
    type El = FqEl;

    fn fq(&self) -> &Fq {
        self
    }
    fn zero(&self) -> FqEl {
        0
    }
    fn one(&self) -> FqEl {
        1
    }
    fn is_zero(&self, a: &FqEl) -> bool {
        *a == 0
    }
    fn add(&self, a: &FqEl, b: &FqEl) -> FqEl {
        Fq::add(self, *a, *b)
    }
    fn neg(&self, a: &FqEl) -> FqEl {
        Fq::neg(self, *a)
    }
    fn mul(&self, a: &FqEl, b: &FqEl) -> FqEl {
        Fq::mul(self, *a, *b)
    }
    fn inv(&self, a: &FqEl) -> Result<FqEl> {
        Fq::inv(self, *a)
    }
    fn scalar(&self, c: FqEl) -> FqEl {
        c
    }
    fn frobenius(&self, a: &FqEl) -> FqEl {
        Fq::pow(self, *a, self.q())
    }
    fn format_el(&self, a: &FqEl) -> String {
        format!("{a}")
    }
}

impl FiniteField for Fq {
    fn dim(&self) -> usize {
        1
    }
    fn to_vec(&self, a: &FqEl) -> Vec<FqEl> {
        vec![*a]
    }
    fn from_vec(&self, v: &[FqEl]) -> FqEl {
        v[0]
    }
}

/// A field together with an `A = F_q[T]` structure: the value `t = gamma(T)`
/// and, for finite fields, the `A`-characteristic (minimal polynomial of `t`).
#[derive(Clone, PartialEq, Debug)]
pub struct AExt<F: Field> {
    pub base: F,
    pub t: F::El,
    /// Minimal polynomial of `t` over `F_q`; `None` in generic characteristic.
    pub a_char: Option<PolyA>,
}

impl<F: Field> AExt<F> {
    pub fn generic(base: F, t: F::El) -> Self {
        AExt {
            base,
            t,
            a_char: None,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.a_char.is_none()
    }

    /// The characteristic ideal generator; errors in generic characteristic.
    pub fn char_poly(&self) -> Result<&PolyA> {
        match &self.a_char {
            Some(p) => Ok(p),
            None => domain("field has generic A-characteristic"),
        }
    }
}

impl<F: Field> Field for AExt<F> {
    type El = F::El;

    fn fq(&self) -> &Fq {
        self.base.fq()
    }
    fn zero(&self) -> F::El {
        self.base.zero()
    }
    fn one(&self) -> F::El {
        self.base.one()
    }
    fn is_zero(&self, a: &F::El) -> bool {
        self.base.is_zero(a)
    }
    fn add(&self, a: &F::El, b: &F::El) -> F::El {
        self.base.add(a, b)
    }
    fn neg(&self, a: &F::El) -> F::El {
        self.base.neg(a)
    }
    fn mul(&self, a: &F::El, b: &F::El) -> F::El {
        self.base.mul(a, b)
    }
    fn inv(&self, a: &F::El) -> Result<F::El> {
        self.base.inv(a)
    }
    fn scalar(&self, c: FqEl) -> F::El {
        self.base.scalar(c)
    }
    fn frobenius(&self, a: &F::El) -> F::El {
        self.base.frobenius(a)
    }
    fn format_el(&self, a: &F::El) -> String {
        self.base.format_el(a)
    }
}
