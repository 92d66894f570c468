//! `K = F_q(T)`: reduced rational functions, and `K` as a coefficient field.

use crate::error::{domain, Result};
use crate::field::Field;
use crate::fq::{Fq, FqEl};
use crate::poly::PolyA;

/// A rational function, always reduced: monic nonzero denominator,
/// `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: PolyA,
    pub den: PolyA,
}

impl RatFunc {
    pub fn new(num: PolyA, den: PolyA) -> Result<RatFunc> {
        if den.is_zero() {
            return domain("rational function with zero denominator");
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyA, den: PolyA) -> RatFunc {
        let fq = num.fq.clone();
        if num.is_zero() {
            return RatFunc {
                num: PolyA::zero(&fq),
                den: PolyA::one(&fq),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.divexact(&g).unwrap();
        let mut den = den.divexact(&g).unwrap();
        let linv = fq.inv(den.lead()).unwrap();
        num = num.scale(linv);
        den = den.scale(linv);
        RatFunc { num, den }
    }

    pub fn from_poly(p: PolyA) -> RatFunc {
        let one = PolyA::one(&p.fq);
        RatFunc { num: p, den: one }
    }

    pub fn zero(fq: &Fq) -> RatFunc {
        RatFunc::from_poly(PolyA::zero(fq))
    }

    pub fn one(fq: &Fq) -> RatFunc {
        RatFunc::from_poly(PolyA::one(fq))
    }

    pub fn var(fq: &Fq) -> RatFunc {
        RatFunc::from_poly(PolyA::var(fq))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Result<&PolyA> {
        if self.is_poly() {
            Ok(&self.num)
        } else {
            domain("rational function is not a polynomial")
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        Self::reduce(num, den)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return domain("inverse of zero rational function");
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn pow_i(&self, n: i64) -> Result<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one(&self.num.fq);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_poly() {
            self.num.to_text(var)
        } else {
            format!("({})/({})", self.num.to_text(var), self.den.to_text(var))
        }
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("T"))
    }
}

/// `K = F_q(T)` as a coefficient field (generic characteristic).
#[derive(Clone, Debug)]
pub struct KField {
    pub fq: Fq,
    pub var: String,
}

impl KField {
    pub fn new(fq: &Fq) -> KField {
        KField {
            fq: fq.clone(),
            var: "T".into(),
        }
    }

    pub fn with_var(fq: &Fq, var: &str) -> KField {
        KField {
            fq: fq.clone(),
            var: var.into(),
        }
    }

    pub fn gen(&self) -> RatFunc {
        RatFunc::var(&self.fq)
    }
}

impl PartialEq for KField {
    fn eq(&self, other: &Self) -> bool {
        self.fq == other.fq
    }
}

impl Field for KField {
    type El = RatFunc;

    fn fq(&self) -> &Fq {
        &self.fq
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.fq)
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(&self.fq)
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        a.inv()
    }
    fn scalar(&self, c: FqEl) -> RatFunc {
        RatFunc::from_poly(PolyA::constant(&self.fq, c))
    }
    fn frobenius(&self, a: &RatFunc) -> RatFunc {
        self.pow(a, self.fq.q() as u128)
    }
    fn format_el(&self, a: &RatFunc) -> String {
        a.to_text(&self.var)
    }
}
