//! The twisted polynomial ring `L{tau}` with the commutation rule
//! `tau * b = b^q * tau`.
//!
//! Elements are stored as `c_0 + c_1 tau + ... + c_m tau^m` over a
//! coefficient [`Field`]. Right division needs no q-th roots, so it works
//! over every supported coefficient field; root spaces of separable skew
//! polynomials are computed by `F_q`-linear algebra over an extension tower.

use crate::budget::budget;
use crate::error::{domain, Result};
use crate::extfield::{ExtEl, ExtField};
use crate::field::{Field, FiniteField};
use crate::finmod::fq_nullspace;

#[derive(Clone, Debug, PartialEq)]
pub struct SkewPoly<F: Field> {
    pub field: F,
    /// coefficients `c_0..c_m`, no trailing zeros
    pub c: Vec<F::El>,
}

impl<F: Field> SkewPoly<F> {
    pub fn new(field: &F, mut c: Vec<F::El>) -> SkewPoly<F> {
        while c.last().map(|x| field.is_zero(x)).unwrap_or(false) {
            c.pop();
        }
        SkewPoly {
            field: field.clone(),
            c,
        }
    }

    pub fn zero(field: &F) -> SkewPoly<F> {
        SkewPoly::new(field, vec![])
    }

    /// The identity map `1`.
    pub fn one(field: &F) -> SkewPoly<F> {
        SkewPoly::new(field, vec![field.one()])
    }

    pub fn constant(field: &F, c: F::El) -> SkewPoly<F> {
        SkewPoly::new(field, vec![c])
    }

    pub fn tau(field: &F) -> SkewPoly<F> {
        SkewPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_tau(&self) -> Result<usize> {
        if self.c.is_empty() {
            domain("tau-degree of the zero skew polynomial")
        } else {
            Ok(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> F::El {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lead(&self) -> Result<&F::El> {
        self.c
            .last()
            .ok_or_else(|| crate::error::ForgeError::Domain("zero skew polynomial".into()))
    }

    fn check_field(&self, o: &SkewPoly<F>) -> Result<()> {
        if self.field != o.field {
            return Err(crate::error::ForgeError::FieldMismatch(
                "skew polynomials over different coefficient fields".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.check_field(o)?;
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(&self.coeff(i), &o.coeff(i)));
        }
        Ok(SkewPoly::new(f, out))
    }

    pub fn neg(&self) -> SkewPoly<F> {
        let f = &self.field;
        SkewPoly::new(f, self.c.iter().map(|x| f.neg(x)).collect())
    }

    pub fn sub(&self, o: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.add(&o.neg())
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, c: &F::El) -> SkewPoly<F> {
        let f = &self.field;
        SkewPoly::new(f, self.c.iter().map(|x| f.mul(c, x)).collect())
    }

    /// The ring product: `(a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}`.
    pub fn mul(&self, o: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.check_field(o)?;
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return Ok(SkewPoly::zero(f));
        }
        let mut out = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            // twist o's coefficients by Frobenius^i as we go
            let mut b = o.c.clone();
            for x in b.iter_mut() {
                *x = f.frobenius_iter(x, i);
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, y));
            }
        }
        Ok(SkewPoly::new(f, out))
    }

    pub fn pow(&self, n: usize) -> Result<SkewPoly<F>> {
        let mut acc = SkewPoly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Right division: `self = s * u + rem` with `deg_tau rem < deg_tau u`.
    ///
    /// The leading coefficient of each quotient term is
    /// `w_{k+m} / u_m^{q^k}`, so no q-th roots are ever required.
    pub fn right_divmod(&self, u: &SkewPoly<F>) -> Result<(SkewPoly<F>, SkewPoly<F>)> {
        self.check_field(u)?;
        if u.is_zero() {
            return domain("skew division by zero");
        }
        let f = &self.field;
        let m = u.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= m {
            return Ok((SkewPoly::zero(f), SkewPoly::new(f, r)));
        }
        let mut s = vec![f.zero(); r.len() - m];
        while r.len() > m {
            let k = r.len() - 1 - m;
            let lead_k = f.frobenius_iter(u.c.last().unwrap(), k);
            let sk = f.div(r.last().unwrap(), &lead_k)?;
            s[k] = sk.clone();
            for (j, uj) in u.c.iter().enumerate() {
                let t = f.mul(&sk, &f.frobenius_iter(uj, k));
                r[k + j] = f.sub(&r[k + j], &t);
            }
            while r.last().map(|x| f.is_zero(x)).unwrap_or(false) {
                r.pop();
            }
        }
        Ok((SkewPoly::new(f, s), SkewPoly::new(f, r)))
    }

    /// Evaluate as an F_q-linear map: `x -> sum c_i x^{q^i}`.
    pub fn eval(&self, x: &F::El) -> F::El {
        let f = &self.field;
        let mut acc = f.zero();
        let mut xq = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xq = f.frobenius(&xq);
            }
            if !f.is_zero(c) {
                acc = f.add(&acc, &f.mul(c, &xq));
            }
        }
        acc
    }

    /// View the same skew polynomial over an extension of the coefficient
    /// field (so it can be evaluated at points of the extension).
    pub fn lift(&self, ext: &ExtField<F>) -> Result<SkewPoly<ExtField<F>>> {
        if ext.base() != &self.field {
            return Err(crate::error::ForgeError::FieldMismatch(
                "extension is not over this coefficient field".into(),
            ));
        }
        Ok(SkewPoly::new(
            ext,
            self.c.iter().map(|c| ext.embed(c)).collect(),
        ))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.format_el(c);
            let needs_parens = cs.contains('+') || cs.contains('-') || cs.contains('/');
            let cs = if needs_parens && i > 0 {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match i {
                0 => cs,
                1 if cs == "1" => "tau".into(),
                1 => format!("{cs}*tau"),
                _ if cs == "1" => format!("tau^{i}"),
                _ => format!("{cs}*tau^{i}"),
            });
        }
        terms.join("+")
    }
}

/// The root space of a separable skew polynomial: the smallest extension
/// `L_d / L` containing all `q^m` roots, with an `F_q`-basis of the space.
#[derive(Clone, Debug)]
pub struct RootSpace<L: FiniteField> {
    pub ext: ExtField<L>,
    pub d: usize,
    pub basis: Vec<ExtEl<L>>,
}

/// Find the root space of `u` over extensions of its (finite) coefficient
/// field. Errors when `u` is inseparable (`c_0 = 0`) or the search outgrows
/// the enumeration budget.
pub fn kernel_roots<L: FiniteField>(u: &SkewPoly<L>) -> Result<RootSpace<L>> {
    if u.is_zero() {
        return domain("kernel of the zero skew polynomial");
    }
    if u.field.is_zero(&u.c[0]) {
        return domain("inseparable skew polynomial: constant coefficient c_0 = 0");
    }
    let m = u.c.len() - 1;
    let l = &u.field;
    let fq = l.fq().clone();
    for d in 1.. {
        let dim = l.dim() * d;
        // the Gaussian elimination is cubic in the F_q-dimension
        if (dim as u128).pow(3) > budget() {
            return Err(crate::error::ForgeError::Budget(format!(
                "root space of tau-degree {m} not found within extension degree {}",
                d - 1
            )));
        }
        let ext = ExtField::canonical(l, d, "u")?;
        let ul = u.lift(&ext)?;
        // matrix of x -> u(x) over the F_q-basis of the extension, columns
        // indexed by basis vectors
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut v = vec![0; dim];
            v[j] = 1;
            let img = ul.eval(&ext.from_vec(&v));
            cols.push(ext.to_vec(&img));
        }
        let rows: Vec<Vec<u64>> = (0..dim).map(|i| (0..dim).map(|j| cols[j][i]).collect()).collect();
        let ns = fq_nullspace(&fq, &rows, dim);
        if ns.len() == m {
            let basis = ns.iter().map(|v| ext.from_vec(v)).collect();
            return Ok(RootSpace { ext, d, basis });
        }
        debug_assert!(ns.len() < m);
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Fq;
    use crate::poly::PolyA;
    use crate::ratfunc::{KField, RatFunc};

    #[test]
    fn tau_times_constant_twists() {
        // tau * c = c^q * tau
        let k = KField::with_var(&Fq::new(3).unwrap(), "y");
        let y = k.gen();
        let tau = SkewPoly::tau(&k);
        let c = SkewPoly::constant(&k, y.clone());
        let prod = tau.mul(&c).unwrap();
        let yq = k.pow(&y, 3);
        assert_eq!(prod, SkewPoly::new(&k, vec![k.zero(), yq]));
    }

    #[test]
    fn carlitz_square() {
        // (y + tau)^2 = y^2 + (y + y^q) tau + tau^2
        let fq = Fq::new(3).unwrap();
        let k = KField::with_var(&fq, "y");
        let y = k.gen();
        let u = SkewPoly::new(&k, vec![y.clone(), k.one()]);
        let sq = u.mul(&u).unwrap();
        let expected = SkewPoly::new(
            &k,
            vec![k.mul(&y, &y), k.add(&y, &k.pow(&y, 3)), k.one()],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn mul_by_zero() {
        let k = KField::new(&Fq::new(2).unwrap());
        let u = SkewPoly::new(&k, vec![k.gen(), k.one()]);
        assert!(u.mul(&SkewPoly::zero(&k)).unwrap().is_zero());
    }

    #[test]
    fn right_divmod_reconstructs() {
        let fq = Fq::new(3).unwrap();
        let k = KField::with_var(&fq, "y");
        let y = k.gen();
        let u = SkewPoly::new(&k, vec![y.clone(), k.one()]);
        let w = u.mul(&u).unwrap();
        let (s, r) = w.right_divmod(&u).unwrap();
        assert!(r.is_zero());
        assert_eq!(s, u);
        // tau^2 + c = tau * tau + c
        let c = RatFunc::from_poly(PolyA::constant(&fq, 2));
        let w2 = SkewPoly::new(&k, vec![c.clone(), k.zero(), k.one()]);
        let tau = SkewPoly::tau(&k);
        let (s2, r2) = w2.right_divmod(&tau).unwrap();
        assert_eq!(s2, tau);
        assert_eq!(r2, SkewPoly::constant(&k, c));
        // reconstruction on a messier pair
        let w3 = SkewPoly::new(&k, vec![y.clone(), k.pow(&y, 2), k.one(), y.clone()]);
        let (s3, r3) = w3.right_divmod(&u).unwrap();
        let back = s3.mul(&u).unwrap().add(&r3).unwrap();
        assert_eq!(back, w3);
    }

    #[test]
    fn eval_composes() {
        let fq = Fq::new(3).unwrap();
        let l = crate::extfield::ExtField::canonical(&fq, 2, "w").unwrap();
        let u = SkewPoly::new(&l, vec![l.el_from_index(4), l.one()]);
        let v = SkewPoly::new(&l, vec![l.el_from_index(2), l.el_from_index(7), l.one()]);
        let uv = u.mul(&v).unwrap();
        for i in 0..9u128 {
            let x = l.el_from_index(i);
            assert_eq!(uv.eval(&x), u.eval(&v.eval(&x)));
        }
    }

    #[test]
    fn eval_is_linear() {
        let fq = Fq::new(3).unwrap();
        let l = crate::extfield::ExtField::canonical(&fq, 2, "w").unwrap();
        let u = SkewPoly::new(&l, vec![l.el_from_index(5), l.el_from_index(3), l.one()]);
        for i in 0..9u128 {
            for j in 0..9u128 {
                let (a, b) = (l.el_from_index(i), l.el_from_index(j));
                assert_eq!(u.eval(&l.add(&a, &b)), l.add(&u.eval(&a), &u.eval(&b)));
            }
        }
        assert!(l.is_zero(&u.eval(&l.zero())));
    }

    #[test]
    fn kernel_roots_dimension_one() {
        // t*x + x^q = 0 has a 1-dimensional root space
        let fq = Fq::new(3).unwrap();
        let l = crate::extfield::ExtField::canonical(&fq, 2, "w").unwrap();
        let t = l.gen();
        let u = SkewPoly::new(&l, vec![t, l.one()]);
        let rs = kernel_roots(&u).unwrap();
        assert_eq!(rs.basis.len(), 1);
        let lifted = u.lift(&rs.ext).unwrap();
        for b in &rs.basis {
            assert!(rs.ext.is_zero(&lifted.eval(b)));
            assert!(!rs.ext.is_zero(b));
        }
    }

    #[test]
    fn kernel_roots_inseparable_errors() {
        let fq = Fq::new(3).unwrap();
        let tau = SkewPoly::tau(&fq);
        assert!(kernel_roots(&tau).is_err());
    }

    #[test]
    fn kernel_roots_dimension_two() {
        // x^9 - x over L = F_9 (q = 3): root space is all of F_9, dim 2
        let fq = Fq::new(3).unwrap();
        let l = crate::extfield::ExtField::canonical(&fq, 2, "w").unwrap();
        let u = SkewPoly::new(&l, vec![l.neg(&l.one()), l.zero(), l.one()]);
        let rs = kernel_roots(&u).unwrap();
        assert_eq!((rs.d, rs.basis.len()), (1, 2));
        let lifted = u.lift(&rs.ext).unwrap();
        for b in &rs.basis {
            assert!(rs.ext.is_zero(&lifted.eval(b)));
        }
    }

    #[test]
    fn degree_adds_under_mul() {
        let k = KField::new(&Fq::new(2).unwrap());
        let u = SkewPoly::new(&k, vec![k.one(), k.gen(), k.one()]);
        let v = SkewPoly::new(&k, vec![k.gen(), k.one()]);
        assert_eq!(u.mul(&v).unwrap().deg_tau().unwrap(), 3);
    }

    #[test]
    fn text_output() {
        let fq = Fq::new(3).unwrap();
        let k = KField::with_var(&fq, "y");
        let y = k.gen();
        let u = SkewPoly::new(
            &k,
            vec![k.mul(&y, &y), k.add(&y, &k.pow(&y, 3)), k.one()],
        );
        assert_eq!(u.to_text(), "y^2+(y^3+y)*tau+tau^2");
    }
}
