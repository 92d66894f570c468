//! Rank-r Drinfeld `A`-modules: `phi_T = t + g_1 tau + ... + g_r tau^r`
//! over a coefficient field with structure value `t = gamma(T)`.

use num_bigint::BigUint;

use crate::budget::check_budget;
use crate::error::{domain, ForgeError, Result};
use crate::extfield::{ExtEl, ExtField};
use crate::field::{Field, FiniteField};
use crate::finmod::{fq_nullspace, fq_rank, fq_solve};
use crate::fq::{Fq, FqEl};
use crate::poly::{IdealA, PolyA};
use crate::skew::{kernel_roots, SkewPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldModule<F: Field> {
    pub field: F,
    /// `gamma(T)`
    pub t: F::El,
    /// minimal polynomial of `t` over `F_q`; `None` in generic characteristic
    pub a_char: Option<PolyA>,
    /// `g_1..g_r`
    pub g: Vec<F::El>,
}

impl<F: Field> DrinfeldModule<F> {
    /// A module in generic characteristic (`gamma` injective).
    pub fn new_generic(field: &F, t: &F::El, g: Vec<F::El>) -> Result<DrinfeldModule<F>> {
        Self::build(field, t, g, None)
    }

    /// Assemble a module from raw data, keeping the given `A`-characteristic.
    pub fn from_parts(
        field: &F,
        t: &F::El,
        g: Vec<F::El>,
        a_char: Option<PolyA>,
    ) -> Result<DrinfeldModule<F>> {
        Self::build(field, t, g, a_char)
    }

    fn build(field: &F, t: &F::El, g: Vec<F::El>, a_char: Option<PolyA>) -> Result<DrinfeldModule<F>> {
        if g.is_empty() {
            return domain("rank must be >= 1");
        }
        if field.is_zero(g.last().unwrap()) {
            return domain("leading coefficient g_r must be nonzero");
        }
        Ok(DrinfeldModule {
            field: field.clone(),
            t: t.clone(),
            a_char,
            g,
        })
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn phi_t(&self) -> SkewPoly<F> {
        let mut c = Vec::with_capacity(self.g.len() + 1);
        c.push(self.t.clone());
        c.extend(self.g.iter().cloned());
        SkewPoly::new(&self.field, c)
    }

    /// `phi_a` by Horner's rule in `phi_T`. The zero polynomial maps to the
    /// zero skew polynomial (the zero endomorphism, not an error).
    pub fn phi_a(&self, a: &PolyA) -> Result<SkewPoly<F>> {
        if a.fq != *self.field.fq() {
            return Err(ForgeError::FieldMismatch(
                "polynomial and module have different constant fields".into(),
            ));
        }
        let pt = self.phi_t();
        let mut acc = SkewPoly::zero(&self.field);
        for i in (0..a.c.len()).rev() {
            acc = acc.mul(&pt)?;
            let s = SkewPoly::constant(&self.field, self.field.scalar(a.c[i]));
            acc = acc.add(&s)?;
        }
        Ok(acc)
    }

    /// View the module over an extension of the coefficient field.
    pub fn lift(&self, ext: &ExtField<F>) -> Result<DrinfeldModule<ExtField<F>>> {
        if ext.base() != &self.field {
            return Err(ForgeError::FieldMismatch(
                "extension is not over this coefficient field".into(),
            ));
        }
        Ok(DrinfeldModule {
            field: ext.clone(),
            t: ext.embed(&self.t),
            a_char: self.a_char.clone(),
            g: self.g.iter().map(|x| ext.embed(x)).collect(),
        })
    }

    /// Rank-2 j-invariant `g_1^{q+1} / g_2`.
    pub fn j_invariant(&self) -> Result<F::El> {
        if self.rank() != 2 {
            return domain("j-invariant is defined here for rank 2 only");
        }
        let f = &self.field;
        let num = f.pow(&self.g[0], f.q() as u128 + 1);
        f.div(&num, &self.g[1])
    }
}

impl<F: FiniteField> DrinfeldModule<F> {
    /// A module over a finite `A`-field; records the `A`-characteristic
    /// (the minimal polynomial of `t` over `F_q`).
    pub fn over_finite(field: &F, t: &F::El, g: Vec<F::El>) -> Result<DrinfeldModule<F>> {
        let a_char = min_poly_over_fq(field, t);
        Self::build(field, t, g, Some(a_char))
    }

    pub fn char_poly(&self) -> Result<&PolyA> {
        self.a_char
            .as_ref()
            .ok_or_else(|| ForgeError::Domain("module has generic A-characteristic".into()))
    }

    pub fn torsion_space(&self, n: &IdealA) -> Result<TorsionSpace<F>> {
        TorsionSpace::new(self, n)
    }
}

/// Minimal polynomial of an element of a finite field over `F_q`.
pub fn min_poly_over_fq<F: FiniteField>(field: &F, t: &F::El) -> PolyA {
    let fq = field.fq().clone();
    let dim = field.dim();
    let mut pows: Vec<Vec<FqEl>> = Vec::new();
    let mut cur = field.one();
    for j in 0..=dim {
        pows.push(field.to_vec(&cur));
        // columns t^0..t^j, rows = field coordinates
        let mat: Vec<Vec<FqEl>> = (0..dim)
            .map(|i| (0..=j).map(|k| pows[k][i]).collect())
            .collect();
        let ns = fq_nullspace(&fq, &mat, j + 1);
        if let Some(rel) = ns.first() {
            return PolyA::new(&fq, rel.clone()).monic();
        }
        cur = field.mul(&cur, t);
    }
    unreachable!("t is algebraic of degree <= dim over F_q")
}

/// The full `n`-torsion of a Drinfeld module over a finite `A`-field,
/// with coordinates over `F_q` and the `T`-action matrix.
pub struct TorsionSpace<F: FiniteField> {
    pub phi: DrinfeldModule<F>,
    pub n: IdealA,
    pub ext: ExtField<F>,
    /// extension degree over the base field
    pub d: usize,
    /// `F_q`-basis of `phi[n]` as points of `ext`
    pub basis: Vec<ExtEl<F>>,
    /// matrix with the basis points as columns, in `ext` coordinates
    basis_mat: Vec<Vec<FqEl>>,
    /// matrix of `phi_T` in basis coordinates
    pub t_action: Vec<Vec<FqEl>>,
}

impl<F: FiniteField> TorsionSpace<F> {
    pub fn new(phi: &DrinfeldModule<F>, n: &IdealA) -> Result<TorsionSpace<F>> {
        if n.is_zero() {
            return domain("torsion at the zero ideal");
        }
        let ch = phi.char_poly()?;
        if !n.gen.gcd(ch).is_one() {
            return domain("inseparable torsion: n meets the A-characteristic");
        }
        check_budget(
            n.norm()?
                .checked_pow(phi.rank() as u32)
                .ok_or_else(|| ForgeError::Budget("|n|^r overflows".into()))?,
            "torsion module",
        )?;
        let fq = phi.field.fq().clone();
        let u = phi.phi_a(&n.gen)?;
        let rs = kernel_roots(&u)?;
        let k = rs.basis.len();
        debug_assert_eq!(k, phi.rank() * n.gen.deg()?);
        let ext = rs.ext.clone();
        let basis_mat: Vec<Vec<FqEl>> = rs.basis.iter().map(|b| ext.to_vec(b)).collect();
        // phi_T maps the torsion space to itself; express images in the basis
        let pt = phi.phi_t().lift(&ext)?;
        let dim = ext.dim();
        let solve_mat: Vec<Vec<FqEl>> = (0..dim)
            .map(|i| (0..k).map(|j| basis_mat[j][i]).collect())
            .collect();
        let mut t_cols = Vec::with_capacity(k);
        for b in &rs.basis {
            let img = pt.eval(b);
            let coords = fq_solve(&fq, &solve_mat, &ext.to_vec(&img))
                .ok_or_else(|| ForgeError::Domain("torsion space not T-stable".into()))?;
            t_cols.push(coords);
        }
        let t_action: Vec<Vec<FqEl>> = (0..k)
            .map(|i| (0..k).map(|j| t_cols[j][i]).collect())
            .collect();
        Ok(TorsionSpace {
            phi: phi.clone(),
            n: n.clone(),
            ext,
            d: rs.d,
            basis: rs.basis,
            basis_mat,
            t_action,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.phi.field.q()).pow(self.dim() as u32)
    }

    /// The point with the given coordinates over the torsion basis.
    pub fn point(&self, coords: &[FqEl]) -> ExtEl<F> {
        let fq = self.phi.field.fq();
        let dim = self.ext.dim();
        let mut v = vec![0; dim];
        for (c, b) in coords.iter().zip(&self.basis_mat) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = fq.add(*vi, fq.mul(*c, *bi));
            }
        }
        self.ext.from_vec(&v)
    }

    fn mat_apply(&self, m: &[Vec<FqEl>], v: &[FqEl]) -> Vec<FqEl> {
        let fq = self.phi.field.fq();
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| fq.add(acc, fq.mul(a, b)))
            })
            .collect()
    }

    /// Apply `phi_a` in basis coordinates (via the `T`-action matrix).
    pub fn apply_poly(&self, a: &PolyA, v: &[FqEl]) -> Vec<FqEl> {
        let fq = self.phi.field.fq();
        let k = self.dim();
        let mut acc = vec![0; k];
        let mut cur = v.to_vec();
        for (i, &c) in a.c.iter().enumerate() {
            if i > 0 {
                cur = self.mat_apply(&self.t_action, &cur);
            }
            if c != 0 {
                for (ai, xi) in acc.iter_mut().zip(&cur) {
                    *ai = fq.add(*ai, fq.mul(c, *xi));
                }
            }
        }
        acc
    }

    /// The exact annihilator of `v`: the least monic divisor `d` of `n`
    /// with `phi_d(v) = 0`.
    pub fn order_of(&self, v: &[FqEl]) -> PolyA {
        for d in self.n.gen.monic_divisors().unwrap() {
            if self.apply_poly(&d, v).iter().all(|&c| c == 0) {
                return d;
            }
        }
        unreachable!("n annihilates the n-torsion")
    }

    /// `F_q`-coordinate rows spanning the `A`-orbit of `v`.
    fn orbit_rows(&self, v: &[FqEl]) -> Vec<Vec<FqEl>> {
        let dn = self.n.gen.deg().unwrap();
        let mut rows = Vec::with_capacity(dn);
        let mut cur = v.to_vec();
        for i in 0..dn {
            if i > 0 {
                cur = self.mat_apply(&self.t_action, &cur);
            }
            rows.push(cur.clone());
        }
        rows
    }

    /// `r` generators of `phi[n]` as a free `A/n`-module, in coordinates.
    pub fn generators(&self) -> Result<Vec<Vec<FqEl>>> {
        let fq = self.phi.field.fq().clone();
        let r = self.phi.rank();
        let k = self.dim();
        let dn = self.n.gen.deg()?;
        let q = fq.q() as u128;
        let total = q.pow(k as u32);
        let maximal: Vec<PolyA> = self
            .n
            .gen
            .factor()?
            .iter()
            .map(|(p, _)| self.n.gen.divexact(p).unwrap())
            .collect();
        let mut gens: Vec<Vec<FqEl>> = Vec::new();
        let mut span_rows: Vec<Vec<FqEl>> = Vec::new();
        for code in 0..total {
            if gens.len() == r {
                break;
            }
            let mut v = vec![0; k];
            let mut c = code;
            for vi in v.iter_mut() {
                *vi = (c % q) as FqEl;
                c /= q;
            }
            // exact order n: phi_{n/p}(v) != 0 for every prime p | n
            if !maximal
                .iter()
                .all(|m| self.apply_poly(m, &v).iter().any(|&x| x != 0))
            {
                continue;
            }
            let mut cand_rows = span_rows.clone();
            cand_rows.extend(self.orbit_rows(&v));
            if fq_rank(&fq, &cand_rows) == (gens.len() + 1) * dn {
                span_rows = cand_rows;
                gens.push(v);
            }
        }
        if gens.len() != r {
            return domain("torsion module is not free of full rank");
        }
        Ok(gens)
    }

    /// The generators as points of the extension field.
    pub fn basis_points(&self) -> Result<Vec<ExtEl<F>>> {
        Ok(self.generators()?.iter().map(|v| self.point(v)).collect())
    }
}

/// Restriction of scalars along `T -> g(y)`: the rank-`r' deg(g)` module
/// with `phi_T = phi'_{g(y)}`.
pub fn restrict_scalars<F: Field>(
    phi2: &DrinfeldModule<F>,
    g: &PolyA,
) -> Result<DrinfeldModule<F>> {
    if g.is_zero() || g.is_constant() {
        return domain("embedding T -> g(y) needs deg g >= 1");
    }
    let pt = phi2.phi_a(g)?;
    let t = pt.coeff(0);
    let coeffs: Vec<F::El> = pt.c[1..].to_vec();
    DrinfeldModule::build(&phi2.field, &t, coeffs, phi2.a_char.clone())
}

// ---------------------------------------------------------------------------
// characteristic polynomial of multiplication by a(y) on F_q[y]/(g(y) - T)

/// polynomial in X with coefficients in A = F_q[T]
type XPoly = Vec<PolyA>;

fn xp_trim(v: &mut XPoly) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn xp_mul(a: &XPoly, b: &XPoly, fq: &Fq) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![PolyA::zero(fq); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    xp_trim(&mut out);
    out
}

fn xp_add(a: &XPoly, b: &XPoly, fq: &Fq) -> XPoly {
    let n = a.len().max(b.len());
    let zero = PolyA::zero(fq);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.add(y));
    }
    xp_trim(&mut out);
    out
}

fn xp_sub(a: &XPoly, b: &XPoly, fq: &Fq) -> XPoly {
    let n = a.len().max(b.len());
    let zero = PolyA::zero(fq);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    xp_trim(&mut out);
    out
}

/// Laplace expansion along the first column (matrices here are tiny).
fn xp_det(m: &[Vec<XPoly>], fq: &Fq) -> XPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det: XPoly = vec![];
    for i in 0..n {
        if m[i][0].is_empty() {
            continue;
        }
        let minor: Vec<Vec<XPoly>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| m[r][1..].to_vec())
            .collect();
        let term = xp_mul(&m[i][0], &xp_det(&minor, fq), fq);
        det = if i % 2 == 0 {
            xp_add(&det, &term, fq)
        } else {
            xp_sub(&det, &term, fq)
        };
    }
    det
}

/// Coefficients `b_0..b_k` (in `A`) of the characteristic polynomial `f(X)`
/// of multiplication by `a(y)` on `F_q[y]/(g(y) - T)` over `A = F_q[T]`.
/// `f` is monic of degree `k = deg g` and is a power of the minimal
/// polynomial of `a(y)` over `K`.
pub fn min_poly_coeffs(g: &PolyA, a: &PolyA) -> Result<Vec<PolyA>> {
    let fq = g.fq.clone();
    if g.is_zero() || g.is_constant() {
        return domain("embedding needs deg g >= 1");
    }
    let k = g.deg()?;
    let lead_inv = fq.inv(g.lead())?;
    // m(y) = g(y) - T with coefficients in A, reduced monic
    let tvar = PolyA::var(&fq);
    let mut m: Vec<PolyA> = (0..=k).map(|i| PolyA::constant(&fq, g.coeff(i))).collect();
    m[0] = m[0].sub(&tvar);
    let m: Vec<PolyA> = m.iter().map(|c| c.scale(lead_inv)).collect();
    // reduce a y-polynomial with A-coefficients mod m
    let reduce = |mut v: Vec<PolyA>| -> Vec<PolyA> {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
        while v.len() > k {
            let lead = v.pop().unwrap();
            let shift = v.len() - k;
            for (j, mj) in m.iter().take(k).enumerate() {
                v[shift + j] = v[shift + j].sub(&lead.mul(mj));
            }
            while v.last().map(|c| c.is_zero()).unwrap_or(false) {
                v.pop();
            }
        }
        v.resize(k, PolyA::zero(&fq));
        v
    };
    // columns of the multiplication-by-a matrix
    let a_vec: Vec<PolyA> = a.c.iter().map(|&c| PolyA::constant(&fq, c)).collect();
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let mut prod = vec![PolyA::zero(&fq); a_vec.len() + i];
        for (j, c) in a_vec.iter().enumerate() {
            prod[i + j] = c.clone();
        }
        cols.push(reduce(prod));
    }
    // XI - M
    let xmat: Vec<Vec<XPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let mut e: XPoly = vec![cols[j][i].neg()];
                    if i == j {
                        e.push(PolyA::one(&fq));
                    }
                    xp_trim(&mut e);
                    e
                })
                .collect()
        })
        .collect();
    let mut det = xp_det(&xmat, &fq);
    det.resize(k + 1, PolyA::zero(&fq));
    Ok(det)
}

/// Check the identity `0 = f^phi(phi_a) = sum_i phi_{b_i} phi_a^i` for the
/// restriction of `phi2` along `T -> g(y)`, where `f = sum b_i X^i` is the
/// characteristic polynomial of `a(y)` over `A`.
pub fn verify_min_poly_identity<F: Field>(
    phi2: &DrinfeldModule<F>,
    g: &PolyA,
    a: &PolyA,
) -> Result<bool> {
    let phi = restrict_scalars(phi2, g)?;
    let b = min_poly_coeffs(g, a)?;
    let pa = phi2.phi_a(a)?;
    let mut acc = SkewPoly::zero(&phi2.field);
    for bi in b.iter().rev() {
        acc = acc.mul(&pa)?;
        acc = acc.add(&phi.phi_a(bi)?)?;
    }
    Ok(acc.is_zero())
}
