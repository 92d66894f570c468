//! `A = F_q[T]`: polynomials, ideals, factorization and irreducible
//! enumeration.

use crate::budget::check_budget;
use crate::error::{domain, ForgeError, Result};
use crate::field::Field;
use crate::fq::{Fq, FqEl};
use crate::polyops as po;

/// An element of `A = F_q[T]`. Coefficients `c_0..c_d`, no trailing zeros.
#[derive(Clone, Debug)]
pub struct PolyA {
    pub fq: Fq,
    pub c: Vec<FqEl>,
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        self.fq == other.fq && self.c == other.c
    }
}
impl Eq for PolyA {}

impl PartialOrd for PolyA {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PolyA {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl std::hash::Hash for PolyA {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PolyA {
    pub fn new(fq: &Fq, mut c: Vec<FqEl>) -> PolyA {
        po::trim(fq, &mut c);
        PolyA { fq: fq.clone(), c }
    }

    pub fn zero(fq: &Fq) -> PolyA {
        PolyA {
            fq: fq.clone(),
            c: vec![],
        }
    }

    pub fn one(fq: &Fq) -> PolyA {
        PolyA {
            fq: fq.clone(),
            c: vec![1],
        }
    }

    pub fn constant(fq: &Fq, c: FqEl) -> PolyA {
        PolyA::new(fq, vec![c])
    }

    /// The indeterminate `T`.
    pub fn var(fq: &Fq) -> PolyA {
        PolyA {
            fq: fq.clone(),
            c: vec![0, 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Polynomial degree; errors on zero (`deg(a) = log_q |aA|` needs `a != 0`).
    pub fn deg(&self) -> Result<usize> {
        if self.is_zero() {
            return domain("deg of the zero polynomial");
        }
        Ok(self.c.len() - 1)
    }

    /// Degree with `deg 0 = -1` convention, for internal loops.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> FqEl {
        *self.c.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn coeff(&self, i: usize) -> FqEl {
        *self.c.get(i).unwrap_or(&0)
    }

    fn sort_key(&self) -> (usize, Vec<FqEl>) {
        let mut rev = self.c.clone();
        rev.reverse();
        (self.c.len(), rev)
    }

    pub fn add(&self, o: &PolyA) -> PolyA {
        PolyA::new(&self.fq, po::add(&self.fq, &self.c, &o.c))
    }
    pub fn sub(&self, o: &PolyA) -> PolyA {
        PolyA::new(&self.fq, po::sub(&self.fq, &self.c, &o.c))
    }
    pub fn neg(&self) -> PolyA {
        PolyA::new(&self.fq, po::neg(&self.fq, &self.c))
    }
    pub fn mul(&self, o: &PolyA) -> PolyA {
        PolyA::new(&self.fq, po::mul(&self.fq, &self.c, &o.c))
    }
    pub fn scale(&self, c: FqEl) -> PolyA {
        PolyA::new(&self.fq, po::scale(&self.fq, &self.c, &c))
    }
    pub fn pow(&self, n: usize) -> PolyA {
        let mut acc = PolyA::one(&self.fq);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divmod(&self, o: &PolyA) -> Result<(PolyA, PolyA)> {
        let (q, r) = po::divmod(&self.fq, &self.c, &o.c)?;
        Ok((PolyA::new(&self.fq, q), PolyA::new(&self.fq, r)))
    }

    pub fn rem(&self, o: &PolyA) -> Result<PolyA> {
        Ok(self.divmod(o)?.1)
    }

    pub fn divexact(&self, o: &PolyA) -> Result<PolyA> {
        let (q, r) = self.divmod(o)?;
        if !r.is_zero() {
            return domain("inexact polynomial division");
        }
        Ok(q)
    }

    pub fn divides(&self, o: &PolyA) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> PolyA {
        match po::monic(&self.fq, &self.c) {
            Some(v) => PolyA::new(&self.fq, v),
            None => PolyA::zero(&self.fq),
        }
    }

    pub fn gcd(&self, o: &PolyA) -> PolyA {
        PolyA::new(&self.fq, po::gcd(&self.fq, &self.c, &o.c).expect("gcd over a field"))
    }

    pub fn lcm(&self, o: &PolyA) -> PolyA {
        if self.is_zero() || o.is_zero() {
            return PolyA::zero(&self.fq);
        }
        self.mul(o).divexact(&self.gcd(o)).unwrap().monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*o`, `g` monic.
    pub fn xgcd(&self, o: &PolyA) -> (PolyA, PolyA, PolyA) {
        let fq = &self.fq;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyA::one(fq), PolyA::zero(fq));
        let (mut t0, mut t1) = (PolyA::zero(fq), PolyA::one(fq));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).unwrap();
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let linv = fq.inv(r0.lead()).unwrap();
        (r0.scale(linv), s0.scale(linv), t0.scale(linv))
    }

    pub fn eval(&self, x: FqEl) -> FqEl {
        po::eval(&self.fq, &self.c, &x)
    }

    /// Evaluate in any field containing `F_q` (coefficients embedded via `scalar`).
    pub fn eval_in<F: Field>(&self, f: &F, x: &F::El) -> F::El {
        let mut acc = f.zero();
        for c in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, x), &f.scalar(*c));
        }
        acc
    }

    pub fn derivative(&self) -> PolyA {
        PolyA::new(&self.fq, po::derivative(&self.fq, &self.c))
    }

    /// Exact p-th root of a polynomial in `F_q[T^p]`.
    fn pth_root(&self) -> Result<PolyA> {
        let p = self.fq.p() as usize;
        let e = self.fq.e() as u32;
        let mut out = Vec::new();
        for (i, &c) in self.c.iter().enumerate() {
            if i % p == 0 {
                // c^(1/p) = c^(p^(e-1)) in F_{p^e}
                let root = self.fq.pow(c, self.fq.p().pow(e - 1));
                out.push(root);
            } else if c != 0 {
                return domain("polynomial is not a p-th power");
            }
        }
        Ok(PolyA::new(&self.fq, out))
    }

    /// Irreducibility by the standard Frobenius/gcd criterion.
    pub fn is_irreducible(&self) -> bool {
        if self.is_zero() || self.is_constant() {
            return false;
        }
        let n = self.c.len() - 1;
        if n == 1 {
            return true;
        }
        let fq = &self.fq;
        let m = self.monic();
        let q = fq.q() as u128;
        // x^(q^n) == x mod m
        let xq = po::pow_x_mod(fq, q.pow(n as u32), &m.c).unwrap();
        let x = vec![0u64, 1];
        if po::sub(fq, &xq, &x) != Vec::<FqEl>::new() {
            return false;
        }
        for l in prime_divisors(n) {
            let e = q.pow((n / l) as u32);
            let h = po::pow_x_mod(fq, e, &m.c).unwrap();
            let diff = PolyA::new(fq, po::sub(fq, &h, &x));
            if !m.gcd(&diff).is_one() {
                return false;
            }
        }
        true
    }

    /// Complete factorization into monic irreducibles, deterministic ordering.
    /// The leading coefficient times the product reconstructs the input.
    pub fn factor(&self) -> Result<Vec<(PolyA, usize)>> {
        if self.is_zero() {
            return domain("factorization of zero");
        }
        if self.is_constant() {
            return Ok(vec![]);
        }
        let mut out: Vec<(PolyA, usize)> = Vec::new();
        for (g, mult) in squarefree_decomposition(&self.monic())? {
            for h in factor_squarefree(&g)? {
                out.push((h, mult));
            }
        }
        out.sort();
        Ok(out)
    }

    /// All monic divisors, sorted (degree first, then coefficients).
    pub fn monic_divisors(&self) -> Result<Vec<PolyA>> {
        let mut out = vec![PolyA::one(&self.fq)];
        for (p, e) in self.factor()? {
            let mut next = Vec::with_capacity(out.len() * (e + 1));
            let mut pk = PolyA::one(&self.fq);
            for _ in 0..=e {
                for d in &out {
                    next.push(d.mul(&pk));
                }
                pk = pk.mul(&p);
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => var.to_string(),
                (1, _) => format!("{c}*{var}"),
                (_, 1) => format!("{var}^{i}"),
                (_, _) => format!("{c}*{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }
}

impl std::fmt::Display for PolyA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("T"))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree decomposition in characteristic p. Input monic nonconstant.
fn squarefree_decomposition(f: &PolyA) -> Result<Vec<(PolyA, usize)>> {
    let p = f.fq.p() as usize;
    let mut out: Vec<(PolyA, usize)> = Vec::new();
    let d = f.derivative();
    if d.is_zero() {
        let root = f.pth_root()?;
        for (h, m) in squarefree_decomposition(&root)? {
            out.push((h, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&d);
    let mut w = f.divexact(&c)?;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.divexact(&y)?;
        if !z.is_one() {
            out.push((z, i));
        }
        c = c.divexact(&y)?;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // what remains is an exact p-th power
        let root = c.pth_root()?;
        for (h, m) in squarefree_decomposition(&root)? {
            out.push((h, m * p));
        }
    }
    Ok(out)
}

/// Distinct-degree then equal-degree factorization of a squarefree monic poly.
fn factor_squarefree(f: &PolyA) -> Result<Vec<PolyA>> {
    let fq = &f.fq;
    let q = fq.q() as u128;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = vec![0u64, 1]; // x
    let mut d = 0usize;
    while rest.deg_i() > 0 && 2 * (d + 1) <= rest.c.len() - 1 {
        d += 1;
        h = po::pow_mod(fq, &h, q, &rest.c)?;
        let x = vec![0u64, 1];
        let diff = PolyA::new(fq, po::sub(fq, &h, &x));
        let g = rest.gcd(&diff);
        if !g.is_one() {
            equal_degree_split(&g, d, &mut out)?;
            rest = rest.divexact(&g)?;
            h = PolyA::new(fq, h).rem(&rest)?.c;
        }
    }
    if rest.deg_i() > 0 {
        out.push(rest.monic());
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting with a fixed-seed generator.
fn equal_degree_split(f: &PolyA, d: usize, out: &mut Vec<PolyA>) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let n = f.c.len() - 1;
    if n == d {
        out.push(f.monic());
        return Ok(());
    }
    let fq = &f.fq;
    let q = fq.q() as u128;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
    loop {
        let a: Vec<FqEl> = (0..n).map(|_| rng.gen_range(0..fq.q())).collect();
        let a = PolyA::new(fq, a);
        if a.is_constant() {
            continue;
        }
        let g0 = f.gcd(&a);
        if !g0.is_one() && g0.deg_i() < f.deg_i() {
            equal_degree_split(&g0, d, out)?;
            equal_degree_split(&f.divexact(&g0)?, d, out)?;
            return Ok(());
        }
        let b = if fq.p() == 2 {
            // trace map sum a^(2^i), 0 <= i < e2, with q^d = 2^e2
            let e2 = fq.e() * d;
            let mut acc = a.c.clone();
            let mut cur = a.c.clone();
            for _ in 1..e2 {
                cur = po::pow_mod(fq, &cur, 2, &f.c)?;
                acc = po::add(fq, &acc, &cur);
            }
            PolyA::new(fq, acc)
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            let b = po::pow_mod(fq, &a.c, e, &f.c)?;
            PolyA::new(fq, po::sub(fq, &b, &[1]))
        };
        let g = f.gcd(&b);
        if !g.is_one() && g.deg_i() < f.deg_i() {
            equal_degree_split(&g, d, out)?;
            equal_degree_split(&f.divexact(&g)?, d, out)?;
            return Ok(());
        }
    }
}

/// All monic irreducibles of degree `d`, complete and in canonical order.
pub fn irreducibles_of_degree(fq: &Fq, d: usize) -> Result<Vec<PolyA>> {
    if d == 0 {
        return domain("irreducibles_of_degree needs d >= 1");
    }
    let total = (fq.q() as u128)
        .checked_pow(d as u32)
        .ok_or_else(|| ForgeError::Budget("q^d overflows".into()))?;
    check_budget(total, "irreducible enumeration")?;
    let q = fq.q() as u128;
    let mut out = Vec::new();
    for k in 0..total {
        let mut c = vec![0u64; d + 1];
        c[d] = 1;
        let mut kk = k;
        for ci in c.iter_mut().take(d) {
            *ci = (kk % q) as u64;
            kk /= q;
        }
        let p = PolyA::new(fq, c);
        if p.is_irreducible() {
            out.push(p);
        }
    }
    Ok(out)
}

/// A nonzero ideal of `A`, represented by its monic generator (A is a PID);
/// the zero ideal has a zero generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealA {
    pub gen: PolyA,
}

impl IdealA {
    pub fn new(g: &PolyA) -> IdealA {
        IdealA { gen: g.monic() }
    }

    pub fn is_zero(&self) -> bool {
        self.gen.is_zero()
    }

    /// `|n| = |A/n| = q^deg(gen)`.
    pub fn norm(&self) -> Result<u128> {
        if self.is_zero() {
            return domain("norm of the zero ideal");
        }
        let q = self.gen.fq.q() as u128;
        q.checked_pow(self.gen.deg()? as u32)
            .ok_or_else(|| ForgeError::Budget("ideal norm overflows".into()))
    }

    pub fn mul(&self, o: &IdealA) -> IdealA {
        IdealA::new(&self.gen.mul(&o.gen))
    }
}

impl std::fmt::Display for IdealA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}>", self.gen)
    }
}
