//! Isogenies between Drinfeld modules, cyclic-isogeny enumeration, Hecke
//! images and degrees, isogeny graphs over finite `A`-fields, and the
//! degree-bound evaluator.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::budget::check_budget;
use crate::drinfeld::{min_poly_over_fq, DrinfeldModule};
use crate::error::{domain, ForgeError, Result};
use crate::extfield::ExtField;
use crate::field::{Field, FiniteField};
use crate::finmod::{fq_solve, psi_r, FiniteAModule, MatA};
use crate::fq::FqEl;
use crate::poly::{IdealA, PolyA};
use crate::skew::{kernel_roots, SkewPoly};

/// An isogeny `u : source -> target` with `u * phi_T = psi_T * u`.
#[derive(Clone, Debug)]
pub struct Isogeny<G: Field> {
    pub source: DrinfeldModule<G>,
    pub target: DrinfeldModule<G>,
    pub u: SkewPoly<G>,
    pub kernel: FiniteAModule,
}

impl<G: Field> Isogeny<G> {
    /// The defining identity at the generator `T` (which suffices over
    /// `A = F_q[T]`).
    pub fn verify(&self) -> bool {
        let lhs = self.u.mul(&self.source.phi_t());
        let rhs = self.target.phi_t().mul(&self.u);
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
    }
}

/// The monic-in-tau skew polynomial whose root set is exactly the
/// `F_q`-span of `basis`.
///
/// Built incrementally: extending the root space `V` by `g` multiplies on
/// the left by `tau - u_V(g)^{q-1}`.
pub fn kernel_polynomial<G: Field>(field: &G, basis: &[G::El]) -> Result<SkewPoly<G>> {
    let mut u = SkewPoly::one(field);
    for g in basis {
        let v = u.eval(g);
        if field.is_zero(&v) {
            return domain("kernel basis is not F_q-linearly independent");
        }
        let c = field.pow(&v, field.q() as u128 - 1);
        let step = SkewPoly::new(field, vec![field.neg(&c), field.one()]);
        u = step.mul(&u)?;
    }
    Ok(u)
}

/// Solve `psi_T * u = u * phi_T` for the codomain `psi`. The remainder of
/// the right division must vanish; otherwise the kernel of `u` is not
/// `A`-stable.
pub fn codomain<G: Field>(
    phi: &DrinfeldModule<G>,
    u: &SkewPoly<G>,
) -> Result<DrinfeldModule<G>> {
    if u.is_zero() {
        return domain("zero morphism has no codomain");
    }
    let w = u.mul(&phi.phi_t())?;
    let (s, r) = w.right_divmod(u)?;
    if !r.is_zero() {
        return domain("kernel not A-stable: u*phi_T is not right-divisible by u");
    }
    let t = s.coeff(0);
    DrinfeldModule::from_parts(&phi.field, &t, s.c[1..].to_vec(), phi.a_char.clone())
}

/// Invariant factors of `ker u` as an `A`-module: present the root space by
/// the relation matrix `T*I - M` where `M` is the `phi_T` action.
pub fn kernel_module<G: FiniteField>(
    phi: &DrinfeldModule<G>,
    u: &SkewPoly<G>,
) -> Result<FiniteAModule> {
    if u.deg_tau()? == 0 {
        return Ok(FiniteAModule::trivial());
    }
    let fq = phi.field.fq().clone();
    let rs = kernel_roots(u)?;
    let k = rs.basis.len();
    let ext = &rs.ext;
    let dim = ext.dim();
    let basis_cols: Vec<Vec<FqEl>> = rs.basis.iter().map(|b| ext.to_vec(b)).collect();
    let solve_mat: Vec<Vec<FqEl>> = (0..dim)
        .map(|i| (0..k).map(|j| basis_cols[j][i]).collect())
        .collect();
    let pt = phi.phi_t().lift(ext)?;
    let mut m = vec![vec![0; k]; k];
    for (j, b) in rs.basis.iter().enumerate() {
        let img = pt.eval(b);
        let coords = fq_solve(&fq, &solve_mat, &ext.to_vec(&img))
            .ok_or_else(|| ForgeError::Domain("kernel is not T-stable".into()))?;
        for i in 0..k {
            m[i][j] = coords[i];
        }
    }
    let tvar = PolyA::var(&fq);
    let mut entries = Vec::with_capacity(k * k);
    for (i, row) in m.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            let mut e = PolyA::constant(&fq, fq.neg(c));
            if i == j {
                e = e.add(&tvar);
            }
            entries.push(e);
        }
    }
    FiniteAModule::from_relations(&MatA::new(&fq, k, k, entries)?)
}

/// Canonical generator vectors of the cyclic `A/n`-submodules of `(A/n)^r`:
/// unimodular tuples up to units, deduplicated by the least unit multiple.
pub fn cyclic_submodule_reps(n: &IdealA, r: u32) -> Result<Vec<Vec<PolyA>>> {
    if n.is_zero() {
        return domain("zero ideal");
    }
    if r < 1 {
        return domain("rank must be >= 1");
    }
    let norm = n.norm()?;
    let total = norm
        .checked_pow(r)
        .ok_or_else(|| ForgeError::Budget("|n|^r overflows".into()))?;
    check_budget(total, "cyclic submodule enumeration")?;
    let fq = &n.gen.fq;
    let q = fq.q() as u128;
    let d = n.gen.deg()?;
    let residue = |mut idx: u128| -> PolyA {
        let mut c = Vec::with_capacity(d);
        for _ in 0..d {
            c.push((idx % q) as FqEl);
            idx /= q;
        }
        PolyA::new(fq, c)
    };
    let units: Vec<PolyA> = (1..norm)
        .map(residue)
        .filter(|x| x.gcd(&n.gen).is_one())
        .collect();
    let mut reps: BTreeSet<Vec<PolyA>> = BTreeSet::new();
    for code in 0..total {
        let mut k = code;
        let mut v = Vec::with_capacity(r as usize);
        let mut g = n.gen.clone();
        for _ in 0..r {
            let x = residue(k % norm);
            k /= norm;
            g = g.gcd(&x);
            v.push(x);
        }
        if !g.is_one() {
            continue;
        }
        let canon = units
            .iter()
            .map(|u| {
                v.iter()
                    .map(|x| u.mul(x).rem(&n.gen).unwrap())
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        reps.insert(canon);
    }
    Ok(reps.into_iter().collect())
}

/// The index `[GL_r(A/n) : image of K_0(n)]`, by direct orbit enumeration of
/// `P^{r-1}(A/n)`. Coincides with `psi_r(n)`.
pub fn hecke_degree_index(r: u32, n: &IdealA) -> Result<BigUint> {
    Ok(BigUint::from(cyclic_submodule_reps(n, r)?.len()))
}

/// The degree bound `DegM^2 * prod_i (|n|^{r-1} psi_r(n)^2 w_i)`.
pub fn degree_bound(n: &IdealA, r: u32, deg_m: &BigUint, w: &[u64]) -> Result<BigUint> {
    if w.is_empty() {
        return domain("empty invariant weight list");
    }
    if w.iter().any(|&x| x == 0) || *deg_m == BigUint::from(0u32) {
        return domain("all inputs must be positive");
    }
    let psi = psi_r(n, r)?;
    let norm = BigUint::from(n.norm()?);
    let factor = norm.pow(r - 1) * psi.pow(2);
    let mut out = deg_m.pow(2);
    for &wi in w {
        out *= &factor * BigUint::from(wi);
    }
    Ok(out)
}

/// All cyclic `n`-isogenies out of `phi`, one per cyclic submodule of
/// `phi[n]`, together with the extension where the kernels live.
pub struct CyclicIsogenies<F: FiniteField> {
    pub ext: ExtField<F>,
    pub isogenies: Vec<Isogeny<ExtField<F>>>,
}

pub fn cyclic_isogenies<F: FiniteField>(
    phi: &DrinfeldModule<F>,
    n: &IdealA,
) -> Result<CyclicIsogenies<F>> {
    let ts = phi.torsion_space(n)?;
    let gens = ts.generators()?;
    let ext = ts.ext.clone();
    let phi_e = phi.lift(&ext)?;
    let dn = n.gen.deg()?;
    let mut isogenies = Vec::new();
    for rep in cyclic_submodule_reps(n, phi.rank() as u32)? {
        // the kernel generator point, in torsion coordinates
        let fq = phi.field.fq();
        let mut v = vec![0; ts.dim()];
        for (x, g) in rep.iter().zip(&gens) {
            let part = ts.apply_poly(x, g);
            for (vi, pi) in v.iter_mut().zip(&part) {
                *vi = fq.add(*vi, *pi);
            }
        }
        // F_q-basis of A*v: the T-power orbit
        let mut basis = Vec::with_capacity(dn);
        let mut cur = v.clone();
        for i in 0..dn {
            if i > 0 {
                cur = ts.apply_poly(&PolyA::var(fq), &cur);
            }
            basis.push(ts.point(&cur));
        }
        let u = kernel_polynomial(&ext, &basis)?;
        let target = codomain(&phi_e, &u)?;
        let iso = Isogeny {
            source: phi_e.clone(),
            target,
            u,
            kernel: FiniteAModule {
                factors: vec![n.gen.clone()],
            },
        };
        debug_assert!(iso.verify());
        isogenies.push(iso);
    }
    Ok(CyclicIsogenies { ext, isogenies })
}

/// A rank-2 module over `l` with the given j-invariant, no root extraction
/// needed: `(g_1, g_2) = (1, j^{-1})` for `j != 0` and `(0, 1)` for `j = 0`.
pub fn module_from_j<F: FiniteField>(l: &F, t: &F::El, j: &F::El) -> Result<DrinfeldModule<F>> {
    let (g1, g2) = if l.is_zero(j) {
        (l.zero(), l.one())
    } else {
        (l.one(), l.inv(j)?)
    };
    DrinfeldModule::over_finite(l, t, vec![g1, g2])
}

/// The Hecke image `T_p(j)`: the multiset of j-invariants of the codomains
/// of all cyclic `p`-isogenies out of a module with invariant `j`.
pub struct HeckeImage<F: FiniteField> {
    pub ext: ExtField<F>,
    pub values: Vec<crate::extfield::ExtEl<F>>,
}

pub fn hecke_image_j<F: FiniteField>(
    l: &F,
    t: &F::El,
    j: &F::El,
    p: &IdealA,
) -> Result<HeckeImage<F>> {
    let phi = module_from_j(l, t, j)?;
    let ci = cyclic_isogenies(&phi, p)?;
    let values = ci
        .isogenies
        .iter()
        .map(|iso| iso.target.j_invariant())
        .collect::<Result<Vec<_>>>()?;
    Ok(HeckeImage {
        ext: ci.ext,
        values,
    })
}

// ---------------------------------------------------------------------------
// isogeny graphs over a finite A-field (rank 2)

/// Edge target: a vertex inside the working field, or the minimal polynomial
/// (over `F_q`) of a j-invariant that leaves it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GraphTarget {
    Internal(u128),
    External(PolyA),
}

#[derive(Clone, Debug)]
pub struct GraphVertex {
    /// canonical index of the j-invariant in the working field
    pub j_index: u128,
    pub j_label: String,
    pub ordinary: bool,
    /// Frobenius data `(a, b, a^2 - 4b)` when computed
    pub frobenius: Option<(PolyA, PolyA, PolyA)>,
}

/// The graph of the Hecke correspondence `T_p` on rank-2 j-invariants over a
/// finite `A`-field.
#[derive(Clone, Debug)]
pub struct HeckeGraph {
    pub p: IdealA,
    pub char_poly: PolyA,
    pub field_dim: usize,
    pub vertices: Vec<GraphVertex>,
    /// out-edges per vertex, sorted; length is `psi_2(p)` everywhere
    pub edges: Vec<Vec<GraphTarget>>,
}

/// Frobenius quadratic of a rank-2 module over a finite `A`-field: the pair
/// `(a, b)` with `tau^{2m} - phi_a tau^m + phi_b = 0`, `m = [L : F_q]`,
/// found by exhausting `deg a <= m/2` and `b = mu * ch^{m/deg ch}`.
pub fn frobenius_quadratic<F: FiniteField>(
    phi: &DrinfeldModule<F>,
) -> Result<(PolyA, PolyA)> {
    if phi.rank() != 2 {
        return domain("Frobenius quadratic implemented for rank 2");
    }
    let fq = phi.field.fq().clone();
    let m = phi.field.dim();
    let ch = phi.char_poly()?.clone();
    let e = m / ch.deg()?;
    let tau_m = SkewPoly::new(&phi.field, {
        let mut c = vec![phi.field.zero(); m + 1];
        c[m] = phi.field.one();
        c
    });
    let tau_2m = tau_m.mul(&tau_m)?;
    let q = fq.q();
    let max_deg = m / 2;
    let count = q.pow(max_deg as u32 + 1);
    for mu in 1..q {
        let b = ch.pow(e).scale(mu);
        let pb = phi.phi_a(&b)?;
        for code in 0..count {
            let mut c = Vec::with_capacity(max_deg + 1);
            let mut k = code;
            for _ in 0..=max_deg {
                c.push(k % q);
                k /= q;
            }
            let a = PolyA::new(&fq, c);
            let pa = phi.phi_a(&a)?;
            let s = tau_2m.sub(&pa.mul(&tau_m)?)?.add(&pb)?;
            if s.is_zero() {
                return Ok((a, b));
            }
        }
    }
    domain("no Frobenius quadratic found")
}

/// Ordinarity via the height of `phi_ch`: the lowest nonzero tau-index of
/// `phi_ch` is `h * deg ch`, and rank 2 is ordinary exactly when `h = 1`.
pub fn is_ordinary<F: FiniteField>(phi: &DrinfeldModule<F>) -> Result<bool> {
    let ch = phi.char_poly()?.clone();
    let pc = phi.phi_a(&ch)?;
    let v = pc
        .c
        .iter()
        .position(|x| !phi.field.is_zero(x))
        .ok_or_else(|| ForgeError::Domain("phi_ch is zero".into()))?;
    Ok(v == ch.deg()?)
}

pub fn isogeny_graph<F: FiniteField>(l: &F, t: &F::El, p: &IdealA) -> Result<HeckeGraph> {
    if p.is_zero() || !p.gen.is_irreducible() {
        return domain("isogeny graph needs a prime ideal");
    }
    let ch = min_poly_over_fq(l, t);
    if !p.gen.gcd(&ch).is_one() {
        return domain("p must be coprime to the A-characteristic");
    }
    check_budget(
        l.order().saturating_mul(p.norm()?.saturating_mul(p.norm()?)),
        "isogeny graph",
    )?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for idx in 0..l.order() {
        let j = l.el_from_index(idx);
        let phi = module_from_j(l, t, &j)?;
        let ordinary = is_ordinary(&phi)?;
        let frobenius = frobenius_quadratic(&phi).ok().map(|(a, b)| {
            let disc = a.mul(&a).sub(&b.scale(l.fq().from_int(4)));
            (a, b, disc)
        });
        let img = hecke_image_j(l, t, &j, p)?;
        let mut out: Vec<GraphTarget> = img
            .values
            .iter()
            .map(|v| match img.ext.try_to_base(v) {
                Some(jl) => GraphTarget::Internal(l.index_of(&jl)),
                None => GraphTarget::External(min_poly_over_fq(&img.ext, v)),
            })
            .collect();
        out.sort();
        vertices.push(GraphVertex {
            j_index: idx,
            j_label: l.format_el(&j),
            ordinary,
            frobenius,
        });
        edges.push(out);
    }
    Ok(HeckeGraph {
        p: p.clone(),
        char_poly: ch,
        field_dim: l.dim(),
        vertices,
        edges,
    })
}

impl HeckeGraph {
    /// Craters: connected cycle components that survive iterated leaf
    /// pruning of the undirected ordinary internal subgraph. Multi-edges
    /// and self-loops count toward the degree, so 1- and 2-cycles survive.
    pub fn craters(&self) -> Vec<Vec<u128>> {
        let n = self.vertices.len();
        let pos: BTreeMap<u128, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.j_index, i))
            .collect();
        // undirected multidegree between ordinary internal vertices
        let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for (i, out) in self.edges.iter().enumerate() {
            if !self.vertices[i].ordinary {
                continue;
            }
            for tgt in out {
                if let GraphTarget::Internal(jdx) = tgt {
                    let j = pos[jdx];
                    if !self.vertices[j].ordinary {
                        continue;
                    }
                    *adj[i].entry(j).or_insert(0) += 1;
                }
            }
        }
        // symmetrize (the dual isogeny gives the reverse edge; take max to
        // be safe against chart quirks)
        for i in 0..n {
            let row: Vec<(usize, usize)> = adj[i].iter().map(|(&j, &m)| (j, m)).collect();
            for (j, m) in row {
                let back = adj[j].get(&i).copied().unwrap_or(0);
                if back < m {
                    adj[j].insert(i, m);
                }
            }
        }
        let mut alive: Vec<bool> = self.vertices.iter().map(|v| v.ordinary).collect();
        let degree = |adj: &Vec<BTreeMap<usize, usize>>, alive: &Vec<bool>, i: usize| -> usize {
            adj[i]
                .iter()
                .filter(|(&j, _)| alive[j])
                .map(|(&j, &m)| if j == i { 2 * m } else { m })
                .sum()
        };
        loop {
            let mut removed = false;
            for i in 0..n {
                if alive[i] && degree(&adj, &alive, i) <= 1 {
                    alive[i] = false;
                    removed = true;
                }
            }
            if !removed {
                break;
            }
        }
        // connected components of the surviving cycle graph
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                comp.push(self.vertices[i].j_index);
                for (&j, _) in adj[i].iter() {
                    if alive[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out.sort();
        out
    }

    /// Out-degree regularity check: every vertex has `psi_2(p)` out-edges.
    pub fn is_regular(&self) -> Result<bool> {
        let expected = psi_r(&self.p, 2)?;
        Ok(self
            .edges
            .iter()
            .all(|e| BigUint::from(e.len()) == expected))
    }
}
