//! Finite `A`-module combinatorics: Smith normal form over `A = F_q[T]`,
//! the cyclic-submodule degree function `psi_r`, its brute-force counterpart,
//! and module indices. Also hosts the small `F_q` linear-algebra kernel used
//! by torsion and root-space computations.

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::check_budget;
use crate::error::{domain, Result};
use crate::fq::{Fq, FqEl};
use crate::poly::{IdealA, PolyA};

// ---------------------------------------------------------------------------
// F_q linear algebra (dense, row-major)

/// Reduce `mat` to reduced row echelon form in place; returns pivot columns.
pub fn fq_rref(fq: &Fq, mat: &mut [Vec<FqEl>]) -> Vec<usize> {
    let nrows = mat.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&i| mat[i][col] != 0) else {
            continue;
        };
        mat.swap(row, p);
        let inv = fq.inv(mat[row][col]).unwrap();
        for c in col..ncols {
            mat[row][c] = fq.mul(mat[row][c], inv);
        }
        for i in 0..nrows {
            if i != row && mat[i][col] != 0 {
                let factor = mat[i][col];
                for c in col..ncols {
                    let t = fq.mul(factor, mat[row][c]);
                    mat[i][c] = fq.sub(mat[i][c], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    pivots
}

pub fn fq_rank(fq: &Fq, mat: &[Vec<FqEl>]) -> usize {
    let mut m: Vec<Vec<FqEl>> = mat.to_vec();
    fq_rref(fq, &mut m).len()
}

/// Basis of the right nullspace `{x : M x = 0}` of an `nrows x ncols` matrix.
pub fn fq_nullspace(fq: &Fq, mat: &[Vec<FqEl>], ncols: usize) -> Vec<Vec<FqEl>> {
    let mut m: Vec<Vec<FqEl>> = mat.to_vec();
    let pivots = fq_rref(fq, &mut m);
    let mut basis = Vec::new();
    let mut piv_iter = pivots.iter().copied().peekable();
    let free_cols: Vec<usize> = (0..ncols)
        .filter(|c| {
            if piv_iter.peek() == Some(c) {
                piv_iter.next();
                false
            } else {
                true
            }
        })
        .collect();
    for &fc in &free_cols {
        let mut v = vec![0; ncols];
        v[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = fq.neg(m[r][fc]);
        }
        basis.push(v);
    }
    basis
}

/// Solve `M x = b`; returns one solution if consistent.
pub fn fq_solve(fq: &Fq, mat: &[Vec<FqEl>], b: &[FqEl]) -> Option<Vec<FqEl>> {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    let mut aug: Vec<Vec<FqEl>> = mat
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = fq_rref(fq, &mut aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![0; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Matrices over A and Smith normal form

/// A rectangular matrix over `A = F_q[T]`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatA {
    pub fq: Fq,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<PolyA>,
}

impl MatA {
    pub fn new(fq: &Fq, rows: usize, cols: usize, entries: Vec<PolyA>) -> Result<MatA> {
        if entries.len() != rows * cols {
            return domain("matrix entry count does not match dimensions");
        }
        Ok(MatA {
            fq: fq.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(fq: &Fq, rows: usize, cols: usize) -> MatA {
        MatA {
            fq: fq.clone(),
            rows,
            cols,
            entries: vec![PolyA::zero(fq); rows * cols],
        }
    }

    pub fn identity(fq: &Fq, n: usize) -> MatA {
        let mut m = MatA::zero(fq, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = PolyA::one(fq);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &PolyA {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut PolyA {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul(&self, o: &MatA) -> Result<MatA> {
        if self.cols != o.rows {
            return domain("matrix dimension mismatch");
        }
        let mut out = MatA::zero(&self.fq, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = PolyA::zero(&self.fq);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= f * row_j
    fn row_sub(&mut self, i: usize, f: &PolyA, j: usize) {
        for k in 0..self.cols {
            let t = f.mul(self.at(j, k));
            *self.at_mut(i, k) = self.at(i, k).sub(&t);
        }
    }

    /// col_i -= f * col_j
    fn col_sub(&mut self, i: usize, f: &PolyA, j: usize) {
        for k in 0..self.rows {
            let t = f.mul(self.at(k, j));
            *self.at_mut(k, i) = self.at(k, i).sub(&t);
        }
    }

    fn scale_row(&mut self, i: usize, c: FqEl) {
        for k in 0..self.cols {
            *self.at_mut(i, k) = self.at(i, k).scale(c);
        }
    }
}

/// Smith normal form data: `u * m * v = diag(factors)` with `u`, `v`
/// unimodular and the monic factors forming a divisibility chain
/// (zeros, if any, come last).
#[derive(Clone, Debug)]
pub struct Snf {
    pub factors: Vec<PolyA>,
    pub u: MatA,
    pub v: MatA,
}

pub fn smith_normal_form(m: &MatA) -> Snf {
    let fq = m.fq.clone();
    let mut a = m.clone();
    let mut u = MatA::identity(&fq, m.rows);
    let mut v = MatA::identity(&fq, m.cols);
    let k = m.rows.min(m.cols);

    for t in 0..k {
        'pivot: loop {
            // least-degree nonzero entry of the trailing submatrix
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if !a.at(i, j).is_zero() {
                        let d = a.at(i, j).deg().unwrap();
                        if best.map(|(_, _, bd)| d < bd).unwrap_or(true) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'pivot; // submatrix is zero
            };
            if pi != t {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            // clear column t below/above, row t right of pivot
            let mut dirty = false;
            for i in 0..m.rows {
                if i != t && !a.at(i, t).is_zero() {
                    let (q, r) = a.at(i, t).divmod(a.at(t, t)).unwrap();
                    a.row_sub(i, &q, t);
                    u.row_sub(i, &q, t);
                    if !r.is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in 0..m.cols {
                if j != t && !a.at(t, j).is_zero() {
                    let (q, r) = a.at(t, j).divmod(a.at(t, t)).unwrap();
                    a.col_sub(j, &q, t);
                    v.col_sub(j, &q, t);
                    if !r.is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisibility sweep: pivot must divide everything below-right
            for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !a.at(t, t).divides(a.at(i, j)) {
                        let one = PolyA::one(&fq);
                        // add row i to row t and restart this pivot
                        a.row_sub(t, &one.neg(), i);
                        u.row_sub(t, &one.neg(), i);
                        continue 'pivot;
                    }
                }
            }
            // normalize pivot monic
            if !a.at(t, t).is_zero() && !a.at(t, t).is_monic() {
                let c = fq.inv(a.at(t, t).lead()).unwrap();
                a.scale_row(t, c);
                u.scale_row(t, c);
            }
            break 'pivot;
        }
    }

    let factors = (0..k).map(|i| a.at(i, i).clone()).collect();
    Snf { factors, u, v }
}

/// A finite `A`-module `⊕ A/(d_i)` via monic nonconstant invariant factors
/// `d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAModule {
    pub factors: Vec<PolyA>,
}

impl FiniteAModule {
    pub fn trivial() -> FiniteAModule {
        FiniteAModule { factors: vec![] }
    }

    /// The quotient of `A^cols` by the row space of `rel`; errors unless the
    /// quotient is finite (torsion).
    pub fn from_relations(rel: &MatA) -> Result<FiniteAModule> {
        let snf = smith_normal_form(rel);
        if snf.factors.len() < rel.cols || snf.factors.iter().any(|f| f.is_zero()) {
            return domain("quotient module is not finite");
        }
        let factors = snf
            .factors
            .into_iter()
            .filter(|f| !f.is_constant())
            .collect();
        Ok(FiniteAModule { factors })
    }

    pub fn cardinality(&self) -> BigUint {
        let q = BigUint::from(self.factors.first().map(|f| f.fq.q()).unwrap_or(2));
        let total: usize = self.factors.iter().map(|f| f.deg().unwrap()).sum();
        q.pow(total as u32)
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

/// Index of the submodule generated by the rows of `rel` inside `A^cols`.
pub fn module_index(rel: &MatA) -> Result<BigUint> {
    let m = FiniteAModule::from_relations(rel)?;
    Ok(m.cardinality())
}

// ---------------------------------------------------------------------------
// psi_r and its enumeration counterpart

/// `psi_r(n) = |n|^{r-1} prod_{p | n} (|p|^r - 1)/(|p|^r - |p|^{r-1})`:
/// the number of cyclic `A/n`-submodules of `(A/n)^r`, and the Hecke degree.
pub fn psi_r(n: &IdealA, r: u32) -> Result<BigUint> {
    if n.is_zero() {
        return domain("psi_r of the zero ideal");
    }
    if r < 1 {
        return domain("rank must be >= 1");
    }
    let norm = BigUint::from(n.norm()?);
    let mut num = norm.pow(r - 1);
    let mut den = BigUint::one();
    for (p, _) in n.gen.factor()? {
        let np = BigUint::from(IdealA::new(&p).norm()?);
        num *= np.pow(r) - 1u32;
        den *= np.pow(r) - np.pow(r - 1);
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    Ok(num / den)
}

/// Number of units of `A/n` (the Euler function of the ideal).
pub fn unit_count(n: &IdealA) -> Result<BigUint> {
    if n.is_zero() {
        return domain("unit count of the zero ideal");
    }
    let mut out = BigUint::one();
    for (p, e) in n.gen.factor()? {
        let np = BigUint::from(IdealA::new(&p).norm()?);
        out *= np.pow(e as u32) - np.pow(e as u32 - 1);
    }
    Ok(out)
}

/// Brute-force count of cyclic `A/n`-submodules of `(A/n)^r`: enumerate the
/// tuples of exact order `n` and divide by the unit count.
pub fn count_cyclic_submodules(n: &IdealA, r: u32) -> Result<BigUint> {
    if n.is_zero() {
        return domain("zero ideal");
    }
    if r < 1 {
        return domain("rank must be >= 1");
    }
    let norm = n.norm()?;
    let total = norm.checked_pow(r).ok_or_else(|| {
        crate::error::ForgeError::Budget("|n|^r overflows the enumeration range".into())
    })?;
    check_budget(total, "cyclic submodule enumeration")?;
    let fq = &n.gen.fq;
    let d = n.gen.deg()?;
    let q = fq.q() as u128;
    // residues mod n indexed 0..|n|
    let residue = |mut idx: u128| -> PolyA {
        let mut c = Vec::with_capacity(d);
        for _ in 0..d {
            c.push((idx % q) as FqEl);
            idx /= q;
        }
        PolyA::new(fq, c)
    };
    let mut exact = 0u128;
    for code in 0..total {
        let mut k = code;
        let mut g = n.gen.clone();
        for _ in 0..r {
            let x = residue(k % norm);
            k /= norm;
            g = g.gcd(&x);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() {
            exact += 1;
        }
    }
    let units = unit_count(n)?;
    let exact = BigUint::from(exact);
    debug_assert!((&exact % &units) == BigUint::from(0u32));
    Ok(exact / units)
}
