//! Exact matrices over `K = F_q(T)` and the explicit translation generators
//! of the Hecke orbit on the affine chart of `P^{r-1}`.

use crate::error::{domain, Result};
use crate::fq::Fq;
use crate::poly::PolyA;
use crate::ratfunc::RatFunc;

/// An invertible `r x r` matrix over `K`, with its determinant cached.
#[derive(Clone, Debug, PartialEq)]
pub struct MatK {
    fq: Fq,
    r: usize,
    e: Vec<RatFunc>,
    det: RatFunc,
}

impl MatK {
    pub fn new(fq: &Fq, r: usize, entries: Vec<RatFunc>) -> Result<MatK> {
        if r == 0 || entries.len() != r * r {
            return domain("matrix needs r^2 entries, r >= 1");
        }
        let det = det_of(fq, r, &entries)?;
        if det.is_zero() {
            return domain("matrix is singular");
        }
        Ok(MatK {
            fq: fq.clone(),
            r,
            e: entries,
            det,
        })
    }

    pub fn identity(fq: &Fq, r: usize) -> MatK {
        let mut e = vec![RatFunc::zero(fq); r * r];
        for i in 0..r {
            e[i * r + i] = RatFunc::one(fq);
        }
        MatK {
            fq: fq.clone(),
            r,
            e,
            det: RatFunc::one(fq),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFunc {
        &self.e[i * self.r + j]
    }

    pub fn det(&self) -> &RatFunc {
        &self.det
    }

    pub fn mul(&self, o: &MatK) -> Result<MatK> {
        if self.r != o.r {
            return domain("matrix dimension mismatch");
        }
        let r = self.r;
        let mut e = vec![RatFunc::zero(&self.fq); r * r];
        for i in 0..r {
            for j in 0..r {
                let mut acc = RatFunc::zero(&self.fq);
                for k in 0..r {
                    acc = acc.add(&self.at(i, k).mul(o.at(k, j)));
                }
                e[i * r + j] = acc;
            }
        }
        Ok(MatK {
            fq: self.fq.clone(),
            r,
            e,
            det: self.det.mul(&o.det),
        })
    }

    /// `I + u * delta_ij` (elementary transvection), `i != j`.
    pub fn transvection(fq: &Fq, r: usize, i: usize, j: usize, u: &RatFunc) -> Result<MatK> {
        if i >= r || j >= r || i == j {
            return domain("transvection index out of range");
        }
        let mut m = MatK::identity(fq, r);
        m.e[i * r + j] = u.clone();
        Ok(m)
    }

    /// `t^n` where `t = diag(N, 1, ..., 1)`; `n` may be negative.
    pub fn t_power(fq: &Fq, r: usize, n_pol: &PolyA, n: i64) -> Result<MatK> {
        if r == 0 {
            return domain("matrix needs r >= 1");
        }
        let mut m = MatK::identity(fq, r);
        let p = RatFunc::from_poly(n_pol.clone()).pow_i(n)?;
        m.det = p.clone();
        m.e[0] = p;
        Ok(m)
    }

    pub fn to_text(&self, var: &str) -> String {
        (0..self.r)
            .map(|i| {
                (0..self.r)
                    .map(|j| self.at(i, j).to_text(var))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl std::fmt::Display for MatK {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text("T"))
    }
}

fn det_of(fq: &Fq, r: usize, e: &[RatFunc]) -> Result<RatFunc> {
    let mut m: Vec<Vec<RatFunc>> = (0..r).map(|i| e[i * r..(i + 1) * r].to_vec()).collect();
    let mut det = RatFunc::one(fq);
    for col in 0..r {
        let Some(p) = (col..r).find(|&i| !m[i][col].is_zero()) else {
            return Ok(RatFunc::zero(fq));
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv()?;
        for i in col + 1..r {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            for j in col..r {
                let s = f.mul(&m[col][j]);
                m[i][j] = m[i][j].sub(&s);
            }
        }
    }
    Ok(det)
}

/// A point of the affine chart `omega_r = 1` of `P^{r-1}`: the first `r-1`
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint {
    pub coords: Vec<RatFunc>,
}

impl AffinePoint {
    pub fn new(coords: Vec<RatFunc>) -> AffinePoint {
        AffinePoint { coords }
    }

    pub fn origin(fq: &Fq, r: usize) -> AffinePoint {
        AffinePoint {
            coords: vec![RatFunc::zero(fq); r - 1],
        }
    }
}

/// The projective-linear action of `g` on the chart: `g * (omega, 1)`
/// renormalized so the last coordinate is 1.
pub fn mobius_action(g: &MatK, omega: &AffinePoint) -> Result<AffinePoint> {
    let r = g.r();
    if omega.coords.len() + 1 != r {
        return domain("point dimension does not match matrix size");
    }
    let mut image = Vec::with_capacity(r);
    for i in 0..r {
        let mut acc = g.at(i, r - 1).clone();
        for (j, w) in omega.coords.iter().enumerate() {
            acc = acc.add(&g.at(i, j).mul(w));
        }
        image.push(acc);
    }
    let last = image.pop().unwrap();
    if last.is_zero() {
        return domain("image lies outside the affine chart");
    }
    let inv = last.inv()?;
    Ok(AffinePoint {
        coords: image.into_iter().map(|c| c.mul(&inv)).collect(),
    })
}

/// The translation generator `sigma_i^n(a)`:
/// `sigma_1^n(a) = t^{-n} (1 + a delta_{1r}) t^n` with `t = diag(N,1,..,1)`,
/// and for `i >= 2` the commutator form
/// `(1 - a^{i-1} delta_{i1}) sigma_1^n(-a) (1 + a^{i-1} delta_{i1}) sigma_1^n(a)`,
/// which collapses to `I + a^i N^{-n} delta_{ir}` exactly.
pub fn sigma_generator(
    i: usize,
    n: i64,
    a: &PolyA,
    n_pol: &PolyA,
    r: usize,
) -> Result<MatK> {
    if r < 2 || i == 0 || i > r - 1 {
        return domain("need r >= 2 and 1 <= i <= r-1");
    }
    if a.is_zero() {
        return domain("translation amount a must be nonzero");
    }
    if n_pol.is_constant() {
        return domain("N must be nonconstant");
    }
    let fq = &a.fq;
    let sigma1 = |b: &RatFunc| -> Result<MatK> {
        let tneg = MatK::t_power(fq, r, n_pol, -n)?;
        let tpos = MatK::t_power(fq, r, n_pol, n)?;
        let u = MatK::transvection(fq, r, 0, r - 1, b)?;
        tneg.mul(&u)?.mul(&tpos)
    };
    let ar = RatFunc::from_poly(a.clone());
    if i == 1 {
        return sigma1(&ar);
    }
    let c = RatFunc::from_poly(a.pow(i - 1));
    let left = MatK::transvection(fq, r, i - 1, 0, &c.neg())?;
    let mid = MatK::transvection(fq, r, i - 1, 0, &c)?;
    left.mul(&sigma1(&ar.neg())?)?
        .mul(&mid)?
        .mul(&sigma1(&ar)?)
}

/// Checks that `sigma_i^n(a)` moves `omega` to `omega + a^i N^{-n} e_i`.
pub fn verify_translation(
    i: usize,
    n: i64,
    a: &PolyA,
    n_pol: &PolyA,
    r: usize,
    omega: &AffinePoint,
) -> Result<bool> {
    let g = sigma_generator(i, n, a, n_pol, r)?;
    let moved = mobius_action(&g, omega)?;
    let shift = RatFunc::from_poly(a.pow(i)).mul(&RatFunc::from_poly(n_pol.clone()).pow_i(-n)?);
    let mut expected = omega.coords.clone();
    expected[i - 1] = expected[i - 1].add(&shift);
    Ok(moved.coords == expected)
}
