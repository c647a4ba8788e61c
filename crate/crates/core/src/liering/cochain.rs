//! Alternating cochains on increasing basis tuples and the
//! Chevalley-Eilenberg differential.

use std::collections::HashMap;

use serde::Serialize;

use super::{LieError, LieModule};
use crate::fp::{self, Matrix};

/// Strictly increasing `n`-tuples from `0..dim`, in lexicographic order.
pub fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, dim, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, n, &mut Vec::new(), &mut out);
    out
}

/// An alternating `n`-cochain: one value in `A` per increasing tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieCochain {
    pub degree: usize,
    pub tuples: Vec<Vec<usize>>,
    pub values: Vec<Vec<i64>>,
}

impl LieCochain {
    pub fn from_flat(m: &LieModule, degree: usize, flat: &[i64]) -> LieCochain {
        let k = m.dim();
        let tuples = tuples(m.ring().dim(), degree);
        let values = (0..tuples.len()).map(|t| flat[t * k..(t + 1) * k].to_vec()).collect();
        LieCochain { degree, tuples, values }
    }

    pub fn flat(&self) -> Vec<i64> {
        self.values.concat()
    }
}

/// Matrix of `dₙ: Cⁿ → Cⁿ⁺¹` on flattened cochains (tuple-major).
pub fn ce_differential(m: &LieModule, n: usize) -> Matrix {
    let p = m.p();
    let k = m.dim();
    let ring = m.ring();
    let d = ring.dim();
    let src = tuples(d, n);
    let dst = tuples(d, n + 1);
    let index: HashMap<&[usize], usize> = src.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let mut mat = fp::zeros(dst.len() * k, src.len() * k);
    for (u, g) in dst.iter().enumerate() {
        // positions are 0-based, so (−1)^{s+t−1} becomes (−1)^{s+t+1}
        for s in 0..=n {
            for t in s + 1..=n {
                let sign = if (s + t + 1) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = g
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != s && i != t)
                    .map(|(_, &x)| x)
                    .collect();
                for (e, &c) in ring.basis_bracket(g[s], g[t]).iter().enumerate() {
                    if c == 0 || rest.contains(&e) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&r| r < e).count();
                    let sort_sign = if pos % 2 == 0 { 1 } else { -1 };
                    let mut tup = rest.clone();
                    tup.insert(pos, e);
                    let col = index[tup.as_slice()];
                    for r in 0..k {
                        let x = &mut mat[u * k + r][col * k + r];
                        *x = (*x + sign * sort_sign * c).rem_euclid(p);
                    }
                }
            }
        }
        for s in 0..=n {
            let sign = if s % 2 == 0 { -1 } else { 1 };
            let rest: Vec<usize> = g
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != s)
                .map(|(_, &x)| x)
                .collect();
            let col = index[rest.as_slice()];
            let a = m.action(g[s]);
            for r in 0..k {
                for c in 0..k {
                    let x = &mut mat[u * k + r][col * k + c];
                    *x = (*x + sign * a[r][c]).rem_euclid(p);
                }
            }
        }
    }
    mat
}

/// `dₙ₊₁ ∘ dₙ = 0`.
pub fn check_ce_dd_zero(m: &LieModule, n: usize) -> bool {
    let p = m.p();
    let a = ce_differential(m, n);
    let b = ce_differential(m, n + 1);
    if a.is_empty() || b.is_empty() {
        return true;
    }
    fp::mat_mul(&b, &a, p).iter().flatten().all(|&x| x == 0)
}

/// `Hⁿ(𝔤, A) = ker dₙ / im dₙ₋₁` over `𝔽_p`.
#[derive(Clone, Debug, Serialize)]
pub struct LieCohomologyGroup {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: Matrix,
    pub coboundaries: Matrix,
    pub representatives: Vec<LieCochain>,
}

impl LieCohomologyGroup {
    pub fn is_cocycle(&self, flat: &[i64], p: i64) -> bool {
        fp::in_span(&self.cocycles, flat, p)
    }

    pub fn is_coboundary(&self, flat: &[i64], p: i64) -> bool {
        fp::in_span(&self.coboundaries, flat, p)
    }
}

pub(crate) fn cocycles(m: &LieModule, n: usize) -> Matrix {
    let cols = tuples(m.ring().dim(), n).len() * m.dim();
    let d = ce_differential(m, n);
    fp::span(&fp::kernel(&d, cols, m.p()), m.p())
}

pub(crate) fn coboundaries(m: &LieModule, n: usize) -> Matrix {
    if n == 0 {
        return Vec::new();
    }
    let d = ce_differential(m, n - 1);
    fp::span(&fp::transpose(&d), m.p())
}

pub fn ce_cohomology(m: &LieModule, n: usize) -> Result<LieCohomologyGroup, LieError> {
    if n > m.ring().dim() {
        return Err(LieError::Degree(n));
    }
    let p = m.p();
    let z = cocycles(m, n);
    let b = coboundaries(m, n);
    let mut span = b.clone();
    let mut representatives = Vec::new();
    for v in &z {
        if !fp::in_span(&span, v, p) {
            span.push(v.clone());
            span = fp::span(&span, p);
            representatives.push(LieCochain::from_flat(m, n, v));
        }
    }
    Ok(LieCohomologyGroup {
        degree: n,
        dim: z.len() - b.len(),
        cocycles: z,
        coboundaries: b,
        representatives,
    })
}

/// `H¹ = Der/IDer`, with derivations stored as `(f(e₀), …, f(e_{d−1}))`.
#[derive(Clone, Debug, Serialize)]
pub struct LieH1 {
    pub der: Matrix,
    pub ider: Matrix,
    pub dim: usize,
}

/// Der from `f([x,y]) = x·f(y) − y·f(x)` on basis pairs, IDer from
/// `a ↦ (x ↦ x·a)`.
pub fn lie_h1_der(m: &LieModule) -> LieH1 {
    let p = m.p();
    let k = m.dim();
    let ring = m.ring();
    let d = ring.dim();
    let mut rows: Matrix = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for r in 0..k {
                let mut row = vec![0; d * k];
                for (e, &c) in ring.basis_bracket(i, j).iter().enumerate() {
                    row[e * k + r] = (row[e * k + r] + c).rem_euclid(p);
                }
                for c in 0..k {
                    row[j * k + c] = (row[j * k + c] - m.action(i)[r][c]).rem_euclid(p);
                    row[i * k + c] = (row[i * k + c] + m.action(j)[r][c]).rem_euclid(p);
                }
                rows.push(row);
            }
        }
    }
    let der = if rows.is_empty() {
        fp::identity(d * k)
    } else {
        fp::span(&fp::kernel(&rows, d * k, p), p)
    };
    let inner: Matrix = (0..k)
        .map(|c| (0..d).flat_map(|x| (0..k).map(move |r| (x, r))).map(|(x, r)| m.action(x)[r][c]).collect())
        .collect();
    let ider = fp::span(&inner, p);
    let dim = der.len() - ider.len();
    LieH1 { der, ider, dim }
}
