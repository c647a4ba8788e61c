//! Lie rings over `𝔽_p` given by structure constants, their modules, the
//! Chevalley-Eilenberg complex, restricted structures and the Lie-side
//! verifiers.

mod catalog;
mod cochain;
mod restricted;
mod sequences;
mod theorems;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp::{self, Matrix};

pub use catalog::{
    abelian_lie, gl, gl_restricted, heisenberg, lie_catalog, lie_module_catalog, matrix_power_map,
    sl2, solvable2, solvable3,
};
pub use cochain::{
    ce_cohomology, ce_differential, check_ce_dd_zero, lie_h1_der, tuples, LieCochain,
    LieCohomologyGroup, LieH1,
};
pub use restricted::{
    is_semisimple_element, is_torus, validate_restricted, validate_restricted_map,
    RestrictedStructure, SemisimpleCertificate,
};
pub use sequences::{
    check_lie_inf_res, check_six_term, lie_connecting_map, lie_connecting_map_with_section,
    LieFaithfulReduction, LieInfRes, LieShortExactSequence,
};
pub use theorems::{
    all_subspaces, cartan_subalgebras, lie_frattini_instances, submodule_lattice_lie,
    torus_complement, verify_lie_composition_factors, verify_lie_frattini, verify_lie_theorems,
    verify_lie_vanishing, verify_torus_complements, LieFrattiniInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("[e{0}, e{0}] is nonzero")]
    NotAlternating(usize),
    #[error("[e{0}, e{1}] + [e{1}, e{0}] is nonzero")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on (e{0}, e{1}, e{2})")]
    JacobiFails(usize, usize, usize),
    #[error("action does not respect the bracket on (e{0}, e{1})")]
    NotHomomorphism(usize, usize),
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not closed under the bracket and the p-map")]
    NotClosed,
    #[error("[x^[p], y] differs from ad_x^p(y) for x = e{0}, y = e{1}")]
    Axiom1Fails(usize, usize),
    #[error("p-map is not p-semilinear on e{0}")]
    Axiom2Fails(usize),
    #[error("sum formula fails for (e{0}, e{1})")]
    Axiom3Fails(usize, usize),
    #[error("degree {0} exceeds the dimension")]
    Degree(usize),
    #[error("invalid short exact sequence: {0}")]
    InvalidSequence(String),
    #[error("enumeration exceeds the cap of {0}")]
    EnumerationCapExceeded(usize),
}

pub(crate) fn reduce(v: &[i64], p: i64) -> Vec<i64> {
    v.iter().map(|x| x.rem_euclid(p)).collect()
}

pub(crate) fn vadd(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x + y).rem_euclid(p)).collect()
}

pub(crate) fn vscale(k: i64, a: &[i64], p: i64) -> Vec<i64> {
    a.iter().map(|x| (k * x).rem_euclid(p)).collect()
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Coordinates of `v` in an echelon basis with the given pivots, or `None`
/// when `v` is outside the span.
pub(crate) fn coords(basis: &Matrix, pivots: &[usize], v: &[i64], p: i64) -> Option<Vec<i64>> {
    let c: Vec<i64> = pivots.iter().map(|&j| v[j].rem_euclid(p)).collect();
    let mut back = vec![0; v.len()];
    for (row, &x) in basis.iter().zip(&c) {
        back = vadd(&back, &vscale(x, row, p), p);
    }
    (back == reduce(v, p)).then_some(c)
}

/// Matrix of `op` restricted to the invariant span of an echelon basis.
pub(crate) fn restrict_operator(op: &Matrix, basis: &Matrix, pivots: &[usize], p: i64) -> Matrix {
    let k = basis.len();
    let mut out = fp::zeros(k, k);
    for (c, f) in basis.iter().enumerate() {
        let image = coords(basis, pivots, &fp::mat_vec(op, f, p), p)
            .expect("operator preserves the subspace");
        for r in 0..k {
            out[r][c] = image[r];
        }
    }
    out
}

fn dims_ok(bracket: &[Vec<Vec<i64>>], dim: usize) -> bool {
    bracket.len() == dim
        && bracket
            .iter()
            .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim))
}

/// A finite-dimensional Lie ring over `𝔽_p` with `[eᵢ,eⱼ] = Σ c[i][j][k]·e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieRing {
    p: i64,
    dim: usize,
    bracket: Vec<Vec<Vec<i64>>>,
}

pub fn validate_lie(p: i64, dim: usize, bracket: Vec<Vec<Vec<i64>>>) -> Result<LieRing, LieError> {
    if !fp::is_prime(p) {
        return Err(LieError::NotPrime(p));
    }
    if !dims_ok(&bracket, dim) {
        return Err(LieError::Shape(format!(
            "structure constants must have shape {dim}×{dim}×{dim}"
        )));
    }
    let bracket: Vec<Vec<Vec<i64>>> = bracket
        .iter()
        .map(|row| row.iter().map(|v| reduce(v, p)).collect())
        .collect();
    let ring = LieRing { p, dim, bracket };
    for i in 0..dim {
        if ring.bracket[i][i].iter().any(|&x| x != 0) {
            return Err(LieError::NotAlternating(i));
        }
        for j in i + 1..dim {
            if vadd(&ring.bracket[i][j], &ring.bracket[j][i], p).iter().any(|&x| x != 0) {
                return Err(LieError::NotAntisymmetric(i, j));
            }
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let (ei, ej, ek) = (unit(dim, i), unit(dim, j), unit(dim, k));
                let a = ring.bracket(&ei, &ring.bracket(&ej, &ek));
                let b = ring.bracket(&ej, &ring.bracket(&ek, &ei));
                let c = ring.bracket(&ek, &ring.bracket(&ei, &ej));
                if vadd(&vadd(&a, &b, p), &c, p).iter().any(|&x| x != 0) {
                    return Err(LieError::JacobiFails(i, j, k));
                }
            }
        }
    }
    Ok(ring)
}

impl LieRing {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<i64>>] {
        &self.bracket
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[i64] {
        &self.bracket[i][j]
    }

    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let p = self.p;
        let mut out = vec![0; self.dim];
        for (i, &a) in x.iter().enumerate() {
            if a % p == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                let ab = a * b % p;
                if ab == 0 {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&self.bracket[i][j]) {
                    *o = (*o + ab * c) % p;
                }
            }
        }
        reduce(&out, p)
    }

    /// `ad_x` with column `j` equal to `[x, e_j]`.
    pub fn ad(&self, x: &[i64]) -> Matrix {
        let mut m = fp::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket(x, &unit(self.dim, j)).into_iter().enumerate() {
                m[k][j] = c;
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().flatten().flatten().all(|&c| c == 0)
    }

    /// Span of `[u, w]` for `u`, `w` running over the two spans.
    pub fn bracket_span(&self, u: &Matrix, w: &Matrix) -> Matrix {
        let rows: Vec<Vec<i64>> = u
            .iter()
            .flat_map(|a| w.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.bracket(a, b))
            .collect();
        fp::span(&rows, self.p)
    }

    pub fn whole(&self) -> Matrix {
        fp::identity(self.dim)
    }

    /// `𝔤 = 𝔤¹ ⊇ 𝔤² = [𝔤,𝔤¹] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Matrix> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let next = self.bracket_span(&whole, series.last().unwrap());
            if next.len() == series.last().unwrap().len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().map_or(true, Vec::is_empty)
    }

    pub fn is_solvable(&self) -> bool {
        let mut d = self.whole();
        loop {
            if d.is_empty() {
                return true;
            }
            let next = self.bracket_span(&d, &d);
            if next.len() == d.len() {
                return false;
            }
            d = next;
        }
    }

    pub fn is_subalgebra(&self, basis: &Matrix) -> bool {
        let b = fp::span(basis, self.p);
        let br = self.bracket_span(&b, &b);
        br.iter().all(|v| fp::in_span(&b, v, self.p))
    }

    pub fn is_ideal(&self, basis: &Matrix) -> bool {
        let b = fp::span(basis, self.p);
        let br = self.bracket_span(&self.whole(), &b);
        br.iter().all(|v| fp::in_span(&b, v, self.p))
    }

    /// `{x : [x, s] ⊆ s}`.
    pub fn normalizer(&self, basis: &Matrix) -> Matrix {
        let p = self.p;
        let b = fp::span(basis, p);
        let annihilator = fp::kernel(&b, self.dim, p);
        if annihilator.is_empty() {
            return self.whole();
        }
        // rows: w·[e_k, s_j] = 0 for each annihilator w and basis vector s_j
        let mut rows = Vec::new();
        for s in &b {
            let images: Vec<Vec<i64>> = (0..self.dim).map(|k| self.bracket(&unit(self.dim, k), s)).collect();
            for w in &annihilator {
                rows.push(
                    images
                        .iter()
                        .map(|im| im.iter().zip(w).fold(0, |acc, (x, y)| (acc + x * y) % p))
                        .collect(),
                );
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        fp::span(&fp::kernel(&rows, self.dim, p), p)
    }

    pub fn center(&self) -> Matrix {
        let p = self.p;
        let mut rows = Vec::new();
        for j in 0..self.dim {
            for k in 0..self.dim {
                rows.push((0..self.dim).map(|i| self.bracket[i][j][k]).collect());
            }
        }
        if rows.is_empty() {
            return self.whole();
        }
        fp::span(&fp::kernel(&rows, self.dim, p), p)
    }

    /// The subalgebra on an echelon basis of `basis`, with structure
    /// constants in that basis.
    pub fn subalgebra(&self, basis: &Matrix) -> Result<(LieRing, Matrix), LieError> {
        let p = self.p;
        let (b, pivots) = fp::rref(basis, p);
        let k = b.len();
        let mut bracket = vec![vec![vec![0; k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                bracket[i][j] = coords(&b, &pivots, &self.bracket(&b[i], &b[j]), p).ok_or(LieError::NotClosed)?;
            }
        }
        Ok((LieRing { p, dim: k, bracket }, b))
    }

    /// `𝔤/𝔥` for an ideal `𝔥`, on the images of the non-pivot unit vectors.
    pub fn quotient(&self, ideal: &Matrix) -> Result<Quotient, LieError> {
        if !self.is_ideal(ideal) {
            return Err(LieError::NotIdeal);
        }
        let p = self.p;
        let (ideal, pivots) = fp::rref(ideal, p);
        let lifts: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let mut q = Quotient {
            ring: LieRing { p, dim: lifts.len(), bracket: Vec::new() },
            ideal,
            pivots,
            lifts,
        };
        let n = q.lifts.len();
        let mut bracket = vec![vec![vec![0; n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                bracket[a][b] = q.project(&self.bracket[q.lifts[a]][q.lifts[b]]);
            }
        }
        q.ring.bracket = bracket;
        Ok(q)
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: LieRing,
    pub ideal: Matrix,
    pivots: Vec<usize>,
    /// Quotient basis vector `a` is the image of `e_{lifts[a]}`.
    pub lifts: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[i64]) -> Vec<i64> {
        let p = self.ring.p;
        let mut v = reduce(v, p);
        for (row, &pc) in self.ideal.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                v = vadd(&v, &vscale(-c, row, p), p);
            }
        }
        self.lifts.iter().map(|&j| v[j]).collect()
    }
}

/// A module `ρ: 𝔤 → End(𝔽_p^m)` given by the images of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieModule {
    ring: LieRing,
    dim: usize,
    action: Vec<Matrix>,
}

pub fn validate_lie_module(ring: &LieRing, dim: usize, action: Vec<Matrix>) -> Result<LieModule, LieError> {
    let p = ring.p;
    if action.len() != ring.dim
        || action.iter().any(|a| a.len() != dim || a.iter().any(|r| r.len() != dim))
    {
        return Err(LieError::Shape(format!(
            "action needs {} matrices of size {dim}×{dim}",
            ring.dim
        )));
    }
    let action: Vec<Matrix> = action.iter().map(|a| a.iter().map(|r| reduce(r, p)).collect()).collect();
    let m = LieModule { ring: ring.clone(), dim, action };
    for i in 0..ring.dim {
        for j in i + 1..ring.dim {
            let lhs = m.rho(&ring.bracket[i][j]);
            let rhs = fp::mat_sub(
                &fp::mat_mul(&m.action[i], &m.action[j], p),
                &fp::mat_mul(&m.action[j], &m.action[i], p),
                p,
            );
            if lhs != rhs {
                return Err(LieError::NotHomomorphism(i, j));
            }
        }
    }
    Ok(m)
}

impl LieModule {
    pub fn trivial(ring: &LieRing, dim: usize) -> LieModule {
        LieModule {
            ring: ring.clone(),
            dim,
            action: vec![fp::zeros(dim, dim); ring.dim],
        }
    }

    pub fn adjoint(ring: &LieRing) -> LieModule {
        let action = (0..ring.dim).map(|i| ring.ad(&unit(ring.dim, i))).collect();
        LieModule { ring: ring.clone(), dim: ring.dim, action }
    }

    pub fn ring(&self) -> &LieRing {
        &self.ring
    }

    pub fn p(&self) -> i64 {
        self.ring.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn rho(&self, x: &[i64]) -> Matrix {
        let p = self.ring.p;
        let mut out = fp::zeros(self.dim, self.dim);
        for (a, &c) in self.action.iter().zip(x) {
            if c % p != 0 {
                out = fp::mat_add(&out, &fp::mat_scale(c, a, p), p);
            }
        }
        out
    }

    /// `A^𝔤 = {a : x·a = 0 for all x}` as an echelon basis.
    pub fn invariants(&self) -> Matrix {
        self.killed_by(&self.ring.whole())
    }

    /// `{a : ρ(x)a = 0 for x in the span}`.
    pub fn killed_by(&self, span: &Matrix) -> Matrix {
        let rows: Matrix = span.iter().flat_map(|x| self.rho(x)).collect();
        if rows.is_empty() {
            return fp::identity(self.dim);
        }
        fp::span(&fp::kernel(&rows, self.dim, self.ring.p), self.ring.p)
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<i64>]) -> Matrix {
        let p = self.ring.p;
        let mut basis = fp::span(vectors, p);
        let mut queue = basis.clone();
        while let Some(v) = queue.pop() {
            for a in &self.action {
                let w = fp::mat_vec(a, &v, p);
                if !fp::in_span(&basis, &w, p) {
                    basis.push(w.clone());
                    basis = fp::span(&basis, p);
                    queue.push(w);
                }
            }
        }
        basis
    }

    pub fn is_submodule(&self, basis: &Matrix) -> bool {
        let p = self.ring.p;
        let b = fp::span(basis, p);
        b.iter()
            .all(|v| self.action.iter().all(|a| fp::in_span(&b, &fp::mat_vec(a, v, p), p)))
    }

    /// The module for the subalgebra on the given basis (restriction of `ρ`).
    pub fn restrict(&self, sub: &LieRing, basis: &Matrix) -> LieModule {
        LieModule {
            ring: sub.clone(),
            dim: self.dim,
            action: basis.iter().map(|x| self.rho(x)).collect(),
        }
    }

    /// `ρ` restricted to a submodule, in the coordinates of its echelon basis.
    pub fn submodule(&self, basis: &Matrix) -> Result<(LieModule, Matrix), LieError> {
        let p = self.ring.p;
        if !self.is_submodule(basis) {
            return Err(LieError::NotClosed);
        }
        let (b, pivots) = fp::rref(basis, p);
        let action = self
            .action
            .iter()
            .map(|a| restrict_operator(a, &b, &pivots, p))
            .collect();
        Ok((LieModule { ring: self.ring.clone(), dim: b.len(), action }, b))
    }

    pub fn direct_sum(&self, other: &LieModule) -> LieModule {
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = fp::zeros(n, n);
                for r in 0..self.dim {
                    m[r][..self.dim].copy_from_slice(&a[r]);
                }
                for r in 0..other.dim {
                    m[self.dim + r][self.dim..].copy_from_slice(&b[r]);
                }
                m
            })
            .collect();
        LieModule { ring: self.ring.clone(), dim: n, action }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_constants(p: i64) -> Vec<Vec<Vec<i64>>> {
        // h, e, f
        let mut c = vec![vec![vec![0; 3]; 3]; 3];
        c[0][1] = vec![0, 2, 0];
        c[1][0] = vec![0, p - 2, 0];
        c[0][2] = vec![0, 0, p - 2];
        c[2][0] = vec![0, 0, 2];
        c[1][2] = vec![1, 0, 0];
        c[2][1] = vec![p - 1, 0, 0];
        c
    }

    #[test]
    fn validation() {
        assert!(validate_lie(5, 2, vec![vec![vec![0; 2]; 2]; 2]).is_ok());
        let mut h = vec![vec![vec![0; 3]; 3]; 3];
        h[0][1] = vec![0, 0, 1];
        h[1][0] = vec![0, 0, 4];
        let heis = validate_lie(5, 3, h).unwrap();
        assert!(heis.is_nilpotent());
        assert_eq!(heis.center(), vec![vec![0, 0, 1]]);
        assert!(validate_lie(7, 3, sl2_constants(7)).is_ok());
        let mut bad = sl2_constants(7);
        bad[0][1] = vec![0, 5, 0];
        bad[1][0] = vec![0, 2, 0];
        assert!(matches!(validate_lie(7, 3, bad), Err(LieError::JacobiFails(..))));
        let mut diag = vec![vec![vec![0; 2]; 2]; 2];
        diag[1][1] = vec![1, 0];
        assert_eq!(validate_lie(3, 2, diag), Err(LieError::NotAlternating(1)));
        assert_eq!(validate_lie(4, 1, vec![vec![vec![0]]]), Err(LieError::NotPrime(4)));
    }

    #[test]
    fn structure() {
        let sl = validate_lie(7, 3, sl2_constants(7)).unwrap();
        assert!(!sl.is_solvable());
        assert!(sl.center().is_empty());
        assert_eq!(sl.normalizer(&vec![vec![1, 0, 0]]), vec![vec![1, 0, 0]]);
        let mut s = vec![vec![vec![0; 2]; 2]; 2];
        s[0][1] = vec![0, 1];
        s[1][0] = vec![0, 2];
        let aff = validate_lie(3, 2, s).unwrap();
        assert!(aff.is_solvable() && !aff.is_nilpotent());
        let q = aff.quotient(&vec![vec![0, 1]]).unwrap();
        assert_eq!(q.ring.dim(), 1);
        assert!(aff.quotient(&vec![vec![1, 0]]).is_err());
        let m = validate_lie_module(&aff, 1, vec![vec![vec![1]], vec![vec![0]]]).unwrap();
        assert!(m.invariants().is_empty());
        assert!(matches!(
            validate_lie_module(&aff, 1, vec![vec![vec![1]], vec![vec![1]]]),
            Err(LieError::NotHomomorphism(0, 1))
        ));
    }
}
