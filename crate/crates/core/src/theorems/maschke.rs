//! Invariant complements by the averaging projector, and decomposition into
//! irreducible summands.

use serde::Serialize;

use super::TheoremError;
use crate::fp::{self, Matrix};
use crate::gmodule::{invariants, spin_submodule, GModule, Submodule};

#[derive(Clone, Debug)]
pub struct MaschkeComplement {
    pub complement: Submodule,
    /// `π̂ = |G|⁻¹·Σ ρ(g)πρ(g)⁻¹`, a projector onto `W` along the complement.
    pub projector: Matrix,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct MaschkeDecomposition {
    pub summands: Vec<Submodule>,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub summand_orders: Vec<String>,
    pub certified: bool,
}

impl MaschkeDecomposition {
    pub fn summary(&self) -> DecompositionSummary {
        DecompositionSummary {
            summand_orders: self.summands.iter().map(|s| s.order().to_string()).collect(),
            certified: self.certified,
        }
    }
}

/// Checks the hypotheses and returns `p`, or `None` when `A = 0`.
fn check_hypotheses(m: &GModule) -> Result<Option<i64>, TheoremError> {
    let fail = |s: &str| Err(TheoremError::HypothesisFailed(s.to_string()));
    if !m.group().is_abelian() {
        return fail("G abelian");
    }
    let factors = m.coeffs().factors();
    let Some(&p) = factors.first() else {
        return Ok(None);
    };
    if !fp::is_prime(p) || !m.coeffs().is_elementary(p) {
        return fail("A p-elementary abelian");
    }
    if m.group().order() as i64 % p == 0 {
        return fail("p does not divide |G|");
    }
    if !invariants(m).is_zero() {
        return fail("A^G = 0");
    }
    Ok(Some(p))
}

fn action_matrix(m: &GModule, g: usize) -> Matrix {
    // entries of the action matrix already lie in 0..p
    m.action(g).matrix().to_vec()
}

fn basis_of(s: &Submodule, p: i64) -> Matrix {
    fp::span(s.generators(), p)
}

fn is_invariant(m: &GModule, basis: &Matrix, p: i64) -> bool {
    m.group().generators().iter().all(|&g| {
        basis
            .iter()
            .all(|v| fp::in_span(basis, &m.act(g, v), p))
    })
}

/// An invariant complement of `W` in `A` for abelian `G` of order prime to
/// `p` acting on an `𝔽_p`-space without fixed points.
pub fn maschke_complement(m: &GModule, w: &Submodule) -> Result<MaschkeComplement, TheoremError> {
    let Some(p) = check_hypotheses(m)? else {
        return Ok(MaschkeComplement {
            complement: m.zero_submodule(),
            projector: Vec::new(),
            certified: true,
        });
    };
    let k = m.coeffs().rank();
    let wb = basis_of(w, p);
    if !is_invariant(m, &wb, p) {
        return Err(TheoremError::HypothesisFailed("W invariant".into()));
    }
    // π fixes the echelon basis of W and kills the non-pivot unit vectors
    let (_, pivots) = fp::rref(&wb, p);
    let mut pi = fp::zeros(k, k);
    for (row, &pc) in wb.iter().zip(&pivots) {
        for r in 0..k {
            pi[r][pc] = row[r];
        }
    }
    let order = m.group().order() as i64;
    let mut sum = fp::zeros(k, k);
    for g in 0..m.group().order() {
        let rg = action_matrix(m, g);
        let rginv = action_matrix(m, m.group().inv(g));
        sum = fp::mat_add(&sum, &fp::mat_mul(&fp::mat_mul(&rg, &pi, p), &rginv, p), p);
    }
    let projector = fp::mat_scale(fp::inv(order, p), &sum, p);
    let kernel = fp::kernel(&projector, k, p);
    let complement = m.submodule(&kernel)?;

    let cb = fp::span(&kernel, p);
    let invariant = is_invariant(m, &cb, p);
    let meets_trivially = fp::intersect(&wb, &cb, k, p).is_empty();
    let spans = wb.len() + cb.len() == k;
    Ok(MaschkeComplement {
        complement,
        projector,
        certified: invariant && meets_trivially && spans,
    })
}

/// `A = V₁ ⊕ … ⊕ V_r` with each `Vᵢ` irreducible, splitting off a minimal
/// spun submodule at each step.
pub fn maschke_decompose(m: &GModule) -> Result<MaschkeDecomposition, TheoremError> {
    let Some(p) = check_hypotheses(m)? else {
        return Ok(MaschkeDecomposition {
            summands: Vec::new(),
            certified: true,
        });
    };
    let k = m.coeffs().rank();
    let mut summands: Vec<Submodule> = Vec::new();
    let mut rest = m.whole_submodule();
    while !rest.is_zero() {
        let mut best: Option<Submodule> = None;
        for v in rest.elements() {
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let s = spin_submodule(m, &[v]);
            if best.as_ref().map_or(true, |b| s.order() < b.order()) {
                best = Some(s);
            }
        }
        let w = best.expect("nonzero module has a nonzero element");
        let complement = maschke_complement(m, &w)?.complement;
        let next = fp::intersect(&basis_of(&rest, p), &basis_of(&complement, p), k, p);
        summands.push(w);
        rest = if next.is_empty() {
            m.zero_submodule()
        } else {
            m.submodule(&next)?
        };
    }
    let certified = certify(m, &summands, p);
    Ok(MaschkeDecomposition { summands, certified })
}

fn certify(m: &GModule, summands: &[Submodule], p: i64) -> bool {
    let k = m.coeffs().rank();
    let mut partial: Matrix = Vec::new();
    for s in summands {
        let b = basis_of(s, p);
        if !partial.is_empty() && !fp::intersect(&partial, &b, k, p).is_empty() {
            return false;
        }
        if !is_invariant(m, &b, p) {
            return false;
        }
        let irreducible = s
            .elements()
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .all(|v| spin_submodule(m, &[v]) == *s);
        if !irreducible {
            return false;
        }
        partial.extend(b);
        partial = fp::span(&partial, p);
    }
    partial.len() == k
}
