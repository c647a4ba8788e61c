//! Lie-side verifiers: nilpotent vanishing, composition factors, the
//! Frattini sum `𝔤 = 𝔦 + N_𝔤(𝔠)` and invariant complements under a torus.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cochain::{lie_h1_der, tuples};
use super::restricted::{is_torus, RestrictedStructure};
use super::sequences::preimage;
use super::{LieError, LieModule, LieRing};
use crate::fp::{self, Matrix};
use crate::limits::Limits;
use crate::theorems::TheoremReport;

/// Every subspace of `𝔽_p^n`, as reduced echelon bases.
pub fn all_subspaces(n: usize, p: i64, cap: usize) -> Result<Vec<Matrix>, LieError> {
    let mut out = Vec::new();
    for r in 0..=n {
        for pivots in tuples(n, r) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let count = (p as usize).checked_pow(free.len() as u32).unwrap_or(usize::MAX);
            if out.len().saturating_add(count) > cap {
                return Err(LieError::EnumerationCapExceeded(cap));
            }
            for mut code in 0..count {
                let mut m = fp::zeros(r, n);
                for (i, &pc) in pivots.iter().enumerate() {
                    m[i][pc] = 1;
                }
                for &(i, c) in &free {
                    m[i][c] = (code % p as usize) as i64;
                    code /= p as usize;
                }
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Nilpotent self-normalizing subalgebras.
pub fn cartan_subalgebras(ring: &LieRing, cap: usize) -> Result<Vec<Matrix>, LieError> {
    let mut out = Vec::new();
    for c in all_subspaces(ring.dim(), ring.p(), cap)? {
        if !ring.is_subalgebra(&c) {
            continue;
        }
        let (sub, _) = ring.subalgebra(&c)?;
        if sub.is_nilpotent() && ring.normalizer(&c) == c {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LieFrattiniInstance {
    pub ideal: Matrix,
    pub cartan: Matrix,
    pub normalizer: Matrix,
    pub sum_dim: usize,
    pub holds: bool,
}

/// `𝔤 = 𝔦 + N_𝔤(𝔠)` for every ideal `𝔦` and every Cartan subalgebra `𝔠` of `𝔦`.
pub fn lie_frattini_instances(ring: &LieRing, cap: usize) -> Result<Vec<LieFrattiniInstance>, LieError> {
    let p = ring.p();
    let mut out = Vec::new();
    for ideal in all_subspaces(ring.dim(), p, cap)? {
        if !ring.is_ideal(&ideal) {
            continue;
        }
        let (sub, basis) = ring.subalgebra(&ideal)?;
        for c in cartan_subalgebras(&sub, cap)? {
            let lifted: Matrix = c
                .iter()
                .map(|co| {
                    (0..ring.dim())
                        .map(|j| basis.iter().zip(co).fold(0, |acc, (b, &x)| (acc + b[j] * x) % p))
                        .collect()
                })
                .collect();
            let cartan = fp::span(&lifted, p);
            let normalizer = ring.normalizer(&cartan);
            let mut rows = ideal.clone();
            rows.extend(normalizer.iter().cloned());
            let sum_dim = fp::rank(&rows, p);
            out.push(LieFrattiniInstance {
                ideal: ideal.clone(),
                cartan,
                normalizer,
                sum_dim,
                holds: sum_dim == ring.dim(),
            });
        }
    }
    Ok(out)
}

pub fn verify_lie_frattini(ring: &LieRing, cap: usize) -> Result<TheoremReport, LieError> {
    let mut report = TheoremReport::new("lie frattini");
    let instances = lie_frattini_instances(ring, cap)?;
    let failures = instances.iter().filter(|i| !i.holds).count();
    report.datum("instances", instances.len());
    report.datum("failures", failures);
    if let Some(bad) = instances.iter().find(|i| !i.holds) {
        report.datum("witness", bad);
    }
    report.conclusion_holds = Some(failures == 0);
    Ok(report)
}

fn nilpotent_hypotheses(report: &mut TheoremReport, m: &LieModule) -> bool {
    let series = m.ring().lower_central_series();
    let nilpotent = series.last().map_or(true, Vec::is_empty);
    report.datum("lower_central_dims", series.iter().map(Vec::len).collect::<Vec<_>>());
    let a = report.hypothesis(
        "g nilpotent",
        nilpotent,
        Some(format!("lower central series stops at dimension {}", series.last().map_or(0, Vec::len))),
    );
    let fixed = m.invariants();
    let b = report.hypothesis(
        "A^g = 0",
        fixed.is_empty(),
        fixed.first().map(|v| format!("fixed vector {v:?}")),
    );
    a && b
}

/// `H¹(𝔤, A) = 0` for nilpotent `𝔤` and `A^𝔤 = 0`.
pub fn verify_lie_vanishing(m: &LieModule) -> TheoremReport {
    let mut report = TheoremReport::new("lie nilpotent vanishing");
    let ok = nilpotent_hypotheses(&mut report, m);
    let h1 = lie_h1_der(m);
    report.datum("h1_dim", h1.dim);
    if ok {
        report.conclusion_holds = Some(h1.dim == 0);
    }
    report
}

/// All submodules, as reduced echelon bases.
pub fn submodule_lattice_lie(m: &LieModule, cap: usize) -> Result<Vec<Matrix>, LieError> {
    let p = m.p();
    let mut found: BTreeSet<Matrix> = BTreeSet::new();
    found.insert(Vec::new());
    let mut cyclic: BTreeSet<Matrix> = BTreeSet::new();
    for v in all_subspaces(m.dim(), p, cap)?.into_iter().filter(|s| s.len() == 1) {
        cyclic.insert(m.spin(&v));
    }
    let cyclic: Vec<Matrix> = cyclic.into_iter().collect();
    let mut frontier: Vec<Matrix> = vec![Vec::new()];
    while let Some(s) = frontier.pop() {
        for c in &cyclic {
            let mut rows = s.clone();
            rows.extend(c.iter().cloned());
            let sum = fp::span(&rows, p);
            if found.insert(sum.clone()) {
                if found.len() > cap {
                    return Err(LieError::EnumerationCapExceeded(cap));
                }
                frontier.push(sum);
            }
        }
    }
    let mut out: Vec<Matrix> = found.into_iter().collect();
    out.sort_by_key(Vec::len);
    Ok(out)
}

/// `(U/V)^𝔤 = 0` for all submodules `V < U`.
pub fn verify_lie_composition_factors(m: &LieModule, cap: usize) -> Result<TheoremReport, LieError> {
    let mut report = TheoremReport::new("lie composition factors");
    let ok = nilpotent_hypotheses(&mut report, m);
    let p = m.p();
    let lattice = submodule_lattice_lie(m, cap)?;
    report.datum("submodules", lattice.len());
    if !ok {
        return Ok(report);
    }
    let mut pairs = 0usize;
    let mut witness = None;
    for u in &lattice {
        for v in &lattice {
            if v.len() >= u.len() || !v.iter().all(|x| fp::in_span(u, x, p)) {
                continue;
            }
            pairs += 1;
            let mut fixed = u.clone();
            for a in m.actions() {
                fixed = preimage(a, &fixed, v, p);
            }
            if fixed.len() > v.len() && witness.is_none() {
                witness = Some((u.len(), v.len()));
            }
        }
    }
    report.datum("pairs_checked", pairs);
    report.datum("witness", witness);
    report.conclusion_holds = Some(witness.is_none());
    Ok(report)
}

fn flatten(m: &Matrix) -> Vec<i64> {
    m.concat()
}

fn unflatten(v: &[i64], n: usize) -> Matrix {
    v.chunks(n).map(<[i64]>::to_vec).collect()
}

/// Basis of the associative algebra generated by the action matrices.
fn action_algebra(m: &LieModule) -> Matrix {
    let p = m.p();
    let n = m.dim();
    let mut basis = fp::span(&[flatten(&fp::identity(n))], p);
    let mut queue = vec![fp::identity(n)];
    while let Some(x) = queue.pop() {
        for a in m.actions() {
            let y = fp::mat_mul(a, &x, p);
            let fy = flatten(&y);
            if !fp::in_span(&basis, &fy, p) {
                basis.push(fy);
                basis = fp::span(&basis, p);
                queue.push(y);
            }
        }
    }
    basis
}

fn kernel_of(a: &Matrix, n: usize, p: i64) -> Matrix {
    fp::span(&fp::kernel(a, n, p), p)
}

fn image_of(a: &Matrix, p: i64) -> Matrix {
    fp::span(&fp::transpose(a), p)
}

/// An invariant complement of the irreducible submodule `w`, built from the
/// Fitting decompositions of the elements of the algebra generated by the
/// action. Requires that algebra to be commutative and semisimple, which
/// holds for a torus acting with `ρ(t^{[p]}) = ρ(t)^p`.
pub fn torus_complement(m: &LieModule, w: &Matrix, cap: usize) -> Result<Matrix, LieError> {
    let p = m.p();
    let n = m.dim();
    let w = fp::span(w, p);
    if w.is_empty() || !m.is_submodule(&w) {
        return Err(LieError::NotClosed);
    }
    let algebra = action_algebra(m);
    let count = (p as usize).checked_pow(algebra.len() as u32).unwrap_or(usize::MAX);
    if count > cap {
        return Err(LieError::EnumerationCapExceeded(cap));
    }
    let elements: Vec<Matrix> = (0..count)
        .map(|mut code| {
            let mut v = vec![0; n * n];
            for b in &algebra {
                let c = (code % p as usize) as i64;
                code /= p as usize;
                v = super::vadd(&v, &super::vscale(c, b, p), p);
            }
            unflatten(&v, n)
        })
        .collect();
    // refine A into pieces on which every element is zero or invertible
    let mut pieces: Vec<Matrix> = vec![fp::identity(n)];
    for r in &elements {
        let rn = fp::mat_pow(r, n.max(1) as u64, p);
        let (k, i) = (kernel_of(&rn, n, p), image_of(&rn, p));
        pieces = pieces
            .into_iter()
            .flat_map(|c| [fp::intersect(&c, &k, n, p), fp::intersect(&c, &i, n, p)])
            .filter(|s| !s.is_empty())
            .collect();
    }
    let Some(home) = pieces.iter().position(|c| w.iter().all(|v| fp::in_span(c, v, p))) else {
        return Err(LieError::Shape("submodule is not irreducible".into()));
    };
    let orbit = |v: &Vec<i64>| -> Matrix {
        fp::span(&elements.iter().map(|r| fp::mat_vec(r, v, p)).collect::<Vec<_>>(), p)
    };
    if orbit(&w[0]) != w {
        return Err(LieError::Shape("submodule is not irreducible".into()));
    }
    let mut covered = w.clone();
    let mut complement: Matrix = Vec::new();
    for v in &pieces[home] {
        if fp::in_span(&covered, v, p) {
            continue;
        }
        let line = orbit(v);
        covered.extend(line.iter().cloned());
        covered = fp::span(&covered, p);
        complement.extend(line);
    }
    for (i, c) in pieces.iter().enumerate() {
        if i != home {
            complement.extend(c.iter().cloned());
        }
    }
    Ok(fp::span(&complement, p))
}

/// For a torus `𝔱` acting with `ρ(t^{[p]}) = ρ(t)^p` and `A^𝔱 = 0`, every
/// irreducible submodule has an invariant complement.
pub fn verify_torus_complements(
    r: &RestrictedStructure,
    m: &LieModule,
    cap: usize,
) -> Result<TheoremReport, LieError> {
    let p = m.p();
    let n = m.dim();
    let d = r.ring().dim();
    let mut report = TheoremReport::new("torus complements");
    let torus = is_torus(r, &r.ring().whole())?;
    report.hypothesis("t torus", torus, Some("not abelian or [p] has a kernel".into()));
    let compatible = (0..d).all(|i| {
        m.rho(&r.images()[i]) == fp::mat_pow(m.action(i), p as u64, p)
    });
    report.hypothesis("rho(t^[p]) = rho(t)^p", compatible, Some("differs on a basis vector".into()));
    let fixed = m.invariants();
    report.hypothesis("A^t = 0", fixed.is_empty(), fixed.first().map(|v| format!("fixed vector {v:?}")));
    if !report.hypotheses_hold() {
        return Ok(report);
    }
    let lattice = submodule_lattice_lie(m, cap)?;
    let minimal: Vec<&Matrix> = lattice
        .iter()
        .filter(|s| !s.is_empty())
        .filter(|s| {
            !lattice
                .iter()
                .any(|t| !t.is_empty() && t.len() < s.len() && t.iter().all(|v| fp::in_span(s, v, p)))
        })
        .collect();
    let mut found = 0usize;
    for w in &minimal {
        let c = torus_complement(m, w, cap)?;
        let direct = fp::intersect(w, &c, n, p).is_empty() && w.len() + c.len() == n;
        if direct && m.is_submodule(&c) {
            found += 1;
        }
    }
    report.datum("irreducible_submodules", minimal.len());
    report.datum("complements_found", found);
    report.conclusion_holds = Some(found == minimal.len());
    Ok(report)
}

/// The Lie-side battery for one module. The torus check runs when a
/// restricted structure is supplied.
pub fn verify_lie_theorems(
    m: &LieModule,
    restricted: Option<&RestrictedStructure>,
    limits: &Limits,
) -> Result<Vec<TheoremReport>, LieError> {
    let cap = limits.lattice_cap;
    let mut out = vec![
        verify_lie_vanishing(m),
        verify_lie_composition_factors(m, cap)?,
        verify_lie_frattini(m.ring(), cap)?,
    ];
    if let Some(r) = restricted {
        out.push(verify_torus_complements(r, m, cap)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{
        abelian_lie, heisenberg, lie_catalog, solvable3, validate_lie_module, validate_restricted,
    };

    #[test]
    fn subspace_counts() {
        // Gaussian binomials: 1 + 15 + 35 + 15 + 1 over 𝔽₂ in dimension 4
        assert_eq!(all_subspaces(4, 2, 4096).unwrap().len(), 67);
        assert_eq!(all_subspaces(2, 3, 100).unwrap().len(), 6);
        assert!(all_subspaces(4, 5, 10).is_err());
    }

    #[test]
    fn heisenberg_vanishing() {
        let h = heisenberg(5);
        let m = validate_lie_module(
            &h,
            2,
            vec![vec![vec![1, 0], vec![0, 2]], vec![vec![0; 2]; 2], vec![vec![0; 2]; 2]],
        )
        .unwrap();
        let r = verify_lie_vanishing(&m);
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion_holds, Some(true));
        let c = verify_lie_composition_factors(&m, 4096).unwrap();
        assert_eq!(c.conclusion_holds, Some(true));
        assert_eq!(c.data["submodules"], 4);
    }

    #[test]
    fn frattini_on_solvable() {
        let g = solvable3(3);
        let instances = lie_frattini_instances(&g, 4096).unwrap();
        assert!(instances.iter().any(|i| i.ideal.len() == 2));
        assert!(instances.iter().all(|i| i.holds));
        for (name, ring) in lie_catalog() {
            let r = verify_lie_frattini(&ring, 4096).unwrap();
            assert_eq!(r.conclusion_holds, Some(true), "{name}: {:?}", r.data);
        }
    }

    #[test]
    fn torus_with_distinct_eigenvalues() {
        let t = abelian_lie(5, 1);
        let r = validate_restricted(&t, vec![vec![1]]).unwrap();
        let m = validate_lie_module(&t, 2, vec![vec![vec![2, 0], vec![0, 3]]]).unwrap();
        let report = verify_torus_complements(&r, &m, 4096).unwrap();
        assert!(report.hypotheses_hold(), "{report:?}");
        assert_eq!(report.data["complements_found"], 2);
        assert_eq!(report.conclusion_holds, Some(true));
        let c = torus_complement(&m, &vec![vec![1, 0]], 4096).unwrap();
        assert_eq!(c, vec![vec![0, 1]]);
    }
}
