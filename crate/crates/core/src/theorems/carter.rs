//! Carter subgroups and the Frattini argument `G = H·N_G(C)`.

use super::{TheoremError, TheoremReport};
use crate::groups::{enumerate_subgroups_capped, FiniteGroup, Subgroup};
use crate::limits::Limits;

/// Nilpotent self-normalizing subgroups of `h`.
pub fn find_carter_subgroups(h: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>, TheoremError> {
    let subs = enumerate_subgroups_capped(h, limits.order_cap)?;
    Ok(subs
        .into_iter()
        .filter(|c| c.is_nilpotent(h) && h.normalizer(c) == *c)
        .collect())
}

fn intersect(a: &Subgroup, b: &Subgroup) -> Vec<usize> {
    a.elements().iter().copied().filter(|&x| b.contains(x)).collect()
}

/// Checks `G = H·N_G(C)` for `H ⊴ G` and `C` Carter in `H`, and reports the
/// abelian-quotient hypothesis separately.
pub fn verify_frattini(g: &FiniteGroup, h: &Subgroup, c: &Subgroup) -> TheoremReport {
    let mut report = TheoremReport::new("frattini");
    let normal = report.hypothesis(
        "H normal in G",
        h.is_normal(g),
        h.check_normal(g).err().map(|e| e.to_string()),
    );
    let inside = c.is_subgroup_of(h);
    let nilpotent = c.is_nilpotent(g);
    let n_h = intersect(&g.normalizer(c), h);
    let self_normalizing = n_h.as_slice() == c.elements();
    let carter = report.hypothesis(
        "C Carter in H",
        inside && nilpotent && self_normalizing,
        Some(if !inside {
            "C is not contained in H".to_string()
        } else if !nilpotent {
            "C is not nilpotent".to_string()
        } else {
            format!("N_H(C) has order {}", n_h.len())
        }),
    );
    let n = g.normalizer(c);
    let whole = Subgroup::whole(g);
    let n_normal = n.is_normal(g);
    let derived_inside = g.commutator_subgroup(&whole, &whole).is_subgroup_of(&n);
    report.hypothesis(
        "N_G(C) normal with G/N_G(C) abelian",
        n_normal && derived_inside,
        Some(if n_normal {
            "G/N_G(C) is not abelian".to_string()
        } else {
            "N_G(C) is not normal".to_string()
        }),
    );
    report.datum("order_G", g.order());
    report.datum("order_H", h.order());
    report.datum("order_C", c.order());
    report.datum("order_N", n.order());
    if !(normal && carter) {
        return report;
    }
    let product = g.product_set(h, &n);
    report.datum("order_HN", product.len());
    report.conclusion_holds = Some(product.len() == g.order());

    // no coset aN ≠ N is fixed by C acting through a ↦ a^c
    let mut fixed = 0usize;
    let mut seen = vec![false; g.order()];
    for a in 0..g.order() {
        if seen[a] {
            continue;
        }
        for &x in n.elements() {
            seen[g.mul(a, x)] = true;
        }
        if n.contains(a) {
            continue;
        }
        let moved = c
            .elements()
            .iter()
            .any(|&y| !n.contains(g.mul(g.inv(a), g.conj(a, y))));
        if !moved {
            fixed += 1;
        }
    }
    report.datum("fixed_nontrivial_cosets", fixed);
    report.datum("coset_module_fixed_points_trivial", fixed == 0);
    report
}

/// Every triple `(G, H, C)` with `H` normal and solvable in `G` and `C`
/// Carter in `H`.
pub fn frattini_instances(g: &FiniteGroup, limits: &Limits) -> Result<Vec<TheoremReport>, TheoremError> {
    let mut out = Vec::new();
    for h in enumerate_subgroups_capped(g, limits.order_cap)? {
        if !h.is_normal(g) {
            continue;
        }
        let hg = h.to_group(g);
        if !hg.is_solvable() {
            continue;
        }
        for c in find_carter_subgroups(&hg, limits)? {
            let lifted: Vec<usize> = c.elements().iter().map(|&i| h.elements()[i]).collect();
            let c = Subgroup::new(g, lifted)?;
            out.push(verify_frattini(g, &h, &c));
        }
    }
    Ok(out)
}
