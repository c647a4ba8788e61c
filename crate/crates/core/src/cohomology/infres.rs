//! Inflation, restriction and the conjugation action on `H¹(H, A)`.

use serde::Serialize;

use super::{h1_der, order_of, Cochain, CohomologyError, ExactnessNode, ExactnessReport, H1Der};
use crate::abelian::{kernel_from_rows, AbelianHom, SubgroupPresentation};
use crate::gmodule::{inflate, invariants, restrict, DerivedModule, GModule};
use crate::groups::Subgroup;

/// The three `H¹` groups around a normal subgroup and the maps between them.
#[derive(Clone, Debug)]
pub struct H1Maps {
    /// `H¹(G/H, A^H)`.
    pub quotient: H1Der,
    /// `H¹(G, A)`.
    pub whole: H1Der,
    /// `H¹(H, A)`.
    pub sub: H1Der,
    pub inflation: AbelianHom,
    pub restriction: AbelianHom,
    /// Both maps send cocycles to cocycles and coboundaries to coboundaries.
    pub well_defined: bool,
}

/// Inflation by precomposing with `G → G/H`, restriction by restricting the
/// domain to `H`.
pub fn h1_maps(m: &GModule, h: &Subgroup) -> Result<H1Maps, CohomologyError> {
    let DerivedModule::Inflated {
        module: qm,
        projection,
        embedding,
    } = inflate(m, h)?
    else {
        unreachable!("inflate returns an inflated module")
    };
    let hm = restrict(m, h)?;
    let quotient = h1_der(&qm);
    let whole = h1_der(m);
    let sub = h1_der(&hm);
    let k = m.coeffs().rank();
    let kq = qm.coeffs().rank();
    let mut well_defined = true;

    let inflate_cochain = |f: &Cochain| -> Cochain {
        let values = (0..m.group().order())
            .flat_map(|g| embedding.apply(f.value(projection.apply(g), kq)))
            .collect();
        Cochain { degree: 1, values }
    };
    let restrict_cochain = |f: &Cochain| -> Cochain {
        let values = h
            .elements()
            .iter()
            .flat_map(|&x| f.value(x, k).to_vec())
            .collect();
        Cochain { degree: 1, values }
    };

    let mut images = Vec::new();
    for rep in &quotient.h1.representatives {
        match whole.classify(&inflate_cochain(rep)) {
            Some(c) => images.push(c),
            None => {
                well_defined = false;
                images.push(whole.h1.group.zero());
            }
        }
    }
    // inner derivations of the quotient inflate to inner derivations
    for j in 0..kq {
        let mut e = qm.coeffs().zero();
        e[j] = 1;
        let values = (0..qm.group().order())
            .flat_map(|q| qm.coeffs().sub(&qm.act(q, &e), &e))
            .collect();
        let inner = Cochain { degree: 1, values };
        if whole.classify(&inflate_cochain(&inner)) != Some(whole.h1.group.zero()) {
            well_defined = false;
        }
    }
    let inflation = AbelianHom::from_images(&quotient.h1.group, &whole.h1.group, &images)
        .expect("images of generators respect their orders");

    let mut images = Vec::new();
    for rep in &whole.h1.representatives {
        match sub.classify(&restrict_cochain(rep)) {
            Some(c) => images.push(c),
            None => {
                well_defined = false;
                images.push(sub.h1.group.zero());
            }
        }
    }
    let restriction = AbelianHom::from_images(&whole.h1.group, &sub.h1.group, &images)
        .expect("images of generators respect their orders");

    Ok(H1Maps {
        quotient,
        whole,
        sub,
        inflation,
        restriction,
        well_defined,
    })
}

/// The action of `x ∈ G` on `H¹(H, A)`: `(x·f)(h) = x·f(x⁻¹hx)`.
pub fn conj_action_matrix(m: &GModule, h: &Subgroup, sub: &H1Der, x: usize) -> Option<AbelianHom> {
    let g = m.group();
    let k = m.coeffs().rank();
    let mut images = Vec::new();
    for rep in &sub.h1.representatives {
        let values = h
            .elements()
            .iter()
            .flat_map(|&y| {
                let pos = h.position(g.conj(y, x)).expect("H is normal");
                m.act(x, rep.value(pos, k))
            })
            .collect();
        images.push(sub.classify(&Cochain { degree: 1, values })?);
    }
    AbelianHom::from_images(&sub.h1.group, &sub.h1.group, &images).ok()
}

/// `H¹(H, A)^{G/H}` as a subgroup of `H¹(H, A)`, together with `H¹(H, A)`.
pub fn conj_action_fixed(
    m: &GModule,
    h: &Subgroup,
) -> Result<(H1Der, SubgroupPresentation), CohomologyError> {
    h.check_normal(m.group())?;
    let sub = h1_der(&restrict(m, h)?);
    let fixed = fixed_classes(m, h, &sub);
    Ok((sub, fixed))
}

fn fixed_classes(m: &GModule, h: &Subgroup, sub: &H1Der) -> SubgroupPresentation {
    let grp = &sub.h1.group;
    let mut rows = Vec::new();
    for &x in m.group().generators() {
        let t = conj_action_matrix(m, h, sub, x).expect("conjugates of cocycles are cocycles");
        for (r, row) in t.matrix().iter().enumerate() {
            let sparse: Vec<(usize, i64)> = row
                .iter()
                .enumerate()
                .map(|(c, &v)| (c, v - i64::from(r == c)))
                .filter(|&(_, v)| v != 0)
                .collect();
            rows.push((grp.factors()[r], sparse));
        }
    }
    let lat = kernel_from_rows(grp, grp.exponent(), rows);
    SubgroupPresentation::from_lattice(grp, lat)
}

/// Checks `0 → H¹(G/H, A^H) → H¹(G, A) → H¹(H, A)` and that the image of
/// restriction is fixed by `G/H`.
pub fn check_inf_res_exact(m: &GModule, h: &Subgroup) -> Result<ExactnessReport, CohomologyError> {
    h.check_normal(m.group())?;
    let maps = h1_maps(m, h)?;
    let mut report = ExactnessReport::default();
    let ker_inf = maps.inflation.kernel();
    report.nodes.push(ExactnessNode {
        label: "H1(G/H,A^H)".into(),
        ker_order: order_of(&ker_inf.group),
        im_order: 1,
        exact: ker_inf.group.is_trivial(),
        witness: (!ker_inf.group.is_trivial()).then(|| "inflation has a kernel".to_string()),
    });
    report.push_exact_at("H1(G,A)", &maps.inflation, &maps.restriction);
    let fixed = fixed_classes(m, h, &maps.sub);
    let image = maps.restriction.image();
    let contained = image.generators().iter().all(|v| fixed.contains(v));
    report.nodes.push(ExactnessNode {
        label: "im(res) in H1(H,A)^(G/H)".into(),
        ker_order: order_of(&fixed.group),
        im_order: order_of(&image.group),
        exact: contained,
        witness: (!contained).then(|| "a restricted class is moved by G/H".to_string()),
    });
    report.nodes.push(ExactnessNode {
        label: "maps well defined".into(),
        ker_order: 0,
        im_order: 0,
        exact: maps.well_defined,
        witness: (!maps.well_defined).then(|| "a map failed on representatives".to_string()),
    });
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulReduction {
    pub inflation_is_iso: bool,
    pub fixed_is_zero: bool,
}

/// For `H` central, acting trivially, with `A^G = 0`: inflation
/// `H¹(G/H, A) → H¹(G, A)` is an isomorphism and `H¹(H, A)^{G/H} = 0`.
/// Returns `None` when the hypotheses fail.
pub fn faithful_reduction_check(
    m: &GModule,
    h: &Subgroup,
) -> Result<Option<FaithfulReduction>, CohomologyError> {
    let center = m.group().center();
    let kernel = m.action_kernel();
    if !h.is_subgroup_of(&center) || !h.is_subgroup_of(&kernel) || !invariants(m).is_zero() {
        return Ok(None);
    }
    let maps = h1_maps(m, h)?;
    let inflation_is_iso = maps.inflation.is_injective() && maps.inflation.is_surjective();
    let fixed = fixed_classes(m, h, &maps.sub);
    Ok(Some(FaithfulReduction {
        inflation_is_iso,
        fixed_is_zero: fixed.group.is_trivial(),
    }))
}
