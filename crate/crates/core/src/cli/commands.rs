//! One function per command, each returning report entries.

use serde_json::json;

use super::document::{GModuleSpec, InputDocument, LieSpec, Payload};
use super::report::{Entry, Status};
use super::{CliError, Options};
use crate::catalog::{module_catalog, small_groups, symmetric};
use crate::cohomology::{
    check_dd_zero, check_inf_res_exact, check_long_exact, cohomology_cost, cohomology_group_with,
    connecting_map, faithful_reduction_check, h1_der, CohomologyError,
};
use crate::gmodule::{invariants, is_irreducible, GModule};
use crate::groups::{enumerate_subgroups_capped, FiniteGroup, Subgroup};
use crate::liering::{
    all_subspaces, ce_cohomology, check_ce_dd_zero, check_lie_inf_res, check_six_term, gl_restricted,
    is_semisimple_element, is_torus, lie_catalog, lie_connecting_map, lie_h1_der, lie_module_catalog,
    validate_restricted, verify_lie_frattini, verify_lie_theorems, LieError,
};
use crate::theorems::{
    frattini_instances, maschke_complement, maschke_decompose, schur_check, vanishing_battery,
    verify_composition_factors, verify_nilpotent_vanishing, BatteryConfig, TheoremError,
};

fn budget(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::DegreeCapExceeded { .. } | CohomologyError::SizeBudgetExceeded { .. } => {
            CliError::Budget(e.to_string())
        }
        other => CliError::Validation(other.to_string()),
    }
}

fn theorem_err(e: TheoremError) -> CliError {
    match e {
        TheoremError::Cohomology(c) => budget(c),
        other => CliError::Validation(other.to_string()),
    }
}

fn lie_err(e: LieError) -> CliError {
    match e {
        LieError::EnumerationCapExceeded(_) => CliError::Budget(e.to_string()),
        other => CliError::Validation(other.to_string()),
    }
}

fn wrong_kind(command: &str, doc: &InputDocument) -> CliError {
    CliError::WrongKind {
        command: command.to_string(),
        kind: doc.payload.kind().to_string(),
    }
}

fn gmodule<'a>(command: &str, doc: &'a InputDocument) -> Result<&'a GModuleSpec, CliError> {
    match &doc.payload {
        Payload::Gmodule(m) => Ok(m),
        _ => Err(wrong_kind(command, doc)),
    }
}

fn liering<'a>(command: &str, doc: &'a InputDocument) -> Result<&'a LieSpec, CliError> {
    match &doc.payload {
        Payload::Liering(l) => Ok(l),
        _ => Err(wrong_kind(command, doc)),
    }
}

pub fn run(command: &str, doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    match command {
        "cohomology" => cohomology(doc, opts),
        "h1" => h1(doc, opts),
        "inf-res" => inf_res(doc, opts),
        "les" => les(doc, opts),
        "vanishing" => vanishing(doc, opts),
        "frattini" => frattini(doc, opts),
        "maschke" => maschke(doc, opts),
        "schur" => schur(doc, opts),
        "lie-cohomology" => lie_cohomology(doc, opts),
        "lie-h1" => lie_h1(doc),
        "lie-inf-res" => lie_inf_res(doc, opts),
        "lie-six-term" => les(doc, opts),
        "lie-restricted" => lie_restricted(doc),
        "lie-theorems" => lie_theorems(doc, opts),
        "suite" => suite(doc, opts),
        other => Err(CliError::UnknownCommand(other.to_string())),
    }
}

fn cohomology(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let m = gmodule("cohomology", doc)?.build(&opts.limits)?;
    let degrees: Vec<usize> = match opts.degree {
        Some(n) => vec![n],
        None => (0..=opts.limits.degree_cap).collect(),
    };
    let mut out = Vec::new();
    for n in degrees {
        let h = cohomology_group_with(&m, n, &opts.limits).map_err(budget)?;
        out.push(
            Entry::new(format!("H{n}"), Status::Pass, format!("H{n} = {}", h.group))
                .with_data(json!({ "degree": n, "factors": h.group.factors(), "order": h.order().to_string() })),
        );
        let id = format!("d{}∘d{} = 0", n + 1, n);
        if cohomology_cost(&m, n + 1) <= opts.limits.size_budget as u128 {
            let ok = check_dd_zero(&m, n);
            out.push(Entry::new(id, Status::from_bool(ok), if ok { "zero" } else { "nonzero composite" }));
        } else {
            out.push(Entry::new(id, Status::Skipped, "over the size budget"));
        }
    }
    Ok(out)
}

fn h1(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let m = gmodule("h1", doc)?.build(&opts.limits)?;
    let h = h1_der(&m);
    let mut out = vec![Entry::new("H1", Status::Pass, format!("H1 = {}", h.h1.group)).with_data(json!({
        "factors": h.h1.group.factors(),
        "der_order": h.der.order().to_string(),
        "ider_order": h.ider.order().to_string(),
    }))];
    if cohomology_cost(&m, 1) <= opts.limits.size_budget as u128 {
        let c = cohomology_group_with(&m, 1, &opts.limits).map_err(budget)?;
        let ok = c.group.is_isomorphic(&h.h1.group);
        out.push(
            Entry::new("H1 two-path agreement", Status::from_bool(ok), format!("cochain route gives {}", c.group))
                .with_witness((!ok).then(|| format!("Der/IDer gives {}, cochains give {}", h.h1.group, c.group))),
        );
    } else {
        out.push(Entry::new("H1 two-path agreement", Status::Skipped, "cochain route over the size budget"));
    }
    Ok(out)
}

fn normal_subgroups(g: &FiniteGroup, opts: &Options) -> Result<Vec<Subgroup>, CliError> {
    Ok(enumerate_subgroups_capped(g, opts.limits.order_cap)
        .map_err(|e| CliError::Budget(e.to_string()))?
        .into_iter()
        .filter(|h| h.is_normal(g))
        .collect())
}

fn inf_res(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let spec = gmodule("inf-res", doc)?;
    let m = spec.build(&opts.limits)?;
    let subgroups = match &spec.subgroup {
        Some(h) => vec![Subgroup::new(m.group(), h.clone()).map_err(|e| CliError::Validation(e.to_string()))?],
        None => normal_subgroups(m.group(), opts)?,
    };
    let mut out = Vec::new();
    for h in subgroups {
        let label = format!("H = {:?}", h.elements());
        let r = check_inf_res_exact(&m, &h).map_err(|e| CliError::Validation(e.to_string()))?;
        out.push(Entry::from_exactness(format!("inf-res {label}"), &r));
        if let Some(f) = faithful_reduction_check(&m, &h).map_err(|e| CliError::Validation(e.to_string()))? {
            let ok = f.inflation_is_iso && f.fixed_is_zero;
            out.push(
                Entry::new(format!("faithful reduction {label}"), Status::from_bool(ok), "inflation iso and fixed part zero")
                    .with_data(&f),
            );
        }
    }
    Ok(out)
}

fn les(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let Payload::Ses(spec) = &doc.payload else {
        return Err(wrong_kind("les", doc));
    };
    if spec.liering.is_some() {
        let s = spec.build_lie()?;
        let r = check_six_term(&s);
        let delta = lie_connecting_map(&s);
        let p = s.middle.p();
        let b1 = crate::liering::ce_cohomology(&s.left, 1).map_err(lie_err)?.coboundaries;
        let nonzero = s
            .right
            .invariants()
            .iter()
            .any(|c| !crate::fp::in_span(&b1, &crate::fp::mat_vec(&delta, c, p), p));
        return Ok(vec![
            Entry::from_exactness("six-term sequence", &r),
            Entry::new("connecting map", Status::Pass, if nonzero { "nonzero" } else { "zero" })
                .with_data(json!({ "nonzero": nonzero })),
        ]);
    }
    let s = spec.build_group(&opts.limits)?;
    let degree = opts.degree.unwrap_or(1);
    let r = check_long_exact(&s, degree, &opts.limits).map_err(budget)?;
    let delta = connecting_map(&s).map_err(budget)?;
    Ok(vec![
        Entry::from_exactness("long exact sequence", &r),
        Entry::new("connecting map C^G -> H1(G,A)", Status::Pass, if delta.is_zero() { "zero" } else { "nonzero" })
            .with_data(json!({ "nonzero": !delta.is_zero() })),
    ])
}

fn vanishing(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    match &doc.payload {
        Payload::Gmodule(spec) => {
            let m = spec.build(&opts.limits)?;
            let v = verify_nilpotent_vanishing(&m);
            let c = verify_composition_factors(&m, &opts.limits).map_err(theorem_err)?;
            Ok(vec![Entry::from_theorem("nilpotent vanishing", &v), Entry::from_theorem("composition factors", &c)])
        }
        Payload::Battery(b) => Ok(vec![battery_entry(&b.config())]),
        _ => Err(wrong_kind("vanishing", doc)),
    }
}

fn battery_entry(config: &BatteryConfig) -> Entry {
    let r = vanishing_battery(config);
    let summary = format!(
        "{} action classes, {} with A^G = 0, {} exceptions",
        r.action_classes,
        r.fixed_point_free,
        r.exceptions.len()
    );
    let witness = r.exceptions.first().or(r.same_prime_violations.first()).cloned();
    Entry::new("vanishing battery", Status::from_bool(r.passed()), summary)
        .with_data(json!({
            "action_classes": r.action_classes,
            "fixed_point_free": r.fixed_point_free,
            "exceptions": r.exceptions,
            "same_prime_violations": r.same_prime_violations,
            "skipped_pairs": r.rows.iter().filter(|row| row.skipped).count(),
            "excluded": r.excluded,
        }))
        .with_witness(witness)
}

fn frattini(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let g = match &doc.payload {
        Payload::Group(g) => g.build(&opts.limits)?.group,
        Payload::Gmodule(m) => m.group.build(&opts.limits)?.group,
        _ => return Err(wrong_kind("frattini", doc)),
    };
    let reports = frattini_instances(&g, &opts.limits).map_err(theorem_err)?;
    Ok(reports
        .iter()
        .map(|r| {
            let id = format!("frattini |H| = {}, |C| = {}", r.data["order_H"], r.data["order_C"]);
            Entry::from_theorem(id, r)
        })
        .collect())
}

fn maschke(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let spec = gmodule("maschke", doc)?;
    let m = spec.build(&opts.limits)?;
    let hypothesis = |e: TheoremError| match e {
        TheoremError::HypothesisFailed(h) => Ok(Entry::new("maschke", Status::Skipped, format!("hypothesis not met ({h})"))),
        other => Err(theorem_err(other)),
    };
    let entry = match &spec.submodule {
        Some(w) => {
            let w = m.submodule(w).map_err(|e| CliError::Validation(e.to_string()))?;
            match maschke_complement(&m, &w) {
                Ok(c) => Entry::new("maschke complement", Status::from_bool(c.certified), format!("complement of order {}", c.complement.order()))
                    .with_data(json!({ "generators": c.complement.generators(), "certified": c.certified })),
                Err(e) => hypothesis(e)?,
            }
        }
        None => match maschke_decompose(&m) {
            Ok(d) => {
                let s = d.summary();
                Entry::new("maschke decomposition", Status::from_bool(d.certified), format!("{} irreducible summands", d.summands.len()))
                    .with_data(s)
            }
            Err(e) => hypothesis(e)?,
        },
    };
    Ok(vec![entry])
}

fn schur(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let m = gmodule("schur", doc)?.build(&opts.limits)?;
    let r = schur_check(&m, &opts.limits).map_err(theorem_err)?;
    Ok(vec![Entry::from_theorem("schur", &r)])
}

fn lie_cohomology(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let m = liering("lie-cohomology", doc)?.module()?;
    let top = m.ring().dim();
    let degrees: Vec<usize> = match opts.degree {
        Some(n) => vec![n],
        None => (0..=top.min(opts.limits.degree_cap)).collect(),
    };
    let mut out = Vec::new();
    for n in degrees {
        let h = ce_cohomology(&m, n).map_err(lie_err)?;
        out.push(
            Entry::new(format!("H{n}"), Status::Pass, format!("dim H{n} = {}", h.dim))
                .with_data(json!({ "degree": n, "dim": h.dim, "representatives": h.representatives })),
        );
        let ok = check_ce_dd_zero(&m, n);
        out.push(Entry::new(format!("d{}∘d{} = 0", n + 1, n), Status::from_bool(ok), if ok { "zero" } else { "nonzero composite" }));
    }
    Ok(out)
}

fn lie_h1(doc: &InputDocument) -> Result<Vec<Entry>, CliError> {
    let m = liering("lie-h1", doc)?.module()?;
    let der = lie_h1_der(&m);
    let ce = ce_cohomology(&m, 1).map_err(lie_err)?;
    let ok = der.dim == ce.dim;
    Ok(vec![
        Entry::new("H1", Status::Pass, format!("dim H1 = {}", der.dim))
            .with_data(json!({ "dim": der.dim, "der_dim": der.der.len(), "ider_dim": der.ider.len() })),
        Entry::new("H1 two-path agreement", Status::from_bool(ok), format!("CE route gives dim {}", ce.dim)),
    ])
}

fn lie_inf_res(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let spec = liering("lie-inf-res", doc)?;
    let m = spec.module()?;
    let ring = m.ring();
    let ideals = match &spec.ideal {
        Some(i) => vec![i.clone()],
        None => all_subspaces(ring.dim(), ring.p(), opts.limits.lattice_cap)
            .map_err(lie_err)?
            .into_iter()
            .filter(|s| ring.is_ideal(s))
            .collect(),
    };
    let mut out = Vec::new();
    for h in ideals {
        let r = check_lie_inf_res(&m, &h).map_err(lie_err)?;
        let label = format!("h = {h:?}");
        out.push(Entry::from_exactness(format!("inf-res {label}"), &r.report));
        if let Some(f) = &r.faithful {
            out.push(
                Entry::new(
                    format!("faithful reduction {label}"),
                    Status::from_bool(f.inflation_is_iso && f.fixed_is_zero),
                    "inflation iso and fixed part zero",
                )
                .with_data(f),
            );
        }
    }
    Ok(out)
}

fn lie_restricted(doc: &InputDocument) -> Result<Vec<Entry>, CliError> {
    let spec = liering("lie-restricted", doc)?;
    let ring = spec.ring()?;
    let images = spec
        .pmap
        .clone()
        .ok_or_else(|| CliError::Validation("lie-restricted needs pmap basis images".into()))?;
    let r = match validate_restricted(&ring, images) {
        Ok(r) => r,
        Err(e) => {
            return Ok(vec![Entry::new("restricted structure", Status::Fail, e.to_string())
                .with_witness(Some(e.to_string()))])
        }
    };
    let mut out = vec![Entry::new("restricted structure", Status::Pass, "axioms hold on all basis pairs")];
    for i in 0..ring.dim() {
        let mut e = vec![0; ring.dim()];
        e[i] = 1;
        let c = is_semisimple_element(&r, &e);
        out.push(
            Entry::new(format!("semisimple e{i}"), Status::Pass, if c.semisimple { "semisimple" } else { "not semisimple" })
                .with_data(&c),
        );
    }
    let torus = is_torus(&r, &ring.whole()).map_err(lie_err)?;
    out.push(Entry::new("torus", Status::Pass, if torus { "the whole ring is a torus" } else { "the whole ring is not a torus" }));
    Ok(out)
}

fn lie_theorems(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let spec = liering("lie-theorems", doc)?;
    let m = spec.module()?;
    let restricted = match &spec.pmap {
        Some(images) => Some(validate_restricted(m.ring(), images.clone()).map_err(lie_err)?),
        None => None,
    };
    let reports = verify_lie_theorems(&m, restricted.as_ref(), &opts.limits).map_err(lie_err)?;
    Ok(reports.iter().map(|r| Entry::from_theorem(r.theorem.clone(), r)).collect())
}

fn count_entry(id: &str, total: usize, failures: Vec<String>) -> Entry {
    let ok = failures.is_empty();
    Entry::new(id, Status::from_bool(ok), format!("{} instances, {} failures", total, failures.len()))
        .with_data(json!({ "instances": total, "failures": failures.len() }))
        .with_witness(failures.into_iter().next())
}

fn suite(doc: &InputDocument, opts: &Options) -> Result<Vec<Entry>, CliError> {
    let Payload::Battery(spec) = &doc.payload else {
        return Err(wrong_kind("suite", doc));
    };
    let catalog = opts.catalog.clone().or_else(|| spec.catalog.clone()).unwrap_or_else(|| "small".into());
    if catalog != "small" {
        return Err(CliError::Validation(format!("unknown catalog \"{catalog}\"")));
    }
    let modules: Vec<(String, GModule)> = module_catalog(4, 9);
    let limits = &opts.limits;
    let mut out = Vec::new();

    let mut fails = Vec::new();
    for (name, m) in &modules {
        for n in 0..=2 {
            if !check_dd_zero(m, n) {
                fails.push(format!("{name}, n = {n}"));
            }
        }
    }
    for (name, m) in lie_module_catalog() {
        for n in 0..=2 {
            if !check_ce_dd_zero(&m, n) {
                fails.push(format!("{name}, n = {n}"));
            }
        }
    }
    out.push(count_entry("complex axiom", modules.len() + lie_module_catalog().len(), fails));

    let mut fails = Vec::new();
    for (name, m) in &modules {
        let h0 = cohomology_group_with(m, 0, limits).map_err(budget)?;
        if !h0.group.is_isomorphic(invariants(m).group()) {
            fails.push(format!("{name}: H0 = {}", h0.group));
        }
    }
    out.push(count_entry("H0 identity", modules.len(), fails));

    let mut fails = Vec::new();
    for (name, m) in &modules {
        let a = h1_der(m).h1.group;
        let b = cohomology_group_with(m, 1, limits).map_err(budget)?.group;
        if !a.is_isomorphic(&b) {
            fails.push(format!("{name}: {a} vs {b}"));
        }
    }
    out.push(count_entry("H1 two-path agreement", modules.len(), fails));

    let mut fails = Vec::new();
    let mut pairs = 0;
    for (name, m) in &modules {
        for h in normal_subgroups(m.group(), opts)? {
            pairs += 1;
            let r = check_inf_res_exact(m, &h).map_err(budget)?;
            let f = faithful_reduction_check(m, &h).map_err(budget)?;
            if !r.all_exact() || f.is_some_and(|f| !(f.inflation_is_iso && f.fixed_is_zero)) {
                fails.push(format!("{name}, H = {:?}", h.elements()));
            }
        }
    }
    out.push(count_entry("inflation-restriction", pairs, fails));

    out.push(battery_entry(&spec.config()));

    let mut fails = Vec::new();
    let mut total = 0;
    let mut groups: Vec<(String, FiniteGroup)> = small_groups().into_iter().map(|g| (g.name, g.group)).collect();
    groups.push(("S4".into(), symmetric(4)));
    for (name, g) in &groups {
        for r in frattini_instances(g, limits).map_err(theorem_err)? {
            total += 1;
            if r.conclusion_holds != Some(true) {
                fails.push(format!("{name}: {:?}", r.data));
            }
        }
    }
    out.push(count_entry("frattini", total, fails));

    let mut fails = Vec::new();
    let mut total = 0;
    for (name, m) in &modules {
        if let Ok(d) = maschke_decompose(m) {
            total += 1;
            if !d.certified {
                fails.push(name.clone());
            }
        }
    }
    out.push(count_entry("maschke", total, fails));

    let mut fails = Vec::new();
    let mut total = 0;
    for (name, m) in &modules {
        if !is_irreducible(m) {
            continue;
        }
        total += 1;
        let r = schur_check(m, limits).map_err(theorem_err)?;
        if r.conclusion_holds == Some(false) {
            fails.push(name.clone());
        }
    }
    out.push(count_entry("schur", total, fails));

    let mut fails = Vec::new();
    let lie_modules = lie_module_catalog();
    for (name, m) in &lie_modules {
        if lie_h1_der(m).dim != ce_cohomology(m, 1).map_err(lie_err)?.dim {
            fails.push(name.clone());
        }
        for r in verify_lie_theorems(m, None, limits).map_err(lie_err)? {
            if r.conclusion_holds == Some(false) {
                fails.push(format!("{name}: {}", r.theorem));
            }
        }
    }
    for (name, ring) in lie_catalog() {
        if verify_lie_frattini(&ring, limits.lattice_cap).map_err(lie_err)?.conclusion_holds != Some(true) {
            fails.push(format!("{name}: frattini"));
        }
    }
    out.push(count_entry("lie mirror", lie_modules.len(), fails));

    let mut fails = Vec::new();
    for p in [2, 3] {
        let r = gl_restricted(2, p);
        if (0..4).any(|i| {
            let mut e = vec![0; 4];
            e[i] = 1;
            !r.axiom1_holds_at(&e)
        }) {
            fails.push(format!("gl2(F{p})"));
        }
    }
    out.push(count_entry("restricted structures", 2, fails));
    Ok(out)
}
