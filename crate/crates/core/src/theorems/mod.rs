//! Verifiers for the structural results: vanishing of `H¹` for nilpotent
//! groups, composition factors, Schur linearization, the Frattini argument
//! for Carter subgroups, and Maschke decomposition.

mod battery;
mod carter;
mod maschke;

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::abelian::AbelianHom;
use crate::cohomology::{h1_der, CohomologyError};
use crate::gmodule::{
    action_ring_centralizer_capped, composition_series, invariants, quotient_module,
    sub_module_on, submodule_lattice, GModule, GModuleError,
};
use crate::groups::GroupError;
use crate::limits::Limits;

pub use battery::{
    abelian_p_groups, action_modules, automorphisms, vanishing_battery, Automorphisms, BatteryConfig,
    BatteryReport, BatteryRow,
};
pub use carter::{find_carter_subgroups, frattini_instances, verify_frattini};
pub use maschke::{maschke_complement, maschke_decompose, MaschkeComplement, MaschkeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] GModuleError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Outcome of one verifier run. The conclusion is `None` when a hypothesis
/// failed and the conclusion was not evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion_holds: Option<bool>,
    pub data: Map<String, Value>,
}

impl TheoremReport {
    pub fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            conclusion_holds: None,
            data: Map::new(),
        }
    }

    pub fn hypothesis(&mut self, name: &str, holds: bool, witness: Option<String>) -> bool {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            holds,
            witness: if holds { None } else { witness },
        });
        holds
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis_holds(&self, name: &str) -> Option<bool> {
        self.hypotheses.iter().find(|h| h.name == name).map(|h| h.holds)
    }

    pub fn datum(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), v);
    }

    /// False only when the conclusion was evaluated and failed.
    pub fn passed(&self) -> bool {
        self.conclusion_holds != Some(false)
    }
}

fn nilpotent_hypothesis(report: &mut TheoremReport, m: &GModule) -> bool {
    let series = m.group().lower_central_series();
    let last = series.terms.last().map_or(1, |t| t.order());
    report.datum("nilpotency_class", series.class);
    report.hypothesis(
        "G nilpotent",
        series.class.is_some(),
        Some(format!("lower central series stops at order {last}")),
    )
}

fn fixed_zero_hypothesis(report: &mut TheoremReport, m: &GModule) -> bool {
    let fixed = invariants(m);
    report.hypothesis(
        "A^G = 0",
        fixed.is_zero(),
        Some(format!("A^G has order {}", fixed.order())),
    )
}

/// `G` nilpotent and `A^G = 0` imply `H¹(G, A) = 0`.
pub fn verify_nilpotent_vanishing(m: &GModule) -> TheoremReport {
    let mut report = TheoremReport::new("nilpotent_vanishing");
    let nilpotent = nilpotent_hypothesis(&mut report, m);
    let fixed = fixed_zero_hypothesis(&mut report, m);
    report.datum("abelian_case", m.group().is_abelian());
    report.datum("irreducible_case", composition_series(m).length == 1);
    if nilpotent && fixed {
        let h1 = h1_der(m);
        report.datum("h1_factors", h1.h1.group.factors());
        report.conclusion_holds = Some(h1.h1.group.is_trivial());
    }
    report
}

/// For nilpotent `G` with `A^G = 0`, every section `U/V` of `A` by
/// submodules has `(U/V)^G = 0`.
pub fn verify_composition_factors(m: &GModule, limits: &Limits) -> Result<TheoremReport, TheoremError> {
    let mut report = TheoremReport::new("composition_factors");
    let nilpotent = nilpotent_hypothesis(&mut report, m);
    let fixed = fixed_zero_hypothesis(&mut report, m);
    if !(nilpotent && fixed) {
        return Ok(report);
    }
    let lattice = submodule_lattice(m, limits.lattice_cap)?;
    let mut pairs = 0usize;
    let mut failure = None;
    for u in &lattice {
        let sub = sub_module_on(m, u)?;
        let um = sub.module();
        for v in &lattice {
            if v == u || !v.lattice().is_subset_of(u.lattice()) {
                continue;
            }
            pairs += 1;
            let coords = u_coords(u, v.generators());
            let vsub = um.submodule(&coords)?;
            let q = quotient_module(um, &vsub)?;
            let fixed = invariants(q.module());
            if !fixed.is_zero() && failure.is_none() {
                failure = Some(format!(
                    "section of order {} / {} has fixed points of order {}",
                    u.order(),
                    v.order(),
                    fixed.order()
                ));
            }
        }
    }
    report.datum("submodules", lattice.len());
    report.datum("pairs_checked", pairs);
    if let Some(w) = failure {
        report.datum("witness", w);
    }
    report.conclusion_holds = Some(report.data.get("witness").is_none());
    Ok(report)
}

fn u_coords(u: &crate::gmodule::Submodule, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    gens.iter()
        .map(|g| u.presentation.coords(g).expect("V lies in U"))
        .collect()
}

/// Irreducible `A`: the centralizer of the action ring is a commutative
/// field. For abelian `G` with `A^G = 0`, also certifies that every
/// derivation `f` equals `x ↦ ρ(x)a − a` with `a = (ρ(y) − Id)⁻¹·f(y)`.
pub fn schur_check(m: &GModule, limits: &Limits) -> Result<TheoremReport, TheoremError> {
    let mut report = TheoremReport::new("schur");
    let nonzero = report.hypothesis(
        "A nonzero",
        !m.coeffs().is_trivial(),
        Some("A = 0".to_string()),
    );
    let series = composition_series(m);
    let irreducible = report.hypothesis(
        "A irreducible",
        series.length == 1,
        Some(format!("composition length {}", series.length)),
    );
    if !(nonzero && irreducible) {
        return Ok(report);
    }
    let ring = action_ring_centralizer_capped(m, limits.endomorphism_cap)?;
    report.datum("ring_order", ring.ring_order);
    report.datum("centralizer_order", ring.centralizer_order);
    report.datum("centralizer_is_field", ring.centralizer_is_field);
    report.datum("centralizer_is_commutative", ring.centralizer_is_commutative);
    let mut holds = ring.centralizer_is_field && ring.centralizer_is_commutative;

    let applicable = m.group().is_abelian() && invariants(m).is_zero();
    report.datum("coboundary_witness_applicable", applicable);
    if applicable {
        let (checked, ok, witness) = explicit_coboundaries(m, limits.lattice_cap);
        report.datum("derivations_checked", checked);
        report.datum("coboundary_witness_holds", ok);
        if let Some(w) = witness {
            report.datum("coboundary_witness_failure", w);
        }
        holds &= ok;
    }
    report.conclusion_holds = Some(holds);
    Ok(report)
}

/// `ρ(y) − Id` as an endomorphism of `A`.
fn shifted_action(m: &GModule, y: usize) -> AbelianHom {
    let a = m.coeffs();
    let images: Vec<Vec<i64>> = (0..a.rank())
        .map(|j| {
            let mut e = a.zero();
            e[j] = 1;
            a.sub(&m.act(y, &e), &e)
        })
        .collect();
    AbelianHom::from_images(a, a, &images).expect("difference of endomorphisms")
}

/// Runs the explicit coboundary construction on every derivation (or on a
/// generating set when `Der` has more than `cap` elements).
fn explicit_coboundaries(m: &GModule, cap: usize) -> (usize, bool, Option<String>) {
    let a = m.coeffs();
    let k = a.rank();
    let h1 = h1_der(m);
    let der_order = h1.der.order();
    let us: Vec<Vec<i64>> = if der_order <= cap.into() {
        h1.der
            .group
            .elements()
            .map(|c| h1.der.embedding.apply(&c))
            .collect()
    } else {
        h1.der.generators().to_vec()
    };
    let shifts: Vec<AbelianHom> = (0..m.group().order()).map(|y| shifted_action(m, y)).collect();
    for u in &us {
        let f = h1.expand(u);
        let Some(y) = (0..m.group().order()).find(|&y| f.value(y, k).iter().any(|&x| x != 0)) else {
            continue;
        };
        let t = &shifts[y];
        if !t.is_injective() {
            return (us.len(), false, Some(format!("ρ({y}) − Id is not invertible")));
        }
        let a_elem = t.preimage(f.value(y, k)).expect("invertible map is onto");
        for x in 0..m.group().order() {
            let expect = a.sub(&m.act(x, &a_elem), &a_elem);
            if f.value(x, k) != expect.as_slice() {
                return (
                    us.len(),
                    false,
                    Some(format!("f({x}) differs from ρ({x})a − a")),
                );
            }
        }
    }
    (us.len(), true, None)
}
