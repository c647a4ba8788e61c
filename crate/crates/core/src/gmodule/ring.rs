//! The ring generated by `ρ(G)` inside `End(A)` and its centralizer.

use num_bigint::BigUint;
use serde::Serialize;

use super::{GModule, GModuleError};
use crate::abelian::lattice::gcd;
use crate::abelian::{kernel_from_rows, AbelianHom, FiniteAbelianGroup, SubgroupPresentation};
use crate::limits::DEFAULT_ENDOMORPHISM_CAP;

/// Element lists are only materialized up to this many entries.
const LIST_CAP: u64 = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct ActionRingReport {
    /// Order of `R`, the additive span of `ρ(G)` (closed under products).
    pub ring_order: u64,
    /// Elements of `R`, listed when `ring_order` is at most 4096.
    #[serde(skip)]
    pub ring_elements: Vec<AbelianHom>,
    pub centralizer_order: u64,
    /// Elements of `C_End(A)(R)`, listed when the order is at most 4096.
    #[serde(skip)]
    pub centralizer: Vec<AbelianHom>,
    pub centralizer_is_field: bool,
    pub centralizer_is_commutative: bool,
    /// Why the centralizer fails to be a field, when it does.
    pub witness: Option<String>,
}

/// `End(A)` as the abelian group of matrices with `X[r][c] = t·(d_r / g)`,
/// `t ∈ ℤ/g`, `g = gcd(d_r, d_c)`. Coordinates are row-major over `(r, c)`.
pub(crate) struct EndomorphismGroup {
    pub coeffs: FiniteAbelianGroup,
    pub group: FiniteAbelianGroup,
    /// `(r, c, step)` per coordinate; zero-width entries (g = 1) are skipped.
    slots: Vec<(usize, usize, i64)>,
}

impl EndomorphismGroup {
    pub fn new(coeffs: &FiniteAbelianGroup) -> Self {
        let d = coeffs.factors();
        let mut slots = Vec::new();
        let mut moduli = Vec::new();
        for r in 0..d.len() {
            for c in 0..d.len() {
                let g = gcd(d[r], d[c]);
                if g > 1 {
                    slots.push((r, c, d[r] / g));
                    moduli.push(g);
                }
            }
        }
        EndomorphismGroup {
            coeffs: coeffs.clone(),
            group: FiniteAbelianGroup::from_cyclic(moduli).expect("gcds are at least 2"),
            slots,
        }
    }

    pub fn to_hom(&self, t: &[i64]) -> AbelianHom {
        let k = self.coeffs.rank();
        let mut m = vec![vec![0i64; k]; k];
        for (&(r, c, step), &x) in self.slots.iter().zip(t) {
            m[r][c] = x * step;
        }
        crate::abelian::validate_hom(&self.coeffs, &self.coeffs, m)
            .expect("parametrized matrices are homomorphisms")
    }

    pub fn from_hom(&self, h: &AbelianHom) -> Vec<i64> {
        self.slots
            .iter()
            .map(|&(r, c, step)| h.matrix()[r][c] / step)
            .collect()
    }

    /// Rows of `X ↦ Xφ − φX`, entry `(r, c)` taken mod `d_r`.
    fn commutator_rows(&self, phi: &AbelianHom) -> Vec<(i64, Vec<(usize, i64)>)> {
        let k = self.coeffs.rank();
        let d = self.coeffs.factors();
        let m = phi.matrix();
        let mut index = vec![vec![None; k]; k];
        for (i, &(r, c, step)) in self.slots.iter().enumerate() {
            index[r][c] = Some((i, step));
        }
        let mut rows = Vec::new();
        for r in 0..k {
            for c in 0..k {
                let mut row = vec![0i64; self.slots.len()];
                // (Xφ)[r][c] = Σ_j X[r][j] φ[j][c]
                for j in 0..k {
                    if let Some((i, step)) = index[r][j] {
                        row[i] += step * m[j][c];
                    }
                }
                // (φX)[r][c] = Σ_j φ[r][j] X[j][c]
                for j in 0..k {
                    if let Some((i, step)) = index[j][c] {
                        row[i] -= m[r][j] * step;
                    }
                }
                let sparse: Vec<(usize, i64)> = row
                    .into_iter()
                    .enumerate()
                    .map(|(i, x)| (i, x.rem_euclid(d[r])))
                    .filter(|&(_, x)| x != 0)
                    .collect();
                rows.push((d[r], sparse));
            }
        }
        rows
    }
}

fn list_elements(p: &SubgroupPresentation, end: &EndomorphismGroup) -> Vec<AbelianHom> {
    p.group
        .elements()
        .map(|c| end.to_hom(&p.embedding.apply(&c)))
        .collect()
}

pub fn action_ring_centralizer(m: &GModule) -> Result<ActionRingReport, GModuleError> {
    action_ring_centralizer_capped(m, DEFAULT_ENDOMORPHISM_CAP)
}

/// Computes `R` and `C_End(A)(R)` and decides whether the centralizer is a
/// field. A field acting faithfully on `A` has at most `|A|` elements, so
/// larger centralizers are rejected without enumeration.
pub fn action_ring_centralizer_capped(
    m: &GModule,
    cap: u64,
) -> Result<ActionRingReport, GModuleError> {
    let a_order = m.coeffs().order_u64().unwrap_or(u64::MAX);
    if a_order > cap {
        return Err(GModuleError::CapExceeded {
            order: m.coeffs().order().to_string(),
            cap,
        });
    }
    let end = EndomorphismGroup::new(m.coeffs());
    let gens = m.group().generators().to_vec();

    let ring_gens: Vec<Vec<i64>> = (0..m.group().order())
        .map(|g| end.from_hom(m.action(g)))
        .collect();
    let ring = SubgroupPresentation::generated(&end.group, &ring_gens);
    let ring_order = to_u64(ring.order());

    let rows: Vec<_> = gens
        .iter()
        .flat_map(|&g| end.commutator_rows(m.action(g)))
        .collect();
    let cent_lat = kernel_from_rows(&end.group, m.coeffs().exponent(), rows);
    let cent = SubgroupPresentation::from_lattice(&end.group, cent_lat);
    let centralizer_order = to_u64(cent.order());

    let ring_elements = if ring_order <= LIST_CAP {
        list_elements(&ring, &end)
    } else {
        Vec::new()
    };
    let centralizer = if centralizer_order <= LIST_CAP {
        list_elements(&cent, &end)
    } else {
        Vec::new()
    };

    let mut witness = None;
    let mut commutative = true;
    if m.coeffs().is_trivial() {
        witness = Some("zero module".to_string());
    } else if centralizer_order > a_order {
        witness = Some(format!(
            "centralizer order {centralizer_order} exceeds |A| = {a_order}"
        ));
        commutative = generators_commute(&cent, &end);
    } else {
        for x in &centralizer {
            if !x.is_zero() && !x.is_injective() {
                witness = Some(format!("nonzero non-invertible element {:?}", x.matrix()));
                break;
            }
        }
        'pairs: for (i, x) in centralizer.iter().enumerate() {
            for y in &centralizer[i + 1..] {
                if x.compose(y) != y.compose(x) {
                    commutative = false;
                    if witness.is_none() {
                        witness = Some("two centralizer elements do not commute".into());
                    }
                    break 'pairs;
                }
            }
        }
    }
    Ok(ActionRingReport {
        ring_order,
        ring_elements,
        centralizer_order,
        centralizer,
        centralizer_is_field: witness.is_none(),
        centralizer_is_commutative: commutative,
        witness,
    })
}

fn generators_commute(p: &SubgroupPresentation, end: &EndomorphismGroup) -> bool {
    let homs: Vec<AbelianHom> = p.generators().iter().map(|g| end.to_hom(g)).collect();
    homs.iter()
        .enumerate()
        .all(|(i, x)| homs[i + 1..].iter().all(|y| x.compose(y) == y.compose(x)))
}

fn to_u64(n: BigUint) -> u64 {
    u64::try_from(n).unwrap_or(u64::MAX)
}
