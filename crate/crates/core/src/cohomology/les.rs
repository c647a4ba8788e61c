//! Short exact sequences of modules and the long exact cohomology sequence.

use std::collections::HashMap;

use super::{
    apply_differential, cohomology_group_with, h1_der, tuple_count, Cochain, CohomologyError,
    CohomologyGroup, ExactnessNode, ExactnessReport, H1Der,
};
use crate::abelian::{AbelianHom, FiniteAbelianGroup};
use crate::gmodule::{invariants, GModule, Submodule};
use crate::limits::Limits;

/// `0 → A → B → C → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub left: GModule,
    pub middle: GModule,
    pub right: GModule,
    pub inj: AbelianHom,
    pub surj: AbelianHom,
}

impl ShortExactSequence {
    pub fn new(
        left: GModule,
        middle: GModule,
        right: GModule,
        inj: AbelianHom,
        surj: AbelianHom,
    ) -> Result<Self, CohomologyError> {
        let bad = |s: &str| Err(CohomologyError::InvalidSequence(s.to_string()));
        if left.group() != middle.group() || middle.group() != right.group() {
            return bad("modules over different groups");
        }
        if inj.source() != left.coeffs() || inj.target() != middle.coeffs() {
            return bad("inj does not map A to B");
        }
        if surj.source() != middle.coeffs() || surj.target() != right.coeffs() {
            return bad("surj does not map B to C");
        }
        if !inj.is_injective() {
            return bad("inj is not injective");
        }
        if !surj.is_surjective() {
            return bad("surj is not surjective");
        }
        if surj.kernel_lattice() != inj.image_lattice() {
            return bad("im(inj) differs from ker(surj)");
        }
        for &g in middle.group().generators() {
            if middle.action(g).compose(&inj) != inj.compose(left.action(g)) {
                return bad(&format!("inj is not equivariant at element {g}"));
            }
            if right.action(g).compose(&surj) != surj.compose(middle.action(g)) {
                return bad(&format!("surj is not equivariant at element {g}"));
            }
        }
        Ok(ShortExactSequence {
            left,
            middle,
            right,
            inj,
            surj,
        })
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(left: &GModule, right: &GModule) -> Result<Self, CohomologyError> {
        let sum = crate::abelian::direct_sum(left.coeffs(), right.coeffs());
        let actions = (0..left.group().order())
            .map(|g| {
                let images: Vec<Vec<i64>> = (0..sum.group.rank())
                    .map(|j| {
                        let mut e = sum.group.zero();
                        e[j] = 1;
                        let a = left.act(g, &sum.projections[0].apply(&e));
                        let c = right.act(g, &sum.projections[1].apply(&e));
                        sum.group
                            .add(&sum.injections[0].apply(&a), &sum.injections[1].apply(&c))
                    })
                    .collect();
                AbelianHom::from_images(&sum.group, &sum.group, &images)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CohomologyError::InvalidSequence(e.to_string()))?;
        let middle = crate::gmodule::validate_module(left.group(), &sum.group, actions)?;
        ShortExactSequence::new(
            left.clone(),
            middle,
            right.clone(),
            sum.injections[0].clone(),
            sum.projections[1].clone(),
        )
    }
}

/// One degree of cohomology with a chosen presentation.
enum Level {
    Zero(Submodule),
    One(H1Der),
    High(CohomologyGroup),
}

impl Level {
    fn build(m: &GModule, n: usize, limits: &Limits) -> Result<Level, CohomologyError> {
        Ok(match n {
            0 => Level::Zero(invariants(m)),
            1 => Level::One(h1_der(m)),
            _ => Level::High(cohomology_group_with(m, n, limits)?),
        })
    }

    fn group(&self) -> &FiniteAbelianGroup {
        match self {
            Level::Zero(s) => s.group(),
            Level::One(h) => &h.h1.group,
            Level::High(h) => &h.group,
        }
    }

    fn representatives(&self) -> Vec<Cochain> {
        match self {
            Level::Zero(s) => s
                .generators()
                .iter()
                .map(|v| Cochain {
                    degree: 0,
                    values: v.clone(),
                })
                .collect(),
            Level::One(h) => h.h1.representatives.clone(),
            Level::High(h) => h.representatives.clone(),
        }
    }

    fn classify(&self, f: &Cochain) -> Option<Vec<i64>> {
        match self {
            Level::Zero(s) => s.presentation.coords(&f.values),
            Level::One(h) => h.classify(f),
            Level::High(h) => h.classify(f),
        }
    }
}

fn pointwise(
    f: &Cochain,
    tuples: usize,
    rank: usize,
    mut phi: impl FnMut(&[i64]) -> Option<Vec<i64>>,
) -> Option<Cochain> {
    let mut values = Vec::new();
    for t in 0..tuples {
        values.extend(phi(&f.values[t * rank..(t + 1) * rank])?);
    }
    Some(Cochain {
        degree: f.degree,
        values,
    })
}

/// `Hⁿ(X) → Hⁿ(Y)` induced by a module map.
fn induced(
    from: &Level,
    to: &Level,
    tuples: usize,
    rank: usize,
    phi: &AbelianHom,
) -> Result<AbelianHom, CohomologyError> {
    let images = from
        .representatives()
        .iter()
        .map(|f| {
            let g = pointwise(f, tuples, rank, |v| Some(phi.apply(v))).expect("total map");
            to.classify(&g).ok_or_else(|| {
                CohomologyError::InvalidSequence("induced map does not preserve cocycles".into())
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    AbelianHom::from_images(from.group(), to.group(), &images)
        .map_err(|e| CohomologyError::InvalidSequence(e.to_string()))
}

/// The snake map `Hⁿ(C) → Hⁿ⁺¹(A)`: lift pointwise, apply `d_n` in `B`,
/// pull back through `inj`.
fn delta(
    s: &ShortExactSequence,
    n: usize,
    from: &Level,
    to: &Level,
    section: &dyn Fn(&[i64]) -> Vec<i64>,
) -> Result<AbelianHom, CohomologyError> {
    let kc = s.right.coeffs().rank();
    let kb = s.middle.coeffs().rank();
    let order = s.middle.group().order();
    let mut cache: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut images = Vec::new();
    for f in from.representatives() {
        let lifted = pointwise(&f, tuple_count(order, n), kc, |c| {
            Some(cache.entry(c.to_vec()).or_insert_with(|| section(c)).clone())
        })
        .expect("total map");
        let db = Cochain {
            degree: n + 1,
            values: apply_differential(&s.middle, n, &lifted.values),
        };
        let pulled = pointwise(&db, tuple_count(order, n + 1), kb, |b| s.inj.preimage(b));
        let class = pulled.and_then(|a| to.classify(&a)).ok_or_else(|| {
            CohomologyError::InvalidSequence("connecting map left the image of inj".into())
        })?;
        images.push(class);
    }
    AbelianHom::from_images(from.group(), to.group(), &images)
        .map_err(|e| CohomologyError::InvalidSequence(e.to_string()))
}

/// `δ: C^G → H¹(G, A)` using the least-preimage section of `surj`.
pub fn connecting_map(s: &ShortExactSequence) -> Result<AbelianHom, CohomologyError> {
    let surj = s.surj.clone();
    connecting_map_with_section(s, &move |c| {
        surj.least_preimage(c).expect("surj is surjective")
    })
}

/// `δ: C^G → H¹(G, A)` with a caller-supplied section of `surj`.
pub fn connecting_map_with_section(
    s: &ShortExactSequence,
    section: &dyn Fn(&[i64]) -> Vec<i64>,
) -> Result<AbelianHom, CohomologyError> {
    let from = Level::Zero(invariants(&s.right));
    let to = Level::One(h1_der(&s.left));
    delta(s, 0, &from, &to, section)
}

/// `δ: Hⁿ(G, C) → Hⁿ⁺¹(G, A)` using the least-preimage section.
pub fn connecting_map_at(
    s: &ShortExactSequence,
    n: usize,
    limits: &Limits,
) -> Result<AbelianHom, CohomologyError> {
    let surj = s.surj.clone();
    let from = Level::build(&s.right, n, limits)?;
    let to = Level::build(&s.left, n + 1, limits)?;
    delta(s, n, &from, &to, &move |c| {
        surj.least_preimage(c).expect("surj is surjective")
    })
}

/// Exactness of `0 → A^G → B^G → C^G → H¹(A) → … → Hᴰ(C)` at every node.
/// Degree `D` needs `Hᴰ⁺¹(G, A)` within the limits.
pub fn check_long_exact(
    s: &ShortExactSequence,
    max_degree: usize,
    limits: &Limits,
) -> Result<ExactnessReport, CohomologyError> {
    let surj = s.surj.clone();
    let section = move |c: &[i64]| surj.least_preimage(c).expect("surj is surjective");
    let mut report = ExactnessReport::default();
    let (ka, kb) = (s.left.coeffs().rank(), s.middle.coeffs().rank());
    let mut a_level = Level::build(&s.left, 0, limits)?;
    let mut incoming: Option<AbelianHom> = None;
    for n in 0..=max_degree {
        let b_level = Level::build(&s.middle, n, limits)?;
        let c_level = Level::build(&s.right, n, limits)?;
        let next_a = Level::build(&s.left, n + 1, limits)?;
        let tuples = tuple_count(s.middle.group().order(), n);
        let i_n = induced(&a_level, &b_level, tuples, ka, &s.inj)?;
        let p_n = induced(&b_level, &c_level, tuples, kb, &s.surj)?;
        let d_n = delta(s, n, &c_level, &next_a, &section)?;
        let (la, lb, lc) = labels(n);
        match &incoming {
            None => {
                let ker = i_n.kernel();
                let trivial = ker.group.is_trivial();
                report.nodes.push(ExactnessNode {
                    label: la,
                    ker_order: super::order_of(&ker.group),
                    im_order: 1,
                    exact: trivial,
                    witness: (!trivial).then(|| "A^G → B^G is not injective".to_string()),
                });
            }
            Some(prev) => report.push_exact_at(&la, prev, &i_n),
        }
        report.push_exact_at(&lb, &i_n, &p_n);
        report.push_exact_at(&lc, &p_n, &d_n);
        incoming = Some(d_n);
        a_level = next_a;
    }
    Ok(report)
}

fn labels(n: usize) -> (String, String, String) {
    if n == 0 {
        ("A^G".into(), "B^G".into(), "C^G".into())
    } else {
        (format!("H{n}(A)"), format!("H{n}(B)"), format!("H{n}(C)"))
    }
}
