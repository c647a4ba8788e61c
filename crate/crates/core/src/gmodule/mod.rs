//! Finite groups acting by automorphisms on finite abelian groups.

mod ring;

use std::collections::VecDeque;

use num_bigint::BigUint;
use thiserror::Error;

use crate::abelian::lattice::ModLattice;
use crate::abelian::{
    kernel_from_rows, quotient_by_lattice, AbelianError, AbelianHom, AbelianQuotient,
    FiniteAbelianGroup, SubgroupPresentation,
};
use crate::groups::{quotient_group, FiniteGroup, GroupError, GroupHom, Subgroup};

pub use ring::{action_ring_centralizer, action_ring_centralizer_capped, ActionRingReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GModuleError {
    #[error("expected {expected} action matrices, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("the identity element does not act as the identity")]
    NotIdentityAtE,
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotHomomorphic(usize, usize),
    #[error("element {0} does not act by an automorphism")]
    NotAutomorphism(usize),
    #[error("generated subgroup is not invariant under element {0}")]
    NotSubmodule(usize),
    #[error("coefficient group of order {order} exceeds the cap {cap}")]
    CapExceeded { order: String, cap: u64 },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `G` acting on `A` through `ρ: G → Aut(A)`, stored as one matrix per element.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    coeffs: FiniteAbelianGroup,
    action: Vec<AbelianHom>,
}

/// Checks `ρ(1) = Id`, `ρ(g)ρ(h) = ρ(gh)` and that every `ρ(g)` is bijective.
pub fn validate_module(
    group: &FiniteGroup,
    coeffs: &FiniteAbelianGroup,
    action: Vec<AbelianHom>,
) -> Result<GModule, GModuleError> {
    if action.len() != group.order() {
        return Err(GModuleError::ShapeMismatch {
            expected: group.order(),
            got: action.len(),
        });
    }
    for a in &action {
        if a.source() != coeffs || a.target() != coeffs {
            return Err(GModuleError::Abelian(AbelianError::ShapeMismatch {
                rows: a.target().rank(),
                cols: a.source().rank(),
                target: coeffs.rank(),
                source_rank: coeffs.rank(),
            }));
        }
    }
    if action[0] != AbelianHom::identity(coeffs) {
        return Err(GModuleError::NotIdentityAtE);
    }
    for (g, a) in action.iter().enumerate() {
        if !a.is_injective() {
            return Err(GModuleError::NotAutomorphism(g));
        }
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            if action[g].compose(&action[h]) != action[group.mul(g, h)] {
                return Err(GModuleError::NotHomomorphic(g, h));
            }
        }
    }
    Ok(GModule {
        group: group.clone(),
        coeffs: coeffs.clone(),
        action,
    })
}

impl GModule {
    pub fn trivial_action(group: &FiniteGroup, coeffs: &FiniteAbelianGroup) -> GModule {
        GModule {
            group: group.clone(),
            coeffs: coeffs.clone(),
            action: vec![AbelianHom::identity(coeffs); group.order()],
        }
    }

    /// Action given by integer matrices, one per element.
    pub fn from_matrices(
        group: &FiniteGroup,
        coeffs: &FiniteAbelianGroup,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<GModule, GModuleError> {
        let action = matrices
            .into_iter()
            .map(|m| crate::abelian::validate_hom(coeffs, coeffs, m))
            .collect::<Result<Vec<_>, _>>()?;
        validate_module(group, coeffs, action)
    }

    /// Action determined by the images of a generating set, extended along
    /// words and then validated.
    pub fn from_generator_action(
        group: &FiniteGroup,
        coeffs: &FiniteAbelianGroup,
        generators: &[usize],
        images: &[Vec<Vec<i64>>],
    ) -> Result<GModule, GModuleError> {
        if generators.len() != images.len() {
            return Err(GModuleError::ShapeMismatch {
                expected: generators.len(),
                got: images.len(),
            });
        }
        let gen_homs = images
            .iter()
            .map(|m| crate::abelian::validate_hom(coeffs, coeffs, m.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut action: Vec<Option<AbelianHom>> = vec![None; group.order()];
        action[0] = Some(AbelianHom::identity(coeffs));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, hs) in generators.iter().zip(&gen_homs) {
                let y = group.mul(x, s);
                if action[y].is_none() {
                    action[y] = Some(action[x].as_ref().unwrap().compose(hs));
                    queue.push_back(y);
                }
            }
        }
        if action.iter().any(Option::is_none) {
            return Err(GModuleError::Group(GroupError::NotSubgroup(
                "listed elements do not generate the group".into(),
            )));
        }
        validate_module(group, coeffs, action.into_iter().map(Option::unwrap).collect())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &FiniteAbelianGroup {
        &self.coeffs
    }

    pub fn action(&self, g: usize) -> &AbelianHom {
        &self.action[g]
    }

    pub fn actions(&self) -> &[AbelianHom] {
        &self.action
    }

    /// `g·a`.
    pub fn act(&self, g: usize, a: &[i64]) -> Vec<i64> {
        self.action[g].apply(a)
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = AbelianHom::identity(&self.coeffs);
        self.action.iter().all(|a| *a == id)
    }

    /// Elements acting as the identity.
    pub fn action_kernel(&self) -> Subgroup {
        let id = AbelianHom::identity(&self.coeffs);
        let elems = (0..self.group.order())
            .filter(|&g| self.action[g] == id)
            .collect();
        Subgroup::new(&self.group, elems).expect("kernel of an action is a subgroup")
    }

    pub fn is_faithful(&self) -> bool {
        self.action_kernel().order() == 1
    }

    /// Generators used for invariance and spin computations.
    fn gens(&self) -> &[usize] {
        self.group.generators()
    }

    /// `A^S = {a : s·a = a for all s ∈ S}` as a lattice in coefficient coordinates.
    pub fn fixed_lattice(&self, elems: &[usize]) -> ModLattice {
        let k = self.coeffs.rank();
        let mut rows = Vec::new();
        for &g in elems {
            let m = self.action[g].matrix();
            for r in 0..k {
                let row: Vec<(usize, i64)> = (0..k)
                    .map(|c| (c, m[r][c] - i64::from(r == c)))
                    .filter(|&(_, x)| x != 0)
                    .collect();
                rows.push((self.coeffs.factors()[r], row));
            }
        }
        kernel_from_rows(&self.coeffs, self.coeffs.exponent(), rows)
    }

    /// Spin closure of a lattice under the group generators.
    fn spin_lattice(&self, mut lat: ModLattice, seeds: Vec<Vec<i64>>) -> ModLattice {
        let mut queue: VecDeque<Vec<i64>> = seeds.into();
        let gens = self.gens().to_vec();
        while let Some(v) = queue.pop_front() {
            for &g in &gens {
                let w = self.act(g, &v);
                if lat.insert(&w) {
                    queue.push_back(w);
                }
            }
        }
        lat
    }

    fn submodule_from_lattice(&self, lattice: ModLattice) -> Submodule {
        Submodule {
            presentation: SubgroupPresentation::from_lattice(&self.coeffs, lattice),
        }
    }

    /// Is the subgroup with this lattice invariant? Returns the first
    /// offending group element otherwise.
    fn check_invariant(&self, lat: &ModLattice) -> Result<(), usize> {
        for &g in self.gens() {
            for r in lat.rows() {
                if !lat.contains(&self.act(g, r)) {
                    return Err(g);
                }
            }
        }
        Ok(())
    }

    /// The subgroup generated by `gens`, checked to be invariant.
    pub fn submodule(&self, gens: &[Vec<i64>]) -> Result<Submodule, GModuleError> {
        let lat = self.coeffs.subgroup_lattice(gens.iter().map(Vec::as_slice));
        self.check_invariant(&lat)
            .map_err(GModuleError::NotSubmodule)?;
        Ok(self.submodule_from_lattice(lat))
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.submodule_from_lattice(self.coeffs.relation_lattice())
    }

    pub fn whole_submodule(&self) -> Submodule {
        self.submodule_from_lattice(self.coeffs.full_lattice())
    }
}

/// An invariant subgroup, presented in invariant-factor form with its
/// embedding into the coefficients.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub presentation: SubgroupPresentation,
}

impl Submodule {
    pub fn lattice(&self) -> &ModLattice {
        self.presentation.lattice()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.presentation.group
    }

    pub fn order(&self) -> BigUint {
        self.presentation.order()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.presentation.contains(x)
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        self.presentation.generators()
    }

    pub fn is_zero(&self) -> bool {
        self.group().is_trivial()
    }

    /// All elements, in ambient coordinates.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        self.group()
            .elements()
            .map(|c| self.presentation.embedding.apply(&c))
            .collect()
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.lattice() == other.lattice()
    }
}

/// `A^G`.
pub fn invariants(m: &GModule) -> Submodule {
    let lat = m.fixed_lattice(m.gens());
    m.submodule_from_lattice(lat)
}

/// The smallest submodule containing `seeds`.
pub fn spin_submodule(m: &GModule, seeds: &[Vec<i64>]) -> Submodule {
    let lat = m.spin_lattice(
        m.coeffs.subgroup_lattice(seeds.iter().map(Vec::as_slice)),
        seeds.to_vec(),
    );
    m.submodule_from_lattice(lat)
}

/// `0 = M₀ < M₁ < … < M_r = A` with irreducible factors.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub chain: Vec<Submodule>,
    pub length: usize,
    /// Every factor passed the exhaustive spin test.
    pub certified: bool,
}

/// Composition series built from minimal cyclic submodules of successive
/// quotients; seeds are tried in coordinate order.
pub fn composition_series(m: &GModule) -> CompositionSeries {
    composition_series_with_order(m, &m.coeffs.elements().collect::<Vec<_>>())
}

/// As [`composition_series`], trying seeds in the given order.
pub fn composition_series_with_order(m: &GModule, seeds: &[Vec<i64>]) -> CompositionSeries {
    let full = m.coeffs.full_lattice();
    let mut current = m.coeffs.relation_lattice();
    let mut chain = vec![m.submodule_from_lattice(current.clone())];
    while current != full {
        let mut best: Option<(BigUint, ModLattice)> = None;
        for x in seeds {
            if current.contains(x) {
                continue;
            }
            let mut lat = current.clone();
            lat.insert(x);
            let lat = m.spin_lattice(lat, vec![x.clone()]);
            // smaller index in ℤ^k means a bigger subgroup
            let size = current.index() / lat.index();
            if best.as_ref().map_or(true, |(b, _)| size < *b) {
                best = Some((size, lat));
            }
        }
        let (_, lat) = best.expect("a proper submodule misses some element");
        current = lat;
        chain.push(m.submodule_from_lattice(current.clone()));
    }
    let certified = chain
        .windows(2)
        .all(|w| factor_is_irreducible(m, w[0].lattice(), &w[1]));
    let length = chain.len() - 1;
    CompositionSeries {
        chain,
        length,
        certified,
    }
}

/// Every element of `upper` outside `lower` spins (with `lower`) to `upper`.
fn factor_is_irreducible(m: &GModule, lower: &ModLattice, upper: &Submodule) -> bool {
    upper.elements().into_iter().all(|x| {
        if lower.contains(&x) {
            return true;
        }
        let mut lat = lower.clone();
        lat.insert(&x);
        m.spin_lattice(lat, vec![x]) == *upper.lattice()
    })
}

/// No proper nontrivial submodule, by spinning every nonzero element.
pub fn is_irreducible(m: &GModule) -> bool {
    if m.coeffs.is_trivial() {
        return false;
    }
    factor_is_irreducible(m, &m.coeffs.relation_lattice(), &m.whole_submodule())
}

/// The ways to build a new module from an old one.
#[derive(Clone, Debug)]
pub enum Derivation {
    Restrict(Subgroup),
    Inflate(Subgroup),
    QuotientBy(Submodule),
    SubOn(Submodule),
}

/// A derived module with the maps relating it to its parent.
#[derive(Clone, Debug)]
pub enum DerivedModule {
    /// `(H, A)`; element `i` of the new group is `subgroup.elements()[i]`.
    Restricted { module: GModule, subgroup: Subgroup },
    /// `(G/H, A^H)` with the projection `G → G/H` and the embedding `A^H → A`.
    Inflated {
        module: GModule,
        projection: GroupHom,
        embedding: AbelianHom,
    },
    /// `(G, A/N)` with the projection `A → A/N`.
    Quotient { module: GModule, quotient: AbelianQuotient },
    /// `(G, N)` with the embedding `N → A`.
    Sub { module: GModule, embedding: AbelianHom },
}

impl DerivedModule {
    pub fn module(&self) -> &GModule {
        match self {
            DerivedModule::Restricted { module, .. }
            | DerivedModule::Inflated { module, .. }
            | DerivedModule::Quotient { module, .. }
            | DerivedModule::Sub { module, .. } => module,
        }
    }
}

pub fn derive_module(m: &GModule, kind: &Derivation) -> Result<DerivedModule, GModuleError> {
    match kind {
        Derivation::Restrict(h) => Ok(DerivedModule::Restricted {
            module: restrict(m, h)?,
            subgroup: h.clone(),
        }),
        Derivation::Inflate(h) => inflate(m, h),
        Derivation::QuotientBy(n) => quotient_module(m, n),
        Derivation::SubOn(n) => sub_module_on(m, n),
    }
}

/// `(H, A, ρ|_H)`.
pub fn restrict(m: &GModule, h: &Subgroup) -> Result<GModule, GModuleError> {
    let hg = h.to_group(&m.group);
    let action = h.elements().iter().map(|&x| m.action[x].clone()).collect();
    validate_module(&hg, &m.coeffs, action)
}

/// Conjugates an endomorphism of `A` onto a subquotient presentation:
/// generator `j` goes to `coords(φ(lift(e_j)))`.
fn induced_matrix(
    group: &FiniteAbelianGroup,
    lift: impl Fn(&[i64]) -> Vec<i64>,
    coords: impl Fn(&[i64]) -> Vec<i64>,
    phi: &AbelianHom,
) -> Result<AbelianHom, GModuleError> {
    let images: Vec<Vec<i64>> = (0..group.rank())
        .map(|j| {
            let mut e = group.zero();
            e[j] = 1;
            coords(&phi.apply(&lift(&e)))
        })
        .collect();
    Ok(AbelianHom::from_images(group, group, &images)?)
}

/// `(G/H, A^H)` for `H` normal.
pub fn inflate(m: &GModule, h: &Subgroup) -> Result<DerivedModule, GModuleError> {
    let (q, projection) = quotient_group(&m.group, h)?;
    let fixed = SubgroupPresentation::from_lattice(&m.coeffs, m.fixed_lattice(h.elements()));
    let mut reps = vec![usize::MAX; q.order()];
    for g in 0..m.group.order() {
        let c = projection.apply(g);
        if reps[c] == usize::MAX {
            reps[c] = g;
        }
    }
    let action = reps
        .iter()
        .map(|&x| {
            induced_matrix(
                &fixed.group,
                |c| fixed.embedding.apply(c),
                |a| fixed.coords(a).expect("A^H is G-invariant for normal H"),
                &m.action[x],
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module = validate_module(&q, &fixed.group, action)?;
    Ok(DerivedModule::Inflated {
        module,
        projection,
        embedding: fixed.embedding.clone(),
    })
}

/// `(G, A/N)`.
pub fn quotient_module(m: &GModule, n: &Submodule) -> Result<DerivedModule, GModuleError> {
    m.check_invariant(n.lattice())
        .map_err(GModuleError::NotSubmodule)?;
    let quotient = quotient_by_lattice(&m.coeffs, n.lattice().clone());
    let action = m
        .action
        .iter()
        .map(|phi| {
            induced_matrix(
                &quotient.group,
                |c| quotient.section(c),
                |a| quotient.projection.apply(a),
                phi,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module = validate_module(&m.group, &quotient.group, action)?;
    Ok(DerivedModule::Quotient { module, quotient })
}

/// `(G, N)` with the restricted action.
pub fn sub_module_on(m: &GModule, n: &Submodule) -> Result<DerivedModule, GModuleError> {
    m.check_invariant(n.lattice())
        .map_err(GModuleError::NotSubmodule)?;
    let p = &n.presentation;
    let action = m
        .action
        .iter()
        .map(|phi| {
            induced_matrix(
                &p.group,
                |c| p.embedding.apply(c),
                |a| p.coords(a).expect("submodule is invariant"),
                phi,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module = validate_module(&m.group, &p.group, action)?;
    Ok(DerivedModule::Sub {
        module,
        embedding: p.embedding.clone(),
    })
}

/// Every submodule, by spinning from each element and closing under sums.
/// Fails when more than `cap` submodules are found.
pub fn submodule_lattice(m: &GModule, cap: usize) -> Result<Vec<Submodule>, GModuleError> {
    let elems: Vec<Vec<i64>> = m.coeffs.elements().collect();
    let mut lats: Vec<ModLattice> = vec![m.coeffs.relation_lattice()];
    let push = |lats: &mut Vec<ModLattice>, l: ModLattice| -> bool {
        if lats.iter().any(|x| *x == l) {
            false
        } else {
            lats.push(l);
            true
        }
    };
    let mut cyclic = Vec::new();
    for x in &elems {
        let l = m.spin_lattice(
            m.coeffs.subgroup_lattice([x.as_slice()]),
            vec![x.clone()],
        );
        if !cyclic.iter().any(|c: &ModLattice| *c == l) {
            cyclic.push(l);
        }
    }
    for c in &cyclic {
        push(&mut lats, c.clone());
    }
    let mut i = 0;
    while i < lats.len() {
        for c in &cyclic {
            let s = lats[i].sum(c);
            push(&mut lats, s);
            if lats.len() > cap {
                return Err(GModuleError::CapExceeded {
                    order: lats.len().to_string(),
                    cap: cap as u64,
                });
            }
        }
        i += 1;
    }
    lats.sort_by_key(|l| std::cmp::Reverse(l.index()));
    Ok(lats
        .into_iter()
        .map(|l| m.submodule_from_lattice(l))
        .collect())
}
