//! Finite abelian groups `⊕ ℤ/dᵢ`, homomorphisms as integer matrices, and
//! kernels, images and quotients computed through lattice echelon forms.

pub mod lattice;
mod snf;
mod subquotient;

use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use lattice::{lcm, ModLattice, SplitLattice};
pub use snf::{determinant, mat_mul, smith_normal_form, SnfResult};
pub use subquotient::Subquotient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("cyclic factor {0} must be at least 2")]
    InvalidFactor(i64),
    #[error("factors are not a divisibility chain at position {0}")]
    NotDivisibilityChain(usize),
    #[error("matrix shape {rows}x{cols} does not match target rank {target} and source rank {source_rank}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        target: usize,
        source_rank: usize,
    },
    #[error("homomorphism is not well defined on source generator {0}")]
    NotWellDefined(usize),
    #[error("element has {got} coordinates, group has rank {rank}")]
    WrongRank { got: usize, rank: usize },
    #[error("exponent {0} exceeds the supported modulus range")]
    ModulusTooLarge(i64),
}

/// `⊕ ℤ/dᵢ` with every `dᵢ ≥ 2`.
///
/// Groups built with [`FiniteAbelianGroup::new`] are in invariant-factor form
/// (`d₁ | d₂ | …`); [`FiniteAbelianGroup::from_cyclic`] allows any list, which
/// is what cochain groups `A^N` look like. Use [`FiniteAbelianGroup::canonical`]
/// to compare groups up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    factors: Vec<i64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self, AbelianError> {
        let g = Self::from_cyclic(factors)?;
        for (i, w) in g.factors.windows(2).enumerate() {
            if w[1] % w[0] != 0 {
                return Err(AbelianError::NotDivisibilityChain(i + 1));
            }
        }
        Ok(g)
    }

    pub fn from_cyclic(factors: Vec<i64>) -> Result<Self, AbelianError> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(AbelianError::InvalidFactor(d));
        }
        let e = factors.iter().fold(1, |a, &b| lcm(a, b));
        if e > lattice::MAX_MODULUS || e <= 0 {
            return Err(AbelianError::ModulusTooLarge(e));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    /// `ℤ/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: i64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self::from_cyclic(vec![n]).expect("cyclic order must be positive")
        }
    }

    /// Elementary abelian `(ℤ/p)^rank`.
    pub fn elementary(p: i64, rank: usize) -> Self {
        Self::from_cyclic(vec![p; rank]).expect("prime at least 2")
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::from(1u32), |acc, &d| acc * BigUint::from(d as u64))
    }

    /// The order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    /// Least common multiple of the factors (1 for the trivial group).
    pub fn exponent(&self) -> i64 {
        self.factors.iter().fold(1, |a, &b| lcm(a, b))
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Invariant-factor form of the same group.
    pub fn canonical(&self) -> FiniteAbelianGroup {
        if self.is_canonical() {
            return self.clone();
        }
        canonical_iso(self).0
    }

    pub fn is_isomorphic(&self, other: &FiniteAbelianGroup) -> bool {
        self.canonical() == other.canonical()
    }

    /// Is every nonzero element of prime order `p`?
    pub fn is_elementary(&self, p: i64) -> bool {
        self.factors.iter().all(|&d| d == p)
    }

    /// `A^n`: the factor list repeated `n` times.
    pub fn power(&self, n: usize) -> FiniteAbelianGroup {
        let mut factors = Vec::with_capacity(self.factors.len() * n);
        for _ in 0..n {
            factors.extend_from_slice(&self.factors);
        }
        FiniteAbelianGroup { factors }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    pub fn check(&self, x: &[i64]) -> Result<(), AbelianError> {
        if x.len() != self.rank() {
            return Err(AbelianError::WrongRank {
                got: x.len(),
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| a.rem_euclid(*d))
            .collect()
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b).rem_euclid(*d))
            .collect()
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), d)| (a - b).rem_euclid(*d))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| (-a).rem_euclid(*d))
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| (k.rem_euclid(*d) * a).rem_euclid(*d))
            .collect()
    }

    /// Order of an element.
    pub fn element_order(&self, x: &[i64]) -> i64 {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| d / lattice::gcd(*a, *d))
            .fold(1, lcm)
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            factors: &self.factors,
            next: Some(vec![0; self.rank()]),
        }
    }

    /// `⊕ dᵢℤ` with modulus the exponent.
    pub fn relation_lattice(&self) -> ModLattice {
        ModLattice::relations(&self.factors, self.exponent())
    }

    /// Lattice of the subgroup generated by `gens`.
    pub fn subgroup_lattice<'a>(&self, gens: impl IntoIterator<Item = &'a [i64]>) -> ModLattice {
        let mut l = self.relation_lattice();
        for g in gens {
            l.insert(g);
        }
        l
    }

    pub fn full_lattice(&self) -> ModLattice {
        ModLattice::full(self.rank(), self.exponent())
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub struct ElementIter<'a> {
    factors: &'a [i64],
    next: Option<Vec<i64>>,
}

impl Iterator for ElementIter<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.factors[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(cur)
    }
}

/// A homomorphism `source → target` given by an integer matrix with one
/// column per source generator (entries reduced modulo the target factors).
#[derive(Clone, Debug)]
pub struct AbelianHom {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: Vec<Vec<i64>>,
    graph: OnceLock<SplitLattice>,
}

impl PartialEq for AbelianHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.matrix == other.matrix
    }
}

impl Eq for AbelianHom {}

/// Checks shape and well-definedness (`dⱼ·column j ≡ 0` in the target).
pub fn validate_hom(
    source: &FiniteAbelianGroup,
    target: &FiniteAbelianGroup,
    matrix: Vec<Vec<i64>>,
) -> Result<AbelianHom, AbelianError> {
    let shape_err = || AbelianError::ShapeMismatch {
        rows: matrix.len(),
        cols: matrix.first().map_or(0, Vec::len),
        target: target.rank(),
        source_rank: source.rank(),
    };
    if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
        if !(target.rank() == 0 && matrix.is_empty()) {
            return Err(shape_err());
        }
    }
    let h = AbelianHom::new_unchecked(source.clone(), target.clone(), matrix);
    for (j, &dj) in source.factors().iter().enumerate() {
        for (r, &dr) in target.factors().iter().enumerate() {
            if (dj * h.matrix[r][j]) % dr != 0 {
                return Err(AbelianError::NotWellDefined(j));
            }
        }
    }
    Ok(h)
}

impl AbelianHom {
    pub(crate) fn new_unchecked(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        mut matrix: Vec<Vec<i64>>,
    ) -> Self {
        for (row, &d) in matrix.iter_mut().zip(target.factors()) {
            for x in row.iter_mut() {
                *x = x.rem_euclid(d);
            }
        }
        AbelianHom {
            source,
            target,
            matrix,
            graph: OnceLock::new(),
        }
    }

    /// Builds the matrix from the images of the source generators.
    pub fn from_images(
        source: &FiniteAbelianGroup,
        target: &FiniteAbelianGroup,
        images: &[Vec<i64>],
    ) -> Result<Self, AbelianError> {
        if images.len() != source.rank() {
            return Err(AbelianError::ShapeMismatch {
                rows: target.rank(),
                cols: images.len(),
                target: target.rank(),
                source_rank: source.rank(),
            });
        }
        for im in images {
            target.check(im)?;
        }
        let matrix = (0..target.rank())
            .map(|r| images.iter().map(|im| im[r]).collect())
            .collect();
        validate_hom(source, target, matrix)
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        let n = group.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new_unchecked(group.clone(), group.clone(), matrix)
    }

    pub fn zero(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        Self::new_unchecked(source.clone(), target.clone(), matrix)
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.source.rank());
        self.matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &d)| {
                let mut acc = 0i64;
                for (m, xi) in row.iter().zip(x) {
                    if *m != 0 && *xi != 0 {
                        acc = (acc + m * xi).rem_euclid(d);
                    }
                }
                acc
            })
            .collect()
    }

    /// Image of source generator `j`.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|r| r[j]).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbelianHom) -> AbelianHom {
        assert_eq!(other.target, self.source, "composition of mismatched homs");
        let images: Vec<Vec<i64>> = (0..other.source.rank())
            .map(|j| self.apply(&other.column(j)))
            .collect();
        let matrix = (0..self.target.rank())
            .map(|r| images.iter().map(|im| im[r]).collect())
            .collect();
        AbelianHom::new_unchecked(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    /// Graph lattice `{(M·s + D·y, s)}` with the target block first.
    fn graph(&self) -> &SplitLattice {
        self.graph.get_or_init(|| {
            let t = self.target.rank();
            let s = self.source.rank();
            let e = lcm(self.source.exponent(), self.target.exponent());
            let mut lat = ModLattice::multiples(t + s, e);
            for (j, &d) in self.target.factors().iter().enumerate() {
                if d != e {
                    let mut w = vec![0; t + s];
                    w[j] = d;
                    lat.insert(&w);
                }
            }
            for i in 0..s {
                let mut w = vec![0; t + s];
                for (r, row) in self.matrix.iter().enumerate() {
                    w[r] = row[i];
                }
                w[t + i] = 1;
                lat.insert(&w);
            }
            SplitLattice::new(t, lat)
        })
    }

    /// Kernel as a lattice in the source coordinates.
    pub fn kernel_lattice(&self) -> ModLattice {
        let rows = self
            .matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &d)| {
                let sparse: Vec<(usize, i64)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| (j, x))
                    .collect();
                (d, sparse)
            });
        kernel_from_rows(&self.source, self.target.exponent(), rows)
    }

    /// Image as a lattice in the target coordinates.
    pub fn image_lattice(&self) -> ModLattice {
        let mut lat = self.target.relation_lattice();
        for j in 0..self.source.rank() {
            lat.insert(&self.column(j));
        }
        lat
    }

    pub fn kernel(&self) -> SubgroupPresentation {
        SubgroupPresentation::from_lattice(&self.source, self.kernel_lattice())
    }

    pub fn image(&self) -> SubgroupPresentation {
        SubgroupPresentation::from_lattice(&self.target, self.image_lattice())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == self.source.relation_lattice()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == self.target.full_lattice()
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        let x = self.graph().solve(y)?;
        Some(self.source.reduce(&x))
    }

    /// The lexicographically least `x` with `self(x) = y`.
    pub fn least_preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        self.preimage(y)?;
        let n = self.source.rank();
        // tails[i] = image of the generators after position i
        let mut tails = Vec::with_capacity(n + 1);
        let mut lat = self.target.relation_lattice();
        tails.push(lat.clone());
        for i in (0..n).rev() {
            lat.insert(&self.column(i));
            tails.push(lat.clone());
        }
        tails.reverse();
        // tails[i] spans columns i.., tails[n] is the relation lattice
        let mut x = vec![0i64; n];
        let mut residual = self.target.reduce(y);
        for i in 0..n {
            let col = self.column(i);
            let mut found = false;
            for v in 0..self.source.factors()[i] {
                let r = self.target.sub(&residual, &self.target.scale(v, &col));
                if tails[i + 1].contains(&r) {
                    x[i] = v;
                    residual = r;
                    found = true;
                    break;
                }
            }
            debug_assert!(found, "preimage exists but greedy search failed");
        }
        Some(x)
    }
}

/// Kernel of `x ↦ (mᵣ·x mod dᵣ)ᵣ` on `source`, for sparse rows `(dᵣ, mᵣ)`
/// with every `dᵣ` dividing `target_exponent`.
///
/// The rows are first compressed into an echelon basis of their span in
/// `(ℤ/e)^s`, so the work stays in the source dimension however many rows
/// there are.
pub fn kernel_from_rows(
    source: &FiniteAbelianGroup,
    target_exponent: i64,
    rows: impl IntoIterator<Item = (i64, Vec<(usize, i64)>)>,
) -> ModLattice {
    let s = source.rank();
    let e = lcm(source.exponent(), target_exponent);
    let mut span = ModLattice::multiples(s, e);
    let mut dense = vec![0i64; s];
    for (d, row) in rows {
        let scale = e / d;
        if row.is_empty() {
            continue;
        }
        dense.iter_mut().for_each(|x| *x = 0);
        for (j, x) in row {
            dense[j] = (dense[j] + scale * x).rem_euclid(e);
        }
        span.insert(&dense);
    }
    let mut graph = ModLattice::multiples(2 * s, e);
    for i in 0..s {
        let mut w = vec![0i64; 2 * s];
        for (r, row) in span.rows().iter().enumerate() {
            w[r] = row[i];
        }
        w[s + i] = 1;
        graph.insert(&w);
    }
    let ker = SplitLattice::new(s, graph).tail_kernel();
    let mut out = source.relation_lattice();
    for r in ker.rows() {
        out.insert(r);
    }
    out
}

/// A subgroup `S ≤ A` with its own invariant-factor presentation and the
/// embedding `S → A`.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub group: FiniteAbelianGroup,
    pub embedding: AbelianHom,
    sub: Subquotient,
}

impl SubgroupPresentation {
    pub fn from_lattice(ambient: &FiniteAbelianGroup, lattice: ModLattice) -> Self {
        let sub = Subquotient::new(ambient.factors(), lattice, ambient.relation_lattice());
        let group = sub.group().clone();
        let embedding = AbelianHom::from_images(&group, ambient, sub.generators())
            .expect("subquotient generators have the listed orders");
        SubgroupPresentation {
            group,
            embedding,
            sub,
        }
    }

    /// The subgroup generated by the given elements.
    pub fn generated(ambient: &FiniteAbelianGroup, gens: &[Vec<i64>]) -> Self {
        let lat = ambient.subgroup_lattice(gens.iter().map(Vec::as_slice));
        Self::from_lattice(ambient, lat)
    }

    pub fn lattice(&self) -> &ModLattice {
        self.sub.numerator()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.sub.in_numerator(x)
    }

    /// Coordinates in `group` of an ambient element of the subgroup.
    pub fn coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.sub.classify(x)
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        self.sub.generators()
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

/// `A/⟨B⟩` with its projection.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    pub group: FiniteAbelianGroup,
    pub projection: AbelianHom,
    sub: Subquotient,
}

impl AbelianQuotient {
    /// Least-coordinate preimage of a quotient element.
    pub fn section(&self, q: &[i64]) -> Vec<i64> {
        self.projection
            .least_preimage(q)
            .expect("projection is surjective")
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sub
    }
}

pub fn quotient_by(ambient: &FiniteAbelianGroup, gens: &[Vec<i64>]) -> AbelianQuotient {
    let den = ambient.subgroup_lattice(gens.iter().map(Vec::as_slice));
    quotient_by_lattice(ambient, den)
}

pub fn quotient_by_lattice(ambient: &FiniteAbelianGroup, den: ModLattice) -> AbelianQuotient {
    let sub = Subquotient::new(ambient.factors(), ambient.full_lattice(), den);
    let group = sub.group().clone();
    let images: Vec<Vec<i64>> = (0..ambient.rank())
        .map(|i| {
            let mut e = ambient.zero();
            e[i] = 1;
            sub.classify(&e).expect("every element lies in the full lattice")
        })
        .collect();
    let projection = AbelianHom::from_images(ambient, &group, &images)
        .expect("projection is well defined");
    AbelianQuotient {
        group,
        projection,
        sub,
    }
}

/// Invariant-factor form of `group` with the isomorphisms in both directions.
pub fn canonical_iso(group: &FiniteAbelianGroup) -> (FiniteAbelianGroup, AbelianHom, AbelianHom) {
    let q = quotient_by(group, &[]);
    let back: Vec<Vec<i64>> = q.sub.generators().to_vec();
    let inverse = AbelianHom::from_images(&q.group, group, &back).expect("generators have orders");
    (q.group.clone(), q.projection, inverse)
}

/// `A ⊕ B` in invariant-factor form with canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FiniteAbelianGroup,
    pub injections: [AbelianHom; 2],
    pub projections: [AbelianHom; 2],
}

pub fn direct_sum(a: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> DirectSum {
    let mut moduli = a.factors().to_vec();
    moduli.extend_from_slice(b.factors());
    let raw = FiniteAbelianGroup::from_cyclic(moduli).expect("factors already validated");
    let (group, to, from) = canonical_iso(&raw);
    let (ra, rb) = (a.rank(), b.rank());
    let inj = |offset: usize, src: &FiniteAbelianGroup| {
        let images: Vec<Vec<i64>> = (0..src.rank())
            .map(|i| {
                let mut e = raw.zero();
                e[offset + i] = 1;
                to.apply(&e)
            })
            .collect();
        AbelianHom::from_images(src, &group, &images).expect("injection is well defined")
    };
    let proj = |offset: usize, dst: &FiniteAbelianGroup| {
        let images: Vec<Vec<i64>> = (0..group.rank())
            .map(|i| {
                let mut e = group.zero();
                e[i] = 1;
                let x = from.apply(&e);
                x[offset..offset + dst.rank()].to_vec()
            })
            .collect();
        AbelianHom::from_images(&group, dst, &images).expect("projection is well defined")
    };
    DirectSum {
        injections: [inj(0, a), inj(ra, b)],
        projections: [proj(0, a), proj(ra, b)],
        group: group.clone(),
    }
    .with_rank_check(ra + rb)
}

impl DirectSum {
    fn with_rank_check(self, _raw_rank: usize) -> Self {
        self
    }
}

/// Kernel and image of a homomorphism with their embeddings.
pub fn kernel_image(h: &AbelianHom) -> (SubgroupPresentation, SubgroupPresentation) {
    (h.kernel(), h.image())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[i64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn chain_is_enforced() {
        assert!(FiniteAbelianGroup::new(vec![2, 4]).is_ok());
        assert_eq!(
            FiniteAbelianGroup::new(vec![4, 2]),
            Err(AbelianError::NotDivisibilityChain(1))
        );
        assert_eq!(
            FiniteAbelianGroup::new(vec![1]),
            Err(AbelianError::InvalidFactor(1))
        );
    }

    #[test]
    fn validate_hom_examples() {
        let z2 = grp(&[2]);
        let z4 = grp(&[4]);
        assert!(validate_hom(&z2, &z4, vec![vec![2]]).is_ok());
        assert_eq!(
            validate_hom(&z2, &z4, vec![vec![1]]),
            Err(AbelianError::NotWellDefined(0))
        );
        assert!(validate_hom(&z4, &z2, vec![vec![0]]).is_ok());
    }

    #[test]
    fn kernel_image_examples() {
        let z4 = grp(&[4]);
        let dbl = validate_hom(&z4, &z4, vec![vec![2]]).unwrap();
        let (k, i) = kernel_image(&dbl);
        assert_eq!(k.group, grp(&[2]));
        assert_eq!(i.group, grp(&[2]));

        let z6 = grp(&[6]);
        let (k, i) = kernel_image(&AbelianHom::identity(&z6));
        assert!(k.group.is_trivial());
        assert_eq!(i.group, z6);

        let a = FiniteAbelianGroup::elementary(3, 2);
        let (k, i) = kernel_image(&AbelianHom::zero(&a, &a));
        assert_eq!(k.group, grp(&[3, 3]));
        assert!(i.group.is_trivial());
    }

    #[test]
    fn quotient_examples() {
        let z4 = grp(&[4]);
        let q = quotient_by(&z4, &[vec![2]]);
        assert_eq!(q.group, grp(&[2]));
        let v = FiniteAbelianGroup::elementary(2, 2);
        let q = quotient_by(&v, &[vec![1, 1]]);
        assert_eq!(q.group, grp(&[2]));
        assert_eq!(q.section(&[1]), vec![0, 1]);
        let q = quotient_by(&v, &[vec![0, 0]]);
        assert_eq!(q.group, grp(&[2, 2]));
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&grp(&[2]), &grp(&[3]));
        assert_eq!(s.group, grp(&[6]));
        let s = direct_sum(&grp(&[2]), &grp(&[2]));
        assert_eq!(s.group, grp(&[2, 2]));
        let a = grp(&[2, 4]);
        let s = direct_sum(&a, &FiniteAbelianGroup::trivial());
        assert_eq!(s.group, a);
        // projections undo injections
        let s = direct_sum(&grp(&[4]), &grp(&[6]));
        for x in grp(&[4]).elements() {
            let y = s.injections[0].apply(&x);
            assert_eq!(s.projections[0].apply(&y), x);
            assert_eq!(s.projections[1].apply(&y), vec![0]);
        }
    }

    #[test]
    fn least_preimage_is_least() {
        let v = FiniteAbelianGroup::from_cyclic(vec![2, 4]).unwrap();
        let z4 = grp(&[4]);
        // (a, b) -> 2a + b
        let h = validate_hom(&v, &z4, vec![vec![2, 1]]).unwrap();
        for y in z4.elements() {
            let brute = v.elements().find(|x| h.apply(x) == y).unwrap();
            assert_eq!(h.least_preimage(&y).unwrap(), brute);
        }
    }
}
