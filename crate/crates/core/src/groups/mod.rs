//! Finite groups as Cayley tables with the identity at index 0.

mod subgroups;

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::limits::DEFAULT_CLOSURE_CAP;

pub use subgroups::{
    enumerate_subgroups, enumerate_subgroups_capped, LowerCentralSeries, Subgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not square or has an entry out of range at row {row}")]
    NotClosed { row: usize },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    NoIdentityAtZero(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("closure exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    InvalidPermutation { index: usize, degree: usize },
    #[error("subgroup is not normal: conjugating {s} by {g} leaves it")]
    NotNormal { s: usize, g: usize },
    #[error("element list is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("table is empty")]
    Empty,
}

/// A finite group given by its multiplication table.
///
/// Elements are `0..order`, `0` is the identity and `mul(g, h)` is `g·h`.
/// Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Arc<[u16]>,
    inverse: Arc<[u16]>,
    generators: Arc<OnceLock<Vec<usize>>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// A permutation of `0..degree`, with `(g·h)(x) = g(h(x))`.
pub type Permutation = Vec<usize>;

/// Checks the group axioms and builds the group.
pub fn validate_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n || r.iter().any(|&x| x >= n) {
            return Err(GroupError::NotClosed { row });
        }
    }
    if n > u16::MAX as usize {
        return Err(GroupError::OrderCapExceeded {
            cap: u16::MAX as usize,
        });
    }
    for g in 0..n {
        if table[0][g] != g || table[g][0] != g {
            return Err(GroupError::NoIdentityAtZero(g));
        }
    }
    let mut inverse = vec![0u16; n];
    for g in 0..n {
        let row_ok = {
            let mut seen = vec![false; n];
            table[g].iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        let col_ok = {
            let mut seen = vec![false; n];
            (0..n).all(|h| !std::mem::replace(&mut seen[table[h][g]], true))
        };
        let inv = (0..n).find(|&h| table[g][h] == 0 && table[h][g] == 0);
        match inv {
            Some(h) if row_ok && col_ok => inverse[g] = h as u16,
            _ => return Err(GroupError::MissingInverse(g)),
        }
    }
    let bad = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    if let Some((a, b, c)) = bad {
        return Err(GroupError::NotAssociative(a, b, c));
    }
    let flat: Vec<u16> = table.iter().flatten().map(|&x| x as u16).collect();
    Ok(FiniteGroup::from_parts(n, flat, inverse))
}

impl FiniteGroup {
    fn from_parts(order: usize, table: Vec<u16>, inverse: Vec<u16>) -> Self {
        FiniteGroup {
            order,
            table: table.into(),
            inverse: inverse.into(),
            generators: Arc::new(OnceLock::new()),
        }
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<u16>) -> Self {
        let mut inverse = vec![0u16; order];
        for g in 0..order {
            for h in 0..order {
                if table[g * order + h] == 0 {
                    inverse[g] = h as u16;
                    break;
                }
            }
        }
        Self::from_parts(order, table, inverse)
    }

    pub fn trivial() -> Self {
        Self::from_parts(1, vec![0], vec![0])
    }

    /// `ℤ/n` with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1 && n <= u16::MAX as usize);
        let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
        Self::from_trusted_table(n, table)
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (a, b) = (g.order, h.order);
        let n = a * b;
        assert!(n <= u16::MAX as usize);
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b, x % b);
                let (y1, y2) = (y / b, y % b);
                table[x * n + y] = (g.mul(x1, y1) * b + h.mul(x2, y2)) as u16;
            }
        }
        Self::from_trusted_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g] as usize
    }

    /// `s^g = g⁻¹·s·g`.
    #[inline]
    pub fn conj(&self, s: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), s), g)
    }

    /// `[g, h] = g⁻¹h⁻¹gh`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let ord = self.element_order(g) as i64;
        let k = k.rem_euclid(ord);
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Is the order a power of a single prime (the trivial group counts)?
    pub fn is_p_group(&self) -> bool {
        prime_factors(self.order).len() <= 1
    }

    /// The table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|g| (0..self.order).map(|h| self.mul(g, h)).collect())
            .collect()
    }

    /// A small generating set, chosen greedily: at each step the element
    /// (least index on ties) that enlarges the generated subgroup most.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut current = vec![0usize];
            while current.len() < self.order {
                let mut member = vec![false; self.order];
                for &x in &current {
                    member[x] = true;
                }
                let mut best: Option<(usize, Vec<usize>)> = None;
                for g in 0..self.order {
                    if member[g] {
                        continue;
                    }
                    let mut trial = gens.clone();
                    trial.push(g);
                    let closure = self.closure(&trial);
                    if best.as_ref().map_or(true, |(_, b)| closure.len() > b.len()) {
                        best = Some((g, closure));
                        if best.as_ref().unwrap().1.len() == self.order {
                            break;
                        }
                    }
                }
                let (g, closure) = best.expect("some element lies outside a proper subgroup");
                gens.push(g);
                current = closure;
            }
            gens
        })
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0usize];
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Is the whole group nilpotent?
    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().class.is_some()
    }

    /// Does the derived series reach the trivial group?
    pub fn is_solvable(&self) -> bool {
        let mut current = Subgroup::whole(self);
        loop {
            if current.order() == 1 {
                return true;
            }
            let gens: Vec<usize> = current
                .elements()
                .iter()
                .flat_map(|&a| current.elements().iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.commutator(a, b))
                .collect();
            let next = Subgroup::generated(self, &gens);
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn compose(g: &[usize], h: &[usize]) -> Permutation {
    h.iter().map(|&x| g[x]).collect()
}

/// The group generated by permutations of `0..degree`, with the default
/// closure cap.
pub fn from_permutations(
    degree: usize,
    generators: &[Permutation],
) -> Result<(FiniteGroup, Vec<Permutation>), GroupError> {
    from_permutations_capped(degree, generators, DEFAULT_CLOSURE_CAP)
}

/// The group generated by permutations, elements ordered breadth-first by
/// word length with ties broken by generator order. Returns the group and the
/// permutation labelling each element.
pub fn from_permutations_capped(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(FiniteGroup, Vec<Permutation>), GroupError> {
    for (index, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = g.len() == degree
            && g
                .iter()
                .all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
        if !ok {
            return Err(GroupError::InvalidPermutation { index, degree });
        }
    }
    let cap = cap.min(u16::MAX as usize);
    let identity: Permutation = (0..degree).collect();
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let y = compose(&elements[head], g);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        head += 1;
    }
    let n = elements.len();
    let table: Vec<u16> = (0..n * n)
        .into_par_iter()
        .map(|k| index[&compose(&elements[k / n], &elements[k % n])] as u16)
        .collect();
    Ok((FiniteGroup::from_trusted_table(n, table), elements))
}

/// A homomorphism between finite groups as an element map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: &FiniteGroup,
        target: &FiniteGroup,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::NotClosed { row: 0 });
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::NotHomomorphism(x, y));
                }
            }
        }
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn kernel(&self) -> Subgroup {
        let elems = (0..self.source.order())
            .filter(|&g| self.map[g] == 0)
            .collect();
        Subgroup::from_sorted_unchecked(elems)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|b| b)
    }
}

/// `G/N` with cosets ordered by least member, and the projection.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
    n.check_normal(g)?;
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in n.elements() {
            coset_of[g.mul(x, m)] = idx;
        }
    }
    let k = reps.len();
    let table: Vec<u16> = (0..k * k)
        .map(|t| coset_of[g.mul(reps[t / k], reps[t % k])] as u16)
        .collect();
    let q = FiniteGroup::from_trusted_table(k, table);
    let proj = GroupHom {
        source: g.clone(),
        target: q.clone(),
        map: coset_of,
    };
    Ok((q, proj))
}
