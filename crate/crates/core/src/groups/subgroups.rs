use std::collections::HashSet;

use rayon::prelude::*;

use super::{FiniteGroup, GroupError};
use crate::limits::DEFAULT_ORDER_CAP;

/// A subgroup stored as its strictly increasing element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elements }
    }

    /// Validates closure of an arbitrary element list.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::NotSubgroup(format!("element {x} out of range")));
        }
        let s = Subgroup { elements };
        for &a in &s.elements {
            if !s.contains(g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elements {
                if !s.contains(g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(s)
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: g.closure(gens),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..g.order()).collect(),
        }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `Ok` when normal, otherwise a witness `s^g ∉ S`.
    pub fn check_normal(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        for &x in g.generators() {
            for &s in &self.elements {
                if !self.contains(g.conj(s, x)) {
                    return Err(GroupError::NotNormal { s, g: x });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.check_normal(g).is_ok()
    }

    /// `S^x = {x⁻¹sx}`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&s| g.conj(s, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// The subgroup as a group in its own right: element `i` of the result is
    /// `elements()[i]` in the parent.
    pub fn to_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed under products");
        let table: Vec<u16> = (0..n * n)
            .map(|k| pos(g.mul(self.elements[k / n], self.elements[k % n])) as u16)
            .collect();
        FiniteGroup::from_trusted_table(n, table)
    }

    /// Position of a parent element inside `elements()`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_nilpotent(&self, g: &FiniteGroup) -> bool {
        self.to_group(g).is_nilpotent()
    }

    fn bitset(&self, n: usize) -> Vec<u64> {
        let mut bits = vec![0u64; n.div_ceil(64)];
        for &x in &self.elements {
            bits[x / 64] |= 1 << (x % 64);
        }
        bits
    }
}

/// `γ₁ = G ⊇ γ₂ = [G,G] ⊇ …`, with the nilpotency class when the series
/// reaches the trivial group (`None` means not nilpotent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    pub terms: Vec<Subgroup>,
    pub class: Option<usize>,
}

impl FiniteGroup {
    pub fn center(&self) -> Subgroup {
        let gens = self.generators().to_vec();
        let elements = (0..self.order())
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted_unchecked(elements)
    }

    /// `{g : S^g = S}`.
    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let elements = (0..self.order())
            .into_par_iter()
            .filter(|&g| s.elements().iter().all(|&x| s.contains(self.conj(x, g))))
            .collect();
        Subgroup::from_sorted_unchecked(elements)
    }

    /// `[A, B]`, generated by all `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<usize> = a
            .elements()
            .iter()
            .flat_map(|&x| b.elements().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup::generated(self, &gens)
    }

    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let whole = Subgroup::whole(self);
        let mut terms = vec![whole.clone()];
        loop {
            let last = terms.last().expect("series starts at G");
            if last.order() == 1 {
                let class = terms.len() - 1;
                return LowerCentralSeries {
                    terms,
                    class: Some(class),
                };
            }
            let next = self.commutator_subgroup(&whole, last);
            if next == *last {
                return LowerCentralSeries { terms, class: None };
            }
            terms.push(next);
        }
    }

    /// Set product `A·B` as a sorted list.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
        let mut hit = vec![false; self.order()];
        for &x in a.elements() {
            for &y in b.elements() {
                hit[self.mul(x, y)] = true;
            }
        }
        (0..self.order()).filter(|&x| hit[x]).collect()
    }
}

/// All subgroups with the default order cap.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    enumerate_subgroups_capped(g, DEFAULT_ORDER_CAP)
}

/// All subgroups by cyclic extension from the trivial subgroup, sorted by
/// order and then by element list.
pub fn enumerate_subgroups_capped(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    let n = g.order();
    // one generator per cyclic subgroup
    let mut cyclic_reps = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in 1..n {
        if seen_cyclic.insert(g.closure(&[x])) {
            cyclic_reps.push(x);
        }
    }
    let trivial = Subgroup::trivial();
    let mut found: HashSet<Vec<u64>> = HashSet::from([trivial.bitset(n)]);
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![(trivial, Vec::<usize>::new())];
    while !frontier.is_empty() {
        let mut next: Vec<(Vec<u64>, Subgroup, Vec<usize>)> = frontier
            .par_iter()
            .flat_map_iter(|(s, gens)| {
                cyclic_reps
                    .iter()
                    .filter(|&&x| !s.contains(x))
                    .map(|&x| {
                        let mut ext = gens.clone();
                        ext.push(x);
                        let sub = Subgroup::generated(g, &ext);
                        (sub.bitset(n), sub, ext)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        next.sort_by(|a, b| a.1.cmp(&b.1));
        frontier = Vec::new();
        for (bits, sub, gens) in next {
            if found.insert(bits) {
                all.push(sub.clone());
                frontier.push((sub, gens));
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::super::from_permutations;
    use super::*;

    fn s3() -> FiniteGroup {
        from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap().0
    }

    fn q8() -> FiniteGroup {
        // left multiplication on 1, i, j, k, -1, -i, -j, -k
        let i = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let j = vec![2, 7, 4, 1, 6, 3, 0, 5];
        let (g, _) = from_permutations(8, &[i, j]).unwrap();
        g
    }

    #[test]
    fn center_examples() {
        assert_eq!(s3().center().order(), 1);
        assert_eq!(FiniteGroup::cyclic(4).center().order(), 4);
        let q = q8();
        assert_eq!(q.order(), 8);
        assert_eq!(q.center().order(), 2);
    }

    #[test]
    fn lower_central_examples() {
        assert_eq!(FiniteGroup::cyclic(6).lower_central_series().class, Some(1));
        assert_eq!(q8().lower_central_series().class, Some(2));
        let s = s3().lower_central_series();
        assert_eq!(s.class, None);
        assert_eq!(s.terms.last().unwrap().order(), 3);
        assert_eq!(FiniteGroup::trivial().lower_central_series().class, Some(0));
    }

    #[test]
    fn normalizer_examples() {
        let g = s3();
        let a3 = Subgroup::generated(&g, &[2]);
        assert_eq!(g.normalizer(&a3).order(), 6);
        let t = Subgroup::generated(&g, &[1]);
        assert_eq!(g.normalizer(&t), t);
        assert_eq!(g.normalizer(&Subgroup::trivial()).order(), 6);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&FiniteGroup::cyclic(4)).unwrap().len(), 3);
        assert_eq!(enumerate_subgroups(&s3()).unwrap().len(), 6);
        assert_eq!(enumerate_subgroups(&FiniteGroup::trivial()).unwrap().len(), 1);
        assert_eq!(enumerate_subgroups(&q8()).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_validation() {
        let g = s3();
        assert!(Subgroup::new(&g, vec![0, 1]).is_ok());
        assert!(Subgroup::new(&g, vec![0, 2]).is_err());
    }
}
