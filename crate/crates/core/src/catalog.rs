//! Built-in groups: every group of order at most 16, a few permutation
//! groups, and direct products up to order 48.

use crate::abelian::FiniteAbelianGroup;
use crate::gmodule::GModule;
use crate::groups::{from_permutations, quotient_group, FiniteGroup, Subgroup};
use crate::theorems::{abelian_p_groups, action_modules};

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub group: FiniteGroup,
}

impl CatalogGroup {
    fn new(name: &str, group: FiniteGroup) -> Self {
        CatalogGroup {
            name: name.to_string(),
            group,
        }
    }
}

/// `⟨a, x | aⁿ = 1, x a x⁻¹ = aʳ, xᵐ = aˢ⟩` with element `aⁱxʲ` at index
/// `i·m + j`. Needs `rᵐ ≡ 1` and `r·s ≡ s (mod n)`.
pub fn metacyclic(n: usize, m: usize, r: usize, s: usize) -> FiniteGroup {
    assert!(pow_mod(r, m, n) == 1 % n, "x^m must centralize a");
    assert!((r * s) % n == s % n, "x must fix a^s");
    let order = n * m;
    let mut table = vec![0u16; order * order];
    for g in 0..order {
        let (i, j) = (g / m, g % m);
        for h in 0..order {
            let (k, l) = (h / m, h % m);
            let mut a = i + k * pow_mod(r, j, n);
            let mut x = j + l;
            if x >= m {
                x -= m;
                a += s;
            }
            table[g * order + h] = ((a % n) * m + x) as u16;
        }
    }
    FiniteGroup::from_trusted_table(order, table)
}

fn pow_mod(b: usize, e: usize, n: usize) -> usize {
    (0..e).fold(1 % n, |acc, _| acc * b % n)
}

/// `N ⋊ K` where `action[k]` is the automorphism of `N` (as an element
/// permutation) by which `k` acts. Element `(n, k)` sits at `n·|K| + k`.
pub fn semidirect_product(n: &FiniteGroup, k: &FiniteGroup, action: &[Vec<usize>]) -> FiniteGroup {
    let (a, b) = (n.order(), k.order());
    let order = a * b;
    let mut table = vec![0u16; order * order];
    for g in 0..order {
        let (n1, k1) = (g / b, g % b);
        for h in 0..order {
            let (n2, k2) = (h / b, h % b);
            let nn = n.mul(n1, action[k1][n2]);
            table[g * order + h] = (nn * b + k.mul(k1, k2)) as u16;
        }
    }
    FiniteGroup::from_trusted_table(order, table)
}

fn abelian(factors: &[usize]) -> FiniteGroup {
    factors
        .iter()
        .fold(FiniteGroup::trivial(), |acc, &d| {
            FiniteGroup::direct_product(&acc, &FiniteGroup::cyclic(d))
        })
}

pub fn symmetric(degree: usize) -> FiniteGroup {
    if degree < 2 {
        return FiniteGroup::trivial();
    }
    let mut t: Vec<usize> = (0..degree).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
    from_permutations(degree, &[t, c]).expect("symmetric group within cap").0
}

pub fn alternating4() -> FiniteGroup {
    from_permutations(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
        .expect("A4 within cap")
        .0
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, n - 1, 0)
}

/// `(ℤ/2)² ⋊ ℤ/4`, the generator of `ℤ/4` swapping the two factors.
fn c2sq_by_c4() -> FiniteGroup {
    let v = abelian(&[2, 2]);
    let c4 = FiniteGroup::cyclic(4);
    // element (x, y) at index 2x + y; swap sends it to 2y + x
    let swap = vec![0, 2, 1, 3];
    let id = vec![0, 1, 2, 3];
    semidirect_product(&v, &c4, &[id.clone(), swap.clone(), id, swap])
}

/// `ℤ/4 ∘ D₈`: `ℤ/4 × D₈` modulo the diagonal central subgroup of order 2.
fn pauli() -> FiniteGroup {
    let c4 = FiniteGroup::cyclic(4);
    let d8 = dihedral(4);
    let prod = FiniteGroup::direct_product(&c4, &d8);
    let z = d8.center().elements()[1];
    let diag = 2 * d8.order() + z;
    let n = Subgroup::generated(&prod, &[diag]);
    quotient_group(&prod, &n).expect("central subgroup is normal").0
}

/// All 42 groups of order at most 16, ordered by order.
pub fn small_groups() -> Vec<CatalogGroup> {
    let c = FiniteGroup::cyclic;
    let q8 = metacyclic(4, 2, 3, 2);
    let d8 = dihedral(4);
    vec![
        CatalogGroup::new("C1", FiniteGroup::trivial()),
        CatalogGroup::new("C2", c(2)),
        CatalogGroup::new("C3", c(3)),
        CatalogGroup::new("C4", c(4)),
        CatalogGroup::new("C2xC2", abelian(&[2, 2])),
        CatalogGroup::new("C5", c(5)),
        CatalogGroup::new("C6", c(6)),
        CatalogGroup::new("S3", dihedral(3)),
        CatalogGroup::new("C7", c(7)),
        CatalogGroup::new("C8", c(8)),
        CatalogGroup::new("C4xC2", abelian(&[4, 2])),
        CatalogGroup::new("C2^3", abelian(&[2, 2, 2])),
        CatalogGroup::new("D8", d8.clone()),
        CatalogGroup::new("Q8", q8.clone()),
        CatalogGroup::new("C9", c(9)),
        CatalogGroup::new("C3xC3", abelian(&[3, 3])),
        CatalogGroup::new("C10", c(10)),
        CatalogGroup::new("D10", dihedral(5)),
        CatalogGroup::new("C11", c(11)),
        CatalogGroup::new("C12", c(12)),
        CatalogGroup::new("C6xC2", abelian(&[6, 2])),
        CatalogGroup::new("D12", dihedral(6)),
        CatalogGroup::new("A4", alternating4()),
        CatalogGroup::new("Dic12", metacyclic(3, 4, 2, 0)),
        CatalogGroup::new("C13", c(13)),
        CatalogGroup::new("C14", c(14)),
        CatalogGroup::new("D14", dihedral(7)),
        CatalogGroup::new("C15", c(15)),
        CatalogGroup::new("C16", c(16)),
        CatalogGroup::new("C8xC2", abelian(&[8, 2])),
        CatalogGroup::new("C4xC4", abelian(&[4, 4])),
        CatalogGroup::new("C4xC2xC2", abelian(&[4, 2, 2])),
        CatalogGroup::new("C2^4", abelian(&[2, 2, 2, 2])),
        CatalogGroup::new("D8xC2", FiniteGroup::direct_product(&d8, &c(2))),
        CatalogGroup::new("Q8xC2", FiniteGroup::direct_product(&q8, &c(2))),
        CatalogGroup::new("D16", dihedral(8)),
        CatalogGroup::new("QD16", metacyclic(8, 2, 3, 0)),
        CatalogGroup::new("Q16", metacyclic(8, 2, 7, 4)),
        CatalogGroup::new("M16", metacyclic(8, 2, 5, 0)),
        CatalogGroup::new("C4:C4", metacyclic(4, 4, 3, 0)),
        CatalogGroup::new("C2^2:C4", c2sq_by_c4()),
        CatalogGroup::new("C4oD8", pauli()),
    ]
}

/// Direct products `G × H` of nontrivial catalog groups with at least one
/// non-abelian factor and order between 17 and 48, plus `S₄`.
pub fn product_groups() -> Vec<CatalogGroup> {
    let small = small_groups();
    let mut out = vec![CatalogGroup::new("S4", symmetric(4))];
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            let n = a.group.order() * b.group.order();
            if a.group.order() == 1 || b.group.order() == 1 || !(17..=48).contains(&n) {
                continue;
            }
            if a.group.is_abelian() && b.group.is_abelian() {
                continue;
            }
            out.push(CatalogGroup::new(
                &format!("{}x{}", a.name, b.name),
                FiniteGroup::direct_product(&a.group, &b.group),
            ));
        }
    }
    out
}

/// Small groups followed by the products.
pub fn all_groups() -> Vec<CatalogGroup> {
    let mut v = small_groups();
    v.extend(product_groups());
    v
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    if let Some(g) = small_groups().into_iter().find(|g| g.name == name) {
        return Some(g.group);
    }
    product_groups()
        .into_iter()
        .find(|g| g.name == name)
        .map(|g| g.group)
}

/// Every action, up to `Aut(A)`-conjugacy, of a catalog group of order at
/// most `max_group_order` on a nontrivial abelian `p`-group of order at most
/// `max_coeff_order`.
pub fn module_catalog(max_group_order: usize, max_coeff_order: u64) -> Vec<(String, GModule)> {
    let coeffs: Vec<FiniteAbelianGroup> = abelian_p_groups(max_coeff_order)
        .into_iter()
        .filter(|a| !a.is_trivial())
        .collect();
    let mut out = Vec::new();
    for g in small_groups().into_iter().filter(|g| g.group.order() <= max_group_order) {
        for a in &coeffs {
            for (i, m) in action_modules(&g.group, a).into_iter().enumerate() {
                out.push((format!("{} on {} #{}", g.name, a, i), m));
            }
        }
    }
    out
}
