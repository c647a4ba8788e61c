//! Exhaustive `H¹` vanishing battery: every nilpotent catalog group against
//! every action on every abelian group of order at most 49 without fixed
//! points.
//!
//! An action of `G` on `A` preserves the primary components, and both
//! `A^G` and `H¹(G, A)` split along them, so it suffices to run over
//! abelian `p`-groups. Conjugate actions give isomorphic modules, so
//! homomorphisms `G → Aut(A)` are enumerated up to conjugacy in `Aut(A)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::catalog::small_groups;
use crate::cohomology::h1_der;
use crate::fp::is_prime;
use crate::gmodule::{invariants, GModule};
use crate::groups::FiniteGroup;

/// `Aut(A)` for a small abelian group, as permutations of the elements of `A`
/// in lexicographic order.
pub struct Automorphisms {
    pub coeffs: FiniteAbelianGroup,
    size: usize,
    /// Flat permutations, `size` entries each.
    perms: Vec<u8>,
    /// Key of each automorphism: the indices of the images of the generators.
    keys: Vec<u64>,
    index: HashMap<u64, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    identity: u32,
}

impl Automorphisms {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    fn perm(&self, a: u32) -> &[u8] {
        let a = a as usize;
        &self.perms[a * self.size..(a + 1) * self.size]
    }

    fn generator_positions(&self) -> Vec<usize> {
        let d = self.coeffs.factors();
        (0..d.len())
            .map(|j| d[j + 1..].iter().product::<i64>() as usize)
            .collect()
    }

    /// `a ∘ b`.
    pub fn compose(&self, a: u32, b: u32) -> u32 {
        let pa = self.perm(a);
        let pb = self.perm(b);
        let mut key = 0u64;
        for pos in self.generator_positions().into_iter().rev() {
            key = key * self.size as u64 + u64::from(pa[pb[pos] as usize]);
        }
        self.index[&key]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// Matrix whose column `j` is the image of generator `j`.
    pub fn matrix(&self, a: u32) -> Vec<Vec<i64>> {
        let d = self.coeffs.factors();
        let k = d.len();
        let mut m = vec![vec![0i64; k]; k];
        for (j, pos) in self.generator_positions().into_iter().enumerate() {
            let img = decode(self.perm(a)[pos] as usize, d);
            for r in 0..k {
                m[r][j] = img[r];
            }
        }
        m
    }
}

fn decode(mut i: usize, d: &[i64]) -> Vec<i64> {
    let mut x = vec![0i64; d.len()];
    for r in (0..d.len()).rev() {
        x[r] = (i % d[r] as usize) as i64;
        i /= d[r] as usize;
    }
    x
}

fn encode(x: &[i64], d: &[i64]) -> usize {
    x.iter()
        .zip(d)
        .fold(0usize, |acc, (&v, &m)| acc * m as usize + v.rem_euclid(m) as usize)
}

/// Enumerates `Aut(A)` by choosing generator images of matching order and
/// keeping the bijective ones. Requires `|A| ≤ 64`.
pub fn automorphisms(a: &FiniteAbelianGroup) -> Automorphisms {
    let d = a.factors().to_vec();
    let k = d.len();
    let size = a.order_u64().expect("small group") as usize;
    assert!(size <= 64, "automorphism enumeration needs |A| ≤ 64");
    let elems: Vec<Vec<i64>> = (0..size).map(|i| decode(i, &d)).collect();
    let candidates: Vec<Vec<usize>> = d
        .iter()
        .map(|&dj| (0..size).filter(|&i| elems[i].iter().zip(&d).all(|(x, m)| (x * dj) % m == 0)).collect())
        .collect();
    let mut perms = Vec::new();
    let mut keys = Vec::new();
    let mut choice = vec![0usize; k];
    let total: usize = candidates.iter().map(Vec::len).product();
    for code in 0..total {
        let mut c = code;
        for j in (0..k).rev() {
            choice[j] = candidates[j][c % candidates[j].len()];
            c /= candidates[j].len();
        }
        let mut seen = 0u64;
        let mut perm = Vec::with_capacity(size);
        for x in &elems {
            let mut y = vec![0i64; k];
            for (j, &xj) in x.iter().enumerate() {
                for r in 0..k {
                    y[r] += xj * elems[choice[j]][r];
                }
            }
            let idx = encode(&y, &d);
            if seen >> idx & 1 == 1 {
                break;
            }
            seen |= 1 << idx;
            perm.push(idx as u8);
        }
        if perm.len() == size {
            let key = choice.iter().rev().fold(0u64, |acc, &i| acc * size as u64 + i as u64);
            perms.extend(perm);
            keys.push(key);
        }
    }
    let index: HashMap<u64, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let mut out = Automorphisms {
        coeffs: a.clone(),
        size,
        perms,
        keys,
        index,
        inverse: Vec::new(),
        orders: Vec::new(),
        identity: 0,
    };
    let positions = out.generator_positions();
    let id_key = positions
        .iter()
        .rev()
        .fold(0u64, |acc, &p| acc * size as u64 + p as u64);
    out.identity = out.index[&id_key];
    let n = out.len() as u32;
    out.inverse = (0..n)
        .map(|a| {
            let p = out.perm(a);
            let mut inv = vec![0u8; size];
            for (x, &y) in p.iter().enumerate() {
                inv[y as usize] = x as u8;
            }
            let key = positions
                .iter()
                .rev()
                .fold(0u64, |acc, &pos| acc * size as u64 + u64::from(inv[pos]));
            out.index[&key]
        })
        .collect();
    out.orders = (0..n)
        .map(|a| {
            let mut x = a;
            let mut o = 1;
            while x != out.identity {
                x = out.compose(x, a);
                o += 1;
            }
            o
        })
        .collect();
    out
}

/// Homomorphisms `G → Aut(A)` up to conjugacy, as generator images.
fn hom_classes(g: &FiniteGroup, aut: &Automorphisms) -> Vec<Vec<u32>> {
    let gens = g.generators().to_vec();
    let all: Vec<u32> = (0..aut.len() as u32).collect();
    let mut out = Vec::new();
    extend(g, &gens, aut, &mut Vec::new(), &all, &mut out);
    out
}

fn extend(
    g: &FiniteGroup,
    gens: &[usize],
    aut: &Automorphisms,
    assigned: &mut Vec<u32>,
    stabilizer: &[u32],
    out: &mut Vec<Vec<u32>>,
) {
    let level = assigned.len();
    if level == gens.len() {
        out.push(assigned.clone());
        return;
    }
    let ord = g.element_order(gens[level]) as u32;
    let mut visited = vec![false; aut.len()];
    for y in 0..aut.len() as u32 {
        if visited[y as usize] || ord % aut.order_of(y) != 0 {
            continue;
        }
        for &c in stabilizer {
            let z = aut.compose(aut.compose(c, y), aut.inverse(c));
            visited[z as usize] = true;
        }
        assigned.push(y);
        if consistent(g, &gens[..=level], aut, assigned) {
            let next: Vec<u32> = stabilizer
                .iter()
                .copied()
                .filter(|&c| aut.compose(c, y) == aut.compose(y, c))
                .collect();
            extend(g, gens, aut, assigned, &next, out);
        }
        assigned.pop();
    }
}

/// Does `sᵢ ↦ assignedᵢ` extend to a homomorphism on `⟨s₁, …, s_l⟩`?
fn consistent(g: &FiniteGroup, gens: &[usize], aut: &Automorphisms, assigned: &[u32]) -> bool {
    let mut image: Vec<Option<u32>> = vec![None; g.order()];
    image[0] = Some(aut.identity);
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let ix = image[x].expect("queued elements have images");
        for (&s, &a) in gens.iter().zip(assigned) {
            let y = g.mul(x, s);
            let iy = aut.compose(ix, a);
            match image[y] {
                None => {
                    image[y] = Some(iy);
                    queue.push(y);
                }
                Some(old) if old != iy => return false,
                Some(_) => {}
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct BatteryConfig {
    pub max_group_order: usize,
    pub max_coeff_order: u64,
    /// `p`-groups acting on `p`-groups always have fixed points; such pairs
    /// are enumerated only when `|Aut(A)|` is at most this.
    pub same_prime_aut_limit: usize,
    /// Coefficient groups left out of the battery.
    pub excluded: Vec<Vec<i64>>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            max_group_order: 16,
            max_coeff_order: 49,
            same_prime_aut_limit: 200,
            excluded: vec![vec![2, 2, 2, 2, 2]],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryRow {
    pub group: String,
    pub coeffs: Vec<i64>,
    pub aut_order: usize,
    pub action_classes: usize,
    pub fixed_point_free: usize,
    pub exceptions: usize,
    /// Same-prime pair not enumerated.
    pub skipped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub rows: Vec<BatteryRow>,
    pub action_classes: usize,
    pub fixed_point_free: usize,
    pub exceptions: Vec<String>,
    /// Enumerated same-prime pairs where some action had `A^G = 0`.
    pub same_prime_violations: Vec<String>,
    pub excluded: Vec<Vec<i64>>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty() && self.same_prime_violations.is_empty()
    }
}

/// Abelian `p`-groups of order at most `bound`, in invariant-factor form.
pub fn abelian_p_groups(bound: u64) -> Vec<FiniteAbelianGroup> {
    fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in (2..=bound as i64).filter(|&p| is_prime(p)) {
        let mut n = 1u32;
        while (p as u64).pow(n) <= bound {
            for part in partitions(n, n) {
                let factors: Vec<i64> = part.iter().rev().map(|&e| p.pow(e)).collect();
                out.push(FiniteAbelianGroup::new(factors).expect("ascending prime powers"));
            }
            n += 1;
        }
    }
    out
}

fn prime_of(order: u64) -> Option<u64> {
    (2..=order).find(|d| order % d == 0).filter(|&p| {
        let mut n = order;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    })
}

/// Runs the battery. Instances are independent and run in parallel.
/// One module per `Aut(A)`-conjugacy class of actions of `g` on `a`.
pub fn action_modules(g: &FiniteGroup, a: &FiniteAbelianGroup) -> Vec<GModule> {
    let aut = automorphisms(a);
    let gens = g.generators().to_vec();
    hom_classes(g, &aut)
        .into_iter()
        .map(|class| {
            let images: Vec<Vec<Vec<i64>>> = class.iter().map(|&x| aut.matrix(x)).collect();
            GModule::from_generator_action(g, a, &gens, &images)
                .expect("consistent generator images define an action")
        })
        .collect()
}

pub fn vanishing_battery(config: &BatteryConfig) -> BatteryReport {
    let groups: Vec<_> = small_groups()
        .into_iter()
        .filter(|g| g.group.order() <= config.max_group_order && g.group.is_nilpotent())
        .collect();
    let coeffs: Vec<FiniteAbelianGroup> = abelian_p_groups(config.max_coeff_order)
        .into_iter()
        .filter(|a| !config.excluded.iter().any(|e| e.as_slice() == a.factors()))
        .collect();
    let auts: Vec<Automorphisms> = coeffs.par_iter().map(automorphisms).collect();
    let pairs: Vec<(usize, usize)> = (0..groups.len())
        .flat_map(|i| (0..coeffs.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<(BatteryRow, Vec<String>, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let g = &groups[i];
            let a = &coeffs[j];
            let aut = &auts[j];
            let a_order = a.order_u64().expect("small");
            let same_prime = g.group.order() > 1
                && prime_of(g.group.order() as u64).is_some()
                && prime_of(g.group.order() as u64) == prime_of(a_order);
            let mut row = BatteryRow {
                group: g.name.clone(),
                coeffs: a.factors().to_vec(),
                aut_order: aut.len(),
                action_classes: 0,
                fixed_point_free: 0,
                exceptions: 0,
                skipped: false,
            };
            if same_prime && aut.len() > config.same_prime_aut_limit {
                row.skipped = true;
                return (row, Vec::new(), false);
            }
            let gens = g.group.generators().to_vec();
            let mut exceptions = Vec::new();
            let mut violation = false;
            for class in hom_classes(&g.group, aut) {
                let images: Vec<Vec<Vec<i64>>> = class.iter().map(|&x| aut.matrix(x)).collect();
                let m = GModule::from_generator_action(&g.group, a, &gens, &images)
                    .expect("consistent generator images define an action");
                row.action_classes += 1;
                if !invariants(&m).is_zero() {
                    continue;
                }
                row.fixed_point_free += 1;
                if same_prime {
                    violation = true;
                }
                let h1 = h1_der(&m);
                if !h1.h1.group.is_trivial() {
                    row.exceptions += 1;
                    exceptions.push(format!(
                        "{} on {}: H1 = {} for generator images {:?}",
                        g.name, a, h1.h1.group, images
                    ));
                }
            }
            (row, exceptions, violation)
        })
        .collect();
    let mut report = BatteryReport {
        rows: Vec::new(),
        action_classes: 0,
        fixed_point_free: 0,
        exceptions: Vec::new(),
        same_prime_violations: Vec::new(),
        excluded: config.excluded.clone(),
    };
    for (row, exc, violation) in results {
        report.action_classes += row.action_classes;
        report.fixed_point_free += row.fixed_point_free;
        report.exceptions.extend(exc);
        if violation {
            report
                .same_prime_violations
                .push(format!("{} on {:?}", row.group, row.coeffs));
        }
        report.rows.push(row);
    }
    report
}
