//! Acceptance criteria 1–14. Each test prints one line
//! `criterion N [PASS|FAIL] title: detail (seconds)` to stderr, even under
//! output capture, then asserts.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cohomoforge::abelian::FiniteAbelianGroup;
use cohomoforge::catalog::{all_groups, module_catalog, small_groups};
use cohomoforge::cohomology::{
    apply_differential, check_inf_res_exact, check_long_exact, cohomology_cost, cohomology_group,
    connecting_map, connecting_map_with_section, faithful_reduction_check, h1_der, ShortExactSequence,
};
use cohomoforge::fp;
use cohomoforge::gmodule::{
    composition_series, invariants, quotient_module, sub_module_on, submodule_lattice, DerivedModule,
    GModule,
};
use cohomoforge::groups::{enumerate_subgroups, FiniteGroup, Subgroup};
use cohomoforge::liering::{
    all_subspaces, ce_cohomology, check_ce_dd_zero, check_lie_inf_res, check_six_term, gl, gl_restricted,
    is_semisimple_element, lie_catalog, lie_connecting_map_with_section, lie_frattini_instances, lie_h1_der,
    lie_module_catalog, matrix_power_map, submodule_lattice_lie, validate_restricted, validate_restricted_map,
    verify_lie_composition_factors, verify_lie_frattini, verify_lie_vanishing, LieModule,
    LieShortExactSequence,
};
use cohomoforge::limits::Limits;
use cohomoforge::theorems::{
    action_modules, frattini_instances, maschke_decompose, schur_check, vanishing_battery,
    verify_composition_factors, BatteryConfig,
};

type Outcome = Result<String, String>;

fn criterion(n: usize, title: &str, budget: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = match result {
        Ok(d) if elapsed > budget => Err(format!("{d}; over the {} s budget", budget.as_secs())),
        r => r,
    };
    let (status, detail) = match &result {
        Ok(d) => ("PASS", d.clone()),
        Err(d) => ("FAIL", d.clone()),
    };
    let line = format!(
        "criterion {n:>2} [{status}] {title}: {detail} ({:.1} s)\n",
        elapsed.as_secs_f64()
    );
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    if let Err(d) = result {
        panic!("criterion {n} failed: {d}");
    }
}

fn check(failures: &[String]) -> Result<(), String> {
    match failures.first() {
        None => Ok(()),
        Some(f) => Err(format!("{} failures, first: {f}", failures.len())),
    }
}

/// Every module of a group of order ≤ 4 on an abelian p-group of order ≤ 9.
fn small_modules() -> &'static [(String, GModule)] {
    static CELL: OnceLock<Vec<(String, GModule)>> = OnceLock::new();
    CELL.get_or_init(|| module_catalog(4, 9))
}

/// The same with groups of order ≤ 8.
fn catalog_modules() -> &'static [(String, GModule)] {
    static CELL: OnceLock<Vec<(String, GModule)>> = OnceLock::new();
    CELL.get_or_init(|| module_catalog(8, 9))
}

// ---------------------------------------------------------------------------
// Table-driven model of a module, used by the oracles below.

struct Tables {
    a: FiniteAbelianGroup,
    elems: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
    n: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    gens: Vec<usize>,
    /// `act[g][e]`
    act: Vec<Vec<usize>>,
    p: i64,
}

impl Tables {
    fn new(m: &GModule) -> Tables {
        let a = m.coeffs().clone();
        let elems: Vec<Vec<i64>> = a.elements().collect();
        let index: HashMap<Vec<i64>, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let add = elems
            .iter()
            .map(|x| elems.iter().map(|y| index[&a.add(x, y)]).collect())
            .collect();
        let neg = elems.iter().map(|x| index[&a.neg(x)]).collect();
        let g = m.group();
        let n = g.order();
        let mul = (0..n).map(|x| (0..n).map(|y| g.mul(x, y)).collect()).collect();
        let inv = (0..n).map(|x| g.inv(x)).collect();
        let act = (0..n)
            .map(|x| elems.iter().map(|e| index[&a.reduce(&m.act(x, e))]).collect())
            .collect();
        let order = elems.len() as i64;
        let p = (2..=order.max(2)).find(|d| order % d == 0).unwrap_or(1);
        Tables { a, elems, index, add, neg, n, mul, inv, gens: g.generators().to_vec(), act, p }
    }

    fn zero(&self) -> usize {
        self.index[&self.a.zero()]
    }

    fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg[y]]
    }

    fn times(&self, k: i64, x: usize) -> usize {
        (0..k).fold(self.zero(), |acc, _| self.add[acc][x])
    }

    fn idx(&self, v: &[i64]) -> usize {
        self.index[&self.a.reduce(v)]
    }

    /// Subgroups of `A` stable under `G`, as sorted element-index sets.
    fn invariant_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let close = |seed: &[usize]| -> BTreeSet<usize> {
            let mut set: BTreeSet<usize> = BTreeSet::from([self.zero()]);
            let mut frontier: Vec<usize> = seed.to_vec();
            while let Some(x) = frontier.pop() {
                if set.contains(&x) {
                    continue;
                }
                let current: Vec<usize> = set.iter().copied().collect();
                set.insert(x);
                for y in current {
                    let s = self.add[x][y];
                    if !set.contains(&s) {
                        frontier.push(s);
                    }
                }
                for &g in &self.gens {
                    frontier.push(self.act[g][x]);
                }
                frontier.push(self.add[x][x]);
            }
            set
        };
        let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let k = self.elems.len();
        out.insert(close(&[]));
        for x in 0..k {
            out.insert(close(&[x]));
            for y in x + 1..k {
                out.insert(close(&[x, y]));
                if self.a.rank() > 2 {
                    for z in y + 1..k {
                        out.insert(close(&[x, y, z]));
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Invariant factors of `Z/B` for a `p`-group of cochains, from the orders
/// of the `pⁱ`-torsion subgroups of the quotient.
fn quotient_factors(t: &Tables, z: &[Vec<usize>], b: &HashSet<Vec<usize>>) -> Vec<i64> {
    let p = t.p;
    let mut logs = vec![0u32];
    let mut cur: Vec<Vec<usize>> = z.to_vec();
    loop {
        cur = cur.iter().map(|c| c.iter().map(|&x| t.times(p, x)).collect()).collect();
        let count = cur.iter().filter(|c| b.contains(*c)).count();
        assert_eq!(count % b.len(), 0, "torsion count not a multiple of |B|");
        let mut q = count / b.len();
        let mut s = 0;
        while q > 1 {
            assert_eq!(q % p as usize, 0, "torsion order not a power of p");
            q /= p as usize;
            s += 1;
        }
        logs.push(s);
        if count == z.len() {
            break;
        }
    }
    // g_i = number of cyclic factors of order ≥ pⁱ
    let g: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).chain(std::iter::once(0)).collect();
    let mut factors = Vec::new();
    for i in 0..g.len() - 1 {
        for _ in 0..(g[i] - g[i + 1]) {
            factors.push(p.pow(i as u32 + 1));
        }
    }
    factors.sort();
    factors
}

/// All maps `G → A` as element indices, via an odometer.
fn all_one_cochains(t: &Tables) -> Vec<Vec<usize>> {
    let k = t.elems.len();
    let mut out = Vec::new();
    let mut f = vec![0usize; t.n];
    loop {
        out.push(f.clone());
        let mut i = 0;
        while i < t.n {
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == t.n {
            return out;
        }
    }
}

fn is_derivation(t: &Tables, f: &[usize]) -> bool {
    (0..t.n).all(|x| (0..t.n).all(|y| f[t.mul[x][y]] == t.add[t.act[x][f[y]]][f[x]]))
}

fn brute_h1(t: &Tables) -> Vec<i64> {
    let z: Vec<Vec<usize>> = all_one_cochains(t).into_iter().filter(|f| is_derivation(t, f)).collect();
    let b: HashSet<Vec<usize>> = (0..t.elems.len())
        .map(|a| (0..t.n).map(|x| t.sub(t.act[x][a], a)).collect())
        .collect();
    quotient_factors(t, &z, &b)
}

fn brute_h2(t: &Tables) -> Vec<i64> {
    let n = t.n;
    let k = t.elems.len();
    let cell = |x: usize, y: usize| x * n + y;
    // constraint (x, y, z) becomes checkable once its last cell is assigned
    let mut by_last: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let cells = [cell(y, z), cell(t.mul[x][y], z), cell(x, t.mul[y][z]), cell(x, y)];
                by_last[*cells.iter().max().unwrap()].push((x, y, z));
            }
        }
    }
    let holds = |f: &[usize], (x, y, z): (usize, usize, usize)| {
        let lhs = t.add[t.act[x][f[cell(y, z)]]][f[cell(x, t.mul[y][z])]];
        let rhs = t.add[f[cell(t.mul[x][y], z)]][f[cell(x, y)]];
        lhs == rhs
    };
    let mut z = Vec::new();
    let mut f = vec![0usize; n * n];
    fn dfs(
        pos: usize,
        f: &mut Vec<usize>,
        k: usize,
        by_last: &[Vec<(usize, usize, usize)>],
        holds: &dyn Fn(&[usize], (usize, usize, usize)) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == f.len() {
            out.push(f.clone());
            return;
        }
        for v in 0..k {
            f[pos] = v;
            if by_last[pos].iter().all(|&c| holds(f, c)) {
                dfs(pos + 1, f, k, by_last, holds, out);
            }
        }
    }
    dfs(0, &mut f, k, &by_last, &holds, &mut z);
    let b: HashSet<Vec<usize>> = all_one_cochains(t)
        .into_iter()
        .map(|g| {
            let mut out = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[cell(x, y)] = t.add[t.sub(t.act[x][g[y]], g[t.mul[x][y]])][g[x]];
                }
            }
            out
        })
        .collect();
    let zset: HashSet<&Vec<usize>> = z.iter().collect();
    assert!(b.iter().all(|c| zset.contains(c)), "coboundary that is not a cocycle");
    quotient_factors(t, &z, &b)
}

fn sorted(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    v.sort();
    v
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_complex_axiom() {
    criterion(1, "complex axiom", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let modules = catalog_modules();
        for (name, m) in modules {
            for n in 0..=2 {
                if !cohomoforge::cohomology::check_dd_zero(m, n) {
                    failures.push(format!("{name}, n = {n}"));
                }
            }
            // the composite on random cochains, through the pointwise differential
            let k = m.coeffs().rank();
            for n in 0..=1 {
                let len = m.group().order().pow(n as u32) * k;
                let f: Vec<i64> = (0..len).map(|i| rng.gen_range(0..m.coeffs().factors()[i % k])).collect();
                let dd = apply_differential(m, n + 1, &apply_differential(m, n, &f));
                if dd.iter().enumerate().any(|(i, &x)| x % m.coeffs().factors()[i % k] != 0) {
                    failures.push(format!("{name}, random cochain in degree {n}"));
                }
            }
        }
        let lie = lie_module_catalog();
        for (name, m) in &lie {
            for n in 0..=2 {
                if !check_ce_dd_zero(m, n) {
                    failures.push(format!("{name}, n = {n}"));
                }
            }
        }
        check(&failures)?;
        if modules.len() < 50 || lie.len() < 10 {
            return Err(format!("only {} G-modules and {} Lie modules", modules.len(), lie.len()));
        }
        Ok(format!("{} G-modules and {} Lie modules, n = 0, 1, 2", modules.len(), lie.len()))
    });
}

#[test]
fn criterion_02_oracle_equivalence() {
    criterion(2, "brute-force oracle", Duration::from_secs(120), || {
        let mut failures = Vec::new();
        let modules = small_modules();
        for (name, m) in modules {
            let t = Tables::new(m);
            let h1 = cohomology_group(m, 1).map_err(|e| e.to_string())?;
            let o1 = brute_h1(&t);
            if sorted(h1.group.factors()) != o1 {
                failures.push(format!("{name}: H1 {:?} vs brute force {o1:?}", h1.group.factors()));
            }
            let h2 = cohomology_group(m, 2).map_err(|e| e.to_string())?;
            let o2 = brute_h2(&t);
            if sorted(h2.group.factors()) != o2 {
                failures.push(format!("{name}: H2 {:?} vs brute force {o2:?}", h2.group.factors()));
            }
        }
        check(&failures)?;
        Ok(format!("{} modules with |G| ≤ 4, |A| ≤ 9, n = 1, 2", modules.len()))
    });
}

#[test]
fn criterion_03_h0_identity() {
    criterion(3, "H0 = invariants", Duration::from_secs(120), || {
        let mut failures = Vec::new();
        for (name, m) in catalog_modules() {
            let t = Tables::new(m);
            let fixed: Vec<Vec<usize>> = (0..t.elems.len())
                .filter(|&a| (0..t.n).all(|g| t.act[g][a] == a))
                .map(|a| vec![a])
                .collect();
            let oracle = quotient_factors(&t, &fixed, &HashSet::from([vec![t.zero()]]));
            let h0 = cohomology_group(m, 0).map_err(|e| e.to_string())?;
            let inv = invariants(m);
            if sorted(h0.group.factors()) != oracle || !h0.group.is_isomorphic(inv.group()) {
                failures.push(format!("{name}: H0 {} vs A^G {} vs fixed points {oracle:?}", h0.group, inv.group()));
            }
        }
        check(&failures)?;
        Ok(format!("{} catalog modules", catalog_modules().len()))
    });
}

#[test]
fn criterion_04_h1_two_paths() {
    criterion(4, "H1 two-path agreement", Duration::from_secs(120), || {
        let limits = Limits::default();
        let mut failures = Vec::new();
        let mut count = 0;
        for (name, m) in catalog_modules() {
            if cohomology_cost(m, 1) > limits.size_budget as u128 {
                continue;
            }
            count += 1;
            let a = h1_der(m).h1.group;
            let b = cohomology_group(m, 1).map_err(|e| e.to_string())?.group;
            if !a.is_isomorphic(&b) {
                failures.push(format!("{name}: Der/IDer {a} vs cochains {b}"));
            }
        }
        check(&failures)?;
        Ok(format!("{count} modules"))
    });
}

/// Dimensions of the nontrivial irreducible `𝔽₂[C_d]`-modules, d > 1 odd,
/// are the multiplicative orders of 2 mod d.
fn ord2(d: u64) -> u64 {
    let mut x = 2 % d;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % d;
        k += 1;
    }
    k
}

/// Regular `𝔽₂[Q]`-module: its composition factors are all irreducibles.
fn regular_module_over_f2(q: &FiniteGroup) -> GModule {
    let n = q.order();
    let coeffs = FiniteAbelianGroup::from_cyclic(vec![2; n]).unwrap();
    let mats = (0..n)
        .map(|g| {
            let mut mtx = vec![vec![0; n]; n];
            for h in 0..n {
                mtx[q.mul(g, h)][h] = 1;
            }
            mtx
        })
        .collect();
    GModule::from_matrices(q, &coeffs, mats).unwrap()
}

#[test]
fn criterion_05_vanishing_battery() {
    criterion(5, "vanishing battery", Duration::from_secs(600), || {
        let config = BatteryConfig::default();
        let r = vanishing_battery(&config);
        let skipped: Vec<&str> = r.rows.iter().filter(|row| row.skipped).map(|row| row.group.as_str()).collect();
        if !r.passed() {
            return Err(format!(
                "{} exceptions, {} same-prime violations, first: {:?}",
                r.exceptions.len(),
                r.same_prime_violations.len(),
                r.exceptions.first().or(r.same_prime_violations.first())
            ));
        }
        // Excluded coefficient groups are (Z/2)^k. A fixed-point-free action of a
        // nilpotent G = P × Q (P the 2-part) on an F2-space needs A^Q = 0, since
        // otherwise the 2-group P has fixed points on A^Q. By Maschke, A is then
        // a sum of nontrivial irreducible F2[Q]-modules.
        let mut certificates = Vec::new();
        for e in &config.excluded {
            let dim = e.len();
            assert!(e.iter().all(|&f| f == 2));
            for g in small_groups().into_iter().filter(|g| g.group.order() <= config.max_group_order && g.group.is_nilpotent()) {
                let mut q_order = g.group.order();
                while q_order % 2 == 0 {
                    q_order /= 2;
                }
                if q_order == 1 {
                    continue; // 2-group on a 2-group: always fixed points
                }
                let q = small_groups().into_iter().find(|c| {
                    c.group.order() == q_order
                        && c.group.is_abelian()
                        && sylow_odd_part_matches(&g.group, &c.group)
                });
                let q = q.ok_or(format!("no odd part found for {}", g.name))?;
                let exp = q.group.exponent() as u64;
                let dims: BTreeSet<u64> = (2..=exp).filter(|d| exp % d == 0).map(ord2).collect();
                // cross-check against the composition factors of the regular module
                let reg = regular_module_over_f2(&q.group);
                let series = composition_series(&reg);
                let found: BTreeSet<u64> = series
                    .chain
                    .windows(2)
                    .map(|w| {
                        let o = w[1].order() / w[0].order();
                        o.bits() - 1
                    })
                    .filter(|&d| d > 1)
                    .collect();
                if found != dims {
                    return Err(format!("{}: irreducible dims {found:?} vs {dims:?}", q.name));
                }
                if subset_sum(&dims.iter().copied().collect::<Vec<_>>(), dim as u64) {
                    return Err(format!("{} may act on (Z/2)^{dim} without fixed points", g.name));
                }
                certificates.push(g.name.clone());
            }
        }
        Ok(format!(
            "{} action classes, {} with A^G = 0, 0 exceptions; {} same-prime pairs skipped (always fixed points); \
             excluded {:?} has no fixed-point-free action of the {} nilpotent groups with an odd part",
            r.action_classes,
            r.fixed_point_free,
            skipped.len(),
            config.excluded,
            certificates.len()
        ))
    });
}

/// Whether `q` is isomorphic to the odd-order Hall subgroup of nilpotent `g`.
fn sylow_odd_part_matches(g: &FiniteGroup, q: &FiniteGroup) -> bool {
    let odd: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) % 2 == 1).collect();
    if odd.len() != q.order() {
        return false;
    }
    let mut go: Vec<usize> = odd.iter().map(|&x| g.element_order(x)).collect();
    let mut qo: Vec<usize> = (0..q.order()).map(|x| q.element_order(x)).collect();
    go.sort();
    qo.sort();
    go == qo
}

/// Whether `target` is a sum of elements of `parts`, with repetition.
fn subset_sum(parts: &[u64], target: u64) -> bool {
    let mut reach = vec![false; target as usize + 1];
    reach[0] = true;
    for s in 1..=target as usize {
        reach[s] = parts.iter().any(|&d| d as usize <= s && reach[s - d as usize]);
    }
    reach[target as usize]
}

#[test]
fn criterion_06_inflation_restriction() {
    criterion(6, "inflation-restriction", Duration::from_secs(300), || {
        let mut failures = Vec::new();
        let (mut pairs, mut qualifying) = (0, 0);
        for (name, m) in catalog_modules() {
            let g = m.group();
            for h in enumerate_subgroups(g).map_err(|e| e.to_string())? {
                if !h.is_normal(g) {
                    continue;
                }
                pairs += 1;
                let r = check_inf_res_exact(m, &h).map_err(|e| e.to_string())?;
                if !r.all_exact() {
                    failures.push(format!("{name}, H = {:?}: {:?}", h.elements(), r.nodes));
                }
                if let Some(f) = faithful_reduction_check(m, &h).map_err(|e| e.to_string())? {
                    if h.order() > 1 {
                        qualifying += 1;
                    }
                    if !(f.inflation_is_iso && f.fixed_is_zero) {
                        failures.push(format!("{name}, H = {:?}: {f:?}", h.elements()));
                    }
                }
            }
        }
        check(&failures)?;
        if pairs < 30 || qualifying == 0 {
            return Err(format!("{pairs} pairs, {qualifying} qualifying"));
        }
        Ok(format!("{pairs} (M, H) pairs exact; isomorphism and H1(H,A)^(G/H) = 0 on {qualifying} qualifying configurations"))
    });
}

/// An equivariant section of `surj`, by exhaustive search.
fn splits(s: &ShortExactSequence) -> bool {
    let (b, c) = (s.middle.coeffs(), s.right.coeffs());
    let belems: Vec<Vec<i64>> = b.elements().collect();
    let fibres: Vec<Vec<Vec<i64>>> = (0..c.rank())
        .map(|j| {
            let mut e = c.zero();
            e[j] = 1;
            belems
                .iter()
                .filter(|x| s.surj.apply(x) == e && b.scale(c.factors()[j], x) == b.zero())
                .cloned()
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; c.rank()];
    if fibres.iter().any(Vec::is_empty) {
        return false;
    }
    loop {
        let images: Vec<Vec<i64>> = (0..c.rank()).map(|j| fibres[j][choice[j]].clone()).collect();
        let sect = |x: &[i64]| -> Vec<i64> {
            x.iter().zip(&images).fold(b.zero(), |acc, (&k, v)| b.add(&acc, &b.scale(k, v)))
        };
        let equivariant = s.middle.group().generators().iter().all(|&g| {
            (0..c.rank()).all(|j| {
                let mut e = c.zero();
                e[j] = 1;
                sect(&s.right.act(g, &e)) == s.middle.act(g, &images[j])
            })
        });
        if equivariant {
            return true;
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < fibres[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return false;
        }
    }
}

fn submodule_sequences(m: &GModule) -> Vec<ShortExactSequence> {
    let Ok(lattice) = submodule_lattice(m, 4096) else {
        return Vec::new();
    };
    lattice
        .iter()
        .filter(|n| !n.is_zero() && n.order() != m.whole_submodule().order())
        .map(|n| {
            let DerivedModule::Sub { module: left, embedding } = sub_module_on(m, n).unwrap() else {
                unreachable!()
            };
            let DerivedModule::Quotient { module: right, quotient } = quotient_module(m, n).unwrap() else {
                unreachable!()
            };
            ShortExactSequence::new(left, m.clone(), right, embedding, quotient.projection.clone()).unwrap()
        })
        .collect()
}

#[test]
fn criterion_07_long_exact_sequence() {
    criterion(7, "long exact sequence", Duration::from_secs(300), || {
        let limits = Limits::default();
        let mut sequences: Vec<(String, ShortExactSequence)> = Vec::new();
        for (name, m) in small_modules() {
            for (i, s) in submodule_sequences(m).into_iter().enumerate() {
                sequences.push((format!("{name} sub #{i}"), s));
            }
        }
        let mods = small_modules();
        for w in mods.windows(2).take(40) {
            if w[0].1.group() == w[1].1.group() {
                sequences.push((format!("{} + {}", w[0].0, w[1].0), ShortExactSequence::split(&w[0].1, &w[1].1).unwrap()));
            }
        }
        let mut failures = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut non_split, mut delta_nonzero) = (0, 0);
        for (name, s) in &sequences {
            let r = check_long_exact(s, 1, &limits).map_err(|e| e.to_string())?;
            if !r.all_exact() {
                failures.push(format!("{name}: {:?}", r.nodes));
            }
            if !splits(s) {
                non_split += 1;
            }
            let delta = connecting_map(s).map_err(|e| e.to_string())?;
            if !delta.is_zero() {
                delta_nonzero += 1;
            }
            let c = s.right.coeffs();
            let belems: Vec<Vec<i64>> = s.middle.coeffs().elements().collect();
            for _ in 0..5 {
                let table: HashMap<Vec<i64>, Vec<i64>> = c
                    .elements()
                    .map(|x| {
                        let fibre: Vec<&Vec<i64>> = belems.iter().filter(|b| s.surj.apply(b) == x).collect();
                        (x, fibre[rng.gen_range(0..fibre.len())].clone())
                    })
                    .collect();
                let section = |x: &[i64]| table[&c.reduce(x)].clone();
                let other = connecting_map_with_section(s, &section).map_err(|e| e.to_string())?;
                if other != delta {
                    failures.push(format!("{name}: connecting map depends on the section"));
                }
            }
        }
        check(&failures)?;
        if sequences.len() < 10 || non_split == 0 {
            return Err(format!("{} sequences, {non_split} non-split", sequences.len()));
        }
        Ok(format!(
            "{} sequences ({non_split} non-split, {delta_nonzero} with nonzero connecting map), 5 random sections each",
            sequences.len()
        ))
    });
}

#[test]
fn criterion_08_conjugation_acts_trivially() {
    criterion(8, "(x·f) − f inner", Duration::from_secs(300), || {
        let mut failures = Vec::new();
        let (mut modules, mut checks) = (0, 0);
        for (name, m) in catalog_modules() {
            let t = Tables::new(m);
            let h = h1_der(m);
            let k = m.coeffs().rank();
            // |Der| = |H1|·|IDer| with |IDer| = |A|/|A^G| by counting
            let fixed = (0..t.elems.len()).filter(|&a| (0..t.n).all(|g| t.act[g][a] == a)).count();
            let ider = (t.elems.len() / fixed) as u64;
            let h1 = cohomology_group(m, 1).map_err(|e| e.to_string())?.group.order_u64().unwrap();
            let der = h.der.group.order_u64().unwrap();
            if der != h1 * ider {
                failures.push(format!("{name}: |Der| = {der}, |H1|·|IDer| = {}", h1 * ider));
                continue;
            }
            let inner: HashSet<Vec<usize>> = (0..t.elems.len())
                .map(|a| (0..t.n).map(|y| t.sub(t.act[y][a], a)).collect())
                .collect();
            modules += 1;
            for c in h.der.group.elements() {
                let u = h.der.embedding.apply(&c);
                let cochain = h.expand(&u);
                let f: Vec<usize> = (0..t.n).map(|x| t.idx(cochain.value(x, k))).collect();
                if !is_derivation(&t, &f) {
                    failures.push(format!("{name}: {f:?} is not a derivation"));
                    continue;
                }
                for x in 0..t.n {
                    // (x·f)(y) = x·f(x⁻¹yx)
                    let g: Vec<usize> = (0..t.n)
                        .map(|y| t.sub(t.act[x][f[t.mul[t.mul[t.inv[x]][y]][x]]], f[y]))
                        .collect();
                    checks += 1;
                    if !inner.contains(&g) {
                        failures.push(format!("{name}: x = {x}, f = {f:?}"));
                    }
                }
            }
        }
        check(&failures)?;
        Ok(format!("{checks} (f, x) pairs over {modules} modules with |G| ≤ 8"))
    });
}

#[test]
fn criterion_09_composition_factors() {
    criterion(9, "composition factors", Duration::from_secs(300), || {
        let limits = Limits::default();
        let mut failures = Vec::new();
        let (mut qualifying, mut pairs, mut reducible) = (0, 0, 0);
        for (name, m) in catalog_modules() {
            if !m.group().is_nilpotent() || !invariants(m).is_zero() {
                continue;
            }
            qualifying += 1;
            let r = verify_composition_factors(m, &limits).map_err(|e| e.to_string())?;
            if r.conclusion_holds != Some(true) {
                failures.push(format!("{name}: verifier says {:?}", r.conclusion_holds));
            }
            let t = Tables::new(m);
            let subs = t.invariant_subgroups();
            if subs.len() > 2 {
                reducible += 1;
            }
            if r.data["submodules"].as_u64() != Some(subs.len() as u64) {
                failures.push(format!("{name}: lattice size {} vs brute force {}", r.data["submodules"], subs.len()));
            }
            for u in &subs {
                for v in &subs {
                    if v == u || !v.is_subset(u) {
                        continue;
                    }
                    pairs += 1;
                    let fixed = u.iter().any(|&x| {
                        !v.contains(&x) && t.gens.iter().all(|&g| v.contains(&t.sub(t.act[g][x], x)))
                    });
                    if fixed {
                        failures.push(format!("{name}: a section of orders {}/{} has fixed points", u.len(), v.len()));
                    }
                }
            }
        }
        check(&failures)?;
        if qualifying < 10 {
            return Err(format!("only {qualifying} qualifying modules"));
        }
        Ok(format!("{qualifying} modules ({reducible} reducible), {pairs} sections V < U"))
    });
}

#[test]
fn criterion_10_schur() {
    criterion(10, "Schur and explicit coboundaries", Duration::from_secs(300), || {
        let limits = Limits::default();
        let mut failures = Vec::new();
        let (mut irreducible, mut abelian_cases, mut derivations) = (0, 0, 0);
        for (name, m) in catalog_modules() {
            let t = Tables::new(m);
            if t.invariant_subgroups().len() != 2 {
                continue;
            }
            irreducible += 1;
            let r = schur_check(m, &limits).map_err(|e| e.to_string())?;
            if r.conclusion_holds != Some(true) {
                failures.push(format!("{name}: {:?}", r.data));
            }
            // brute-force centralizer: all k×k matrices over F_p commuting with ρ
            let p = t.p;
            let k = m.coeffs().rank();
            let act_m: Vec<Vec<Vec<i64>>> = t.gens.iter().map(|&g| m.action(g).matrix().to_vec()).collect();
            let mut cent: Vec<Vec<Vec<i64>>> = Vec::new();
            let total = (p as usize).pow((k * k) as u32);
            for code in 0..total {
                let mut c = code;
                let mtx: Vec<Vec<i64>> = (0..k)
                    .map(|_| {
                        (0..k)
                            .map(|_| {
                                let v = (c % p as usize) as i64;
                                c /= p as usize;
                                v
                            })
                            .collect()
                    })
                    .collect();
                if act_m.iter().all(|a| fp::mat_mul(a, &mtx, p) == fp::mat_mul(&mtx, a, p)) {
                    cent.push(mtx);
                }
            }
            let commutative = cent.iter().all(|a| cent.iter().all(|b| fp::mat_mul(a, b, p) == fp::mat_mul(b, a, p)));
            let division = cent.iter().all(|a| a.iter().flatten().all(|&x| x == 0) || fp::rank(a, p) == k);
            if !(commutative && division) || r.data["centralizer_order"].as_u64() != Some(cent.len() as u64) {
                failures.push(format!("{name}: centralizer of order {} (field: {})", cent.len(), commutative && division));
            }
            if m.group().is_abelian() && !m.is_trivial_action() {
                abelian_cases += 1;
                let h = h1_der(m);
                for c in h.der.group.elements() {
                    let cochain = h.expand(&h.der.embedding.apply(&c));
                    let f: Vec<usize> = (0..t.n).map(|x| t.idx(cochain.value(x, k))).collect();
                    assert!(is_derivation(&t, &f));
                    derivations += 1;
                    let Some(y) = (0..t.n).find(|&y| f[y] != t.zero()) else {
                        continue;
                    };
                    // a = (ρ(y) − Id)⁻¹ f(y), found by search since ρ(y) − Id is invertible
                    let sols: Vec<usize> = (0..t.elems.len()).filter(|&a| t.sub(t.act[y][a], a) == f[y]).collect();
                    if sols.len() != 1 {
                        failures.push(format!("{name}: ρ({y}) − Id is not invertible"));
                        continue;
                    }
                    let a = sols[0];
                    if (0..t.n).any(|x| f[x] != t.sub(t.act[x][a], a)) {
                        failures.push(format!("{name}: f ≠ x ↦ x·a − a"));
                    }
                }
            }
        }
        check(&failures)?;
        Ok(format!(
            "{irreducible} irreducible modules; explicit coboundary on {derivations} derivations over {abelian_cases} abelian instances"
        ))
    });
}

#[test]
fn criterion_11_frattini() {
    criterion(11, "Frattini argument", Duration::from_secs(300), || {
        let limits = Limits::default();
        let mut failures = Vec::new();
        let (mut triples, mut groups, mut quotient_flag_false) = (0, 0, 0);
        for cg in all_groups().into_iter().filter(|g| g.group.order() <= 48) {
            let g = &cg.group;
            groups += 1;
            let reports = frattini_instances(g, &limits).map_err(|e| format!("{}: {e}", cg.name))?;
            for r in &reports {
                if r.conclusion_holds != Some(true) {
                    failures.push(format!("{}: {:?}", cg.name, r.data));
                }
                if r.hypothesis_holds("N_G(C) normal with G/N_G(C) abelian") != Some(true) {
                    quotient_flag_false += 1;
                }
            }
            // independent recount
            let subs = enumerate_subgroups(g).map_err(|e| e.to_string())?;
            let normal = |h: &Subgroup| (0..g.order()).all(|x| h.elements().iter().all(|&y| h.contains(g.mul(g.mul(x, y), g.inv(x)))));
            let normalizer = |c: &Subgroup, within: &[usize]| -> Vec<usize> {
                within
                    .iter()
                    .copied()
                    .filter(|&x| c.elements().iter().all(|&y| c.contains(g.mul(g.mul(x, y), g.inv(x)))))
                    .collect()
            };
            let all: Vec<usize> = (0..g.order()).collect();
            let mut count = 0;
            for h in subs.iter().filter(|h| normal(h) && h.to_group(g).is_solvable()) {
                for c in subs.iter().filter(|c| c.is_subgroup_of(h) && c.is_nilpotent(g)) {
                    if normalizer(c, h.elements()).len() != c.order() {
                        continue;
                    }
                    count += 1;
                    let n = normalizer(c, &all);
                    let product: HashSet<usize> = h
                        .elements()
                        .iter()
                        .flat_map(|&x| n.iter().map(move |&y| g.mul(x, y)))
                        .collect();
                    if product.len() != g.order() {
                        failures.push(format!("{}: |HN| = {}", cg.name, product.len()));
                    }
                }
            }
            if count != reports.len() {
                failures.push(format!("{}: {} triples vs {} from the verifier", cg.name, count, reports.len()));
            }
            triples += count;
        }
        check(&failures)?;
        Ok(format!(
            "{triples} triples over {groups} groups of order ≤ 48; G/N_G(C) abelian flag false on {quotient_flag_false}"
        ))
    });
}

#[test]
fn criterion_12_maschke() {
    criterion(12, "Maschke decomposition", Duration::from_secs(300), || {
        let mut modules: Vec<(String, GModule)> = catalog_modules().to_vec();
        let f5sq = FiniteAbelianGroup::from_cyclic(vec![5, 5]).unwrap();
        for g in small_groups().into_iter().filter(|g| g.group.order() <= 8 && g.group.is_abelian()) {
            for (i, m) in action_modules(&g.group, &f5sq).into_iter().enumerate() {
                modules.push((format!("{} on Z/5 + Z/5 #{i}", g.name), m));
            }
        }
        let mut failures = Vec::new();
        let mut per_prime: HashMap<i64, usize> = HashMap::new();
        for (name, m) in &modules {
            let Ok(d) = maschke_decompose(m) else {
                continue;
            };
            let t = Tables::new(m);
            *per_prime.entry(t.p).or_default() += 1;
            if !d.certified {
                failures.push(format!("{name}: not certified"));
            }
            let sets: Vec<HashSet<usize>> = d
                .summands
                .iter()
                .map(|s| s.elements().iter().map(|v| t.idx(v)).collect())
                .collect();
            // direct sum: orders multiply to |A| and the sums cover A
            let product: usize = sets.iter().map(HashSet::len).product();
            let mut sums: HashSet<usize> = HashSet::from([t.zero()]);
            for s in &sets {
                sums = sums.iter().flat_map(|&x| s.iter().map(move |&y| (x, y))).map(|(x, y)| t.add[x][y]).collect();
            }
            if product != t.elems.len() || sums.len() != t.elems.len() {
                failures.push(format!("{name}: not a direct sum"));
            }
            for s in &sets {
                if !s.iter().all(|&x| t.gens.iter().all(|&g| s.contains(&t.act[g][x]))) {
                    failures.push(format!("{name}: summand not invariant"));
                }
                // irreducible: every nonzero element spins to the summand
                for &x in s.iter().filter(|&&x| x != t.zero()) {
                    let mut span: HashSet<usize> = HashSet::from([t.zero()]);
                    let mut todo = vec![x];
                    while let Some(y) = todo.pop() {
                        if span.contains(&y) {
                            continue;
                        }
                        let cur: Vec<usize> = span.iter().copied().collect();
                        span.insert(y);
                        todo.extend(cur.into_iter().map(|z| t.add[y][z]));
                        todo.push(t.add[y][y]);
                        todo.extend(t.gens.iter().map(|&g| t.act[g][y]));
                    }
                    if span.len() != s.len() {
                        failures.push(format!("{name}: summand of order {} is reducible", s.len()));
                        break;
                    }
                }
            }
        }
        check(&failures)?;
        let total: usize = per_prime.values().sum();
        let primes: BTreeSet<i64> = per_prime.keys().copied().collect();
        if total < 10 || !(primes.contains(&2) && primes.contains(&3) && primes.contains(&5)) {
            return Err(format!("{total} qualifying modules over primes {primes:?}"));
        }
        let mut counts: Vec<(i64, usize)> = per_prime.into_iter().collect();
        counts.sort();
        Ok(format!("{total} certified decompositions, per prime {counts:?}"))
    });
}

// ---------------------------------------------------------------------------
// Lie rings

fn lie_quotient(m: &LieModule, w: &[Vec<i64>]) -> LieShortExactSequence {
    let p = m.p();
    let (sub, basis) = m.submodule(&w.to_vec()).unwrap();
    let b = m.dim();
    let a = basis.len();
    let (_, pivots) = fp::rref(&basis, p);
    let free: Vec<usize> = (0..b).filter(|j| !pivots.contains(j)).collect();
    // reduce modulo W on the pivot coordinates, then read the free ones
    let project = |v: &[i64]| -> Vec<i64> {
        let mut v = v.to_vec();
        for (row, &pc) in basis.iter().zip(&pivots) {
            let c = v[pc];
            if c != 0 {
                for j in 0..b {
                    v[j] = (v[j] - c * row[j]).rem_euclid(p);
                }
            }
        }
        free.iter().map(|&j| v[j]).collect()
    };
    let mut surj = vec![vec![0; b]; free.len()];
    for l in 0..b {
        let mut e = vec![0; b];
        e[l] = 1;
        for (r, x) in project(&e).into_iter().enumerate() {
            surj[r][l] = x;
        }
    }
    let action: Vec<Vec<Vec<i64>>> = m
        .actions()
        .iter()
        .map(|rho| {
            let mut q = vec![vec![0; free.len()]; free.len()];
            for (c, &j) in free.iter().enumerate() {
                let mut e = vec![0; b];
                e[j] = 1;
                for (r, x) in project(&fp::mat_vec(rho, &e, p)).into_iter().enumerate() {
                    q[r][c] = x;
                }
            }
            q
        })
        .collect();
    let right = cohomoforge::liering::validate_lie_module(m.ring(), free.len(), action).unwrap();
    let mut inj = vec![vec![0; a]; b];
    for (c, row) in basis.iter().enumerate() {
        for r in 0..b {
            inj[r][c] = row[r];
        }
    }
    LieShortExactSequence::new(sub, m.clone(), right, inj, surj).unwrap()
}

/// Number of linear derivations minus inner ones, by enumerating all maps.
fn brute_lie_h1_dim(m: &LieModule) -> Option<usize> {
    let p = m.p();
    let d = m.ring().dim();
    let k = m.dim();
    let total = (p as u64).checked_pow((d * k) as u32)?;
    if total > 200_000 {
        return None;
    }
    let mut der = 0u64;
    for code in 0..total {
        let mut c = code;
        let f: Vec<Vec<i64>> = (0..d)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let v = (c % p as u64) as i64;
                        c /= p as u64;
                        v
                    })
                    .collect()
            })
            .collect();
        let lin = |x: &[i64]| -> Vec<i64> {
            (0..k).map(|r| (0..d).map(|j| x[j] * f[j][r]).sum::<i64>().rem_euclid(p)).collect()
        };
        let ok = (0..d).all(|i| {
            (0..d).all(|j| {
                let lhs = lin(m.ring().basis_bracket(i, j));
                let xi = fp::mat_vec(m.action(i), &f[j], p);
                let yj = fp::mat_vec(m.action(j), &f[i], p);
                lhs == (0..k).map(|r| (xi[r] - yj[r]).rem_euclid(p)).collect::<Vec<_>>()
            })
        });
        if ok {
            der += 1;
        }
    }
    let mut inner: HashSet<Vec<Vec<i64>>> = HashSet::new();
    for code in 0..(p as u64).pow(k as u32) {
        let mut c = code;
        let a: Vec<i64> = (0..k)
            .map(|_| {
                let v = (c % p as u64) as i64;
                c /= p as u64;
                v
            })
            .collect();
        inner.insert((0..d).map(|i| fp::mat_vec(m.action(i), &a, p)).collect());
    }
    let mut q = der / inner.len() as u64;
    let mut dim = 0;
    while q > 1 {
        q /= p as u64;
        dim += 1;
    }
    Some(dim)
}

#[test]
fn criterion_13_lie_mirror() {
    criterion(13, "Lie mirror", Duration::from_secs(300), || {
        let limits = Limits::default();
        let mut failures = Vec::new();
        let modules = lie_module_catalog();
        let (mut oracle_checked, mut infres, mut faithful, mut seqs, mut vanishing, mut comp) = (0, 0, 0, 0, 0, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (name, m) in &modules {
            let p = m.p();
            let d = m.ring().dim();
            for n in 0..=d {
                if !check_ce_dd_zero(m, n) {
                    failures.push(format!("{name}: d∘d ≠ 0 at {n}"));
                }
            }
            let ce = ce_cohomology(m, 1).map_err(|e| e.to_string())?;
            let der = lie_h1_der(m);
            if ce.dim != der.dim {
                failures.push(format!("{name}: CE {} vs Der/IDer {}", ce.dim, der.dim));
            }
            if let Some(o) = brute_lie_h1_dim(m) {
                oracle_checked += 1;
                if o != ce.dim {
                    failures.push(format!("{name}: brute force H1 dim {o} vs {}", ce.dim));
                }
            }
            for h in all_subspaces(d, p, limits.lattice_cap).map_err(|e| e.to_string())? {
                if !m.ring().is_ideal(&h) {
                    continue;
                }
                infres += 1;
                let r = check_lie_inf_res(m, &h).map_err(|e| e.to_string())?;
                if !r.report.all_exact() {
                    failures.push(format!("{name}, h = {h:?}: {:?}", r.report.nodes));
                }
                if let Some(f) = &r.faithful {
                    faithful += 1;
                    if !(f.inflation_is_iso && f.fixed_is_zero) {
                        failures.push(format!("{name}, h = {h:?}: {f:?}"));
                    }
                }
            }
            let v = verify_lie_vanishing(m);
            if v.conclusion_holds == Some(false) {
                failures.push(format!("{name}: vanishing fails"));
            }
            if v.conclusion_holds == Some(true) {
                vanishing += 1;
            }
            let c = verify_lie_composition_factors(m, limits.lattice_cap).map_err(|e| e.to_string())?;
            if c.conclusion_holds == Some(false) {
                failures.push(format!("{name}: composition factors fail"));
            }
            if c.conclusion_holds == Some(true) {
                comp += 1;
            }
            // six-term sequences: every proper submodule, plus A ⊕ A
            let mut sequences = vec![LieShortExactSequence::split(m, m).unwrap()];
            for w in submodule_lattice_lie(m, limits.lattice_cap).map_err(|e| e.to_string())? {
                if !w.is_empty() && w.len() < m.dim() {
                    sequences.push(lie_quotient(m, &w));
                }
            }
            for s in &sequences {
                seqs += 1;
                let r = check_six_term(s);
                if !r.all_exact() {
                    failures.push(format!("{name}: six-term {:?}", r.nodes));
                }
                // δ modulo coboundaries does not depend on the section
                let base = s.default_section();
                let delta = lie_connecting_map_with_section(s, &base).unwrap();
                let b1 = ce_cohomology(&s.left, 1).unwrap().coboundaries;
                let (a, c) = (s.left.dim(), s.right.dim());
                for _ in 0..5 {
                    let tmat: Vec<Vec<i64>> = (0..a).map(|_| (0..c).map(|_| rng.gen_range(0..p)).collect()).collect();
                    let sect = if a == 0 { base.clone() } else { fp::mat_add(&base, &fp::mat_mul(&s.inj, &tmat, p), p) };
                    let other = lie_connecting_map_with_section(s, &sect).unwrap();
                    for z in s.right.invariants() {
                        let diff: Vec<i64> = fp::mat_vec(&other, &z, p)
                            .iter()
                            .zip(fp::mat_vec(&delta, &z, p))
                            .map(|(x, y)| (x - y).rem_euclid(p))
                            .collect();
                        if !fp::in_span(&b1, &diff, p) {
                            failures.push(format!("{name}: connecting map depends on the section"));
                        }
                    }
                }
            }
        }
        let mut frattini = 0;
        for (name, ring) in lie_catalog().into_iter().filter(|(_, r)| r.dim() <= 4) {
            let p = ring.p();
            let d = ring.dim();
            if verify_lie_frattini(&ring, limits.lattice_cap).map_err(|e| e.to_string())?.conclusion_holds != Some(true) {
                failures.push(format!("{name}: Frattini sum fails"));
            }
            // recompute N(c) by brute force and check i + N(c) covers the ring
            let vectors: Vec<Vec<i64>> = (0..(p as usize).pow(d as u32))
                .map(|code| {
                    let mut c = code;
                    (0..d)
                        .map(|_| {
                            let v = (c % p as usize) as i64;
                            c /= p as usize;
                            v
                        })
                        .collect()
                })
                .collect();
            for inst in lie_frattini_instances(&ring, limits.lattice_cap).map_err(|e| e.to_string())? {
                frattini += 1;
                let normalizer: Vec<&Vec<i64>> = vectors
                    .iter()
                    .filter(|x| inst.cartan.iter().all(|c| fp::in_span(&inst.cartan, &ring.bracket(x, c), p)))
                    .collect();
                let ideal: Vec<&Vec<i64>> = vectors.iter().filter(|x| fp::in_span(&inst.ideal, x, p)).collect();
                let sums: HashSet<Vec<i64>> = ideal
                    .iter()
                    .flat_map(|i| normalizer.iter().map(move |n| i.iter().zip(n.iter()).map(|(a, b)| (a + b).rem_euclid(p)).collect::<Vec<i64>>()))
                    .collect();
                if sums.len() != vectors.len() {
                    failures.push(format!("{name}: i + N(c) has {} elements", sums.len()));
                }
            }
        }
        check(&failures)?;
        Ok(format!(
            "{} Lie modules (brute-force H1 on {oracle_checked}); {infres} ideals for inf-res ({faithful} faithful); \
             {seqs} six-term sequences; vanishing on {vanishing}, composition factors on {comp}; {frattini} Frattini instances",
            modules.len()
        ))
    });
}

/// Minimal polynomial of a 2×2 matrix over `F_p` by search, low degree first.
fn minimal_polynomial(m: &[Vec<i64>], p: i64) -> Vec<i64> {
    let eval = |coeffs: &[i64]| -> bool {
        // coeffs[i] is the coefficient of x^i
        let mut acc = vec![vec![0; 2]; 2];
        let mut pw = fp::identity(2);
        for &c in coeffs {
            acc = fp::mat_add(&acc, &fp::mat_scale(c, &pw, p), p);
            pw = fp::mat_mul(&pw, &m.to_vec(), p);
        }
        acc.iter().flatten().all(|&x| x == 0)
    };
    for deg in 1..=2 {
        let mut lower = vec![0i64; deg];
        loop {
            let mut coeffs = lower.clone();
            coeffs.push(1);
            if eval(&coeffs) {
                return coeffs;
            }
            let mut i = 0;
            while i < deg {
                lower[i] += 1;
                if lower[i] < p {
                    break;
                }
                lower[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
        }
    }
    unreachable!("Cayley-Hamilton")
}

fn poly_trim(mut f: Vec<i64>) -> Vec<i64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_gcd(a: Vec<i64>, b: Vec<i64>, p: i64) -> Vec<i64> {
    let (mut a, mut b) = (poly_trim(a), poly_trim(b));
    while !b.is_empty() {
        let lead = fp::inv(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * lead % p;
            for (i, &x) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] - c * x).rem_euclid(p);
            }
            a = poly_trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn squarefree(f: &[i64], p: i64) -> bool {
    let deriv: Vec<i64> = f.iter().enumerate().skip(1).map(|(i, &c)| (i as i64 * c).rem_euclid(p)).collect();
    poly_gcd(f.to_vec(), deriv, p).len() == 1
}

#[test]
fn criterion_14_restricted_structures() {
    criterion(14, "restricted structures", Duration::from_secs(120), || {
        let mut failures = Vec::new();
        let mut elements = 0;
        for p in [2i64, 3] {
            let ring = gl(2, p);
            let power = matrix_power_map(2, p);
            if let Err(e) = validate_restricted_map(&ring, &power) {
                failures.push(format!("gl2(F{p}): {e}"));
                continue;
            }
            let r = gl_restricted(2, p);
            if let Err(e) = validate_restricted(&ring, r.images().clone()) {
                failures.push(format!("gl2(F{p}) basis images: {e}"));
            }
            for code in 0..p.pow(4) {
                let mut c = code;
                let v: Vec<i64> = (0..4)
                    .map(|_| {
                        let x = c % p;
                        c /= p;
                        x
                    })
                    .collect();
                elements += 1;
                if r.pmap(&v) != power(&v) {
                    failures.push(format!("gl2(F{p}): pmap differs from the p-th power at {v:?}"));
                }
                let mtx = vec![vec![v[0], v[1]], vec![v[2], v[3]]];
                let oracle = squarefree(&minimal_polynomial(&mtx, p), p);
                let cert = is_semisimple_element(&r, &v);
                if cert.semisimple != oracle {
                    failures.push(format!("gl2(F{p}): {v:?} engine {} vs minimal polynomial {oracle}", cert.semisimple));
                }
            }
        }
        check(&failures)?;
        Ok(format!("axioms 1–3 on gl2(F2), gl2(F3); semisimplicity matches on all {elements} matrices"))
    });
}
