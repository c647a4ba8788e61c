//! Subquotients `L₁/L₂` of a finite abelian group, presented in invariant-factor form.

use super::lattice::{ext_gcd, gcd, ModLattice, SplitLattice};
use super::FiniteAbelianGroup;

/// Smith form of a square relation matrix over `ℤ/e`, with the column
/// transform `V` and its inverse.
#[derive(Clone, Debug)]
pub(crate) struct ModSnf {
    /// Diagonal entries in `[1, e]`, forming a divisibility chain.
    pub diag: Vec<i64>,
    pub v: Vec<Vec<i64>>,
    pub vinv: Vec<Vec<i64>>,
}

fn unit_normalizer(x: i64, e: i64) -> i64 {
    // u with x·u ≡ gcd(x, e) (mod e) and gcd(u, e) = 1
    let g = gcd(x, e);
    let m = e / g;
    if m == 1 {
        return 1;
    }
    let (_, s, _) = ext_gcd((x / g).rem_euclid(m), m);
    let mut u = s.rem_euclid(m);
    while gcd(u, e) != 1 {
        u += m;
    }
    u
}

/// Diagonalizes the relation lattice spanned by the rows of `a` together with
/// `e·ℤ^n`. Row operations and unit row scalings leave the lattice unchanged;
/// column operations are recorded in `v`/`vinv`.
pub(crate) fn mod_snf(mut a: Vec<Vec<i64>>, e: i64) -> ModSnf {
    let n = a.len();
    for r in a.iter_mut() {
        debug_assert_eq!(r.len(), n);
        for x in r.iter_mut() {
            *x = x.rem_euclid(e);
        }
    }
    let ident = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut v = ident(n);
    let mut vinv = ident(n);
    let mut diag = vec![e; n];
    let red = |x: i64| x.rem_euclid(e);

    'outer: for t in 0..n {
        loop {
            // pivot with the smallest gcd against e
            let mut best: Option<(i64, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x == 0 {
                        continue;
                    }
                    let g = gcd(x, e);
                    if best.map_or(true, |(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                        if g == 1 {
                            break;
                        }
                    }
                }
                if matches!(best, Some((1, _, _))) {
                    break;
                }
            }
            let Some((_, pi, pj)) = best else {
                break 'outer;
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let u = unit_normalizer(a[t][t], e);
            for x in a[t].iter_mut() {
                *x = red(*x * u);
            }
            // clear column t
            for i in (t + 1)..n {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let g = a[t][t];
                if x % g == 0 {
                    let q = x / g;
                    for k in t..n {
                        a[i][k] = red(a[i][k] - q * a[t][k]);
                    }
                } else {
                    let (g2, s, tt) = ext_gcd(g, x);
                    let (gq, xq) = (g / g2, x / g2);
                    for k in t..n {
                        let (rt, ri) = (a[t][k], a[i][k]);
                        a[t][k] = red(s * rt + tt * ri);
                        a[i][k] = red(gq * ri - xq * rt);
                    }
                }
            }
            // clear row t
            let mut disturbed = false;
            for j in (t + 1)..n {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let g = a[t][t];
                if x % g == 0 {
                    let q = x / g;
                    for row in a.iter_mut() {
                        row[j] = red(row[j] - q * row[t]);
                    }
                    for row in v.iter_mut() {
                        row[j] = red(row[j] - q * row[t]);
                    }
                    for k in 0..n {
                        vinv[t][k] = red(vinv[t][k] + q * vinv[j][k]);
                    }
                } else {
                    let (g2, s, tt) = ext_gcd(g, x);
                    let (gq, xq) = (g / g2, x / g2);
                    for row in a.iter_mut().chain(v.iter_mut()) {
                        let (ct, cj) = (row[t], row[j]);
                        row[t] = red(s * ct + tt * cj);
                        row[j] = red(gq * cj - xq * ct);
                    }
                    for k in 0..n {
                        let (rt, rj) = (vinv[t][k], vinv[j][k]);
                        vinv[t][k] = red(gq * rt + xq * rj);
                        vinv[j][k] = red(-tt * rt + s * rj);
                    }
                    disturbed = true;
                }
            }
            if disturbed {
                continue;
            }
            let g = a[t][t];
            let mut offender = None;
            'scan: for i in (t + 1)..n {
                for j in (t + 1)..n {
                    if a[i][j] % g != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for k in t..n {
                        a[t][k] = red(a[t][k] + a[i][k]);
                    }
                }
                None => {
                    diag[t] = gcd(g, e);
                    continue 'outer;
                }
            }
        }
    }
    ModSnf { diag, v, vinv }
}

/// The subquotient `numerator / denominator` of `⊕ ℤ/mᵢ`, where both are
/// given as lattices containing the relation lattice `⊕ mᵢℤ`.
///
/// Elements of the numerator are classified into invariant-factor
/// coordinates by [`Subquotient::classify`]; [`Subquotient::generators`]
/// holds one representative per invariant factor.
#[derive(Clone, Debug)]
pub struct Subquotient {
    moduli: Vec<i64>,
    modulus: i64,
    numerator: ModLattice,
    denominator: ModLattice,
    basis_coords: SplitLattice,
    expr: Vec<Vec<i64>>,
    snf: ModSnf,
    kept: Vec<usize>,
    group: FiniteAbelianGroup,
    generators: Vec<Vec<i64>>,
}

impl Subquotient {
    /// `numerator` and `denominator` must share the modulus, and the
    /// denominator must lie in the numerator.
    pub fn new(moduli: &[i64], mut numerator: ModLattice, denominator: ModLattice) -> Self {
        let m = moduli.len();
        let e = numerator.modulus();
        assert_eq!(e, denominator.modulus(), "subquotient lattices disagree on modulus");
        debug_assert!(denominator.is_subset_of(&numerator));
        numerator.canonicalize();

        // Λ = {(Σ cᵢ bᵢ + l, c)} with b the numerator basis and l in the denominator
        let mut graph = ModLattice::multiples(2 * m, e);
        for (i, b) in numerator.rows().iter().enumerate() {
            let mut w = vec![0; 2 * m];
            w[..m].copy_from_slice(b);
            w[m + i] = 1;
            graph.insert(&w);
        }
        for l in denominator.rows() {
            let mut w = vec![0; 2 * m];
            w[..m].copy_from_slice(l);
            graph.insert(&w);
        }
        let basis_coords = SplitLattice::new(m, graph);
        let relations = basis_coords.tail_kernel();

        // eliminate coordinates whose relation row has a unit pivot
        let nonunit: Vec<usize> = (0..m).filter(|&j| relations.pivot(j) != 1).collect();
        let r = nonunit.len();
        let mut slot = vec![usize::MAX; m];
        for (k, &j) in nonunit.iter().enumerate() {
            slot[j] = k;
        }
        let mut expr = vec![vec![0i64; r]; m];
        for j in (0..m).rev() {
            if slot[j] != usize::MAX {
                expr[j][slot[j]] = 1;
                continue;
            }
            let row = relations.row(j);
            let mut acc = vec![0i64; r];
            for k in (j + 1)..m {
                let c = row[k];
                if c == 0 {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(&expr[k]) {
                    *a = (*a - c * x).rem_euclid(e);
                }
            }
            expr[j] = acc;
        }
        let small: Vec<Vec<i64>> = nonunit
            .iter()
            .map(|&j| {
                let row = relations.row(j);
                let mut acc = vec![0i64; r];
                for k in j..m {
                    let c = row[k];
                    if c == 0 {
                        continue;
                    }
                    for (a, x) in acc.iter_mut().zip(&expr[k]) {
                        *a = (*a + c * x).rem_euclid(e);
                    }
                }
                acc
            })
            .collect();
        let snf = mod_snf(small, e);
        let kept: Vec<usize> = (0..r).filter(|&i| snf.diag[i] > 1).collect();
        let factors: Vec<i64> = kept.iter().map(|&i| snf.diag[i]).collect();
        let group = FiniteAbelianGroup::new(factors.clone())
            .expect("modular Smith form yields a divisibility chain");

        let generators = kept
            .iter()
            .map(|&i| {
                let y = &snf.vinv[i];
                let mut x = vec![0i64; m];
                for (k, &j) in nonunit.iter().enumerate() {
                    let c = y[k];
                    if c == 0 {
                        continue;
                    }
                    for (xi, bi) in x.iter_mut().zip(numerator.row(j)) {
                        *xi = (*xi + c * bi).rem_euclid(e);
                    }
                }
                x.iter()
                    .zip(moduli)
                    .map(|(xi, mi)| xi.rem_euclid(*mi))
                    .collect()
            })
            .collect();

        Subquotient {
            moduli: moduli.to_vec(),
            modulus: e,
            numerator,
            denominator,
            basis_coords,
            expr,
            snf,
            kept,
            group,
            generators,
        }
    }

    /// The subquotient as an abstract group (invariant-factor form).
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// One ambient representative per invariant factor.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn numerator(&self) -> &ModLattice {
        &self.numerator
    }

    pub fn denominator(&self) -> &ModLattice {
        &self.denominator
    }

    pub fn ambient_moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn in_numerator(&self, x: &[i64]) -> bool {
        self.numerator.contains(x)
    }

    pub fn in_denominator(&self, x: &[i64]) -> bool {
        self.denominator.contains(x)
    }

    /// Coordinates of the class of `x` in the invariant-factor presentation,
    /// or `None` if `x` is not in the numerator.
    pub fn classify(&self, x: &[i64]) -> Option<Vec<i64>> {
        let c = self.basis_coords.solve(x)?;
        let e = self.modulus;
        let r = self.snf.diag.len();
        let mut y = vec![0i64; r];
        for (cj, ex) in c.iter().zip(&self.expr) {
            if *cj == 0 {
                continue;
            }
            for (yk, xk) in y.iter_mut().zip(ex) {
                *yk = (*yk + cj * xk).rem_euclid(e);
            }
        }
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    let mut z = 0i64;
                    for (k, yk) in y.iter().enumerate() {
                        z = (z + yk * self.snf.v[k][i]).rem_euclid(e);
                    }
                    z.rem_euclid(self.snf.diag[i])
                })
                .collect(),
        )
    }

    /// Ambient element representing the class with the given coordinates.
    pub fn lift(&self, coords: &[i64]) -> Vec<i64> {
        let mut x = vec![0i64; self.moduli.len()];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += c * gi;
            }
        }
        x.iter()
            .zip(&self.moduli)
            .map(|(xi, mi)| xi.rem_euclid(*mi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(moduli: &[i64], gens: &[Vec<i64>]) -> ModLattice {
        let e = moduli.iter().fold(1, |a, &b| super::super::lattice::lcm(a, b));
        let mut l = ModLattice::relations(moduli, e);
        for g in gens {
            l.insert(g);
        }
        l
    }

    #[test]
    fn mod_snf_diagonal() {
        let s = mod_snf(vec![vec![2, 0], vec![0, 3]], 6);
        assert_eq!(s.diag, vec![1, 6]);
        let s = mod_snf(vec![vec![0, 0], vec![0, 0]], 4);
        assert_eq!(s.diag, vec![4, 4]);
    }

    #[test]
    fn z4_mod_2() {
        let num = ModLattice::full(1, 4);
        let den = lattice(&[4], &[vec![2]]);
        let q = Subquotient::new(&[4], num, den);
        assert_eq!(q.group().factors(), &[2]);
        assert_eq!(q.classify(&[1]).unwrap(), vec![1]);
        assert_eq!(q.classify(&[2]).unwrap(), vec![0]);
    }

    #[test]
    fn z2_squared_mod_diagonal() {
        let num = ModLattice::full(2, 2);
        let den = lattice(&[2, 2], &[vec![1, 1]]);
        let q = Subquotient::new(&[2, 2], num, den);
        assert_eq!(q.group().factors(), &[2]);
        assert_eq!(q.classify(&[1, 1]).unwrap(), vec![0]);
        assert_eq!(q.classify(&[1, 0]), q.classify(&[0, 1]));
    }

    #[test]
    fn classify_generators_are_units() {
        // Z/2 + Z/4 + Z/8 modulo <(1,2,4)>
        let moduli = [2, 4, 8];
        let num = ModLattice::full(3, 8);
        let den = lattice(&moduli, &[vec![1, 2, 4]]);
        let q = Subquotient::new(&moduli, num, den);
        assert_eq!(q.group().order(), num_bigint::BigUint::from(32u32));
        for (i, g) in q.generators().iter().enumerate() {
            let c = q.classify(g).unwrap();
            for (k, ck) in c.iter().enumerate() {
                assert_eq!(*ck, i64::from(k == i));
            }
        }
    }
}
