//! Integer lattices `L ⊆ ℤ^m` that contain `e·ℤ^m` for a fixed modulus `e`.
//!
//! Every subgroup of a finite abelian group `⊕ ℤ/dᵢ` is the image of such a
//! lattice (with `e` a common multiple of the `dᵢ`), so all kernel, image and
//! subquotient computations in this crate reduce to echelon forms of these
//! lattices. Because `e·eⱼ ∈ L` for every unit vector, adding a multiple of
//! `e` to any coordinate of any vector never changes the lattice it spans;
//! entries therefore stay in `[0, e)` and the arithmetic is exact in `i64`.

/// Largest modulus accepted; keeps every intermediate product below `2^63`.
pub const MAX_MODULUS: i64 = 1 << 30;

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)) * b
}

/// Row-echelon basis of a full-rank lattice containing `modulus·ℤ^dim`.
///
/// `rows[j]` has its pivot in column `j`, zeros before it, a pivot value
/// dividing `modulus`, and all later entries in `[0, modulus)`.
#[derive(Clone, Debug)]
pub struct ModLattice {
    modulus: i64,
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl PartialEq for ModLattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.is_subset_of(other) && other.is_subset_of(self)
    }
}

impl Eq for ModLattice {}

impl ModLattice {
    /// The lattice `modulus·ℤ^dim`.
    pub fn multiples(dim: usize, modulus: i64) -> Self {
        assert!(
            modulus >= 1 && modulus <= MAX_MODULUS,
            "lattice modulus {modulus} out of range"
        );
        let rows = (0..dim)
            .map(|j| {
                let mut r = vec![0; dim];
                r[j] = modulus;
                r
            })
            .collect();
        ModLattice { modulus, dim, rows }
    }

    /// The relation lattice `⊕ dᵢℤ` of `⊕ ℤ/dᵢ`, embedded with modulus `modulus`.
    pub fn relations(moduli: &[i64], modulus: i64) -> Self {
        let mut lat = Self::multiples(moduli.len(), modulus);
        for (j, &d) in moduli.iter().enumerate() {
            debug_assert_eq!(modulus % d, 0);
            let mut v = vec![0; moduli.len()];
            v[j] = d;
            lat.insert(&v);
        }
        lat
    }

    /// The whole of `ℤ^dim`.
    pub fn full(dim: usize, modulus: i64) -> Self {
        let rows = (0..dim)
            .map(|j| {
                let mut r = vec![0; dim];
                r[j] = 1;
                r
            })
            .collect();
        ModLattice {
            modulus: modulus.max(1),
            dim,
            rows,
        }
    }

    /// Wrap rows that are already in the echelon shape described above.
    pub(crate) fn from_echelon_rows(modulus: i64, rows: Vec<Vec<i64>>) -> Self {
        let dim = rows.len();
        debug_assert!(rows.iter().enumerate().all(|(j, r)| r.len() == dim
            && r[..j].iter().all(|&x| x == 0)
            && r[j] > 0
            && modulus % r[j] == 0));
        ModLattice { modulus, dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn row(&self, j: usize) -> &[i64] {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Pivot value of row `j`.
    pub fn pivot(&self, j: usize) -> i64 {
        self.rows[j][j]
    }

    /// Adds `v` to the generating set. Returns `true` if the lattice grew.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let e = self.modulus;
        let mut pending = vec![v.iter().map(|x| x.rem_euclid(e)).collect::<Vec<i64>>()];
        let mut changed = false;
        while let Some(mut v) = pending.pop() {
            for j in 0..self.dim {
                let x = v[j];
                if x == 0 {
                    continue;
                }
                let h = self.rows[j][j];
                if x % h == 0 {
                    let q = x / h;
                    let r = &self.rows[j];
                    for k in j..self.dim {
                        if r[k] != 0 {
                            v[k] = (v[k] - q * r[k]).rem_euclid(e);
                        }
                    }
                } else {
                    let (g, s, t) = ext_gcd(h, x);
                    let (hg, xg) = (h / g, x / g);
                    let r = std::mem::take(&mut self.rows[j]);
                    let mut nr = vec![0; self.dim];
                    for k in (j + 1)..self.dim {
                        let (rk, vk) = (r[k], v[k]);
                        if rk == 0 && vk == 0 {
                            continue;
                        }
                        nr[k] = (s * rk + t * vk).rem_euclid(e);
                        v[k] = (hg * vk - xg * rk).rem_euclid(e);
                    }
                    nr[j] = g;
                    v[j] = 0;
                    // (e/g)·nr vanishes in column j and must be absorbed below
                    let m = e / g;
                    if m > 1 {
                        let w: Vec<i64> = nr.iter().map(|&c| (m * c).rem_euclid(e)).collect();
                        if w.iter().any(|&c| c != 0) {
                            pending.push(w);
                        }
                    }
                    self.rows[j] = nr;
                    changed = true;
                }
            }
        }
        changed
    }

    /// Reduces `v` against the pivots in columns `range`, returning the
    /// multipliers used, or `Err(j)` when column `j` is not divisible by its
    /// pivot (so `v` is not in the lattice).
    pub(crate) fn reduce_columns(
        &self,
        v: &mut [i64],
        range: std::ops::Range<usize>,
    ) -> Result<(), usize> {
        let e = self.modulus;
        for x in v.iter_mut() {
            *x = x.rem_euclid(e);
        }
        for j in range {
            let x = v[j];
            if x == 0 {
                continue;
            }
            let h = self.rows[j][j];
            if x % h != 0 {
                return Err(j);
            }
            let q = x / h;
            let r = &self.rows[j];
            for k in j..self.dim {
                if r[k] != 0 {
                    v[k] = (v[k] - q * r[k]).rem_euclid(e);
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce_columns(&mut w, 0..self.dim).is_ok()
    }

    pub fn is_subset_of(&self, other: &ModLattice) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Brings every entry above a pivot into `[0, pivot)`; the result is the
    /// unique Hermite normal form of the lattice.
    pub fn canonicalize(&mut self) {
        let e = self.modulus;
        for k in 0..self.dim {
            let h = self.rows[k][k];
            for i in 0..k {
                let q = self.rows[i][k].div_euclid(h);
                if q == 0 {
                    continue;
                }
                let (top, bottom) = self.rows.split_at_mut(k);
                let ri = &mut top[i];
                let rk = &bottom[0];
                for c in k..self.dim {
                    if rk[c] != 0 {
                        ri[c] = (ri[c] - q * rk[c]).rem_euclid(e);
                    }
                }
            }
        }
    }

    /// `log` of `[ℤ^dim : L]` is awkward; the index itself as a product of pivots.
    pub fn index(&self) -> num_bigint::BigUint {
        self.rows
            .iter()
            .enumerate()
            .fold(num_bigint::BigUint::from(1u32), |acc, (j, r)| {
                acc * num_bigint::BigUint::from(r[j] as u64)
            })
    }

    /// Sum of two lattices with the same dimension and modulus.
    pub fn sum(&self, other: &ModLattice) -> ModLattice {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r);
        }
        out
    }
}

/// An echelon lattice in `ℤ^(split + rest)` whose first `split` columns are
/// eliminated first. Used for graph lattices `{(φ(s), s)}`: the rows with
/// pivots past `split` span the kernel, the rows before it span the image,
/// and reducing `(y, 0)` through the first block solves `φ(s) = y`.
#[derive(Clone, Debug)]
pub struct SplitLattice {
    split: usize,
    lattice: ModLattice,
}

impl SplitLattice {
    pub fn new(split: usize, lattice: ModLattice) -> Self {
        SplitLattice { split, lattice }
    }

    pub fn lattice(&self) -> &ModLattice {
        &self.lattice
    }

    /// Vectors `s` with `(0, s)` in the lattice.
    pub fn tail_kernel(&self) -> ModLattice {
        let n = self.lattice.dim;
        let rows = (self.split..n)
            .map(|j| self.lattice.rows[j][self.split..].to_vec())
            .collect();
        ModLattice::from_echelon_rows(self.lattice.modulus, rows)
    }

    /// Projection of the lattice onto the leading block.
    pub fn head_image(&self) -> ModLattice {
        let rows = (0..self.split)
            .map(|j| self.lattice.rows[j][..self.split].to_vec())
            .collect();
        ModLattice::from_echelon_rows(self.lattice.modulus, rows)
    }

    /// Finds `s` with `(y, s)` in the lattice, if any.
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        debug_assert_eq!(y.len(), self.split);
        let n = self.lattice.dim;
        let mut v = vec![0; n];
        v[..self.split].copy_from_slice(y);
        self.lattice.reduce_columns(&mut v, 0..self.split).ok()?;
        let e = self.lattice.modulus;
        Some(v[self.split..].iter().map(|x| (-x).rem_euclid(e)).collect())
    }
}
