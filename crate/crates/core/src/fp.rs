//! Dense linear algebra over `𝔽_p`. Vectors and matrices hold entries in
//! `0..p`; matrices are row-major and act on column vectors.

pub type Matrix = Vec<Vec<i64>>;

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn inv(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    assert!(a != 0, "zero has no inverse");
    pow(a, p - 2, p)
}

pub fn pow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1 % p;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn mat_mul(a: &Matrix, b: &Matrix, p: i64) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| (acc + x * brow[j]) % p)
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64], p: i64) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| (acc + x * y) % p))
        .collect()
}

pub fn mat_add(a: &Matrix, b: &Matrix, p: i64) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % p).collect())
        .collect()
}

pub fn mat_sub(a: &Matrix, b: &Matrix, p: i64) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).rem_euclid(p)).collect())
        .collect()
}

pub fn mat_scale(k: i64, a: &Matrix, p: i64) -> Matrix {
    let k = k.rem_euclid(p);
    a.iter()
        .map(|r| r.iter().map(|x| x * k % p).collect())
        .collect()
}

pub fn mat_pow(a: &Matrix, mut e: u64, p: i64) -> Matrix {
    let mut acc = identity(a.len());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base, p);
        }
        base = mat_mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &Matrix, p: i64) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = a
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(row, r);
        let s = inv(m[row][c], p);
        for x in &mut m[row] {
            *x = *x * s % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][c] != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[row][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(a: &Matrix, p: i64) -> usize {
    rref(a, p).1.len()
}

/// Basis of `{x : a·x = 0}` for a matrix with `cols` columns.
pub fn kernel(a: &Matrix, cols: usize, p: i64) -> Matrix {
    let (r, pivots) = rref(a, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = (-row[f]).rem_euclid(p);
            }
            v
        })
        .collect()
}

/// Some `x` with `a·x = b`.
pub fn solve(a: &Matrix, b: &[i64], cols: usize, p: i64) -> Option<Vec<i64>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(r, &y)| {
            let mut r = r.clone();
            r.push(y);
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, p);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols];
    }
    Some(x)
}

pub fn inverse(a: &Matrix, p: i64) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().copied().chain(e).collect())
        .collect();
    let (r, pivots) = rref(&aug, p);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.iter().map(|row| row[n..].to_vec()).collect())
}

/// Echelon basis of the span of `rows`.
pub fn span(rows: &[Vec<i64>], p: i64) -> Matrix {
    rref(&rows.to_vec(), p).0
}

pub fn in_span(basis: &Matrix, v: &[i64], p: i64) -> bool {
    let mut rows = basis.clone();
    rows.push(v.to_vec());
    rank(&rows, p) == basis.len()
}

/// Basis of `U ∩ W` from bases of `U` and `W` in a space of dimension `n`.
pub fn intersect(u: &Matrix, w: &Matrix, n: usize, p: i64) -> Matrix {
    // solve Σ aᵢuᵢ = Σ bⱼwⱼ
    let cols = u.len() + w.len();
    let a: Matrix = (0..n)
        .map(|i| {
            u.iter()
                .map(|r| r[i])
                .chain(w.iter().map(|r| (-r[i]).rem_euclid(p)))
                .collect()
        })
        .collect();
    let ker = kernel(&a, cols, p);
    let vecs: Vec<Vec<i64>> = ker
        .iter()
        .map(|k| {
            (0..n)
                .map(|i| u.iter().zip(k).fold(0, |acc, (r, &c)| (acc + r[i] * c) % p))
                .collect()
        })
        .collect();
    span(&vecs, p)
}
