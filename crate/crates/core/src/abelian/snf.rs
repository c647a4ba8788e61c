//! Smith normal form over the integers with unbounded precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`, `dᵢ ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SnfResult {
    /// The diagonal of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

// row_a <- row_a - q*row_b
fn row_axpy(m: &mut [Vec<BigInt>], a: usize, b: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (ra, rb) = if a < b {
        let (x, y) = m.split_at_mut(b);
        (&mut x[a], &y[0])
    } else {
        let (x, y) = m.split_at_mut(a);
        (&mut y[0], &x[b])
    };
    for (x, y) in ra.iter_mut().zip(rb.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

// col_a <- col_a - q*col_b
fn col_axpy(m: &mut [Vec<BigInt>], a: usize, b: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[b].is_zero() {
            let t = q * &row[b];
            row[a] -= t;
        }
    }
}

/// Computes the Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> SnfResult {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d[bi][bj].abs() <= d[i][j].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SnfResult { u, d, v };
            };
            d.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in d.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, pj);
                }
            }
            let mut clean = true;
            for i in (t + 1)..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut offender = None;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => {
                    if d[t][t].is_negative() {
                        for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                            *x = -&*x;
                        }
                    }
                    break;
                }
            }
        }
    }
    SnfResult { u, d, v }
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match ((k + 1)..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * a[n - 1][n - 1].clone()
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(BigInt::zero(), |acc, k| {
                        if row[k].is_zero() {
                            acc
                        } else {
                            acc + &row[k] * &b[k][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn check(m: &[Vec<BigInt>]) -> SnfResult {
        let r = smith_normal_form(m);
        assert_eq!(mat_mul(&mat_mul(&r.u, m), &r.v), r.d);
        assert_eq!(determinant(&r.u).abs(), BigInt::one());
        assert_eq!(determinant(&r.v).abs(), BigInt::one());
        let diag = r.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
        r
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&big(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.d, big(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn two_by_two_example() {
        let r = check(&big(&[&[2, 4], &[6, 8]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let r = check(&big(&[&[0, 0], &[0, 0], &[0, 0]]));
        assert!(r.d.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&big(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
    }
}
