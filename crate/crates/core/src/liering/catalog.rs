//! Small Lie rings and modules used by the tests, examples and the CLI.

use super::{validate_lie, validate_lie_module, validate_restricted_map, LieModule, LieRing, RestrictedStructure};
use crate::fp::{self, Matrix};

fn constants(dim: usize) -> Vec<Vec<Vec<i64>>> {
    vec![vec![vec![0; dim]; dim]; dim]
}

fn set(c: &mut [Vec<Vec<i64>>], i: usize, j: usize, v: Vec<i64>, p: i64) {
    c[j][i] = v.iter().map(|x| (-x).rem_euclid(p)).collect();
    c[i][j] = v;
}

pub fn abelian_lie(p: i64, dim: usize) -> LieRing {
    validate_lie(p, dim, constants(dim)).expect("abelian constants are valid")
}

/// `[e₀,e₁] = e₂`.
pub fn heisenberg(p: i64) -> LieRing {
    let mut c = constants(3);
    set(&mut c, 0, 1, vec![0, 0, 1], p);
    validate_lie(p, 3, c).expect("Heisenberg constants are valid")
}

/// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2(p: i64) -> LieRing {
    let mut c = constants(3);
    set(&mut c, 0, 1, vec![0, 2 % p, 0], p);
    set(&mut c, 0, 2, vec![0, 0, (-2i64).rem_euclid(p)], p);
    set(&mut c, 1, 2, vec![1, 0, 0], p);
    validate_lie(p, 3, c).expect("sl2 constants are valid")
}

/// `[x,y] = y`.
pub fn solvable2(p: i64) -> LieRing {
    let mut c = constants(2);
    set(&mut c, 0, 1, vec![0, 1], p);
    validate_lie(p, 2, c).expect("solvable constants are valid")
}

/// `[x,y] = y`, `[x,z] = y + z`.
pub fn solvable3(p: i64) -> LieRing {
    let mut c = constants(3);
    set(&mut c, 0, 1, vec![0, 1, 0], p);
    set(&mut c, 0, 2, vec![0, 1, 1], p);
    validate_lie(p, 3, c).expect("solvable constants are valid")
}

/// `gl_n(𝔽_p)` on the matrix units, `E_ab` at index `a·n + b`.
pub fn gl(n: usize, p: i64) -> LieRing {
    let d = n * n;
    let mut c = constants(d);
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for y in 0..n {
                    let mut v = vec![0; d];
                    if b == x {
                        v[a * n + y] += 1;
                    }
                    if y == a {
                        v[x * n + b] -= 1;
                    }
                    c[a * n + b][x * n + y] = v.iter().map(|t: &i64| t.rem_euclid(p)).collect();
                }
            }
        }
    }
    validate_lie(p, d, c).expect("gl constants are valid")
}

fn as_matrix(v: &[i64], n: usize) -> Matrix {
    v.chunks(n).map(<[i64]>::to_vec).collect()
}

/// The `p`-th power map of `gl_n(𝔽_p)` in matrix-unit coordinates.
pub fn matrix_power_map(n: usize, p: i64) -> impl Fn(&[i64]) -> Vec<i64> {
    move |v| fp::mat_pow(&as_matrix(v, n), p as u64, p).concat()
}

pub fn gl_restricted(n: usize, p: i64) -> RestrictedStructure {
    validate_restricted_map(&gl(n, p), &matrix_power_map(n, p)).expect("matrix powers are restricted")
}

pub fn lie_catalog() -> Vec<(String, LieRing)> {
    vec![
        ("abelian(2,2)".into(), abelian_lie(2, 2)),
        ("abelian(3,1)".into(), abelian_lie(3, 1)),
        ("abelian(5,2)".into(), abelian_lie(5, 2)),
        ("heisenberg(3)".into(), heisenberg(3)),
        ("heisenberg(5)".into(), heisenberg(5)),
        ("sl2(5)".into(), sl2(5)),
        ("sl2(7)".into(), sl2(7)),
        ("solvable2(2)".into(), solvable2(2)),
        ("solvable2(3)".into(), solvable2(3)),
        ("solvable2(5)".into(), solvable2(5)),
        ("solvable3(3)".into(), solvable3(3)),
        ("gl2(2)".into(), gl(2, 2)),
        ("gl2(3)".into(), gl(2, 3)),
    ]
}

fn module(ring: &LieRing, dim: usize, action: Vec<Matrix>) -> LieModule {
    validate_lie_module(ring, dim, action).expect("catalog module is valid")
}

fn diag(d: &[i64]) -> Matrix {
    let mut m = fp::zeros(d.len(), d.len());
    for (i, &x) in d.iter().enumerate() {
        m[i][i] = x;
    }
    m
}

fn unit_matrix(n: usize, a: usize, b: usize) -> Matrix {
    let mut m = fp::zeros(n, n);
    m[a][b] = 1;
    m
}

pub fn lie_module_catalog() -> Vec<(String, LieModule)> {
    let line3 = abelian_lie(3, 1);
    let h5 = heisenberg(5);
    let h3 = heisenberg(3);
    let s5 = sl2(5);
    let b3 = solvable2(3);
    let b5 = solvable2(5);
    let g2 = gl(2, 2);
    let g3 = gl(2, 3);
    let natural = |n: usize, ring: &LieRing| {
        let action = (0..n * n).map(|i| unit_matrix(n, i / n, i % n)).collect();
        module(ring, n, action)
    };
    let zero2 = fp::zeros(2, 2);
    vec![
        ("abelian(3,1) trivial F3".into(), LieModule::trivial(&line3, 1)),
        ("abelian(3,1) scalar F3".into(), module(&line3, 1, vec![vec![vec![1]]])),
        ("abelian(3,1) diag(1,2) on F3^2".into(), module(&line3, 2, vec![diag(&[1, 2])])),
        ("abelian(2,2) trivial F2".into(), LieModule::trivial(&abelian_lie(2, 2), 1)),
        ("heisenberg(5) trivial F5".into(), LieModule::trivial(&h5, 1)),
        ("heisenberg(5) adjoint".into(), LieModule::adjoint(&h5)),
        ("heisenberg(5) scalar F5".into(), module(&h5, 1, vec![vec![vec![1]], vec![vec![0]], vec![vec![0]]])),
        (
            "heisenberg(5) diag(1,2) on F5^2".into(),
            module(&h5, 2, vec![diag(&[1, 2]), zero2.clone(), zero2.clone()]),
        ),
        (
            "heisenberg(3) on F3^3".into(),
            module(&h3, 3, vec![unit_matrix(3, 0, 1), unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)]),
        ),
        (
            "sl2(5) natural".into(),
            module(&s5, 2, vec![diag(&[1, 4]), unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)]),
        ),
        ("sl2(5) adjoint".into(), LieModule::adjoint(&s5)),
        ("sl2(7) adjoint".into(), LieModule::adjoint(&sl2(7))),
        ("solvable2(3) scalar F3".into(), module(&b3, 1, vec![vec![vec![1]], vec![vec![0]]])),
        (
            "solvable2(5) on F5^2".into(),
            module(&b5, 2, vec![diag(&[1, 2]), unit_matrix(2, 1, 0)]),
        ),
        ("solvable3(3) adjoint".into(), LieModule::adjoint(&solvable3(3))),
        ("gl2(2) natural".into(), natural(2, &g2)),
        ("gl2(3) natural".into(), natural(2, &g3)),
    ]
}
