//! Lie inflation-restriction and the six-term sequence from the snake lemma.

use serde::Serialize;

use super::cochain::{coboundaries, cocycles};
use super::{coords, restrict_operator, unit, validate_lie_module, LieError, LieModule};
use crate::cohomology::{ExactnessNode, ExactnessReport};
use crate::fp::{self, Matrix};

/// `Z/B` inside a cochain space.
struct Space {
    z: Matrix,
    b: Matrix,
}

fn apply(map: &Matrix, vs: &Matrix, p: i64) -> Matrix {
    vs.iter().map(|v| fp::mat_vec(map, v, p)).collect()
}

/// `{v ∈ span(z) : map·v ∈ span(t)}`.
pub(crate) fn preimage(map: &Matrix, z: &Matrix, t: &Matrix, p: i64) -> Matrix {
    if z.is_empty() || map.is_empty() {
        return fp::span(z, p);
    }
    let images = apply(map, z, p);
    let rows: Matrix = (0..map.len())
        .map(|r| {
            images
                .iter()
                .map(|v| v[r])
                .chain(t.iter().map(|w| (-w[r]).rem_euclid(p)))
                .collect()
        })
        .collect();
    let ker = fp::kernel(&rows, z.len() + t.len(), p);
    let n = z[0].len();
    let vs: Matrix = ker
        .iter()
        .map(|k| {
            (0..n)
                .map(|i| z.iter().zip(k).fold(0, |acc, (v, &c)| (acc + v[i] * c) % p))
                .collect()
        })
        .collect();
    fp::span(&vs, p)
}

fn pow_u64(p: i64, e: usize) -> u64 {
    (p as u64).pow(e as u32)
}

fn union(a: &Matrix, b: &Matrix, p: i64) -> Matrix {
    let mut rows = a.clone();
    rows.extend(b.iter().cloned());
    fp::span(&rows, p)
}

/// Exactness at `mid` of `src --incoming--> mid --outgoing--> target`, with
/// `None` standing for the zero space.
fn node(
    label: &str,
    incoming: Option<(&Matrix, &Matrix)>,
    mid: &Space,
    outgoing: Option<(&Matrix, &Matrix)>,
    p: i64,
) -> ExactnessNode {
    let ker = match outgoing {
        Some((map, target_b)) => union(&preimage(map, &mid.z, target_b, p), &mid.b, p),
        None => fp::span(&mid.z, p),
    };
    let im = match incoming {
        Some((map, src_z)) => union(&apply(map, src_z, p), &mid.b, p),
        None => fp::span(&mid.b, p),
    };
    let both = union(&ker, &im, p).len();
    let exact = both == ker.len() && both == im.len();
    let witness = if exact {
        None
    } else if both > ker.len() {
        Some("composite of the two maps is nonzero".to_string())
    } else {
        Some("kernel strictly larger than image".to_string())
    };
    ExactnessNode {
        label: label.to_string(),
        ker_order: pow_u64(p, ker.len() - mid.b.len()),
        im_order: pow_u64(p, im.len() - mid.b.len()),
        exact,
        witness,
    }
}

fn block_diag(map: &Matrix, rows: usize, cols: usize, copies: usize) -> Matrix {
    let mut out = fp::zeros(rows * copies, cols * copies);
    for c in 0..copies {
        for r in 0..rows {
            for s in 0..cols {
                out[c * rows + r][c * cols + s] = map[r][s];
            }
        }
    }
    out
}

fn contained(a: &Matrix, b: &Matrix, p: i64) -> bool {
    a.iter().all(|v| fp::in_span(b, v, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieFaithfulReduction {
    pub inflation_is_iso: bool,
    pub fixed_is_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieInfRes {
    pub report: ExactnessReport,
    pub h1_quotient: usize,
    pub h1_whole: usize,
    pub h1_sub: usize,
    pub fixed_dim: usize,
    /// Present when `𝔥` is central, acts trivially and `A^𝔤 = 0`.
    pub faithful: Option<LieFaithfulReduction>,
}

/// `0 → H¹(𝔤/𝔥, A^𝔥) → H¹(𝔤, A) → H¹(𝔥, A)^{𝔤/𝔥}` for an ideal `𝔥`, with `𝔤`
/// acting on `C¹(𝔥, A)` by `(x·f)(y) = x·f(y) − f([x,y])`.
pub fn check_lie_inf_res(m: &LieModule, h: &Matrix) -> Result<LieInfRes, LieError> {
    let ring = m.ring();
    let p = ring.p();
    let d = ring.dim();
    let k = m.dim();
    let q = ring.quotient(h)?;
    let (hring, hb) = ring.subalgebra(h)?;
    let (_, hpivots) = fp::rref(&hb, p);
    let dh = hb.len();

    // A^𝔥 as a module for 𝔤/𝔥
    let (fixed_basis, fpivots) = fp::rref(&m.killed_by(&hb), p);
    let kf = fixed_basis.len();
    let qaction = q
        .lifts
        .iter()
        .map(|&j| restrict_operator(m.action(j), &fixed_basis, &fpivots, p))
        .collect();
    let qm = validate_lie_module(&q.ring, kf, qaction)?;
    let hm = m.restrict(&hring, &hb);

    let dq = q.ring.dim();
    let mut inf = fp::zeros(d * k, dq * kf);
    for j in 0..d {
        let image = q.project(&unit(d, j));
        for (a, &c) in image.iter().enumerate() {
            for (r, f) in fixed_basis.iter().enumerate() {
                for s in 0..k {
                    let x = &mut inf[j * k + s][a * kf + r];
                    *x = (*x + c * f[s]).rem_euclid(p);
                }
            }
        }
    }
    let mut res = fp::zeros(dh * k, d * k);
    for (i, row) in hb.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            for r in 0..k {
                res[i * k + r][j * k + r] = c;
            }
        }
    }

    let quotient = Space { z: cocycles(&qm, 1), b: coboundaries(&qm, 1) };
    let whole = Space { z: cocycles(m, 1), b: coboundaries(m, 1) };
    let sub = Space { z: cocycles(&hm, 1), b: coboundaries(&hm, 1) };

    // H¹(𝔥, A)^𝔤 as the classes whose translates are all inner
    let mut fixed = sub.z.clone();
    for l in 0..d {
        let x = unit(d, l);
        let rho = m.rho(&x);
        let mut t = fp::zeros(dh * k, dh * k);
        for i in 0..dh {
            for r in 0..k {
                for s in 0..k {
                    t[i * k + r][i * k + s] = rho[r][s];
                }
            }
            let c = coords(&hb, &hpivots, &ring.bracket(&x, &hb[i]), p).ok_or(LieError::NotIdeal)?;
            for (l2, &cl) in c.iter().enumerate() {
                for r in 0..k {
                    let e = &mut t[i * k + r][l2 * k + r];
                    *e = (*e - cl).rem_euclid(p);
                }
            }
        }
        fixed = preimage(&t, &fixed, &sub.b, p);
    }
    let fixed = union(&fixed, &sub.b, p);

    let mut report = ExactnessReport::default();
    let first = node("H1(g/h,A^h)", None, &quotient, Some((&inf, &whole.b)), p);
    report.nodes.push(first.clone());
    report
        .nodes
        .push(node("H1(g,A)", Some((&inf, &quotient.z)), &whole, Some((&res, &sub.b)), p));
    let res_image = union(&apply(&res, &whole.z, p), &sub.b, p);
    let inside = contained(&res_image, &fixed, p);
    report.nodes.push(ExactnessNode {
        label: "im(res) in H1(h,A)^(g/h)".into(),
        ker_order: pow_u64(p, fixed.len() - sub.b.len()),
        im_order: pow_u64(p, res_image.len() - sub.b.len()),
        exact: inside,
        witness: (!inside).then(|| "a restricted class is moved by g/h".to_string()),
    });
    let well_defined = contained(&apply(&inf, &quotient.z, p), &whole.z, p)
        && contained(&apply(&inf, &quotient.b, p), &whole.b, p)
        && contained(&apply(&res, &whole.z, p), &sub.z, p)
        && contained(&apply(&res, &whole.b, p), &sub.b, p);
    report.nodes.push(ExactnessNode {
        label: "maps well defined".into(),
        ker_order: 1,
        im_order: 1,
        exact: well_defined,
        witness: (!well_defined).then(|| "a cocycle or coboundary is not preserved".to_string()),
    });

    let center = ring.center();
    let qualifies = contained(&hb, &center, p)
        && hb.iter().all(|x| m.rho(x).iter().flatten().all(|&c| c == 0))
        && m.invariants().is_empty();
    let faithful = qualifies.then(|| {
        let onto = union(&apply(&inf, &quotient.z, p), &whole.b, p).len() == whole.z.len();
        LieFaithfulReduction {
            inflation_is_iso: first.exact && onto,
            fixed_is_zero: fixed.len() == sub.b.len(),
        }
    });
    Ok(LieInfRes {
        report,
        h1_quotient: quotient.z.len() - quotient.b.len(),
        h1_whole: whole.z.len() - whole.b.len(),
        h1_sub: sub.z.len() - sub.b.len(),
        fixed_dim: fixed.len() - sub.b.len(),
        faithful,
    })
}

/// `0 → A → B → C → 0` of modules over one Lie ring.
#[derive(Clone, Debug)]
pub struct LieShortExactSequence {
    pub left: LieModule,
    pub middle: LieModule,
    pub right: LieModule,
    pub inj: Matrix,
    pub surj: Matrix,
}

impl LieShortExactSequence {
    pub fn new(
        left: LieModule,
        middle: LieModule,
        right: LieModule,
        inj: Matrix,
        surj: Matrix,
    ) -> Result<Self, LieError> {
        let bad = |s: &str| Err(LieError::InvalidSequence(s.to_string()));
        if left.ring() != middle.ring() || middle.ring() != right.ring() {
            return bad("modules over different rings");
        }
        let p = middle.p();
        let (a, b, c) = (left.dim(), middle.dim(), right.dim());
        if inj.len() != b || inj.iter().any(|r| r.len() != a) || surj.len() != c || surj.iter().any(|r| r.len() != b) {
            return bad("map shapes do not match the modules");
        }
        if a + c != b {
            return bad("dimensions do not add up");
        }
        if a > 0 && fp::rank(&fp::transpose(&inj), p) != a {
            return bad("first map is not injective");
        }
        if c > 0 && fp::rank(&surj, p) != c {
            return bad("second map is not surjective");
        }
        if a > 0 && c > 0 && fp::mat_mul(&surj, &inj, p).iter().flatten().any(|&x| x != 0) {
            return bad("composite is nonzero");
        }
        for i in 0..middle.ring().dim() {
            if a > 0 && fp::mat_mul(middle.action(i), &inj, p) != fp::mat_mul(&inj, left.action(i), p) {
                return bad("first map is not equivariant");
            }
            if c > 0 && fp::mat_mul(&surj, middle.action(i), p) != fp::mat_mul(right.action(i), &surj, p) {
                return bad("second map is not equivariant");
            }
        }
        Ok(LieShortExactSequence { left, middle, right, inj, surj })
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(left: &LieModule, right: &LieModule) -> Result<Self, LieError> {
        let (a, c) = (left.dim(), right.dim());
        let middle = left.direct_sum(right);
        let mut inj = fp::zeros(a + c, a);
        let mut surj = fp::zeros(c, a + c);
        for i in 0..a {
            inj[i][i] = 1;
        }
        for i in 0..c {
            surj[i][a + i] = 1;
        }
        Self::new(left.clone(), middle, right.clone(), inj, surj)
    }

    fn left_inverse(&self) -> Matrix {
        let p = self.middle.p();
        let (a, b) = (self.left.dim(), self.middle.dim());
        let t = fp::transpose(&self.inj);
        (0..a)
            .map(|r| {
                if t.is_empty() {
                    vec![0; b]
                } else {
                    fp::solve(&t, &unit(a, r), b, p).expect("injective map has a left inverse")
                }
            })
            .collect()
    }

    /// A right inverse of the surjection.
    pub fn default_section(&self) -> Matrix {
        let p = self.middle.p();
        let (b, c) = (self.middle.dim(), self.right.dim());
        let cols: Matrix = (0..c)
            .map(|i| fp::solve(&self.surj, &unit(c, i), b, p).expect("surjective map has a section"))
            .collect();
        let mut s = fp::zeros(b, c);
        for (i, col) in cols.iter().enumerate() {
            for r in 0..b {
                s[r][i] = col[r];
            }
        }
        s
    }
}

/// `δ: C^𝔤 → Z¹(𝔤, A)`, `c ↦ (x ↦ i⁻¹(x·s(c)))` on flattened derivations.
pub fn lie_connecting_map_with_section(s: &LieShortExactSequence, section: &Matrix) -> Result<Matrix, LieError> {
    let p = s.middle.p();
    let (a, b, c) = (s.left.dim(), s.middle.dim(), s.right.dim());
    if section.len() != b || section.iter().any(|r| r.len() != c) {
        return Err(LieError::InvalidSequence("section has the wrong shape".into()));
    }
    if c > 0 && b > 0 && fp::mat_mul(&s.surj, section, p) != fp::identity(c) {
        return Err(LieError::InvalidSequence("section is not a right inverse".into()));
    }
    let left = s.left_inverse();
    let d = s.middle.ring().dim();
    let mut delta = fp::zeros(d * a, c);
    if a == 0 || c == 0 {
        return Ok(delta);
    }
    for j in 0..d {
        let block = fp::mat_mul(&fp::mat_mul(&left, s.middle.action(j), p), section, p);
        for r in 0..a {
            delta[j * a + r] = block[r].clone();
        }
    }
    Ok(delta)
}

pub fn lie_connecting_map(s: &LieShortExactSequence) -> Matrix {
    lie_connecting_map_with_section(s, &s.default_section()).expect("default section is valid")
}

/// Exactness of `A^𝔤 → B^𝔤 → C^𝔤 → H¹(𝔤,A) → H¹(𝔤,B) → H¹(𝔤,C)` at every
/// internal node.
pub fn check_six_term(s: &LieShortExactSequence) -> ExactnessReport {
    let p = s.middle.p();
    let d = s.middle.ring().dim();
    let (a, b, c) = (s.left.dim(), s.middle.dim(), s.right.dim());
    let h0 = |m: &LieModule| Space { z: m.invariants(), b: Vec::new() };
    let h1 = |m: &LieModule| Space { z: cocycles(m, 1), b: coboundaries(m, 1) };
    let (a0, b0, c0) = (h0(&s.left), h0(&s.middle), h0(&s.right));
    let (a1, b1, c1) = (h1(&s.left), h1(&s.middle), h1(&s.right));
    let delta = lie_connecting_map(s);
    let inj1 = block_diag(&s.inj, b, a, d);
    let surj1 = block_diag(&s.surj, c, b, d);
    let empty = Vec::new();
    let mut report = ExactnessReport::default();
    report.nodes.push(node("A^g", None, &a0, Some((&s.inj, &empty)), p));
    report
        .nodes
        .push(node("B^g", Some((&s.inj, &a0.z)), &b0, Some((&s.surj, &empty)), p));
    report
        .nodes
        .push(node("C^g", Some((&s.surj, &b0.z)), &c0, Some((&delta, &a1.b)), p));
    report
        .nodes
        .push(node("H1(A)", Some((&delta, &c0.z)), &a1, Some((&inj1, &b1.b)), p));
    report
        .nodes
        .push(node("H1(B)", Some((&inj1, &a1.z)), &b1, Some((&surj1, &c1.b)), p));
    report
}
