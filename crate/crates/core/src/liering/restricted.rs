//! Restricted structures, algebraic semi-simplicity and tori.

use serde::Serialize;

use super::{reduce, unit, vadd, vscale, LieError, LieRing};
use crate::fp::{self, Matrix};

/// A `[p]`-map stored by the images of the basis and extended to all of `𝔤`
/// by p-semilinearity and the sum formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedStructure {
    ring: LieRing,
    images: Matrix,
}

/// `s₁(x,y), …, s_{p−1}(x,y)` read off from
/// `ad_{x⊗X + y⊗1}^{p−1}(x⊗1) = Σ i·sᵢ(x,y)⊗X^{i−1}`.
pub(crate) fn jacobson_terms(ring: &LieRing, x: &[i64], y: &[i64]) -> Vec<Vec<i64>> {
    let p = ring.p();
    let d = ring.dim();
    let deg = p as usize;
    let mut poly = vec![vec![0; d]; deg];
    poly[0] = reduce(x, p);
    for _ in 0..p - 1 {
        let mut next = vec![vec![0; d]; deg];
        for (k, v) in poly.iter().enumerate() {
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            next[k] = vadd(&next[k], &ring.bracket(y, v), p);
            if k + 1 < deg {
                next[k + 1] = vadd(&next[k + 1], &ring.bracket(x, v), p);
            }
        }
        poly = next;
    }
    (1..p as usize)
        .map(|i| vscale(fp::inv(i as i64, p), &poly[i - 1], p))
        .collect()
}

fn sum_rule(ring: &LieRing, x: &[i64], xp: &[i64], y: &[i64], yp: &[i64]) -> Vec<i64> {
    let p = ring.p();
    jacobson_terms(ring, x, y)
        .iter()
        .fold(vadd(xp, yp, p), |acc, s| vadd(&acc, s, p))
}

impl RestrictedStructure {
    pub fn ring(&self) -> &LieRing {
        &self.ring
    }

    pub fn images(&self) -> &Matrix {
        &self.images
    }

    /// `x^{[p]}` for an arbitrary `x`, adding one basis term at a time.
    pub fn pmap(&self, x: &[i64]) -> Vec<i64> {
        self.pmap_in_order(x, &(0..self.ring.dim()).collect::<Vec<_>>())
    }

    fn pmap_in_order(&self, x: &[i64], order: &[usize]) -> Vec<i64> {
        let p = self.ring.p();
        let d = self.ring.dim();
        let mut acc: Option<(Vec<i64>, Vec<i64>)> = None;
        for &i in order {
            let c = x[i].rem_euclid(p);
            if c == 0 {
                continue;
            }
            let term = vscale(c, &unit(d, i), p);
            let term_p = vscale(fp::pow(c, p, p), &self.images[i], p);
            acc = Some(match acc {
                None => (term, term_p),
                Some((a, ap)) => {
                    let sum_p = sum_rule(&self.ring, &a, &ap, &term, &term_p);
                    (vadd(&a, &term, p), sum_p)
                }
            });
        }
        acc.map_or_else(|| vec![0; d], |(_, xp)| xp)
    }

    /// `[x^{[p]}, y] = ad_x^p(y)` for all `y`.
    pub fn axiom1_holds_at(&self, x: &[i64]) -> bool {
        let p = self.ring.p();
        self.ring.ad(&self.pmap(x)) == fp::mat_pow(&self.ring.ad(x), p as u64, p)
    }
}

fn check_axiom1(ring: &LieRing, images: &Matrix) -> Result<(), LieError> {
    let p = ring.p();
    let d = ring.dim();
    for i in 0..d {
        let adp = fp::mat_pow(&ring.ad(&unit(d, i)), p as u64, p);
        for j in 0..d {
            let lhs = ring.bracket(&images[i], &unit(d, j));
            let rhs: Vec<i64> = adp.iter().map(|row| row[j]).collect();
            if lhs != rhs {
                return Err(LieError::Axiom1Fails(i, j));
            }
        }
    }
    Ok(())
}

/// Validates basis images of a `[p]`-map. Axiom 1 is checked on basis
/// pairs. For each pair `eᵢ + eⱼ` the sum formula is evaluated in both
/// orders, and the two results must agree and satisfy axiom 1.
pub fn validate_restricted(ring: &LieRing, images: Matrix) -> Result<RestrictedStructure, LieError> {
    let p = ring.p();
    let d = ring.dim();
    if images.len() != d || images.iter().any(|v| v.len() != d) {
        return Err(LieError::Shape(format!("need {d} basis images of length {d}")));
    }
    let images: Matrix = images.iter().map(|v| reduce(v, p)).collect();
    check_axiom1(ring, &images)?;
    let r = RestrictedStructure { ring: ring.clone(), images };
    for i in 0..d {
        for j in i + 1..d {
            let x = vadd(&unit(d, i), &unit(d, j), p);
            let forward = r.pmap_in_order(&x, &[i, j]);
            let backward = r.pmap_in_order(&x, &[j, i]);
            if forward != backward || !r.axiom1_holds_at(&x) {
                return Err(LieError::Axiom3Fails(i, j));
            }
        }
    }
    Ok(r)
}

/// Validates a `[p]`-map given as a function. Axiom 1 is checked on basis
/// pairs, axiom 2 on all scalar multiples of basis vectors, and axiom 3 as
/// `(eᵢ + eⱼ)^{[p]} = eᵢ^{[p]} + eⱼ^{[p]} + Σ sᵢ(eᵢ, eⱼ)` on basis pairs.
pub fn validate_restricted_map(
    ring: &LieRing,
    pmap: &dyn Fn(&[i64]) -> Vec<i64>,
) -> Result<RestrictedStructure, LieError> {
    let p = ring.p();
    let d = ring.dim();
    let images: Matrix = (0..d).map(|i| reduce(&pmap(&unit(d, i)), p)).collect();
    check_axiom1(ring, &images)?;
    for i in 0..d {
        for l in 2..p {
            let lhs = reduce(&pmap(&vscale(l, &unit(d, i), p)), p);
            if lhs != vscale(fp::pow(l, p, p), &images[i], p) {
                return Err(LieError::Axiom2Fails(i));
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let (x, y) = (unit(d, i), unit(d, j));
            let lhs = reduce(&pmap(&vadd(&x, &y, p)), p);
            if lhs != sum_rule(ring, &x, &images[i], &y, &images[j]) {
                return Err(LieError::Axiom3Fails(i, j));
            }
        }
    }
    validate_restricted(ring, images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleCertificate {
    pub semisimple: bool,
    /// `x^{[p]}, x^{[p]²}, …` up to the first one already in the span.
    pub iterates: Vec<Vec<i64>>,
    /// Coefficients expressing `x` in the iterates.
    pub combination: Option<Vec<i64>>,
}

/// Whether `x` lies in the span of `x^{[p]^i}`, `i ≥ 1`.
pub fn is_semisimple_element(r: &RestrictedStructure, x: &[i64]) -> SemisimpleCertificate {
    let p = r.ring.p();
    let x = reduce(x, p);
    let mut iterates: Vec<Vec<i64>> = Vec::new();
    let mut y = r.pmap(&x);
    while !fp::in_span(&fp::span(&iterates, p), &y, p) {
        iterates.push(y.clone());
        y = r.pmap(&y);
    }
    let combination = if iterates.is_empty() {
        x.iter().all(|&c| c == 0).then(Vec::new)
    } else {
        fp::solve(&fp::transpose(&iterates), &x, iterates.len(), p)
    };
    SemisimpleCertificate {
        semisimple: combination.is_some(),
        iterates,
        combination,
    }
}

/// Whether the subalgebra on `basis` is abelian with injective `[p]`.
pub fn is_torus(r: &RestrictedStructure, basis: &Matrix) -> Result<bool, LieError> {
    let p = r.ring.p();
    let b = fp::span(basis, p);
    let brackets = r.ring.bracket_span(&b, &b);
    let images: Matrix = b.iter().map(|v| r.pmap(v)).collect();
    if brackets.iter().chain(&images).any(|v| !fp::in_span(&b, v, p)) {
        return Err(LieError::NotClosed);
    }
    Ok(brackets.is_empty() && fp::rank(&images, p) == b.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liering::{abelian_lie, gl, gl_restricted, matrix_power_map};

    #[test]
    fn gl2_power_maps() {
        for p in [2, 3] {
            let r = gl_restricted(2, p);
            let power = matrix_power_map(2, p);
            let total = (p as usize).pow(4);
            for n in 0..total {
                let x: Vec<i64> = (0..4).map(|k| (n / (p as usize).pow(k)) as i64 % p).collect();
                assert_eq!(r.pmap(&x), power(&x), "p={p} x={x:?}");
                assert!(r.axiom1_holds_at(&x));
            }
        }
    }

    #[test]
    fn failures() {
        let g = gl(2, 2);
        assert!(matches!(
            validate_restricted(&g, vec![vec![0; 4]; 4]),
            Err(LieError::Axiom1Fails(..))
        ));
        let a = abelian_lie(3, 2);
        // any p-semilinear map on an abelian ring is restricted
        let r = validate_restricted(&a, vec![vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(r.pmap(&[1, 1]), vec![1, 0]);
        let bad = |v: &[i64]| vec![v[0] * v[0] % 3, 0];
        assert!(matches!(validate_restricted_map(&a, &bad), Err(LieError::Axiom2Fails(0))));
    }

    #[test]
    fn semisimple_examples() {
        let r = gl_restricted(2, 2);
        // E₀₀, E₀₁, E₁₀, E₁₁
        assert!(is_semisimple_element(&r, &[1, 0, 0, 0]).semisimple);
        assert!(!is_semisimple_element(&r, &[0, 1, 0, 0]).semisimple);
        let companion = [0, 1, 1, 1];
        let c = is_semisimple_element(&r, &companion);
        assert!(c.semisimple);
        assert!(c.combination.is_some());
        assert!(is_semisimple_element(&r, &[0, 0, 0, 0]).semisimple);
    }

    #[test]
    fn tori() {
        let r = gl_restricted(2, 3);
        assert!(is_torus(&r, &vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]]).unwrap());
        assert!(!is_torus(&r, &vec![vec![0, 1, 0, 0]]).unwrap());
        assert!(is_torus(&r, &Vec::new()).unwrap());
        assert_eq!(is_torus(&r, &vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]), Err(LieError::NotClosed));
    }
}
