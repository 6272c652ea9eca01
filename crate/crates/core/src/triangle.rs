//! The hyperbolic reflection triangle in the hyperboloid model of the real
//! hyperbolic plane: construction from a (p, q, r) signature, reflection
//! matrices, rotation orders, Gauss–Bonnet area, and arithmeticity lookup
//! against Takeuchi's classification.

use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum TriangleError {
    #[error("signature ({0}, {1}, {2}) is not hyperbolic: 1/p + 1/q + 1/r ≥ 1")]
    NotHyperbolic(u32, u32, u32),
    #[error("signature entries must be ≥ 2")]
    EntryTooSmall,
    #[error("normal vector is not spacelike: Q(n) = {0}")]
    NotSpacelike(f64),
}

/// Quadratic form Q = x² + y² − z² on R^{2,1}.
pub fn lorentz_q(v: &[f64; 3]) -> f64 {
    v[0] * v[0] + v[1] * v[1] - v[2] * v[2]
}

/// Polar form B(u, v) of Q.
pub fn lorentz_b(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}

/// A triangle group signature (p, q, r) with 1/p + 1/q + 1/r < 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleGroupSig {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl TriangleGroupSig {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self, TriangleError> {
        if p < 2 || q < 2 || r < 2 {
            return Err(TriangleError::EntryTooSmall);
        }
        // Hyperbolicity: 1/p + 1/q + 1/r < 1, exactly in rationals.
        let s = Rational64::new(1, p as i64)
            + Rational64::new(1, q as i64)
            + Rational64::new(1, r as i64);
        if s >= Rational64::new(1, 1) {
            return Err(TriangleError::NotHyperbolic(p, q, r));
        }
        Ok(TriangleGroupSig { p, q, r })
    }
}

/// Three spacelike unit normals whose reflection lines bound a triangle with
/// interior angles π/p (between lines 1, 2), π/q (lines 1, 3) and π/r
/// (lines 2, 3).
pub fn triangle_from_angles(sig: TriangleGroupSig) -> Result<[[f64; 3]; 3], TriangleError> {
    let ap = PI / sig.p as f64;
    let aq = PI / sig.q as f64;
    let ar = PI / sig.r as f64;
    let n1 = [1.0, 0.0, 0.0];
    let n2 = [-ap.cos(), ap.sin(), 0.0];
    // Solve B(n1, n3) = −cos aq, B(n2, n3) = −cos ar, Q(n3) = 1.
    let x = -aq.cos();
    let y = -(ar.cos() + ap.cos() * aq.cos()) / ap.sin();
    let z2 = x * x + y * y - 1.0;
    if z2 <= 0.0 {
        // Happens exactly when the angle sum fails to be < π.
        return Err(TriangleError::NotHyperbolic(sig.p, sig.q, sig.r));
    }
    let n3 = [x, y, z2.sqrt()];
    Ok([n1, n2, n3])
}

/// Reflection across the geodesic with spacelike unit normal n:
/// x ↦ x − 2·B(x, n)·n. Preserves Q and squares to the identity.
pub fn reflection_matrix(normal: &[f64; 3]) -> Result<[[f64; 3]; 3], TriangleError> {
    let qn = lorentz_q(normal);
    if (qn - 1.0).abs() > 1e-9 {
        return Err(TriangleError::NotSpacelike(qn));
    }
    let j = [1.0, 1.0, -1.0];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            let delta = if i == k { 1.0 } else { 0.0 };
            m[i][k] = delta - 2.0 * normal[i] * j[k] * normal[k] / qn;
        }
    }
    Ok(m)
}

pub fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn is_identity(m: &[[f64; 3]; 3], tol: f64) -> bool {
    (0..3).all(|i| {
        (0..3).all(|j| {
            let d = if i == j { 1.0 } else { 0.0 };
            (m[i][j] - d).abs() <= tol
        })
    })
}

/// Whether M preserves the Lorentz form within tolerance: MᵗJM = J.
pub fn preserves_q(m: &[[f64; 3]; 3], tol: f64) -> bool {
    let j = [1.0f64, 1.0, -1.0];
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += m[k][a] * j[k] * m[k][b];
            }
            let expect = if a == b { j[a] } else { 0.0 };
            if (acc - expect).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Smallest k ≤ max_order with M^k = identity within tol, if any.
pub fn rotation_order(m: &[[f64; 3]; 3], max_order: u32, tol: f64) -> Option<u32> {
    let mut acc = *m;
    for k in 1..=max_order {
        if is_identity(&acc, tol) {
            return Some(k);
        }
        acc = mat_mul(&acc, m);
    }
    None
}

/// Gauss–Bonnet: area = π − (π/p + π/q + π/r).
pub fn area_gauss_bonnet(sig: TriangleGroupSig) -> f64 {
    PI * (1.0 - 1.0 / sig.p as f64 - 1.0 / sig.q as f64 - 1.0 / sig.r as f64)
}

/// Orbifold Euler characteristic −area/(2π) as an exact rational:
/// −(1 − 1/p − 1/q − 1/r)/2.
pub fn orbifold_euler(sig: TriangleGroupSig) -> Rational64 {
    let s = Rational64::new(1, 1)
        - Rational64::new(1, sig.p as i64)
        - Rational64::new(1, sig.q as i64)
        - Rational64::new(1, sig.r as i64);
    -s / 2
}

/// Takeuchi's classification (J. Math. Soc. Japan 29, 1977) of arithmetic
/// hyperbolic triangle groups: the 76 compact signatures, stored as sorted
/// triples.
const TAKEUCHI_COMPACT: [(u32, u32, u32); 76] = [
    (2, 3, 7),
    (2, 3, 8),
    (2, 3, 9),
    (2, 3, 10),
    (2, 3, 11),
    (2, 3, 12),
    (2, 3, 14),
    (2, 3, 16),
    (2, 3, 18),
    (2, 3, 24),
    (2, 3, 30),
    (2, 4, 5),
    (2, 4, 6),
    (2, 4, 7),
    (2, 4, 8),
    (2, 4, 10),
    (2, 4, 12),
    (2, 4, 18),
    (2, 5, 5),
    (2, 5, 6),
    (2, 5, 8),
    (2, 5, 10),
    (2, 5, 20),
    (2, 5, 30),
    (2, 6, 6),
    (2, 6, 8),
    (2, 6, 12),
    (2, 7, 7),
    (2, 7, 14),
    (2, 8, 8),
    (2, 8, 16),
    (2, 9, 18),
    (2, 10, 10),
    (2, 12, 12),
    (2, 12, 24),
    (2, 15, 30),
    (2, 18, 18),
    (3, 3, 4),
    (3, 3, 5),
    (3, 3, 6),
    (3, 3, 7),
    (3, 3, 8),
    (3, 3, 9),
    (3, 3, 12),
    (3, 3, 15),
    (3, 4, 4),
    (3, 4, 6),
    (3, 4, 12),
    (3, 5, 5),
    (3, 6, 6),
    (3, 6, 18),
    (3, 8, 8),
    (3, 8, 24),
    (3, 10, 30),
    (3, 12, 12),
    (4, 4, 4),
    (4, 4, 5),
    (4, 4, 6),
    (4, 4, 9),
    (4, 5, 5),
    (4, 6, 6),
    (4, 8, 8),
    (4, 16, 16),
    (5, 5, 5),
    (5, 5, 10),
    (5, 5, 15),
    (5, 10, 10),
    (6, 6, 6),
    (6, 12, 12),
    (6, 24, 24),
    (7, 7, 7),
    (8, 8, 8),
    (9, 9, 9),
    (9, 18, 18),
    (12, 12, 12),
    (15, 15, 15),
];

/// Membership in Takeuchi's list, up to reordering the signature.
pub fn is_arithmetic(sig: TriangleGroupSig) -> bool {
    let mut t = [sig.p, sig.q, sig.r];
    t.sort_unstable();
    TAKEUCHI_COMPACT.contains(&(t[0], t[1], t[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn signature_validation() {
        assert!(TriangleGroupSig::new(3, 5, 10).is_ok());
        assert!(TriangleGroupSig::new(2, 3, 7).is_ok());
        assert_eq!(
            TriangleGroupSig::new(2, 3, 6),
            Err(TriangleError::NotHyperbolic(2, 3, 6))
        );
        assert_eq!(TriangleGroupSig::new(1, 5, 10), Err(TriangleError::EntryTooSmall));
    }

    #[test]
    fn normals_realize_the_angles() {
        for (p, q, r) in [(3u32, 5u32, 10u32), (2, 3, 7), (4, 4, 5)] {
            let sig = TriangleGroupSig::new(p, q, r).unwrap();
            let ns = triangle_from_angles(sig).unwrap();
            for n in &ns {
                assert!((lorentz_q(n) - 1.0).abs() < TOL);
            }
            let check = |a: &[f64; 3], b: &[f64; 3], order: u32| {
                let cosang = -lorentz_b(a, b);
                assert!((cosang - (PI / order as f64).cos()).abs() < TOL);
            };
            check(&ns[0], &ns[1], p);
            check(&ns[0], &ns[2], q);
            check(&ns[1], &ns[2], r);
        }
    }

    #[test]
    fn reflections_behave() {
        let n = [1.0, 0.0, 0.0];
        let m = reflection_matrix(&n).unwrap();
        assert_eq!(m[0][0], -1.0);
        assert_eq!(m[1][1], 1.0);
        assert_eq!(m[2][2], 1.0);
        let sig = TriangleGroupSig::new(3, 5, 10).unwrap();
        let ns = triangle_from_angles(sig).unwrap();
        for nv in &ns {
            let r = reflection_matrix(nv).unwrap();
            assert!(is_identity(&mat_mul(&r, &r), TOL));
            assert!(preserves_q(&r, TOL));
        }
        assert!(reflection_matrix(&[0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn composite_orders_match_presentation() {
        let sig = TriangleGroupSig::new(3, 5, 10).unwrap();
        let ns = triangle_from_angles(sig).unwrap();
        let r1 = reflection_matrix(&ns[0]).unwrap();
        let r2 = reflection_matrix(&ns[1]).unwrap();
        let r3 = reflection_matrix(&ns[2]).unwrap();
        assert_eq!(rotation_order(&mat_mul(&r1, &r2), 64, 1e-9), Some(3));
        assert_eq!(rotation_order(&mat_mul(&r1, &r3), 64, 1e-9), Some(5));
        assert_eq!(rotation_order(&mat_mul(&r2, &r3), 64, 1e-9), Some(10));
        assert_eq!(rotation_order(&mat_mul(&r1, &r1), 64, 1e-9), Some(1));
    }

    #[test]
    fn area_and_euler() {
        let sig = TriangleGroupSig::new(3, 5, 10).unwrap();
        // π(1 − (10 + 6 + 3)/30) = 11π/30.
        assert!((area_gauss_bonnet(sig) - 11.0 * PI / 30.0).abs() < 1e-15);
        assert_eq!(orbifold_euler(sig), Rational64::new(-11, 60));
        let s237 = TriangleGroupSig::new(2, 3, 7).unwrap();
        assert!((area_gauss_bonnet(s237) - PI / 42.0).abs() < 1e-15);
        // Positivity on hyperbolic signatures.
        for (p, q, r) in [(2u32, 3u32, 7u32), (3, 5, 10), (7, 7, 7)] {
            assert!(area_gauss_bonnet(TriangleGroupSig::new(p, q, r).unwrap()) > 0.0);
        }
    }

    #[test]
    fn arithmeticity_table() {
        let arith = |p, q, r| is_arithmetic(TriangleGroupSig::new(p, q, r).unwrap());
        assert!(!arith(3, 5, 10));
        assert!(arith(2, 3, 7));
        assert!(arith(5, 5, 5));
        assert!(arith(2, 4, 5));
        // Reordering does not matter.
        assert!(arith(7, 2, 3));
        // A couple of non-arithmetic hyperbolic signatures.
        assert!(!arith(2, 3, 13));
        assert!(!arith(4, 5, 6));
    }
}
