//! Real binary quintics as conjugation-stable five-point multisets on the
//! projective line, with stability classification and real Möbius
//! stabilizers.
//!
//! Points are projective pairs over high-precision complex rationals, so
//! Möbius solving never divides by zero and the infinite point needs no
//! special casing. Arithmetic is exact rational with rounding to a fixed
//! number of digits after solves and compositions; comparisons use a
//! tolerance far above the rounding noise.

use crate::linalg::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Working precision (decimal digits kept after rounding).
pub const PRECISION_DIGITS: u32 = 50;

/// Comparison tolerance for realness and point-matching tests.
pub fn default_tolerance() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10).pow(30))
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum QuinticError {
    #[error("expected exactly five points, got {0}")]
    NotFivePoints(usize),
    #[error("configuration is not closed under complex conjugation")]
    NotConjugationClosed,
    #[error("a point has multiplicity {0} ≥ 3: configuration is unstable")]
    Unstable(usize),
    #[error("operation requires a smooth configuration")]
    NotSmooth,
    #[error("möbius solve degenerated (repeated points in a triple)")]
    DegenerateSolve,
}

fn round_digits(x: &Rat, digits: u32) -> Rat {
    let scale = BigInt::from(10).pow(digits);
    let scaled = x * Rat::from_integer(scale.clone());
    Rat::new(scaled.round().to_integer(), scale)
}

/// Complex number with exact rational parts.
#[derive(Clone, PartialEq, Eq)]
pub struct CpxRat {
    pub re: Rat,
    pub im: Rat,
}

impl std::fmt::Debug for CpxRat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}+{}i)", self.re, self.im)
    }
}

impl CpxRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CpxRat { re, im }
    }

    pub fn zero() -> Self {
        CpxRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        CpxRat::new(Rat::one(), Rat::zero())
    }

    pub fn from_i64(n: i64) -> Self {
        CpxRat::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn i() -> Self {
        CpxRat::new(Rat::zero(), Rat::one())
    }

    pub fn conj(&self) -> CpxRat {
        CpxRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, rhs: &CpxRat) -> CpxRat {
        CpxRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    pub fn sub(&self, rhs: &CpxRat) -> CpxRat {
        CpxRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    pub fn mul(&self, rhs: &CpxRat) -> CpxRat {
        CpxRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    pub fn neg(&self) -> CpxRat {
        CpxRat::new(-self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn round(&self, digits: u32) -> CpxRat {
        CpxRat::new(round_digits(&self.re, digits), round_digits(&self.im, digits))
    }
}

/// √n to the working precision, as a rational (integer Newton iteration on
/// the scaled radicand).
pub fn sqrt_rat(n: u64, digits: u32) -> Rat {
    let scale = BigInt::from(10).pow(digits);
    let target = BigInt::from(n) * &scale * &scale;
    // Newton for integer square root.
    let mut x = BigInt::from(n) * &scale; // safe overestimate for n ≥ 1
    loop {
        let next = (&x + &target / &x) / BigInt::from(2);
        if next >= x {
            break;
        }
        x = next;
    }
    Rat::new(x, scale)
}

/// A point of the projective line as a pair [a : b]; b ≈ 0 is the point at
/// infinity.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    pub a: CpxRat,
    pub b: CpxRat,
}

impl ProjPoint {
    pub fn finite(z: CpxRat) -> Self {
        ProjPoint { a: z, b: CpxRat::one() }
    }

    pub fn finite_real(x: Rat) -> Self {
        ProjPoint::finite(CpxRat::new(x, Rat::zero()))
    }

    pub fn infinity() -> Self {
        ProjPoint { a: CpxRat::one(), b: CpxRat::zero() }
    }

    pub fn conj(&self) -> ProjPoint {
        ProjPoint { a: self.a.conj(), b: self.b.conj() }
    }

    /// Projective (chordal-squared) equality test: |a·d − b·c|² against
    /// tol²·(|a|²+|b|²)(|c|²+|d|²).
    pub fn approx_eq(&self, other: &ProjPoint, tol: &Rat) -> bool {
        let cross = self.a.mul(&other.b).sub(&self.b.mul(&other.a));
        let lhs = cross.norm_sq();
        let rhs = tol * tol * (self.a.norm_sq() + self.b.norm_sq())
            * (other.a.norm_sq() + other.b.norm_sq());
        lhs <= rhs
    }

    pub fn is_real(&self, tol: &Rat) -> bool {
        self.approx_eq(&self.conj(), tol)
    }

    /// Deterministic sort key for canonical ordering.
    fn sort_key(&self) -> (u8, Rat, Rat) {
        if self.b.norm_sq().is_zero() {
            return (1, Rat::zero(), Rat::zero());
        }
        // Affine representative a/b.
        let d = self.b.norm_sq();
        let z = self.a.mul(&self.b.conj());
        (0, &z.re / &d, &z.im / &d)
    }
}

/// A stable, conjugation-closed five-point multiset.
#[derive(Clone, Debug)]
pub struct QuinticConfig {
    pub points: Vec<ProjPoint>,
    /// Distinct support points (canonically ordered) with multiplicities.
    pub support: Vec<(ProjPoint, usize)>,
    pub tol: Rat,
}

/// Shape summary produced by validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigShape {
    pub smooth: bool,
    /// Pairs of complex-conjugate double points.
    pub conj_node_pairs: usize,
    /// Real double points.
    pub real_nodes: usize,
}

impl QuinticConfig {
    /// Checks conjugation closure and stability (multiplicity ≤ 2).
    pub fn validate(points: Vec<ProjPoint>, tol: &Rat) -> Result<(QuinticConfig, ConfigShape), QuinticError> {
        if points.len() != 5 {
            return Err(QuinticError::NotFivePoints(points.len()));
        }
        // Conjugation closure as a multiset: greedy matching.
        let mut used = [false; 5];
        for p in &points {
            let pc = p.conj();
            let hit = (0..5).find(|&j| !used[j] && points[j].approx_eq(&pc, tol));
            match hit {
                Some(j) => used[j] = true,
                None => return Err(QuinticError::NotConjugationClosed),
            }
        }
        // Support with multiplicities.
        let mut support: Vec<(ProjPoint, usize)> = vec![];
        for p in &points {
            match support.iter_mut().find(|(q, _)| q.approx_eq(p, tol)) {
                Some((_, m)) => *m += 1,
                None => support.push((p.clone(), 1)),
            }
        }
        for (_, m) in &support {
            if *m >= 3 {
                return Err(QuinticError::Unstable(*m));
            }
        }
        support.sort_by(|(p, _), (q, _)| {
            let (ka, kb, kc) = p.sort_key();
            let (la, lb, lc) = q.sort_key();
            (ka, kb, kc).partial_cmp(&(la, lb, lc)).unwrap()
        });
        let smooth = support.iter().all(|(_, m)| *m == 1);
        let mut real_nodes = 0;
        let mut complex_nodes = 0;
        for (p, m) in &support {
            if *m == 2 {
                if p.is_real(tol) {
                    real_nodes += 1;
                } else {
                    complex_nodes += 1;
                }
            }
        }
        debug_assert_eq!(complex_nodes % 2, 0);
        let shape = ConfigShape { smooth, conj_node_pairs: complex_nodes / 2, real_nodes };
        Ok((QuinticConfig { points, support, tol: tol.clone() }, shape))
    }

    /// Number of complex-conjugate pairs of a smooth configuration
    /// (the component index 0, 1 or 2).
    pub fn component_index(&self) -> Result<usize, QuinticError> {
        if self.support.iter().any(|(_, m)| *m > 1) {
            return Err(QuinticError::NotSmooth);
        }
        let complex = self.points.iter().filter(|p| !p.is_real(&self.tol)).count();
        debug_assert_eq!(complex % 2, 0);
        Ok(complex / 2)
    }

    /// Applies a projective transformation to every point.
    pub fn transform(&self, m: &[[CpxRat; 2]; 2]) -> QuinticConfig {
        let pts = self
            .points
            .iter()
            .map(|p| ProjPoint {
                a: m[0][0].mul(&p.a).add(&m[0][1].mul(&p.b)).round(PRECISION_DIGITS),
                b: m[1][0].mul(&p.a).add(&m[1][1].mul(&p.b)).round(PRECISION_DIGITS),
            })
            .collect();
        let tol = self.tol.clone();
        QuinticConfig::validate(pts, &tol).expect("transforms preserve validity").0
    }
}

/// A real projective transformation, normalized so the entry of largest
/// magnitude is 1 and the first nonzero entry is positive.
#[derive(Clone, Debug)]
pub struct RealMoebius {
    pub m: [[Rat; 2]; 2],
}

impl RealMoebius {
    pub fn identity() -> Self {
        RealMoebius {
            m: [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]],
        }
    }

    fn normalize(mut m: [[Rat; 2]; 2]) -> RealMoebius {
        // Scale by the entry of largest absolute value.
        let mut best = Rat::zero();
        for r in &m {
            for e in r {
                let a = e.abs();
                if a > best {
                    best = a;
                }
            }
        }
        assert!(!best.is_zero(), "zero matrix is not a Möbius transformation");
        for r in m.iter_mut() {
            for e in r.iter_mut() {
                *e = round_digits(&(&*e / &best), PRECISION_DIGITS);
            }
        }
        // Sign convention: first nonzero entry positive.
        let first = m
            .iter()
            .flatten()
            .find(|e| !e.is_zero())
            .expect("nonzero matrix")
            .clone();
        if first.is_negative() {
            for r in m.iter_mut() {
                for e in r.iter_mut() {
                    *e = -e.clone();
                }
            }
        }
        RealMoebius { m }
    }

    pub fn approx_eq(&self, other: &RealMoebius, tol: &Rat) -> bool {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .all(|(a, b)| (a - b).abs() <= *tol)
    }

    pub fn compose(&self, rhs: &RealMoebius) -> RealMoebius {
        let mut out = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Rat::zero();
                for k in 0..2 {
                    acc += &self.m[i][k] * &rhs.m[k][j];
                }
                out[i][j] = acc;
            }
        }
        RealMoebius::normalize(out)
    }

    pub fn inverse(&self) -> RealMoebius {
        let adj = [
            [self.m[1][1].clone(), -self.m[0][1].clone()],
            [-self.m[1][0].clone(), self.m[0][0].clone()],
        ];
        RealMoebius::normalize(adj)
    }

    pub fn is_identity(&self, tol: &Rat) -> bool {
        self.approx_eq(&RealMoebius::identity(), tol)
    }

    /// Order in PGL₂(R), up to `cap`.
    pub fn order(&self, cap: u32, tol: &Rat) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity(tol) {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    pub fn to_complex(&self) -> [[CpxRat; 2]; 2] {
        [
            [
                CpxRat::new(self.m[0][0].clone(), Rat::zero()),
                CpxRat::new(self.m[0][1].clone(), Rat::zero()),
            ],
            [
                CpxRat::new(self.m[1][0].clone(), Rat::zero()),
                CpxRat::new(self.m[1][1].clone(), Rat::zero()),
            ],
        ]
    }
}

/// Isomorphism label of a stabilizer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabLabel {
    Trivial,
    Z2,
    D3,
    D5,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct StabGroup {
    pub elements: Vec<RealMoebius>,
    pub label: StabLabel,
    pub element_orders: Vec<u32>,
}

impl StabGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The unique projective map sending three distinct points to (0, 1, ∞),
/// as a 2×2 complex matrix.
fn to_standard_triple(p: [&ProjPoint; 3]) -> [[CpxRat; 2]; 2] {
    let (p1, p2, p3) = (p[0], p[1], p[2]);
    // f([a:b]) = [(a·b1 − a1·b)(a2·b3 − a3·b2) : (a·b3 − a3·b)(a2·b1 − a1·b2)].
    let d23 = p2.a.mul(&p3.b).sub(&p3.a.mul(&p2.b)); // (a2 b3 − a3 b2)
    let d21 = p2.a.mul(&p1.b).sub(&p1.a.mul(&p2.b)); // (a2 b1 − a1 b2)
    [
        [p1.b.mul(&d23), p1.a.mul(&d23).neg()],
        [p3.b.mul(&d21), p3.a.mul(&d21).neg()],
    ]
}

fn cpx_mat_mul(a: &[[CpxRat; 2]; 2], b: &[[CpxRat; 2]; 2]) -> [[CpxRat; 2]; 2] {
    let mut out = [
        [CpxRat::zero(), CpxRat::zero()],
        [CpxRat::zero(), CpxRat::zero()],
    ];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = CpxRat::zero();
            for k in 0..2 {
                acc = acc.add(&a[i][k].mul(&b[k][j]));
            }
            out[i][j] = acc.round(PRECISION_DIGITS + 20);
        }
    }
    out
}

fn cpx_adjugate(m: &[[CpxRat; 2]; 2]) -> [[CpxRat; 2]; 2] {
    [
        [m[1][1].clone(), m[0][1].neg()],
        [m[1][0].neg(), m[0][0].clone()],
    ]
}

/// Extracts a real representative of a complex matrix that is a complex
/// scalar times a real matrix; None when it is not.
fn real_representative(m: &[[CpxRat; 2]; 2], tol: &Rat) -> Option<RealMoebius> {
    // Divide by the entry of largest magnitude.
    let mut best: Option<(usize, usize)> = None;
    let mut best_val = Rat::zero();
    for i in 0..2 {
        for j in 0..2 {
            let n = m[i][j].norm_sq();
            if n > best_val {
                best_val = n;
                best = Some((i, j));
            }
        }
    }
    let (bi, bj) = best?;
    if best_val.is_zero() {
        return None;
    }
    let pivot = m[bi][bj].clone();
    let pivot_conj = pivot.conj();
    let denom = pivot.norm_sq();
    let mut out = [[Rat::zero(), Rat::zero()], [Rat::zero(), Rat::zero()]];
    for i in 0..2 {
        for j in 0..2 {
            let q = m[i][j].mul(&pivot_conj);
            let re = &q.re / &denom;
            let im = &q.im / &denom;
            if im.abs() > *tol {
                return None;
            }
            out[i][j] = round_digits(&re, PRECISION_DIGITS);
        }
    }
    Some(RealMoebius::normalize(out))
}

/// Whether the transformation permutes the configuration's multiset.
fn preserves_multiset(c: &QuinticConfig, g: &RealMoebius) -> bool {
    let gm = g.to_complex();
    let images: Vec<ProjPoint> = c
        .points
        .iter()
        .map(|p| ProjPoint {
            a: gm[0][0].mul(&p.a).add(&gm[0][1].mul(&p.b)),
            b: gm[1][0].mul(&p.a).add(&gm[1][1].mul(&p.b)),
        })
        .collect();
    let mut used = [false; 5];
    for img in &images {
        let hit = (0..5).find(|&j| !used[j] && c.points[j].approx_eq(img, &c.tol));
        match hit {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Computes the stabilizer of the configuration inside PGL₂(R) by solving
/// the Möbius transformation through every multiplicity-compatible ordered
/// triple of support points and keeping the real multiset-preserving ones.
pub fn stabilizer(c: &QuinticConfig) -> Result<StabGroup, QuinticError> {
    let supp = &c.support;
    if supp.len() < 3 {
        // Cannot happen for stable quintics: at most two double points
        // would cover only four of five points.
        return Err(QuinticError::DegenerateSolve);
    }
    let domain = [&supp[0].0, &supp[1].0, &supp[2].0];
    let mults = [supp[0].1, supp[1].1, supp[2].1];
    let z = to_standard_triple(domain);
    let mut elements: Vec<RealMoebius> = vec![];
    let n = supp.len();
    for t1 in 0..n {
        for t2 in 0..n {
            for t3 in 0..n {
                if t1 == t2 || t1 == t3 || t2 == t3 {
                    continue;
                }
                if supp[t1].1 != mults[0] || supp[t2].1 != mults[1] || supp[t3].1 != mults[2] {
                    continue;
                }
                let w = to_standard_triple([&supp[t1].0, &supp[t2].0, &supp[t3].0]);
                let cand = cpx_mat_mul(&cpx_adjugate(&w), &z);
                let Some(real) = real_representative(&cand, &c.tol) else {
                    continue;
                };
                if !preserves_multiset(c, &real) {
                    continue;
                }
                if !elements.iter().any(|e| e.approx_eq(&real, &c.tol)) {
                    elements.push(real);
                }
            }
        }
    }
    let element_orders: Vec<u32> = elements
        .iter()
        .map(|e| e.order(24, &c.tol).unwrap_or(0))
        .collect();
    let label = match elements.len() {
        1 => StabLabel::Trivial,
        2 => StabLabel::Z2,
        6 => StabLabel::D3,
        10 => StabLabel::D5,
        _ => StabLabel::Unknown,
    };
    Ok(StabGroup { elements, label, element_orders })
}

/// Report of an order-four absence scan over sample configurations.
#[derive(Clone, Debug, Serialize)]
pub struct Order4Report {
    pub samples: usize,
    pub stabilizer_orders_seen: Vec<usize>,
    pub order4_elements_found: usize,
}

pub fn order4_absence_check(samples: &[QuinticConfig]) -> Result<Order4Report, QuinticError> {
    let mut orders = vec![];
    let mut bad = 0;
    for c in samples {
        let g = stabilizer(c)?;
        orders.push(g.order());
        bad += g.element_orders.iter().filter(|&&o| o == 4).count();
    }
    orders.sort_unstable();
    orders.dedup();
    Ok(Order4Report {
        samples: samples.len(),
        stabilizer_orders_seen: orders,
        order4_elements_found: bad,
    })
}

/// ω = (−1 + i√3)/2, a primitive cube root of unity at working precision.
pub fn omega() -> CpxRat {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let s3 = sqrt_rat(3, PRECISION_DIGITS);
    CpxRat::new(-half.clone(), &s3 * &half)
}

/// λ = ζ₅ + ζ₅⁻¹ = (√5 − 1)/2 at working precision.
pub fn lambda() -> Rat {
    let s5 = sqrt_rat(5, PRECISION_DIGITS);
    (&s5 - Rat::one()) / Rat::from_integer(BigInt::from(2))
}

/// The D₃ normal form (−1, ∞, 0, ω, ω̄).
pub fn d3_normal_form(tol: &Rat) -> QuinticConfig {
    let w = omega();
    let pts = vec![
        ProjPoint::finite(CpxRat::from_i64(-1)),
        ProjPoint::infinity(),
        ProjPoint::finite(CpxRat::zero()),
        ProjPoint::finite(w.clone()),
        ProjPoint::finite(w.conj()),
    ];
    QuinticConfig::validate(pts, tol).expect("normal form is valid").0
}

/// The D₅ normal form (0, −1, ∞, λ+1, λ).
pub fn d5_normal_form(tol: &Rat) -> QuinticConfig {
    let l = lambda();
    let pts = vec![
        ProjPoint::finite(CpxRat::zero()),
        ProjPoint::finite(CpxRat::from_i64(-1)),
        ProjPoint::infinity(),
        ProjPoint::finite(CpxRat::new(&l + Rat::one(), Rat::zero())),
        ProjPoint::finite(CpxRat::new(l, Rat::zero())),
    ];
    QuinticConfig::validate(pts, tol).expect("normal form is valid").0
}

/// The two-node configuration (∞, i, i, −i, −i).
pub fn z2_node_form(tol: &Rat) -> QuinticConfig {
    let pts = vec![
        ProjPoint::infinity(),
        ProjPoint::finite(CpxRat::i()),
        ProjPoint::finite(CpxRat::i()),
        ProjPoint::finite(CpxRat::i().neg()),
        ProjPoint::finite(CpxRat::i().neg()),
    ];
    QuinticConfig::validate(pts, tol).expect("node form is valid").0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Rat {
        default_tolerance()
    }

    fn smooth_example() -> QuinticConfig {
        let pts = vec![
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::one()),
            ProjPoint::infinity(),
            ProjPoint::finite(CpxRat::i()),
            ProjPoint::finite(CpxRat::i().neg()),
        ];
        QuinticConfig::validate(pts, &tol()).unwrap().0
    }

    #[test]
    fn validation() {
        let (_, shape) = QuinticConfig::validate(smooth_example().points, &tol()).unwrap();
        assert_eq!(shape, ConfigShape { smooth: true, conj_node_pairs: 0, real_nodes: 0 });

        let (_, shape) = QuinticConfig::validate(z2_node_form(&tol()).points, &tol()).unwrap();
        assert_eq!(shape, ConfigShape { smooth: false, conj_node_pairs: 1, real_nodes: 0 });

        // Multiplicity three is unstable.
        let bad = vec![
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::one()),
            ProjPoint::infinity(),
        ];
        assert_eq!(
            QuinticConfig::validate(bad, &tol()).unwrap_err(),
            QuinticError::Unstable(3)
        );

        // Not conjugation closed.
        let open = vec![
            ProjPoint::finite(CpxRat::i()),
            ProjPoint::finite(CpxRat::one()),
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::from_i64(2)),
            ProjPoint::infinity(),
        ];
        assert_eq!(
            QuinticConfig::validate(open, &tol()).unwrap_err(),
            QuinticError::NotConjugationClosed
        );
    }

    #[test]
    fn component_indices() {
        let reals = vec![
            ProjPoint::finite_real(Rat::from_integer(BigInt::from(-2))),
            ProjPoint::finite_real(Rat::from_integer(BigInt::from(-1))),
            ProjPoint::finite_real(Rat::zero()),
            ProjPoint::finite_real(Rat::one()),
            ProjPoint::finite_real(Rat::from_integer(BigInt::from(2))),
        ];
        let c = QuinticConfig::validate(reals, &tol()).unwrap().0;
        assert_eq!(c.component_index().unwrap(), 0);
        assert_eq!(smooth_example().component_index().unwrap(), 1);
        let two_pairs = vec![
            ProjPoint::finite(CpxRat::zero()),
            ProjPoint::finite(CpxRat::i()),
            ProjPoint::finite(CpxRat::i().neg()),
            ProjPoint::finite(CpxRat::new(Rat::one(), Rat::one())),
            ProjPoint::finite(CpxRat::new(Rat::one(), -Rat::one())),
        ];
        let c2 = QuinticConfig::validate(two_pairs, &tol()).unwrap().0;
        assert_eq!(c2.component_index().unwrap(), 2);
        assert!(z2_node_form(&tol()).component_index().is_err());
    }

    #[test]
    fn lambda_sanity_gate() {
        // λ(λ + 1) = 1 up to the working precision.
        let l = lambda();
        let err = (&l * (&l + Rat::one()) - Rat::one()).abs();
        assert!(err <= tol());
    }

    #[test]
    fn d3_stabilizer() {
        let c = d3_normal_form(&tol());
        let g = stabilizer(&c).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label, StabLabel::D3);
        let mut orders = g.element_orders.clone();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        // The published generators ρ(z) = −1/(z+1) and ν(z) = 1/z are in
        // the group.
        let rho = RealMoebius::normalize([
            [Rat::zero(), -Rat::one()],
            [Rat::one(), Rat::one()],
        ]);
        let nu = RealMoebius::normalize([
            [Rat::zero(), Rat::one()],
            [Rat::one(), Rat::zero()],
        ]);
        assert!(g.elements.iter().any(|e| e.approx_eq(&rho, &tol())));
        assert!(g.elements.iter().any(|e| e.approx_eq(&nu, &tol())));
        assert!(preserves_multiset(&c, &rho));
        assert!(preserves_multiset(&c, &nu));
    }

    #[test]
    fn d5_stabilizer() {
        let c = d5_normal_form(&tol());
        let g = stabilizer(&c).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.label, StabLabel::D5);
        let mut orders = g.element_orders.clone();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 5, 5, 5, 5]);
        // γ(z) = ((λ+1)z − 1)/(z + 1) and ν(z) = 1/z generate; both must
        // appear.
        let l = lambda();
        let gamma = RealMoebius::normalize([
            [&l + Rat::one(), -Rat::one()],
            [Rat::one(), Rat::one()],
        ]);
        let nu = RealMoebius::normalize([
            [Rat::zero(), Rat::one()],
            [Rat::one(), Rat::zero()],
        ]);
        assert!(g.elements.iter().any(|e| e.approx_eq(&gamma, &tol())));
        assert!(g.elements.iter().any(|e| e.approx_eq(&nu, &tol())));
    }

    #[test]
    fn z2_stabilizer_of_node_form() {
        let c = z2_node_form(&tol());
        let g = stabilizer(&c).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.label, StabLabel::Z2);
    }

    #[test]
    fn stabilizer_closure_and_conjugation() {
        let c = d3_normal_form(&tol());
        let g = stabilizer(&c).unwrap();
        // Closure under composition and inverse.
        for a in &g.elements {
            let inv = a.inverse();
            assert!(g.elements.iter().any(|e| e.approx_eq(&inv, &tol())));
            for b in &g.elements {
                let ab = a.compose(b);
                assert!(g.elements.iter().any(|e| e.approx_eq(&ab, &tol())));
            }
        }
        // Transport: the stabilizer of h·c is h·Stab(c)·h⁻¹.
        let h = RealMoebius::normalize([
            [Rat::from_integer(BigInt::from(2)), Rat::one()],
            [Rat::one(), Rat::one()],
        ]);
        let hc = c.transform(&h.to_complex());
        let gh = stabilizer(&hc).unwrap();
        assert_eq!(gh.order(), 6);
        let hinv = h.inverse();
        for e in &g.elements {
            let te = h.compose(e).compose(&hinv);
            assert!(gh.elements.iter().any(|x| x.approx_eq(&te, &tol())));
        }
        // Component index is invariant.
        let sm = smooth_example();
        let tsm = sm.transform(&h.to_complex());
        assert_eq!(
            sm.component_index().unwrap(),
            tsm.component_index().unwrap()
        );
    }

    #[test]
    fn generic_real_points_have_trivial_stabilizer() {
        let reals = [0i64, 1, 3, 7, 19];
        let pts = reals
            .iter()
            .map(|&x| ProjPoint::finite_real(Rat::from_integer(BigInt::from(x))))
            .collect();
        let c = QuinticConfig::validate(pts, &tol()).unwrap().0;
        let g = stabilizer(&c).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.label, StabLabel::Trivial);
    }

    #[test]
    fn no_order_four_in_examples() {
        let samples = vec![d3_normal_form(&tol()), d5_normal_form(&tol()), z2_node_form(&tol())];
        let report = order4_absence_check(&samples).unwrap();
        assert_eq!(report.order4_elements_found, 0);
        assert_eq!(report.stabilizer_orders_seen, vec![2, 6, 10]);
    }

    #[test]
    fn sqrt_precision() {
        let s2 = sqrt_rat(2, 50);
        let err = (&s2 * &s2 - Rat::from_integer(BigInt::from(2))).abs();
        assert!(err < Rat::new(BigInt::one(), BigInt::from(10).pow(48)));
    }
}
