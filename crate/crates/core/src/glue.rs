//! Combinatorial local models at a point with nodes: counting the
//! involutions equivalent at the point, the copies of the real ball meeting
//! there with their pairwise intersection dimensions, the involution
//! criterion for reflection-twisted real structures, and canonical rotation
//! representatives modulo m-th roots of unity.

use serde::Serialize;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum GlueError {
    #[error("invalid node datum: need 2a + b ≤ n, got a = {a}, b = {b}, n = {n}")]
    TooManyNodes { a: usize, b: usize, n: usize },
    #[error("reflection order must be ≥ 2, got {0}")]
    BadOrder(usize),
    #[error("t^m is not real (|Im t^m| = {0:e} exceeds tolerance {1:e})")]
    PowerNotReal(f64, f64),
    #[error("exponent vector length {0} does not match node count {1}")]
    BadExponentLength(usize, usize),
}

/// Local data at a glued point: reflection order m, a pairs of complex
/// conjugate nodes, b real nodes, ambient ball dimension n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NodeDatum {
    pub m: usize,
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl NodeDatum {
    pub fn new(m: usize, a: usize, b: usize, n: usize) -> Result<Self, GlueError> {
        if m < 2 {
            return Err(GlueError::BadOrder(m));
        }
        if 2 * a + b > n {
            return Err(GlueError::TooManyNodes { a, b, n });
        }
        Ok(NodeDatum { m, a, b, n })
    }

    /// Total node count k = 2a + b.
    pub fn k(&self) -> usize {
        2 * self.a + self.b
    }

    /// Size of the local reflection group (Z/m)^k at the point.
    pub fn node_group_order(&self) -> u128 {
        (self.m as u128).pow(self.k() as u32)
    }
}

/// Number of anti-unitary involutions fixing the point and equivalent to a
/// given one there: m^(a+b).
pub fn count_equivalent_involutions(d: &NodeDatum) -> u128 {
    (d.m as u128).pow((d.a + d.b) as u32)
}

/// Label of one real-ball copy in the local model: a vector in (Z/m)^a.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopyLabel {
    pub j: Vec<usize>,
}

/// The copies of B^n(R) in the local model and their pairwise intersection
/// dimensions: labels j, j′ meet along a B^{2c}(R) with c = #{i : j_i = j′_i}
/// (2a when j = j′, i.e. the full fixed locus of the label).
#[derive(Debug, Clone, Serialize)]
pub struct CopiesReport {
    pub node_datum: NodeDatum,
    pub copies: Vec<CopyLabel>,
    /// intersection_dim[p][q] = real dimension of copy p ∩ copy q within
    /// the 2a coordinates carrying the conjugate node pairs.
    pub intersection_dim: Vec<Vec<usize>>,
}

pub fn copies_and_intersections(d: &NodeDatum) -> CopiesReport {
    let count = (d.m as u128).pow(d.a as u32) as usize;
    let mut copies = Vec::with_capacity(count);
    for idx in 0..count {
        let mut j = Vec::with_capacity(d.a);
        let mut rem = idx;
        for _ in 0..d.a {
            j.push(rem % d.m);
            rem /= d.m;
        }
        copies.push(CopyLabel { j });
    }
    let dim = |p: &CopyLabel, q: &CopyLabel| -> usize {
        let c = p.j.iter().zip(&q.j).filter(|(x, y)| x == y).count();
        2 * c
    };
    let intersection_dim = copies
        .iter()
        .map(|p| copies.iter().map(|q| dim(p, q)).collect())
        .collect();
    CopiesReport { node_datum: *d, copies, intersection_dim }
}

/// Exponent data for a product of node reflections composed with the
/// involution: exponents i_v ∈ Z/m per node, and the induced involution on
/// node indices (swapping 2v−1 ↔ 2v within each conjugate pair, fixing the
/// real nodes).
#[derive(Debug, Clone)]
pub struct ExponentAssignment {
    pub d: NodeDatum,
    pub exponents: Vec<usize>,
}

impl ExponentAssignment {
    pub fn new(d: NodeDatum, exponents: Vec<usize>) -> Result<Self, GlueError> {
        if exponents.len() != d.k() {
            return Err(GlueError::BadExponentLength(exponents.len(), d.k()));
        }
        Ok(ExponentAssignment { d, exponents })
    }

    /// The node involution: 0-indexed pairs (2v, 2v+1) swap for v < a,
    /// indices ≥ 2a are fixed.
    pub fn node_involution(&self, v: usize) -> usize {
        if v < 2 * self.d.a {
            v ^ 1
        } else {
            v
        }
    }
}

/// Whether g∘α is an involution: i_v ≡ i_{α(v)} (mod m) for every node v.
pub fn involution_criterion(e: &ExponentAssignment) -> bool {
    (0..e.exponents.len())
        .all(|v| e.exponents[v] % e.d.m == e.exponents[e.node_involution(v)] % e.d.m)
}

/// Semilinear local model of g∘α in ball coordinates: coordinate v is sent
/// to ζ^{exp} · conj(t_{src}). Squaring symbolically gives the independent
/// oracle for the involution criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct SemilinearMap {
    pub m: usize,
    /// (source coordinate, exponent of ζ, conjugate?) per output coordinate.
    pub rows: Vec<(usize, usize, bool)>,
}

impl SemilinearMap {
    /// The map t_v ↦ ζ^{i_v}·conj(t_{α(v)}) realizing g∘α locally.
    pub fn from_assignment(e: &ExponentAssignment) -> Self {
        let rows = (0..e.exponents.len())
            .map(|v| (e.node_involution(v), e.exponents[v] % e.d.m, true))
            .collect();
        SemilinearMap { m: e.d.m, rows }
    }

    /// Symbolic composition: (self ∘ rhs)(t).
    pub fn compose(&self, rhs: &SemilinearMap) -> SemilinearMap {
        let rows = self
            .rows
            .iter()
            .map(|&(src, exp, conj)| {
                let (src2, exp2, conj2) = rhs.rows[src];
                // self applies ζ^exp ∘ (conj?) to rhs's output coordinate.
                let exp2_eff = if conj { (self.m - exp2 % self.m) % self.m } else { exp2 };
                ((src2), (exp + exp2_eff) % self.m, conj != conj2)
            })
            .collect();
        SemilinearMap { m: self.m, rows }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(v, &(src, exp, conj))| src == v && exp == 0 && !conj)
    }
}

/// Canonical representative (ε, r) of t modulo multiplication by m-th roots
/// of unity, for t with t^m real: t ≡ ζ_{2^{s+1}}^ε · r with r ≥ 0, where
/// m = 2^s·k, k odd. For m = 10 this is i^ε·r.
pub fn rotation_representative(
    re: f64,
    im: f64,
    m: usize,
    tol: f64,
) -> Result<(u8, f64), GlueError> {
    assert!(m >= 2 && m % 2 == 0, "rotation representatives need even m");
    let r = (re * re + im * im).sqrt();
    if r == 0.0 {
        return Ok((0, 0.0));
    }
    // t^m real ⇔ arg(t) is a multiple of π/m.
    let arg = im.atan2(re);
    let step = std::f64::consts::PI / m as f64;
    let j = (arg / step).round();
    let dev = (arg - j * step).abs();
    // |Im(t^m)| ≈ r^m·|sin(m·dev)|; compare the angular deviation directly.
    let im_tm = r.powi(m as i32) * (m as f64 * dev).sin().abs();
    if dev > tol && im_tm > tol {
        return Err(GlueError::PowerNotReal(im_tm, tol));
    }
    // t = ζ_{2m}^j·r; multiplication by ζ_m shifts j by 2, so j mod 2 is
    // the invariant. ζ_{2^{s+1}} = ζ_{2m}^k with k = m/2^s odd, so ε = j mod 2.
    let eps = (j.rem_euclid(2.0)) as u8;
    Ok((eps, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let d0 = NodeDatum::new(10, 0, 0, 2).unwrap();
        let d1 = NodeDatum::new(10, 1, 0, 2).unwrap();
        let d2 = NodeDatum::new(10, 1, 1, 3).unwrap();
        assert_eq!(count_equivalent_involutions(&d0), 1);
        assert_eq!(count_equivalent_involutions(&d1), 10);
        assert_eq!(count_equivalent_involutions(&d2), 100);
        assert_eq!(d2.node_group_order(), 1000); // m^k, k = 2a + b = 3
        assert!(NodeDatum::new(10, 1, 1, 2).is_err());
    }

    #[test]
    fn copies_for_one_pair() {
        let d = NodeDatum::new(10, 1, 0, 2).unwrap();
        let rep = copies_and_intersections(&d);
        assert_eq!(rep.copies.len(), 10);
        for p in 0..10 {
            for q in 0..10 {
                let expect = if p == q { 2 } else { 0 };
                assert_eq!(rep.intersection_dim[p][q], expect);
            }
        }
    }

    #[test]
    fn copies_for_two_pairs() {
        let d = NodeDatum::new(10, 2, 0, 4).unwrap();
        let rep = copies_and_intersections(&d);
        assert_eq!(rep.copies.len(), 100);
        let find = |j: &[usize]| rep.copies.iter().position(|c| c.j == j).unwrap();
        let p = find(&[0, 0]);
        let q = find(&[0, 3]);
        assert_eq!(rep.intersection_dim[p][q], 2); // c = 1
        assert_eq!(rep.intersection_dim[p][p], 4); // full: 2a
        // Symmetry.
        for x in 0..100 {
            for y in 0..100 {
                assert_eq!(rep.intersection_dim[x][y], rep.intersection_dim[y][x]);
            }
        }
    }

    #[test]
    fn criterion_examples() {
        let d = NodeDatum::new(10, 1, 0, 2).unwrap();
        let y = ExponentAssignment::new(d, vec![3, 3]).unwrap();
        assert!(involution_criterion(&y));
        let n = ExponentAssignment::new(d, vec![3, 4]).unwrap();
        assert!(!involution_criterion(&n));
        // b-only: any exponents pass.
        let db = NodeDatum::new(10, 0, 2, 3).unwrap();
        let any = ExponentAssignment::new(db, vec![7, 2]).unwrap();
        assert!(involution_criterion(&any));
    }

    #[test]
    fn criterion_agrees_with_symbolic_squaring() {
        // Oracle: realize g∘α symbolically and square it, for all exponent
        // vectors with m = 10 and a + b ≤ 2.
        let m = 10;
        let shapes = [(0usize, 1usize), (0, 2), (1, 0), (1, 1), (0, 0), (2, 0)];
        for &(a, b) in &shapes {
            let k = 2 * a + b;
            let n = k.max(1);
            let d = NodeDatum::new(m, a, b, n).unwrap();
            let mut exps = vec![0usize; k];
            loop {
                let e = ExponentAssignment::new(d, exps.clone()).unwrap();
                let map = SemilinearMap::from_assignment(&e);
                let squared = map.compose(&map);
                assert_eq!(
                    squared.is_identity(),
                    involution_criterion(&e),
                    "disagreement at a={a} b={b} exps={exps:?}"
                );
                // Next exponent vector.
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    exps[pos] += 1;
                    if exps[pos] < m {
                        break;
                    }
                    exps[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }

    #[test]
    fn rotation_representatives() {
        let tol = 1e-9;
        assert_eq!(rotation_representative(1.0, 0.0, 10, tol).unwrap(), (0, 1.0));
        let (eps, r) = rotation_representative(0.0, 1.0, 10, tol).unwrap();
        assert_eq!(eps, 1);
        assert!((r - 1.0).abs() < 1e-12);
        // ζ₁₀·5 is absorbed by the orbit.
        let ang = std::f64::consts::PI / 5.0;
        let (eps, r) = rotation_representative(5.0 * ang.cos(), 5.0 * ang.sin(), 10, tol).unwrap();
        assert_eq!(eps, 0);
        assert!((r - 5.0).abs() < 1e-12);
        // −r is equivalent to r for even m.
        let (eps, r) = rotation_representative(-2.0, 0.0, 10, tol).unwrap();
        assert_eq!(eps, 0);
        assert!((r - 2.0).abs() < 1e-12);
        // Generic angle fails.
        assert!(rotation_representative(1.0, 0.5, 10, tol).is_err());
        // Zero is fine.
        assert_eq!(rotation_representative(0.0, 0.0, 10, tol).unwrap(), (0, 0.0));
    }
}
