//! Hermitian lattices over Z[ζ]: form evaluation, exact signatures at the
//! two real embeddings, box-bounded short-root enumeration, hyperplane
//! tests, complex reflections, and the correspondence with integral
//! alternating forms on the underlying Z-module.

use crate::linalg::IntMat;
use crate::rings::{rat, CycInt, CycRat, Embedding, GoldInt, GoldRat, Rat, RingError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum HermError {
    #[error("vector length {0} does not match lattice rank {1}")]
    DimensionMismatch(usize, usize),
    #[error("form is degenerate: zero block remains after {0} pivots")]
    Degenerate(usize),
    #[error("no embedding has hyperbolic signature (n, 1)")]
    NotHyperbolic,
    #[error("hyperplanes are equal; intersection test requires distinct hyperplanes")]
    EqualHyperplanes,
    #[error("intersection test is only implemented for rank 3, got rank {0}")]
    RankNotThree(usize),
    #[error("gram matrix is not hermitian")]
    NotHermitian,
    #[error("hermitian form from alternating data is not integral at entry ({0}, {1})")]
    NotIntegral(usize, usize),
    #[error("ring error: {0}")]
    Ring(#[from] RingError),
}

/// A free Z[ζ]-module of finite rank with a hermitian Gram matrix
/// (linear in the first argument, σ-linear in the second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermLattice {
    pub rank: usize,
    pub gram: Vec<Vec<CycInt>>,
}

impl HermLattice {
    pub fn new(gram: Vec<Vec<CycInt>>) -> Result<Self, HermError> {
        let rank = gram.len();
        for row in &gram {
            if row.len() != rank {
                return Err(HermError::DimensionMismatch(row.len(), rank));
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[j][i] != gram[i][j].conj_sigma() {
                    return Err(HermError::NotHermitian);
                }
            }
        }
        Ok(HermLattice { rank, gram })
    }

    pub fn diagonal(entries: &[CycInt]) -> Result<Self, HermError> {
        let n = entries.len();
        let mut gram = vec![vec![CycInt::zero(); n]; n];
        for (i, e) in entries.iter().enumerate() {
            gram[i][i] = *e;
        }
        HermLattice::new(gram)
    }

    /// The rank-three lattice diag(1, 1, −α) with −α = (1 − √5)/2.
    pub fn reference() -> Self {
        HermLattice::diagonal(&[CycInt::one(), CycInt::one(), -CycInt::alpha()])
            .expect("reference lattice is hermitian")
    }

    pub fn identity(n: usize) -> Self {
        HermLattice::diagonal(&vec![CycInt::one(); n]).expect("identity is hermitian")
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| i == j || self.gram[i][j].is_zero()))
    }

    /// h(x, y) = xᵗ · gram · σ(y), exact over Q(ζ).
    pub fn eval(&self, x: &[CycRat], y: &[CycRat]) -> Result<CycRat, HermError> {
        if x.len() != self.rank {
            return Err(HermError::DimensionMismatch(x.len(), self.rank));
        }
        if y.len() != self.rank {
            return Err(HermError::DimensionMismatch(y.len(), self.rank));
        }
        let mut acc = CycRat::zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if y[j].is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += &x[i] * &(&self.gram[i][j].to_rat() * &y[j].conj_sigma());
            }
        }
        Ok(acc)
    }

    /// Integer-coefficient form evaluation, for the enumeration hot path.
    pub fn eval_int(&self, x: &[CycInt], y: &[CycInt]) -> CycInt {
        debug_assert_eq!(x.len(), self.rank);
        debug_assert_eq!(y.len(), self.rank);
        let mut acc = CycInt::zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if y[j].is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += x[i] * self.gram[i][j] * y[j].conj_sigma();
            }
        }
        acc
    }

    /// Exact congruence diagonalization of the hermitian form over Q(ζ);
    /// returns the diagonal values, which lie in the real subfield.
    fn diagonalize(&self) -> Result<Vec<GoldRat>, HermError> {
        let n = self.rank;
        let mut g: Vec<Vec<CycRat>> =
            (0..n).map(|i| (0..n).map(|j| self.gram[i][j].to_rat()).collect()).collect();
        let mut diag = Vec::with_capacity(n);
        for t in 0..n {
            // Get a nonzero pivot onto the diagonal at (t, t).
            if g[t][t].is_zero() {
                if let Some(i) = (t + 1..n).find(|&i| !g[i][i].is_zero()) {
                    g.swap(t, i);
                    for row in g.iter_mut() {
                        row.swap(t, i);
                    }
                } else {
                    // All remaining diagonal entries vanish; use an
                    // off-diagonal entry c through v_t ← v_t + λ v_j, whose
                    // new norm is Tr_{K/F}(σ(λ)c). λ ∈ {1, ζ} suffices: if
                    // both traces vanished, c would be zero by
                    // nondegeneracy of the trace pairing on the F-basis.
                    let mut found = false;
                    'search: for i in t..n {
                        for j in t..n {
                            if i != j && !g[i][j].is_zero() {
                                for lam in [CycRat::one(), CycRat::zeta()] {
                                    let c = g[i][j].clone();
                                    let tr = &lam.conj_sigma() * &c
                                        + &lam * &c.conj_sigma();
                                    if !tr.is_zero() {
                                        // rows/cols: v_i ← v_i + λ v_j.
                                        for b in 0..n {
                                            let add = &lam * &g[j][b];
                                            g[i][b] += add;
                                        }
                                        let lam_c = lam.conj_sigma();
                                        for a in 0..n {
                                            let add = &lam_c * &g[a][j];
                                            g[a][i] += add;
                                        }
                                        if i != t {
                                            g.swap(t, i);
                                            for row in g.iter_mut() {
                                                row.swap(t, i);
                                            }
                                        }
                                        found = true;
                                        break 'search;
                                    }
                                }
                            }
                        }
                    }
                    if !found {
                        // The whole remaining block is zero.
                        if g.iter().skip(t).all(|row| row.iter().skip(t).all(|x| x.is_zero())) {
                            return Err(HermError::Degenerate(t));
                        }
                        unreachable!("trace pairing is nondegenerate");
                    }
                }
            }
            let pivot = g[t][t].clone();
            let pivot_inv = pivot.inverse().expect("pivot nonzero");
            for a in t + 1..n {
                if g[a][t].is_zero() {
                    continue;
                }
                let mu = &g[a][t] * &pivot_inv;
                for b in 0..n {
                    let s = &mu * &g[t][b];
                    g[a][b] -= s;
                }
                let mu_c = mu.conj_sigma();
                for r in 0..n {
                    let s = &mu_c * &g[r][t];
                    g[r][a] -= s;
                }
            }
            diag.push(pivot.to_gold().expect("diagonal values are sigma-fixed"));
        }
        Ok(diag)
    }

    /// Signature (p, q) of the form with F-scalars at the selected real
    /// embedding, by exact diagonalization and exact sign tests.
    pub fn signature_at(&self, which: Embedding) -> Result<(usize, usize), HermError> {
        let diag = self.diagonalize()?;
        let mut p = 0;
        let mut q = 0;
        for d in &diag {
            match d.embed_sign(which) {
                1 => p += 1,
                -1 => q += 1,
                _ => unreachable!("diagonal entries are nonzero"),
            }
        }
        Ok((p, q))
    }

    /// The embedding at which the form has signature (n, 1).
    pub fn hyperbolic_embedding(&self) -> Result<Embedding, HermError> {
        for emb in [Embedding::Plus, Embedding::Minus] {
            if self.signature_at(emb)? == (self.rank - 1, 1) {
                return Ok(emb);
            }
        }
        Err(HermError::NotHyperbolic)
    }

    /// All short roots (h(r, r) = 1) whose twelve integer coordinates lie in
    /// [−bound, bound], sorted canonically.
    pub fn enumerate_short_roots(&self, bound: i64) -> Vec<RootVec> {
        assert!(bound >= 1);
        let mut roots = if self.is_diagonal() {
            self.enumerate_diagonal(bound)
        } else {
            self.enumerate_generic(bound)
        };
        roots.sort();
        roots
    }

    /// Norm-grouped enumeration for diagonal Gram: h(r, r) = Σ dᵢ·N(rᵢ)
    /// with N(v) = vσ(v) ∈ Z[α], so coordinates interact only through
    /// their relative norms.
    fn enumerate_diagonal(&self, bound: i64) -> Vec<RootVec> {
        let n = self.rank;
        let d: Vec<GoldInt> =
            (0..n).map(|i| self.gram[i][i].to_gold().expect("diagonal is sigma-fixed")).collect();
        // Group box values by relative norm.
        let values = coefficient_box(bound);
        let mut by_norm: Vec<(GoldInt, Vec<CycInt>)> = Vec::new();
        for v in &values {
            let nv = v.norm_kf();
            match by_norm.binary_search_by(|probe| probe.0.cmp(&nv)) {
                Ok(idx) => by_norm[idx].1.push(*v),
                Err(idx) => by_norm.insert(idx, (nv, vec![*v])),
            }
        }
        let norm_values: Vec<GoldInt> = by_norm.iter().map(|(n, _)| *n).collect();
        let target = GoldInt::one();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, GoldInt, Vec<usize>)> = vec![(0, GoldInt::zero(), vec![])];
        while let Some((coord, acc, picks)) = stack.pop() {
            if coord == n {
                if acc == target {
                    // Expand the Cartesian product of the value classes.
                    let lists: Vec<&Vec<CycInt>> =
                        picks.iter().map(|&k| &by_norm[k].1).collect();
                    let mut idx = vec![0usize; n];
                    loop {
                        out.push(RootVec {
                            coords: (0..n).map(|i| lists[i][idx[i]]).collect(),
                        });
                        let mut c = n;
                        loop {
                            if c == 0 {
                                break;
                            }
                            c -= 1;
                            idx[c] += 1;
                            if idx[c] < lists[c].len() {
                                break;
                            }
                            idx[c] = 0;
                            if c == 0 {
                                c = usize::MAX;
                                break;
                            }
                        }
                        if c == usize::MAX {
                            break;
                        }
                    }
                }
                continue;
            }
            for (k, nv) in norm_values.iter().enumerate() {
                let term = d[coord] * *nv;
                let mut picks2 = picks.clone();
                picks2.push(k);
                stack.push((coord + 1, acc + term, picks2));
            }
        }
        out
    }

    fn enumerate_generic(&self, bound: i64) -> Vec<RootVec> {
        let n = self.rank;
        let values = coefficient_box(bound);
        let mut out = Vec::new();
        let mut current = vec![CycInt::zero(); n];
        self.scan(&values, 0, &mut current, &mut out);
        out
    }

    fn scan(&self, values: &[CycInt], coord: usize, current: &mut Vec<CycInt>, out: &mut Vec<RootVec>) {
        if coord == self.rank {
            if self.eval_int(current, current) == CycInt::one() {
                out.push(RootVec { coords: current.clone() });
            }
            return;
        }
        for v in values {
            current[coord] = *v;
            self.scan(values, coord + 1, current, out);
        }
        current[coord] = CycInt::zero();
    }
}

fn coefficient_box(bound: i64) -> Vec<CycInt> {
    let mut values = Vec::new();
    for c0 in -bound..=bound {
        for c1 in -bound..=bound {
            for c2 in -bound..=bound {
                for c3 in -bound..=bound {
                    values.push(CycInt::new([c0, c1, c2, c3]));
                }
            }
        }
    }
    values
}

/// A lattice vector r with h(r, r) = 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec {
    pub coords: Vec<CycInt>,
}

impl RootVec {
    pub fn new(coords: Vec<CycInt>) -> Self {
        RootVec { coords }
    }

    pub fn to_rat(&self) -> Vec<CycRat> {
        self.coords.iter().map(|c| c.to_rat()).collect()
    }

    pub fn scale(&self, u: CycInt) -> RootVec {
        RootVec { coords: self.coords.iter().map(|c| *c * u).collect() }
    }

    pub fn in_box(&self, bound: i64) -> bool {
        self.coords.iter().all(|c| c.c.iter().all(|&x| x.abs() <= bound))
    }
}

/// H_r = H_t iff t is a K-multiple of r.
pub fn hyperplane_equal(r: &RootVec, t: &RootVec) -> bool {
    let n = r.coords.len();
    for i in 0..n {
        for j in i + 1..n {
            if r.coords[i] * t.coords[j] != r.coords[j] * t.coords[i] {
                return false;
            }
        }
    }
    true
}

/// Whether H_r and H_t meet inside the ball of negative lines (rank 3 only):
/// the K-line orthogonal to both must be negative at the hyperbolic
/// embedding. A norm-zero complement is a boundary point, so `false`.
pub fn hyperplanes_intersect(
    lattice: &HermLattice,
    r: &RootVec,
    t: &RootVec,
) -> Result<bool, HermError> {
    if lattice.rank != 3 {
        return Err(HermError::RankNotThree(lattice.rank));
    }
    if hyperplane_equal(r, t) {
        return Err(HermError::EqualHyperplanes);
    }
    let emb = lattice.hyperbolic_embedding()?;
    // w must satisfy h(w, r) = h(w, t) = 0, i.e. w ⊥ G·σ(r) and G·σ(t)
    // for the ordinary dot product; the cross product over K does it.
    let gr = gram_sigma_vec(lattice, r);
    let gt = gram_sigma_vec(lattice, t);
    let w = [
        gr[1] * gt[2] - gr[2] * gt[1],
        gr[2] * gt[0] - gr[0] * gt[2],
        gr[0] * gt[1] - gr[1] * gt[0],
    ];
    if w.iter().all(|x| x.is_zero()) {
        return Err(HermError::Degenerate(2));
    }
    let norm = lattice.eval_int(&w, &w).to_rat().to_gold().expect("norm is sigma-fixed");
    Ok(norm.embed_sign(emb) < 0)
}

fn gram_sigma_vec(lattice: &HermLattice, r: &RootVec) -> Vec<CycInt> {
    (0..lattice.rank)
        .map(|i| {
            let mut acc = CycInt::zero();
            for j in 0..lattice.rank {
                acc += lattice.gram[i][j] * r.coords[j].conj_sigma();
            }
            acc
        })
        .collect()
}

/// One offending pair in an arrangement report.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementViolation {
    pub r: Vec<String>,
    pub t: Vec<String>,
    pub h_rt: String,
    pub intersects: bool,
}

/// Outcome of scanning all root pairs for the orthogonality property:
/// distinct intersecting hyperplanes must pair to h(r, t) = 0.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementReport {
    pub roots: usize,
    pub pairs_scanned: usize,
    pub pairs_nonorthogonal: usize,
    pub violations: Vec<ArrangementViolation>,
}

pub fn verify_orthogonal_arrangement(
    lattice: &HermLattice,
    roots: &[RootVec],
) -> Result<ArrangementReport, HermError> {
    let mut report = ArrangementReport {
        roots: roots.len(),
        pairs_scanned: 0,
        pairs_nonorthogonal: 0,
        violations: vec![],
    };
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            report.pairs_scanned += 1;
            let h_rt = lattice.eval_int(&roots[i].coords, &roots[j].coords);
            if h_rt.is_zero() {
                continue; // orthogonal pairs satisfy the condition trivially
            }
            report.pairs_nonorthogonal += 1;
            if hyperplane_equal(&roots[i], &roots[j]) {
                continue; // same hyperplane: no condition
            }
            if hyperplanes_intersect(lattice, &roots[i], &roots[j])? {
                report.violations.push(ArrangementViolation {
                    r: roots[i].coords.iter().map(|c| c.to_string()).collect(),
                    t: roots[j].coords.iter().map(|c| c.to_string()).collect(),
                    h_rt: h_rt.to_string(),
                    intersects: true,
                });
            }
        }
    }
    Ok(report)
}

/// A Z[ζ]-linear endomorphism of the lattice, columns = images of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub mat: Vec<Vec<CycInt>>,
}

impl LatticeMap {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![vec![CycInt::zero(); n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = CycInt::one();
        }
        LatticeMap { mat }
    }

    pub fn rank(&self) -> usize {
        self.mat.len()
    }

    pub fn apply(&self, x: &[CycInt]) -> Vec<CycInt> {
        let n = self.rank();
        (0..n)
            .map(|a| {
                let mut acc = CycInt::zero();
                for j in 0..n {
                    acc += self.mat[a][j] * x[j];
                }
                acc
            })
            .collect()
    }

    pub fn compose(&self, rhs: &LatticeMap) -> LatticeMap {
        let n = self.rank();
        let mut mat = vec![vec![CycInt::zero(); n]; n];
        for a in 0..n {
            for j in 0..n {
                let mut acc = CycInt::zero();
                for k in 0..n {
                    acc += self.mat[a][k] * rhs.mat[k][j];
                }
                mat[a][j] = acc;
            }
        }
        LatticeMap { mat }
    }

    pub fn pow(&self, k: u32) -> LatticeMap {
        let mut acc = LatticeMap::identity(self.rank());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == LatticeMap::identity(self.rank())
    }

    /// Mᵗ · G · σ(M) = G, i.e. h(Mx, My) = h(x, y).
    pub fn preserves_gram(&self, lattice: &HermLattice) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycInt::zero();
                for a in 0..n {
                    for b in 0..n {
                        acc += self.mat[a][i] * lattice.gram[a][b] * self.mat[b][j].conj_sigma();
                    }
                }
                if acc != lattice.gram[i][j] {
                    return false;
                }
            }
        }
        true
    }
}

/// The complex reflection φ_r^i: x ↦ x − (1 − ζ₁₀^i)·h(x, r)·r.
pub fn reflection(lattice: &HermLattice, r: &RootVec, i: i64) -> LatticeMap {
    let n = lattice.rank;
    let factor = CycInt::one() - CycInt::zeta10_pow(i);
    let mut mat = vec![vec![CycInt::zero(); n]; n];
    for j in 0..n {
        // h(e_j, r) = Σ_b G[j][b] σ(r_b)
        let mut h_jr = CycInt::zero();
        for b in 0..n {
            h_jr += lattice.gram[j][b] * r.coords[b].conj_sigma();
        }
        let c = factor * h_jr;
        for a in 0..n {
            let delta = if a == j { CycInt::one() } else { CycInt::zero() };
            mat[a][j] = delta - c * r.coords[a];
        }
    }
    LatticeMap { mat }
}

// ---------------------------------------------------------------------------
// Alternating forms on the underlying Z-module
// ---------------------------------------------------------------------------

/// The rank-4n Z-module underlying a rank-n Z[ζ]-lattice, carrying an
/// integer alternating form E and the multiplication-by-ζ operator.
/// Compatibility: E(ζx, y) = E(x, ζ⁴y), i.e. ZᵗE = E·Z⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingLattice {
    pub rank_ok: usize,
    pub gram_e: IntMat,
    pub zeta_action: IntMat,
}

impl AlternatingLattice {
    pub fn rank_z(&self) -> usize {
        4 * self.rank_ok
    }

    pub fn check_invariants(&self) -> Result<(), HermError> {
        let n = self.rank_z();
        if self.gram_e.rows != n || self.gram_e.cols != n {
            return Err(HermError::DimensionMismatch(self.gram_e.rows, n));
        }
        // Alternating.
        if self.gram_e.transpose() != self.gram_e.neg() {
            return Err(HermError::NotHermitian);
        }
        // σ-compatibility of the module action.
        let z4 = {
            let mut p = IntMat::identity(n);
            for _ in 0..4 {
                p = p.mul(&self.zeta_action);
            }
            p
        };
        if self.zeta_action.transpose().mul(&self.gram_e) != self.gram_e.mul(&z4) {
            return Err(HermError::NotHermitian);
        }
        Ok(())
    }

    pub fn is_unimodular(&self) -> bool {
        self.gram_e.det().abs() == BigInt::one()
    }
}

/// Multiplication by ζ on the Z-basis {ζ^k e_i} (k = 0..3 within each
/// coordinate block).
pub fn zeta_matrix(rank: usize) -> IntMat {
    let n = 4 * rank;
    IntMat::from_fn(n, n, |a, b| {
        let (bi, bk) = (b / 4, b % 4);
        let (ai, ak) = (a / 4, a % 4);
        if ai != bi {
            return BigInt::zero();
        }
        if bk < 3 {
            return if ak == bk + 1 { BigInt::one() } else { BigInt::zero() };
        }
        // ζ·ζ³ = ζ⁴ = −1 − ζ − ζ² − ζ³.
        BigInt::from(-1)
    })
}

/// E = Tr_{K/Q}(ξ·h) with ξ = η⁻¹ = θ/5, on the Z-basis {ζ^k e_i}.
pub fn alternating_from_herm(lattice: &HermLattice) -> AlternatingLattice {
    let n = lattice.rank;
    let xi = CycRat::theta() * CycRat::from_rat(rat(1) / rat(5));
    let gram_e = IntMat::from_fn(4 * n, 4 * n, |a, b| {
        let (i, k) = (a / 4, a % 4);
        let (j, l) = (b / 4, b % 4);
        // E(ζ^k e_i, ζ^l e_j) = Tr(ξ · ζ^k σ(ζ^l) · h(e_i, e_j))
        //                     = Tr(ξ · ζ^{k−l} · G[i][j]).
        let v = &xi
            * &(&CycRat::zeta_pow(k as i64 - l as i64) * &lattice.gram[i][j].to_rat());
        let t = v.trace_kq();
        assert!(t.is_integer(), "trace form of an integral lattice is integral");
        t.to_integer()
    });
    AlternatingLattice { rank_ok: n, gram_e, zeta_action: zeta_matrix(n) }
}

/// h(x, y) = (ζ − ζ⁻¹)⁻¹ Σ_{j=0}^{4} ζ^j E(x, ζ^j·y), recovering the
/// hermitian Gram on the Z[ζ]-basis e_i = (block i, power 0). Errors if
/// some value fails to be integral over Z[ζ].
pub fn herm_from_alternating(alt: &AlternatingLattice) -> Result<HermLattice, HermError> {
    alt.check_invariants()?;
    let n = alt.rank_ok;
    let theta_inv = CycRat::theta().inverse().expect("theta is nonzero");
    let mut gram = vec![vec![CycInt::zero(); n]; n];
    // Powers of the ζ action applied to the basis vectors e_j.
    let mut powers = vec![IntMat::identity(4 * n)];
    for _ in 0..4 {
        powers.push(powers.last().unwrap().mul(&alt.zeta_action));
    }
    for i in 0..n {
        for j in 0..n {
            let mut acc = CycRat::zero();
            for (p, zp) in powers.iter().enumerate() {
                // E(e_i, ζ^p e_j): e_i is Z-basis index 4i, e_j index 4j.
                let mut e_val = BigInt::zero();
                for b in 0..4 * n {
                    if zp[(b, 4 * j)].is_zero() {
                        continue;
                    }
                    e_val += &alt.gram_e[(4 * i, b)] * &zp[(b, 4 * j)];
                }
                acc += CycRat::zeta_pow(p as i64)
                    * CycRat::from_rat(Rat::from_integer(e_val));
            }
            let h = &theta_inv * &acc;
            gram[i][j] = h.to_int().map_err(|_| HermError::NotIntegral(i, j))?;
        }
    }
    HermLattice::new(gram)
}
