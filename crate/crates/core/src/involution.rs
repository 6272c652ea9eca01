//! Anti-unitary involutions x ↦ M·σ(x) on a hermitian lattice: validation,
//! fixed lattices with their Z[α]-structure, restricted quadratic forms,
//! conjugacy invariants over F₅, and the finite orthogonal groups of the
//! reduced forms.

use crate::hermitian::{HermLattice, LatticeMap};
use crate::linalg::{kernel_basis, IntMat};
use crate::rings::{CycInt, CycRat, Fp5, GoldInt, GoldRat, Rat, RingError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum InvolutionError {
    #[error("matrix is {0}x{1}, expected square of rank {2}")]
    BadShape(usize, usize, usize),
    #[error("M·σ(M) ≠ identity: not an involution")]
    NotInvolution,
    #[error("Mᵗ·G·σ(M) ≠ σ(G): not an anti-isometry")]
    NotAntiIsometry,
    #[error("fixed lattice has rank {0} over Z[α], expected {1}")]
    BadFixedRank(usize, usize),
    #[error("reduced form is degenerate")]
    DegenerateForm,
    #[error("ring error: {0}")]
    Ring(#[from] RingError),
}

/// A validated anti-unitary involution on a hermitian lattice, acting by
/// x ↦ M·σ(x) with σ applied coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiUnitary {
    pub mat: Vec<Vec<CycInt>>,
}

impl AntiUnitary {
    /// Checks M·σ(M) = I (involution) and Mᵗ·G·σ(M) = σ(G) (anti-isometry),
    /// both exactly.
    pub fn validate(
        mat: Vec<Vec<CycInt>>,
        lattice: &HermLattice,
    ) -> Result<AntiUnitary, InvolutionError> {
        let n = lattice.rank;
        if mat.len() != n || mat.iter().any(|r| r.len() != n) {
            return Err(InvolutionError::BadShape(
                mat.len(),
                mat.first().map_or(0, |r| r.len()),
                n,
            ));
        }
        // Involution: (M σ)² = M·σ(M).
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycInt::zero();
                for k in 0..n {
                    acc += mat[i][k] * mat[k][j].conj_sigma();
                }
                let expect = if i == j { CycInt::one() } else { CycInt::zero() };
                if acc != expect {
                    return Err(InvolutionError::NotInvolution);
                }
            }
        }
        // Anti-isometry: h(αx, αy) = σ(h(x, y)).
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycInt::zero();
                for a in 0..n {
                    for b in 0..n {
                        acc += mat[a][i] * lattice.gram[a][b] * mat[b][j].conj_sigma();
                    }
                }
                if acc != lattice.gram[i][j].conj_sigma() {
                    return Err(InvolutionError::NotAntiIsometry);
                }
            }
        }
        Ok(AntiUnitary { mat })
    }

    pub fn rank(&self) -> usize {
        self.mat.len()
    }

    /// α(x) = M·σ(x).
    pub fn apply(&self, x: &[CycInt]) -> Vec<CycInt> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut acc = CycInt::zero();
                for j in 0..n {
                    acc += self.mat[i][j] * x[j].conj_sigma();
                }
                acc
            })
            .collect()
    }

    pub fn negated(&self) -> AntiUnitary {
        AntiUnitary {
            mat: self.mat.iter().map(|r| r.iter().map(|c| -*c).collect()).collect(),
        }
    }

    /// Composite with a unitary map: g ∘ α ∘ g⁻¹, again anti-unitary.
    /// `g_inv` must be the exact inverse of `g`.
    pub fn conjugate(&self, g: &LatticeMap, g_inv: &LatticeMap) -> AntiUnitary {
        // (g α g⁻¹)(x) = g·M·σ(g⁻¹)·σ(x).
        let n = self.rank();
        let mut m = vec![vec![CycInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycInt::zero();
                for a in 0..n {
                    for b in 0..n {
                        acc += g.mat[i][a] * self.mat[a][b] * g_inv.mat[b][j].conj_sigma();
                    }
                }
                m[i][j] = acc;
            }
        }
        AntiUnitary { mat: m }
    }

    /// The three reference involutions α₀ = σ, α₁ = diag(−1,1,1)·σ,
    /// α₂ = diag(−1,−1,1)·σ on the rank-three reference lattice.
    pub fn references(lattice: &HermLattice) -> [AntiUnitary; 3] {
        let d = |signs: [i64; 3]| {
            let mut m = vec![vec![CycInt::zero(); 3]; 3];
            for i in 0..3 {
                m[i][i] = CycInt::from_i64(signs[i]);
            }
            AntiUnitary::validate(m, lattice).expect("reference involution is valid")
        };
        [d([1, 1, 1]), d([-1, 1, 1]), d([-1, -1, 1])]
    }
}

// ---------------------------------------------------------------------------
// Fixed lattices
// ---------------------------------------------------------------------------

/// The fixed lattice Λ^α with its Z-basis inside the rank-4n Z-module, a
/// Z[α]-basis in lattice coordinates, and the restricted Gram over Z[α].
#[derive(Clone, Debug)]
pub struct FixedLattice {
    /// Rows: Z-basis vectors on the Z-basis {ζ^k e_i} of the ambient lattice.
    pub z_basis: IntMat,
    /// Z[α]-basis as vectors in the lattice (length = lattice rank).
    pub of_basis: Vec<Vec<CycInt>>,
    /// Gram of h restricted to the fixed lattice in the `of_basis`.
    pub gram: Vec<Vec<GoldInt>>,
}

/// Z-linear matrix (4n×4n) of multiplication by γ per coordinate block.
fn mult_matrix(gamma: CycInt, n: usize) -> IntMat {
    // 4×4 block: column k = coefficients of γ·ζ^k.
    let mut block = [[0i64; 4]; 4];
    for k in 0..4 {
        let prod = gamma * CycInt::zeta_pow(k as i64);
        for row in 0..4 {
            block[row][k] = prod.c[row];
        }
    }
    IntMat::from_fn(4 * n, 4 * n, |a, b| {
        if a / 4 == b / 4 {
            BigInt::from(block[a % 4][b % 4])
        } else {
            BigInt::zero()
        }
    })
}

/// Z-linear matrix of coordinatewise σ.
fn sigma_matrix(n: usize) -> IntMat {
    let mut block = [[0i64; 4]; 4];
    for k in 0..4 {
        let img = CycInt::zeta_pow(k as i64).conj_sigma();
        for row in 0..4 {
            block[row][k] = img.c[row];
        }
    }
    IntMat::from_fn(4 * n, 4 * n, |a, b| {
        if a / 4 == b / 4 {
            BigInt::from(block[a % 4][b % 4])
        } else {
            BigInt::zero()
        }
    })
}

/// The 4n×4n integer matrix of the full action x ↦ M·σ(x).
pub fn action_matrix_z(a: &AntiUnitary) -> IntMat {
    let n = a.rank();
    let sigma = sigma_matrix(n);
    // Multiplication by the matrix M: block (i, j) = mult by M[i][j].
    let mut mz = IntMat::zeros(4 * n, 4 * n);
    for i in 0..n {
        for j in 0..n {
            if a.mat[i][j].is_zero() {
                continue;
            }
            let block = mult_matrix(a.mat[i][j], 1);
            for r in 0..4 {
                for c in 0..4 {
                    mz[(4 * i + r, 4 * j + c)] = block[(r, c)].clone();
                }
            }
        }
    }
    mz.mul(&sigma)
}

/// Converts a Z-coordinate vector on {ζ^k e_i} to lattice coordinates.
fn z_vec_to_lattice(v: &[BigInt], n: usize) -> Vec<CycRat> {
    (0..n)
        .map(|i| {
            let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            for k in 0..4 {
                c[k] = Rat::from_integer(v[4 * i + k].clone());
            }
            CycRat::new(c)
        })
        .collect()
}

/// Hermite-style reduction of a Z[α]-module given by generator rows; returns
/// a square upper-triangular basis. Z[α] is Euclidean for the rounded
/// division, so this terminates with a canonical pivot ladder.
fn hnf_gold(rows: &[Vec<GoldRat>], cols: usize) -> Vec<Vec<GoldRat>> {
    // Scale to integral entries.
    let mut denom = BigInt::one();
    for row in rows.iter() {
        for x in row.iter() {
            denom = num_integer::lcm(denom.clone(), x.a.denom().clone());
            denom = num_integer::lcm(denom.clone(), x.b.denom().clone());
        }
    }
    let scale = Rat::from_integer(denom.clone());
    let mut m: Vec<Vec<GoldInt>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    GoldRat::new(&x.a * &scale, &x.b * &scale)
                        .to_int()
                        .expect("scaled entries are integral")
                })
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            let mut best: Option<(usize, i64)> = None;
            for (i, row) in m.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    let nn = row[col].norm().abs();
                    if best.map_or(true, |(_, bn)| nn < bn) {
                        best = Some((i, nn));
                    }
                }
            }
            let Some((bi, _)) = best else { break };
            m.swap(pivot_row, bi);
            let mut done = true;
            let pivot = m[pivot_row][col];
            for i in pivot_row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let (q, _) = m[i][col].div_rem(&pivot);
                    if !q.is_zero() {
                        for c in 0..cols {
                            let s = q * m[pivot_row][c];
                            m[i][c] = m[i][c] - s;
                        }
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < m.len() && !m[pivot_row][col].is_zero() {
            // Deterministic associate: scan unit multiples ±α^k for the
            // representative minimizing (|a| + |b|, a, b) with positive lead.
            let mut best = m[pivot_row][col];
            let mut best_unit = GoldInt::one();
            for sign in [1i64, -1] {
                let mut u = GoldInt::new(sign, 0);
                for _ in 0..9 {
                    let cand = m[pivot_row][col] * u;
                    let key = (cand.a.abs() + cand.b.abs(), -cand.a, -cand.b);
                    let cur = (best.a.abs() + best.b.abs(), -best.a, -best.b);
                    if key < cur {
                        best = cand;
                        best_unit = u;
                    }
                    u = u * GoldInt::alpha();
                }
                let mut u = GoldInt::new(sign, 0);
                for _ in 0..9 {
                    let cand = m[pivot_row][col] * u;
                    let key = (cand.a.abs() + cand.b.abs(), -cand.a, -cand.b);
                    let cur = (best.a.abs() + best.b.abs(), -best.a, -best.b);
                    if key < cur {
                        best = cand;
                        best_unit = u;
                    }
                    // Inverse of α is α + 1 (α(α+1) = α² + α = 1).
                    u = u * (GoldInt::alpha() + GoldInt::one());
                }
            }
            if best_unit != GoldInt::one() {
                for c in 0..cols {
                    m[pivot_row][c] = m[pivot_row][c] * best_unit;
                }
            }
            // Reduce entries above the pivot.
            let pivot = m[pivot_row][col];
            for i in 0..pivot_row {
                if !m[i][col].is_zero() {
                    let (q, _) = m[i][col].div_rem(&pivot);
                    if !q.is_zero() {
                        for c in 0..cols {
                            let s = q * m[pivot_row][c];
                            m[i][c] = m[i][c] - s;
                        }
                    }
                }
            }
            pivot_row += 1;
        }
    }
    m.truncate(pivot_row);
    let scale_back = Rat::one() / scale;
    m.iter()
        .map(|row| {
            row.iter()
                .map(|x| GoldRat::new(&x.to_rat().a * &scale_back, &x.to_rat().b * &scale_back))
                .collect()
        })
        .collect()
}

/// Computes the fixed lattice Λ^α: the integer kernel of (action − id) on
/// the rank-4n Z-module, presented with a Z[α]-basis in HNF.
pub fn fixed_lattice(
    a: &AntiUnitary,
    lattice: &HermLattice,
) -> Result<FixedLattice, InvolutionError> {
    let n = a.rank();
    let action = action_matrix_z(a);
    let diff = action.sub(&IntMat::identity(4 * n));
    let kernel = kernel_basis(&diff);
    let z_basis = IntMat::from_fn(kernel.len(), 4 * n, |i, j| kernel[i][j].clone());

    // Lattice-coordinate views of the kernel generators.
    let gens: Vec<Vec<CycRat>> = kernel.iter().map(|v| z_vec_to_lattice(v, n)).collect();

    // Greedily pick K-linearly independent generators as an F-basis of V^α.
    let mut basis_idx: Vec<usize> = vec![];
    for (i, g) in gens.iter().enumerate() {
        let mut trial: Vec<&Vec<CycRat>> = basis_idx.iter().map(|&k| &gens[k]).collect();
        trial.push(g);
        if k_rank(&trial) == trial.len() {
            basis_idx.push(i);
            if basis_idx.len() == n {
                break;
            }
        }
    }
    if basis_idx.len() != n {
        return Err(InvolutionError::BadFixedRank(basis_idx.len(), n));
    }

    // Coefficients of every generator over the chosen F-basis.
    let b: Vec<&Vec<CycRat>> = basis_idx.iter().map(|&k| &gens[k]).collect();
    let mut coeff_rows: Vec<Vec<GoldRat>> = Vec::with_capacity(gens.len());
    for g in &gens {
        let sol = solve_k(&b, g);
        let row: Vec<GoldRat> = sol
            .iter()
            .map(|c| c.to_gold().expect("coefficients over a real basis are sigma-fixed"))
            .collect();
        coeff_rows.push(row);
    }
    let h = hnf_gold(&coeff_rows, n);
    debug_assert_eq!(h.len(), n);

    // Materialize the Z[α]-basis in lattice coordinates.
    let mut of_basis: Vec<Vec<CycInt>> = Vec::with_capacity(n);
    for row in &h {
        let mut w = vec![CycRat::zero(); n];
        for (l, c) in row.iter().enumerate() {
            let cc = c.to_cyc();
            for (wi, bi) in w.iter_mut().zip(b[l].iter()) {
                *wi += &cc * bi;
            }
        }
        let wi: Result<Vec<CycInt>, _> = w.iter().map(|x| x.to_int()).collect();
        of_basis.push(wi.expect("Z[α]-basis vectors lie in the lattice"));
    }

    // Restricted Gram over Z[α].
    let mut gram = vec![vec![GoldInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = lattice.eval_int(&of_basis[i], &of_basis[j]);
            gram[i][j] = v.to_gold().expect("restricted form is sigma-fixed");
        }
    }
    Ok(FixedLattice { z_basis, of_basis, gram })
}

/// Rank over K of a list of vectors in K^n, by exact Gaussian elimination.
fn k_rank(vecs: &[&Vec<CycRat>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let n = vecs[0].len();
    let mut m: Vec<Vec<CycRat>> = vecs.iter().map(|v| (*v).clone()).collect();
    let mut rank = 0;
    for col in 0..n {
        let piv = (rank..m.len()).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let inv = m[rank][col].inverse().unwrap();
        for c in 0..n {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..n {
                    let s = &f * &m[rank][c];
                    m[i][c] -= s;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves g = Σ c_l·b_l over K for a K-basis b of the span.
fn solve_k(b: &[&Vec<CycRat>], g: &Vec<CycRat>) -> Vec<CycRat> {
    let n = b.len();
    let dim = g.len();
    // Build the augmented system and eliminate.
    let mut m: Vec<Vec<CycRat>> = (0..dim)
        .map(|r| {
            let mut row: Vec<CycRat> = b.iter().map(|v| v[r].clone()).collect();
            row.push(g[r].clone());
            row
        })
        .collect();
    let mut pivots = vec![usize::MAX; n];
    let mut rank = 0;
    for col in 0..n {
        let piv = (rank..dim).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let inv = m[rank][col].inverse().unwrap();
        for c in 0..=n {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for i in 0..dim {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in 0..=n {
                    let s = &f * &m[rank][c];
                    m[i][c] -= s;
                }
            }
        }
        pivots[col] = rank;
        rank += 1;
    }
    (0..n)
        .map(|col| {
            if pivots[col] == usize::MAX {
                CycRat::zero()
            } else {
                m[pivots[col]][n].clone()
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// F₅ invariants and classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DetClass {
    Square,
    NonSquare,
    Void,
}

/// Conjugacy invariant of the induced involution on W = F₅³: dimension of
/// the fixed space and the square class of det(q̄ restricted to it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvarPair {
    pub dim: usize,
    pub detclass: DetClass,
}

/// Reference label for the classification by invariant pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RefLabel {
    Alpha0,
    Alpha1,
    Alpha2,
    MinusAlpha0,
    MinusAlpha1,
    MinusAlpha2,
    Unknown,
}

/// Reduce the action mod θ (σ is trivial there) and take the fixed space of
/// the resulting F₅-linear involution, with the determinant class of the
/// reduction of h on it.
pub fn invariant_pair(a: &AntiUnitary, lattice: &HermLattice) -> InvarPair {
    let n = a.rank();
    let mbar: Vec<Vec<Fp5>> =
        a.mat.iter().map(|row| row.iter().map(|c| c.reduce_mod_theta()).collect()).collect();
    let qbar: Vec<Vec<Fp5>> = lattice
        .gram
        .iter()
        .map(|row| row.iter().map(|c| c.reduce_mod_theta()).collect())
        .collect();
    // Fixed space: kernel of (M̄ − I) over F₅.
    let mut sys: Vec<Vec<Fp5>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { Fp5::one() } else { Fp5::zero() };
                    mbar[i][j] - d
                })
                .collect()
        })
        .collect();
    let basis = f5_kernel(&mut sys);
    let dim = basis.len();
    if dim == 0 {
        return InvarPair { dim, detclass: DetClass::Void };
    }
    // Gram of q̄ on the fixed space.
    let mut g = vec![vec![Fp5::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Fp5::zero();
            for r in 0..n {
                for c in 0..n {
                    acc = acc + basis[i][r] * qbar[r][c] * basis[j][c];
                }
            }
            g[i][j] = acc;
        }
    }
    let det = f5_det(&g);
    let detclass = match det.is_square() {
        Some(true) => DetClass::Square,
        Some(false) => DetClass::NonSquare,
        None => DetClass::Void, // degenerate restriction; does not occur here
    };
    InvarPair { dim, detclass }
}

fn f5_kernel(m: &mut Vec<Vec<Fp5>>) -> Vec<Vec<Fp5>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots: Vec<(usize, usize)> = vec![];
    let mut rank = 0;
    for col in 0..cols {
        let piv = (rank..rows).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let inv = m[rank][col].inverse().unwrap();
        for c in 0..cols {
            m[rank][c] = m[rank][c] * inv;
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col];
                for c in 0..cols {
                    let s = f * m[rank][c];
                    m[i][c] = m[i][c] - s;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = vec![];
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Fp5::zero(); cols];
        v[free] = Fp5::one();
        for &(r, c) in &pivots {
            v[c] = -m[r][free];
        }
        basis.push(v);
    }
    basis
}

fn f5_det(g: &[Vec<Fp5>]) -> Fp5 {
    let n = g.len();
    let mut m: Vec<Vec<Fp5>> = g.to_vec();
    let mut det = Fp5::one();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { return Fp5::zero() };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det = det * m[col][col];
        let inv = m[col][col].inverse().unwrap();
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let f = m[i][col] * inv;
                for c in col..n {
                    let s = f * m[col][c];
                    m[i][c] = m[i][c] - s;
                }
            }
        }
    }
    det
}

/// The table of invariant pairs of the six signed reference involutions.
pub fn reference_table(lattice: &HermLattice) -> Vec<(RefLabel, InvarPair)> {
    let refs = AntiUnitary::references(lattice);
    let labels = [RefLabel::Alpha0, RefLabel::Alpha1, RefLabel::Alpha2];
    let neg_labels = [RefLabel::MinusAlpha0, RefLabel::MinusAlpha1, RefLabel::MinusAlpha2];
    let mut table = vec![];
    for (i, r) in refs.iter().enumerate() {
        table.push((labels[i], invariant_pair(r, lattice)));
        table.push((neg_labels[i], invariant_pair(&r.negated(), lattice)));
    }
    table
}

/// Invariant-level classification: match the (dim, det-class) pair against
/// the six signed references.
pub fn classify(a: &AntiUnitary, lattice: &HermLattice) -> RefLabel {
    let pair = invariant_pair(a, lattice);
    for (label, p) in reference_table(lattice) {
        if p == pair {
            return label;
        }
    }
    RefLabel::Unknown
}

// ---------------------------------------------------------------------------
// Finite orthogonal groups over F₅
// ---------------------------------------------------------------------------

/// Group data of O(q̄) for a nondegenerate diagonal ternary form over F₅:
/// order, projective order, and the multiset of element orders in PO.
#[derive(Clone, Debug, Serialize)]
pub struct OrthGroupData {
    pub order: usize,
    pub projective_order: usize,
    pub po_order_histogram: BTreeMap<u32, usize>,
}

/// Enumerates all 3×3 matrices over F₅ with Mᵗ·D·M = D by scanning the 5⁹
/// candidate space column by column with orthogonality pruning.
pub fn orthogonal_group_f5(diag: [Fp5; 3]) -> Result<OrthGroupData, InvolutionError> {
    if diag.iter().any(|d| d.is_zero()) {
        return Err(InvolutionError::DegenerateForm);
    }
    let qval = |v: &[u8; 3]| -> u8 {
        let mut acc = 0u32;
        for i in 0..3 {
            acc += diag[i].0 as u32 * (v[i] as u32) * (v[i] as u32);
        }
        (acc % 5) as u8
    };
    let bval = |u: &[u8; 3], v: &[u8; 3]| -> u8 {
        let mut acc = 0u32;
        for i in 0..3 {
            acc += diag[i].0 as u32 * (u[i] as u32) * (v[i] as u32);
        }
        (acc % 5) as u8
    };
    let all: Vec<[u8; 3]> = (0..125u32)
        .map(|k| [(k % 5) as u8, ((k / 5) % 5) as u8, ((k / 25) % 5) as u8])
        .collect();
    let mut elements: Vec<[[u8; 3]; 3]> = vec![];
    for c0 in all.iter().filter(|v| qval(v) == diag[0].0) {
        for c1 in all.iter().filter(|v| qval(v) == diag[1].0 && bval(c0, v) == 0) {
            for c2 in all
                .iter()
                .filter(|v| qval(v) == diag[2].0 && bval(c0, v) == 0 && bval(c1, v) == 0)
            {
                elements.push([*c0, *c1, *c2]);
            }
        }
    }
    let order = elements.len();

    // Projective classes {M, −M} with canonical representative.
    let neg = |m: &[[u8; 3]; 3]| -> [[u8; 3]; 3] {
        let mut out = [[0u8; 3]; 3];
        for c in 0..3 {
            for r in 0..3 {
                out[c][r] = (5 - m[c][r]) % 5;
            }
        }
        out
    };
    let mut classes: Vec<[[u8; 3]; 3]> = vec![];
    for m in &elements {
        let n = neg(m);
        let canon = if *m <= n { *m } else { n };
        if canon == *m {
            classes.push(*m);
        }
    }
    let projective_order = classes.len();

    // Element orders in PO: least k with M^k = ±I.
    let matmul = |a: &[[u8; 3]; 3], b: &[[u8; 3]; 3]| -> [[u8; 3]; 3] {
        // Columns-of-columns convention: element [c][r] is row r of column c.
        let mut out = [[0u8; 3]; 3];
        for c in 0..3 {
            for r in 0..3 {
                let mut acc = 0u32;
                for k in 0..3 {
                    acc += a[k][r] as u32 * b[c][k] as u32;
                }
                out[c][r] = (acc % 5) as u8;
            }
        }
        out
    };
    let ident: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let minus_ident = neg(&ident);
    let mut po_order_histogram: BTreeMap<u32, usize> = BTreeMap::new();
    for m in &classes {
        let mut p = *m;
        let mut k = 1u32;
        while p != ident && p != minus_ident {
            p = matmul(&p, m);
            k += 1;
            assert!(k <= 240, "order computation ran away");
        }
        *po_order_histogram.entry(k).or_insert(0) += 1;
    }
    Ok(OrthGroupData { order, projective_order, po_order_histogram })
}

/// Element-order histogram of the symmetric group S₅, computed directly
/// from permutation cycle types. Independent oracle for the PO₃(F₅) data.
pub fn s5_order_histogram() -> BTreeMap<u32, usize> {
    let mut hist = BTreeMap::new();
    let mut perm = [0usize, 1, 2, 3, 4];
    permute_orders(&mut perm, 0, &mut hist);
    hist
}

fn permute_orders(perm: &mut [usize; 5], k: usize, hist: &mut BTreeMap<u32, usize>) {
    if k == 5 {
        // Order = lcm of cycle lengths.
        let mut seen = [false; 5];
        let mut order = 1u32;
        for start in 0..5 {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = perm[cur];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        *hist.entry(order).or_insert(0) += 1;
        return;
    }
    for i in k..5 {
        perm.swap(k, i);
        permute_orders(perm, k + 1, hist);
        perm.swap(k, i);
    }
}

/// JSON report for one involution, per the external interface.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub matrix: Vec<Vec<String>>,
    pub valid: bool,
    pub fixed_basis: Vec<Vec<String>>,
    pub restricted_gram: Vec<Vec<String>>,
    pub invariants: InvarPair,
    pub label: RefLabel,
}

pub fn involution_report(a: &AntiUnitary, lattice: &HermLattice) -> InvolutionReport {
    let fixed = fixed_lattice(a, lattice).expect("validated involutions have full fixed rank");
    InvolutionReport {
        matrix: a.mat.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        valid: true,
        fixed_basis: fixed
            .of_basis
            .iter()
            .map(|v| v.iter().map(|c| c.to_string()).collect())
            .collect(),
        restricted_gram: fixed
            .gram
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect(),
        invariants: invariant_pair(a, lattice),
        label: classify(a, lattice),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{reflection, RootVec};
    use crate::linalg::lattice_eq;

    fn lat() -> HermLattice {
        HermLattice::reference()
    }

    #[test]
    fn references_validate() {
        let l = lat();
        let refs = AntiUnitary::references(&l);
        assert_eq!(refs.len(), 3);
        // Non-example: diag(2, 1, 1) fails (2·σ(2) = 4 ≠ 1).
        let mut bad = vec![vec![CycInt::zero(); 3]; 3];
        bad[0][0] = CycInt::from_i64(2);
        bad[1][1] = CycInt::one();
        bad[2][2] = CycInt::one();
        assert_eq!(
            AntiUnitary::validate(bad, &l),
            Err(InvolutionError::NotInvolution)
        );
        // diag(ζ, 1, 1) composed with σ is an involution (ζσ(ζ) = 1) and an
        // isometry for the diagonal Gram, so it validates.
        let mut zdiag = vec![vec![CycInt::zero(); 3]; 3];
        zdiag[0][0] = CycInt::zeta_pow(1);
        zdiag[1][1] = CycInt::one();
        zdiag[2][2] = CycInt::one();
        assert!(AntiUnitary::validate(zdiag, &l).is_ok());
    }

    #[test]
    fn action_matrix_squares_to_identity() {
        let l = lat();
        for r in AntiUnitary::references(&l) {
            let m = action_matrix_z(&r);
            assert_eq!(m.mul(&m), IntMat::identity(12));
        }
    }

    fn expected_module(theta_coords: &[bool]) -> IntMat {
        // Z-basis of ⊕_i (θ^{ε_i} Z[α]) e_i with ε per coordinate:
        // generators x·e_i, x·α·e_i with x = θ or 1.
        let n = theta_coords.len();
        let mut rows: Vec<Vec<i64>> = vec![];
        for (i, &th) in theta_coords.iter().enumerate() {
            let gen0 = if th { CycInt::theta() } else { CycInt::one() };
            let gen1 = gen0 * CycInt::alpha();
            for g in [gen0, gen1] {
                let mut row = vec![0i64; 4 * n];
                for k in 0..4 {
                    row[4 * i + k] = g.c[k];
                }
                rows.push(row);
            }
        }
        IntMat::from_i64(&rows)
    }

    #[test]
    fn fixed_lattices_match_reference_modules() {
        let l = lat();
        let refs = AntiUnitary::references(&l);
        let expected = [
            expected_module(&[false, false, false]),
            expected_module(&[true, false, false]),
            expected_module(&[true, true, false]),
        ];
        for (r, exp) in refs.iter().zip(expected.iter()) {
            let fl = fixed_lattice(r, &l).unwrap();
            assert_eq!(fl.z_basis.rows, 6);
            assert!(lattice_eq(&fl.z_basis, exp), "fixed lattice mismatch");
            // The Z[α]-basis spans the same Z-lattice.
            let mut rows: Vec<Vec<i64>> = vec![];
            for v in &fl.of_basis {
                for mult in [CycInt::one(), CycInt::alpha()] {
                    let mut row = vec![0i64; 12];
                    for (i, c) in v.iter().enumerate() {
                        let x = *c * mult;
                        for k in 0..4 {
                            row[4 * i + k] = x.c[k];
                        }
                    }
                    rows.push(row);
                }
            }
            assert!(lattice_eq(&IntMat::from_i64(&rows), exp));
        }
    }

    /// Solve U with rows expressing `basis` over `expected` (entries must
    /// be in Z[α] with unit determinant), then check UᵗDU = G.
    fn congruent_over_gold(
        basis: &[Vec<CycInt>],
        expected_basis: &[Vec<CycInt>],
        gram: &[Vec<GoldInt>],
        expected_diag: &[GoldInt],
    ) -> bool {
        let n = basis.len();
        let exp_rat: Vec<Vec<CycRat>> =
            expected_basis.iter().map(|v| v.iter().map(|c| c.to_rat()).collect()).collect();
        let exp_refs: Vec<&Vec<CycRat>> = exp_rat.iter().collect();
        let mut u = vec![vec![GoldInt::zero(); n]; n];
        for (i, v) in basis.iter().enumerate() {
            let vr: Vec<CycRat> = v.iter().map(|c| c.to_rat()).collect();
            let sol = solve_k(&exp_refs, &vr);
            for (j, c) in sol.iter().enumerate() {
                let g = c.to_gold().unwrap().to_int();
                match g {
                    Ok(x) => u[i][j] = x,
                    Err(_) => return false,
                }
            }
        }
        // Unit determinant over Z[α] (3×3 cofactor expansion).
        let det = u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1])
            - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0])
            + u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0]);
        if !det.is_unit() {
            return false;
        }
        // UᵗDU = G with D = diag(expected_diag): G_ij = Σ_k U_ik d_k U_jk.
        for i in 0..n {
            for j in 0..n {
                let mut acc = GoldInt::zero();
                for k in 0..n {
                    acc = acc + u[i][k] * expected_diag[k] * u[j][k];
                }
                if acc != gram[i][j] {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn restricted_forms_are_the_reference_forms() {
        let l = lat();
        let refs = AntiUnitary::references(&l);
        let one = GoldInt::one();
        let malpha = -GoldInt::alpha();
        let t2 = GoldInt::new(3, 1); // |θ|² = 3 + α
        let expected_diag = [
            vec![one, one, malpha],
            vec![t2, one, malpha],
            vec![t2, t2, malpha],
        ];
        let expected_basis = [
            vec![false, false, false],
            vec![true, false, false],
            vec![true, true, false],
        ];
        for ((r, diag), thetas) in refs.iter().zip(expected_diag.iter()).zip(expected_basis.iter())
        {
            let fl = fixed_lattice(r, &l).unwrap();
            let eb: Vec<Vec<CycInt>> = (0..3)
                .map(|i| {
                    let mut v = vec![CycInt::zero(); 3];
                    v[i] = if thetas[i] { CycInt::theta() } else { CycInt::one() };
                    v
                })
                .collect();
            assert!(
                congruent_over_gold(&fl.of_basis, &eb, &fl.gram, diag),
                "restricted gram not congruent to the reference diagonal"
            );
        }
    }

    #[test]
    fn theta_norm_identity() {
        // θσ(θ) = 3 + α.
        let n = CycInt::theta().norm_kf();
        assert_eq!(n, GoldInt::new(3, 1));
    }

    #[test]
    fn invariant_pairs_of_references() {
        let l = lat();
        let table = reference_table(&l);
        let get = |lab: RefLabel| table.iter().find(|(x, _)| *x == lab).unwrap().1;
        assert_eq!(
            get(RefLabel::Alpha0),
            InvarPair { dim: 3, detclass: DetClass::NonSquare }
        );
        assert_eq!(
            get(RefLabel::MinusAlpha0),
            InvarPair { dim: 0, detclass: DetClass::Void }
        );
        assert_eq!(
            get(RefLabel::MinusAlpha1),
            InvarPair { dim: 1, detclass: DetClass::Square }
        );
        // All six pairwise distinct.
        for i in 0..table.len() {
            for j in i + 1..table.len() {
                assert_ne!(table[i].1, table[j].1, "{:?} vs {:?}", table[i].0, table[j].0);
            }
        }
    }

    #[test]
    fn classification_is_stable_under_conjugation() {
        let l = lat();
        let refs = AntiUnitary::references(&l);
        let e0 = RootVec::new(vec![CycInt::one(), CycInt::zero(), CycInt::zero()]);
        let e1 = RootVec::new(vec![CycInt::zero(), CycInt::one(), CycInt::zero()]);
        let g1 = reflection(&l, &e0, 2);
        let g1_inv = reflection(&l, &e0, 8);
        let g2 = reflection(&l, &e1, 7);
        let g2_inv = reflection(&l, &e1, 3);
        let g = g1.compose(&g2);
        let g_inv = g2_inv.compose(&g1_inv);
        assert!(g.compose(&g_inv).is_identity());
        for (i, r) in refs.iter().enumerate() {
            let conj = r.conjugate(&g, &g_inv);
            // Conjugates are valid anti-unitary involutions...
            assert!(AntiUnitary::validate(conj.mat.clone(), &l).is_ok());
            // ...with the same invariants and classification.
            assert_eq!(invariant_pair(&conj, &l), invariant_pair(r, &l));
            let expect = [RefLabel::Alpha0, RefLabel::Alpha1, RefLabel::Alpha2][i];
            assert_eq!(classify(&conj, &l), expect);
        }
    }

    #[test]
    fn reflection_exchange_identity() {
        // α ∘ φ_r^i = φ_{α(r)}^{−i} ∘ α on the basis, for reference
        // involutions and enumerated roots.
        let l = lat();
        let refs = AntiUnitary::references(&l);
        let roots = l.enumerate_short_roots(1);
        let basis: Vec<Vec<CycInt>> = (0..3)
            .map(|i| {
                let mut v = vec![CycInt::zero(); 3];
                v[i] = CycInt::one();
                v
            })
            .collect();
        for alpha in &refs {
            for r in roots.iter().take(25) {
                let ar = RootVec::new(alpha.apply(&r.coords));
                assert_eq!(l.eval_int(&ar.coords, &ar.coords), CycInt::one());
                for i in [1i64, 3, 7] {
                    let phi = reflection(&l, r, i);
                    let phi_neg = reflection(&l, &ar, (10 - i) % 10);
                    for b in &basis {
                        let lhs = alpha.apply(&phi.apply(b));
                        let rhs = phi_neg.apply(&alpha.apply(b));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn involution_preserves_hyperplanes() {
        // α(H_r) = H_{α(r)}: proportionality classes map to each other.
        let l = lat();
        let refs = AntiUnitary::references(&l);
        let roots = l.enumerate_short_roots(1);
        for alpha in refs.iter() {
            for r in roots.iter().take(10) {
                // α(ζ₁₀^k r) spans the same hyperplane as α(r).
                let ar = alpha.apply(&r.coords);
                let r2 = r.scale(CycInt::zeta10_pow(3));
                let ar2 = alpha.apply(&r2.coords);
                assert!(crate::hermitian::hyperplane_equal(
                    &RootVec::new(ar),
                    &RootVec::new(ar2)
                ));
            }
        }
    }

    #[test]
    fn orthogonal_group_of_reduced_form() {
        let data = orthogonal_group_f5([Fp5(1), Fp5(1), Fp5(3)]).unwrap();
        assert_eq!(data.order, 240);
        assert_eq!(data.projective_order, 120);
        let s5 = s5_order_histogram();
        let expected: BTreeMap<u32, usize> =
            [(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)].into_iter().collect();
        assert_eq!(s5, expected);
        assert_eq!(data.po_order_histogram, s5);
        assert!(orthogonal_group_f5([Fp5(1), Fp5(0), Fp5(3)]).is_err());
    }

}
