//! Integer and rational matrix routines: Smith and Hermite normal forms,
//! kernels, determinants, and finitely generated abelian group quotients.
//!
//! Matrices are dense and small (at most ~70×70 here), so the classic
//! elimination algorithms over BigInt with magnitude-minimizing pivoting are
//! more than fast enough.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type Rat = BigRational;

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IntMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn neg(&self) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    pub fn scale(&self, s: &BigInt) -> IntMat {
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    None => return BigInt::zero(),
                    Some(i) => {
                        for j in 0..n {
                            a.data.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self[(i, j)].clone()))
    }
}

/// Outcome of the Smith reduction: `d = u * a * v` is diagonal with each
/// diagonal entry dividing the next; `u`, `v` are unimodular.
pub struct Smith {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

pub fn smith_normal_form(a: &IntMat) -> Smith {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // Find the nonzero entry of smallest magnitude in the working block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if !d[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);
        // Clear row and column t.
        let mut clean = true;
        for i in t + 1..d.rows {
            if !d[(i, t)].is_zero() {
                let q = div_nearest(&d[(i, t)], &d[(t, t)]);
                if !q.is_zero() {
                    row_op(&mut d, &mut u, i, t, &q);
                }
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..d.cols {
            if !d[(t, j)].is_zero() {
                let q = div_nearest(&d[(t, j)], &d[(t, t)]);
                if !q.is_zero() {
                    col_op(&mut d, &mut v, j, t, &q);
                }
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // pivot again with the smaller remainders
        }
        // Enforce divisibility of the remaining block by the pivot.
        let mut divides_all = true;
        'outer: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    // Fold row i into row t and retry.
                    let one = BigInt::from(-1);
                    row_op(&mut d, &mut u, t, i, &one);
                    divides_all = false;
                    break 'outer;
                }
            }
        }
        if divides_all {
            if d[(t, t)].is_negative() {
                negate_row(&mut d, &mut u, t);
            }
            t += 1;
        }
    }
    Smith { d, u, v }
}

fn swap_rows(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        d.data.swap(a * d.cols + j, b * d.cols + j);
    }
    for j in 0..u.cols {
        u.data.swap(a * u.cols + j, b * u.cols + j);
    }
}

fn swap_cols(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        d.data.swap(i * d.cols + a, i * d.cols + b);
    }
    for i in 0..v.rows {
        v.data.swap(i * v.cols + a, i * v.cols + b);
    }
}

/// row_i -= q * row_t, tracked in u.
fn row_op(d: &mut IntMat, u: &mut IntMat, i: usize, t: usize, q: &BigInt) {
    for j in 0..d.cols {
        let s = q * &d[(t, j)];
        d[(i, j)] -= s;
    }
    for j in 0..u.cols {
        let s = q * &u[(t, j)];
        u[(i, j)] -= s;
    }
}

/// col_j -= q * col_t, tracked in v.
fn col_op(d: &mut IntMat, v: &mut IntMat, j: usize, t: usize, q: &BigInt) {
    for i in 0..d.rows {
        let s = q * &d[(i, t)];
        d[(i, j)] -= s;
    }
    for i in 0..v.rows {
        let s = q * &v[(i, t)];
        v[(i, j)] -= s;
    }
}

fn negate_row(d: &mut IntMat, u: &mut IntMat, i: usize) {
    for j in 0..d.cols {
        d[(i, j)] = -d[(i, j)].clone();
    }
    for j in 0..u.cols {
        u[(i, j)] = -u[(i, j)].clone();
    }
}

/// Rounded division: quotient closest to the exact one, for fast magnitude
/// shrinking in the normal form loops.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the integer kernel {x : a·x = 0} ⊆ Z^cols (a saturated lattice).
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(a);
    let rank = (0..a.rows.min(a.cols)).take_while(|&i| !s.d[(i, i)].is_zero()).count();
    // a = u⁻¹ d v⁻¹, so a·x = 0 iff (d)(v⁻¹x) = 0 iff v⁻¹x supported on
    // the zero part: kernel basis = columns rank..cols of v.
    (rank..a.cols)
        .map(|j| (0..a.cols).map(|i| s.v[(i, j)].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form (nonnegative pivots, entries above a pivot
/// reduced); returns the canonical basis matrix of the row lattice, with
/// zero rows dropped.
pub fn hnf_rows(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        loop {
            // Find row with nonzero minimal |entry| in this column at or below pivot_row.
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !m[(i, col)].is_zero()
                    && best.map_or(true, |b| m[(i, col)].abs() < m[(b, col)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                for j in 0..cols {
                    m.data.swap(pivot_row * cols + j, b * cols + j);
                }
            }
            let mut done = true;
            for i in pivot_row + 1..rows {
                if !m[(i, col)].is_zero() {
                    let q = div_nearest(&m[(i, col)], &m[(pivot_row, col)]);
                    for j in 0..cols {
                        let s = &q * &m[(pivot_row, j)];
                        m[(i, j)] -= s;
                    }
                    if !m[(i, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !m[(pivot_row, col)].is_zero() {
            if m[(pivot_row, col)].is_negative() {
                for j in 0..cols {
                    m[(pivot_row, j)] = -m[(pivot_row, j)].clone();
                }
            }
            // Reduce the rows above.
            for i in 0..pivot_row {
                let q = m[(i, col)].div_floor(&m[(pivot_row, col)]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &q * &m[(pivot_row, j)];
                        m[(i, j)] -= s;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    // Drop zero rows.
    let kept: Vec<usize> = (0..rows)
        .filter(|&i| (0..cols).any(|j| !m[(i, j)].is_zero()))
        .collect();
    IntMat::from_fn(kept.len(), cols, |i, j| m[(kept[i], j)].clone())
}

/// Equality of the row lattices spanned by `a` and `b`.
pub fn lattice_eq(a: &IntMat, b: &IntMat) -> bool {
    hnf_rows(a) == hnf_rows(b)
}

/// Whether every row of `sub` lies in the row lattice of `sup`.
pub fn lattice_contains(sup: &IntMat, sub: &IntMat) -> bool {
    let h = hnf_rows(sup);
    'rows: for i in 0..sub.rows {
        let mut v: Vec<BigInt> = (0..sub.cols).map(|j| sub[(i, j)].clone()).collect();
        for r in 0..h.rows {
            let lead = (0..h.cols).find(|&j| !h[(r, j)].is_zero()).unwrap();
            if v[lead].is_zero() {
                continue;
            }
            let (q, rem) = v[lead].div_rem(&h[(r, lead)]);
            if !rem.is_zero() {
                return false;
            }
            for j in 0..h.cols {
                let s = &q * &h[(r, j)];
                v[j] -= s;
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue 'rows;
        }
        return false;
    }
    true
}

/// Isomorphism type of a finitely generated abelian group: free rank plus
/// nontrivial elementary divisors in nondecreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinAb {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FinAb {
    pub fn trivial() -> Self {
        FinAb { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FinAb { free_rank: rank, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part (the full order if the group is finite).
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl std::fmt::Display for FinAb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = vec![];
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Quotient L/M of a sublattice M ⊆ L, both given by generating rows in the
/// same ambient Z^n; L must contain M.
pub fn quotient_group(sup: &IntMat, sub: &IntMat) -> FinAb {
    assert!(lattice_contains(sup, sub), "sub is not contained in sup");
    let hl = hnf_rows(sup);
    // Express each generator of M in the basis hl: solve x·hl = sub_row.
    let mut coords = IntMat::zeros(sub.rows, hl.rows);
    for i in 0..sub.rows {
        let mut v: Vec<BigInt> = (0..sub.cols).map(|j| sub[(i, j)].clone()).collect();
        for r in 0..hl.rows {
            let lead = (0..hl.cols).find(|&j| !hl[(r, j)].is_zero()).unwrap();
            let q = &v[lead] / &hl[(r, lead)];
            coords[(i, r)] = q.clone();
            for j in 0..hl.cols {
                let s = &q * &hl[(r, j)];
                v[j] -= s;
            }
        }
        assert!(v.iter().all(|x| x.is_zero()));
    }
    let s = smith_normal_form(&coords);
    let n = coords.rows.min(coords.cols);
    let mut torsion = vec![];
    let mut rank = 0;
    for i in 0..n {
        if !s.d[(i, i)].is_zero() {
            rank += 1;
            let d = s.d[(i, i)].clone();
            if !d.is_one() {
                torsion.push(u64::try_from(d).expect("divisor too large"));
            }
        }
    }
    torsion.sort_unstable();
    FinAb { free_rank: hl.rows - rank, torsion }
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = RatMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &RatMat) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Gauss-Jordan inverse; None when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i != col && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..n {
                        let s = &f * &a[(col, j)];
                        a[(i, j)] -= s;
                        let s = &f * &inv[(col, j)];
                        inv[(i, j)] -= s;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Solve X·self = rhs (rhs rows expressed in the row space of self);
    /// self must be square invertible.
    pub fn solve_left(&self, rhs: &RatMat) -> Option<RatMat> {
        let inv = self.inverse()?;
        Some(rhs.mul(&inv))
    }

    /// All entries integral.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMat> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_integer()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn smith_small() {
        let a = IntMat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = smith_normal_form(&a);
        // u a v = d
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        // Unimodular transforms.
        assert_eq!(s.u.det().abs(), big(1));
        assert_eq!(s.v.det().abs(), big(1));
        // Divisibility chain.
        let d: Vec<BigInt> = (0..3).map(|i| s.d[(i, i)].clone()).collect();
        assert!(!d[0].is_zero());
        assert!((&d[1] % &d[0]).is_zero());
        if !d[2].is_zero() {
            assert!((&d[2] % &d[1]).is_zero());
        }
    }

    #[test]
    fn kernel_and_quotient() {
        // x + y + z = 0 has kernel of rank 2.
        let a = IntMat::from_i64(&[vec![1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
        }

        // Z² / (2Z ⊕ 3Z) = Z/2 + Z/3 (as Z/6 in invariant factors: 1,6).
        let sup = IntMat::identity(2);
        let sub = IntMat::from_i64(&[vec![2, 0], vec![0, 3]]);
        let q = quotient_group(&sup, &sub);
        assert_eq!(q, FinAb { free_rank: 0, torsion: vec![6] });

        // Z² / 0 = Z².
        let empty = IntMat::zeros(0, 2);
        assert_eq!(quotient_group(&sup, &empty), FinAb::free(2));
    }

    #[test]
    fn hnf_canonical() {
        let a = IntMat::from_i64(&[vec![0, 2], vec![3, 1], vec![3, 3]]);
        let b = IntMat::from_i64(&[vec![3, 1], vec![0, 2]]);
        assert!(lattice_eq(&a, &b));
        assert!(lattice_contains(&a, &IntMat::from_i64(&[vec![3, 3]])));
        assert!(!lattice_contains(&a, &IntMat::from_i64(&[vec![1, 0]])));
    }

    #[test]
    fn bareiss_det_matches_expansion() {
        let a = IntMat::from_i64(&[vec![3, 1, -2], vec![0, 4, 7], vec![5, -1, 2]]);
        // Cofactor expansion by hand: 3(8+7) - 1(0-35) + (-2)(0-20) = 45+35+40 = 120.
        assert_eq!(a.det(), big(120));
        let singular = IntMat::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.det(), big(0));
    }

    #[test]
    fn rational_inverse() {
        let a = IntMat::from_i64(&[vec![2, 1], vec![1, 1]]).to_rat();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let sing = IntMat::from_i64(&[vec![1, 2], vec![2, 4]]).to_rat();
        assert!(sing.inverse().is_none());
    }
}
