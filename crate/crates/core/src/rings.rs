//! Exact arithmetic in the fifth cyclotomic field and its real subfield.
//!
//! `CycRat` is Q(ζ) with ζ a primitive fifth root of unity, represented on
//! the power basis 1, ζ, ζ², ζ³ with ζ⁴ = −(1 + ζ + ζ² + ζ³). `CycInt` is
//! the subring Z[ζ]. `GoldRat`/`GoldInt` are the real subfield Q(α) and its
//! integers Z[α], where α = ζ + ζ⁻¹ satisfies α² = 1 − α. `Fp5` is the
//! residue field Z[ζ]/(θ) for θ = ζ − ζ⁻¹.
//!
//! The primitive tenth root of unity is fixed as ζ₁₀ := −ζ³, so that
//! ζ₁₀² = ζ and ζ₁₀⁵ = −1; the ten powers of ζ₁₀ exhaust the finite units.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Selects one of the two real embeddings of Q(α):
/// `Plus` sends α to (√5 − 1)/2 ≈ 0.618, `Minus` to (−√5 − 1)/2 ≈ −1.618.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embedding {
    Plus,
    Minus,
}

impl Embedding {
    pub fn other(self) -> Embedding {
        match self {
            Embedding::Plus => Embedding::Minus,
            Embedding::Minus => Embedding::Plus,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not sigma-fixed, so it does not lie in the real subfield")]
    NotInRealSubfield,
    #[error("element is not integral")]
    NotIntegral,
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// CycRat
// ---------------------------------------------------------------------------

/// An element c0 + c1·ζ + c2·ζ² + c3·ζ³ of Q(ζ), ζ a primitive fifth root
/// of unity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    pub c: [Rat; 4],
}

impl CycRat {
    pub fn new(c: [Rat; 4]) -> Self {
        CycRat { c }
    }

    pub fn zero() -> Self {
        CycRat::new([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn one() -> Self {
        CycRat::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        CycRat::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn from_i64(n: i64) -> Self {
        CycRat::from_rat(rat(n))
    }

    /// ζ.
    pub fn zeta() -> Self {
        CycRat::new([Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()])
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(5) as usize;
        if k == 4 {
            // ζ⁴ = −1 − ζ − ζ² − ζ³
            CycRat::new([-Rat::one(), -Rat::one(), -Rat::one(), -Rat::one()])
        } else {
            let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            c[k] = Rat::one();
            CycRat::new(c)
        }
    }

    /// θ = ζ − ζ⁻¹, a generator of the ramified prime above 5.
    pub fn theta() -> Self {
        CycRat::zeta_pow(1) - CycRat::zeta_pow(4)
    }

    /// α = ζ + ζ⁻¹, the golden-ratio generator of the real subfield.
    pub fn alpha() -> Self {
        CycRat::zeta_pow(1) + CycRat::zeta_pow(4)
    }

    /// η = 5/(ζ − ζ⁻¹); it generates the different ideal and σ(η) = −η.
    pub fn eta() -> Self {
        CycRat::from_i64(5) / CycRat::theta()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// The Galois automorphism ζ ↦ ζ^k for k in (Z/5)*.
    pub fn galois(&self, k: u8) -> CycRat {
        assert!(k % 5 != 0, "galois exponent must be prime to 5");
        let mut out = CycRat::from_rat(self.c[0].clone());
        for j in 1..4usize {
            let img = CycRat::zeta_pow((j as i64) * (k as i64));
            out += &img * &CycRat::from_rat(self.c[j].clone());
        }
        out
    }

    /// Complex conjugation σ: ζ ↦ ζ⁴, the nontrivial element of Gal(K/F).
    pub fn conj_sigma(&self) -> CycRat {
        self.galois(4)
    }

    /// Trace to Q: the sum of the four Galois conjugates.
    pub fn trace_kq(&self) -> Rat {
        // Tr(1) = 4 and Tr(ζ^j) = −1 for j = 1, 2, 3.
        rat(4) * &self.c[0] - &self.c[1] - &self.c[2] - &self.c[3]
    }

    /// Trace to the real subfield: x + σ(x), as an element of Q(α).
    pub fn trace_kf(&self) -> GoldRat {
        (self.clone() + self.conj_sigma())
            .to_gold()
            .expect("x + sigma(x) is sigma-fixed")
    }

    /// Relative norm x·σ(x), as an element of Q(α).
    pub fn norm_kf(&self) -> GoldRat {
        (self.clone() * self.conj_sigma())
            .to_gold()
            .expect("x * sigma(x) is sigma-fixed")
    }

    /// Absolute norm x·σ₂(x)·σ₃(x)·σ₄(x), a rational number.
    pub fn norm_kq(&self) -> Rat {
        let p = self.clone() * self.galois(2) * self.galois(3) * self.galois(4);
        debug_assert!(p.is_rational());
        p.c[0].clone()
    }

    pub fn inverse(&self) -> Result<CycRat, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let n = self.norm_kq();
        let cof = self.galois(2) * self.galois(3) * self.galois(4);
        Ok(&cof * &CycRat::from_rat(n.recip()))
    }

    /// Writes a σ-fixed element on the basis 1, α of the real subfield.
    ///
    /// x = c0 + c1ζ + c2ζ² + c3ζ³ is σ-fixed iff c1 = 0 and c2 = c3, and
    /// then x = (c0 + c2) − c2·(−1 − ζ² − ζ³)... concretely x = a + bα with
    /// α = −1 − ζ² − ζ³, so b = −c2 and a = c0 − c2.
    pub fn to_gold(&self) -> Result<GoldRat, RingError> {
        if !self.c[1].is_zero() || self.c[2] != self.c[3] {
            return Err(RingError::NotInRealSubfield);
        }
        Ok(GoldRat::new(&self.c[0] - &self.c[2], -self.c[2].clone()))
    }

    pub fn to_int(&self) -> Result<CycInt, RingError> {
        let mut c = [0i64; 4];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_integer() {
                return Err(RingError::NotIntegral);
            }
            c[i] = i64::try_from(x.to_integer()).map_err(|_| RingError::NotIntegral)?;
        }
        Ok(CycInt::new(c))
    }

    /// Exact division test in Z[ζ]: self/div if the quotient is integral.
    pub fn exact_div_int(&self, div: &CycRat) -> Option<CycInt> {
        let q = self.clone() / div.clone();
        q.to_int().ok()
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRat({})", self)
    }
}

/// Text form "c0,c1,c2,c3" with each coefficient as p or p/q.
impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl FromStr for CycRat {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(RingError::Parse(format!("expected 4 coefficients, got {}", parts.len())));
        }
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for (i, p) in parts.iter().enumerate() {
            c[i] = Rat::from_str(p.trim()).map_err(|e| RingError::Parse(e.to_string()))?;
        }
        Ok(CycRat::new(c))
    }
}

fn cyc_mul(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    // Convolve, then fold ζ⁴ = −Σζ^i, ζ⁵ = 1, ζ⁶ = ζ.
    let mut full = [
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
    ];
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if b[j].is_zero() {
                continue;
            }
            full[i + j] += &a[i] * &b[j];
        }
    }
    let mut c = [
        full[0].clone(),
        full[1].clone(),
        full[2].clone(),
        full[3].clone(),
    ];
    // ζ⁴ term
    for x in c.iter_mut() {
        *x -= &full[4];
    }
    // ζ⁵ = 1, ζ⁶ = ζ
    c[0] += &full[5];
    c[1] += &full[6];
    c
}

impl Add for CycRat {
    type Output = CycRat;
    fn add(self, rhs: CycRat) -> CycRat {
        let mut c = self.c;
        for i in 0..4 {
            c[i] += &rhs.c[i];
        }
        CycRat::new(c)
    }
}

impl AddAssign for CycRat {
    fn add_assign(&mut self, rhs: CycRat) {
        for i in 0..4 {
            self.c[i] += &rhs.c[i];
        }
    }
}

impl Sub for CycRat {
    type Output = CycRat;
    fn sub(self, rhs: CycRat) -> CycRat {
        let mut c = self.c;
        for i in 0..4 {
            c[i] -= &rhs.c[i];
        }
        CycRat::new(c)
    }
}

impl SubAssign for CycRat {
    fn sub_assign(&mut self, rhs: CycRat) {
        for i in 0..4 {
            self.c[i] -= &rhs.c[i];
        }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = -x.clone();
        }
        CycRat::new(c)
    }
}

impl Mul for CycRat {
    type Output = CycRat;
    fn mul(self, rhs: CycRat) -> CycRat {
        CycRat::new(cyc_mul(&self.c, &rhs.c))
    }
}

impl Mul for &CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        CycRat::new(cyc_mul(&self.c, &rhs.c))
    }
}

impl MulAssign for CycRat {
    fn mul_assign(&mut self, rhs: CycRat) {
        self.c = cyc_mul(&self.c, &rhs.c);
    }
}

impl Div for CycRat {
    type Output = CycRat;
    fn div(self, rhs: CycRat) -> CycRat {
        let inv = rhs.inverse().expect("division by zero in CycRat");
        self * inv
    }
}

// ---------------------------------------------------------------------------
// CycInt
// ---------------------------------------------------------------------------

/// An element of Z[ζ] on the power basis. Coefficients are machine integers;
/// lattice computations never leave this range, and all arithmetic goes
/// through i128 intermediates with overflow checks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    pub c: [i64; 4],
}

impl CycInt {
    pub const fn new(c: [i64; 4]) -> Self {
        CycInt { c }
    }

    pub const fn zero() -> Self {
        CycInt::new([0, 0, 0, 0])
    }

    pub const fn one() -> Self {
        CycInt::new([1, 0, 0, 0])
    }

    pub fn from_i64(n: i64) -> Self {
        CycInt::new([n, 0, 0, 0])
    }

    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(5) as usize;
        if k == 4 {
            CycInt::new([-1, -1, -1, -1])
        } else {
            let mut c = [0i64; 4];
            c[k] = 1;
            CycInt::new(c)
        }
    }

    /// θ = ζ − ζ⁻¹ = 1 + 2ζ + ζ² + ζ³.
    pub fn theta() -> Self {
        CycInt::new([1, 2, 1, 1])
    }

    /// α = ζ + ζ⁻¹ = −1 − ζ² − ζ³.
    pub fn alpha() -> Self {
        CycInt::new([-1, 0, -1, -1])
    }

    /// ζ₁₀^i for the fixed primitive tenth root ζ₁₀ = −ζ³.
    pub fn zeta10_pow(i: i64) -> Self {
        let i = i.rem_euclid(10);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let z = CycInt::zeta_pow(3 * i);
        z.scale(sign)
    }

    pub fn scale(&self, n: i64) -> CycInt {
        let mut c = self.c;
        for x in c.iter_mut() {
            *x = x.checked_mul(n).expect("CycInt overflow");
        }
        CycInt::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0, 0, 0]
    }

    pub fn galois(&self, k: u8) -> CycInt {
        self.to_rat().galois(k).to_int().unwrap()
    }

    pub fn conj_sigma(&self) -> CycInt {
        // ζ ↦ ζ⁴ on integer coefficients, in closed form.
        let [c0, c1, c2, c3] = self.c;
        CycInt::new([c0 - c1, -c1, c3 - c1, c2 - c1])
    }

    pub fn trace_kq(&self) -> i64 {
        4 * self.c[0] - self.c[1] - self.c[2] - self.c[3]
    }

    pub fn to_rat(&self) -> CycRat {
        CycRat::new([rat(self.c[0]), rat(self.c[1]), rat(self.c[2]), rat(self.c[3])])
    }

    pub fn to_gold(&self) -> Result<GoldInt, RingError> {
        if self.c[1] != 0 || self.c[2] != self.c[3] {
            return Err(RingError::NotInRealSubfield);
        }
        Ok(GoldInt::new(self.c[0] - self.c[2], -self.c[2]))
    }

    /// Image in Z[ζ]/(θ) = F₅ under ζ ↦ 1.
    pub fn reduce_mod_theta(&self) -> Fp5 {
        let s = self.c.iter().fold(0i64, |acc, x| acc + x.rem_euclid(5)) % 5;
        Fp5::new(s as u8)
    }

    /// Relative norm x·σ(x) as an element of Z[α].
    pub fn norm_kf(&self) -> GoldInt {
        (*self * self.conj_sigma()).to_gold().expect("norm is sigma-fixed")
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt({},{},{},{})", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

fn cyc_mul_i(a: &[i64; 4], b: &[i64; 4]) -> [i64; 4] {
    let mut full = [0i128; 7];
    for i in 0..4 {
        for j in 0..4 {
            full[i + j] += (a[i] as i128) * (b[j] as i128);
        }
    }
    let mut c = [0i128; 4];
    for i in 0..4 {
        c[i] = full[i] - full[4];
    }
    c[0] += full[5];
    c[1] += full[6];
    let mut out = [0i64; 4];
    for i in 0..4 {
        out[i] = i64::try_from(c[i]).expect("CycInt overflow");
    }
    out
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        let mut c = [0i64; 4];
        for i in 0..4 {
            c[i] = self.c[i].checked_add(rhs.c[i]).expect("CycInt overflow");
        }
        CycInt::new(c)
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        let mut c = [0i64; 4];
        for i in 0..4 {
            c[i] = self.c[i].checked_sub(rhs.c[i]).expect("CycInt overflow");
        }
        CycInt::new(c)
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        CycInt::new(cyc_mul_i(&self.c, &rhs.c))
    }
}

impl AddAssign for CycInt {
    fn add_assign(&mut self, rhs: CycInt) {
        *self = *self + rhs;
    }
}

// ---------------------------------------------------------------------------
// GoldRat / GoldInt
// ---------------------------------------------------------------------------

/// An element a + b·α of Q(α), with α² = 1 − α.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldRat {
    pub a: Rat,
    pub b: Rat,
}

impl GoldRat {
    pub fn new(a: Rat, b: Rat) -> Self {
        GoldRat { a, b }
    }

    pub fn zero() -> Self {
        GoldRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GoldRat::new(Rat::one(), Rat::zero())
    }

    pub fn alpha() -> Self {
        GoldRat::new(Rat::zero(), Rat::one())
    }

    pub fn from_i64(n: i64) -> Self {
        GoldRat::new(rat(n), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The nontrivial automorphism of Q(α): α ↦ −1 − α (= 1/... the other
    /// root of x² + x − 1).
    pub fn conj(&self) -> GoldRat {
        GoldRat::new(&self.a - &self.b, -self.b.clone())
    }

    pub fn norm_fq(&self) -> Rat {
        let p = self.clone() * self.conj();
        debug_assert!(p.b.is_zero());
        p.a
    }

    pub fn inverse(&self) -> Result<GoldRat, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let n = self.norm_fq();
        let c = self.conj();
        Ok(GoldRat::new(&c.a / &n, &c.b / &n))
    }

    /// Embeds into Q(ζ) via α = ζ + ζ⁻¹.
    pub fn to_cyc(&self) -> CycRat {
        CycRat::from_rat(self.a.clone())
            + CycRat::alpha() * CycRat::from_rat(self.b.clone())
    }

    /// Exact sign of the image under the selected real embedding.
    ///
    /// At `Plus` the image is a + b(√5 − 1)/2 and at `Minus` it is
    /// a + b(−√5 − 1)/2; both reduce to the sign of u + v√5 with
    /// u = 2a − b and v = ±b, decided by comparing u² with 5v².
    pub fn embed_sign(&self, which: Embedding) -> i32 {
        let u = rat(2) * &self.a - &self.b;
        let v = match which {
            Embedding::Plus => self.b.clone(),
            Embedding::Minus => -self.b.clone(),
        };
        sign_u_plus_v_sqrt5(&u, &v)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.embed_sign(Embedding::Plus) > 0 && self.embed_sign(Embedding::Minus) > 0
    }

    pub fn to_int(&self) -> Result<GoldInt, RingError> {
        if !self.a.is_integer() || !self.b.is_integer() {
            return Err(RingError::NotIntegral);
        }
        let a = i64::try_from(self.a.to_integer()).map_err(|_| RingError::NotIntegral)?;
        let b = i64::try_from(self.b.to_integer()).map_err(|_| RingError::NotIntegral)?;
        Ok(GoldInt::new(a, b))
    }
}

/// Exact sign of u + v·√5 for rational u, v.
fn sign_u_plus_v_sqrt5(u: &Rat, v: &Rat) -> i32 {
    let su = rat_sign(u);
    let sv = rat_sign(v);
    if sv == 0 {
        return su;
    }
    if su == 0 {
        return sv;
    }
    if su == sv {
        return su;
    }
    // Opposite signs: compare u² with 5v².
    let u2 = u * u;
    let v25 = rat(5) * v * v;
    match u2.cmp(&v25) {
        std::cmp::Ordering::Greater => su,
        std::cmp::Ordering::Less => sv,
        std::cmp::Ordering::Equal => 0, // impossible for rational u, v ≠ 0
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for GoldRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldRat({},{})", self.a, self.b)
    }
}

impl fmt::Display for GoldRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for GoldRat {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(RingError::Parse(format!("expected 2 coefficients, got {}", parts.len())));
        }
        let a = Rat::from_str(parts[0].trim()).map_err(|e| RingError::Parse(e.to_string()))?;
        let b = Rat::from_str(parts[1].trim()).map_err(|e| RingError::Parse(e.to_string()))?;
        Ok(GoldRat::new(a, b))
    }
}

impl Add for GoldRat {
    type Output = GoldRat;
    fn add(self, rhs: GoldRat) -> GoldRat {
        GoldRat::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for GoldRat {
    type Output = GoldRat;
    fn sub(self, rhs: GoldRat) -> GoldRat {
        GoldRat::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for GoldRat {
    type Output = GoldRat;
    fn neg(self) -> GoldRat {
        GoldRat::new(-self.a, -self.b)
    }
}

impl Mul for GoldRat {
    type Output = GoldRat;
    fn mul(self, rhs: GoldRat) -> GoldRat {
        // (a + bα)(c + dα) = ac + (ad + bc)α + bd·α², α² = 1 − α.
        let bd = &self.b * &rhs.b;
        GoldRat::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        )
    }
}

impl Div for GoldRat {
    type Output = GoldRat;
    fn div(self, rhs: GoldRat) -> GoldRat {
        let inv = rhs.inverse().expect("division by zero in GoldRat");
        self * inv
    }
}

/// An element a + b·α of Z[α].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoldInt {
    pub a: i64,
    pub b: i64,
}

impl GoldInt {
    pub const fn new(a: i64, b: i64) -> Self {
        GoldInt { a, b }
    }

    pub const fn zero() -> Self {
        GoldInt::new(0, 0)
    }

    pub const fn one() -> Self {
        GoldInt::new(1, 0)
    }

    pub const fn alpha() -> Self {
        GoldInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(&self) -> GoldInt {
        GoldInt::new(self.a - self.b, -self.b)
    }

    pub fn norm(&self) -> i64 {
        // N(a + bα) = a² − ab − b², since Tr(α) = −1 and N(α) = −1.
        let a = self.a as i128;
        let b = self.b as i128;
        i64::try_from(a * a - a * b - b * b).expect("GoldInt overflow")
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs() == 1
    }

    pub fn to_rat(&self) -> GoldRat {
        GoldRat::new(rat(self.a), rat(self.b))
    }

    pub fn to_cyc(&self) -> CycInt {
        CycInt::from_i64(self.a) + CycInt::alpha().scale(self.b)
    }

    pub fn embed_sign(&self, which: Embedding) -> i32 {
        self.to_rat().embed_sign(which)
    }

    pub fn is_totally_positive(&self) -> bool {
        self.to_rat().is_totally_positive()
    }

    /// Euclidean division: returns (q, r) with self = q·rhs + r and
    /// |N(r)| < |N(rhs)|. Rounding each coordinate of the exact quotient
    /// gives |N(frac)| ≤ 3/4, so Z[α] is Euclidean for this division.
    pub fn div_rem(&self, rhs: &GoldInt) -> (GoldInt, GoldInt) {
        assert!(!rhs.is_zero(), "division by zero in GoldInt");
        let q_exact = self.to_rat() / rhs.to_rat();
        let qa = round_rat(&q_exact.a);
        let qb = round_rat(&q_exact.b);
        let q = GoldInt::new(qa, qb);
        let r = *self - q * *rhs;
        debug_assert!(r.norm().abs() < rhs.norm().abs());
        (q, r)
    }

    pub fn gcd(&self, rhs: &GoldInt) -> GoldInt {
        let (mut x, mut y) = (*self, *rhs);
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x
    }
}

fn round_rat(r: &Rat) -> i64 {
    i64::try_from(r.round().to_integer()).expect("rounding overflow")
}

impl fmt::Debug for GoldInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldInt({},{})", self.a, self.b)
    }
}

impl fmt::Display for GoldInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl Add for GoldInt {
    type Output = GoldInt;
    fn add(self, rhs: GoldInt) -> GoldInt {
        GoldInt::new(
            self.a.checked_add(rhs.a).expect("GoldInt overflow"),
            self.b.checked_add(rhs.b).expect("GoldInt overflow"),
        )
    }
}

impl Sub for GoldInt {
    type Output = GoldInt;
    fn sub(self, rhs: GoldInt) -> GoldInt {
        GoldInt::new(
            self.a.checked_sub(rhs.a).expect("GoldInt overflow"),
            self.b.checked_sub(rhs.b).expect("GoldInt overflow"),
        )
    }
}

impl Neg for GoldInt {
    type Output = GoldInt;
    fn neg(self) -> GoldInt {
        GoldInt::new(-self.a, -self.b)
    }
}

impl Mul for GoldInt {
    type Output = GoldInt;
    fn mul(self, rhs: GoldInt) -> GoldInt {
        let a = self.a as i128;
        let b = self.b as i128;
        let c = rhs.a as i128;
        let d = rhs.b as i128;
        let bd = b * d;
        let na = a * c + bd;
        let nb = a * d + b * c - bd;
        GoldInt::new(
            i64::try_from(na).expect("GoldInt overflow"),
            i64::try_from(nb).expect("GoldInt overflow"),
        )
    }
}

// ---------------------------------------------------------------------------
// Fp5
// ---------------------------------------------------------------------------

/// The field with five elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp5(pub u8);

impl Fp5 {
    pub fn new(v: u8) -> Self {
        Fp5(v % 5)
    }

    pub fn zero() -> Self {
        Fp5(0)
    }

    pub fn one() -> Self {
        Fp5(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Fp5(v.rem_euclid(5) as u8)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn inverse(&self) -> Option<Fp5> {
        match self.0 {
            0 => None,
            1 => Some(Fp5(1)),
            2 => Some(Fp5(3)),
            3 => Some(Fp5(2)),
            4 => Some(Fp5(4)),
            _ => unreachable!(),
        }
    }

    /// True for the square class {1, 4}; false for {2, 3}. Zero is neither.
    pub fn is_square(&self) -> Option<bool> {
        match self.0 {
            0 => None,
            1 | 4 => Some(true),
            2 | 3 => Some(false),
            _ => unreachable!(),
        }
    }
}

impl fmt::Debug for Fp5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp5({})", self.0)
    }
}

impl fmt::Display for Fp5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp5 {
    type Output = Fp5;
    fn add(self, rhs: Fp5) -> Fp5 {
        Fp5((self.0 + rhs.0) % 5)
    }
}

impl Sub for Fp5 {
    type Output = Fp5;
    fn sub(self, rhs: Fp5) -> Fp5 {
        Fp5((5 + self.0 - rhs.0) % 5)
    }
}

impl Mul for Fp5 {
    type Output = Fp5;
    fn mul(self, rhs: Fp5) -> Fp5 {
        Fp5((self.0 * rhs.0) % 5)
    }
}

impl Neg for Fp5 {
    type Output = Fp5;
    fn neg(self) -> Fp5 {
        Fp5((5 - self.0) % 5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_is_an_involution_and_fixes_alpha() {
        let z = CycRat::zeta();
        assert_eq!(z.conj_sigma(), CycRat::zeta_pow(4));
        assert_eq!(z.conj_sigma().conj_sigma(), z);
        let a = CycRat::alpha();
        assert_eq!(a.conj_sigma(), a);
        let th = CycRat::theta();
        assert_eq!(th.conj_sigma(), -th.clone());
    }

    #[test]
    fn trace_values() {
        assert_eq!(CycRat::one().trace_kq(), rat(4));
        assert_eq!(CycRat::zeta().trace_kq(), rat(-1));
        assert_eq!(CycRat::theta().trace_kq(), rat(0));
    }

    #[test]
    fn galois_is_multiplicative_and_trace_sigma_invariant() {
        let x = CycRat::new([rat(3), rat(-1), rat(7), rat(2)]);
        let y = CycRat::new([rat(-2), rat(5), rat(0), rat(1)]);
        let lhs = (x.clone() * y.clone()).conj_sigma();
        let rhs = x.conj_sigma() * y.conj_sigma();
        assert_eq!(lhs, rhs);
        assert_eq!(x.conj_sigma().trace_kq(), x.trace_kq());
    }

    #[test]
    fn norm_to_real_subfield_is_sigma_fixed() {
        let x = CycRat::new([rat(1), rat(2), rat(3), rat(4)]);
        let n = x.norm_kf();
        // Consistency with the absolute norm.
        assert_eq!(n.norm_fq(), x.norm_kq());
    }

    #[test]
    fn inverse_works() {
        let x = CycRat::new([rat(2), rat(-3), rat(1), rat(5)]);
        let inv = x.inverse().unwrap();
        assert!((x * inv).is_one());
        assert_eq!(CycRat::zero().inverse(), Err(RingError::DivisionByZero));
    }

    #[test]
    fn alpha_satisfies_its_minimal_polynomial() {
        let a = GoldRat::alpha();
        let lhs = a.clone() * a.clone() + a.clone();
        assert_eq!(lhs, GoldRat::one());
        // And inside K as well.
        let ac = CycRat::alpha();
        assert!((ac.clone() * ac.clone() + ac - CycRat::one()).is_zero());
    }

    #[test]
    fn embed_signs() {
        let a = GoldRat::alpha();
        assert_eq!(a.embed_sign(Embedding::Plus), 1);
        assert_eq!(a.embed_sign(Embedding::Minus), -1);
        assert_eq!(GoldRat::zero().embed_sign(Embedding::Plus), 0);
        // 3 + α = |θ|² is totally positive.
        let t = GoldRat::from_i64(3) + GoldRat::alpha();
        assert!(t.is_totally_positive());
        // Sign is multiplicative on products.
        let x = GoldRat::new(rat(2), rat(-3));
        let y = GoldRat::new(rat(-1), rat(7));
        for emb in [Embedding::Plus, Embedding::Minus] {
            assert_eq!(
                (x.clone() * y.clone()).embed_sign(emb),
                x.embed_sign(emb) * y.embed_sign(emb)
            );
        }
    }

    #[test]
    fn reduction_mod_theta() {
        assert_eq!(CycInt::zeta_pow(1).reduce_mod_theta(), Fp5(1));
        assert_eq!(CycInt::alpha().reduce_mod_theta(), Fp5(2));
        assert_eq!(CycInt::theta().reduce_mod_theta(), Fp5(0));
        // The map is a ring homomorphism.
        let x = CycInt::new([2, -1, 3, 4]);
        let y = CycInt::new([0, 1, -2, 5]);
        assert_eq!((x * y).reduce_mod_theta(), x.reduce_mod_theta() * y.reduce_mod_theta());
        assert_eq!((x + y).reduce_mod_theta(), x.reduce_mod_theta() + y.reduce_mod_theta());
        // Sigma acts trivially mod θ.
        assert_eq!(x.conj_sigma().reduce_mod_theta(), x.reduce_mod_theta());
    }

    #[test]
    fn zeta_minus_one_is_divisible_by_theta() {
        // Oracle for ζ ↦ 1 mod θ: (ζ − 1)/θ lies in Z[ζ].
        let num = CycRat::zeta() - CycRat::one();
        let q = num.exact_div_int(&CycRat::theta());
        assert!(q.is_some());
        // And 1/θ is not integral (θ is not a unit).
        assert!(CycRat::one().exact_div_int(&CycRat::theta()).is_none());
    }

    #[test]
    fn kernel_of_reduction_is_exactly_theta() {
        // Scan a small box: reduce_mod_theta(x) = 0 iff θ | x exactly.
        for c0 in -2..=2i64 {
            for c1 in -2..=2i64 {
                for c2 in -2..=2i64 {
                    for c3 in -2..=2i64 {
                        let x = CycInt::new([c0, c1, c2, c3]);
                        let in_kernel = x.reduce_mod_theta().is_zero();
                        let divisible = x
                            .to_rat()
                            .exact_div_int(&CycRat::theta())
                            .is_some();
                        assert_eq!(in_kernel, divisible, "x = {x:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn zeta10_powers() {
        assert_eq!(CycInt::zeta10_pow(0), CycInt::one());
        assert_eq!(CycInt::zeta10_pow(5), CycInt::from_i64(-1));
        assert_eq!(CycInt::zeta10_pow(2), CycInt::zeta_pow(1));
        // Homomorphism and exact order ten.
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(
                    CycInt::zeta10_pow(i) * CycInt::zeta10_pow(j),
                    CycInt::zeta10_pow(i + j)
                );
            }
        }
        for i in 1..10 {
            assert_ne!(CycInt::zeta10_pow(i), CycInt::one(), "order must be exactly 10");
        }
        // The ten powers are pairwise distinct: they exhaust μ_K.
        let mut powers: Vec<CycInt> = (0..10).map(CycInt::zeta10_pow).collect();
        powers.sort();
        powers.dedup();
        assert_eq!(powers.len(), 10);
    }

    #[test]
    fn eta_generates_different_and_is_antisymmetric() {
        let eta = CycRat::eta();
        assert_eq!(eta.conj_sigma(), -eta.clone());
        // η = 5/θ: check by multiplying back.
        assert_eq!(eta * CycRat::theta(), CycRat::from_i64(5));
    }

    #[test]
    fn gold_norm_matches_rational_norm() {
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                let g = GoldInt::new(a, b);
                assert_eq!(rat(g.norm()), g.to_rat().norm_fq());
            }
        }
        // 2 + α and 1 + α are units; 3 + α is not.
        assert!(GoldInt::new(2, 1).is_unit());
        assert!(GoldInt::new(1, 1).is_unit());
        assert!(!GoldInt::new(3, 1).is_unit());
    }

    #[test]
    fn gold_euclidean_division() {
        let a = GoldInt::new(17, -5);
        let b = GoldInt::new(3, 2);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b + r, a);
        assert!(r.norm().abs() < b.norm().abs());
        let g = a.gcd(&b);
        assert!(!g.is_zero());
    }

    #[test]
    fn serialization_round_trip() {
        let x = CycRat::new([rat(1) / rat(2), rat(-3), rat(0), rat(7) / rat(5)]);
        let s = x.to_string();
        assert_eq!(s.parse::<CycRat>().unwrap(), x);
        let g = GoldRat::new(rat(-4) / rat(3), rat(9));
        assert_eq!(g.to_string().parse::<GoldRat>().unwrap(), g);
        assert!("1,2,3".parse::<CycRat>().is_err());
    }

    #[test]
    fn fp5_field_laws() {
        for a in 0..5u8 {
            for b in 1..5u8 {
                let x = Fp5(a);
                let y = Fp5(b);
                let q = x * y.inverse().unwrap();
                assert_eq!(q * y, x);
            }
        }
        assert_eq!(Fp5(2).is_square(), Some(false));
        assert_eq!(Fp5(4).is_square(), Some(true));
        assert_eq!(Fp5(0).is_square(), None);
    }
}
