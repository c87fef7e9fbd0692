//! The number-field tower `ℚ ⊂ K₄ = ℚ(√2, √5) ⊂ K₄(α) ⊂ K = K₄(α, β)`
//! with `α² = (1 + √5)/2` and `β³ = √2 − 1`.
//!
//! A [`TowerElement`] stores 24 rational coordinates on the monomials
//! `√2^e₁ √5^e₂ α^e₃ β^e₄` (`e₁, e₂, e₃ ∈ {0,1}`, `e₄ ∈ {0,1,2}`) at index
//! `e₁ + 2e₂ + 4e₃ + 8e₄`. The biquadratic subfield `K₄` also has its own
//! lighter descriptor, [`BiQuadratic`], with coordinates on `1, √2, √5, √10`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{rat, Field, Rationals};
use crate::finite_field::{kronecker_i64, ExtField, Fq, PrimeField};
use crate::poly::PolyRing;

/// Dimension of the tower over `ℚ`.
pub const TOWER_DIM: usize = 24;

/// Exponents `(e₁, e₂, e₃, e₄)` of basis monomial `i`.
pub fn monomial_exponents(i: usize) -> [u32; 4] {
    [
        (i & 1) as u32,
        ((i >> 1) & 1) as u32,
        ((i >> 2) & 1) as u32,
        (i >> 3) as u32,
    ]
}

pub fn monomial_index(e: [u32; 4]) -> usize {
    (e[0] + 2 * e[1] + 4 * e[2] + 8 * e[3]) as usize
}

/// Human-readable name of a basis monomial, e.g. `sqrt2*alpha*beta^2`.
pub fn monomial_name(i: usize) -> String {
    let e = monomial_exponents(i);
    let mut parts = Vec::new();
    if e[0] == 1 {
        parts.push("sqrt2".to_string());
    }
    if e[1] == 1 {
        parts.push("sqrt5".to_string());
    }
    if e[2] == 1 {
        parts.push("alpha".to_string());
    }
    match e[3] {
        1 => parts.push("beta".to_string()),
        2 => parts.push("beta^2".to_string()),
        _ => {}
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

type MulTable = Vec<Vec<Vec<(usize, BigRational)>>>;

/// Normal form of the product of two basis monomials.
fn reduce_monomial(exps: [u32; 4]) -> Vec<(usize, BigRational)> {
    let mut acc = vec![BigRational::zero(); TOWER_DIM];
    let mut work = vec![(BigRational::one(), exps)];
    while let Some((c, mut e)) = work.pop() {
        if e[3] >= 3 {
            // β³ = √2 − 1
            e[3] -= 3;
            let mut up = e;
            up[0] += 1;
            work.push((c.clone(), up));
            work.push((-c, e));
        } else if e[2] >= 2 {
            // α² = (1 + √5)/2
            e[2] -= 2;
            let half = &c * rat(1, 2);
            let mut up = e;
            up[1] += 1;
            work.push((half.clone(), up));
            work.push((half, e));
        } else if e[0] >= 2 {
            e[0] -= 2;
            work.push((c * rat(2, 1), e));
        } else if e[1] >= 2 {
            e[1] -= 2;
            work.push((c * rat(5, 1), e));
        } else {
            let i = monomial_index(e);
            acc[i] += c;
        }
    }
    acc.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn mul_table() -> &'static MulTable {
    static TABLE: OnceLock<MulTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..TOWER_DIM)
            .map(|i| {
                (0..TOWER_DIM)
                    .map(|j| {
                        let (a, b) = (monomial_exponents(i), monomial_exponents(j));
                        reduce_monomial([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
                    })
                    .collect()
            })
            .collect()
    })
}

/// An element of the degree-24 tower in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerElement {
    coords: Vec<BigRational>,
}

impl TowerElement {
    pub fn zero() -> Self {
        TowerElement {
            coords: vec![BigRational::zero(); TOWER_DIM],
        }
    }

    pub fn from_coords(coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != TOWER_DIM {
            return Err(Error::Domain(format!(
                "expected 24 coordinates, got {}",
                coords.len()
            )));
        }
        Ok(TowerElement { coords })
    }

    pub fn rational(q: BigRational) -> Self {
        let mut t = Self::zero();
        t.coords[0] = q;
        t
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n, 1))
    }

    /// The monomial with exponents `e`.
    pub fn monomial(e: [u32; 4]) -> Self {
        let mut t = Self::zero();
        t.coords[monomial_index(e)] = BigRational::one();
        t
    }

    pub fn sqrt2() -> Self {
        Self::monomial([1, 0, 0, 0])
    }
    pub fn sqrt5() -> Self {
        Self::monomial([0, 1, 0, 0])
    }
    pub fn alpha() -> Self {
        Self::monomial([0, 0, 1, 0])
    }
    pub fn beta() -> Self {
        Self::monomial([0, 0, 0, 1])
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True if only the `1, √2, √5, √10` coordinates are nonzero.
    pub fn in_k4(&self) -> bool {
        self.coords[4..].iter().all(|c| c.is_zero())
    }

    pub fn to_k4(&self) -> Result<K4Elem> {
        if !self.in_k4() {
            return Err(Error::Domain("element lies outside Q(sqrt2, sqrt5)".into()));
        }
        Ok(K4Elem(self.coords[..4].to_vec().try_into().unwrap()))
    }

    pub fn from_k4(x: &K4Elem) -> Self {
        let mut t = Self::zero();
        t.coords[..4].clone_from_slice(&x.0);
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        TowerElement {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        TowerElement {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TowerElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        TowerElement {
            coords: self.coords.iter().map(|a| a * q).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let table = mul_table();
        let mut out = vec![BigRational::zero(); TOWER_DIM];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        TowerElement { coords: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::int(1), |acc, _| acc.mul(self))
    }

    /// Inverse via the 24×24 multiplication matrix.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        // Column j of M is self · e_j.
        let n = TOWER_DIM;
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let col = self.mul(&Self::monomial(monomial_exponents(j)));
            for i in 0..n {
                m[i][j] = col.coords[i].clone();
            }
        }
        m[0][n] = BigRational::one();
        let sol = solve_rational(m)
            .ok_or_else(|| Error::Check("singular multiplication matrix".into()))?;
        Ok(TowerElement { coords: sol })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Apply `√5 ↦ −√5` and `α ↦ ±α` consistently is not an automorphism
    /// of `K`; only the `K₄` conjugations are provided, on `K₄` elements.
    pub fn conj_k4(&self, s2: bool, s5: bool) -> Result<Self> {
        let x = self.to_k4()?;
        Ok(Self::from_k4(&BiQuadratic.conj(&x, s2, s5)))
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i == 0 {
                parts.push(c.to_string());
            } else {
                parts.push(format!("({c})*{}", monomial_name(i)));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Gauss–Jordan on an augmented rational matrix `[A | b]`.
fn solve_rational(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Descriptor for the full tower as a [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tower;

impl Field for Tower {
    type Elem = TowerElement;

    fn zero(&self) -> TowerElement {
        TowerElement::zero()
    }
    fn one(&self) -> TowerElement {
        TowerElement::int(1)
    }
    fn from_bigint(&self, n: &BigInt) -> TowerElement {
        TowerElement::rational(BigRational::from_integer(n.clone()))
    }
    fn from_rational(&self, q: &BigRational) -> Option<TowerElement> {
        Some(TowerElement::rational(q.clone()))
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.add(b)
    }
    fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.sub(b)
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        a.neg()
    }
    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        a.mul(b)
    }
    fn inv(&self, a: &TowerElement) -> Option<TowerElement> {
        a.inv().ok()
    }
    fn is_zero(&self, a: &TowerElement) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &TowerElement) -> String {
        a.to_string()
    }
}

/// Element `c₀ + c₁√2 + c₂√5 + c₃√10` of `K₄`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct K4Elem(pub [BigRational; 4]);

impl K4Elem {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational) -> Self {
        K4Elem([c0, c1, c2, c3])
    }

    /// From integer coordinates over a common denominator.
    pub fn ints(c: [i64; 4], den: i64) -> Self {
        K4Elem([
            rat(c[0], den),
            rat(c[1], den),
            rat(c[2], den),
            rat(c[3], den),
        ])
    }
}

/// `K₄ = ℚ(√2, √5)` with basis `1, √2, √5, √10`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BiQuadratic;

impl BiQuadratic {
    pub fn sqrt2(&self) -> K4Elem {
        K4Elem::ints([0, 1, 0, 0], 1)
    }
    pub fn sqrt5(&self) -> K4Elem {
        K4Elem::ints([0, 0, 1, 0], 1)
    }
    pub fn sqrt10(&self) -> K4Elem {
        K4Elem::ints([0, 0, 0, 1], 1)
    }

    /// The automorphism `√2 ↦ ±√2`, `√5 ↦ ±√5` (flag true = negate).
    pub fn conj(&self, x: &K4Elem, s2: bool, s5: bool) -> K4Elem {
        let [c0, c1, c2, c3] = &x.0;
        let f = |c: &BigRational, neg: bool| if neg { -c.clone() } else { c.clone() };
        K4Elem([c0.clone(), f(c1, s2), f(c2, s5), f(c3, s2 != s5)])
    }

    pub fn norm_to_q(&self, x: &K4Elem) -> BigRational {
        let mut acc = self.one();
        for (s2, s5) in [(false, false), (true, false), (false, true), (true, true)] {
            acc = self.mul(&acc, &self.conj(x, s2, s5));
        }
        debug_assert!(acc.0[1..].iter().all(|c| c.is_zero()));
        acc.0[0].clone()
    }
}

impl Field for BiQuadratic {
    type Elem = K4Elem;

    fn zero(&self) -> K4Elem {
        K4Elem::ints([0; 4], 1)
    }
    fn one(&self) -> K4Elem {
        K4Elem::ints([1, 0, 0, 0], 1)
    }
    fn from_bigint(&self, n: &BigInt) -> K4Elem {
        let z = BigRational::zero();
        K4Elem([
            BigRational::from_integer(n.clone()),
            z.clone(),
            z.clone(),
            z,
        ])
    }
    fn from_rational(&self, q: &BigRational) -> Option<K4Elem> {
        let z = BigRational::zero();
        Some(K4Elem([q.clone(), z.clone(), z.clone(), z]))
    }
    fn add(&self, a: &K4Elem, b: &K4Elem) -> K4Elem {
        K4Elem(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }
    fn sub(&self, a: &K4Elem, b: &K4Elem) -> K4Elem {
        K4Elem(std::array::from_fn(|i| &a.0[i] - &b.0[i]))
    }
    fn neg(&self, a: &K4Elem) -> K4Elem {
        K4Elem(std::array::from_fn(|i| -a.0[i].clone()))
    }
    fn mul(&self, a: &K4Elem, b: &K4Elem) -> K4Elem {
        let [a0, a1, a2, a3] = &a.0;
        let [b0, b1, b2, b3] = &b.0;
        let two = rat(2, 1);
        let five = rat(5, 1);
        let ten = rat(10, 1);
        K4Elem([
            a0 * b0 + &two * a1 * b1 + &five * a2 * b2 + &ten * a3 * b3,
            a0 * b1 + a1 * b0 + &five * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + &two * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ])
    }
    fn inv(&self, a: &K4Elem) -> Option<K4Elem> {
        if self.is_zero(a) {
            return None;
        }
        // x⁻¹ = (product of the three other conjugates) / N(x)
        let mut num = self.one();
        for (s2, s5) in [(true, false), (false, true), (true, true)] {
            num = self.mul(&num, &self.conj(a, s2, s5));
        }
        let n = self.mul(a, &num).0[0].clone();
        let ni = n.recip();
        Some(K4Elem(std::array::from_fn(|i| &num.0[i] * &ni)))
    }
    fn is_zero(&self, a: &K4Elem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &K4Elem) -> String {
        let names = ["", "sqrt2", "sqrt5", "sqrt10"];
        let mut parts = Vec::new();
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(if i == 0 {
                c.to_string()
            } else {
                format!("({c})*{}", names[i])
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Minimal polynomial over `ℚ` of an element of `K₄`, as a primitive
/// integer polynomial with positive leading coefficient (constant first).
pub fn minimal_polynomial_over_q(x: &TowerElement) -> Result<Vec<BigInt>> {
    let k4 = x.to_k4()?;
    let k = BiQuadratic;
    let ring = PolyRing::new(k);
    let mut prod = vec![k.one()];
    for (s2, s5) in [(false, false), (true, false), (false, true), (true, true)] {
        let root = k.conj(&k4, s2, s5);
        prod = ring.mul(&prod, &[k.neg(&root), k.one()]);
    }
    let qpoly: Vec<BigRational> = prod
        .iter()
        .map(|c| {
            debug_assert!(c.0[1..].iter().all(|z| z.is_zero()));
            c.0[0].clone()
        })
        .collect();
    let qr = PolyRing::new(Rationals);
    let g = qr.gcd(&qpoly, &qr.derivative(&qpoly));
    let rad = qr.div_exact(&qpoly, &g).expect("gcd divides");
    Ok(primitive_integer_poly(&rad))
}

/// Scale a rational polynomial to a primitive integer one with positive
/// leading coefficient.
pub fn primitive_integer_poly(f: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut l = BigInt::one();
    for c in f {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.iter().map(|c| c / &g * &sign).collect()
}

/// Images of the tower generators in a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEmbedding {
    pub field: ExtField,
    pub r2: Fq,
    pub r5: Fq,
    /// Root of `X² = (r₅ + 1)/2`, when one exists.
    pub alpha: Option<Fq>,
    /// Smallest cube root of `r₂ − 1`, when one exists.
    pub beta: Option<Fq>,
}

impl SplitEmbedding {
    /// Embedding of `K₄` into `F_p` for a prime split in `K₄`; the flags pick
    /// the negated square roots. The canonical roots are the smaller
    /// representatives in `[0, p)`.
    pub fn new(p: u64, neg2: bool, neg5: bool) -> Result<Self> {
        if kronecker_i64(2, p)? != 1 || kronecker_i64(5, p)? != 1 {
            return Err(Error::Domain(format!(
                "{p} does not split in Q(sqrt2, sqrt5)"
            )));
        }
        let field = ExtField::prime(PrimeField::new(p)?);
        Self::into_field(field, neg2, neg5)
    }

    /// Embedding into an arbitrary `F_q` containing `√2` and `√5`.
    pub fn into_field(field: ExtField, neg2: bool, neg5: bool) -> Result<Self> {
        let r2 = canonical_sqrt(&field, field.from_i64(2), neg2)
            .ok_or_else(|| Error::Domain("2 is not a square in the target field".into()))?;
        let r5 = canonical_sqrt(&field, field.from_i64(5), neg5)
            .ok_or_else(|| Error::Domain("5 is not a square in the target field".into()))?;
        let half = field.inv(&field.from_i64(2)).unwrap();
        let a2 = field.mul(&field.add(&r5, &field.one()), &half);
        let alpha = canonical_sqrt(&field, a2, false);
        let target = field.sub(&r2, &field.one());
        let beta = field
            .elements()
            .filter(|&z| field.mul(&field.mul(&z, &z), &z) == target)
            .min_by_key(|&z| field.index(z));
        Ok(SplitEmbedding {
            field,
            r2,
            r5,
            alpha,
            beta,
        })
    }

    /// All four sign choices for a split prime.
    pub fn all(p: u64) -> Result<Vec<Self>> {
        let mut v = Vec::new();
        for neg2 in [false, true] {
            for neg5 in [false, true] {
                v.push(Self::new(p, neg2, neg5)?);
            }
        }
        Ok(v)
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    fn map_rational(&self, q: &BigRational) -> Result<Fq> {
        self.field
            .from_rational(q)
            .ok_or_else(|| Error::Domain(format!("denominator of {q} divisible by {}", self.p())))
    }

    pub fn map_k4(&self, x: &K4Elem) -> Result<Fq> {
        let f = &self.field;
        let basis = [f.one(), self.r2, self.r5, f.mul(&self.r2, &self.r5)];
        let mut acc = f.zero();
        for (c, b) in x.0.iter().zip(basis) {
            if !c.is_zero() {
                acc = f.add(&acc, &f.mul(&self.map_rational(c)?, &b));
            }
        }
        Ok(acc)
    }

    pub fn map(&self, x: &TowerElement) -> Result<Fq> {
        let f = &self.field;
        let mut acc = f.zero();
        for (i, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = monomial_exponents(i);
            let mut m = f.one();
            if e[0] == 1 {
                m = f.mul(&m, &self.r2);
            }
            if e[1] == 1 {
                m = f.mul(&m, &self.r5);
            }
            if e[2] == 1 {
                let a = self
                    .alpha
                    .ok_or_else(|| Error::Domain("no image for alpha".into()))?;
                m = f.mul(&m, &a);
            }
            if e[3] > 0 {
                let b = self
                    .beta
                    .ok_or_else(|| Error::Domain("no image for beta".into()))?;
                m = f.mul(&m, &f.pow(&b, e[3] as u64));
            }
            acc = f.add(&acc, &f.mul(&self.map_rational(c)?, &m));
        }
        Ok(acc)
    }
}

fn canonical_sqrt(field: &ExtField, a: Fq, negate: bool) -> Option<Fq> {
    let r = match field.sqrt(&a) {
        crate::field::Sqrt::Root(r) => r,
        _ => return None,
    };
    let other = field.neg(&r);
    let (small, large) = if field.index(r) <= field.index(other) {
        (r, other)
    } else {
        (other, r)
    };
    Some(if negate { large } else { small })
}

/// Reduce a tower element into `F_p` under a split embedding.
pub fn reduce_mod_p(x: &TowerElement, emb: &SplitEmbedding) -> Result<u64> {
    if emb.field.degree() != 1 {
        return Err(Error::Domain(
            "reduce_mod_p expects a prime-field embedding".into(),
        ));
    }
    Ok(emb.map(x)?.0[0] as u64)
}

/// Named constants of the tower.
pub mod constants {
    use super::*;

    /// `κ = 1/2 + 1/√2 = (1 + √2)/2`.
    pub fn kappa() -> K4Elem {
        K4Elem::new(rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1))
    }

    /// `η² = 117√2 + 74√5 + 37√10 + 117`.
    pub fn eta_squared() -> K4Elem {
        K4Elem::ints([117, 117, 74, 37], 1)
    }

    /// `A = √5`.
    pub fn big_a() -> TowerElement {
        TowerElement::sqrt5()
    }

    fn k4_times(c: [i64; 4], den: i64, m: TowerElement) -> TowerElement {
        TowerElement::from_k4(&K4Elem::ints(c, den)).mul(&m)
    }

    pub fn a() -> TowerElement {
        k4_times([40515, 10611, -18087, -4775], 6, TowerElement::beta())
    }

    pub fn b() -> TowerElement {
        k4_times(
            [10686297, 2961088, -4779461, -1323946],
            27,
            TowerElement::alpha(),
        )
    }

    pub fn c() -> TowerElement {
        k4_times(
            [-19293, -29904, 8537, 13312],
            6,
            TowerElement::beta().pow(2),
        )
    }

    pub fn d() -> TowerElement {
        k4_times(
            [10686297, -2961088, -4779461, 1323946],
            27,
            TowerElement::alpha(),
        )
    }
}

/// Residuals of the five Shioda–Inose equations at `(A, a, b, c, d)`.
#[derive(Clone, Debug)]
pub struct SiResiduals {
    pub residuals: Vec<TowerElement>,
}

impl SiResiduals {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.is_zero())
    }

    /// 1-based indices of the equations that fail.
    pub fn failing(&self) -> Vec<usize> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

fn big(s: &str) -> TowerElement {
    TowerElement::rational(BigRational::from_integer(s.parse::<BigInt>().unwrap()))
}

/// Evaluate the five polynomial equations defining the Kummer-matching
/// scheme at a point.
pub fn verify_si_system(
    a_big: &TowerElement,
    a: &TowerElement,
    b: &TowerElement,
    c: &TowerElement,
    d: &TowerElement,
) -> SiResiduals {
    let k = |n: i64| TowerElement::int(n);
    let r1 = a_big.mul(a_big).sub(&k(5));
    let r2 = big("1411985089")
        .sub(&big("631459755").mul(a_big))
        .add(&k(18).mul(a).mul(c));
    let r3 = big("131587540863282")
        .sub(&big("58847737271814").mul(a_big))
        .add(&k(108).mul(&c.pow(3)))
        .add(&k(729).mul(&d.pow(2)));
    let r4 = big("-238992218766044")
        .add(&big("106880569389324").mul(a_big))
        .sub(&k(1458).mul(b).mul(d));
    let r5 = big("131587540863282")
        .add(&k(108).mul(&a.pow(3)))
        .sub(&big("58847737271814").mul(a_big))
        .add(&k(729).mul(&b.pow(2)));
    SiResiduals {
        residuals: vec![r1, r2, r3, r4, r5],
    }
}

/// Integer coefficient as `i64` if it fits.
pub fn small_int(c: &BigInt) -> Option<i64> {
    c.to_i64()
}
