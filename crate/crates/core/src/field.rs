//! Field descriptors.
//!
//! Elements do not know which field they live in; every operation goes
//! through a descriptor value implementing [`Field`]. This lets runtime
//! fields (`F_p`, `F_{p^n}`, `k[u]/(π)`) share generic code with `ℚ` and
//! `ℚ(√d)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::PolyRing;

/// Outcome of a square-root request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sqrt<E> {
    /// A square root.
    Root(E),
    /// The element is not a square in this field.
    NonSquare,
    /// The field cannot decide.
    Unknown,
}

/// A field whose elements are plain values of type `Elem`.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;

    fn sqrt(&self, _a: &Self::Elem) -> Sqrt<Self::Elem> {
        Sqrt::Unknown
    }

    /// Distinct roots of a nonzero polynomial, when the field can find them.
    fn roots(&self, _f: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        None
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// `None` if the denominator vanishes in this field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let d = self.from_bigint(q.denom());
        let di = self.inv(&d)?;
        Some(self.mul(&self.from_bigint(q.numer()), &di))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Signed exponent; `None` for a negative power of zero.
    fn powi(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }

    fn is_square(&self, a: &Self::Elem) -> Option<bool> {
        match self.sqrt(a) {
            Sqrt::Root(_) => Some(true),
            Sqrt::NonSquare => Some(false),
            Sqrt::Unknown => None,
        }
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Shorthand for a rational from two machine integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a nonnegative integer if it is a perfect square.
pub fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    let n = bigint_sqrt_exact(q.numer())?;
    let d = bigint_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn sqrt(&self, a: &BigRational) -> Sqrt<BigRational> {
        match rational_sqrt_exact(a) {
            Some(r) => Sqrt::Root(r),
            None => Sqrt::NonSquare,
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn roots(&self, f: &[BigRational]) -> Option<Vec<BigRational>> {
        crate::factor::Factoring::roots_of(self, f).ok()
    }
}

/// Element `a + b·√d` of a real or imaginary quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadElem { a, b }
    }
    pub fn rational(a: BigRational) -> Self {
        QuadElem {
            a,
            b: BigRational::zero(),
        }
    }
}

/// `ℚ(√d)` for a squarefree integer `d ≠ 0, 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    d: BigInt,
}

impl QuadraticField {
    pub fn new(d: i64) -> Self {
        assert!(d != 0 && d != 1, "degenerate quadratic field");
        let dd = BigInt::from(d);
        let mut k = 2i64;
        while k * k <= d.abs() {
            assert!(d % (k * k) != 0, "d must be squarefree");
            k += 1;
        }
        QuadraticField { d: dd }
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// The generator `√d`.
    pub fn gen(&self) -> QuadElem {
        QuadElem::new(BigRational::zero(), BigRational::one())
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> QuadElem {
        QuadElem::new(a, b)
    }

    pub fn conj(&self, x: &QuadElem) -> QuadElem {
        QuadElem::new(x.a.clone(), -x.b.clone())
    }

    pub fn norm(&self, x: &QuadElem) -> BigRational {
        &x.a * &x.a - BigRational::from_integer(self.d.clone()) * &x.b * &x.b
    }

    pub fn trace(&self, x: &QuadElem) -> BigRational {
        &x.a + &x.a
    }
}

impl Field for QuadraticField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::new(BigRational::zero(), BigRational::zero())
    }
    fn one(&self) -> QuadElem {
        QuadElem::new(BigRational::one(), BigRational::zero())
    }
    fn from_bigint(&self, n: &BigInt) -> QuadElem {
        QuadElem::rational(BigRational::from_integer(n.clone()))
    }
    fn from_rational(&self, q: &BigRational) -> Option<QuadElem> {
        Some(QuadElem::rational(q.clone()))
    }
    fn add(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem::new(&x.a + &y.a, &x.b + &y.b)
    }
    fn sub(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        QuadElem::new(&x.a - &y.a, &x.b - &y.b)
    }
    fn neg(&self, x: &QuadElem) -> QuadElem {
        QuadElem::new(-x.a.clone(), -x.b.clone())
    }
    fn mul(&self, x: &QuadElem, y: &QuadElem) -> QuadElem {
        let d = BigRational::from_integer(self.d.clone());
        QuadElem::new(&x.a * &y.a + d * &x.b * &y.b, &x.a * &y.b + &x.b * &y.a)
    }
    fn inv(&self, x: &QuadElem) -> Option<QuadElem> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(QuadElem::new(&x.a / &n, -(&x.b / &n)))
    }
    fn is_zero(&self, x: &QuadElem) -> bool {
        x.a.is_zero() && x.b.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, x: &QuadElem) -> String {
        if x.b.is_zero() {
            return x.a.to_string();
        }
        let s = format!("sqrt{}", self.d);
        let bpart = if x.b.is_one() {
            s
        } else if x.b == -BigRational::one() {
            format!("-{s}")
        } else {
            format!("{}*{s}", x.b)
        };
        if x.a.is_zero() {
            bpart
        } else if bpart.starts_with('-') {
            format!("{}{}", x.a, bpart)
        } else {
            format!("{}+{}", x.a, bpart)
        }
    }
    fn sqrt(&self, x: &QuadElem) -> Sqrt<QuadElem> {
        if self.is_zero(x) {
            return Sqrt::Root(self.zero());
        }
        let d = BigRational::from_integer(self.d.clone());
        if x.b.is_zero() {
            if let Some(r) = rational_sqrt_exact(&x.a) {
                return Sqrt::Root(QuadElem::rational(r));
            }
            if let Some(r) = rational_sqrt_exact(&(&x.a / &d)) {
                return Sqrt::Root(QuadElem::new(BigRational::zero(), r));
            }
            return Sqrt::NonSquare;
        }
        // (u + v√d)² = x forces u² − d v² = ±√N(x), 2uv = b.
        let Some(n) = rational_sqrt_exact(&self.norm(x)) else {
            return Sqrt::NonSquare;
        };
        let two = rat(2, 1);
        for cand in [(&x.a + &n) / &two, (&x.a - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt_exact(&cand) {
                let v = &x.b / (&two * &u);
                let r = QuadElem::new(u, v);
                if self.mul(&r, &r) == *x {
                    return Sqrt::Root(r);
                }
            }
        }
        Sqrt::NonSquare
    }
    fn roots(&self, f: &[QuadElem]) -> Option<Vec<QuadElem>> {
        crate::factor::Factoring::roots_of(self, f).ok()
    }
}

/// Simple algebraic extension `k[u]/(m(u))` with `m` monic irreducible.
///
/// Used as the residue field at a place of degree > 1.
#[derive(Clone, Debug)]
pub struct SimpleExtension<F: Field> {
    base: F,
    /// Monic modulus, low degree first.
    modulus: Vec<F::Elem>,
}

impl<F: Field> SimpleExtension<F> {
    /// `modulus` must be monic of degree ≥ 1 and irreducible over `base`.
    pub fn new(base: F, modulus: Vec<F::Elem>) -> Self {
        let ring = PolyRing::new(base.clone());
        let m = ring.normalize(modulus);
        assert!(m.len() >= 2, "modulus of degree 0");
        assert!(base.is_one(m.last().unwrap()), "modulus must be monic");
        SimpleExtension { base, modulus: m }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Embedding of a base element.
    pub fn lift(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = a.clone();
        v
    }

    /// Class of the variable `u`.
    pub fn gen(&self) -> Vec<F::Elem> {
        if self.degree() == 1 {
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut v = vec![self.base.zero(); self.degree()];
        v[1] = self.base.one();
        v
    }

    /// Reduce an arbitrary polynomial in `u`.
    pub fn reduce(&self, f: &[F::Elem]) -> Vec<F::Elem> {
        let ring = PolyRing::new(self.base.clone());
        let (_, r) = ring.divrem(f, &self.modulus);
        self.pad(r)
    }

    fn pad(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        v.resize(self.degree(), self.base.zero());
        v
    }

    /// The element as a base-field scalar, if it is one.
    pub fn as_base(&self, a: &[F::Elem]) -> Option<F::Elem> {
        a[1..]
            .iter()
            .all(|c| self.base.is_zero(c))
            .then(|| a[0].clone())
    }
}

impl<F: Field> Field for SimpleExtension<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.lift(&self.base.one())
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.lift(&self.base.from_bigint(n))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|c| self.lift(&c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ring = PolyRing::new(self.base.clone());
        let prod = ring.mul(a, b);
        self.reduce(&prod)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let ring = PolyRing::new(self.base.clone());
        let an = ring.normalize(a.clone());
        if an.is_empty() {
            return None;
        }
        let (g, s, _) = ring.ext_gcd(&an, &self.modulus);
        // g is a nonzero constant since the modulus is irreducible.
        if g.len() != 1 {
            return None;
        }
        let gi = self.base.inv(&g[0])?;
        Some(self.pad(ring.scale(&s, &gi)))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn render(&self, a: &Self::Elem) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = self.base.render(c);
            parts.push(match i {
                0 => cs,
                1 => format!("({cs})*u"),
                _ => format!("({cs})*u^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
    fn sqrt(&self, a: &Self::Elem) -> Sqrt<Self::Elem> {
        if self.is_zero(a) {
            return Sqrt::Root(self.zero());
        }
        match self.degree() {
            1 => match self.base.sqrt(&a[0]) {
                Sqrt::Root(r) => Sqrt::Root(vec![r]),
                Sqrt::NonSquare => Sqrt::NonSquare,
                Sqrt::Unknown => Sqrt::Unknown,
            },
            2 if self.base.characteristic() != 2 => self.sqrt_quadratic(a),
            _ => Sqrt::Unknown,
        }
    }
    fn roots(&self, f: &[Self::Elem]) -> Option<Vec<Self::Elem>> {
        if self.degree() != 1 {
            return None;
        }
        let g: Vec<F::Elem> = f.iter().map(|c| c[0].clone()).collect();
        self.base
            .roots(&g)
            .map(|r| r.into_iter().map(|x| vec![x]).collect())
    }
}

impl<F: Field> SimpleExtension<F> {
    /// Square roots in `k(√D)` where `u² + m₁u + m₀ = 0`, `D = m₁² − 4m₀`.
    fn sqrt_quadratic(&self, e: &[F::Elem]) -> Sqrt<Vec<F::Elem>> {
        let k = &self.base;
        let (m0, m1) = (&self.modulus[0], &self.modulus[1]);
        let two = k.from_i64(2);
        let half = k.inv(&two).expect("odd characteristic");
        let disc = k.sub(&k.mul(m1, m1), &k.mul(&k.from_i64(4), m0));
        // e = A + B√D with √D = 2u + m₁.
        let bb = k.mul(&e[1], &half);
        let aa = k.sub(&e[0], &k.mul(&bb, m1));
        let to_u = |x: &F::Elem, y: &F::Elem| -> Vec<F::Elem> {
            vec![k.add(x, &k.mul(y, m1)), k.mul(&two, y)]
        };
        let mut unknown = false;
        if k.is_zero(&bb) {
            match k.sqrt(&aa) {
                Sqrt::Root(r) => return Sqrt::Root(to_u(&r, &k.zero())),
                Sqrt::Unknown => unknown = true,
                Sqrt::NonSquare => {}
            }
            let q = k.div(&aa, &disc).expect("separable modulus");
            match k.sqrt(&q) {
                Sqrt::Root(r) => return Sqrt::Root(to_u(&k.zero(), &r)),
                Sqrt::Unknown => unknown = true,
                Sqrt::NonSquare => {}
            }
            return if unknown {
                Sqrt::Unknown
            } else {
                Sqrt::NonSquare
            };
        }
        let norm = k.sub(&k.mul(&aa, &aa), &k.mul(&disc, &k.mul(&bb, &bb)));
        let n = match k.sqrt(&norm) {
            Sqrt::Root(n) => n,
            Sqrt::NonSquare => return Sqrt::NonSquare,
            Sqrt::Unknown => return Sqrt::Unknown,
        };
        for cand in [k.mul(&k.add(&aa, &n), &half), k.mul(&k.sub(&aa, &n), &half)] {
            if k.is_zero(&cand) {
                continue;
            }
            match k.sqrt(&cand) {
                Sqrt::Root(x) => {
                    let y = k.div(&bb, &k.mul(&two, &x)).unwrap();
                    let r = to_u(&x, &y);
                    if self.mul(&r, &r) == e {
                        return Sqrt::Root(r);
                    }
                }
                Sqrt::Unknown => unknown = true,
                Sqrt::NonSquare => {}
            }
        }
        if unknown {
            Sqrt::Unknown
        } else {
            Sqrt::NonSquare
        }
    }
}

/// Squarefree kernel of a positive rational, as a positive integer.
pub fn squarefree_class(q: &BigRational) -> BigInt {
    let n = (q.numer() * q.denom()).abs();
    squarefree_part(&n)
}

/// Product of primes dividing `n` to an odd power.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut n = n.abs();
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * n
}

/// Convert a small rational to `(num, den)` machine integers.
pub fn rational_parts(q: &BigRational) -> Option<(i64, i64)> {
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

/// Gcd of machine integers, always nonnegative.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5_square_roots() {
        let k = QuadraticField::new(5);
        // (3 + √5)/2 = φ², φ = (1 + √5)/2
        let x = k.elem(rat(3, 2), rat(1, 2));
        match k.sqrt(&x) {
            Sqrt::Root(r) => assert_eq!(k.mul(&r, &r), x),
            other => panic!("{other:?}"),
        }
        assert_eq!(k.sqrt(&k.gen()), Sqrt::NonSquare);
        assert_eq!(k.sqrt(&k.from_i64(5)), Sqrt::Root(k.gen()));
        assert_eq!(k.sqrt(&k.from_i64(2)), Sqrt::NonSquare);
    }

    #[test]
    fn quadratic_inverse() {
        let k = QuadraticField::new(5);
        let x = k.elem(rat(7, 3), rat(-2, 5));
        let y = k.inv(&x).unwrap();
        assert!(k.is_one(&k.mul(&x, &y)));
        assert_eq!(k.render(&k.elem(rat(1, 2), rat(-1, 1))), "1/2-sqrt5");
    }

    #[test]
    fn residue_field_of_golden_place() {
        // ℚ[u]/(u² + u − 1) contains √5 = 2u + 1.
        let l = SimpleExtension::new(Rationals, vec![rat(-1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(l.is_square(&l.from_i64(5)), Some(true));
        assert_eq!(l.is_square(&l.from_i64(2)), Some(false));
        let u = l.gen();
        assert_eq!(l.is_square(&u), Some(false));
        let inv = l.inv(&u).unwrap();
        assert!(l.is_one(&l.mul(&u, &inv)));
    }

    #[test]
    fn squarefree_kernel() {
        assert_eq!(squarefree_part(&BigInt::from(108)), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(140)), BigInt::from(35));
        assert_eq!(squarefree_class(&rat(108, 961)), BigInt::from(3));
        assert_eq!(squarefree_class(&rat(108, 31)), BigInt::from(93));
    }
}
