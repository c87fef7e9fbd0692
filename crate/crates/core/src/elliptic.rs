//! Weierstrass curves over an arbitrary [`Field`], with point counting,
//! traces, twists and Hasse invariants over finite fields.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Sqrt};
use crate::finite_field::{ExtField, Fq};
use crate::numfield::{BiQuadratic, SplitEmbedding};
use crate::poly::PolyRing;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassModel<F: Field> {
    field: F,
    a: [F::Elem; 5],
}

impl<F: Field> WeierstrassModel<F> {
    /// Coefficients in the order `a₁, a₂, a₃, a₄, a₆`; rejects `Δ = 0`.
    pub fn new(field: F, a: [F::Elem; 5]) -> Result<Self> {
        let e = Self::new_unchecked(field, a);
        if e.field.is_zero(&e.discriminant()) {
            return Err(Error::Domain("singular Weierstrass model".into()));
        }
        Ok(e)
    }

    pub fn new_unchecked(field: F, a: [F::Elem; 5]) -> Self {
        WeierstrassModel { field, a }
    }

    /// `y² = x³ + ax + b`.
    pub fn short(field: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let z = field.zero();
        Self::new(field, [z.clone(), z.clone(), z, a, b])
    }

    /// `y² = x³ + a₂x² + a₄x + a₆`.
    pub fn cubic(field: F, a2: F::Elem, a4: F::Elem, a6: F::Elem) -> Result<Self> {
        let z = field.zero();
        Self::new(field, [z.clone(), a2, z, a4, a6])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem; 5] {
        &self.a
    }

    pub fn a1(&self) -> &F::Elem {
        &self.a[0]
    }
    pub fn a2(&self) -> &F::Elem {
        &self.a[1]
    }
    pub fn a3(&self) -> &F::Elem {
        &self.a[2]
    }
    pub fn a4(&self) -> &F::Elem {
        &self.a[3]
    }
    pub fn a6(&self) -> &F::Elem {
        &self.a[4]
    }

    /// `(a, b)` when `a₁ = a₂ = a₃ = 0`.
    pub fn short_coeffs(&self) -> Option<(F::Elem, F::Elem)> {
        let k = &self.field;
        (k.is_zero(&self.a[0]) && k.is_zero(&self.a[1]) && k.is_zero(&self.a[2]))
            .then(|| (self.a[3].clone(), self.a[4].clone()))
    }

    fn k(&self, n: i64) -> F::Elem {
        self.field.from_i64(n)
    }

    pub fn b2(&self) -> F::Elem {
        let k = &self.field;
        k.add(
            &k.mul(&self.a[0], &self.a[0]),
            &k.mul(&self.k(4), &self.a[1]),
        )
    }
    pub fn b4(&self) -> F::Elem {
        let k = &self.field;
        k.add(
            &k.mul(&self.k(2), &self.a[3]),
            &k.mul(&self.a[0], &self.a[2]),
        )
    }
    pub fn b6(&self) -> F::Elem {
        let k = &self.field;
        k.add(
            &k.mul(&self.a[2], &self.a[2]),
            &k.mul(&self.k(4), &self.a[4]),
        )
    }
    pub fn b8(&self) -> F::Elem {
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let t1 = k.mul(&k.mul(a1, a1), a6);
        let t2 = k.mul(&self.k(4), &k.mul(a2, a6));
        let t3 = k.mul(&k.mul(a1, a3), a4);
        let t4 = k.mul(&k.mul(a2, a3), a3);
        let t5 = k.mul(a4, a4);
        k.sub(&k.sub(&k.add(&k.add(&t1, &t2), &t4), &t3), &t5)
    }
    pub fn c4(&self) -> F::Elem {
        let k = &self.field;
        let b2 = self.b2();
        k.sub(&k.mul(&b2, &b2), &k.mul(&self.k(24), &self.b4()))
    }
    pub fn c6(&self) -> F::Elem {
        let k = &self.field;
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        let b2c = k.mul(&k.mul(&b2, &b2), &b2);
        k.sub(
            &k.add(&k.neg(&b2c), &k.mul(&self.k(36), &k.mul(&b2, &b4))),
            &k.mul(&self.k(216), &b6),
        )
    }
    pub fn discriminant(&self) -> F::Elem {
        let k = &self.field;
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let t1 = k.neg(&k.mul(&k.mul(&b2, &b2), &b8));
        let t2 = k.mul(&self.k(8), &k.mul(&k.mul(&b4, &b4), &b4));
        let t3 = k.mul(&self.k(27), &k.mul(&b6, &b6));
        let t4 = k.mul(&self.k(9), &k.mul(&k.mul(&b2, &b4), &b6));
        k.add(&k.sub(&k.sub(&t1, &t2), &t3), &t4)
    }

    /// `j = c₄³/Δ`.
    pub fn j_invariant(&self) -> Result<F::Elem> {
        let k = &self.field;
        let c4 = self.c4();
        k.div(&k.mul(&k.mul(&c4, &c4), &c4), &self.discriminant())
            .ok_or_else(|| Error::Domain("j-invariant of a singular model".into()))
    }

    /// Complete the square: the model `y² = x³ + (b₂/4)x² + (b₄/2)x + b₆/4`.
    pub fn complete_square(&self) -> Result<Self> {
        let k = &self.field;
        let two = k
            .inv(&self.k(2))
            .ok_or_else(|| Error::Domain("characteristic 2".into()))?;
        let four = k.mul(&two, &two);
        Ok(Self::new_unchecked(
            k.clone(),
            [
                k.zero(),
                k.mul(&self.b2(), &four),
                k.zero(),
                k.mul(&self.b4(), &two),
                k.mul(&self.b6(), &four),
            ],
        ))
    }

    /// Short model `y² = x³ − 27c₄x − 54c₆`, isomorphic for characteristic ≠ 2, 3.
    pub fn short_form(&self) -> Result<Self> {
        let ch = self.field.characteristic();
        if ch == 2 || ch == 3 {
            return Err(Error::Domain(
                "short form needs characteristic other than 2, 3".into(),
            ));
        }
        let k = &self.field;
        Ok(Self::new_unchecked(
            k.clone(),
            [
                k.zero(),
                k.zero(),
                k.zero(),
                k.mul(&self.k(-27), &self.c4()),
                k.mul(&self.k(-54), &self.c6()),
            ],
        ))
    }

    /// Quadratic twist by `d`: on `y² = x³ + a₂x² + a₄x + a₆` this is
    /// `y² = x³ + da₂x² + d²a₄x + d³a₆`, i.e. `(a, b) ↦ (d²a, d³b)` in short form.
    pub fn quadratic_twist(&self, d: &F::Elem) -> Result<Self> {
        let k = &self.field;
        if k.is_zero(d) {
            return Err(Error::Domain("twist by zero".into()));
        }
        let base = if k.is_zero(&self.a[0]) && k.is_zero(&self.a[2]) {
            self.clone()
        } else {
            self.complete_square()?
        };
        let d2 = k.mul(d, d);
        let d3 = k.mul(&d2, d);
        Self::new(
            k.clone(),
            [
                k.zero(),
                k.mul(d, &base.a[1]),
                k.zero(),
                k.mul(&d2, &base.a[3]),
                k.mul(&d3, &base.a[4]),
            ],
        )
    }

    /// Apply a coefficient map (e.g. reduction into a finite field).
    pub fn map<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<WeierstrassModel<G>> {
        let a = [
            f(&self.a[0])?,
            f(&self.a[1])?,
            f(&self.a[2])?,
            f(&self.a[3])?,
            f(&self.a[4])?,
        ];
        Ok(WeierstrassModel::new_unchecked(target, a))
    }

    pub fn is_singular(&self) -> bool {
        self.field.is_zero(&self.discriminant())
    }

    /// `x³ + a₂x² + a₄x + a₆` (the right-hand side when `a₁ = a₃ = 0`).
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        let t = k.add(&k.mul(&k.add(x, &self.a[1]), x), &self.a[3]);
        k.add(&k.mul(&t, x), &self.a[4])
    }

    pub fn is_on_curve(&self, p: &Point<F::Elem>) -> bool {
        let k = &self.field;
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let lhs = k.add(
                    &k.mul(y, y),
                    &k.mul(y, &k.add(&k.mul(&self.a[0], x), &self.a[2])),
                );
                k.is_zero(&k.sub(&lhs, &self.rhs(x)))
            }
        }
    }

    pub fn neg_point(&self, p: &Point<F::Elem>) -> Point<F::Elem> {
        let k = &self.field;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let ny = k.sub(&k.neg(y), &k.add(&k.mul(&self.a[0], x), &self.a[2]));
                Point::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord-and-tangent addition.
    pub fn add_points(&self, p: &Point<F::Elem>, q: &Point<F::Elem>) -> Point<F::Elem> {
        let k = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if k.is_zero(&k.sub(x1, x2)) {
            let den = k.add(&k.add(&k.mul(&self.k(2), y1), &k.mul(a1, x1)), a3);
            if k.is_zero(&den) {
                return Point::Infinity;
            }
            if !k.is_zero(&k.sub(y1, y2)) {
                return Point::Infinity;
            }
            let x1s = k.mul(x1, x1);
            let num = k.sub(
                &k.add(
                    &k.add(&k.mul(&self.k(3), &x1s), &k.mul(&self.k(2), &k.mul(a2, x1))),
                    a4,
                ),
                &k.mul(a1, y1),
            );
            let lambda = k.div(&num, &den).unwrap();
            let x1c = k.mul(&x1s, x1);
            let nnum = k.sub(
                &k.sub(
                    &k.add(&k.neg(&x1c), &k.mul(a4, x1)),
                    &k.mul(&self.k(-2), a6),
                ),
                &k.mul(a3, y1),
            );
            // ν = (−x₁³ + a₄x₁ + 2a₆ − a₃y₁) / (2y₁ + a₁x₁ + a₃)
            let nu = k.div(&nnum, &den).unwrap();
            (lambda, nu)
        } else {
            let dx = k.sub(x2, x1);
            let lambda = k.div(&k.sub(y2, y1), &dx).unwrap();
            let nu = k.div(&k.sub(&k.mul(y1, x2), &k.mul(y2, x1)), &dx).unwrap();
            (lambda, nu)
        };
        let x3 = k.sub(
            &k.sub(
                &k.sub(&k.add(&k.mul(&lambda, &lambda), &k.mul(a1, &lambda)), a2),
                x1,
            ),
            x2,
        );
        let y3 = k.sub(&k.sub(&k.neg(&k.mul(&k.add(&lambda, a1), &x3)), &nu), a3);
        Point::Affine(x3, y3)
    }

    pub fn mul_point(&self, p: &Point<F::Elem>, n: i64) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        let mut base = if n < 0 { self.neg_point(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add_points(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add_points(&base, &base);
            }
        }
        acc
    }

    pub fn render(&self) -> String {
        let k = &self.field;
        let names = ["a1", "a2", "a3", "a4", "a6"];
        names
            .iter()
            .zip(&self.a)
            .map(|(n, c)| format!("{n}={}", k.render(c)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// A point in affine coordinates or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

/// Frobenius trace of a curve over `F_{p^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TraceRecord {
    pub p: u64,
    pub n: u32,
    /// Trace of Frobenius over `F_{p^n}`.
    pub a: i64,
    /// Number of points including infinity, `p^n + 1 − a`.
    pub count: u64,
}

impl TraceRecord {
    fn checked(p: u64, n: u32, count: u64) -> Result<Self> {
        let q = p.pow(n);
        let a = q as i64 + 1 - count as i64;
        // a² ≤ 4q
        if (a as i128) * (a as i128) > 4 * q as i128 {
            return Err(Error::Check(format!(
                "Hasse bound violated: a = {a} over F_{p}^{n}"
            )));
        }
        Ok(TraceRecord { p, n, a, count })
    }
}

/// Sum of `1 + χ(x³ + a₂x² + a₄x + a₆)` over all `x`, using a character table.
pub fn affine_count_with_table(field: &ExtField, a2: Fq, a4: Fq, a6: Fq, chi: &[i8]) -> i64 {
    let q = field.order() as usize;
    let mut s: i64 = q as i64;
    for i in 0..q {
        let x = field.from_index(i);
        let t = field.add_fast(field.mul_fast(field.add_fast(x, a2), x), a4);
        let r = field.add_fast(field.mul_fast(t, x), a6);
        s += chi[field.index(r)] as i64;
    }
    s
}

/// Normalize to `y² = x³ + a₂x² + a₄x + a₆` over `F_q` (odd `q`).
pub fn cubic_coeffs(e: &WeierstrassModel<ExtField>) -> Result<(Fq, Fq, Fq)> {
    if e.field().p() == 2 {
        return Err(Error::Domain("even characteristic".into()));
    }
    let c = e.complete_square()?;
    Ok((c.a[1], c.a[3], c.a[4]))
}

/// Count `E(F_q)` including the point at infinity.
pub fn count_points(e: &WeierstrassModel<ExtField>) -> Result<TraceRecord> {
    if e.is_singular() {
        return Err(Error::Domain("singular curve".into()));
    }
    let f = e.field();
    let (a2, a4, a6) = cubic_coeffs(e)?;
    let mut s: i64 = 1;
    for x in f.elements() {
        s += 1 + f.chi(f.add_fast(
            f.mul_fast(f.add_fast(f.mul_fast(f.add_fast(x, a2), x), a4), x),
            a6,
        )) as i64;
    }
    TraceRecord::checked(f.p(), f.degree() as u32, s as u64)
}

/// Same as [`count_points`] with a precomputed character table.
pub fn count_points_with_table(e: &WeierstrassModel<ExtField>, chi: &[i8]) -> Result<TraceRecord> {
    if e.is_singular() {
        return Err(Error::Domain("singular curve".into()));
    }
    let f = e.field();
    let (a2, a4, a6) = cubic_coeffs(e)?;
    let s = 1 + affine_count_with_table(f, a2, a4, a6, chi);
    TraceRecord::checked(f.p(), f.degree() as u32, s as u64)
}

/// Trace over `F_{p^n}` from the trace over `F_p`:
/// `s₀ = 2, s₁ = a, s_k = a·s_{k−1} − p·s_{k−2}`.
pub fn trace_lift(a: i64, p: u64, n: u32) -> Result<i128> {
    if (a as i128) * (a as i128) > 4 * p as i128 {
        return Err(Error::Domain(format!(
            "trace {a} violates the Hasse bound at {p}"
        )));
    }
    let (a, p) = (a as i128, p as i128);
    let (mut s0, mut s1) = (2i128, a);
    if n == 0 {
        return Ok(2);
    }
    for _ in 1..n {
        let s2 = a * s1 - p * s0;
        s0 = s1;
        s1 = s2;
    }
    Ok(s1)
}

/// Coefficient of `x^{p−1}` in `(x³ + Ax + B)^{(p−1)/2}`, the Hasse invariant
/// of `y² = x³ + Ax + B` up to sign. Runs in `O(p)` time and constant memory.
pub fn hasse_invariant(field: &ExtField, a: Fq, b: Fq) -> Fq {
    let p = field.p();
    let fp = field.base();
    let m = (p - 1) / 2;
    let i_lo = m.div_ceil(2);
    let i_hi = (p - 1) / 3;
    if i_lo > i_hi {
        return Fq::ZERO;
    }
    // multinomial m!/(i! j! k!) with j = p−1−3i, k = 2i − m
    let fact = |n: u64| (1..=n).fold(1u64, |acc, x| acc * x % p);
    let inv = |x: u64| fp.inv(&(x % p)).expect("nonzero below p");
    let i0 = i_lo;
    let (j0, k0) = (p - 1 - 3 * i0, 2 * i0 - m);
    let mut coef = fact(m) * inv(fact(i0) * fact(j0) % p * fact(k0) % p) % p;
    let zero = Fq::ZERO;
    if a == zero {
        // only j = 0 contributes
        if !(p - 1).is_multiple_of(3) {
            return zero;
        }
        let i = (p - 1) / 3;
        let k = 2 * i - m;
        let c = fact(m) * inv(fact(i) * fact(k) % p) % p;
        return field.mul_fast(field.scalar(c), field.pow_fast(b, k as u128));
    }
    if b == zero {
        // only k = 0 contributes
        if !m.is_multiple_of(2) {
            return zero;
        }
        let i = m / 2;
        let j = p - 1 - 3 * i;
        let c = fact(m) * inv(fact(i) * fact(j) % p) % p;
        return field.mul_fast(field.scalar(c), field.pow_fast(a, j as u128));
    }
    let ratio = field.mul_fast(
        field.mul_fast(b, b),
        field.inv(&field.pow_fast(a, 3)).unwrap(),
    );
    let mut mono = field.mul_fast(field.pow_fast(a, j0 as u128), field.pow_fast(b, k0 as u128));
    let mut acc = Fq::ZERO;
    let (mut j, mut k) = (j0, k0);
    for i in i0..=i_hi {
        acc = field.add_fast(acc, field.mul_fast(field.scalar(coef), mono));
        if i == i_hi {
            break;
        }
        // step i → i+1: j −= 3, k += 2
        let num = j % p * ((j - 1) % p) % p * ((j - 2) % p) % p;
        let den = (i + 1) % p * ((k + 1) % p) % p * ((k + 2) % p) % p;
        coef = coef * num % p * inv(den) % p;
        mono = field.mul_fast(mono, ratio);
        j -= 3;
        k += 2;
    }
    acc
}

/// Supersingularity via the Hasse invariant of the short model.
pub fn is_supersingular(e: &WeierstrassModel<ExtField>) -> Result<bool> {
    let f = e.field();
    if f.p() < 5 {
        return Err(Error::Domain("supersingularity test needs p ≥ 5".into()));
    }
    if f.degree() > 2 {
        return Err(Error::Domain(
            "supersingularity test supports F_p and F_{p^2}".into(),
        ));
    }
    if e.is_singular() {
        return Err(Error::Domain("singular curve".into()));
    }
    let s = e.short_form()?;
    Ok(hasse_invariant(f, s.a[3], s.a[4]) == Fq::ZERO)
}

/// An isogeny of the shape `(x, y) ↦ (N_x(x)/D_x(x), y·N_y(x)/D_y(x))`
/// between curves with `a₁ = a₃ = 0`.
#[derive(Clone, Debug)]
pub struct IsogenyMap<F: Field> {
    pub source: WeierstrassModel<F>,
    pub target: WeierstrassModel<F>,
    pub nx: Vec<F::Elem>,
    pub dx: Vec<F::Elem>,
    pub ny: Vec<F::Elem>,
    pub dy: Vec<F::Elem>,
    pub degree: u32,
    /// x-coordinate of a generator of the kernel, if declared.
    pub kernel_x: Option<F::Elem>,
}

/// Result of an isogeny check.
#[derive(Clone, Debug, PartialEq)]
pub struct IsogenyCheck {
    pub ok: bool,
    pub kernel_ok: Option<bool>,
    pub samples: usize,
    /// `(p, x, y)` of the first failing sample, rendered.
    pub witness: Option<String>,
}

impl<F: Field> IsogenyMap<F> {
    fn validate(&self) -> Result<()> {
        let r = PolyRing::new(self.source.field.clone());
        if r.is_zero(&self.dx) || r.is_zero(&self.dy) {
            return Err(Error::Domain(
                "isogeny denominator vanishes identically".into(),
            ));
        }
        for e in [&self.source, &self.target] {
            if !(e.field.is_zero(&e.a[0]) && e.field.is_zero(&e.a[2])) {
                return Err(Error::Domain("isogeny models must have a1 = a3 = 0".into()));
            }
        }
        Ok(())
    }

    fn kernel_check(&self) -> Option<bool> {
        let r = PolyRing::new(self.source.field.clone());
        self.kernel_x
            .as_ref()
            .map(|x0| self.source.field.is_zero(&r.eval(&self.dx, x0)))
    }

    /// Exact identity `N_y² · rhs_src · D_x³ = D_y² · (N_x³ + a₂'N_x²D_x + a₄'N_xD_x² + a₆'D_x³)`.
    pub fn verify_symbolic(&self) -> Result<IsogenyCheck> {
        self.validate()?;
        let k = &self.source.field;
        let r = PolyRing::new(k.clone());
        let src = vec![
            self.source.a[4].clone(),
            self.source.a[3].clone(),
            self.source.a[1].clone(),
            k.one(),
        ];
        let dx2 = r.mul(&self.dx, &self.dx);
        let dx3 = r.mul(&dx2, &self.dx);
        let lhs = r.mul(&r.mul(&r.mul(&self.ny, &self.ny), &src), &dx3);
        let nx2 = r.mul(&self.nx, &self.nx);
        let t = &self.target.a;
        let inner = r.add(
            &r.add(
                &r.mul(&nx2, &self.nx),
                &r.scale(&r.mul(&nx2, &self.dx), &t[1]),
            ),
            &r.add(
                &r.scale(&r.mul(&self.nx, &dx2), &t[3]),
                &r.scale(&dx3, &t[4]),
            ),
        );
        let rhs = r.mul(&r.mul(&self.dy, &self.dy), &inner);
        let ok = r.is_zero(&r.sub(&lhs, &rhs));
        Ok(IsogenyCheck {
            ok,
            kernel_ok: self.kernel_check(),
            samples: 0,
            witness: None,
        })
    }
}

impl IsogenyMap<ExtField> {
    /// Check the map at `samples` random affine points of the source curve.
    pub fn verify_sampled(&self, samples: usize, seed: u64) -> Result<IsogenyCheck> {
        self.validate()?;
        let f = self.source.field.clone();
        let r = PolyRing::new(f.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done = 0usize;
        let mut tries = 0usize;
        while done < samples {
            tries += 1;
            if tries > 100 * samples + 1000 {
                return Err(Error::Check("could not find enough sample points".into()));
            }
            let x = f.from_index(rng.gen_range(0..f.order() as usize));
            let y = match f.sqrt(&self.source.rhs(&x)) {
                Sqrt::Root(y) => y,
                _ => continue,
            };
            let (dxv, dyv) = (r.eval(&self.dx, &x), r.eval(&self.dy, &x));
            if f.is_zero(&dxv) || f.is_zero(&dyv) {
                continue;
            }
            let xi = f.div(&r.eval(&self.nx, &x), &dxv).unwrap();
            let yi = f.mul(&y, &f.div(&r.eval(&self.ny, &x), &dyv).unwrap());
            done += 1;
            if !self.target.is_on_curve(&Point::Affine(xi, yi)) {
                return Ok(IsogenyCheck {
                    ok: false,
                    kernel_ok: self.kernel_check(),
                    samples: done,
                    witness: Some(format!("p={} x={} y={}", f.p(), f.render(&x), f.render(&y))),
                });
            }
        }
        Ok(IsogenyCheck {
            ok: true,
            kernel_ok: self.kernel_check(),
            samples: done,
            witness: None,
        })
    }
}

impl IsogenyMap<BiQuadratic> {
    /// Reduce every coefficient through a split embedding.
    pub fn reduce(&self, emb: &SplitEmbedding) -> Result<IsogenyMap<ExtField>> {
        let f = emb.field.clone();
        let m = |c: &crate::numfield::K4Elem| emb.map_k4(c);
        let mp = |v: &[crate::numfield::K4Elem]| -> Result<Vec<Fq>> {
            let out: Result<Vec<Fq>> = v.iter().map(m).collect();
            Ok(PolyRing::new(f.clone()).normalize(out?))
        };
        Ok(IsogenyMap {
            source: self.source.map(f.clone(), m)?,
            target: self.target.map(f.clone(), m)?,
            nx: mp(&self.nx)?,
            dx: mp(&self.dx)?,
            ny: mp(&self.ny)?,
            dy: mp(&self.dy)?,
            degree: self.degree,
            kernel_x: self.kernel_x.as_ref().map(m).transpose()?,
        })
    }
}

/// Identity map on a curve with `a₁ = a₃ = 0`.
pub fn identity_isogeny<F: Field>(e: &WeierstrassModel<F>) -> IsogenyMap<F> {
    let k = e.field.clone();
    IsogenyMap {
        source: e.clone(),
        target: e.clone(),
        nx: vec![k.zero(), k.one()],
        dx: vec![k.one()],
        ny: vec![k.one()],
        dy: vec![k.one()],
        degree: 1,
        kernel_x: None,
    }
}

/// Reduce an integer into a field (helper for fixtures).
pub fn int<F: Field>(k: &F, n: i64) -> F::Elem {
    k.from_bigint(&BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::PrimeField;

    fn fp(p: u64) -> ExtField {
        ExtField::prime(PrimeField::new(p).unwrap())
    }

    fn brute(e: &WeierstrassModel<ExtField>) -> u64 {
        let f = e.field();
        let mut n = 1;
        for x in f.elements() {
            for y in f.elements() {
                if e.is_on_curve(&Point::Affine(x, y)) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn small_counts() {
        let f = fp(3);
        let e = WeierstrassModel::short(f.clone(), f.scalar(1), f.scalar(0)).unwrap();
        let r = count_points(&e).unwrap();
        assert_eq!((r.count, r.a), (4, 0));
        // y² = x³ − x is ordinary at 5 and supersingular at 7
        let f = fp(5);
        let e = WeierstrassModel::short(f.clone(), f.from_i64(-1), f.scalar(0)).unwrap();
        assert_eq!(brute(&e), 8);
        assert_eq!(count_points(&e).unwrap().a, -2);
        let f = fp(7);
        let e = WeierstrassModel::short(f.clone(), f.from_i64(-1), f.scalar(0)).unwrap();
        assert_eq!(count_points(&e).unwrap().a, 0);
    }

    #[test]
    fn general_model_matches_brute_force() {
        let f = fp(13);
        let e = WeierstrassModel::new(
            f.clone(),
            [
                f.scalar(1),
                f.scalar(2),
                f.scalar(3),
                f.scalar(4),
                f.scalar(5),
            ],
        )
        .unwrap();
        assert_eq!(count_points(&e).unwrap().count, brute(&e));
    }

    #[test]
    fn trace_lift_identities() {
        assert_eq!(trace_lift(0, 31, 2).unwrap(), -62);
        assert_eq!(trace_lift(5, 31, 2).unwrap(), 25 - 62);
        assert!(trace_lift(20, 31, 1).is_err());
        let f = fp(31);
        let e = WeierstrassModel::short(f.clone(), f.scalar(3), f.scalar(7)).unwrap();
        let a = count_points(&e).unwrap().a;
        let f2 = ExtField::new(31, 2).unwrap();
        let e2 = WeierstrassModel::short(f2.clone(), f2.scalar(3), f2.scalar(7)).unwrap();
        assert_eq!(
            count_points(&e2).unwrap().a as i128,
            trace_lift(a, 31, 2).unwrap()
        );
    }

    #[test]
    fn twist_negates_trace() {
        let f = fp(7);
        let e = WeierstrassModel::short(f.clone(), f.scalar(1), f.scalar(1)).unwrap();
        let u = f.scalar(3);
        assert_eq!(f.chi(u), -1);
        let t = e.quadratic_twist(&u).unwrap();
        assert_eq!(count_points(&t).unwrap().a, -count_points(&e).unwrap().a);
        assert_eq!(e.j_invariant().unwrap(), t.j_invariant().unwrap());
    }

    #[test]
    fn hasse_examples() {
        let f = fp(5);
        let e = WeierstrassModel::short(f.clone(), f.scalar(0), f.scalar(1)).unwrap();
        assert!(is_supersingular(&e).unwrap());
        let f = fp(13);
        let e = WeierstrassModel::short(f.clone(), f.scalar(1), f.scalar(0)).unwrap();
        assert!(!is_supersingular(&e).unwrap());
        assert!(is_supersingular(
            &WeierstrassModel::short(fp(3), Fq::from_u64(1), Fq::ZERO).unwrap()
        )
        .is_err());
    }

    #[test]
    fn j_examples() {
        let f = fp(101);
        let e = WeierstrassModel::short(f.clone(), f.scalar(0), f.scalar(1)).unwrap();
        assert_eq!(e.j_invariant().unwrap(), f.scalar(0));
        let e = WeierstrassModel::short(f.clone(), f.scalar(1), f.scalar(0)).unwrap();
        assert_eq!(e.j_invariant().unwrap(), f.scalar(1728 % 101));
    }

    #[test]
    fn group_law() {
        let f = fp(97);
        let e = WeierstrassModel::new(
            f.clone(),
            [
                f.scalar(1),
                f.scalar(0),
                f.scalar(1),
                f.scalar(2),
                f.scalar(3),
            ],
        )
        .unwrap();
        let pts: Vec<_> = f
            .elements()
            .flat_map(|x| f.elements().map(move |y| Point::Affine(x, y)))
            .filter(|p| e.is_on_curve(p))
            .take(5)
            .collect();
        let n = brute(&e) as i64;
        for p in &pts {
            assert!(e.is_on_curve(&e.add_points(p, p)));
            assert_eq!(e.mul_point(p, n), Point::Infinity);
            for q in &pts {
                assert_eq!(e.add_points(p, q), e.add_points(q, p));
            }
        }
    }

    #[test]
    fn identity_isogeny_verifies() {
        let f = fp(31);
        let e = WeierstrassModel::cubic(f.clone(), f.scalar(4), f.scalar(2), f.scalar(0)).unwrap();
        let id = identity_isogeny(&e);
        assert!(id.verify_symbolic().unwrap().ok);
        assert!(id.verify_sampled(20, 1).unwrap().ok);
    }
}
