//! Finite fields `F_p` and `F_{p^n}` with `n ≤ 4`.
//!
//! Elements of `F_{p^n}` are coefficient vectors in the power basis of a
//! fixed modulus. The modulus is the first monic irreducible polynomial
//! when candidates `x^n + c_{n-1}x^{n-1} + … + c_0` are ordered by the
//! integer `c_0 + c_1 p + … + c_{n-1} p^{n-1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Sqrt};
use crate::poly::PolyRing;

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn kronecker(a: &BigInt, p: u64) -> Result<i8> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    Ok(match powmod(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// Convenience wrapper for machine-integer arguments.
pub fn kronecker_i64(a: i64, p: u64) -> Result<i8> {
    kronecker(&BigInt::from(a), p)
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be an odd prime below `2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::Domain(format!("{p} is not a supported odd prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_big(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn centered(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn legendre(&self, a: u64) -> i8 {
        match powmod(a, (self.p - 1) / 2, self.p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_big(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| powmod(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn sqrt(&self, a: &u64) -> Sqrt<u64> {
        let ext = ExtField::prime(*self);
        match ext.sqrt(&Fq::from_u64(*a)) {
            Sqrt::Root(r) => Sqrt::Root(r.0[0] as u64),
            Sqrt::NonSquare => Sqrt::NonSquare,
            Sqrt::Unknown => Sqrt::Unknown,
        }
    }
}

/// Element of `F_{p^n}`: coordinates in the power basis, unused slots zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub [u32; 4]);

impl Fq {
    pub const ZERO: Fq = Fq([0; 4]);

    pub fn from_u64(a: u64) -> Fq {
        Fq([a as u32, 0, 0, 0])
    }
}

/// The field `F_{p^n}`, `1 ≤ n ≤ 4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    n: usize,
    /// Low coefficients `c_0..c_{n-1}` of the monic modulus.
    modulus: [u64; 4],
    /// `p − c_i mod p`, the reduction multipliers.
    neg_mod: [u64; 4],
}

/// Lexicographically first monic irreducible of degree `n` over `F_p`.
pub fn build_extension(p: u64, n: usize) -> Result<ExtField> {
    ExtField::new(p, n)
}

impl ExtField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::Domain(format!("extension degree {n} outside 1..4")));
        }
        let base = PrimeField::new(p)?;
        if n == 1 {
            return Ok(Self::prime(base));
        }
        let ring = PolyRing::new(base);
        let total = p.checked_pow(n as u32).expect("field too large");
        for m in 0..total {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut r = m;
            for _ in 0..n {
                coeffs.push(r % p);
                r /= p;
            }
            coeffs.push(1);
            if is_irreducible_fp(&ring, &coeffs) {
                let mut modulus = [0u64; 4];
                modulus[..n].copy_from_slice(&coeffs[..n]);
                return Ok(Self::from_parts(base, n, modulus));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// `F_p` viewed as a degree-one extension.
    pub fn prime(base: PrimeField) -> Self {
        Self::from_parts(base, 1, [0; 4])
    }

    fn from_parts(base: PrimeField, n: usize, modulus: [u64; 4]) -> Self {
        let p = base.p();
        let mut neg_mod = [0u64; 4];
        for i in 0..n {
            neg_mod[i] = (p - modulus[i]) % p;
        }
        ExtField {
            base,
            n,
            modulus,
            neg_mod,
        }
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn order(&self) -> u64 {
        self.p().pow(self.n as u32)
    }

    /// Monic modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> Vec<u64> {
        let mut v = self.modulus[..self.n].to_vec();
        v.push(1);
        v
    }

    /// The class of `x`.
    pub fn gen(&self) -> Fq {
        if self.n == 1 {
            return Fq::ZERO;
        }
        Fq([0, 1, 0, 0])
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Fq {
        let mut out = [0u32; 4];
        for (i, &x) in c.iter().enumerate().take(self.n) {
            out[i] = (x % self.p()) as u32;
        }
        Fq(out)
    }

    /// Bijection `F_q → [0, q)`.
    #[inline]
    pub fn index(&self, a: Fq) -> usize {
        let p = self.p() as usize;
        let mut idx = 0usize;
        for i in (0..self.n).rev() {
            idx = idx * p + a.0[i] as usize;
        }
        idx
    }

    pub fn from_index(&self, mut idx: usize) -> Fq {
        let p = self.p() as usize;
        let mut out = [0u32; 4];
        for slot in out.iter_mut().take(self.n) {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        Fq(out)
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.order() as usize).map(move |i| self.from_index(i))
    }

    /// Embedding of an element of the prime field.
    #[inline]
    pub fn scalar(&self, a: u64) -> Fq {
        Fq::from_u64(a % self.p())
    }

    #[inline]
    pub fn add_fast(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p() as u32;
        let mut out = [0u32; 4];
        for i in 0..self.n {
            let s = a.0[i] + b.0[i];
            out[i] = if s >= p { s - p } else { s };
        }
        Fq(out)
    }

    #[inline]
    pub fn sub_fast(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p() as u32;
        let mut out = [0u32; 4];
        for i in 0..self.n {
            out[i] = if a.0[i] >= b.0[i] {
                a.0[i] - b.0[i]
            } else {
                a.0[i] + p - b.0[i]
            };
        }
        Fq(out)
    }

    #[inline]
    pub fn mul_fast(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p();
        match self.n {
            1 => Fq([((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 0, 0, 0]),
            2 => {
                let (a0, a1, b0, b1) = (a.0[0] as u64, a.0[1] as u64, b.0[0] as u64, b.0[1] as u64);
                let hi = a1 * b1 % p;
                let c0 = (a0 * b0 + hi * self.neg_mod[0]) % p;
                let c1 = (a0 * b1 + a1 * b0 + hi * self.neg_mod[1]) % p;
                Fq([c0 as u32, c1 as u32, 0, 0])
            }
            n => {
                let mut prod = [0u64; 7];
                for i in 0..n {
                    if a.0[i] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        prod[i + j] += a.0[i] as u64 * b.0[j] as u64 % p;
                    }
                }
                for k in (n..2 * n - 1).rev() {
                    let c = prod[k] % p;
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        prod[k - n + i] += c * self.neg_mod[i] % p;
                    }
                }
                let mut out = [0u32; 4];
                for i in 0..n {
                    out[i] = (prod[i] % p) as u32;
                }
                Fq(out)
            }
        }
    }

    pub fn pow_fast(&self, a: Fq, mut e: u128) -> Fq {
        let mut base = a;
        let mut acc = self.scalar(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_fast(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_fast(base, base);
            }
        }
        acc
    }

    /// Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow_fast(a, self.p() as u128)
    }

    /// Quadratic character of `F_q` with `χ(0) = 0`.
    pub fn chi(&self, a: Fq) -> i8 {
        if a == Fq::ZERO {
            return 0;
        }
        let r = self.pow_fast(a, ((self.order() - 1) / 2) as u128);
        if r == self.scalar(1) {
            1
        } else {
            -1
        }
    }

    /// Table of `χ` indexed by [`ExtField::index`].
    pub fn chi_table(&self) -> Vec<i8> {
        use rayon::prelude::*;
        (0..self.order() as usize)
            .into_par_iter()
            .map(|i| self.chi(self.from_index(i)))
            .collect()
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: Fq) -> u64 {
        let mut acc = Fq::ZERO;
        let mut x = a;
        for _ in 0..self.n {
            acc = self.add_fast(acc, x);
            x = self.frobenius(x);
        }
        acc.0[0] as u64
    }

    fn non_residue(&self) -> Fq {
        (1..self.order() as usize)
            .map(|i| self.from_index(i))
            .find(|&z| self.chi(z) == -1)
            .expect("odd order fields have non-residues")
    }

    /// Tonelli–Shanks.
    fn tonelli_shanks(&self, a: Fq) -> Option<Fq> {
        if a == Fq::ZERO {
            return Some(a);
        }
        if self.chi(a) != 1 {
            return None;
        }
        let q = self.order() as u128;
        let (mut s, mut t) = (0u32, q - 1);
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.non_residue();
        let mut m = s;
        let mut c = self.pow_fast(z, t);
        let mut x = self.pow_fast(a, t.div_ceil(2));
        let mut b = self.pow_fast(a, t);
        let one = self.scalar(1);
        while b != one {
            let mut i = 0;
            let mut bb = b;
            while bb != one {
                bb = self.mul_fast(bb, bb);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.mul_fast(g, g);
            }
            x = self.mul_fast(x, g);
            c = self.mul_fast(g, g);
            b = self.mul_fast(b, c);
            m = i;
        }
        Some(x)
    }
}

impl Field for ExtField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        self.scalar(1)
    }
    fn from_bigint(&self, n: &BigInt) -> Fq {
        self.scalar(self.base.reduce_big(n))
    }
    fn from_i64(&self, n: i64) -> Fq {
        self.scalar(self.base.reduce_i64(n))
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        self.add_fast(*a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        self.sub_fast(*a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        self.sub_fast(Fq::ZERO, *a)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        self.mul_fast(*a, *b)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        (*a != Fq::ZERO).then(|| self.pow_fast(*a, (self.order() - 2) as u128))
    }
    fn is_zero(&self, a: &Fq) -> bool {
        *a == Fq::ZERO
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn render(&self, a: &Fq) -> String {
        if self.n == 1 {
            return a.0[0].to_string();
        }
        let parts: Vec<String> = a.0[..self.n].iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
    fn sqrt(&self, a: &Fq) -> Sqrt<Fq> {
        match self.tonelli_shanks(*a) {
            Some(r) => Sqrt::Root(r),
            None => Sqrt::NonSquare,
        }
    }
    fn roots(&self, f: &[Fq]) -> Option<Vec<Fq>> {
        find_roots(&FqPoly::new(self, f.to_vec()), self).ok()
    }
}

fn is_irreducible_fp(ring: &PolyRing<PrimeField>, f: &[u64]) -> bool {
    let n = f.len() - 1;
    let p = ring.field.p() as u128;
    let x = ring.var();
    // x^{p^n} ≡ x and gcd(x^{p^{n/r}} − x, f) = 1 for primes r | n.
    let mut frob = Vec::with_capacity(n + 1);
    let mut cur = ring.rem(&x, f);
    frob.push(cur.clone());
    for _ in 0..n {
        cur = ring.pow_mod(&cur, p, f);
        frob.push(cur.clone());
    }
    if ring.sub(&frob[n], &ring.rem(&x, f)).iter().any(|&c| c != 0) {
        return false;
    }
    for r in [2usize, 3] {
        if n.is_multiple_of(r) {
            let g = ring.gcd(&ring.sub(&frob[n / r], &x), f);
            if ring.degree(&g) != Some(0) {
                return false;
            }
        }
    }
    true
}

/// Polynomial over `F_q`, low degree first, normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    coeffs: Vec<Fq>,
}

impl FqPoly {
    pub fn new(field: &ExtField, coeffs: Vec<Fq>) -> Self {
        FqPoly {
            coeffs: PolyRing::new(field.clone()).normalize(coeffs),
        }
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// Distinct roots of `f` in `F_q`, sorted by index.
///
/// Splits `gcd(f, x^q − x)` by Cantor–Zassenhaus with a fixed seed.
pub fn find_roots(f: &FqPoly, field: &ExtField) -> Result<Vec<Fq>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let ring = PolyRing::new(field.clone());
    let fm = ring.monic(f.coeffs());
    if fm.len() == 1 {
        return Ok(Vec::new());
    }
    let x = ring.var();
    let xq = ring.pow_mod(&x, field.order() as u128, &fm);
    let g = ring.gcd(&fm, &ring.sub(&xq, &x));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(&ring, field, g, &mut rng, &mut roots);
    roots.sort_by_key(|&r| field.index(r));
    roots.dedup();
    debug_assert!(roots.iter().all(|r| field.is_zero(&ring.eval(&fm, r))));
    Ok(roots)
}

fn split_linear(
    ring: &PolyRing<ExtField>,
    field: &ExtField,
    g: Vec<Fq>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Fq>,
) {
    match ring.degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(&g[0])),
        Some(_) => {
            let e = ((field.order() - 1) / 2) as u128;
            loop {
                let r = field.from_index(rng.gen_range(0..field.order() as usize));
                let h = ring.pow_mod(&ring.normalize(vec![r, field.one()]), e, &g);
                let d = ring.gcd(&g, &ring.sub(&h, &[field.one()]));
                let dd = ring.degree(&d).unwrap_or(0);
                if dd > 0 && dd < ring.degree(&g).unwrap() {
                    let rest = ring.div_exact(&g, &d).unwrap();
                    split_linear(ring, field, d, rng, out);
                    split_linear(ring, field, rest, rng, out);
                    return;
                }
            }
        }
    }
}

/// Roots by trying every element; for cross-validation on small fields.
pub fn find_roots_exhaustive(f: &FqPoly, field: &ExtField) -> Result<Vec<Fq>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let ring = PolyRing::new(field.clone());
    Ok(field
        .elements()
        .filter(|x| field.is_zero(&ring.eval(f.coeffs(), x)))
        .collect())
}

/// Reduce an integer polynomial into `F_q[x]`.
pub fn reduce_int_poly(field: &ExtField, coeffs: &[BigInt]) -> FqPoly {
    let v = coeffs.iter().map(|c| field.from_bigint(c)).collect();
    FqPoly::new(field, v)
}

/// `|a|` as `u64`, for small integers known to fit.
pub fn abs_u64(a: &BigInt) -> u64 {
    a.abs().to_u64().expect("integer too large")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_i64(5, 31).unwrap(), 1);
        assert_eq!(kronecker_i64(4, 7).unwrap(), 1);
        assert_eq!(kronecker_i64(0, 11).unwrap(), 0);
        assert_eq!(kronecker_i64(2, 11).unwrap(), -1);
        assert!(kronecker_i64(3, 9).is_err());
        assert!(kronecker_i64(3, 2).is_err());
    }

    #[test]
    fn extension_moduli() {
        assert_eq!(build_extension(3, 2).unwrap().modulus(), vec![1, 0, 1]);
        assert_eq!(build_extension(31, 2).unwrap().order(), 961);
        assert_eq!(build_extension(7, 1).unwrap().order(), 7);
    }

    #[test]
    fn root_examples() {
        let f7 = build_extension(7, 1).unwrap();
        let poly = |c: &[i64]| FqPoly::new(&f7, c.iter().map(|&x| f7.from_i64(x)).collect());
        let roots: Vec<u32> = find_roots(&poly(&[-1, 0, 1]), &f7)
            .unwrap()
            .iter()
            .map(|r| r.0[0])
            .collect();
        assert_eq!(roots, vec![1, 6]);
        assert!(find_roots(&poly(&[1, 0, 1]), &f7).unwrap().is_empty());
        assert_eq!(find_roots(&poly(&[0, -1, 1]), &f7).unwrap().len(), 2);
        assert!(find_roots(&poly(&[]), &f7).is_err());
    }

    #[test]
    fn sqrt_in_extension() {
        let f = build_extension(31, 2).unwrap();
        for i in 0..f.order() as usize {
            let a = f.from_index(i);
            let sq = f.mul_fast(a, a);
            match f.sqrt(&sq) {
                Sqrt::Root(r) => assert_eq!(f.mul_fast(r, r), sq),
                other => panic!("{other:?}"),
            }
        }
    }
}
