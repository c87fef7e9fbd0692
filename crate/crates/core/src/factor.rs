//! Exact factorization of univariate polynomials over `ℚ` (Zassenhaus:
//! modular factorization, Hensel lifting, recombination), over `ℚ(√d)`
//! (Trager's norm method) and over finite fields (Cantor–Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, QuadElem, QuadraticField, Rationals};
use crate::finite_field::{is_prime, ExtField, PrimeField};
use crate::poly::PolyRing;

/// A field whose univariate polynomials can be factored exactly.
pub trait Factoring: Field {
    /// Monic irreducible factors with multiplicities, sorted by degree
    /// and then by rendering. The unit factor is dropped.
    fn factor(&self, f: &[Self::Elem]) -> Result<Vec<(Vec<Self::Elem>, u32)>>;

    /// Roots of `f` in this field.
    fn roots_of(&self, f: &[Self::Elem]) -> Result<Vec<Self::Elem>> {
        let ring = PolyRing::new(self.clone());
        Ok(self
            .factor(f)?
            .into_iter()
            .filter(|(g, _)| ring.degree(g) == Some(1))
            .map(|(g, _)| self.neg(&g[0]))
            .collect())
    }
}

fn sort_factors<F: Field>(
    ring: &PolyRing<F>,
    mut v: Vec<(Vec<F::Elem>, u32)>,
) -> Vec<(Vec<F::Elem>, u32)> {
    v.sort_by_cached_key(|(g, e)| (ring.degree(g), ring.render(g, "t"), *e));
    v
}

// ---------- integer polynomials ----------

fn zp_normalize(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zp_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_normalize(out)
}

/// Exact division over `ℤ`, `None` if `b ∤ a`.
fn zp_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let b = zp_normalize(b.to_vec());
    let mut r = zp_normalize(a.to_vec());
    if b.is_empty() {
        return None;
    }
    if r.len() < b.len() {
        return r.is_empty().then(Vec::new);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let (qc, rem) = r.last().unwrap().div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &qc * c;
        }
        q[shift] = qc;
        r = zp_normalize(r);
    }
    r.is_empty().then(|| zp_normalize(q))
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Primitive integer polynomial with positive leading coefficient.
pub fn primitive_part(f: &[BigRational]) -> Vec<BigInt> {
    crate::numfield::primitive_integer_poly(f)
}

// ---------- finite-field factorization over F_p with u64 coefficients ----------

fn fp_ring(p: u64) -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::new(p).expect("prime"))
}

/// Equal-degree splitting of a product of degree-`d` irreducibles.
fn equal_degree<F: Field + RandomElement>(
    ring: &PolyRing<F>,
    f: Vec<F::Elem>,
    d: usize,
    q: u64,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<F::Elem>> {
    let n = ring.degree(&f).unwrap();
    if n == d {
        return vec![f];
    }
    loop {
        let a: Vec<F::Elem> = (0..n).map(|_| ring.field.random(rng)).collect();
        let a = ring.normalize(a);
        if ring.degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        // a^((q^d − 1)/2) = (a^(1 + q + … + q^{d−1}))^((q − 1)/2)
        let mut prod = a.clone();
        let mut cur = a.clone();
        for _ in 1..d {
            cur = ring.pow_mod(&cur, q as u128, &f);
            prod = ring.rem(&ring.mul(&prod, &cur), &f);
        }
        let b = ring.pow_mod(&prod, ((q - 1) / 2) as u128, &f);
        let g = ring.gcd(&ring.sub(&b, &[ring.field.one()]), &f);
        let dg = ring.degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = ring.div_exact(&f, &g).unwrap();
            let mut out = equal_degree(ring, g, d, q, rng);
            out.extend(equal_degree(ring, ring.monic(&h), d, q, rng));
            return out;
        }
    }
}

/// Uniform random element, for randomized splitting.
pub trait RandomElement: Field {
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
}

impl RandomElement for PrimeField {
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p())
    }
}

impl RandomElement for ExtField {
    fn random(&self, rng: &mut ChaCha8Rng) -> crate::finite_field::Fq {
        self.from_index(rng.gen_range(0..self.order() as usize))
    }
}

/// Monic irreducible factors of a squarefree monic polynomial over `F_q`.
fn factor_squarefree_fq<F: RandomElement>(
    ring: &PolyRing<F>,
    f: &[F::Elem],
    q: u64,
) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    let mut rest = ring.monic(f);
    let x = ring.var();
    let mut h = x.clone();
    let mut d = 0usize;
    while ring.degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > ring.degree(&rest).unwrap() {
            out.push(rest.clone());
            break;
        }
        h = ring.pow_mod(&h, q as u128, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if ring.degree(&g).unwrap_or(0) > 0 {
            rest = ring.div_exact(&rest, &g).unwrap();
            h = ring.rem(&h, &rest);
            out.extend(equal_degree(ring, g, d, q, &mut rng));
        }
    }
    out
}

/// Squarefree decomposition over `F_q` (handles `p`-th powers).
fn squarefree_fq<F: Field>(
    ring: &PolyRing<F>,
    f: &[F::Elem],
    p: u64,
    frob_root: &dyn Fn(&F::Elem) -> F::Elem,
) -> Vec<(Vec<F::Elem>, u32)> {
    let f = ring.monic(f);
    let mut out: Vec<(Vec<F::Elem>, u32)> = Vec::new();
    if ring.degree(&f).unwrap_or(0) == 0 {
        return out;
    }
    let df = ring.derivative(&f);
    if ring.is_zero(&df) {
        // f = g(x^p): take p-th roots of coefficients
        let g: Vec<F::Elem> = f.iter().step_by(p as usize).map(frob_root).collect();
        for (h, e) in squarefree_fq(ring, &g, p, frob_root) {
            out.push((h, e * p as u32));
        }
        return out;
    }
    let mut c = ring.gcd(&f, &df);
    let mut w = ring.div_exact(&f, &c).unwrap();
    let mut i = 1u32;
    while ring.degree(&w).unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).unwrap();
        if ring.degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = ring.div_exact(&c, &w).unwrap();
    }
    if ring.degree(&c).unwrap_or(0) > 0 {
        let g: Vec<F::Elem> = c.iter().step_by(p as usize).map(frob_root).collect();
        for (h, e) in squarefree_fq(ring, &g, p, frob_root) {
            out.push((h, e * p as u32));
        }
    }
    out
}

impl Factoring for ExtField {
    fn factor(
        &self,
        f: &[crate::finite_field::Fq],
    ) -> Result<Vec<(Vec<crate::finite_field::Fq>, u32)>> {
        let ring = PolyRing::new(self.clone());
        if ring.is_zero(f) {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let q = self.order();
        let me = self.clone();
        // p-th root is the inverse Frobenius a^(q/p)
        let root = move |a: &crate::finite_field::Fq| me.pow_fast(*a, (q / me.p()) as u128);
        let mut out = Vec::new();
        for (g, e) in squarefree_fq(&ring, f, self.p(), &root) {
            for h in factor_squarefree_fq(&ring, &g, q) {
                out.push((h, e));
            }
        }
        Ok(sort_factors(&ring, merge(&ring, out)))
    }
}

impl Factoring for PrimeField {
    fn factor(&self, f: &[u64]) -> Result<Vec<(Vec<u64>, u32)>> {
        let ring = PolyRing::new(*self);
        if ring.is_zero(f) {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let mut out = Vec::new();
        for (g, e) in squarefree_fq(&ring, f, self.p(), &|a: &u64| *a) {
            for h in factor_squarefree_fq(&ring, &g, self.p()) {
                out.push((h, e));
            }
        }
        Ok(sort_factors(&ring, merge(&ring, out)))
    }
}

fn merge<F: Field>(ring: &PolyRing<F>, v: Vec<(Vec<F::Elem>, u32)>) -> Vec<(Vec<F::Elem>, u32)> {
    let mut out: Vec<(Vec<F::Elem>, u32)> = Vec::new();
    for (g, e) in v {
        let g = ring.monic(&g);
        if let Some(slot) = out.iter_mut().find(|(h, _)| *h == g) {
            slot.1 += e;
        } else {
            out.push((g, e));
        }
    }
    out
}

// ---------- Zassenhaus over ℤ ----------

/// Linear Hensel lifting of `f ≡ g·h (mod p)` to `mod p^k`; `f, g, h` monic.
fn hensel_lift(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let ring = fp_ring(p);
    let (gc, s, t) = ring.ext_gcd(g, h);
    debug_assert_eq!(ring.degree(&gc), Some(0));
    let ginv = ring.field.inv(&gc[0]).unwrap();
    let s = ring.scale(&s, &ginv);
    let t = ring.scale(&t, &ginv);
    let pb = BigInt::from(p);
    let mut gz: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    let mut hz: Vec<BigInt> = h.iter().map(|&c| BigInt::from(c)).collect();
    let mut modulus = pb.clone();
    for _ in 1..k {
        let prod = zp_mul(&gz, &hz);
        let mut e = Vec::new();
        for i in 0..f.len().max(prod.len()) {
            let a =
                f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default();
            debug_assert!((&a % &modulus).is_zero());
            e.push((a / &modulus).mod_floor(&pb).to_u64().unwrap());
        }
        let e = ring.normalize(e);
        let (qt, tau) = ring.divrem(&ring.mul(&e, &t), g);
        let sigma = ring.rem(&ring.add(&ring.mul(&e, &s), &ring.mul(&qt, h)), h);
        let add = |z: &mut Vec<BigInt>, d: &[u64]| {
            for (i, c) in d.iter().enumerate() {
                if i >= z.len() {
                    z.push(BigInt::zero());
                }
                z[i] += &modulus * BigInt::from(*c);
            }
        };
        add(&mut gz, &tau);
        add(&mut hz, &sigma);
        modulus *= &pb;
    }
    (gz, hz)
}

fn choose_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().unwrap();
    let mut p = 3u64;
    loop {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() {
            let ring = fp_ring(p);
            let fp: Vec<u64> = ring.normalize(f.iter().map(|c| ring.field.reduce_big(c)).collect());
            let g = ring.gcd(&fp, &ring.derivative(&fp));
            if ring.degree(&g) == Some(0) {
                return p;
            }
        }
        p += 2;
    }
}

/// Irreducible factors over `ℤ` of a squarefree primitive polynomial with
/// positive leading coefficient.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let ring = fp_ring(p);
    let lc = f.last().unwrap().clone();
    let fp: Vec<u64> = f.iter().map(|c| ring.field.reduce_big(c)).collect();
    let modular = factor_squarefree_fq(&ring, &ring.monic(&fp), p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // coefficient bound for factors of lc·f
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << n) * lc.abs() * 2u32;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    // monic image of f mod p^k
    let lc_inv = lc.modinv(&pk).expect("lc invertible mod p^k");
    let mut cur: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&pk)).collect();
    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..modular.len() - 1 {
        let g = &modular[i];
        let mut h = vec![1u64];
        for other in &modular[i + 1..] {
            h = ring.mul(&h, other);
        }
        let (gz, hz) = hensel_lift(&cur, g, &h, p, k);
        lifted.push(gz.iter().map(|c| c.mod_floor(&pk)).collect());
        cur = hz.iter().map(|c| c.mod_floor(&pk)).collect();
    }
    lifted.push(cur);
    // recombination
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut g_rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for combo in combinations(remaining.len(), size) {
            let lcr = g_rest.last().unwrap().clone();
            let mut prod = vec![lcr.clone()];
            for &ci in &combo {
                prod = zp_mul(&prod, &lifted[remaining[ci]]);
                prod = prod.iter().map(|c| c.mod_floor(&pk)).collect();
            }
            let cand: Vec<BigInt> = prod.iter().map(|c| sym_mod(c, &pk)).collect();
            let cont = zp_content(&cand);
            let cand: Vec<BigInt> = cand.iter().map(|c| c / &cont).collect();
            if let Some(q) = zp_div_exact(&g_rest, &cand) {
                out.push(cand);
                g_rest = q;
                let chosen: Vec<usize> = combo.iter().map(|&ci| remaining[ci]).collect();
                remaining.retain(|i| !chosen.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(g_rest);
    out.into_iter()
        .map(|g| {
            if g.last().unwrap().is_negative() {
                g.iter().map(|c| -c).collect()
            } else {
                g
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl Factoring for Rationals {
    fn factor(&self, f: &[BigRational]) -> Result<Vec<(Vec<BigRational>, u32)>> {
        let ring = PolyRing::new(Rationals);
        if ring.is_zero(f) {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let mut out = Vec::new();
        for (g, e) in ring.squarefree_decomposition(f) {
            let z = primitive_part(&g);
            for h in zassenhaus(&z) {
                let hq: Vec<BigRational> = h
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect();
                out.push((ring.monic(&hq), e));
            }
        }
        Ok(sort_factors(&ring, out))
    }
}

impl Factoring for QuadraticField {
    /// Trager: factor the norm of a shifted polynomial over `ℚ` and pull
    /// factors back with gcds.
    fn factor(&self, f: &[QuadElem]) -> Result<Vec<(Vec<QuadElem>, u32)>> {
        let ring = PolyRing::new(self.clone());
        if ring.is_zero(f) {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let qr = PolyRing::new(Rationals);
        let mut out = Vec::new();
        for (g, e) in ring.squarefree_decomposition(f) {
            let mut s = 0i64;
            loop {
                let shift = self.mul(&self.from_i64(-s), &self.gen());
                let gs = ring.translate(&g, &shift);
                let conj: Vec<QuadElem> = gs.iter().map(|c| self.conj(c)).collect();
                let norm = ring.mul(&gs, &conj);
                let nq: Vec<BigRational> = norm.iter().map(|c| c.a.clone()).collect();
                let sqfree = qr.degree(&qr.gcd(&nq, &qr.derivative(&nq))) == Some(0);
                if sqfree {
                    for (h, _) in Rationals.factor(&nq)? {
                        let hk: Vec<QuadElem> =
                            h.iter().map(|c| QuadElem::rational(c.clone())).collect();
                        let d = ring.gcd(&gs, &hk);
                        if ring.degree(&d).unwrap_or(0) > 0 {
                            let back = ring.translate(&d, &self.neg(&shift));
                            out.push((ring.monic(&back), e));
                        }
                    }
                    break;
                }
                s = if s <= 0 { 1 - s } else { -s };
            }
        }
        Ok(sort_factors(&ring, out))
    }
}
