//! Dense univariate polynomials over a [`Field`] descriptor.
//!
//! Polynomials are `Vec<E>` with the constant term first and no trailing
//! zeros; the zero polynomial is the empty vector.

use crate::field::Field;

/// Polynomial arithmetic over a fixed coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn normalize(&self, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn constant(&self, c: F::Elem) -> Vec<F::Elem> {
        self.normalize(vec![c])
    }

    /// The polynomial `t`.
    pub fn var(&self) -> Vec<F::Elem> {
        vec![self.field.zero(), self.field.one()]
    }

    /// `c·t^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); k + 1];
        v[k] = c;
        self.normalize(v)
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.iter().rposition(|c| !self.field.is_zero(c))
    }

    pub fn is_zero(&self, a: &[F::Elem]) -> bool {
        self.degree(a).is_none()
    }

    pub fn lead(&self, a: &[F::Elem]) -> F::Elem {
        match self.degree(a) {
            Some(d) => a[d].clone(),
            None => self.field.zero(),
        }
    }

    pub fn coeff(&self, a: &[F::Elem], i: usize) -> F::Elem {
        a.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.field.add(&self.coeff(a, i), &self.coeff(b, i)))
            .collect();
        self.normalize(out)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.field.sub(&self.coeff(a, i), &self.coeff(b, i)))
            .collect();
        self.normalize(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        self.normalize(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(x, y));
            }
        }
        self.normalize(out)
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> Vec<F::Elem> {
        let mut acc = vec![self.field.one()];
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, a: &[F::Elem], k: usize) -> Vec<F::Elem> {
        if self.is_zero(a) {
            return Vec::new();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend_from_slice(a);
        v
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let db = self.degree(b).expect("division by the zero polynomial");
        let lead_inv = self.field.inv(&b[db]).unwrap();
        let mut r = self.normalize(a.to_vec());
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.field.zero(); r.len() - db];
        while let Some(dr) = self.degree(&r) {
            if dr < db {
                break;
            }
            let c = self.field.mul(&r[dr], &lead_inv);
            let k = dr - db;
            for (i, bi) in b[..=db].iter().enumerate() {
                r[i + k] = self.field.sub(&r[i + k], &self.field.mul(&c, bi));
            }
            q[k] = c;
            r = self.normalize(r);
        }
        (self.normalize(q), r)
    }

    /// Exact division; `None` if a remainder is left.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        self.is_zero(&r).then_some(q)
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        match self.degree(a) {
            None => Vec::new(),
            Some(d) => {
                let li = self.field.inv(&a[d]).unwrap();
                self.scale(a, &li)
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut x = self.normalize(a.to_vec());
        let mut y = self.normalize(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` not normalized to monic.
    pub fn ext_gcd(
        &self,
        a: &[F::Elem],
        b: &[F::Elem],
    ) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
        let (mut r0, mut r1) = (self.normalize(a.to_vec()), self.normalize(b.to_vec()));
        let (mut s0, mut s1) = (vec![self.field.one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![self.field.one()]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in a.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Vec<F::Elem> {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
            .collect();
        self.normalize(out)
    }

    /// `a(b(t))`.
    pub fn compose(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let mut acc = Vec::new();
        for c in a.iter().rev() {
            acc = self.add(&self.mul(&acc, b), std::slice::from_ref(c));
        }
        acc
    }

    /// `a(t + c)`.
    pub fn translate(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        self.compose(a, &self.normalize(vec![c.clone(), self.field.one()]))
    }

    /// `t^d · a(1/t)` for `d ≥ deg a`.
    pub fn reverse(&self, a: &[F::Elem], d: usize) -> Vec<F::Elem> {
        let a = self.normalize(a.to_vec());
        assert!(a.len() <= d + 1, "reversal degree too small");
        let mut v = vec![self.field.zero(); d + 1];
        for (i, c) in a.iter().enumerate() {
            v[d - i] = c.clone();
        }
        self.normalize(v)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self, a: &[F::Elem]) -> Option<usize> {
        a.iter().position(|c| !self.field.is_zero(c))
    }

    /// Valuation at an irreducible `π`: largest `k` with `π^k | a`.
    pub fn valuation_at(&self, a: &[F::Elem], pi: &[F::Elem]) -> Option<usize> {
        if self.is_zero(a) {
            return None;
        }
        let mut k = 0;
        let mut cur = self.normalize(a.to_vec());
        loop {
            let (q, r) = self.divrem(&cur, pi);
            if !self.is_zero(&r) {
                return Some(k);
            }
            cur = q;
            k += 1;
        }
    }

    /// Divide by `t^k`, assuming exactness.
    pub fn shift_down(&self, a: &[F::Elem], k: usize) -> Vec<F::Elem> {
        if a.len() <= k {
            return Vec::new();
        }
        debug_assert!(a[..k].iter().all(|c| self.field.is_zero(c)));
        a[k..].to_vec()
    }

    /// `a^e mod m`.
    pub fn pow_mod(&self, a: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&[self.field.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.rem(&self.mul(&base, &base), m);
            }
        }
        acc
    }

    /// Squarefree decomposition in characteristic zero: `[(g, e)]` with
    /// `a = c · ∏ g^e`, each `g` monic squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self, a: &[F::Elem]) -> Vec<(Vec<F::Elem>, u32)> {
        assert_eq!(
            self.field.characteristic(),
            0,
            "Yun's algorithm needs characteristic 0"
        );
        let a = self.monic(a);
        let mut out = Vec::new();
        if self.degree(&a).unwrap_or(0) == 0 {
            return out;
        }
        let da = self.derivative(&a);
        let b = self.gcd(&a, &da);
        let mut c = self.div_exact(&a, &b).unwrap();
        let mut d = self.sub(&self.div_exact(&da, &b).unwrap(), &self.derivative(&c));
        let mut i = 1;
        while self.degree(&c).unwrap_or(0) > 0 {
            let g = self.gcd(&c, &d);
            let c_next = self.div_exact(&c, &g).unwrap();
            d = self.sub(&self.div_exact(&d, &g).unwrap(), &self.derivative(&c_next));
            if self.degree(&g).unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            c = c_next;
            i += 1;
        }
        out
    }

    pub fn render(&self, a: &[F::Elem], var: &str) -> String {
        let mut out = String::new();
        for (i, c) in a.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.render(c);
            // plain numbers print bare, compound coefficients in parentheses
            let atom = !cs[1..].contains(['+', '-', ' ']);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if atom => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coeff = if !atom { format!("({body})") } else { body };
            let term = if i == 0 {
                coeff
            } else if coeff == "1" {
                mono
            } else {
                format!("{coeff}*{mono}")
            };
            if out.is_empty() {
                out = if neg { format!("-{term}") } else { term };
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn divrem_roundtrip() {
        let r = PolyRing::new(Rationals);
        let a = q(&[1, 2, 3, 4, 5]);
        let b = q(&[-1, 0, 2]);
        let (qq, rr) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&qq, &b), &rr), a);
        assert!(rr.len() < b.len());
    }

    #[test]
    fn gcd_and_yun() {
        let r = PolyRing::new(Rationals);
        // (t−1)²(t+2)³
        let f = r.mul(&r.pow(&q(&[-1, 1]), 2), &r.pow(&q(&[2, 1]), 3));
        let sq = r.squarefree_decomposition(&f);
        assert_eq!(sq, vec![(q(&[-1, 1]), 2), (q(&[2, 1]), 3)]);
        assert_eq!(
            r.gcd(&f, &r.derivative(&f)),
            r.mul(&q(&[-1, 1]), &r.pow(&q(&[2, 1]), 2))
        );
    }

    #[test]
    fn translate_and_reverse() {
        let r = PolyRing::new(Rationals);
        let f = q(&[0, 0, 1]);
        assert_eq!(r.translate(&f, &rat(1, 1)), q(&[1, 2, 1]));
        assert_eq!(r.reverse(&q(&[1, 2]), 3), q(&[0, 0, 2, 1]));
        assert_eq!(r.valuation(&q(&[0, 0, 3])), Some(2));
        assert_eq!(r.valuation_at(&r.pow(&q(&[1, 1]), 3), &q(&[1, 1])), Some(3));
    }
}
