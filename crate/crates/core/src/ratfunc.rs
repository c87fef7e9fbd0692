//! The rational function field `k(t)`.

use crate::field::Field;
use crate::poly::PolyRing;

/// `num/den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<E> {
    pub num: Vec<E>,
    pub den: Vec<E>,
}

/// Descriptor for `k(t)` over a base field descriptor.
#[derive(Clone, Debug)]
pub struct RatFuncField<F: Field> {
    pub ring: PolyRing<F>,
}

impl<F: Field> RatFuncField<F> {
    pub fn new(base: F) -> Self {
        RatFuncField {
            ring: PolyRing::new(base),
        }
    }

    pub fn base(&self) -> &F {
        &self.ring.field
    }

    /// Reduce `num/den` to lowest terms.
    pub fn frac(&self, num: &[F::Elem], den: &[F::Elem]) -> RatFunc<F::Elem> {
        let r = &self.ring;
        assert!(!r.is_zero(den), "zero denominator");
        let num = r.normalize(num.to_vec());
        if r.is_zero(&num) {
            return RatFunc {
                num,
                den: vec![r.field.one()],
            };
        }
        let g = r.gcd(&num, den);
        let mut n = r.div_exact(&num, &g).unwrap();
        let mut d = r.div_exact(den, &g).unwrap();
        let li = r.field.inv(&r.lead(&d)).unwrap();
        n = r.scale(&n, &li);
        d = r.scale(&d, &li);
        RatFunc { num: n, den: d }
    }

    pub fn poly(&self, p: &[F::Elem]) -> RatFunc<F::Elem> {
        RatFunc {
            num: self.ring.normalize(p.to_vec()),
            den: vec![self.ring.field.one()],
        }
    }

    pub fn t(&self) -> RatFunc<F::Elem> {
        self.poly(&self.ring.var())
    }

    pub fn constant(&self, c: F::Elem) -> RatFunc<F::Elem> {
        self.poly(&[c])
    }

    /// The polynomial if the denominator is 1.
    pub fn as_poly(&self, a: &RatFunc<F::Elem>) -> Option<Vec<F::Elem>> {
        (self.ring.degree(&a.den) == Some(0)).then(|| a.num.clone())
    }

    /// `deg num − deg den` (`None` for zero).
    pub fn degree(&self, a: &RatFunc<F::Elem>) -> Option<i64> {
        self.ring
            .degree(&a.num)
            .map(|d| d as i64 - self.ring.degree(&a.den).unwrap() as i64)
    }

    /// Substitute a field element for `t`; `None` at a pole.
    pub fn eval(&self, a: &RatFunc<F::Elem>, x: &F::Elem) -> Option<F::Elem> {
        let d = self.ring.eval(&a.den, x);
        self.ring.field.div(&self.ring.eval(&a.num, x), &d)
    }
}

impl<F: Field> Field for RatFuncField<F> {
    type Elem = RatFunc<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.poly(&[])
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.ring.field.one())
    }
    fn from_bigint(&self, n: &num_bigint::BigInt) -> Self::Elem {
        self.constant(self.ring.field.from_bigint(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        if a.den == b.den {
            return self.frac(&r.add(&a.num, &b.num), &a.den);
        }
        self.frac(
            &r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den)),
            &r.mul(&a.den, &b.den),
        )
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        self.frac(&r.mul(&a.num, &b.num), &r.mul(&a.den, &b.den))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.ring.is_zero(&a.num) {
            return None;
        }
        Some(self.frac(&a.den, &a.num))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.ring.is_zero(&a.num)
    }
    fn characteristic(&self) -> u64 {
        self.ring.field.characteristic()
    }
    fn render(&self, a: &Self::Elem) -> String {
        let n = self.ring.render(&a.num, "t");
        if self.ring.degree(&a.den) == Some(0) {
            n
        } else {
            format!("({n})/({})", self.ring.render(&a.den, "t"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};

    #[test]
    fn arithmetic_in_lowest_terms() {
        let k = RatFuncField::new(Rationals);
        let t = k.t();
        let one = k.one();
        // (t^2 − 1)/(t − 1) = t + 1
        let num = k.sub(&k.mul(&t, &t), &one);
        let x = k.div(&num, &k.sub(&t, &one)).unwrap();
        assert_eq!(k.as_poly(&x).unwrap(), vec![rat(1, 1), rat(1, 1)]);
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), one);
        assert_eq!(k.eval(&y, &rat(1, 1)), Some(rat(1, 2)));
    }
}
