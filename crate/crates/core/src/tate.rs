//! Tate's algorithm at the place `t = 0` of a Weierstrass model with
//! coefficients in `K[t]`, for residue characteristic other than 2 and 3.
//!
//! Coordinate changes use lifts that are polynomials in `t`, so the model
//! stays polynomial throughout; the residue field is `K` itself.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Sqrt};
use crate::poly::PolyRing;

/// Kodaira symbol of a singular fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the fibre.
    pub fn components(&self) -> u32 {
        match *self {
            Kodaira::I0 => 1,
            Kodaira::I(n) => n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::I0Star => 5,
            Kodaira::IStar(n) => 5 + n,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }

    /// Euler number of the fibre (equals `v(Δ)` on a minimal model).
    pub fn euler_number(&self) -> u32 {
        match *self {
            Kodaira::I0 => 0,
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::I0Star => 6,
            Kodaira::IStar(n) => 6 + n,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    /// Signed determinant of the negative-definite root lattice spanned by
    /// the components missing the zero section.
    pub fn root_lattice_det(&self) -> i64 {
        let r = (self.components() - 1) as i64;
        let abs = match *self {
            Kodaira::I0 | Kodaira::II | Kodaira::IIStar => 1,
            Kodaira::I(n) => n.max(1) as i64,
            Kodaira::III | Kodaira::IIIStar => 2,
            Kodaira::IV | Kodaira::IVStar => 3,
            Kodaira::I0Star | Kodaira::IStar(_) => 4,
        };
        if r % 2 == 1 {
            -abs
        } else {
            abs
        }
    }

    /// Name of the root lattice, e.g. `A9`, `D4`, `E8`.
    pub fn root_lattice(&self) -> String {
        match *self {
            Kodaira::I0 | Kodaira::II | Kodaira::I(1) => "0".into(),
            Kodaira::I(n) => format!("A{}", n - 1),
            Kodaira::III => "A1".into(),
            Kodaira::IV => "A2".into(),
            Kodaira::I0Star => "D4".into(),
            Kodaira::IStar(n) => format!("D{}", n + 4),
            Kodaira::IVStar => "E6".into(),
            Kodaira::IIIStar => "E7".into(),
            Kodaira::IIStar => "E8".into(),
        }
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Kodaira::I(n) if *n > 0)
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

/// Output of Tate's algorithm at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFibreData {
    pub kodaira: Kodaira,
    /// Valuations on the minimal model (`None` for a zero invariant).
    pub v_c4: Option<u32>,
    pub v_c6: Option<u32>,
    pub v_delta: u32,
    pub components: u32,
    /// Rationality over the residue field of the components not forced
    /// rational: the whole cycle for `I_n`, the two extra components of
    /// `IV`/`IV*`, the far pair of `I_n*`. `None` when the field cannot decide.
    pub split: Option<bool>,
    /// For `I0*`: number of residue-field roots of the auxiliary cubic.
    pub cubic_roots: Option<usize>,
    /// Number of `(x, y) ↦ (x/π², y/π³)` rescalings needed to reach minimality.
    pub rescalings: u32,
}

impl LocalFibreData {
    /// Number of residue-field points on the fibre over a field with `q`
    /// elements.
    pub fn fibre_points(&self, q: u64) -> Option<u64> {
        let s = self.split;
        Some(match self.kodaira {
            Kodaira::I0 => return None,
            Kodaira::I(n) => {
                let n = n as u64;
                if s? {
                    n * q
                } else if n % 2 == 1 {
                    q + 2
                } else {
                    2 * q + 2
                }
            }
            Kodaira::II => q + 1,
            Kodaira::III => 2 * q + 1,
            Kodaira::IV => {
                if s? {
                    3 * q + 1
                } else {
                    q + 1
                }
            }
            Kodaira::I0Star => (q + 1) + q * (1 + self.cubic_roots? as u64),
            Kodaira::IStar(n) => (n as u64 + 1) * q + 1 + 2 * q + if s? { 2 * q } else { 0 },
            Kodaira::IVStar => {
                if s? {
                    7 * q + 1
                } else {
                    3 * q + 1
                }
            }
            Kodaira::IIIStar => 8 * q + 1,
            Kodaira::IIStar => 9 * q + 1,
        })
    }
}

/// Result of [`tate_at_zero`]: fibre data plus the minimal model reached.
#[derive(Clone, Debug)]
pub struct LocalResult<E> {
    pub data: LocalFibreData,
    pub minimal: [Vec<E>; 5],
}

struct Local<'a, K: Field> {
    r: &'a PolyRing<K>,
    a: [Vec<K::Elem>; 5],
}

impl<K: Field> Local<'_, K> {
    fn v(&self, p: &[K::Elem]) -> u32 {
        self.r.valuation(p).map_or(u32::MAX, |v| v as u32)
    }

    /// Residue of `p / t^k`.
    fn c(&self, p: &[K::Elem], k: u32) -> K::Elem {
        self.r.coeff(p, k as usize)
    }

    fn mono(&self, c: K::Elem, k: u32) -> Vec<K::Elem> {
        self.r.monomial(c, k as usize)
    }

    /// `x = x' + r`, `y = y' + s x' + t`.
    fn change(&mut self, r: &[K::Elem], s: &[K::Elem], t: &[K::Elem]) {
        let ring = self.r;
        let k = &ring.field;
        let two = |p: &[K::Elem]| ring.scale(p, &k.from_i64(2));
        let three = |p: &[K::Elem]| ring.scale(p, &k.from_i64(3));
        let [a1, a2, a3, a4, a6] = self.a.clone();
        let na1 = ring.add(&a1, &two(s));
        let na2 = ring.sub(
            &ring.add(&ring.sub(&a2, &ring.mul(s, &a1)), &three(r)),
            &ring.mul(s, s),
        );
        let na3 = ring.add(&ring.add(&a3, &ring.mul(r, &a1)), &two(t));
        let na4 = {
            let mut acc = ring.sub(&a4, &ring.mul(s, &a3));
            acc = ring.add(&acc, &two(&ring.mul(r, &a2)));
            acc = ring.sub(&acc, &ring.mul(&ring.add(t, &ring.mul(r, s)), &a1));
            acc = ring.add(&acc, &three(&ring.mul(r, r)));
            ring.sub(&acc, &two(&ring.mul(s, t)))
        };
        let na6 = {
            let r2 = ring.mul(r, r);
            let mut acc = ring.add(&a6, &ring.mul(r, &a4));
            acc = ring.add(&acc, &ring.mul(&r2, &a2));
            acc = ring.add(&acc, &ring.mul(&r2, r));
            acc = ring.sub(&acc, &ring.mul(t, &a3));
            acc = ring.sub(&acc, &ring.mul(t, t));
            ring.sub(&acc, &ring.mul(&ring.mul(r, t), &a1))
        };
        self.a = [na1, na2, na3, na4, na6];
    }

    fn invariants(&self) -> (Vec<K::Elem>, Vec<K::Elem>, Vec<K::Elem>) {
        poly_invariants(self.r, &self.a)
    }
}

/// `(c₄, c₆, Δ)` of a model with coefficients in `K[t]`.
pub fn poly_invariants<K: Field>(
    r: &PolyRing<K>,
    a: &[Vec<K::Elem>; 5],
) -> (Vec<K::Elem>, Vec<K::Elem>, Vec<K::Elem>) {
    let k = &r.field;
    let n = |c: i64| k.from_i64(c);
    let [a1, a2, a3, a4, a6] = a;
    let b2 = r.add(&r.mul(a1, a1), &r.scale(a2, &n(4)));
    let b4 = r.add(&r.scale(a4, &n(2)), &r.mul(a1, a3));
    let b6 = r.add(&r.mul(a3, a3), &r.scale(a6, &n(4)));
    let b8 = {
        let mut acc = r.mul(&r.mul(a1, a1), a6);
        acc = r.add(&acc, &r.scale(&r.mul(a2, a6), &n(4)));
        acc = r.sub(&acc, &r.mul(&r.mul(a1, a3), a4));
        acc = r.add(&acc, &r.mul(&r.mul(a2, a3), a3));
        r.sub(&acc, &r.mul(a4, a4))
    };
    let c4 = r.sub(&r.mul(&b2, &b2), &r.scale(&b4, &n(24)));
    let c6 = {
        let b2c = r.mul(&r.mul(&b2, &b2), &b2);
        r.sub(
            &r.add(&r.neg(&b2c), &r.scale(&r.mul(&b2, &b4), &n(36))),
            &r.scale(&b6, &n(216)),
        )
    };
    let delta = {
        let t1 = r.neg(&r.mul(&r.mul(&b2, &b2), &b8));
        let t2 = r.scale(&r.mul(&r.mul(&b4, &b4), &b4), &n(8));
        let t3 = r.scale(&r.mul(&b6, &b6), &n(27));
        let t4 = r.scale(&r.mul(&r.mul(&b2, &b4), &b6), &n(9));
        r.add(&r.sub(&r.sub(&t1, &t2), &t3), &t4)
    };
    (c4, c6, delta)
}

fn split_of<K: Field>(k: &K, disc: &K::Elem) -> Option<bool> {
    match k.sqrt(disc) {
        Sqrt::Root(_) => Some(true),
        Sqrt::NonSquare => Some(false),
        Sqrt::Unknown => None,
    }
}

/// Multiple root of a monic cubic `T³ + bT² + cT + d` with zero
/// discriminant: `(root, is_triple)`.
fn multiple_root<K: Field>(k: &K, b: &K::Elem, c: &K::Elem, d: &K::Elem) -> (K::Elem, bool) {
    let n = |x: i64| k.from_i64(x);
    let e = k.sub(&k.mul(b, b), &k.mul(&n(3), c));
    if k.is_zero(&e) {
        (k.div(&k.neg(b), &n(3)).unwrap(), true)
    } else {
        let num = k.sub(&k.mul(&n(9), d), &k.mul(b, c));
        (k.div(&num, &k.mul(&n(2), &e)).unwrap(), false)
    }
}

fn cubic_disc<K: Field>(k: &K, b: &K::Elem, c: &K::Elem, d: &K::Elem) -> K::Elem {
    // b²c² − 4c³ − 4b³d − 27d² + 18bcd
    let n = |x: i64| k.from_i64(x);
    let b2 = k.mul(b, b);
    let c2 = k.mul(c, c);
    let mut acc = k.mul(&b2, &c2);
    acc = k.sub(&acc, &k.mul(&n(4), &k.mul(&c2, c)));
    acc = k.sub(&acc, &k.mul(&n(4), &k.mul(&k.mul(&b2, b), d)));
    acc = k.sub(&acc, &k.mul(&n(27), &k.mul(d, d)));
    k.add(&acc, &k.mul(&n(18), &k.mul(&k.mul(b, c), d)))
}

fn val_opt(v: u32) -> Option<u32> {
    (v != u32::MAX).then_some(v)
}

/// Run Tate's algorithm at `t = 0`.
pub fn tate_at_zero<K: Field>(field: K, a: [Vec<K::Elem>; 5]) -> Result<LocalResult<K::Elem>> {
    let ch = field.characteristic();
    if ch == 2 || ch == 3 {
        return Err(Error::Domain(
            "Tate's algorithm here needs residue characteristic other than 2, 3".into(),
        ));
    }
    let ring = PolyRing::new(field);
    let a = a.map(|p| ring.normalize(p));
    let mut st = Local { r: &ring, a };
    let k = &ring.field;
    let half = k.inv(&k.from_i64(2)).unwrap();
    if ring.is_zero(&st.invariants().2) {
        return Err(Error::Domain(
            "singular generic fibre (zero discriminant)".into(),
        ));
    }
    for rescalings in 0u32..64 {
        // complete the square
        let s = ring.scale(&st.a[0], &k.neg(&half));
        let t = ring.scale(&st.a[2], &k.neg(&half));
        st.change(&[], &s, &t);
        let (c4, c6, delta) = st.invariants();
        let n = st.v(&delta);
        let finish = |st: &Local<K>, kod: Kodaira, split: Option<bool>, roots: Option<usize>| {
            let (c4, c6, delta) = st.invariants();
            LocalResult {
                data: LocalFibreData {
                    kodaira: kod,
                    v_c4: val_opt(st.v(&c4)),
                    v_c6: val_opt(st.v(&c6)),
                    v_delta: st.v(&delta),
                    components: kod.components(),
                    split,
                    cubic_roots: roots,
                    rescalings,
                },
                minimal: st.a.clone(),
            }
        };
        let _ = (c4, c6);
        if n == 0 {
            return Ok(finish(&st, Kodaira::I0, Some(true), None));
        }
        // singular point of the reduction
        let (b, c, d) = (st.c(&st.a[1], 0), st.c(&st.a[3], 0), st.c(&st.a[4], 0));
        let (x0, _) = multiple_root(k, &b, &c, &d);
        st.change(&[x0], &[], &[]);
        if st.v(&st.a[1]) == 0 {
            let split = split_of(k, &st.c(&st.a[1], 0));
            return Ok(finish(&st, Kodaira::I(n), split, None));
        }
        if st.v(&st.a[4]) < 2 {
            return Ok(finish(&st, Kodaira::II, Some(true), None));
        }
        let b8 = ring.sub(
            &ring.scale(&ring.mul(&st.a[1], &st.a[4]), &k.from_i64(4)),
            &ring.mul(&st.a[3], &st.a[3]),
        );
        if st.v(&b8) < 3 {
            return Ok(finish(&st, Kodaira::III, Some(true), None));
        }
        if st.v(&st.a[4]) < 3 {
            let split = split_of(k, &st.c(&st.a[4], 2));
            return Ok(finish(&st, Kodaira::IV, split, None));
        }
        // now t | a2, t² | a4, t³ | a6
        let (pb, pc, pd) = (st.c(&st.a[1], 1), st.c(&st.a[3], 2), st.c(&st.a[4], 3));
        let disc = cubic_disc(k, &pb, &pc, &pd);
        if !k.is_zero(&disc) {
            let roots = k
                .roots(&[pd.clone(), pc.clone(), pb.clone(), k.one()])
                .map(|r| r.len());
            return Ok(finish(&st, Kodaira::I0Star, None, roots));
        }
        let (beta, triple) = multiple_root(k, &pb, &pc, &pd);
        st.change(&st.mono(beta, 1), &[], &[]);
        if !triple {
            let (mut ex, mut ey) = (2u32, 2u32);
            let mut m = 1u32;
            loop {
                if m % 2 == 1 {
                    let qa = st.c(&st.a[2], ey);
                    let qb = st.c(&st.a[4], ex + ey);
                    let disc = k.add(&k.mul(&qa, &qa), &k.mul(&k.from_i64(4), &qb));
                    if !k.is_zero(&disc) {
                        return Ok(finish(&st, Kodaira::IStar(m), split_of(k, &disc), None));
                    }
                    let root = k.mul(&k.neg(&qa), &half);
                    st.change(&[], &[], &st.mono(root, ey));
                    ey += 1;
                } else {
                    let qa = st.c(&st.a[1], 1);
                    let qb = st.c(&st.a[3], 1 + ex);
                    let qc = st.c(&st.a[4], ex + ey);
                    let disc = k.sub(&k.mul(&qb, &qb), &k.mul(&k.from_i64(4), &k.mul(&qa, &qc)));
                    if !k.is_zero(&disc) {
                        return Ok(finish(&st, Kodaira::IStar(m), split_of(k, &disc), None));
                    }
                    let root = k.div(&k.neg(&qb), &k.mul(&k.from_i64(2), &qa)).unwrap();
                    st.change(&st.mono(root, ex), &[], &[]);
                    ex += 1;
                }
                m += 1;
                if m > 10_000 {
                    return Err(Error::Check("I_n* subprocedure did not terminate".into()));
                }
            }
        }
        let qa = st.c(&st.a[2], 2);
        let qb = st.c(&st.a[4], 4);
        let disc = k.add(&k.mul(&qa, &qa), &k.mul(&k.from_i64(4), &qb));
        if !k.is_zero(&disc) {
            return Ok(finish(&st, Kodaira::IVStar, split_of(k, &disc), None));
        }
        let root = k.mul(&k.neg(&qa), &half);
        st.change(&[], &[], &st.mono(root, 2));
        if st.v(&st.a[3]) < 4 {
            return Ok(finish(&st, Kodaira::IIIStar, Some(true), None));
        }
        if st.v(&st.a[4]) < 6 {
            return Ok(finish(&st, Kodaira::IIStar, Some(true), None));
        }
        // non-minimal: divide a_i by t^i
        for (slot, i) in st.a.iter_mut().zip([1usize, 2, 3, 4, 6]) {
            *slot = ring.shift_down(slot, i);
        }
    }
    Err(Error::Check("Tate's algorithm did not terminate".into()))
}
