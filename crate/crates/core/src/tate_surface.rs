//! Elliptic surfaces over `k(t)`: local fibre data at finite places and at
//! infinity, bad-fibre tables, fibre reduction, Shioda heights and the
//! Shioda–Tate discriminant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::elliptic::{Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::factor::Factoring;
use crate::field::{Field, QuadElem, QuadraticField, SimpleExtension, Sqrt};
use crate::poly::PolyRing;
use crate::ratfunc::{RatFunc, RatFuncField};
use crate::tate::{poly_invariants, tate_at_zero, Kodaira, LocalFibreData};

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` with `a_i ∈ k[t]`.
#[derive(Clone, Debug)]
pub struct EllipticSurface<F: Field> {
    pub ring: PolyRing<F>,
    pub a: [Vec<F::Elem>; 5],
    /// Euler characteristic of the minimal surface (2 for K3).
    pub chi: u32,
}

/// A place of `k(t)`: a monic irreducible polynomial or `∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum Place<E> {
    Finite(Vec<E>),
    Infinity,
}

impl<E> Place<E> {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.len() - 1,
            Place::Infinity => 1,
        }
    }
}

/// A place with its fibre data. `weight` is the power of the uniformizer by
/// which `x` (resp. `y`) must be scaled with weight 2 (resp. 3) to pass from
/// the global model to the local minimal one.
#[derive(Clone, Debug)]
pub struct PlaceData<E> {
    pub place: Place<E>,
    pub data: LocalFibreData,
    pub weight: i64,
}

/// Bad fibres of a surface, plus the data at infinity (kept even when good).
#[derive(Clone, Debug)]
pub struct FibreTable<E> {
    pub bad: Vec<PlaceData<E>>,
    pub infinity: PlaceData<E>,
}

impl<E> FibreTable<E> {
    /// `Σ deg(v)·v(Δ_min)` over all places.
    pub fn euler_sum(&self) -> u32 {
        self.bad
            .iter()
            .map(|b| b.place.degree() as u32 * b.data.v_delta)
            .sum()
    }

    /// Kodaira types with multiplicity (a degree-`d` place counts `d` times).
    pub fn types(&self) -> Vec<Kodaira> {
        let mut v: Vec<Kodaira> = self
            .bad
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.data.kodaira, b.place.degree()))
            .collect();
        v.sort();
        v
    }

    /// Signed discriminant of `U ⊕ (root lattices of the reducible fibres)`.
    pub fn trivial_lattice_disc(&self) -> i64 {
        -self
            .types()
            .iter()
            .map(|k| k.root_lattice_det())
            .product::<i64>()
    }

    /// Rank of the trivial lattice.
    pub fn trivial_lattice_rank(&self) -> u32 {
        2 + self.types().iter().map(|k| k.components() - 1).sum::<u32>()
    }
}

/// A section `(x(t), y(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section<E> {
    pub x: RatFunc<E>,
    pub y: RatFunc<E>,
}

/// Which component of a reducible fibre a section meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentIndex {
    Identity,
    /// Component `k` of an `I_n` cycle, up to the reflection `k ↔ n − k`.
    Cycle {
        k: u32,
        n: u32,
    },
    /// A non-identity component of an additive fibre, named by its
    /// correction term.
    Additive {
        contr: String,
    },
}

/// Local contribution of a section at one place.
#[derive(Clone, Debug)]
pub struct LocalContribution<E> {
    pub place: Place<E>,
    pub component: ComponentIndex,
    /// Correction term at one geometric fibre over the place.
    pub contr: BigRational,
}

/// Height of a section with the data that produced it.
#[derive(Clone, Debug)]
pub struct HeightReport<E> {
    pub height: BigRational,
    pub intersection_with_zero: i64,
    pub contributions: Vec<LocalContribution<E>>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl<F: Field> EllipticSurface<F> {
    pub fn new(field: F, a: [Vec<F::Elem>; 5], chi: u32) -> Result<Self> {
        let ring = PolyRing::new(field);
        let a = a.map(|p| ring.normalize(p));
        let s = EllipticSurface { ring, a, chi };
        if s.ring.is_zero(&s.c4_c6_delta().2) {
            return Err(Error::Domain("discriminant vanishes identically".into()));
        }
        Ok(s)
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    /// `(c₄, c₆, Δ)` as polynomials in `t`.
    pub fn c4_c6_delta(&self) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
        poly_invariants(&self.ring, &self.a)
    }

    /// Generic fibre as a curve over `k(t)`.
    pub fn generic_fibre(&self) -> Result<WeierstrassModel<RatFuncField<F>>> {
        let k = RatFuncField::new(self.field().clone());
        let a = self.a.clone().map(|p| k.poly(&p));
        WeierstrassModel::new(k, a)
    }

    /// Weight used at infinity: the least `w ≥ χ` with `deg a_i ≤ i·w`.
    pub fn infinity_weight(&self) -> u32 {
        let mut w = self.chi;
        for (p, i) in self.a.iter().zip([1u32, 2, 3, 4, 6]) {
            if let Some(d) = self.ring.degree(p) {
                w = w.max((d as u32).div_ceil(i));
            }
        }
        w
    }

    /// Model in `u = 1/t` with `a_i ↦ u^{i·w} a_i(1/u)`.
    pub fn at_infinity(&self) -> [Vec<F::Elem>; 5] {
        let w = self.infinity_weight() as usize;
        let mut out = self.a.clone();
        for (slot, i) in out.iter_mut().zip([1usize, 2, 3, 4, 6]) {
            *slot = self.ring.reverse(slot, i * w);
        }
        out
    }

    /// Substitute `t ↦ t + c`.
    pub fn recenter(&self, c: &F::Elem) -> Self {
        let a = self.a.clone().map(|p| self.ring.translate(&p, c));
        EllipticSurface {
            ring: self.ring.clone(),
            a,
            chi: self.chi,
        }
    }

    /// Tate's algorithm at one place.
    pub fn local_type(&self, place: &Place<F::Elem>) -> Result<PlaceData<F::Elem>> {
        let k = self.field();
        let (data, weight) = match place {
            Place::Infinity => {
                let r = tate_at_zero(k.clone(), self.at_infinity())?;
                (r.data, self.infinity_weight() as i64)
            }
            Place::Finite(pi) => {
                let pi = self.ring.normalize(pi.clone());
                let d = self
                    .ring
                    .degree(&pi)
                    .ok_or_else(|| Error::Domain("zero place".into()))?;
                if d == 0 || !k.is_one(&self.ring.lead(&pi)) {
                    return Err(Error::Domain(
                        "place must be monic of positive degree".into(),
                    ));
                }
                if d == 1 {
                    let root = k.neg(&pi[0]);
                    let a = self.a.clone().map(|p| self.ring.translate(&p, &root));
                    (tate_at_zero(k.clone(), a)?.data, 0)
                } else {
                    let l = SimpleExtension::new(k.clone(), pi.clone());
                    let lr = PolyRing::new(l.clone());
                    let a = self.a.clone().map(|p| {
                        let lifted: Vec<_> = p.iter().map(|c| l.lift(c)).collect();
                        lr.translate(&lifted, &l.gen())
                    });
                    (tate_at_zero(l, a)?.data, 0)
                }
            }
        };
        let weight = weight - data.rescalings as i64;
        Ok(PlaceData {
            place: place.clone(),
            data,
            weight,
        })
    }

    /// Fibre over a point `t = t₀` of the base field.
    pub fn local_type_at(&self, t0: &F::Elem) -> Result<PlaceData<F::Elem>> {
        let k = self.field();
        self.local_type(&Place::Finite(vec![k.neg(t0), k.one()]))
    }

    /// Evaluate the coefficients at `t₀`; the flag is true for good reduction.
    pub fn reduce_fiber(&self, t0: &F::Elem) -> (WeierstrassModel<F>, bool) {
        let a = self.a.clone().map(|p| self.ring.eval(&p, t0));
        let e = WeierstrassModel::new_unchecked(self.field().clone(), a);
        let good = !e.is_singular();
        (e, good)
    }

    /// Reduce the coefficients into another field.
    pub fn map<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<EllipticSurface<G>> {
        let ring = PolyRing::new(target);
        let mut a: [Vec<G::Elem>; 5] = Default::default();
        for (dst, src) in a.iter_mut().zip(&self.a) {
            *dst = ring.normalize(src.iter().map(&f).collect::<Result<Vec<_>>>()?);
        }
        EllipticSurface::new(ring.field, a, self.chi)
    }

    fn rf(&self) -> RatFuncField<F> {
        RatFuncField::new(self.field().clone())
    }

    fn valuation(&self, place: &Place<F::Elem>, f: &RatFunc<F::Elem>) -> Option<i64> {
        let r = &self.ring;
        if r.is_zero(&f.num) {
            return None;
        }
        Some(match place {
            Place::Infinity => r.degree(&f.den).unwrap() as i64 - r.degree(&f.num).unwrap() as i64,
            Place::Finite(pi) => {
                r.valuation_at(&f.num, pi).unwrap() as i64
                    - r.valuation_at(&f.den, pi).unwrap() as i64
            }
        })
    }

    /// Correction term and component of `P` at one place.
    pub fn component_index(
        &self,
        p: &Section<F::Elem>,
        pd: &PlaceData<F::Elem>,
    ) -> Result<(ComponentIndex, BigRational)> {
        let kf = self.rf();
        let c = |p: &[F::Elem]| kf.poly(p);
        let n = |v: i64| kf.from_i64(v);
        let [a1, a2, a3, a4, a6] = self.a.clone().map(|p| c(&p));
        let (x, y) = (&p.x, &p.y);
        let psi2 = kf.add(&kf.add(&kf.mul(&n(2), y), &kf.mul(&a1, x)), &a3);
        let fx = {
            let mut acc = kf.mul(&n(3), &kf.mul(x, x));
            acc = kf.add(&acc, &kf.mul(&n(2), &kf.mul(&a2, x)));
            acc = kf.add(&acc, &a4);
            kf.sub(&acc, &kf.mul(&a1, y))
        };
        let b2 = kf.add(&kf.mul(&a1, &a1), &kf.mul(&n(4), &a2));
        let b4 = kf.add(&kf.mul(&n(2), &a4), &kf.mul(&a1, &a3));
        let b6 = kf.add(&kf.mul(&a3, &a3), &kf.mul(&n(4), &a6));
        let b8 = {
            let mut acc = kf.mul(&kf.mul(&a1, &a1), &a6);
            acc = kf.add(&acc, &kf.mul(&n(4), &kf.mul(&a2, &a6)));
            acc = kf.sub(&acc, &kf.mul(&kf.mul(&a1, &a3), &a4));
            acc = kf.add(&acc, &kf.mul(&kf.mul(&a2, &a3), &a3));
            kf.sub(&acc, &kf.mul(&a4, &a4))
        };
        let psi3 = {
            let x2 = kf.mul(x, x);
            let mut acc = kf.mul(&n(3), &kf.mul(&x2, &x2));
            acc = kf.add(&acc, &kf.mul(&b2, &kf.mul(&x2, x)));
            acc = kf.add(&acc, &kf.mul(&n(3), &kf.mul(&b4, &x2)));
            acc = kf.add(&acc, &kf.mul(&n(3), &kf.mul(&b6, x)));
            kf.add(&acc, &b8)
        };
        let w = pd.weight;
        let v = |f: &RatFunc<F::Elem>, wt: i64| self.valuation(&pd.place, f).map(|e| e + wt * w);
        let vx = v(x, 2);
        let vy = v(y, 3);
        let integral = vx.is_none_or(|e| e >= 0) && vy.is_none_or(|e| e >= 0);
        let pos = |e: Option<i64>| e.is_none_or(|e| e > 0);
        let (vpsi2, vfx) = (v(&psi2, 3), v(&fx, 4));
        if !integral || !pos(vpsi2) || !pos(vfx) {
            return Ok((ComponentIndex::Identity, BigRational::zero()));
        }
        let kod = pd.data.kodaira;
        match kod {
            Kodaira::I(nn) if nn >= 2 => {
                let nn64 = nn as i64;
                // α = min(v(ψ₂), n/2)
                let alpha = match vpsi2 {
                    Some(e) if 2 * e < nn64 => q(e, 1),
                    _ => q(nn64, 2),
                };
                let contr = &alpha * (q(nn64, 1) - &alpha) / q(nn64, 1);
                if !alpha.is_integer() {
                    return Err(Error::Check(format!("half-integral cycle index on {kod}")));
                }
                let k = alpha.to_integer().to_u32().unwrap();
                Ok((ComponentIndex::Cycle { k, n: nn }, contr))
            }
            Kodaira::I0 | Kodaira::I(_) | Kodaira::II | Kodaira::IIStar => {
                Ok((ComponentIndex::Identity, BigRational::zero()))
            }
            _ => {
                let vpsi3 = v(&psi3, 8);
                let contr = match (vpsi2, vpsi3) {
                    (_, None) => q(2 * vpsi2.unwrap(), 3),
                    (Some(e2), Some(e3)) if e3 >= 3 * e2 => q(2 * e2, 3),
                    (_, Some(e3)) => q(e3, 4),
                };
                Ok((
                    ComponentIndex::Additive {
                        contr: contr.to_string(),
                    },
                    contr,
                ))
            }
        }
    }

    fn check_on_curve(&self, p: &Section<F::Elem>) -> Result<WeierstrassModel<RatFuncField<F>>> {
        let e = self.generic_fibre()?;
        if !e.is_on_curve(&Point::Affine(p.x.clone(), p.y.clone())) {
            return Err(Error::Domain(
                "section does not satisfy the Weierstrass equation".into(),
            ));
        }
        Ok(e)
    }

    /// Sum of `P` and `Q` on the generic fibre (`None` for the zero section).
    pub fn add_sections(
        &self,
        p: &Section<F::Elem>,
        q: &Section<F::Elem>,
    ) -> Result<Option<Section<F::Elem>>> {
        let e = self.generic_fibre()?;
        Ok(to_section(
            e.add_points(&to_point(Some(p)), &to_point(Some(q))),
        ))
    }

    /// `m·P` on the generic fibre.
    pub fn mul_section(&self, p: &Section<F::Elem>, m: i64) -> Result<Option<Section<F::Elem>>> {
        let e = self.generic_fibre()?;
        Ok(to_section(e.mul_point(&to_point(Some(p)), m)))
    }
}

fn to_point<E: Clone>(p: Option<&Section<E>>) -> Point<RatFunc<E>> {
    match p {
        Some(s) => Point::Affine(s.x.clone(), s.y.clone()),
        None => Point::Infinity,
    }
}

fn to_section<E>(p: Point<RatFunc<E>>) -> Option<Section<E>> {
    match p {
        Point::Infinity => None,
        Point::Affine(x, y) => Some(Section { x, y }),
    }
}

impl<F: Factoring> EllipticSurface<F> {
    /// Check that `π` is monic irreducible and build the place.
    pub fn place(&self, pi: Vec<F::Elem>) -> Result<Place<F::Elem>> {
        let pi = self.ring.normalize(pi);
        let f = self.field().factor(&pi)?;
        if f.len() != 1 || f[0].1 != 1 || f[0].0 != pi {
            return Err(Error::Domain(format!(
                "{} is not monic irreducible",
                self.ring.render(&pi, "t")
            )));
        }
        Ok(Place::Finite(pi))
    }

    /// All places with singular fibre, plus the data at infinity.
    pub fn bad_fibres(&self) -> Result<FibreTable<F::Elem>> {
        let (_, _, delta) = self.c4_c6_delta();
        let mut bad = Vec::new();
        for (pi, _) in self.field().factor(&delta)? {
            bad.push(self.local_type(&Place::Finite(pi))?);
        }
        let infinity = self.local_type(&Place::Infinity)?;
        if infinity.data.kodaira != Kodaira::I0 {
            bad.push(infinity.clone());
        }
        Ok(FibreTable { bad, infinity })
    }

    /// `(P·O)` from the poles of `x(P)` on the local minimal models.
    pub fn intersection_with_zero(
        &self,
        p: &Section<F::Elem>,
        table: &FibreTable<F::Elem>,
    ) -> Result<i64> {
        let mut total = 0i64;
        let weight_of = |pl: &Place<F::Elem>| {
            table
                .bad
                .iter()
                .find(|b| &b.place == pl)
                .map_or(0, |b| b.weight)
        };
        let mut places: Vec<Place<F::Elem>> = self
            .field()
            .factor(&p.x.den)?
            .into_iter()
            .map(|(g, _)| Place::Finite(g))
            .collect();
        places.push(Place::Infinity);
        for pl in places {
            let w = if pl == Place::Infinity {
                table.infinity.weight
            } else {
                weight_of(&pl)
            };
            if let Some(vx) = self.valuation(&pl, &p.x) {
                let vx = vx + 2 * w;
                if vx < 0 {
                    total += pl.degree() as i64 * (1 - vx).div_euclid(2);
                }
            }
        }
        Ok(total)
    }

    /// Shioda height `⟨P,P⟩ = 2χ + 2(P·O) − Σ contr_v(P)`.
    pub fn height(
        &self,
        p: Option<&Section<F::Elem>>,
        table: &FibreTable<F::Elem>,
    ) -> Result<HeightReport<F::Elem>> {
        let Some(p) = p else {
            return Ok(HeightReport {
                height: BigRational::zero(),
                intersection_with_zero: 0,
                contributions: vec![],
            });
        };
        self.check_on_curve(p)?;
        let po = self.intersection_with_zero(p, table)?;
        let mut h = q(2 * self.chi as i64 + 2 * po, 1);
        let mut contributions = Vec::new();
        for b in &table.bad {
            let (component, contr) = self.component_index(p, b)?;
            h -= &contr * BigRational::from_integer(BigInt::from(b.place.degree()));
            contributions.push(LocalContribution {
                place: b.place.clone(),
                component,
                contr,
            });
        }
        Ok(HeightReport {
            height: h,
            intersection_with_zero: po,
            contributions,
        })
    }

    /// Height pairing by polarization.
    pub fn height_pairing(
        &self,
        p: &Section<F::Elem>,
        q2: &Section<F::Elem>,
        table: &FibreTable<F::Elem>,
    ) -> Result<BigRational> {
        let s = self.add_sections(p, q2)?;
        let hs = self.height(s.as_ref(), table)?.height;
        let hp = self.height(Some(p), table)?.height;
        let hq = self.height(Some(q2), table)?.height;
        Ok((hs - hp - hq) / q(2, 1))
    }
}

/// `disc NS = (−1)^r · disc Triv · disc MW / |tors|²`.
pub fn shioda_tate_disc(
    r: u32,
    disc_triv: i64,
    disc_mw: &BigRational,
    tors: u64,
) -> Result<BigRational> {
    if tors == 0 {
        return Err(Error::Domain("torsion order must be positive".into()));
    }
    let sign = if r % 2 == 1 { -1 } else { 1 };
    Ok(q(sign * disc_triv, 1) * disc_mw / q((tors * tors) as i64, 1))
}

/// Outcome of the 2-divisibility test for the 2-torsion point `(0,0)` on
/// `y² = x(x² + a x + b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDivisibility {
    /// Whether `b` is a square over the algebraic closure of the constants.
    pub b_square: bool,
    /// Product of the irreducible factors of `b` with odd multiplicity.
    pub odd_part: String,
    /// `Some(false)` when `(0,0)` is certainly not in `2E`; `None` when the
    /// test would need constants outside the base field.
    pub divisible: Option<bool>,
}

fn odd_part<F: Field>(
    ring: &PolyRing<F>,
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<(Vec<F::Elem>, u32)>) {
    let dec = ring.squarefree_decomposition(b);
    let mut odd = ring.constant(ring.field.one());
    for (g, e) in &dec {
        if e % 2 == 1 {
            odd = ring.mul(&odd, g);
        }
    }
    (odd, dec)
}

/// Square root of a polynomial with even multiplicities, if its leading
/// coefficient is a square in the base field.
fn poly_sqrt<F: Field>(
    ring: &PolyRing<F>,
    b: &[F::Elem],
    dec: &[(Vec<F::Elem>, u32)],
) -> Option<Vec<F::Elem>> {
    let Sqrt::Root(c) = ring.field.sqrt(&ring.lead(b)) else {
        return None;
    };
    let mut s = ring.constant(c);
    for (g, e) in dec {
        s = ring.mul(&s, &ring.pow(&ring.monic(g), e / 2));
    }
    Some(s)
}

/// Is `(0,0)` divisible by 2 on `y² = x³ + a x² + b x` over `k̄(t)`?
///
/// `(0,0) = 2Q` forces `x(Q)² = b` and `x(Q)²(a + 2x(Q))` square.
pub fn torsion_two_divisibility<F: Field>(s: &EllipticSurface<F>) -> Result<TwoDivisibility> {
    let r = &s.ring;
    if !(r.is_zero(&s.a[0]) && r.is_zero(&s.a[2]) && r.is_zero(&s.a[4])) {
        return Err(Error::Domain("expected y² = x³ + a x² + b x".into()));
    }
    if r.field.characteristic() != 0 {
        return Err(Error::Domain(
            "parity test needs characteristic zero".into(),
        ));
    }
    let b = &s.a[3];
    let (odd, dec) = odd_part(r, b);
    let b_square = r.degree(&odd) == Some(0);
    let divisible = if !b_square {
        Some(false)
    } else {
        poly_sqrt(r, b, &dec).map(|sq| {
            [sq.clone(), r.neg(&sq)].iter().any(|x0| {
                let c = r.add(&s.a[1], &r.scale(x0, &r.field.from_i64(2)));
                !r.is_zero(&c) && r.degree(&odd_part(r, &c).0) == Some(0)
            })
        })
    };
    Ok(TwoDivisibility {
        b_square,
        odd_part: r.render(&r.monic(&odd), "t"),
        divisible,
    })
}

/// Genus-one curve `d(t)·y² = Q(x)` with `Q = a x⁴ + b x³ + c x² + d' x + e`.
#[derive(Clone, Debug)]
pub struct QuarticModel<F: Field> {
    pub ring: PolyRing<F>,
    /// `[a, b, c, d', e]` as polynomials in `t`.
    pub coeffs: [Vec<F::Elem>; 5],
    pub twist: Vec<F::Elem>,
}

impl<F: Field> QuarticModel<F> {
    /// Invariants `I = 12ae − 3bd + c²` and `J = 72ace + 9bcd − 27ad² − 27eb² − 2c³`.
    pub fn invariants(&self) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let r = &self.ring;
        let n = |v: i64| r.field.from_i64(v);
        let [a, b, c, d, e] = &self.coeffs;
        let i = r.add(
            &r.sub(
                &r.scale(&r.mul(a, e), &n(12)),
                &r.scale(&r.mul(b, d), &n(3)),
            ),
            &r.mul(c, c),
        );
        let j = {
            let mut acc = r.scale(&r.mul(&r.mul(a, c), e), &n(72));
            acc = r.add(&acc, &r.scale(&r.mul(&r.mul(b, c), d), &n(9)));
            acc = r.sub(&acc, &r.scale(&r.mul(&r.mul(a, d), d), &n(27)));
            acc = r.sub(&acc, &r.scale(&r.mul(&r.mul(e, b), b), &n(27)));
            r.sub(&acc, &r.scale(&r.mul(&r.mul(c, c), c), &n(2)))
        };
        (i, j)
    }

    /// Jacobian `y² = x³ − 27d²I x − 27d³J`.
    pub fn jacobian(&self, chi: u32) -> Result<EllipticSurface<F>> {
        let r = &self.ring;
        let (i, j) = self.invariants();
        let d = &self.twist;
        let m27 = r.field.from_i64(-27);
        let a4 = r.scale(&r.mul(&r.pow(d, 2), &i), &m27);
        let a6 = r.scale(&r.mul(&r.pow(d, 3), &j), &m27);
        EllipticSurface::new(r.field.clone(), [vec![], vec![], vec![], a4, a6], chi)
            .map_err(|_| Error::Domain("degenerate quartic (4I³ = J²)".into()))
    }

    /// `j = 6912·I³/(4I³ − J²)` as a rational function.
    pub fn j_invariant(&self) -> Result<RatFunc<F::Elem>> {
        let r = &self.ring;
        let (i, j) = self.invariants();
        let i3 = r.pow(&i, 3);
        let den = r.sub(&r.scale(&i3, &r.field.from_i64(4)), &r.mul(&j, &j));
        if r.is_zero(&den) {
            return Err(Error::Domain("degenerate quartic (4I³ = J²)".into()));
        }
        Ok(RatFuncField::new(r.field.clone()).frac(&r.scale(&i3, &r.field.from_i64(6912)), &den))
    }

    /// Base change `t = s²` followed by the quartic-to-cubic transformation,
    /// using the point at infinity (requires `twist = t` and a square
    /// constant leading coefficient). The `j`-invariant is checked.
    pub fn base_change_to_weierstrass(&self, chi: u32) -> Result<EllipticSurface<F>> {
        let r = &self.ring;
        if self.twist != r.var() {
            return Err(Error::Domain("expected t·y² = Q(x)".into()));
        }
        let lead = &self.coeffs[0];
        let has_point =
            r.degree(lead) == Some(0) && matches!(r.field.sqrt(&lead[0]), Sqrt::Root(_));
        if !has_point {
            return Err(Error::Domain(
                "no rational point at infinity after base change".into(),
            ));
        }
        let s2 = r.monomial(r.field.one(), 2);
        let coeffs = self.coeffs.clone().map(|p| r.compose(&p, &s2));
        let untwisted = QuarticModel {
            ring: r.clone(),
            coeffs,
            twist: r.constant(r.field.one()),
        };
        let e = untwisted.jacobian(chi)?;
        let j_model = e.generic_fibre()?.j_invariant()?;
        if j_model != untwisted.j_invariant()? {
            return Err(Error::Check("j-invariant not preserved".into()));
        }
        Ok(e)
    }
}

/// Minimum positive value and resolution of `2χ + 2m − Σ contr` over all
/// component choices, for fibres of the given types.
pub fn height_grid(types: &[Kodaira], chi: u32) -> (BigRational, BigRational) {
    let mut sums: Vec<BigRational> = vec![BigRational::zero()];
    for k in types {
        let opts = correction_values(*k);
        let mut next: Vec<BigRational> = Vec::new();
        for s in &sums {
            for o in &opts {
                next.push(s + o);
            }
        }
        next.sort();
        next.dedup();
        sums = next;
    }
    let base = q(2 * chi as i64, 1);
    let max = sums.last().cloned().unwrap_or_else(BigRational::zero);
    let mut min_pos: Option<BigRational> = None;
    let mut m = 0i64;
    loop {
        let top = &base + q(2 * m, 1);
        if top > &max + q(2, 1) && min_pos.is_some() {
            break;
        }
        for s in &sums {
            let h = &top - s;
            if h.is_positive() && min_pos.as_ref().is_none_or(|cur| &h < cur) {
                min_pos = Some(h);
            }
        }
        m += 1;
    }
    let den = sums
        .iter()
        .fold(BigInt::one(), |acc, s| Integer::lcm(&acc, s.denom()));
    (min_pos.unwrap(), BigRational::new(BigInt::one(), den))
}

/// Possible correction terms of a fibre type (0 for the identity component).
pub fn correction_values(k: Kodaira) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero()];
    match k {
        Kodaira::I(n) if n >= 2 => {
            let n = n as i64;
            v.extend((1..n).map(|i| q(i * (n - i), n)));
        }
        Kodaira::III => v.push(q(1, 2)),
        Kodaira::IV => v.push(q(2, 3)),
        Kodaira::I0Star => v.push(q(1, 1)),
        Kodaira::IStar(n) => {
            v.push(q(1, 1));
            v.push(q(4 + n as i64, 4));
        }
        Kodaira::IVStar => v.push(q(4, 3)),
        Kodaira::IIIStar => v.push(q(3, 2)),
        _ => {}
    }
    v.sort();
    v.dedup();
    v
}

fn ip<F: Field>(k: &F, c: &[i64]) -> Vec<F::Elem> {
    c.iter().map(|&x| k.from_i64(x)).collect()
}

/// `y² = x³ + (t−1)²(t²+6t+1)x² − 16t³(t−1)²x`.
pub fn fibration_one<F: Field>(k: F) -> Result<EllipticSurface<F>> {
    let r = PolyRing::new(k.clone());
    let tm1sq = r.pow(&ip(&k, &[-1, 1]), 2);
    let a2 = r.mul(&tm1sq, &ip(&k, &[1, 6, 1]));
    let a4 = r.mul(&tm1sq, &ip(&k, &[0, 0, 0, -16]));
    EllipticSurface::new(k, [vec![], a2, vec![], a4, vec![]], 2)
}

/// `y² = x³ − (3t⁴+8t³−2t²−1)x² + 16t⁵(t²+t−1)x`.
pub fn fibration_two<F: Field>(k: F) -> Result<EllipticSurface<F>> {
    let a2 = ip(&k, &[1, 0, 2, -8, -3]);
    let a4 = ip(&k, &[0, 0, 0, 0, 0, -16, 16, 16]);
    EllipticSurface::new(k, [vec![], a2, vec![], a4, vec![]], 2)
}

/// `P₃ = (4t³, 4t³(t²−1))` on the second fibration.
pub fn section_p3<F: Field>(k: &F) -> Section<F::Elem> {
    let kf = RatFuncField::new(k.clone());
    Section {
        x: kf.poly(&ip(k, &[0, 0, 0, 4])),
        y: kf.poly(&ip(k, &[0, 0, 0, -4, 0, 4])),
    }
}

/// The 2-torsion section `(0,0)`.
pub fn section_two_torsion<F: Field>(k: &F) -> Section<F::Elem> {
    let kf = RatFuncField::new(k.clone());
    Section {
        x: kf.zero(),
        y: kf.zero(),
    }
}

/// `(rational, √5, denominator)` coordinates, low degree first.
type Q5Coeffs = &'static [(i64, i64, i64)];

const THIRD_B: Q5Coeffs = &[(76, -34, 1), (-148, 66, 1), (272, -116, 1)];
const THIRD_C: Q5Coeffs = &[
    (8667, -3876, 2),
    (-87871, 39297, 2),
    (160725, -71882, 2),
    (-138785, 62037, 2),
    (52974, -23664, 1),
];
const THIRD_D: Q5Coeffs = &[
    (219602, -98209, 2),
    (-11887758, 5316367, 2),
    (23538663, -10526810, 2),
    (-31933423, 14281062, 2),
    (31783015, -14213809, 2),
    (-19655187, 8789895, 2),
    (4689008, -2096932, 1),
];
const THIRD_E: Q5Coeffs = &[
    (16692641, -7465176, 16),
    (-1364444125, 610197963, 8),
    (560512177, -250668666, 8),
    (-42814206, 19147095, 4),
    (4252986577, -1901993416, 16),
    (-5253645563, 2349501743, 8),
    (2945029977, -1317057443, 4),
    (-427682729, 191265401, 1),
    (155726921, -69643152, 1),
];

fn q5poly(k: &QuadraticField, c: Q5Coeffs) -> Vec<QuadElem> {
    c.iter()
        .map(|&(a, b, d)| k.elem(q(a, d), q(b, d)))
        .collect()
}

/// The genus-one fibration `t·y² = Q(x, t)` over `ℚ(√5)(t)`.
pub fn fibration_three() -> QuarticModel<QuadraticField> {
    let k = QuadraticField::new(5);
    let ring = PolyRing::new(k.clone());
    let coeffs = [
        vec![k.one()],
        q5poly(&k, THIRD_B),
        q5poly(&k, THIRD_C),
        q5poly(&k, THIRD_D),
        q5poly(&k, THIRD_E),
    ];
    QuarticModel {
        twist: ring.var(),
        ring,
        coeffs,
    }
}

/// `t⁴ − (1118√5+2598)/27·t³ − (89700√5+200362)/27·t² − (1118√5+2598)/27·t + 1`.
pub fn fibration_three_i1_locus() -> Vec<QuadElem> {
    let k = QuadraticField::new(5);
    let c1 = k.elem(q(-2598, 27), q(-1118, 27));
    let c2 = k.elem(q(-200362, 27), q(-89700, 27));
    vec![k.one(), c1.clone(), c2, c1, k.one()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rationals};

    fn kinds(t: &FibreTable<BigRational>) -> Vec<(String, String)> {
        let r = PolyRing::new(Rationals);
        t.bad
            .iter()
            .map(|b| {
                let p = match &b.place {
                    Place::Infinity => "inf".to_string(),
                    Place::Finite(pi) => r.render(pi, "t"),
                };
                (p, b.data.kodaira.to_string())
            })
            .collect()
    }

    #[test]
    fn first_fibration_table() {
        let e = fibration_one(Rationals).unwrap();
        let t = e.bad_fibres().unwrap();
        assert_eq!(t.euler_sum(), 24);
        let mut ty: Vec<String> = t.types().iter().map(|k| k.to_string()).collect();
        ty.sort();
        assert_eq!(ty, ["I0*", "I1", "I1", "I1", "I1", "I2", "I6", "I6"]);
        let k = kinds(&t);
        assert!(k.contains(&("inf".into(), "I6".into())), "{k:?}");
    }

    #[test]
    fn second_fibration_table_and_heights() {
        let e = fibration_two(Rationals).unwrap();
        let t = e.bad_fibres().unwrap();
        assert_eq!(t.euler_sum(), 24);
        assert_eq!(t.trivial_lattice_disc(), -640);
        let p3 = section_p3(&Rationals);
        let h = e.height(Some(&p3), &t).unwrap();
        assert_eq!(h.height, rat(3, 20));
        assert_eq!(h.intersection_with_zero, 0);
        let tt = section_two_torsion(&Rationals);
        assert_eq!(e.height(Some(&tt), &t).unwrap().height, rat(0, 1));
        let p6 = e.mul_section(&p3, 2).unwrap().unwrap();
        assert_eq!(e.height(Some(&p6), &t).unwrap().height, rat(12, 20));
        let disc = shioda_tate_disc(1, t.trivial_lattice_disc(), &rat(3, 20), 2).unwrap();
        assert_eq!(disc, rat(24, 1));
    }

    #[test]
    fn parity_test_for_two_torsion() {
        let e = fibration_two(Rationals).unwrap();
        let d = torsion_two_divisibility(&e).unwrap();
        assert_eq!((d.b_square, d.divisible), (false, Some(false)));
        assert_eq!(d.odd_part, "t^3 + t^2 - t");
    }

    #[test]
    fn third_fibration_jacobian() {
        let m = fibration_three();
        let e = m.jacobian(2).unwrap();
        let t = e.bad_fibres().unwrap();
        let r = &e.ring;
        let mut seen = Vec::new();
        for b in &t.bad {
            let p = match &b.place {
                Place::Infinity => "inf".to_string(),
                Place::Finite(pi) => r.render(pi, "t"),
            };
            seen.push((p, b.data.kodaira));
        }
        assert_eq!(t.euler_sum(), 24, "{seen:?}");
        assert!(seen.contains(&("inf".into(), Kodaira::IIStar)), "{seen:?}");
        assert!(seen.contains(&("t".into(), Kodaira::IIStar)), "{seen:?}");
        let quartic = fibration_three_i1_locus();
        assert!(t
            .bad
            .iter()
            .any(|b| b.place == Place::Finite(quartic.clone()) && b.data.kodaira == Kodaira::I(1)));
    }

    #[test]
    fn base_change_of_third_fibration() {
        let e = fibration_three().base_change_to_weierstrass(2).unwrap();
        let k = e.field().clone();
        assert_eq!(
            e.local_type_at(&k.zero()).unwrap().data.kodaira,
            Kodaira::IVStar
        );
        assert_eq!(
            e.local_type(&Place::Infinity).unwrap().data.kodaira,
            Kodaira::IVStar
        );
    }

    #[test]
    fn quartic_examples() {
        let k = Rationals;
        let ring = PolyRing::new(k);
        let t = ring.var();
        let one = ring.constant(rat(1, 1));
        let degenerate = QuarticModel {
            ring: ring.clone(),
            coeffs: [one.clone(), vec![], vec![], vec![], vec![]],
            twist: t.clone(),
        };
        assert!(degenerate.base_change_to_weierstrass(1).is_err());
        let m = QuarticModel {
            ring: ring.clone(),
            coeffs: [one.clone(), vec![], vec![], vec![], one],
            twist: t,
        };
        let e = m.base_change_to_weierstrass(1).unwrap();
        let j = e.generic_fibre().unwrap().j_invariant().unwrap();
        assert_eq!(j.num, vec![rat(1728, 1)]);
    }
}
