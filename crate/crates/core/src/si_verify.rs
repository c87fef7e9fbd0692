//! Shioda–Inose cross-checks: the Kummer-matching system, the j-invariant
//! of the associated curves, traces at split primes, the twist by κ, the
//! 3-isogeny between the two curves and closed-form point counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::elliptic::{count_points, IsogenyCheck, IsogenyMap, WeierstrassModel};
use crate::error::{Error, Result};
use crate::field::{rat, Field};
use crate::finite_field::{kronecker_i64, ExtField};
use crate::numfield::{
    constants, minimal_polynomial_over_q, monomial_exponents, verify_si_system, BiQuadratic,
    K4Elem, SiResiduals, SplitEmbedding, TowerElement,
};

/// Coefficients of the j-invariant's minimal polynomial, constant first.
pub const J_MIN_POLY: [&str; 5] = [
    "-34447407894757376",
    "27021904707584",
    "12470497280",
    "-6416768",
    "1",
];

pub fn j_min_poly() -> Vec<BigInt> {
    J_MIN_POLY.iter().map(|s| s.parse().unwrap()).collect()
}

fn k4(c: [i64; 4], den: i64) -> K4Elem {
    K4Elem::ints(c, den)
}

/// `y² = x³ + 4x² + 2(1 − 4μ√2 − 3ν√5)x`.
pub fn e_mu_nu(mu: i64, nu: i64) -> WeierstrassModel<BiQuadratic> {
    let k = BiQuadratic;
    let a4 = k4([2, -8 * mu, -6 * nu, 0], 1);
    WeierstrassModel::cubic(k, k4([4, 0, 0, 0], 1), a4, k.zero()).expect("nonsingular")
}

/// The first curve of the pair, `E_{1,1}`.
pub fn e1() -> WeierstrassModel<BiQuadratic> {
    e_mu_nu(1, 1)
}

/// The second curve, the twist of `E_{-1,1}` by `-1`.
pub fn e2() -> WeierstrassModel<BiQuadratic> {
    e_mu_nu(-1, 1)
        .quadratic_twist(&k4([-1, 0, 0, 0], 1))
        .expect("nonzero twist")
}

/// `y² = x³ + 2(√2 + 1)x² + ½(−10√2 − 9√5 − 6√10 − 13)x`.
pub fn e256() -> WeierstrassModel<BiQuadratic> {
    let k = BiQuadratic;
    WeierstrassModel::cubic(k, k4([2, 2, 0, 0], 1), k4([-13, -10, -9, -6], 2), k.zero())
        .expect("nonsingular")
}

/// Twist of the second curve by κ; partner of [`e256`] under the same twist.
pub fn e256_partner() -> WeierstrassModel<BiQuadratic> {
    e2().quadratic_twist(&constants::kappa())
        .expect("nonzero twist")
}

/// The degree-3 map from [`e1`] to [`e2`].
pub fn phi() -> IsogenyMap<BiQuadratic> {
    IsogenyMap {
        source: e1(),
        target: e2(),
        nx: vec![
            k4([0; 4], 1),
            k4([54, 0, -18, 0], 1),
            k4([30, 6, -6, -6], 1),
            k4([7, 0, 0, -2], 1),
        ],
        dx: vec![
            k4([74, 36, 18, 20], 1),
            k4([-6, -18, -18, -6], 1),
            k4([9, 0, 0, 0], 1),
        ],
        ny: vec![
            k4([192, 72, -72, -24], 1),
            k4([142, 82, -34, -38], 1),
            k4([63, 38, -23, -18], 1),
            k4([0, 17, -11, 0], 1),
        ],
        dy: vec![
            k4([760, 648, 432, 256], 1),
            k4([-666, -324, -162, -180], 1),
            k4([27, 81, 81, 27], 1),
            k4([-27, 0, 0, 0], 1),
        ],
        degree: 3,
        kernel_x: Some(k4([1, 3, 3, 1], 3)),
    }
}

/// `j(y² = x³ + ax + b) = 1728 · 4a³ / (4a³ + 27b²)`.
pub fn j_short(a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
    let four_a3 = a.pow(3).scale(&rat(4, 1));
    let den = four_a3.add(&b.pow(2).scale(&rat(27, 1)));
    four_a3.scale(&rat(1728, 1)).div(&den)
}

pub fn j_of(e: &WeierstrassModel<BiQuadratic>) -> Result<TowerElement> {
    Ok(TowerElement::from_k4(&e.j_invariant()?))
}

/// j-invariant identities and the minimal polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct JReport {
    pub j_ab_matches_e1: bool,
    pub j_cd_matches_e2: bool,
    pub min_poly: Vec<String>,
    pub min_poly_matches: bool,
}

pub fn j_report() -> Result<JReport> {
    use constants::{a, b, c, d};
    let je1 = j_of(&e1())?;
    let je2 = j_of(&e2())?;
    let mp = minimal_polynomial_over_q(&je1)?;
    Ok(JReport {
        j_ab_matches_e1: j_short(&a(), &b())? == je1,
        j_cd_matches_e2: j_short(&c(), &d())? == je2,
        min_poly_matches: mp == j_min_poly(),
        min_poly: mp.iter().map(|c| c.to_string()).collect(),
    })
}

/// `Y² = X³ + x·X + (u2·u² + u0 + um2/u²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KummerModel {
    pub x: TowerElement,
    pub u2: TowerElement,
    pub u0: TowerElement,
    pub um2: TowerElement,
}

fn short_disc(a: &TowerElement, b: &TowerElement) -> TowerElement {
    a.pow(3)
        .scale(&rat(4, 1))
        .add(&b.pow(2).scale(&rat(27, 1)))
        .scale(&rat(-16, 1))
}

/// Weierstrass model of the natural fibration on the Kummer surface of
/// `E(a,b) × E(c,d)`.
pub fn kummer_model(
    a: &TowerElement,
    b: &TowerElement,
    c: &TowerElement,
    d: &TowerElement,
) -> Result<KummerModel> {
    let (dab, dcd) = (short_disc(a, b), short_disc(c, d));
    if dab.is_zero() || dcd.is_zero() {
        return Err(Error::Domain("singular input curve".into()));
    }
    let inv64 = rat(1, 64);
    Ok(KummerModel {
        x: a.mul(c).scale(&rat(-3, 1)),
        u2: dab.scale(&inv64),
        u0: b.mul(d).scale(&rat(864, 64)),
        um2: dcd.scale(&inv64),
    })
}

/// The fibration pulled back from the surface, after `x = t²X, y = t³Y`.
pub fn pulled_back_model() -> KummerModel {
    let q5 = |c0: i64, c5: i64, den: i64| TowerElement::from_k4(&k4([c0, 0, c5, 0], den));
    KummerModel {
        x: q5(-71, -45, 6),
        u2: q5(3, -1, 2),
        u0: q5(-551, -189, 27),
        um2: q5(3, -1, 2),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KummerMatch {
    /// 1-based indices of failing equations of the five-equation system.
    pub failing_equations: Vec<usize>,
    /// `K_{u²}·I₀ = K₀·I_{u²}`, `K_{u⁻²}·I₀ = K₀·I_{u⁻²}`, `K_X³·I₀² = K₀²·I_X³`.
    pub identities: [bool; 3],
    /// Scaling `μ²` of the isomorphism `X ↦ μ²X`, when it exists.
    pub mu_squared: Option<String>,
}

impl KummerMatch {
    pub fn ok(&self) -> bool {
        self.failing_equations.is_empty() && self.identities.iter().all(|&b| b)
    }
}

/// Check a point against the five equations and, independently, the
/// coefficient match between the Kummer model and the pulled-back model.
pub fn verify_kummer_match(
    big_a: &TowerElement,
    a: &TowerElement,
    b: &TowerElement,
    c: &TowerElement,
    d: &TowerElement,
) -> Result<KummerMatch> {
    let sys: SiResiduals = verify_si_system(big_a, a, b, c, d);
    let k = kummer_model(a, b, c, d)?;
    let i = pulled_back_model();
    let identities = [
        k.u2.mul(&i.u0) == k.u0.mul(&i.u2),
        k.um2.mul(&i.u0) == k.u0.mul(&i.um2),
        k.x.pow(3).mul(&i.u0.pow(2)) == k.u0.pow(2).mul(&i.x.pow(3)),
    ];
    // μ² = (K₀/I₀)/(K_X/I_X)
    let mu_squared = k.u0.mul(&i.x).div(&i.u0.mul(&k.x)).ok();
    let failing = sys.failing();
    if failing.is_empty() && !identities.iter().all(|&b| b) {
        return Err(Error::Check(
            "system holds but the Kummer coefficients do not match".into(),
        ));
    }
    Ok(KummerMatch {
        failing_equations: failing,
        identities,
        mu_squared: mu_squared.map(|m| m.to_string()),
    })
}

pub fn verify_fixture_point() -> Result<KummerMatch> {
    use constants::*;
    verify_kummer_match(&big_a(), &a(), &b(), &c(), &d())
}

/// Automorphism of the tower: `α ↦ ±α`, and optionally `√2 ↦ −√2` with
/// `β ↦ −β²(√2 + 1)`. Both fix `√5`.
pub fn tower_automorphism(x: &TowerElement, neg_alpha: bool, neg_sqrt2: bool) -> TowerElement {
    let s2 = if neg_sqrt2 {
        TowerElement::sqrt2().neg()
    } else {
        TowerElement::sqrt2()
    };
    let al = if neg_alpha {
        TowerElement::alpha().neg()
    } else {
        TowerElement::alpha()
    };
    let be = if neg_sqrt2 {
        TowerElement::beta()
            .pow(2)
            .mul(&TowerElement::sqrt2().add(&TowerElement::int(1)))
            .neg()
    } else {
        TowerElement::beta()
    };
    let mut acc = TowerElement::zero();
    for (i, c) in x.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = monomial_exponents(i);
        let mut m = TowerElement::rational(c.clone());
        if e[0] == 1 {
            m = m.mul(&s2);
        }
        if e[1] == 1 {
            m = m.mul(&TowerElement::sqrt5());
        }
        if e[2] == 1 {
            m = m.mul(&al);
        }
        if e[3] > 0 {
            m = m.mul(&be.pow(e[3]));
        }
        acc = acc.add(&m);
    }
    acc
}

/// The four conjugates of the fixture point, each checked against the system.
pub fn conjugate_points() -> Vec<((bool, bool), SiResiduals)> {
    use constants::*;
    let mut out = vec![];
    for na in [false, true] {
        for n2 in [false, true] {
            let m = |x: TowerElement| tower_automorphism(&x, na, n2);
            let r = verify_si_system(&big_a(), &m(a()), &m(b()), &m(c()), &m(d()));
            out.push(((na, n2), r));
        }
    }
    out
}

/// Traces of a curve at each of the four embeddings of `K₄` into `F_p`.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingTraces {
    pub p: u64,
    pub traces: Vec<i64>,
}

impl EmbeddingTraces {
    pub fn common(&self) -> Option<i64> {
        let t = *self.traces.first()?;
        self.traces.iter().all(|&x| x == t).then_some(t)
    }
}

fn reduce(
    e: &WeierstrassModel<BiQuadratic>,
    emb: &SplitEmbedding,
) -> Result<WeierstrassModel<ExtField>> {
    e.map(emb.field.clone(), |c| emb.map_k4(c))
}

fn check_split(p: u64) -> Result<()> {
    if p < 7 {
        return Err(Error::Domain(format!("{p} is a bad prime")));
    }
    if kronecker_i64(2, p)? != 1 || kronecker_i64(5, p)? != 1 {
        return Err(Error::Domain(format!(
            "{p} does not split in Q(sqrt2, sqrt5)"
        )));
    }
    Ok(())
}

pub fn trace_at_split_prime(e: &WeierstrassModel<BiQuadratic>, p: u64) -> Result<EmbeddingTraces> {
    check_split(p)?;
    let mut traces = vec![];
    for emb in SplitEmbedding::all(p)? {
        let red = reduce(e, &emb)?;
        if red.is_singular() {
            return Err(Error::Domain(format!("bad reduction at {p}")));
        }
        traces.push(count_points(&red)?.a);
    }
    Ok(EmbeddingTraces { p, traces })
}

/// Traces of `e1` and `e256` and the character of κ at each embedding.
#[derive(Clone, Debug, Serialize)]
pub struct TwistCheck {
    pub p: u64,
    pub e1: Vec<i64>,
    pub e256: Vec<i64>,
    pub chi_kappa: Vec<i8>,
    pub holds: bool,
}

pub fn verify_twist_relation(p: u64) -> Result<TwistCheck> {
    check_split(p)?;
    let (mut t1, mut t2, mut chi) = (vec![], vec![], vec![]);
    for emb in SplitEmbedding::all(p)? {
        let kappa = emb.map_k4(&constants::kappa())?;
        if emb.field.is_zero(&kappa) {
            return Err(Error::Domain(format!("kappa vanishes at {p}")));
        }
        chi.push(emb.field.chi(kappa));
        t1.push(count_points(&reduce(&e1(), &emb)?)?.a);
        t2.push(count_points(&reduce(&e256(), &emb)?)?.a);
    }
    let holds = (0..t1.len()).all(|i| t1[i] == chi[i] as i64 * t2[i]);
    Ok(TwistCheck {
        p,
        e1: t1,
        e256: t2,
        chi_kappa: chi,
        holds,
    })
}

/// Closed-form point counts of the surface at a split prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountPrediction {
    pub p: u64,
    pub a_p: i64,
    pub mu: i64,
    pub count_p: String,
    pub t: i64,
    pub count_p2: String,
}

fn product_trace(
    x: &WeierstrassModel<BiQuadratic>,
    y: &WeierstrassModel<BiQuadratic>,
    p: u64,
) -> Result<i64> {
    let (tx, ty) = (trace_at_split_prime(x, p)?, trace_at_split_prime(y, p)?);
    let prods: Vec<i64> = tx
        .traces
        .iter()
        .zip(&ty.traces)
        .map(|(a, b)| a * b)
        .collect();
    match prods.first() {
        Some(&a) if prods.iter().all(|&b| b == a) => Ok(a),
        _ => Err(Error::Check(format!(
            "trace products at {p} depend on the embedding: {prods:?}"
        ))),
    }
}

/// `μ(p) = a² − (10/p)p`, `|S(F_p)| = 1 + 17p + (1 + (5/p))p + μ + p²`,
/// `t = a² − 2p`, `|S(F_{p²})| = 1 + 18p² + t² + p⁴`, with `a²` read from
/// the product of traces of the curve pair and cross-checked on the κ-twisted
/// pair.
pub fn predict_counts(p: u64) -> Result<CountPrediction> {
    check_split(p)?;
    let a2 = product_trace(&e1(), &e2(), p)?;
    let twisted = product_trace(&e256(), &e256_partner(), p)?;
    if a2 != twisted {
        return Err(Error::Check(format!(
            "twisted pair disagrees at {p}: {a2} vs {twisted}"
        )));
    }
    let a_p = trace_at_split_prime(&e256(), p)?
        .common()
        .expect("checked above");
    let pi = p as i64;
    let eps10 = kronecker_i64(10, p)? as i64;
    let eps5 = kronecker_i64(5, p)? as i64;
    let mu = a2 - eps10 * pi;
    let pb = BigInt::from(p);
    let count_p: BigInt = BigInt::one() + 17 * &pb + (1 + eps5) * &pb + mu + &pb * &pb;
    let t = a2 - 2 * pi;
    let p2 = &pb * &pb;
    let count_p2: BigInt = BigInt::one() + 18 * &p2 + BigInt::from(t) * t + &p2 * &p2;
    Ok(CountPrediction {
        p,
        a_p,
        mu,
        count_p: count_p.to_string(),
        t,
        count_p2: count_p2.to_string(),
    })
}

/// `|S(F_{p²})| = 1 + 18p² + t² + p⁴` with `t` the trace of `e1` reduced at
/// a prime of `K₄` with residue field `F_{p²}`. Valid for every good `p`;
/// agrees with [`predict_counts`] at split primes.
pub fn predict_count_p2(p: u64) -> Result<(i64, BigInt)> {
    if p < 7 {
        return Err(Error::Domain(format!("{p} is a bad prime")));
    }
    let field = ExtField::new(p, 2)?;
    let emb = SplitEmbedding::into_field(field, false, false)?;
    let red = reduce(&e1(), &emb)?;
    let t = count_points(&red)?.a;
    let p2 = BigInt::from(p) * p;
    Ok((
        t,
        BigInt::one() + 18 * &p2 + BigInt::from(t) * t + &p2 * &p2,
    ))
}

/// Sampled verification of the 3-isogeny at the given split primes.
pub fn verify_isogeny(primes: &[u64], samples: usize) -> Result<Vec<(u64, IsogenyCheck)>> {
    let map = phi();
    let mut out = vec![];
    for &p in primes {
        check_split(p)?;
        let emb = SplitEmbedding::new(p, false, false)?;
        out.push((p, map.reduce(&emb)?.verify_sampled(samples, p)?));
    }
    Ok(out)
}

/// μ bounds: `|μ| ≤ 3p` and `μ ≡ a² (mod p)`.
pub fn mu_sane(pred: &CountPrediction) -> bool {
    let p = pred.p as i64;
    pred.mu.abs() <= 3 * p && (pred.mu - pred.a_p * pred.a_p).rem_euclid(p) == 0
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_models_agree() {
        let k = BiQuadratic;
        let tw = e1().quadratic_twist(&constants::kappa()).unwrap();
        assert_eq!(tw.coeffs(), e256().coeffs());
        assert!(!k.is_zero(&e2().discriminant()));
    }

    #[test]
    fn isogeny_identity_holds_exactly() {
        let c = phi().verify_symbolic().unwrap();
        assert!(c.ok);
        assert_eq!(c.kernel_ok, Some(true));
    }

    #[test]
    fn kummer_trivial_cases() {
        let z = TowerElement::zero();
        let one = TowerElement::int(1);
        let m = kummer_model(&z, &one, &z, &one).unwrap();
        assert_eq!(m.u2, TowerElement::rational(rat(-432, 64)));
        assert_eq!(m.u0, TowerElement::rational(rat(864, 64)));
        assert_eq!(m.x, z);
        let (a, b, c, d) = (
            TowerElement::int(2),
            TowerElement::int(3),
            TowerElement::int(-1),
            TowerElement::int(5),
        );
        let m1 = kummer_model(&a, &b, &c, &d).unwrap();
        let m2 = kummer_model(&c, &d, &a, &b).unwrap();
        assert_eq!(
            (m1.u2.clone(), m1.um2.clone(), m1.x.clone(), m1.u0.clone()),
            (m2.um2, m2.u2, m2.x, m2.u0)
        );
        assert!(kummer_model(&z, &z, &a, &b).is_err());
    }

    #[test]
    fn fixture_point_matches() {
        let m = verify_fixture_point().unwrap();
        assert!(m.ok(), "{m:?}");
        use constants::*;
        let bad = verify_kummer_match(&big_a(), &a().add(&TowerElement::int(1)), &b(), &c(), &d())
            .unwrap();
        assert_eq!(bad.failing_equations, vec![2, 5]);
        let flipped = verify_si_system(&big_a().neg(), &a(), &b(), &c(), &d());
        assert!(!flipped.all_zero());
        for (tag, r) in conjugate_points() {
            assert!(r.all_zero(), "{tag:?}: {:?}", r.failing());
        }
    }

    #[test]
    fn j_invariants() {
        let r = j_report().unwrap();
        assert!(r.j_ab_matches_e1 && r.j_cd_matches_e2, "{r:?}");
        assert!(r.min_poly_matches, "{:?}", r.min_poly);
    }

    #[test]
    fn traces_at_split_primes() {
        for (p, a) in [(31, -4), (41, 0), (71, 12), (79, 4)] {
            let t = trace_at_split_prime(&e256(), p).unwrap();
            assert_eq!(t.common(), Some(a), "p = {p}: {:?}", t.traces);
            assert!(verify_twist_relation(p).unwrap().holds);
        }
        assert!(trace_at_split_prime(&e256(), 11).is_err());
    }

    #[test]
    fn predictions() {
        let p = predict_counts(31).unwrap();
        assert_eq!(
            (p.mu, p.count_p.as_str(), p.t, p.count_p2.as_str()),
            (-15, "1536", -46, "942936")
        );
        assert!(mu_sane(&p));
        assert_eq!(predict_count_p2(31).unwrap(), (-46, BigInt::from(942936)));
    }

    #[test]
    fn predictions_match_direct_counts() {
        let fx = crate::surface_count::drell_yan();
        let (sx, prof) = (fx.sextic().unwrap(), fx.profile());
        for (p, n) in [(41u64, "2420"), (71, "6464"), (79, "7680")] {
            let pr = predict_counts(p).unwrap();
            assert_eq!(pr.count_p, n);
            let direct = sx
                .count_smooth(&prof, &ExtField::new(p, 1).unwrap())
                .unwrap()
                .smooth;
            assert_eq!(direct.to_string(), n);
        }
        for p in [7u64, 11, 13] {
            let (_, pred) = predict_count_p2(p).unwrap();
            let direct = sx
                .count_smooth(&prof, &ExtField::new(p, 2).unwrap())
                .unwrap()
                .smooth;
            assert_eq!(pred.to_string(), direct.to_string(), "p = {p}");
        }
    }

    #[test]
    fn isogeny_sampled_at_split_primes() {
        for (p, c) in verify_isogeny(&[31, 41, 71, 79], 50).unwrap() {
            assert!(c.ok && c.samples == 50, "p = {p}: {c:?}");
        }
    }
}
