//! Point counts on a double sextic `w² = f(x, y, z)` and on its minimal
//! resolution, directly and through an elliptic fibration.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elliptic::{count_points_with_table, WeierstrassModel};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::finite_field::{ExtField, Fq};
use crate::tate::Kodaira;
use crate::tate_surface::{EllipticSurface, Place};

/// Homogeneous sextic as a sparse list of `(a, b, c, coefficient)` for
/// `coefficient · x^a y^b z^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSextic {
    pub terms: Vec<([u32; 3], BigInt)>,
    /// Primes excluded from counting.
    pub bad_primes: Vec<u64>,
}

/// Singular point of the branch curve with its ADE type `A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub point: [i64; 3],
    pub ade: String,
    /// Whether every exceptional curve over the point is Galois-fixed.
    pub rational: bool,
}

impl SingularPoint {
    /// `n` in `A_n`.
    pub fn rank(&self) -> Result<u64> {
        self.ade
            .strip_prefix('A')
            .and_then(|n| n.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Fixture(format!("unsupported singularity type {}", self.ade)))
    }
}

/// Resolution data: singular points with their types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionProfile {
    pub points: Vec<SingularPoint>,
}

/// Counts over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceCount {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub raw: i64,
    pub correction: i64,
    pub smooth: i64,
}

/// Surface fixture file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFixture {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub provenance: String,
    pub sextic: Vec<(u32, u32, u32, String)>,
    pub singular_points: Vec<SingularPoint>,
    #[serde(default)]
    pub bad_primes: Vec<u64>,
}

impl SurfaceFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Fixture(format!("surface fixture: {e}")))
    }

    pub fn sextic(&self) -> Result<DoubleSextic> {
        let mut terms = Vec::new();
        for (a, b, c, coef) in &self.sextic {
            let v: BigInt = coef
                .parse()
                .map_err(|_| Error::Fixture(format!("bad coefficient {coef:?}")))?;
            terms.push(([*a, *b, *c], v));
        }
        DoubleSextic::new(terms, self.bad_primes.clone())
    }

    pub fn profile(&self) -> ResolutionProfile {
        ResolutionProfile {
            points: self.singular_points.clone(),
        }
    }
}

/// The Drell–Yan surface fixture shipped with the crate.
pub fn drell_yan() -> SurfaceFixture {
    SurfaceFixture::from_json(crate::fixtures::DRELL_YAN).expect("built-in fixture parses")
}

impl DoubleSextic {
    pub fn new(terms: Vec<([u32; 3], BigInt)>, bad_primes: Vec<u64>) -> Result<Self> {
        for (e, _) in &terms {
            if e.iter().sum::<u32>() != 6 {
                return Err(Error::Domain(format!("monomial {e:?} is not of degree 6")));
            }
        }
        Ok(DoubleSextic { terms, bad_primes })
    }

    fn reduced_terms(&self, k: &ExtField) -> Vec<([u32; 3], Fq)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, k.from_bigint(c)))
            .collect()
    }

    /// `f(x, y, z)` over `F_q`.
    pub fn eval(&self, k: &ExtField, pt: [Fq; 3]) -> Fq {
        let mut acc = Fq::ZERO;
        for (e, c) in self.reduced_terms(k) {
            let mut m = c;
            for i in 0..3 {
                m = k.mul_fast(m, k.pow_fast(pt[i], e[i] as u128));
            }
            acc = k.add_fast(acc, m);
        }
        acc
    }

    /// Coefficients in `x` of `f(x, y, z)` for fixed `y, z`.
    fn row(&self, k: &ExtField, terms: &[([u32; 3], Fq)], y: Fq, z: Fq) -> [Fq; 7] {
        let mut ypow = [k.scalar(1); 7];
        let mut zpow = [k.scalar(1); 7];
        for i in 1..7 {
            ypow[i] = k.mul_fast(ypow[i - 1], y);
            zpow[i] = k.mul_fast(zpow[i - 1], z);
        }
        let mut row = [Fq::ZERO; 7];
        for (e, c) in terms {
            let m = k.mul_fast(*c, k.mul_fast(ypow[e[1] as usize], zpow[e[2] as usize]));
            row[e[0] as usize] = k.add_fast(row[e[0] as usize], m);
        }
        row
    }

    fn row_sum(k: &ExtField, row: &[Fq; 7], elems: &[Fq], chi: &[i8]) -> i64 {
        let mut s = 0i64;
        for &x in elems {
            let mut v = row[6];
            for i in (0..6).rev() {
                v = k.add_fast(k.mul_fast(v, x), row[i]);
            }
            s += 1 + chi[k.index(v)] as i64;
        }
        s
    }

    fn check_prime(&self, k: &ExtField) -> Result<()> {
        if self.bad_primes.contains(&k.p()) {
            return Err(Error::Domain(format!(
                "p = {} is a bad prime for this surface",
                k.p()
            )));
        }
        Ok(())
    }

    /// `Σ_{P ∈ P²(F_q)} (1 + χ(f(P)))`: points of `w² = f` on the singular model.
    pub fn count_singular(&self, k: &ExtField) -> Result<i64> {
        self.check_prime(k)?;
        let chi = k.chi_table();
        let elems: Vec<Fq> = k.elements().collect();
        let terms = self.reduced_terms(k);
        let one = k.scalar(1);
        // chart z = 1
        let affine: i64 = elems
            .par_iter()
            .map(|&y| Self::row_sum(k, &self.row(k, &terms, y, one), &elems, &chi))
            .sum();
        // chart z = 0, y = 1
        let line = Self::row_sum(k, &self.row(k, &terms, one, Fq::ZERO), &elems, &chi);
        // the point (1:0:0)
        let last = 1 + chi[k.index(self.eval(k, [one, Fq::ZERO, Fq::ZERO]))] as i64;
        Ok(affine + line + last)
    }

    /// Count on the minimal resolution: each rational `A_n` point adds `n·q`.
    pub fn count_smooth(&self, profile: &ResolutionProfile, k: &ExtField) -> Result<SurfaceCount> {
        self.check_prime(k)?;
        let q = k.order();
        let mut rank_sum = 0u64;
        for sp in &profile.points {
            if !sp.rational {
                return Err(Error::Domain(
                    "non-rational exceptional configurations are not supported".into(),
                ));
            }
            let pt = sp.point.map(|c| k.from_i64(c));
            if self.eval(k, pt) != Fq::ZERO {
                return Err(Error::Domain(format!(
                    "profile point {:?} is not on f = 0",
                    sp.point
                )));
            }
            rank_sum += sp.rank()?;
        }
        let raw = self.count_singular(k)?;
        let correction = (q * rank_sum) as i64;
        Ok(SurfaceCount {
            p: k.p(),
            n: k.degree() as u32,
            q,
            raw,
            correction,
            smooth: raw + correction,
        })
    }
}

/// Points on the minimal elliptic surface, summed fibre by fibre over
/// `P¹(F_q)`: good fibres by direct counting, bad fibres from their type.
pub fn count_via_fibration(
    model: &EllipticSurface<Rationals>,
    k: &ExtField,
) -> Result<FibrationCount> {
    let reduced = model.map(k.clone(), |c: &BigRational| {
        k.from_rational(c)
            .ok_or_else(|| Error::Domain(format!("p = {} divides a denominator", k.p())))
    })?;
    let chi = k.chi_table();
    let q = k.order();
    let elems: Vec<Fq> = k.elements().collect();
    let mut fibres: Vec<(Option<Fq>, Option<Kodaira>, i64)> = elems
        .par_iter()
        .map(|t0| {
            let (e, good) = reduced.reduce_fiber(t0);
            if good {
                let n = count_points_with_table(&e, &chi)?.count as i64;
                Ok((Some(*t0), None, n))
            } else {
                let pd = reduced.local_type_at(t0)?;
                let n = pd.data.fibre_points(q).ok_or_else(|| {
                    Error::Check(format!(
                        "no point-count rule for {} at t = {t0:?}",
                        pd.data.kodaira
                    ))
                })?;
                Ok((Some(*t0), Some(pd.data.kodaira), n as i64))
            }
        })
        .collect::<Result<_>>()?;
    let inf = {
        let a = reduced.at_infinity();
        let a0 = a.clone().map(|p| reduced.ring.eval(&p, &Fq::ZERO));
        let e = WeierstrassModel::new_unchecked(k.clone(), a0);
        if !e.is_singular() {
            (None, None, count_points_with_table(&e, &chi)?.count as i64)
        } else {
            let pd = reduced.local_type(&Place::Infinity)?;
            let n = pd
                .data
                .fibre_points(q)
                .ok_or_else(|| Error::Check("no point-count rule at infinity".into()))?;
            (None, Some(pd.data.kodaira), n as i64)
        }
    };
    fibres.push(inf);
    let mut good = 0i64;
    let mut bad = 0i64;
    let mut bad_types = Vec::new();
    for (_, kod, n) in &fibres {
        match kod {
            None => good += n,
            Some(kd) => {
                bad += n;
                bad_types.push(*kd);
            }
        }
    }
    bad_types.sort();
    Ok(FibrationCount {
        q,
        good,
        bad,
        total: good + bad,
        bad_types,
    })
}

/// `G + B` decomposition of a fibration count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationCount {
    pub q: u64,
    /// Points on smooth fibres.
    pub good: i64,
    /// Points on singular fibres.
    pub bad: i64,
    pub total: i64,
    pub bad_types: Vec<Kodaira>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tate_surface::fibration_two;

    #[test]
    fn pure_power_over_f3() {
        let f = DoubleSextic::new(vec![([6, 0, 0], BigInt::from(1))], vec![]).unwrap();
        let k = ExtField::new(3, 1).unwrap();
        assert_eq!(f.count_singular(&k).unwrap(), 22);
        assert_eq!(
            f.count_smooth(&ResolutionProfile::default(), &k)
                .unwrap()
                .smooth,
            22
        );
    }

    #[test]
    fn drell_yan_small_primes() {
        // values from an independent brute-force count over P²(F_p)
        let fx = drell_yan();
        let f = fx.sextic().unwrap();
        let prof = fx.profile();
        for (p, want) in [(7u64, 170i64), (11, 330), (13, 378)] {
            let k = ExtField::new(p, 1).unwrap();
            assert_eq!(f.count_smooth(&prof, &k).unwrap().smooth, want, "p = {p}");
        }
        assert!(f.count_singular(&ExtField::new(5, 1).unwrap()).is_err());
    }

    #[test]
    fn fibration_matches_direct_count() {
        let fx = drell_yan();
        let f = fx.sextic().unwrap();
        let e = fibration_two(Rationals).unwrap();
        for p in [7u64, 11, 13] {
            let k = ExtField::new(p, 1).unwrap();
            let direct = f.count_smooth(&fx.profile(), &k).unwrap().smooth;
            assert_eq!(
                count_via_fibration(&e, &k).unwrap().total,
                direct,
                "p = {p}"
            );
        }
    }

    #[test]
    fn quadratic_extension_at_31() {
        let fx = drell_yan();
        let f = fx.sextic().unwrap();
        let k = ExtField::new(31, 2).unwrap();
        let direct = f.count_smooth(&fx.profile(), &k).unwrap();
        assert_eq!(direct.correction, 14 * 961);
        // 1 + 18p² + t² + p⁴ with t = a² − 2p, a = −4
        assert_eq!(direct.smooth, 942936);
        let e = fibration_two(Rationals).unwrap();
        assert_eq!(count_via_fibration(&e, &k).unwrap().total, direct.smooth);
    }
}
