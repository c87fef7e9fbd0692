//! Primes where some root of the j-invariant polynomial reduces to a
//! supersingular j-invariant.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic::{count_points, hasse_invariant, WeierstrassModel};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite_field::{find_roots, is_prime, reduce_int_poly, ExtField, Fq};
use crate::lattice::bareiss;
use crate::si_verify::j_min_poly;

/// How a supersingular root was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The Hasse coefficient of `y² = x³ + ax + b` vanishes.
    Hasse,
    /// `j = 0` and `p ≡ 2 (mod 3)`.
    JZero,
    /// `j = 1728` and `p ≡ 3 (mod 4)`.
    J1728,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Root coordinates in the power basis of `F_{p²}`.
    pub root: [u64; 2],
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Supersingular {
        witness: Witness,
    },
    Ordinary {
        roots: usize,
    },
    /// No root in `F_{p²}`: the quartic stays irreducible mod `p`.
    NoRoot,
    Excluded,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Supersingular { .. } => "supersingular",
            Verdict::Ordinary { .. } => "ordinary",
            Verdict::NoRoot => "no-root",
            Verdict::Excluded => "excluded",
        }
    }

    pub fn is_supersingular(&self) -> bool {
        matches!(self, Verdict::Supersingular { .. })
    }
}

/// Integer polynomial to sieve, constant term first.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub poly: Vec<BigInt>,
    pub lo: u64,
    pub hi: u64,
    pub disc: BigInt,
}

impl ScanConfig {
    pub fn new(poly: Vec<BigInt>, lo: u64, hi: u64) -> Result<Self> {
        if poly.len() < 2 || poly.last().is_some_and(Zero::is_zero) {
            return Err(Error::Domain("polynomial must have positive degree".into()));
        }
        if lo > hi {
            return Err(Error::Domain(format!("empty range [{lo}, {hi}]")));
        }
        let disc = discriminant(&poly);
        if disc.is_zero() {
            return Err(Error::Domain("polynomial is not squarefree".into()));
        }
        Ok(ScanConfig { poly, lo, hi, disc })
    }

    pub fn j_poly(lo: u64, hi: u64) -> Result<Self> {
        Self::new(j_min_poly(), lo, hi)
    }

    /// Bad primes and primes dividing the leading coefficient.
    pub fn is_excluded(&self, p: u64) -> bool {
        p <= 5 || (self.poly.last().unwrap() % BigInt::from(p)).is_zero()
    }

    /// Primes dividing the discriminant: roots collide mod `p` but are still tested.
    pub fn is_ramified(&self, p: u64) -> bool {
        (&self.disc % BigInt::from(p)).is_zero()
    }
}

/// `Res(f, f')` up to sign and the leading coefficient, via the Sylvester matrix.
pub fn discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let m = n - 1;
    let size = n + m;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for r in 0..m {
        for (k, c) in f.iter().rev().enumerate() {
            s[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in df.iter().rev().enumerate() {
            s[m + r][r + k] = c.clone();
        }
    }
    let (_, det) = bareiss(&s);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    };
    sign * det / f[n].clone()
}

fn coords(r: Fq) -> [u64; 2] {
    [r.0[0] as u64, r.0[1] as u64]
}

/// `y² = x³ + 3j(1728 − j)x + 2j(1728 − j)²` has j-invariant `j`.
pub fn curve_with_j(k: &ExtField, j: Fq) -> (Fq, Fq) {
    let c = k.sub(&k.scalar(1728 % k.p()), &j);
    let jc = k.mul(&j, &c);
    (
        k.mul(&k.scalar(3), &jc),
        k.mul(&k.scalar(2), &k.mul(&jc, &c)),
    )
}

fn certify(k: &ExtField, j: Fq) -> Option<Certificate> {
    let p = k.p();
    if k.is_zero(&j) {
        return (p % 3 == 2).then_some(Certificate::JZero);
    }
    if j == k.scalar(1728 % p) {
        return (p % 4 == 3).then_some(Certificate::J1728);
    }
    let (a, b) = curve_with_j(k, j);
    (hasse_invariant(k, a, b) == Fq::ZERO).then_some(Certificate::Hasse)
}

/// Verdict at a single prime.
pub fn is_supersingular_prime(p: u64, cfg: &ScanConfig) -> Result<Verdict> {
    if !is_prime(p) || p < 7 {
        return Err(Error::Domain(format!("{p} is not a prime ≥ 7")));
    }
    if cfg.is_excluded(p) {
        return Err(Error::Domain(format!("{p} is excluded")));
    }
    let k = ExtField::new(p, 2)?;
    let roots = find_roots(&reduce_int_poly(&k, &cfg.poly), &k)?;
    if roots.is_empty() {
        return Ok(Verdict::NoRoot);
    }
    for &r in &roots {
        if let Some(certificate) = certify(&k, r) {
            return Ok(Verdict::Supersingular {
                witness: Witness {
                    root: coords(r),
                    certificate,
                },
            });
        }
    }
    Ok(Verdict::Ordinary { roots: roots.len() })
}

/// Re-check a witness from scratch.
pub fn verify_witness(p: u64, cfg: &ScanConfig, w: &Witness) -> Result<bool> {
    let k = ExtField::new(p, 2)?;
    let r = k.from_coeffs(&w.root);
    let on_poly = k.is_zero(
        &crate::poly::PolyRing::new(k.clone()).eval(reduce_int_poly(&k, &cfg.poly).coeffs(), &r),
    );
    Ok(on_poly && certify(&k, r) == Some(w.certificate))
}

/// Oracle: some root has a curve over `F_{p²}` with `#E ≡ 1 (mod p)`.
pub fn brute_force_supersingular(p: u64, cfg: &ScanConfig) -> Result<bool> {
    let k = ExtField::new(p, 2)?;
    for r in find_roots(&reduce_int_poly(&k, &cfg.poly), &k)? {
        let (a, b) = if k.is_zero(&r) {
            (k.zero(), k.one())
        } else if r == k.scalar(1728 % p) {
            (k.one(), k.zero())
        } else {
            curve_with_j(&k, r)
        };
        let e = WeierstrassModel::short(k.clone(), a, b)?;
        if count_points(&e)?.count % p == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub prime: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub lo: u64,
    pub hi: u64,
    pub excluded: Vec<u64>,
    pub ramified: Vec<u64>,
    pub rows: Vec<ScanRow>,
    pub supersingular: Vec<u64>,
    pub tested: usize,
    /// Windows of up to 10⁴ tested primes whose supersingular share is ≥ 10%.
    pub density_flags: Vec<(u64, u64)>,
}

pub const DENSITY_WINDOW: usize = 10_000;

/// Sieve every prime in range in parallel, then re-verify each witness.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let primes: Vec<u64> = (cfg.lo.max(2)..=cfg.hi).filter(|&n| is_prime(n)).collect();
    let rows: Vec<ScanRow> = primes
        .par_iter()
        .map(|&p| {
            let verdict = if p < 7 || cfg.is_excluded(p) {
                Verdict::Excluded
            } else {
                is_supersingular_prime(p, cfg)?
            };
            Ok(ScanRow { prime: p, verdict })
        })
        .collect::<Result<_>>()?;
    for row in &rows {
        if let Verdict::Supersingular { witness } = &row.verdict {
            if !verify_witness(row.prime, cfg, witness)? {
                return Err(Error::Check(format!(
                    "witness at {} failed re-verification",
                    row.prime
                )));
            }
        }
    }
    let excluded = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Excluded)
        .map(|r| r.prime)
        .collect();
    let ramified = rows
        .iter()
        .filter(|r| r.verdict != Verdict::Excluded && cfg.is_ramified(r.prime))
        .map(|r| r.prime)
        .collect();
    let supersingular: Vec<u64> = rows
        .iter()
        .filter(|r| r.verdict.is_supersingular())
        .map(|r| r.prime)
        .collect();
    let tested: Vec<&ScanRow> = rows
        .iter()
        .filter(|r| r.verdict != Verdict::Excluded)
        .collect();
    let mut density_flags = vec![];
    for w in tested.chunks(DENSITY_WINDOW) {
        let ss = w.iter().filter(|r| r.verdict.is_supersingular()).count();
        if ss * 10 >= w.len() && w.len() >= 100 {
            density_flags.push((w[0].prime, w[w.len() - 1].prime));
        }
    }
    Ok(ScanReport {
        lo: cfg.lo,
        hi: cfg.hi,
        excluded,
        ramified,
        tested: tested.len(),
        rows,
        supersingular,
        density_flags,
    })
}

impl ScanReport {
    /// `prime,verdict,root0,root1`; the root columns are empty unless supersingular.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("prime,verdict,root0,root1,certificate\n");
        for r in &self.rows {
            match &r.verdict {
                Verdict::Supersingular { witness } => {
                    let cert = serde_json::to_value(witness.certificate).unwrap();
                    out += &format!(
                        "{},{},{},{},{}\n",
                        r.prime,
                        r.verdict.name(),
                        witness.root[0],
                        witness.root[1],
                        cert.as_str().unwrap()
                    );
                }
                v => out += &format!("{},{},,,\n", r.prime, v.name()),
            }
        }
        out
    }
}

/// Small prime factors of `n` below `bound`, for reporting.
pub fn small_factors(n: &BigInt, bound: u64) -> Vec<u64> {
    let mut m = n.clone();
    let mut out = vec![];
    for p in (2..bound).filter(|&q| is_prime(q)) {
        let bp = BigInt::from(p);
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
    }
    let _ = m.to_u64();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminant() {
        let f: Vec<BigInt> = [3, 5, 2].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(discriminant(&f), BigInt::from(25 - 24));
        let g: Vec<BigInt> = [-2, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(discriminant(&g), BigInt::from(-27 * 4));
    }

    #[test]
    fn single_primes() {
        let cfg = ScanConfig::j_poly(7, 7).unwrap();
        assert!(is_supersingular_prime(13, &cfg).unwrap().is_supersingular());
        assert!(!is_supersingular_prime(7, &cfg).unwrap().is_supersingular());
        assert!(is_supersingular_prime(5, &cfg).is_err());
        assert_eq!(
            small_factors(&cfg.disc, 20_000),
            vec![2, 3, 5, 13, 29, 953, 15973]
        );
    }

    #[test]
    fn hasse_matches_brute_force_below_200() {
        let cfg = ScanConfig::j_poly(7, 200).unwrap();
        for p in (7..=200).filter(|&p| is_prime(p) && !cfg.is_excluded(p)) {
            let v = is_supersingular_prime(p, &cfg).unwrap();
            assert_eq!(
                v.is_supersingular(),
                brute_force_supersingular(p, &cfg).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn special_j_certificates() {
        // T(T − 1728): j = 0 and j = 1728 roots
        let cfg = ScanConfig::new(
            vec![BigInt::zero(), BigInt::from(-1728), BigInt::from(1)],
            7,
            50,
        )
        .unwrap();
        let r = scan(&cfg).unwrap();
        for row in &r.rows {
            let p = row.prime;
            if row.verdict == Verdict::Excluded {
                continue;
            }
            assert_eq!(
                row.verdict.is_supersingular(),
                p % 3 == 2 || p % 4 == 3,
                "p = {p}"
            );
            assert_eq!(
                row.verdict.is_supersingular(),
                brute_force_supersingular(p, &cfg).unwrap()
            );
        }
    }
}
