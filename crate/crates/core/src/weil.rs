//! Frobenius spectrum on `H²` from point counts over `F_p` and `F_{p²}`:
//! reduction Picard rank, Artin–Tate square class and the van Luijk bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{rational_sqrt_exact, squarefree_part};

/// Known algebraic eigenvalues: `p` with multiplicity `trivial`, plus one
/// eigenvalue `ε·p` for each sign in `signed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicPart {
    pub trivial: u32,
    pub signed: Vec<i8>,
}

impl AlgebraicPart {
    /// `p` eighteen times and `(5/p)·p` once.
    pub fn drell_yan(p: u64) -> Result<Self> {
        let k5 = crate::finite_field::kronecker_i64(5, p)?;
        Ok(AlgebraicPart {
            trivial: 18,
            signed: vec![k5],
        })
    }

    pub fn rank(&self) -> u32 {
        self.trivial + self.signed.len() as u32
    }

    /// Trace of `Frob^n` on the algebraic part.
    pub fn trace(&self, p: u64, n: u32) -> BigInt {
        let pn = BigInt::from(p).pow(n);
        let mut t = &pn * BigInt::from(self.trivial);
        for &e in &self.signed {
            t += BigInt::from(e as i64).pow(n) * &pn;
        }
        t
    }
}

/// Solved spectrum. The transcendental part is `s·p` plus the pair of
/// roots of `T² − p·c·T + p²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSpectrum {
    pub p: u64,
    pub algebraic: AlgebraicPart,
    pub mu1: BigInt,
    pub mu2: BigInt,
    pub s: i8,
    pub c: BigRational,
}

/// Outcome of [`solve_transcendental`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved {
        s: i8,
        c: BigRational,
    },
    /// Several `(s, c)` fit; a count over `F_{p³}` is needed.
    Ambiguous(Vec<(i8, BigRational)>),
}

/// `μ_n = N_n − 1 − p^{2n} − (algebraic trace)` for `n = 1, 2`.
pub fn transcendental_traces(n1: i64, n2: i64, p: u64, alg: &AlgebraicPart) -> (BigInt, BigInt) {
    let mu =
        |count: i64, n: u32| BigInt::from(count) - 1 - BigInt::from(p).pow(2 * n) - alg.trace(p, n);
    (mu(n1, 1), mu(n2, 2))
}

/// Find `(s, c)` with `μ₁ = s·p + p·c` and `μ₂ = p²(c² − 1)`.
pub fn solve_transcendental(mu1: &BigInt, mu2: &BigInt, p: u64) -> Result<Solution> {
    let pq = BigRational::from_integer(BigInt::from(p));
    let c2 = BigRational::new(mu2.clone(), BigInt::from(p).pow(2)) + BigRational::one();
    let Some(r) = rational_sqrt_exact(&c2) else {
        return Err(Error::Check(format!("c² = {c2} is not a rational square")));
    };
    let mut found = Vec::new();
    let cands = if r.is_zero() {
        vec![r.clone()]
    } else {
        vec![r.clone(), -r.clone()]
    };
    for c in cands {
        let s = BigRational::from_integer(mu1.clone()) / &pq - &c;
        if s.is_integer()
            && s.abs() == BigRational::one()
            && c.abs() <= BigRational::from_integer(2.into())
        {
            found.push((s.to_integer().to_i8().unwrap(), c));
        }
    }
    match found.len() {
        0 => Err(Error::Check("no consistent (s, c) for these counts".into())),
        1 => {
            let (s, c) = found.pop().unwrap();
            Ok(Solution::Solved { s, c })
        }
        _ => Ok(Solution::Ambiguous(found)),
    }
}

impl FrobeniusSpectrum {
    /// Build from smooth counts over `F_p` and `F_{p²}`.
    pub fn from_counts(p: u64, n1: i64, n2: i64, algebraic: AlgebraicPart) -> Result<Self> {
        if algebraic.rank() + 3 != 22 {
            return Err(Error::Domain("algebraic part must have rank 19".into()));
        }
        let (mu1, mu2) = transcendental_traces(n1, n2, p, &algebraic);
        match solve_transcendental(&mu1, &mu2, p)? {
            Solution::Solved { s, c } => Ok(FrobeniusSpectrum {
                p,
                algebraic,
                mu1,
                mu2,
                s,
                c,
            }),
            Solution::Ambiguous(_) => Err(Error::Check(
                "ambiguous spectrum; count over F_{p^3} required".into(),
            )),
        }
    }

    fn pc(&self) -> BigInt {
        (&self.c * BigRational::from_integer(BigInt::from(self.p))).to_integer()
    }

    fn c_is(&self, v: i64) -> bool {
        self.c == BigRational::from_integer(BigInt::from(v))
    }

    /// Number of eigenvalues equal to `±p`.
    pub fn reduction_rank(&self) -> u32 {
        let pair = if self.c_is(2) || self.c_is(-2) { 2 } else { 0 };
        self.algebraic.rank() + 1 + pair
    }

    /// Least `m` with every transcendental eigenvalue `±p^m` after raising to
    /// the `m`-th power, or `None` if the pair is not `p` times a root of unity.
    pub fn potential_rank_degree(&self) -> Option<u32> {
        if self.c_is(2) || self.c_is(-2) {
            Some(1)
        } else if self.c_is(0) {
            Some(2)
        } else if self.c_is(1) || self.c_is(-1) {
            Some(3)
        } else {
            None
        }
    }

    /// Squarefree kernel of `|p·(2 − c)|`.
    pub fn artin_tate_sqclass(&self) -> Result<BigInt> {
        if self.reduction_rank() != 20 {
            return Err(Error::Domain(
                "square class is defined here for rank 20 only".into(),
            ));
        }
        let v = (BigRational::from_integer(2.into()) - &self.c)
            * BigRational::from_integer(BigInt::from(self.p));
        let v = v.abs();
        Ok(squarefree_part(&(v.numer() * v.denom())))
    }

    /// Degree-22 characteristic polynomial, coefficients low degree first.
    pub fn charpoly(&self) -> Vec<BigInt> {
        let p = BigInt::from(self.p);
        let mut poly = vec![BigInt::one()];
        let mul = |a: &[BigInt], b: &[BigInt]| {
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        for _ in 0..self.algebraic.trivial {
            poly = mul(&poly, &[-p.clone(), BigInt::one()]);
        }
        for &e in &self.algebraic.signed {
            poly = mul(&poly, &[-(&p * BigInt::from(e)), BigInt::one()]);
        }
        poly = mul(&poly, &[-(&p * BigInt::from(self.s)), BigInt::one()]);
        mul(&poly, &[&p * &p, -self.pc(), BigInt::one()])
    }

    /// `T²² P(p²/T) = ±p²² P(T)`; returns the sign.
    pub fn functional_equation(&self) -> Option<i8> {
        let cp = self.charpoly();
        let p2 = BigInt::from(self.p).pow(2);
        for sign in [1i8, -1] {
            let ok = (0..=22usize).all(|i| {
                // coefficient of T^i in T²² P(p²/T) is c_{22−i} p^{2(22−i)}
                let lhs = &cp[22 - i] * p2.pow((22 - i) as u32);
                let rhs = &cp[i] * p2.pow(11) * BigInt::from(sign);
                lhs == rhs
            });
            if ok {
                return Some(sign);
            }
        }
        None
    }

    /// Trace of `Frob^n` on the transcendental part.
    pub fn transcendental_trace(&self, n: u32) -> BigInt {
        let p = BigInt::from(self.p);
        let (pc, p2) = (self.pc(), &p * &p);
        // power sums of the roots of T² − pcT + p²
        let mut prev = BigInt::from(2);
        let mut cur = pc.clone();
        for _ in 1..n {
            let next = &pc * &cur - &p2 * &prev;
            prev = cur;
            cur = next;
        }
        let pair = if n == 0 { prev } else { cur };
        BigInt::from(self.s).pow(n) * p.pow(n) + pair
    }

    /// Predicted `|S(F_{p^n})|`.
    pub fn predicted_count(&self, n: u32) -> BigInt {
        BigInt::one()
            + BigInt::from(self.p).pow(2 * n)
            + self.algebraic.trace(self.p, n)
            + self.transcendental_trace(n)
    }

    /// `s` against the Kronecker symbol `(10/p)`.
    pub fn sign_matches_kronecker10(&self) -> Result<bool> {
        Ok(self.s == crate::finite_field::kronecker_i64(10, self.p)?)
    }

    pub fn report(&self) -> Result<SpectrumReport> {
        Ok(SpectrumReport {
            p: self.p,
            mu1: self.mu1.to_string(),
            mu2: self.mu2.to_string(),
            s: self.s,
            c: self.c.to_string(),
            rho: self.reduction_rank(),
            potential_rank_degree: self.potential_rank_degree(),
            square_class: self.artin_tate_sqclass().ok().map(|v| v.to_string()),
            s_equals_kronecker10: self.sign_matches_kronecker10()?,
        })
    }
}

/// Serializable summary, numbers as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub p: u64,
    pub mu1: String,
    pub mu2: String,
    pub s: i8,
    pub c: String,
    pub rho: u32,
    pub potential_rank_degree: Option<u32>,
    pub square_class: Option<String>,
    pub s_equals_kronecker10: bool,
}

/// Upper bound on the geometric Picard number from two rank-20 reductions.
pub fn van_luijk(a: &FrobeniusSpectrum, b: &FrobeniusSpectrum) -> Result<u32> {
    if a.algebraic.rank() != b.algebraic.rank() {
        return Err(Error::Domain("spectra from different surfaces".into()));
    }
    if a.reduction_rank() != 20 || b.reduction_rank() != 20 {
        return Err(Error::Domain("both reductions must have rank 20".into()));
    }
    Ok(if a.artin_tate_sqclass()? != b.artin_tate_sqclass()? {
        19
    } else {
        20
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn spectrum(p: u64, a: i64) -> FrobeniusSpectrum {
        // counts from the closed formulas with trace a of the modular curve
        let alg = AlgebraicPart::drell_yan(p).unwrap();
        let k5 = crate::finite_field::kronecker_i64(5, p).unwrap() as i64;
        let k10 = crate::finite_field::kronecker_i64(10, p).unwrap() as i64;
        let pi = p as i64;
        let n1 = 1 + 18 * pi + k5 * pi + (a * a - k10 * pi) + pi * pi;
        let t = a * a - 2 * pi;
        let n2 = 1 + 18 * pi * pi + t * t + pi.pow(4);
        FrobeniusSpectrum::from_counts(p, n1, n2, alg).unwrap()
    }

    #[test]
    fn reduction_at_31_and_71() {
        let s31 = spectrum(31, -4);
        assert_eq!(s31.mu1, BigInt::from(-15));
        assert_eq!(s31.c, rat(-46, 31));
        assert_eq!(s31.s, 1);
        assert_eq!(s31.reduction_rank(), 20);
        assert_eq!(s31.artin_tate_sqclass().unwrap(), BigInt::from(3));
        let s71 = spectrum(71, 12);
        assert_eq!(s71.artin_tate_sqclass().unwrap(), BigInt::from(35));
        assert_eq!(van_luijk(&s31, &s71).unwrap(), 19);
        assert_eq!(van_luijk(&s31, &s31).unwrap(), 20);
        assert_eq!(s31.functional_equation(), Some(1));
        assert_eq!(s31.charpoly().len(), 23);
    }

    #[test]
    fn extreme_cases() {
        let p = 7u64;
        match solve_transcendental(&BigInt::from(21), &BigInt::from(147), p).unwrap() {
            Solution::Solved { s, c } => assert_eq!((s, c), (1, rat(2, 1))),
            other => panic!("{other:?}"),
        }
        // μ₁ = −p, μ₂ = 3p²: c = −2 with s = +1 is the only fit
        match solve_transcendental(&BigInt::from(-7), &BigInt::from(147), p).unwrap() {
            Solution::Solved { s, c } => assert_eq!((s, c), (1, rat(-2, 1))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predicted_counts_reproduce_inputs() {
        let s = spectrum(41, 0);
        assert_eq!(s.transcendental_trace(1), s.mu1);
        assert_eq!(s.transcendental_trace(2), s.mu2);
        let alg = AlgebraicPart::drell_yan(41).unwrap();
        let n1 = s.predicted_count(1).to_i64().unwrap();
        let n2 = s.predicted_count(2).to_i64().unwrap();
        assert_eq!(FrobeniusSpectrum::from_counts(41, n1, n2, alg).unwrap(), s);
    }

    #[test]
    fn root_of_unity_pair() {
        let alg = AlgebraicPart {
            trivial: 18,
            signed: vec![1],
        };
        let sp = FrobeniusSpectrum {
            p: 7,
            algebraic: alg,
            mu1: 14.into(),
            mu2: 0.into(),
            s: 1,
            c: rat(1, 1),
        };
        assert_eq!(sp.reduction_rank(), 20);
        assert_eq!(sp.potential_rank_degree(), Some(3));
        assert_eq!(sp.artin_tate_sqclass().unwrap(), BigInt::from(7));
    }
}
